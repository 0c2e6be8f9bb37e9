//! Independent testing oracle: exhaustive linear-algebra search for an
//! annihilating operator of bounded order and coefficient degree.
//!
//! A candidate function is described by its coordinate vector over a
//! fixed basis together with the action of ∂t on coordinates. The search
//! solves the Q(t)-linear system obtained by equating the coefficient of
//! every parameter monomial of Σ ℓ_i·v_i to zero.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::mpoly::{mp_gcd, MPoly, Monomial};
use crate::ore::{OreKind, OrePoly};
use crate::ratfunc::RatFunc;
use crate::upoly::{nullspace, Mat};
use crate::vars::T_VAR;

/// How ∂t acts on the coordinate vector.
#[derive(Debug, Clone)]
pub enum CoordAction {
    /// Plain rational data: v -> δ(v) or σ(v) componentwise.
    Plain,
    /// Hyperexponential twist by a = δ(H)/H: v -> δ(v) + a·v
    /// (only meaningful for the derivation kind).
    HyperexpTwist(RatFunc),
    /// Hypergeometric twist by a = σ(H)/H: v -> σ(v)·a
    /// (only meaningful for the shift kind).
    HypergeomTwist(RatFunc),
    /// Row-vector system v -> δ(v) + v·A for algebraic coordinates.
    Matrix(Mat<RatFunc>),
}

/// Minimal-order annihilator within (max_order, max_coeff_degree), or
/// None. Coefficients are returned cleared to Q[t] and primitive.
pub fn brute_force_annihilator(
    coords: &[RatFunc],
    kind: OreKind,
    max_order: u32,
    max_coeff_degree: u32,
) -> Result<Option<OrePoly>> {
    annihilator_with_action(coords, kind, &CoordAction::Plain, max_order, max_coeff_degree)
}

pub fn annihilator_with_action(
    coords: &[RatFunc],
    kind: OreKind,
    action: &CoordAction,
    max_order: u32,
    max_coeff_degree: u32,
) -> Result<Option<OrePoly>> {
    if coords.iter().all(|c| c.is_zero()) {
        return Ok(Some(OrePoly::one(kind)));
    }
    // rows[i] = coordinate vector of ∂^i applied to the candidate
    let mut rows: Vec<Vec<RatFunc>> = vec![coords.to_vec()];
    for i in 0..max_order as usize {
        let prev = &rows[i];
        rows.push(apply_action(prev, kind, action)?);
    }
    for order in 1..=max_order as usize {
        if let Some(l) = solve_at_order(&rows[..=order], kind, max_coeff_degree)? {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

fn apply_action(v: &[RatFunc], kind: OreKind, action: &CoordAction) -> Result<Vec<RatFunc>> {
    let base: Vec<RatFunc> = v
        .iter()
        .map(|c| match kind {
            OreKind::Derivation => c.derivative(T_VAR),
            OreKind::Shift => c.shift(T_VAR, 1),
        })
        .collect();
    Ok(match action {
        CoordAction::Plain => base,
        CoordAction::HyperexpTwist(a) => base
            .iter()
            .zip(v)
            .map(|(d, c)| d.add(&a.mul(c)))
            .collect(),
        CoordAction::HypergeomTwist(a) => {
            v.iter().map(|c| c.shift(T_VAR, 1).mul(a)).collect()
        }
        CoordAction::Matrix(m) => {
            debug_assert_eq!(m.rows, v.len());
            let mut out = base;
            for (j, o) in out.iter_mut().enumerate() {
                for (i, c) in v.iter().enumerate() {
                    *o = o.add(&c.mul(&m.data[i][j]));
                }
            }
            out
        }
    })
}

/// Seek nonzero (ℓ_0..ℓ_n) over Q(t) with Σ ℓ_i rows[i] = 0 in every
/// coordinate and every parameter monomial; normalize to Q[t] primitive
/// and enforce the degree bound.
fn solve_at_order(
    rows: &[Vec<RatFunc>],
    kind: OreKind,
    max_coeff_degree: u32,
) -> Result<Option<OrePoly>> {
    let ncoords = rows[0].len();
    let mut eq_rows: Vec<Vec<RatFunc>> = Vec::new();
    for c in 0..ncoords {
        // common denominator across the column, then split the cleared
        // polynomials by parameter monomials
        let mut den = MPoly::one();
        for r in rows {
            let g = mp_gcd(&den, r[c].den());
            den = den.mul(&r[c].den().div_exact(&g).expect("gcd divides"));
        }
        let cleared: Vec<MPoly> = rows
            .iter()
            .map(|r| r[c].mul(&RatFunc::from_poly(den.clone())).num().clone())
            .collect();
        let mut groups: BTreeMap<Monomial, Vec<MPoly>> = BTreeMap::new();
        for (i, p) in cleared.iter().enumerate() {
            for (m, co) in p.terms() {
                let mut mu = Monomial::one();
                let mut tm = Monomial::one();
                for vidx in m.vars() {
                    if vidx == T_VAR {
                        tm = tm.with_exp(vidx, m.exp(vidx));
                    } else {
                        mu = mu.with_exp(vidx, m.exp(vidx));
                    }
                }
                let entry = groups
                    .entry(mu)
                    .or_insert_with(|| vec![MPoly::zero(); rows.len()]);
                entry[i].add_assign_term(tm, co.clone());
            }
        }
        for (_, polys) in groups {
            eq_rows.push(polys.into_iter().map(RatFunc::from_poly).collect());
        }
    }
    let ns = nullspace(&Mat::new(eq_rows), &RatFunc::one())?;
    'sol: for v in ns {
        // clear denominators and content to land in Q[t]
        let mut den = MPoly::one();
        for c in &v {
            let g = mp_gcd(&den, c.den());
            den = den.mul(&c.den().div_exact(&g).expect("gcd divides"));
        }
        let mut polys: Vec<MPoly> = v
            .iter()
            .map(|c| c.mul(&RatFunc::from_poly(den.clone())).num().clone())
            .collect();
        let mut cont = MPoly::zero();
        for p in &polys {
            cont = mp_gcd(&cont, p);
        }
        if !cont.is_zero() && !cont.is_one() {
            polys = polys
                .iter()
                .map(|p| p.div_exact(&cont).expect("content divides"))
                .collect();
        }
        for p in &polys {
            if p.deg(T_VAR) > max_coeff_degree as i64 {
                continue 'sol;
            }
        }
        let l = OrePoly::new(kind, polys.into_iter().map(RatFunc::from_poly).collect())?;
        if !l.is_zero() {
            return Ok(Some(l));
        }
    }
    Ok(None)
}
