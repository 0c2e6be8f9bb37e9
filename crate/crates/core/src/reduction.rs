//! Additive decompositions of rational functions: differential
//! (Ostrogradsky–Hermite) and shift (Abramov) reduction w.r.t. one
//! variable.
//!
//! Both return f = op(g) + rem where op is d/d(var) or the forward
//! difference Δ_var, rem is proper in var, and rem's denominator is
//! squarefree (differential) or shift-free (shift) in var.

use crate::error::Result;
use crate::mpoly::{mp_gcd, rat_int, sqfree_decomp, MPoly, Rat};
use crate::ratfunc::{ratfunc_to_upoly_pair, to_upoly, upoly_to_ratfunc, RatFunc};
use crate::upoly::UPoly;
use crate::valdis::shift_coincidences;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Differential,
    Shift,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    pub g: RatFunc,
    pub rem_num: MPoly,
    pub rem_den: MPoly,
    pub kind: ReductionKind,
    pub var: usize,
}

impl ReductionResult {
    fn new(g: RatFunc, rem: RatFunc, kind: ReductionKind, var: usize) -> Self {
        ReductionResult {
            g,
            rem_num: rem.num().clone(),
            rem_den: rem.den().clone(),
            kind,
            var,
        }
    }

    pub fn rem(&self) -> RatFunc {
        RatFunc::new(self.rem_num.clone(), self.rem_den.clone()).expect("den nonzero")
    }

    /// Exact reconstruction check: input == op(g) + rem.
    pub fn verify(&self, f: &RatFunc) -> bool {
        let applied = match self.kind {
            ReductionKind::Differential => self.g.derivative(self.var),
            ReductionKind::Shift => self.g.shift(self.var, 1).sub(&self.g),
        };
        applied.add(&self.rem()) == *f
    }
}

/// Splits f = quotient + remainder/den w.r.t. `var`, everything monic in
/// var at the univariate level.
fn proper_split(f: &RatFunc, var: usize) -> Result<(UPoly<RatFunc>, UPoly<RatFunc>, UPoly<RatFunc>)> {
    let (n, d) = ratfunc_to_upoly_pair(f, var);
    let (q, mut r) = n.divrem(&d)?;
    r = r.scale(&crate::upoly::Field::inv(&d.lc())?);
    Ok((q, r, d.monic()?))
}

/// f = d/d(var) g + rem with rem proper and squarefree denominator.
pub fn hermite_reduce(f: &RatFunc, var: usize) -> Result<ReductionResult> {
    if f.den().free_of(var) {
        // pure polynomial part: integrate it wholesale
        let (q, _, _) = proper_split(f, var)?;
        let g = upoly_to_ratfunc(&antiderivative(&q), var);
        return Ok(ReductionResult::new(g, RatFunc::zero(), ReductionKind::Differential, var));
    }
    let (q, _, _) = proper_split(f, var)?;
    let mut g = upoly_to_ratfunc(&antiderivative(&q), var);
    let mut cur = f.sub(&g.derivative(var));
    loop {
        let b = cur.den();
        if b.free_of(var) {
            break;
        }
        let parts = sqfree_decomp(b, var)?;
        let k = parts
            .parts
            .iter()
            .filter(|(p, _)| !p.free_of(var))
            .map(|(_, m)| *m)
            .max()
            .unwrap_or(1);
        if k <= 1 {
            break;
        }
        let v_m = parts
            .parts
            .iter()
            .find(|(p, m)| *m == k && !p.free_of(var))
            .map(|(p, _)| p.clone())
            .expect("max multiplicity part exists");
        let u_m = b.div_exact(&v_m.pow(k)).expect("sqfree part divides");
        // peel one power of v off A/(u v^k):
        //   s := A * (u v')^{-1} mod v,  t := (A - s u v')/v
        //   A/(u v^k) = d/dvar( -s/((k-1) v^{k-1}) )
        //               + (t (k-1) + s' u) / ((k-1) u v^{k-1})
        let au = to_upoly(cur.num(), var);
        let uu = to_upoly(&u_m, var);
        let vu = to_upoly(&v_m, var);
        let w = uu.mul(&vu.derivative());
        let (g1, sinv, _) = w.ext_gcd(&vu)?;
        debug_assert!(g1.is_one());
        let s = au.mul(&sinv).rem(&vu)?;
        let t = au.sub(&s.mul(&w)).div_exact(&vu)?;
        let k1 = Rat::from(num_bigint::BigInt::from((k - 1) as i64));
        let vk1 = RatFunc::from_poly(v_m.pow(k - 1));
        let g_term = upoly_to_ratfunc(&s, var)
            .neg()
            .div(&vk1.scale(&k1))?;
        g = g.add(&g_term);
        let num = t.scale(&RatFunc::constant(k1.clone()))
            .add(&s.derivative().mul(&uu));
        let den = RatFunc::from_poly(u_m.mul(&v_m.pow(k - 1))).scale(&k1);
        cur = upoly_to_ratfunc(&num, var).div(&den)?;
    }
    // strictly proper by construction; assert in debug builds
    debug_assert!(cur.is_zero() || cur.num().deg(var) < cur.den().deg(var));
    Ok(ReductionResult::new(g, cur, ReductionKind::Differential, var))
}

fn antiderivative(q: &UPoly<RatFunc>) -> UPoly<RatFunc> {
    let proto = RatFunc::one();
    let mut coeffs = vec![RatFunc::zero()];
    for (i, c) in q.coeffs().iter().enumerate() {
        coeffs.push(c.scale(&(rat_int(1) / rat_int((i + 1) as i64))));
    }
    UPoly::new(coeffs, &proto)
}

/// P with P(var+1) - P(var) = q, by descending-degree elimination.
fn discrete_antiderivative(q: &UPoly<RatFunc>) -> UPoly<RatFunc> {
    let proto = RatFunc::one();
    let mut rest = q.clone();
    let mut p = UPoly::zero(&proto);
    while !rest.is_zero() {
        let d = rest.deg() as usize;
        let c = rest.lc().scale(&(rat_int(1) / rat_int((d + 1) as i64)));
        let mut term = UPoly::zero(&proto);
        term = term.add(&UPoly::constant(c).mul_xpow(d + 1));
        p = p.add(&term);
        let delta = term.shift(1).sub(&term);
        rest = rest.sub(&delta);
    }
    p
}

/// f = Δ_var(g) + rem with rem proper and shift-free denominator.
pub fn abramov_reduce(f: &RatFunc, var: usize) -> Result<ReductionResult> {
    let (q, _, _) = proper_split(f, var)?;
    let mut g = upoly_to_ratfunc(&discrete_antiderivative(&q), var);
    let mut cur = f.sub(&g.shift(var, 1).sub(&g));
    loop {
        let b = cur.den().clone();
        if b.free_of(var) {
            break;
        }
        let ks: Vec<i64> = shift_coincidences(&b, var)
            .into_iter()
            .filter(|&k| k > 0)
            .collect();
        let d = match ks.into_iter().max() {
            None => break,
            Some(d) => d,
        };
        // upper orbit copy: factors of b that reappear d steps below
        let q_up = mp_gcd(&b, &b.shift(var, d));
        // its primary part w in b (full multiplicity, all related factors)
        let mut r = b.clone();
        loop {
            let gg = mp_gcd(&r, &q_up);
            if gg.as_constant().is_some() {
                break;
            }
            r = r.div_exact(&gg).expect("gcd divides");
        }
        let w = b.div_exact(&r).expect("primary part divides");
        // split cur = h + rest with h = c/w, then use
        // h = Δ(σ^{-1} h) + σ^{-1} h to move h one step down
        let h = component_over(&cur, &w, &r, var)?;
        let h_down = h.shift(var, -1);
        g = g.add(&h_down);
        cur = cur.sub(&h).add(&h_down);
    }
    debug_assert!(cur.is_zero() || cur.num().deg(var) < cur.den().deg(var));
    Ok(ReductionResult::new(g, cur, ReductionKind::Shift, var))
}

/// The w-part of cur = num/(w r): h with cur - h having denominator
/// dividing r (times var-free content). Requires gcd(w, r) = 1 in var.
fn component_over(cur: &RatFunc, w: &MPoly, r: &MPoly, var: usize) -> Result<RatFunc> {
    let wu = to_upoly(w, var).monic()?;
    let ru = to_upoly(r, var).monic()?;
    if ru.is_one() {
        return Ok(cur.clone());
    }
    let nu = to_upoly(cur.num(), var);
    let du = to_upoly(cur.den(), var);
    let lc = crate::upoly::Field::inv(&du.lc())?;
    let nu = nu.scale(&lc);
    let (g1, _, tu) = wu.ext_gcd(&ru)?;
    debug_assert!(g1.is_one());
    // num/(w r) = (num t mod w)/w + (...)/r
    let hnum = nu.mul(&tu).rem(&wu)?;
    upoly_to_ratfunc(&hnum, var).div(&upoly_to_ratfunc(&wu, var))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> MPoly {
        MPoly::var(0)
    }
    fn x() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn hermite_exact_derivatives() {
        // 1/(t+x)^2 w.r.t. x: g = -1/(t+x), rem = 0
        let f = RatFunc::new(MPoly::one(), t().add(&x()).pow(2)).unwrap();
        let r = hermite_reduce(&f, 1).unwrap();
        assert!(r.rem_num.is_zero());
        assert_eq!(r.g, RatFunc::new(MPoly::int(-1), t().add(&x())).unwrap());
        assert!(r.verify(&f));

        // x/(x^2+t)^2 w.r.t. x: g = -1/(2(x^2+t)), rem = 0
        let f2 = RatFunc::new(x(), x().pow(2).add(&t()).pow(2)).unwrap();
        let r2 = hermite_reduce(&f2, 1).unwrap();
        assert!(r2.rem_num.is_zero());
        assert_eq!(
            r2.g,
            RatFunc::new(MPoly::int(-1), x().pow(2).add(&t()).scale(&rat_int(2))).unwrap()
        );
        assert!(r2.verify(&f2));
    }

    #[test]
    fn hermite_squarefree_is_identity() {
        let f = RatFunc::new(x(), x().pow(2).add(&t())).unwrap();
        let r = hermite_reduce(&f, 1).unwrap();
        assert!(r.g.is_zero());
        assert_eq!(r.rem(), f);
        assert!(r.verify(&f));
        // idempotence
        let r2 = hermite_reduce(&r.rem(), 1).unwrap();
        assert!(r2.g.is_zero());
        assert_eq!(r2.rem(), f);
    }

    #[test]
    fn hermite_mixed_with_polypart() {
        // f = x^2 + 1/(t+x)^3 w.r.t. x
        let f = RatFunc::from_poly(x().pow(2))
            .add(&RatFunc::new(MPoly::one(), t().add(&x()).pow(3)).unwrap());
        let r = hermite_reduce(&f, 1).unwrap();
        assert!(r.verify(&f));
        assert!(r.rem_num.is_zero());
        // squarefree denominator invariant
        let g = mp_gcd(&r.rem_den, &r.rem_den.derivative(1));
        assert!(g.deg(1) <= 0);
    }

    #[test]
    fn abramov_exact_differences() {
        // 1/(x(x+1)) w.r.t. x: g = -1/x, rem = 0
        let f = RatFunc::new(MPoly::one(), x().mul(&x().add(&MPoly::one()))).unwrap();
        let r = abramov_reduce(&f, 1).unwrap();
        assert!(r.rem_num.is_zero());
        assert_eq!(r.g, RatFunc::new(MPoly::int(-1), x()).unwrap());
        assert!(r.verify(&f));

        // 1/(t x (x+2)) w.r.t. x: rem = 0, g = -(1/(2t))(1/x + 1/(x+1))
        let f2 = RatFunc::new(
            MPoly::one(),
            t().mul(&x()).mul(&x().add(&MPoly::int(2))),
        )
        .unwrap();
        let r2 = abramov_reduce(&f2, 1).unwrap();
        assert!(r2.rem_num.is_zero(), "rem = {:?}", r2.rem());
        let expect = RatFunc::new(
            x().add(&x().add(&MPoly::one())).neg(),
            t().scale(&rat_int(2))
                .mul(&x())
                .mul(&x().add(&MPoly::one())),
        )
        .unwrap();
        assert_eq!(r2.g, expect);
        assert!(r2.verify(&f2));
    }

    #[test]
    fn abramov_shift_free_is_identity() {
        let f = RatFunc::new(MPoly::one(), x().pow(2).add(&t())).unwrap();
        let r = abramov_reduce(&f, 1).unwrap();
        assert!(r.g.is_zero());
        assert_eq!(r.rem(), f);
        // shift-free invariant on a nontrivial case
        let f2 = RatFunc::new(
            x().add(&MPoly::int(7)),
            x().mul(&x().add(&MPoly::int(3))).mul(&x().add(&t())),
        )
        .unwrap();
        let r2 = abramov_reduce(&f2, 1).unwrap();
        assert!(r2.verify(&f2));
        let ks: Vec<i64> = shift_coincidences(&r2.rem_den, 1)
            .into_iter()
            .filter(|&k| k > 0)
            .collect();
        assert!(ks.is_empty(), "rem_den not shift-free: {:?}", r2.rem_den);
        // idempotence
        let r3 = abramov_reduce(&r2.rem(), 1).unwrap();
        assert!(r3.g.is_zero());
        assert_eq!(r3.rem(), r2.rem());
    }

    #[test]
    fn abramov_polypart() {
        // f = x w.r.t. x: g with Δg = x, rem 0
        let f = RatFunc::from_poly(x());
        let r = abramov_reduce(&f, 1).unwrap();
        assert!(r.rem_num.is_zero());
        assert!(r.verify(&f));
    }
}
