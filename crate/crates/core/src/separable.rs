//! Separability deciders: splitness tests and certificates for rational
//! functions, canonical forms for hypergeometric (Gosper–Petkovšek) and
//! hyperexponential (differential split form) certificates, and the two
//! bivariate telescoper-existence tests built on the reductions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mpoly::{mp_gcd, rat_int, MPoly, Monomial};
use crate::ore::{ore_apply, ore_lclm, OreKind, OrePoly};
use crate::ratfunc::{ratfunc_to_upoly_pair, to_upoly, upoly_to_ratfunc, RatFunc};
use crate::reduction::{abramov_reduce, hermite_reduce, ReductionResult};
 
use crate::valdis::{coincidences_with, integer_roots};
use crate::vars::T_VAR;

/// Outcome of a separability or telescoper-existence decision.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub separable: bool,
    pub certificate: Option<OrePoly>,
    pub witness: Witness,
    pub diagnostics: String,
}

#[derive(Debug, Clone)]
pub enum Witness {
    None,
    /// Split-term decomposition f = sum r_j(t)·v_j(params) with a
    /// first-order annihilator per term.
    SplitTerms {
        den_t: MPoly,
        den_params: MPoly,
        terms: Vec<(RatFunc, OrePoly)>,
    },
    Gp(GPForm),
    DiffSplit(DiffSplitForm),
    Reduction(ReductionResult),
    Algebraic(Box<crate::algebraic::AlgebraicWitness>),
}

impl Verdict {
    pub(crate) fn no(witness: Witness, diagnostics: impl Into<String>) -> Self {
        Verdict {
            separable: false,
            certificate: None,
            witness,
            diagnostics: diagnostics.into(),
        }
    }

    pub(crate) fn yes(cert: Option<OrePoly>, witness: Witness, diagnostics: impl Into<String>) -> Self {
        Verdict {
            separable: true,
            certificate: cert,
            witness,
            diagnostics: diagnostics.into(),
        }
    }
}

// ----------------------------------------------------------------------
// splitness
// ----------------------------------------------------------------------

/// True iff q factors as a product with each factor supported on a
/// single block of the partition; decided by iterated content
/// extraction, no irreducible factorization needed.
pub fn is_split(q: &MPoly, partition: &[Vec<usize>]) -> bool {
    assert!(!q.is_zero(), "is_split needs a nonzero polynomial");
    let mut rest = q.clone();
    for block in partition {
        let set: BTreeSet<usize> = block.iter().copied().collect();
        let (_, pp) = rest.content_pp_block(&set);
        rest = pp;
    }
    rest.as_constant().is_some()
}

/// Largest divisor of d lying in Q[t], found as gcd(d(t, x), d(t, x~))
/// with the parameters renamed to fresh duplicates. Returns
/// (d_split, d_nonsplit) with d = d_split * d_nonsplit, d_split monic.
pub fn split_part(d: &MPoly) -> (MPoly, MPoly) {
    assert!(!d.is_zero());
    let params: Vec<usize> = d.vars_used().into_iter().filter(|&v| v != T_VAR).collect();
    if params.is_empty() {
        return (d.monic(), MPoly::constant(d.leading_coeff()));
    }
    let base = d.max_var().unwrap() + 1;
    let map: std::collections::BTreeMap<usize, usize> = params
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, base + i))
        .collect();
    let dup = d.rename_vars(&map);
    let g = mp_gcd(d, &dup);
    debug_assert!(g.vars_used().iter().all(|&v| v == T_VAR));
    let rest = d.div_exact(&g).expect("split part divides");
    (g, rest)
}

// ----------------------------------------------------------------------
// rational separability
// ----------------------------------------------------------------------

/// First-order annihilator of a nonzero r(t): D - r'/r or S - σ(r)/r.
fn first_order_annihilator(r: &RatFunc, kind: OreKind) -> Result<OrePoly> {
    let ratio = match kind {
        OreKind::Derivation => r.derivative(T_VAR).div(r)?,
        OreKind::Shift => r.shift(T_VAR, 1).div(r)?,
    };
    OrePoly::new(kind, vec![ratio.neg(), RatFunc::one()])
}

/// Decides ∂t-separability of a rational function: separable iff the
/// denominator is split w.r.t. ({t}, {params}); on success the
/// certificate is the LCLM of first-order annihilators of the split
/// terms, verified by application before return.
pub fn rational_separable(f: &RatFunc, kind: OreKind) -> Result<Verdict> {
    if f.is_zero() {
        return Ok(Verdict::yes(
            Some(OrePoly::one(kind)),
            Witness::None,
            "zero function; annihilated by 1",
        ));
    }
    let partition = vec![
        vec![T_VAR],
        f.vars_used().into_iter().filter(|&v| v != T_VAR).collect(),
    ];
    if !is_split(f.den(), &partition) {
        return Ok(Verdict::no(
            Witness::None,
            "denominator is not split with respect to ({t}, parameters)",
        ));
    }
    let (den_t, den_params) = split_part(f.den());
    debug_assert!(den_params.free_of(T_VAR));
    // expand the numerator by parameter monomials: f = sum over params
    // monomials mu of (poly_mu(t)/den_t) * (mu/den_params)
    let mut groups: std::collections::BTreeMap<Monomial, MPoly> = std::collections::BTreeMap::new();
    for (m, c) in f.num().terms() {
        let mut t_part = Monomial::one();
        let mut p_part = Monomial::one();
        for v in m.vars() {
            if v == T_VAR {
                t_part = t_part.with_exp(v, m.exp(v));
            } else {
                p_part = p_part.with_exp(v, m.exp(v));
            }
        }
        groups
            .entry(p_part)
            .or_insert_with(MPoly::zero)
            .add_assign_term(t_part, c.clone());
    }
    let mut terms = Vec::new();
    let mut anns = Vec::new();
    for (_, tp) in groups {
        let r = RatFunc::new(tp, den_t.clone())?;
        let l = first_order_annihilator(&r, kind)?;
        terms.push((r, l.clone()));
        anns.push(l);
    }
    let cert = ore_lclm(&anns)?;
    let check = ore_apply(&cert, f);
    if !check.is_zero() {
        return Err(Error::InvalidInput(
            "internal error: certificate failed verification".into(),
        ));
    }
    Ok(Verdict::yes(
        Some(cert),
        Witness::SplitTerms {
            den_t,
            den_params,
            terms,
        },
        "denominator split; certificate is the LCLM of the term annihilators",
    ))
}

// ----------------------------------------------------------------------
// Gosper–Petkovšek form
// ----------------------------------------------------------------------

/// a = z · (σ(p)/p) · (q/rhat), with z free of t, p, q, rhat monic
/// polynomials in t over Q(params), gcd(q, σ^k(rhat)) = 1 for all k >= 0,
/// gcd(q, p) = 1, gcd(rhat, σ(p)) = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GPForm {
    pub z: RatFunc,
    pub p: RatFunc,
    pub q: RatFunc,
    pub rhat: RatFunc,
}

impl GPForm {
    /// z·(σ(p)/p)·(q/rhat), the reassembled input.
    pub fn recombine(&self) -> Result<RatFunc> {
        self.z
            .mul(&self.p.shift(T_VAR, 1))
            .mul(&self.q)
            .div(&self.p)?
            .div(&self.rhat)
    }
}

/// Numerator of a rational function that is polynomial in t with
/// coefficients in Q(params), as an MPoly after clearing the t-free
/// denominator (for gcd work).
fn clear_params(f: &RatFunc) -> MPoly {
    debug_assert!(f.den().free_of(T_VAR));
    f.num().clone()
}

fn monic_in_t(p: &MPoly) -> Result<RatFunc> {
    let lc = p.leading_coeff_in(T_VAR);
    RatFunc::new(p.clone(), lc)
}

pub fn gp_form(a: &RatFunc) -> Result<GPForm> {
    if a.is_zero() {
        return Err(Error::InvalidInput("Gosper form of 0".into()));
    }
    // monic numerator/denominator in t; z picks up both leading coeffs
    let fq = monic_in_t(a.num())?;
    let fr = monic_in_t(a.den())?;
    let z0 = RatFunc::new(a.num().leading_coeff_in(T_VAR), a.den().leading_coeff_in(T_VAR))?;
    let mut p = RatFunc::one();
    let mut q = fq;
    let mut rhat = fr;
    loop {
        let qm = clear_params(&q);
        let rm = clear_params(&rhat);
        let mut ks: Vec<i64> = coincidences_with(&qm, &rm, T_VAR)
            .into_iter()
            .filter(|&k| k >= 0)
            .collect();
        ks.sort_unstable();
        let j = match ks.first() {
            None => break,
            Some(&j) => j,
        };
        let s = monic_in_t(&mp_gcd(&qm, &rm.shift(T_VAR, j)))?;
        q = q.div(&s)?;
        rhat = rhat.div(&s.shift(T_VAR, -j))?;
        for i in 1..=j {
            p = p.mul(&s.shift(T_VAR, -i));
        }
    }
    // enforce gcd(q, p) = 1 and gcd(rhat, σ(p)) = 1, re-running the main
    // extraction when a fix-up changes q or rhat
    loop {
        let s = mp_gcd(&clear_params(&q), &clear_params(&p));
        if s.deg(T_VAR) > 0 {
            let sm = monic_in_t(&s)?;
            p = p.div(&sm)?;
            q = q.div(&sm)?.mul(&sm.shift(T_VAR, 1));
        } else {
            let sp = mp_gcd(&clear_params(&rhat), &clear_params(&p).shift(T_VAR, 1));
            if sp.deg(T_VAR) > 0 {
                let sm = monic_in_t(&sp)?;
                p = p.div(&sm.shift(T_VAR, -1))?;
                rhat = rhat.div(&sm)?.mul(&sm.shift(T_VAR, -1));
            } else {
                break;
            }
        }
        // a fix-up may reintroduce q/rhat coincidences
        loop {
            let qm = clear_params(&q);
            let rm = clear_params(&rhat);
            let ks: Vec<i64> = coincidences_with(&qm, &rm, T_VAR)
                .into_iter()
                .filter(|&k| k >= 0)
                .collect();
            let j = match ks.iter().min() {
                None => break,
                Some(&j) => j,
            };
            let s = monic_in_t(&mp_gcd(&qm, &rm.shift(T_VAR, j)))?;
            q = q.div(&s)?;
            rhat = rhat.div(&s.shift(T_VAR, -j))?;
            for i in 1..=j {
                p = p.mul(&s.shift(T_VAR, -i));
            }
        }
    }
    let form = GPForm {
        z: z0,
        p,
        q,
        rhat,
    };
    // invariants are enforced, not hoped for
    if form.recombine()? != *a {
        return Err(Error::InvalidInput(
            "internal error: Gosper form does not recombine".into(),
        ));
    }
    debug_assert!(form.z.free_of(T_VAR));
    Ok(form)
}

/// Separability of a hypergeometric term H given a = σt(H)/H: holds iff
/// the Gosper–Petkovšek form has z rational and q, rhat in Q[t].
pub fn hypergeom_separable(a: &RatFunc) -> Result<Verdict> {
    if a.is_zero() {
        return Err(Error::InvalidInput(
            "a = sigma_t(H)/H cannot be 0 for a nonzero term H".into(),
        ));
    }
    let form = gp_form(a)?;
    let z_ok = form.z.as_constant().is_some();
    let q_ok = form.q.free_of_params();
    let r_ok = form.rhat.free_of_params();
    if z_ok && q_ok && r_ok {
        Ok(Verdict::yes(
            None,
            Witness::Gp(form),
            "a = sigma(p)/p * r with r in Q(t); H = p * (t-only hypergeometric part)",
        ))
    } else {
        let mut reasons = Vec::new();
        if !z_ok {
            reasons.push("constant part z involves parameters");
        }
        if !q_ok {
            reasons.push("q involves parameters");
        }
        if !r_ok {
            reasons.push("rhat involves parameters");
        }
        Ok(Verdict::no(Witness::Gp(form), reasons.join("; ")))
    }
}

impl RatFunc {
    fn free_of_params(&self) -> bool {
        self.vars_used().into_iter().all(|v| v == T_VAR)
    }
}

// ----------------------------------------------------------------------
// differential split form
// ----------------------------------------------------------------------

/// a = D_t(g) + polypart + split_simple + nonsplit_num/nonsplit_den,
/// with split_simple proper over a denominator in Q[t] and the nonsplit
/// denominator squarefree in t with no Q[t] factor. residue_resultant is
/// the Rothstein–Trager resultant of the nonsplit part in the fresh
/// variable `zvar`.
#[derive(Debug, Clone)]
pub struct DiffSplitForm {
    pub g: RatFunc,
    pub polypart: RatFunc,
    pub split_simple: RatFunc,
    pub nonsplit_num: MPoly,
    pub nonsplit_den: MPoly,
    pub residue_resultant: MPoly,
    pub zvar: usize,
}

impl DiffSplitForm {
    pub fn nonsplit(&self) -> Result<RatFunc> {
        if self.nonsplit_num.is_zero() {
            return Ok(RatFunc::zero());
        }
        RatFunc::new(self.nonsplit_num.clone(), self.nonsplit_den.clone())
    }

    pub fn recombine(&self) -> Result<RatFunc> {
        Ok(self
            .g
            .derivative(T_VAR)
            .add(&self.polypart)
            .add(&self.split_simple)
            .add(&self.nonsplit()?))
    }
}

pub fn diff_split_form(a: &RatFunc) -> Result<DiffSplitForm> {
    // polynomial part first so it is not absorbed into g
    let (n, d) = ratfunc_to_upoly_pair(a, T_VAR);
    let (quo, _) = n.divrem(&d)?;
    let polypart = upoly_to_ratfunc(&quo, T_VAR);
    let proper = a.sub(&polypart);
    let red = hermite_reduce(&proper, T_VAR)?;
    debug_assert!(red.verify(&proper));
    let g = red.g.clone();
    let rem = red.rem();
    if rem.is_zero() {
        return Ok(DiffSplitForm {
            g,
            polypart,
            split_simple: RatFunc::zero(),
            nonsplit_num: MPoly::zero(),
            nonsplit_den: MPoly::one(),
            residue_resultant: MPoly::one(),
            zvar: a.max_var().unwrap_or(T_VAR) + 1,
        });
    }
    let (d_t, d_rest) = split_part(rem.den());
    let zvar = a
        .max_var()
        .unwrap_or(T_VAR)
        .max(rem.max_var().unwrap_or(T_VAR))
        + 1;
    // split rem = split_simple + nonsplit via Bezout in Q(params)[t]
    let (split_simple, nonsplit_num, nonsplit_den) = if d_t.as_constant().is_some() {
        (RatFunc::zero(), rem.num().clone(), rem.den().clone())
    } else if d_rest.as_constant().is_some() {
        (rem.clone(), MPoly::zero(), MPoly::one())
    } else {
        let du = to_upoly(&d_t, T_VAR);
        let eu = to_upoly(&d_rest, T_VAR).monic()?;
        let e_lc = to_upoly(&d_rest, T_VAR).lc();
        let nu = to_upoly(rem.num(), T_VAR).scale(&e_lc.inv()?);
        let (g1, su, uu) = du.ext_gcd(&eu)?;
        if !g1.is_one() {
            return Err(Error::InvalidInput(
                "internal error: split/nonsplit parts not coprime".into(),
            ));
        }
        // num/(d_t e) = (num u mod d_t)/d_t + (num s mod e)/e
        let s_num = nu.mul(&uu).rem(&du)?;
        let simple = upoly_to_ratfunc(&s_num, T_VAR).div(&RatFunc::from_poly(d_t.clone()))?;
        let ns = nu.mul(&su).rem(&eu)?;
        let ns_rf = upoly_to_ratfunc(&ns, T_VAR);
        // clear parameter denominators so both sides are polynomials
        let scaled = ns_rf.div(&RatFunc::from_poly(d_rest.clone()))?;
        (simple, scaled.num().clone(), scaled.den().clone())
    };
    let residue_resultant = if nonsplit_num.is_zero() {
        MPoly::one()
    } else {
        let zz = MPoly::var(zvar);
        let arg = nonsplit_num.sub(&zz.mul(&nonsplit_den.derivative(T_VAR)));
        nonsplit_den.resultant(&arg, T_VAR)
    };
    let form = DiffSplitForm {
        g,
        polypart,
        split_simple,
        nonsplit_num,
        nonsplit_den,
        residue_resultant,
        zvar,
    };
    if form.recombine()? != *a {
        return Err(Error::InvalidInput(
            "internal error: differential split form does not recombine".into(),
        ));
    }
    Ok(form)
}

/// Separability of a hyperexponential H given a = δt(H)/H: holds iff the
/// Hermite part lies in Q(t), the polynomial part in Q[t], the
/// simple split part in Q(t), and the nonsplit residues are nonnegative
/// integers e_i with the part reconstructing as sum e_i u_i'/u_i.
pub fn hyperexp_separable(a: &RatFunc) -> Result<Verdict> {
    if a.is_zero() {
        return Err(Error::InvalidInput(
            "a = delta_t(H)/H = 0 means H is constant in t; rejected as degenerate".into(),
        ));
    }
    let form = diff_split_form(a)?;
    let mut reasons: Vec<String> = Vec::new();
    if !form.g.free_of_params() {
        reasons.push("Hermite part g involves parameters".into());
    }
    if !form.polypart.free_of_params() {
        reasons.push("polynomial part involves parameters".into());
    }
    if !form.split_simple.free_of_params() {
        reasons.push("simple split part involves parameters".into());
    }
    if reasons.is_empty() && !form.nonsplit_num.is_zero() {
        match check_residues(&form)? {
            Ok(es) => {
                let list = es
                    .iter()
                    .map(|(e, u)| format!("{}·d/dt log({})", e, u.to_text(&crate::vars::VarUniverse::default())))
                    .collect::<Vec<_>>()
                    .join(" + ");
                return Ok(Verdict::yes(
                    None,
                    Witness::DiffSplit(form),
                    format!("nonsplit part = {}; all residues nonnegative integers", list),
                ));
            }
            Err(msg) => reasons.push(msg),
        }
    }
    if reasons.is_empty() {
        return Ok(Verdict::yes(
            None,
            Witness::DiffSplit(form),
            "a = D_t(g) + r with g a power-product log derivative and r in Q(t)",
        ));
    }
    Ok(Verdict::no(Witness::DiffSplit(form), reasons.join("; ")))
}

/// Residue condition: monic residue resultant lies in Q[z] with all
/// roots nonnegative integers, and the induced gcds reconstruct the
/// nonsplit part exactly. Returns Ok(list of (e_i, u_i)) or a reason.
fn check_residues(form: &DiffSplitForm) -> Result<std::result::Result<Vec<(i64, MPoly)>, String>> {
    let res = &form.residue_resultant;
    let lc = res.leading_coeff_in(form.zvar);
    let monic = match res.div_exact(&lc) {
        Some(m) => m,
        None => {
            return Ok(Err(
                "residue resultant is not normalizable to Q[z]".into(),
            ))
        }
    };
    if !monic.vars_used().into_iter().all(|v| v == form.zvar) {
        return Ok(Err(
            "monic residue resultant has parameter-dependent roots".into(),
        ));
    }
    let roots = integer_roots(&monic, form.zvar);
    if roots.iter().any(|&e| e < 0) {
        return Ok(Err("residue resultant has a negative integer root".into()));
    }
    // all roots must be accounted for: dividing out (z - e_i)^mult must
    // leave a constant
    let mut rest = monic.clone();
    for &e in &roots {
        let lin = MPoly::var(form.zvar).sub(&MPoly::int(e));
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
        }
    }
    if rest.as_constant().is_none() {
        return Ok(Err(
            "residue resultant has non-integer (or irrational) roots".into(),
        ));
    }
    // reconstruction: u_i = gcd(den, num - e_i den'), nonsplit = sum e_i u_i'/u_i
    let mut sum = RatFunc::zero();
    let mut parts = Vec::new();
    for &e in &roots {
        if e == 0 {
            continue;
        }
        let u = mp_gcd(
            &form.nonsplit_den,
            &form
                .nonsplit_num
                .sub(&form.nonsplit_den.derivative(T_VAR).scale(&rat_int(e))),
        );
        if u.as_constant().is_some() {
            continue;
        }
        let contrib = RatFunc::new(u.derivative(T_VAR).scale(&rat_int(e)), u.clone())?;
        sum = sum.add(&contrib);
        parts.push((e, u));
    }
    if sum != form.nonsplit()? {
        return Ok(Err(
            "integer residues do not reconstruct the nonsplit part".into(),
        ));
    }
    Ok(Ok(parts))
}

// ----------------------------------------------------------------------
// telescoper existence (bivariate)
// ----------------------------------------------------------------------

fn check_bivariate(f: &RatFunc) -> Result<()> {
    let extra: Vec<usize> = f
        .vars_used()
        .into_iter()
        .filter(|&v| v != T_VAR && v != 1)
        .collect();
    if !extra.is_empty() {
        return Err(Error::InvalidInput(format!(
            "telescoper decisions need a bivariate input in (t, x); found extra variable index {}",
            extra[0]
        )));
    }
    Ok(())
}

/// Telescoper of type (S_t, D_x) exists iff the differential Hermite
/// remainder in x is S_t-separable.
pub fn telescoper_exists_st_dx(f: &RatFunc) -> Result<Verdict> {
    check_bivariate(f)?;
    let red = hermite_reduce(f, 1)?;
    telescoper_from_remainder(red, OreKind::Shift)
}

/// Telescoper of type (D_t, S_x) exists iff the Abramov remainder in x
/// is D_t-separable.
pub fn telescoper_exists_dt_sx(f: &RatFunc) -> Result<Verdict> {
    check_bivariate(f)?;
    let red = abramov_reduce(f, 1)?;
    telescoper_from_remainder(red, OreKind::Derivation)
}

fn telescoper_from_remainder(red: ReductionResult, kind: OreKind) -> Result<Verdict> {
    let rem = red.rem();
    if rem.is_zero() {
        return Ok(Verdict::yes(
            Some(OrePoly::one(kind)),
            Witness::Reduction(red),
            "reduction remainder is 0; L = 1 with the reduction certificate g",
        ));
    }
    let inner = rational_separable(&rem, kind)?;
    let mut v = inner;
    v.witness = Witness::Reduction(red);
    if v.separable {
        v.diagnostics = format!("remainder separable: {}", v.diagnostics);
    } else {
        v.diagnostics = format!("remainder not separable: {}", v.diagnostics);
    }
    Ok(v)
}
