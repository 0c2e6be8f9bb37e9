//! Skew operator polynomials over Q(t) for the derivation case
//! (D·a = a·D + a') and the shift case (S·a = σ(a)·S), with the
//! Euclidean structure needed to build and check certificates.

use crate::error::{Error, Result};
use crate::mpoly::{mp_gcd, MPoly, Rat};
use crate::ratfunc::RatFunc;
use crate::upoly::{nullspace, Mat};
use crate::vars::{VarUniverse, T_VAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OreKind {
    Derivation,
    Shift,
}

impl OreKind {
    pub fn symbol(&self) -> &'static str {
        match self {
            OreKind::Derivation => "D",
            OreKind::Shift => "S",
        }
    }
}

/// Operator sum coeffs[i] * ∂^i with coefficients in Q(t) only.
#[derive(Debug, Clone, PartialEq)]
pub struct OrePoly {
    pub kind: OreKind,
    coeffs: Vec<RatFunc>,
}

impl OrePoly {
    pub fn new(kind: OreKind, mut coeffs: Vec<RatFunc>) -> Result<Self> {
        for c in &coeffs {
            if let Some(v) = c.vars_used().into_iter().find(|&v| v != T_VAR) {
                return Err(Error::ParameterInOperator(v));
            }
        }
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Ok(OrePoly { kind, coeffs })
    }

    pub fn zero(kind: OreKind) -> Self {
        OrePoly {
            kind,
            coeffs: Vec::new(),
        }
    }

    pub fn one(kind: OreKind) -> Self {
        OrePoly {
            kind,
            coeffs: vec![RatFunc::one()],
        }
    }

    /// The generator ∂ itself.
    pub fn gen(kind: OreKind) -> Self {
        OrePoly {
            kind,
            coeffs: vec![RatFunc::zero(), RatFunc::one()],
        }
    }

    pub fn from_scalar(kind: OreKind, c: RatFunc) -> Result<Self> {
        OrePoly::new(kind, vec![c])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, o: &OrePoly) -> Result<OrePoly> {
        self.check_kind(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        OrePoly::new(
            self.kind,
            (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, o: &OrePoly) -> Result<OrePoly> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> OrePoly {
        OrePoly {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Result<OrePoly> {
        OrePoly::new(self.kind, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn monic(&self) -> Result<OrePoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.lc().inv()?;
        self.scale(&inv)
    }

    fn check_kind(&self, o: &OrePoly) -> Result<()> {
        if self.kind != o.kind {
            return Err(Error::KindMismatch);
        }
        Ok(())
    }

    /// Certificate display form: denominators cleared, integer-primitive
    /// content removed, leading coefficient's sign positive.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        // clear denominators: multiply by each distinct denominator factor
        let mut den = MPoly::one();
        for c in &self.coeffs {
            let g = mp_gcd(&den, c.den());
            den = den.mul(&c.den().div_exact(&g).expect("gcd divides"));
        }
        let mut polys: Vec<MPoly> = self
            .coeffs
            .iter()
            .map(|c| {
                c.mul(&RatFunc::from_poly(den.clone()))
                    .num()
                    .clone()
            })
            .collect();
        // strip shared polynomial and rational content
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
        // integer-primitive: clear rational content, leading term positive
        use num_bigint::BigInt;
        use num_traits::{One, Signed, Zero as _};
        let mut lcm = BigInt::one();
        let mut gcd_num = BigInt::zero();
        for p in &polys {
            for (_, c) in p.terms() {
                lcm = num_integer::lcm(lcm, c.denom().clone());
                gcd_num = num_integer::gcd(gcd_num, c.numer().clone());
            }
        }
        if gcd_num.is_zero() {
            gcd_num = BigInt::one();
        }
        let mut factor = Rat::new(lcm, gcd_num);
        let lead_sign = polys
            .iter()
            .rev()
            .find(|p| !p.is_zero())
            .map(|p| p.leading_coeff() * &factor)
            .map(|c| c.is_negative())
            .unwrap_or(false);
        if lead_sign {
            factor = -factor;
        }
        let polys: Vec<MPoly> = polys.iter().map(|p| p.scale(&factor)).collect();
        let u = VarUniverse::default();
        let sym = self.kind.symbol();
        let mut out = String::new();
        for (i, p) in polys.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let (neg, mag) = {
                let s = p.to_text(&u);
                match s.strip_prefix('-') {
                    Some(rest) if p.num_terms() == 1 => (true, rest.to_string()),
                    _ => (false, s),
                }
            };
            let term = if i == 0 {
                if p.num_terms() > 1 && !out.is_empty() {
                    format!("({})", mag)
                } else {
                    mag
                }
            } else {
                let op = if i == 1 {
                    sym.to_string()
                } else {
                    format!("{}^{}", sym, i)
                };
                if mag == "1" {
                    op
                } else if p.num_terms() > 1 {
                    format!("({})*{}", mag, op)
                } else {
                    format!("{}*{}", mag, op)
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
                out.push_str(&term);
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        out
    }
}

/// Left multiplication by the generator: ∂·B.
fn gen_mul(b: &OrePoly) -> OrePoly {
    let n = b.coeffs.len();
    let mut coeffs = vec![RatFunc::zero(); n + 1];
    match b.kind {
        OreKind::Derivation => {
            for (j, c) in b.coeffs.iter().enumerate() {
                coeffs[j + 1] = coeffs[j + 1].add(c);
                coeffs[j] = coeffs[j].add(&c.derivative(T_VAR));
            }
        }
        OreKind::Shift => {
            for (j, c) in b.coeffs.iter().enumerate() {
                coeffs[j + 1] = c.shift(T_VAR, 1);
            }
        }
    }
    OrePoly {
        kind: b.kind,
        coeffs,
    }
    .trimmed()
}

impl OrePoly {
    fn trimmed(mut self) -> OrePoly {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }
}

/// Noncommutative product A·B.
pub fn ore_mul(a: &OrePoly, b: &OrePoly) -> Result<OrePoly> {
    a.check_kind(b)?;
    let mut acc = OrePoly::zero(a.kind);
    let mut row = b.clone(); // ∂^i · B
    for c in &a.coeffs {
        if !c.is_zero() {
            acc = acc.add(&row.scale(c)?)?;
        }
        row = gen_mul(&row);
    }
    Ok(acc)
}

/// Module action on rational functions: Σ ℓ_i δ^i(f) or Σ ℓ_i σ^i(f).
pub fn ore_apply(l: &OrePoly, f: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    let mut cur = f.clone();
    for c in &l.coeffs {
        if !c.is_zero() {
            acc = acc.add(&c.mul(&cur));
        }
        cur = match l.kind {
            OreKind::Derivation => cur.derivative(T_VAR),
            OreKind::Shift => cur.shift(T_VAR, 1),
        };
    }
    acc
}

/// Right division: A = Q·B + R with order(R) < order(B).
pub fn ore_rdivrem(a: &OrePoly, b: &OrePoly) -> Result<(OrePoly, OrePoly)> {
    a.check_kind(b)?;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let db = b.order();
    let mut r = a.clone();
    let mut q = OrePoly::zero(a.kind);
    while !r.is_zero() && r.order() >= db {
        let k = (r.order() - db) as usize;
        // leading coeff of ∂^k·B is lc(B) (derivation) or σ^k(lc B) (shift)
        let lead = match a.kind {
            OreKind::Derivation => b.lc(),
            OreKind::Shift => b.lc().shift(T_VAR, k as i64),
        };
        let c = r.lc().div(&lead)?;
        let mut mono = vec![RatFunc::zero(); k + 1];
        mono[k] = c;
        let term = OrePoly::new(a.kind, mono)?;
        q = q.add(&term)?;
        r = r.sub(&ore_mul(&term, b)?)?;
    }
    Ok((q, r))
}

/// Least common left multiple, monic, of minimal order within the
/// standard bound Σ order(L_i): for each candidate order N the remainders
/// of ∂^k modulo each L_i give a linear system over Q(t) whose nullspace
/// vectors are the common left multiples of order ≤ N.
pub fn ore_lclm(ops: &[OrePoly]) -> Result<OrePoly> {
    if ops.is_empty() {
        return Err(Error::InvalidInput("lclm of empty list".into()));
    }
    let kind = ops[0].kind;
    for op in ops {
        if op.kind != kind {
            return Err(Error::KindMismatch);
        }
        if op.is_zero() {
            return Err(Error::InvalidInput("lclm of zero operator".into()));
        }
    }
    let max_order: i64 = ops.iter().map(|o| o.order()).max().unwrap();
    let sum_order: i64 = ops.iter().map(|o| o.order()).sum();
    // remainders of ∂^k modulo each op, built incrementally
    let mut rems: Vec<Vec<OrePoly>> = vec![Vec::new(); ops.len()];
    for (i, op) in ops.iter().enumerate() {
        let mut cur = OrePoly::one(kind);
        for _ in 0..=sum_order {
            let (_, r) = ore_rdivrem(&cur, op)?;
            rems[i].push(r.clone());
            cur = gen_mul(&r);
        }
    }
    for n in max_order..=sum_order {
        let n = n as usize;
        // unknowns ℓ_0..ℓ_n; equations: each remainder coefficient = 0
        let mut rows: Vec<Vec<RatFunc>> = Vec::new();
        for (i, op) in ops.iter().enumerate() {
            for j in 0..op.order() as usize {
                rows.push(
                    (0..=n)
                        .map(|k| rems[i][k].coeff(j))
                        .collect(),
                );
            }
        }
        let m = Mat::new(rows);
        let ns = nullspace(&m, &RatFunc::one())?;
        // any nonzero vector gives an LCLM of order ≤ n; by minimality of
        // the sweep its top nonzero entry is at n for the first hit
        if let Some(v) = ns.into_iter().next() {
            let l = OrePoly::new(kind, v)?;
            return l.monic();
        }
    }
    Err(Error::InvalidInput(
        "no common left multiple within the order bound".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::MPoly;

    fn t_rf() -> RatFunc {
        RatFunc::var(T_VAR)
    }

    fn op(kind: OreKind, coeffs: Vec<RatFunc>) -> OrePoly {
        OrePoly::new(kind, coeffs).unwrap()
    }

    #[test]
    fn commutation_rules() {
        // D·t = t·D + 1
        let d = OrePoly::gen(OreKind::Derivation);
        let t_op = OrePoly::from_scalar(OreKind::Derivation, t_rf()).unwrap();
        let p = ore_mul(&d, &t_op).unwrap();
        assert_eq!(p, op(OreKind::Derivation, vec![RatFunc::one(), t_rf()]));
        // S·t = (t+1)·S
        let s = OrePoly::gen(OreKind::Shift);
        let t_ops = OrePoly::from_scalar(OreKind::Shift, t_rf()).unwrap();
        let q = ore_mul(&s, &t_ops).unwrap();
        assert_eq!(
            q,
            op(
                OreKind::Shift,
                vec![RatFunc::zero(), t_rf().add(&RatFunc::one())]
            )
        );
    }

    #[test]
    fn rejects_parameters_and_kind_mismatch() {
        let bad = OrePoly::new(OreKind::Derivation, vec![RatFunc::var(1)]);
        assert!(matches!(bad, Err(Error::ParameterInOperator(1))));
        let d = OrePoly::gen(OreKind::Derivation);
        let s = OrePoly::gen(OreKind::Shift);
        assert!(matches!(ore_mul(&d, &s), Err(Error::KindMismatch)));
    }

    #[test]
    fn apply_examples() {
        // D applied to 1/t
        let d = OrePoly::gen(OreKind::Derivation);
        let f = RatFunc::new(MPoly::one(), MPoly::var(0)).unwrap();
        assert_eq!(
            ore_apply(&d, &f),
            RatFunc::new(MPoly::int(-1), MPoly::var(0).pow(2)).unwrap()
        );
        // S applied to 1/(t+x)
        let s = OrePoly::gen(OreKind::Shift);
        let g = RatFunc::new(MPoly::one(), MPoly::var(0).add(&MPoly::var(1))).unwrap();
        assert_eq!(ore_apply(&s, &g), g.shift(T_VAR, 1));
        // (S − t/(t+1)) applied to 1/(tx) gives 0
        let t1 = t_rf().div(&t_rf().add(&RatFunc::one())).unwrap();
        let l = op(OreKind::Shift, vec![t1.neg(), RatFunc::one()]);
        let h = RatFunc::new(MPoly::one(), MPoly::var(0).mul(&MPoly::var(1))).unwrap();
        assert!(ore_apply(&l, &h).is_zero());
    }

    #[test]
    fn rdivrem_examples() {
        let d = OrePoly::gen(OreKind::Derivation);
        let d2 = ore_mul(&d, &d).unwrap();
        let (q, r) = ore_rdivrem(&d2, &d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, d);
        // A = B
        let a = op(
            OreKind::Derivation,
            vec![t_rf(), RatFunc::one(), t_rf().mul(&t_rf())],
        );
        let (q2, r2) = ore_rdivrem(&a, &a).unwrap();
        assert!(r2.is_zero());
        assert_eq!(q2, OrePoly::one(OreKind::Derivation));
    }

    #[test]
    fn rdivrem_reconstruction() {
        for kind in [OreKind::Derivation, OreKind::Shift] {
            let a = op(
                kind,
                vec![
                    RatFunc::int(3),
                    t_rf(),
                    t_rf().add(&RatFunc::one()),
                    RatFunc::one(),
                ],
            );
            let b = op(kind, vec![t_rf(), RatFunc::int(2), t_rf()]);
            let (q, r) = ore_rdivrem(&a, &b).unwrap();
            assert!(r.order() < b.order());
            let back = ore_mul(&q, &b).unwrap().add(&r).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn lclm_examples() {
        let d = OrePoly::gen(OreKind::Derivation);
        // idempotence
        assert_eq!(ore_lclm(&[d.clone(), d.clone()]).unwrap(), d);
        // LCLM(D − 1/t, D) annihilates both t and 1
        let dt = op(
            OreKind::Derivation,
            vec![RatFunc::one().div(&t_rf()).unwrap().neg(), RatFunc::one()],
        );
        let l = ore_lclm(&[dt, d]).unwrap();
        assert_eq!(l.order(), 2);
        assert!(ore_apply(&l, &RatFunc::from_poly(MPoly::var(0))).is_zero());
        assert!(ore_apply(&l, &RatFunc::one()).is_zero());
        // LCLM(S − 1, S − 2) = S² − 3S + 2
        let s1 = op(OreKind::Shift, vec![RatFunc::int(-1), RatFunc::one()]);
        let s2 = op(OreKind::Shift, vec![RatFunc::int(-2), RatFunc::one()]);
        let l2 = ore_lclm(&[s1.clone(), s2.clone()]).unwrap();
        assert_eq!(
            l2,
            op(
                OreKind::Shift,
                vec![RatFunc::int(2), RatFunc::int(-3), RatFunc::one()]
            )
        );
        // right-divisibility
        for b in [&s1, &s2] {
            let (_, r) = ore_rdivrem(&l2, b).unwrap();
            assert!(r.is_zero());
        }
    }

    #[test]
    fn operator_text() {
        // (t+1)·S − t
        let l = op(OreKind::Shift, vec![t_rf().neg(), t_rf().add(&RatFunc::one())]);
        assert_eq!(l.to_text(), "(t + 1)*S - t");
        // t·D + 1 from D + 1/t
        let m = op(
            OreKind::Derivation,
            vec![RatFunc::one().div(&t_rf()).unwrap(), RatFunc::one()],
        );
        assert_eq!(m.to_text(), "t*D + 1");
        assert_eq!(OrePoly::gen(OreKind::Derivation).to_text(), "D");
        assert_eq!(OrePoly::zero(OreKind::Shift).to_text(), "0");
    }
}
