//! Rational functions num/den over Q in the workspace variables.
//!
//! Invariants: den != 0, gcd(num, den) = 1, and den is monic under the
//! graded-lex term order, so equal functions have equal representations.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mpoly::{mp_gcd, MPoly, Rat};
use crate::vars::VarUniverse;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: MPoly::zero(),
                den: MPoly::one(),
            };
        }
        let g = mp_gcd(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        let lc = d.leading_coeff();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(MPoly::int(n))
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(idx: usize) -> Self {
        Self::from_poly(MPoly::var(idx))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Some(c) iff the function is a constant in Q.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        Self::reduced(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        Self::reduced(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        Self::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(
            self.num.mul(&o.den),
            self.den.mul(&o.num),
        ))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::one().div(self)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut r = RatFunc::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// d/d(var) by the quotient rule.
    pub fn derivative(&self, var: usize) -> RatFunc {
        let n = self
            .num
            .derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(var)));
        Self::reduced(n, self.den.mul(&self.den))
    }

    /// var -> var + k.
    pub fn shift(&self, var: usize, k: i64) -> RatFunc {
        Self::reduced(self.num.shift(var, k), self.den.shift(var, k))
    }

    pub fn substitute(&self, var: usize, repl: &RatFunc) -> Result<RatFunc> {
        let eval = |p: &MPoly| -> Result<RatFunc> {
            let coeffs = p.coeffs_in(var);
            let mut r = RatFunc::zero();
            for c in coeffs.iter().rev() {
                r = r.mul(repl).add(&RatFunc::from_poly(c.clone()));
            }
            if coeffs.is_empty() {
                r = RatFunc::zero();
            }
            Ok(r)
        };
        let n = eval(&self.num)?;
        let d = eval(&self.den)?;
        n.div(&d)
    }

    pub fn eval_var(&self, var: usize, value: &Rat) -> Result<RatFunc> {
        let d = self.den.eval_var(var, value);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.num.eval_var(var, value), d)
    }

    pub fn vars_used(&self) -> BTreeSet<usize> {
        let mut s = self.num.vars_used();
        s.extend(self.den.vars_used());
        s
    }

    pub fn free_of(&self, var: usize) -> bool {
        self.num.free_of(var) && self.den.free_of(var)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.vars_used().into_iter().max()
    }

    pub fn to_text(&self, u: &VarUniverse) -> String {
        if self.den.is_one() {
            return self.num.to_text(u);
        }
        let ns = self.num.to_text(u);
        let ds = self.den.to_text(u);
        let np = if self.num.num_terms() > 1 {
            format!("({})", ns)
        } else {
            ns
        };
        // parenthesize whenever re-parsing '/den' could bind differently
        let dp = if self.den.num_terms() > 1 || ds.contains('*') || ds.contains('/') {
            format!("({})", ds)
        } else {
            ds
        };
        format!("{}/{}", np, dp)
    }
}

// ----------------------------------------------------------------------
// univariate view: MPoly in `var` with coefficients in Q(other vars)
// ----------------------------------------------------------------------

/// `p` as a dense univariate polynomial in `var` whose coefficients are
/// rational functions in the remaining variables.
pub fn to_upoly(p: &MPoly, var: usize) -> crate::upoly::UPoly<RatFunc> {
    let coeffs = p
        .coeffs_in(var)
        .into_iter()
        .map(RatFunc::from_poly)
        .collect();
    crate::upoly::UPoly::new(coeffs, &RatFunc::one())
}

/// Inverse of `to_upoly` followed by clearing nothing: the sum of
/// coeff_i * var^i as a rational function.
pub fn upoly_to_ratfunc(p: &crate::upoly::UPoly<RatFunc>, var: usize) -> RatFunc {
    let mut r = RatFunc::zero();
    let v = RatFunc::var(var);
    for c in p.coeffs().iter().rev() {
        r = r.mul(&v).add(c);
    }
    r
}

/// A rational function as a reduced pair of univariate polynomials in
/// `var` over Q(other vars).
pub fn ratfunc_to_upoly_pair(
    f: &RatFunc,
    var: usize,
) -> (crate::upoly::UPoly<RatFunc>, crate::upoly::UPoly<RatFunc>) {
    (to_upoly(f.num(), var), to_upoly(f.den(), var))
}

// ----------------------------------------------------------------------
// partial fractions
// ----------------------------------------------------------------------

/// One term num/factor^power of a partial-fraction decomposition. The
/// numerator's denominator is free of the decomposition variable and
/// deg_var(num) < deg_var(factor).
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFraction {
    pub factor: MPoly,
    pub power: u32,
    pub num: RatFunc,
}

/// Decompose `f` w.r.t. `var` against the given pairwise-coprime factor
/// list `(factor, multiplicity)`. Returns (polynomial part, terms) with
/// f = poly + sum(num_i / factor_i^power_i). The product of the factors
/// with multiplicities must equal den(f) up to a factor free of `var`.
pub fn partial_fractions(
    f: &RatFunc,
    var: usize,
    factors: &[(MPoly, u32)],
) -> Result<(RatFunc, Vec<PartialFraction>)> {
    use crate::upoly::UPoly;
    if f.den().free_of(var) {
        if !factors.iter().all(|(p, _)| p.free_of(var)) {
            return Err(Error::FactorMismatch);
        }
        return Ok((f.clone(), Vec::new()));
    }
    let active: Vec<(MPoly, u32)> = factors
        .iter()
        .filter(|(p, _)| !p.free_of(var))
        .cloned()
        .collect();
    // the factor list must rebuild den(f) up to a var-free unit
    let mut prod = MPoly::one();
    for (p, e) in &active {
        prod = prod.mul(&p.pow(*e));
    }
    match f.den().div_exact(&prod) {
        Some(q) if q.free_of(var) => {}
        _ => return Err(Error::FactorMismatch),
    }
    for i in 0..active.len() {
        for j in i + 1..active.len() {
            if !mp_gcd(&active[i].0, &active[j].0).is_one() {
                return Err(Error::FactorMismatch);
            }
        }
    }

    let (n, d) = ratfunc_to_upoly_pair(f, var);
    let (polypart, mut r) = n.divrem(&d)?;
    // normalize to r/den with den monic in var
    r = r.scale(&d.lc().inv()?);
    let mut den = d.monic()?;
    // repeatedly split off one factor via Bezout
    let mut terms = Vec::new();
    for (p_m, e) in active.iter() {
        let pk: UPoly<RatFunc> = to_upoly(p_m, var).pow(*e).monic()?;
        let other = den.div_exact(&pk)?;
        // s*pk + t*other = 1  =>  r/(pk*other) = (r t)/pk + (r s)/other
        let u = if other.is_one() {
            r.rem(&pk)?
        } else {
            let (g, _s, t) = pk.ext_gcd(&other)?;
            if !g.is_one() {
                return Err(Error::FactorMismatch);
            }
            let u = r.mul(&t).rem(&pk)?;
            // carry the complementary part forward
            r = r.sub(&u.mul(&other)).div_exact(&pk)?;
            u
        };
        // expand u/p^e in p-adic digits
        let pu = to_upoly(p_m, var);
        let mut digits: Vec<UPoly<RatFunc>> = Vec::new();
        let mut cur = u;
        for _ in 0..*e {
            let (q, rr) = cur.divrem(&pu)?;
            digits.push(rr);
            cur = q;
        }
        for (j, dig) in digits.into_iter().enumerate() {
            if dig.is_zero() {
                continue;
            }
            terms.push(PartialFraction {
                factor: p_m.clone(),
                power: *e - j as u32,
                num: upoly_to_ratfunc(&dig, var),
            });
        }
        den = other;
    }
    Ok((upoly_to_ratfunc(&polypart, var), terms))
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        RatFunc::add(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::rat_int;

    fn t() -> MPoly {
        MPoly::var(0)
    }
    fn x() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn canonical_form() {
        // (2t + 2x) / (4t) reduces to (t+x)/(2t); den monic means
        // numerator carries the 1/2.
        let f = RatFunc::new(
            t().add(&x()).scale(&rat_int(2)),
            t().scale(&rat_int(4)),
        )
        .unwrap();
        assert_eq!(f.den(), &t());
        assert_eq!(f.num(), &t().add(&x()).scale(&crate::mpoly::rat(1, 2)));
        // common factor cancels
        let g = RatFunc::new(t().pow(2).sub(&x().pow(2)), t().sub(&x())).unwrap();
        assert!(g.is_polynomial());
        assert_eq!(g.num(), &t().add(&x()));
    }

    #[test]
    fn field_ops() {
        let f = RatFunc::new(MPoly::one(), t().add(&x())).unwrap();
        let g = RatFunc::new(x(), t()).unwrap();
        let s = f.add(&g);
        let back = s.sub(&g);
        assert_eq!(back, f);
        let p = f.mul(&g).div(&g).unwrap();
        assert_eq!(p, f);
        assert!(RatFunc::zero().inv().is_err());
    }

    #[test]
    fn derivative_and_shift() {
        // d/dt 1/(t+x) = -1/(t+x)^2
        let f = RatFunc::new(MPoly::one(), t().add(&x())).unwrap();
        let d = f.derivative(0);
        let expect = RatFunc::new(MPoly::int(-1), t().add(&x()).pow(2)).unwrap();
        assert_eq!(d, expect);
        // shift then unshift
        let s = f.shift(0, 3);
        assert_eq!(s.den(), &t().add(&x()).add(&MPoly::int(3)));
        assert_eq!(s.shift(0, -3), f);
    }

    #[test]
    fn partial_fractions_simple() {
        // (2t+3)/((t-1)(t+2)) = (5/3)/(t-1) + (1/3)/(t+2)
        let f = RatFunc::new(
            t().scale(&rat_int(2)).add(&MPoly::int(3)),
            t().sub(&MPoly::one()).mul(&t().add(&MPoly::int(2))),
        )
        .unwrap();
        let factors = vec![(t().sub(&MPoly::one()), 1u32), (t().add(&MPoly::int(2)), 1)];
        let (poly, terms) = partial_fractions(&f, 0, &factors).unwrap();
        assert!(poly.is_zero());
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].num, RatFunc::constant(crate::mpoly::rat(5, 3)));
        assert_eq!(terms[1].num, RatFunc::constant(crate::mpoly::rat(1, 3)));
        // recombine
        let mut s = poly;
        for pf in &terms {
            let d = RatFunc::from_poly(pf.factor.pow(pf.power));
            s = s.add(&pf.num.div(&d).unwrap());
        }
        assert_eq!(s, f);
    }

    #[test]
    fn partial_fractions_params_and_powers() {
        // 1/(t(t+x)) = (1/x)/t - (1/x)/(t+x)
        let f = RatFunc::new(MPoly::one(), t().mul(&t().add(&x()))).unwrap();
        let factors = vec![(t(), 1u32), (t().add(&x()), 1)];
        let (poly, terms) = partial_fractions(&f, 0, &factors).unwrap();
        assert!(poly.is_zero());
        let inv_x = RatFunc::new(MPoly::one(), x()).unwrap();
        assert_eq!(terms[0].num, inv_x);
        assert_eq!(terms[1].num, inv_x.neg());

        // 1/(t^2(t+1)) = -1/t + 1/t^2 + 1/(t+1), with poly part for (t^2+x)/t
        let g = RatFunc::new(MPoly::one(), t().pow(2).mul(&t().add(&MPoly::one()))).unwrap();
        let factors2 = vec![(t(), 2u32), (t().add(&MPoly::one()), 1)];
        let (p2, ts2) = partial_fractions(&g, 0, &factors2).unwrap();
        assert!(p2.is_zero());
        let mut s = RatFunc::zero();
        for pf in &ts2 {
            assert!(pf.num.den().free_of(0));
            assert!(pf.num.num().deg(0) < pf.factor.deg(0));
            let d = RatFunc::from_poly(pf.factor.pow(pf.power));
            s = s.add(&pf.num.div(&d).unwrap());
        }
        assert_eq!(s, g);

        let h = RatFunc::new(t().pow(2).add(&x()), t()).unwrap();
        let (p3, ts3) = partial_fractions(&h, 0, &[(t(), 1u32)]).unwrap();
        assert_eq!(p3, RatFunc::from_poly(t()));
        assert_eq!(ts3.len(), 1);
        assert_eq!(ts3[0].num, RatFunc::from_poly(x()));
    }

    #[test]
    fn partial_fractions_rejects_bad_factor_list() {
        let f = RatFunc::new(MPoly::one(), t().mul(&t().add(&x()))).unwrap();
        // missing factor
        assert!(partial_fractions(&f, 0, &[(t(), 1u32)]).is_err());
        // non-coprime list
        let g = RatFunc::new(MPoly::one(), t().pow(2)).unwrap();
        assert!(partial_fractions(&g, 0, &[(t(), 1u32), (t(), 1)]).is_err());
    }

    #[test]
    fn freeness() {
        let f = RatFunc::new(x(), t()).unwrap();
        assert!(!f.free_of(0));
        assert!(!f.free_of(1));
        assert!(f.free_of(2));
        assert!(RatFunc::int(5).free_of(0));
    }
}
