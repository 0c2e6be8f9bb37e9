//! Arithmetic in a simple algebraic extension K = Q(params)[z]/<m(z)>,
//! plus exact square-root tests used when constructing such extensions.
//!
//! `KElem` implements [`Field`], so the generic univariate/matrix machinery
//! works over K and over K(t) (= `RatPoly<KElem>`). The built-in pipeline
//! only ever constructs extensions whose modulus is irreducible (degree 1,
//! or degree 2 with non-square discriminant), so inversion cannot hit a
//! zero divisor there; a reducible modulus supplied from outside surfaces
//! as [`Error::ZeroDivisor`].

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Rat};
use crate::ratfunc::{to_upoly, RatFunc};
use crate::upoly::{Field, RatPoly, UPoly};
use crate::vars::{VarUniverse, T_VAR};

// ----------------------------------------------------------------------
// exact square roots
// ----------------------------------------------------------------------

/// Square root of a rational, if it is a square of a rational.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Square root of a multivariate polynomial, if it is a perfect square.
pub fn mpoly_sqrt(p: &MPoly) -> Option<MPoly> {
    if p.is_zero() {
        return Some(MPoly::zero());
    }
    if let Some(c) = p.as_constant() {
        return rat_sqrt(&c).map(MPoly::constant);
    }
    let var = *p.vars_used().iter().next().expect("nonconstant");
    let (cont, pp) = p.content_primitive_in(var);
    let sc = mpoly_sqrt(&cont)?;
    // Yun parts of the primitive part are pairwise-coprime squarefree
    // factors, so pp is a square iff every multiplicity is even (up to a
    // rational constant, which must itself be a square).
    let decomp = crate::mpoly::sqfree_decomp(&pp, var).ok()?;
    let mut root = MPoly::one();
    let mut prod = MPoly::one();
    for (f, m) in &decomp.parts {
        if m % 2 != 0 {
            return None;
        }
        root = root.mul(&f.pow(m / 2));
        prod = prod.mul(&f.pow(*m));
    }
    let c0 = pp.div_exact(&prod)?.as_constant()?;
    let s0 = rat_sqrt(&c0)?;
    Some(sc.mul(&root).scale(&s0))
}

/// Square root of a rational function, if it is a square.
pub fn ratfunc_sqrt(f: &RatFunc) -> Option<RatFunc> {
    let n = mpoly_sqrt(f.num())?;
    let d = mpoly_sqrt(f.den())?;
    Some(RatFunc::new(n, d).expect("nonzero denominator"))
}

// ----------------------------------------------------------------------
// the extension and its elements
// ----------------------------------------------------------------------

/// A simple extension of Q(params): K = Q(params)[z]/<m(z)> with m monic.
/// The modulus must be free of the main variable t.
#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    zvar: usize,
    modulus: UPoly<RatFunc>,
}

impl Extension {
    pub fn new(zvar: usize, modulus: UPoly<RatFunc>) -> Result<Arc<Extension>> {
        if modulus.deg() < 1 {
            return Err(Error::InvalidInput(
                "extension modulus must have degree >= 1".into(),
            ));
        }
        if !modulus.lc().is_one() {
            return Err(Error::InvalidInput("extension modulus must be monic".into()));
        }
        if modulus.coeffs().iter().any(|c| !c.free_of(T_VAR)) {
            return Err(Error::InvalidInput(
                "extension modulus must be free of t".into(),
            ));
        }
        Ok(Arc::new(Extension { zvar, modulus }))
    }

    /// The trivial extension K = Q(params), modeled as Q(params)[z]/<z - a>.
    pub fn trivial(zvar: usize, alpha: RatFunc) -> Result<Arc<Extension>> {
        let m = UPoly::new(vec![alpha.neg(), RatFunc::one()], &RatFunc::one());
        Extension::new(zvar, m)
    }

    pub fn zvar(&self) -> usize {
        self.zvar
    }

    pub fn modulus(&self) -> &UPoly<RatFunc> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg().max(0) as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1
    }

    /// For a trivial extension, the value of the generator in Q(params).
    pub fn alpha_value(&self) -> Option<RatFunc> {
        if self.is_trivial() {
            Some(self.modulus.coeff(0).neg())
        } else {
            None
        }
    }

    /// Discriminant of the power basis {1, z, ..., z^{d-1}}.
    pub fn basis_disc(&self) -> RatFunc {
        match self.degree() {
            1 => RatFunc::one(),
            2 => {
                // z^2 + pz + q has discriminant p^2 - 4q.
                let p = self.modulus.coeff(1);
                let q = self.modulus.coeff(0);
                p.mul(&p).sub(&q.scale(&crate::mpoly::rat_int(4)))
            }
            _ => {
                // disc(m) = (-1)^{d(d-1)/2} Res_z(m, m') for monic m.
                let flat = flatten_upoly(&self.modulus, self.zvar);
                let num = flat.num().clone();
                let d = num.discriminant(self.zvar);
                RatFunc::new(d, flat.den().pow(2 * self.degree() as u32 - 2))
                    .expect("nonzero denominator")
            }
        }
    }

    /// The modulus as a polynomial in the z variable over Q(params).
    pub fn modulus_ratfunc(&self) -> RatFunc {
        flatten_upoly(&self.modulus, self.zvar)
    }
}

fn flatten_upoly(p: &UPoly<RatFunc>, var: usize) -> RatFunc {
    crate::ratfunc::upoly_to_ratfunc(p, var)
}

/// An element of K, represented by its reduced polynomial in the generator.
#[derive(Debug, Clone)]
pub struct KElem {
    rep: UPoly<RatFunc>,
    ext: Arc<Extension>,
}

impl PartialEq for KElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl KElem {
    pub fn new(rep: UPoly<RatFunc>, ext: &Arc<Extension>) -> Result<KElem> {
        if rep.coeffs().iter().any(|c| !c.free_of(T_VAR)) {
            return Err(Error::InvalidInput(
                "extension element must be free of t".into(),
            ));
        }
        let rep = rep.rem(&ext.modulus).expect("monic modulus");
        Ok(KElem {
            rep,
            ext: ext.clone(),
        })
    }

    pub fn constant(c: RatFunc, ext: &Arc<Extension>) -> KElem {
        KElem::new(UPoly::constant(c), ext).expect("t-free constant")
    }

    pub fn from_rat(c: Rat, ext: &Arc<Extension>) -> KElem {
        KElem::constant(RatFunc::constant(c), ext)
    }

    /// The generator alpha of the extension.
    pub fn alpha(ext: &Arc<Extension>) -> KElem {
        KElem::new(UPoly::gen(&RatFunc::one()), ext).expect("t-free generator")
    }

    pub fn rep(&self) -> &UPoly<RatFunc> {
        &self.rep
    }

    pub fn ext(&self) -> &Arc<Extension> {
        &self.ext
    }

    /// The element as a rational function in params and the z variable.
    pub fn flatten(&self) -> RatFunc {
        flatten_upoly(&self.rep, self.ext.zvar)
    }

    /// Evaluate all parameter occurrences of `var` at a rational point.
    pub fn eval_param(&self, var: usize, value: &Rat) -> Result<KElem> {
        let coeffs = self
            .rep
            .coeffs()
            .iter()
            .map(|c| c.eval_var(var, value))
            .collect::<Result<Vec<_>>>()?;
        Ok(KElem {
            rep: UPoly::new(coeffs, &RatFunc::one()),
            ext: self.ext.clone(),
        })
    }

    /// Evaluate the generator at a rational value (used after choosing a
    /// rational root b of the specialized modulus).
    pub fn eval_alpha(&self, value: &Rat) -> RatFunc {
        self.rep.eval(&RatFunc::constant(value.clone()))
    }

    pub fn to_text(&self, u: &VarUniverse) -> String {
        self.flatten().to_text(u)
    }
}

impl Field for KElem {
    fn zero_like(&self) -> Self {
        KElem {
            rep: UPoly::zero(&RatFunc::one()),
            ext: self.ext.clone(),
        }
    }
    fn one_like(&self) -> Self {
        KElem {
            rep: UPoly::one(&RatFunc::one()),
            ext: self.ext.clone(),
        }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        KElem {
            rep: UPoly::constant(RatFunc::int(n)),
            ext: self.ext.clone(),
        }
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        KElem {
            rep: UPoly::constant(RatFunc::constant(r.clone())),
            ext: self.ext.clone(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        KElem {
            rep: self.rep.add(&o.rep),
            ext: self.ext.clone(),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        KElem {
            rep: self.rep.sub(&o.rep),
            ext: self.ext.clone(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        KElem {
            rep: self
                .rep
                .mul(&o.rep)
                .rem(&self.ext.modulus)
                .expect("monic modulus"),
            ext: self.ext.clone(),
        }
    }
    fn neg(&self) -> Self {
        KElem {
            rep: self.rep.neg(),
            ext: self.ext.clone(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.rep.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.rep.ext_gcd(&self.ext.modulus)?;
        if g.deg() > 0 {
            let u = VarUniverse::default();
            return Err(Error::ZeroDivisor(
                flatten_upoly(&g, self.ext.zvar).to_text(&u),
            ));
        }
        // g is monic of degree 0, i.e. g = 1, so s is the inverse mod m.
        Ok(KElem {
            rep: s.rem(&self.ext.modulus).expect("monic modulus"),
            ext: self.ext.clone(),
        })
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

// ----------------------------------------------------------------------
// conversions between Q(t, params) and K(t)
// ----------------------------------------------------------------------

/// Embed a rational function of t and params into K(t).
pub fn ratfunc_to_kt(f: &RatFunc, ext: &Arc<Extension>) -> Result<RatPoly<KElem>> {
    let lift = |p: &MPoly| -> UPoly<KElem> {
        to_upoly(p, T_VAR).map_coeffs(&KElem::from_rat(Rat::zero(), ext), |c| {
            KElem::constant(c.clone(), ext)
        })
    };
    RatPoly::new(lift(f.num()), lift(f.den()))
}

/// Flatten a polynomial in t over K to a rational function in t, params
/// and the z variable.
pub fn kt_poly_flatten(p: &UPoly<KElem>) -> RatFunc {
    let t = RatFunc::var(T_VAR);
    let mut r = RatFunc::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        r = r.add(&c.flatten().mul(&t.pow(i as u32)));
    }
    r
}

/// Flatten an element of K(t) to a rational function in t, params and z.
pub fn kt_flatten(f: &RatPoly<KElem>) -> Result<RatFunc> {
    kt_poly_flatten(f.num()).div(&kt_poly_flatten(f.den()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{rat, rat_int};

    fn x() -> RatFunc {
        RatFunc::var(1)
    }

    #[test]
    fn sqrt_tests() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-4, 1)), None);

        // (x^2 + 2x + 1) = (x + 1)^2
        let p = MPoly::var(1)
            .add(&MPoly::one())
            .pow(2)
            .scale(&rat(9, 1));
        let s = mpoly_sqrt(&p).unwrap();
        assert_eq!(s.mul(&s), p);
        assert_eq!(mpoly_sqrt(&MPoly::var(1).add(&MPoly::one())), None);

        // (x/ (x+1))^2 as a rational function
        let f = x().div(&x().add(&RatFunc::one())).unwrap().pow(2);
        let s = ratfunc_sqrt(&f).unwrap();
        assert_eq!(s.mul(&s), f);
        assert_eq!(ratfunc_sqrt(&x()), None);
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        // K = Q(x)[z]/<z^2 - x>, i.e. alpha = sqrt(x).
        let m = UPoly::new(vec![x().neg(), RatFunc::zero(), RatFunc::one()], &RatFunc::one());
        let ext = Extension::new(2, m).unwrap();
        let a = KElem::alpha(&ext);
        assert_eq!(a.mul(&a), KElem::constant(x(), &ext));
        // (1 + alpha)^{-1} = (alpha - 1)/(x - 1)
        let e = a.add(&a.one_like());
        let inv = e.inv().unwrap();
        assert!(e.mul(&inv).eq(&a.one_like()));
        // basis disc of z^2 - x is 4x
        assert_eq!(ext.basis_disc(), x().scale(&rat_int(4)));
    }

    #[test]
    fn reducible_modulus_reports_zero_divisor() {
        // m = z^2 - 1 is reducible; z - 1 is a zero divisor.
        let m = UPoly::new(
            vec![RatFunc::int(-1), RatFunc::zero(), RatFunc::one()],
            &RatFunc::one(),
        );
        let ext = Extension::new(2, m).unwrap();
        let e = KElem::alpha(&ext).sub(&KElem::from_rat(rat_int(1), &ext));
        match e.inv() {
            Err(Error::ZeroDivisor(_)) => {}
            other => panic!("expected zero divisor, got {:?}", other),
        }
    }

    #[test]
    fn kt_round_trip() {
        let ext = Extension::trivial(2, x()).unwrap();
        let t = RatFunc::var(T_VAR);
        let f = t
            .add(&x())
            .div(&t.mul(&t).add(&RatFunc::one()))
            .unwrap();
        let lifted = ratfunc_to_kt(&f, &ext).unwrap();
        assert_eq!(kt_flatten(&lifted).unwrap(), f);
    }
}
