//! Valuations at a polynomial place, dispersion, and local dispersion.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mpoly::{mp_gcd, MPoly};
use crate::ratfunc::RatFunc;

/// Multiplicity of `p` in the polynomial `a` (0 if coprime).
fn poly_order(a: &MPoly, p: &MPoly) -> u32 {
    let mut cur = a.clone();
    let mut k = 0;
    while let Some(q) = cur.div_exact(p) {
        cur = q;
        k += 1;
    }
    k
}

/// Order of `f` at the place given by the nonconstant polynomial `p`:
/// multiplicity of `p` in the numerator minus in the denominator.
pub fn order_at(f: &RatFunc, p: &MPoly) -> Result<i64> {
    if p.as_constant().is_some() {
        return Err(Error::InvalidInput(
            "order_at needs a nonconstant polynomial place".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput("order_at(0) is undefined".into()));
    }
    Ok(poly_order(f.num(), p) as i64 - poly_order(f.den(), p) as i64)
}

/// Integer roots of a nonzero polynomial in the single variable `var`
/// (coefficients must be rational constants), via the rational-root
/// bound on the cleared-integer form.
pub fn integer_roots(p: &MPoly, var: usize) -> Vec<i64> {
    let coeffs: Vec<_> = p
        .coeffs_in(var)
        .iter()
        .map(|c| c.as_constant().expect("univariate input"))
        .collect();
    if coeffs.is_empty() {
        return Vec::new();
    }
    // clear denominators
    let mut lcm = BigInt::from(1);
    for c in &coeffs {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    // strip the k^m factor (root 0)
    let first_nz = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if first_nz > 0 {
        roots.push(0);
    }
    let a0 = ints[first_nz].abs();
    let eval = |k: i64| -> bool {
        let kb = BigInt::from(k);
        let mut s = BigInt::zero();
        for c in ints.iter().rev() {
            s = s * &kb + c;
        }
        s.is_zero()
    };
    // candidate integer roots divide the trailing coefficient; enumerate
    // its divisors from a trial-division factorization
    for v in divisors_of(&a0) {
        if eval(v) {
            roots.push(v);
        }
        if eval(-v) {
            roots.push(-v);
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Divisors of |n| (n > 0) that fit in i64, from a partial prime
/// factorization. Trial division stops at 10^6; a leftover cofactor is
/// treated as prime, so divisors mixing two factors beyond that bound
/// are not produced (irrelevant here: such shifts would exceed any
/// degree seen in practice).
fn divisors_of(n: &BigInt) -> Vec<i64> {
    let mut rest = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= limit {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest = &rest / &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if rest > BigInt::from(1) {
        primes.push((rest, 1));
    }
    let mut divs: Vec<BigInt> = vec![BigInt::from(1)];
    for (q, e) in &primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut cur = d.clone();
            for _ in 0..=*e {
                next.push(cur.clone());
                cur = &cur * q;
            }
        }
        divs = next;
    }
    divs.into_iter().filter_map(|d| d.to_i64()).collect()
}

/// Nonnegative shifts k with deg_var gcd(u(var), u(var+k)) > 0.
/// Candidates come from the resultant in a fresh shift variable; each is
/// confirmed by an actual gcd. Empty for inputs free of `var`.
pub fn shift_coincidences(u: &MPoly, var: usize) -> Vec<i64> {
    coincidences_with(u, u, var)
        .into_iter()
        .filter(|&k| k >= 0)
        .collect()
}

/// All integers k with deg_var gcd(u(var), p(var+k)) > 0.
pub fn coincidences_with(u: &MPoly, p: &MPoly, var: usize) -> Vec<i64> {
    if u.deg(var) <= 0 || p.deg(var) <= 0 {
        return Vec::new();
    }
    let kvar = u.max_var().unwrap_or(var).max(p.max_var().unwrap_or(var)).max(var) + 1;
    // Specialize every parameter at an integer point that keeps both
    // leading coefficients in `var` nonzero: the resultant then commutes
    // with the specialization, so every true coincidence k remains an
    // integer root of the (univariate in k) specialized resultant.
    // Spurious candidates are removed by an exact gcd check afterwards.
    let mut params: Vec<usize> = u
        .vars_used()
        .union(&p.vars_used())
        .copied()
        .filter(|&v| v != var)
        .collect();
    params.sort_unstable();
    let lu = u.leading_coeff_in(var);
    let lp = p.leading_coeff_in(var);
    let (mut u0, mut p0) = (u.clone(), p.clone());
    for base in 1i64.. {
        let mut lus = lu.clone();
        let mut lps = lp.clone();
        for (i, &v) in params.iter().enumerate() {
            let val = crate::mpoly::rat_int(base + i as i64);
            lus = lus.eval_var(v, &val);
            lps = lps.eval_var(v, &val);
        }
        if !lus.is_zero() && !lps.is_zero() {
            u0 = u.clone();
            p0 = p.clone();
            for (i, &v) in params.iter().enumerate() {
                let val = crate::mpoly::rat_int(base + i as i64);
                u0 = u0.eval_var(v, &val);
                p0 = p0.eval_var(v, &val);
            }
            break;
        }
    }
    let shifted = p0.substitute(var, &MPoly::var(var).add(&MPoly::var(kvar)));
    let res = u0.resultant(&shifted, var);
    let mut out = Vec::new();
    if res.deg(kvar) <= 0 {
        return out;
    }
    for k in integer_roots(&res, kvar) {
        if mp_gcd(u, &p.shift(var, k)).deg(var) > 0 {
            out.push(k);
        }
    }
    out
}

/// Dispersion of `u` w.r.t. `var`: the largest k >= 0 such that u(var)
/// and u(var+k) share a factor involving `var`. `None` when `u` is free
/// of `var`.
pub fn dispersion(u: &MPoly, var: usize) -> Option<i64> {
    shift_coincidences(u, var).into_iter().max()
}

/// Local dispersion of `u` at `p` w.r.t. `var`: the spread max-min of
/// the integers k with gcd(u(var), p(var+k)) nonconstant in `var`.
/// `None` when there is no such k.
pub fn local_dispersion(u: &MPoly, p: &MPoly, var: usize) -> Option<i64> {
    let ks = coincidences_with(u, p, var);
    let min = ks.iter().min()?;
    let max = ks.iter().max()?;
    Some(max - min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::rat;

    fn t() -> MPoly {
        MPoly::var(0)
    }
    fn x() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn order_at_basic() {
        // f = (t+x)^2 / t^3
        let f = RatFunc::new(t().add(&x()).pow(2), t().pow(3)).unwrap();
        assert_eq!(order_at(&f, &t().add(&x())).unwrap(), 2);
        assert_eq!(order_at(&f, &t()).unwrap(), -3);
        assert_eq!(order_at(&f, &t().add(&MPoly::one())).unwrap(), 0);
        assert!(order_at(&f, &MPoly::int(2)).is_err());
        assert!(order_at(&RatFunc::zero(), &t()).is_err());
    }

    #[test]
    fn integer_roots_basic() {
        // (k)(k-3)(k+5)
        let k = t();
        let p = k
            .mul(&k.sub(&MPoly::int(3)))
            .mul(&k.add(&MPoly::int(5)));
        assert_eq!(integer_roots(&p, 0), vec![-5, 0, 3]);
        // no integer roots
        let q = k.pow(2).add(&MPoly::one());
        assert!(integer_roots(&q, 0).is_empty());
        // rational coefficients: (k - 1/2)(k - 2) has only root 2
        let r = k
            .sub(&MPoly::constant(rat(1, 2)))
            .mul(&k.sub(&MPoly::int(2)));
        assert_eq!(integer_roots(&r, 0), vec![2]);
    }

    #[test]
    fn dispersion_example() {
        // u = t(t+1)(t-5)(t^2+1)(t^2+4t+5): dispersion 6,
        // local dispersion at t^2+1 is 2
        let u = t()
            .mul(&t().add(&MPoly::one()))
            .mul(&t().sub(&MPoly::int(5)))
            .mul(&t().pow(2).add(&MPoly::one()))
            .mul(&t().pow(2).add(&t().scale(&crate::mpoly::rat_int(4))).add(&MPoly::int(5)));
        assert_eq!(dispersion(&u, 0), Some(6));
        let p = t().pow(2).add(&MPoly::one());
        assert_eq!(local_dispersion(&u, &p, 0), Some(2));
    }

    #[test]
    fn dispersion_edges() {
        // squarefree with no integer shifts: dis = 0
        let u = t().pow(2).add(&MPoly::one());
        assert_eq!(dispersion(&u, 0), Some(0));
        // free of var
        assert_eq!(dispersion(&x(), 0), None);
        // parameterized: (t+x)(t+x+3) has dispersion 3
        let v = t().add(&x()).mul(&t().add(&x()).add(&MPoly::int(3)));
        assert_eq!(dispersion(&v, 0), Some(3));
        // local dispersion with no hit
        assert_eq!(local_dispersion(&u, &t().add(&MPoly::int(7)), 0), None);
    }
}
