//! Cross-validation: the separability decision for rational functions
//! against an independent brute-force annihilator search, plus exact
//! certificate verification.

mod common;

use common::{rand_poly, rng};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use septel::oracle::brute_force_annihilator;
use septel::ore::{ore_apply, OreKind};
use septel::separable::rational_separable;
use septel::{MPoly, RatFunc, T_VAR};

const X: usize = 1;

/// Denominator of the form q1(t) * q2(x): always split.
fn split_den(r: &mut ChaCha8Rng) -> MPoly {
    let qt = rand_poly(r, &[T_VAR], 2, 2);
    let qx = rand_poly(r, &[X], 2, 2);
    let d = qt.mul(&qx);
    if d.as_constant().is_some() {
        MPoly::var(T_VAR).add(&MPoly::int(1)).mul(&MPoly::var(X))
    } else {
        d
    }
}

/// Denominator with a genuinely mixed irreducible factor (t + x + c):
/// never split.
fn mixed_den(r: &mut ChaCha8Rng) -> MPoly {
    let c = r.gen_range(-3..=3i64);
    let mixed = MPoly::var(T_VAR).add(&MPoly::var(X)).add(&MPoly::int(c));
    let extra = rand_poly(r, &[T_VAR], 1, 2);
    mixed.mul(&extra)
}

#[test]
fn split_denominators_are_separable_with_verified_certificates() {
    let mut r = rng(31);
    for kind in [OreKind::Derivation, OreKind::Shift] {
        let mut done = 0;
        while done < 40 {
            let num = rand_poly(&mut r, &[T_VAR, X], 2, 3);
            let den = split_den(&mut r);
            let f = match RatFunc::new(num, den) {
                Ok(f) if !f.is_zero() => f,
                _ => continue,
            };
            let v = rational_separable(&f, kind).unwrap();
            assert!(v.separable, "split denominator must be separable");
            let cert = v.certificate.expect("certificate expected");
            assert!(!cert.is_zero());
            assert!(
                ore_apply(&cert, &f).is_zero(),
                "certificate does not annihilate the input"
            );
            done += 1;
        }
    }
}

#[test]
fn mixed_denominators_agree_with_oracle_negative() {
    // the oracle searches all operators up to (order, coeff degree);
    // an input rejected by the decision procedure must have none
    let mut r = rng(32);
    for kind in [OreKind::Derivation, OreKind::Shift] {
        let mut done = 0;
        while done < 12 {
            let num = rand_poly(&mut r, &[T_VAR, X], 1, 2);
            let den = mixed_den(&mut r);
            let f = match RatFunc::new(num.clone(), den.clone()) {
                Ok(f) if !f.is_zero() => f,
                _ => continue,
            };
            // keep only inputs whose reduced denominator still has the
            // mixed factor (numerator cancellation can remove it)
            let v = rational_separable(&f, kind).unwrap();
            if v.separable {
                continue;
            }
            let found = brute_force_annihilator(&[f.clone()], kind, 3, 6).unwrap();
            assert!(
                found.is_none(),
                "oracle found an annihilator for a rejected input"
            );
            done += 1;
        }
    }
}

#[test]
fn oracle_agrees_on_small_split_cases() {
    // positive direction: the oracle re-finds an annihilator whenever the
    // decision procedure says separable
    let mut r = rng(33);
    for kind in [OreKind::Derivation, OreKind::Shift] {
        let mut done = 0;
        while done < 12 {
            let num = rand_poly(&mut r, &[T_VAR, X], 1, 2);
            let qt = rand_poly(&mut r, &[T_VAR], 1, 2);
            let qx = rand_poly(&mut r, &[X], 1, 2);
            let den = qt.mul(&qx);
            if den.as_constant().is_some() {
                continue;
            }
            let f = match RatFunc::new(num, den) {
                Ok(f) if !f.is_zero() => f,
                _ => continue,
            };
            let v = rational_separable(&f, kind).unwrap();
            assert!(v.separable);
            let cert = v.certificate.expect("certificate");
            let found = brute_force_annihilator(&[f.clone()], kind, cert.order().max(1) as u32, 8)
                .unwrap()
                .expect("oracle must confirm separability");
            assert!(ore_apply(&found, &f).is_zero());
            assert!(found.order() <= cert.order());
            done += 1;
        }
    }
}
