//! Algebraic properties of Ore operators on random rational functions.

mod common;

use common::{rand_ratfunc, rng};
use rand::Rng;
use septel::ore::{ore_apply, ore_lclm, ore_mul, ore_rdivrem, OreKind, OrePoly};
use septel::{RatFunc, T_VAR};

const X: usize = 1;

fn rand_op(r: &mut rand_chacha::ChaCha8Rng, kind: OreKind, max_order: usize) -> OrePoly {
    loop {
        let ord = r.gen_range(0..=max_order);
        let coeffs: Vec<RatFunc> = (0..=ord)
            .map(|_| {
                if r.gen_bool(0.3) {
                    RatFunc::zero()
                } else {
                    rand_ratfunc(r, &[T_VAR], 1)
                }
            })
            .collect();
        if let Ok(op) = OrePoly::new(kind, coeffs) {
            if !op.is_zero() {
                return op;
            }
        }
    }
}

#[test]
fn apply_is_linear_and_multiplicative() {
    let mut r = rng(11);
    for kind in [OreKind::Derivation, OreKind::Shift] {
        for _ in 0..50 {
            let a = rand_op(&mut r, kind, 2);
            let b = rand_op(&mut r, kind, 2);
            let f = rand_ratfunc(&mut r, &[T_VAR, X], 2);
            let g = rand_ratfunc(&mut r, &[T_VAR, X], 2);
            // linearity: A(f + g) = A(f) + A(g)
            let lhs = ore_apply(&a, &f.add(&g));
            let rhs = ore_apply(&a, &f).add(&ore_apply(&a, &g));
            assert!(lhs.sub(&rhs).is_zero(), "operator application not linear");
            // composition: (A·B)(f) = A(B(f))
            let ab = ore_mul(&a, &b).unwrap();
            let lhs = ore_apply(&ab, &f);
            let rhs = ore_apply(&a, &ore_apply(&b, &f));
            assert!(lhs.sub(&rhs).is_zero(), "ore_mul disagrees with composition");
        }
    }
}

#[test]
fn rdivrem_reconstructs() {
    let mut r = rng(12);
    for kind in [OreKind::Derivation, OreKind::Shift] {
        for _ in 0..50 {
            let a = rand_op(&mut r, kind, 3);
            let b = rand_op(&mut r, kind, 2);
            let (q, rem) = ore_rdivrem(&a, &b).unwrap();
            assert!(rem.is_zero() || rem.order() < b.order());
            let back = ore_mul(&q, &b).unwrap().add(&rem).unwrap();
            assert!(back.sub(&a).unwrap().is_zero(), "A != Q·B + R");
        }
    }
}

#[test]
fn lclm_is_divisible_and_annihilates_jointly() {
    // For first-order D - r'/r and D - s'/s (annihilators of r and s),
    // the LCLM must kill both r and s and be right-divisible by each.
    let mut r = rng(13);
    let mut done = 0;
    while done < 30 {
        let rr = rand_ratfunc(&mut r, &[T_VAR], 2);
        let ss = rand_ratfunc(&mut r, &[T_VAR], 2);
        if rr.is_zero() || ss.is_zero() {
            continue;
        }
        let lr = rr.derivative(T_VAR).div(&rr).unwrap();
        let ls = ss.derivative(T_VAR).div(&ss).unwrap();
        let a = OrePoly::new(OreKind::Derivation, vec![lr.neg(), RatFunc::one()]).unwrap();
        let b = OrePoly::new(OreKind::Derivation, vec![ls.neg(), RatFunc::one()]).unwrap();
        let l = ore_lclm(&[a.clone(), b.clone()]).unwrap();
        assert!(ore_apply(&l, &rr).is_zero(), "LCLM does not annihilate r");
        assert!(ore_apply(&l, &ss).is_zero(), "LCLM does not annihilate s");
        for f in [&a, &b] {
            let (_, rem) = ore_rdivrem(&l, f).unwrap();
            assert!(rem.is_zero(), "LCLM not right-divisible by factor");
        }
        done += 1;
    }
}
