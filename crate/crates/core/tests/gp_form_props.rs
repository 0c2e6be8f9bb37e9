//! Shift-quotient normal form: round-trip and gcd invariants.

mod common;

use common::{rand_poly, rng};
use septel::mpoly::mp_gcd;
use septel::separable::gp_form;
use septel::{RatFunc, T_VAR};

const X: usize = 1;

#[test]
fn gp_form_round_trips_and_satisfies_invariants() {
    let mut r = rng(21);
    let mut done = 0;
    while done < 100 {
        let num = rand_poly(&mut r, &[T_VAR, X], 2, 2);
        let den = rand_poly(&mut r, &[T_VAR, X], 2, 2);
        if den.is_zero() || num.is_zero() {
            continue;
        }
        let a = match RatFunc::new(num, den) {
            Ok(a) if !a.is_zero() => a,
            _ => continue,
        };
        let g = gp_form(&a).unwrap();
        // round trip
        let back = g.recombine().unwrap();
        assert!(back.sub(&a).is_zero(), "recombine != input");
        // z is free of t
        assert!(g.z.num().free_of(T_VAR) && g.z.den().free_of(T_VAR));
        // p, q, rhat are polynomial in t (t-free denominators)
        for part in [&g.p, &g.q, &g.rhat] {
            assert!(part.den().free_of(T_VAR));
        }
        // gcd(q, sigma^k(rhat)) = 1 for k = 0..dispersion bound
        let qm = g.q.num().clone();
        let rm = g.rhat.num().clone();
        let bound = (qm.deg(T_VAR) * rm.deg(T_VAR)).max(0) + 3;
        for k in 0..=bound {
            let gk = mp_gcd(&qm, &rm.shift(T_VAR, k));
            assert!(gk.deg(T_VAR) <= 0, "gcd(q, sigma^{k}(rhat)) nontrivial");
        }
        // gcd(q, p) = 1 and gcd(rhat, sigma(p)) = 1
        let pm = g.p.num().clone();
        assert!(mp_gcd(&qm, &pm).deg(T_VAR) <= 0);
        assert!(mp_gcd(&rm, &pm.shift(T_VAR, 1)).deg(T_VAR) <= 0);
        done += 1;
    }
}

#[test]
fn gp_form_known_example() {
    // a = (t+2)/t = sigma(p)/p with p = t(t+1); q = rhat = 1.
    let t = RatFunc::var(T_VAR);
    let two = RatFunc::int(2);
    let a = t.add(&two).div(&t).unwrap();
    let g = gp_form(&a).unwrap();
    assert!(g.recombine().unwrap().sub(&a).is_zero());
    assert!(g.q.sub(&RatFunc::one()).is_zero());
    assert!(g.rhat.sub(&RatFunc::one()).is_zero());
}
