//! Properties of orders/valuations and dispersion on random inputs.

mod common;

use common::{rand_poly, rand_ratfunc, rng};
use rand::Rng;
use septel::valdis::{dispersion, local_dispersion, order_at};
use septel::{MPoly, T_VAR};

const X: usize = 1;

#[test]
fn order_is_additive() {
    let mut r = rng(7);
    let mut done = 0;
    while done < 100 {
        // random primitive linear polynomial: always irreducible, so the
        // valuation at p is well defined and additive
        let a = r.gen_range(1..=4i64);
        let b = r.gen_range(-4..=4i64);
        let c = r.gen_range(-4..=4i64);
        let p = MPoly::var(T_VAR)
            .scale(&septel::mpoly::rat_int(a))
            .add(&MPoly::var(X).scale(&septel::mpoly::rat_int(b)))
            .add(&MPoly::int(c));
        let f = rand_ratfunc(&mut r, &[T_VAR, X], 2);
        let g = rand_ratfunc(&mut r, &[T_VAR, X], 2);
        let fg = f.mul(&g);
        if fg.is_zero() {
            continue;
        }
        let (of, og, ofg) = (
            order_at(&f, &p).unwrap(),
            order_at(&g, &p).unwrap(),
            order_at(&fg, &p).unwrap(),
        );
        assert_eq!(ofg, of + og, "nu_p(fg) != nu_p(f) + nu_p(g)");
        done += 1;
    }
}

#[test]
fn dispersion_shifts_by_rho() {
    // dis(u * u(x + rho)) = dis(u) + rho for any nonconstant u in x.
    let mut r = rng(8);
    let mut done = 0;
    while done < 100 {
        let u = rand_poly(&mut r, &[X], 3, 3);
        if u.deg(X) <= 0 {
            continue;
        }
        let rho = r.gen_range(0..=3i64);
        let prod = u.mul(&u.shift(X, rho));
        let base = dispersion(&u, X).unwrap_or(0);
        assert_eq!(dispersion(&prod, X), Some(base + rho));
        done += 1;
    }
}

#[test]
fn local_dispersion_sees_planted_orbit() {
    // prod = u * u(x + rho) has a k = 0 and a k = rho coincidence with
    // u, so the spread is at least rho.
    let mut r = rng(9);
    let mut done = 0;
    while done < 100 {
        let u = rand_poly(&mut r, &[X], 2, 2);
        if u.deg(X) <= 0 {
            continue;
        }
        let rho = r.gen_range(1..=3i64);
        let prod = u.mul(&u.shift(X, rho));
        let l = local_dispersion(&prod, &u, X).expect("coincidence exists");
        assert!(l >= rho, "planted orbit not detected");
        done += 1;
    }
    // sanity: a known exact case
    let u = MPoly::var(X);
    let prod = u.mul(&u.shift(X, 2));
    assert_eq!(local_dispersion(&prod, &u, X), Some(2));
}
