#![allow(dead_code)]

//! Shared random generators for the property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use septel::mpoly::rat_int;
use septel::{MPoly, RatFunc};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial in the given variables with small integer
/// coefficients; never zero.
pub fn rand_poly(r: &mut ChaCha8Rng, vars: &[usize], max_deg: u32, terms: u32) -> MPoly {
    loop {
        let mut p = MPoly::zero();
        for _ in 0..terms {
            let mut m = MPoly::constant(rat_int(r.gen_range(-4..=4)));
            for &v in vars {
                m = m.mul(&MPoly::var_pow(v, r.gen_range(0..=max_deg)));
            }
            p = p.add(&m);
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random nonzero rational function.
pub fn rand_ratfunc(r: &mut ChaCha8Rng, vars: &[usize], max_deg: u32) -> RatFunc {
    loop {
        let num = rand_poly(r, vars, max_deg, 3);
        let den = rand_poly(r, vars, max_deg, 2);
        if let Ok(f) = RatFunc::new(num, den) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}
