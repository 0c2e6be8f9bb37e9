//! Sparse multivariate polynomials over Q.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the
//! graded lexicographic order with `t` (index 0) greatest. Exponent
//! vectors are stored with trailing zeros trimmed so the same monomial
//! has a unique key regardless of how many variables are in play.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::vars::VarUniverse;

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Exponent vector with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(idx: usize) -> Self {
        let mut e = vec![0; idx + 1];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            let (a, b) = (self.exp(i), other.exp(i));
            if b > a {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial::new(e))
    }

    pub fn with_exp(&self, var: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = e;
        Monomial::new(v)
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q. No zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(rat_int(n))
    }

    pub fn var(idx: usize) -> Self {
        MPoly::from_term(Monomial::var(idx), Rat::one())
    }

    pub fn var_pow(idx: usize, e: u32) -> Self {
        MPoly::from_term(Monomial::var(idx).with_exp(idx, e), Rat::one())
    }

    pub fn from_term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in items {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_assign_term(&mut self, m: Monomial, c: Rat) {
        self.add_term(m, c);
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Some(c) iff the polynomial is a constant (including 0).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn deg(&self, var: usize) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exp(var) as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn vars_used(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            s.extend(m.vars());
        }
        s
    }

    pub fn max_var(&self) -> Option<usize> {
        self.vars_used().into_iter().max()
    }

    pub fn free_of(&self, var: usize) -> bool {
        self.deg(var) <= 0 && self.terms.keys().all(|m| m.exp(var) == 0)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut r = MPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Scale so the leading coefficient (graded-lex order) is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                r.add_term(m.with_exp(var, e - 1), c * rat_int(e as i64));
            }
        }
        r
    }

    /// Coefficient of `var^k`, a polynomial in the other variables.
    pub fn coeff_of(&self, var: usize, k: u32) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(var) == k {
                r.add_term(m.with_exp(var, 0), c.clone());
            }
        }
        r
    }

    /// All coefficients of powers of `var`, index = power; length deg+1.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.deg(var);
        if d < 0 {
            return Vec::new();
        }
        let mut out = vec![MPoly::zero(); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            out[e].add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut r = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            r = r.add(&c.mul(&MPoly::var_pow(var, k as u32)));
        }
        r
    }

    pub fn leading_coeff_in(&self, var: usize) -> MPoly {
        let d = self.deg(var);
        if d < 0 {
            MPoly::zero()
        } else {
            self.coeff_of(var, d as u32)
        }
    }

    /// Substitute `replacement` for `var` (Horner in `var`).
    pub fn substitute(&self, var: usize, replacement: &MPoly) -> MPoly {
        let coeffs = self.coeffs_in(var);
        let mut r = MPoly::zero();
        for c in coeffs.iter().rev() {
            r = r.mul(replacement).add(c);
        }
        r
    }

    /// var -> var + k.
    pub fn shift(&self, var: usize, k: i64) -> MPoly {
        if k == 0 || self.free_of(var) {
            return self.clone();
        }
        let repl = MPoly::var(var).add(&MPoly::int(k));
        self.substitute(var, &repl)
    }

    pub fn eval_var(&self, var: usize, value: &Rat) -> MPoly {
        self.substitute(var, &MPoly::constant(value.clone()))
    }

    /// Rename variables according to `map` (old index -> new index).
    pub fn rename_vars(&self, map: &BTreeMap<usize, usize>) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let n = m.0.len();
            let mut maxi = 0usize;
            for i in 0..n {
                let j = map.get(&i).copied().unwrap_or(i);
                if m.exp(i) > 0 {
                    maxi = maxi.max(j);
                }
            }
            let mut e = vec![0u32; maxi + 1];
            for i in 0..n {
                let j = map.get(&i).copied().unwrap_or(i);
                if m.exp(i) > 0 {
                    e[j] += m.exp(i);
                }
            }
            r.add_term(Monomial::new(e), c.clone());
        }
        r
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (lm, lc) = other.leading().unwrap();
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let qm = rm.div(lm)?;
            let qc = rc / lc;
            let term = MPoly::from_term(qm, qc);
            rem = rem.sub(&term.mul(other));
            quo = quo.add(&term);
        }
        Some(quo)
    }

    pub fn divides(&self, other: &MPoly) -> bool {
        other.div_exact(self).is_some()
    }

    // ------------------------------------------------------------------
    // gcd / content / resultant / squarefree
    // ------------------------------------------------------------------

    /// Content and primitive part w.r.t. `var`: content = gcd of the
    /// coefficients of powers of `var` (free of `var`).
    pub fn content_primitive_in(&self, var: usize) -> (MPoly, MPoly) {
        if self.is_zero() {
            return (MPoly::zero(), MPoly::zero());
        }
        let coeffs = self.coeffs_in(var);
        let mut cont = MPoly::zero();
        for c in &coeffs {
            cont = mp_gcd(&cont, c);
            if cont.is_one() {
                break;
            }
        }
        let pp = self.div_exact(&cont).expect("content divides");
        (cont, pp)
    }

    /// Content/primitive-part with the coefficient ring F[block]:
    /// `self` viewed as a polynomial in the variables outside `block`.
    pub fn content_pp_block(&self, block: &BTreeSet<usize>) -> (MPoly, MPoly) {
        if self.is_zero() {
            return (MPoly::zero(), MPoly::zero());
        }
        // Group terms by the exponents on the complement of `block`.
        let mut groups: BTreeMap<Monomial, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let n = m.0.len();
            let mut outer = vec![0u32; n];
            let mut inner = vec![0u32; n];
            for i in 0..n {
                if block.contains(&i) {
                    inner[i] = m.exp(i);
                } else {
                    outer[i] = m.exp(i);
                }
            }
            groups
                .entry(Monomial::new(outer))
                .or_insert_with(MPoly::zero)
                .add_term(Monomial::new(inner), c.clone());
        }
        let mut cont = MPoly::zero();
        for g in groups.values() {
            cont = mp_gcd(&cont, g);
            if cont.is_one() {
                break;
            }
        }
        let pp = self.div_exact(&cont).expect("content divides");
        (cont, pp)
    }

    pub fn resultant(&self, other: &MPoly, var: usize) -> MPoly {
        resultant(self, other, var)
    }

    pub fn discriminant(&self, var: usize) -> MPoly {
        let n = self.deg(var);
        if n <= 0 {
            return MPoly::zero();
        }
        let res = resultant(self, &self.derivative(var), var);
        let lc = self.leading_coeff_in(var);
        let q = res.div_exact(&lc).expect("lc divides Res(p, p')");
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        q.scale(&rat_int(sign))
    }

    pub fn to_text(&self, u: &VarUniverse) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                parts.push(fmt_rat(&mag));
            }
            for i in m.vars() {
                let e = m.exp(i);
                if e == 1 {
                    parts.push(u.name(i));
                } else {
                    parts.push(format!("{}^{}", u.name(i), e));
                }
            }
            s.push_str(&parts.join("*"));
        }
        s
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

// ----------------------------------------------------------------------
// gcd via subresultant PRS
// ----------------------------------------------------------------------

/// Pseudo-remainder of a by b w.r.t. var: lc(b)^(da-db+1) * a mod b.
fn prem(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let db = b.deg(var);
    debug_assert!(db >= 0);
    let lcb = b.leading_coeff_in(var);
    let mut r = a.clone();
    let mut e = (a.deg(var) - db + 1).max(0);
    while !r.is_zero() && r.deg(var) >= db {
        let dr = r.deg(var);
        let lcr = r.leading_coeff_in(var);
        let shift = MPoly::var_pow(var, (dr - db) as u32);
        r = r.mul(&lcb).sub(&b.mul(&lcr).mul(&shift));
        e -= 1;
    }
    if e > 0 {
        r = r.mul(&lcb.pow(e as u32));
    }
    r
}

/// Scale to coprime integer coefficients with positive leading
/// coefficient (the canonical associate over Z).
fn strip_rat_content(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut den_lcm = num_bigint::BigInt::from(1);
    let mut num_gcd = num_bigint::BigInt::from(0);
    for (_, c) in p.terms() {
        den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        num_gcd = num_integer::gcd(num_gcd, c.numer().clone());
    }
    let mut unit = Rat::new(den_lcm, num_gcd);
    if p.leading_coeff().numer().sign() == num_bigint::Sign::Minus {
        unit = -unit;
    }
    p.scale(&unit)
}

/// Max absolute value of the coefficient numerators (inputs are
/// integer-normalized before this is used).
fn int_height(p: &MPoly) -> num_bigint::BigInt {
    let mut h = num_bigint::BigInt::from(0);
    for (_, c) in p.terms() {
        let a = num_traits::Signed::abs(c.numer());
        if a > h {
            h = a;
        }
    }
    h
}

/// Reassemble a polynomial from the balanced base-xi digits of `e`
/// (coefficient-wise for multivariate digits).
fn gcd_heu_genpoly(e: &MPoly, xi: &num_bigint::BigInt, var: usize) -> MPoly {
    let mut rest = e.clone();
    let mut g = MPoly::zero();
    let mut i = 0u32;
    let half = xi / 2;
    while !rest.is_zero() {
        // digit = rest coefficient-wise balanced mod xi
        let mut digit = MPoly::zero();
        for (m, c) in rest.terms() {
            let mut d = num_integer::Integer::mod_floor(c.numer(), xi);
            if d > half {
                d -= xi;
            }
            if !num_traits::Zero::is_zero(&d) {
                let mono = MPoly::from_terms(vec![(m.clone(), Rat::from(d))]);
                digit = digit.add(&mono);
            }
        }
        g = g.add(&digit.mul(&MPoly::var_pow(var, i)));
        rest = rest.sub(&digit).scale(&Rat::new(1.into(), xi.clone()));
        i += 1;
        if i > 4096 {
            return MPoly::zero(); // defensive; caller verifies anyway
        }
    }
    g
}

/// Heuristic gcd by evaluation at a large integer point and balanced
/// digit reconstruction; result is verified by exact division. Inputs
/// must have coprime integer coefficients. None means "try another
/// method".
fn gcd_heu(a: &MPoly, b: &MPoly, depth: u32) -> Option<MPoly> {
    if depth > 8 {
        return None;
    }
    let vars: BTreeSet<usize> = a.vars_used().union(&b.vars_used()).copied().collect();
    let var = match vars.iter().next_back() {
        None => {
            // integer gcd of the constant terms
            let g = num_integer::gcd(a.leading_coeff().numer().clone(), b.leading_coeff().numer().clone());
            return Some(MPoly::constant(Rat::from(g)));
        }
        Some(v) => *v,
    };
    let h = int_height(a).min(int_height(b));
    let mut xi = num_bigint::BigInt::from(2) * h + num_bigint::BigInt::from(29);
    for _ in 0..6 {
        // degree * log2(xi) caps the size of the evaluated integers
        let bits = xi.bits() as i64;
        let dmax = a.deg(var).max(b.deg(var));
        if dmax * bits > 600_000 {
            return None;
        }
        let xr = Rat::from(xi.clone());
        let av = a.eval_var(var, &xr);
        let bv = b.eval_var(var, &xr);
        if !av.is_zero() && !bv.is_zero() {
            if let Some(gamma) = gcd_heu(&av, &bv, depth + 1) {
                let g = gcd_heu_genpoly(&gamma, &xi, var);
                if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g);
                }
            }
        }
        xi = &xi * num_bigint::BigInt::from(73794) / num_bigint::BigInt::from(27011);
    }
    None
}

/// gcd of primitive polynomials w.r.t. var via the primitive PRS
/// (content and rational-constant stripping after every step keeps
/// coefficient growth bounded).
fn gcd_pp(a0: &MPoly, b0: &MPoly, var: usize) -> MPoly {
    let (mut a, mut b) = if a0.deg(var) >= b0.deg(var) {
        (a0.clone(), b0.clone())
    } else {
        (b0.clone(), a0.clone())
    };
    a = strip_rat_content(&a);
    b = strip_rat_content(&b);
    loop {
        let r = prem(&a, &b, var);
        if r.is_zero() {
            let (_, pp) = b.content_primitive_in(var);
            return pp;
        }
        if r.deg(var) == 0 {
            return MPoly::one();
        }
        let (_, rp) = r.content_primitive_in(var);
        a = b;
        b = strip_rat_content(&rp);
    }
}

/// GCD over Q[x1..xn], normalized so its graded-lex leading coefficient is 1.
pub fn mp_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let vars: BTreeSet<usize> = a.vars_used().union(&b.vars_used()).copied().collect();
    // pivot on the variable with the smallest degree cap to shorten
    // the remainder sequence
    let var = match vars
        .iter()
        .min_by_key(|&&v| a.deg(v).min(b.deg(v)).max(0))
    {
        None => return MPoly::one(),
        Some(v) => *v,
    };
    // fast path: heuristic evaluation gcd, verified by division
    if let Some(g) = gcd_heu(&strip_rat_content(a), &strip_rat_content(b), 0) {
        return g.monic();
    }
    let (ca, pa) = a.content_primitive_in(var);
    let (cb, pb) = b.content_primitive_in(var);
    let gc = mp_gcd(&ca, &cb);
    let gp = if pa.deg(var) == 0 || pb.deg(var) == 0 {
        MPoly::one()
    } else {
        gcd_pp(&pa, &pb, var)
    };
    gc.mul(&gp).monic()
}

// ----------------------------------------------------------------------
// resultant (Sylvester matrix + fraction-free elimination)
// ----------------------------------------------------------------------

pub fn resultant(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let m = a.deg(var);
    let n = b.deg(var);
    if m < 0 || n < 0 {
        return MPoly::zero();
    }
    if m == 0 && n == 0 {
        return MPoly::one();
    }
    if m == 0 {
        return a.pow(n as u32);
    }
    if n == 0 {
        return b.pow(m as u32);
    }
    let (m, n) = (m as usize, n as usize);
    let ac = a.coeffs_in(var);
    let bc = b.coeffs_in(var);
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in ac.iter().enumerate() {
            mat[i][i + (m - j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in bc.iter().enumerate() {
            mat[n + i][i + (n - j)] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant (Bareiss) of a polynomial matrix.
fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut sign = 1i64;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return MPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&rat_int(sign))
}

// ----------------------------------------------------------------------
// squarefree decomposition (Yun)
// ----------------------------------------------------------------------

/// One squarefree factor together with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SqfreeDecomp {
    pub parts: Vec<(MPoly, u32)>,
}

impl SqfreeDecomp {
    pub fn recombine(&self) -> MPoly {
        let mut r = MPoly::one();
        for (f, m) in &self.parts {
            r = r.mul(&f.pow(*m));
        }
        r
    }
}

/// Yun decomposition w.r.t. `var`. The content (free of `var`) is
/// reported as a multiplicity-1 part when nonconstant.
pub fn sqfree_decomp(a: &MPoly, var: usize) -> Result<SqfreeDecomp> {
    if a.is_zero() {
        return Err(Error::InvalidInput("squarefree decomposition of 0".into()));
    }
    let (cont, pp) = a.content_primitive_in(var);
    let mut parts: Vec<(MPoly, u32)> = Vec::new();
    if cont.as_constant().is_none() {
        parts.push((cont.monic(), 1));
    }
    let p = pp.monic();
    if p.deg(var) <= 0 {
        if parts.is_empty() {
            parts.push((MPoly::one(), 1));
        }
        return Ok(SqfreeDecomp { parts });
    }
    // Yun's algorithm.
    let dp = p.derivative(var);
    let g = mp_gcd(&p, &dp);
    let mut c = p.div_exact(&g).expect("gcd divides");
    let mut d = dp.div_exact(&g).expect("gcd divides").sub(&c.derivative(var));
    let mut i = 1u32;
    while c.as_constant().is_none() {
        let f = mp_gcd(&c, &d);
        if f.as_constant().is_none() {
            parts.push((f.clone(), i));
        }
        c = c.div_exact(&f).expect("gcd divides");
        d = d.div_exact(&f).expect("gcd divides").sub(&c.derivative(var));
        i += 1;
    }
    if parts.is_empty() {
        parts.push((MPoly::one(), 1));
    }
    Ok(SqfreeDecomp { parts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> MPoly {
        MPoly::var(0)
    }
    fn x() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn gcd_difference_of_squares() {
        // gcd(t^2 - x^2, t - x) = t - x
        let a = t().mul(&t()).sub(&x().mul(&x()));
        let b = t().sub(&x());
        assert_eq!(mp_gcd(&a, &b), b.monic());
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        let f = t().mul(&x()).scale(&rat_int(3));
        assert_eq!(mp_gcd(&f, &MPoly::zero()), f.monic());
        assert_eq!(mp_gcd(&MPoly::zero(), &MPoly::zero()), MPoly::zero());
    }

    #[test]
    fn gcd_shared_linear_factor() {
        // gcd((t+x)^2 (t-1), (t+x)(t+1)) = t+x
        let tx = t().add(&x());
        let a = tx.pow(2).mul(&t().sub(&MPoly::one()));
        let b = tx.mul(&t().add(&MPoly::one()));
        let g = mp_gcd(&a, &b);
        assert_eq!(g, tx.monic());
        assert!(g.divides(&a) && g.divides(&b));
        // cofactors coprime
        let qa = a.div_exact(&g).unwrap();
        let qb = b.div_exact(&g).unwrap();
        assert!(mp_gcd(&qa, &qb).is_one());
    }

    #[test]
    fn resultant_examples() {
        // Res_t(t-x, t+x) = 2x
        let r = resultant(&t().sub(&x()), &t().add(&x()), 0);
        assert_eq!(r, x().scale(&rat_int(2)));
        // Res_t(t^2+1, t^2+4t+5) = 32
        let a = t().pow(2).add(&MPoly::one());
        let b = t().pow(2).add(&t().scale(&rat_int(4))).add(&MPoly::int(5));
        assert_eq!(resultant(&a, &b, 0), MPoly::int(32));
        // shared factor gives 0
        let g = t().add(&x());
        let p = g.mul(&t().add(&MPoly::one()));
        let q = g.mul(&t().sub(&MPoly::int(2)));
        assert!(resultant(&p, &q, 0).is_zero());
    }

    #[test]
    fn sqfree_examples() {
        let tx = t().add(&x());
        let a = tx.pow(2).mul(&t().sub(&MPoly::one()));
        let d = sqfree_decomp(&a, 0).unwrap();
        assert_eq!(
            d.parts,
            vec![(t().sub(&MPoly::one()), 1), (tx.clone(), 2)]
        );
        // recombination up to constant
        let rec = d.recombine();
        let ratio = a.div_exact(&rec).unwrap();
        assert!(ratio.as_constant().is_some());

        let sq = t().mul(&x()).add(&MPoly::one());
        let d2 = sqfree_decomp(&sq, 0).unwrap();
        assert_eq!(d2.parts, vec![(sq.monic(), 1)]);

        let d3 = sqfree_decomp(&t().pow(3), 0).unwrap();
        assert_eq!(d3.parts, vec![(t(), 3)]);
    }

    #[test]
    fn content_pp_examples() {
        // a = (t^2+1)(x+2), block {x}
        let a = t().pow(2).add(&MPoly::one()).mul(&x().add(&MPoly::int(2)));
        let block: BTreeSet<usize> = [1usize].into_iter().collect();
        let (c, p) = a.content_pp_block(&block);
        assert_eq!(c, x().add(&MPoly::int(2)));
        assert_eq!(p, t().pow(2).add(&MPoly::one()));
        assert_eq!(c.mul(&p), a);

        let b = t().add(&x());
        let (c2, p2) = b.content_pp_block(&block);
        assert!(c2.is_one());
        assert_eq!(p2, b);

        // a = xt + x^2 = x(t+x)
        let e = x().mul(&t()).add(&x().pow(2));
        let (c3, p3) = e.content_pp_block(&block);
        assert_eq!(c3, x());
        assert_eq!(p3, t().add(&x()));
    }

    #[test]
    fn shift_and_substitute() {
        let u = t().pow(2).add(&x());
        let s = u.shift(0, 1); // (t+1)^2 + x
        let expect = t()
            .pow(2)
            .add(&t().scale(&rat_int(2)))
            .add(&MPoly::one())
            .add(&x());
        assert_eq!(s, expect);
        assert_eq!(s.shift(0, -1), u);
    }

    #[test]
    fn discriminant_quadratic() {
        // disc_Y(Y^2 - 2Y + 1 - t) = 4t  (Y at index 2)
        let yv = MPoly::var(2);
        let p = yv
            .pow(2)
            .sub(&yv.scale(&rat_int(2)))
            .add(&MPoly::one())
            .sub(&t());
        assert_eq!(p.discriminant(2), t().scale(&rat_int(4)));
    }
}

