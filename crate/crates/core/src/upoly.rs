//! Generic univariate polynomials and dense linear algebra over an
//! abstract coefficient field.
//!
//! Coefficient types carry their own context (e.g. an algebraic
//! extension), so constants are made from an existing element via
//! `zero_like`/`one_like` rather than free functions. Division can fail
//! in towers that are not known to be fields (zero divisors), hence
//! `inv` returns a `Result`.

use crate::error::{Error, Result};
use crate::mpoly::Rat;
use crate::ratfunc::RatFunc;

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        use num_traits::Zero;
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        use num_traits::One;
        Rat::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        crate::mpoly::rat_int(n)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Result<Self> {
        use num_traits::{One, Zero};
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat::one() / self.clone())
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn one_like(&self) -> Self {
        RatFunc::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        RatFunc::int(n)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        RatFunc::constant(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies the i-th power.
/// No trailing zeros; the zero polynomial has an empty coefficient list.
/// `proto` is a sample coefficient used to mint constants in context.
#[derive(Debug, Clone)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
    proto: F,
}

impl<F: Field> PartialEq for UPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>, proto: &F) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly {
            coeffs,
            proto: proto.one_like(),
        }
    }

    pub fn zero(proto: &F) -> Self {
        UPoly::new(Vec::new(), proto)
    }

    pub fn one(proto: &F) -> Self {
        UPoly::new(vec![proto.one_like()], proto)
    }

    pub fn constant(c: F) -> Self {
        let proto = c.one_like();
        UPoly::new(vec![c], &proto)
    }

    pub fn gen(proto: &F) -> Self {
        UPoly::new(vec![proto.zero_like(), proto.one_like()], proto)
    }

    pub fn proto(&self) -> &F {
        &self.proto
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.proto.zero_like())
    }

    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.proto.one_like()
    }

    pub fn lc(&self) -> F {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.proto.zero_like())
    }

    pub fn add(&self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i).add(&o.coeff(i)));
        }
        UPoly::new(v, &self.proto)
    }

    pub fn sub(&self, o: &UPoly<F>) -> UPoly<F> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> UPoly<F> {
        UPoly::new(self.coeffs.iter().map(|c| c.neg()).collect(), &self.proto)
    }

    pub fn mul(&self, o: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.proto);
        }
        let mut v = vec![self.proto.zero_like(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(v, &self.proto)
    }

    pub fn scale(&self, c: &F) -> UPoly<F> {
        UPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.proto)
    }

    pub fn mul_xpow(&self, k: usize) -> UPoly<F> {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.proto.zero_like(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly::new(v, &self.proto)
    }

    pub fn pow(&self, e: u32) -> UPoly<F> {
        let mut r = UPoly::one(&self.proto);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn monic(&self) -> Result<UPoly<F>> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.lc().inv()?;
        Ok(self.scale(&inv))
    }

    /// Quotient and remainder; requires an invertible leading coefficient.
    pub fn divrem(&self, d: &UPoly<F>) -> Result<(UPoly<F>, UPoly<F>)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lci = d.lc().inv()?;
        let dd = d.deg();
        let mut rem = self.clone();
        let mut quo = vec![self.proto.zero_like(); (self.deg() - dd + 1).max(0) as usize];
        while !rem.is_zero() && rem.deg() >= dd {
            let k = (rem.deg() - dd) as usize;
            let c = rem.lc().mul(&lci);
            quo[k] = quo[k].add(&c);
            rem = rem.sub(&d.scale(&c).mul_xpow(k));
        }
        Ok((UPoly::new(quo, &self.proto), rem))
    }

    pub fn rem(&self, d: &UPoly<F>) -> Result<UPoly<F>> {
        Ok(self.divrem(d)?.1)
    }

    pub fn div_exact(&self, d: &UPoly<F>) -> Result<UPoly<F>> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, o: &UPoly<F>) -> Result<UPoly<F>> {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with g = gcd monic and s*self + t*other = g.
    pub fn ext_gcd(&self, o: &UPoly<F>) -> Result<(UPoly<F>, UPoly<F>, UPoly<F>)> {
        let p = &self.proto;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(p), UPoly::zero(p));
        let (mut t0, mut t1) = (UPoly::zero(p), UPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = r0.lc().inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Formal derivative in the polynomial variable.
    pub fn derivative(&self) -> UPoly<F> {
        if self.coeffs.len() <= 1 {
            return UPoly::zero(&self.proto);
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.proto.from_i64_like(i as i64)))
            .collect();
        UPoly::new(v, &self.proto)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut r = self.proto.zero_like();
        for c in self.coeffs.iter().rev() {
            r = r.mul(x).add(c);
        }
        r
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &UPoly<F>) -> UPoly<F> {
        let mut r = UPoly::zero(&self.proto);
        for c in self.coeffs.iter().rev() {
            r = r.mul(inner).add(&UPoly::constant(c.clone()));
        }
        r
    }

    /// var -> var + k.
    pub fn shift(&self, k: i64) -> UPoly<F> {
        let inner = UPoly::new(
            vec![self.proto.from_i64_like(k), self.proto.one_like()],
            &self.proto,
        );
        self.compose(&inner)
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, proto: &G, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect(), proto)
    }
}

/// Fraction field of UPoly<F>; den monic, gcd-reduced.
#[derive(Debug, Clone)]
pub struct RatPoly<F: Field> {
    num: UPoly<F>,
    den: UPoly<F>,
}

impl<F: Field> PartialEq for RatPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        // canonical form makes structural equality valid
        self.num == other.num && self.den == other.den
    }
}

impl<F: Field> RatPoly<F> {
    pub fn new(num: UPoly<F>, den: UPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::reduced(num, den)
    }

    fn reduced(num: UPoly<F>, den: UPoly<F>) -> Result<Self> {
        if num.is_zero() {
            return Ok(RatPoly {
                den: UPoly::one(num.proto()),
                num,
            });
        }
        let g = num.gcd(&den)?;
        let n = num.div_exact(&g)?;
        let d = den.div_exact(&g)?;
        let inv = d.lc().inv()?;
        Ok(RatPoly {
            num: n.scale(&inv),
            den: d.scale(&inv),
        })
    }

    pub fn from_poly(p: UPoly<F>) -> Self {
        RatPoly {
            den: UPoly::one(p.proto()),
            num: p,
        }
    }

    pub fn num(&self) -> &UPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<F> {
        &self.den
    }

    pub fn as_poly(&self) -> Option<&UPoly<F>> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Derivative w.r.t. the polynomial variable (coefficients are
    /// treated as constants).
    pub fn derivative(&self) -> Result<RatPoly<F>> {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatPoly::new(n, self.den.mul(&self.den))
    }
}

impl<F: Field> Field for RatPoly<F> {
    fn zero_like(&self) -> Self {
        RatPoly::from_poly(UPoly::zero(self.num.proto()))
    }
    fn one_like(&self) -> Self {
        RatPoly::from_poly(UPoly::one(self.num.proto()))
    }
    fn from_i64_like(&self, n: i64) -> Self {
        RatPoly::from_poly(UPoly::constant(self.num.proto().from_i64_like(n)))
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        RatPoly::from_poly(UPoly::constant(self.num.proto().from_rat_like(r)))
    }
    fn add(&self, o: &Self) -> Self {
        RatPoly::reduced(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("field arithmetic")
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        RatPoly::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
            .expect("field arithmetic")
    }
    fn neg(&self) -> Self {
        RatPoly {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatPoly::reduced(self.den.clone(), self.num.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

// ----------------------------------------------------------------------
// dense matrices + nullspace
// ----------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<F>>,
}

impl<F: Field> Mat<F> {
    pub fn new(data: Vec<Vec<F>>) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        debug_assert!(data.iter().all(|r| r.len() == cols));
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, proto: &F) -> Self {
        Mat {
            rows,
            cols,
            data: vec![vec![proto.zero_like(); cols]; rows],
        }
    }

    pub fn identity(n: usize, proto: &F) -> Self {
        let mut m = Mat::zeros(n, n, proto);
        for i in 0..n {
            m.data[i][i] = proto.one_like();
        }
        m
    }

    pub fn add(&self, o: &Mat<F>) -> Mat<F> {
        debug_assert!(self.rows == o.rows && self.cols == o.cols);
        Mat::new(
            self.data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
                .collect(),
        )
    }

    pub fn sub(&self, o: &Mat<F>) -> Mat<F> {
        debug_assert!(self.rows == o.rows && self.cols == o.cols);
        Mat::new(
            self.data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect())
                .collect(),
        )
    }

    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        debug_assert_eq!(self.cols, o.rows);
        let proto = self.proto();
        let mut out = Mat::zeros(self.rows, o.cols, &proto);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i][j] =
                        out.data[i][j].add(&self.data[i][k].mul(&o.data[k][j]));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        Mat::new(
            self.data
                .iter()
                .map(|r| r.iter().map(|x| x.mul(c)).collect())
                .collect(),
        )
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat::new(
            self.data
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        )
    }

    fn proto(&self) -> F {
        self.data
            .first()
            .and_then(|r| r.first())
            .map(|c| c.one_like())
            .expect("nonempty matrix")
    }
}

/// Basis of the right nullspace of `m` (vectors v with m v = 0), by
/// Gaussian elimination. Inversion failures (zero divisors in towers
/// that are not fields) propagate.
pub fn nullspace<F: Field>(m: &Mat<F>, proto: &F) -> Result<Vec<Vec<F>>> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.data.clone();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let piv = (r..rows).find(|&i| !a[i][c].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        a.swap(r, piv);
        let inv = a[r][c].inv()?;
        for j in c..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = a[r][j].mul(&f);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
    }
    let mut basis = Vec::new();
    for c in 0..cols {
        if pivot_of_col[c].is_some() {
            continue;
        }
        let mut v = vec![proto.zero_like(); cols];
        v[c] = proto.one_like();
        for (j, p) in pivot_of_col.iter().enumerate() {
            if let Some(pr) = p {
                v[j] = a[*pr][c].neg();
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Determinant by fraction-full Gaussian elimination (fine for the small
/// matrices that show up here).
pub fn det<F: Field>(m: &Mat<F>, proto: &F) -> Result<F> {
    debug_assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.data.clone();
    let mut d = proto.one_like();
    for c in 0..n {
        let piv = match (c..n).find(|&i| !a[i][c].is_zero()) {
            Some(p) => p,
            None => return Ok(proto.zero_like()),
        };
        if piv != c {
            a.swap(c, piv);
            d = d.neg();
        }
        d = d.mul(&a[c][c]);
        let inv = a[c][c].inv()?;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let t = a[c][j].mul(&f);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    Ok(d)
}

/// Matrix inverse over a field; `None` if singular.
pub fn mat_inverse<F: Field>(m: &Mat<F>, proto: &F) -> Result<Option<Mat<F>>> {
    debug_assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.data.clone();
    let mut b = Mat::identity(n, proto).data;
    for c in 0..n {
        let piv = match (c..n).find(|&i| !a[i][c].is_zero()) {
            Some(p) => p,
            None => return Ok(None),
        };
        a.swap(c, piv);
        b.swap(c, piv);
        let inv = a[c][c].inv()?;
        for j in 0..n {
            a[c][j] = a[c][j].mul(&inv);
            b[c][j] = b[c][j].mul(&inv);
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = a[c][j].mul(&f);
                    a[i][j] = a[i][j].sub(&t);
                    let t = b[c][j].mul(&f);
                    b[i][j] = b[i][j].sub(&t);
                }
            }
        }
    }
    Ok(Some(Mat::new(b)))
}
