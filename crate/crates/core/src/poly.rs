//! Exact polynomials over ℤ and ℚ: characteristic polynomials, squarefree
//! decomposition and Sturm-sequence root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spectra::IntMatrix;

/// Largest matrix accepted by [`char_poly_exact`].
pub const CHAR_POLY_MAX_DIM: usize = 64;

/// Polynomial with arbitrary-precision integer coefficients, ascending degree.
/// Trailing zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    /// `x - root`.
    pub fn linear(root: i64) -> Self {
        IntPolynomial::from_i64(&[-root, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(IntPolynomial::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.to_rational().eval(x)
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn char_poly_i128(m: &IntMatrix) -> Option<Vec<i128>> {
    let n = m.n();
    let a: Vec<i128> = (0..n * n).map(|i| i128::from(m.get(i / n, i % n))).collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut mk = vec![0i128; n * n];
    let mut am = vec![0i128; n * n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        for i in 0..n {
            mk[i * n + i] = mk[i * n + i].checked_add(c[n - k + 1])?;
        }
        // A·M_k
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    let x = a[i * n + l];
                    if x != 0 {
                        s = s.checked_add(x.checked_mul(mk[l * n + j])?)?;
                    }
                }
                am[i * n + j] = s;
            }
        }
        let mut tr = 0i128;
        for i in 0..n {
            tr = tr.checked_add(am[i * n + i])?;
        }
        debug_assert_eq!(tr % k as i128, 0);
        c[n - k] = -(tr / k as i128);
        std::mem::swap(&mut mk, &mut am);
    }
    Some(c)
}

fn char_poly_bigint(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.n();
    let a: Vec<BigInt> = (0..n * n).map(|i| BigInt::from(m.get(i / n, i % n))).collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = vec![BigInt::zero(); n * n];
    let mut am = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        let add = c[n - k + 1].clone();
        for i in 0..n {
            mk[i * n + i] += &add;
        }
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    let x = &a[i * n + l];
                    if !x.is_zero() {
                        s += x * &mk[l * n + j];
                    }
                }
                am[i * n + j] = s;
            }
        }
        let tr: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        c[n - k] = -(tr / BigInt::from(k));
        std::mem::swap(&mut mk, &mut am);
    }
    c
}

/// `det(xI - m)` by Faddeev–LeVerrier with exact integer division.
///
/// Runs in checked `i128` first and repeats in `BigInt` on overflow.
pub fn char_poly_exact(m: &IntMatrix) -> Result<IntPolynomial> {
    if m.n() > CHAR_POLY_MAX_DIM {
        return Err(Error::DimensionCap { dim: m.n(), max: CHAR_POLY_MAX_DIM });
    }
    let coeffs = match char_poly_i128(m) {
        Some(c) => c.into_iter().map(BigInt::from).collect(),
        None => char_poly_bigint(m),
    };
    Ok(IntPolynomial::new(coeffs))
}

/// Polynomial with exact rational coefficients, ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPolynomial::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect(),
        )
    }

    pub fn scale(&self, by: &BigRational) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| c * by).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> RatPolynomial {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    pub fn sub(&self, other: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        RatPolynomial::new(
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)).collect(),
        )
    }

    pub fn mul(&self, other: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || other.is_zero() {
            return RatPolynomial::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }

    /// Quotient and remainder of Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (RatPolynomial::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i - d + j] -= &q * c;
                }
            }
            quot[i - d] = q;
        }
        rem.truncate(d);
        (RatPolynomial::new(quot), RatPolynomial::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPolynomial) -> RatPolynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: returns `(a_1, a_2, ...)` with
    /// `self = c · ∏ a_i^i`, each `a_i` monic and squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<RatPolynomial> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
        }
        out
    }
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<RatPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &RatPolynomial) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let len = chain.len();
            if chain[len - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[len - 1].degree() == Some(0) {
                break;
            }
            let r = chain[len - 2].div_rem(&chain[len - 1]).1;
            // scaling by a positive constant keeps every sign
            let r = match r.leading() {
                Some(l) => r.scale(&-(l.abs().recip())),
                None => r,
            };
            chain.push(r);
        }
        SturmSequence { chain }
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign(&p.eval(x));
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }
}

/// An isolating interval `(lo, hi]` for one real root, narrowed to the requested width.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::NAN)
    }

    /// Whether the root is exactly `x` (interval collapsed to `x`) or `x` lies in `(lo, hi]`.
    pub fn contains(&self, x: &BigRational) -> bool {
        (&self.lo < x || (self.lo == self.hi && &self.lo == x)) && x <= &self.hi
    }
}

/// `1 + max |c_i / c_d|`, a bound on the absolute value of every root.
fn cauchy_bound(p: &RatPolynomial) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs[..p.coeffs.len() - 1].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(BigRational::zero);
    max + BigRational::one()
}

/// Narrows `(lo, hi]` holding exactly one root of squarefree `p` until its width is at most `width`.
fn refine(
    p: &RatPolynomial,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(2.into());
    let hi_sign = sign(&p.eval(&hi));
    if hi_sign == 0 {
        return (hi.clone(), hi);
    }
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let s = sign(&p.eval(&mid));
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == hi_sign {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Isolates every distinct real root of squarefree `p` inside `(lo, hi]`, ascending.
fn isolate_squarefree(p: &RatPolynomial, width: &BigRational) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = SturmSequence::new(p);
    let bound = cauchy_bound(p);
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => out.push(refine(p, lo, hi, width)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// All real roots of `p` with multiplicities, ascending, each in an interval of width ≤ `width`.
pub fn real_roots(p: &RatPolynomial, width: f64) -> Vec<RootInterval> {
    let width = rational(width);
    let mut out: Vec<RootInterval> = p
        .squarefree_decomposition()
        .iter()
        .enumerate()
        .flat_map(|(i, factor)| {
            isolate_squarefree(factor, &width).into_iter().map(move |(lo, hi)| RootInterval {
                lo,
                hi,
                multiplicity: i + 1,
            })
        })
        .collect();
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// The largest real root of `p`, `None` if it has none.
pub fn largest_real_root(p: &RatPolynomial, width: f64) -> Option<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let width_q = rational(width);
    let f = p.monic();
    let sq = f.div_rem(&f.gcd(&f.derivative())).0;
    let sturm = SturmSequence::new(&sq);
    let two = BigRational::from_integer(2.into());
    let mut hi = cauchy_bound(&sq);
    let mut lo = -hi.clone();
    if sturm.count(&lo, &hi) == 0 {
        return None;
    }
    // keep the upper part of the interval while it still holds a root
    loop {
        let above = sturm.count(&lo, &hi);
        if above == 1 {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if sturm.count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (lo, hi) = refine(&sq, lo, hi, &width_q);
    let root_mult = {
        let mut m = 0;
        for (i, factor) in f.squarefree_decomposition().iter().enumerate() {
            let s = SturmSequence::new(factor);
            if factor.degree().unwrap_or(0) > 0 && (s.count(&lo, &hi) > 0 || (lo == hi && factor.eval(&lo).is_zero())) {
                m = i + 1;
            }
        }
        m.max(1)
    };
    Some(RootInterval { lo, hi, multiplicity: root_mult })
}
