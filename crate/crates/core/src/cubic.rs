//! The two cubics that control the bipartite bounds, their root isolation,
//! the characteristic-polynomial factorisation of the four-block graph, and
//! the closed forms for the split join `K̄_{n-k} ∨ K_k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::{real_roots, IntPolynomial, RatPolynomial, RootInterval};

/// Accuracy of cubic root isolation.
pub const CUBIC_ROOT_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicKind {
    /// `f`, whose smallest root is `μ_{n-1}` of the four-block graph.
    ThmBipF,
    /// `g`, whose largest root bounds `μ₁` through the dominating quotient.
    ThmTlG,
}

/// A monic cubic with exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Cubic {
    poly: RatPolynomial,
    pub kind: CubicKind,
}

impl Cubic {
    pub fn from_ints(coeffs: [BigInt; 4], kind: CubicKind) -> Self {
        debug_assert!(coeffs[3] == BigInt::from(1));
        Cubic { poly: RatPolynomial::new(coeffs.into_iter().map(BigRational::from_integer).collect()), kind }
    }

    pub fn poly(&self) -> &RatPolynomial {
        &self.poly
    }

    /// Coefficients `[c0, c1, c2, 1]`.
    pub fn coeffs(&self) -> &[BigRational] {
        self.poly.coeffs()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.poly.eval(x)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.poly.eval(&BigRational::from_integer(x.into()))
    }

    /// `18bcd - 4b³d + b²c² - 4c³ - 27d²` for `x³ + bx² + cx + d`; nonnegative iff all roots are real.
    pub fn discriminant(&self) -> BigRational {
        let c = self.coeffs();
        let (d, cc, b) = (&c[0], &c[1], &c[2]);
        let k = |v: i64| BigRational::from_integer(v.into());
        k(18) * b * cc * d - k(4) * b * b * b * d + b * b * cc * cc - k(4) * cc * cc * cc - k(27) * d * d
    }

    /// Integer coefficients when every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPolynomial> {
        let coeffs: Option<Vec<BigInt>> =
            self.coeffs().iter().map(|c| c.is_integer().then(|| c.to_integer())).collect();
        coeffs.map(IntPolynomial::new)
    }
}

fn check_params(n: usize, k: usize, t: usize, ell: usize) -> Result<()> {
    if !(2 <= k && 2 * k <= n && 1 <= t && t <= k && 1 <= ell && ell <= n - k) {
        return Err(Error::InvalidFamily(format!(
            "cubic parameters need 2 <= k <= n/2, 1 <= t <= k, 1 <= l <= n-k; got n={n} k={k} t={t} l={ell}"
        )));
    }
    Ok(())
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

/// `f(x) = x³ - (n+ℓ+t)x² + (kt + nk + ℓn - ℓk + 2ℓt - k²)x - ℓtn`.
pub fn thm_bip_cubic(n: usize, k: usize, t: usize, ell: usize) -> Result<Cubic> {
    check_params(n, k, t, ell)?;
    let (n, k, t, l) = (big(n), big(k), big(t), big(ell));
    let c2 = -(&n + &l + &t);
    let c1 = &k * &t + &n * &k + &l * &n - &l * &k + BigInt::from(2) * &l * &t - &k * &k;
    let c0 = -(&l * &t * &n);
    Ok(Cubic::from_ints([c0, c1, c2, BigInt::from(1)], CubicKind::ThmBipF))
}

/// `g(x) = x³ + (2-2n)x² + (n² + nk - 2n - k² - ℓ - t)x + ℓn + nk² + 2nk - ℓk + tk - n²k - 2k²`.
pub fn thm_tl_cubic(n: usize, k: usize, t: usize, ell: usize) -> Result<Cubic> {
    check_params(n, k, t, ell)?;
    let (n, k, t, l) = (big(n), big(k), big(t), big(ell));
    let two = BigInt::from(2);
    let c2 = &two - &two * &n;
    let c1 = &n * &n + &n * &k - &two * &n - &k * &k - &l - &t;
    let c0 = &l * &n + &n * &k * &k + &two * &n * &k - &l * &k + &t * &k - &n * &n * &k - &two * &k * &k;
    Ok(Cubic::from_ints([c0, c1, c2, BigInt::from(1)], CubicKind::ThmTlG))
}

/// Smallest and largest real roots, each isolated to width `1e-12`.
///
/// Fails with [`Error::ComplexRoots`] when the discriminant is negative.
pub fn isolate_roots(c: &Cubic) -> Result<(RootInterval, RootInterval)> {
    if c.discriminant().is_negative() {
        return Err(Error::ComplexRoots(format!("cubic {:?} has a negative discriminant", c.kind)));
    }
    let roots = real_roots(c.poly(), CUBIC_ROOT_WIDTH);
    match (roots.first(), roots.last()) {
        (Some(lo), Some(hi)) => Ok((lo.clone(), hi.clone())),
        _ => Err(Error::ComplexRoots("no real root found".into())),
    }
}

/// The exponents of `(x-r), (x-k), (x-ℓ), (x-t)` in the factorisation of
/// `det(xI - Q(H))`, or `None` when one would be negative.
fn fqh_exponents(n: usize, k: usize, t: usize, ell: usize) -> Option<[u32; 4]> {
    let r = n - k;
    let e = [t.checked_sub(1)?, ell.checked_sub(1)?, k.checked_sub(t + 1)?, r.checked_sub(ell + 1)?];
    Some(e.map(|x| x as u32))
}

/// `x (x-r)^{t-1} (x-k)^{ℓ-1} (x-ℓ)^{k-t-1} (x-t)^{r-ℓ-1} f(x)` with `r = n - k`.
///
/// Tuples with `t = k` or `ℓ = n - k` make an exponent negative and are rejected.
pub fn fqh_product(n: usize, k: usize, t: usize, ell: usize) -> Result<IntPolynomial> {
    check_params(n, k, t, ell)?;
    let [er, ek, el, et] = fqh_exponents(n, k, t, ell).ok_or_else(|| {
        Error::InvalidFamily(format!("factorisation needs t < k and l < n-k; got n={n} k={k} t={t} l={ell}"))
    })?;
    let f = thm_bip_cubic(n, k, t, ell)?.to_int().expect("integer parameters give integer coefficients");
    let lin = |a: usize| IntPolynomial::linear(a as i64);
    Ok(IntPolynomial::linear(0)
        .mul(&lin(n - k).pow(er))
        .mul(&lin(k).pow(ek))
        .mul(&lin(ell).pow(el))
        .mul(&lin(t).pow(et))
        .mul(&f))
}

fn check_split(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidFamily(format!("split join needs 1 <= k < n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `q₁(K̄_{n-k} ∨ K_k) = n/2 + k - 1 + ½√(n² + 4nk - 4n - 4k² + 4)`.
pub fn hn_q1_closed_form(n: usize, k: usize) -> Result<f64> {
    check_split(n, k)?;
    let (n, k) = (n as f64, k as f64);
    Ok(n / 2.0 + k - 1.0 + 0.5 * (n * n + 4.0 * n * k - 4.0 * n - 4.0 * k * k + 4.0).sqrt())
}

/// `q₁` of the complement `K_{n-k} ∪ K̄_k`, which is `2(n-k-1)`.
pub fn hn_complement_q1(n: usize, k: usize) -> Result<f64> {
    check_split(n, k)?;
    Ok(2.0 * (n - k - 1) as f64)
}

/// `q₁(G)·q₁(Ḡ)` for `G = K̄_{n-k} ∨ K_k`.
pub fn hn_product(n: usize, k: usize) -> Result<f64> {
    Ok(hn_q1_closed_form(n, k)? * hn_complement_q1(n, k)?)
}

/// The limit constant `(5/18)(4 + √14)` of the `H_n` products over `n²`.
pub fn hn_ratio_limit() -> f64 {
    5.0 / 18.0 * (4.0 + 14f64.sqrt())
}
