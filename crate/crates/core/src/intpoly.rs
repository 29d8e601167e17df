//! Dense univariate polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial `sum c_k t^k`, stored with ascending coefficients and no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    /// `t^m - 1`; for `m = 0` this is the zero polynomial.
    pub fn t_pow_minus_one(m: usize) -> Self {
        let mut c = vec![0; m + 1];
        c[m] += 1;
        c[0] -= 1;
        IntPoly::new(c)
    }

    /// `1 - t^m`.
    pub fn one_minus_t_pow(m: usize) -> Self {
        -IntPoly::t_pow_minus_one(m)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let lead = d.0[dd];
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(IntPoly::zero()) } else { None };
        }
        let mut q = vec![0i64; rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd];
            if c == 0 {
                continue;
            }
            if c % lead != 0 {
                return None;
            }
            let f = c / lead;
            q[k] = f;
            for (j, &dj) in d.0.iter().enumerate() {
                rem[k + j] = rem[k + j]
                    .checked_sub(f.checked_mul(dj)?)
                    .expect("coefficient overflow");
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// First `order + 1` coefficients of the power series `num / den`.
    /// Returns `None` unless `den(0) = ±1`, which keeps the expansion integral.
    pub fn series_quotient(num: &IntPoly, den: &IntPoly, order: usize) -> Option<Vec<i64>> {
        let d0 = den.coeff(0);
        if d0 != 1 && d0 != -1 {
            return None;
        }
        let mut out = vec![0i64; order + 1];
        for k in 0..=order {
            let mut acc = num.coeff(k);
            for j in 1..=k.min(den.0.len().saturating_sub(1)) {
                acc -= den.0[j] * out[k - j];
            }
            out[k] = acc * d0;
        }
        Some(out)
    }

    /// The `r`-th cyclotomic polynomial.
    pub fn cyclotomic(r: usize) -> Self {
        assert!(r >= 1, "cyclotomic index must be positive");
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for m in divisors(r) {
            match mobius(r / m) {
                1 => num = &num * &IntPoly::t_pow_minus_one(m),
                -1 => den = &den * &IntPoly::t_pow_minus_one(m),
                _ => {}
            }
        }
        num.div_exact(&den).expect("cyclotomic product is a polynomial")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (k, a) {
                (0, _) => format!("{a}"),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{a}*t"),
                (_, 1) => format!("t^{k}"),
                _ => format!("{a}*t^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.0.iter().enumerate() {
                out[i + j] = a
                    .checked_mul(b)
                    .and_then(|v| out[i + j].checked_add(v))
                    .expect("coefficient overflow");
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Mobius function.
pub fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}
