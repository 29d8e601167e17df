//! Milnor algebras, spectra and characteristic polynomials of monodromy.

use crate::intpoly::{divisors, mobius, totient, IntPoly};
use crate::polycore::{reduced_weights, Exponent, InvertiblePolynomial, JacobianRing, PolyError};
use crate::{frac, Q};
use num_integer::Integer;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error("critical point is not isolated")]
    NotIsolated,
    #[error("eigenvalue multiset is not closed under Galois conjugation")]
    NotRational,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Monomial basis of the Milnor algebra `C[x] / (df)`.
pub fn milnor_basis(f: &InvertiblePolynomial) -> Result<Vec<Exponent>, MonodromyError> {
    let ring = JacobianRing::new(f)?;
    if !ring.vanishes_above_top() {
        return Err(MonodromyError::NotIsolated);
    }
    let top = ring.top_degree();
    let mut basis = Vec::new();
    for m in 0..=top {
        basis.extend(ring.quotient_in_degree(m));
    }
    Ok(basis)
}

/// `mu = prod (d - w_i) / w_i`.
pub fn milnor_number(f: &InvertiblePolynomial) -> Result<u64, MonodromyError> {
    let ws = reduced_weights(f)?;
    let mu: Q = ws
        .weights
        .iter()
        .map(|&w| Q::new(ws.degree - w, w))
        .product();
    if !mu.is_integer() || mu < Q::from_integer(0) {
        return Err(MonodromyError::NotIsolated);
    }
    Ok(mu.to_integer() as u64)
}

/// `alpha(k) = sum (k_i + 1) q_i`.
pub fn exponent_of(charges: &[Q], k: &[u32]) -> Q {
    charges
        .iter()
        .zip(k)
        .map(|(q, &e)| q * Q::from_integer(e as i64 + 1))
        .sum()
}

/// Multiset of rationals, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Spectrum(BTreeMap<Q, usize>);

impl Spectrum {
    pub fn from_values(values: impl IntoIterator<Item = Q>) -> Self {
        let mut m = BTreeMap::new();
        for v in values {
            *m.entry(v).or_insert(0) += 1;
        }
        Spectrum(m)
    }

    pub fn multiplicities(&self) -> &BTreeMap<Q, usize> {
        &self.0
    }

    /// Sorted values with repetition.
    pub fn values(&self) -> Vec<Q> {
        self.0
            .iter()
            .flat_map(|(v, &m)| std::iter::repeat_n(*v, m))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!(self.values().iter().map(|v| v.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Exponents `alpha(k)` over a Milnor basis of `f`.
pub fn spectrum(f: &InvertiblePolynomial) -> Result<Spectrum, MonodromyError> {
    let charges = reduced_weights(f)?.charges();
    let basis = milnor_basis(f)?;
    Ok(Spectrum::from_values(basis.iter().map(|k| exponent_of(&charges, k))))
}

/// A product `prod_{m | h} (lambda^m - 1)^{chi_m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicProduct {
    pub h: i64,
    factors: BTreeMap<i64, i64>,
}

impl CyclotomicProduct {
    /// Builds the product from its exponents, dropping zeros.
    pub fn new(h: i64, factors: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (k, e) in factors {
            *m.entry(k).or_insert(0) += e;
        }
        m.retain(|_, e| *e != 0);
        CyclotomicProduct { h, factors: m }
    }

    pub fn factors(&self) -> &BTreeMap<i64, i64> {
        &self.factors
    }

    /// `prod (t - e[a])` over a multiset of exponents `a`, taken mod 1.
    pub fn from_eigenvalues(values: impl IntoIterator<Item = Q>) -> Result<Self, MonodromyError> {
        // counts[r][k] = multiplicity of e[k/r] with gcd(k, r) = 1.
        let mut counts: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
        for v in values {
            let a = frac(v);
            *counts.entry(*a.denom()).or_default().entry(*a.numer()).or_insert(0) += 1;
        }
        let mut primitive: BTreeMap<i64, i64> = BTreeMap::new();
        for (&r, by_num) in &counts {
            let phi = totient(r as usize);
            let first = *by_num.values().next().unwrap();
            if by_num.len() != phi || by_num.values().any(|&c| c != first) {
                return Err(MonodromyError::NotRational);
            }
            primitive.insert(r, first as i64);
        }
        let h = primitive.keys().fold(1i64, |acc, &r| acc.lcm(&r));
        let mut factors = Vec::new();
        for m in divisors(h as usize) {
            let m = m as i64;
            let chi: i64 = primitive
                .iter()
                .filter(|(&k, _)| k % m == 0)
                .map(|(&k, &a)| mobius((k / m) as usize) * a)
                .sum();
            factors.push((m, chi));
        }
        Ok(CyclotomicProduct::new(h, factors))
    }

    /// Expands to an integer polynomial, or `None` if the quotient is not one.
    pub fn expand(&self) -> Option<IntPoly> {
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for (&m, &e) in &self.factors {
            let p = IntPoly::t_pow_minus_one(m as usize).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        num.div_exact(&den)
    }

    /// `chi^v_k = -chi_{h/k}`.
    pub fn saito_dual(&self) -> CyclotomicProduct {
        CyclotomicProduct::new(self.h, self.factors.iter().map(|(&k, &e)| (self.h / k, -e)))
    }

    /// Degree `sum m chi_m`.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(m, e)| m * e).sum()
    }

    pub fn to_json(&self) -> Value {
        let factors: serde_json::Map<String, Value> = self
            .factors
            .iter()
            .rev()
            .map(|(k, e)| (k.to_string(), json!(e)))
            .collect();
        json!({ "h": self.h, "factors": factors })
    }
}

impl fmt::Display for CyclotomicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .rev()
            .map(|(m, e)| {
                let base = if *m == 1 { "(t-1)".to_string() } else { format!("(t^{m}-1)") };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `phi_f(lambda) = prod (lambda - e[alpha])` over the spectrum.
pub fn characteristic_polynomial(f: &InvertiblePolynomial) -> Result<CyclotomicProduct, MonodromyError> {
    CyclotomicProduct::from_eigenvalues(spectrum(f)?.values())
}

/// Saito duality on cyclotomic products.
pub fn saito_dual(p: &CyclotomicProduct) -> CyclotomicProduct {
    p.saito_dual()
}

/// A rational function `numerator / denominator` with `denominator(0) = ±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl PoincareSeries {
    /// Coefficients of `t^0, ..., t^order`.
    pub fn expand(&self, order: usize) -> Vec<i64> {
        IntPoly::series_quotient(&self.numerator, &self.denominator, order)
            .expect("Poincare denominators have constant term 1")
    }

    /// The quotient as a polynomial, when it is one.
    pub fn as_polynomial(&self) -> Option<IntPoly> {
        self.numerator.div_exact(&self.denominator)
    }
}

/// `(1 - t^d) / prod (1 - t^{w_i})` for the reduced weights.
pub fn poincare_series(f: &InvertiblePolynomial) -> Result<PoincareSeries, MonodromyError> {
    let ws = reduced_weights(f)?;
    let den = ws
        .weights
        .iter()
        .fold(IntPoly::one(), |acc, &w| &acc * &IntPoly::one_minus_t_pow(w as usize));
    Ok(PoincareSeries { numerator: IntPoly::one_minus_t_pow(ws.degree as usize), denominator: den })
}

/// Hilbert-Poincare series `prod (1 - t^{d - w_i}) / (1 - t^{w_i})` of the
/// Milnor algebra.
pub fn milnor_poincare(f: &InvertiblePolynomial) -> Result<PoincareSeries, MonodromyError> {
    let ws = reduced_weights(f)?;
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for &w in &ws.weights {
        num = &num * &IntPoly::one_minus_t_pow((ws.degree - w) as usize);
        den = &den * &IntPoly::one_minus_t_pow(w as usize);
    }
    Ok(PoincareSeries { numerator: num, denominator: den })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_polynomial;

    fn p(s: &str) -> InvertiblePolynomial {
        parse_polynomial(s).unwrap()
    }

    /// Independent oracle for Fermat sums: the spectrum is
    /// `{ sum_i k_i / a_i : 1 <= k_i < a_i }`.
    fn fermat_spectrum(a: &[i64]) -> Spectrum {
        let mut vals = vec![Q::from_integer(0)];
        for &ai in a {
            vals = vals
                .iter()
                .flat_map(|v| (1..ai).map(move |k| v + Q::new(k, ai)))
                .collect();
        }
        Spectrum::from_values(vals)
    }

    #[test]
    fn fermat_spectra_match_oracle() {
        assert_eq!(spectrum(&p("x^2+y^3+z^7")).unwrap(), fermat_spectrum(&[2, 3, 7]));
        assert_eq!(spectrum(&p("x^3+y^3")).unwrap(), fermat_spectrum(&[3, 3]));
        assert_eq!(spectrum(&p("x^5+y^5+z^5")).unwrap(), fermat_spectrum(&[5, 5, 5]));
    }

    #[test]
    fn milnor_numbers_agree_with_basis() {
        for s in ["x^2+y^3+y*z^5", "x^3*y+y^3*z+z^3*x", "x^6*y+y^3+z^2", "x^2*y+y^3*z+z^3", "x*y+y^4*z+z*x"] {
            let f = p(s);
            assert_eq!(milnor_basis(&f).unwrap().len() as u64, milnor_number(&f).unwrap(), "{s}");
        }
    }

    #[test]
    fn degenerate_polynomial_is_rejected() {
        assert_eq!(milnor_basis(&p("x^3 + x^2*y^2")), Err(MonodromyError::NotIsolated));
    }

    #[test]
    fn characteristic_polynomial_examples() {
        let a1 = characteristic_polynomial(&p("x^2")).unwrap();
        assert_eq!(a1, CyclotomicProduct::new(2, [(2, 1), (1, -1)]));
        let e12 = characteristic_polynomial(&p("x^2+y^3+z^7")).unwrap();
        assert_eq!(
            e12,
            CyclotomicProduct::new(42, [(42, 1), (21, -1), (14, -1), (7, 1), (6, -1), (3, 1), (2, 1), (1, -1)])
        );
        assert_eq!(e12.expand().unwrap(), IntPoly::cyclotomic(42));
        let c = characteristic_polynomial(&p("x^3+y^3")).unwrap();
        assert_eq!(c, CyclotomicProduct::new(3, [(3, 1), (1, 1)]));
    }

    #[test]
    fn spectrum_is_symmetric() {
        let s = spectrum(&p("x^2+x*y^3+y*z^3")).unwrap();
        let mirrored = Spectrum::from_values(s.values().iter().map(|a| Q::from_integer(3) - a));
        assert_eq!(s, mirrored);
    }

    #[test]
    fn json_forms() {
        let e12 = characteristic_polynomial(&p("x^2+y^3+z^7")).unwrap();
        let j = e12.to_json();
        assert_eq!(j["h"], 42);
        assert_eq!(j["factors"]["21"], -1);
        let s = spectrum(&p("x^2+y^2")).unwrap().to_json();
        assert_eq!(s, json!(["1"]));
    }

    #[test]
    fn non_rational_multiset_is_rejected() {
        assert_eq!(
            CyclotomicProduct::from_eigenvalues([Q::new(1, 3)]),
            Err(MonodromyError::NotRational)
        );
    }

    #[test]
    fn milnor_poincare_counts_basis_by_degree() {
        for s in ["x^2+y^3+y*z^5", "x^3*y+y^3*z+z^3*x"] {
            let f = p(s);
            let ws = reduced_weights(&f).unwrap();
            let hp = milnor_poincare(&f).unwrap().as_polynomial().unwrap();
            let mut counts = vec![0i64; hp.coeffs().len()];
            for k in milnor_basis(&f).unwrap() {
                counts[ws.degree_of(&k) as usize] += 1;
            }
            assert_eq!(hp.coeffs(), counts.as_slice());
        }
    }
}
