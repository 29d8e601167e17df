//! Orbifold E-functions, Hodge numbers and their moments for pairs `(f, G)`.
//!
//! The state space is the direct sum over `g in G` of the `G`-invariant part
//! of the Milnor algebra of `f^g` (the restriction of `f` to the coordinates
//! fixed by `g`), twisted by the volume form on the fixed subspace. A basis
//! monomial `x^k` of sector `g` has bidegree
//! `(n_g - alpha(k) + age(g), alpha(k) + age(g))` and parity `n_g mod 2`;
//! a sector with `n_g = 0` contributes one even class in bidegree
//! `(age(g), age(g))`.

use crate::monodromy::{milnor_basis, CyclotomicProduct, MonodromyError};
use crate::polycore::{reduced_weights, transpose, Exponent, InvertiblePolynomial, PolyError};
use crate::symmetry::{Ambient, SymmetryError, Subgroup};
use crate::Q;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Which of the two standard hypotheses a group satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypothesis {
    pub in_sl: bool,
    pub contains_g0: bool,
}

impl Hypothesis {
    pub fn of(g: &Subgroup) -> Self {
        Hypothesis { in_sl: g.is_in_sl(), contains_g0: g.contains_g0() }
    }

    pub fn any(&self) -> bool {
        self.in_sl || self.contains_g0
    }
}

/// Even and odd dimensions per bidegree `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedTable {
    pub n: usize,
    pub entries: BTreeMap<(Q, Q), (u64, u64)>,
}

impl BigradedTable {
    /// `h^{p,q} = dim_even + dim_odd`.
    pub fn hodge(&self, p: Q, q: Q) -> u64 {
        self.entries.get(&(p, q)).map_or(0, |(e, o)| e + o)
    }

    /// `dim_even - dim_odd`, the coefficient entering the E-function.
    pub fn signed(&self, p: Q, q: Q) -> i64 {
        self.entries.get(&(p, q)).map_or(0, |&(e, o)| e as i64 - o as i64)
    }

    /// Hodge numbers as a map.
    pub fn hodge_numbers(&self) -> BTreeMap<(Q, Q), u64> {
        self.entries
            .iter()
            .map(|(k, (e, o))| (*k, e + o))
            .filter(|(_, h)| *h > 0)
            .collect()
    }

    pub fn total_dimension(&self) -> u64 {
        self.entries.values().map(|(e, o)| e + o).sum()
    }

    fn half_n(&self) -> Q {
        Q::new(self.n as i64, 2)
    }

    /// `E(f, G)(t, tbar)` with centred exponents.
    pub fn e_function(&self) -> EFunction {
        let h = self.half_n();
        let terms = self
            .entries
            .iter()
            .map(|(&(p, q), &(e, o))| ((p - h, q - h), e as i64 - o as i64))
            .filter(|(_, c)| *c != 0)
            .collect();
        EFunction { n: self.n, terms }
    }

    /// `E(1, 1)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries.values().map(|&(e, o)| e as i64 - o as i64).sum()
    }

    /// `sum e^{p,q} (q - n/2)` with `e^{p,q} = dim_even - dim_odd`.
    pub fn mean(&self) -> Q {
        let h = self.half_n();
        self.entries
            .iter()
            .map(|(&(_, q), &(e, o))| Q::from_integer(e as i64 - o as i64) * (q - h))
            .sum()
    }

    /// `sum e^{p,q} (q - n/2)^2`.
    pub fn variance(&self) -> Q {
        let h = self.half_n();
        self.entries
            .iter()
            .map(|(&(_, q), &(e, o))| Q::from_integer(e as i64 - o as i64) * (q - h) * (q - h))
            .sum()
    }

    /// True iff no bidegree carries both even and odd classes.
    pub fn parity_exclusive(&self) -> bool {
        self.entries.values().all(|&(e, o)| e == 0 || o == 0)
    }

    /// Checks `e^{p,q} = (-1)^{p+q} h^{p,q}` (for `sl`) or
    /// `e^{p,q} = (-1)^{q-p} h^{p,q}` (otherwise) in every bidegree.
    pub fn sign_rule_holds(&self, sl: bool) -> bool {
        self.entries.iter().all(|(&(p, q), &(e, o))| {
            let s = if sl { p + q } else { q - p };
            if !s.is_integer() {
                return false;
            }
            let sign = if s.to_integer().rem_euclid(2) == 0 { 1 } else { -1 };
            e as i64 - o as i64 == sign * (e + o) as i64
        })
    }

    /// `prod (t - e[q])^{h^{p,q}}`.
    pub fn characteristic_polynomial(&self) -> Result<CyclotomicProduct, MonodromyError> {
        let vals = self
            .entries
            .iter()
            .flat_map(|(&(_, q), &(e, o))| std::iter::repeat_n(q, (e + o) as usize));
        CyclotomicProduct::from_eigenvalues(vals)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|((p, q), (e, o))| json!({"p": p.to_string(), "q": q.to_string(), "even": e, "odd": o}))
            .collect();
        json!({"n": self.n, "entries": rows})
    }
}

/// A Laurent polynomial in `t, tbar` with rational exponents, keyed by the
/// centred exponents `(p - n/2, q - n/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EFunction {
    pub n: usize,
    pub terms: BTreeMap<(Q, Q), i64>,
}

impl EFunction {
    /// `(-1)^n E(t^{-1}, tbar)`.
    pub fn mirror(&self) -> EFunction {
        let sign = if self.n % 2 == 0 { 1 } else { -1 };
        EFunction {
            n: self.n,
            terms: self.terms.iter().map(|(&(a, b), &c)| ((-a, b), sign * c)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let h = Q::new(self.n as i64, 2);
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((a, b), c)| json!({"p": (a + h).to_string(), "q": (b + h).to_string(), "coeff": c}))
            .collect();
        json!({"n": self.n, "terms": terms})
    }
}

impl fmt::Display for EFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let mut body = Vec::new();
            if !a.is_zero() {
                body.push(format!("t^({a})"));
            }
            if !b.is_zero() {
                body.push(format!("tb^({b})"));
            }
            let mag = c.abs();
            let text = match (mag, body.is_empty()) {
                (m, true) => m.to_string(),
                (1, false) => body.join("*"),
                (m, false) => format!("{m}*{}", body.join("*")),
            };
            write!(f, "{sign}{text}")?;
            first = false;
        }
        Ok(())
    }
}

/// `c_hat = n - 2 sum q_i`.
pub fn central_charge(f: &InvertiblePolynomial) -> Result<Q, PolyError> {
    let q: Q = reduced_weights(f)?.charges().iter().sum();
    Ok(Q::from_integer(f.n() as i64) - q * Q::from_integer(2))
}

fn check_ambient(f: &InvertiblePolynomial, g: &Subgroup) -> Result<(), OrbifoldError> {
    if **g.ambient() == *Ambient::of(f) {
        Ok(())
    } else {
        Err(SymmetryError::AmbientMismatch.into())
    }
}

/// Bigraded even/odd dimensions of the state space of `(f, G)`.
pub fn bigraded_table(f: &InvertiblePolynomial, g: &Subgroup) -> Result<BigradedTable, OrbifoldError> {
    check_ambient(f, g)?;
    let charges = reduced_weights(f)?.charges();
    let gens = g.generators();
    let mut cache: HashMap<u64, (Vec<usize>, Vec<Exponent>)> = HashMap::new();
    let mut entries: BTreeMap<(Q, Q), (u64, u64)> = BTreeMap::new();
    for sector in g.elements() {
        let age = sector.age();
        let (fixed, ng) = sector.fixed_coordinates();
        if ng == 0 {
            entries.entry((age, age)).or_insert((0, 0)).0 += 1;
            continue;
        }
        let mask = sector.fixed_mask();
        if !cache.contains_key(&mask) {
            let restricted = f.restrict(&fixed)?;
            cache.insert(mask, (fixed.clone(), milnor_basis(&restricted)?));
        }
        let (fixed, basis) = &cache[&mask];
        for k in basis {
            let invariant = gens.iter().all(|h| {
                fixed
                    .iter()
                    .zip(k)
                    .map(|(&i, &e)| Q::from_integer(e as i64 + 1) * h.coords()[i])
                    .sum::<Q>()
                    .is_integer()
            });
            if !invariant {
                continue;
            }
            let alpha: Q = fixed
                .iter()
                .zip(k)
                .map(|(&i, &e)| Q::from_integer(e as i64 + 1) * charges[i])
                .sum();
            let p = Q::from_integer(ng as i64) - alpha + age;
            let q = alpha + age;
            let slot = entries.entry((p, q)).or_insert((0, 0));
            if ng % 2 == 0 {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
    }
    Ok(BigradedTable { n: f.n(), entries })
}

/// `E(f, G)(t, tbar)`.
pub fn e_function(f: &InvertiblePolynomial, g: &Subgroup) -> Result<EFunction, OrbifoldError> {
    Ok(bigraded_table(f, g)?.e_function())
}

/// Hodge numbers together with the hypothesis flags of `G`.
pub fn hodge_numbers(
    f: &InvertiblePolynomial,
    g: &Subgroup,
) -> Result<(BTreeMap<(Q, Q), u64>, Hypothesis), OrbifoldError> {
    Ok((bigraded_table(f, g)?.hodge_numbers(), Hypothesis::of(g)))
}

/// `chi(f, G) = E(f, G)(1, 1)`.
pub fn euler_characteristic(f: &InvertiblePolynomial, g: &Subgroup) -> Result<i64, OrbifoldError> {
    Ok(bigraded_table(f, g)?.euler_characteristic())
}

/// Eigenvalue multiset `{e[q]}` with multiplicities `h^{p,q}`.
pub fn characteristic_polynomial_pair(
    f: &InvertiblePolynomial,
    g: &Subgroup,
) -> Result<CyclotomicProduct, OrbifoldError> {
    Ok(bigraded_table(f, g)?.characteristic_polynomial()?)
}

/// Result of comparing `E(f, G)` with `(-1)^n E(f~, G~)(t^{-1}, tbar)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub lhs: EFunction,
    pub rhs: EFunction,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides of the E-function mirror identity.
pub fn duality_check(f: &InvertiblePolynomial, g: &Subgroup) -> Result<DualityReport, OrbifoldError> {
    let lhs = e_function(f, g)?;
    let ft = transpose(f);
    let rhs = e_function(&ft, &g.dual())?.mirror();
    Ok(DualityReport { lhs, rhs })
}

/// `h^{p,q}(f, G) = h^{n-p,q}(f~, G~)`, meaningful for `G` inside `SL`.
pub fn hodge_mirror_holds(f: &InvertiblePolynomial, g: &Subgroup) -> Result<bool, OrbifoldError> {
    let a = bigraded_table(f, g)?.hodge_numbers();
    let b = bigraded_table(&transpose(f), &g.dual())?.hodge_numbers();
    let n = Q::from_integer(f.n() as i64);
    let mirrored: BTreeMap<(Q, Q), u64> = b.into_iter().map(|((p, q), h)| ((n - p, q), h)).collect();
    Ok(a == mirrored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_polynomial;
    use crate::symmetry::parse_group_spec;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn worked_example_x3_y3() {
        let f = parse_polynomial("x^3+y^3").unwrap();
        let g = parse_group_spec(&f, "(1/3, 2/3)").unwrap();
        let e = e_function(&f, &g).unwrap();
        let expected: BTreeMap<(Q, Q), i64> =
            [((q(1, 3), q(-1, 3)), 1), ((q(-1, 3), q(1, 3)), 1), ((q(0, 1), q(0, 1)), 2)].into();
        assert_eq!(e.terms, expected);
        let gd = g.dual();
        assert_eq!(gd.elements()[1].coords(), &[q(1, 3), q(1, 3)]);
        assert!(duality_check(&f, &g).unwrap().holds());
    }

    #[test]
    fn e12_trivial_group_moments() {
        let f = parse_polynomial("x^2+y^3+z^7").unwrap();
        let g = parse_group_spec(&f, "e").unwrap();
        let t = bigraded_table(&f, &g).unwrap();
        assert_eq!(t.euler_characteristic(), -12);
        assert_eq!(t.variance(), q(-22, 21));
        assert_eq!(t.mean(), Q::zero());
        let c = central_charge(&f).unwrap();
        assert_eq!(t.variance(), c * Q::from_integer(t.euler_characteristic()) / Q::from_integer(12));
    }

    #[test]
    fn trivial_group_reproduces_monodromy() {
        let f = parse_polynomial("x^2+x*y^3+y*z^5").unwrap();
        let g = parse_group_spec(&f, "e").unwrap();
        assert_eq!(
            characteristic_polynomial_pair(&f, &g).unwrap(),
            crate::monodromy::characteristic_polynomial(&f).unwrap()
        );
    }

    #[test]
    fn sign_rules_and_parity() {
        let f = parse_polynomial("x^3+y^3+z^3").unwrap();
        for spec in ["e", "SL", "G0", "Gf"] {
            let g = parse_group_spec(&f, spec).unwrap();
            let t = bigraded_table(&f, &g).unwrap();
            let hyp = Hypothesis::of(&g);
            assert!(t.parity_exclusive());
            if hyp.in_sl {
                assert!(t.sign_rule_holds(true), "{spec}");
            }
            if hyp.contains_g0 {
                assert!(t.sign_rule_holds(false), "{spec}");
            }
        }
    }

    #[test]
    fn ambient_is_checked() {
        let f = parse_polynomial("x^2+x*y^3+y*z^5").unwrap();
        let g = Subgroup::maximal(&f).dual();
        assert!(matches!(e_function(&f, &g), Err(OrbifoldError::Symmetry(SymmetryError::AmbientMismatch))));
    }
}
