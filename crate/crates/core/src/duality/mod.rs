//! Dolgachev and Gabrielov numbers of pairs `(f, G)` in three variables,
//! the orbifold curves behind them, and the curated singularity dataset.

mod dataset;
mod verify;

pub use dataset::{normalize_name, Dataset, SingularityClass, SingularityRecord, TableFourRow, TABLE_FOUR};
pub use verify::{
    verify_burnside, verify_dataset, verify_et2, verify_group_theory, verify_milnor, verify_orbifold_pair, verify_phi_t,
    verify_record, verify_strange_duality, verify_table, verify_table_four, verify_triples_against_curves, Check, Report,
};

use crate::burnside::BurnsideError;
use crate::coxeter::CoxeterError;
use crate::monodromy::{CyclotomicProduct, MonodromyError};
use crate::orbifold::OrbifoldError;
use crate::polycore::{reduced_weights, InvertiblePolynomial, PolyError};
use crate::symmetry::{Subgroup, SymmetryError};
use crate::{frac, Q};
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("unknown singularity {0:?}")]
    UnknownName(String),
    #[error("group is not contained in SL")]
    NotSL,
    #[error("group does not contain g_0")]
    MissingG0,
    #[error("coordinate {index}: {value} is not divisible by {divisor}")]
    Indivisible { index: usize, value: u64, divisor: u64 },
    #[error("no base numbers for {0}")]
    MissingBaseData(String),
    #[error("expected three variables, got {0}")]
    NotThreeVariables(usize),
    #[error("dataset line {line}: {msg}")]
    Dataset { line: usize, msg: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A multiset of positive integers, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NumberTuple(Vec<u64>);

impl NumberTuple {
    pub fn new(mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        NumberTuple(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum (a_i - 1)`.
    pub fn excess(&self) -> i64 {
        self.0.iter().map(|&a| a as i64 - 1).sum()
    }
}

impl fmt::Display for NumberTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<&[u64]> for NumberTuple {
    fn from(v: &[u64]) -> Self {
        NumberTuple::new(v.to_vec())
    }
}

/// `(gamma'_i / |G/K_i|) * |K_i|` over the coordinates, ones omitted. `K_i`
/// is the subgroup of `G` fixing `x_i`; `base` is indexed by coordinate.
pub fn gabrielov_numbers(base: &[u64], g: &Subgroup) -> Result<NumberTuple, DualityError> {
    if base.len() != g.n() {
        return Err(DualityError::MissingBaseData(format!("{} numbers for {} coordinates", base.len(), g.n())));
    }
    if !g.is_in_sl() {
        return Err(DualityError::NotSL);
    }
    let order = g.order() as u64;
    let mut out = Vec::new();
    for (i, &gamma) in base.iter().enumerate() {
        let k = g.fixing_subgroup(i).order() as u64;
        let index = order / k;
        if gamma % index != 0 {
            return Err(DualityError::Indivisible { index: i, value: gamma, divisor: index });
        }
        if gamma / index != 1 {
            out.extend(std::iter::repeat_n(gamma / index, k as usize));
        }
    }
    Ok(NumberTuple::new(out))
}

/// `(alpha'_i / |H_i/G|) * |G_f/H_i|`, ones omitted, for `G <= H_i <= G_f`.
pub fn dolgachev_via_isotropy(a: &[u64], g: &Subgroup, hs: &[Subgroup]) -> Result<NumberTuple, DualityError> {
    if a.len() != hs.len() {
        return Err(DualityError::MissingBaseData(format!("{} numbers for {} subgroups", a.len(), hs.len())));
    }
    let full = g.ambient().order() as u64;
    let mut out = Vec::new();
    for (i, (&alpha, h)) in a.iter().zip(hs).enumerate() {
        if !g.is_subgroup_of(h) {
            return Err(SymmetryError::AmbientMismatch.into());
        }
        let index = (h.order() / g.order()) as u64;
        if alpha % index != 0 {
            return Err(DualityError::Indivisible { index: i, value: alpha, divisor: index });
        }
        if alpha / index != 1 {
            out.extend(std::iter::repeat_n(alpha / index, (full / h.order() as u64) as usize));
        }
    }
    Ok(NumberTuple::new(out))
}

/// `H_i = dual(K_i)`, with `K_i` the subgroup of the dual group fixing the
/// `i`-th coordinate of the transpose.
pub fn isotropy_subgroups(g: &Subgroup) -> Vec<Subgroup> {
    let d = g.dual();
    (0..g.n()).map(|i| d.fixing_subgroup(i).dual()).collect()
}

fn require_g0(g: &Subgroup) -> Result<(), DualityError> {
    if g.contains_g0() {
        Ok(())
    } else {
        Err(DualityError::MissingG0)
    }
}

/// Dolgachev numbers of `(f, G)` for `G >= G_0`, as the Gabrielov numbers of
/// the dual pair. `base_dual` is `Gamma` of the transpose, indexed by its
/// coordinates.
pub fn dolgachev_numbers(g: &Subgroup, base_dual: &[u64]) -> Result<NumberTuple, DualityError> {
    require_g0(g)?;
    gabrielov_numbers(base_dual, &g.dual())
}

/// Genus of the orbifold curve of `(f, G)`, `G >= G_0`: `j` of the dual group.
pub fn genus(g: &Subgroup) -> Result<usize, DualityError> {
    require_g0(g)?;
    Ok(g.dual().j_invariant())
}

/// `2 - 2g + sum (alpha_i - 1)`.
pub fn stringy_euler(genus: i64, a: &NumberTuple) -> i64 {
    2 - 2 * genus + a.excess()
}

/// `2 - 2j + sum (gamma_i - 1)` over the transformed tuple.
pub fn equivariant_milnor_t(gamma: &NumberTuple, j: i64) -> i64 {
    2 - 2 * j + gamma.excess()
}

/// `(t - 1)^{2 - 2j} prod (t^{gamma_i} - 1) / (t - 1)`.
pub fn phi_t(gamma: &NumberTuple, j: i64) -> CyclotomicProduct {
    let h = gamma.values().iter().fold(1i64, |acc, &g| acc.lcm(&(g as i64)));
    let mut factors = vec![(1, 2 - 2 * j - gamma.len() as i64)];
    factors.extend(gamma.values().iter().map(|&g| (g as i64, 1)));
    CyclotomicProduct::new(h, factors)
}

/// Points of the orbifold curve `[(f^{-1}(0) \ 0) / G^]` with nontrivial
/// isotropy, grouped by the set of nonvanishing coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicPoints {
    pub support: Vec<usize>,
    pub order: u64,
    pub count: u64,
}

/// The isotropy data of the curve of `(f, G)`, computed directly from orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldCurve {
    pub points: Vec<IsotropicPoints>,
}

impl OrbifoldCurve {
    /// Isotropy orders with multiplicity.
    pub fn orders(&self) -> NumberTuple {
        NumberTuple::new(
            self.points
                .iter()
                .flat_map(|p| std::iter::repeat_n(p.order, p.count as usize))
                .collect(),
        )
    }

    /// `sum (1 - 1/alpha)`.
    fn defect(&self) -> Q {
        self.points
            .iter()
            .map(|p| Q::from_integer(p.count as i64) * (Q::from_integer(1) - Q::new(1, p.order as i64)))
            .sum()
    }
}

/// Number of `(t, g)` in `[0, 1) x G` with `t q_j + g_j` integral on `support`;
/// this parametrises `G^ = C^* G` modulo the kernel generated by `(1, -g_0)`.
fn stabilizer_order(q: &[Q], g: &Subgroup, support: &[usize]) -> u64 {
    let a = support[0];
    g.elements()
        .iter()
        .filter(|gamma| {
            let c = frac(-gamma.coords()[a]);
            if c >= q[a] {
                return false;
            }
            let t = c / q[a];
            support.iter().all(|&j| frac(t * q[j] + gamma.coords()[j]).is_zero())
        })
        .count() as u64
}

/// Isotropy orders of the curve of `(f, G)`, from orbit counting on the
/// coordinate strata. Independent of the duality formulas.
pub fn orbifold_curve(f: &InvertiblePolynomial, g: &Subgroup) -> Result<OrbifoldCurve, DualityError> {
    if f.n() != 3 {
        return Err(DualityError::NotThreeVariables(f.n()));
    }
    require_g0(g)?;
    let q = reduced_weights(f)?.charges();
    let inside = |s: &[usize]| -> Vec<Vec<i64>> {
        f.exponents()
            .iter()
            .filter(|e| e.iter().enumerate().all(|(j, &x)| x == 0 || s.contains(&j)))
            .map(|e| s.iter().map(|&j| e[j] as i64).collect())
            .collect()
    };
    let mut points = Vec::new();
    for a in 0..3 {
        let s = [a];
        if inside(&s).is_empty() {
            let order = stabilizer_order(&q, g, &s);
            if order > 1 {
                points.push(IsotropicPoints { support: s.to_vec(), order, count: 1 });
            }
        }
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let s = [a, b];
        let monos = inside(&s);
        if monos.len() != 2 {
            continue;
        }
        let u = [monos[0][0] - monos[1][0], monos[0][1] - monos[1][1]];
        let gcd = u[0].gcd(&u[1]);
        let prim = [u[0] / gcd, u[1] / gcd];
        let image: BTreeSet<Q> = g
            .elements()
            .iter()
            .map(|x| frac(Q::from_integer(prim[0]) * x.coords()[a] + Q::from_integer(prim[1]) * x.coords()[b]))
            .collect();
        let count = gcd as u64 / image.len() as u64;
        let order = stabilizer_order(&q, g, &s);
        if order > 1 {
            points.push(IsotropicPoints { support: s.to_vec(), order, count });
        }
    }
    Ok(OrbifoldCurve { points })
}

/// Genus of the curve of `(f, G)` from the orbifold Riemann-Hurwitz formula
/// for the degree `[G_f : G]` cover of the rational curve of `(f, G_f)`.
pub fn riemann_hurwitz_genus(f: &InvertiblePolynomial, g: &Subgroup) -> Result<Q, DualityError> {
    let full = Subgroup::full(g.ambient().clone());
    let base = orbifold_curve(f, &full)?;
    let cover = orbifold_curve(f, g)?;
    let degree = Q::from_integer(full.order() as i64 / g.order() as i64);
    let two = Q::from_integer(2);
    let chi = degree * (two - base.defect());
    Ok((two - cover.defect() - chi) / two)
}
