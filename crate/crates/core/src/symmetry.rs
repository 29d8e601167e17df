//! Finite diagonal symmetry groups of invertible polynomials.
//!
//! An element `g = (e[a_1], ..., e[a_n])` is stored as its rational log
//! coordinates `a_i` in `[0, 1)`. The maximal group of `f` is
//! `G_f = E^{-1} Z^n / Z^n`; every [`Subgroup`] remembers which exponent
//! matrix it lives over, so that groups of `f` and of its transpose cannot be
//! mixed by accident.

use crate::polycore::InvertiblePolynomial;
use crate::{frac, linalg, Q};
use num_traits::Zero;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

/// Default bound on the group order for subgroup-lattice enumeration.
pub const DEFAULT_SUBGROUP_BOUND: usize = 10_000;

/// Hard cap on element enumeration for a single group.
const ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("{0} is not a diagonal symmetry of the polynomial")]
    NotASymmetry(String),
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("groups live over different polynomials")]
    AmbientMismatch,
    #[error("cannot parse group element: {0}")]
    Parse(String),
}

/// A diagonal symmetry, in log coordinates reduced to `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<Q>);

impl GroupElement {
    pub fn new(coords: Vec<Q>) -> Self {
        GroupElement(coords.into_iter().map(frac).collect())
    }

    pub fn identity(n: usize) -> Self {
        GroupElement(vec![Q::zero(); n])
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(&other.0).map(|(a, b)| frac(a + b)).collect())
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| frac(-a)).collect())
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        GroupElement(self.0.iter().map(|a| frac(a * Q::from_integer(k))).collect())
    }

    /// Order of the element.
    pub fn order(&self) -> i64 {
        crate::lcm_denominators(&self.0)
    }

    /// `age(g) = sum a_i`.
    pub fn age(&self) -> Q {
        self.0.iter().sum()
    }

    /// Indices of coordinates fixed by `g` and their number `n_g`.
    pub fn fixed_coordinates(&self) -> (Vec<usize>, usize) {
        let fixed: Vec<usize> = (0..self.n()).filter(|&i| self.0[i].is_zero()).collect();
        let n = fixed.len();
        (fixed, n)
    }

    /// Bit mask of fixed coordinates.
    pub fn fixed_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_zero())
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Parses `(a_1, ..., a_n)` with rational entries.
    pub fn parse(text: &str) -> Result<GroupElement, SymmetryError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| SymmetryError::Parse(text.to_string()))?;
        let coords = inner
            .split(',')
            .map(|s| parse_rational(s.trim()).ok_or_else(|| SymmetryError::Parse(text.to_string())))
            .collect::<Result<Vec<Q>, _>>()?;
        Ok(GroupElement::new(coords))
    }
}

fn parse_rational(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => {
            let n: i64 = a.trim().parse().ok()?;
            let d: i64 = b.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The exponent matrix a group acts through.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    exponents: Vec<Vec<i64>>,
    det: i64,
}

impl Ambient {
    pub fn of(f: &InvertiblePolynomial) -> Arc<Ambient> {
        Arc::new(Ambient { exponents: f.exponent_matrix(), det: f.det() })
    }

    /// Ambient of the transpose polynomial.
    pub fn dual(&self) -> Arc<Ambient> {
        Arc::new(Ambient { exponents: linalg::transpose(&self.exponents), det: self.det })
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// `|G_f| = det E`.
    pub fn order(&self) -> i64 {
        self.det
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// True iff `E a` is integral.
    pub fn is_symmetry(&self, a: &GroupElement) -> bool {
        a.n() == self.n()
            && self.exponents.iter().all(|row| {
                row.iter()
                    .zip(a.coords())
                    .map(|(&e, x)| Q::from_integer(e) * x)
                    .sum::<Q>()
                    .is_integer()
            })
    }

    /// Columns of `E^{-1}` reduced mod 1; they generate `G_f`.
    pub fn generators(&self) -> Vec<GroupElement> {
        let inv = linalg::inverse(&self.exponents).expect("exponent matrix is invertible");
        (0..self.n())
            .map(|j| GroupElement::new(inv.iter().map(|r| r[j]).collect()))
            .collect()
    }

    /// The exponential grading element `g_0 = (q_1, ..., q_n)`, `q = E^{-1} 1`.
    pub fn g0(&self) -> GroupElement {
        let inv = linalg::inverse(&self.exponents).expect("exponent matrix is invertible");
        GroupElement::new(inv.iter().map(|r| r.iter().sum()).collect())
    }

    /// `<a, b> = (E a)^T b mod 1` for `a` over this ambient and `b` over the dual.
    pub fn pairing(&self, a: &GroupElement, b: &GroupElement) -> Q {
        let s: Q = self
            .exponents
            .iter()
            .zip(b.coords())
            .map(|(row, bi)| {
                let ea: Q = row.iter().zip(a.coords()).map(|(&e, x)| Q::from_integer(e) * x).sum();
                ea * bi
            })
            .sum();
        frac(s)
    }
}

/// A subgroup of `G_f`. Elements are enumerated lazily and cached; equality,
/// ordering and hashing use the sorted element list.
#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: Arc<Ambient>,
    generators: Vec<GroupElement>,
    elements: OnceLock<Arc<Vec<GroupElement>>>,
}

impl Subgroup {
    /// The maximal diagonal symmetry group `G_f`.
    pub fn maximal(f: &InvertiblePolynomial) -> Subgroup {
        Subgroup::full(Ambient::of(f))
    }

    /// `G_f` for a given ambient.
    pub fn full(ambient: Arc<Ambient>) -> Subgroup {
        let generators = ambient.generators();
        Subgroup { ambient, generators, elements: OnceLock::new() }
    }

    pub fn trivial(ambient: Arc<Ambient>) -> Subgroup {
        let n = ambient.n();
        Subgroup::from_elements(ambient, vec![GroupElement::identity(n)])
    }

    /// `G_0 = <g_0>`.
    pub fn g0_group(ambient: Arc<Ambient>) -> Subgroup {
        let g = ambient.g0();
        Subgroup { ambient, generators: vec![g], elements: OnceLock::new() }
    }

    /// Subgroup generated by `gens`, which must all be symmetries.
    pub fn generated(ambient: Arc<Ambient>, gens: Vec<GroupElement>) -> Result<Subgroup, SymmetryError> {
        for g in &gens {
            if !ambient.is_symmetry(g) {
                return Err(SymmetryError::NotASymmetry(g.to_string()));
            }
        }
        Ok(Subgroup { ambient, generators: gens, elements: OnceLock::new() })
    }

    fn from_elements(ambient: Arc<Ambient>, mut elements: Vec<GroupElement>) -> Subgroup {
        elements.sort();
        let generators = canonical_generators_of(&elements);
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(elements));
        Subgroup { ambient, generators, elements: cell }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Sorted list of all elements.
    pub fn elements(&self) -> &[GroupElement] {
        self.elements
            .get_or_init(|| Arc::new(closure(self.n(), &self.generators)))
            .as_slice()
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements().binary_search(g).is_ok()
    }

    /// Deterministic generating set: greedily pick the smallest element not
    /// yet in the span.
    pub fn canonical_generators(&self) -> Vec<GroupElement> {
        canonical_generators_of(self.elements())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.elements().iter().all(|g| other.contains(g))
    }

    fn check_ambient(&self, other: &Subgroup) -> Result<(), SymmetryError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(SymmetryError::AmbientMismatch)
        }
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup, SymmetryError> {
        self.check_ambient(other)?;
        let els = self.elements().iter().filter(|g| other.contains(g)).cloned().collect();
        Ok(Subgroup::from_elements(self.ambient.clone(), els))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup, SymmetryError> {
        self.check_ambient(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Subgroup { ambient: self.ambient.clone(), generators: gens, elements: OnceLock::new() })
    }

    /// Product set `HK`, which equals the join for abelian groups.
    pub fn product_order(&self, other: &Subgroup) -> Result<usize, SymmetryError> {
        Ok(self.order() * other.order() / self.intersection(other)?.order())
    }

    /// Elements with integral age.
    pub fn sl_subgroup(&self) -> Subgroup {
        let els = self.elements().iter().filter(|g| g.age().is_integer()).cloned().collect();
        Subgroup::from_elements(self.ambient.clone(), els)
    }

    pub fn is_in_sl(&self) -> bool {
        self.generators.iter().all(|g| g.age().is_integer())
    }

    /// True iff `g_0` lies in the group.
    pub fn contains_g0(&self) -> bool {
        self.contains(&self.ambient.g0())
    }

    /// `K_i`: elements fixing coordinate `i`.
    pub fn fixing_subgroup(&self, i: usize) -> Subgroup {
        let els = self.elements().iter().filter(|g| g.coords()[i].is_zero()).cloned().collect();
        Subgroup::from_elements(self.ambient.clone(), els)
    }

    /// Coordinates fixed by every element.
    pub fn fixed_coordinates(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.generators.iter().all(|g| g.coords()[i].is_zero()))
            .collect()
    }

    /// Number of elements of age one with no fixed coordinate.
    pub fn j_invariant(&self) -> usize {
        self.elements()
            .iter()
            .filter(|g| g.age() == Q::from_integer(1) && g.coords().iter().all(|a| !a.is_zero()))
            .count()
    }

    /// The dual group: the annihilator of `self` inside `G_{f~}` under the
    /// pairing `<a, b> = (E a)^T b`.
    pub fn dual(&self) -> Subgroup {
        let dual_ambient = self.ambient.dual();
        let full = Subgroup::full(dual_ambient.clone());
        let els = full
            .elements()
            .iter()
            .filter(|b| self.generators.iter().all(|a| self.ambient.pairing(a, b).is_zero()))
            .cloned()
            .collect();
        Subgroup::from_elements(dual_ambient, els)
    }

    /// Every subgroup, sorted by order and then by element list.
    pub fn all_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>, SymmetryError> {
        let order = self.order();
        if order > bound {
            return Err(SymmetryError::GroupTooLarge { order, bound });
        }
        let mut cyclic: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        for g in self.elements() {
            let mut els = closure(self.n(), std::slice::from_ref(g));
            els.sort();
            cyclic.insert(els);
        }
        let cyclic: Vec<Vec<GroupElement>> = cyclic.into_iter().collect();
        let mut found: BTreeSet<Vec<GroupElement>> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Vec<GroupElement>> = cyclic.clone();
        while let Some(h) = frontier.pop() {
            let hset: HashSet<&GroupElement> = h.iter().collect();
            for c in &cyclic {
                if c.iter().all(|x| hset.contains(x)) {
                    continue;
                }
                let mut sum: Vec<GroupElement> = h
                    .iter()
                    .flat_map(|a| c.iter().map(move |b| a.add(b)))
                    .collect::<HashSet<_>>()
                    .into_iter()
                    .collect();
                sum.sort();
                if found.insert(sum.clone()) {
                    frontier.push(sum);
                }
            }
        }
        let mut out: Vec<Subgroup> = found
            .into_iter()
            .map(|els| Subgroup::from_elements(self.ambient.clone(), els))
            .collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
        Ok(out)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements() == other.elements()
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements().hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements().cmp(other.elements()))
            .then_with(|| self.ambient.exponents.cmp(&other.ambient.exponents))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.canonical_generators();
        if gens.is_empty() {
            return write!(f, "<>");
        }
        let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join("; "))
    }
}

/// All elements of the group generated by `gens`, sorted.
fn closure(n: usize, gens: &[GroupElement]) -> Vec<GroupElement> {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let id = GroupElement::identity(n);
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.add(g);
            if seen.insert(y.clone()) {
                assert!(seen.len() <= ELEMENT_CAP, "group enumeration exceeded {ELEMENT_CAP} elements");
                stack.push(y);
            }
        }
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    out.sort();
    out
}

fn canonical_generators_of(sorted: &[GroupElement]) -> Vec<GroupElement> {
    let Some(first) = sorted.first() else { return Vec::new() };
    let n = first.n();
    let mut span: HashSet<GroupElement> = HashSet::from([GroupElement::identity(n)]);
    let mut gens = Vec::new();
    for g in sorted {
        if span.len() == sorted.len() {
            break;
        }
        if span.contains(g) {
            continue;
        }
        // span + <g>
        let mut add = Vec::new();
        let mut m = g.clone();
        while !span.contains(&m) {
            add.push(m.clone());
            m = m.add(g);
        }
        let base: Vec<GroupElement> = span.iter().cloned().collect();
        for a in &add {
            for b in &base {
                span.insert(a.add(b));
            }
        }
        gens.push(g.clone());
    }
    gens
}

/// Parses a group specifier relative to `f`: `e`, `G0`, `Gf`, `SL`, or a
/// `;`-separated list of generators such as `(1/3, 2/3); (0, 1/2)`.
pub fn parse_group_spec(f: &InvertiblePolynomial, spec: &str) -> Result<Subgroup, SymmetryError> {
    let ambient = Ambient::of(f);
    match spec.trim() {
        "e" | "1" | "trivial" => Ok(Subgroup::trivial(ambient)),
        "G0" | "g0" => Ok(Subgroup::g0_group(ambient)),
        "Gf" | "G_f" | "max" => Ok(Subgroup::full(ambient)),
        "SL" | "sl" => Ok(Subgroup::full(ambient).sl_subgroup()),
        other => {
            let gens = other
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(GroupElement::parse)
                .collect::<Result<Vec<_>, _>>()?;
            if gens.iter().any(|g| g.n() != f.n()) {
                return Err(SymmetryError::Parse(format!("expected {} coordinates", f.n())));
            }
            Subgroup::generated(ambient, gens)
        }
    }
}
