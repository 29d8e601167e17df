//! Burnside rings of diagonal symmetry groups and equivariant Euler
//! characteristics of Milnor fibres.
//!
//! `V_f = f^{-1}(1)` carries the action of every `G <= G_f`. The equivariant
//! Euler characteristic `chi^G(V_f) = sum_H chi(V^{(H)} / G) [G/H]` is computed
//! from the fixed loci `V^H`, which are Milnor fibres of the restrictions
//! `f^H`, by Mobius inversion over the subgroup lattice.

use crate::monodromy::{milnor_number, MonodromyError};
use crate::polycore::{InvertiblePolynomial, PolyError};
use crate::symmetry::{Ambient, GroupElement, SymmetryError, Subgroup, DEFAULT_SUBGROUP_BOUND};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BurnsideError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("elements belong to different Burnside rings")]
    AmbientMismatch,
    #[error("{numerator} is not divisible by {denominator}")]
    NonIntegerQuotient { numerator: i64, denominator: i64 },
    #[error("the duality map needs the maximal group G_f")]
    NotMaximal,
}

/// An integral combination of classes `[G/H]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    group: Subgroup,
    terms: BTreeMap<Subgroup, i64>,
}

impl BurnsideElement {
    pub fn zero(group: Subgroup) -> Self {
        BurnsideElement { group, terms: BTreeMap::new() }
    }

    /// The basis element `[G/H]`.
    pub fn class(group: &Subgroup, h: &Subgroup) -> Result<Self, BurnsideError> {
        if !h.is_subgroup_of(group) {
            return Err(BurnsideError::AmbientMismatch);
        }
        let mut x = BurnsideElement::zero(group.clone());
        x.terms.insert(h.clone(), 1);
        Ok(x)
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<Subgroup, i64> {
        &self.terms
    }

    pub fn coeff(&self, h: &Subgroup) -> i64 {
        self.terms.get(h).copied().unwrap_or(0)
    }

    fn add_term(&mut self, h: Subgroup, c: i64) {
        let e = self.terms.entry(h).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    fn check(&self, other: &BurnsideElement) -> Result<(), BurnsideError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(BurnsideError::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.check(other)?;
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> BurnsideElement {
        let mut out = BurnsideElement::zero(self.group.clone());
        if k != 0 {
            out.terms = self.terms.iter().map(|(h, c)| (h.clone(), c * k)).collect();
        }
        out
    }

    pub fn sub(&self, other: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.add(&other.scale(-1))
    }

    /// `[G/H] [G/K] = (|G| / |HK|) [G/(H cap K)]`.
    pub fn mul(&self, other: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.check(other)?;
        let g = self.group.order() as i64;
        let mut out = BurnsideElement::zero(self.group.clone());
        for (h, a) in &self.terms {
            for (k, b) in &other.terms {
                let hk = h.product_order(k)? as i64;
                out.add_term(h.intersection(k)?, a * b * (g / hk));
            }
        }
        Ok(out)
    }

    /// Orbifold Euler characteristic homomorphism, `[G/H] -> |H|`.
    pub fn r_orb(&self) -> i64 {
        self.terms.iter().map(|(h, c)| c * h.order() as i64).sum()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(h, c)| {
                let gens: Vec<Vec<String>> = h
                    .canonical_generators()
                    .iter()
                    .map(|g| g.coords().iter().map(|a| a.to_string()).collect())
                    .collect();
                json!({"subgroup": gens, "coeff": c})
            })
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (h, c) in self.terms.iter().rev() {
            let sign = if *c < 0 { "- " } else if first { "" } else { "+ " };
            let mag = c.abs();
            let coeff = if mag == 1 { String::new() } else { format!("{mag}") };
            let sep = if first { "" } else { " " };
            write!(f, "{sep}{sign}{coeff}[G/{h}]")?;
            first = false;
        }
        Ok(())
    }
}

/// Euler characteristic of the Milnor fibre: `1 + (-1)^{n-1} mu`, and `0` in
/// zero variables (the fibre is empty).
pub fn milnor_fiber_euler(f: &InvertiblePolynomial) -> Result<i64, BurnsideError> {
    let n = f.n();
    if n == 0 {
        return Ok(0);
    }
    let mu = milnor_number(f)? as i64;
    Ok(if n % 2 == 1 { 1 + mu } else { 1 - mu })
}

/// Memoised `chi(V^H)` keyed by the fixed-coordinate mask.
struct FixedEuler<'a> {
    f: &'a InvertiblePolynomial,
    cache: HashMap<u64, i64>,
}

impl<'a> FixedEuler<'a> {
    fn new(f: &'a InvertiblePolynomial) -> Self {
        FixedEuler { f, cache: HashMap::new() }
    }

    fn get(&mut self, mask: u64) -> Result<i64, BurnsideError> {
        if let Some(v) = self.cache.get(&mask) {
            return Ok(*v);
        }
        let fixed: Vec<usize> = (0..self.f.n()).filter(|i| mask >> i & 1 == 1).collect();
        let v = milnor_fiber_euler(&self.f.restrict(&fixed)?)?;
        self.cache.insert(mask, v);
        Ok(v)
    }
}

fn group_mask(h: &Subgroup) -> u64 {
    h.generators().iter().fold(u64::MAX, |m, g| m & g.fixed_mask()) & full_mask(h.n())
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_ambient(f: &InvertiblePolynomial, g: &Subgroup) -> Result<(), BurnsideError> {
    if **g.ambient() == *Ambient::of(f) {
        Ok(())
    } else {
        Err(BurnsideError::AmbientMismatch)
    }
}

/// `chi^G(V_f)` in the Burnside ring of `G`.
pub fn equivariant_euler(f: &InvertiblePolynomial, g: &Subgroup) -> Result<BurnsideElement, BurnsideError> {
    check_ambient(f, g)?;
    let subs = g.all_subgroups(DEFAULT_SUBGROUP_BOUND)?;
    let mut euler = FixedEuler::new(f);
    let order = g.order() as i64;
    // strata[i] = chi(V^{(H_i)}), filled from the largest subgroup down.
    let mut strata = vec![0i64; subs.len()];
    let mut out = BurnsideElement::zero(g.clone());
    for i in (0..subs.len()).rev() {
        let h = &subs[i];
        let mut s = euler.get(group_mask(h))?;
        for j in i + 1..subs.len() {
            if strata[j] != 0 && subs[j].order() > h.order() && h.is_subgroup_of(&subs[j]) {
                s -= strata[j];
            }
        }
        strata[i] = s;
        if s != 0 {
            let index = order / h.order() as i64;
            if s % index != 0 {
                return Err(BurnsideError::NonIntegerQuotient { numerator: s, denominator: index });
            }
            out.add_term(h.clone(), s / index);
        }
    }
    Ok(out)
}

/// `chi^G(V_f) - [G/G]`.
pub fn reduced_equivariant_euler(f: &InvertiblePolynomial, g: &Subgroup) -> Result<BurnsideElement, BurnsideError> {
    equivariant_euler(f, g)?.sub(&BurnsideElement::class(g, g)?)
}

/// `chi^orb(V_f, G) = |G|^{-1} sum_{g, h} chi(V^{<g, h>})`.
pub fn orbifold_euler(f: &InvertiblePolynomial, g: &Subgroup) -> Result<i64, BurnsideError> {
    check_ambient(f, g)?;
    let mut euler = FixedEuler::new(f);
    let masks: Vec<u64> = g.elements().iter().map(GroupElement::fixed_mask).collect();
    let mut counts: HashMap<u64, i64> = HashMap::new();
    for &a in &masks {
        for &b in &masks {
            *counts.entry(a & b).or_insert(0) += 1;
        }
    }
    let mut total = 0i64;
    for (mask, c) in counts {
        total += c * euler.get(mask)?;
    }
    let order = g.order() as i64;
    if total % order != 0 {
        return Err(BurnsideError::NonIntegerQuotient { numerator: total, denominator: order });
    }
    Ok(total / order)
}

/// `chi^orb(V_f, G) - |G|`.
pub fn reduced_orbifold_euler(f: &InvertiblePolynomial, g: &Subgroup) -> Result<i64, BurnsideError> {
    Ok(orbifold_euler(f, g)? - g.order() as i64)
}

/// `D([G/H]) = [G*/H~]` for `G = G_f`, landing in the Burnside ring of `G_{f~}`.
pub fn saito_duality_map(x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
    let g = x.group();
    if g.order() as i64 != g.ambient().order() {
        return Err(BurnsideError::NotMaximal);
    }
    let target = Subgroup::full(g.ambient().dual());
    let mut out = BurnsideElement::zero(target);
    for (h, c) in x.terms() {
        out.add_term(h.dual(), *c);
    }
    Ok(out)
}

/// A basis class `[G/H, h, alpha]` of the enhanced Burnside ring of
/// `G = G_f`: `h` is a coset representative in `G/H` and the character
/// `alpha` of `H` is represented by a coset of `H~` in `G_{f~}`, via
/// `a -> e[<a, b>]`. Both representatives are the minimal coset elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnhancedClass {
    pub subgroup: Subgroup,
    pub element: GroupElement,
    pub character: GroupElement,
}

fn coset_rep(g: &GroupElement, h: &Subgroup) -> GroupElement {
    h.elements().iter().map(|x| g.add(x)).min().expect("subgroups are nonempty")
}

/// All classes `[G/H, h, alpha]` for `G = G_f`.
pub fn enhanced_classes(g: &Subgroup) -> Result<Vec<EnhancedClass>, BurnsideError> {
    if g.order() as i64 != g.ambient().order() {
        return Err(BurnsideError::NotMaximal);
    }
    let dual_full = Subgroup::full(g.ambient().dual());
    let mut out = Vec::new();
    for h in g.all_subgroups(DEFAULT_SUBGROUP_BOUND)? {
        let hd = h.dual();
        let mut cosets: Vec<GroupElement> = g.elements().iter().map(|x| coset_rep(x, &h)).collect();
        cosets.sort();
        cosets.dedup();
        let mut chars: Vec<GroupElement> = dual_full.elements().iter().map(|b| coset_rep(b, &hd)).collect();
        chars.sort();
        chars.dedup();
        for a in &cosets {
            for b in &chars {
                out.push(EnhancedClass { subgroup: h.clone(), element: a.clone(), character: b.clone() });
            }
        }
    }
    Ok(out)
}

/// `[G/H, h, alpha] -> [G*/H~, alpha~, h~]`.
pub fn enhanced_duality_map(c: &EnhancedClass) -> EnhancedClass {
    let hd = c.subgroup.dual();
    EnhancedClass {
        element: coset_rep(&c.character, &hd),
        character: coset_rep(&c.element, &c.subgroup),
        subgroup: hd,
    }
}
