//! Coxeter-Dynkin graphs, reflections and Coxeter elements.
//!
//! Lattice vectors are columns in the basis of vertices. With intersection
//! form `B` (`B_ii = -2`), the reflection in `delta_i` is
//! `s_i(x) = x + <x, delta_i> delta_i`, i.e. the matrix `I + e_i e_i^T B`.
//! The Coxeter element of an ordered graph is `s_1 s_2 ... s_mu`, so the last
//! vertex acts first.

use crate::intpoly::IntPoly;
use crate::linalg;
use num_integer::Integer;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("arm parameter {0} is below 2")]
    UnsupportedArm(u32),
    #[error("no {kind} diagram of rank {rank}")]
    InvalidRank { kind: char, rank: usize },
    #[error("denominator vanishes at t = 0")]
    DenominatorVanishes,
    #[error("cannot parse graph spec {0:?}")]
    Parse(String),
}

/// An ordered graph with integer edge weights. Every vertex has
/// self-intersection `-2`; a single edge has weight `1` and a double broken
/// edge weight `-2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize, i64)>,
}

impl DynkinGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, i64)>) -> Self {
        let n = labels.len();
        assert!(edges.iter().all(|&(i, j, _)| i < n && j < n && i != j), "edge endpoints out of range");
        DynkinGraph { labels, edges }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }

    pub fn intersection_form(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut b = vec![vec![0; n]; n];
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(i, j, w) in &self.edges {
            b[i][j] += w;
            b[j][i] += w;
        }
        b
    }
}

impl fmt::Display for DynkinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.labels.join(", "))?;
        for &(i, j, w) in &self.edges {
            writeln!(f, "  {} -- {} ({w})", self.labels[i], self.labels[j])?;
        }
        Ok(())
    }
}

/// Vertex order `delta_1, arm 1, arm 2, arm 3, delta_2`. Arm `i` runs
/// `delta^i_1, ..., delta^i_{p_i - 1}`; its last vertex meets both centres.
pub fn build_t(p: u32, q: u32, r: u32) -> Result<DynkinGraph, CoxeterError> {
    for a in [p, q, r] {
        if a < 2 {
            return Err(CoxeterError::UnsupportedArm(a));
        }
    }
    let mut labels = vec!["d1".to_string()];
    let mut edges = Vec::new();
    let mut ends = Vec::new();
    for (arm, len) in [p, q, r].into_iter().enumerate() {
        for k in 1..len {
            let idx = labels.len();
            labels.push(format!("d{}_{k}", arm + 1));
            if k > 1 {
                edges.push((idx - 1, idx, 1));
            }
        }
        ends.push(labels.len() - 1);
    }
    let d2 = labels.len();
    labels.push("d2".to_string());
    for &e in &ends {
        edges.push((0, e, 1));
        edges.push((d2, e, 1));
    }
    edges.push((0, d2, -2));
    Ok(DynkinGraph::new(labels, edges))
}

/// `T_{p,q,r}` with a vertex `delta_3` joined to `delta_2`, placed last.
pub fn build_s(p: u32, q: u32, r: u32) -> Result<DynkinGraph, CoxeterError> {
    let t = build_t(p, q, r)?;
    let d2 = t.len() - 1;
    let mut labels = t.labels;
    let mut edges = t.edges;
    labels.push("d3".to_string());
    edges.push((d2, d2 + 1, 1));
    Ok(DynkinGraph::new(labels, edges))
}

/// Star with a centre and three arms of the given numbers of vertices.
fn star(arms: [usize; 3]) -> DynkinGraph {
    let mut labels = vec!["c".to_string()];
    let mut edges = Vec::new();
    for (a, &len) in arms.iter().enumerate() {
        for k in 1..=len {
            let idx = labels.len();
            labels.push(format!("a{}_{k}", a + 1));
            edges.push((if k == 1 { 0 } else { idx - 1 }, idx, 1));
        }
    }
    DynkinGraph::new(labels, edges)
}

/// Classical diagrams `A_n` (n >= 1), `D_n` (n >= 4) and `E_6, E_7, E_8`.
pub fn finite_dynkin(kind: char, rank: usize) -> Result<DynkinGraph, CoxeterError> {
    let bad = Err(CoxeterError::InvalidRank { kind, rank });
    match kind {
        'A' if rank >= 1 => {
            let labels = (1..=rank).map(|i| format!("a{i}")).collect();
            let edges = (1..rank).map(|i| (i - 1, i, 1)).collect();
            Ok(DynkinGraph::new(labels, edges))
        }
        'D' if rank >= 4 => Ok(star([1, 1, rank - 3])),
        'E' if (6..=8).contains(&rank) => Ok(star([1, 2, rank - 4])),
        _ => bad,
    }
}

/// A cycle of `m >= 2` vertices in natural order: the affine `A_{m-1}`
/// diagram. For `m = 2` the two vertices meet with intersection number 2.
pub fn cycle_graph(m: usize) -> Result<DynkinGraph, CoxeterError> {
    if m < 2 {
        return Err(CoxeterError::InvalidRank { kind: 'A', rank: m.saturating_sub(1) });
    }
    let labels = (1..=m).map(|i| format!("a{i}")).collect();
    let edges = if m == 2 {
        vec![(0, 1, 2)]
    } else {
        (0..m).map(|i| (i, (i + 1) % m, 1)).collect()
    };
    Ok(DynkinGraph::new(labels, edges))
}

/// Parses `S:2,3,7`, `T:2,4,6`, `A:5`, `D:4`, `E:8` or `C:4` (cycle).
pub fn parse_graph_spec(spec: &str) -> Result<DynkinGraph, CoxeterError> {
    let err = || CoxeterError::Parse(spec.to_string());
    let (kind, rest) = spec.trim().split_once(':').ok_or_else(err)?;
    let nums = rest
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| err()))
        .collect::<Result<Vec<_>, _>>()?;
    match (kind.trim(), nums.as_slice()) {
        ("S", &[p, q, r]) => build_s(p, q, r),
        ("T", &[p, q, r]) => build_t(p, q, r),
        ("C", &[m]) => cycle_graph(m as usize),
        (k, &[n]) if k.len() == 1 => finite_dynkin(k.chars().next().unwrap(), n as usize),
        _ => Err(err()),
    }
}

/// `s_i = I + e_i e_i^T B`.
pub fn reflection(b: &[Vec<i64>], i: usize) -> Vec<Vec<i64>> {
    let mut s = linalg::identity(b.len());
    for (j, x) in s[i].iter_mut().enumerate() {
        *x += b[i][j];
    }
    s
}

/// A Coxeter element and its characteristic polynomial `det(t I - c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    pub matrix: Vec<Vec<i64>>,
    pub charpoly: IntPoly,
}

pub fn coxeter_element(g: &DynkinGraph) -> CoxeterMatrix {
    let b = g.intersection_form();
    let mut c = linalg::identity(g.len());
    for i in 0..g.len() {
        c = linalg::matmul(&c, &reflection(&b, i));
    }
    let charpoly = IntPoly::new(linalg::charpoly(&c));
    CoxeterMatrix { matrix: c, charpoly }
}

/// Outcome of the quasi-unipotence test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quasiunipotence {
    /// Not all eigenvalues are roots of unity.
    No,
    /// All eigenvalues are roots of unity and `c^h = I`.
    Finite(u64),
    /// All eigenvalues are roots of unity but `c` has a nontrivial Jordan block.
    Infinite,
}

impl Quasiunipotence {
    pub fn is_quasi_unipotent(self) -> bool {
        self != Quasiunipotence::No
    }
}

/// Cyclotomic factorisation of a monic polynomial: pairs `(r, e)` with
/// `Phi_r^e`, or `None` if something non-cyclotomic remains.
pub fn cyclotomic_factors(p: &IntPoly) -> Option<Vec<(usize, u32)>> {
    let deg = p.degree().unwrap_or(0);
    let mut rest = p.clone();
    let mut out = Vec::new();
    // phi(r) >= sqrt(r / 2), so larger r cannot divide a polynomial of this degree.
    let bound = 2 * deg * deg + 2;
    for r in 1..=bound {
        if rest.degree() == Some(0) {
            break;
        }
        let phi = IntPoly::cyclotomic(r);
        let mut e = 0;
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((r, e));
        }
    }
    (rest.coeffs() == [1] || rest.coeffs() == [-1]).then_some(out)
}

fn checked_matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Option<Vec<Vec<i128>>> {
    let n = a.len();
    let mut out = vec![vec![0i128; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].checked_add(a[i][k].checked_mul(b[k][j])?)?;
            }
        }
    }
    Some(out)
}

fn is_identity_power(c: &[Vec<i64>], mut h: u64) -> bool {
    let n = c.len();
    let id: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let mut acc = id.clone();
    let mut base: Vec<Vec<i128>> = c.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    while h > 0 {
        if h & 1 == 1 {
            match checked_matmul(&acc, &base) {
                Some(m) => acc = m,
                None => return false,
            }
        }
        h >>= 1;
        if h > 0 {
            match checked_matmul(&base, &base) {
                Some(m) => base = m,
                // Powers of a finite-order matrix stay bounded; overflow means infinite order.
                None => return false,
            }
        }
    }
    acc == id
}

pub fn quasi_unipotent_check(c: &CoxeterMatrix) -> Quasiunipotence {
    let Some(factors) = cyclotomic_factors(&c.charpoly) else {
        return Quasiunipotence::No;
    };
    let h = factors.iter().fold(1u64, |acc, &(r, _)| acc.lcm(&(r as u64)));
    if is_identity_power(&c.matrix, h) {
        Quasiunipotence::Finite(h)
    } else {
        Quasiunipotence::Infinite
    }
}

/// Compares the series of `P` with `num / den` through `t^order`.
pub fn klein_fuchs_check(
    p: &crate::monodromy::PoincareSeries,
    num: &IntPoly,
    den: &IntPoly,
    order: usize,
) -> Result<bool, CoxeterError> {
    let rhs = IntPoly::series_quotient(num, den, order).ok_or(CoxeterError::DenominatorVanishes)?;
    Ok(p.expand(order) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::{characteristic_polynomial, poincare_series};
    use crate::parse_polynomial;

    fn t(k: usize) -> IntPoly {
        IntPoly::t_pow_minus_one(k)
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(build_s(2, 3, 7).unwrap().len(), 12);
        assert_eq!(build_t(2, 3, 7).unwrap().len(), 11);
        assert_eq!(build_t(3, 3, 3).unwrap().len(), 8);
        assert_eq!(build_t(1, 3, 3), Err(CoxeterError::UnsupportedArm(1)));
        assert_eq!(finite_dynkin('E', 9), Err(CoxeterError::InvalidRank { kind: 'E', rank: 9 }));
    }

    #[test]
    fn reflections_are_involutive_isometries() {
        let b = build_s(2, 3, 7).unwrap().intersection_form();
        for i in 0..b.len() {
            let s = reflection(&b, i);
            assert_eq!(linalg::matmul(&s, &s), linalg::identity(b.len()));
            let sbs = linalg::matmul(&linalg::matmul(&linalg::transpose(&s), &b), &s);
            assert_eq!(sbs, b);
            // s_i(delta_i) = -delta_i
            assert_eq!(s[i][i], -1);
        }
    }

    #[test]
    fn e12_coxeter_element_is_the_monodromy() {
        let c = coxeter_element(&build_s(2, 3, 7).unwrap());
        assert_eq!(c.charpoly, IntPoly::cyclotomic(42));
        let phi = characteristic_polynomial(&parse_polynomial("x^2+y^3+z^7").unwrap()).unwrap();
        assert_eq!(Some(c.charpoly.clone()), phi.expand());
        assert_eq!(quasi_unipotent_check(&c), Quasiunipotence::Finite(42));
    }

    #[test]
    fn t_graph_charpoly_closed_form() {
        let c = coxeter_element(&build_t(2, 3, 7).unwrap());
        let expected = (&(&t(2) * &t(3)) * &t(7)).div_exact(&t(1)).unwrap();
        assert_eq!(c.charpoly, expected);
    }

    #[test]
    fn affine_and_elliptic_orders() {
        // T_{2,3,5} realises affine E8: a unipotent block on the radical.
        let affine = coxeter_element(&build_t(2, 3, 5).unwrap());
        assert_eq!(quasi_unipotent_check(&affine), Quasiunipotence::Infinite);
        // T_{2,3,6} is the Milnor lattice of x^2+y^3+z^6, whose monodromy has order 6.
        let elliptic = coxeter_element(&build_t(2, 3, 6).unwrap());
        assert_eq!(quasi_unipotent_check(&elliptic), Quasiunipotence::Finite(6));
        let phi = characteristic_polynomial(&parse_polynomial("x^2+y^3+z^6").unwrap()).unwrap();
        assert_eq!(phi.expand(), Some(elliptic.charpoly));
        let id = CoxeterMatrix { matrix: linalg::identity(3), charpoly: IntPoly::new(vec![-1, 3, -3, 1]) };
        assert_eq!(quasi_unipotent_check(&id), Quasiunipotence::Finite(1));
        let not_cyclotomic = CoxeterMatrix { matrix: vec![vec![2, 1], vec![1, 1]], charpoly: IntPoly::new(vec![1, -3, 1]) };
        assert_eq!(quasi_unipotent_check(&not_cyclotomic), Quasiunipotence::No);
    }

    #[test]
    fn a1_and_cycles() {
        let a1 = coxeter_element(&finite_dynkin('A', 1).unwrap());
        assert_eq!(a1.charpoly, IntPoly::new(vec![1, 1]));
        for m in 2..7 {
            let c = coxeter_element(&cycle_graph(m).unwrap());
            assert_eq!(c.charpoly, &t(m - 1) * &t(1), "cycle of {m}");
        }
    }

    #[test]
    fn klein_for_e8() {
        let f = parse_polynomial("x^2+y^3+z^5").unwrap();
        let minus = coxeter_element(&finite_dynkin('E', 8).unwrap()).charpoly;
        let zero = coxeter_element(&build_t(2, 3, 5).unwrap()).charpoly;
        assert!(klein_fuchs_check(&poincare_series(&f).unwrap(), &minus, &zero, 200).unwrap());
        let one = IntPoly::one();
        let trivial = crate::monodromy::PoincareSeries { numerator: one.clone(), denominator: one.clone() };
        assert!(klein_fuchs_check(&trivial, &minus, &minus, 50).unwrap());
        assert_eq!(
            klein_fuchs_check(&trivial, &one, &IntPoly::new(vec![0, 1]), 5),
            Err(CoxeterError::DenominatorVanishes)
        );
    }

    #[test]
    fn graph_specs() {
        assert_eq!(parse_graph_spec("S:2,3,7").unwrap().len(), 12);
        assert_eq!(parse_graph_spec("D:4").unwrap().len(), 4);
        assert_eq!(parse_graph_spec("C:4").unwrap().len(), 4);
        assert!(parse_graph_spec("Q:1").is_err());
    }
}
