//! Invertible polynomials: parsing, exponent matrices, weights and atomic types.
//!
//! A polynomial `f = sum_i a_i prod_j x_j^{E_ij}` is *invertible* when it has
//! exactly as many monomials as variables and the exponent matrix `E` is
//! invertible over the rationals. Monomial rows are kept in source order,
//! except that the first two rows are swapped when needed to make `det E > 0`.

use crate::linalg;
use crate::Q;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("duplicate monomial {0}")]
    DuplicateMonomial(String),
    #[error("weight of {0} is not positive")]
    NonPositiveWeight(String),
    #[error("unsupported atomic shape: {0}")]
    UnsupportedShape(String),
}

/// An invertible polynomial with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvertiblePolynomial {
    vars: Vec<String>,
    exponents: Vec<Exponent>,
    coeffs: Vec<Q>,
}

/// Integer weights `w` and degree `d` with `f(t^w x) = t^d f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    pub weights: Vec<i64>,
    pub degree: i64,
}

impl WeightSystem {
    /// Rational charges `q_i = w_i / d`.
    pub fn charges(&self) -> Vec<Q> {
        self.weights.iter().map(|&w| Q::new(w, self.degree)).collect()
    }

    /// Weighted degree of a monomial.
    pub fn degree_of(&self, k: &[u32]) -> i64 {
        k.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomicType {
    Fermat,
    Chain,
    Loop,
}

/// One atomic summand. For a chain `x_1^{a_1} x_2 + ... + x_k^{a_k}` the
/// variables are listed from `x_1` to `x_k`; for a loop they are listed along
/// the cycle starting at the smallest variable index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicBlock {
    pub kind: AtomicType,
    pub vars: Vec<usize>,
    pub exponents: Vec<u32>,
}

/// Maximal abelian grading group `L_f = Z^{n+1} / relations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalGrading {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl InvertiblePolynomial {
    /// Builds a polynomial from explicit data, validating invertibility and
    /// normalising the sign of the determinant.
    pub fn new(vars: Vec<String>, exponents: Vec<Exponent>, coeffs: Vec<Q>) -> Result<Self, PolyError> {
        let n = vars.len();
        if exponents.len() != n || coeffs.len() != n {
            return Err(PolyError::NotInvertible(format!(
                "{} monomials in {} variables",
                exponents.len(),
                n
            )));
        }
        if exponents.iter().any(|e| e.len() != n) {
            return Err(PolyError::NotInvertible("ragged exponent matrix".into()));
        }
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(PolyError::Syntax { pos: 0, msg: "zero coefficient".into() });
        }
        let mut f = InvertiblePolynomial { vars, exponents, coeffs };
        for i in 0..n {
            for j in 0..i {
                if f.exponents[i] == f.exponents[j] {
                    return Err(PolyError::DuplicateMonomial(f.monomial_string(&f.exponents[i])));
                }
            }
        }
        let det = f.det();
        if det == 0 {
            return Err(PolyError::NotInvertible("exponent matrix is singular".into()));
        }
        if det < 0 {
            f.exponents.swap(0, 1);
            f.coeffs.swap(0, 1);
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    /// Exponent matrix, row `i` being the exponent vector of monomial `i`.
    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.exponents
            .iter()
            .map(|r| r.iter().map(|&e| e as i64).collect())
            .collect()
    }

    /// `det E` (positive for every constructed polynomial with `n >= 1`).
    pub fn det(&self) -> i64 {
        linalg::det(&self.exponent_matrix())
    }

    /// Restriction to the coordinate subspace spanned by `fixed`: monomials
    /// involving other variables are dropped.
    pub fn restrict(&self, fixed: &[usize]) -> Result<InvertiblePolynomial, PolyError> {
        let mut rows = Vec::new();
        let mut coeffs = Vec::new();
        for (e, c) in self.exponents.iter().zip(&self.coeffs) {
            let inside = e.iter().enumerate().all(|(j, &x)| x == 0 || fixed.contains(&j));
            if inside {
                rows.push(fixed.iter().map(|&j| e[j]).collect());
                coeffs.push(*c);
            }
        }
        let vars = fixed.iter().map(|&j| self.vars[j].clone()).collect();
        InvertiblePolynomial::new(vars, rows, coeffs)
    }

    /// Partial derivatives as lists of `(coefficient, exponent)` terms.
    pub(crate) fn jacobian(&self) -> Vec<Vec<(Q, Exponent)>> {
        (0..self.n())
            .map(|j| {
                self.exponents
                    .iter()
                    .zip(&self.coeffs)
                    .filter(|(e, _)| e[j] > 0)
                    .map(|(e, c)| {
                        let mut k = e.clone();
                        k[j] -= 1;
                        (*c * Q::from_integer(e[j] as i64), k)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| {
                if k == 1 {
                    self.vars[j].clone()
                } else {
                    format!("{}^{}", self.vars[j], k)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .exponents
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| {
                let m = self.monomial_string(e);
                if c.is_one() {
                    m
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum VarKey {
    Named(u8),
    Indexed(u32),
}

impl VarKey {
    fn name(&self) -> String {
        match self {
            VarKey::Named(i) => ["x", "y", "z", "w"][*i as usize].to_string(),
            VarKey::Indexed(i) => format!("x{i}"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn is_var_start(c: Option<u8>) -> bool {
        matches!(c, Some(b'x' | b'y' | b'z' | b'w'))
    }

    fn uint(&mut self) -> Result<u64, PolyError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn var(&mut self) -> Result<VarKey, PolyError> {
        let c = self.peek();
        self.pos += 1;
        match c {
            Some(b'x') if self.s.get(self.pos).is_some_and(|b| b.is_ascii_digit()) => {
                let i = self.uint()?;
                Ok(VarKey::Indexed(u32::try_from(i).or_else(|_| self.err("variable index out of range"))?))
            }
            Some(b'x') => Ok(VarKey::Named(0)),
            Some(b'y') => Ok(VarKey::Named(1)),
            Some(b'z') => Ok(VarKey::Named(2)),
            Some(b'w') => Ok(VarKey::Named(3)),
            _ => {
                self.pos -= 1;
                self.err("expected a variable")
            }
        }
    }

    fn rational(&mut self) -> Result<Q, PolyError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        if neg && Self::is_var_start(self.peek()) {
            return Ok(Q::from_integer(-1));
        }
        let num = i64::try_from(self.uint()?).or_else(|_| self.err("coefficient out of range"))?;
        let mut q = Q::from_integer(num);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = i64::try_from(self.uint()?).or_else(|_| self.err("coefficient out of range"))?;
            if den == 0 {
                return self.err("zero denominator");
            }
            q = Q::new(num, den);
        }
        Ok(if neg { -q } else { q })
    }

    fn term(&mut self) -> Result<(Q, Vec<(VarKey, u32)>), PolyError> {
        let mut coeff = Q::one();
        let c = self.peek();
        if c == Some(b'-') || c.is_some_and(|b| b.is_ascii_digit()) {
            coeff = self.rational()?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        if coeff.is_zero() {
            return self.err("zero coefficient");
        }
        let mut factors = Vec::new();
        loop {
            if !Self::is_var_start(self.peek()) {
                break;
            }
            let v = self.var()?;
            let mut e = 1u32;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let k = self.uint()?;
                e = u32::try_from(k).or_else(|_| self.err("exponent out of range"))?;
                if e == 0 {
                    return self.err("exponent must be positive");
                }
            }
            factors.push((v, e));
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if !Self::is_var_start(self.peek()) {
                    return self.err("expected a variable after '*'");
                }
            }
        }
        if factors.is_empty() {
            return self.err("term without variables");
        }
        Ok((coeff, factors))
    }
}

/// Parses a polynomial. Variables are ordered `x < y < z < w`, followed by
/// indexed variables `x1 < x2 < ...`; `n` is the number of distinct variables.
pub fn parse_polynomial(text: &str) -> Result<InvertiblePolynomial, PolyError> {
    parse_impl(text, None)
}

/// Parses a polynomial over an explicit ordered variable list.
pub fn parse_polynomial_with_vars(text: &str, vars: &[&str]) -> Result<InvertiblePolynomial, PolyError> {
    parse_impl(text, Some(vars))
}

fn parse_impl(text: &str, vars: Option<&[&str]>) -> Result<InvertiblePolynomial, PolyError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut negate = false;
    loop {
        let (mut c, factors) = p.term()?;
        if negate {
            c = -c;
        }
        terms.push((c, factors));
        match p.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return p.err("expected '+' or end of input"),
        }
        p.pos += 1;
    }

    let names: Vec<String> = match vars {
        Some(v) => v.iter().map(|s| s.to_string()).collect(),
        None => {
            let mut keys: Vec<VarKey> = terms.iter().flat_map(|(_, fs)| fs.iter().map(|(v, _)| v.clone())).collect();
            keys.sort();
            keys.dedup();
            keys.iter().map(VarKey::name).collect()
        }
    };
    let n = names.len();
    let mut rows = Vec::new();
    let mut coeffs = Vec::new();
    for (c, factors) in terms {
        let mut e = vec![0u32; n];
        for (v, k) in factors {
            let name = v.name();
            let Some(j) = names.iter().position(|s| *s == name) else {
                return Err(PolyError::Syntax { pos: 0, msg: format!("variable {name} not in the variable list") });
            };
            e[j] += k;
        }
        rows.push(e);
        coeffs.push(c);
    }
    InvertiblePolynomial::new(names, rows, coeffs)
}

// ---------------------------------------------------------------------------
// Weights

/// Solves `E w = det(E) (1, ..., 1)` and returns `(w, d = det E)`.
pub fn canonical_weights(f: &InvertiblePolynomial) -> Result<WeightSystem, PolyError> {
    let d = f.det();
    let inv = linalg::inverse(&f.exponent_matrix())
        .ok_or_else(|| PolyError::NotInvertible("exponent matrix is singular".into()))?;
    let mut weights = Vec::with_capacity(f.n());
    for (i, row) in inv.iter().enumerate() {
        let w: Q = row.iter().sum::<Q>() * Q::from_integer(d);
        debug_assert!(w.is_integer());
        if !w.is_positive() {
            return Err(PolyError::NonPositiveWeight(f.vars[i].clone()));
        }
        weights.push(w.to_integer());
    }
    Ok(WeightSystem { weights, degree: d })
}

/// Divides a weight system by the gcd of all its entries; returns the reduced
/// system and the gcd `c_f`.
pub fn reduce_weights(ws: &WeightSystem) -> (WeightSystem, i64) {
    let c = ws
        .weights
        .iter()
        .fold(ws.degree, |acc, &w| num_integer::gcd(acc, w));
    (
        WeightSystem {
            weights: ws.weights.iter().map(|w| w / c).collect(),
            degree: ws.degree / c,
        },
        c,
    )
}

/// Reduced weights of `f`.
pub fn reduced_weights(f: &InvertiblePolynomial) -> Result<WeightSystem, PolyError> {
    Ok(reduce_weights(&canonical_weights(f)?).0)
}

/// `a_f = d - sum w_i` for the reduced weight system.
pub fn gorenstein_parameter(f: &InvertiblePolynomial) -> Result<i64, PolyError> {
    let ws = reduced_weights(f)?;
    Ok(ws.degree - ws.weights.iter().sum::<i64>())
}

/// The Berglund-Hubsch transpose: exponent matrix `E^T`, coefficient `i`
/// stays attached to monomial `i`.
pub fn transpose(f: &InvertiblePolynomial) -> InvertiblePolynomial {
    let t = linalg::transpose(&f.exponents);
    InvertiblePolynomial::new(f.vars.clone(), t, f.coeffs.clone()).expect("transpose of an invertible polynomial is invertible")
}

/// `delta(a, b, c) = abc - bc - ac - ab`.
pub fn delta(a: i64, b: i64, c: i64) -> i64 {
    a * b * c - b * c - a * c - a * b
}

// ---------------------------------------------------------------------------
// Jacobian quotient

/// All exponent vectors of weighted degree `m`.
pub fn monomials_of_degree(weights: &[i64], m: i64) -> Vec<Exponent> {
    fn rec(weights: &[i64], m: i64, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        let j = prefix.len();
        if j == weights.len() {
            if m == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut k = 0;
        while k as i64 * weights[j] <= m {
            prefix.push(k);
            rec(weights, m - k as i64 * weights[j], prefix, out);
            prefix.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    if m >= 0 {
        rec(weights, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Degreewise linear algebra for the Jacobian ring `C[x] / (df)`.
pub(crate) struct JacobianRing {
    weights: WeightSystem,
    jacobian: Vec<Vec<(BigRational, Exponent)>>,
}

impl JacobianRing {
    pub(crate) fn new(f: &InvertiblePolynomial) -> Result<Self, PolyError> {
        let weights = reduced_weights(f)?;
        let jacobian = f
            .jacobian()
            .into_iter()
            .map(|terms| {
                terms
                    .into_iter()
                    .map(|(c, e)| (BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom())), e))
                    .collect()
            })
            .collect();
        Ok(JacobianRing { weights, jacobian })
    }

    /// Degree of the socle, `sum (d - 2 w_i)`.
    pub(crate) fn top_degree(&self) -> i64 {
        self.weights.weights.iter().map(|w| self.weights.degree - 2 * w).sum()
    }

    /// Monomials of degree `m` outside the pivot set of the Jacobian ideal.
    /// Each generator `x^a df/dx_j` is homogeneous for the maximal grading,
    /// so the complement is compatible with the diagonal symmetry action.
    pub(crate) fn quotient_in_degree(&self, m: i64) -> Vec<Exponent> {
        let mut cols = monomials_of_degree(&self.weights.weights, m);
        if cols.is_empty() {
            return cols;
        }
        // Pivot on large monomials first so the complement consists of small ones.
        cols.sort_by(|a, b| b.cmp(a));
        let index: BTreeMap<&Exponent, usize> = cols.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let d = self.weights.degree;
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (j, dj) in self.jacobian.iter().enumerate() {
            let shift = m - (d - self.weights.weights[j]);
            for a in monomials_of_degree(&self.weights.weights, shift) {
                let mut row = vec![BigRational::zero(); cols.len()];
                for (c, e) in dj {
                    let k: Exponent = e.iter().zip(&a).map(|(x, y)| x + y).collect();
                    row[index[&k]] += c;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let ncols = cols.len();
        let pivots = linalg::row_reduce(&mut rows, ncols);
        let mut out: Vec<Exponent> = cols
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, e)| e)
            .collect();
        out.sort();
        out
    }

    /// True iff the quotient vanishes in every degree above the socle degree.
    /// Checking a window of length `max w_i` suffices: any monomial of larger
    /// degree is a multiple of one inside the window.
    pub(crate) fn vanishes_above_top(&self) -> bool {
        let top = self.top_degree();
        let maxw = self.weights.weights.iter().copied().max().unwrap_or(1);
        (top + 1..=top + maxw).all(|m| m < 0 || self.quotient_in_degree(m).is_empty())
    }
}

/// True iff `f` has an isolated critical point at the origin.
pub fn is_nondegenerate(f: &InvertiblePolynomial) -> bool {
    match JacobianRing::new(f) {
        Ok(ring) => ring.vanishes_above_top(),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// Atomic decomposition

/// Splits `f` into Fermat, chain and loop summands.
pub fn atomic_decomposition(f: &InvertiblePolynomial) -> Result<Vec<AtomicBlock>, PolyError> {
    let n = f.n();
    let unsupported = || PolyError::UnsupportedShape(f.to_string());
    // Candidate (head, pointer) choices per monomial row.
    let mut options: Vec<Vec<(usize, Option<usize>)>> = Vec::with_capacity(n);
    for e in &f.exponents {
        let support: Vec<usize> = (0..n).filter(|&j| e[j] > 0).collect();
        let opts = match support.as_slice() {
            [h] => vec![(*h, None)],
            [a, b] => {
                let mut v = Vec::new();
                if e[*b] == 1 {
                    v.push((*a, Some(*b)));
                }
                if e[*a] == 1 {
                    v.push((*b, Some(*a)));
                }
                v
            }
            _ => Vec::new(),
        };
        if opts.is_empty() {
            return Err(unsupported());
        }
        options.push(opts);
    }

    fn search(
        row: usize,
        options: &[Vec<(usize, Option<usize>)>],
        used: &mut Vec<bool>,
        next: &mut Vec<Option<usize>>,
        head_row: &mut Vec<usize>,
    ) -> bool {
        if row == options.len() {
            let mut indeg = vec![0; used.len()];
            for t in next.iter().flatten() {
                indeg[*t] += 1;
            }
            return indeg.iter().all(|&d| d <= 1);
        }
        for &(h, p) in &options[row] {
            if used[h] {
                continue;
            }
            used[h] = true;
            next[h] = p;
            head_row[h] = row;
            if search(row + 1, options, used, next, head_row) {
                return true;
            }
            used[h] = false;
            next[h] = None;
        }
        false
    }

    let mut used = vec![false; n];
    let mut next = vec![None; n];
    let mut head_row = vec![0; n];
    if !search(0, &options, &mut used, &mut next, &mut head_row) {
        return Err(unsupported());
    }
    let mut has_pred = vec![false; n];
    for t in next.iter().flatten() {
        has_pred[*t] = true;
    }
    let exponent_of = |v: usize| f.exponents[head_row[v]][v];
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    // Chains start at variables without a predecessor.
    for start in 0..n {
        if has_pred[start] {
            continue;
        }
        let mut vars = Vec::new();
        let mut v = Some(start);
        while let Some(x) = v {
            seen[x] = true;
            vars.push(x);
            v = next[x];
        }
        let exponents = vars.iter().map(|&v| exponent_of(v)).collect();
        let kind = if vars.len() == 1 { AtomicType::Fermat } else { AtomicType::Chain };
        blocks.push(AtomicBlock { kind, vars, exponents });
    }
    // Whatever remains lies on cycles.
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut vars = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            vars.push(x);
            x = next[x].expect("cycle variables have successors");
        }
        let exponents = vars.iter().map(|&v| exponent_of(v)).collect();
        blocks.push(AtomicBlock { kind: AtomicType::Loop, vars, exponents });
    }
    blocks.sort_by_key(|b| b.vars.iter().copied().min());
    Ok(blocks)
}

// ---------------------------------------------------------------------------
// Maximal grading

/// Smith normal form of the relations `f - sum_j E_ij x_j` in `Z x_1 + ... + Z x_n + Z f`.
pub fn maximal_grading(f: &InvertiblePolynomial) -> MaximalGrading {
    let n = f.n();
    let rel: Vec<Vec<i64>> = f
        .exponents
        .iter()
        .map(|e| {
            let mut r: Vec<i64> = e.iter().map(|&x| -(x as i64)).collect();
            r.push(1);
            r
        })
        .collect();
    let diag = linalg::smith_diagonal(&rel);
    MaximalGrading {
        rank: n + 1 - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
    }
}
