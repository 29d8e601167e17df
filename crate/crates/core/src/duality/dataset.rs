//! The curated singularity dataset.
//!
//! One record per line: `name|polynomial|A|Gamma|dual|class`. `Gamma` is the
//! Gabrielov triple of `(f, {e})` listed per coordinate of `f`; `A` is the
//! Dolgachev triple of `(f, G_f)` listed per coordinate of the transpose, so
//! that `A_i` belongs to the isotropy subgroup `H_i = dual(K_i)`. A `-`
//! marks a triple that is not recorded.

use super::DualityError;
use crate::polycore::{parse_polynomial_with_vars, transpose, InvertiblePolynomial};
use std::sync::OnceLock;

const BUILTIN: &str = include_str!("../../data/dataset.txt");
const HEADER: &str = "bhdual-dataset";
const SUPPORTED_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityClass {
    Ade,
    ExceptionalUnimodal,
    BimodalHead,
    BimodalExceptional,
    Other,
}

impl SingularityClass {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "ADE" => Self::Ade,
            "exceptional-unimodal" => Self::ExceptionalUnimodal,
            "bimodal-head" => Self::BimodalHead,
            "bimodal-exceptional" => Self::BimodalExceptional,
            "other" => Self::Other,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ade => "ADE",
            Self::ExceptionalUnimodal => "exceptional-unimodal",
            Self::BimodalHead => "bimodal-head",
            Self::BimodalExceptional => "bimodal-exceptional",
            Self::Other => "other",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SingularityRecord {
    pub name: String,
    pub polynomial: String,
    pub dolgachev: Option<Vec<u64>>,
    pub gabrielov: Option<Vec<u64>>,
    pub dual: String,
    pub class: SingularityClass,
    f: InvertiblePolynomial,
}

impl SingularityRecord {
    pub fn poly(&self) -> &InvertiblePolynomial {
        &self.f
    }
}

/// Strips `_ { } ,` and spaces, so `Q_{2,0}`, `Q20` and `q_{2, 0}` agree.
pub fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | '{' | '}' | ',' | ' '))
        .flat_map(char::to_lowercase)
        .collect()
}

/// Polynomials over `x, y, z, w` use that order even if a variable is absent.
fn parse_record_poly(text: &str) -> Result<InvertiblePolynomial, crate::PolyError> {
    let all = ["x", "y", "z", "w"];
    let used = all.iter().rposition(|v| text.contains(v)).map_or(0, |i| i + 1);
    parse_polynomial_with_vars(text, &all[..used])
}

fn parse_triple(field: &str, line: usize) -> Result<Option<Vec<u64>>, DualityError> {
    let field = field.trim();
    if field == "-" {
        return Ok(None);
    }
    field
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
        .map_err(|e| DualityError::Dataset { line, msg: format!("bad triple {field:?}: {e}") })
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub version: u32,
    records: Vec<SingularityRecord>,
}

impl Dataset {
    pub fn parse(text: &str) -> Result<Dataset, DualityError> {
        let mut version = None;
        let mut records = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if version.is_none() {
                let v = content
                    .strip_prefix(HEADER)
                    .and_then(|rest| rest.trim().strip_prefix('v'))
                    .and_then(|v| v.parse::<u32>().ok())
                    .ok_or_else(|| DualityError::Dataset { line, msg: format!("expected `{HEADER} v<N>`") })?;
                if v != SUPPORTED_VERSION {
                    return Err(DualityError::Dataset { line, msg: format!("unsupported version {v}") });
                }
                version = Some(v);
                continue;
            }
            let fields: Vec<&str> = content.split('|').map(str::trim).collect();
            let [name, poly, a, gamma, dual, class] = fields[..] else {
                return Err(DualityError::Dataset { line, msg: format!("expected 6 fields, got {}", fields.len()) });
            };
            let f = parse_record_poly(poly).map_err(|e| DualityError::Dataset { line, msg: e.to_string() })?;
            let class = SingularityClass::parse(class)
                .ok_or_else(|| DualityError::Dataset { line, msg: format!("unknown class {class:?}") })?;
            records.push(SingularityRecord {
                name: name.to_string(),
                polynomial: poly.to_string(),
                dolgachev: parse_triple(a, line)?,
                gabrielov: parse_triple(gamma, line)?,
                dual: dual.to_string(),
                class,
                f,
            });
        }
        let version = version.ok_or(DualityError::Dataset { line: 0, msg: "empty dataset".into() })?;
        let ds = Dataset { version, records };
        for r in &ds.records {
            ds.lookup(&r.dual)
                .map_err(|_| DualityError::Dataset { line: 0, msg: format!("{}: dual {} missing", r.name, r.dual) })?;
        }
        Ok(ds)
    }

    /// The dataset shipped with the crate.
    pub fn builtin() -> &'static Dataset {
        static DS: OnceLock<Dataset> = OnceLock::new();
        DS.get_or_init(|| Dataset::parse(BUILTIN).expect("built-in dataset is well formed"))
    }

    pub fn records(&self) -> &[SingularityRecord] {
        &self.records
    }

    pub fn lookup(&self, name: &str) -> Result<&SingularityRecord, DualityError> {
        let key = normalize_name(name);
        self.records
            .iter()
            .find(|r| normalize_name(&r.name) == key)
            .ok_or_else(|| DualityError::UnknownName(name.to_string()))
    }

    pub fn by_class(&self, class: SingularityClass) -> Vec<&SingularityRecord> {
        self.records.iter().filter(|r| r.class == class).collect()
    }

    pub fn dual_of(&self, r: &SingularityRecord) -> Result<&SingularityRecord, DualityError> {
        self.lookup(&r.dual)
    }

    /// `sigma` with variable `i` of the transpose of `r` matching variable
    /// `sigma[i]` of the dual record.
    pub fn transpose_permutation(&self, r: &SingularityRecord) -> Result<Vec<usize>, DualityError> {
        let dual = self.dual_of(r)?;
        variable_permutation(&transpose(r.poly()), dual.poly())
            .ok_or_else(|| DualityError::MissingBaseData(format!("transpose of {} is not {}", r.name, dual.name)))
    }

    /// Gabrielov triple of the transpose of `r`, per coordinate of the
    /// transpose, read off the dual record.
    pub fn transpose_gabrielov(&self, r: &SingularityRecord) -> Result<Vec<u64>, DualityError> {
        let dual = self.dual_of(r)?;
        let gamma = dual.gabrielov.as_ref().ok_or_else(|| DualityError::MissingBaseData(dual.name.clone()))?;
        let sigma = self.transpose_permutation(r)?;
        Ok(sigma.iter().map(|&j| gamma[j]).collect())
    }
}

/// A variable permutation carrying the monomials of `a` onto those of `b`,
/// ignoring coefficients.
pub(crate) fn variable_permutation(a: &InvertiblePolynomial, b: &InvertiblePolynomial) -> Option<Vec<usize>> {
    let n = a.n();
    if b.n() != n {
        return None;
    }
    let mut target: Vec<Vec<u32>> = b.exponents().to_vec();
    target.sort();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut mapped: Vec<Vec<u32>> = a
            .exponents()
            .iter()
            .map(|e| {
                let mut m = vec![0; n];
                for (i, &k) in e.iter().enumerate() {
                    m[perm[i]] = k;
                }
                m
            })
            .collect();
        mapped.sort();
        if mapped == target {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A head of a bimodal series with its four Dolgachev numbers for `G_0`.
#[derive(Debug, Clone, Copy)]
pub struct TableFourRow {
    pub name: &'static str,
    pub family: &'static str,
    pub dolgachev_g0: [u64; 4],
}

pub const TABLE_FOUR: [TableFourRow; 6] = [
    TableFourRow { name: "J_{3,0}", family: "x^3+xy^6+z^2+ax^2y^3", dolgachev_g0: [2, 2, 2, 3] },
    TableFourRow { name: "Z_{1,0}", family: "x^5y+xy^3+z^2+ax^2y^3", dolgachev_g0: [2, 2, 2, 4] },
    TableFourRow { name: "Q_{2,0}", family: "x^3+xy^4+yz^2+ax^2y^2", dolgachev_g0: [2, 2, 2, 5] },
    TableFourRow { name: "W_{1,0}", family: "x^6+y^2+yz^2+ax^3y", dolgachev_g0: [2, 2, 3, 3] },
    TableFourRow { name: "S_{1,0}", family: "x^5+xy^2+yz^2+ax^3y", dolgachev_g0: [2, 2, 3, 4] },
    TableFourRow { name: "U_{1,0}", family: "x^3+xy^2+yz^3+ax^2y", dolgachev_g0: [2, 3, 3, 3] },
];
