//! End-to-end strange-duality checks over the dataset, collected into a
//! pass/fail report.

use super::*;
use crate::burnside::{
    equivariant_euler, orbifold_euler, reduced_equivariant_euler, reduced_orbifold_euler, saito_duality_map,
};
use crate::coxeter::{build_t, coxeter_element};
use crate::monodromy::{characteristic_polynomial, milnor_basis, milnor_number};
use crate::orbifold::{bigraded_table, central_charge, duality_check, hodge_mirror_holds};
use crate::polycore::{canonical_weights, reduce_weights, transpose};
use crate::symmetry::{Ambient, DEFAULT_SUBGROUP_BOUND};
use crate::Exec;
use serde_json::{json, Value};

/// One comparison: `lhs` and `rhs` are the rendered values that were compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(id: impl Into<String>, lhs: &T, rhs: &T) -> Check {
        Check { id: id.into(), pass: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    /// A check whose two sides are not `Display` values.
    pub fn flag(id: impl Into<String>, pass: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Check {
        Check { id: id.into(), pass, lhs: lhs.into(), rhs: rhs.into() }
    }

    /// Records an error as a failed check instead of aborting the batch.
    pub fn error(id: impl Into<String>, err: &dyn std::error::Error) -> Check {
        Check { id: id.into(), pass: false, lhs: format!("error: {err}"), rhs: String::new() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"id": c.id, "status": if c.pass { "pass" } else { "fail" }, "lhs": c.lhs, "rhs": c.rhs}))
            .collect();
        json!({ "checks": checks })
    }

    /// Folds a fallible sub-report into this one.
    fn absorb(&mut self, id: &str, r: Result<Report, DualityError>) {
        match r {
            Ok(r) => self.merge(r),
            Err(e) => self.push(Check::error(id, &e)),
        }
    }

    fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {} | {}", c.id, c.lhs, c.rhs)?;
        }
        write!(f, "{}/{} checks passed", self.passed(), self.checks.len())
    }
}

fn without_ones(t: &[u64]) -> NumberTuple {
    NumberTuple::new(t.iter().copied().filter(|&a| a != 1).collect())
}

fn triple(v: &Option<Vec<u64>>) -> String {
    v.as_ref().map_or_else(|| "-".into(), |t| format!("{t:?}"))
}

/// Transpose against the dual record, the A/Gamma swap in both directions,
/// and for Arnold's 14 the Saito duality of the characteristic polynomials.
pub fn verify_strange_duality(ds: &Dataset, name: &str) -> Result<Report, DualityError> {
    let r = ds.lookup(name)?;
    let dual = ds.dual_of(r)?;
    let id = |s: &str| format!("{}/{s}", r.name);
    let mut rep = Report::default();
    let ft = transpose(r.poly());
    rep.push(Check::flag(
        id("transpose"),
        ds.transpose_permutation(r).is_ok(),
        ft.to_string(),
        dual.poly().to_string(),
    ));
    let multiset = |v: &Option<Vec<u64>>| v.as_ref().map(|t| NumberTuple::new(t.clone()));
    if r.dolgachev.is_some() || dual.gabrielov.is_some() {
        rep.push(Check::flag(
            id("A=Gamma(dual)"),
            r.dolgachev.is_some() && multiset(&r.dolgachev) == multiset(&dual.gabrielov),
            triple(&r.dolgachev),
            triple(&dual.gabrielov),
        ));
    }
    if r.gabrielov.is_some() || dual.dolgachev.is_some() {
        rep.push(Check::flag(
            id("Gamma=A(dual)"),
            r.gabrielov.is_some() && multiset(&r.gabrielov) == multiset(&dual.dolgachev),
            triple(&r.gabrielov),
            triple(&dual.dolgachev),
        ));
    }
    if let (Some(a), Ok(t)) = (&r.dolgachev, ds.transpose_gabrielov(r)) {
        rep.push(Check::flag(id("A aligned"), *a == t, format!("{a:?}"), format!("{t:?}")));
    }
    if r.class == SingularityClass::ExceptionalUnimodal {
        let phi = characteristic_polynomial(r.poly())?;
        let phi_dual = characteristic_polynomial(dual.poly())?;
        rep.push(Check::compare(id("saito"), &phi.saito_dual(), &phi_dual));
    }
    Ok(rep)
}

/// Compares the recorded triples of a three-variable record with the
/// isotropy orders of the orbifold curves of `(f, G_f)` and `(f~, G_f~)`.
pub fn verify_triples_against_curves(ds: &Dataset, name: &str) -> Result<Report, DualityError> {
    let r = ds.lookup(name)?;
    let mut rep = Report::default();
    if r.poly().n() != 3 {
        return Ok(rep);
    }
    let f = r.poly();
    let ft = transpose(f);
    let checks = [(&r.dolgachev, f, "A=curve"), (&r.gabrielov, &ft, "Gamma=curve(transpose)")];
    for (recorded, poly, label) in checks {
        if let Some(t) = recorded {
            let curve = orbifold_curve(poly, &Subgroup::maximal(poly))?;
            rep.push(Check::compare(format!("{}/{label}", r.name), &without_ones(t), &curve.orders()));
        }
    }
    Ok(rep)
}

/// The chain `g = j(G~)`, `A_(f,G) = Gamma_(f~,G~)`, `e_st = mu_(f~,G~)` for
/// `G >= G_0`, each side compared with an independent computation from the
/// orbifold curve.
pub fn verify_et2(ds: &Dataset, name: &str, g: &Subgroup) -> Result<Report, DualityError> {
    let r = ds.lookup(name)?;
    let f = r.poly();
    if f.n() != 3 {
        return Err(DualityError::NotThreeVariables(f.n()));
    }
    let id = |s: &str| format!("{}/{}/{s}", r.name, g);
    let mut rep = Report::default();
    let g_dual = g.dual();
    let j = genus(g)?;
    let rh = riemann_hurwitz_genus(f, g)?;
    rep.push(Check::compare(id("genus"), &Q::from_integer(j as i64), &rh));

    let base_dual = ds.transpose_gabrielov(r)?;
    let a = dolgachev_numbers(g, &base_dual)?;
    let curve = orbifold_curve(f, g)?.orders();
    rep.push(Check::compare(id("A=Gamma~"), &a, &curve));

    let via_isotropy = dolgachev_via_isotropy(&base_dual, g, &isotropy_subgroups(g))?;
    rep.push(Check::compare(id("A via isotropy"), &via_isotropy, &curve));

    if *g == Subgroup::full(g.ambient().clone()) {
        if let Some(recorded) = &r.dolgachev {
            rep.push(Check::compare(id("A recorded"), &a, &without_ones(recorded)));
        }
    }

    let e_st = stringy_euler(rh.to_integer(), &curve);
    let mu = equivariant_milnor_t(&a, g_dual.j_invariant() as i64);
    rep.push(Check::compare(id("e_st=mu"), &e_st, &mu));
    Ok(rep)
}

/// `phi_T(gamma, 0)` against the Coxeter element of the `T`-graph with arms
/// `gamma`, and its degree against the equivariant Milnor number.
pub fn verify_phi_t(gamma: &[u64]) -> Result<Report, DualityError> {
    let t = NumberTuple::new(gamma.to_vec());
    let id = |s: &str| format!("T{t}/{s}");
    let mut rep = Report::default();
    let [p, q, r] = gamma else {
        return Err(DualityError::MissingBaseData(format!("{t} is not a triple")));
    };
    let graph = build_t(*p as u32, *q as u32, *r as u32)?;
    let phi = phi_t(&t, 0);
    let expanded = phi.expand().ok_or_else(|| DualityError::MissingBaseData(format!("phi_T{t} is not a polynomial")))?;
    let cox = coxeter_element(&graph).charpoly;
    rep.push(Check::compare(id("phi=charpoly"), &expanded, &cox));
    rep.push(Check::compare(id("degree=mu"), &phi.degree(), &equivariant_milnor_t(&t, 0)));
    Ok(rep)
}

/// Table 4: the `G_0` Dolgachev quadruples of the bimodal heads.
pub fn verify_table_four(ds: &Dataset) -> Result<Report, DualityError> {
    let mut rep = Report::default();
    for row in TABLE_FOUR {
        let r = ds.lookup(row.name)?;
        let g0 = Subgroup::g0_group(Ambient::of(r.poly()));
        let a = dolgachev_numbers(&g0, &ds.transpose_gabrielov(r)?)?;
        rep.push(Check::compare(format!("{}/G0 quadruple", r.name), &a, &NumberTuple::from(&row.dolgachev_g0[..])));
        rep.merge(verify_et2(ds, row.name, &g0)?);
    }
    Ok(rep)
}

/// The records behind table `k`: 1 Arnold's 14, 2 ADE, 3 bimodal, 4 the
/// bimodal heads with `G_0`.
pub fn verify_table(ds: &Dataset, k: u32, exec: Exec) -> Result<Report, DualityError> {
    let classes: &[SingularityClass] = match k {
        1 => &[SingularityClass::ExceptionalUnimodal],
        2 => &[SingularityClass::Ade],
        3 => &[SingularityClass::BimodalHead, SingularityClass::BimodalExceptional],
        4 => return verify_table_four(ds).map(Report::sorted),
        _ => return Err(DualityError::MissingBaseData(format!("no table {k}"))),
    };
    let names: Vec<&str> =
        ds.records().iter().filter(|r| classes.contains(&r.class)).map(|r| r.name.as_str()).collect();
    let parts = exec.map(&names, |name| {
        let mut rep = Report::default();
        rep.absorb(name, verify_strange_duality(ds, name));
        rep.absorb(name, verify_triples_against_curves(ds, name));
        rep
    });
    let mut rep = Report::default();
    parts.into_iter().for_each(|p| rep.merge(p));
    Ok(rep.sorted())
}

/// Group-theoretic invariants of `G_f` and the duality of subgroups.
pub fn verify_group_theory(f: &InvertiblePolynomial) -> Result<Report, DualityError> {
    let mut rep = Report::default();
    let full = Subgroup::maximal(f);
    let amb = full.ambient().clone();
    let (_, c_f) = reduce_weights(&canonical_weights(f)?);
    rep.push(Check::compare(format!("{f}/|Gf|=det"), &(full.order() as i64), &f.det().abs()));
    let g0 = Subgroup::g0_group(amb.clone());
    rep.push(Check::compare(format!("{f}/[Gf:G0]=c_f"), &((full.order() / g0.order()) as i64), &c_f));
    let sl_dual = Subgroup::maximal(&transpose(f)).sl_subgroup();
    rep.push(Check::flag(format!("{f}/dual(G0)=SL~"), g0.dual() == sl_dual, g0.dual().to_string(), sl_dual.to_string()));
    rep.push(Check::compare(format!("{f}/|SL~|=c_f"), &(sl_dual.order() as i64), &c_f));
    let mut double_dual = true;
    let mut orders = true;
    for h in full.all_subgroups(DEFAULT_SUBGROUP_BOUND)? {
        double_dual &= h.dual().dual() == h;
        orders &= h.order() * h.dual().order() == full.order();
    }
    rep.push(Check::flag(format!("{f}/double dual"), double_dual, "dual(dual(H))", "H"));
    rep.push(Check::flag(format!("{f}/|H||H~|=|Gf|"), orders, "|H| |H~|", "|G_f|"));
    // Non-degeneracy: only the identity pairs trivially with all of G_f~.
    let dual_full = Subgroup::full(amb.dual());
    let radical = full
        .elements()
        .iter()
        .filter(|a| dual_full.generators().iter().all(|b| amb.pairing(a, b) == Q::zero()))
        .count();
    rep.push(Check::compare(format!("{f}/pairing radical"), &radical, &1));
    Ok(rep)
}

/// Milnor number, E-function mirror symmetry, Hodge mirror, variance and
/// mean for one pair.
pub fn verify_orbifold_pair(f: &InvertiblePolynomial, g: &Subgroup) -> Result<Report, DualityError> {
    let id = |s: &str| format!("{f}/{g}/{s}");
    let mut rep = Report::default();
    let d = duality_check(f, g)?;
    rep.push(Check::flag(id("E mirror"), d.holds(), d.lhs.to_string(), d.rhs.to_string()));
    let sl = g.is_in_sl();
    if sl {
        rep.push(Check::flag(id("hodge mirror"), hodge_mirror_holds(f, g)?, "h^{p,q}", "h~^{n-p,q}"));
    }
    let table = bigraded_table(f, g)?;
    if sl || g.contains_g0() {
        let c_hat = central_charge(f)?;
        let expected = c_hat * Q::from_integer(table.euler_characteristic()) / Q::from_integer(12);
        rep.push(Check::compare(id("variance"), &table.variance(), &expected));
    }
    rep.push(Check::compare(id("mean"), &table.mean(), &Q::zero()));
    Ok(rep)
}

/// `mu` from the product formula against the size of a monomial basis, for
/// `f` and every restriction to a fixed locus of `G_f`.
pub fn verify_milnor(f: &InvertiblePolynomial) -> Result<Report, DualityError> {
    let mut rep = Report::default();
    let full = Subgroup::maximal(f);
    let mut masks: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in full.elements() {
        masks.insert(g.fixed_coordinates().0);
    }
    for fixed in masks {
        if fixed.is_empty() {
            continue;
        }
        let fg = f.restrict(&fixed)?;
        let mu = milnor_number(&fg)?;
        let basis = milnor_basis(&fg)?.len() as u64;
        rep.push(Check::compare(format!("{f}/mu{fixed:?}"), &mu, &basis));
    }
    Ok(rep)
}

/// Saito duality of equivariant Euler characteristics and its orbifold
/// shadow for the pair `(f, G_f)`, plus `r_orb` on every subgroup.
pub fn verify_burnside(f: &InvertiblePolynomial) -> Result<Report, DualityError> {
    let mut rep = Report::default();
    let n = f.n() as i64;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let full = Subgroup::maximal(f);
    let ft = transpose(f);
    let lhs = reduced_equivariant_euler(&ft, &Subgroup::maximal(&ft))?;
    let rhs = saito_duality_map(&reduced_equivariant_euler(f, &full)?)?.scale(sign);
    rep.push(Check::compare(format!("{f}/burnside duality"), &lhs, &rhs));
    for g in full.all_subgroups(DEFAULT_SUBGROUP_BOUND)? {
        let chi = equivariant_euler(f, &g)?;
        rep.push(Check::compare(format!("{f}/{g}/r_orb"), &chi.r_orb(), &orbifold_euler(f, &g)?));
        let a = reduced_orbifold_euler(&ft, &g.dual())?;
        let b = sign * reduced_orbifold_euler(f, &g)?;
        rep.push(Check::compare(format!("{f}/{g}/orbifold euler duality"), &a, &b));
    }
    Ok(rep)
}

/// Everything that applies to one dataset record: strange duality, the
/// curve oracle, ET2 for `G_0` and `G_f`, group theory and Milnor numbers.
pub fn verify_record(ds: &Dataset, name: &str) -> Result<Report, DualityError> {
    let r = ds.lookup(name)?;
    let mut rep = verify_strange_duality(ds, name)?;
    rep.merge(verify_triples_against_curves(ds, name)?);
    let f = r.poly();
    if f.n() == 3 && ds.dual_of(r)?.gabrielov.is_some() {
        let amb = Ambient::of(f);
        let mut groups = vec![Subgroup::g0_group(amb.clone()), Subgroup::full(amb)];
        groups.dedup();
        for g in &groups {
            rep.merge(verify_et2(ds, name, g)?);
        }
    }
    rep.merge(verify_group_theory(f)?);
    rep.merge(verify_milnor(f)?);
    Ok(rep)
}

/// `verify_record` for every record, run under `exec`; rows sorted by id.
pub fn verify_dataset(ds: &Dataset, exec: Exec) -> Report {
    let names: Vec<&str> = ds.records().iter().map(|r| r.name.as_str()).collect();
    let parts = exec.map(&names, |name| {
        let mut rep = Report::default();
        rep.absorb(name, verify_record(ds, name));
        rep
    });
    let mut rep = Report::default();
    parts.into_iter().for_each(|p| rep.merge(p));
    rep.sorted()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e13_is_dual_to_z11() {
        let rep = verify_strange_duality(Dataset::builtin(), "E13").unwrap();
        assert!(rep.all_pass(), "{rep}");
        assert!(rep.checks.iter().any(|c| c.id == "E_{13}/saito"));
    }

    #[test]
    fn w10_with_g0() {
        let ds = Dataset::builtin();
        let f = ds.lookup("W_{1,0}").unwrap().poly();
        let g0 = Subgroup::g0_group(Ambient::of(f));
        let rep = verify_et2(ds, "W_{1,0}", &g0).unwrap();
        assert!(rep.all_pass(), "{rep}");
        let a = rep.checks.iter().find(|c| c.id.ends_with("A=Gamma~")).unwrap();
        assert_eq!(a.lhs, "(2,2,3,3)");
        let e = rep.checks.iter().find(|c| c.id.ends_with("e_st=mu")).unwrap();
        assert_eq!(e.lhs, "8");
    }

    #[test]
    fn tables_pass() {
        let ds = Dataset::builtin();
        for k in 1..=4 {
            let rep = verify_table(ds, k, Exec::default()).unwrap();
            assert!(rep.all_pass(), "table {k}:\n{rep}");
        }
        assert!(verify_table(ds, 5, Exec::Sequential).is_err());
    }

    #[test]
    fn phi_t_matches_coxeter() {
        assert!(verify_phi_t(&[2, 3, 7]).unwrap().all_pass());
        assert!(verify_phi_t(&[2, 3]).is_err());
    }

    #[test]
    fn json_shape() {
        let mut rep = Report::default();
        rep.push(Check::compare("x", &1, &2));
        let v = rep.to_json();
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["checks"][0]["lhs"], "1");
        assert!(!rep.all_pass());
    }
}
