use anyhow::{anyhow, bail, Context, Result};
use bhdual::burnside::{equivariant_euler, orbifold_euler, reduced_equivariant_euler, saito_duality_map};
use bhdual::coxeter::{build_s, coxeter_element, cyclotomic_factors, parse_graph_spec, quasi_unipotent_check, DynkinGraph};
use bhdual::duality::{
    verify_burnside, verify_dataset, verify_group_theory, verify_milnor, verify_orbifold_pair, verify_record,
    verify_table, Dataset, Report,
};
use bhdual::monodromy::{characteristic_polynomial, milnor_number, poincare_series, spectrum};
use bhdual::orbifold::{bigraded_table, central_charge, duality_check};
use bhdual::polycore::{
    atomic_decomposition, canonical_weights, gorenstein_parameter, is_nondegenerate, parse_polynomial_with_vars,
    reduce_weights, transpose,
};
use bhdual::symmetry::parse_group_spec;
use bhdual::{parse_polynomial, Exec, InvertiblePolynomial, Subgroup};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bhdual", version, about = "Invertible polynomials and their transpose duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Polynomial such as `x^2+y^3+z^7`.
    #[arg(long, global = true)]
    poly: Option<String>,
    /// Dataset record, e.g. `E12` or `Q_{2,0}`.
    #[arg(long, global = true)]
    name: Option<String>,
    /// `e`, `G0`, `Gf`, `SL` or generators like `(1/2,1/2,0);(0,1/3,2/3)`.
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Number of Poincare series coefficients to print.
    #[arg(long, global = true, default_value_t = 20)]
    series_order: usize,
    /// Variable order for `--poly`, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Run batch checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, Milnor number and basic invariants.
    Info,
    /// The transposed polynomial.
    Transpose,
    /// A subgroup of the maximal diagonal symmetry group.
    Group,
    /// The dual subgroup of the transpose's symmetry group.
    DualGroup,
    /// Spectrum, characteristic polynomial and Poincare series.
    Monodromy,
    /// Characteristic polynomial and its Saito dual.
    Saito,
    /// Orbifold E-function and the mirror identity.
    Efunction,
    /// Equivariant Euler characteristic in the Burnside ring.
    Burnside,
    /// Coxeter element of a Dynkin graph.
    Coxeter {
        /// `T:p,q,r`, `S:p,q,r`, `A:5`, `D:4`, `E:8` or `C:m`.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Run checks; exit code is 0 iff all pass.
    Verify {
        /// 1 Arnold's 14, 2 ADE, 3 bimodal, 4 bimodal heads with G0.
        #[arg(long)]
        table: Option<u32>,
        /// Every dataset record.
        #[arg(long)]
        all: bool,
    },
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }

    fn report(r: &Report) -> Self {
        Output { text: r.to_string(), json: r.to_json(), ok: r.all_pass() }
    }
}

impl Cli {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    fn polynomial(&self) -> Result<InvertiblePolynomial> {
        match (&self.name, &self.poly) {
            (Some(_), Some(_)) => bail!("give either --name or --poly, not both"),
            (Some(name), None) => Ok(Dataset::builtin().lookup(name)?.poly().clone()),
            (None, Some(text)) => Ok(match &self.vars {
                Some(vars) => {
                    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
                    parse_polynomial_with_vars(text, &vars)?
                }
                None => parse_polynomial(text)?,
            }),
            (None, None) => bail!("a polynomial is required: pass --poly or --name"),
        }
    }

    fn subgroup(&self, f: &InvertiblePolynomial) -> Result<Subgroup> {
        let spec = self.group.as_deref().unwrap_or("Gf");
        parse_group_spec(f, spec).with_context(|| format!("group {spec:?}"))
    }
}

fn group_json(g: &Subgroup) -> Value {
    let gens: Vec<String> = g.canonical_generators().iter().map(|x| x.to_string()).collect();
    json!({
        "generators": gens,
        "order": g.order(),
        "in_sl": g.is_in_sl(),
        "contains_g0": g.contains_g0(),
        "j": g.j_invariant(),
    })
}

fn group_text(label: &str, g: &Subgroup) -> String {
    format!(
        "{label}: {g}\norder: {}\nin SL: {}\ncontains g0: {}\nj: {}",
        g.order(),
        g.is_in_sl(),
        g.contains_g0(),
        g.j_invariant()
    )
}

fn info(cli: &Cli) -> Result<Output> {
    let f = cli.polynomial()?;
    let canonical = canonical_weights(&f)?;
    let (reduced, c_f) = reduce_weights(&canonical);
    let mu = milnor_number(&f)?;
    let order = Subgroup::maximal(&f).order();
    let c_hat = central_charge(&f)?;
    let a_f = gorenstein_parameter(&f)?;
    let blocks: Vec<String> = atomic_decomposition(&f)?
        .iter()
        .map(|b| {
            let vars: Vec<&str> = b.vars.iter().map(|&i| f.vars()[i].as_str()).collect();
            format!("{:?}({})", b.kind, vars.join(","))
        })
        .collect();
    let record = cli.name.as_ref().map(|n| Dataset::builtin().lookup(n)).transpose()?;
    let mut text = format!(
        "f = {f}\nvariables: {}\nweights: {:?} / {}\nreduced weights: {:?} / {}\nc_f: {c_f}\na_f: {a_f}\nmu: {mu}\n|G_f|: {order}\nc_hat: {c_hat}\nnondegenerate: {}\natomic: {}",
        f.vars().join(","),
        canonical.weights,
        canonical.degree,
        reduced.weights,
        reduced.degree,
        is_nondegenerate(&f),
        blocks.join(" + "),
    );
    let mut json = json!({
        "polynomial": f.to_string(),
        "variables": f.vars(),
        "weights": canonical.weights,
        "degree": canonical.degree,
        "reduced_weights": reduced.weights,
        "reduced_degree": reduced.degree,
        "c_f": c_f,
        "a_f": a_f,
        "milnor_number": mu,
        "group_order": order,
        "central_charge": c_hat.to_string(),
        "atomic": blocks,
    });
    if let Some(r) = record {
        text.push_str(&format!("\nrecord: {} ({}), dual {}", r.name, r.class.as_str(), r.dual));
        json["record"] = json!({
            "name": r.name,
            "class": r.class.as_str(),
            "dual": r.dual,
            "dolgachev": r.dolgachev,
            "gabrielov": r.gabrielov,
        });
    }
    Ok(Output::new(text, json))
}

fn transpose_cmd(cli: &Cli) -> Result<Output> {
    let f = cli.polynomial()?;
    let ft = transpose(&f);
    let mut text = ft.to_string();
    let mut json = json!({"polynomial": f.to_string(), "transpose": ft.to_string()});
    if let Some(name) = &cli.name {
        let ds = Dataset::builtin();
        let dual = ds.dual_of(ds.lookup(name)?)?;
        text.push_str(&format!("\ndual record: {} = {}", dual.name, dual.poly()));
        json["dual"] = json!(dual.name);
    }
    Ok(Output::new(text, json))
}

fn group_cmd(cli: &Cli, dual: bool) -> Result<Output> {
    let f = cli.polynomial()?;
    let g = cli.subgroup(&f)?;
    if dual {
        let d = g.dual();
        let text = format!("transpose: {}\n{}", transpose(&f), group_text("dual group", &d));
        Ok(Output::new(text, json!({"transpose": transpose(&f).to_string(), "group": group_json(&d)})))
    } else {
        Ok(Output::new(group_text("group", &g), json!({"group": group_json(&g)})))
    }
}

fn monodromy(cli: &Cli) -> Result<Output> {
    let f = cli.polynomial()?;
    let mu = milnor_number(&f)?;
    let spec = spectrum(&f)?;
    let phi = characteristic_polynomial(&f)?;
    let series = poincare_series(&f)?.expand(cli.series_order);
    let text = format!("mu: {mu}\nspectrum: {spec}\nphi: {phi}\npoincare: {series:?}");
    let json = json!({"milnor_number": mu, "spectrum": spec.to_json(), "phi": phi.to_json(), "poincare": series});
    Ok(Output::new(text, json))
}

fn saito(cli: &Cli) -> Result<Output> {
    let f = cli.polynomial()?;
    let phi = characteristic_polynomial(&f)?;
    let dual = phi.saito_dual();
    let mut text = format!("phi: {phi}\nsaito dual: {dual}");
    let mut json = json!({"phi": phi.to_json(), "saito_dual": dual.to_json()});
    let mut ok = true;
    if let Some(name) = &cli.name {
        let ds = Dataset::builtin();
        let other = ds.dual_of(ds.lookup(name)?)?;
        let phi_other = characteristic_polynomial(other.poly())?;
        ok = phi_other == dual;
        text.push_str(&format!("\nphi of {}: {phi_other}\nmatches: {ok}", other.name));
        json["dual_record"] = json!({"name": other.name, "phi": phi_other.to_json(), "matches": ok});
    }
    Ok(Output { text, json, ok })
}

fn efunction(cli: &Cli) -> Result<Output> {
    let f = cli.polynomial()?;
    let g = cli.subgroup(&f)?;
    let table = bigraded_table(&f, &g)?;
    let d = duality_check(&f, &g)?;
    let text = format!(
        "E(f,G) = {}\n(-1)^n E(f~,G~)(1/t,tb) = {}\nmirror identity: {}\nchi: {}\nmean: {}\nvariance: {}",
        d.lhs,
        d.rhs,
        d.holds(),
        table.euler_characteristic(),
        table.mean(),
        table.variance()
    );
    let json = json!({
        "e_function": d.lhs.to_json(),
        "mirror": d.rhs.to_json(),
        "holds": d.holds(),
        "table": table.to_json(),
        "euler_characteristic": table.euler_characteristic(),
        "mean": table.mean().to_string(),
        "variance": table.variance().to_string(),
    });
    Ok(Output { text, json, ok: d.holds() })
}

fn burnside(cli: &Cli) -> Result<Output> {
    let f = cli.polynomial()?;
    let g = cli.subgroup(&f)?;
    let chi = equivariant_euler(&f, &g)?;
    let reduced = reduced_equivariant_euler(&f, &g)?;
    let orb = orbifold_euler(&f, &g)?;
    let mut text = format!("chi^G: {chi}\nreduced: {reduced}\nchi^orb: {orb}\nr_orb(chi^G): {}", chi.r_orb());
    let mut json = json!({"chi": chi.to_json(), "reduced": reduced.to_json(), "orbifold": orb, "r_orb": chi.r_orb()});
    let mut ok = chi.r_orb() == orb;
    if g == Subgroup::full(g.ambient().clone()) {
        let ft = transpose(&f);
        let sign = if f.n() % 2 == 0 { 1 } else { -1 };
        let mapped = saito_duality_map(&reduced)?.scale(sign);
        let other = reduced_equivariant_euler(&ft, &Subgroup::maximal(&ft))?;
        ok &= mapped == other;
        text.push_str(&format!("\n(-1)^n D(reduced): {mapped}\nreduced for transpose: {other}"));
        json["duality"] = json!({"mapped": mapped.to_json(), "transpose": other.to_json(), "holds": mapped == other});
    }
    Ok(Output { text, json, ok })
}

fn coxeter(cli: &Cli, graph: Option<&str>) -> Result<Output> {
    let (graph, expected): (DynkinGraph, Option<_>) = match graph {
        Some(spec) => (parse_graph_spec(spec)?, None),
        None => {
            let name = cli.name.as_ref().ok_or_else(|| anyhow!("pass --graph or --name"))?;
            let r = Dataset::builtin().lookup(name)?;
            let gamma = r.gabrielov.as_ref().ok_or_else(|| anyhow!("{} has no Gabrielov triple", r.name))?;
            let [p, q, s] = gamma[..] else { bail!("{} has no Gabrielov triple", r.name) };
            let phi = characteristic_polynomial(r.poly())?.expand();
            (build_s(p as u32, q as u32, s as u32)?, phi)
        }
    };
    let c = coxeter_element(&graph);
    let factors = cyclotomic_factors(&c.charpoly);
    let qu = quasi_unipotent_check(&c);
    let mut text = format!("graph: {graph}\ncharpoly: {}\ncyclotomic: {factors:?}\norder: {qu:?}", c.charpoly);
    let mut json = json!({
        "graph": graph.to_string(),
        "charpoly": c.charpoly.coeffs(),
        "cyclotomic": factors,
        "quasi_unipotent": format!("{qu:?}"),
    });
    let mut ok = true;
    if let Some(phi) = expected {
        ok = phi == c.charpoly;
        text.push_str(&format!("\nphi_f: {phi}\nmatches: {ok}"));
        json["matches_phi"] = json!(ok);
    }
    Ok(Output { text, json, ok })
}

fn verify(cli: &Cli, table: Option<u32>, all: bool) -> Result<Output> {
    let ds = Dataset::builtin();
    let exec = cli.exec();
    let report = if all {
        verify_dataset(ds, exec)
    } else if let Some(k) = table {
        verify_table(ds, k, exec)?
    } else if let Some(name) = &cli.name {
        let mut r = verify_record(ds, name)?;
        r.merge(verify_burnside(ds.lookup(name)?.poly())?);
        r
    } else {
        let f = cli.polynomial()?;
        let mut r = verify_group_theory(&f)?;
        r.merge(verify_milnor(&f)?);
        let groups = match &cli.group {
            Some(_) => vec![cli.subgroup(&f)?],
            None => ["e", "G0", "SL", "Gf"].iter().map(|s| parse_group_spec(&f, s)).collect::<Result<_, _>>()?,
        };
        for g in &groups {
            r.merge(verify_orbifold_pair(&f, g)?);
        }
        r.merge(verify_burnside(&f)?);
        r
    };
    Ok(Output::report(&report))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Info => info(cli),
        Command::Transpose => transpose_cmd(cli),
        Command::Group => group_cmd(cli, false),
        Command::DualGroup => group_cmd(cli, true),
        Command::Monodromy => monodromy(cli),
        Command::Saito => saito(cli),
        Command::Efunction => efunction(cli),
        Command::Burnside => burnside(cli),
        Command::Coxeter { graph } => coxeter(cli, graph.as_deref()),
        Command::Verify { table, all } => verify(cli, *table, *all),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json values serialise"),
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
