use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use mec_atlas::families::{binary_tree_counts, binary_tree_ratio_check, ratio_to_f64};
use mec_atlas::oracle::{Enumerator, DEFAULT_EDGE_CAP};
use mec_atlas::survey::{invariant_check, survey, SurveyRecord};
use mec_atlas::verify::{
    all_passed, binary_tree_checks, bounds_checks, check_family, family_checks, identity_checks, lucas_triangle_checks,
    CheckOutcome, FamilyScope,
};
use mec_atlas::{EdgeStatus, FamilySpec, MecSet, Polynomial, SizeSpectrum, UndirectedGraph};

const THREADS_VAR: &str = "MEC_ATLAS_THREADS";

#[derive(Parser)]
#[command(name = "mec-atlas", version, about = "Count and inspect Markov equivalence classes of DAGs on a skeleton")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the classes of a graph read from an edge-list or graph6 file.
    Enumerate {
        file: PathBuf,
        /// Emit a single JSON object instead of key=value lines.
        #[arg(long)]
        json: bool,
        /// Largest edge count (per connected component) to enumerate.
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
    },
    /// Evaluate the closed forms for a family instance such as `path:7` or `bistar:3,2`.
    Family {
        spec: String,
        /// Cross-check the formulas against enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
    },
    /// Run formula-versus-enumeration and identity checks.
    Verify {
        /// Run the tree bound sweeps (alone unless combined with other selectors).
        #[arg(long)]
        bounds: bool,
        /// Run the Lucas triangle identity.
        #[arg(long)]
        lucas_triangle: bool,
        /// Largest node count (families, bounds) or index (Lucas triangle) to check.
        #[arg(long)]
        p: Option<usize>,
    },
    /// Write one CSV row per connected graph on `p` nodes.
    Survey {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        triangle_free: bool,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Group connected graphs on `p` nodes by their class polynomial and report collisions.
    InvariantCheck {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        triangle_free: bool,
    },
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("{THREADS_VAR}={raw:?} is not a thread count"))?;
    if n == 0 {
        bail!("{THREADS_VAR} must be at least 1");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker pool")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Result<bool> {
        configure_threads()?;
        let mut out = String::new();
        let ok = match cli.command {
            Command::Enumerate { file, json, cap } => cmd_enumerate(&file, json, cap, &mut out)?,
            Command::Family { spec, oracle, cap } => cmd_family(&spec, oracle, cap, &mut out)?,
            Command::Verify { bounds, lucas_triangle, p } => cmd_verify(bounds, lucas_triangle, p, &mut out),
            Command::Survey { p, triangle_free, output } => cmd_survey(p, triangle_free, output, &mut out)?,
            Command::InvariantCheck { p, triangle_free } => cmd_invariant_check(p, triangle_free, &mut out)?,
        };
        io::stdout().lock().write_all(out.as_bytes())?;
        Ok(ok)
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn spectrum_json(s: &SizeSpectrum) -> Value {
    Value::Object(s.iter().map(|(size, count)| (size.to_string(), json!(count.to_string()))).collect())
}

fn coeffs_json(p: &Polynomial) -> Value {
    json!(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

/// Per-class lines or objects, with vertex labels mapped back through `labels`.
fn class_entries(set: &MecSet<'_>, labels: &[usize], component: usize) -> Vec<Value> {
    set.classes()
        .iter()
        .map(|c| {
            let immoralities: Vec<String> = c
                .immoralities
                .iter()
                .map(|m| format!("{}->{}<-{}", labels[m.tails.0], labels[m.head], labels[m.tails.1]))
                .collect();
            let mut directed = Vec::new();
            let mut undirected = Vec::new();
            for (e, status) in c.essential.status().iter().enumerate() {
                match *status {
                    EdgeStatus::Directed { tail, head } => directed.push(json!([labels[tail], labels[head]])),
                    EdgeStatus::Undirected => {
                        let (u, v) = set.graph().edges()[e];
                        undirected.push(json!([labels[u], labels[v]]));
                    }
                }
            }
            json!({
                "component": component,
                "immorality_count": c.immoralities.len(),
                "immoralities": immoralities,
                "size": c.size,
                "chain_components": c.essential.chain_components().len(),
                "directed": directed,
                "undirected": undirected,
            })
        })
        .collect()
}

fn edge_list(v: &Value) -> String {
    let pairs: Vec<String> = v
        .as_array()
        .into_iter()
        .flatten()
        .map(|p| format!("{}-{}", p[0], p[1]))
        .collect();
    if pairs.is_empty() {
        "none".into()
    } else {
        pairs.join(",")
    }
}

fn cmd_enumerate(file: &PathBuf, as_json: bool, cap: usize, out: &mut String) -> Result<bool> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let g: UndirectedGraph = text.parse().with_context(|| format!("parsing {}", file.display()))?;
    let en = Enumerator::with_cap(cap);
    let components = g.components();
    if components.len() > 1 {
        eprintln!(
            "warning: skeleton has {} connected components; classes are products of per-component classes",
            components.len()
        );
    }
    let mut polynomial = Polynomial::one();
    let mut spectrum = SizeSpectrum::new();
    spectrum.add(1, 1u32);
    let mut orientations: u128 = 1;
    let mut classes = Vec::new();
    for (idx, comp) in components.iter().enumerate() {
        let sub = g.induced_subgraph(comp);
        let set = en.enumerate(&sub).with_context(|| format!("component {idx}"))?;
        polynomial = &polynomial * &set.polynomial();
        spectrum = spectrum.product(&set.size_spectrum());
        orientations *= set.orientation_count() as u128;
        classes.extend(class_entries(&set, comp, idx));
    }
    let count = polynomial.eval_at_one();
    let degree = polynomial.degree().unwrap_or(0);
    if as_json {
        let doc = json!({
            "nodes": g.n(),
            "edges": g.edge_count(),
            "components": components,
            "orientations": orientations.to_string(),
            "mec_count": count.to_string(),
            "immorality_number": degree,
            "polynomial": polynomial.to_string(),
            "coefficients": coeffs_json(&polynomial),
            "spectrum": spectrum_json(&spectrum),
            "classes": classes,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(true);
    }
    writeln!(out, "nodes={}", g.n())?;
    writeln!(out, "edges={}", g.edge_count())?;
    writeln!(out, "components={}", components.len())?;
    writeln!(out, "orientations={orientations}")?;
    writeln!(out, "mec_count={count}")?;
    writeln!(out, "immorality_number={degree}")?;
    writeln!(out, "polynomial={polynomial}")?;
    writeln!(out, "spectrum={spectrum}")?;
    for (i, c) in classes.iter().enumerate() {
        let imm: Vec<&str> = c["immoralities"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        writeln!(
            out,
            "class={i} component={} immorality_count={} size={} chain_components={} immoralities={} directed={} undirected={}",
            c["component"],
            c["immorality_count"],
            c["size"],
            c["chain_components"],
            if imm.is_empty() { "none".to_string() } else { imm.join(",") },
            edge_list(&c["directed"]),
            edge_list(&c["undirected"]),
        )?;
    }
    Ok(true)
}

fn cmd_family(raw: &str, oracle: bool, cap: usize, out: &mut String) -> Result<bool> {
    let spec: FamilySpec = raw.parse()?;
    writeln!(out, "spec={spec}")?;
    if let Some(n) = spec.node_count() {
        writeln!(out, "nodes={n}")?;
    }
    if let Some(poly) = spec.formula_polynomial()? {
        writeln!(out, "polynomial={poly}")?;
    }
    if let Some(count) = spec.formula_count()? {
        writeln!(out, "mec_count={count}")?;
    }
    if let Some(m) = spec.formula_immorality_number()? {
        writeln!(out, "immorality_number={m}")?;
    }
    if let Some(s) = spec.formula_spectrum()? {
        writeln!(out, "spectrum={s}")?;
    }
    if let FamilySpec::BinaryTree(k) | FamilySpec::AdditiveTree(k) = spec {
        let c = binary_tree_counts(k)?;
        let r = binary_tree_ratio_check(k)?;
        writeln!(out, "binary_tree_count={}", c.t)?;
        writeln!(out, "additive_tree_count={}", c.a)?;
        writeln!(out, "ratio={}", r.ratio)?;
        writeln!(out, "ratio_decimal={:.12}", ratio_to_f64(&r.ratio))?;
        writeln!(out, "ratio_within_bounds={}", r.within_bounds)?;
        if let Some(z) = r.z_below_t {
            writeln!(out, "z_below_t={z}")?;
        }
    }
    if !oracle {
        return Ok(true);
    }
    let g = spec.build()?;
    let en = Enumerator::with_cap(cap);
    let set = en.enumerate(&g).context("oracle refused")?;
    writeln!(out, "oracle_polynomial={}", set.polynomial())?;
    writeln!(out, "oracle_mec_count={}", set.class_count())?;
    writeln!(out, "oracle_immorality_number={}", set.immorality_number())?;
    writeln!(out, "oracle_spectrum={}", set.size_spectrum())?;
    let check = check_family(&spec, &en);
    writeln!(out, "{check}")?;
    Ok(check.passed)
}

fn cmd_verify(bounds: bool, lucas: bool, p: Option<usize>, out: &mut String) -> bool {
    let mut outcomes: Vec<CheckOutcome> = Vec::new();
    if !bounds && !lucas {
        outcomes.extend(family_checks(&FamilyScope::up_to(p.unwrap_or(10))));
        outcomes.extend(identity_checks());
        outcomes.extend(binary_tree_checks(12));
    }
    if bounds {
        outcomes.extend(bounds_checks(p.unwrap_or(9)));
    }
    if lucas {
        outcomes.extend(lucas_triangle_checks(p.unwrap_or(24)));
    }
    for o in &outcomes {
        let _ = writeln!(out, "{o}");
    }
    let failed: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let _ = writeln!(out, "checks={} passed={} failed={}", outcomes.len(), outcomes.len() - failed.len(), failed.len());
    for f in &failed {
        eprintln!("failed: {}", f.name);
    }
    all_passed(&outcomes)
}

fn cmd_survey(p: usize, triangle_free: bool, output: Option<PathBuf>, out: &mut String) -> Result<bool> {
    let rows = survey(p, triangle_free)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SurveyRecord::CSV_HEADER)?;
    for r in &rows {
        w.write_record(r.csv_fields())?;
    }
    let bytes = w.into_inner().context("flushing CSV")?;
    match output {
        Some(path) => {
            fs::write(&path, &bytes).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "rows={}", rows.len())?;
            writeln!(out, "output={}", path.display())?;
        }
        None => out.push_str(std::str::from_utf8(&bytes)?),
    }
    Ok(true)
}

fn cmd_invariant_check(p: usize, triangle_free: bool, out: &mut String) -> Result<bool> {
    let report = invariant_check(p, triangle_free)?;
    writeln!(out, "p={}", report.p)?;
    writeln!(out, "triangle_free={}", report.triangle_free)?;
    writeln!(out, "graphs={}", report.graphs)?;
    writeln!(out, "distinct_polynomials={}", report.distinct_polynomials)?;
    writeln!(out, "collisions={}", report.collisions.len())?;
    for (poly, ids) in &report.collisions {
        writeln!(out, "collision polynomial={poly} graphs={}", ids.join(","))?;
    }
    // Triangle-free graphs are expected to be separated; general graphs are not.
    Ok(!triangle_free || report.collisions.is_empty())
}
