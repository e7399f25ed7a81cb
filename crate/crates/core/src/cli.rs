//! Command-line front end. `run` parses arguments, executes one subcommand and
//! returns the exit code with the rendered report, so the binary stays a thin
//! wrapper and reports can be tested directly.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::acceptance::run_all;
use crate::action::{action_on_cohomology, full_action, verify_johnson_triviality};
use crate::complex::build_complex;
use crate::error::{Error, Result};
use crate::free_group::{johnson_depth, parse_mapping_class, MappingClass};
use crate::linalg::{homology_ranks, reindex_poincare_lefschetz, GroupRanks, SparseIntMatrix};
use crate::model::{enumerate_cells, expected_cell_count, pure_arc_cells, SurfaceParams};
use crate::perm::rising_factorial;
use crate::simplicial::{mor_action, relative_homology_oracle, Guardrail, MorAction, OneComplexModel, SubspaceMode};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "surfconf", version, about = "Configuration spaces of surfaces with one boundary component")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Surface {
    /// Genus of the surface.
    #[arg(short = 'g', long = "genus")]
    g: usize,
    /// Number of points.
    #[arg(short = 'n', long = "points")]
    n: usize,
}

#[derive(Args, Debug, Clone)]
struct Limits {
    /// Largest number of points allowed on the wedge model.
    #[arg(long, default_value_t = 3)]
    max_wedge_points: usize,
    /// Largest number of points allowed on the surface model.
    #[arg(long, default_value_t = 2)]
    max_surface_points: usize,
    /// Disable the size guardrail entirely.
    #[arg(long)]
    no_guardrail: bool,
}

impl Limits {
    fn guardrail(&self) -> Guardrail {
        if self.no_guardrail {
            Guardrail::unlimited()
        } else {
            Guardrail { wedge_max_points: self.max_wedge_points, surface_max_points: self.max_surface_points }
        }
    }

    fn echo(&self) -> Value {
        json!({
            "max_wedge_points": self.max_wedge_points,
            "max_surface_points": self.max_surface_points,
            "disabled": self.no_guardrail,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Surface,
    Wedge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Pull back through the subdivided wedge and push forward.
    Simplicial,
    /// Count preimages of a generic configuration.
    Combinatorial,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate cells of the complex.
    Cells {
        #[command(flatten)]
        s: Surface,
        /// List every cell, not just the counts.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Integral cohomology of the configuration space from the cell complex.
    Homology {
        #[command(flatten)]
        s: Surface,
        /// Also dump bases and differential triplets.
        #[arg(long)]
        export: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Relative homology of a simplicial product pair.
    Oracle {
        #[command(flatten)]
        s: Surface,
        #[arg(long, value_enum, default_value = "surface")]
        model: Model,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        common: Common,
    },
    /// Rank of the Moriyama module.
    MorRank {
        #[command(flatten)]
        s: Surface,
        #[command(flatten)]
        common: Common,
    },
    /// Matrix of a mapping class on the Moriyama module.
    MorAction {
        #[command(flatten)]
        s: Surface,
        #[arg(long = "class")]
        class: String,
        #[arg(long, value_enum, default_value = "simplicial")]
        method: Method,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        common: Common,
    },
    /// Johnson filtration depth of a mapping class.
    JohnsonDepth {
        #[arg(short = 'g', long = "genus")]
        g: usize,
        #[arg(long = "class")]
        class: String,
        /// Degree bound for the Magnus expansion.
        #[arg(short = 'D', long = "degree-bound", default_value_t = 4)]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Action of a mapping class on every cohomology group.
    Act {
        #[command(flatten)]
        s: Surface,
        #[arg(long = "class")]
        class: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check that a class of depth at least i acts trivially on H^j for j <= i.
    Verify {
        #[command(flatten)]
        s: Surface,
        #[arg(long = "class")]
        class: String,
        #[arg(short = 'i', long = "degree")]
        i: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Report the degrees in which each given class is observed to act trivially.
    ConjectureProbe {
        #[command(flatten)]
        s: Surface,
        /// Repeat for several classes.
        #[arg(long = "class", required = true)]
        classes: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

/// A rendered report in all three formats' source data.
struct Report {
    json: Value,
    /// Rows for CSV output, header first.
    csv: Vec<Vec<String>>,
    text: String,
    ok: bool,
}

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn matrix_json(m: &SparseIntMatrix) -> Value {
    let mut rows = vec![vec![json!(0); m.cols()]; m.rows()];
    for (r, c, v) in m.iter() {
        rows[r][c] = big(v);
    }
    json!(rows)
}

fn matrix_text(m: &SparseIntMatrix) -> String {
    let dense = m.to_dense_big();
    dense.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn header(command: &str, input: &[String]) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(VERSION));
    m.insert("command".into(), json!(command));
    m.insert("input".into(), json!(input.join(" ")));
    m
}

fn class(input: &str, g: usize) -> Result<MappingClass> {
    parse_mapping_class(input, g)
}

fn betti_report(mut head: Map<String, Value>, g: usize, n: usize, table: &BTreeMap<usize, GroupRanks>, label: &str) -> Report {
    let betti: Map<String, Value> = table.iter().map(|(i, r)| (i.to_string(), json!(r.betti))).collect();
    let torsion: Map<String, Value> =
        table.iter().map(|(i, r)| (i.to_string(), json!(r.torsion.iter().map(big).collect::<Vec<_>>()))).collect();
    head.insert("g".into(), json!(g));
    head.insert("n".into(), json!(n));
    head.insert("betti".into(), Value::Object(betti));
    head.insert("torsion".into(), Value::Object(torsion));
    let mut csv = vec![vec!["degree".to_string(), "betti".to_string(), "torsion".to_string()]];
    let mut text = format!("g={g} n={n}\n");
    for (i, r) in table {
        let t: Vec<String> = r.torsion.iter().map(ToString::to_string).collect();
        csv.push(vec![i.to_string(), r.betti.to_string(), t.join(" ")]);
        let tors = if t.is_empty() { String::new() } else { format!(" + torsion Z/{}", t.join(" + Z/")) };
        text.push_str(&format!("{label}{i}: Z^{}{tors}\n", r.betti));
    }
    Report { json: Value::Object(head), csv, text, ok: true }
}

fn mor_report(mut head: Map<String, Value>, mc: &MappingClass, n: usize, m: &MorAction, method: &str) -> Report {
    head.insert("phi".into(), json!(mc.input));
    head.insert("normal_form".into(), json!(mc.normal_form));
    head.insert("g".into(), json!(mc.endo.genus()));
    head.insert("n".into(), json!(n));
    head.insert("method".into(), json!(method));
    head.insert("identity".into(), json!(m.is_identity()));
    head.insert("basis".into(), json!(m.basis.iter().map(ToString::to_string).collect::<Vec<_>>()));
    head.insert("matrix".into(), matrix_json(&m.matrix));
    let dense = m.matrix.to_dense_big();
    let csv = dense.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let text = format!(
        "{} on {} pure-arc cells (identity: {})\n{}\n",
        mc.normal_form,
        m.basis.len(),
        m.is_identity(),
        matrix_text(&m.matrix)
    );
    Report { json: Value::Object(head), csv, text, ok: true }
}

fn key_value_report(head: Map<String, Value>, text: String) -> Report {
    let mut csv = vec![vec!["key".to_string(), "value".to_string()]];
    for (k, v) in &head {
        let s = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        csv.push(vec![k.clone(), s]);
    }
    Report { json: Value::Object(head), csv, text, ok: true }
}

fn execute(cmd: &Command, input: &[String]) -> Result<Report> {
    match cmd {
        Command::Cells { s, list, .. } => {
            let params = SurfaceParams::new(s.g);
            let basis = enumerate_cells(params, s.n);
            let mut head = header("cells", input);
            head.insert("g".into(), json!(s.g));
            head.insert("n".into(), json!(s.n));
            head.insert("total".into(), json!(basis.len()));
            head.insert("expected_total".into(), json!(expected_cell_count(params, s.n).to_string()));
            let by_degree: Map<String, Value> = (0..=2 * s.n)
                .filter(|&d| basis.count_in_degree(d) > 0)
                .map(|d| (d.to_string(), json!(basis.count_in_degree(d))))
                .collect();
            head.insert("by_degree".into(), Value::Object(by_degree));
            let mut csv = vec![vec!["degree".to_string(), "cell".to_string()]];
            let mut text = format!("{} cells\n", basis.len());
            if *list {
                head.insert("cells".into(), json!(basis.cells().iter().map(ToString::to_string).collect::<Vec<_>>()));
                for c in basis.cells() {
                    csv.push(vec![c.degree().to_string(), c.to_string()]);
                    text.push_str(&format!("{} {}\n", c.degree(), c));
                }
            } else {
                csv[0][1] = "count".into();
                for d in 0..=2 * s.n {
                    let k = basis.count_in_degree(d);
                    if k > 0 {
                        csv.push(vec![d.to_string(), k.to_string()]);
                        text.push_str(&format!("degree {d}: {k}\n"));
                    }
                }
            }
            Ok(Report { json: Value::Object(head), csv, text, ok: true })
        }
        Command::Homology { s, export, .. } => {
            let c = build_complex(SurfaceParams::new(s.g), s.n)?;
            let ranks = homology_ranks(c.chain());
            let table = reindex_poincare_lefschetz(&ranks, s.n);
            let mut head = header("homology", input);
            if *export {
                head.insert("complex".into(), c.export_json());
            }
            Ok(betti_report(head, s.g, s.n, &table, "H^"))
        }
        Command::Oracle { s, model, limits, .. } => {
            let guard = limits.guardrail();
            let (m, mode) = match model {
                Model::Surface => (OneComplexModel::surface(s.g), SubspaceMode::DiagonalAndBoundary),
                Model::Wedge => (OneComplexModel::wedge(s.g), SubspaceMode::DiagonalAndBasepoint),
            };
            let ranks = relative_homology_oracle(&m, s.n, mode, &guard)?;
            let mut head = header("oracle", input);
            head.insert("guardrail".into(), limits.echo());
            match model {
                Model::Surface => {
                    head.insert("model".into(), json!("surface"));
                    head.insert("indexing".into(), json!("cohomological"));
                    let table = reindex_poincare_lefschetz(&ranks, s.n);
                    Ok(betti_report(head, s.g, s.n, &table, "H^"))
                }
                Model::Wedge => {
                    head.insert("model".into(), json!("wedge"));
                    head.insert("indexing".into(), json!("homological"));
                    let table: BTreeMap<usize, GroupRanks> = ranks.into_iter().enumerate().collect();
                    Ok(betti_report(head, s.g, s.n, &table, "H_"))
                }
            }
        }
        Command::MorRank { s, .. } => {
            let rank = rising_factorial(2 * s.g as u128, s.n as u32);
            let cells = pure_arc_cells(SurfaceParams::new(s.g), s.n).len();
            let mut head = header("mor-rank", input);
            head.insert("g".into(), json!(s.g));
            head.insert("n".into(), json!(s.n));
            head.insert("rank".into(), u64::try_from(rank).map(Value::from).unwrap_or_else(|_| json!(rank.to_string())));
            head.insert("pure_arc_cells".into(), json!(cells));
            Ok(key_value_report(head, format!("{rank}\n")))
        }
        Command::MorAction { s, class: text, method, limits, .. } => {
            let mc = class(text, s.g)?;
            let (m, name) = match method {
                Method::Simplicial => (mor_action(&mc.endo, s.n, &limits.guardrail())?, "simplicial"),
                Method::Combinatorial => (crate::action::combinatorial_mor_action(&mc.endo, s.n), "combinatorial"),
            };
            let mut head = header("mor-action", input);
            head.insert("guardrail".into(), limits.echo());
            Ok(mor_report(head, &mc, s.n, &m, name))
        }
        Command::JohnsonDepth { g, class: text, d, .. } => {
            let mc = class(text, *g)?;
            let depth = johnson_depth(&mc.endo, *d);
            let mut head = header("johnson-depth", input);
            head.insert("phi".into(), json!(mc.input));
            head.insert("normal_form".into(), json!(mc.normal_form));
            head.insert("g".into(), json!(g));
            head.insert("bound".into(), json!(d));
            head.insert("depth".into(), json!(depth));
            head.insert("at_bound".into(), json!(depth == *d));
            Ok(key_value_report(head, format!("{depth}\n")))
        }
        Command::Act { s, class: text, .. } => {
            let mc = class(text, s.g)?;
            let c = build_complex(SurfaceParams::new(s.g), s.n)?;
            let map = full_action(&mc.endo, &c)?;
            let actions = crate::action::action_from_chain_map(&map, &c)?;
            let mut head = header("act", input);
            head.insert("phi".into(), json!(mc.input));
            head.insert("normal_form".into(), json!(mc.normal_form));
            head.insert("g".into(), json!(s.g));
            head.insert("n".into(), json!(s.n));
            let chain: Map<String, Value> = (0..map.matrices.len())
                .filter(|&d| map.matrices[d].rows() > 0)
                .map(|d| (d.to_string(), json!({"identity": map.is_identity_in_degree(d)})))
                .collect();
            head.insert("chain_map".into(), Value::Object(chain));
            let mut h = Map::new();
            let mut csv = vec![vec!["degree".to_string(), "betti".to_string(), "identity".to_string()]];
            let mut text = format!("{} (g={} n={})\n", mc.normal_form, s.g, s.n);
            for (i, a) in &actions {
                let mut entry = Map::new();
                entry.insert("betti".into(), json!(a.betti));
                entry.insert("torsion".into(), json!(a.torsion.iter().map(big).collect::<Vec<_>>()));
                entry.insert("identity".into(), json!(a.is_identity()));
                if let Some(m) = &a.map {
                    entry.insert("matrix".into(), matrix_json(&m.free));
                    if !a.torsion.is_empty() {
                        entry.insert("torsion_matrix".into(), matrix_json(&m.torsion));
                        entry.insert("free_to_torsion".into(), matrix_json(&m.free_to_torsion));
                    }
                    if a.betti > 0 {
                        text.push_str(&format!("H^{i} (rank {}, identity {}):\n{}\n", a.betti, a.is_identity(), matrix_text(&m.free)));
                    }
                }
                csv.push(vec![i.to_string(), a.betti.to_string(), a.is_identity().to_string()]);
                h.insert(i.to_string(), Value::Object(entry));
            }
            head.insert("H".into(), Value::Object(h));
            Ok(Report { json: Value::Object(head), csv, text, ok: true })
        }
        Command::Verify { s, class: text, i, .. } => {
            let mc = class(text, s.g)?;
            let c = build_complex(SurfaceParams::new(s.g), s.n)?;
            let report = verify_johnson_triviality(&mc.endo, &c, *i)?;
            let mut head = header("verify", input);
            head.insert("phi".into(), json!(mc.input));
            head.insert("normal_form".into(), json!(mc.normal_form));
            head.insert("depth".into(), json!(report.depth));
            head.insert("n".into(), json!(s.n));
            head.insert("g".into(), json!(s.g));
            head.insert("i".into(), json!(i));
            let h: Map<String, Value> =
                report.identity.iter().map(|(j, id)| (j.to_string(), json!({"identity": id}))).collect();
            head.insert("H".into(), Value::Object(h));
            head.insert("applies".into(), json!(report.depth >= *i));
            head.insert("holds".into(), json!(report.holds()));
            head.insert("violations".into(), json!(report.violations));
            head.insert("first_nontrivial".into(), json!(report.first_nontrivial()));
            let mut csv = vec![vec!["degree".to_string(), "identity".to_string()]];
            let mut text = format!("{}: depth {}, i = {i}\n", mc.normal_form, report.depth);
            for (j, id) in &report.identity {
                csv.push(vec![j.to_string(), id.to_string()]);
                text.push_str(&format!("H^{j}: {}\n", if *id { "identity" } else { "nontrivial" }));
            }
            if !report.holds() {
                text.push_str(&format!("violations: {:?}\n", report.violations));
            }
            Ok(Report { json: Value::Object(head), csv, text, ok: report.holds() })
        }
        Command::ConjectureProbe { s, classes, .. } => {
            let c = build_complex(SurfaceParams::new(s.g), s.n)?;
            let mut head = header("conjecture-probe", input);
            head.insert("g".into(), json!(s.g));
            head.insert("n".into(), json!(s.n));
            let mut rows = Vec::new();
            let mut csv = vec![vec!["phi".to_string(), "depth".to_string(), "trivial_degrees".to_string()]];
            let mut text = String::new();
            for input_class in classes {
                let mc = class(input_class, s.g)?;
                let actions = action_on_cohomology(&mc.endo, &c)?;
                let depth = johnson_depth(&mc.endo, s.n + 1);
                let trivial: Vec<usize> = actions.iter().filter(|(_, a)| a.is_identity()).map(|(&j, _)| j).collect();
                let trivial_through = (0..=2 * s.n).take_while(|j| trivial.contains(j)).last();
                rows.push(json!({
                    "phi": mc.input,
                    "normal_form": mc.normal_form,
                    "depth": depth,
                    "trivial_degrees": trivial,
                    "trivial_through": trivial_through,
                }));
                let list: Vec<String> = trivial.iter().map(ToString::to_string).collect();
                csv.push(vec![mc.input.clone(), depth.to_string(), list.join(" ")]);
                text.push_str(&format!("{}: depth {depth}, trivial on H^{{{}}}\n", mc.normal_form, list.join(",")));
            }
            head.insert("classes".into(), json!(rows));
            head.insert("note".into(), json!("observed triviality only; no kernel membership is decided"));
            Ok(Report { json: Value::Object(head), csv, text, ok: true })
        }
        Command::Selftest { .. } => {
            let results = run_all();
            let ok = results.iter().all(|r| r.passed);
            let mut head = header("selftest", input);
            head.insert(
                "criteria".into(),
                json!(results
                    .iter()
                    .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                    .collect::<Vec<_>>()),
            );
            head.insert("passed".into(), json!(ok));
            let mut csv = vec![vec!["id".to_string(), "passed".to_string(), "name".to_string()]];
            let mut text = String::new();
            for r in &results {
                csv.push(vec![r.id.to_string(), r.passed.to_string(), r.name.to_string()]);
                text.push_str(&format!("{r}\n"));
            }
            Ok(Report { json: Value::Object(head), csv, text, ok })
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Cells { common, .. }
        | Command::Homology { common, .. }
        | Command::Oracle { common, .. }
        | Command::MorRank { common, .. }
        | Command::MorAction { common, .. }
        | Command::JohnsonDepth { common, .. }
        | Command::Act { common, .. }
        | Command::Verify { common, .. }
        | Command::ConjectureProbe { common, .. }
        | Command::Selftest { common } => common,
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let quote = |f: &String| {
                if f.contains([',', '"', '\n']) {
                    format!("\"{}\"", f.replace('"', "\"\""))
                } else {
                    f.clone()
                }
            };
            report.csv.iter().map(|r| r.iter().map(quote).collect::<Vec<_>>().join(",") + "\n").collect()
        }
        Format::Text => report.text.clone(),
    }
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a library error: 3 for failed self-checks, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        3
    } else {
        2
    }
}

/// Parses `args` (program name first), runs the subcommand and renders the
/// report. A report written with `--output` leaves `stdout` empty.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let input: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let opts = common(&cli.command).clone();
    match execute(&cli.command, &input) {
        Ok(report) => {
            let body = render(&report, opts.format);
            let code = if report.ok { 0 } else { 1 };
            match &opts.output {
                Some(path) => match std::fs::write(path, &body) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
                },
                None => Outcome { code, stdout: body, stderr: String::new() },
            }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(args: &[&str]) -> Value {
        let out = run(std::iter::once("surfconf").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn mor_rank_example() {
        assert_eq!(json_of(&["mor-rank", "-g", "2", "-n", "3"])["rank"], json!(120));
    }

    #[test]
    fn johnson_depth_example() {
        assert_eq!(json_of(&["johnson-depth", "-g", "1", "--class", "Td", "-D", "4"])["depth"], json!(2));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["surfconf", "frobnicate"]).code, 2);
        assert_eq!(run(["surfconf", "act", "-g", "1", "-n", "1", "--class", "Tq1"]).code, 2);
        assert_eq!(run(["surfconf", "oracle", "-g", "0", "-n", "3"]).code, 2);
    }

    #[test]
    fn reports_echo_input() {
        let v = json_of(&["cells", "-g", "1", "-n", "2"]);
        assert_eq!(v["input"], json!("cells -g 1 -n 2"));
        assert_eq!(v["version"], json!(VERSION));
        assert_eq!(v["total"], json!(14));
    }
}
