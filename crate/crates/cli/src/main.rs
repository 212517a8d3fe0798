//! `conjlab`: normal forms, conjugators, domains and projection-complex
//! experiments from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 input error, 3 budget exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conjlab::cayley::shortest_conjugator_bruteforce;
use conjlab::conjugator::{fit_linear_bound, ClfConfig};
use conjlab::hhs::Coset;
use conjlab::projection::{
    bottleneck_check, f_measure, f_measure_truncated, f_table_csv, quasi_geodesic_report, scan_k,
    theorem_c_pipeline, thin_triangle_check, AxisFamily, FreeGroup, PathTable, PipelineConfig,
    ProjectionComplex, Universe,
};
use conjlab::{Budget, DefiningGraph, Error, NormalForm, Raag};

#[derive(Parser)]
#[command(name = "conjlab", version, about = "Conjugators and projection complexes in right-angled Artin groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Defining graph JSON. Defaults to the free group on the generator
    /// names used in the words (sorted).
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Cap on enumerated elements for exhaustive searches.
    #[arg(long = "budget-elems", global = true, env = "CONJLAB_BUDGET")]
    budget_elems: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

/// Free group and axis for the projection complex commands.
#[derive(Args, Clone)]
struct AxisArgs {
    /// Rank of the free group when no graph is given.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Element whose elementary closure gives the cosets.
    #[arg(long, default_value = "a")]
    h: String,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf { word: String },
    /// Product of two words.
    Mul { u: String, v: String },
    /// Inverse of a word.
    Inv { u: String },
    /// Decide conjugacy and certify a conjugator against `K(|a|+|b|)+C`.
    Conj {
        a: String,
        b: String,
        #[arg(long = "K", default_value_t = 2.0)]
        k: f64,
        #[arg(long = "C", default_value_t = 0.0)]
        c: f64,
    },
    /// Shortest conjugator, cross-checked by brute force up to `--radius`.
    MinConj {
        a: String,
        b: String,
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
    /// Shorten a conjugator by centralizer descent.
    Shorten { a: String, b: String, g: String },
    /// Domains with unbounded orbits of `<g>`.
    Big { g: String },
    /// Nearest point of the coset `rep A_delta`.
    Gate {
        x: String,
        /// Comma separated vertex names.
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "")]
        rep: String,
    },
    /// Domains on which `x` and `y` are at least `K` apart.
    Domains {
        x: String,
        y: String,
        #[arg(long = "K", default_value_t = 1)]
        k: usize,
        /// Slack radius around the trace prefixes.
        #[arg(long, default_value_t = 1)]
        radius: usize,
    },
    /// Conjugator length experiment.
    ClfScan {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long = "max-core-len", default_value_t = 6)]
        max_core_len: usize,
        #[arg(long = "max-twist-len", default_value_t = 6)]
        max_twist_len: usize,
    },
    /// Build `P_K` on a truncated universe and summarize it.
    PcBuild {
        #[command(flatten)]
        axis: AxisArgs,
        #[arg(long = "universe-bound", default_value_t = 4)]
        universe_bound: usize,
        #[arg(long = "K", default_value_t = 1)]
        k: usize,
    },
    /// Thin triangle, bottleneck and quasi-geodesic checks. Without `--K`
    /// the least passing `K` is found by scanning.
    PcCheck {
        #[command(flatten)]
        axis: AxisArgs,
        #[arg(long = "universe-bound", default_value_t = 4)]
        universe_bound: usize,
        #[arg(long = "K")]
        k: Option<usize>,
        /// Random detours per pair in the bottleneck check.
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// Measured `f(M)` table.
    PcF {
        #[command(flatten)]
        axis: AxisArgs,
        #[arg(long = "K", default_value_t = 1)]
        k: usize,
        #[arg(long = "m-max", default_value_t = 12)]
        m_max: usize,
        #[arg(long, default_value_t = 0)]
        eps: usize,
        /// Random cosets per `M` (exact route, `eps = 0`).
        #[arg(long, default_value_t = 40)]
        samples: usize,
        /// Universe for `eps >= 1`.
        #[arg(long = "universe-bound", default_value_t = 4)]
        universe_bound: usize,
        /// Group ball searched for `eps >= 1`.
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Least `d_T(Y_0, y)` for `y` to count.
        #[arg(long = "required-distance", default_value_t = 1)]
        required_distance: usize,
    },
    /// Short conjugator construction through the projection complex.
    Thmc {
        a: String,
        b: String,
        g: String,
        #[command(flatten)]
        axis: AxisArgs,
        #[arg(long = "K", default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

enum Failure {
    Check(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// What a command produced, and whether its checks held.
struct Output {
    body: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(Failure::Io(msg)) = emit(&cli.common, &out.body) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(common: &Common, body: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn budget(common: &Common) -> Budget {
    common.budget_elems.filter(|&n| n > 0).map(Budget::new).unwrap_or_default()
}

/// Generator names used by the words, for the default free group.
fn names_in(words: &[&str]) -> Vec<String> {
    let mut names: Vec<String> = words
        .iter()
        .flat_map(|w| w.split_whitespace())
        .filter(|t| *t != "1")
        .map(|t| {
            let base = t.split_once('^').map_or(t, |(b, _)| b);
            let trimmed = base.trim_end_matches(|c: char| c.is_ascii_digit());
            if trimmed.is_empty() { base } else { trimmed }.to_string()
        })
        .filter(|n| !n.is_empty() && n.chars().all(|c| c.is_alphanumeric() || c == '_'))
        .collect();
    names.sort();
    names.dedup();
    names
}

fn load_graph(common: &Common, words: &[&str]) -> Result<DefiningGraph, Failure> {
    match &common.graph {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(DefiningGraph::from_json(&text)?)
        }
        None => {
            let mut names = names_in(words);
            if names.is_empty() {
                names = vec!["a".into(), "b".into()];
            }
            Ok(DefiningGraph::free(&names)?)
        }
    }
}

fn load_free_group(common: &Common, axis: &AxisArgs) -> Result<FreeGroup, Failure> {
    match &common.graph {
        Some(_) => {
            let g = load_graph(common, &[])?;
            if !g.edges().is_empty() {
                return Err(Error::input("projection complexes need an edgeless graph (a free group)").into());
            }
            Ok(FreeGroup::with_names(g.names())?)
        }
        None => Ok(FreeGroup::new(axis.rank)?),
    }
}

fn axis_family(common: &Common, axis: &AxisArgs) -> Result<AxisFamily, Failure> {
    let group = load_free_group(common, axis)?;
    let h = group.word(&axis.h)?;
    if h.is_identity() {
        return Err(Error::input("h must be nontrivial").into());
    }
    Ok(AxisFamily::new(group, &h)?)
}

fn graph_json(g: &DefiningGraph) -> Value {
    serde_json::to_value(g.to_file()).expect("graph serializes")
}

fn config(cli: &Cli, command: &str, graph: Value, params: Value) -> Value {
    json!({
        "command": command,
        "graph": graph,
        "seed": cli.common.seed,
        "budget_elems": budget(&cli.common).max_elements,
        "params": params,
    })
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn word_output(cli: &Cli, g: &Raag, command: &str, inputs: Value, w: &NormalForm) -> Output {
    let body = match cli.common.format.unwrap_or(Format::Text) {
        Format::Json => json_body(&json!({
            "config": config(cli, command, graph_json(g.graph()), inputs),
            "result": g.format(w),
            "length": w.len(),
        })),
        _ => format!("{}\n", text(g, w)),
    };
    Output { body, ok: true }
}

/// Text form of an element, with `1` for the identity.
fn text(g: &Raag, w: &NormalForm) -> String {
    if w.is_identity() { "1".into() } else { g.format(w) }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let common = &cli.common;
    let b = budget(common);
    match &cli.command {
        Command::Nf { word } => {
            let g = Raag::new(load_graph(common, &[word])?);
            let w = g.word(word)?;
            Ok(word_output(cli, &g, "nf", json!({ "word": word }), &w))
        }
        Command::Mul { u, v } => {
            let g = Raag::new(load_graph(common, &[u, v])?);
            let w = g.multiply(&g.word(u)?, &g.word(v)?);
            Ok(word_output(cli, &g, "mul", json!({ "u": u, "v": v }), &w))
        }
        Command::Inv { u } => {
            let g = Raag::new(load_graph(common, &[u])?);
            let w = g.invert(&g.word(u)?);
            Ok(word_output(cli, &g, "inv", json!({ "u": u }), &w))
        }
        Command::Conj { a, b: bw, k, c } => {
            let g = Raag::new(load_graph(common, &[a, bw])?);
            let (x, y) = (g.word(a)?, g.word(bw)?);
            let cfg = config(cli, "conj", graph_json(g.graph()), json!({ "a": a, "b": bw, "K": k, "C": c }));
            let out = match g.find_conjugator(&x, &y, *k, *c, &b)? {
                None => Output { body: json_body(&json!({ "config": cfg, "conjugate": false })), ok: true },
                Some(cert) => Output {
                    body: json_body(&json!({
                        "config": cfg,
                        "conjugate": true,
                        "conjugator": g.format(&cert.conjugator),
                        "length": cert.conjugator.len(),
                        "valid": cert.valid,
                        "bound": cert.bound(),
                        "within_bound": cert.within_bound,
                        "source": cert.source,
                    })),
                    ok: cert.valid && cert.within_bound,
                },
            };
            Ok(out)
        }
        Command::MinConj { a, b: bw, radius } => {
            let g = Raag::new(load_graph(common, &[a, bw])?);
            let (x, y) = (g.word(a)?, g.word(bw)?);
            let cfg = config(cli, "min-conj", graph_json(g.graph()), json!({ "a": a, "b": bw, "radius": radius }));
            let min = g.minimal_conjugator(&x, &y, &b)?;
            let brute = shortest_conjugator_bruteforce(&g, &x, &y, *radius, &b)?;
            // brute force is only conclusive about conjugators within the radius
            let agree = match (&min, &brute) {
                (Some(m), Some(s)) => m.len() == s.len(),
                (Some(m), None) => m.len() > *radius,
                (None, s) => s.is_none(),
            };
            Ok(Output {
                body: json_body(&json!({
                    "config": cfg,
                    "conjugate": min.is_some(),
                    "conjugator": min.as_ref().map(|m| g.format(m)),
                    "length": min.as_ref().map(|m| m.len()),
                    "brute_force_length": brute.as_ref().map(|s| s.len()),
                    "agree": agree,
                })),
                ok: agree,
            })
        }
        Command::Shorten { a, b: bw, g: gw } => {
            let g = Raag::new(load_graph(common, &[a, bw, gw])?);
            let (x, y, h) = (g.word(a)?, g.word(bw)?, g.word(gw)?);
            let s = g.shorten_conjugator(&x, &y, &h, &b)?;
            let body = match common.format.unwrap_or(Format::Text) {
                Format::Json => json_body(&json!({
                    "config": config(cli, "shorten", graph_json(g.graph()), json!({ "a": a, "b": bw, "g": gw })),
                    "input_length": h.len(),
                    "result": g.format(&s),
                    "length": s.len(),
                })),
                _ => format!("{}\n", text(&g, &s)),
            };
            Ok(Output { body, ok: true })
        }
        Command::Big { g: gw } => {
            let g = Raag::new(load_graph(common, &[gw])?);
            let x = g.word(gw)?;
            let big = g.big(&x);
            let tl = g.translation_length(&x);
            let domains: Vec<Value> =
                big.domains.iter().map(|d| serde_json::to_value(g.domain_to_json(d)).expect("domain serializes")).collect();
            Ok(Output {
                body: json_body(&json!({
                    "config": config(cli, "big", graph_json(g.graph()), json!({ "g": gw })),
                    "domains": domains,
                    "factors": big.factors.iter().map(|f| g.format(f)).collect::<Vec<_>>(),
                    "prefix": g.format(&big.prefix),
                    "maximal": big.maximal,
                    "translation_length": tl.total,
                    "per_factor": tl.per_factor,
                    "metric": "F-metric proxy",
                })),
                ok: true,
            })
        }
        Command::Gate { x, delta, rep } => {
            let g = Raag::new(load_graph(common, &[x, rep, &delta.replace(',', " ")])?);
            let names: Vec<&str> = delta.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let coset = Coset::new(g.word(rep)?, g.graph().vertex_set(&names)?);
            let gate = g.gate(&g.word(x)?, &coset);
            let body = match common.format.unwrap_or(Format::Text) {
                Format::Json => json_body(&json!({
                    "config": config(cli, "gate", graph_json(g.graph()), json!({ "x": x, "delta": names, "rep": rep })),
                    "point": g.format(&gate.point),
                    "distance": gate.distance,
                })),
                _ => format!("{}\n", text(&g, &gate.point)),
            };
            Ok(Output { body, ok: true })
        }
        Command::Domains { x, y, k, radius } => {
            let g = Raag::new(load_graph(common, &[x, y])?);
            if *k == 0 {
                return Err(Error::input("K must be at least 1").into());
            }
            let (xs, ys) = (g.word(x)?, g.word(y)?);
            let found = g.relevant_domains(&xs, &ys, *k, *radius, &b)?;
            let rows: Vec<Value> = found
                .iter()
                .map(|d| {
                    json!({
                        "domain": g.domain_to_json(d),
                        "distance": g.domain_distance(d, &xs, &ys),
                    })
                })
                .collect();
            Ok(Output {
                body: json_body(&json!({
                    "config": config(cli, "domains", graph_json(g.graph()), json!({ "x": x, "y": y, "K": k, "radius": radius })),
                    "metric": "F-metric proxy",
                    "domains": rows,
                })),
                ok: true,
            })
        }
        Command::ClfScan { samples, max_core_len, max_twist_len } => {
            let g = Raag::new(load_graph(common, &[])?);
            if *max_core_len == 0 {
                return Err(Error::input("max-core-len must be positive").into());
            }
            let cfg = ClfConfig {
                samples: *samples,
                max_core_len: *max_core_len,
                max_twist_len: *max_twist_len,
                seed: common.seed,
                budget_elems: b.max_elements,
            };
            let table = g.clf_experiment(&cfg);
            let pts: Vec<(usize, usize)> =
                table.rows.iter().map(|r| (r.a.len() + r.b.len(), r.min_conj.len())).collect();
            let longest = table.rows.iter().map(|r| r.a.len().max(r.b.len())).max().unwrap_or(0);
            let fit = fit_linear_bound(&pts, 2.0 * longest as f64);
            let graph = serde_json::to_string(&g.graph().to_file()).expect("graph serializes");
            let body = match common.format.unwrap_or(Format::Csv) {
                Format::Json => {
                    let rows: Vec<Value> = table
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "trial": r.trial,
                                "a": g.format(&r.a),
                                "b": g.format(&r.b),
                                "min_conj": g.format(&r.min_conj),
                                "pipeline_conj": g.format(&r.pipeline_conj),
                                "big_maximal": r.big_maximal,
                            })
                        })
                        .collect();
                    json_body(&json!({
                        "config": config(cli, "clf-scan", graph_json(g.graph()), json!(cfg)),
                        "fit": fit,
                        "skipped": table.skipped,
                        "rows": rows,
                    }))
                }
                _ => table.to_csv(&[
                    ("graph".into(), graph),
                    ("fit_K".into(), format!("{:.6}", fit.k)),
                    ("fit_C".into(), format!("{:.6}", fit.c)),
                ]),
            };
            Ok(Output { body, ok: true })
        }
        Command::PcBuild { axis, universe_bound, k } => {
            let fam = axis_family(common, axis)?;
            let u = Universe::new(fam.clone(), *universe_bound, &b)?;
            let pk = ProjectionComplex::build(&u, *k)?;
            Ok(Output {
                body: json_body(&json!({
                    "config": config(cli, "pc-build", graph_json(fam.group.raag().graph()), json!({
                        "h": axis.h, "universe_bound": universe_bound, "K": k,
                    })),
                    "closure_added": u.closure_added,
                    "summary": pk.summary(),
                })),
                ok: true,
            })
        }
        Command::PcCheck { axis, universe_bound, k, samples } => {
            let fam = axis_family(common, axis)?;
            let u = Universe::new(fam.clone(), *universe_bound, &b)?;
            let (k, scan) = match k {
                Some(k) => (*k, None),
                None => {
                    let scan = scan_k(&u, fam.period().max(1) + 8, *samples, common.seed)?;
                    match scan.k {
                        Some(k) => (k, Some(scan)),
                        None => return Err(Failure::Check("no K passed the scan".into())),
                    }
                }
            };
            let pk = ProjectionComplex::build(&u, k)?;
            let paths = PathTable::for_complex(&u, k)?;
            let reports = vec![
                thin_triangle_check(&u, &paths, k),
                bottleneck_check(&u, &pk, &paths, *samples, common.seed)?,
                quasi_geodesic_report(&u, &pk, &paths),
            ];
            let ok = reports.iter().all(|r| r.pass);
            Ok(Output {
                body: json_body(&json!({
                    "config": config(cli, "pc-check", graph_json(fam.group.raag().graph()), json!({
                        "h": axis.h, "universe_bound": universe_bound, "detours": samples,
                    })),
                    "K": k,
                    "scan": scan,
                    "reports": reports,
                    "pass": ok,
                })),
                ok,
            })
        }
        Command::PcF { axis, k, m_max, eps, samples, universe_bound, radius, required_distance } => {
            let fam = axis_family(common, axis)?;
            let rows = if *eps == 0 {
                f_measure(&fam, 0..=*m_max, *k, *required_distance, *samples, common.seed, &b)?
            } else {
                let u = Universe::new(fam.clone(), *universe_bound, &b)?;
                let pk = ProjectionComplex::build(&u, *k)?;
                f_measure_truncated(&u, &pk, 0..=*m_max, *eps, *radius, *required_distance, &b)?
            };
            let params = json!({
                "h": axis.h, "K": k, "m_max": m_max, "eps": eps, "samples": samples,
                "universe_bound": universe_bound, "radius": radius, "required_distance": required_distance,
            });
            let body = match common.format.unwrap_or(Format::Csv) {
                Format::Json => json_body(&json!({
                    "config": config(cli, "pc-f", graph_json(fam.group.raag().graph()), params),
                    "rows": rows,
                })),
                _ => f_table_csv(&rows, &[
                    ("h".into(), axis.h.clone()),
                    ("K".into(), k.to_string()),
                    ("seed".into(), common.seed.to_string()),
                    ("samples".into(), samples.to_string()),
                    ("universe_bound".into(), universe_bound.to_string()),
                    ("radius".into(), radius.to_string()),
                    ("required_distance".into(), required_distance.to_string()),
                    ("budget_elems".into(), b.max_elements.to_string()),
                ]),
            };
            Ok(Output { body, ok: true })
        }
        Command::Thmc { a, b: bw, g: gw, axis, k, m, samples } => {
            let fam = axis_family(common, axis)?;
            let grp = &fam.group;
            let (x, y, h) = (grp.word(a)?, grp.word(bw)?, grp.word(gw)?);
            let cfg = PipelineConfig { k: *k, m: *m, ..PipelineConfig::default() };
            let top = m * (x.len() + y.len());
            let table = f_measure(&fam, 0..=top, *k, 1, *samples, common.seed, &b)?;
            let report = theorem_c_pipeline(&fam, &x, &y, &h, &table, cfg, &b)?;
            Ok(Output {
                body: json_body(&json!({
                    "config": config(cli, "thmc", graph_json(grp.raag().graph()), json!({
                        "h": axis.h, "K": k, "m": m, "samples": samples,
                    })),
                    "report": report,
                })),
                ok: report.pass,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_from_words() {
        assert_eq!(names_in(&["b a^-1 a3", "c^2 1", ""]), ["a", "b", "c"]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
