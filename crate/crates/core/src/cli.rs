//! Command-line front end. Every subcommand produces one report, printed as
//! text or (with `--json`) as a single JSON document.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage or input error, 3 inconclusive.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::extensions::{braid_quotient_with, split_fixtures, torsion_search_with, SearchBounds, TorsionVerdict};
use crate::links::{is_primitive_link, LinkingDiagram};
use crate::magnus::{is_primitive_relator_capped, lcs_weight_capped, DEFAULT_WEIGHT_CAP};
use crate::nilpotent::{enough_tf_probe_with, nq_with, NqConfig, DEFAULT_CLASS_CAP, DEFAULT_GENERATOR_CAP};
use crate::par::Execution;
use crate::pgroups::{
    check_power_lemma_automorphism, check_power_lemma_matrix, fixture, h1_trivial_automorphisms, p_lower_central_series, FinitePGroup,
    FpMatrix, LinearAction, Ring,
};
use crate::report::Verdict;
use crate::ssq::{dependency_set, quadrant_dependency_set, zone, zone_exclusion_check, Window};
use crate::words::{parse_presentation_with_warnings, Presentation};

#[derive(Debug, Parser)]
#[command(name = "grouplab", version, about = "Lower central series computations and checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalOpts {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_CAP)]
    pub class_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_WEIGHT_CAP)]
    pub weight_cap: usize,
    /// Largest element order whose kernel fibres the torsion search enumerates.
    #[arg(long, global = true, default_value_t = 16)]
    pub search_bound: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_GENERATOR_CAP)]
    pub generator_cap: usize,
    /// Add wall-clock timings to the report (makes output run-dependent).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timings: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a presentation and print it in normal form.
    Parse { file: PathBuf },
    /// Lower central series weight of each relator, or of `--word`.
    Weight {
        file: PathBuf,
        #[arg(long)]
        word: Option<String>,
    },
    /// Primitivity of a one-relator presentation.
    PrimitiveRelator { file: PathBuf },
    /// Nilpotent quotient of class `--class`.
    Nq {
        file: PathBuf,
        #[arg(long)]
        class: usize,
    },
    /// Torsion in the lower central quotients up to class `--class`.
    TorsionProbe {
        file: PathBuf,
        #[arg(long)]
        class: usize,
    },
    /// p-lower central series of a finite p-group.
    Plcs(PGroupInput),
    /// Unipotence of a linear action given as JSON `{ring, dim, matrices}`.
    Unipotent {
        file: PathBuf,
        /// Primes to reduce an integral action modulo.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
    },
    /// Power lemma for a matrix (`--matrix`) or the H₁-trivial automorphisms of a p-group.
    PowerLemma {
        #[command(flatten)]
        group: PGroupInput,
        /// JSON `{p, rows}`.
        #[arg(long, conflicts_with_all = ["fixture", "pc"])]
        matrix: Option<PathBuf>,
    },
    /// τ equation, Falk–Randell and Hall inclusions on the split fixtures.
    TauCheck {
        /// Only the fixture with this name.
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
    },
    /// The extension data of `B_n/γ_N(P_n)`.
    BraidQuotient(BraidArgs),
    /// Torsion search in `B_n/γ_N(P_n)`.
    Torsion(BraidArgs),
    /// Primitivity of a link from its linking diagram JSON.
    LinkPrimitive { file: PathBuf },
    /// Zone of influence and the exclusion check.
    Zones {
        #[arg(long)]
        r: i64,
        #[arg(long, default_value_t = 60)]
        width: i64,
        #[arg(long, default_value_t = 60)]
        height: i64,
    },
    /// Dependency set `V(r, s, t)`.
    Deps {
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        /// Restrict to fourth-quadrant sequences.
        #[arg(long)]
        quadrant: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PGroupInput {
    /// A built-in group of order 8 or 16, such as `d8` or `q16`.
    #[arg(long)]
    pub fixture: Option<String>,
    /// A pc presentation JSON file.
    #[arg(long)]
    pub pc: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BraidArgs {
    /// Strand count `n` (2 to 4).
    #[arg(long = "braid", alias = "strands")]
    pub n: usize,
    /// `N`, so that the kernel is `P_n/γ_N(P_n)`.
    #[arg(long)]
    pub class: usize,
}

#[derive(Debug, Serialize)]
struct Report {
    command: String,
    tool_version: &'static str,
    inputs: Value,
    config: GlobalOpts,
    verdict: Verdict,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Value>,
}

struct Outcome {
    inputs: Value,
    verdict: Verdict,
    result: Value,
}

type CliResult = Result<Outcome, String>;

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn presentation(path: &PathBuf) -> Result<(Presentation, Vec<String>, String), String> {
    let text = read_input(path)?;
    let parsed = parse_presentation_with_warnings(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((parsed.presentation, parsed.warnings, text))
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn pgroup(input: &PGroupInput) -> Result<(FinitePGroup, Value), String> {
    match (&input.fixture, &input.pc) {
        (Some(name), None) => Ok((fixture(name).map_err(|e| e.to_string())?, json!({ "fixture": name }))),
        (None, Some(path)) => {
            let g = FinitePGroup::from_json_str(&read_input(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((g, json!({ "pc": path.display().to_string() })))
        }
        _ => Err("give exactly one of --fixture or --pc".into()),
    }
}

fn exec(opts: &GlobalOpts) -> Execution {
    if opts.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn nq_config(opts: &GlobalOpts) -> NqConfig {
    NqConfig { class_cap: opts.class_cap, generator_cap: opts.generator_cap }
}

fn dispatch(command: &Command, opts: &GlobalOpts) -> CliResult {
    match command {
        Command::Parse { file } => {
            let (p, warnings, _) = presentation(file)?;
            let gens: Vec<&str> = p.generators().iter().map(|g| g.as_str()).collect();
            let relators: Vec<String> = p.relators().iter().map(|r| r.render(p.generators())).collect();
            Ok(Outcome {
                inputs: json!({ "file": file.display().to_string() }),
                verdict: Verdict::Pass,
                result: json!({ "generators": gens, "relators": relators, "warnings": warnings, "normal_form": p.render() }),
            })
        }
        Command::Weight { file, word } => {
            let (mut p, _, text) = presentation(file)?;
            if let Some(w) = word {
                let extended = format!("{text}\nrel: {w}");
                let q = parse_presentation_with_warnings(&extended).map_err(|e| format!("--word: {e}"))?.presentation;
                let last = q.relators().last().cloned().ok_or("--word is empty")?;
                p = Presentation::new(q.generators().to_vec(), vec![last]).map_err(|e| e.to_string())?;
            }
            let mut weights = Vec::new();
            for r in p.relators() {
                let w = lcs_weight_capped(r, opts.weight_cap).map_err(|e| e.to_string())?;
                weights.push(json!({ "word": r.render(p.generators()), "weight": w.to_string() }));
            }
            Ok(Outcome {
                inputs: json!({ "file": file.display().to_string(), "word": word }),
                verdict: Verdict::Pass,
                result: json!({ "weights": weights }),
            })
        }
        Command::PrimitiveRelator { file } => {
            let (p, _, _) = presentation(file)?;
            let cert = is_primitive_relator_capped(&p, opts.weight_cap).map_err(|e| e.to_string())?;
            let mut result = to_value(&cert);
            if let Value::Object(map) = &mut result {
                map.remove("verdict");
                map.insert("primitive".into(), json!(cert.verdict));
            }
            result["weight"] = json!(cert.weight.to_string());
            if let Some(img) = &cert.lie_image {
                result["lie_image"] = json!(img.render());
            }
            Ok(Outcome { inputs: json!({ "file": file.display().to_string() }), verdict: verdict_of(cert.verdict), result })
        }
        Command::Nq { file, class } => {
            let (p, _, _) = presentation(file)?;
            let q = nq_with(&p, *class, nq_config(opts)).map_err(|e| e.to_string())?;
            let layers: Vec<String> = q.layer_invariants.iter().map(|l| l.to_string()).collect();
            Ok(Outcome {
                inputs: json!({ "file": file.display().to_string(), "class": class }),
                verdict: Verdict::Pass,
                result: json!({ "layers": layers, "pc_generators": q.quotient.len(), "presentation": to_value(&q.quotient.to_json()) }),
            })
        }
        Command::TorsionProbe { file, class } => {
            let (p, _, _) = presentation(file)?;
            let probe = enough_tf_probe_with(&p, *class, nq_config(opts)).map_err(|e| e.to_string())?;
            let mut result = to_value(&probe);
            for e in result["entries"].as_array_mut().expect("entries") {
                e["torsion_order"] = json!(e["torsion_order"].to_string());
            }
            Ok(Outcome {
                inputs: json!({ "file": file.display().to_string(), "class": class }),
                verdict: verdict_of(probe.all_torsion_free()),
                result,
            })
        }
        Command::Plcs(input) => {
            let (g, inputs) = pgroup(input)?;
            let chain = p_lower_central_series(&g);
            let orders: Vec<String> = chain.orders.iter().map(u128::to_string).collect();
            Ok(Outcome {
                inputs,
                verdict: Verdict::Pass,
                result: json!({ "prime": chain.prime, "length": chain.length, "orders": orders, "terms": chain.terms }),
            })
        }
        Command::Unipotent { file, primes } => {
            let text = read_input(file)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let ring = match &v["ring"] {
                Value::String(s) if s == "Z" => Ring::Integers,
                Value::Number(n) => Ring::Mod(n.as_u64().ok_or("ring must be \"Z\" or a prime")?),
                _ => return Err("ring must be \"Z\" or a prime".into()),
            };
            let dim = v["dim"].as_u64().ok_or("dim must be a positive integer")? as usize;
            let matrices: Vec<Vec<Vec<i64>>> = serde_json::from_value(v["matrices"].clone()).map_err(|e| format!("matrices: {e}"))?;
            let action = LinearAction::new(ring, dim, matrices).map_err(|e| e.to_string())?;
            let u = crate::pgroups::is_unipotent_action(&action);
            let mut result = to_value(&u);
            if ring == Ring::Integers && u.unipotent {
                result["mod_p"] = to_value(&crate::pgroups::unipotent_mod_p_transfer(&action, primes, &file.display().to_string()));
            }
            Ok(Outcome {
                inputs: json!({ "file": file.display().to_string(), "primes": primes }),
                verdict: verdict_of(u.unipotent),
                result,
            })
        }
        Command::PowerLemma { group, matrix } => {
            if let Some(path) = matrix {
                let v: Value = serde_json::from_str(&read_input(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
                let p = v["p"].as_u64().ok_or("p must be a prime")?;
                let rows: Vec<Vec<i64>> = serde_json::from_value(v["rows"].clone()).map_err(|e| format!("rows: {e}"))?;
                let a = FpMatrix::new(p, &rows).map_err(|e| e.to_string())?;
                let rec = check_power_lemma_matrix(&a);
                return Ok(Outcome {
                    inputs: json!({ "matrix": path.display().to_string() }),
                    verdict: rec.verdict,
                    result: to_value(&rec),
                });
            }
            let (g, inputs) = pgroup(group)?;
            let autos = h1_trivial_automorphisms(&g).map_err(|e| e.to_string())?;
            let records: Vec<_> =
                autos.iter().enumerate().map(|(i, a)| check_power_lemma_automorphism(&g, a, &format!("alpha{i}"))).collect();
            let failures = records.iter().filter(|r| r.verdict == Verdict::Fail).count();
            let exponents: std::collections::BTreeMap<String, usize> = records.iter().fold(Default::default(), |mut acc, r| {
                let e = r.witness.as_ref().and_then(|w| w.get("exponent")).map(|e| e.to_string()).unwrap_or_default();
                *acc.entry(e).or_default() += 1;
                acc
            });
            Ok(Outcome {
                inputs,
                verdict: verdict_of(failures == 0),
                result: json!({ "automorphisms": autos.len(), "failures": failures, "exponent_counts": exponents }),
            })
        }
        Command::TauCheck { fixture, max_m } => {
            let all = split_fixtures();
            let chosen: Vec<_> = all.iter().filter(|g| fixture.as_ref().is_none_or(|f| &g.name == f)).collect();
            if chosen.is_empty() {
                let names: Vec<&str> = all.iter().map(|g| g.name.as_str()).collect();
                return Err(format!("unknown fixture; choose one of {names:?}"));
            }
            let mut records = Vec::new();
            for g in chosen {
                records.push(crate::extensions::tau_equation_check(g, exec(opts)));
                for m in 0..=*max_m {
                    records.push(crate::extensions::falk_randell_inclusion_check(g, m));
                    records.push(crate::extensions::hall_inclusion_check(g.group(), &g.kernel(), m, &g.name));
                }
            }
            let failed = records.iter().any(|r| r.verdict == Verdict::Fail);
            Ok(Outcome {
                inputs: json!({ "fixture": fixture, "max_m": max_m }),
                verdict: verdict_of(!failed),
                result: json!({ "records": to_value(&records) }),
            })
        }
        Command::BraidQuotient(args) => {
            let bq = braid_quotient_with(args.n, args.class, nq_config(opts)).map_err(|e| e.to_string())?;
            let e = &bq.extension;
            let q = e.quotient().order();
            let transversal: Vec<Value> = (0..q).map(|i| json!({ "permutation": e.label(i), "word": e.transversal(i) })).collect();
            let nontrivial =
                (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).filter(|&(a, b)| e.factor(a, b).iter().any(|&x| x != 0)).count();
            Ok(Outcome {
                inputs: json!({ "n": args.n, "class": args.class }),
                verdict: Verdict::Pass,
                result: json!({
                    "group": e.name,
                    "quotient_order": q,
                    "kernel_rank": e.kernel().len(),
                    "kernel": to_value(&e.kernel().to_json()),
                    "transversal": transversal,
                    "nontrivial_factor_set_entries": nontrivial,
                    "cocycle_verified": true,
                }),
            })
        }
        Command::Torsion(args) => {
            let bq = braid_quotient_with(args.n, args.class, nq_config(opts)).map_err(|e| e.to_string())?;
            let bounds = SearchBounds { coordinate_bound: opts.search_bound, ..SearchBounds::default() };
            let report = torsion_search_with(&bq.extension, bounds, exec(opts)).map_err(|e| e.to_string())?;
            let verdict = match report.verdict {
                TorsionVerdict::TorsionFree => Verdict::Pass,
                TorsionVerdict::Torsion => Verdict::Fail,
                TorsionVerdict::Inconclusive => Verdict::Inconclusive,
            };
            Ok(Outcome { inputs: json!({ "n": args.n, "class": args.class }), verdict, result: to_value(&report) })
        }
        Command::LinkPrimitive { file } => {
            let d = LinkingDiagram::from_json_str(&read_input(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let r = is_primitive_link(&d);
            Ok(Outcome { inputs: json!({ "file": file.display().to_string() }), verdict: verdict_of(r.primitive), result: to_value(&r) })
        }
        Command::Zones { r, width, height } => {
            let w = Window::new(*width, *height).map_err(|e| e.to_string())?;
            let z = zone(*r, w).map_err(|e| e.to_string())?;
            let check = zone_exclusion_check(*r, w).map_err(|e| e.to_string())?;
            let points: Vec<[i64; 2]> = z.points.iter().map(|&(s, t)| [s, t]).collect();
            Ok(Outcome {
                inputs: json!({ "r": r, "width": width, "height": height }),
                verdict: check.verdict,
                result: json!({ "points": points, "exclusion": to_value(&check) }),
            })
        }
        Command::Deps { r, s, t, quadrant } => {
            let v = if *quadrant { quadrant_dependency_set(*r, *s, *t) } else { dependency_set(*r, *s, *t) }.map_err(|e| e.to_string())?;
            let positions: Vec<[i64; 2]> = v.iter().map(|&(x, y)| [x, y]).collect();
            let mut verdict = Verdict::Pass;
            if *quadrant && s + t <= 0 && v.iter().any(|&(x, y)| y == 0 && x >= 1) {
                verdict = Verdict::Fail;
            }
            Ok(Outcome {
                inputs: json!({ "r": r, "s": s, "t": t, "quadrant": quadrant }),
                verdict,
                result: json!({ "positions": positions }),
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse { .. } => "parse",
        Command::Weight { .. } => "weight",
        Command::PrimitiveRelator { .. } => "primitive-relator",
        Command::Nq { .. } => "nq",
        Command::TorsionProbe { .. } => "torsion-probe",
        Command::Plcs(_) => "plcs",
        Command::Unipotent { .. } => "unipotent",
        Command::PowerLemma { .. } => "power-lemma",
        Command::TauCheck { .. } => "tau-check",
        Command::BraidQuotient(_) => "braid-quotient",
        Command::Torsion(_) => "torsion",
        Command::LinkPrimitive { .. } => "link-primitive",
        Command::Zones { .. } => "zones",
        Command::Deps { .. } => "deps",
    }
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass | Verdict::Inapplicable => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    }
}

fn render_text(report: &Report, out: &mut String) {
    use std::fmt::Write as _;
    let _ = writeln!(out, "{} ({})", report.command, report.tool_version);
    let _ = writeln!(out, "verdict: {}", report.verdict);
    if let Value::Object(map) = &report.result {
        for (k, v) in map {
            match v {
                Value::String(s) if s.contains('\n') => {
                    let _ = writeln!(out, "{k}:");
                    for line in s.lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                Value::Array(items) if items.iter().all(|i| i.is_object()) && !items.is_empty() => {
                    let _ = writeln!(out, "{k}:");
                    for i in items {
                        let _ = writeln!(out, "  - {i}");
                    }
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
    }
    if let Some(t) = &report.timings {
        let _ = writeln!(out, "timings: {t}");
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match dispatch(&cli.command, &cli.global) {
        Ok(o) => o,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let timings = cli.global.timings.then(|| json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 }));
    let report = Report {
        command: command_name(&cli.command).into(),
        tool_version: env!("CARGO_PKG_VERSION"),
        inputs: outcome.inputs,
        config: cli.global.clone(),
        verdict: outcome.verdict,
        result: outcome.result,
        timings,
    };
    let text = if cli.global.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        let mut s = String::new();
        render_text(&report, &mut s);
        s
    };
    let _ = out.write_all(text.as_bytes());
    exit_code(report.verdict)
}
