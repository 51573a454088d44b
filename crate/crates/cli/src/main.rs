use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hooktab::crystal::{apply_with_rule, epsilon, phi, Direction};
use hooktab::symfunc::{
    canonical_grothendieck, dual_grothendieck, expand_in_basis, mvt_generating_function, schur_poly,
    stable_grothendieck, Basis, BetaValue, TruncatedSymmetricPolynomial,
};
use hooktab::uncrowding::{multiset_uncrowd_steps, uncrowd_mvt, uncrowd_steps, uncrowd_svt, UncrowdStep};
use hooktab::verify::{run_suite, Scope, Suite, VerifyReport};
use hooktab::word::format_word;
use hooktab::{
    build_crystal_graph, check_components, column_reading_word, crowd, enumerate_flagged, enumerate_flagged_any_inner,
    enumerate_hvt, enumerate_rpp, FlaggedTableau, HookValuedTableau, Letter, Orientation, Partition, UncrowdResult,
};

/// Hook-valued tableaux: reading words, crystal operators, uncrowding and crowding, expansions.
#[derive(Parser)]
#[command(name = "hooktab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each command has its own default.
    #[arg(long, global = true, env = "HOOKTAB_FORMAT")]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for enumeration-heavy commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Accepted for compatibility; every algorithm is deterministic, so it has no effect.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Ascii,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    E,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// arm excess into a set-valued tableau, column-flagged recording
    Arm,
    /// leg excess into a multiset-valued tableau, row-flagged recording
    Leg,
    /// set-valued input into a semistandard tableau by row bumping
    Svt,
    /// multiset-valued input by RSK on column suffixes
    Mvt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hvt,
    Rpp,
    Flagged,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Canonical,
    Grothendieck,
    Dual,
    Schur,
    Multiset,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "kebab-case")]
enum SuiteArg {
    All,
    Roundtrip,
    Intertwine,
    Knuth,
    MvtAgree,
    Stembridge,
}

#[derive(clap::Args, Clone)]
struct Bounds {
    #[arg(long)]
    shape: Partition,
    #[arg(long, default_value_t = 3)]
    max_entry: Letter,
    #[arg(long, default_value_t = 0)]
    arm: usize,
    #[arg(long, default_value_t = 0)]
    leg: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tableau file and report its shape and excess.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Column reading word.
    Word {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply e_i or f_i; without --op, list the string lengths for every i.
    Crystal {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        op: Option<Op>,
        #[arg(long, short)]
        i: Option<Letter>,
    },
    /// Uncrowding map and its recording tableau.
    Uncrowd {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "arm")]
        variant: Variant,
        /// Include every intermediate tableau.
        #[arg(long)]
        trace: bool,
    },
    /// Crowding map on {S, F} (or the {P, Q} output of uncrowd).
    Crowd {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// List tableaux, plane partitions or flagged tableaux.
    Enumerate {
        #[arg(long, value_enum, default_value = "hvt")]
        kind: Kind,
        #[command(flatten)]
        bounds: Bounds,
        /// Inner shape for flagged tableaux; every admissible inner shape when omitted.
        #[arg(long)]
        inner: Option<Partition>,
        #[arg(long, value_enum, default_value = "column-flagged")]
        orientation: OrientationArg,
    },
    /// Expansion of the canonical function of a shape in the Schur, G or g basis.
    Expand {
        #[arg(long)]
        shape: Partition,
        #[arg(long, default_value = "schur")]
        basis: Basis,
        /// Largest basis shape (Schur, G) or letter count (g) explored.
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
    /// Monomial expansion of a generating function in finitely many variables.
    Poly {
        #[arg(long)]
        shape: Partition,
        #[arg(long, value_enum, default_value = "canonical")]
        kind: PolyKind,
        /// Number of variables.
        #[arg(long, default_value_t = 3)]
        max_entry: usize,
        /// Largest letter count kept.
        #[arg(long, default_value_t = 5)]
        max_letters: usize,
    },
    /// Exhaustive verification suites.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Crystal graph on all tableaux within the bounds.
    Graph {
        #[command(flatten)]
        bounds: Bounds,
        /// Report the component check instead of the graph.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    RowFlagged,
    ColumnFlagged,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Orientation {
        match o {
            OrientationArg::RowFlagged => Orientation::RowFlagged,
            OrientationArg::ColumnFlagged => Orientation::ColumnFlagged,
        }
    }
}

/// Domain failure: exit status 1 with a JSON description on stderr.
struct Failure(Value);

fn fail<E: serde::Serialize>(e: E) -> Failure {
    Failure(serde_json::to_value(e).unwrap_or_else(|e| json!({"error": "Internal", "detail": e.to_string()})))
}

fn detail(kind: &str, msg: impl std::fmt::Display) -> Failure {
    Failure(json!({"error": kind, "detail": msg.to_string()}))
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| detail("Io", e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| detail("Io", format!("{}: {e}", path.display())))
    }
}

/// JSON when the text starts with `{`, compact notation otherwise.
fn parse_tableau(text: &str) -> Result<HookValuedTableau, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        HookValuedTableau::from_json(text).map_err(fail)
    } else {
        text.parse::<HookValuedTableau>().map_err(fail)
    }
}

fn read_tableau(path: &PathBuf) -> Result<HookValuedTableau, Failure> {
    parse_tableau(&read_input(path)?)
}

fn kind_name(t: &HookValuedTableau) -> &'static str {
    match (t.is_set_valued(), t.is_multiset_valued()) {
        (true, true) => "semistandard",
        (true, false) => "set-valued",
        (false, true) => "multiset-valued",
        (false, false) => "hook-valued",
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn steps_json(steps: &[UncrowdStep]) -> Value {
    serde_json::to_value(steps).unwrap()
}

fn uncrowd_text(u: &UncrowdResult, format: Format) -> String {
    match format {
        Format::Tsv => format!("P\t{}\nQ\t{}\n", u.p, u.q),
        _ => format!("P:\n{}\nQ:\n{}", u.p.to_ascii(), u.q.to_ascii()),
    }
}

fn poly_text(p: &TruncatedSymmetricPolynomial, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(p).unwrap()),
        Format::Tsv => p.to_tsv(),
        _ => format!("{p}\n"),
    }
}

fn suites(arg: SuiteArg) -> Vec<Suite> {
    match arg {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Roundtrip => vec![Suite::Roundtrip],
        SuiteArg::Intertwine => vec![Suite::Intertwine],
        SuiteArg::Knuth => vec![Suite::Knuth],
        SuiteArg::MvtAgree => vec![Suite::MvtAgree],
        SuiteArg::Stembridge => vec![Suite::Stembridge],
    }
}

fn scope(b: &Bounds) -> Scope {
    Scope { shape: b.shape.clone(), max_entry: b.max_entry, arm: b.arm, leg: b.leg }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    Ok(match &cli.command {
        Command::Validate { input } => {
            let t = read_tableau(input)?;
            let info = json!({
                "valid": true,
                "shape": t.shape(),
                "kind": kind_name(&t),
                "arm_excess": t.arm_excess(),
                "leg_excess": t.leg_excess(),
                "weight": t.weight(),
            });
            match fmt(Format::Json) {
                Format::Json => pretty(&info),
                Format::Tsv => format!(
                    "valid\tshape\tkind\tarm_excess\tleg_excess\ntrue\t{}\t{}\t{}\t{}\n",
                    t.shape(),
                    kind_name(&t),
                    t.arm_excess(),
                    t.leg_excess()
                ),
                _ => format!(
                    "valid {} tableau of shape {}, arm excess {}, leg excess {}\n{}",
                    kind_name(&t),
                    t.shape(),
                    t.arm_excess(),
                    t.leg_excess(),
                    t.to_ascii()
                ),
            }
        }
        Command::Word { input } => {
            let w = column_reading_word(&read_tableau(input)?);
            match fmt(Format::Ascii) {
                Format::Json => pretty(&json!({"word": w, "text": format_word(&w)})),
                _ => format!("{}\n", format_word(&w)),
            }
        }
        Command::Crystal { input, op, i } => {
            let t = read_tableau(input)?;
            let Some(op) = op else {
                let top = t.max_letter().max(1);
                let rows: Vec<(Letter, usize, usize)> = (1..top).map(|i| (i, phi(&t, i), epsilon(&t, i))).collect();
                return Ok(match fmt(Format::Tsv) {
                    Format::Json => pretty(&json!(rows
                        .iter()
                        .map(|&(i, p, e)| json!({"i": i, "phi": p, "epsilon": e}))
                        .collect::<Vec<_>>())),
                    _ => {
                        let mut s = String::from("i\tphi\tepsilon\n");
                        for (i, p, e) in rows {
                            s.push_str(&format!("{i}\t{p}\t{e}\n"));
                        }
                        s
                    }
                });
            };
            let i = i.ok_or_else(|| detail("Usage", "--op needs -i/--i"))?;
            if i == 0 {
                return Err(detail("Usage", "i must be at least 1"));
            }
            let dir = match op {
                Op::E => Direction::Raise,
                Op::F => Direction::Lower,
            };
            let result = apply_with_rule(&t, i, dir);
            match (fmt(Format::Json), result) {
                (Format::Json, Some((u, rule))) => pretty(&json!({"result": u, "rule": format!("{rule:?}")})),
                (Format::Json, None) => pretty(&json!({"result": null})),
                (Format::Tsv, Some((u, _))) => format!("{u}\n"),
                (Format::Tsv, None) => "0\n".into(),
                (_, Some((u, _))) => u.to_ascii(),
                (_, None) => "0 (annihilated)\n".into(),
            }
        }
        Command::Uncrowd { input, variant, trace } => {
            let t = read_tableau(input)?;
            let format = fmt(Format::Json);
            let (result, steps) = match variant {
                Variant::Arm => {
                    let steps = uncrowd_steps(&t);
                    (result_of(&steps, &t, Orientation::ColumnFlagged), Some(steps))
                }
                Variant::Leg => {
                    let steps = multiset_uncrowd_steps(&t);
                    (result_of(&steps, &t, Orientation::RowFlagged), Some(steps))
                }
                Variant::Svt => {
                    let (p, q) = uncrowd_svt(&t).map_err(fail)?;
                    (UncrowdResult { p, q, paths: Vec::new() }, None)
                }
                Variant::Mvt => {
                    if !t.is_multiset_valued() {
                        return Err(detail("NotMultisetValued", "input has nonzero leg excess"));
                    }
                    (uncrowd_mvt(&t), None)
                }
            };
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&result).unwrap();
                    if *trace {
                        v["steps"] = steps.as_deref().map(steps_json).unwrap_or(Value::Null);
                    }
                    pretty(&v)
                }
                f => {
                    let mut s = String::new();
                    if *trace {
                        for (k, st) in steps.iter().flatten().enumerate() {
                            s.push_str(&format!("step {k}\n{}", uncrowd_text(&UncrowdResult { p: st.p.clone(), q: st.q.clone(), paths: vec![] }, f)));
                        }
                    }
                    s + &uncrowd_text(&result, f)
                }
            }
        }
        Command::Crowd { input, trace } => {
            let v: Value = serde_json::from_str(&read_input(input)?).map_err(|e| detail("Malformed", e))?;
            let pick = |a: &str, b: &str| v.get(a).or_else(|| v.get(b)).cloned();
            let s_val = pick("S", "P").ok_or_else(|| detail("Malformed", "expected an object with S and F"))?;
            let f_val = pick("F", "Q").ok_or_else(|| detail("Malformed", "expected an object with S and F"))?;
            let s = HookValuedTableau::from_json(&s_val.to_string()).map_err(fail)?;
            let f: FlaggedTableau = serde_json::from_value(f_val).map_err(|e| detail("InvalidRecording", e))?;
            let (t, tr) = crowd(&s, &f).map_err(fail)?;
            match fmt(Format::Json) {
                // plain tableau file, so uncrowd then crowd reproduces the input
                Format::Json if !*trace => t.to_json() + "\n",
                Format::Json => pretty(&json!({"T": t, "trace": tr})),
                Format::Tsv => format!("{t}\n"),
                _ => t.to_ascii(),
            }
        }
        Command::Enumerate { kind, bounds, inner, orientation } => {
            let format = fmt(Format::Tsv);
            let items: Vec<(String, String, Value)> = match kind {
                Kind::Hvt => enumerate_hvt(&bounds.shape, bounds.max_entry, bounds.arm, bounds.leg)
                    .into_iter()
                    .map(|t| (t.to_compact(), t.to_ascii(), serde_json::to_value(&t).unwrap()))
                    .collect(),
                Kind::Rpp => enumerate_rpp(&bounds.shape, bounds.max_entry)
                    .into_iter()
                    .map(|r| {
                        let rows: Vec<String> =
                            r.rows().iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
                        let ascii = rows.iter().rev().cloned().collect::<Vec<_>>().join("\n") + "\n";
                        (rows.join(" / "), ascii, serde_json::to_value(&r).unwrap())
                    })
                    .collect(),
                Kind::Flagged => {
                    let o = Orientation::from(*orientation);
                    let fs = match inner {
                        Some(inner) => enumerate_flagged(inner, &bounds.shape, o).map_err(fail)?,
                        None => enumerate_flagged_any_inner(&bounds.shape, o),
                    };
                    fs.into_iter().map(|f| (f.to_string(), f.to_ascii(), serde_json::to_value(&f).unwrap())).collect()
                }
            };
            match format {
                Format::Json => pretty(&json!({"count": items.len(), "items": items.into_iter().map(|x| x.2).collect::<Vec<_>>()})),
                Format::Tsv => items.into_iter().map(|x| x.0 + "\n").collect(),
                _ => items.into_iter().map(|x| x.1 + "\n").collect(),
            }
        }
        Command::Expand { shape, basis, bound } => {
            let e = expand_in_basis(shape, *basis, *bound);
            match fmt(Format::Tsv) {
                Format::Json => pretty(&serde_json::to_value(&e).unwrap()),
                Format::Tsv => e.to_tsv(),
                _ => {
                    let name = match basis {
                        Basis::Schur => "s",
                        Basis::BigG => "G",
                        Basis::SmallG => "g",
                    };
                    let mut s = String::new();
                    for (p, c) in &e.terms {
                        s.push_str(&format!("({c}) {name}{p}\n"));
                    }
                    s + &format!("(terms beyond bound {bound} omitted)\n")
                }
            }
        }
        Command::Poly { shape, kind, max_entry, max_letters } => {
            let m = *max_entry;
            let p = match kind {
                PolyKind::Canonical => canonical_grothendieck(shape, m, *max_letters),
                PolyKind::Grothendieck => stable_grothendieck(shape, m, *max_letters, BetaValue::Formal),
                PolyKind::Dual => dual_grothendieck(shape, m).truncate(*max_letters),
                PolyKind::Schur => schur_poly(shape, m, Some(*max_letters)),
                PolyKind::Multiset => mvt_generating_function(shape, m, *max_letters),
            };
            poly_text(&p, fmt(Format::Ascii))
        }
        Command::Verify { suite, bounds } => {
            let sc = scope(bounds);
            let reports: Vec<VerifyReport> = suites(*suite).into_iter().map(|s| run_suite(s, &sc)).collect();
            let text = match fmt(Format::Tsv) {
                Format::Json => pretty(&serde_json::to_value(&reports).unwrap()),
                Format::Tsv => {
                    let mut s = String::from("suite\tinstances\tfailures\tfirst_failure\n");
                    for r in &reports {
                        s.push_str(&(r.to_tsv_row() + "\n"));
                    }
                    s
                }
                _ => reports
                    .iter()
                    .map(|r| format!("{:<11} {} instances checked, {} failures\n", r.name, r.instances, r.failures))
                    .collect(),
            };
            if let Some(bad) = reports.iter().find(|r| !r.ok()) {
                emit(cli, &text).map_err(|e| detail("Io", e))?;
                return Err(fail(json!({"error": "VerificationFailed", "report": bad})));
            }
            text
        }
        Command::Graph { bounds, check } => {
            let g = build_crystal_graph(&bounds.shape, bounds.max_entry, bounds.arm, bounds.leg);
            if *check {
                let r = check_components(&g);
                let ok = r.failures.is_empty();
                let text = pretty(&serde_json::to_value(&r).unwrap());
                if !ok {
                    emit(cli, &text).map_err(|e| detail("Io", e))?;
                    return Err(fail(json!({"error": "ComponentMismatch", "failures": r.failures})));
                }
                text
            } else {
                match fmt(Format::Dot) {
                    Format::Json => pretty(&g.to_json()),
                    _ => g.to_dot(),
                }
            }
        }
    })
}

fn result_of(steps: &[UncrowdStep], t: &HookValuedTableau, orientation: Orientation) -> UncrowdResult {
    let last = steps.last().expect("at least the starting stage");
    let paths = match orientation {
        Orientation::ColumnFlagged => hooktab::uncrowd(t).paths,
        Orientation::RowFlagged => hooktab::multiset_uncrowd(t).paths,
    };
    UncrowdResult { p: last.p.clone(), q: last.q.clone(), paths }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(text) => match emit(&cli, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{}", json!({"error": "Io", "detail": e.to_string()}));
                ExitCode::from(1)
            }
        },
        Err(Failure(v)) => {
            let usage = v.get("error").and_then(Value::as_str) == Some("Usage");
            eprintln!("{v}");
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
