//! The `rosetta` command line: argument parsing, dispatch and run reports.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rosetta::kernel::{
    infer_dom_cod, parse_mor, parse_signature, validate_signature, Mode, Signature,
};
use rosetta::lambda::{
    church_decode_normal, church_encode, normalize_untyped, parse_untyped, parse_untyped_file,
    ski_eliminate, LambdaError, Term,
};
use rosetta::lintype::{
    cpvp, lin_equiv_combinators, lin_equiv_terms, parse_combinator, parse_lin_term,
    parse_lin_theory, LinEquiv,
};
use rosetta::mill::{check_proof, parse_proof_file, proof_to_mor};
use rosetta::models::{check_model_laws, eval_mor, Model, ModelKind};
use rosetta::rewrite::{beta_eta_normalize, eq_decide, EqConfig, EqMethod, EqVerdict, Strategy};

use crate::diagram::{export_diagram, render, Format};
use crate::model_file::{binding_doc, load_model, parse_model_doc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUAL: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "rosetta",
    version,
    about = "Monoidal categories, proofs, lambda terms and linear type theories"
)]
struct Cli {
    /// Write a JSON run report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Include wall-clock timing in the run report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a signature.
    Check { sig: PathBuf },
    /// Decide whether two morphism terms are equal.
    Eq {
        sig: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[command(flatten)]
        ladder: Ladder,
    },
    /// Normalize a morphism term.
    Normalize {
        sig: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
    /// Evaluate a morphism term in a model.
    Eval {
        sig: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Check the axioms of a mode in a model on random samples.
    Coherence {
        #[arg(long)]
        mode: String,
        /// Model fixing the kind and any carriers; a blank matrix model by default.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check or compile MILL proofs.
    #[command(subcommand)]
    Mill(MillCommand),
    /// Untyped lambda calculus.
    #[command(subcommand)]
    Lam(LamCommand),
    /// Linear type theories.
    #[command(subcommand)]
    Lin(LinCommand),
    /// Export the string diagram of a term.
    Diagram {
        sig: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Json)]
        format: DiagramFormat,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Ladder {
    #[arg(long, default_value = "full")]
    strategy: String,
    #[arg(long, default_value_t = 10_000)]
    fuel: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attach a model (repeatable).
    #[arg(long)]
    model: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum MillCommand {
    /// Check every proof in a file.
    Check {
        file: PathBuf,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// Compile every proof in a file to a morphism term.
    Compile {
        file: PathBuf,
        #[arg(long)]
        sig: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct LamSource {
    /// File of `def NAME = term` declarations.
    file: Option<PathBuf>,
    /// Inline term instead of a file.
    #[arg(long)]
    term: Option<String>,
    /// Definition to use; `main`, else the last one.
    #[arg(long)]
    def: Option<String>,
}

#[derive(Subcommand, Debug)]
enum LamCommand {
    /// Normalize a term and decode it as a Church numeral if possible.
    Run {
        #[command(flatten)]
        src: LamSource,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
    /// Translate a term to S, K and I.
    Ski {
        #[command(flatten)]
        src: LamSource,
    },
    /// Print the Church numeral of n.
    Church { n: u64 },
}

#[derive(Subcommand, Debug)]
enum LinCommand {
    /// Split a term into its combinator part and variable part.
    Cpvp {
        theory: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Decide equivalence of two terms, or of two combinators with --combinators.
    Eq {
        theory: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        combinators: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DiagramFormat {
    Json,
    Dot,
    Svg,
}

/// Outcome of one invocation. Serializes deterministically unless timing
/// was requested.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub output: Vec<String>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl RunReport {
    pub fn stdout(&self) -> String {
        self.output.iter().map(|l| format!("{}\n", l)).collect()
    }

    pub fn stderr(&self) -> String {
        self.diagnostics
            .iter()
            .map(|l| format!("{}\n", l))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// A failure that ends the run with the given exit code.
#[derive(Debug)]
struct Fail {
    code: i32,
    msg: String,
}

fn input(ctx: impl Display, e: impl Display) -> Fail {
    Fail {
        code: EXIT_INPUT,
        msg: format!("{}: {}", ctx, e),
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail {
        code: EXIT_IO,
        msg: format!("{}: {}", path.display(), e),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail {
        code: EXIT_IO,
        msg: format!("{}: {}", path.display(), e),
    })
}

fn load_sig(path: &Path) -> Result<Signature, Fail> {
    parse_signature(&read(path)?).map_err(|e| input(path.display(), e))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".into())
}

fn load_model_file(path: &Path, sig: &Signature) -> Result<Model, Fail> {
    let doc = parse_model_doc(&read(path)?).map_err(|e| input(path.display(), e))?;
    load_model(&doc, sig, &stem(path)).map_err(|e| input(path.display(), e))
}

/// Parses a term and checks that it is well typed.
fn load_term(src: &str, sig: &Signature) -> Result<rosetta::kernel::MorTerm, Fail> {
    let t = parse_mor(src, sig).map_err(|e| input(src, e))?;
    infer_dom_cod(&t, sig).map_err(|e| input(src, e))?;
    Ok(t)
}

struct Run {
    report: RunReport,
}

impl Run {
    fn out(&mut self, line: impl Into<String>) {
        self.report.output.push(line.into());
    }

    fn diag(&mut self, line: impl Into<String>) {
        self.report.diagnostics.push(line.into());
    }

    fn verdict(&mut self, v: impl Into<String>, code: i32) -> i32 {
        let v = v.into();
        self.out(v.clone());
        self.report.verdict = Some(v);
        code
    }
}

/// Runs one command. `args` excludes the program name.
pub fn run_command<S: AsRef<str>>(args: &[S]) -> RunReport {
    let start = Instant::now();
    let argv: Vec<String> = args.iter().map(|a| a.as_ref().to_string()).collect();
    let mut run = Run {
        report: RunReport {
            command: argv.clone(),
            ..RunReport::default()
        },
    };
    let cli = match Cli::try_parse_from(std::iter::once("rosetta".to_string()).chain(argv)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let done = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            if done {
                run.report.output.extend(text.lines().map(str::to_string));
            } else {
                run.report
                    .diagnostics
                    .extend(text.lines().map(str::to_string));
            }
            run.report.exit_code = if done { EXIT_OK } else { EXIT_INPUT };
            return run.report;
        }
    };
    let code = match dispatch(&cli.command, &mut run) {
        Ok(code) => code,
        Err(f) => {
            run.diag(f.msg);
            f.code
        }
    };
    run.report.exit_code = code;
    if cli.timing {
        run.report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if let Some(path) = &cli.report {
        if let Err(f) = write(path, &run.report.to_json()) {
            run.report.diagnostics.push(f.msg);
            run.report.exit_code = f.code;
        }
    }
    run.report
}

fn dispatch(cmd: &Command, run: &mut Run) -> Result<i32, Fail> {
    match cmd {
        Command::Check { sig } => check(sig, run),
        Command::Eq {
            sig,
            lhs,
            rhs,
            ladder,
        } => eq(sig, lhs, rhs, ladder, run),
        Command::Normalize { sig, term, fuel } => {
            let s = load_sig(sig)?;
            let t = load_term(term, &s)?;
            let n = beta_eta_normalize(&t, &s, *fuel).map_err(|e| input(term, e))?;
            run.out(n.term.display_in(s.mode).to_string());
            run.out(format!("steps: {}", n.steps));
            Ok(if n.normal {
                EXIT_OK
            } else {
                run.verdict(
                    format!("unknown: no normal form within {} steps", fuel),
                    EXIT_UNKNOWN,
                )
            })
        }
        Command::Eval { sig, model, term } => {
            let s = load_sig(sig)?;
            let m = load_model_file(model, &s)?;
            let t = load_term(term, &s)?;
            let v = eval_mor(&m, &t, &s).map_err(|e| input(term, e))?;
            run.out(serde_json::to_string(&binding_doc(&v)).expect("bindings serialize"));
            Ok(EXIT_OK)
        }
        Command::Coherence {
            mode,
            model,
            samples,
            seed,
        } => {
            let mode = Mode::from_name(mode)
                .ok_or_else(|| input("--mode", format!("unknown mode `{}`", mode)))?;
            let m = match model {
                Some(p) => load_model_file(p, &Signature::new(mode))?,
                None => Model::new("matrix", ModelKind::Matrix),
            };
            let report = check_model_laws(&m, mode, *samples, *seed);
            let mut laws: Vec<(String, usize, usize)> = Vec::new();
            for r in &report.results {
                match laws.last_mut() {
                    Some((l, n, ok)) if *l == r.law => {
                        *n += 1;
                        *ok += r.pass as usize;
                    }
                    _ => laws.push((r.law.clone(), 1, r.pass as usize)),
                }
            }
            for (law, n, ok) in &laws {
                run.out(format!("{}: {}/{} pass", law, ok, n));
            }
            let first = report.failures().next().cloned();
            match first {
                None => Ok(run.verdict("all laws hold", EXIT_OK)),
                Some(f) => {
                    let detail = match (&f.witness, &f.error) {
                        (Some(i), _) => format!("differs at basis input {}", i),
                        (_, Some(e)) => e.clone(),
                        _ => String::new(),
                    };
                    run.report.witness =
                        Some(json!({"law": f.law, "sample": f.sample, "input": f.witness}));
                    Ok(run.verdict(
                        format!(
                            "refuted: {} fails in sample {}: {}",
                            f.law, f.sample, detail
                        ),
                        EXIT_NOT_EQUAL,
                    ))
                }
            }
        }
        Command::Mill(m) => mill(m, run),
        Command::Lam(l) => lam(l, run),
        Command::Lin(l) => lin(l, run),
        Command::Diagram {
            sig,
            term,
            format,
            output,
        } => {
            let s = load_sig(sig)?;
            let t = load_term(term, &s)?;
            let g = export_diagram(&t, &s).map_err(|e| input(term, e))?;
            let format = match format {
                DiagramFormat::Json => Format::Json,
                DiagramFormat::Dot => Format::Dot,
                DiagramFormat::Svg => Format::Svg,
            };
            let doc = render(&g, format);
            match output {
                Some(p) => {
                    write(p, &doc)?;
                    run.out(format!(
                        "wrote {} ({} nodes, {} edges)",
                        p.display(),
                        g.nodes.len(),
                        g.edges.len()
                    ));
                }
                None => run.report.output.extend(doc.lines().map(str::to_string)),
            }
            Ok(EXIT_OK)
        }
    }
}

fn check(path: &Path, run: &mut Run) -> Result<i32, Fail> {
    let s = load_sig(path)?;
    let violations = validate_signature(&s);
    if !violations.is_empty() {
        for v in &violations {
            run.diag(format!("{}: {}", path.display(), v));
        }
        return Ok(EXIT_INPUT);
    }
    run.out(format!(
        "{}: {} mode, {} objects, {} aliases, {} generators, {} terms",
        path.display(),
        s.mode,
        s.objects.len(),
        s.aliases.len(),
        s.generators.len(),
        s.terms.len()
    ));
    Ok(EXIT_OK)
}

fn eq(path: &Path, lhs: &str, rhs: &str, ladder: &Ladder, run: &mut Run) -> Result<i32, Fail> {
    let s = load_sig(path)?;
    let strategy = Strategy::from_name(&ladder.strategy).ok_or_else(|| {
        input(
            "--strategy",
            format!("unknown strategy `{}`", ladder.strategy),
        )
    })?;
    let models = ladder
        .model
        .iter()
        .map(|p| load_model_file(p, &s))
        .collect::<Result<Vec<_>, _>>()?;
    let (t1, t2) = (load_term(lhs, &s)?, load_term(rhs, &s)?);
    let cfg = EqConfig {
        strategy,
        fuel: ladder.fuel,
        seed: ladder.seed,
        models,
    };
    let v = eq_decide(&t1, &t2, &s, &cfg).map_err(|e| input("eq", e))?;
    Ok(match v {
        EqVerdict::Equal(m) => {
            let how = match m {
                EqMethod::NormalForm => "normal form",
                EqMethod::AxiomPath => "axiom path",
            };
            run.verdict(format!("equal ({})", how), EXIT_OK)
        }
        EqVerdict::NotEqual(w) => {
            run.report.witness = Some(json!({"model": w.model, "input": w.input}));
            run.verdict(
                format!(
                    "not equal: model {} differs at basis input {}",
                    w.model, w.input
                ),
                EXIT_NOT_EQUAL,
            )
        }
        EqVerdict::Unknown(why) => run.verdict(format!("unknown: {}", why), EXIT_UNKNOWN),
    })
}

fn mill(cmd: &MillCommand, run: &mut Run) -> Result<i32, Fail> {
    let (file, sig) = match cmd {
        MillCommand::Check { file, sig } | MillCommand::Compile { file, sig } => (file, sig),
    };
    let s = match sig {
        Some(p) => load_sig(p)?,
        None => Signature::new(Mode::ClosedSymmetric),
    };
    let proofs = parse_proof_file(&read(file)?, &s).map_err(|e| input(file.display(), e))?;
    let mut code = EXIT_OK;
    for (name, p) in &proofs {
        let report = check_proof(p, &s);
        if !report.is_valid() {
            for v in &report.violations {
                run.diag(format!("{}: {}: {}", file.display(), name, v));
            }
            run.out(format!("{}: invalid", name));
            code = EXIT_NOT_EQUAL;
            continue;
        }
        match cmd {
            MillCommand::Check { .. } => run.out(format!("{}: valid {}", name, p.conclusion)),
            MillCommand::Compile { .. } => {
                let t = proof_to_mor(p, &s).map_err(|e| input(name, e))?;
                run.out(format!("{} = {}", name, t.display_in(s.mode)));
            }
        }
    }
    Ok(code)
}

fn lam_term(src: &LamSource) -> Result<Term, Fail> {
    match (&src.file, &src.term) {
        (Some(_), Some(_)) => Err(input("lam", "give a file or --term, not both")),
        (None, Some(t)) => parse_untyped(t).map_err(|e| input(t, e)),
        (None, None) => Err(input("lam", "give a file or --term")),
        (Some(path), None) => {
            let defs = parse_untyped_file(&read(path)?).map_err(|e| input(path.display(), e))?;
            let pick = match &src.def {
                Some(d) => defs.iter().find(|(n, _)| n == d),
                None => defs.iter().find(|(n, _)| n == "main").or(defs.last()),
            };
            pick.map(|(_, t)| t.clone()).ok_or_else(|| {
                input(
                    path.display(),
                    match &src.def {
                        Some(d) => format!("no definition `{}`", d),
                        None => "no definitions".to_string(),
                    },
                )
            })
        }
    }
}

fn lam(cmd: &LamCommand, run: &mut Run) -> Result<i32, Fail> {
    match cmd {
        LamCommand::Run { src, fuel } => {
            let t = lam_term(src)?;
            match normalize_untyped(&t, *fuel) {
                Ok(n) => {
                    run.out(n.to_string());
                    if let Ok(k) = church_decode_normal(&n) {
                        run.report.verdict = Some(format!("church numeral {}", k));
                        run.out(format!("church numeral: {}", k));
                    }
                    Ok(EXIT_OK)
                }
                Err(e @ (LambdaError::Fuel { .. } | LambdaError::TooLarge(_))) => {
                    Ok(run.verdict(format!("unknown: {}", e), EXIT_UNKNOWN))
                }
                Err(e) => Err(input("lam run", e)),
            }
        }
        LamCommand::Ski { src } => {
            let t = lam_term(src)?;
            run.out(ski_eliminate(&t).to_string());
            Ok(EXIT_OK)
        }
        LamCommand::Church { n } => {
            run.out(church_encode(*n).to_string());
            Ok(EXIT_OK)
        }
    }
}

fn lin(cmd: &LinCommand, run: &mut Run) -> Result<i32, Fail> {
    match cmd {
        LinCommand::Cpvp { theory, term } => {
            let th = parse_lin_theory(&read(theory)?).map_err(|e| input(theory.display(), e))?;
            let t = parse_lin_term(term, &th).map_err(|e| input(term, e))?;
            let (cp, vp) = cpvp(&t).map_err(|e| input(term, e))?;
            run.out(format!("cp: {}", cp));
            run.out(format!("vp: {}", vp));
            Ok(EXIT_OK)
        }
        LinCommand::Eq {
            theory,
            lhs,
            rhs,
            combinators,
        } => {
            let th = parse_lin_theory(&read(theory)?).map_err(|e| input(theory.display(), e))?;
            let v = if *combinators {
                let f = parse_combinator(lhs, &th).map_err(|e| input(lhs, e))?;
                let g = parse_combinator(rhs, &th).map_err(|e| input(rhs, e))?;
                lin_equiv_combinators(&f, &g)
            } else {
                let s = parse_lin_term(lhs, &th).map_err(|e| input(lhs, e))?;
                let t = parse_lin_term(rhs, &th).map_err(|e| input(rhs, e))?;
                lin_equiv_terms(&s, &t)
            }
            .map_err(|e| input("lin eq", e))?;
            Ok(match v {
                LinEquiv::Equal => run.verdict("equal", EXIT_OK),
                LinEquiv::NotEqual(why) => {
                    run.verdict(format!("not equal: {}", why), EXIT_NOT_EQUAL)
                }
                LinEquiv::Unknown(why) => run.verdict(format!("unknown: {}", why), EXIT_UNKNOWN),
            })
        }
    }
}
