//! Command-line front end: term operations, bounded reduction searches,
//! point-expression queries, denotations, the law suites, lattice checks, and
//! the exact-oracle gates, all scriptable with deterministic output.
//!
//! Exit codes: 0 = success / Yes / all-pass, 1 = No / refuted,
//! 2 = Unknown / undecided, 3 = usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::rc::Rc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nomlam::atoms::{Atom, Perm};
use nomlam::lattice::{check_duality, parse_lattice_file, random_poset, FiniteDL};
use nomlam::nominal::Nominal;
use nomlam::opens::{check_open_laws, denote, denote_leq, open_law_instances};
use nomlam::oracle::{build_universe, validate, UniverseCaps};
use nomlam::points::{
    check_point_laws, law_corpus, member, normalize, parse_point_expr, subset, LawFamily,
    PointExpr,
};
use nomlam::report::Report;
use nomlam::terms::{check_sigma_axioms, parse, subst, Term};
use nomlam::theory::{eq_check, parse_rule_file, reach, successors, Budget, Decision3, Engine, Theory};

#[derive(Parser)]
#[command(name = "nomlam", version, about = "nominal lambda-calculus workbench")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Config {
    /// Search depth bound
    #[arg(long, global = true, default_value_t = 6)]
    depth: usize,
    /// Largest term size a search may keep
    #[arg(long = "max-size", global = true, default_value_t = 60)]
    max_size: usize,
    /// Largest number of search states
    #[arg(long = "max-frontier", global = true, default_value_t = 20_000)]
    max_frontier: usize,
    /// Random seed (NOMLAM_SEED overrides)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Beta-contraction on or off
    #[arg(long, global = true, value_enum, default_value_t = OnOff::On)]
    beta: OnOff,
    /// Eta-expansion on or off
    #[arg(long, global = true, value_enum, default_value_t = OnOff::On)]
    eta: OnOff,
    /// Symmetric (equality) closure on or off
    #[arg(long, global = true, value_enum, default_value_t = OnOff::Off)]
    equality: OnOff,
    /// Rule file with extra rewrite rules and theory flags
    #[arg(long, global = true)]
    rules: Option<PathBuf>,
    /// Output mode
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,
    /// Print terms with canonically renamed binders (always the case)
    #[arg(long, global = true)]
    canonical: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

impl OnOff {
    fn as_bool(self) -> bool {
        self == OnOff::On
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide alpha-equivalence of two terms
    Alpha { s: String, t: String },
    /// Capture-avoiding substitution S[a := U]
    Subst { s: String, a: String, u: String },
    /// Apply a permutation, e.g. "(a b)(c d)", to a term
    Act { perm: String, s: String },
    /// List the one-step reducts of a term
    Reduce { s: String },
    /// Bounded search: does S reduce to T?
    Reach { s: String, t: String },
    /// Bounded search in the symmetric closure: S = T?
    Eq { s: String, t: String },
    /// Three-valued membership of a term in a point expression
    Member { t: String, expr: String },
    /// Three-valued inclusion between point expressions
    Subset { e1: String, e2: String },
    /// Normalize a point expression towards generator form
    Normalize { expr: String },
    /// Denotation of a term as a compact open set
    Denote { s: String },
    /// Denotational order: is [S] included in [T]?
    Leq { s: String, t: String },
    /// Run a law suite
    Laws {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Instances per law (sigma suite)
        #[arg(long, default_value_t = 500)]
        cases: usize,
        /// Corpus size (point suites)
        #[arg(long, default_value_t = 12)]
        corpus: usize,
    },
    /// Finite distributive lattice checks
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Exact finite-universe oracle
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Sigma,
    Points,
    Opens,
    #[value(name = "appendixA", alias = "appendixa")]
    AppendixA,
    #[value(name = "appendixB", alias = "appendixb")]
    AppendixB,
    All,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Check the duality suite on a lattice from a file
    Check { file: PathBuf },
    /// Check seeded random Birkhoff lattices
    Random {
        #[arg(long = "poset-size", default_value_t = 5)]
        poset_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Build a reduction-closed universe from seed terms (one per line)
    Build {
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long = "require-closed")]
        require_closed: bool,
        #[arg(long = "max-terms", default_value_t = 64)]
        max_terms: usize,
    },
    /// Validate symbolic rules against exact semantics on the built-in corpus
    Validate {
        #[arg(long)]
        law: Option<String>,
    },
}

struct Ctx {
    theory: Rc<Theory>,
    budget: Budget,
    seed: u64,
    output: Output,
}

fn build_ctx(config: &Config) -> Result<Ctx, String> {
    let mut theory = match &config.rules {
        Some(path) => {
            let src = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_rule_file(&src).map_err(|e| e.to_string())?
        }
        None => Theory::beta_eta(),
    };
    if config.rules.is_none() {
        theory.beta = config.beta.as_bool();
        theory.eta_expansion = config.eta.as_bool();
        theory.equality_mode = config.equality.as_bool();
    } else {
        // explicit command-line flags override file headers
        if config.equality.as_bool() {
            theory.equality_mode = true;
        }
    }
    let seed = std::env::var("NOMLAM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(config.seed);
    Ok(Ctx {
        theory: Rc::new(theory),
        budget: Budget::new(config.depth, config.max_size, config.max_frontier),
        seed,
        output: config.output,
    })
}

fn parse_term(src: &str) -> Result<Term, String> {
    parse(src).map_err(|e| e.to_string())
}

fn parse_atom(src: &str) -> Result<Atom, String> {
    Atom::parse(src.trim()).ok_or_else(|| format!("'{src}' is not an atom name"))
}

fn parse_perm(src: &str) -> Result<Perm, String> {
    // reuse the point-expression permutation grammar
    let wrapped = format!("perm({src},up(a))");
    match parse_point_expr(&wrapped) {
        Ok(PointExpr::PermAct(p, _)) => Ok(p),
        Ok(_) => Err("expected a permutation".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_expr(src: &str) -> Result<PointExpr, String> {
    parse_point_expr(src).map_err(|e| e.to_string())
}

fn decision_exit(d: &Decision3) -> u8 {
    match d {
        Decision3::Yes { .. } => 0,
        Decision3::No => 1,
        Decision3::Unknown { .. } => 2,
    }
}

fn print_decision(d: &Decision3, verbose_path: bool) {
    println!("{d}");
    if verbose_path {
        if let Decision3::Yes { path, .. } = d {
            for (i, t) in path.iter().enumerate() {
                println!("  step {i}: {t}");
            }
        }
    }
}

fn emit_report(ctx: &Ctx, header: &str, report: &Report) -> u8 {
    println!("# {header}");
    println!("# theory: {}", ctx.theory.describe());
    match ctx.output {
        Output::Records => {
            for line in report.lines() {
                println!("{line}");
            }
        }
        Output::Human => {
            for line in report.lines() {
                println!("{line}");
            }
        }
    }
    println!("# {}", report.summary());
    report.exit_code() as u8
}

fn probe_terms(e1: &PointExpr, e2: &PointExpr) -> Vec<Term> {
    let mut probes: Vec<Term> = Vec::new();
    for e in [e1, e2] {
        if let Some(gens) = normalize(e).as_canonical() {
            for g in gens {
                if !probes.contains(g) {
                    probes.push(g.clone());
                }
            }
        }
        for a in e.support() {
            let t = Term::var(a);
            if !probes.contains(&t) {
                probes.push(t);
            }
        }
    }
    probes
}

fn run(cli: Cli) -> Result<u8, String> {
    let ctx = build_ctx(&cli.config)?;
    match cli.cmd {
        Cmd::Alpha { s, t } => {
            let s = parse_term(&s)?;
            let t = parse_term(&t)?;
            let eq = s == t;
            println!("{}", if eq { "alpha-equal" } else { "distinct" });
            Ok(if eq { 0 } else { 1 })
        }
        Cmd::Subst { s, a, u } => {
            let s = parse_term(&s)?;
            let a = parse_atom(&a)?;
            let u = parse_term(&u)?;
            println!("{}", subst(&s, a, &u));
            Ok(0)
        }
        Cmd::Act { perm, s } => {
            let pi = parse_perm(&perm)?;
            let s = parse_term(&s)?;
            println!("{}", s.act(&pi));
            Ok(0)
        }
        Cmd::Reduce { s } => {
            let s = parse_term(&s)?;
            let (succ, pruned) = successors(&ctx.theory, &s, &ctx.budget);
            for t in &succ {
                println!("{t}");
            }
            if pruned {
                println!("# pruned (size bound)");
            }
            Ok(0)
        }
        Cmd::Reach { s, t } => {
            let s = parse_term(&s)?;
            let t = parse_term(&t)?;
            let d = reach(&ctx.theory, &s, &t, &ctx.budget).map_err(|e| e.to_string())?;
            print_decision(&d, true);
            Ok(decision_exit(&d))
        }
        Cmd::Eq { s, t } => {
            let s = parse_term(&s)?;
            let t = parse_term(&t)?;
            let d = eq_check(&ctx.theory, &s, &t, &ctx.budget).map_err(|e| e.to_string())?;
            print_decision(&d, false);
            Ok(decision_exit(&d))
        }
        Cmd::Member { t, expr } => {
            let t = parse_term(&t)?;
            let e = parse_expr(&expr)?;
            let mut engine =
                Engine::new(Rc::clone(&ctx.theory), ctx.budget).map_err(|e| e.to_string())?;
            let d = member(&mut engine, &t, &e);
            print_decision(&d, false);
            Ok(decision_exit(&d))
        }
        Cmd::Subset { e1, e2 } => {
            let e1 = parse_expr(&e1)?;
            let e2 = parse_expr(&e2)?;
            let mut engine =
                Engine::new(Rc::clone(&ctx.theory), ctx.budget).map_err(|e| e.to_string())?;
            let probes = probe_terms(&e1, &e2);
            let d = subset(&mut engine, &e1, &e2, &probes);
            print_decision(&d, false);
            Ok(decision_exit(&d))
        }
        Cmd::Normalize { expr } => {
            let e = parse_expr(&expr)?;
            println!("{}", normalize(&e));
            Ok(0)
        }
        Cmd::Denote { s } => {
            let s = parse_term(&s)?;
            let mut engine =
                Engine::new(Rc::clone(&ctx.theory), ctx.budget).map_err(|e| e.to_string())?;
            let d = denote(&mut engine, &s);
            println!("{d}");
            Ok(0)
        }
        Cmd::Leq { s, t } => {
            let s = parse_term(&s)?;
            let t = parse_term(&t)?;
            let mut engine =
                Engine::new(Rc::clone(&ctx.theory), ctx.budget).map_err(|e| e.to_string())?;
            let d = denote_leq(&mut engine, &s, &t);
            print_decision(&d, false);
            Ok(decision_exit(&d))
        }
        Cmd::Laws {
            suite,
            cases,
            corpus,
        } => {
            let mut report = Report::new();
            let mut headers: Vec<&str> = Vec::new();
            let corpus_terms = law_corpus(ctx.seed, corpus);
            let mut engine =
                Engine::new(Rc::clone(&ctx.theory), ctx.budget).map_err(|e| e.to_string())?;
            if matches!(suite, Suite::Sigma | Suite::All) {
                headers.push(
                    "sigma: sigma-a sigma-id sigma-fresh sigma-alpha sigma-sigma \
                     rename-is-swap fresh-after-subst swap-via-subst oracle-agreement",
                );
                report.merge(check_sigma_axioms(ctx.seed, cases));
            }
            if matches!(suite, Suite::Points | Suite::All) {
                headers.push(
                    "points: app-principal forall-ppa-lam subst-principal subst-nu-char \
                     subst-freshens subst-meet subst-app amgis-amgis sigma-fresh-members \
                     subst-ppa-distrib",
                );
                report.merge(check_point_laws(
                    &mut engine,
                    &corpus_terms,
                    &[LawFamily::Points],
                    "points",
                ));
            }
            if matches!(suite, Suite::Opens | Suite::All) {
                headers.push(
                    "opens: beta-opens eta-opens adjoint-counit adjoint-unit unit-laws \
                     app-join-distrib subst-join-commute separation",
                );
                let instances = open_law_instances(ctx.seed, 12);
                report.merge(check_open_laws(&mut engine, &instances));
            }
            if matches!(suite, Suite::AppendixA | Suite::All) {
                headers.push("appendixA: forall-alpha forall-meet forall-extends");
                report.merge(check_point_laws(
                    &mut engine,
                    &corpus_terms,
                    &[LawFamily::ForallAxioms],
                    "appendixA",
                ));
            }
            if matches!(suite, Suite::AppendixB | Suite::All) {
                headers.push(
                    "appendixB: exists-shrinks exists-sigma-fresh forall-app exists-app",
                );
                report.merge(check_point_laws(
                    &mut engine,
                    &corpus_terms,
                    &[LawFamily::Appendix],
                    "appendixB",
                ));
            }
            let header = format!(
                "laws seed={} cases={} corpus={}\n# {}",
                ctx.seed,
                cases,
                corpus,
                headers.join("\n# ")
            );
            Ok(emit_report(&ctx, &header, &report))
        }
        Cmd::Lattice { cmd } => match cmd {
            LatticeCmd::Check { file } => {
                let src = fs::read_to_string(&file)
                    .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
                let lattice = parse_lattice_file(&src).map_err(|e| e.to_string())?;
                let report = check_duality(&lattice).map_err(|e| e.to_string())?;
                Ok(emit_report(
                    &ctx,
                    &format!("lattice check {} ({} elements)", file.display(), lattice.size()),
                    &report,
                ))
            }
            LatticeCmd::Random {
                poset_size,
                seed,
                count,
            } => {
                let mut report = Report::new();
                let mut nonce = 0u64;
                let mut produced = 0usize;
                while produced < count {
                    let poset = random_poset(poset_size, seed.wrapping_add(nonce));
                    nonce += 1;
                    let lattice = FiniteDL::birkhoff_from_poset(&poset);
                    if lattice.size() > 32 {
                        continue;
                    }
                    let mut sub = check_duality(&lattice).map_err(|e| e.to_string())?;
                    for r in &mut sub.records {
                        r.case = format!("{}@{}", r.case, produced);
                    }
                    report.merge(sub);
                    produced += 1;
                }
                Ok(emit_report(
                    &ctx,
                    &format!("lattice random poset-size={poset_size} seed={seed} count={count}"),
                    &report,
                ))
            }
        },
        Cmd::Oracle { cmd } => match cmd {
            OracleCmd::Build {
                seeds,
                require_closed,
                max_terms,
            } => {
                let src = fs::read_to_string(&seeds)
                    .map_err(|e| format!("cannot read {}: {e}", seeds.display()))?;
                let mut terms = Vec::new();
                for (i, line) in src.lines().enumerate() {
                    let line = line.split('#').next().unwrap_or("").trim();
                    if line.is_empty() {
                        continue;
                    }
                    terms.push(
                        parse(line).map_err(|e| format!("seed line {}: {e}", i + 1))?,
                    );
                }
                let caps = UniverseCaps {
                    max_terms,
                    max_term_size: ctx.budget.max_term_size,
                };
                let universe =
                    build_universe(Rc::clone(&ctx.theory), &terms, caps, require_closed)
                        .map_err(|e| e.to_string())?;
                println!("# theory: {}", ctx.theory.describe());
                println!(
                    "# carrier: {} terms, {}",
                    universe.len(),
                    if universe.closed { "closed" } else { "not closed" }
                );
                for t in universe.carrier() {
                    println!("{t}");
                }
                Ok(if universe.closed { 0 } else { 2 })
            }
            OracleCmd::Validate { law } => {
                let report = validate(law.as_deref());
                Ok(emit_report(
                    &ctx,
                    &format!("oracle validate law={}", law.as_deref().unwrap_or("all")),
                    &report,
                ))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            if e.use_stderr() {
                let _ = e.print();
                return ExitCode::from(3);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
