//! `relcon`: command-line front end.
//!
//! Every command ends with a line `RESULT <verdict>`. Exit codes: 0 holds or
//! valid, 1 fails or invalid, 2 usage or input error, 3 unknown within bounds.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use relcon::laws::{classify, Law, LawOutcome, SampleDomain, Subject};
use relcon::semantics::{
    abelian_oracle, abelian_symmetric, AbelianKind, AbelianOracle, AbelianSymmetric, CountingRelation,
    DesignationPreserving, Matrix, MatrixValuation, DEFAULT_GRID,
};
use relcon::symmetric::{
    check_derivation, derive_search, symmetrize, tarskian, DerivabilityOracle, Derivation, DerivationVerdict,
    DeriveBounds, Symmetrization, DEFAULT_PARTITION_CAP,
};
use relcon::syntax::{numeral, parse_formula, parse_multiset, AxiomaticSystem, Formula, Multiset};
use relcon::theory::{quotient_check, th_add, th_contains, th_eq, th_leq, SharedOracle, TheoryHandle};
use relcon::treeproof::{search, verify_report, ProofTree, ProvabilityOracle, RelevanceVerdict, SearchBounds};
use relcon::{laws::Companion, ConsequenceOracle, Verdict};

#[derive(Parser)]
#[command(name = "relcon", version, about = "Relevant consequence relations over finite multisets")]
struct Cli {
    /// Seed for sampled law checks.
    #[arg(long, global = true, env = "RELCON_SEED", default_value_t = relcon::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and print canonically a formula, multiset, system, matrix, proof or derivation.
    Parse(ParseArgs),
    /// Classify a tree proof: invalid, plain, weakly_relevant, relevant or strongly_relevant.
    CheckProof(CheckProofArgs),
    /// Search for a smallest relevant tree proof.
    Search(SearchArgs),
    /// Check a symmetric derivation: invalid, plain or relevant.
    CheckDerivation(CheckDerivationArgs),
    /// Search for a shortest relevant derivation.
    Derive(DeriveArgs),
    /// Decide a multiple-conclusion consecution through a single-conclusion oracle.
    Symmetrize(SymmetrizeArgs),
    /// Evaluate a formula in a finite matrix.
    MatrixEval(MatrixEvalArgs),
    /// Search a finite matrix for a valuation refuting a formula.
    MatrixRefute(MatrixRefuteArgs),
    /// Decide an integer-valued Abelian consequence.
    Abelian(AbelianArgs),
    /// Check structural laws of an oracle over a finite domain.
    Laws(LawsArgs),
    /// Operations on principal theories.
    Theory(TheoryArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ParseArgs {
    #[arg(long, allow_hyphen_values = true)]
    formula: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    multiset: Option<String>,
    #[arg(long)]
    system: Option<PathBuf>,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    proof: Option<PathBuf>,
    #[arg(long)]
    derivation: Option<PathBuf>,
}

#[derive(Args)]
struct CheckProofArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    premises: String,
    #[arg(long, allow_hyphen_values = true)]
    goal: String,
    #[arg(long)]
    proof: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, allow_hyphen_values = true, default_value = "[]")]
    premises: String,
    #[arg(long, allow_hyphen_values = true)]
    goal: String,
    #[arg(long, default_value_t = SearchBounds::default().max_nodes)]
    max_nodes: usize,
    #[arg(long, default_value_t = SearchBounds::default().max_formula_size)]
    max_formula_size: usize,
    /// Connective layers added to the subformula pool.
    #[arg(long, default_value_t = SearchBounds::default().max_layers)]
    max_layers: usize,
    /// Write the proof here instead of printing it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckDerivationArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    premises: String,
    #[arg(long, allow_hyphen_values = true)]
    conclusions: String,
    #[arg(long)]
    derivation: PathBuf,
}

#[derive(Args)]
struct DeriveArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    premises: String,
    #[arg(long, allow_hyphen_values = true)]
    conclusions: String,
    /// Longest derivation, counted in multisets.
    #[arg(long, default_value_t = DeriveBounds::default().max_steps)]
    max_steps: usize,
    #[arg(long, default_value_t = DeriveBounds::default().max_formula_size)]
    max_formula_size: usize,
    #[arg(long, default_value_t = DeriveBounds::default().max_layers)]
    max_layers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleOracle {
    Z,
    P,
    Leq,
    /// The least monotone relation containing z.
    Companion,
}

#[derive(Args)]
struct SymmetrizeArgs {
    #[arg(long, value_enum)]
    oracle: SingleOracle,
    #[arg(long, allow_hyphen_values = true)]
    premises: String,
    #[arg(long, allow_hyphen_values = true)]
    conclusions: String,
    /// Read the conclusions as a set: each one follows from all premises.
    #[arg(long)]
    tarskian: bool,
    /// Ordered partitions beyond this count give unknown.
    #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
    cap: u64,
}

#[derive(Args)]
struct MatrixEvalArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    formula: String,
    /// Assignments like `a=2,b=0`, by value name or index.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    valuation: String,
}

#[derive(Args)]
struct MatrixRefuteArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    formula: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum AbelianKindArg {
    Z,
    P,
    Leq,
    /// Sum of premises at most sum of conclusions.
    Sym,
}

#[derive(Args)]
struct AbelianArgs {
    #[arg(long, value_enum)]
    kind: AbelianKindArg,
    #[arg(long, allow_hyphen_values = true, default_value = "[]")]
    premises: String,
    /// Single conclusion, for z, p and leq.
    #[arg(long, allow_hyphen_values = true)]
    goal: Option<String>,
    /// Conclusion multiset, for sym.
    #[arg(long, allow_hyphen_values = true)]
    conclusions: Option<String>,
    /// Valuations range over [-radius, radius] when atoms occur.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    radius: i64,
}

#[derive(Args)]
struct LawsArgs {
    #[arg(value_parser = ["check"])]
    action: String,
    /// z, p, leq, companion, counting, sym, tarski or system:<file>.
    #[arg(long, allow_hyphen_values = true)]
    oracle: String,
    /// `LO..HI@K` for numerals, or `[f, g, ...]@K`; K bounds multiset size.
    #[arg(long, allow_hyphen_values = true, default_value = "-3..3@3")]
    dom: String,
    /// `all` or a comma-separated list of law names.
    #[arg(long, allow_hyphen_values = true, default_value = "all")]
    laws: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoryAction {
    Eq,
    Leq,
    Contains,
    Add,
    /// Check the quotient construction over `--dom`.
    Quotient,
}

#[derive(Args)]
struct TheoryArgs {
    #[arg(value_enum)]
    action: TheoryAction,
    /// z, p, leq, companion, counting, sym, tarski or system:<file>.
    #[arg(long, allow_hyphen_values = true)]
    oracle: String,
    #[arg(long, num_args = 1..=2)]
    gens: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    member: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "-3..3@3")]
    dom: String,
}

/// The report printed before the `RESULT` line, and the exit code.
struct Outcome {
    lines: Vec<String>,
    result: String,
    code: u8,
}

impl Outcome {
    fn new(result: impl Into<String>, code: u8) -> Self {
        Outcome { lines: vec![], result: result.into(), code }
    }

    fn verdict(v: Verdict) -> Self {
        Outcome::new(v.to_string(), code_of(v))
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }
}

fn code_of(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::Unknown => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            println!("RESULT usage");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(o) => {
            for l in &o.lines {
                println!("{l}");
            }
            println!("RESULT {}", o.result);
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            println!("RESULT error");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn system(path: &Path) -> Result<AxiomaticSystem> {
    Ok(AxiomaticSystem::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?)
}

fn formula(s: &str) -> Result<Formula> {
    parse_formula(s).map_err(|e| anyhow!("formula `{s}`: {e}"))
}

fn multiset(s: &str) -> Result<Multiset> {
    parse_multiset(s).map_err(|e| anyhow!("multiset `{s}`: {e}"))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Parse(a) => parse_cmd(a),
        Command::CheckProof(a) => {
            let sys = system(&a.system)?;
            let tree = ProofTree::from_json(&read(&a.proof)?)?;
            let r = verify_report(&tree, &sys, &multiset(&a.premises)?, &formula(&a.goal)?);
            let mut o = Outcome::new(r.verdict.to_string(), u8::from(r.verdict < RelevanceVerdict::Relevant))
                .line(format!("LEAVES {}", r.leaves))
                .line(format!("EXCESS {}", r.excess))
                .line(format!("UNUSED {}", r.unused));
            if let Some(p) = r.problem {
                o = o.line(format!("PROBLEM {p}"));
            }
            Ok(o)
        }
        Command::Search(a) => {
            let sys = system(&a.system)?;
            let bounds = SearchBounds { max_nodes: a.max_nodes, max_formula_size: a.max_formula_size, max_layers: a.max_layers };
            let bounds_line = format!(
                "BOUNDS max_nodes={} max_formula_size={} max_layers={}",
                a.max_nodes, a.max_formula_size, a.max_layers
            );
            match search(&sys, &multiset(&a.premises)?, &formula(&a.goal)?, bounds) {
                Some(t) => {
                    let o = Outcome::new("proved", 0).line(bounds_line).line(format!("NODES {}", t.size()));
                    Ok(emit(o, t.to_json(), a.out.as_deref())?)
                }
                None => Ok(Outcome::new("unknown", 3).line(bounds_line)),
            }
        }
        Command::CheckDerivation(a) => {
            let sys = system(&a.system)?;
            let d = Derivation::from_json(&read(&a.derivation)?)?;
            let c = check_derivation(&d, &sys, &multiset(&a.premises)?, &multiset(&a.conclusions)?);
            let mut o = Outcome::new(c.verdict.to_string(), u8::from(c.verdict != DerivationVerdict::Relevant))
                .line(format!("STEPS {}", d.steps.len()));
            if let Some(p) = c.problem {
                o = o.line(format!("PROBLEM {p}"));
            }
            Ok(o)
        }
        Command::Derive(a) => {
            let sys = system(&a.system)?;
            let bounds = DeriveBounds { max_steps: a.max_steps, max_formula_size: a.max_formula_size, max_layers: a.max_layers };
            let bounds_line = format!(
                "BOUNDS max_steps={} max_formula_size={} max_layers={}",
                a.max_steps, a.max_formula_size, a.max_layers
            );
            match derive_search(&sys, &multiset(&a.premises)?, &multiset(&a.conclusions)?, bounds) {
                Some(d) => {
                    let o = Outcome::new("derived", 0).line(bounds_line).line(format!("STEPS {}", d.steps.len()));
                    Ok(emit(o, d.to_json(), a.out.as_deref())?)
                }
                None => Ok(Outcome::new("unknown", 3).line(bounds_line)),
            }
        }
        Command::Symmetrize(a) => {
            let o = single_oracle(a.oracle);
            let (g, d) = (multiset(&a.premises)?, multiset(&a.conclusions)?);
            let v = if a.tarskian { tarskian(&*o, &g, &d) } else { symmetrize(&*o, &g, &d, a.cap) };
            Ok(Outcome::verdict(v))
        }
        Command::MatrixEval(a) => {
            let m = Matrix::parse(&read(&a.matrix)?)?;
            let v = valuation(&m, &a.valuation)?;
            let i = m.eval(&v, &formula(&a.formula)?)?;
            let designated = m.is_designated(i);
            let o = Outcome::verdict(Verdict::from_bool(designated))
                .line(format!("VALUE {} {}", m.values[i], if designated { "designated" } else { "undesignated" }));
            Ok(o)
        }
        Command::MatrixRefute(a) => {
            let m = Matrix::parse(&read(&a.matrix)?)?;
            match m.countermodel_search(&formula(&a.formula)?)? {
                Some(v) => Ok(Outcome::new("refuted", 0).line(format!("COUNTERMODEL {}", m.show_valuation(&v)))),
                None => Ok(Outcome::new("valid", 1)),
            }
        }
        Command::Abelian(a) => {
            let g = multiset(&a.premises)?;
            let v = match (a.kind, a.goal, a.conclusions) {
                (AbelianKindArg::Sym, None, Some(d)) => abelian_symmetric(&g, &multiset(&d)?, a.radius)?,
                (AbelianKindArg::Sym, _, _) => bail!("--kind sym takes --conclusions"),
                (k, Some(goal), None) => {
                    let kind = match k {
                        AbelianKindArg::Z => AbelianKind::Z,
                        AbelianKindArg::P => AbelianKind::P,
                        AbelianKindArg::Leq => AbelianKind::Leq,
                        AbelianKindArg::Sym => unreachable!(),
                    };
                    abelian_oracle(kind, &g, &formula(&goal)?, a.radius)?
                }
                _ => bail!("single-conclusion kinds take --goal"),
            };
            Ok(Outcome::verdict(v))
        }
        Command::Laws(a) => laws_cmd(a, cli.seed),
        Command::Theory(a) => theory_cmd(a),
    }
}

fn emit(o: Outcome, json: String, out: Option<&Path>) -> Result<Outcome> {
    match out {
        Some(p) => {
            fs::write(p, json + "\n").with_context(|| format!("writing {}", p.display()))?;
            Ok(o.line(format!("WROTE {}", p.display())))
        }
        None => Ok(o.line(json)),
    }
}

fn parse_cmd(a: ParseArgs) -> Result<Outcome> {
    let text = if let Some(f) = a.formula {
        formula(&f)?.to_string()
    } else if let Some(m) = a.multiset {
        multiset(&m)?.to_string()
    } else if let Some(p) = a.system {
        system(&p)?.to_string()
    } else if let Some(p) = a.matrix {
        Matrix::parse(&read(&p)?)?.to_string()
    } else if let Some(p) = a.proof {
        ProofTree::from_json(&read(&p)?)?.to_json()
    } else if let Some(p) = a.derivation {
        Derivation::from_json(&read(&p)?)?.to_json()
    } else {
        unreachable!("clap requires one input")
    };
    Ok(Outcome::new("ok", 0).line(text.trim_end()))
}

fn valuation(m: &Matrix, text: &str) -> Result<MatrixValuation> {
    let mut v = MatrixValuation::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| anyhow!("expected name=value, got `{part}`"))?;
        let idx = m
            .value_index(value.trim())
            .or_else(|| value.trim().parse::<usize>().ok().filter(|&i| i < m.values.len()))
            .ok_or_else(|| anyhow!("`{value}` is not a value of matrix {}", m.name))?;
        v.insert(name.trim().into(), idx);
    }
    Ok(v)
}

fn single_oracle(o: SingleOracle) -> Box<dyn ConsequenceOracle> {
    match o {
        SingleOracle::Z => Box::new(AbelianOracle::new(AbelianKind::Z)),
        SingleOracle::P => Box::new(AbelianOracle::new(AbelianKind::P)),
        SingleOracle::Leq => Box::new(AbelianOracle::new(AbelianKind::Leq)),
        SingleOracle::Companion => Box::new(Companion(AbelianOracle::new(AbelianKind::Z))),
    }
}

fn domain(spec: &str, seed: u64) -> Result<SampleDomain> {
    let (universe, size) = spec.rsplit_once('@').ok_or_else(|| anyhow!("domain `{spec}` needs `@<size>`"))?;
    let size: usize = size.trim().parse().with_context(|| format!("size in `{spec}`"))?;
    let universe = universe.trim();
    let formulas: Vec<Formula> = if universe.starts_with('[') {
        multiset(universe)?.support().into_iter().collect()
    } else {
        let (lo, hi) = universe.split_once("..").ok_or_else(|| anyhow!("expected `LO..HI` or `[...]` in `{spec}`"))?;
        let (lo, hi): (i64, i64) = (lo.trim().parse()?, hi.trim().parse()?);
        (lo..=hi).map(numeral).collect()
    };
    let mut d = SampleDomain::new(formulas, size);
    d.seed = seed;
    Ok(d)
}

/// Theorems of the integer relations are the nonnegative terms, all entailed by whatever entails 0.
fn zero_basis() -> Option<Vec<Formula>> {
    Some(vec![numeral(0)])
}

fn subject(name: &str) -> Result<Subject<'static>> {
    Ok(match name {
        "z" => Subject::asymmetric(name, AbelianOracle::new(AbelianKind::Z)),
        "p" => Subject::asymmetric(name, AbelianOracle::new(AbelianKind::P)),
        "leq" => Subject::asymmetric(name, AbelianOracle::new(AbelianKind::Leq)),
        "companion" => Subject::asymmetric(name, Companion(AbelianOracle::new(AbelianKind::Z))),
        "counting" => Subject::symmetric(name, CountingRelation::default(), Some(vec![])),
        "sym" => Subject::symmetric(name, AbelianSymmetric::default(), zero_basis()),
        "tarski" => Subject::symmetric(name, DesignationPreserving::default(), zero_basis()),
        _ => match name.strip_prefix("system:") {
            Some(path) => {
                let sys = system(Path::new(path))?;
                if sys.symmetric {
                    Subject::symmetric(name, DerivabilityOracle { system: sys, bounds: DeriveBounds::default() }, None)
                } else {
                    Subject::asymmetric(name, ProvabilityOracle { system: sys, bounds: SearchBounds::default() })
                }
            }
            None => bail!("unknown oracle `{name}`"),
        },
    })
}

fn shared_oracle(name: &str) -> Result<SharedOracle> {
    let single = |k| -> SharedOracle { Arc::new(Symmetrization::new(AbelianOracle::new(k))) };
    Ok(match name {
        "z" => single(AbelianKind::Z),
        "p" => single(AbelianKind::P),
        "leq" => single(AbelianKind::Leq),
        "companion" => Arc::new(Symmetrization::new(Companion(AbelianOracle::new(AbelianKind::Z)))),
        "counting" => Arc::new(CountingRelation::default()),
        "sym" => Arc::new(AbelianSymmetric::default()),
        "tarski" => Arc::new(DesignationPreserving::default()),
        _ => match name.strip_prefix("system:") {
            Some(path) => {
                let sys = system(Path::new(path))?;
                if sys.symmetric {
                    Arc::new(DerivabilityOracle { system: sys, bounds: DeriveBounds::default() })
                } else {
                    Arc::new(Symmetrization::new(ProvabilityOracle { system: sys, bounds: SearchBounds::default() }))
                }
            }
            None => bail!("unknown oracle `{name}`"),
        },
    })
}

fn laws_cmd(a: LawsArgs, seed: u64) -> Result<Outcome> {
    let s = subject(&a.oracle)?;
    let dom = domain(&a.dom, seed)?;
    let wanted: Vec<Law> = if a.laws == "all" {
        Law::ALL.to_vec()
    } else {
        a.laws
            .split(',')
            .map(|n| Law::from_name(n.trim()).ok_or_else(|| anyhow!("unknown law `{n}`")))
            .collect::<Result<_>>()?
    };
    let c = classify(&s, &dom);
    let mut lines = vec![format!("{:<24} {:<10} {:<8} {}", "law", "form", "status", "detail")];
    let mut overall = Verdict::Holds;
    for r in c.results.iter().filter(|r| wanted.contains(&r.law)) {
        let form = match r.form {
            relcon::laws::Form::Asymmetric => "single",
            relcon::laws::Form::Symmetric => "multiple",
        };
        let (status, detail) = match &r.outcome {
            LawOutcome::Passed { exhaustive, instances } => {
                ("PASS", format!("{} {instances}", if *exhaustive { "exhaustive" } else { "sampled" }))
            }
            LawOutcome::Counterexample(i) => ("FAIL", i.to_string()),
            LawOutcome::Inconclusive { unknown } => ("UNKNOWN", format!("{unknown} undecided")),
        };
        lines.push(format!("{:<24} {form:<10} {status:<8} {detail}", r.law.name()));
        if r.form == s.form_for(r.law) {
            overall = overall.and(r.outcome.verdict());
        }
    }
    lines.extend(c.law_lines(s.primary).into_iter().filter(|l| {
        let name = l.split_whitespace().nth(1).unwrap_or("").trim_end_matches('^');
        Law::from_name(name).is_some_and(|law| wanted.contains(&law))
    }));
    lines.push(format!(
        "CLASS cr={} scr={} monotone={} contractive={} tarskian={}",
        c.is_cr, c.is_scr, c.is_monotone, c.is_contractive, c.is_tarskian
    ));
    for (m, status) in &c.meta {
        lines.push(format!("META {} {status:?}", m.name));
    }
    let mut o = Outcome::verdict(overall);
    o.lines = lines;
    Ok(o)
}

fn theory_cmd(a: TheoryArgs) -> Result<Outcome> {
    let oracle = shared_oracle(&a.oracle)?;
    if a.action == TheoryAction::Quotient {
        let dom = domain(&a.dom, relcon::DEFAULT_SEED)?;
        let r = quotient_check(&oracle, &dom.multisets());
        let mut o = Outcome::verdict(Verdict::all(r.checks.iter().map(|c| c.verdict)));
        o.lines = r.checks.iter().map(ToString::to_string).collect();
        o.lines.push(format!("MONOTONE oracle={} mapping={}", r.oracle_monotone, r.th_monotone));
        return Ok(o);
    }
    let handles: Vec<TheoryHandle> =
        a.gens.iter().map(|g| Ok(TheoryHandle::new(oracle.clone(), multiset(g)?))).collect::<Result<_>>()?;
    let two = || -> Result<(&TheoryHandle, &TheoryHandle)> {
        match handles.as_slice() {
            [t, s] => Ok((t, s)),
            _ => bail!("this action takes two --gens"),
        }
    };
    match a.action {
        TheoryAction::Eq => {
            let (t, s) = two()?;
            Ok(Outcome::verdict(th_eq(t, s)?))
        }
        TheoryAction::Leq => {
            let (t, s) = two()?;
            Ok(Outcome::verdict(th_leq(t, s)?))
        }
        TheoryAction::Add => {
            let (t, s) = two()?;
            Ok(Outcome::new("ok", 0).line(th_add(t, s)?.to_string()))
        }
        TheoryAction::Contains => {
            let [t] = handles.as_slice() else { bail!("contains takes one --gens") };
            let member = a.member.as_deref().ok_or_else(|| anyhow!("contains needs --member"))?;
            Ok(Outcome::verdict(th_contains(t, &multiset(member)?)))
        }
        TheoryAction::Quotient => unreachable!("handled above"),
    }
}
