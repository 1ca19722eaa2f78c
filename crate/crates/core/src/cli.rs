//! Command-line front end. Every command emits JSON or text on stdout; the
//! exit code is 0 on success, 2 when a verification ran but failed, and 1 for
//! usage and validation errors.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{self, ACounts, ParityCase, PeriodExpression, Variant};
use crate::error::{Error, Result};
use crate::hodge::{self, BettiSplit, CriticalityResult, FiltrationProfile, HodgeData, Sign, TensorData};
use crate::invariant::{self, AdmissibilityType, InvariantPolynomial};
use crate::oracle::{self, Adjudication, Discovery, OracleConfig, VerificationReport};
use crate::sampling::DEFAULT_BOUND;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantChoice {
    Ledger,
    Theorem,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "motive-periods",
    version,
    about = "Period monomials for tensor products of motives with unit Hodge numbers"
)]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Hodge data of M: a file, `-` for stdin, or inline JSON.
    #[arg(long, global = true)]
    pub motive_a: Option<String>,
    /// Hodge data of M'.
    #[arg(long, global = true)]
    pub motive_b: Option<String>,
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = VariantChoice::Auto)]
    pub variant: VariantChoice,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Entries of random period matrices are drawn from `-bound..=bound`.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti splits, filtration profiles, criticality and counts.
    Analyze,
    /// Predicted monomials for c+ and c- of the tensor product.
    Formula,
    /// Exact randomized check of the monomials.
    Verify,
    /// Exact randomized check of the c+/c- ratio relation.
    Ratio,
    /// Fits integer exponents from samples and confirms them exactly.
    Discover,
    /// Constructs the invariant polynomial of an admissibility type.
    Invariant {
        /// Admissibility type: a file, `-` for stdin, or inline JSON.
        #[arg(long = "type")]
        ty: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotiveSummary {
    pub hodge: HodgeData,
    pub split: BettiSplit,
    pub profile: FiltrationProfile,
    pub criticality: CriticalityResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSummary {
    pub profile: FiltrationProfile,
    pub split: BettiSplit,
    pub criticality: CriticalityResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub motive_a: MotiveSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motive_b: Option<MotiveSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<ParityCase>,
    /// Common prefix index when the tensor has even dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_star: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts_plus: Option<ACounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts_minus: Option<ACounts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaEntry {
    pub variant: Variant,
    pub c_plus: PeriodExpression,
    pub c_minus: PeriodExpression,
    pub c_plus_text: String,
    pub c_minus_text: String,
    pub type_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaOutput {
    pub case: ParityCase,
    pub formulas: Vec<FormulaEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscoverOutput {
    pub discovery: Discovery,
    pub adjudication: Adjudication,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerifyOutput {
    Single(VerificationReport),
    Both(Adjudication),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match JobConfig::try_parse_from(args) {
        Ok(cfg) => execute(&cfg, stdin),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            }
        }
    }
}

pub fn execute(cfg: &JobConfig, stdin: &mut dyn Read) -> Outcome {
    match dispatch(cfg, stdin) {
        Ok((passed, stdout)) => Outcome {
            code: if passed { 0 } else { 2 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

struct Input<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Input<'_> {
    /// `-` reads stdin, text starting with `{` is inline JSON, anything else is a path.
    fn load<T: serde::de::DeserializeOwned>(&mut self, arg: &str) -> Result<T> {
        let text = if arg == "-" {
            if self.stdin_used {
                return Err(Error::Parse("stdin can feed only one input".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            s
        } else if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
    }

    fn motive(&mut self, arg: &Option<String>, flag: &str) -> Result<HodgeData> {
        let arg = arg
            .as_deref()
            .ok_or_else(|| Error::Parse(format!("--{flag} is required")))?;
        let h: HodgeData = self.load(arg)?;
        h.ensure_valid()?;
        Ok(h)
    }
}

fn dispatch(cfg: &JobConfig, stdin: &mut dyn Read) -> Result<(bool, String)> {
    let mut input = Input {
        stdin,
        stdin_used: false,
    };
    let oc = OracleConfig {
        trials: cfg.trials,
        seed: cfg.seed,
        bound: cfg.bound,
    };
    if oc.trials == 0 {
        return Err(Error::Precondition("--trials must be positive".into()));
    }
    if oc.bound <= 0 {
        return Err(Error::Precondition("--bound must be positive".into()));
    }
    let fmt = cfg.format;
    match &cfg.command {
        Command::Invariant { ty } => {
            let t: AdmissibilityType = input.load(ty)?;
            let p = invariant::construct_invariant(&t)?;
            Ok((true, render(fmt, &p, || invariant_text(&p))?))
        }
        Command::Analyze => {
            let h = input.motive(&cfg.motive_a, "motive-a")?;
            let h2 = cfg
                .motive_b
                .as_ref()
                .map(|_| input.motive(&cfg.motive_b, "motive-b"))
                .transpose()?;
            let a = analyze(&h, h2.as_ref())?;
            Ok((true, render(fmt, &a, || analysis_text(&a))?))
        }
        command => {
            let h = input.motive(&cfg.motive_a, "motive-a")?;
            let h2 = input.motive(&cfg.motive_b, "motive-b")?;
            match command {
                Command::Formula => {
                    let f = formulas(&h, &h2, cfg.variant)?;
                    Ok((true, render(fmt, &f, || formula_text(&f))?))
                }
                Command::Verify => {
                    let out = match cfg.variant {
                        VariantChoice::Ledger => {
                            VerifyOutput::Single(oracle::verify_theorem(&h, &h2, Variant::Ledger, &oc)?)
                        }
                        VariantChoice::Theorem => {
                            VerifyOutput::Single(oracle::verify_theorem(&h, &h2, Variant::Theorem, &oc)?)
                        }
                        VariantChoice::Auto => VerifyOutput::Both(oracle::adjudicate(&h, &h2, &oc)?),
                    };
                    let passed = match &out {
                        VerifyOutput::Single(r) => r.constant,
                        VerifyOutput::Both(a) => a.constant,
                    };
                    Ok((passed, render(fmt, &out, || verify_text(&out))?))
                }
                Command::Ratio => {
                    let r = oracle::verify_ratio_relation(&h, &h2, &oc)?;
                    Ok((r.constant, render(fmt, &r, || report_text(&r))?))
                }
                Command::Discover => {
                    let discovery = oracle::discover_exponents(&h, &h2, &oc)?;
                    let adjudication = oracle::adjudicate(&h, &h2, &oc)?;
                    let out = DiscoverOutput {
                        discovery,
                        adjudication,
                    };
                    Ok((out.discovery.confirmed, render(fmt, &out, || discover_text(&out))?))
                }
                Command::Analyze | Command::Invariant { .. } => unreachable!(),
            }
        }
    }
}

fn render<T: Serialize>(fmt: Format, value: &T, text: impl FnOnce() -> String) -> Result<String> {
    match fmt {
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Error::Parse(e.to_string())),
        Format::Text => Ok(text()),
    }
}

fn summary(h: &HodgeData) -> Result<MotiveSummary> {
    let split = h.betti_split()?;
    let profile = h.filtration_profile()?;
    let criticality = hodge::criticality(&profile, &split)?;
    Ok(MotiveSummary {
        hodge: h.clone(),
        split,
        profile,
        criticality,
    })
}

pub fn analyze(h: &HodgeData, h2: Option<&HodgeData>) -> Result<Analysis> {
    let mut out = Analysis {
        motive_a: summary(h)?,
        motive_b: None,
        tensor: None,
        case: None,
        k0: None,
        a: None,
        a_star: None,
        counts_plus: None,
        counts_minus: None,
    };
    let Some(h2) = h2 else { return Ok(out) };
    let t = TensorData::new(h, h2)?;
    out.motive_b = Some(summary(h2)?);
    out.case = Some(ParityCase::of(h, h2));
    if t.criticality.critical {
        if t.split.total() % 2 == 0 {
            let c = combinatorics::counts_for_sign(h, h2, Sign::Plus)?;
            out.k0 = t.criticality.k_plus;
            out.a = Some(c.a);
            out.a_star = Some(c.a_star);
        } else {
            let (p, m) = combinatorics::signed_counts(h, h2)?;
            out.counts_plus = Some(p);
            out.counts_minus = Some(m);
        }
    }
    out.tensor = Some(TensorSummary {
        profile: t.profile,
        split: t.split,
        criticality: t.criticality,
    });
    Ok(out)
}

pub fn formulas(h: &HodgeData, h2: &HodgeData, choice: VariantChoice) -> Result<FormulaOutput> {
    let variants: &[Variant] = match choice {
        VariantChoice::Ledger => &[Variant::Ledger],
        VariantChoice::Theorem => &[Variant::Theorem],
        VariantChoice::Auto => &Variant::ALL,
    };
    let mut entries = Vec::new();
    for &v in variants {
        let f = combinatorics::period_formula(h, h2, v)?;
        let type_consistent = combinatorics::type_check(h, h2, &f)?.consistent;
        entries.push(FormulaEntry {
            variant: v,
            c_plus_text: f.c_plus.to_string(),
            c_minus_text: f.c_minus.to_string(),
            c_plus: f.c_plus,
            c_minus: f.c_minus,
            type_consistent,
        });
    }
    Ok(FormulaOutput {
        case: ParityCase::of(h, h2),
        formulas: entries,
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn motive_text(name: &str, m: &MotiveSummary) -> String {
    format!(
        "{name}: {}  d+={} d-={}  critical={}\n",
        m.hodge, m.split.d_plus, m.split.d_minus, m.criticality.critical
    )
}

fn analysis_text(a: &Analysis) -> String {
    let mut s = motive_text("M", &a.motive_a);
    if let Some(b) = &a.motive_b {
        s += &motive_text("M'", b);
    }
    if let (Some(t), Some(case)) = (&a.tensor, a.case) {
        s += &format!(
            "tensor: jumps ({}) mults ({})  d+={} d-={}  critical={}  case={case}\n",
            join(&t.profile.jumps),
            join(&t.profile.mults),
            t.split.d_plus,
            t.split.d_minus,
            t.criticality.critical
        );
    }
    if let (Some(k0), Some(a_), Some(b)) = (a.k0, &a.a, &a.a_star) {
        s += &format!("k0={k0}  a=({})  a*=({})\n", join(a_), join(b));
    }
    for (label, c) in [("+", &a.counts_plus), ("-", &a.counts_minus)] {
        if let Some(c) = c {
            s += &format!(
                "threshold{label}={}  a=({})  a*=({})\n",
                c.threshold,
                join(&c.a),
                join(&c.a_star)
            );
        }
    }
    s
}

fn formula_text(f: &FormulaOutput) -> String {
    let mut s = format!("case: {}\n", f.case);
    for e in &f.formulas {
        s += &format!(
            "[{}] c+ = {}\n[{}] c- = {}\n[{}] types consistent: {}\n",
            e.variant, e.c_plus_text, e.variant, e.c_minus_text, e.variant, e.type_consistent
        );
    }
    s
}

fn report_text(r: &VerificationReport) -> String {
    let variant = r.variant.map(|v| format!(" variant={v}")).unwrap_or_default();
    let mut s = format!(
        "case={}{variant} trials={} seed={} bound={} constant={}\n",
        r.case, r.trials, r.seed, r.bound, r.constant
    );
    for c in &r.checks {
        let ratios: Vec<String> = c.ratios.iter().map(crate::rational::to_string).collect();
        s += &format!(
            "  {} / [{}]: {}  constant={}\n",
            c.quantity,
            c.expression,
            ratios.join(" "),
            c.constant
        );
    }
    s
}

fn verify_text(v: &VerifyOutput) -> String {
    match v {
        VerifyOutput::Single(r) => report_text(r),
        VerifyOutput::Both(a) => {
            let exact: Vec<String> = a.exact.iter().map(Variant::to_string).collect();
            let mut s = format!("exact variants: [{}]\n", exact.join(", "));
            for r in &a.reports {
                s += &report_text(r);
            }
            s
        }
    }
}

fn discover_text(d: &DiscoverOutput) -> String {
    let x = &d.discovery;
    let matches: Vec<String> = x.matches.iter().map(Variant::to_string).collect();
    format!(
        "c+ = {}\nc- = {}\nconfirmed={}  matching variants: [{}]\n",
        x.c_plus,
        x.c_minus,
        x.confirmed,
        matches.join(", ")
    ) + &verify_text(&VerifyOutput::Both(d.adjudication.clone()))
}

fn invariant_text(p: &InvariantPolynomial) -> String {
    let mut s = String::new();
    for (e, c) in &p.terms {
        let rows: Vec<String> = e.iter().map(|r| format!("[{}]", join(r))).collect();
        s += &format!("{}  {}\n", crate::rational::to_string(c), rows.join(""));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: &str = r#"{"weight":1,"types":[0,1]}"#;
    const M2: &str = r#"{"weight":2,"types":[0,1,2],"middle_sign":1}"#;

    fn go(args: &[&str]) -> Outcome {
        let mut argv = vec!["motive-periods"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn analyze_reports_counts() {
        let o = go(&["analyze", "--motive-a", M, "--motive-b", M2]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["k0"], 2);
        assert_eq!(v["a"], serde_json::json!([2, 1]));
        assert_eq!(v["a_star"], serde_json::json!([2, 1, 0]));
        let back: Analysis = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap() + "\n", o.stdout);
    }

    #[test]
    fn single_motive_analysis() {
        let o = go(&["analyze", "--motive-a", M2, "--format", "text"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("d+=2 d-=1"));
    }

    #[test]
    fn formula_lists_both_variants() {
        let o = go(&["formula", "--motive-a", M, "--motive-b", M2]);
        let f: FormulaOutput = serde_json::from_str(&o.stdout).unwrap();
        let theorem = f.formulas.iter().find(|e| e.variant == Variant::Theorem).unwrap();
        assert_eq!(theorem.c_plus_text, "δ(M)^1 · c+(M)^1");
        assert!(!theorem.type_consistent);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["verify", "--motive-a", M, "--motive-b", M2]).code, 0);
        assert_eq!(
            go(&["verify", "--variant", "theorem", "--motive-a", M, "--motive-b", M2]).code,
            2
        );
        assert_eq!(go(&["verify", "--motive-a", M, "--motive-b", M]).code, 1);
        assert_eq!(go(&["verify", "--motive-a", M]).code, 1);
        assert_eq!(go(&["frobnicate"]).code, 1);
        assert_eq!(go(&["analyze", "--motive-a", r#"{"weight":1,"types":[0,2]}"#]).code, 1);
        assert_eq!(go(&["analyze", "--motive-a", "{not json"]).code, 1);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn stdin_feeds_one_input() {
        let mut stdin = M2.as_bytes();
        let o = run(
            ["motive-periods", "analyze", "--motive-a", M, "--motive-b", "-"],
            &mut stdin,
        );
        assert_eq!(o.code, 0, "{}", o.stderr);
        let mut stdin = M2.as_bytes();
        let o = run(
            ["motive-periods", "analyze", "--motive-a", "-", "--motive-b", "-"],
            &mut stdin,
        );
        assert_eq!(o.code, 1);
    }

    #[test]
    fn invariant_command() {
        let ty = r#"{"block_weights":[1,1],"partition":[1,1],"right_weights":[1,1],"split":{"d_plus":1,"d_minus":1}}"#;
        let o = go(&["invariant", "--type", ty]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let p: InvariantPolynomial = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(p.terms.len(), 2);
    }
}
