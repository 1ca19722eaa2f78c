//! Exact randomized checks of the period monomials.
//!
//! Period matrices are replaced by random integer matrices. The tensor period
//! matrix is the Kronecker product with rows ordered by Hodge degree and
//! columns grouped by conjugation sign. Its corner minors are compared with the
//! predicted monomials evaluated on the factors' invariants. An identity that
//! holds modulo a rational scalar gives the same ratio on every trial, and a
//! false one fails with overwhelming probability.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    self, ExponentLedger, Motive, ParityCase, PeriodExpression, PeriodSymbol, SymbolKind, Variant,
};
use crate::error::{Error, Result};
use crate::hodge::{BettiSplit, FiltrationProfile, HodgeData, Sign, TensorData};
use crate::invariant::{self, InvariantPolynomial};
use crate::matrix::{RationalMatrix, Side};
use crate::rational::{self, Rational};
use crate::sampling::{self, rng_for, DEFAULT_BOUND, RETRY_CAP};

const REALIZATION_STREAM: u64 = 0x5EA1;
const TRIAL_STREAM: u64 = 0x7121;
const RATIO_STREAM: u64 = 0x4A71;
const FIT_STREAM: u64 = 0xF17;
const CONFIRM_STREAM: u64 = 0xC0F;

/// Knobs shared by every oracle run; echoed into reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub trials: usize,
    pub seed: u64,
    pub bound: i64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            trials: 5,
            seed: 0,
            bound: DEFAULT_BOUND,
        }
    }
}

/// A stand-in period matrix. Row `i` is the de Rham basis vector `w_i`, with
/// later rows spanning deeper filtration steps; columns are the Betti basis
/// with the plus eigenvectors first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodRealization {
    pub hodge: Option<HodgeData>,
    pub profile: FiltrationProfile,
    pub split: BettiSplit,
    pub matrix: RationalMatrix,
}

impl PeriodRealization {
    pub fn from_matrix(h: &HodgeData, matrix: RationalMatrix) -> Result<Self> {
        let n = h.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!("rank {n} needs an {n}x{n} matrix")));
        }
        Ok(Self {
            hodge: Some(h.clone()),
            profile: h.filtration_profile()?,
            split: h.betti_split()?,
            matrix,
        })
    }

    pub fn rank(&self) -> usize {
        self.split.total()
    }

    /// Filtration degree of each row.
    pub fn row_degrees(&self) -> Vec<i64> {
        self.profile
            .jumps
            .iter()
            .zip(&self.profile.mults)
            .flat_map(|(&r, &u)| std::iter::repeat_n(r, u))
            .collect()
    }

    /// Conjugation sign of each column.
    pub fn column_signs(&self) -> Vec<Sign> {
        std::iter::repeat_n(Sign::Plus, self.split.d_plus)
            .chain(std::iter::repeat_n(Sign::Minus, self.split.d_minus))
            .collect()
    }

    pub fn delta(&self) -> Result<Rational> {
        self.matrix.det()
    }

    /// Upper-left `d_plus` minor for `+`, upper-right `d_minus` minor for `-`.
    pub fn corner(&self, sign: Sign) -> Result<Rational> {
        let side = if sign == Sign::Plus { Side::Left } else { Side::Right };
        self.matrix.corner_minor(self.split.get(sign), side)
    }
}

/// Draws until the matrix is invertible with both corner minors nonzero.
fn draw<R: Rng>(h: &HodgeData, rng: &mut R, bound: i64) -> Result<PeriodRealization> {
    for _ in 0..RETRY_CAP {
        let r = PeriodRealization::from_matrix(h, sampling::random_matrix(rng, h.rank(), h.rank(), bound))?;
        if !r.delta()?.is_zero() && !r.corner(Sign::Plus)?.is_zero() && !r.corner(Sign::Minus)?.is_zero() {
            return Ok(r);
        }
    }
    Err(Error::RetryCapExhausted(RETRY_CAP))
}

pub fn random_realization(h: &HodgeData, seed: u64, bound: i64) -> Result<PeriodRealization> {
    h.ensure_valid()?;
    draw(h, &mut rng_for(seed, &[REALIZATION_STREAM]), bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantValues {
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub c_plus: Rational,
    #[serde(with = "rational::serde_str")]
    pub c_minus: Rational,
    #[serde(with = "cp_map")]
    pub c_p: BTreeMap<usize, Rational>,
}

mod cp_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{self, Rational};

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, Rational>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(p, q)| (*p, rational::to_string(q)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, Rational>, D::Error> {
        BTreeMap::<usize, String>::deserialize(d)?
            .into_iter()
            .map(|(p, s)| rational::parse(&s).map(|q| (p, q)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl InvariantValues {
    pub fn get(&self, s: &PeriodSymbol) -> Result<&Rational> {
        match s.kind {
            SymbolKind::Delta => Ok(&self.delta),
            SymbolKind::CPlus => Ok(&self.c_plus),
            SymbolKind::CMinus => Ok(&self.c_minus),
            SymbolKind::Cp => {
                let p = s.p.unwrap_or(0);
                self.c_p
                    .get(&p)
                    .ok_or_else(|| Error::Precondition(format!("c_{p} is not defined here")))
            }
        }
    }
}

/// The finer invariants of one factor, constructed once and reused across trials.
pub struct FactorInvariants {
    cp: Vec<(usize, InvariantPolynomial)>,
}

impl FactorInvariants {
    pub fn new(h: &HodgeData) -> Result<Self> {
        let split = h.betti_split()?;
        let max = split.d_plus.min(split.d_minus).saturating_sub(1);
        let cp = (1..=max)
            .map(|p| Ok((p, invariant::construct_invariant(&invariant::type_of_cp(split, p)?)?)))
            .collect::<Result<_>>()?;
        Ok(Self { cp })
    }

    pub fn without_finer() -> Self {
        Self { cp: Vec::new() }
    }

    /// All invariants of `r`; any zero value is reported so the caller can resample.
    pub fn values(&self, r: &PeriodRealization) -> Result<InvariantValues> {
        let delta = r.delta()?;
        let c_plus = r.corner(Sign::Plus)?;
        let c_minus = r.corner(Sign::Minus)?;
        for (name, v) in [("delta", &delta), ("c+", &c_plus), ("c-", &c_minus)] {
            if v.is_zero() {
                return Err(Error::ZeroInvariant(name.into()));
            }
        }
        let mut c_p = BTreeMap::new();
        for (p, f) in &self.cp {
            let v = f.evaluate(&r.matrix)?;
            if v.is_zero() {
                return Err(Error::ZeroInvariant(format!("c_{p}")));
            }
            c_p.insert(*p, v);
        }
        Ok(InvariantValues {
            delta,
            c_plus,
            c_minus,
            c_p,
        })
    }
}

/// Determinant, corner minors and finer invariants of a single-motive realization.
pub fn invariant_values(r: &PeriodRealization) -> Result<InvariantValues> {
    let h = r
        .hodge
        .as_ref()
        .ok_or_else(|| Error::Precondition("realization carries no Hodge data".into()))?;
    FactorInvariants::new(h)?.values(r)
}

/// Evaluates a monomial on the two factors' invariants; negative powers divide.
pub fn evaluate_expression(e: &PeriodExpression, m: &InvariantValues, m2: &InvariantValues) -> Result<Rational> {
    let mut acc = Rational::one();
    for (s, k) in e.factors() {
        let vals = if s.motive == Motive::M { m } else { m2 };
        acc *= rational::pow(vals.get(s)?, *k)?;
    }
    Ok(acc)
}

/// Kronecker product with rows sorted by total degree (ties by index pair) and
/// columns ordered `(+,+)`, `(-,-)`, then `(+,-)`, `(-,+)`, lexicographic inside.
pub fn tensor_realization(r: &PeriodRealization, r2: &PeriodRealization) -> Result<PeriodRealization> {
    let (deg, deg2) = (r.row_degrees(), r2.row_degrees());
    let mut rows: Vec<(i64, usize, usize)> = (0..r.rank())
        .flat_map(|i| (0..r2.rank()).map(move |k| (i, k)))
        .map(|(i, k)| (deg[i] + deg2[k], i, k))
        .collect();
    rows.sort();

    let (sg, sg2) = (r.column_signs(), r2.column_signs());
    let block = |a: Sign, b: Sign| -> Vec<(usize, usize)> {
        (0..r.rank())
            .flat_map(|j| (0..r2.rank()).map(move |l| (j, l)))
            .filter(|&(j, l)| sg[j] == a && sg2[l] == b)
            .collect()
    };
    let cols: Vec<(usize, usize)> = [
        block(Sign::Plus, Sign::Plus),
        block(Sign::Minus, Sign::Minus),
        block(Sign::Plus, Sign::Minus),
        block(Sign::Minus, Sign::Plus),
    ]
    .concat();

    let data = rows
        .iter()
        .map(|&(_, i, k)| {
            cols.iter()
                .map(|&(j, l)| r.matrix.get(i, j) * r2.matrix.get(k, l))
                .collect()
        })
        .collect();
    let mut profile: BTreeMap<i64, usize> = BTreeMap::new();
    for &(d, _, _) in &rows {
        *profile.entry(d).or_default() += 1;
    }
    let (jumps, mults) = profile.into_iter().unzip();
    let split = BettiSplit {
        d_plus: r.split.d_plus * r2.split.d_plus + r.split.d_minus * r2.split.d_minus,
        d_minus: r.split.d_plus * r2.split.d_minus + r.split.d_minus * r2.split.d_plus,
    };
    Ok(PeriodRealization {
        hodge: None,
        profile: FiltrationProfile { jumps, mults },
        split,
        matrix: RationalMatrix::from_rows(data)?,
    })
}

/// Ratios from one family of trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCheck {
    /// `"c+"`, `"c-"` or `"c+/c-"`.
    pub quantity: String,
    pub expression: PeriodExpression,
    #[serde(with = "rational::serde_vec_str")]
    pub ratios: Vec<Rational>,
    pub constant: bool,
    #[serde(with = "rational::serde_opt_str")]
    pub ratio_value: Option<Rational>,
}

impl SignCheck {
    fn new(quantity: &str, expression: PeriodExpression, ratios: Vec<Rational>) -> Self {
        let constant = !ratios.is_empty() && !ratios[0].is_zero() && ratios.iter().all(|q| *q == ratios[0]);
        let ratio_value = constant.then(|| ratios[0].clone());
        Self {
            quantity: quantity.into(),
            expression,
            ratios,
            constant,
            ratio_value,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Formula,
    Ratio,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: CheckKind,
    pub case: ParityCase,
    pub variant: Option<Variant>,
    pub type_consistent: Option<bool>,
    pub checks: Vec<SignCheck>,
    pub constant: bool,
    pub trials: usize,
    pub seed: u64,
    pub bound: i64,
}

/// One trial: fresh factor realizations with every needed invariant nonzero.
struct Trial {
    z: PeriodRealization,
    m: InvariantValues,
    m2: InvariantValues,
}

fn run_trial(
    h: &HodgeData,
    h2: &HodgeData,
    inv: &FactorInvariants,
    inv2: &FactorInvariants,
    cfg: &OracleConfig,
    stream: u64,
    index: usize,
) -> Result<Trial> {
    for attempt in 0..RETRY_CAP {
        let mut rng = rng_for(cfg.seed, &[stream, index as u64, attempt as u64]);
        let x = draw(h, &mut rng, cfg.bound)?;
        let y = draw(h2, &mut rng, cfg.bound)?;
        let (m, m2) = match (inv.values(&x), inv2.values(&y)) {
            (Ok(m), Ok(m2)) => (m, m2),
            (Err(Error::ZeroInvariant(_)), _) | (_, Err(Error::ZeroInvariant(_))) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        return Ok(Trial {
            z: tensor_realization(&x, &y)?,
            m,
            m2,
        });
    }
    Err(Error::RetryCapExhausted(RETRY_CAP))
}

fn run_trials(
    h: &HodgeData,
    h2: &HodgeData,
    inv: &FactorInvariants,
    inv2: &FactorInvariants,
    cfg: &OracleConfig,
    stream: u64,
) -> Result<Vec<Trial>> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(h, h2, inv, inv2, cfg, stream, t))
        .collect()
}

fn critical_tensor(h: &HodgeData, h2: &HodgeData) -> Result<TensorData> {
    let t = TensorData::new(h, h2)?;
    if !t.criticality.critical {
        return Err(Error::NotCritical);
    }
    Ok(t)
}

/// Ratios `c±(Z) / monomial±` over `trials` independent draws.
fn formula_checks(
    h: &HodgeData,
    h2: &HodgeData,
    plus: &PeriodExpression,
    minus: &PeriodExpression,
    cfg: &OracleConfig,
    stream: u64,
) -> Result<Vec<SignCheck>> {
    let (inv, inv2) = (FactorInvariants::new(h)?, FactorInvariants::new(h2)?);
    let trials = run_trials(h, h2, &inv, &inv2, cfg, stream)?;
    [(Sign::Plus, plus), (Sign::Minus, minus)]
        .into_iter()
        .map(|(sign, expr)| {
            let ratios = trials
                .iter()
                .map(|t| Ok(t.z.corner(sign)? / evaluate_expression(expr, &t.m, &t.m2)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(SignCheck::new(&format!("c{sign}"), expr.clone(), ratios))
        })
        .collect()
}

/// Checks the monomials for `c±(h ⊗ h2)` against the tensor realization.
pub fn verify_theorem(
    h: &HodgeData,
    h2: &HodgeData,
    variant: Variant,
    cfg: &OracleConfig,
) -> Result<VerificationReport> {
    critical_tensor(h, h2)?;
    let formula = combinatorics::period_formula(h, h2, variant)?;
    let type_consistent = combinatorics::type_check(h, h2, &formula)?.consistent;
    let checks = formula_checks(h, h2, &formula.c_plus, &formula.c_minus, cfg, TRIAL_STREAM)?;
    Ok(VerificationReport {
        kind: CheckKind::Formula,
        case: formula.case,
        variant: Some(variant),
        type_consistent: Some(type_consistent),
        constant: checks.iter().all(|c| c.constant),
        checks,
        trials: cfg.trials,
        seed: cfg.seed,
        bound: cfg.bound,
    })
}

/// Checks that `c+(Z)/c-(Z)` divided by the predicted ratio is one fixed rational.
pub fn verify_ratio_relation(h: &HodgeData, h2: &HodgeData, cfg: &OracleConfig) -> Result<VerificationReport> {
    critical_tensor(h, h2)?;
    let expr = combinatorics::ratio_relation(h, h2)?;
    let none = FactorInvariants::without_finer();
    let trials = run_trials(h, h2, &none, &none, cfg, RATIO_STREAM)?;
    let ratios = trials
        .iter()
        .map(|t| {
            let (p, m) = (t.z.corner(Sign::Plus)?, t.z.corner(Sign::Minus)?);
            if m.is_zero() {
                return Ok(Rational::zero());
            }
            Ok(p / m / evaluate_expression(&expr, &t.m, &t.m2)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let check = SignCheck::new("c+/c-", expr, ratios);
    Ok(VerificationReport {
        kind: CheckKind::Ratio,
        case: ParityCase::of(h, h2),
        variant: None,
        type_consistent: None,
        constant: check.constant,
        checks: vec![check],
        trials: cfg.trials,
        seed: cfg.seed,
        bound: cfg.bound,
    })
}

/// Both exponent variants run side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjudication {
    pub reports: Vec<VerificationReport>,
    /// Variants whose monomials gave a constant ratio for both signs.
    pub exact: Vec<Variant>,
    pub constant: bool,
}

pub fn adjudicate(h: &HodgeData, h2: &HodgeData, cfg: &OracleConfig) -> Result<Adjudication> {
    let reports = Variant::ALL
        .iter()
        .map(|&v| verify_theorem(h, h2, v, cfg))
        .collect::<Result<Vec<_>>>()?;
    let exact: Vec<Variant> = reports
        .iter()
        .filter(|r| r.constant)
        .filter_map(|r| r.variant)
        .collect();
    Ok(Adjudication {
        constant: !exact.is_empty(),
        reports,
        exact,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub samples: usize,
    pub unknowns: usize,
    /// Largest distance of a fitted exponent from the nearest integer.
    pub max_rounding_error: f64,
    /// RMS residual of the real least-squares fit.
    pub rms_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discovery {
    pub case: ParityCase,
    pub c_plus: PeriodExpression,
    pub c_minus: PeriodExpression,
    /// Exponents of the discovered `c+` monomial.
    pub ledger: ExponentLedger,
    pub diagnostics: Vec<FitDiagnostics>,
    /// Exact re-verification of the discovered monomials on fresh trials.
    pub confirmation: Vec<SignCheck>,
    pub confirmed: bool,
    /// Formula variants that coincide with the discovered monomials.
    pub matches: Vec<Variant>,
}

/// Symbols whose exponents are fitted: determinants, proper corner minors and
/// the finer invariants of each factor.
fn candidates(h: &HodgeData, motive: Motive) -> Result<Vec<PeriodSymbol>> {
    let split = h.betti_split()?;
    let n = h.rank();
    let mut out = vec![PeriodSymbol::delta(motive)];
    for s in [Sign::Plus, Sign::Minus] {
        let d = split.get(s);
        if d > 0 && d < n {
            out.push(PeriodSymbol::c(s, motive));
        }
    }
    let max = split.d_plus.min(split.d_minus).saturating_sub(1);
    out.extend((1..=max).map(|p| PeriodSymbol::cp(p, motive)));
    Ok(out)
}

/// Recovers integer exponents for `c±(h ⊗ h2)` by a log-linear least-squares
/// fit, then confirms the rounded monomials exactly.
pub fn discover_exponents(h: &HodgeData, h2: &HodgeData, cfg: &OracleConfig) -> Result<Discovery> {
    critical_tensor(h, h2)?;
    let mut symbols = candidates(h, Motive::M)?;
    symbols.extend(candidates(h2, Motive::M2)?);
    let unknowns = symbols.len() + 1;
    let samples = (4 * unknowns).max(cfg.trials);

    let (inv, inv2) = (FactorInvariants::new(h)?, FactorInvariants::new(h2)?);
    let fit_cfg = OracleConfig {
        trials: samples,
        ..*cfg
    };
    let trials = run_trials(h, h2, &inv, &inv2, &fit_cfg, FIT_STREAM)?;

    let mut design = DMatrix::<f64>::zeros(samples, unknowns);
    for (row, t) in trials.iter().enumerate() {
        for (col, s) in symbols.iter().enumerate() {
            let vals = if s.motive == Motive::M { &t.m } else { &t.m2 };
            design[(row, col)] = rational::ln_abs(vals.get(s)?);
        }
        design[(row, unknowns - 1)] = 1.0;
    }

    let mut fitted = Vec::new();
    let mut diagnostics = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let mut target = DVector::<f64>::zeros(samples);
        for (row, t) in trials.iter().enumerate() {
            let v = t.z.corner(sign)?;
            if v.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "c{sign} of the tensor vanished on a sample"
                )));
            }
            target[row] = rational::ln_abs(&v);
        }
        let x = design
            .clone()
            .svd(true, true)
            .solve(&target, 1e-9)
            .map_err(|e| Error::Inconsistent(format!("least squares failed: {e}")))?;
        let residual = &design * &x - &target;
        let exps: Vec<i64> = x.iter().take(symbols.len()).map(|v| v.round() as i64).collect();
        diagnostics.push(FitDiagnostics {
            samples,
            unknowns,
            max_rounding_error: x
                .iter()
                .take(symbols.len())
                .map(|v| (v - v.round()).abs())
                .fold(0.0, f64::max),
            rms_residual: (residual.norm_squared() / samples as f64).sqrt(),
        });
        fitted.push(PeriodExpression::from_factors(symbols.iter().copied().zip(exps)));
    }
    let (c_plus, c_minus) = (fitted[0].clone(), fitted[1].clone());

    let confirmation = formula_checks(h, h2, &c_plus, &c_minus, cfg, CONFIRM_STREAM)?;
    let confirmed = confirmation.iter().all(|c| c.constant);
    let matches = Variant::ALL
        .iter()
        .copied()
        .filter(|&v| combinatorics::period_formula(h, h2, v).is_ok_and(|f| f.c_plus == c_plus && f.c_minus == c_minus))
        .collect();
    Ok(Discovery {
        case: ParityCase::of(h, h2),
        ledger: ExponentLedger::from_expression(&c_plus, h.rank() / 2, h2.rank() / 2),
        c_plus,
        c_minus,
        diagnostics,
        confirmation,
        confirmed,
        matches,
    })
}
