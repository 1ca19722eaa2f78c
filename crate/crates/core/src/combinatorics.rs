//! Threshold counts, exponent ledgers and the period monomials for `c^±` of a
//! tensor product.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hodge::{HodgeData, Sign, TensorData};
use crate::invariant::{self, AdmissibilityType};

/// `a_i = #{j : p_i + q_j <= threshold}` and `a*_j = #{i : p_i + q_j <= threshold}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ACounts {
    pub a: Vec<usize>,
    pub a_star: Vec<usize>,
    pub threshold: i64,
}

impl ACounts {
    /// One-based access matching the usual indexing of the counts.
    pub fn a_at(&self, i: usize) -> i64 {
        self.a[i - 1] as i64
    }

    pub fn a_star_at(&self, j: usize) -> i64 {
        self.a_star[j - 1] as i64
    }
}

pub fn compute_counts(h: &HodgeData, h2: &HodgeData, threshold: i64) -> ACounts {
    let a = h
        .types
        .iter()
        .map(|p| h2.types.iter().filter(|q| p + *q <= threshold).count())
        .collect();
    let a_star = h2
        .types
        .iter()
        .map(|q| h.types.iter().filter(|p| *p + q <= threshold).count())
        .collect();
    ACounts { a, a_star, threshold }
}

/// Counts at the plus and minus thresholds of an odd-dimensional critical tensor.
pub fn signed_counts(h: &HodgeData, h2: &HodgeData) -> Result<(ACounts, ACounts)> {
    let t = TensorData::new(h, h2)?;
    if !t.criticality.critical {
        return Err(Error::NotCritical);
    }
    if t.split.total() % 2 == 0 {
        return Err(Error::Precondition(
            "signed counts need an odd-dimensional tensor".into(),
        ));
    }
    Ok((
        compute_counts(h, h2, t.threshold(Sign::Plus)?),
        compute_counts(h, h2, t.threshold(Sign::Minus)?),
    ))
}

/// Counts at the threshold of the given sign for any critical tensor.
pub fn counts_for_sign(h: &HodgeData, h2: &HodgeData, sign: Sign) -> Result<ACounts> {
    let t = TensorData::new(h, h2)?;
    if !t.criticality.critical {
        return Err(Error::NotCritical);
    }
    Ok(compute_counts(h, h2, t.threshold(sign)?))
}

/// Which factor of the tensor a period symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Motive {
    M,
    M2,
}

impl Motive {
    pub fn other(self) -> Self {
        match self {
            Motive::M => Motive::M2,
            Motive::M2 => Motive::M,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolKind {
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "c+")]
    CPlus,
    #[serde(rename = "c-")]
    CMinus,
    #[serde(rename = "c_p")]
    Cp,
}

impl SymbolKind {
    pub fn corner(sign: Sign) -> Self {
        match sign {
            Sign::Plus => SymbolKind::CPlus,
            Sign::Minus => SymbolKind::CMinus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PeriodSymbol {
    pub kind: SymbolKind,
    pub motive: Motive,
    pub p: Option<usize>,
}

impl PeriodSymbol {
    pub fn delta(motive: Motive) -> Self {
        Self {
            kind: SymbolKind::Delta,
            motive,
            p: None,
        }
    }

    pub fn c(sign: Sign, motive: Motive) -> Self {
        Self {
            kind: SymbolKind::corner(sign),
            motive,
            p: None,
        }
    }

    pub fn cp(p: usize, motive: Motive) -> Self {
        Self {
            kind: SymbolKind::Cp,
            motive,
            p: Some(p),
        }
    }

    /// Sort key: determinants, then corner minors, then finer invariants;
    /// within a group by motive, then by sign or `p`.
    fn key(&self) -> (u8, Motive, u8, usize) {
        let (group, sub) = match self.kind {
            SymbolKind::Delta => (0, 0),
            SymbolKind::CPlus => (1, 0),
            SymbolKind::CMinus => (1, 1),
            SymbolKind::Cp => (2, 0),
        };
        (group, self.motive, sub, self.p.unwrap_or(0))
    }

    /// The admissibility type of this symbol as a polynomial in its motive's period matrix.
    pub fn admissibility_type(&self, h: &HodgeData) -> Result<AdmissibilityType> {
        let split = h.betti_split()?;
        let partition = vec![1; h.rank()];
        match self.kind {
            SymbolKind::Delta => invariant::type_of_det(&partition, split),
            SymbolKind::CPlus => invariant::type_of_corner(&partition, split, Sign::Plus),
            SymbolKind::CMinus => invariant::type_of_corner(&partition, split, Sign::Minus),
            SymbolKind::Cp => invariant::type_of_cp(split, self.p.unwrap_or(0)),
        }
    }
}

impl Ord for PeriodSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for PeriodSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PeriodSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.motive {
            Motive::M => "M",
            Motive::M2 => "M'",
        };
        match self.kind {
            SymbolKind::Delta => write!(f, "δ({m})"),
            SymbolKind::CPlus => write!(f, "c+({m})"),
            SymbolKind::CMinus => write!(f, "c-({m})"),
            SymbolKind::Cp => write!(f, "c_{}({m})", self.p.unwrap_or(0)),
        }
    }
}

/// Formal monomial in period symbols with integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PeriodExpression {
    factors: BTreeMap<PeriodSymbol, i64>,
}

impl PeriodExpression {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factors<I: IntoIterator<Item = (PeriodSymbol, i64)>>(factors: I) -> Self {
        let mut e = Self::one();
        for (s, k) in factors {
            e.multiply_symbol(s, k);
        }
        e
    }

    pub fn multiply_symbol(&mut self, s: PeriodSymbol, k: i64) {
        let entry = self.factors.entry(s).or_insert(0);
        *entry += k;
        if *entry == 0 {
            self.factors.remove(&s);
        }
    }

    pub fn exponent(&self, s: &PeriodSymbol) -> i64 {
        self.factors.get(s).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&PeriodSymbol, &i64)> {
        self.factors.iter()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, k) in &other.factors {
            out.multiply_symbol(*s, *k);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::from_factors(self.factors.iter().map(|(s, k)| (*s, k * e)))
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.pow(-1))
    }

    /// Exchanges the roles of the two factors.
    pub fn swap_motives(&self) -> Self {
        Self::from_factors(self.factors.iter().map(|(s, k)| {
            (
                PeriodSymbol {
                    motive: s.motive.other(),
                    ..*s
                },
                *k,
            )
        }))
    }

    /// Part of the monomial involving a single factor.
    pub fn restrict(&self, motive: Motive) -> Self {
        Self::from_factors(
            self.factors
                .iter()
                .filter(|(s, _)| s.motive == motive)
                .map(|(s, k)| (*s, *k)),
        )
    }

    /// Admissibility type of the part involving `motive`, as a formal product of types.
    pub fn admissibility_type(&self, motive: Motive, h: &HodgeData) -> Result<AdmissibilityType> {
        let mut acc = invariant::zero_type(&vec![1; h.rank()], h.betti_split()?)?;
        for (s, k) in self.factors.iter().filter(|(s, _)| s.motive == motive) {
            acc = invariant::multiply_types(&acc, &s.admissibility_type(h)?.scaled(*k))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for PeriodExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(s, k)| format!("{s}^{k}")).collect();
        f.write_str(&parts.join(" · "))
    }
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    symbol: SymbolKind,
    motive: Motive,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    exp: i64,
}

#[derive(Serialize, Deserialize)]
struct ExpressionJson {
    factors: Vec<FactorJson>,
}

impl Serialize for PeriodExpression {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpressionJson {
            factors: self
                .factors
                .iter()
                .map(|(sym, k)| FactorJson {
                    symbol: sym.kind,
                    motive: sym.motive,
                    p: sym.p,
                    exp: *k,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeriodExpression {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = ExpressionJson::deserialize(d)?;
        let mut out = PeriodExpression::one();
        for f in json.factors {
            if (f.symbol == SymbolKind::Cp) != f.p.is_some() {
                return Err(serde::de::Error::custom("p is required for c_p and only for c_p"));
            }
            out.multiply_symbol(
                PeriodSymbol {
                    kind: f.symbol,
                    motive: f.motive,
                    p: f.p,
                },
                f.exp,
            );
        }
        Ok(out)
    }
}

/// Parity pattern of the two ranks, which selects the shape of the formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityCase {
    EvenOdd,
    OddOdd,
    EvenEven,
}

impl ParityCase {
    pub fn of(h: &HodgeData, h2: &HodgeData) -> Self {
        match (h.rank() % 2, h2.rank() % 2) {
            (0, 0) => ParityCase::EvenEven,
            (1, 1) => ParityCase::OddOdd,
            _ => ParityCase::EvenOdd,
        }
    }
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityCase::EvenOdd => "even-odd",
            ParityCase::OddOdd => "odd-odd",
            ParityCase::EvenEven => "even-even",
        })
    }
}

/// Which exponent rule to use on `[c+(M')c-(M')]` in the even-odd case.
///
/// `Ledger` solves the monomial against the admissibility types and gives
/// `a*_{k'} - n/2`; `Theorem` is the closed form with `a*_{k'} - k - 1`. The two
/// rules coincide in the odd-odd and even-even cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Ledger,
    Theorem,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Ledger, Variant::Theorem];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Ledger => "ledger",
            Variant::Theorem => "theorem",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodFormula {
    pub case: ParityCase,
    pub variant: Variant,
    pub c_plus: PeriodExpression,
    pub c_minus: PeriodExpression,
}

impl PeriodFormula {
    pub fn get(&self, sign: Sign) -> &PeriodExpression {
        match sign {
            Sign::Plus => &self.c_plus,
            Sign::Minus => &self.c_minus,
        }
    }
}

/// Smaller eigenspace dimension, the `k` of the formulas.
fn half_rank(h: &HodgeData) -> usize {
    h.rank() / 2
}

fn ensure_critical(h: &HodgeData, h2: &HodgeData) -> Result<TensorData> {
    let t = TensorData::new(h, h2)?;
    if !t.criticality.critical {
        return Err(Error::NotCritical);
    }
    Ok(t)
}

/// Counts feeding the common factor `T`: the `k0` counts when the tensor is
/// even-dimensional, otherwise the minus-threshold counts.
fn base_counts(h: &HodgeData, h2: &HodgeData, t: &TensorData) -> Result<ACounts> {
    let sign = if t.split.total().is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    Ok(compute_counts(h, h2, t.threshold(sign)?))
}

/// The monomials for `c+` and `c-` of `h ⊗ h2`.
pub fn period_formula(h: &HodgeData, h2: &HodgeData, variant: Variant) -> Result<PeriodFormula> {
    let case = ParityCase::of(h, h2);
    // the even-odd rule is stated with the even factor first
    if case == ParityCase::EvenOdd && h.rank() % 2 == 1 {
        let f = period_formula(h2, h, variant)?;
        return Ok(PeriodFormula {
            c_plus: f.c_plus.swap_motives(),
            c_minus: f.c_minus.swap_motives(),
            ..f
        });
    }
    let t = ensure_critical(h, h2)?;
    for (x, tag) in [(h, "first"), (h2, "second")] {
        if x.rank() < 2 {
            return Err(Error::UnsupportedRank(format!("{tag} factor has rank {}", x.rank())));
        }
    }
    let counts = base_counts(h, h2, &t)?;
    let (n, n2) = (h.rank() as i64, h2.rank() as i64);
    let (k, k2) = (half_rank(h), half_rank(h2));
    let (eps, eps2) = (h.epsilon(), h2.epsilon());

    let build = |sigma: Sign| {
        let sigma = sigma.value();
        let mut e = PeriodExpression::one();
        e.multiply_symbol(PeriodSymbol::delta(Motive::M), counts.a_at(h.rank()));
        e.multiply_symbol(PeriodSymbol::delta(Motive::M2), counts.a_star_at(h2.rank()));
        for s in [Sign::Plus, Sign::Minus] {
            let twice = 2 * counts.a_at(k) - n2 + sigma * s.value() * eps2;
            e.multiply_symbol(PeriodSymbol::c(s, Motive::M), twice / 2);
            let exp2 = match (variant, case) {
                (Variant::Theorem, ParityCase::EvenOdd) => counts.a_star_at(k2) - k as i64 - 1,
                _ => (2 * counts.a_star_at(k2) - n + sigma * s.value() * eps) / 2,
            };
            e.multiply_symbol(PeriodSymbol::c(s, Motive::M2), exp2);
        }
        for p in 1..k {
            e.multiply_symbol(PeriodSymbol::cp(p, Motive::M), counts.a_at(p) - counts.a_at(p + 1));
        }
        for p in 1..k2 {
            e.multiply_symbol(
                PeriodSymbol::cp(p, Motive::M2),
                counts.a_star_at(p) - counts.a_star_at(p + 1),
            );
        }
        e
    };
    Ok(PeriodFormula {
        case,
        variant,
        c_plus: build(Sign::Plus),
        c_minus: build(Sign::Minus),
    })
}

/// Exponents of `c+(M ⊗ M')` for an even-rank `M` and odd-rank `M'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentLedger {
    pub alpha: i64,
    pub alpha_plus: i64,
    pub alpha_minus: i64,
    pub beta: i64,
    pub beta_plus: i64,
    pub beta_minus: i64,
    pub alpha_p: BTreeMap<usize, i64>,
    pub beta_p: BTreeMap<usize, i64>,
}

impl ExponentLedger {
    /// Reads the exponents off a monomial for `c+`.
    pub fn from_expression(e: &PeriodExpression, k: usize, k2: usize) -> Self {
        Self {
            alpha: e.exponent(&PeriodSymbol::delta(Motive::M)),
            alpha_plus: e.exponent(&PeriodSymbol::c(Sign::Plus, Motive::M)),
            alpha_minus: e.exponent(&PeriodSymbol::c(Sign::Minus, Motive::M)),
            beta: e.exponent(&PeriodSymbol::delta(Motive::M2)),
            beta_plus: e.exponent(&PeriodSymbol::c(Sign::Plus, Motive::M2)),
            beta_minus: e.exponent(&PeriodSymbol::c(Sign::Minus, Motive::M2)),
            alpha_p: (1..k)
                .map(|p| (p, e.exponent(&PeriodSymbol::cp(p, Motive::M))))
                .collect(),
            beta_p: (1..k2)
                .map(|p| (p, e.exponent(&PeriodSymbol::cp(p, Motive::M2))))
                .collect(),
        }
    }

    pub fn to_expression(&self) -> PeriodExpression {
        let mut e = PeriodExpression::from_factors([
            (PeriodSymbol::delta(Motive::M), self.alpha),
            (PeriodSymbol::c(Sign::Plus, Motive::M), self.alpha_plus),
            (PeriodSymbol::c(Sign::Minus, Motive::M), self.alpha_minus),
            (PeriodSymbol::delta(Motive::M2), self.beta),
            (PeriodSymbol::c(Sign::Plus, Motive::M2), self.beta_plus),
            (PeriodSymbol::c(Sign::Minus, Motive::M2), self.beta_minus),
        ]);
        for (&p, &k) in &self.alpha_p {
            e.multiply_symbol(PeriodSymbol::cp(p, Motive::M), k);
        }
        for (&p, &k) in &self.beta_p {
            e.multiply_symbol(PeriodSymbol::cp(p, Motive::M2), k);
        }
        e
    }
}

/// The exponent ledger obtained by matching admissibility types, for `h` of even
/// rank `2k` and `h2` of odd rank `2k'+1`.
pub fn exponent_ledger(h: &HodgeData, h2: &HodgeData) -> Result<ExponentLedger> {
    if !h.rank().is_multiple_of(2) || h2.rank() % 2 != 1 {
        return Err(Error::Precondition(
            "exponent ledger needs an even-rank first and odd-rank second factor".into(),
        ));
    }
    let t = ensure_critical(h, h2)?;
    let c = base_counts(h, h2, &t)?;
    let (n, n2) = (h.rank(), h2.rank());
    let (k, k2) = (half_rank(h), half_rank(h2));
    let eps2 = h2.epsilon();
    if k2 == 0 {
        return Err(Error::UnsupportedRank("odd factor has rank 1".into()));
    }
    let alpha_base = 2 * c.a_at(k) - n2 as i64;
    Ok(ExponentLedger {
        alpha: c.a_at(n),
        alpha_plus: (alpha_base + eps2) / 2,
        alpha_minus: (alpha_base - eps2) / 2,
        beta: c.a_star_at(n2),
        beta_plus: c.a_star_at(k2) - (n / 2) as i64,
        beta_minus: c.a_star_at(k2) - (n / 2) as i64,
        alpha_p: (1..k).map(|p| (p, c.a_at(p) - c.a_at(p + 1))).collect(),
        beta_p: (1..k2).map(|p| (p, c.a_star_at(p) - c.a_star_at(p + 1))).collect(),
    })
}

/// The ratio `c+/c-` of the tensor as a monomial in the factors' `c±`.
pub fn ratio_relation(h: &HodgeData, h2: &HodgeData) -> Result<PeriodExpression> {
    ensure_critical(h, h2)?;
    let ratio = |m: Motive| {
        PeriodExpression::from_factors([
            (PeriodSymbol::c(Sign::Plus, m), 1),
            (PeriodSymbol::c(Sign::Minus, m), -1),
        ])
    };
    // each factor's ratio is raised to the other's epsilon, which is zero for even rank
    Ok(ratio(Motive::M)
        .pow(h2.epsilon())
        .mul(&ratio(Motive::M2).pow(h.epsilon())))
}

/// Result of comparing a formula's types against the types `c±` of the tensor must have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCheck {
    pub consistent: bool,
    pub mismatches: Vec<String>,
}

/// The type `c^sigma(M ⊗ M')` carries as a polynomial in `motive`'s period matrix:
/// threshold counts on the left, the partner's Betti split on the right.
pub fn expected_type(h: &HodgeData, h2: &HodgeData, sigma: Sign, motive: Motive) -> Result<AdmissibilityType> {
    let counts = counts_for_sign(h, h2, sigma)?;
    let (own, partner, weights) = match motive {
        Motive::M => (h, h2, counts.a),
        Motive::M2 => (h2, h, counts.a_star),
    };
    let ps = partner.betti_split()?;
    let right = (ps.get(sigma) as i64, ps.get(sigma.flip()) as i64);
    Ok(AdmissibilityType {
        block_weights: weights.into_iter().map(|w| w as i64).collect(),
        partition: vec![1; own.rank()],
        right_weights: right,
        split: own.betti_split()?,
    })
}

/// Checks that each emitted monomial has the types of `c±` of the tensor in both
/// period matrices.
pub fn type_check(h: &HodgeData, h2: &HodgeData, formula: &PeriodFormula) -> Result<TypeCheck> {
    let mut mismatches = Vec::new();
    for sigma in [Sign::Plus, Sign::Minus] {
        for (motive, own) in [(Motive::M, h), (Motive::M2, h2)] {
            let expected = expected_type(h, h2, sigma, motive)?;
            let got = formula.get(sigma).admissibility_type(motive, own)?;
            if got != expected {
                mismatches.push(format!(
                    "c{sigma} in {motive:?}: monomial has {got}, tensor needs {expected}"
                ));
            }
        }
    }
    Ok(TypeCheck {
        consistent: mismatches.is_empty(),
        mismatches,
    })
}
