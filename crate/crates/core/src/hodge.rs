//! Combinatorial Hodge data of pure motives with unit Hodge numbers, their
//! tensor products, Betti splits and criticality.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eigenvalue of complex conjugation on a one-dimensional piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Hodge data of a pure motive all of whose nonzero Hodge numbers are one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HodgeData {
    pub weight: i64,
    pub types: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle_sign: Option<Sign>,
}

/// A named invariant that a [`HodgeData`] fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub invariant: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn names(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.invariant.as_str()).collect()
    }
}

/// Filtration jumps with the dimension of each graded piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationProfile {
    pub jumps: Vec<i64>,
    pub mults: Vec<usize>,
}

impl FiltrationProfile {
    pub fn total(&self) -> usize {
        self.mults.iter().sum()
    }

    /// Partial sums `u_1 + ... + u_t` for t = 1..m.
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.mults
            .iter()
            .scan(0, |acc, &u| {
                *acc += u;
                Some(*acc)
            })
            .collect()
    }

    /// Whether `r_t + r_{m+1-t} = weight` and `u_t = u_{m+1-t}` for every t.
    pub fn is_symmetric(&self, weight: i64) -> bool {
        let m = self.jumps.len();
        (0..m).all(|t| self.jumps[t] + self.jumps[m - 1 - t] == weight && self.mults[t] == self.mults[m - 1 - t])
    }
}

/// Dimensions of the ±1 eigenspaces of complex conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiSplit {
    pub d_plus: usize,
    pub d_minus: usize,
}

impl BettiSplit {
    pub fn total(&self) -> usize {
        self.d_plus + self.d_minus
    }

    /// `d_plus - d_minus`.
    pub fn epsilon(&self) -> i64 {
        self.d_plus as i64 - self.d_minus as i64
    }

    pub fn get(&self, sign: Sign) -> usize {
        match sign {
            Sign::Plus => self.d_plus,
            Sign::Minus => self.d_minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityResult {
    pub critical: bool,
    /// Number of leading graded pieces whose dimensions add up to `d_plus`.
    pub k_plus: Option<usize>,
    pub k_minus: Option<usize>,
}

impl CriticalityResult {
    pub fn k(&self, sign: Sign) -> Option<usize> {
        match sign {
            Sign::Plus => self.k_plus,
            Sign::Minus => self.k_minus,
        }
    }
}

impl HodgeData {
    pub fn new(weight: i64, types: Vec<i64>, middle_sign: Option<Sign>) -> Result<Self> {
        let h = Self {
            weight,
            types,
            middle_sign,
        };
        h.ensure_valid()?;
        Ok(h)
    }

    /// Even-rank data; the types must pair off to `weight`.
    pub fn even(weight: i64, types: &[i64]) -> Result<Self> {
        Self::new(weight, types.to_vec(), None)
    }

    /// Odd-rank data with the sign of complex conjugation on the middle type.
    pub fn odd(weight: i64, types: &[i64], sign: Sign) -> Result<Self> {
        Self::new(weight, types.to_vec(), Some(sign))
    }

    pub fn rank(&self) -> usize {
        self.types.len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |name: &str, detail: String| {
            violations.push(Violation {
                invariant: name.to_string(),
                detail,
            })
        };
        let n = self.types.len();
        if n == 0 {
            push("nonempty", "types is empty".into());
        }
        if let Some(w) = self.types.windows(2).find(|w| w[0] >= w[1]) {
            push("increasing", format!("{} is not less than {}", w[0], w[1]));
        }
        for i in 0..n / 2 {
            let (a, b) = (self.types[i], self.types[n - 1 - i]);
            if a + b != self.weight {
                push("pairing", format!("{a} + {b} != {}", self.weight));
                break;
            }
        }
        if n % 2 == 1 {
            if self.weight % 2 != 0 {
                push(
                    "weight_parity",
                    format!("odd rank needs even weight, got {}", self.weight),
                );
            } else if self.types[n / 2] * 2 != self.weight {
                push(
                    "middle_type",
                    format!("middle type {} != {}/2", self.types[n / 2], self.weight),
                );
            }
            if self.middle_sign.is_none() {
                push("middle_sign", "odd rank requires middle_sign".into());
            }
        } else if self.middle_sign.is_some() {
            push("middle_sign", "even rank must not carry middle_sign".into());
        }
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.ok {
            return Ok(());
        }
        let msg: Vec<String> = report
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.invariant, v.detail))
            .collect();
        Err(Error::InvalidHodge(msg.join("; ")))
    }

    /// Non-middle types pair off evenly under conjugation; a middle type adds
    /// one to the side named by `middle_sign`.
    pub fn betti_split(&self) -> Result<BettiSplit> {
        self.ensure_valid()?;
        let half = self.rank() / 2;
        Ok(match self.middle_sign {
            None => BettiSplit {
                d_plus: half,
                d_minus: half,
            },
            Some(Sign::Plus) => BettiSplit {
                d_plus: half + 1,
                d_minus: half,
            },
            Some(Sign::Minus) => BettiSplit {
                d_plus: half,
                d_minus: half + 1,
            },
        })
    }

    /// `d_plus - d_minus`: zero for even rank, the middle sign for odd rank.
    pub fn epsilon(&self) -> i64 {
        self.middle_sign.map_or(0, Sign::value)
    }

    pub fn filtration_profile(&self) -> Result<FiltrationProfile> {
        self.ensure_valid()?;
        Ok(FiltrationProfile {
            jumps: self.types.clone(),
            mults: vec![1; self.rank()],
        })
    }
}

impl fmt::Display for HodgeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types: Vec<String> = self.types.iter().map(i64::to_string).collect();
        write!(f, "w={} ({})", self.weight, types.join(","))?;
        if let Some(s) = self.middle_sign {
            write!(f, " eps={s}1")?;
        }
        Ok(())
    }
}

pub fn tensor_profile(h: &HodgeData, h2: &HodgeData) -> Result<FiltrationProfile> {
    h.ensure_valid()?;
    h2.ensure_valid()?;
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for p in &h.types {
        for q in &h2.types {
            *counts.entry(p + q).or_default() += 1;
        }
    }
    let (jumps, mults) = counts.into_iter().unzip();
    Ok(FiltrationProfile { jumps, mults })
}

/// Sign pairs of conjugation eigenvectors: `(+,+)` and `(-,-)` land in the plus part.
pub fn tensor_betti_split(h: &HodgeData, h2: &HodgeData) -> Result<BettiSplit> {
    let (s, s2) = (h.betti_split()?, h2.betti_split()?);
    Ok(BettiSplit {
        d_plus: s.d_plus * s2.d_plus + s.d_minus * s2.d_minus,
        d_minus: s.d_plus * s2.d_minus + s.d_minus * s2.d_plus,
    })
}

/// Critical iff some prefix of the graded dimensions sums to `d_plus` and some
/// prefix sums to `d_minus`. The empty prefix counts, so a zero-dimensional side
/// gets index 0.
pub fn criticality(profile: &FiltrationProfile, split: &BettiSplit) -> Result<CriticalityResult> {
    if profile.total() != split.total() {
        return Err(Error::DimensionMismatch(format!(
            "profile has dimension {}, split has {}",
            profile.total(),
            split.total()
        )));
    }
    let sums = profile.prefix_sums();
    let find = |d: usize| {
        if d == 0 {
            Some(0)
        } else {
            sums.iter().position(|&s| s == d).map(|i| i + 1)
        }
    };
    let (k_plus, k_minus) = (find(split.d_plus), find(split.d_minus));
    let critical = k_plus.is_some() && k_minus.is_some();
    Ok(CriticalityResult {
        critical,
        k_plus: k_plus.filter(|_| critical),
        k_minus: k_minus.filter(|_| critical),
    })
}

/// Everything known about a pair before any period computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorData {
    pub profile: FiltrationProfile,
    pub split: BettiSplit,
    pub criticality: CriticalityResult,
}

impl TensorData {
    pub fn new(h: &HodgeData, h2: &HodgeData) -> Result<Self> {
        let profile = tensor_profile(h, h2)?;
        let split = tensor_betti_split(h, h2)?;
        let criticality = criticality(&profile, &split)?;
        Ok(Self {
            profile,
            split,
            criticality,
        })
    }

    /// The jump `r_k` closing the plus or minus prefix.
    pub fn threshold(&self, sign: Sign) -> Result<i64> {
        let k = self.criticality.k(sign).ok_or(Error::NotCritical)?;
        Ok(if k == 0 {
            self.profile.jumps[0] - 1
        } else {
            self.profile.jumps[k - 1]
        })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(w: i64, t: &[i64]) -> HodgeData {
        HodgeData::even(w, t).unwrap()
    }

    fn o(w: i64, t: &[i64], s: Sign) -> HodgeData {
        HodgeData::odd(w, t, s).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(
            HodgeData {
                weight: 1,
                types: vec![0, 1],
                middle_sign: None
            }
            .validate()
            .ok
        );
        assert!(
            HodgeData {
                weight: 2,
                types: vec![0, 1, 2],
                middle_sign: Some(Sign::Plus)
            }
            .validate()
            .ok
        );
        let bad = HodgeData {
            weight: 2,
            types: vec![0, 3],
            middle_sign: None,
        }
        .validate();
        assert_eq!(bad.names(), vec!["pairing"]);
    }

    #[test]
    fn validation_names_each_violation() {
        let h = HodgeData {
            weight: 3,
            types: vec![0, 2, 1],
            middle_sign: None,
        };
        let names = h.validate().names().into_iter().map(String::from).collect::<Vec<_>>();
        assert!(names.contains(&"increasing".to_string()));
        assert!(names.contains(&"weight_parity".to_string()));
        assert!(names.contains(&"middle_sign".to_string()));
        let empty = HodgeData {
            weight: 0,
            types: vec![],
            middle_sign: None,
        };
        assert_eq!(empty.validate().names(), vec!["nonempty"]);
        let extra = HodgeData {
            weight: 1,
            types: vec![0, 1],
            middle_sign: Some(Sign::Plus),
        };
        assert_eq!(extra.validate().names(), vec!["middle_sign"]);
        let off_middle = HodgeData {
            weight: 4,
            types: vec![0, 1, 4],
            middle_sign: Some(Sign::Plus),
        };
        assert_eq!(off_middle.validate().names(), vec!["middle_type"]);
    }

    #[test]
    fn betti_split_examples() {
        assert_eq!(
            e(1, &[0, 1]).betti_split().unwrap(),
            BettiSplit { d_plus: 1, d_minus: 1 }
        );
        assert_eq!(
            o(2, &[0, 1, 2], Sign::Plus).betti_split().unwrap(),
            BettiSplit { d_plus: 2, d_minus: 1 }
        );
        assert_eq!(
            o(4, &[0, 2, 4], Sign::Minus).betti_split().unwrap(),
            BettiSplit { d_plus: 1, d_minus: 2 }
        );
        let bad = HodgeData {
            weight: 2,
            types: vec![0, 3],
            middle_sign: None,
        };
        assert!(bad.betti_split().is_err());
    }

    #[test]
    fn filtration_profile_examples() {
        let p = e(1, &[0, 1]).filtration_profile().unwrap();
        assert_eq!((p.jumps, p.mults), (vec![0, 1], vec![1, 1]));
        let p = o(4, &[0, 2, 4], Sign::Plus).filtration_profile().unwrap();
        assert_eq!((p.jumps, p.mults), (vec![0, 2, 4], vec![1, 1, 1]));
    }

    #[test]
    fn tensor_profile_examples() {
        let p = tensor_profile(&e(1, &[0, 1]), &o(2, &[0, 1, 2], Sign::Plus)).unwrap();
        assert_eq!((p.jumps, p.mults), (vec![0, 1, 2, 3], vec![1, 2, 2, 1]));
        let p = tensor_profile(&e(1, &[0, 1]), &e(1, &[0, 1])).unwrap();
        assert_eq!((p.jumps, p.mults), (vec![0, 1, 2], vec![1, 2, 1]));
        let p = tensor_profile(&e(1, &[0, 1]), &o(10, &[5], Sign::Plus)).unwrap();
        assert_eq!((p.jumps, p.mults), (vec![5, 6], vec![1, 1]));
    }

    #[test]
    fn tensor_split_examples() {
        let a = e(1, &[0, 1]);
        let b = o(2, &[0, 1, 2], Sign::Plus);
        assert_eq!(
            tensor_betti_split(&a, &b).unwrap(),
            BettiSplit { d_plus: 3, d_minus: 3 }
        );
        assert_eq!(
            tensor_betti_split(&b, &b).unwrap(),
            BettiSplit { d_plus: 5, d_minus: 4 }
        );
        assert_eq!(
            tensor_betti_split(&a, &a).unwrap(),
            BettiSplit { d_plus: 2, d_minus: 2 }
        );
    }

    #[test]
    fn criticality_examples() {
        let prof = FiltrationProfile {
            jumps: vec![0, 1, 2, 3],
            mults: vec![1, 2, 2, 1],
        };
        let c = criticality(&prof, &BettiSplit { d_plus: 3, d_minus: 3 }).unwrap();
        assert!(c.critical);
        assert_eq!((c.k_plus, c.k_minus), (Some(2), Some(2)));

        let prof = FiltrationProfile {
            jumps: vec![0, 1, 2],
            mults: vec![1, 2, 1],
        };
        let c = criticality(&prof, &BettiSplit { d_plus: 2, d_minus: 2 }).unwrap();
        assert!(!c.critical);
        assert_eq!(c.k_plus, None);

        let t = TensorData::new(&o(2, &[0, 1, 2], Sign::Plus), &o(4, &[0, 2, 4], Sign::Plus)).unwrap();
        assert_eq!(t.profile.mults, vec![1, 1, 2, 1, 2, 1, 1]);
        assert_eq!(t.split, BettiSplit { d_plus: 5, d_minus: 4 });
        assert_eq!((t.criticality.k_plus, t.criticality.k_minus), (Some(4), Some(3)));
        assert_eq!(
            (t.threshold(Sign::Plus).unwrap(), t.threshold(Sign::Minus).unwrap()),
            (3, 2)
        );
    }

    #[test]
    fn criticality_total_mismatch() {
        let prof = FiltrationProfile {
            jumps: vec![0],
            mults: vec![1],
        };
        assert!(criticality(&prof, &BettiSplit { d_plus: 1, d_minus: 1 }).is_err());
    }

    #[test]
    fn json_shape() {
        let h = o(2, &[0, 1, 2], Sign::Minus);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"weight":2,"types":[0,1,2],"middle_sign":-1}"#);
        assert_eq!(serde_json::from_str::<HodgeData>(&s).unwrap(), h);
        let even: HodgeData = serde_json::from_str(r#"{"weight":1,"types":[0,1]}"#).unwrap();
        assert_eq!(even, e(1, &[0, 1]));
        assert!(serde_json::from_str::<HodgeData>(r#"{"weight":2,"types":[1],"middle_sign":0}"#).is_err());
    }

    /// Random valid Hodge data: distinct "lower half" types mirrored to the weight.
    pub(crate) fn arb_hodge() -> impl Strategy<Value = HodgeData> {
        (
            1usize..5,
            proptest::collection::btree_set(0i64..6, 0..3),
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(|(w_half, lower, odd, plus)| {
                let lower: Vec<i64> = lower.into_iter().filter(|&p| p < w_half as i64).collect();
                let w = 2 * w_half as i64 + if odd { 0 } else { 1 };
                let mut types = lower.clone();
                if odd {
                    types.push(w / 2);
                }
                types.extend(lower.iter().rev().map(|p| w - p));
                if types.is_empty() {
                    types = vec![0, w];
                }
                let sign = (types.len() % 2 == 1).then_some(if plus { Sign::Plus } else { Sign::Minus });
                HodgeData::new(w, types, sign).unwrap()
            })
    }

    proptest! {
        #[test]
        fn tensor_profile_is_symmetric_and_commutes(h in arb_hodge(), h2 in arb_hodge()) {
            let p = tensor_profile(&h, &h2).unwrap();
            prop_assert_eq!(&p, &tensor_profile(&h2, &h).unwrap());
            prop_assert!(p.is_symmetric(h.weight + h2.weight));
            prop_assert_eq!(p.total(), h.rank() * h2.rank());
            prop_assert!(p.mults.iter().all(|&u| u >= 1));
        }

        #[test]
        fn tensor_split_totals(h in arb_hodge(), h2 in arb_hodge()) {
            let s = tensor_betti_split(&h, &h2).unwrap();
            prop_assert_eq!(s.total(), h.rank() * h2.rank());
            prop_assert_eq!(s.epsilon(), h.epsilon() * h2.epsilon());
        }

        #[test]
        fn critical_odd_dimension_indices_differ_by_one(h in arb_hodge(), h2 in arb_hodge()) {
            let t = TensorData::new(&h, &h2).unwrap();
            if t.criticality.critical && t.split.d_plus != t.split.d_minus {
                let (kp, km) = (t.criticality.k_plus.unwrap(), t.criticality.k_minus.unwrap());
                prop_assert_eq!(kp.abs_diff(km), 1);
            }
            if t.criticality.critical && t.split.d_plus == t.split.d_minus {
                prop_assert_eq!(t.criticality.k_plus, t.criticality.k_minus);
            }
        }

        #[test]
        fn unit_mults_with_even_split_are_critical(m in 1usize..8) {
            let prof = FiltrationProfile { jumps: (0..2 * m as i64).collect(), mults: vec![1; 2 * m] };
            let c = criticality(&prof, &BettiSplit { d_plus: m, d_minus: m }).unwrap();
            prop_assert!(c.critical);
            prop_assert_eq!(c.k_plus, Some(m));
        }
    }
}
