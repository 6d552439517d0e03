//! Decision criteria over simple lotteries.
//!
//! Scalar rules (`U_pes`, `U_opt`, the two possibilistic Choquet integrals,
//! OMEU), the binary possibilistic utility `PU`, and the two pairwise
//! likely-dominance rules. [`compare`] is the single entry point the solver
//! and the property checker go through.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lottery::{KappaLottery, Lottery, LotteryError, SimpleLottery};
use crate::numbers::{render_rational, Degree, KappaRank, NumberError, Utility};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("{criterion} needs utilities in [0, 1], found {utility}")]
    ScaleViolation {
        criterion: CriterionId,
        utility: String,
    },
    #[error("{criterion} cannot be applied to a {found} lottery")]
    KindMismatch {
        criterion: CriterionId,
        found: LotteryKind,
    },
    #[error("PU over scalar utilities needs an explicit embedding (optimistic or pessimistic)")]
    MissingEmbedding,
    #[error("an embedding only applies to PU, not {0}")]
    UnexpectedEmbedding(CriterionId),
    #[error("binary utility ⟨{top}, {bottom}⟩ violates max(top, bottom) = 1")]
    BinaryNotNormalized { top: String, bottom: String },
    #[error(transparent)]
    Number(#[from] NumberError),
    #[error(transparent)]
    Lottery(#[from] LotteryError),
}

/// Outcome of a pairwise comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    FirstStrictlyPreferred,
    SecondStrictlyPreferred,
    Indifferent,
}

impl Preference {
    /// `Greater` means the first argument is better.
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Greater => Preference::FirstStrictlyPreferred,
            Ordering::Less => Preference::SecondStrictlyPreferred,
            Ordering::Equal => Preference::Indifferent,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Preference::FirstStrictlyPreferred => Preference::SecondStrictlyPreferred,
            Preference::SecondStrictlyPreferred => Preference::FirstStrictlyPreferred,
            Preference::Indifferent => Preference::Indifferent,
        }
    }

    /// The first argument is at least as good as the second.
    pub fn first_weakly_preferred(self) -> bool {
        self != Preference::SecondStrictlyPreferred
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preference::FirstStrictlyPreferred => "first strictly preferred",
            Preference::SecondStrictlyPreferred => "second strictly preferred",
            Preference::Indifferent => "indifferent",
        })
    }
}

/// `⟨ū, u̲⟩`: possibility of the ideal reward and of the anti-ideal one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryUtility {
    top: Degree,
    bottom: Degree,
}

impl BinaryUtility {
    pub fn new(top: Degree, bottom: Degree) -> Result<Self, CriterionError> {
        if !top.is_one() && !bottom.is_one() {
            return Err(CriterionError::BinaryNotNormalized {
                top: top.to_string(),
                bottom: bottom.to_string(),
            });
        }
        Ok(BinaryUtility { top, bottom })
    }

    pub fn top(&self) -> &Degree {
        &self.top
    }

    pub fn bottom(&self) -> &Degree {
        &self.bottom
    }

    /// Position in the total order: upper class (top = 1, bottom < 1) ranks
    /// above `⟨1, 1⟩`, which ranks above the lower class (top < 1).
    fn rank_key(&self) -> (u8, BigRational) {
        match (self.top.is_one(), self.bottom.is_one()) {
            (true, false) => (2, -self.bottom.value().clone()),
            (true, true) => (1, BigRational::zero()),
            (false, _) => (0, self.top.value().clone()),
        }
    }
}

impl fmt::Display for BinaryUtility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.top, self.bottom)
    }
}

impl fmt::Debug for BinaryUtility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A possibilistic lottery over binary-utility outcomes.
pub type BinaryLottery = Lottery<BinaryUtility, Degree>;

/// Reduced lottery of any of the three kinds a tree can produce.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyLottery {
    Scalar(SimpleLottery),
    Binary(BinaryLottery),
    Kappa(KappaLottery),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LotteryKind {
    Scalar,
    Binary,
    Kappa,
}

impl fmt::Display for LotteryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LotteryKind::Scalar => "scalar-utility",
            LotteryKind::Binary => "binary-utility",
            LotteryKind::Kappa => "kappa",
        })
    }
}

impl AnyLottery {
    pub fn kind(&self) -> LotteryKind {
        match self {
            AnyLottery::Scalar(_) => LotteryKind::Scalar,
            AnyLottery::Binary(_) => LotteryKind::Binary,
            AnyLottery::Kappa(_) => LotteryKind::Kappa,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyLottery::Scalar(l) => l.len(),
            AnyLottery::Binary(l) => l.len(),
            AnyLottery::Kappa(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for AnyLottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyLottery::Scalar(l) => l.fmt(f),
            AnyLottery::Binary(l) => l.fmt(f),
            AnyLottery::Kappa(l) => l.fmt(f),
        }
    }
}

impl From<SimpleLottery> for AnyLottery {
    fn from(l: SimpleLottery) -> Self {
        AnyLottery::Scalar(l)
    }
}

impl From<BinaryLottery> for AnyLottery {
    fn from(l: BinaryLottery) -> Self {
        AnyLottery::Binary(l)
    }
}

impl From<KappaLottery> for AnyLottery {
    fn from(l: KappaLottery) -> Self {
        AnyLottery::Kappa(l)
    }
}

/// The eight decision rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionId {
    Upes,
    Uopt,
    Pu,
    Ln,
    Lpi,
    Chn,
    Chpi,
    Omeu,
}

impl CriterionId {
    pub const ALL: [CriterionId; 8] = [
        CriterionId::Upes,
        CriterionId::Uopt,
        CriterionId::Pu,
        CriterionId::Ln,
        CriterionId::Lpi,
        CriterionId::Chn,
        CriterionId::Chpi,
        CriterionId::Omeu,
    ];

    /// Criteria whose order survives compounding with a common third lottery,
    /// which is what backward induction needs.
    pub fn is_weakly_monotone(self) -> bool {
        !matches!(self, CriterionId::Chn | CriterionId::Chpi)
    }

    pub fn is_pairwise_only(self) -> bool {
        matches!(self, CriterionId::Ln | CriterionId::Lpi)
    }

    pub fn name(self) -> &'static str {
        match self {
            CriterionId::Upes => "upes",
            CriterionId::Uopt => "uopt",
            CriterionId::Pu => "pu",
            CriterionId::Ln => "ln",
            CriterionId::Lpi => "lpi",
            CriterionId::Chn => "chn",
            CriterionId::Chpi => "chpi",
            CriterionId::Omeu => "omeu",
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriterionId::Upes => "U_pes",
            CriterionId::Uopt => "U_opt",
            CriterionId::Pu => "PU",
            CriterionId::Ln => "LN",
            CriterionId::Lpi => "LΠ",
            CriterionId::Chn => "Ch_N",
            CriterionId::Chpi => "Ch_Π",
            CriterionId::Omeu => "OMEU",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown criterion `{0}` (expected one of upes, uopt, pu, ln, lpi, chn, chpi, omeu)")]
pub struct UnknownCriterion(String);

impl FromStr for CriterionId {
    type Err = UnknownCriterion;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        CriterionId::ALL
            .into_iter()
            .find(|c| c.name() == lower)
            .ok_or_else(|| UnknownCriterion(s.to_string()))
    }
}

/// How a scalar `[0, 1]` utility is read as a binary utility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedding {
    /// `u ↦ ⟨u, 1⟩`; PU then orders lotteries as `U_opt`.
    Optimistic,
    /// `u ↦ ⟨1, 1 - u⟩`; PU then orders lotteries as `U_pes`.
    Pessimistic,
}

impl FromStr for Embedding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "optimistic" | "opt" => Ok(Embedding::Optimistic),
            "pessimistic" | "pes" => Ok(Embedding::Pessimistic),
            other => Err(format!(
                "unknown embedding `{other}` (expected optimistic or pessimistic)"
            )),
        }
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Embedding::Optimistic => "optimistic",
            Embedding::Pessimistic => "pessimistic",
        })
    }
}

/// A criterion plus, for PU over scalar utilities, the embedding in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Criterion {
    pub id: CriterionId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Embedding>,
}

impl Criterion {
    pub fn new(id: CriterionId) -> Self {
        Criterion {
            id,
            embedding: None,
        }
    }

    pub fn pu_embedded(embedding: Embedding) -> Self {
        Criterion {
            id: CriterionId::Pu,
            embedding: Some(embedding),
        }
    }

    /// The lottery kind this criterion consumes.
    pub fn lottery_kind(&self) -> LotteryKind {
        match (self.id, self.embedding) {
            (CriterionId::Omeu, _) => LotteryKind::Kappa,
            (CriterionId::Pu, None) => LotteryKind::Binary,
            _ => LotteryKind::Scalar,
        }
    }

    pub fn check(&self) -> Result<(), CriterionError> {
        if self.embedding.is_some() && self.id != CriterionId::Pu {
            return Err(CriterionError::UnexpectedEmbedding(self.id));
        }
        Ok(())
    }
}

impl From<CriterionId> for Criterion {
    fn from(id: CriterionId) -> Self {
        Criterion::new(id)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.embedding {
            Some(e) => write!(f, "{} ({e} embedding)", self.id),
            None => write!(f, "{}", self.id),
        }
    }
}

/// Value a criterion assigns to a single lottery.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionValue {
    /// `U_pes`, `U_opt`, `Ch_N`, `Ch_Π`.
    #[serde(with = "rational_text")]
    Scalar(BigRational),
    Binary {
        top: Degree,
        bottom: Degree,
    },
    Rank(KappaRank),
    /// LN and LΠ only compare pairs.
    Pairwise,
}

impl fmt::Display for CriterionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionValue::Scalar(v) => f.write_str(&crate::numbers::render_rational_long(v)),
            CriterionValue::Binary { top, bottom } => write!(f, "⟨{top}, {bottom}⟩"),
            CriterionValue::Rank(k) => write!(f, "{k}"),
            CriterionValue::Pairwise => f.write_str("(pairwise criterion, no scalar value)"),
        }
    }
}

mod rational_text {
    use num_rational::BigRational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::numbers::render_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        crate::numbers::parse_rational(&text).map_err(de::Error::custom)
    }
}

fn require_unit_scale(
    criterion: CriterionId,
    lottery: &SimpleLottery,
) -> Result<(), CriterionError> {
    // the best outcome is the largest, so one check suffices
    let best = lottery.best_outcome();
    if best.is_unit() {
        Ok(())
    } else {
        Err(CriterionError::ScaleViolation {
            criterion,
            utility: best.to_string(),
        })
    }
}

fn unit_degree(u: &Utility) -> Degree {
    u.as_degree().expect("scale checked by caller")
}

/// `U_pes(L) = max_u min(u, N(L ≥ u))`, taken over support utilities.
pub fn u_pes(lottery: &SimpleLottery) -> Result<Degree, CriterionError> {
    require_unit_scale(CriterionId::Upes, lottery)?;
    Ok(lottery
        .outcomes()
        .map(|u| unit_degree(u).min(lottery.necessity_ge(u)))
        .max()
        .expect("non-empty support"))
}

/// `U_opt(L) = max_u min(u, Π(L ≥ u))`, taken over support utilities.
pub fn u_opt(lottery: &SimpleLottery) -> Result<Degree, CriterionError> {
    require_unit_scale(CriterionId::Uopt, lottery)?;
    Ok(lottery
        .outcomes()
        .map(|u| unit_degree(u).min(lottery.possibility_ge(u)))
        .max()
        .expect("non-empty support"))
}

/// PU of a lottery over binary utilities: componentwise max-min reduction.
pub fn pu_value(lottery: &BinaryLottery) -> BinaryUtility {
    let mut top = Degree::zero();
    let mut bottom = Degree::zero();
    for (outcome, lambda) in lottery.iter() {
        top = top.max(lambda.clone().min(outcome.top.clone()));
        bottom = bottom.max(lambda.clone().min(outcome.bottom.clone()));
    }
    BinaryUtility::new(top, bottom).expect("reduction of normalized inputs is normalized")
}

/// The total order on binary utilities.
pub fn pu_compare(a: &BinaryUtility, b: &BinaryUtility) -> Preference {
    Preference::from_ordering(a.rank_key().cmp(&b.rank_key()))
}

pub fn embed_scalar(u: &Utility, mode: Embedding) -> Result<BinaryUtility, CriterionError> {
    let degree = u
        .as_degree()
        .ok_or_else(|| CriterionError::ScaleViolation {
            criterion: CriterionId::Pu,
            utility: u.to_string(),
        })?;
    Ok(match mode {
        Embedding::Optimistic => BinaryUtility {
            top: degree,
            bottom: Degree::one(),
        },
        Embedding::Pessimistic => BinaryUtility {
            top: Degree::one(),
            bottom: degree.complement(),
        },
    })
}

pub fn embed_lottery(
    lottery: &SimpleLottery,
    mode: Embedding,
) -> Result<BinaryLottery, CriterionError> {
    require_unit_scale(CriterionId::Pu, lottery)?;
    Ok(lottery.map_outcomes(|u| embed_scalar(u, mode).expect("scale checked")))
}

/// Which likelihood the likely-dominance rule compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Likelihood {
    Necessity,
    Possibility,
}

/// `Π(a ≥ b)` (or `Π(a > b)` when `strict`) under min-combination of the two
/// independent distributions.
pub fn overtake_possibility<O: Ord>(
    a: &Lottery<O, Degree>,
    b: &Lottery<O, Degree>,
    strict: bool,
) -> Degree {
    let mut best = Degree::zero();
    for (u, da) in a.iter() {
        for (v, db) in b.iter() {
            let qualifies = if strict { u > v } else { u >= v };
            if qualifies {
                let joint = da.min(db);
                if *joint > best {
                    best = joint.clone();
                }
            }
        }
    }
    best
}

/// Likely dominance: compares the likelihood that `a` is at least as good as
/// `b` with the likelihood of the converse.
pub fn ld_compare<O: Ord>(
    a: &Lottery<O, Degree>,
    b: &Lottery<O, Degree>,
    mode: Likelihood,
) -> Preference {
    let (a_over_b, b_over_a) = match mode {
        Likelihood::Possibility => (
            overtake_possibility(a, b, false),
            overtake_possibility(b, a, false),
        ),
        // N(a ≥ b) = 1 - Π(a < b) = 1 - Π(b > a)
        Likelihood::Necessity => (
            overtake_possibility(b, a, true).complement(),
            overtake_possibility(a, b, true).complement(),
        ),
    };
    Preference::from_ordering(a_over_b.cmp(&b_over_a))
}

/// Capacity used by a possibilistic Choquet integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Capacity {
    Necessity,
    Possibility,
}

/// `Σ (u_i - u_{i-1}) · μ(L ≥ u_i)` with `u_0 = 0`, for any capacity given as
/// the function `threshold ↦ μ(L ≥ threshold)`.
pub fn choquet_with<F>(lottery: &SimpleLottery, mut capacity: F) -> BigRational
where
    F: FnMut(&Utility) -> BigRational,
{
    let mut total = BigRational::zero();
    let mut previous = BigRational::zero();
    for u in lottery.outcomes() {
        let step = u.value() - &previous;
        if !step.is_zero() {
            total += step * capacity(u);
        }
        previous = u.value().clone();
    }
    total
}

pub fn choquet(lottery: &SimpleLottery, capacity: Capacity) -> BigRational {
    match capacity {
        Capacity::Necessity => choquet_with(lottery, |u| lottery.necessity_ge(u).into_inner()),
        Capacity::Possibility => choquet_with(lottery, |u| lottery.possibility_ge(u).into_inner()),
    }
}

/// `OMEU(L) = min (κ + μ)`; lower is better.
pub fn omeu(lottery: &KappaLottery) -> KappaRank {
    lottery
        .iter()
        .map(|(mu, kappa)| kappa.saturating_add(*mu))
        .min()
        .expect("non-empty support")
}

fn kind_mismatch(criterion: CriterionId, found: &AnyLottery) -> CriterionError {
    CriterionError::KindMismatch {
        criterion,
        found: found.kind(),
    }
}

fn binary_view(
    criterion: &Criterion,
    lottery: &AnyLottery,
) -> Result<BinaryUtility, CriterionError> {
    match (lottery, criterion.embedding) {
        (AnyLottery::Binary(l), None) => Ok(pu_value(l)),
        (AnyLottery::Scalar(l), Some(mode)) => Ok(pu_value(&embed_lottery(l, mode)?)),
        (AnyLottery::Scalar(_), None) => Err(CriterionError::MissingEmbedding),
        _ => Err(kind_mismatch(CriterionId::Pu, lottery)),
    }
}

/// Value of `lottery` under `criterion`.
pub fn evaluate(
    criterion: &Criterion,
    lottery: &AnyLottery,
) -> Result<CriterionValue, CriterionError> {
    criterion.check()?;
    fn scalar(id: CriterionId, l: &AnyLottery) -> Result<&SimpleLottery, CriterionError> {
        match l {
            AnyLottery::Scalar(s) => Ok(s),
            other => Err(kind_mismatch(id, other)),
        }
    }
    Ok(match criterion.id {
        CriterionId::Upes => {
            CriterionValue::Scalar(u_pes(scalar(criterion.id, lottery)?)?.into_inner())
        }
        CriterionId::Uopt => {
            CriterionValue::Scalar(u_opt(scalar(criterion.id, lottery)?)?.into_inner())
        }
        CriterionId::Chn => {
            CriterionValue::Scalar(choquet(scalar(criterion.id, lottery)?, Capacity::Necessity))
        }
        CriterionId::Chpi => CriterionValue::Scalar(choquet(
            scalar(criterion.id, lottery)?,
            Capacity::Possibility,
        )),
        CriterionId::Pu => {
            let b = binary_view(criterion, lottery)?;
            CriterionValue::Binary {
                top: b.top,
                bottom: b.bottom,
            }
        }
        CriterionId::Ln | CriterionId::Lpi => {
            scalar(criterion.id, lottery)?;
            CriterionValue::Pairwise
        }
        CriterionId::Omeu => match lottery {
            AnyLottery::Kappa(k) => CriterionValue::Rank(omeu(k)),
            other => return Err(kind_mismatch(criterion.id, other)),
        },
    })
}

/// Compares two lotteries under `criterion`.
///
/// Higher values win, except OMEU where the lower rank wins. Ties are exact
/// equality of values.
pub fn compare(
    criterion: &Criterion,
    a: &AnyLottery,
    b: &AnyLottery,
) -> Result<Preference, CriterionError> {
    criterion.check()?;
    match criterion.id {
        CriterionId::Ln | CriterionId::Lpi => {
            let mode = if criterion.id == CriterionId::Ln {
                Likelihood::Necessity
            } else {
                Likelihood::Possibility
            };
            match (a, b) {
                (AnyLottery::Scalar(x), AnyLottery::Scalar(y)) => Ok(ld_compare(x, y, mode)),
                (AnyLottery::Scalar(_), other) | (other, _) => {
                    Err(kind_mismatch(criterion.id, other))
                }
            }
        }
        CriterionId::Pu => Ok(pu_compare(
            &binary_view(criterion, a)?,
            &binary_view(criterion, b)?,
        )),
        _ => {
            let va = evaluate(criterion, a)?;
            let vb = evaluate(criterion, b)?;
            Ok(compare_values(&va, &vb))
        }
    }
}

/// Orders two values produced by the same scalar criterion.
pub fn compare_values(a: &CriterionValue, b: &CriterionValue) -> Preference {
    match (a, b) {
        (CriterionValue::Scalar(x), CriterionValue::Scalar(y)) => {
            Preference::from_ordering(x.cmp(y))
        }
        (CriterionValue::Rank(x), CriterionValue::Rank(y)) => Preference::from_ordering(y.cmp(x)),
        (
            CriterionValue::Binary {
                top: t1,
                bottom: b1,
            },
            CriterionValue::Binary {
                top: t2,
                bottom: b2,
            },
        ) => {
            let x = BinaryUtility {
                top: t1.clone(),
                bottom: b1.clone(),
            };
            let y = BinaryUtility {
                top: t2.clone(),
                bottom: b2.clone(),
            };
            pu_compare(&x, &y)
        }
        _ => Preference::Indifferent,
    }
}

impl CriterionValue {
    pub fn render(&self) -> String {
        match self {
            CriterionValue::Scalar(v) => render_rational(v),
            other => other.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(entries: &[(&str, &str)]) -> SimpleLottery {
        Lottery::new(
            entries
                .iter()
                .map(|(d, u)| (u.parse().unwrap(), d.parse().unwrap())),
        )
        .unwrap()
    }

    fn d(s: &str) -> Degree {
        s.parse().unwrap()
    }

    fn q(s: &str) -> BigRational {
        crate::numbers::parse_rational(s).unwrap()
    }

    fn bu(top: &str, bottom: &str) -> BinaryUtility {
        BinaryUtility::new(d(top), d(bottom)).unwrap()
    }

    #[test]
    fn pessimistic_utility_examples() {
        assert_eq!(u_pes(&simple(&[("1", "0.4")])).unwrap(), d("0.4"));
        assert_eq!(u_pes(&simple(&[("1", "0"), ("1", "1")])).unwrap(), d("0"));
        assert_eq!(
            u_pes(&simple(&[("0.3", "0"), ("1", "1")])).unwrap(),
            d("0.7")
        );
    }

    #[test]
    fn optimistic_utility_examples() {
        assert_eq!(u_opt(&simple(&[("1", "0.4")])).unwrap(), d("0.4"));
        assert_eq!(u_opt(&simple(&[("1", "0"), ("1", "1")])).unwrap(), d("1"));
        assert_eq!(
            u_opt(&simple(&[("1", "0"), ("0.4", "0.9")])).unwrap(),
            d("0.4")
        );
    }

    #[test]
    fn qualitative_rules_reject_out_of_scale_utilities() {
        let l = simple(&[("1", "2")]);
        assert!(matches!(
            u_pes(&l),
            Err(CriterionError::ScaleViolation { .. })
        ));
        assert!(matches!(
            u_opt(&l),
            Err(CriterionError::ScaleViolation { .. })
        ));
        assert!(embed_scalar(&"1.5".parse().unwrap(), Embedding::Optimistic).is_err());
    }

    #[test]
    fn pu_value_examples() {
        let l = BinaryLottery::new([(bu("1", "0"), d("1"))]).unwrap();
        assert_eq!(pu_value(&l), bu("1", "0"));
        let l = BinaryLottery::new([(bu("1", "0.2"), d("0.5")), (bu("0.7", "1"), d("1"))]).unwrap();
        assert_eq!(pu_value(&l), bu("0.7", "1"));
        let l = BinaryLottery::new([(bu("1", "1"), d("1"))]).unwrap();
        assert_eq!(pu_value(&l), bu("1", "1"));
    }

    #[test]
    fn binary_utility_must_be_normalized() {
        assert!(matches!(
            BinaryUtility::new(d("0.5"), d("0.9")),
            Err(CriterionError::BinaryNotNormalized { .. })
        ));
    }

    #[test]
    fn pu_order_examples() {
        assert_eq!(
            pu_compare(&bu("1", "0.3"), &bu("1", "0.6")),
            Preference::FirstStrictlyPreferred
        );
        assert_eq!(
            pu_compare(&bu("1", "0.9"), &bu("0.99", "1")),
            Preference::FirstStrictlyPreferred
        );
        assert_eq!(
            pu_compare(&bu("0.5", "1"), &bu("0.5", "1")),
            Preference::Indifferent
        );
        assert_eq!(
            pu_compare(&bu("0.2", "1"), &bu("0.6", "1")),
            Preference::SecondStrictlyPreferred
        );
        // ⟨1,1⟩ sits between the two classes
        assert_eq!(
            pu_compare(&bu("1", "1"), &bu("1", "0.99")),
            Preference::SecondStrictlyPreferred
        );
        assert_eq!(
            pu_compare(&bu("1", "1"), &bu("0.99", "1")),
            Preference::FirstStrictlyPreferred
        );
    }

    #[test]
    fn embedding_examples() {
        let one: Utility = "1".parse().unwrap();
        let zero: Utility = "0".parse().unwrap();
        assert_eq!(
            embed_scalar(&one, Embedding::Pessimistic).unwrap(),
            bu("1", "0")
        );
        assert_eq!(
            embed_scalar(&zero, Embedding::Optimistic).unwrap(),
            bu("0", "1")
        );
        assert_eq!(
            embed_scalar(&"0.3".parse().unwrap(), Embedding::Pessimistic).unwrap(),
            bu("1", "0.7")
        );
    }

    #[test]
    fn likely_dominance_examples() {
        let l = simple(&[("0.3", "0"), ("1", "0.4"), ("0.6", "0.9")]);
        assert_eq!(
            ld_compare(&l, &l, Likelihood::Necessity),
            Preference::Indifferent
        );
        assert_eq!(
            ld_compare(&l, &l, Likelihood::Possibility),
            Preference::Indifferent
        );
        let a = simple(&[("1", "0.5")]);
        let b = simple(&[("1", "0.2")]);
        assert_eq!(
            ld_compare(&a, &b, Likelihood::Possibility),
            Preference::FirstStrictlyPreferred
        );
        assert_eq!(
            ld_compare(&a, &b, Likelihood::Necessity),
            Preference::FirstStrictlyPreferred
        );
        assert_eq!(
            ld_compare(&b, &a, Likelihood::Necessity),
            Preference::SecondStrictlyPreferred
        );
    }

    #[test]
    fn choquet_of_a_merged_lottery() {
        let l1 = simple(&[("0.2", "0"), ("1", "2"), ("0.5", "9")]);
        let l3 = simple(&[
            ("0.2", "0"),
            ("1", "2"),
            ("0.4", "4"),
            ("1", "7"),
            ("0.5", "9"),
        ]);
        assert_eq!(choquet(&l1, Capacity::Possibility), q("11/2"));
        assert_eq!(choquet(&l3, Capacity::Possibility), q("8"));
    }

    #[test]
    fn choquet_trap_values() {
        let l = simple(&[("0.2", "0"), ("0.5", "0.51"), ("1", "1")]);
        let lp = simple(&[("0.1", "0"), ("0.6", "0.5"), ("1", "1")]);
        assert_eq!(choquet(&l, Capacity::Necessity), q("0.653"));
        assert_eq!(choquet(&lp, Capacity::Necessity), q("0.65"));
        let reduced = simple(&[("1", "0"), ("0.6", "0.5"), ("0.49", "0.51"), ("0.1", "1")]);
        assert_eq!(choquet(&reduced, Capacity::Possibility), q("0.3539"));
        let constant = simple(&[("1", "0.37")]);
        assert_eq!(choquet(&constant, Capacity::Necessity), q("0.37"));
        assert_eq!(choquet(&constant, Capacity::Possibility), q("0.37"));
    }

    #[test]
    fn additive_capacity_gives_expected_value() {
        // two outcomes, probabilities p and 1-p
        let l = simple(&[("1", "2"), ("1", "7")]);
        let p = q("3/10");
        let value = choquet_with(&l, |u| {
            if *u.value() <= q("2") {
                q("1")
            } else {
                q("1") - &p
            }
        });
        assert_eq!(value, &p * q("2") + (q("1") - &p) * q("7"));
    }

    #[test]
    fn omeu_examples() {
        let k = |pairs: &[(u64, KappaRank)]| {
            KappaLottery::new(
                pairs
                    .iter()
                    .map(|&(kappa, mu)| (mu, KappaRank::Finite(kappa))),
            )
            .unwrap()
        };
        assert_eq!(omeu(&k(&[(0, KappaRank::Finite(0))])), KappaRank::Finite(0));
        assert_eq!(
            omeu(&k(&[
                (2, KappaRank::Finite(3)),
                (0, KappaRank::Finite(5)),
                (1, KappaRank::Finite(1))
            ])),
            KappaRank::Finite(2)
        );
        assert_eq!(omeu(&k(&[(0, KappaRank::Infinite)])), KappaRank::Infinite);
    }

    #[test]
    fn compare_examples() {
        let chn = Criterion::new(CriterionId::Chn);
        let l: AnyLottery = simple(&[("0.2", "0"), ("0.5", "0.51"), ("1", "1")]).into();
        let lp: AnyLottery = simple(&[("0.1", "0"), ("0.6", "0.5"), ("1", "1")]).into();
        assert_eq!(
            compare(&chn, &l, &lp).unwrap(),
            Preference::FirstStrictlyPreferred
        );

        let uopt = Criterion::new(CriterionId::Uopt);
        let ignorant: AnyLottery = simple(&[("1", "0"), ("1", "1")]).into();
        let half: AnyLottery = simple(&[("1", "0.5")]).into();
        assert_eq!(
            compare(&uopt, &ignorant, &half).unwrap(),
            Preference::FirstStrictlyPreferred
        );

        for id in CriterionId::ALL {
            let criterion = match id {
                CriterionId::Pu => Criterion::pu_embedded(Embedding::Pessimistic),
                _ => Criterion::new(id),
            };
            let sample = if id == CriterionId::Omeu {
                AnyLottery::Kappa(
                    KappaLottery::new([(KappaRank::Finite(1), KappaRank::ZERO)]).unwrap(),
                )
            } else {
                l.clone()
            };
            assert_eq!(
                compare(&criterion, &sample, &sample).unwrap(),
                Preference::Indifferent,
                "{id}"
            );
        }
    }

    #[test]
    fn compare_reports_kind_and_embedding_errors() {
        let l: AnyLottery = simple(&[("1", "0.5")]).into();
        let k: AnyLottery = KappaLottery::certain(KappaRank::ZERO).into();
        assert!(matches!(
            compare(&Criterion::new(CriterionId::Omeu), &l, &l),
            Err(CriterionError::KindMismatch { .. })
        ));
        assert!(matches!(
            compare(&Criterion::new(CriterionId::Upes), &k, &k),
            Err(CriterionError::KindMismatch { .. })
        ));
        assert_eq!(
            compare(&Criterion::new(CriterionId::Pu), &l, &l),
            Err(CriterionError::MissingEmbedding)
        );
        let bad = Criterion {
            id: CriterionId::Chn,
            embedding: Some(Embedding::Optimistic),
        };
        assert_eq!(
            compare(&bad, &l, &l),
            Err(CriterionError::UnexpectedEmbedding(CriterionId::Chn))
        );
        let big: AnyLottery = simple(&[("1", "3")]).into();
        assert!(matches!(
            compare(&Criterion::new(CriterionId::Upes), &big, &big),
            Err(CriterionError::ScaleViolation { .. })
        ));
        // Choquet and likely dominance accept any non-negative utility
        assert!(compare(&Criterion::new(CriterionId::Chpi), &big, &l).is_ok());
        assert!(compare(&Criterion::new(CriterionId::Ln), &big, &l).is_ok());
    }

    #[test]
    fn omeu_prefers_lower_rank() {
        let low: AnyLottery = KappaLottery::certain(KappaRank::Finite(1)).into();
        let high: AnyLottery = KappaLottery::certain(KappaRank::Finite(4)).into();
        let omeu = Criterion::new(CriterionId::Omeu);
        assert_eq!(
            compare(&omeu, &low, &high).unwrap(),
            Preference::FirstStrictlyPreferred
        );
    }

    #[test]
    fn criterion_ids_parse() {
        for id in CriterionId::ALL {
            assert_eq!(id.name().parse::<CriterionId>().unwrap(), id);
        }
        assert!("eu".parse::<CriterionId>().is_err());
    }
}
