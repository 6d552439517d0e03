//! Randomized and regression checks of the structural claims behind the
//! solvers: weak monotonicity, the pessimism of Ch_N, quasitransitivity of
//! likely dominance, and the gap between backward induction and exhaustive
//! search under the Choquet criteria.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{
    self, choquet, AnyLottery, BinaryUtility, Capacity, Criterion, CriterionError, CriterionId,
    CriterionValue, LotteryKind, Preference,
};
use crate::dtree::{
    count_strategies, random_tree, DecisionTree, EdgeWeight, Strategy, TreeBuilder, TreeMode,
    TreeProfile,
};
use crate::format::{FormatError, LotteryBody};
use crate::lottery::{Lottery, LotteryError, Plausibility, SimpleLottery};
use crate::numbers::{Degree, KappaRank, Utility};
use crate::solver::{dp_optimize, exhaustive_optimize, SolveOptions, SolverError};

pub const WITNESS_FORMAT: &str = "possdt-witness/1";

#[derive(Debug, Error)]
pub enum PropError {
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error(transparent)]
    Lottery(#[from] LotteryError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("trial is malformed: {0}")]
    BadTrial(String),
    #[error("witness does not reproduce: {0}")]
    NotReproduced(String),
}

/// One instance of the weak monotonicity test: does `L ≥ L'` survive
/// compounding both with `L''` at weights `α` and `β`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityTrial {
    pub criterion: Criterion,
    pub l: AnyLottery,
    pub lp: AnyLottery,
    pub lpp: AnyLottery,
    pub alpha: EdgeWeight,
    pub beta: EdgeWeight,
}

fn mix2<O, P>(
    alpha: &P,
    first: &Lottery<O, P>,
    beta: &P,
    third: &Lottery<O, P>,
) -> Result<Lottery<O, P>, LotteryError>
where
    O: Ord + Clone + std::fmt::Debug,
    P: Plausibility,
{
    Lottery::mix([(alpha, first), (beta, third)])
}

impl MonotonicityTrial {
    fn validate(&self) -> Result<(), PropError> {
        self.criterion.check()?;
        let kind = self.criterion.lottery_kind();
        for (name, l) in [("L", &self.l), ("L'", &self.lp), ("L''", &self.lpp)] {
            if l.kind() != kind {
                return Err(PropError::BadTrial(format!(
                    "{name} is a {} lottery, {} needs {kind}",
                    l.kind(),
                    self.criterion
                )));
            }
        }
        match (&self.alpha, &self.beta, kind) {
            (
                EdgeWeight::Degree(a),
                EdgeWeight::Degree(b),
                LotteryKind::Scalar | LotteryKind::Binary,
            ) => {
                if a.is_one() || b.is_one() {
                    Ok(())
                } else {
                    Err(PropError::BadTrial(format!(
                        "max(α, β) must be 1, got α = {a}, β = {b}"
                    )))
                }
            }
            (EdgeWeight::Rank(a), EdgeWeight::Rank(b), LotteryKind::Kappa) => {
                if *a == KappaRank::ZERO || *b == KappaRank::ZERO {
                    Ok(())
                } else {
                    Err(PropError::BadTrial(format!(
                        "min(α, β) must be 0, got α = {a}, β = {b}"
                    )))
                }
            }
            _ => Err(PropError::BadTrial(
                "α and β do not match the lottery kind".into(),
            )),
        }
    }

    /// Reduction of `(α ∧ first) ∨ (β ∧ L'')`.
    pub fn compose(&self, first: &AnyLottery) -> Result<AnyLottery, PropError> {
        Ok(match (first, &self.lpp, &self.alpha, &self.beta) {
            (
                AnyLottery::Scalar(x),
                AnyLottery::Scalar(z),
                EdgeWeight::Degree(a),
                EdgeWeight::Degree(b),
            ) => AnyLottery::Scalar(mix2(a, x, b, z)?),
            (
                AnyLottery::Binary(x),
                AnyLottery::Binary(z),
                EdgeWeight::Degree(a),
                EdgeWeight::Degree(b),
            ) => AnyLottery::Binary(mix2(a, x, b, z)?),
            (
                AnyLottery::Kappa(x),
                AnyLottery::Kappa(z),
                EdgeWeight::Rank(a),
                EdgeWeight::Rank(b),
            ) => AnyLottery::Kappa(mix2(a, x, b, z)?),
            _ => return Err(PropError::BadTrial("lottery kinds differ".into())),
        })
    }

    fn swapped(&self) -> MonotonicityTrial {
        MonotonicityTrial {
            l: self.lp.clone(),
            lp: self.l.clone(),
            ..self.clone()
        }
    }
}

/// A trial where `L ≥ L'` but the composed lotteries are strictly reversed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Oriented so that `L ≥ L'` holds.
    pub trial: MonotonicityTrial,
    /// Values of `L` and `L'`.
    pub before: (CriterionValue, CriterionValue),
    /// Values of the two composed lotteries.
    pub after: (CriterionValue, CriterionValue),
    pub composed: (AnyLottery, AnyLottery),
    /// Found by the symmetric check, i.e. with the trial's lotteries swapped.
    pub reversed: bool,
}

impl Violation {
    pub fn to_witness(&self) -> String {
        let doc = WitnessDoc {
            format: WITNESS_FORMAT.to_string(),
            criterion: self.trial.criterion,
            alpha: self.trial.alpha.to_string(),
            beta: self.trial.beta.to_string(),
            l: LotteryBody::from_lottery(&self.trial.l),
            lp: LotteryBody::from_lottery(&self.trial.lp),
            lpp: LotteryBody::from_lottery(&self.trial.lpp),
            reversed: self.reversed,
            values: WitnessValues {
                l: self.before.0.render(),
                lp: self.before.1.render(),
                composed_l: self.after.0.render(),
                composed_lp: self.after.1.render(),
            },
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("witness serializes");
        text.push('\n');
        text
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t = &self.trial;
        writeln!(f, "{} violation of weak monotonicity", t.criterion)?;
        writeln!(f, "  L   = {}  value {}", t.l, self.before.0)?;
        writeln!(f, "  L'  = {}  value {}", t.lp, self.before.1)?;
        writeln!(f, "  L'' = {}, α = {}, β = {}", t.lpp, t.alpha, t.beta)?;
        writeln!(
            f,
            "  (α∧L)∨(β∧L'')  = {}  value {}",
            self.composed.0, self.after.0
        )?;
        write!(
            f,
            "  (α∧L')∨(β∧L'') = {}  value {}",
            self.composed.1, self.after.1
        )
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessValues {
    l: String,
    lp: String,
    composed_l: String,
    composed_lp: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    format: String,
    criterion: Criterion,
    alpha: String,
    beta: String,
    l: LotteryBody,
    lp: LotteryBody,
    lpp: LotteryBody,
    reversed: bool,
    values: WitnessValues,
}

fn parse_weight(text: &str, kind: LotteryKind) -> Result<EdgeWeight, PropError> {
    let bad = |e: crate::numbers::NumberError| PropError::BadTrial(e.to_string());
    Ok(match kind {
        LotteryKind::Kappa => EdgeWeight::Rank(text.parse().map_err(bad)?),
        _ => EdgeWeight::Degree(text.parse().map_err(bad)?),
    })
}

/// Re-checks a witness document and confirms it reproduces exactly: same
/// violation, same recorded values, same serialization.
pub fn replay_witness(text: &str) -> Result<Violation, PropError> {
    let doc: WitnessDoc = serde_json::from_str(text).map_err(FormatError::from)?;
    if doc.format != WITNESS_FORMAT {
        return Err(FormatError::Version {
            found: doc.format,
            expected: WITNESS_FORMAT,
        }
        .into());
    }
    let kind = doc.criterion.lottery_kind();
    let trial = MonotonicityTrial {
        criterion: doc.criterion,
        l: doc.l.to_lottery()?,
        lp: doc.lp.to_lottery()?,
        lpp: doc.lpp.to_lottery()?,
        alpha: parse_weight(&doc.alpha, kind)?,
        beta: parse_weight(&doc.beta, kind)?,
    };
    let mut violation = check_trial(&trial, false)?
        .ok_or_else(|| PropError::NotReproduced("the trial satisfies weak monotonicity".into()))?;
    violation.reversed = doc.reversed;
    let recorded = [
        &doc.values.l,
        &doc.values.lp,
        &doc.values.composed_l,
        &doc.values.composed_lp,
    ];
    let computed = [
        &violation.before.0,
        &violation.before.1,
        &violation.after.0,
        &violation.after.1,
    ]
    .map(|v| v.render());
    for (r, c) in recorded.iter().zip(&computed) {
        if **r != *c {
            return Err(PropError::NotReproduced(format!(
                "recorded value {r}, recomputed {c}"
            )));
        }
    }
    Ok(violation)
}

fn check_oriented(trial: &MonotonicityTrial) -> Result<Option<Violation>, PropError> {
    let c = &trial.criterion;
    if criteria::compare(c, &trial.l, &trial.lp)? == Preference::SecondStrictlyPreferred {
        return Ok(None);
    }
    let first = trial.compose(&trial.l)?;
    let second = trial.compose(&trial.lp)?;
    if criteria::compare(c, &first, &second)? != Preference::SecondStrictlyPreferred {
        return Ok(None);
    }
    Ok(Some(Violation {
        trial: trial.clone(),
        before: (
            criteria::evaluate(c, &trial.l)?,
            criteria::evaluate(c, &trial.lp)?,
        ),
        after: (
            criteria::evaluate(c, &first)?,
            criteria::evaluate(c, &second)?,
        ),
        composed: (first, second),
        reversed: false,
    }))
}

/// Checks weak monotonicity on one trial. With `symmetric`, the trial is also
/// checked with `L` and `L'` swapped.
pub fn check_trial(
    trial: &MonotonicityTrial,
    symmetric: bool,
) -> Result<Option<Violation>, PropError> {
    trial.validate()?;
    if let Some(v) = check_oriented(trial)? {
        return Ok(Some(v));
    }
    if symmetric {
        if let Some(mut v) = check_oriented(&trial.swapped())? {
            v.reversed = true;
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn degrees(texts: &[&str]) -> Vec<Degree> {
    texts
        .iter()
        .map(|t| t.parse().expect("grid literal"))
        .collect()
}

fn utilities(texts: &[&str]) -> Vec<Utility> {
    texts
        .iter()
        .map(|t| t.parse().expect("grid literal"))
        .collect()
}

/// Value grids the random trials draw from.
#[derive(Debug, Clone)]
pub struct FuzzGrid {
    pub degrees: Vec<Degree>,
    pub utilities: Vec<Utility>,
    /// Degrees used to build binary outcomes `⟨1, d⟩` and `⟨d, 1⟩`.
    pub binary: Vec<Degree>,
    pub ranks: Vec<KappaRank>,
    pub mus: Vec<KappaRank>,
    pub max_support: usize,
}

impl Default for FuzzGrid {
    fn default() -> Self {
        FuzzGrid {
            degrees: degrees(&[
                "0", "0.01", "0.1", "0.2", "0.3", "0.4", "0.49", "0.5", "0.51", "0.55", "0.6",
                "0.7", "0.8", "0.9", "1",
            ]),
            utilities: utilities(&["0", "0.25", "0.5", "0.51", "0.75", "1"]),
            binary: degrees(&["0", "0.2", "0.5", "0.8", "1"]),
            ranks: (0..=4).map(KappaRank::Finite).collect(),
            mus: (0..=5)
                .map(KappaRank::Finite)
                .chain([KappaRank::Infinite])
                .collect(),
            max_support: 5,
        }
    }
}

impl FuzzGrid {
    fn binary_outcomes(&self) -> Vec<BinaryUtility> {
        let mut out = BTreeSet::new();
        for d in &self.binary {
            out.insert(BinaryUtility::new(Degree::one(), d.clone()).expect("top is 1"));
            out.insert(BinaryUtility::new(d.clone(), Degree::one()).expect("bottom is 1"));
        }
        out.into_iter().collect()
    }
}

/// A normalized lottery over `k` distinct outcomes from `outcomes`, one of
/// them forced to be certain.
fn random_lottery<O, P>(
    rng: &mut ChaCha8Rng,
    outcomes: &[O],
    weights: &[P],
    max_support: usize,
) -> Lottery<O, P>
where
    O: Ord + Clone + std::fmt::Debug,
    P: Plausibility,
{
    let k = rng.random_range(1..=max_support.min(outcomes.len()).max(1));
    let chosen: Vec<O> = outcomes.choose_multiple(rng, k).cloned().collect();
    let certain = rng.random_range(0..k);
    let entries = chosen.into_iter().enumerate().map(|(i, o)| {
        let w = if i == certain {
            P::certain()
        } else {
            weights.choose(rng).expect("non-empty grid").clone()
        };
        (o, w)
    });
    Lottery::new(entries).expect("one entry is certain")
}

fn random_weights<P: Plausibility>(rng: &mut ChaCha8Rng, grid: &[P]) -> (P, P) {
    let other = grid.choose(rng).expect("non-empty grid").clone();
    if rng.random_bool(0.5) {
        (P::certain(), other)
    } else {
        (other, P::certain())
    }
}

/// Random trial for `criterion` drawn from `grid`.
pub fn random_trial(
    rng: &mut ChaCha8Rng,
    criterion: Criterion,
    grid: &FuzzGrid,
) -> MonotonicityTrial {
    let n = grid.max_support;
    match criterion.lottery_kind() {
        LotteryKind::Scalar => {
            let mut draw =
                || AnyLottery::Scalar(random_lottery(rng, &grid.utilities, &grid.degrees, n));
            let (l, lp, lpp) = (draw(), draw(), draw());
            let (a, b) = random_weights(rng, &grid.degrees);
            MonotonicityTrial {
                criterion,
                l,
                lp,
                lpp,
                alpha: EdgeWeight::Degree(a),
                beta: EdgeWeight::Degree(b),
            }
        }
        LotteryKind::Binary => {
            let outcomes = grid.binary_outcomes();
            let mut draw = || {
                AnyLottery::Binary(random_lottery::<_, Degree>(
                    rng,
                    &outcomes,
                    &grid.degrees,
                    n,
                ))
            };
            let (l, lp, lpp) = (draw(), draw(), draw());
            let (a, b) = random_weights(rng, &grid.degrees);
            MonotonicityTrial {
                criterion,
                l,
                lp,
                lpp,
                alpha: EdgeWeight::Degree(a),
                beta: EdgeWeight::Degree(b),
            }
        }
        LotteryKind::Kappa => {
            let mut draw = || AnyLottery::Kappa(random_lottery(rng, &grid.mus, &grid.ranks, n));
            let (l, lp, lpp) = (draw(), draw(), draw());
            let (a, b) = random_weights(rng, &grid.ranks);
            MonotonicityTrial {
                criterion,
                l,
                lp,
                lpp,
                alpha: EdgeWeight::Rank(a),
                beta: EdgeWeight::Rank(b),
            }
        }
    }
}

fn scalar(entries: &[(&str, &str)]) -> SimpleLottery {
    Lottery::new(
        entries
            .iter()
            .map(|(d, u)| (u.parse().expect("literal"), d.parse().expect("literal"))),
    )
    .expect("normalized literal")
}

/// The two instances of the classic Choquet counterexample to weak
/// monotonicity, for the necessity and the possibility capacity.
pub fn choquet_trap(capacity: Capacity, criterion: Criterion) -> MonotonicityTrial {
    let d = |t: &str| EdgeWeight::Degree(t.parse().expect("literal"));
    match capacity {
        Capacity::Necessity => MonotonicityTrial {
            criterion,
            l: scalar(&[("0.2", "0"), ("0.5", "0.51"), ("1", "1")]).into(),
            lp: scalar(&[("0.1", "0"), ("0.6", "0.5"), ("1", "1")]).into(),
            lpp: scalar(&[("0.01", "0"), ("1", "1")]).into(),
            alpha: d("0.55"),
            beta: d("1"),
        },
        Capacity::Possibility => MonotonicityTrial {
            criterion,
            l: scalar(&[("1", "0"), ("0.5", "0.51"), ("0.2", "1")]).into(),
            lp: scalar(&[("1", "0"), ("0.6", "0.5"), ("0.1", "1")]).into(),
            lpp: scalar(&[("1", "0"), ("0.49", "0.51")]).into(),
            alpha: d("1"),
            beta: d("0.55"),
        },
    }
}

#[derive(Debug, Clone)]
pub struct PinnedResult {
    pub name: &'static str,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub criterion: Criterion,
    pub trials: u64,
    /// Violations among the random trials.
    pub violations: u64,
    /// First violating random trial, in seed order.
    pub first: Option<Violation>,
    /// The fixed counterexample instances, checked separately.
    pub pinned: Vec<PinnedResult>,
}

impl FuzzReport {
    pub fn total_violations(&self) -> u64 {
        self.violations + self.pinned.iter().filter(|p| p.violation.is_some()).count() as u64
    }

    /// First violation, preferring the pinned instances.
    pub fn witness(&self) -> Option<&Violation> {
        self.pinned
            .iter()
            .find_map(|p| p.violation.as_ref())
            .or(self.first.as_ref())
    }

    /// Weakly monotone criteria must show no violation, the Choquet criteria
    /// at least one.
    pub fn matches_classification(&self) -> bool {
        if self.criterion.id.is_weakly_monotone() {
            self.total_violations() == 0
        } else {
            self.total_violations() > 0
        }
    }
}

/// `trials` random weak-monotonicity checks, deterministic in `seed`, plus the
/// pinned counterexample instances whenever the criterion reads scalar
/// lotteries.
pub fn fuzz_monotonicity(
    criterion: Criterion,
    trials: u64,
    seed: u64,
    grid: &FuzzGrid,
    symmetric: bool,
) -> Result<FuzzReport, PropError> {
    criterion.check()?;
    let mut pinned = Vec::new();
    if criterion.lottery_kind() == LotteryKind::Scalar {
        for (name, cap) in [
            ("choquet-trap/necessity", Capacity::Necessity),
            ("choquet-trap/possibility", Capacity::Possibility),
        ] {
            pinned.push(PinnedResult {
                name,
                violation: check_trial(&choquet_trap(cap, criterion), symmetric)?,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut first = None;
    for _ in 0..trials {
        let trial = random_trial(&mut rng, criterion, grid);
        if let Some(v) = check_trial(&trial, symmetric)? {
            violations += 1;
            first.get_or_insert(v);
        }
    }
    Ok(FuzzReport {
        criterion,
        trials,
        violations,
        first,
        pinned,
    })
}

#[derive(Debug, Clone, Default)]
pub struct PessimismReport {
    pub raised_degree_checks: u64,
    pub raised_degree_failures: u64,
    pub union_checks: u64,
    pub union_failures: u64,
    pub first_failure: Option<String>,
}

impl PessimismReport {
    pub fn holds(&self) -> bool {
        self.raised_degree_failures == 0 && self.union_failures == 0
    }
}

fn support_max(l: &SimpleLottery) -> &Utility {
    l.best_outcome()
}

/// Raising the degree of any utility not above the best one never increases
/// Ch_N; neither does merging in a lottery whose best utility is not higher.
/// Checked exactly on `samples` random instances of each statement.
pub fn check_chn_pessimism(samples: u64, seed: u64) -> PessimismReport {
    let grid_u = utilities(&["0", "0.5", "0.51", "1", "2", "3.5", "4", "7", "9"]);
    let grid_d = FuzzGrid::default().degrees;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PessimismReport::default();
    let chn = |l: &SimpleLottery| choquet(l, Capacity::Necessity);

    for _ in 0..samples {
        // raised degree
        let l = random_lottery(&mut rng, &grid_u, &grid_d, 5);
        let top = support_max(&l).clone();
        let eligible: Vec<&Utility> = grid_u.iter().filter(|u| **u <= top).collect();
        let u = (*eligible.choose(&mut rng).expect("top itself is eligible")).clone();
        let current = l.weight(&u);
        let higher: Vec<&Degree> = grid_d.iter().filter(|d| **d >= current).collect();
        let raised = (*higher.choose(&mut rng).expect("1 is always higher")).clone();
        let lp = Lottery::new(
            l.iter()
                .filter(|(o, _)| **o != u)
                .map(|(o, d)| (o.clone(), d.clone()))
                .chain([(u.clone(), raised)]),
        )
        .expect("still normalized");
        report.raised_degree_checks += 1;
        if chn(&lp) > chn(&l) {
            report.raised_degree_failures += 1;
            report
                .first_failure
                .get_or_insert_with(|| format!("Ch_N({lp}) > Ch_N({l})"));
        }

        // union with a lottery whose best utility is not higher
        let mut l1 = random_lottery(&mut rng, &grid_u, &grid_d, 5);
        let mut l2 = random_lottery(&mut rng, &grid_u, &grid_d, 5);
        if support_max(&l2) > support_max(&l1) {
            std::mem::swap(&mut l1, &mut l2);
        }
        let one = Degree::one();
        let merged = Lottery::mix([(&one, &l1), (&one, &l2)]).expect("normalized inputs");
        report.union_checks += 1;
        if chn(&merged) > chn(&l1) {
            report.union_failures += 1;
            report
                .first_failure
                .get_or_insert_with(|| format!("Ch_N({merged}) > Ch_N({l1})"));
        }
    }
    report
}

/// Two lotteries related by a pairwise criterion's three outcomes.
#[derive(Debug, Clone, Default)]
pub struct QuasiTransitivityReport {
    pub triples: u64,
    /// `L1 ∼ L2`, `L2 ∼ L3` and `L1 ≻ L3`.
    pub indifference_witness: Option<[SimpleLottery; 3]>,
    pub strict_violations: u64,
    pub strict_witness: Option<[SimpleLottery; 3]>,
}

/// Samples lottery triples and looks for intransitive indifference, while
/// counting violations of strict-preference transitivity over every ordering
/// of each triple.
pub fn check_quasi_transitivity(
    criterion: CriterionId,
    triples: u64,
    seed: u64,
    grid: &FuzzGrid,
) -> Result<QuasiTransitivityReport, PropError> {
    let c = Criterion::new(criterion);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = QuasiTransitivityReport::default();
    const ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for _ in 0..triples {
        let ls: [AnyLottery; 3] = std::array::from_fn(|_| {
            AnyLottery::Scalar(random_lottery(
                &mut rng,
                &grid.utilities,
                &grid.degrees,
                grid.max_support,
            ))
        });
        let mut pref = [[Preference::Indifferent; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    pref[i][j] = criteria::compare(&c, &ls[i], &ls[j])?;
                }
            }
        }
        let plain = |i: usize| match &ls[i] {
            AnyLottery::Scalar(l) => l.clone(),
            _ => unreachable!("scalar by construction"),
        };
        report.triples += 1;
        for [a, b, d] in ORDERS {
            let strict = |x: usize, y: usize| pref[x][y] == Preference::FirstStrictlyPreferred;
            let indiff = |x: usize, y: usize| pref[x][y] == Preference::Indifferent;
            if strict(a, b) && strict(b, d) && !strict(a, d) {
                report.strict_violations += 1;
                report
                    .strict_witness
                    .get_or_insert_with(|| [plain(a), plain(b), plain(d)]);
            }
            if report.indifference_witness.is_none() && indiff(a, b) && indiff(b, d) && strict(a, d)
            {
                report.indifference_witness = Some([plain(a), plain(b), plain(d)]);
            }
        }
    }
    Ok(report)
}

/// A tree on which backward induction under a Choquet criterion returns a
/// strictly worse strategy than exhaustive search.
#[derive(Debug, Clone)]
pub struct GapWitness {
    pub seed: u64,
    pub tree: DecisionTree,
    pub dp_strategy: Strategy,
    pub dp_value: BigRational,
    pub exhaustive_strategy: Strategy,
    pub exhaustive_value: BigRational,
}

impl GapWitness {
    pub fn gap(&self) -> BigRational {
        &self.exhaustive_value - &self.dp_value
    }
}

#[derive(Debug, Clone)]
pub struct GapReport {
    pub criterion: CriterionId,
    pub trials: u64,
    pub skipped: u64,
    pub witness: Option<GapWitness>,
}

/// Default profile for gap hunting: two decision levels, mixed best
/// utilities across siblings, degrees including the counterexample constants.
pub fn gap_profile() -> TreeProfile {
    TreeProfile {
        depth: 2,
        branching: 3,
        variable_branching: true,
        leaf_probability: 0.2,
        degrees: FuzzGrid::default().degrees,
        utilities: utilities(&["0", "0.5", "0.51", "1", "2", "4", "7", "9"]),
        ..TreeProfile::default()
    }
}

fn scalar_value(v: &CriterionValue) -> BigRational {
    match v {
        CriterionValue::Scalar(x) => x.clone(),
        _ => BigRational::zero(),
    }
}

/// Trees `random_tree(seed + i, profile)` for `i < trials`; the first whose
/// backward-induction value falls short of the exhaustive optimum is
/// returned. Trees with more than `max_strategies` strategies are skipped.
pub fn find_dp_gap(
    criterion: CriterionId,
    trials: u64,
    seed: u64,
    profile: &TreeProfile,
    max_strategies: u64,
) -> Result<GapReport, PropError> {
    let c = Criterion::new(criterion);
    let mut report = GapReport {
        criterion,
        trials: 0,
        skipped: 0,
        witness: None,
    };
    for i in 0..trials {
        let tree_seed = seed.wrapping_add(i);
        let tree =
            random_tree(tree_seed, profile).map_err(|e| PropError::BadTrial(e.to_string()))?;
        report.trials += 1;
        if count_strategies(&tree).map_err(SolverError::from)? > max_strategies.into() {
            report.skipped += 1;
            continue;
        }
        if let Some(w) = dp_gap_on(&tree, &c, tree_seed)? {
            report.witness = Some(w);
            break;
        }
    }
    Ok(report)
}

/// Compares unsafe backward induction with exhaustive search on one tree.
pub fn dp_gap_on(
    tree: &DecisionTree,
    criterion: &Criterion,
    seed: u64,
) -> Result<Option<GapWitness>, PropError> {
    let dp = dp_optimize(
        tree,
        criterion,
        &SolveOptions {
            unsafe_dp: true,
            budget: None,
        },
    )?;
    let ex = exhaustive_optimize(tree, criterion, &SolveOptions::default())?;
    let (dv, ev) = (scalar_value(&dp.value), scalar_value(&ex.value));
    Ok((ev > dv).then(|| GapWitness {
        seed,
        tree: tree.clone(),
        dp_strategy: dp.strategy,
        dp_value: dv,
        exhaustive_strategy: ex.strategy,
        exhaustive_value: ev,
    }))
}

/// The counterexample turned into a tree: the root's only action reaches
/// `D1` with degree α and `D2` with degree β; `D1` chooses between `L` and
/// `L'`, `D2` leads to `L''`.
pub fn choquet_trap_tree(capacity: Capacity) -> DecisionTree {
    let trial = choquet_trap(capacity, Criterion::new(CriterionId::Chn));
    let mut b = TreeBuilder::new(TreeMode::Possibilistic)
        .decision("D0", &["C0"])
        .chance(
            "C0",
            &[
                ("D1", &trial.alpha.to_string()),
                ("D2", &trial.beta.to_string()),
            ],
        )
        .decision("D1", &["C1", "C2"])
        .decision("D2", &["C3"]);
    let mut leaf = 0;
    for (chance, lottery) in [("C1", &trial.l), ("C2", &trial.lp), ("C3", &trial.lpp)] {
        let AnyLottery::Scalar(l) = lottery else {
            unreachable!("scalar instance")
        };
        let mut edges = Vec::new();
        let mut leaves = Vec::new();
        for (u, d) in l.iter() {
            leaf += 1;
            edges.push((format!("L{leaf}"), d.to_string()));
            leaves.push((format!("L{leaf}"), u.to_string()));
        }
        let edge_refs: Vec<(&str, &str)> = edges
            .iter()
            .map(|(c, w)| (c.as_str(), w.as_str()))
            .collect();
        b = b.chance(chance, &edge_refs);
        for (id, u) in &leaves {
            b = b.leaf(id, u);
        }
    }
    b.build("D0")
}

/// Likely dominance under backward induction: `D1`'s two actions are
/// indifferent, the first declared one ties with the root's alternative,
/// the second beats it.
pub fn likely_dominance_trap_tree() -> DecisionTree {
    TreeBuilder::new(TreeMode::Possibilistic)
        .decision("D0", &["C1", "C2"])
        .chance("C1", &[("L1", "1")])
        .chance("C2", &[("D1", "1")])
        .decision("D1", &["C3", "C4"])
        .chance("C3", &[("L2", "1"), ("L3", "1")])
        .chance("C4", &[("L4", "1")])
        .leaf("L1", "0.4")
        .leaf("L2", "0")
        .leaf("L3", "1")
        .leaf("L4", "0.8")
        .build("D0")
}

/// Observed complexity class of a criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    /// No fuzz violation and backward induction unbeaten on every tree.
    PLike,
    /// Backward induction falls short of the optimum on some tree.
    Hard,
    /// Weakly monotone, yet backward induction was strictly beaten.
    Mixed,
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Class::PLike => "P-like",
            Class::Hard => "hard",
            Class::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone)]
pub struct DichotomyOptions {
    pub seed: u64,
    pub fuzz_trials: u64,
    pub trees: u64,
    pub gap_trials: u64,
}

impl Default for DichotomyOptions {
    fn default() -> Self {
        DichotomyOptions {
            seed: 0,
            fuzz_trials: 10_000,
            trees: 200,
            gap_trials: 2_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DichotomyRow {
    pub criterion: Criterion,
    pub fuzz: FuzzReport,
    pub trees: u64,
    /// Trees where some strategy strictly beats the backward-induction one.
    pub dp_beaten: u64,
    pub first_beaten_seed: Option<u64>,
    pub gap: Option<GapWitness>,
}

impl DichotomyRow {
    pub fn expected(&self) -> Class {
        if self.criterion.id.is_weakly_monotone() {
            Class::PLike
        } else {
            Class::Hard
        }
    }

    pub fn observed(&self) -> Class {
        if self.gap.is_some() {
            Class::Hard
        } else if self.dp_beaten > 0 || self.fuzz.total_violations() > 0 {
            Class::Mixed
        } else {
            Class::PLike
        }
    }
}

/// Every criterion configuration with the leaf payload it reads.
pub fn dichotomy_configurations() -> Vec<(Criterion, crate::dtree::PayloadKind)> {
    use crate::criteria::Embedding;
    use crate::dtree::PayloadKind;
    vec![
        (Criterion::new(CriterionId::Upes), PayloadKind::Utility),
        (Criterion::new(CriterionId::Uopt), PayloadKind::Utility),
        (Criterion::new(CriterionId::Pu), PayloadKind::Binary),
        (
            Criterion::pu_embedded(Embedding::Optimistic),
            PayloadKind::Utility,
        ),
        (
            Criterion::pu_embedded(Embedding::Pessimistic),
            PayloadKind::Utility,
        ),
        (Criterion::new(CriterionId::Ln), PayloadKind::Utility),
        (Criterion::new(CriterionId::Lpi), PayloadKind::Utility),
        (Criterion::new(CriterionId::Omeu), PayloadKind::Mu),
        (Criterion::new(CriterionId::Chn), PayloadKind::Utility),
        (Criterion::new(CriterionId::Chpi), PayloadKind::Utility),
    ]
}

/// Whether some strategy of `tree` is strictly preferred to the one
/// backward induction returns.
pub fn dp_is_beaten(tree: &DecisionTree, criterion: &Criterion) -> Result<bool, PropError> {
    let dp = dp_optimize(
        tree,
        criterion,
        &SolveOptions {
            unsafe_dp: true,
            budget: None,
        },
    )?;
    for s in crate::dtree::enumerate_strategies(tree).map_err(SolverError::from)? {
        let l = crate::dtree::strategy_lottery(tree, &s).map_err(SolverError::from)?;
        if criteria::compare(criterion, &l, &dp.reduced)? == Preference::FirstStrictlyPreferred {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One row for `criterion`: fuzzing, backward induction against exhaustive
/// enumeration on random trees, and for the Choquet criteria a gap search.
pub fn dichotomy_row(
    criterion: Criterion,
    payload: crate::dtree::PayloadKind,
    options: &DichotomyOptions,
) -> Result<DichotomyRow, PropError> {
    let fuzz = fuzz_monotonicity(
        criterion,
        options.fuzz_trials,
        options.seed,
        &FuzzGrid::default(),
        false,
    )?;
    let profile = TreeProfile {
        depth: 3,
        branching: 3,
        max_decision_nodes: Some(12),
        ..TreeProfile::default()
    }
    .with_payload(payload);
    let mut row = DichotomyRow {
        criterion,
        fuzz,
        trees: 0,
        dp_beaten: 0,
        first_beaten_seed: None,
        gap: None,
    };
    if criterion.id.is_weakly_monotone() {
        for i in 0..options.trees {
            let seed = options.seed.wrapping_add(i);
            let tree =
                random_tree(seed, &profile).map_err(|e| PropError::BadTrial(e.to_string()))?;
            row.trees += 1;
            if dp_is_beaten(&tree, &criterion)? {
                row.dp_beaten += 1;
                row.first_beaten_seed.get_or_insert(seed);
            }
        }
    } else {
        let r = find_dp_gap(
            criterion.id,
            options.gap_trials,
            options.seed,
            &gap_profile(),
            5_000,
        )?;
        row.trees = r.trials;
        row.dp_beaten = u64::from(r.witness.is_some());
        row.first_beaten_seed = r.witness.as_ref().map(|w| w.seed);
        row.gap = r.witness;
    }
    Ok(row)
}

pub fn dichotomy_report(options: &DichotomyOptions) -> Result<Vec<DichotomyRow>, PropError> {
    dichotomy_configurations()
        .into_iter()
        .map(|(c, p)| dichotomy_row(c, p, options))
        .collect()
}
