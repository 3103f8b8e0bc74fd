//! Strategy profiles over the three-element strategy sets, their
//! permutation classes, and equilibrium analysis.
//!
//! Both games draw each player's strategy from three levels, `0 < 1/2 < 1`.
//! Classically the level is the no-flip probability `p`; in the quantum game
//! it labels σx, (σx+σz)/√2 and I respectively.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::game::{
    expected_payoff, ClassicalStrategy, Mode, NoiseModel, PayoffTable, PayoffVector,
    QuantumStrategy, Source, StrategyProfile,
};
use crate::statevec::Bit;

/// A deviation improves a player's payoff only if it gains more than this.
pub const NASH_TOL: f64 = 1e-9;

/// Tolerance for fairness comparisons.
pub const FAIR_TOL: f64 = 1e-9;

/// All six permutations of three player slots.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Level {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "1")]
    One,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Zero, Level::Half, Level::One];

    pub fn p(self) -> f64 {
        match self {
            Level::Zero => 0.0,
            Level::Half => 0.5,
            Level::One => 1.0,
        }
    }

    pub fn classical(self) -> ClassicalStrategy {
        ClassicalStrategy::new(self.p()).expect("levels are valid probabilities")
    }

    pub fn quantum(self) -> QuantumStrategy {
        match self {
            Level::Zero => QuantumStrategy::SigmaX,
            Level::Half => QuantumStrategy::Hadamard,
            Level::One => QuantumStrategy::Identity,
        }
    }

    /// Column label in the given mode, e.g. `p=1/2` or `p̂≡1/2`.
    pub fn label(self, mode: Mode) -> String {
        match mode {
            Mode::Classical => format!("p={self}"),
            Mode::Quantum => format!("p̂≡{self}"),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Zero => "0",
            Level::Half => "1/2",
            Level::One => "1",
        })
    }
}

impl From<QuantumStrategy> for Level {
    fn from(q: QuantumStrategy) -> Self {
        match q {
            QuantumStrategy::SigmaX => Level::Zero,
            QuantumStrategy::Hadamard => Level::Half,
            QuantumStrategy::Identity => Level::One,
        }
    }
}

/// A profile drawn from the three-level strategy set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteProfile {
    pub mode: Mode,
    pub levels: [Level; 3],
}

impl DiscreteProfile {
    pub fn new(mode: Mode, levels: [Level; 3]) -> Self {
        DiscreteProfile { mode, levels }
    }

    pub fn to_strategy_profile(&self) -> StrategyProfile {
        match self.mode {
            Mode::Classical => StrategyProfile::Classical(self.levels.map(Level::classical)),
            Mode::Quantum => StrategyProfile::Quantum(self.levels.map(Level::quantum)),
        }
    }

    pub fn with_player(&self, player: usize, level: Level) -> Self {
        let mut levels = self.levels;
        levels[player] = level;
        DiscreteProfile { levels, ..*self }
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        DiscreteProfile {
            levels: perm.map(|k| self.levels[k]),
            ..*self
        }
    }

    /// Sorted multiset of levels.
    pub fn canonical_levels(&self) -> [Level; 3] {
        let mut l = self.levels;
        l.sort();
        l
    }

    pub fn class_id(&self) -> ClassId {
        ClassId::from_levels(self.canonical_levels())
    }

    /// Distinct relabelings of this profile, in enumeration order.
    pub fn orbit(&self) -> Vec<DiscreteProfile> {
        PERMUTATIONS
            .iter()
            .map(|&p| self.permuted(p))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn payoff(&self, source: Source, table: &PayoffTable) -> PayoffVector {
        expected_payoff(&self.to_strategy_profile(), source, table)
    }
}

impl fmt::Display for DiscreteProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::Classical => {
                let [a, b, c] = self.levels;
                write!(f, "({a},{b},{c})")
            }
            Mode::Quantum => {
                let [a, b, c] = self.levels.map(Level::quantum);
                write!(f, "({a},{b},{c})")
            }
        }
    }
}

/// Table row labels (i)..(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

impl ClassId {
    pub const ALL: [ClassId; 10] = [
        ClassId::I,
        ClassId::II,
        ClassId::III,
        ClassId::IV,
        ClassId::V,
        ClassId::VI,
        ClassId::VII,
        ClassId::VIII,
        ClassId::IX,
        ClassId::X,
    ];

    /// The sorted multiset each row stands for. The row order is fixed by
    /// the published tables and does not follow multiset order.
    pub fn canonical_levels(self) -> [Level; 3] {
        use Level::*;
        match self {
            ClassId::I => [Half, Half, Half],
            ClassId::II => [Zero, Half, Half],
            ClassId::III => [Zero, Zero, Half],
            ClassId::IV => [Zero, Zero, Zero],
            ClassId::V => [One, One, One],
            ClassId::VI => [Zero, One, One],
            ClassId::VII => [Zero, Zero, One],
            ClassId::VIII => [Zero, Half, One],
            ClassId::IX => [Half, Half, One],
            ClassId::X => [Half, One, One],
        }
    }

    /// `levels` must be sorted.
    pub fn from_levels(levels: [Level; 3]) -> ClassId {
        *ClassId::ALL
            .iter()
            .find(|id| id.canonical_levels() == levels)
            .expect("every sorted triple names a class")
    }

    pub fn roman(self) -> &'static str {
        match self {
            ClassId::I => "i",
            ClassId::II => "ii",
            ClassId::III => "iii",
            ClassId::IV => "iv",
            ClassId::V => "v",
            ClassId::VI => "vi",
            ClassId::VII => "vii",
            ClassId::VIII => "viii",
            ClassId::IX => "ix",
            ClassId::X => "x",
        }
    }

    pub fn parse(s: &str) -> Option<ClassId> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        ClassId::ALL
            .iter()
            .copied()
            .find(|id| id.roman().eq_ignore_ascii_case(s))
    }

    pub fn representative(self, mode: Mode) -> DiscreteProfile {
        DiscreteProfile::new(mode, self.canonical_levels())
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

impl Serialize for ClassId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.roman())
    }
}

/// All 27 ordered profiles, lexicographic by slot with `0 < 1/2 < 1`.
pub fn enumerate_profiles(mode: Mode) -> Vec<DiscreteProfile> {
    let mut out = Vec::with_capacity(27);
    for a in Level::ALL {
        for b in Level::ALL {
            for c in Level::ALL {
                out.push(DiscreteProfile::new(mode, [a, b, c]));
            }
        }
    }
    out
}

/// An orbit of profiles under player relabeling.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileClass {
    pub id: ClassId,
    pub mode: Mode,
    pub members: Vec<DiscreteProfile>,
}

impl ProfileClass {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// Partitions the full 27-profile list into the ten classes in table order.
pub fn classify(profiles: &[DiscreteProfile]) -> Result<Vec<ProfileClass>, Error> {
    let Some(first) = profiles.first() else {
        return Err(Error::InvalidProfileSet("empty list".into()));
    };
    let mode = first.mode;
    if profiles.iter().any(|p| p.mode != mode) {
        return Err(Error::InvalidProfileSet("mixed modes".into()));
    }
    let distinct: BTreeSet<_> = profiles.iter().collect();
    if profiles.len() != 27 || distinct.len() != 27 {
        return Err(Error::InvalidProfileSet(format!(
            "{} profiles, {} distinct",
            profiles.len(),
            distinct.len()
        )));
    }
    Ok(ClassId::ALL
        .iter()
        .map(|&id| ProfileClass {
            id,
            mode,
            members: profiles
                .iter()
                .copied()
                .filter(|p| p.class_id() == id)
                .collect(),
        })
        .collect())
}

/// Payoff to the players holding one strategy level within a class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlotPayoff {
    pub level: Level,
    /// How many of the three players use this level.
    pub count: usize,
    pub input0: f64,
    pub input1: f64,
    /// Equal mixture of the two inputs.
    pub mixed: f64,
}

/// One row of the classical or quantum payoff table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrategyClass {
    pub id: ClassId,
    pub mode: Mode,
    pub levels: [Level; 3],
    pub multiplicity: usize,
    pub slots: Vec<SlotPayoff>,
    pub avg_input0: f64,
    pub avg_input1: f64,
    pub avg_mixed: f64,
}

impl StrategyClass {
    pub fn slot(&self, level: Level) -> Option<&SlotPayoff> {
        self.slots.iter().find(|s| s.level == level)
    }

    pub fn representative(&self) -> DiscreteProfile {
        DiscreteProfile::new(self.mode, self.levels)
    }
}

pub fn build_class_row(class: &ProfileClass, table: &PayoffTable) -> StrategyClass {
    let rep = class.id.representative(class.mode);
    let in0 = rep.payoff(Source::Input(Bit::Zero), table);
    let in1 = rep.payoff(Source::Input(Bit::One), table);
    let slots = Level::ALL
        .iter()
        .filter_map(|&level| {
            let count = rep.levels.iter().filter(|&&l| l == level).count();
            let player = rep.levels.iter().position(|&l| l == level)?;
            let (a, b) = (in0.player(player), in1.player(player));
            Some(SlotPayoff {
                level,
                count,
                input0: a,
                input1: b,
                mixed: (a + b) / 2.0,
            })
        })
        .collect();
    StrategyClass {
        id: class.id,
        mode: class.mode,
        levels: rep.levels,
        multiplicity: class.multiplicity(),
        slots,
        avg_input0: in0.mean(),
        avg_input1: in1.mean(),
        avg_mixed: (in0.mean() + in1.mean()) / 2.0,
    }
}

/// The ten table rows for one game, in order (i)..(x).
pub fn build_table(mode: Mode, table: &PayoffTable) -> Vec<StrategyClass> {
    classify(&enumerate_profiles(mode))
        .expect("enumeration yields the canonical profile set")
        .iter()
        .map(|c| build_class_row(c, table))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deviation {
    pub player: usize,
    pub alternative: Level,
    /// Deviator's payoff change; positive means the deviation helps.
    pub delta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fairness {
    pub payoffs: PayoffVector,
    /// Each player's payoff averaged over the profile's orbit.
    pub orbit_averages: [f64; 3],
    pub within_profile: bool,
    pub orbit: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumReport {
    pub profile: DiscreteProfile,
    pub payoffs: PayoffVector,
    pub is_nash: bool,
    pub deviations: Vec<Deviation>,
    pub is_fair_within_profile: bool,
    pub orbit_fair: bool,
}

impl EquilibriumReport {
    pub fn best_deviation(&self) -> Option<&Deviation> {
        self.deviations
            .iter()
            .max_by(|a, b| a.delta.total_cmp(&b.delta))
    }
}

fn all_equal(v: &[f64], tol: f64) -> bool {
    v.iter().all(|x| (x - v[0]).abs() <= tol)
}

pub fn fairness_metrics(
    profile: &DiscreteProfile,
    source: Source,
    table: &PayoffTable,
) -> Fairness {
    let payoffs = profile.payoff(source, table);
    let orbit = profile.orbit();
    let mut orbit_averages = [0.0; 3];
    for member in &orbit {
        let pay = member.payoff(source, table);
        for (acc, v) in orbit_averages.iter_mut().zip(pay.0) {
            *acc += v;
        }
    }
    for a in orbit_averages.iter_mut() {
        *a /= orbit.len() as f64;
    }
    Fairness {
        payoffs,
        orbit_averages,
        within_profile: all_equal(&payoffs.0, FAIR_TOL),
        orbit: all_equal(&orbit_averages, FAIR_TOL),
    }
}

/// Fairness of a whole class, evaluated on its canonical member.
pub fn class_fairness(class: &StrategyClass, source: Source, table: &PayoffTable) -> Fairness {
    fairness_metrics(&class.representative(), source, table)
}

/// Checks all six unilateral deviations within the three-level set.
pub fn nash_check(
    profile: &DiscreteProfile,
    source: Source,
    table: &PayoffTable,
) -> EquilibriumReport {
    let payoffs = profile.payoff(source, table);
    let mut deviations = Vec::with_capacity(6);
    for player in 0..3 {
        for alternative in Level::ALL {
            if alternative == profile.levels[player] {
                continue;
            }
            let alt = profile
                .with_player(player, alternative)
                .payoff(source, table);
            deviations.push(Deviation {
                player,
                alternative,
                delta: alt.player(player) - payoffs.player(player),
            });
        }
    }
    let fair = fairness_metrics(profile, source, table);
    EquilibriumReport {
        profile: *profile,
        payoffs,
        is_nash: deviations.iter().all(|d| d.delta <= NASH_TOL),
        deviations,
        is_fair_within_profile: fair.within_profile,
        orbit_fair: fair.orbit,
    }
}

pub fn nash_check_at_noise(
    profile: &DiscreteProfile,
    noise: NoiseModel,
    table: &PayoffTable,
) -> EquilibriumReport {
    nash_check(profile, Source::Noise(noise), table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dominance {
    pub level: Level,
    /// Strictly better than every alternative against every opponent pair.
    pub strict: bool,
}

/// Finds a level that is a best response for every player against all nine
/// opponent pairs. A strictly dominant level wins over a weakly dominant
/// one; among weak candidates the lowest level is reported.
pub fn dominance_check(mode: Mode, source: Source, table: &PayoffTable) -> Option<Dominance> {
    let mut weak = None;
    for level in Level::ALL {
        let mut is_weak = true;
        let mut is_strict = true;
        for player in 0..3 {
            for profile in enumerate_profiles(mode) {
                if profile.levels[player] != level {
                    continue;
                }
                let own = profile.payoff(source, table).player(player);
                for alt in Level::ALL.into_iter().filter(|&l| l != level) {
                    let other = profile
                        .with_player(player, alt)
                        .payoff(source, table)
                        .player(player);
                    let d = own - other;
                    is_weak &= d >= -NASH_TOL;
                    is_strict &= d > NASH_TOL;
                }
            }
        }
        if is_strict {
            return Some(Dominance {
                level,
                strict: true,
            });
        }
        if is_weak && weak.is_none() {
            weak = Some(Dominance {
                level,
                strict: false,
            });
        }
    }
    weak
}
