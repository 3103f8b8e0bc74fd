//! One round of the three-player game, classical and quantum.
//!
//! The classical game flips each input bit with probability `1 - p`. The
//! quantum game runs `J^dagger (U1 ⊗ U2 ⊗ U3) J |bbb>` and measures. Both
//! return exact expected payoffs from the outcome distribution.

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::statevec::{
    build_j_gate, index_bits, kron3, Bit, Gate2, OutcomeDistribution, StateVector, DIM,
};

/// Payoff comparison tolerance.
pub const PAYOFF_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PayoffVector(pub [f64; 3]);

impl PayoffVector {
    pub fn player(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// Average over the three players.
    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / 3.0
    }

    pub fn approx_eq(&self, other: &PayoffVector, tol: f64) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// `out[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: [usize; 3]) -> PayoffVector {
        PayoffVector(perm.map(|k| self.0[k]))
    }

    fn scaled_add(&self, w: f64, other: &PayoffVector) -> PayoffVector {
        PayoffVector([
            self.0[0] + w * other.0[0],
            self.0[1] + w * other.0[1],
            self.0[2] + w * other.0[2],
        ])
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Payoffs for each of the eight measured outcomes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PayoffTable {
    rows: [PayoffVector; DIM],
}

impl PayoffTable {
    pub fn new(rows: [PayoffVector; DIM]) -> Result<Self, Error> {
        if rows.iter().flat_map(|r| r.0).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PayoffTable { rows })
    }

    pub fn row(&self, outcome: usize) -> PayoffVector {
        self.rows[outcome]
    }

    pub fn with_row(mut self, outcome: usize, payoff: PayoffVector) -> Result<Self, Error> {
        if payoff.0.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        self.rows[outcome] = payoff;
        Ok(self)
    }

    /// Distribution-weighted sum of the rows.
    pub fn expected(&self, dist: &OutcomeDistribution) -> PayoffVector {
        self.rows
            .iter()
            .zip(dist.probabilities().iter())
            .fold(PayoffVector([0.0; 3]), |acc, (row, &p)| {
                acc.scaled_add(p, row)
            })
    }
}

impl Default for PayoffTable {
    fn default() -> Self {
        default_payoff_table()
    }
}

/// The bar-attendance payoff table: 1 means "go".
pub fn default_payoff_table() -> PayoffTable {
    let v = |a: f64, b: f64, c: f64| PayoffVector([a, b, c]);
    PayoffTable {
        rows: [
            v(0.0, 0.0, 0.0),   // 000
            v(-9.0, -9.0, 1.0), // 001
            v(-9.0, 1.0, -9.0), // 010
            v(1.0, 9.0, 9.0),   // 011
            v(1.0, -9.0, -9.0), // 100
            v(9.0, 1.0, 9.0),   // 101
            v(9.0, 9.0, 1.0),   // 110
            v(2.0, 2.0, 2.0),   // 111
        ],
    }
}

/// Probability `p` of leaving the input bit unflipped.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ClassicalStrategy {
    p: f64,
}

impl ClassicalStrategy {
    pub fn new(p: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(ClassicalStrategy { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// The three restricted quantum strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantumStrategy {
    /// σx, labelled p̂ ≡ 0.
    SigmaX,
    /// (σx + σz)/√2, labelled p̂ ≡ 1/2.
    Hadamard,
    /// Identity, labelled p̂ ≡ 1.
    Identity,
}

impl QuantumStrategy {
    pub const ALL: [QuantumStrategy; 3] = [
        QuantumStrategy::SigmaX,
        QuantumStrategy::Hadamard,
        QuantumStrategy::Identity,
    ];

    pub fn gate(self) -> Gate2 {
        match self {
            QuantumStrategy::SigmaX => Gate2::pauli_x(),
            QuantumStrategy::Hadamard => Gate2::hadamard(),
            QuantumStrategy::Identity => Gate2::identity(),
        }
    }

    /// The classical strategy seen when the entangler is switched off.
    pub fn classical_counterpart(self) -> ClassicalStrategy {
        let p = match self {
            QuantumStrategy::SigmaX => 0.0,
            QuantumStrategy::Hadamard => 0.5,
            QuantumStrategy::Identity => 1.0,
        };
        ClassicalStrategy { p }
    }
}

impl fmt::Display for QuantumStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuantumStrategy::SigmaX => "X",
            QuantumStrategy::Hadamard => "H",
            QuantumStrategy::Identity => "I",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Quantum,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Classical => "classical",
            Mode::Quantum => "quantum",
        })
    }
}

/// Strategies for players 1..3, all of one mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StrategyProfile {
    Classical([ClassicalStrategy; 3]),
    Quantum([QuantumStrategy; 3]),
}

impl StrategyProfile {
    pub fn mode(&self) -> Mode {
        match self {
            StrategyProfile::Classical(_) => Mode::Classical,
            StrategyProfile::Quantum(_) => Mode::Quantum,
        }
    }

    /// `out[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: [usize; 3]) -> StrategyProfile {
        match self {
            StrategyProfile::Classical(s) => StrategyProfile::Classical(perm.map(|k| s[k])),
            StrategyProfile::Quantum(s) => StrategyProfile::Quantum(perm.map(|k| s[k])),
        }
    }
}

/// Corruption rate: probability that the source hands out `|111>` instead of `|000>`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct NoiseModel {
    x: f64,
}

impl NoiseModel {
    pub fn new(x: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidNoise(x));
        }
        Ok(NoiseModel { x })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// What the source supplies: a pure input triple or a noisy mixture.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Source {
    Input(Bit),
    Noise(NoiseModel),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Input(b) => write!(f, "input {b}"),
            Source::Noise(n) => write!(f, "noise x={}", n.x()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundOutcome {
    pub distribution: OutcomeDistribution,
    pub payoff: PayoffVector,
}

/// Product measure: player `i` reports the input bit with probability `p_i`.
fn classical_distribution(strategies: &[ClassicalStrategy; 3], input: Bit) -> OutcomeDistribution {
    let mut prob = [0.0; DIM];
    for (k, p) in prob.iter_mut().enumerate() {
        *p = index_bits(k)
            .iter()
            .zip(strategies.iter())
            .map(|(&bit, s)| if bit == input { s.p } else { 1.0 - s.p })
            .product();
    }
    OutcomeDistribution::new(prob).expect("product of probabilities is a distribution")
}

pub fn classical_round(
    strategies: &[ClassicalStrategy; 3],
    input: Bit,
    table: &PayoffTable,
) -> RoundOutcome {
    let distribution = classical_distribution(strategies, input);
    RoundOutcome {
        distribution,
        payoff: table.expected(&distribution),
    }
}

pub fn quantum_final_state(strategies: &[QuantumStrategy; 3], input: Bit) -> StateVector {
    let [a, b, c] = strategies.map(QuantumStrategy::gate);
    let j = build_j_gate();
    let circuit = j.adjoint().compose(&kron3(&a, &b, &c)).compose(&j);
    circuit.apply(&StateVector::uniform(input))
}

pub fn quantum_round(
    strategies: &[QuantumStrategy; 3],
    input: Bit,
    table: &PayoffTable,
) -> RoundOutcome {
    let distribution = quantum_final_state(strategies, input).measure();
    RoundOutcome {
        distribution,
        payoff: table.expected(&distribution),
    }
}

/// The quantum strategies applied to `|bbb>` with no entangler.
pub fn jgates_off_round(
    strategies: &[QuantumStrategy; 3],
    input: Bit,
    table: &PayoffTable,
) -> PayoffVector {
    let [a, b, c] = strategies.map(QuantumStrategy::gate);
    let dist = kron3(&a, &b, &c)
        .apply(&StateVector::uniform(input))
        .measure();
    table.expected(&dist)
}

pub fn round(profile: &StrategyProfile, input: Bit, table: &PayoffTable) -> RoundOutcome {
    match profile {
        StrategyProfile::Classical(s) => classical_round(s, input, table),
        StrategyProfile::Quantum(s) => quantum_round(s, input, table),
    }
}

/// `(1 - x) * payoff(|000>) + x * payoff(|111>)`.
pub fn mixed_payoff(
    profile: &StrategyProfile,
    noise: NoiseModel,
    table: &PayoffTable,
) -> PayoffVector {
    let zero = round(profile, Bit::Zero, table).payoff;
    let one = round(profile, Bit::One, table).payoff;
    PayoffVector([0.0; 3])
        .scaled_add(1.0 - noise.x, &zero)
        .scaled_add(noise.x, &one)
}

pub fn expected_payoff(
    profile: &StrategyProfile,
    source: Source,
    table: &PayoffTable,
) -> PayoffVector {
    match source {
        Source::Input(b) => round(profile, b, table).payoff,
        Source::Noise(n) => mixed_payoff(profile, n, table),
    }
}
