//! Dense three-qubit state vectors and gates.
//!
//! Basis index convention: `index = 4*q1 + 2*q2 + q3`, so player 1 is the
//! most significant bit and `|100>` (only player 1 set) is index 4.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::Error;

/// Number of amplitudes in a three-qubit state.
pub const DIM: usize = 8;

/// Tolerance for the norm and unitarity invariants.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance used when accepting a caller-supplied 2x2 gate.
pub const GATE_ACCEPT_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A classical bit / computational basis label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn value(self) -> usize {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn flipped(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self, Error> {
        match v {
            0 => Ok(Bit::Zero),
            1 => Ok(Bit::One),
            other => Err(Error::InvalidBit(other)),
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Basis index for the three bits, player 1 most significant.
pub fn basis_index(b1: Bit, b2: Bit, b3: Bit) -> usize {
    4 * b1.value() + 2 * b2.value() + b3.value()
}

/// Bits of a basis index, player 1 first.
pub fn index_bits(index: usize) -> [Bit; 3] {
    assert!(index < DIM, "basis index {index} out of range");
    [
        Bit::from(index & 4 != 0),
        Bit::from(index & 2 != 0),
        Bit::from(index & 1 != 0),
    ]
}

/// Renders a basis index as a ket label such as `110`.
pub fn outcome_label(index: usize) -> String {
    index_bits(index).iter().map(|b| b.to_string()).collect()
}

/// A normalized three-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector {
    amp: [Complex64; DIM],
}

impl StateVector {
    /// Builds a state from raw amplitudes, rejecting non-finite entries and
    /// vectors whose squared norm is off by more than [`NORM_TOL`].
    pub fn new(amp: [Complex64; DIM]) -> Result<Self, Error> {
        if amp.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let state = StateVector { amp };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn basis(b1: Bit, b2: Bit, b3: Bit) -> Self {
        let mut amp = [ZERO; DIM];
        amp[basis_index(b1, b2, b3)] = ONE;
        StateVector { amp }
    }

    /// `|bbb>`: all three qubits in the same basis state.
    pub fn uniform(b: Bit) -> Self {
        Self::basis(b, b, b)
    }

    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amp
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amp[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Entrywise comparison, including phase.
    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.amp
            .iter()
            .zip(other.amp.iter())
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn measure(&self) -> OutcomeDistribution {
        let mut prob = [0.0; DIM];
        for (p, a) in prob.iter_mut().zip(self.amp.iter()) {
            *p = a.norm_sqr();
        }
        OutcomeDistribution { prob }
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.amp.iter().enumerate() {
            if a.norm() < 1e-15 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{}>", a.re, a.im, outcome_label(k))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn basis_state(b1: Bit, b2: Bit, b3: Bit) -> StateVector {
    StateVector::basis(b1, b2, b3)
}

pub fn measure_distribution(s: &StateVector) -> OutcomeDistribution {
    s.measure()
}

/// Probabilities of the eight measurement outcomes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutcomeDistribution {
    prob: [f64; DIM],
}

impl OutcomeDistribution {
    /// Accepts any entrywise non-negative vector summing to 1 within [`NORM_TOL`].
    pub fn new(prob: [f64; DIM]) -> Result<Self, Error> {
        if prob.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        if prob.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidProbability(
                prob.iter()
                    .copied()
                    .find(|&p| !(0.0..=1.0).contains(&p))
                    .unwrap(),
            ));
        }
        let total: f64 = prob.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(total));
        }
        Ok(OutcomeDistribution { prob })
    }

    pub fn probabilities(&self) -> &[f64; DIM] {
        &self.prob
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.prob[index]
    }

    pub fn total(&self) -> f64 {
        self.prob.iter().sum()
    }

    /// Outcome indices with probability above `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..DIM).filter(|&k| self.prob[k] > tol).collect()
    }
}

/// A 2x2 unitary acting on one player's qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gate2 {
    m: [[Complex64; 2]; 2],
}

impl Gate2 {
    /// Accepts a caller-supplied matrix if it is unitary within [`GATE_ACCEPT_TOL`].
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self, Error> {
        if m.iter()
            .flatten()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let g = Gate2 { m };
        let dev = g.unitarity_deviation();
        if dev > GATE_ACCEPT_TOL {
            return Err(Error::NonUnitary(dev));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Gate2 {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    pub fn pauli_x() -> Self {
        Gate2 {
            m: [[ZERO, ONE], [ONE, ZERO]],
        }
    }

    pub fn pauli_z() -> Self {
        Gate2 {
            m: [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    /// `(X + Z)/sqrt(2)`, real entries.
    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Gate2 {
            m: [[h, h], [h, -h]],
        }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    /// Largest entrywise deviation of `U U^dagger` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = ZERO;
                for k in 0..2 {
                    acc += self.m[i][k] * self.m[j][k].conj();
                }
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }
}

/// A dense 8x8 unitary on the three-qubit space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gate8 {
    m: [[Complex64; DIM]; DIM],
}

impl Gate8 {
    pub fn new(m: [[Complex64; DIM]; DIM]) -> Result<Self, Error> {
        if m.iter()
            .flatten()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let g = Gate8 { m };
        let dev = g.unitarity_deviation();
        if dev > GATE_ACCEPT_TOL {
            return Err(Error::NonUnitary(dev));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Gate8 { m }
    }

    pub fn entries(&self) -> &[[Complex64; DIM]; DIM] {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = [[ZERO; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i].conj();
            }
        }
        Gate8 { m }
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Gate8) -> Self {
        let mut m = [[ZERO; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..DIM).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        Gate8 { m }
    }

    pub fn apply(&self, s: &StateVector) -> StateVector {
        let mut amp = [ZERO; DIM];
        for (out, row) in amp.iter_mut().zip(self.m.iter()) {
            *out = row.iter().zip(s.amp.iter()).map(|(g, a)| g * a).sum();
        }
        let out = StateVector { amp };
        debug_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
        out
    }

    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.compose(&self.adjoint());
        prod.max_deviation(&Gate8::identity())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Gate8) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Kronecker product with player 1 outermost, matching the basis indexing.
pub fn kron3(g1: &Gate2, g2: &Gate2, g3: &Gate2) -> Gate8 {
    let mut m = [[ZERO; DIM]; DIM];
    for (row, out_row) in m.iter_mut().enumerate() {
        let [r1, r2, r3] = index_bits(row).map(Bit::value);
        for (col, e) in out_row.iter_mut().enumerate() {
            let [c1, c2, c3] = index_bits(col).map(Bit::value);
            *e = g1.m[r1][c1] * g2.m[r2][c2] * g3.m[r3][c3];
        }
    }
    Gate8 { m }
}

/// The entangler `(I⊗I⊗I + i X⊗X⊗X)/sqrt(2)`.
pub fn build_j_gate() -> Gate8 {
    let x = Gate2::pauli_x();
    let xxx = kron3(&x, &x, &x);
    let id = Gate8::identity();
    let i = Complex64::new(0.0, 1.0);
    let mut m = [[ZERO; DIM]; DIM];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, e) in row.iter_mut().enumerate() {
            *e = (id.m[r][c] + i * xxx.m[r][c]) * FRAC_1_SQRT_2;
        }
    }
    Gate8 { m }
}

pub fn adjoint(g: &Gate8) -> Gate8 {
    g.adjoint()
}

pub fn apply(g: &Gate8, s: &StateVector) -> StateVector {
    g.apply(s)
}
