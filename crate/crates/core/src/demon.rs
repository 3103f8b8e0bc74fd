//! The corrupted source: payoff as a function of the noise level `x`,
//! crossings between games, and the two-level Boltzmann temperature map.

use crate::classes::{build_table, ClassId, StrategyClass};
use crate::error::Error;
use crate::game::{default_payoff_table, Mode, PayoffTable};

/// Average payoff per player as an affine function of `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PayoffLine {
    pub intercept: f64,
    pub slope: f64,
}

impl PayoffLine {
    pub fn new(intercept: f64, slope: f64) -> Self {
        PayoffLine { intercept, slope }
    }

    pub fn value_at(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    /// The `x` in `[0, 1]` where the line takes `level`, if any.
    pub fn solve_for(&self, level: f64) -> Option<f64> {
        crossover(self, &PayoffLine::new(level, 0.0))
    }
}

pub fn payoff_line(class: &StrategyClass) -> PayoffLine {
    PayoffLine {
        intercept: class.avg_input0,
        slope: class.avg_input1 - class.avg_input0,
    }
}

/// Intersection of two lines within `[0, 1]`. Parallel or coincident lines,
/// and intersections outside the unit interval, give `None`.
pub fn crossover(a: &PayoffLine, b: &PayoffLine) -> Option<f64> {
    let ds = a.slope - b.slope;
    if ds == 0.0 {
        return None;
    }
    let x = (b.intercept - a.intercept) / ds;
    (0.0..=1.0).contains(&x).then_some(x)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    /// Classical (iv) and quantum (viii) lines cross.
    pub x_cr: f64,
    /// Quantum (viii) falls to the classical (iv) payoff at `x = 0`.
    pub x_minus: Option<f64>,
    /// Quantum (viii) falls to the classical (iv) payoff at `x = 1`.
    pub x_plus: Option<f64>,
}

/// The lines the players aim for: classical dominant-strategy class (iv)
/// and the quantum equilibrium class (viii).
pub fn reference_lines(table: &PayoffTable) -> (PayoffLine, PayoffLine) {
    let row = |mode, id: ClassId| {
        build_table(mode, table)
            .into_iter()
            .find(|c| c.id == id)
            .expect("all ten classes are built")
    };
    (
        payoff_line(&row(Mode::Classical, ClassId::IV)),
        payoff_line(&row(Mode::Quantum, ClassId::VIII)),
    )
}

/// Thresholds for an arbitrary payoff table; `x_cr` is `None` when the
/// reference lines do not cross in `[0, 1]`.
pub fn thresholds_for(table: &PayoffTable) -> (Option<f64>, Option<f64>, Option<f64>) {
    let (classical, quantum) = reference_lines(table);
    (
        crossover(&classical, &quantum),
        quantum.solve_for(classical.value_at(0.0)),
        quantum.solve_for(classical.value_at(1.0)),
    )
}

pub fn threshold_report() -> Thresholds {
    let (x_cr, x_minus, x_plus) = thresholds_for(&default_payoff_table());
    Thresholds {
        x_cr: x_cr.expect("reference lines cross for the default table"),
        x_minus,
        x_plus,
    }
}

/// `kT = ΔE / ln((1 - x)/x)`, defined for `0 < x < 1/2`.
pub fn temperature_from_noise(x: f64, delta_e: f64) -> Result<f64, Error> {
    if !delta_e.is_finite() || delta_e <= 0.0 {
        return Err(Error::NonPositive {
            name: "delta_e",
            value: delta_e,
        });
    }
    if x.is_nan() {
        return Err(Error::InvalidNoise(x));
    }
    if x <= 0.0 {
        return Err(Error::ZeroTemperature(x));
    }
    if x >= 0.5 {
        return Err(Error::UnobtainableTemperature(x));
    }
    Ok(delta_e / ((1.0 - x) / x).ln())
}

/// Upper-level occupation `1 / (1 + exp(ΔE / kT))`.
pub fn noise_from_temperature(kt: f64, delta_e: f64) -> Result<f64, Error> {
    if kt.is_nan() || kt <= 0.0 {
        return Err(Error::NonPositive {
            name: "kT",
            value: kt,
        });
    }
    if !delta_e.is_finite() || delta_e <= 0.0 {
        return Err(Error::NonPositive {
            name: "delta_e",
            value: delta_e,
        });
    }
    Ok(1.0 / (1.0 + (delta_e / kt).exp()))
}
