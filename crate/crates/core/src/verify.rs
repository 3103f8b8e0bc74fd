//! Self-check against the published tables and threshold constants.

use crate::classes::{build_table, enumerate_profiles, ClassId, Level};
use crate::demon::{temperature_from_noise, thresholds_for};
use crate::format::fraction;
use crate::game::{classical_round, jgates_off_round, Mode, PayoffTable, Source};
use crate::golden::{printed_table, table_name, value};
use crate::statevec::Bit;

/// Tolerance on `kT / ΔE` against the three-decimal reference values.
pub const TEMPERATURE_TOL: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

fn mismatch(what: String, got: f64, want: f64, tol: f64, out: &mut Vec<String>) {
    let diff = (got - want).abs();
    if diff.is_nan() || diff > tol {
        out.push(format!(
            "{what}: got {got} ({}), expected {want} ({})",
            fraction(got),
            fraction(want)
        ));
    }
}

/// Compares every player's payoff in every class against the printed table.
pub fn check_golden(mode: Mode, table: &PayoffTable, tol: f64) -> CheckResult {
    let name = table_name(mode);
    let mut failures = Vec::new();
    let built = build_table(mode, table);
    for (row, printed) in built.iter().zip(printed_table(mode)) {
        let label = format!("{name} row ({})", row.id);
        if row.multiplicity != printed.multiplicity {
            failures.push(format!(
                "{label} C: got {}, expected {}",
                row.multiplicity, printed.multiplicity
            ));
        }
        let rep = row.representative();
        for bit in [Bit::Zero, Bit::One] {
            let pay = rep.payoff(Source::Input(bit), table);
            for (player, level) in rep.levels.iter().enumerate() {
                let slot = printed.slot(*level).expect("printed row covers its levels");
                let want = if bit == Bit::Zero {
                    slot.input0
                } else {
                    slot.input1
                };
                mismatch(
                    format!(
                        "{label} {} player {} input {bit}",
                        level.label(mode),
                        player + 1
                    ),
                    pay.player(player),
                    value(want),
                    tol,
                    &mut failures,
                );
            }
        }
        for slot in printed.slots {
            match row.slot(slot.level) {
                Some(got) => mismatch(
                    format!("{label} {} x=0.5", slot.level.label(mode)),
                    got.mixed,
                    value(slot.mixed),
                    tol,
                    &mut failures,
                ),
                None => failures.push(format!("{label} missing slot {}", slot.level)),
            }
        }
        mismatch(
            format!("{label} average input 0"),
            row.avg_input0,
            value(printed.avg_input0),
            tol,
            &mut failures,
        );
        mismatch(
            format!("{label} average input 1"),
            row.avg_input1,
            value(printed.avg_input1),
            tol,
            &mut failures,
        );
        mismatch(
            format!("{label} average x=0.5"),
            row.avg_mixed,
            value(printed.avg_mixed),
            tol,
            &mut failures,
        );
    }
    CheckResult {
        name: format!("{name} golden values"),
        failures,
    }
}

/// Classical and quantum per-slot payoffs agree at `x = 0.5`.
pub fn check_convergence(table: &PayoffTable, tol: f64) -> CheckResult {
    let mut failures = Vec::new();
    let classical = build_table(Mode::Classical, table);
    let quantum = build_table(Mode::Quantum, table);
    for (c, q) in classical.iter().zip(quantum.iter()) {
        for level in Level::ALL {
            if let (Some(a), Some(b)) = (c.slot(level), q.slot(level)) {
                mismatch(
                    format!("class ({}) level {level} x=0.5 quantum vs classical", c.id),
                    b.mixed,
                    a.mixed,
                    tol,
                    &mut failures,
                );
            }
        }
        mismatch(
            format!("class ({}) average x=0.5 quantum vs classical", c.id),
            q.avg_mixed,
            c.avg_mixed,
            tol,
            &mut failures,
        );
    }
    CheckResult {
        name: "x=0.5 convergence".into(),
        failures,
    }
}

/// With the entangler removed, every quantum profile reproduces its
/// classical counterpart.
pub fn check_jgates_off(table: &PayoffTable, tol: f64) -> CheckResult {
    let mut failures = Vec::new();
    for profile in enumerate_profiles(Mode::Quantum) {
        let q = profile.levels.map(Level::quantum);
        let c = profile.levels.map(Level::classical);
        for bit in [Bit::Zero, Bit::One] {
            let off = jgates_off_round(&q, bit, table);
            let cls = classical_round(&c, bit, table).payoff;
            if !off.approx_eq(&cls, tol) {
                failures.push(format!(
                    "profile {profile} input {bit}: J off {off}, classical {cls}"
                ));
            }
        }
    }
    CheckResult {
        name: "J-gates-off oracle".into(),
        failures,
    }
}

pub fn check_thresholds(table: &PayoffTable, tol: f64) -> CheckResult {
    let mut failures = Vec::new();
    let (x_cr, x_minus, x_plus) = thresholds_for(table);
    for (name, got, want) in [
        ("x_cr", x_cr, 13.0 / 30.0),
        ("x_minus", x_minus, 13.0 / 36.0),
        ("x_plus", x_plus, 19.0 / 36.0),
    ] {
        match got {
            Some(x) => mismatch(name.into(), x, want, tol, &mut failures),
            None => failures.push(format!("{name}: no crossing in [0, 1]")),
        }
    }
    for (name, x, want) in [("kT_cr/ΔE", x_cr, 3.727), ("kT_minus/ΔE", x_minus, 1.753)] {
        match x.map(|x| temperature_from_noise(x, 1.0)) {
            Some(Ok(kt)) => mismatch(name.into(), kt, want, TEMPERATURE_TOL, &mut failures),
            Some(Err(e)) => failures.push(format!("{name}: {e}")),
            None => {}
        }
    }
    CheckResult {
        name: "threshold constants".into(),
        failures,
    }
}

pub fn run_verification(table: &PayoffTable, tol: f64) -> VerificationReport {
    VerificationReport {
        checks: vec![
            check_golden(Mode::Classical, table, tol),
            check_golden(Mode::Quantum, table, tol),
            check_convergence(table, tol),
            check_jgates_off(table, tol),
            check_thresholds(table, tol),
        ],
    }
}

/// Classes whose printed rows disagree; used to summarize a failed run.
pub fn failing_rows(check: &CheckResult) -> Vec<ClassId> {
    let mut ids: Vec<ClassId> = ClassId::ALL
        .iter()
        .copied()
        .filter(|id| {
            let tag = format!("row ({})", id);
            check.failures.iter().any(|f| f.contains(&tag))
        })
        .collect();
    ids.dedup();
    ids
}
