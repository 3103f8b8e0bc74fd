//! `qgame` command-line front end.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::classes::{
    build_table, dominance_check, enumerate_profiles, nash_check, ClassId, Level, StrategyClass,
};
use crate::demon::{
    crossover, payoff_line, reference_lines, temperature_from_noise, thresholds_for, PayoffLine,
};
use crate::format::{decimal, fraction, round12};
use crate::game::{
    default_payoff_table, mixed_payoff, Mode, NoiseModel, PayoffTable, PayoffVector, Source,
};
use crate::statevec::{Bit, DIM};
use crate::verify::run_verification;

#[derive(Debug, Parser)]
#[command(
    name = "qgame",
    version,
    about = "Three-player quantum game with a corrupted qubit source"
)]
pub struct Cli {
    /// Comparison tolerance used by `verify`.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the ten-class payoff table for one game.
    Table {
        #[arg(long, value_enum)]
        game: GameArg,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Average payoff per player against noise level, as CSV.
    Sweep {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        step: f64,
        /// Columns as `mode:class`, e.g. `quantum:viii`. Repeatable or comma separated.
        #[arg(long = "select", value_delimiter = ',')]
        select: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Threshold noise levels and the matching temperatures.
    Crossover {
        /// Two-level energy splitting; temperatures are reported as kT.
        #[arg(long, default_value_t = 1.0)]
        delta_e: f64,
        /// Also report the crossing of two arbitrary classes, `mode:class,mode:class`.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        pair: Vec<String>,
    },
    /// Nash and dominance analysis over all 27 profiles.
    Equilibria {
        #[arg(long, value_enum)]
        game: GameArg,
        /// Pure input bit (0 or 1).
        #[arg(long, conflicts_with = "noise")]
        input: Option<u8>,
        /// Noise level x in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        noise: Option<f64>,
    },
    /// Check the built tables and constants against the published values.
    Verify {
        /// Override one payoff row, e.g. `111=2,2,3`. Repeatable.
        #[arg(long = "payoff")]
        payoff: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GameArg {
    Classical,
    Quantum,
}

impl From<GameArg> for Mode {
    fn from(g: GameArg) -> Mode {
        match g {
            GameArg::Classical => Mode::Classical,
            GameArg::Quantum => Mode::Quantum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error("verification failed")]
    VerificationFailed,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(CliError::VerificationFailed) => 1,
        // Downstream reader went away (`qgame table | head`).
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Table {
            game,
            format,
            out: path,
        } => {
            let rows = build_table((*game).into(), &default_payoff_table());
            with_output(path.as_ref(), out, |w| write_table(w, &rows, *format))
        }
        Command::Sweep {
            from,
            to,
            step,
            select,
            out: path,
        } => {
            let selections = if select.is_empty() {
                vec![
                    Selection {
                        mode: Mode::Classical,
                        class: ClassId::IV,
                    },
                    Selection {
                        mode: Mode::Quantum,
                        class: ClassId::VIII,
                    },
                ]
            } else {
                select
                    .iter()
                    .map(|s| Selection::parse(s))
                    .collect::<Result<_, _>>()?
            };
            let grid = sweep_grid(*from, *to, *step)?;
            with_output(path.as_ref(), out, |w| {
                write_sweep(w, &grid, &selections, &default_payoff_table())
            })
        }
        Command::Crossover { delta_e, pair } => {
            let pair = match pair.as_slice() {
                [] => None,
                [a, b] => Some((Selection::parse(a)?, Selection::parse(b)?)),
                _ => {
                    return Err(CliError::Usage(
                        "--pair takes exactly two mode:class selections".into(),
                    ))
                }
            };
            write_crossover(out, *delta_e, pair)
        }
        Command::Equilibria { game, input, noise } => {
            let source = match (input, noise) {
                (_, Some(x)) => {
                    Source::Noise(NoiseModel::new(*x).map_err(|e| CliError::Usage(e.to_string()))?)
                }
                (Some(b), None) => {
                    Source::Input(Bit::try_from(*b).map_err(|e| CliError::Usage(e.to_string()))?)
                }
                (None, None) => Source::Input(Bit::Zero),
            };
            write_equilibria(out, (*game).into(), source, &default_payoff_table())
        }
        Command::Verify { payoff } => {
            let mut table = default_payoff_table();
            for spec in payoff {
                let (outcome, row) = parse_payoff_override(spec)?;
                table = table
                    .with_row(outcome, row)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            write_verification(out, &table, cli.tol)
        }
    }
}

fn with_output(
    path: Option<&PathBuf>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        None => body(stdout),
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}

/// A `(mode, class)` column such as `quantum:viii`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub mode: Mode,
    pub class: ClassId,
}

impl Selection {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let bad = || {
            CliError::Usage(format!(
                "bad selection {s:?}, expected mode:class such as quantum:viii"
            ))
        };
        let (mode, class) = s.split_once(':').ok_or_else(bad)?;
        let mode = match mode.trim().to_ascii_lowercase().as_str() {
            "classical" | "c" => Mode::Classical,
            "quantum" | "q" => Mode::Quantum,
            _ => return Err(bad()),
        };
        let class = ClassId::parse(class).ok_or_else(bad)?;
        Ok(Selection { mode, class })
    }

    pub fn column_name(&self) -> String {
        format!("{}_{}", self.mode, self.class)
    }

    fn row(&self, table: &PayoffTable) -> StrategyClass {
        build_table(self.mode, table).swap_remove(self.class as usize)
    }
}

/// Grid points `from + i*step` up to `to`, strictly increasing.
pub fn sweep_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    let finite = from.is_finite() && to.is_finite() && step.is_finite();
    if !finite || !(0.0 <= from && from < to && to <= 1.0) {
        return Err(CliError::Usage(format!(
            "sweep range must satisfy 0 <= from < to <= 1 (got from={from}, to={to})"
        )));
    }
    if step.is_nan() || step <= 0.0 {
        return Err(CliError::Usage(format!(
            "sweep step must be positive (got {step})"
        )));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| (from + i as f64 * step).min(to)).collect())
}

pub fn write_sweep(
    w: &mut dyn Write,
    grid: &[f64],
    selections: &[Selection],
    table: &PayoffTable,
) -> Result<(), CliError> {
    let profiles: Vec<_> = selections
        .iter()
        .map(|s| s.class.representative(s.mode).to_strategy_profile())
        .collect();
    let mut header = vec!["x".to_string()];
    header.extend(selections.iter().map(Selection::column_name));
    writeln!(w, "{}", header.join(","))?;
    for &x in grid {
        let noise = NoiseModel::new(x).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut cells = vec![decimal(x)];
        cells.extend(
            profiles
                .iter()
                .map(|p| decimal(mixed_payoff(p, noise, table).mean())),
        );
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

fn slot_prefix(level: Level, mode: Mode) -> &'static str {
    match (mode, level) {
        (Mode::Classical, Level::Zero) => "p0",
        (Mode::Classical, Level::Half) => "phalf",
        (Mode::Classical, Level::One) => "p1",
        (Mode::Quantum, Level::Zero) => "phat0",
        (Mode::Quantum, Level::Half) => "phathalf",
        (Mode::Quantum, Level::One) => "phat1",
    }
}

#[derive(Serialize)]
struct JsonSlot {
    level: Level,
    label: String,
    count: usize,
    input0: f64,
    input1: f64,
    mixed: f64,
}

#[derive(Serialize)]
struct JsonRow {
    class_id: ClassId,
    multiplicity: usize,
    slots: Vec<JsonSlot>,
    avg_input0: f64,
    avg_input1: f64,
    avg_mixed: f64,
}

pub fn write_table(
    w: &mut dyn Write,
    rows: &[StrategyClass],
    format: Format,
) -> Result<(), CliError> {
    let mode = rows.first().map(|r| r.mode).unwrap_or(Mode::Classical);
    match format {
        Format::Csv => {
            let mut header = vec!["class".to_string(), "C".to_string()];
            for level in Level::ALL {
                let p = slot_prefix(level, mode);
                for col in ["count", "input0", "input1", "mixed"] {
                    header.push(format!("{p}_{col}"));
                }
            }
            header.extend(["avg_input0", "avg_input1", "avg_mixed"].map(String::from));
            writeln!(w, "{}", header.join(","))?;
            for row in rows {
                let mut cells = vec![row.id.to_string(), row.multiplicity.to_string()];
                for level in Level::ALL {
                    match row.slot(level) {
                        Some(s) => cells.extend([
                            s.count.to_string(),
                            decimal(s.input0),
                            decimal(s.input1),
                            decimal(s.mixed),
                        ]),
                        None => cells.extend(std::iter::repeat_n(String::new(), 4)),
                    }
                }
                cells.extend([
                    decimal(row.avg_input0),
                    decimal(row.avg_input1),
                    decimal(row.avg_mixed),
                ]);
                writeln!(w, "{}", cells.join(","))?;
            }
        }
        Format::Md => {
            let (avg, mean) = match mode {
                Mode::Classical => ("$", "mean $"),
                Mode::Quantum => ("<$>", "mean <$>"),
            };
            let levels = Level::ALL.map(|l| l.label(mode));
            writeln!(
                w,
                "| Class | {} | {} | {} | C | {avg} | {mean} |",
                levels[0], levels[1], levels[2]
            )?;
            writeln!(w, "|---|---|---|---|---|---|---|")?;
            for row in rows {
                let cells: Vec<String> = Level::ALL
                    .iter()
                    .map(|&l| match row.slot(l) {
                        Some(s) => format!(
                            "{}({})[{}] {}",
                            "a".repeat(s.count),
                            fraction(s.input0),
                            fraction(s.input1),
                            fraction(s.mixed)
                        ),
                        None => "-".to_string(),
                    })
                    .collect();
                writeln!(
                    w,
                    "| ({}) | {} | {} | {} | {} | ({})[{}] | {} |",
                    row.id,
                    cells[0],
                    cells[1],
                    cells[2],
                    row.multiplicity,
                    fraction(row.avg_input0),
                    fraction(row.avg_input1),
                    fraction(row.avg_mixed)
                )?;
            }
        }
        Format::Json => {
            let json: Vec<JsonRow> = rows
                .iter()
                .map(|r| JsonRow {
                    class_id: r.id,
                    multiplicity: r.multiplicity,
                    slots: r
                        .slots
                        .iter()
                        .map(|s| JsonSlot {
                            level: s.level,
                            label: s.level.label(r.mode),
                            count: s.count,
                            input0: round12(s.input0),
                            input1: round12(s.input1),
                            mixed: round12(s.mixed),
                        })
                        .collect(),
                    avg_input0: round12(r.avg_input0),
                    avg_input1: round12(r.avg_input1),
                    avg_mixed: round12(r.avg_mixed),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *w, &json)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn line_text(line: &PayoffLine) -> String {
    let sign = if line.slope < 0.0 { '-' } else { '+' };
    format!(
        "{} {sign} {} x",
        fraction(line.intercept),
        fraction(line.slope.abs())
    )
}

fn signed_fraction(x: f64) -> String {
    let f = fraction(x);
    if x > 0.0 {
        format!("+{f}")
    } else {
        f
    }
}

fn strategy_label(level: Level, mode: Mode) -> String {
    match mode {
        Mode::Classical => level.label(mode),
        Mode::Quantum => level.quantum().to_string(),
    }
}

fn threshold_line(w: &mut dyn Write, name: &str, x: Option<f64>) -> io::Result<()> {
    match x {
        Some(x) => writeln!(w, "{name:<8} = {} ≈ {x:.6}", fraction(x)),
        None => writeln!(w, "{name:<8} = none in [0, 1]"),
    }
}

fn temperature_line(w: &mut dyn Write, name: &str, x: Option<f64>, delta_e: f64) -> io::Result<()> {
    let Some(x) = x else {
        return writeln!(w, "{name:<8} undefined (no threshold)");
    };
    match temperature_from_noise(x, delta_e) {
        Ok(kt) if delta_e == 1.0 => writeln!(w, "{name:<8} ≈ {kt:.4} ΔE"),
        Ok(kt) => writeln!(
            w,
            "{name:<8} ≈ {kt:.4} (= {:.4} ΔE, ΔE = {delta_e})",
            kt / delta_e
        ),
        Err(crate::error::Error::UnobtainableTemperature(_)) => {
            writeln!(w, "{name:<8} unobtainable (x ≥ 1/2)")
        }
        Err(e) => writeln!(w, "{name:<8} {e}"),
    }
}

pub fn write_crossover(
    w: &mut dyn Write,
    delta_e: f64,
    pair: Option<(Selection, Selection)>,
) -> Result<(), CliError> {
    if !delta_e.is_finite() || delta_e <= 0.0 {
        return Err(CliError::Usage(format!(
            "--delta-e must be positive (got {delta_e})"
        )));
    }
    let table = default_payoff_table();
    let (classical, quantum) = reference_lines(&table);
    let (x_cr, x_minus, x_plus) = thresholds_for(&table);
    writeln!(w, "classical (iv): {}", line_text(&classical))?;
    writeln!(w, "quantum (viii): {}", line_text(&quantum))?;
    threshold_line(w, "x_cr", x_cr)?;
    threshold_line(w, "x_minus", x_minus)?;
    threshold_line(w, "x_plus", x_plus)?;
    temperature_line(w, "kT_cr", x_cr, delta_e)?;
    temperature_line(w, "kT_minus", x_minus, delta_e)?;
    temperature_line(w, "kT_plus", x_plus, delta_e)?;
    if let Some((a, b)) = pair {
        let la = payoff_line(&a.row(&table));
        let lb = payoff_line(&b.row(&table));
        match crossover(&la, &lb) {
            Some(x) => writeln!(
                w,
                "{} vs {}: crossing at x = {} ≈ {x:.6}",
                a.column_name(),
                b.column_name(),
                fraction(x)
            )?,
            None => writeln!(
                w,
                "{} vs {}: no crossing in [0, 1]",
                a.column_name(),
                b.column_name()
            )?,
        }
    }
    Ok(())
}

fn payoff_cell(p: &PayoffVector) -> String {
    format!(
        "({}, {}, {})",
        fraction(p.0[0]),
        fraction(p.0[1]),
        fraction(p.0[2])
    )
}

pub fn write_equilibria(
    w: &mut dyn Write,
    mode: Mode,
    source: Source,
    table: &PayoffTable,
) -> Result<(), CliError> {
    writeln!(w, "{mode} game, {source}")?;
    writeln!(
        w,
        "profile,class,payoffs,nash,best_deviation,fair_profile,fair_orbit"
    )?;
    let mut nash_count = 0;
    for profile in enumerate_profiles(mode) {
        let report = nash_check(&profile, source, table);
        nash_count += usize::from(report.is_nash);
        let best = report
            .best_deviation()
            .map(|d| {
                format!(
                    "player {} -> {} ({})",
                    d.player + 1,
                    strategy_label(d.alternative, mode),
                    signed_fraction(d.delta)
                )
            })
            .unwrap_or_default();
        writeln!(
            w,
            "{},({}),{},{},{},{},{}",
            profile.to_string().replace(',', " "),
            profile.class_id(),
            payoff_cell(&report.payoffs).replace(", ", " "),
            if report.is_nash { "NASH" } else { "-" },
            best,
            report.is_fair_within_profile,
            report.orbit_fair
        )?;
    }
    writeln!(w, "nash profiles: {nash_count}")?;
    match dominance_check(mode, source, table) {
        Some(d) => writeln!(
            w,
            "dominant strategy: {} ({})",
            d.level.label(mode),
            if d.strict { "strict" } else { "weak" }
        )?,
        None => writeln!(w, "dominant strategy: none")?,
    }
    Ok(())
}

/// Parses `111=2,2,3` into an outcome index and payoff row.
pub fn parse_payoff_override(s: &str) -> Result<(usize, PayoffVector), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "bad payoff override {s:?}, expected e.g. 111=2,2,3"
        ))
    };
    let (outcome, values) = s.split_once('=').ok_or_else(bad)?;
    let outcome = outcome.trim();
    if outcome.len() != 3 || !outcome.chars().all(|c| c == '0' || c == '1') {
        return Err(bad());
    }
    let index = usize::from_str_radix(outcome, 2).map_err(|_| bad())?;
    debug_assert!(index < DIM);
    let vals: Vec<f64> = values
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [a, b, c] = vals.as_slice() else {
        return Err(bad());
    };
    Ok((index, PayoffVector([*a, *b, *c])))
}

pub fn write_verification(
    w: &mut dyn Write,
    table: &PayoffTable,
    tol: f64,
) -> Result<(), CliError> {
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be non-negative (got {tol})"
        )));
    }
    let report = run_verification(table, tol);
    for check in &report.checks {
        if check.passed() {
            writeln!(w, "PASS  {}", check.name)?;
        } else {
            writeln!(
                w,
                "FAIL  {} ({} mismatches)",
                check.name,
                check.failures.len()
            )?;
            for f in &check.failures {
                writeln!(w, "      {f}")?;
            }
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["qgame"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn selection_parsing() {
        let s = Selection::parse("quantum:viii").unwrap();
        assert_eq!(
            s,
            Selection {
                mode: Mode::Quantum,
                class: ClassId::VIII
            }
        );
        assert_eq!(s.column_name(), "quantum_viii");
        assert!(Selection::parse("quantum").is_err());
        assert!(Selection::parse("bogus:iv").is_err());
        assert!(Selection::parse("classical:xii").is_err());
    }

    #[test]
    fn grid_bounds() {
        let g = sweep_grid(0.0, 1.0, 0.01).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sweep_grid(0.0, 1.0, 0.3).unwrap().len(), 4);
        assert!(sweep_grid(0.5, 0.5, 0.1).is_err());
        assert!(sweep_grid(-0.1, 0.5, 0.1).is_err());
        assert!(sweep_grid(0.0, 1.1, 0.1).is_err());
        assert!(sweep_grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn payoff_override_parsing() {
        let (i, v) = parse_payoff_override("111=2,2,3").unwrap();
        assert_eq!(i, 7);
        assert_eq!(v, PayoffVector([2.0, 2.0, 3.0]));
        assert!(parse_payoff_override("11=2,2,3").is_err());
        assert!(parse_payoff_override("112=2,2,3").is_err());
        assert!(parse_payoff_override("111=2,2").is_err());
        assert!(parse_payoff_override("111=a,2,3").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(
            run_capture(&["table", "--game", "quantum", "--format", "xml"]).0,
            2
        );
        assert_eq!(run_capture(&["sweep", "--from", "0.5", "--to", "0.2"]).0, 2);
        assert_eq!(
            run_capture(&["equilibria", "--game", "quantum", "--noise", "1.5"]).0,
            2
        );
        assert_eq!(
            run_capture(&["equilibria", "--game", "quantum", "--input", "2"]).0,
            2
        );
        assert_eq!(run_capture(&["nonsense"]).0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sweep"));
    }
}
