//! Exit criteria for the simulator. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use qgame::classes::{
    build_table, classify, dominance_check, enumerate_profiles, nash_check, ClassId,
    DiscreteProfile, Dominance, Level, StrategyClass, PERMUTATIONS,
};
use qgame::demon::{temperature_from_noise, threshold_report};
use qgame::game::{
    classical_round, default_payoff_table, jgates_off_round, mixed_payoff, quantum_round, Mode,
    NoiseModel, PayoffTable, QuantumStrategy, Source,
};
use qgame::statevec::{build_j_gate, kron3, Bit, Gate2, NORM_TOL};

const PAYOFF_TOL: f64 = 1e-9;
const CONST_TOL: f64 = 1e-12;
const KT_TOL: f64 = 1e-3;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(got: f64, want: f64, tol: f64, what: &str) -> Outcome {
    check((got - want).abs() <= tol, || {
        format!("{what}: got {got}, want {want} (tol {tol})")
    })
}

// Table rows as printed: class | p=0 | p=1/2 | p=1 | C | avg | mixed avg.
// Slot cells read `a..a(input 0)[input 1]mixed`.
const TABLE_I: &str = "
i    | -                 | aaa(1/2)[1/2]1/2  | -                  | 1 | (1/2)[1/2]     | 1/2
ii   | a(21/4)[-17/4]1/2 | aa(3/4)[1/4]1/2   | -                  | 3 | (9/4)[-5/4]    | 1/2
iii  | aa(11/2)[-9/2]1/2 | a(3/2)[1/2]1      | -                  | 3 | (25/6)[-17/6]  | 2/3
iv   | aaa(2)[0]1        | -                 | -                  | 1 | (2)[0]         | 1
v    | -                 | -                 | aaa(0)[2]1         | 1 | (0)[2]         | 1
vi   | a(1)[1]1          | -                 | aa(-9)[9]0         | 3 | (-17/3)[19/3]  | 1/3
vii  | aa(9)[-9]0        | -                 | a(1)[1]1           | 3 | (19/3)[-17/3]  | 1/3
viii | a(5)[-4]1/2       | a(0)[0]0          | a(-4)[5]1/2        | 6 | (1/3)[1/3]     | 1/3
ix   | -                 | aa(1/4)[3/4]1/2   | a(-17/4)[21/4]1/2  | 3 | (-5/4)[9/4]    | 1/2
x    | -                 | a(1/2)[3/2]1      | aa(-9/2)[11/2]1/2  | 3 | (-17/6)[25/6]  | 2/3
";

const TABLE_II: &str = "
i    | -                 | aaa(-15/4)[19/4]1/2 | -                  | 1 | (-15/4)[19/4]  | 1/2
ii   | a(-15/4)[19/4]1/2 | aa(-15/4)[19/4]1/2  | -                  | 3 | (-15/4)[19/4]  | 1/2
iii  | aa(-7/2)[9/2]1/2  | a(3/2)[1/2]1        | -                  | 3 | (-11/6)[19/6]  | 2/3
iv   | aaa(2)[0]1        | -                   | -                  | 1 | (2)[0]         | 1
v    | -                 | -                   | aaa(0)[2]1         | 1 | (0)[2]         | 1
vi   | a(1)[1]1          | -                   | aa(-9)[9]0         | 3 | (-17/3)[19/3]  | 1/3
vii  | aa(9)[-9]0        | -                   | a(1)[1]1           | 3 | (19/3)[-17/3]  | 1/3
viii | a(5)[-4]1/2       | a(9)[-9]0           | a(5)[-4]1/2        | 6 | (19/3)[-17/3]  | 1/3
ix   | -                 | aa(19/4)[-15/4]1/2  | a(19/4)[-15/4]1/2  | 3 | (19/4)[-15/4]  | 1/2
x    | -                 | a(3/2)[1/2]1        | aa(-7/2)[9/2]1/2   | 3 | (-11/6)[19/6]  | 2/3
";

fn frac(s: &str) -> f64 {
    match s.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}

/// `(input0)[input1]` → both values, plus the remainder of the string.
fn paren_bracket(s: &str) -> (f64, f64, &str) {
    let open = s.find('(').unwrap();
    let close = s.find(')').unwrap();
    let bopen = s.find('[').unwrap();
    let bclose = s.find(']').unwrap();
    (
        frac(&s[open + 1..close]),
        frac(&s[bopen + 1..bclose]),
        &s[bclose + 1..],
    )
}

struct PrintedSlot {
    count: usize,
    input0: f64,
    input1: f64,
    mixed: f64,
}

struct PrintedRow {
    id: String,
    slots: [Option<PrintedSlot>; 3],
    multiplicity: usize,
    avg0: f64,
    avg1: f64,
    mixed: f64,
}

fn parse_table(text: &str) -> Vec<PrintedRow> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let cells: Vec<&str> = line.split('|').map(str::trim).collect();
            assert_eq!(cells.len(), 7, "{line}");
            let slots = [1, 2, 3].map(|k| {
                let c = cells[k];
                if c == "-" {
                    return None;
                }
                let count = c.chars().take_while(|&ch| ch == 'a').count();
                let (input0, input1, rest) = paren_bracket(c);
                Some(PrintedSlot {
                    count,
                    input0,
                    input1,
                    mixed: frac(rest),
                })
            });
            let (avg0, avg1, _) = paren_bracket(cells[5]);
            PrintedRow {
                id: cells[0].to_string(),
                slots,
                multiplicity: cells[4].parse().unwrap(),
                avg0,
                avg1,
                mixed: frac(cells[6]),
            }
        })
        .collect()
}

fn compare_table(built: &[StrategyClass], printed: &[PrintedRow], table: &PayoffTable) -> Outcome {
    check(built.len() == printed.len(), || "row count".into())?;
    for (row, want) in built.iter().zip(printed) {
        let tag = format!("row ({})", want.id);
        check(row.id.roman() == want.id, || {
            format!("{tag}: built row is ({})", row.id)
        })?;
        check(row.multiplicity == want.multiplicity, || {
            format!("{tag}: C")
        })?;
        for (level, slot) in Level::ALL.iter().zip(&want.slots) {
            match (row.slot(*level), slot) {
                (None, None) => {}
                (Some(got), Some(w)) => {
                    check(got.count == w.count, || format!("{tag} {level}: count"))?;
                    close(
                        got.input0,
                        w.input0,
                        PAYOFF_TOL,
                        &format!("{tag} {level} (input 0)"),
                    )?;
                    close(
                        got.input1,
                        w.input1,
                        PAYOFF_TOL,
                        &format!("{tag} {level} [input 1]"),
                    )?;
                    close(
                        got.mixed,
                        w.mixed,
                        PAYOFF_TOL,
                        &format!("{tag} {level} x=0.5"),
                    )?;
                }
                _ => return Err(format!("{tag} {level}: slot presence differs")),
            }
        }
        close(
            row.avg_input0,
            want.avg0,
            PAYOFF_TOL,
            &format!("{tag} avg (input 0)"),
        )?;
        close(
            row.avg_input1,
            want.avg1,
            PAYOFF_TOL,
            &format!("{tag} avg [input 1]"),
        )?;
        close(
            row.avg_mixed,
            want.mixed,
            PAYOFF_TOL,
            &format!("{tag} avg x=0.5"),
        )?;
        // Every player in every member profile, not just the first of each slot.
        for member in row.representative().orbit() {
            for bit in [Bit::Zero, Bit::One] {
                let pay = member.payoff(Source::Input(bit), table);
                for (player, level) in member.levels.iter().enumerate() {
                    let idx = Level::ALL.iter().position(|l| l == level).unwrap();
                    let w = want.slots[idx].as_ref().unwrap();
                    let expect = if bit == Bit::Zero { w.input0 } else { w.input1 };
                    close(
                        pay.player(player),
                        expect,
                        PAYOFF_TOL,
                        &format!("{tag} {member} player {}", player + 1),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn golden_table_i() -> Outcome {
    let t = default_payoff_table();
    compare_table(&build_table(Mode::Classical, &t), &parse_table(TABLE_I), &t)?;
    let rows = build_table(Mode::Classical, &t);
    close(
        rows[2].avg_input0,
        25.0 / 6.0,
        PAYOFF_TOL,
        "row (iii) $ (input 0)",
    )?;
    close(
        rows[2].avg_input1,
        -17.0 / 6.0,
        PAYOFF_TOL,
        "row (iii) $ [input 1]",
    )?;
    close(
        rows[5].avg_input0,
        -17.0 / 3.0,
        PAYOFF_TOL,
        "row (vi) $ (input 0)",
    )?;
    close(
        rows[5].avg_input1,
        19.0 / 3.0,
        PAYOFF_TOL,
        "row (vi) $ [input 1]",
    )
}

fn golden_table_ii() -> Outcome {
    let t = default_payoff_table();
    let rows = build_table(Mode::Quantum, &t);
    compare_table(&rows, &parse_table(TABLE_II), &t)?;
    let viii = &rows[7];
    for (level, a, b) in [
        (Level::Zero, 5.0, -4.0),
        (Level::Half, 9.0, -9.0),
        (Level::One, 5.0, -4.0),
    ] {
        let s = viii.slot(level).ok_or("row (viii) slot missing")?;
        close(s.input0, a, PAYOFF_TOL, "row (viii) slot input 0")?;
        close(s.input1, b, PAYOFF_TOL, "row (viii) slot input 1")?;
    }
    for row in &rows[..2] {
        for s in &row.slots {
            close(
                s.input0,
                -15.0 / 4.0,
                PAYOFF_TOL,
                &format!("row ({}) input 0", row.id),
            )?;
        }
    }
    Ok(())
}

fn cqe_payoff() -> Outcome {
    use QuantumStrategy::*;
    let r = quantum_round(
        &[SigmaX, Hadamard, Identity],
        Bit::Zero,
        &default_payoff_table(),
    );
    for (got, want) in r.payoff.0.iter().zip([5.0, 9.0, 5.0]) {
        close(*got, want, PAYOFF_TOL, "CQE payoff")?;
    }
    check(
        r.distribution.support(PAYOFF_TOL) == vec![0b011, 0b110],
        || format!("support {:?}", r.distribution.support(PAYOFF_TOL)),
    )?;
    close(r.distribution.prob(0b110), 0.5, PAYOFF_TOL, "P(110)")?;
    close(r.distribution.prob(0b011), 0.5, PAYOFF_TOL, "P(011)")
}

fn crossover_constants() -> Outcome {
    let t = threshold_report();
    close(t.x_cr, 13.0 / 30.0, CONST_TOL, "x_cr")?;
    close(
        t.x_minus.ok_or("x_minus missing")?,
        13.0 / 36.0,
        CONST_TOL,
        "x_minus",
    )?;
    close(
        t.x_plus.ok_or("x_plus missing")?,
        19.0 / 36.0,
        CONST_TOL,
        "x_plus",
    )?;
    let kt_cr = temperature_from_noise(t.x_cr, 1.0).map_err(|e| e.to_string())?;
    close(kt_cr, 3.727, KT_TOL, "kT_cr/ΔE")?;
    let kt_minus = temperature_from_noise(t.x_minus.unwrap(), 1.0).map_err(|e| e.to_string())?;
    close(kt_minus, 1.753, KT_TOL, "kT_minus/ΔE")?;
    check(
        temperature_from_noise(t.x_plus.unwrap(), 1.0).is_err(),
        || "kT_plus should be unobtainable".into(),
    )
}

fn convergence_at_half() -> Outcome {
    let t = default_payoff_table();
    let half = NoiseModel::new(0.5).unwrap();
    for q in enumerate_profiles(Mode::Quantum) {
        let c = DiscreteProfile::new(Mode::Classical, q.levels);
        let pq = mixed_payoff(&q.to_strategy_profile(), half, &t);
        let pc = mixed_payoff(&c.to_strategy_profile(), half, &t);
        check(pq.approx_eq(&pc, PAYOFF_TOL), || {
            format!("{q}: quantum {pq} vs classical {pc}")
        })?;
    }
    let cl = build_table(Mode::Classical, &t);
    let qu = build_table(Mode::Quantum, &t);
    for (c, q) in cl.iter().zip(&qu) {
        close(
            q.avg_mixed,
            c.avg_mixed,
            PAYOFF_TOL,
            &format!("class ({}) average", c.id),
        )?;
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let t = default_payoff_table();
    for p in enumerate_profiles(Mode::Quantum) {
        let q = p.levels.map(Level::quantum);
        let c = p.levels.map(Level::classical);
        for bit in [Bit::Zero, Bit::One] {
            let off = jgates_off_round(&q, bit, &t);
            let cls = classical_round(&c, bit, &t).payoff;
            check(off.approx_eq(&cls, PAYOFF_TOL), || {
                format!("J off {p} input {bit}: {off} vs {cls}")
            })?;
            if !p.levels.contains(&Level::Half) {
                let on = quantum_round(&q, bit, &t).payoff;
                check(on.approx_eq(&cls, PAYOFF_TOL), || {
                    format!("J on {p} input {bit}: {on} vs {cls}")
                })?;
            }
        }
    }
    Ok(())
}

fn equilibrium_properties() -> Outcome {
    let t = default_payoff_table();
    let input0 = Source::Input(Bit::Zero);
    let cqe = DiscreteProfile::new(Mode::Quantum, [Level::Zero, Level::Half, Level::One]);
    let orbit = cqe.orbit();
    check(orbit.len() == 6, || "class (viii) orbit size".into())?;
    for member in &orbit {
        // Independent brute force over every unilateral switch.
        let base = member.payoff(input0, &t);
        for player in 0..3 {
            for alt in Level::ALL {
                let dev = member.with_player(player, alt).payoff(input0, &t);
                check(
                    dev.player(player) <= base.player(player) + PAYOFF_TOL,
                    || {
                        format!(
                            "{member}: player {} gains by switching to {alt}",
                            player + 1
                        )
                    },
                )?;
            }
        }
        check(nash_check(member, input0, &t).is_nash, || {
            format!("{member} not flagged Nash")
        })?;
    }
    let vii = ClassId::VII.representative(Mode::Quantum);
    for member in vii.orbit() {
        check(!nash_check(&member, input0, &t).is_nash, || {
            format!("{member} flagged Nash")
        })?;
    }
    // p = 0 strictly beats both alternatives for every player and opponent pair.
    for p in enumerate_profiles(Mode::Classical) {
        for player in 0..3 {
            if p.levels[player] != Level::Zero {
                continue;
            }
            let own = p.payoff(input0, &t).player(player);
            for alt in [Level::Half, Level::One] {
                let other = p.with_player(player, alt).payoff(input0, &t).player(player);
                check(own > other + PAYOFF_TOL, || {
                    format!("{p}: p=0 not strictly better than {alt}")
                })?;
            }
        }
    }
    check(
        dominance_check(Mode::Classical, input0, &t)
            == Some(Dominance {
                level: Level::Zero,
                strict: true,
            }),
        || "dominance_check disagrees".into(),
    )
}

fn structural_invariants() -> Outcome {
    let t = default_payoff_table();
    for mode in [Mode::Classical, Mode::Quantum] {
        let classes = classify(&enumerate_profiles(mode)).map_err(|e| e.to_string())?;
        let mult: Vec<usize> = classes.iter().map(|c| c.multiplicity()).collect();
        check(mult == vec![1, 3, 3, 1, 1, 3, 3, 6, 3, 3], || {
            format!("{mode} multiplicities {mult:?}")
        })?;
    }
    let j = build_j_gate();
    check(j.unitarity_deviation() <= NORM_TOL, || {
        "J not unitary".into()
    })?;
    for q in QuantumStrategy::ALL {
        check(q.gate().unitarity_deviation() <= NORM_TOL, || {
            format!("{q} not unitary")
        })?;
    }
    for p in enumerate_profiles(Mode::Quantum) {
        let [a, b, c] = p.levels.map(|l| l.quantum().gate());
        let u = kron3(&a, &b, &c);
        check(u.unitarity_deviation() <= NORM_TOL, || {
            format!("kron3 {p} not unitary")
        })?;
        let circuit = j.adjoint().compose(&u).compose(&j);
        check(circuit.unitarity_deviation() <= NORM_TOL, || {
            format!("circuit {p} not unitary")
        })?;
    }
    check(Gate2::identity().unitarity_deviation() == 0.0, || {
        "identity".into()
    })?;
    for mode in [Mode::Classical, Mode::Quantum] {
        for p in enumerate_profiles(mode) {
            let sp = p.to_strategy_profile();
            for bit in [Bit::Zero, Bit::One] {
                let r = qgame::game::round(&sp, bit, &t);
                close(
                    r.distribution.total(),
                    1.0,
                    NORM_TOL,
                    &format!("{p} distribution"),
                )?;
                check(
                    r.distribution.probabilities().iter().all(|&x| x >= 0.0),
                    || "negative prob".into(),
                )?;
                let pay = r.payoff;
                for perm in PERMUTATIONS {
                    let moved = qgame::game::round(&sp.permuted(perm), bit, &t).payoff;
                    check(moved.approx_eq(&pay.permuted(perm), PAYOFF_TOL), || {
                        format!("{p} not covariant under {perm:?}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 golden Table I", golden_table_i),
        ("2 golden Table II", golden_table_ii),
        ("3 CQE payoff (5,9,5) on outcomes 110/011", cqe_payoff),
        (
            "4 crossover constants and temperatures",
            crossover_constants,
        ),
        (
            "5 classical/quantum convergence at x=0.5",
            convergence_at_half,
        ),
        (
            "6 J-gates-off oracle and H-free embedding",
            oracle_equivalence,
        ),
        ("7 equilibrium properties", equilibrium_properties),
        ("8 structural invariants", structural_invariants),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS  [{name}]"),
            Err(e) => {
                failed += 1;
                println!("FAIL  [{name}]: {e}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
