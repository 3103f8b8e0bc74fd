//! Published payoff tables, transcribed as exact fractions.

use crate::classes::{ClassId, Level};
use crate::game::Mode;

/// `(numerator, denominator)`.
pub type Frac = (i64, i64);

pub fn value(f: Frac) -> f64 {
    f.0 as f64 / f.1 as f64
}

#[derive(Clone, Copy, Debug)]
pub struct PrintedSlot {
    pub level: Level,
    pub count: usize,
    pub input0: Frac,
    pub input1: Frac,
    pub mixed: Frac,
}

#[derive(Clone, Copy, Debug)]
pub struct PrintedRow {
    pub id: ClassId,
    pub multiplicity: usize,
    pub slots: &'static [PrintedSlot],
    pub avg_input0: Frac,
    pub avg_input1: Frac,
    pub avg_mixed: Frac,
}

impl PrintedRow {
    pub fn slot(&self, level: Level) -> Option<&PrintedSlot> {
        self.slots.iter().find(|s| s.level == level)
    }
}

const fn s(level: Level, count: usize, input0: Frac, input1: Frac, mixed: Frac) -> PrintedSlot {
    PrintedSlot {
        level,
        count,
        input0,
        input1,
        mixed,
    }
}

const fn row(
    id: ClassId,
    multiplicity: usize,
    slots: &'static [PrintedSlot],
    avg_input0: Frac,
    avg_input1: Frac,
    avg_mixed: Frac,
) -> PrintedRow {
    PrintedRow {
        id,
        multiplicity,
        slots,
        avg_input0,
        avg_input1,
        avg_mixed,
    }
}

use ClassId::*;
use Level::{Half, One, Zero};

pub const CLASSICAL_TABLE: [PrintedRow; 10] = [
    row(
        I,
        1,
        &[s(Half, 3, (1, 2), (1, 2), (1, 2))],
        (1, 2),
        (1, 2),
        (1, 2),
    ),
    row(
        II,
        3,
        &[
            s(Zero, 1, (21, 4), (-17, 4), (1, 2)),
            s(Half, 2, (3, 4), (1, 4), (1, 2)),
        ],
        (9, 4),
        (-5, 4),
        (1, 2),
    ),
    row(
        III,
        3,
        &[
            s(Zero, 2, (11, 2), (-9, 2), (1, 2)),
            s(Half, 1, (3, 2), (1, 2), (1, 1)),
        ],
        (25, 6),
        (-17, 6),
        (2, 3),
    ),
    row(
        IV,
        1,
        &[s(Zero, 3, (2, 1), (0, 1), (1, 1))],
        (2, 1),
        (0, 1),
        (1, 1),
    ),
    row(
        V,
        1,
        &[s(One, 3, (0, 1), (2, 1), (1, 1))],
        (0, 1),
        (2, 1),
        (1, 1),
    ),
    row(
        VI,
        3,
        &[
            s(Zero, 1, (1, 1), (1, 1), (1, 1)),
            s(One, 2, (-9, 1), (9, 1), (0, 1)),
        ],
        (-17, 3),
        (19, 3),
        (1, 3),
    ),
    row(
        VII,
        3,
        &[
            s(Zero, 2, (9, 1), (-9, 1), (0, 1)),
            s(One, 1, (1, 1), (1, 1), (1, 1)),
        ],
        (19, 3),
        (-17, 3),
        (1, 3),
    ),
    row(
        VIII,
        6,
        &[
            s(Zero, 1, (5, 1), (-4, 1), (1, 2)),
            s(Half, 1, (0, 1), (0, 1), (0, 1)),
            s(One, 1, (-4, 1), (5, 1), (1, 2)),
        ],
        (1, 3),
        (1, 3),
        (1, 3),
    ),
    row(
        IX,
        3,
        &[
            s(Half, 2, (1, 4), (3, 4), (1, 2)),
            s(One, 1, (-17, 4), (21, 4), (1, 2)),
        ],
        (-5, 4),
        (9, 4),
        (1, 2),
    ),
    row(
        X,
        3,
        &[
            s(Half, 1, (1, 2), (3, 2), (1, 1)),
            s(One, 2, (-9, 2), (11, 2), (1, 2)),
        ],
        (-17, 6),
        (25, 6),
        (2, 3),
    ),
];

pub const QUANTUM_TABLE: [PrintedRow; 10] = [
    row(
        I,
        1,
        &[s(Half, 3, (-15, 4), (19, 4), (1, 2))],
        (-15, 4),
        (19, 4),
        (1, 2),
    ),
    row(
        II,
        3,
        &[
            s(Zero, 1, (-15, 4), (19, 4), (1, 2)),
            s(Half, 2, (-15, 4), (19, 4), (1, 2)),
        ],
        (-15, 4),
        (19, 4),
        (1, 2),
    ),
    row(
        III,
        3,
        &[
            s(Zero, 2, (-7, 2), (9, 2), (1, 2)),
            s(Half, 1, (3, 2), (1, 2), (1, 1)),
        ],
        (-11, 6),
        (19, 6),
        (2, 3),
    ),
    row(
        IV,
        1,
        &[s(Zero, 3, (2, 1), (0, 1), (1, 1))],
        (2, 1),
        (0, 1),
        (1, 1),
    ),
    row(
        V,
        1,
        &[s(One, 3, (0, 1), (2, 1), (1, 1))],
        (0, 1),
        (2, 1),
        (1, 1),
    ),
    row(
        VI,
        3,
        &[
            s(Zero, 1, (1, 1), (1, 1), (1, 1)),
            s(One, 2, (-9, 1), (9, 1), (0, 1)),
        ],
        (-17, 3),
        (19, 3),
        (1, 3),
    ),
    row(
        VII,
        3,
        &[
            s(Zero, 2, (9, 1), (-9, 1), (0, 1)),
            s(One, 1, (1, 1), (1, 1), (1, 1)),
        ],
        (19, 3),
        (-17, 3),
        (1, 3),
    ),
    row(
        VIII,
        6,
        &[
            s(Zero, 1, (5, 1), (-4, 1), (1, 2)),
            s(Half, 1, (9, 1), (-9, 1), (0, 1)),
            s(One, 1, (5, 1), (-4, 1), (1, 2)),
        ],
        (19, 3),
        (-17, 3),
        (1, 3),
    ),
    row(
        IX,
        3,
        &[
            s(Half, 2, (19, 4), (-15, 4), (1, 2)),
            s(One, 1, (19, 4), (-15, 4), (1, 2)),
        ],
        (19, 4),
        (-15, 4),
        (1, 2),
    ),
    row(
        X,
        3,
        &[
            s(Half, 1, (3, 2), (1, 2), (1, 1)),
            s(One, 2, (-7, 2), (9, 2), (1, 2)),
        ],
        (-11, 6),
        (19, 6),
        (2, 3),
    ),
];

pub fn printed_table(mode: Mode) -> &'static [PrintedRow; 10] {
    match mode {
        Mode::Classical => &CLASSICAL_TABLE,
        Mode::Quantum => &QUANTUM_TABLE,
    }
}

/// "Table I" / "Table II".
pub fn table_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Classical => "Table I",
        Mode::Quantum => "Table II",
    }
}
