use num_bigint::BigUint;
use serde::Serialize;

use super::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiophantineKind {
    /// `3^u = 2^v - 1`.
    ThreePowEqTwoPowMinus1,
    /// `3^a - 5^b = 2`.
    ThreePowMinusFivePowEq2,
}

impl DiophantineKind {
    pub fn from_index(index: u8) -> Option<Self> {
        match index {
            1 => Some(Self::ThreePowEqTwoPowMinus1),
            2 => Some(Self::ThreePowMinusFivePowEq2),
            _ => None,
        }
    }

    fn bases(self) -> (u32, u32) {
        match self {
            Self::ThreePowEqTwoPowMinus1 => (3, 2),
            Self::ThreePowMinusFivePowEq2 => (3, 5),
        }
    }

    fn holds(self, x: &BigUint, y: &BigUint) -> bool {
        match self {
            Self::ThreePowEqTwoPowMinus1 => x + 1u32 == *y,
            Self::ThreePowMinusFivePowEq2 => *x == y + 2u32,
        }
    }
}

/// All exponent pairs `1 <= a, b <= bound` solving the equation, in
/// lexicographic order.
pub fn diophantine_scan(kind: DiophantineKind, bound: u32) -> Vec<(u32, u32)> {
    let (base_x, base_y) = kind.bases();
    let powers = |base: u32| -> Vec<BigUint> {
        std::iter::successors(Some(BigUint::from(base)), |x| Some(x * base)).take(bound as usize).collect()
    };
    let xs = powers(base_x);
    let ys = powers(base_y);
    let mut solutions = Vec::new();
    for (a, x) in xs.iter().enumerate() {
        for (b, y) in ys.iter().enumerate() {
            if kind.holds(x, y) {
                solutions.push((a as u32 + 1, b as u32 + 1));
            }
        }
    }
    solutions
}

/// The complete solution set of each equation in positive integers.
pub fn expected_solutions(kind: DiophantineKind) -> (u32, u32) {
    match kind {
        DiophantineKind::ThreePowEqTwoPowMinus1 => (1, 2),
        DiophantineKind::ThreePowMinusFivePowEq2 => (3, 2),
    }
}

/// Refuted unless the scan finds exactly the known solution (or nothing,
/// when the bound is too small to reach it).
pub fn diophantine_report(kind: DiophantineKind, bound: u32) -> VerificationReport {
    let found = diophantine_scan(kind, bound);
    let (a, b) = expected_solutions(kind);
    let expected: Vec<(u32, u32)> = if a <= bound && b <= bound { vec![(a, b)] } else { Vec::new() };
    let mut report = VerificationReport::new("diophantine").param("kind", kind).param("bound", bound);
    for s in &found {
        report.witness(s);
    }
    if found != expected {
        report.refute(serde_json::json!({ "found": found, "expected": expected }));
    }
    report
}
