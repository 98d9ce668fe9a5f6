//! Every check available for `S_n`, as one line each.

use std::fmt;

use green_core::coinvariants::{complementary_degree_check, fake_degrees};
use green_core::{block_structure, build_omega, generate_symmetric_group, generate_type_a, solve, verify};

use crate::bridge::{kostka_bridge, BridgeConvention};
use crate::coinvariant::{coinvariant_expand, MAX_EXPAND_N};
use crate::uniqueness::uniqueness_harness;
use crate::OracleError;

/// Seeds used for the uniqueness check.
pub const DEFAULT_SEEDS: [u64; 3] = [11, 23, 47];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, failures: Vec<String>) -> Self {
        Self {
            name: name.into(),
            passed: failures.is_empty(),
            detail: failures.join("; "),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Builds, solves and cross-checks `S_n`: every solution invariant, the
/// complementary-degree symmetry, and all oracle comparisons.
pub fn run_check(n: usize) -> Result<Vec<CheckLine>, OracleError> {
    let weyl = generate_symmetric_group(n).map_err(|e| OracleError::Datum(e.to_string()))?;
    let springer = generate_type_a(n).map_err(|e| OracleError::Datum(e.to_string()))?;
    let omega = build_omega(&weyl, &springer)?;
    let pair = solve(&omega, &block_structure(&springer, None))?;

    let mut lines: Vec<CheckLine> = verify(&pair, &omega)
        .checks
        .into_iter()
        .map(|c| CheckLine::new(c.name, c.details))
        .collect();

    let mut failures = Vec::new();
    for (i, chi) in weyl.irreducibles.iter().enumerate() {
        if !complementary_degree_check(&weyl, i)? {
            failures.push(chi.label.clone());
        }
    }
    lines.push(CheckLine::new("complementary_degrees", failures));
    lines.extend(oracle_checks(n, &DEFAULT_SEEDS)?);
    Ok(lines)
}

/// Oracle comparisons for `S_n`: Molien series against the brute-force
/// expansion (skipped above [`MAX_EXPAND_N`]), `P''` against Kostka-Foulkes
/// polynomials, and agreement across seeded block orders.
pub fn oracle_checks(n: usize, seeds: &[u64]) -> Result<Vec<CheckLine>, OracleError> {
    let weyl = generate_symmetric_group(n).map_err(|e| OracleError::Datum(e.to_string()))?;
    let springer = generate_type_a(n).map_err(|e| OracleError::Datum(e.to_string()))?;
    let mut lines = Vec::new();

    if n <= MAX_EXPAND_N {
        let table = fake_degrees(&weyl)?;
        let brute = coinvariant_expand(n, usize::MAX)?;
        let failures = weyl
            .irreducibles
            .iter()
            .zip(table.iter().zip(&brute.multiplicities))
            .filter(|(_, (molien, direct))| molien.poly() != *direct)
            .map(|(chi, (molien, direct))| format!("{}: {} vs {}", chi.label, molien.poly(), direct))
            .collect();
        lines.push(CheckLine::new("molien_brute_force", failures));
    }

    let mismatches = kostka_bridge(n, BridgeConvention::Identity)?;
    lines.push(CheckLine::new(
        "kostka_bridge",
        mismatches.iter().map(ToString::to_string).collect(),
    ));

    let omega = build_omega(&weyl, &springer)?;
    let report = uniqueness_harness(&omega, &springer, seeds)?;
    lines.push(CheckLine::new(
        "uniqueness",
        report
            .mismatches
            .iter()
            .map(|(seed, a, b)| format!("seed {seed} differs at [{a}, {b}]"))
            .chain(report.errors.iter().map(|(seed, e)| format!("seed {seed}: {e}")))
            .collect(),
    ));
    Ok(lines)
}
