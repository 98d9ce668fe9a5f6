//! Re-solves one Ω under several seeded linear extensions of the closure
//! order and checks that every run yields the same `(P, Λ)`.

use green_core::{block_structure, solve, OmegaMatrix, SolutionPair, SpringerDatum};

use crate::OracleError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub seeds: Vec<u64>,
    /// Block orbit order used by each run.
    pub orders: Vec<Vec<String>>,
    /// `(seed, label, label)` of entries that differ from the first
    /// successful run.
    pub mismatches: Vec<(u64, String, String)>,
    /// Seeds whose run failed, with the solver's message.
    pub errors: Vec<(u64, String)>,
}

impl UniquenessReport {
    pub fn identical(&self) -> bool {
        self.mismatches.is_empty() && self.errors.is_empty()
    }

    /// Number of distinct block orders that were exercised.
    pub fn distinct_orders(&self) -> usize {
        let mut orders = self.orders.clone();
        orders.sort();
        orders.dedup();
        orders.len()
    }
}

pub fn uniqueness_harness(
    omega: &OmegaMatrix,
    springer: &SpringerDatum,
    seeds: &[u64],
) -> Result<UniquenessReport, OracleError> {
    if seeds.len() < 2 {
        return Err(OracleError::TooFewSeeds(seeds.len()));
    }
    let mut orders = Vec::with_capacity(seeds.len());
    let mut mismatches = Vec::new();
    let mut errors = Vec::new();
    let mut reference: Option<SolutionPair> = None;
    for &seed in seeds {
        let blocks = block_structure(springer, Some(seed));
        orders.push(blocks.blocks.iter().map(|b| b.orbit.clone()).collect());
        let pair = match solve(omega, &blocks) {
            Ok(pair) => pair,
            Err(e) => {
                errors.push((seed, e.to_string()));
                continue;
            }
        };
        let Some(first) = &reference else {
            reference = Some(pair);
            continue;
        };
        let n = pair.labels.len();
        for i in 0..n {
            for j in 0..n {
                if pair.p[(i, j)] != first.p[(i, j)] || pair.lambda[(i, j)] != first.lambda[(i, j)] {
                    mismatches.push((seed, pair.labels[i].clone(), pair.labels[j].clone()));
                }
            }
        }
    }
    Ok(UniquenessReport {
        seeds: seeds.to_vec(),
        orders,
        mismatches,
        errors,
    })
}
