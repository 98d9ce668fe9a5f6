//! Comparison of the solver's `P` with Kostka-Foulkes polynomials in type A.
//!
//! With rows and columns labelled by partitions, the double-primed entries
//! satisfy `p''_{λμ} = t^{n(μ)} K_{λμ}(t^{-1})`.

use std::fmt;
use std::str::FromStr;

use green_core::{
    block_structure, build_omega, generate_symmetric_group, generate_type_a, normalize, solve, LaurentPoly,
    Normalization, Partition,
};

use crate::tableaux::kostka_foulkes;
use crate::OracleError;

/// How irreducible labels of `S_n` correspond to the partitions indexing
/// Kostka-Foulkes polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BridgeConvention {
    /// Irreducible `λ` is indexed by `λ`.
    #[default]
    Identity,
    /// Irreducible `λ` is indexed by the conjugate `λ'`.
    Transpose,
}

impl FromStr for BridgeConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" => Ok(Self::Identity),
            "transpose" => Ok(Self::Transpose),
            other => Err(format!("unknown convention {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeMismatch {
    pub row: String,
    pub col: String,
    pub solver: LaurentPoly,
    pub expected: LaurentPoly,
}

impl fmt::Display for BridgeMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p''[{}, {}] = {} but expected {}", self.row, self.col, self.solver, self.expected)
    }
}

/// `t^{n(μ)} K_{λμ}(t^{-1})`.
pub fn expected_entry(lambda: &Partition, mu: &Partition) -> LaurentPoly {
    kostka_foulkes(lambda, mu).bar().shift(2 * mu.n_statistic() as i64)
}

/// Solves for `S_n` and lists every entry of `P''` that disagrees with the
/// Kostka-Foulkes prediction. An empty list means the bridge holds.
pub fn kostka_bridge(n: usize, convention: BridgeConvention) -> Result<Vec<BridgeMismatch>, OracleError> {
    let weyl = generate_symmetric_group(n).map_err(|e| OracleError::Datum(e.to_string()))?;
    let springer = generate_type_a(n).map_err(|e| OracleError::Datum(e.to_string()))?;
    let omega = build_omega(&weyl, &springer)?;
    let pair = normalize(&solve(&omega, &block_structure(&springer, None))?, Normalization::DoublePrime);

    let index: Vec<Partition> = pair
        .labels
        .iter()
        .map(|l| {
            let p: Partition = l.parse().map_err(|_| OracleError::Datum(format!("label {l} is not a partition")))?;
            Ok(match convention {
                BridgeConvention::Identity => p,
                BridgeConvention::Transpose => p.conjugate(),
            })
        })
        .collect::<Result<_, OracleError>>()?;

    let mut out = Vec::new();
    for (i, lambda) in index.iter().enumerate() {
        for (j, mu) in index.iter().enumerate() {
            let expected = expected_entry(lambda, mu);
            if pair.p[(i, j)] != expected {
                out.push(BridgeMismatch {
                    row: pair.labels[i].clone(),
                    col: pair.labels[j].clone(),
                    solver: pair.p[(i, j)].clone(),
                    expected,
                });
            }
        }
    }
    Ok(out)
}
