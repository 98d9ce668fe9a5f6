//! Block-triangular solution of `P Λ Pᵗ = Ω`.
//!
//! Columns are eliminated one orbit block at a time, smallest orbits first.
//! `P` has the known diagonal `t^{-dim O/2}` and vanishes outside the
//! closure order; `Λ` is block diagonal. Every step is exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coinvariants::OmegaMatrix;
use crate::files::{self, FileError};
use crate::laurent::{LaurentPoly, RationalFunction};
use crate::matrix::Matrix;
use crate::springer::BlockStructure;

pub const SOLUTION_SCHEMA: &str = "green-solution/1";

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("block structure does not match omega: {0}")]
    IndexMismatch(String),
    #[error("omega is not symmetric at ({row}, {col})")]
    AsymmetricOmega { row: String, col: String },
    #[error("Lambda block for orbit {orbit} is singular")]
    SingularBlock { orbit: String },
    #[error(
        "inconsistent support: residual {residual} at ({row}, {col}) must vanish because orbit {row_orbit} does not contain {col_orbit} in its closure"
    )]
    InconsistentSupport {
        row: String,
        col: String,
        row_orbit: String,
        col_orbit: String,
        residual: String,
    },
    #[error("entry P[{row}, {col}] = {value} is not a Laurent polynomial")]
    NonPolynomialEntry { row: String, col: String, value: String },
    #[error("unknown orbit {0}")]
    UnknownOrbit(String),
    #[error("irreducible index {0} is out of range")]
    UnknownIrreducible(usize),
    #[error(transparent)]
    File(#[from] FileError),
}

/// Normalization conventions for `P` and `Ω`.
///
/// `Prime` scales row `χ` of `P` by `t^{dim O_χ / 2}`, `DoublePrime` scales
/// all of `P` by `t^d`. `Λ` is the same in every convention, so
/// `P' Λ P'ᵗ = Ω'` and `P'' Λ P''ᵗ = Ω''` keep holding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    LusztigPlain,
    Prime,
    DoublePrime,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::LusztigPlain => "lusztig_plain",
            Normalization::Prime => "prime",
            Normalization::DoublePrime => "double_prime",
        }
    }

    /// `s`-exponent by which row `χ` of plain `P` is multiplied.
    fn p_row_shift(self, orbit_dim: u32, flag_dim: u32) -> i64 {
        match self {
            Normalization::LusztigPlain => 0,
            Normalization::Prime => orbit_dim as i64,
            Normalization::DoublePrime => 2 * flag_dim as i64,
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Normalization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lusztig_plain" | "plain" => Ok(Normalization::LusztigPlain),
            "prime" => Ok(Normalization::Prime),
            "double_prime" => Ok(Normalization::DoublePrime),
            other => Err(format!("unknown normalization {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPair {
    pub labels: Vec<String>,
    pub flag_dim: u32,
    pub p: Matrix<LaurentPoly>,
    pub lambda: Matrix<LaurentPoly>,
    pub blocks: BlockStructure,
    pub normalization: Normalization,
    /// Content hash of the Ω the pair was solved from.
    pub omega_hash: String,
}

pub fn solve(omega: &OmegaMatrix, blocks: &BlockStructure) -> Result<SolutionPair, SolveError> {
    let n = omega.size();
    let structural = blocks.violations();
    if !structural.is_empty() {
        return Err(SolveError::IndexMismatch(structural.join("; ")));
    }
    if blocks.num_irreducibles() != n || omega.entries.rows() != n || omega.entries.cols() != n {
        return Err(SolveError::IndexMismatch(format!(
            "{} irreducibles in blocks, omega is {}x{} with {n} labels",
            blocks.num_irreducibles(),
            omega.entries.rows(),
            omega.entries.cols()
        )));
    }
    let labels = &omega.labels;
    for i in 0..n {
        for j in 0..i {
            if omega.get(i, j) != omega.get(j, i) {
                return Err(SolveError::AsymmetricOmega {
                    row: labels[i].clone(),
                    col: labels[j].clone(),
                });
            }
        }
    }

    let mut p = Matrix::<LaurentPoly>::zeros(n, n);
    let mut lambda = Matrix::<LaurentPoly>::zeros(n, n);
    // residual[a][b] = Ω_ab - Σ over finished blocks K of (P_aK Λ_K P_bKᵗ)
    let mut residual = omega.entries.clone();

    for (jb, block) in blocks.blocks.iter().enumerate() {
        let dim = block.dim as i64;
        let members = &block.members;
        for &a in members {
            p[(a, a)] = LaurentPoly::s_pow(-dim);
        }
        for &a in members {
            for &b in members {
                lambda[(a, b)] = residual[(a, b)].shift(2 * dim);
            }
        }
        let lambda_block = lambda.select(members, members);
        debug_assert!(lambda_block.is_symmetric());
        let lambda_inv = lambda_block
            .to_rational()
            .mat_inverse()
            .map_err(|_| SolveError::SingularBlock {
                orbit: block.orbit.clone(),
            })?;
        // P_IJ Λ_J P_JJᵗ = R_IJ  =>  P_IJ = R_IJ Λ_J^{-1} s^{dim}
        let scale = RationalFunction::from_poly(LaurentPoly::s_pow(dim));

        for (ib, later) in blocks.blocks.iter().enumerate().skip(jb + 1) {
            let comparable = blocks.closure[jb][ib];
            for &a in &later.members {
                if !comparable {
                    if let Some(&b) = members.iter().find(|&&b| !residual[(a, b)].is_zero()) {
                        return Err(SolveError::InconsistentSupport {
                            row: labels[a].clone(),
                            col: labels[b].clone(),
                            row_orbit: later.orbit.clone(),
                            col_orbit: block.orbit.clone(),
                            residual: residual[(a, b)].to_string(),
                        });
                    }
                    continue;
                }
                for (y, &b) in members.iter().enumerate() {
                    let mut acc = RationalFunction::zero();
                    for (x, &c) in members.iter().enumerate() {
                        if residual[(a, c)].is_zero() {
                            continue;
                        }
                        let r = RationalFunction::from_poly(residual[(a, c)].clone());
                        acc = &acc + &(&r * &lambda_inv[(x, y)]);
                    }
                    let value = &acc * &scale;
                    p[(a, b)] = value.to_poly().map_err(|_| SolveError::NonPolynomialEntry {
                        row: labels[a].clone(),
                        col: labels[b].clone(),
                        value: value.to_string(),
                    })?;
                }
            }
        }

        // subtract this block's contribution from the residual of later rows
        let later: Vec<usize> = blocks.blocks[jb..]
            .iter()
            .flat_map(|b| b.members.iter().copied())
            .collect();
        let contribution = |a: usize, b: usize| -> LaurentPoly {
            let mut sum = LaurentPoly::zero();
            for &x in members {
                if p[(a, x)].is_zero() {
                    continue;
                }
                for &y in members {
                    if p[(b, y)].is_zero() || lambda[(x, y)].is_zero() {
                        continue;
                    }
                    sum = &sum + &(&(&p[(a, x)] * &lambda[(x, y)]) * &p[(b, y)]);
                }
            }
            sum
        };
        let updates: Vec<(usize, usize, LaurentPoly)> = later
            .iter()
            .flat_map(|&a| later.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a <= b)
            .map(|(a, b)| (a, b, contribution(a, b)))
            .collect();
        for (a, b, c) in updates {
            let v = &residual[(a, b)] - &c;
            residual[(b, a)] = v.clone();
            residual[(a, b)] = v;
        }
    }

    Ok(SolutionPair {
        labels: labels.clone(),
        flag_dim: omega.flag_dim,
        p,
        lambda,
        blocks: blocks.clone(),
        normalization: Normalization::LusztigPlain,
        omega_hash: omega.content_hash(),
    })
}

/// Rescales `P` into `target`. Works from any normalization.
pub fn normalize(pair: &SolutionPair, target: Normalization) -> SolutionPair {
    let dims = pair.blocks.irr_dims();
    let from = pair.normalization;
    let p = Matrix::from_fn(pair.p.rows(), pair.p.cols(), |i, j| {
        let shift = target.p_row_shift(dims[i], pair.flag_dim) - from.p_row_shift(dims[i], pair.flag_dim);
        pair.p[(i, j)].shift(shift)
    });
    SolutionPair {
        p,
        normalization: target,
        ..pair.clone()
    }
}

/// `Ω'` or `Ω''` from plain `Ω`: `ω'_{χψ} = t^{(dim O_χ + dim O_ψ)/2} ω_{χψ}`,
/// `ω''_{χψ} = t^{2d} ω_{χψ}`.
pub fn normalize_omega(omega: &OmegaMatrix, blocks: &BlockStructure, target: Normalization) -> Matrix<LaurentPoly> {
    let dims = blocks.irr_dims();
    let d = omega.flag_dim;
    Matrix::from_fn(omega.size(), omega.size(), |i, j| {
        let shift = match target {
            Normalization::LusztigPlain => 0,
            Normalization::Prime => dims[i] as i64 + dims[j] as i64,
            Normalization::DoublePrime => 4 * d as i64,
        };
        omega.get(i, j).shift(shift)
    })
}

/// Outcome of one named check in a [`VerifyReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Offending entries, empty on success.
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    /// `P Λ Pᵗ - Ω`, when the index sets were compatible.
    pub residual: Option<Matrix<LaurentPoly>>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            for d in &c.details {
                writeln!(f, "    {d}")?;
            }
        }
        Ok(())
    }
}

pub const CHECK_INDEX_SETS: &str = "index_sets";
pub const CHECK_RESIDUAL: &str = "residual_zero";
pub const CHECK_P_DIAGONAL: &str = "p_diagonal";
pub const CHECK_P_SUPPORT: &str = "p_support";
pub const CHECK_LAMBDA_SUPPORT: &str = "lambda_support";
pub const CHECK_LAMBDA_SYMMETRIC: &str = "lambda_symmetric";
pub const CHECK_P_POSITIVITY: &str = "p_positivity";

/// Recomputes `P Λ Pᵗ` and checks every solution invariant separately.
/// Never fails; problems are reported.
pub fn verify(pair: &SolutionPair, omega: &OmegaMatrix) -> VerifyReport {
    let n = omega.size();
    let mut index_issues = Vec::new();
    if pair.labels != omega.labels {
        index_issues.push(format!("labels differ: {:?} vs {:?}", pair.labels, omega.labels));
    }
    for (name, m) in [("P", &pair.p), ("Lambda", &pair.lambda), ("Omega", &omega.entries)] {
        if m.rows() != n || m.cols() != n {
            index_issues.push(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols()));
        }
    }
    index_issues.extend(pair.blocks.violations());
    if pair.blocks.num_irreducibles() != n {
        index_issues.push(format!(
            "blocks cover {} irreducibles, expected {n}",
            pair.blocks.num_irreducibles()
        ));
    }
    if pair.flag_dim != omega.flag_dim {
        index_issues.push(format!("flag dimension {} vs {}", pair.flag_dim, omega.flag_dim));
    }
    let mut checks = vec![CheckOutcome {
        name: CHECK_INDEX_SETS,
        passed: index_issues.is_empty(),
        details: index_issues,
    }];
    if !checks[0].passed {
        return VerifyReport {
            checks,
            residual: None,
        };
    }

    let plain = normalize(pair, Normalization::LusztigPlain);
    let labels = &plain.labels;
    let block_of = plain.blocks.block_of();
    let dims = plain.blocks.irr_dims();
    let closure = &plain.blocks.closure;
    let name = |i: usize, j: usize| format!("({}, {})", labels[i], labels[j]);

    let product = plain
        .p
        .mat_mul(&plain.lambda)
        .and_then(|m| m.mat_mul(&plain.p.transpose()))
        .and_then(|m| m.mat_sub(&omega.entries))
        .expect("dimensions checked above");
    let residual_details: Vec<String> = product
        .entries()
        .filter(|(_, v)| !v.is_zero())
        .map(|((i, j), v)| format!("residual {} = {v}", name(i, j)))
        .collect();

    let mut diag = Vec::new();
    let mut p_support = Vec::new();
    let mut lam_support = Vec::new();
    let mut lam_sym = Vec::new();
    let mut positivity = Vec::new();
    for i in 0..n {
        let expected = LaurentPoly::s_pow(-(dims[i] as i64));
        if plain.p[(i, i)] != expected {
            diag.push(format!("P{} = {}, expected {expected}", name(i, i), plain.p[(i, i)]));
        }
        for j in 0..n {
            let pij = &plain.p[(i, j)];
            let (bi, bj) = (block_of[i], block_of[j]);
            let allowed = i == j || (bi != bj && closure[bj][bi]);
            if !allowed && !pij.is_zero() {
                p_support.push(format!("P{} = {pij} must vanish", name(i, j)));
            }
            let lij = &plain.lambda[(i, j)];
            if bi != bj && !lij.is_zero() {
                lam_support.push(format!("Lambda{} = {lij} must vanish", name(i, j)));
            }
            if j > i && *lij != plain.lambda[(j, i)] {
                lam_sym.push(format!("Lambda{} != Lambda{}", name(i, j), name(j, i)));
            }
            let ok = pij.terms().all(|(e, c)| e <= 0 && e % 2 == 0 && c.is_integer() && !c.is_negative());
            if !ok {
                positivity.push(format!("P{} = {pij} is not in Z>=0[t^-1]", name(i, j)));
            }
        }
    }

    checks.extend([
        CheckOutcome { name: CHECK_RESIDUAL, passed: residual_details.is_empty(), details: residual_details },
        CheckOutcome { name: CHECK_P_DIAGONAL, passed: diag.is_empty(), details: diag },
        CheckOutcome { name: CHECK_P_SUPPORT, passed: p_support.is_empty(), details: p_support },
        CheckOutcome { name: CHECK_LAMBDA_SUPPORT, passed: lam_support.is_empty(), details: lam_support },
        CheckOutcome { name: CHECK_LAMBDA_SYMMETRIC, passed: lam_sym.is_empty(), details: lam_sym },
        CheckOutcome { name: CHECK_P_POSITIVITY, passed: positivity.is_empty(), details: positivity },
    ]);
    VerifyReport {
        checks,
        residual: Some(product),
    }
}

/// Multiplicities `(H^{2i}(IC_χ|_O) : L_ψ(-i))`, one row per cohomological
/// degree that occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StalkTable {
    pub chi: String,
    pub orbit: String,
    /// Labels `ψ` of the local systems on the orbit.
    pub columns: Vec<String>,
    /// `(cohomological degree, multiplicity per column)`, increasing degree.
    pub rows: Vec<(i64, Vec<BigInt>)>,
}

impl fmt::Display for StalkTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IC_{} restricted to orbit {}", self.chi, self.orbit)?;
        if self.rows.is_empty() {
            return writeln!(f, "  (zero)");
        }
        writeln!(f, "  degree | {}", self.columns.join(" | "))?;
        for (deg, mults) in &self.rows {
            let cells: Vec<String> = mults.iter().map(ToString::to_string).collect();
            writeln!(f, "  {deg:>6} | {}", cells.join(" | "))?;
        }
        Ok(())
    }
}

/// Reads `p_{χ,ψ}(t) = Σ_i (H^{2i}(IC_χ|_O) : L_ψ(-i)) t^i` for every `ψ`
/// on `orbit`. The `s`-exponent of a term is its cohomological degree.
pub fn stalk_report(pair: &SolutionPair, chi: usize, orbit: &str) -> Result<StalkTable, SolveError> {
    if chi >= pair.labels.len() {
        return Err(SolveError::UnknownIrreducible(chi));
    }
    let block = pair
        .blocks
        .blocks
        .iter()
        .find(|b| b.orbit == orbit)
        .ok_or_else(|| SolveError::UnknownOrbit(orbit.to_string()))?;
    let plain = normalize(pair, Normalization::LusztigPlain);
    let polys: Vec<&LaurentPoly> = block.members.iter().map(|&psi| &plain.p[(chi, psi)]).collect();
    let mut degrees: Vec<i64> = polys.iter().flat_map(|p| p.terms().map(|(e, _)| e)).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let rows = degrees
        .into_iter()
        .map(|e| (e, polys.iter().map(|p| p.coeff(e).to_integer()).collect()))
        .collect();
    Ok(StalkTable {
        chi: pair.labels[chi].clone(),
        orbit: orbit.to_string(),
        columns: block.members.iter().map(|&m| pair.labels[m].clone()).collect(),
        rows,
    })
}

#[derive(Serialize, Deserialize)]
struct SolutionFile {
    schema: String,
    normalization: Normalization,
    omega_hash: String,
    flag_dim: u32,
    labels: Vec<String>,
    blocks: BlockStructure,
    p: Matrix<LaurentPoly>,
    lambda: Matrix<LaurentPoly>,
}

impl SolutionPair {
    pub fn to_json(&self) -> String {
        files::to_json(&SolutionFile {
            schema: SOLUTION_SCHEMA.to_string(),
            normalization: self.normalization,
            omega_hash: self.omega_hash.clone(),
            flag_dim: self.flag_dim,
            labels: self.labels.clone(),
            blocks: self.blocks.clone(),
            p: self.p.clone(),
            lambda: self.lambda.clone(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, SolveError> {
        let file: SolutionFile = files::parse_json(text)?;
        files::check_schema(&file.schema, SOLUTION_SCHEMA)?;
        Ok(Self {
            labels: file.labels,
            flag_dim: file.flag_dim,
            p: file.p,
            lambda: file.lambda,
            blocks: file.blocks,
            normalization: file.normalization,
            omega_hash: file.omega_hash,
        })
    }

    /// LaTeX `tabular` of `P` in the pair's normalization.
    pub fn p_latex(&self) -> String {
        let n = self.labels.len();
        let mut out = String::new();
        out.push_str(&format!("% P in {} normalization\n", self.normalization));
        out.push_str(&format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(n)));
        let header: Vec<String> = self.labels.iter().map(|l| format!("${l}$")).collect();
        out.push_str(&format!(" & {} \\\\\n\\hline\n", header.join(" & ")));
        for i in 0..n {
            let cells: Vec<String> = (0..n).map(|j| format!("${}$", self.p[(i, j)].to_latex())).collect();
            out.push_str(&format!("${}$ & {} \\\\\n", self.labels[i], cells.join(" & ")));
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    /// CSV of `P`: one row per `χ`, one column per `ψ`.
    pub fn p_csv(&self) -> String {
        self.p.labelled_csv("chi", &self.labels)
    }
}
