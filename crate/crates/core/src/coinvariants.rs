//! Graded multiplicities of characters in the coinvariant algebra, computed
//! by Molien summation, and the tables derived from them: fake degrees,
//! Ext dimensions and the Ω matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::files::{self, FileError};
use crate::laurent::{AlgebraError, LaurentPoly, RationalFunction};
use crate::matrix::Matrix;
use crate::springer::SpringerDatum;
use crate::weyl::WeylDatum;

pub const OMEGA_SCHEMA: &str = "green-omega/1";
pub const FAKE_DEGREE_SCHEMA: &str = "green-fake-degrees/1";
pub const EXT_SCHEMA: &str = "green-ext/1";

#[derive(Debug, Error)]
pub enum CoinvariantError {
    #[error("Molien sum is not a polynomial (corrupt datum?): {0}")]
    NotPolynomial(AlgebraError),
    #[error("graded multiplicity {poly} of a character has a negative coefficient")]
    NegativeCoefficient { poly: String },
    #[error("graded multiplicity {poly} of a character is not an integer polynomial in t")]
    NonIntegral { poly: String },
    #[error("graded multiplicity {poly} has degree outside [0, {max}]")]
    DegreeOutOfRange { poly: String, max: u32 },
    #[error("class function has {found} entries, datum has {expected} classes")]
    Length { expected: usize, found: usize },
    #[error("irreducible index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("springer datum labels {springer:?} do not match group labels {weyl:?}")]
    LabelMismatch {
        weyl: Vec<String>,
        springer: Vec<String>,
    },
    #[error(transparent)]
    File(#[from] FileError),
    #[error("invalid omega matrix:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
}

/// A polynomial in `t` whose `t^i` coefficient is the multiplicity of a
/// character in `H^{2i}` of the flag variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedMultiplicity(LaurentPoly);

impl GradedMultiplicity {
    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    /// Multiplicity in cohomological degree `2i`.
    pub fn coeff_t(&self, i: i64) -> BigInt {
        self.0.coeff(2 * i).to_integer()
    }

    /// Coefficients of `t^0 .. t^max_degree`.
    pub fn coefficients(&self, max_degree: u32) -> Vec<BigInt> {
        (0..=max_degree as i64).map(|i| self.coeff_t(i)).collect()
    }

    pub fn value_at_one(&self) -> BigInt {
        self.0.eval_at_one().to_integer()
    }
}

impl std::fmt::Display for GradedMultiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Per-datum Molien data: `1/det(1 - t w)` for each class and the
/// normalizing factor `Π (1 - t^{d_j}) / |W|`.
pub struct MolienKernel<'a> {
    weyl: &'a WeylDatum,
    inverse_charpolys: Vec<RationalFunction>,
    prefactor: RationalFunction,
}

impl<'a> MolienKernel<'a> {
    pub fn new(weyl: &'a WeylDatum) -> Result<Self, CoinvariantError> {
        let inverse_charpolys = weyl
            .classes
            .iter()
            .map(|c| RationalFunction::new(LaurentPoly::one(), c.refl_charpoly.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CoinvariantError::NotPolynomial)?;
        let degree_product = weyl.degrees.iter().fold(LaurentPoly::one(), |acc, &d| {
            &acc * &(LaurentPoly::one() - LaurentPoly::t_pow(d as i64))
        });
        let order = BigRational::from_integer(BigInt::from(weyl.order));
        let prefactor = RationalFunction::from_poly(degree_product.scale(&order.recip()));
        Ok(Self {
            weyl,
            inverse_charpolys,
            prefactor,
        })
    }

    /// `Π(1 - t^{d_j}) (1/|W|) Σ_C |C| f(C) / det(1 - t w_C)` for an arbitrary
    /// integer class function. No sign or integrality checks.
    pub fn series(&self, f: &[i64]) -> Result<LaurentPoly, CoinvariantError> {
        if f.len() != self.weyl.classes.len() {
            return Err(CoinvariantError::Length {
                expected: self.weyl.classes.len(),
                found: f.len(),
            });
        }
        let mut acc = RationalFunction::zero();
        for ((class, inv), &value) in self.weyl.classes.iter().zip(&self.inverse_charpolys).zip(f) {
            if value == 0 {
                continue;
            }
            let weight = BigInt::from(class.size) * BigInt::from(value);
            let term = inv * &RationalFunction::from_poly(LaurentPoly::constant(BigRational::from_integer(weight)));
            acc = &acc + &term;
        }
        (&acc * &self.prefactor)
            .to_poly()
            .map_err(CoinvariantError::NotPolynomial)
    }

    /// Graded multiplicity of a genuine character; rejects any result that a
    /// character cannot produce.
    pub fn multiplicity(&self, f: &[i64]) -> Result<GradedMultiplicity, CoinvariantError> {
        let poly = self.series(f)?;
        check_character_series(&poly, self.weyl.flag_dim())?;
        Ok(GradedMultiplicity(poly))
    }
}

fn check_character_series(poly: &LaurentPoly, d: u32) -> Result<(), CoinvariantError> {
    if !poly.is_integral_in_t() || !poly.has_integer_coeffs() {
        return Err(CoinvariantError::NonIntegral { poly: poly.to_string() });
    }
    if !poly.has_nonnegative_coeffs() {
        return Err(CoinvariantError::NegativeCoefficient { poly: poly.to_string() });
    }
    let in_range = poly.min_exp().is_none_or(|e| e >= 0)
        && poly.max_exp().is_none_or(|e| e <= 2 * d as i64);
    if !in_range {
        return Err(CoinvariantError::DegreeOutOfRange {
            poly: poly.to_string(),
            max: d,
        });
    }
    Ok(())
}

/// Graded multiplicity of the character `f` in the coinvariant algebra.
pub fn graded_multiplicity(weyl: &WeylDatum, f: &[i64]) -> Result<GradedMultiplicity, CoinvariantError> {
    MolienKernel::new(weyl)?.multiplicity(f)
}

fn check_index(weyl: &WeylDatum, i: usize) -> Result<(), CoinvariantError> {
    if i < weyl.num_irreducibles() {
        Ok(())
    } else {
        Err(CoinvariantError::IndexOutOfRange(i))
    }
}

pub fn fake_degree(weyl: &WeylDatum, chi: usize) -> Result<GradedMultiplicity, CoinvariantError> {
    check_index(weyl, chi)?;
    graded_multiplicity(weyl, &weyl.irreducibles[chi].values)
}

/// Fake degrees of every irreducible, in datum order.
pub fn fake_degrees(weyl: &WeylDatum) -> Result<Vec<GradedMultiplicity>, CoinvariantError> {
    let kernel = MolienKernel::new(weyl)?;
    weyl.irreducibles
        .par_iter()
        .map(|chi| kernel.multiplicity(&chi.values))
        .collect()
}

/// `t^i` coefficient = `dim Hom^{2i}(IC_χ, IC_ψ) = <χψ, H^{2i}>`. Odd
/// degrees vanish and are not represented.
pub fn ext_dimension_table(
    weyl: &WeylDatum,
    chi: usize,
    psi: usize,
) -> Result<GradedMultiplicity, CoinvariantError> {
    check_index(weyl, chi)?;
    check_index(weyl, psi)?;
    graded_multiplicity(weyl, &weyl.product_character(chi, psi, false))
}

/// Checks `F_{χε}(t) = t^d F_χ(t^{-1})`.
pub fn complementary_degree_check(weyl: &WeylDatum, chi: usize) -> Result<bool, CoinvariantError> {
    check_index(weyl, chi)?;
    let kernel = MolienKernel::new(weyl)?;
    let twisted = kernel.multiplicity(&weyl.product_character(chi, weyl.trivial_index, true))?;
    let plain = kernel.multiplicity(&weyl.irreducibles[chi].values)?;
    let d = weyl.flag_dim() as i64;
    Ok(*twisted.poly() == plain.poly().bar().shift(2 * d))
}

/// The Ω matrix: `ω_{χ,ψ} = t^{-2d} Σ_i dim Hom_W(χ ⊗ ψ ⊗ ε, H^{2i}) t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaMatrix {
    pub labels: Vec<String>,
    pub flag_dim: u32,
    pub entries: Matrix<LaurentPoly>,
    /// Content hash of the group datum the matrix was built from.
    pub group_hash: String,
}

#[derive(Serialize, Deserialize)]
struct OmegaFile {
    schema: String,
    group_hash: String,
    flag_dim: u32,
    labels: Vec<String>,
    entries: Matrix<LaurentPoly>,
}

impl OmegaMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[(i, j)]
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.labels.len();
        if self.entries.rows() != n || self.entries.cols() != n {
            out.push(format!(
                "entries are {}x{} for {n} labels",
                self.entries.rows(),
                self.entries.cols()
            ));
            return out;
        }
        let shift = 4 * self.flag_dim as i64;
        for i in 0..n {
            for j in 0..n {
                let e = &self.entries[(i, j)];
                if j > i && *e != self.entries[(j, i)] {
                    out.push(format!(
                        "not symmetric at ({}, {}): {} vs {}",
                        self.labels[i], self.labels[j], e, self.entries[(j, i)]
                    ));
                }
                if let Err(err) = check_character_series(&e.shift(shift), self.flag_dim) {
                    out.push(format!(
                        "entry ({}, {}) = {e}: t^(2d) * entry fails: {err}",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
        }
        out
    }

    /// Hash of the canonical serialized form; solution files cite it.
    pub fn content_hash(&self) -> String {
        files::content_hash(self.to_json().as_bytes())
    }

    pub fn to_json(&self) -> String {
        files::to_json(&OmegaFile {
            schema: OMEGA_SCHEMA.to_string(),
            group_hash: self.group_hash.clone(),
            flag_dim: self.flag_dim,
            labels: self.labels.clone(),
            entries: self.entries.clone(),
        })
    }

    /// Parses and validates a `green-omega/1` document.
    pub fn from_json(text: &str) -> Result<Self, CoinvariantError> {
        let file: OmegaFile = files::parse_json(text)?;
        files::check_schema(&file.schema, OMEGA_SCHEMA)?;
        let omega = Self {
            labels: file.labels,
            flag_dim: file.flag_dim,
            entries: file.entries,
            group_hash: file.group_hash,
        };
        let v = omega.violations();
        if v.is_empty() {
            Ok(omega)
        } else {
            Err(CoinvariantError::Validation(v))
        }
    }
}

/// Content hash identifying a group datum.
pub fn group_hash(weyl: &WeylDatum) -> String {
    files::content_hash(weyl.to_json().as_bytes())
}

pub fn build_omega(weyl: &WeylDatum, springer: &SpringerDatum) -> Result<OmegaMatrix, CoinvariantError> {
    let labels = weyl.irr_labels();
    if springer.irr_labels() != labels.as_slice() {
        return Err(CoinvariantError::LabelMismatch {
            weyl: labels,
            springer: springer.irr_labels().to_vec(),
        });
    }
    build_omega_unchecked(weyl)
}

/// Ω from the group datum alone.
pub fn build_omega_unchecked(weyl: &WeylDatum) -> Result<OmegaMatrix, CoinvariantError> {
    let n = weyl.num_irreducibles();
    let d = weyl.flag_dim();
    let kernel = MolienKernel::new(weyl)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values = pairs
        .par_iter()
        .map(|&(i, j)| {
            kernel
                .multiplicity(&weyl.product_character(i, j, true))
                .map(|m| m.into_poly().shift(-4 * d as i64))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries = Matrix::zeros(n, n);
    for (&(i, j), v) in pairs.iter().zip(values) {
        entries[(i, j)] = v.clone();
        entries[(j, i)] = v;
    }
    Ok(OmegaMatrix {
        labels: weyl.irr_labels(),
        flag_dim: d,
        entries,
        group_hash: group_hash(weyl),
    })
}

#[derive(Serialize)]
struct FakeDegreeEntry<'a> {
    label: &'a str,
    poly: &'a GradedMultiplicity,
}

#[derive(Serialize)]
struct FakeDegreeFile<'a> {
    schema: &'static str,
    group_hash: String,
    flag_dim: u32,
    entries: Vec<FakeDegreeEntry<'a>>,
}

pub fn fake_degrees_json(weyl: &WeylDatum, table: &[GradedMultiplicity]) -> String {
    files::to_json(&FakeDegreeFile {
        schema: FAKE_DEGREE_SCHEMA,
        group_hash: group_hash(weyl),
        flag_dim: weyl.flag_dim(),
        entries: weyl
            .irreducibles
            .iter()
            .zip(table)
            .map(|(c, poly)| FakeDegreeEntry {
                label: &c.label,
                poly,
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct ExtEntry<'a> {
    chi: &'a str,
    psi: &'a str,
    poly: &'a GradedMultiplicity,
}

#[derive(Serialize)]
struct ExtFile<'a> {
    schema: &'static str,
    group_hash: String,
    flag_dim: u32,
    entries: Vec<ExtEntry<'a>>,
}

/// Ext tables for the given `(χ, ψ)` index pairs.
pub fn ext_json(weyl: &WeylDatum, rows: &[((usize, usize), GradedMultiplicity)]) -> String {
    files::to_json(&ExtFile {
        schema: EXT_SCHEMA,
        group_hash: group_hash(weyl),
        flag_dim: weyl.flag_dim(),
        entries: rows
            .iter()
            .map(|((i, j), poly)| ExtEntry {
                chi: &weyl.irreducibles[*i].label,
                psi: &weyl.irreducibles[*j].label,
                poly,
            })
            .collect(),
    })
}

/// CSV with the given key columns followed by one column per degree
/// `t^0 .. t^max_degree`.
pub fn multiplicity_csv(
    key_headers: &[&str],
    rows: &[(Vec<String>, GradedMultiplicity)],
    max_degree: u32,
) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = key_headers.iter().map(|s| s.to_string()).collect();
    header.extend((0..=max_degree).map(|i| format!("deg{}", 2 * i)));
    w.write_record(&header).expect("write to memory");
    for (keys, m) in rows {
        let mut record = keys.clone();
        record.extend(m.coefficients(max_degree).iter().map(ToString::to_string));
        w.write_record(&record).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

/// Sum of `dim χ · F_χ(t)` over all irreducibles, which must equal the
/// Poincaré polynomial `Π (1 - t^{d_j}) / (1 - t)^r`.
pub fn poincare_polynomial(weyl: &WeylDatum) -> Result<LaurentPoly, AlgebraError> {
    let one_minus_t = LaurentPoly::one() - LaurentPoly::t_pow(1);
    weyl.degrees.iter().try_fold(LaurentPoly::one(), |acc, &d| {
        let factor = (LaurentPoly::one() - LaurentPoly::t_pow(d as i64)).divide_exact(&one_minus_t)?;
        Ok(&acc * &factor)
    })
}

/// True when every coefficient of the polynomial is a nonnegative integer.
pub fn is_nonnegative_integral(p: &LaurentPoly) -> bool {
    p.has_integer_coeffs() && p.terms().all(|(_, c)| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::springer::generate_type_a;
    use crate::weyl::generate_symmetric_group;

    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_t_ints(terms)
    }

    #[test]
    fn trivial_character_has_multiplicity_one() {
        for n in 2..=5 {
            let w = generate_symmetric_group(n).unwrap();
            assert_eq!(*fake_degree(&w, w.trivial_index).unwrap().poly(), LaurentPoly::one());
        }
    }

    #[test]
    fn s3_fake_degrees() {
        let w = generate_symmetric_group(3).unwrap();
        let fd: Vec<LaurentPoly> = fake_degrees(&w).unwrap().into_iter().map(|m| m.into_poly()).collect();
        // sign, standard, trivial
        assert_eq!(fd, vec![t(&[(3, 1)]), t(&[(1, 1), (2, 1)]), t(&[(0, 1)])]);
    }

    #[test]
    fn sign_fake_degree_is_top_degree() {
        for n in 2..=6 {
            let w = generate_symmetric_group(n).unwrap();
            let d = w.flag_dim() as i64;
            assert_eq!(*fake_degree(&w, w.sign_index).unwrap().poly(), t(&[(d, 1)]));
        }
    }

    #[test]
    fn poincare_identity() {
        for n in 2..=6 {
            let w = generate_symmetric_group(n).unwrap();
            let total = fake_degrees(&w)
                .unwrap()
                .iter()
                .zip(&w.irreducibles)
                .fold(LaurentPoly::zero(), |acc, (f, c)| &acc + &f.poly().scale(&BigRational::from_integer(c.dim.into())));
            assert_eq!(total, poincare_polynomial(&w).unwrap(), "S{n}");
        }
    }

    #[test]
    fn multiplicity_properties() {
        for n in 2..=6 {
            let w = generate_symmetric_group(n).unwrap();
            for (m, c) in fake_degrees(&w).unwrap().iter().zip(&w.irreducibles) {
                assert!(is_nonnegative_integral(m.poly()));
                assert!(m.poly().max_exp().unwrap() <= 2 * w.flag_dim() as i64);
                assert_eq!(m.value_at_one(), BigInt::from(c.dim));
            }
        }
    }

    #[test]
    fn s2_ext_tables() {
        let w = generate_symmetric_group(2).unwrap();
        let (sign, triv) = (w.sign_index, w.trivial_index);
        assert_eq!(*ext_dimension_table(&w, triv, sign).unwrap().poly(), t(&[(1, 1)]));
        assert_eq!(*ext_dimension_table(&w, triv, triv).unwrap().poly(), LaurentPoly::one());
    }

    #[test]
    fn ext_degree_zero_is_kronecker_delta() {
        let w = generate_symmetric_group(5).unwrap();
        for i in 0..w.num_irreducibles() {
            for j in 0..w.num_irreducibles() {
                let e = ext_dimension_table(&w, i, j).unwrap();
                assert_eq!(e.coeff_t(0), BigInt::from(i64::from(i == j)));
                assert_eq!(e.value_at_one(), BigInt::from(w.irreducibles[i].dim * w.irreducibles[j].dim));
            }
        }
    }

    #[test]
    fn s2_omega() {
        let w = generate_symmetric_group(2).unwrap();
        let s = generate_type_a(2).unwrap();
        let omega = build_omega(&w, &s).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![t(&[(-1, 1)]), t(&[(-2, 1)])],
            vec![t(&[(-2, 1)]), t(&[(-1, 1)])],
        ])
        .unwrap();
        assert_eq!(omega.labels, ["(1,1)", "(2)"]);
        assert_eq!(omega.entries, expected);
        assert!(omega.violations().is_empty());
    }

    #[test]
    fn omega_is_symmetric_with_square_dimension_diagonal() {
        for n in 2..=6 {
            let w = generate_symmetric_group(n).unwrap();
            let omega = build_omega_unchecked(&w).unwrap();
            assert!(omega.entries.is_symmetric());
            assert_eq!(omega.violations(), Vec::<String>::new());
            let d = w.flag_dim() as i64;
            for (i, c) in w.irreducibles.iter().enumerate() {
                let scaled = omega.get(i, i).shift(4 * d);
                assert!(is_nonnegative_integral(&scaled));
                assert_eq!(scaled.eval_at_one(), BigRational::from_integer((c.dim * c.dim).into()));
            }
        }
    }

    #[test]
    fn complementary_degrees() {
        for n in 2..=6 {
            let w = generate_symmetric_group(n).unwrap();
            for chi in 0..w.num_irreducibles() {
                assert!(complementary_degree_check(&w, chi).unwrap(), "S{n} chi {chi}");
            }
        }
    }

    #[test]
    fn corrupt_datum_is_detected() {
        let mut w = generate_symmetric_group(3).unwrap();
        // standard character with the wrong sign on the 3-cycles
        w.irreducibles[1].values = vec![2, 0, 1];
        let err = fake_degree(&w, 1).unwrap_err();
        assert!(
            matches!(err, CoinvariantError::NotPolynomial(_) | CoinvariantError::NonIntegral { .. }),
            "{err}"
        );
        let mut w = generate_symmetric_group(3).unwrap();
        w.irreducibles[1].values = vec![-2, 0, 1];
        assert!(matches!(
            graded_multiplicity(&w, &w.irreducibles[1].values),
            Err(CoinvariantError::NegativeCoefficient { .. })
        ));
    }

    #[test]
    fn virtual_series_allows_negative_coefficients() {
        let w = generate_symmetric_group(3).unwrap();
        let kernel = MolienKernel::new(&w).unwrap();
        let neg: Vec<i64> = w.irreducibles[0].values.iter().map(|v| -v).collect();
        assert_eq!(kernel.series(&neg).unwrap(), t(&[(3, -1)]));
        assert!(matches!(kernel.series(&[1, 2]), Err(CoinvariantError::Length { .. })));
    }

    #[test]
    fn omega_json_round_trip() {
        let w = generate_symmetric_group(3).unwrap();
        let omega = build_omega_unchecked(&w).unwrap();
        let back = OmegaMatrix::from_json(&omega.to_json()).unwrap();
        assert_eq!(back, omega);
        assert_eq!(back.content_hash(), omega.content_hash());
    }

    #[test]
    fn csv_layout() {
        let w = generate_symmetric_group(3).unwrap();
        let rows: Vec<(Vec<String>, GradedMultiplicity)> = fake_degrees(&w)
            .unwrap()
            .into_iter()
            .zip(&w.irreducibles)
            .map(|(m, c)| (vec![c.label.clone()], m))
            .collect();
        let csv = multiplicity_csv(&["chi"], &rows, w.flag_dim());
        assert_eq!(
            csv,
            "chi,deg0,deg2,deg4,deg6\n\"(1,1,1)\",0,0,0,1\n\"(2,1)\",0,1,1,0\n(3),1,0,0,0\n"
        );
    }
}
