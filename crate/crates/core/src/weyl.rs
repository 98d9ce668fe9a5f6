//! Numerical presentation of a Weyl group: conjugacy classes, character
//! table, invariant degrees and reflection characteristic polynomials.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::files::{self, FileError};
use crate::laurent::LaurentPoly;
use crate::partition::Partition;

pub const WEYL_SCHEMA: &str = "green-weyl/1";

/// Largest `n` accepted by [`generate_symmetric_group`] unless a caller
/// raises the bound explicitly.
pub const DEFAULT_SYMMETRIC_BOUND: usize = 10;

#[derive(Debug, Error)]
pub enum DatumError {
    #[error("n = {n} is outside the supported range 2..={bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error(transparent)]
    File(#[from] FileError),
    #[error("invalid datum:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub label: String,
    pub size: u64,
    /// `det(1 - t w)` on the reflection representation.
    pub refl_charpoly: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrChar {
    pub label: String,
    pub dim: i64,
    pub values: Vec<i64>,
}

/// A Weyl group given by its class data and character table.
///
/// Character values are integers; every Weyl group character is rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylDatum {
    pub name: String,
    pub order: u64,
    pub rank: usize,
    pub degrees: Vec<u32>,
    pub classes: Vec<ConjClass>,
    pub irreducibles: Vec<IrrChar>,
    pub trivial_index: usize,
    pub sign_index: usize,
}

#[derive(Serialize, Deserialize)]
struct WeylFile {
    schema: String,
    #[serde(flatten)]
    datum: WeylDatum,
}

impl WeylDatum {
    /// `d = Σ (d_j - 1)`, the dimension of the flag variety.
    pub fn flag_dim(&self) -> u32 {
        self.degrees.iter().map(|d| d.saturating_sub(1)).sum()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn irr_index(&self, label: &str) -> Option<usize> {
        self.irreducibles.iter().position(|c| c.label == label)
    }

    pub fn irr_labels(&self) -> Vec<String> {
        self.irreducibles.iter().map(|c| c.label.clone()).collect()
    }

    /// The class on which the reflection characteristic polynomial is
    /// `(1 - t)^r`, i.e. the identity class.
    pub fn identity_class(&self) -> Option<usize> {
        let target = one_minus_t_pow(self.rank);
        self.classes
            .iter()
            .position(|c| c.size == 1 && c.refl_charpoly == target)
    }

    pub fn sign_values(&self) -> &[i64] {
        &self.irreducibles[self.sign_index].values
    }

    /// Pointwise product `χ_i · χ_j`, optionally twisted by the sign
    /// character.
    pub fn product_character(&self, i: usize, j: usize, twist_by_sign: bool) -> Vec<i64> {
        let a = &self.irreducibles[i].values;
        let b = &self.irreducibles[j].values;
        let eps = self.sign_values();
        (0..self.classes.len())
            .map(|c| {
                let v = a[c] * b[c];
                if twist_by_sign {
                    v * eps[c]
                } else {
                    v
                }
            })
            .collect()
    }

    /// `(1/|W|) Σ_C |C| f(C) g(C)`.
    pub fn inner_product(&self, f: &[i64], g: &[i64]) -> BigRational {
        assert_eq!(f.len(), self.classes.len(), "class function length");
        assert_eq!(g.len(), self.classes.len(), "class function length");
        let total: BigInt = self
            .classes
            .iter()
            .zip(f.iter().zip(g))
            .map(|(c, (a, b))| BigInt::from(c.size) * BigInt::from(*a) * BigInt::from(*b))
            .sum();
        BigRational::new(total, BigInt::from(self.order))
    }

    /// Every violated invariant, as readable messages. Empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nc = self.classes.len();
        if nc == 0 {
            out.push("datum has no conjugacy classes".to_string());
            return out;
        }
        if self.irreducibles.len() != nc {
            out.push(format!(
                "character table is not square: {} irreducibles for {} classes",
                self.irreducibles.len(),
                nc
            ));
        }
        if self.degrees.len() != self.rank {
            out.push(format!(
                "{} invariant degrees given for rank {}",
                self.degrees.len(),
                self.rank
            ));
        }
        let class_total: u128 = self.classes.iter().map(|c| c.size as u128).sum();
        if class_total != self.order as u128 {
            out.push(format!(
                "class sizes sum to {class_total}, group order is {}",
                self.order
            ));
        }
        let degree_product: u128 = self.degrees.iter().map(|&d| d as u128).product();
        if degree_product != self.order as u128 {
            out.push(format!(
                "product of degrees is {degree_product}, group order is {}",
                self.order
            ));
        }
        if self.classes.iter().any(|c| c.size == 0) {
            out.push("a conjugacy class has size 0".to_string());
        }
        let labels: BTreeSet<&str> = self.classes.iter().map(|c| c.label.as_str()).collect();
        if labels.len() != nc {
            out.push("class labels are not unique".to_string());
        }
        let irr_labels: BTreeSet<&str> =
            self.irreducibles.iter().map(|c| c.label.as_str()).collect();
        if irr_labels.len() != self.irreducibles.len() {
            out.push("irreducible labels are not unique".to_string());
        }

        let rank = self.rank as i64;
        for c in &self.classes {
            let p = &c.refl_charpoly;
            if !p.is_integral_in_t() || !p.has_integer_coeffs() {
                out.push(format!(
                    "class {}: refl_charpoly {p} is not an integer polynomial in t",
                    c.label
                ));
                continue;
            }
            if p.coeff(0) != BigRational::one() || p.min_exp().is_some_and(|e| e < 0) {
                out.push(format!(
                    "class {}: refl_charpoly {p} does not have constant term 1",
                    c.label
                ));
            }
            if p.max_exp() != Some(2 * rank) {
                out.push(format!(
                    "class {}: refl_charpoly {p} does not have degree {rank} in t",
                    c.label
                ));
            }
        }

        let identity = self.identity_class();
        if identity.is_none() {
            out.push(format!(
                "no class of size 1 has refl_charpoly (1 - t)^{}",
                self.rank
            ));
        }

        let mut shapes_ok = true;
        for chi in &self.irreducibles {
            if chi.values.len() != nc {
                out.push(format!(
                    "irreducible {}: {} values for {} classes",
                    chi.label,
                    chi.values.len(),
                    nc
                ));
                shapes_ok = false;
                continue;
            }
            if chi.dim <= 0 {
                out.push(format!("irreducible {}: dimension {} is not positive", chi.label, chi.dim));
            }
            if let Some(id) = identity {
                if chi.values[id] != chi.dim {
                    out.push(format!(
                        "irreducible {}: value {} on the identity class differs from dim {}",
                        chi.label, chi.values[id], chi.dim
                    ));
                }
            }
            if let Some((k, v)) = chi.values.iter().enumerate().find(|(_, v)| v.abs() > chi.dim) {
                out.push(format!(
                    "irreducible {}: |value {v}| on class {} exceeds dim {}",
                    chi.label, self.classes[k].label, chi.dim
                ));
            }
        }
        let n_irr = self.irreducibles.len();
        for (name, idx) in [("trivial_index", self.trivial_index), ("sign_index", self.sign_index)] {
            if idx >= n_irr {
                out.push(format!("{name} {idx} is out of range"));
                shapes_ok = false;
            }
        }
        if !shapes_ok || self.order == 0 {
            return out;
        }

        if let Some(k) = self.irreducibles[self.trivial_index]
            .values
            .iter()
            .position(|&v| v != 1)
        {
            out.push(format!(
                "trivial character is not 1 on class {}",
                self.classes[k].label
            ));
        }
        for (k, c) in self.classes.iter().enumerate() {
            let top = c.refl_charpoly.coeff(2 * rank);
            let expected = if self.rank.is_multiple_of(2) { top } else { -top };
            let actual = BigRational::from_integer(self.irreducibles[self.sign_index].values[k].into());
            if expected != actual {
                out.push(format!(
                    "sign character value {actual} on class {} disagrees with (-1)^r times the top coefficient of refl_charpoly ({expected})",
                    c.label
                ));
            }
        }

        for i in 0..n_irr {
            for j in i..n_irr {
                let ip = self.inner_product(&self.irreducibles[i].values, &self.irreducibles[j].values);
                let expected = if i == j { BigRational::one() } else { BigRational::zero() };
                if ip != expected {
                    out.push(format!(
                        "orthogonality fails for ({}, {}): inner product {ip}",
                        self.irreducibles[i].label, self.irreducibles[j].label
                    ));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), DatumError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(DatumError::Validation(v))
        }
    }

    pub fn to_json(&self) -> String {
        files::to_json(&WeylFile {
            schema: WEYL_SCHEMA.to_string(),
            datum: self.clone(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, DatumError> {
        let file: WeylFile = files::parse_json(text)?;
        files::check_schema(&file.schema, WEYL_SCHEMA)?;
        file.datum.validate()?;
        Ok(file.datum)
    }

    pub fn save(&self, path: &Path) -> Result<(), DatumError> {
        files::write_atomic(path, self.to_json().as_bytes())?;
        Ok(())
    }
}

/// Reads and fully validates a `green-weyl/1` file.
pub fn load_datum(path: &Path) -> Result<WeylDatum, DatumError> {
    WeylDatum::from_json(&files::read_to_string(path)?)
}

fn one_minus_t_pow(r: usize) -> LaurentPoly {
    let factor = LaurentPoly::one() - LaurentPoly::t_pow(1);
    (0..r).fold(LaurentPoly::one(), |acc, _| &acc * &factor)
}

/// The symmetric group `S_n` as the Weyl group of type `A_{n-1}`.
///
/// Classes and irreducibles are both indexed by partitions of `n` in
/// increasing lexicographic order, so the identity class and the sign
/// character come first and the trivial character last.
pub fn generate_symmetric_group(n: usize) -> Result<WeylDatum, DatumError> {
    generate_symmetric_group_bounded(n, DEFAULT_SYMMETRIC_BOUND)
}

pub fn generate_symmetric_group_bounded(n: usize, bound: usize) -> Result<WeylDatum, DatumError> {
    if n < 2 || n > bound || n > 20 {
        return Err(DatumError::BoundExceeded { n, bound });
    }
    let parts = Partition::all(n);
    let order: u64 = (1..=n as u64).product();
    let one_minus_t = LaurentPoly::one() - LaurentPoly::t_pow(1);

    let classes = parts
        .iter()
        .map(|mu| {
            let full = mu.parts().iter().fold(LaurentPoly::one(), |acc, &k| {
                &acc * &(LaurentPoly::one() - LaurentPoly::t_pow(k as i64))
            });
            let refl_charpoly = full
                .divide_exact(&one_minus_t)
                .expect("every cycle type has a fixed line in the permutation representation");
            ConjClass {
                label: mu.to_string(),
                size: (order as u128 / mu.z()) as u64,
                refl_charpoly,
            }
        })
        .collect();

    let mut mn = MurnaghanNakayama::default();
    let irreducibles = parts
        .iter()
        .map(|lambda| {
            let values: Vec<i64> = parts.iter().map(|mu| mn.character(lambda, mu)).collect();
            IrrChar {
                label: lambda.to_string(),
                dim: values[0],
                values,
            }
        })
        .collect();

    let datum = WeylDatum {
        name: format!("S{n}"),
        order,
        rank: n - 1,
        degrees: (2..=n as u32).collect(),
        classes,
        irreducibles,
        trivial_index: parts.len() - 1,
        sign_index: 0,
    };
    debug_assert!(datum.violations().is_empty());
    Ok(datum)
}

/// Murnaghan-Nakayama rule on beta-sets, memoized on `(shape, cycle type)`.
#[derive(Default)]
pub struct MurnaghanNakayama {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl MurnaghanNakayama {
    /// `χ^λ` evaluated on the class of cycle type `μ`.
    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> i64 {
        assert_eq!(lambda.size(), mu.size(), "shape and cycle type sizes differ");
        self.eval(lambda.parts().to_vec(), mu.parts())
    }

    fn eval(&mut self, shape: Vec<usize>, cycles: &[usize]) -> i64 {
        let Some((&k, rest)) = cycles.split_first() else {
            return i64::from(shape.is_empty());
        };
        let key = (shape.clone(), cycles.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let len = shape.len();
        let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
        let mut total = 0;
        for (idx, &b) in beta.iter().enumerate() {
            if b < k || beta.contains(&(b - k)) {
                continue;
            }
            let crossed = beta.iter().filter(|&&x| x > b - k && x < b).count();
            let sign = if crossed % 2 == 0 { 1 } else { -1 };
            let mut moved = beta.clone();
            moved[idx] = b - k;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let smaller: Vec<usize> = moved
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (len - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            total += sign * self.eval(smaller, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_by_hand() {
        let w = generate_symmetric_group(2).unwrap();
        let sizes: Vec<u64> = w.classes.iter().map(|c| c.size).collect();
        let labels: Vec<&str> = w.classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["(1,1)", "(2)"]);
        assert_eq!(sizes, [1, 1]);
        assert_eq!(w.irreducibles[w.trivial_index].values, [1, 1]);
        assert_eq!(w.irreducibles[w.sign_index].values, [1, -1]);
        assert_eq!(w.degrees, [2]);
        assert_eq!(w.flag_dim(), 1);
    }

    #[test]
    fn s3_character_table() {
        let w = generate_symmetric_group(3).unwrap();
        let labels: Vec<&str> = w.classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["(1,1,1)", "(2,1)", "(3)"]);
        let sizes: Vec<u64> = w.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, [1, 3, 2]);
        let table: Vec<Vec<i64>> = w.irreducibles.iter().map(|c| c.values.clone()).collect();
        // rows: sign (1,1,1), standard (2,1), trivial (3)
        assert_eq!(table, vec![vec![1, -1, 1], vec![2, 0, -1], vec![1, 1, 1]]);
        assert_eq!(w.degrees, [2, 3]);
        assert_eq!(w.flag_dim(), 3);
    }

    #[test]
    fn s3_reflection_charpolys() {
        let w = generate_symmetric_group(3).unwrap();
        let polys: Vec<LaurentPoly> = w.classes.iter().map(|c| c.refl_charpoly.clone()).collect();
        assert_eq!(polys[0], LaurentPoly::from_t_ints(&[(0, 1), (1, -2), (2, 1)]));
        assert_eq!(polys[1], LaurentPoly::from_t_ints(&[(0, 1), (2, -1)]));
        assert_eq!(polys[2], LaurentPoly::from_t_ints(&[(0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn trivial_character_is_one_everywhere() {
        for n in 2..=7 {
            let w = generate_symmetric_group(n).unwrap();
            assert!(w.irreducibles[w.trivial_index].values.iter().all(|&v| v == 1));
            assert_eq!(w.irreducibles[w.trivial_index].label, format!("({n})"));
        }
    }

    #[test]
    fn generated_tables_are_valid() {
        for n in 2..=8 {
            let w = generate_symmetric_group(n).unwrap();
            assert_eq!(w.violations(), Vec::<String>::new(), "S{n}");
            let p = Partition::all(n).len();
            assert_eq!(w.num_classes(), p);
            assert_eq!(w.num_irreducibles(), p);
            let sum_sq: i64 = w.irreducibles.iter().map(|c| c.dim * c.dim).sum();
            assert_eq!(sum_sq as u64, w.order);
            assert_eq!(w.classes[w.identity_class().unwrap()].refl_charpoly, one_minus_t_pow(n - 1));
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(generate_symmetric_group(1), Err(DatumError::BoundExceeded { .. })));
        assert!(matches!(generate_symmetric_group(11), Err(DatumError::BoundExceeded { .. })));
        assert!(generate_symmetric_group_bounded(11, 11).is_ok());
    }

    #[test]
    fn product_characters() {
        let w = generate_symmetric_group(3).unwrap();
        let (sign, std, triv) = (0, 1, 2);
        assert_eq!(w.product_character(triv, triv, false), vec![1, 1, 1]);
        assert_eq!(w.product_character(sign, sign, false), vec![1, 1, 1]);
        assert_eq!(w.product_character(std, std, false), vec![4, 0, 1]);
        assert_eq!(w.product_character(triv, triv, true), w.sign_values());
    }

    #[test]
    fn inner_products() {
        let w = generate_symmetric_group(4).unwrap();
        for (i, a) in w.irreducibles.iter().enumerate() {
            for (j, b) in w.irreducibles.iter().enumerate() {
                let expected = if i == j { 1 } else { 0 };
                assert_eq!(w.inner_product(&a.values, &b.values), BigRational::from_integer(expected.into()));
            }
        }
        let s3 = generate_symmetric_group(3).unwrap();
        let sq = s3.product_character(1, 1, false);
        assert_eq!(s3.inner_product(&sq, &s3.irreducibles[1].values), BigRational::one());
    }

    #[test]
    fn round_trip_through_json() {
        let w = generate_symmetric_group(4).unwrap();
        let json = w.to_json();
        assert!(json.contains(WEYL_SCHEMA));
        let back = WeylDatum::from_json(&json).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn bad_class_sizes_are_rejected() {
        let mut w = generate_symmetric_group(3).unwrap();
        w.classes[1].size = 4;
        let Err(DatumError::Validation(v)) = WeylDatum::from_json(&w.to_json()) else {
            panic!("expected validation failure");
        };
        assert!(v.iter().any(|m| m.contains("class sizes sum to 7")), "{v:?}");
    }

    #[test]
    fn non_orthogonal_table_names_the_pair() {
        let mut w = generate_symmetric_group(3).unwrap();
        w.irreducibles[1].values = vec![2, 0, 1];
        let Err(DatumError::Validation(v)) = w.validate() else {
            panic!("expected validation failure");
        };
        assert!(
            v.iter().any(|m| m.contains("orthogonality fails for ((1,1,1), (2,1))")),
            "{v:?}"
        );
    }

    #[test]
    fn non_integer_values_fail_to_parse() {
        let w = generate_symmetric_group(2).unwrap();
        let json = w.to_json().replace("\"values\": [\n        1,\n        -1", "\"values\": [\n        1.5,\n        -1");
        assert_ne!(json, w.to_json());
        assert!(matches!(WeylDatum::from_json(&json), Err(DatumError::File(_))));
    }

    #[test]
    fn wrong_schema_is_rejected() {
        let w = generate_symmetric_group(2).unwrap();
        let json = w.to_json().replace(WEYL_SCHEMA, "green-weyl/0");
        assert!(matches!(WeylDatum::from_json(&json), Err(DatumError::File(_))));
    }
}
