//! Orbit data for the Springer correspondence: orbit dimensions, the
//! closure order, and the support map `χ -> O_χ`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::files;
use crate::partition::Partition;
use crate::weyl::{DatumError, WeylDatum};

pub const SPRINGER_SCHEMA: &str = "green-springer/1";

/// A nilpotent orbit. `covers` lists the orbits immediately below this one
/// in the closure order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub label: String,
    pub dim: u32,
    pub covers: Vec<String>,
}

/// Validated orbit data bound to the irreducible labels of one group datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpringerDatum {
    orbits: Vec<Orbit>,
    irr_labels: Vec<String>,
    /// Orbit index of each irreducible, in the group datum's order.
    support: Vec<usize>,
    /// `below[a][b]`: orbit `a` lies in the closure of orbit `b` (reflexive).
    below: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct SpringerFile {
    schema: String,
    orbits: Vec<Orbit>,
    support_map: BTreeMap<String, String>,
}

impl SpringerDatum {
    /// Validates the orbit list and support map against `weyl`.
    pub fn new(
        orbits: Vec<Orbit>,
        support_map: &BTreeMap<String, String>,
        weyl: &WeylDatum,
    ) -> Result<Self, DatumError> {
        let mut errors = Vec::new();
        let d = weyl.flag_dim();
        let index: HashMap<&str, usize> = orbits
            .iter()
            .enumerate()
            .map(|(i, o)| (o.label.as_str(), i))
            .collect();
        if index.len() != orbits.len() {
            errors.push("orbit labels are not unique".to_string());
        }
        for o in &orbits {
            if o.dim % 2 != 0 {
                errors.push(format!("orbit {}: dimension {} is odd", o.label, o.dim));
            }
            if o.dim > 2 * d {
                errors.push(format!(
                    "orbit {}: dimension {} exceeds 2d = {}",
                    o.label,
                    o.dim,
                    2 * d
                ));
            }
        }

        let n = orbits.len();
        let mut below = vec![vec![false; n]; n];
        for (i, o) in orbits.iter().enumerate() {
            below[i][i] = true;
            for c in &o.covers {
                match index.get(c.as_str()) {
                    Some(&j) => {
                        below[j][i] = true;
                        if orbits[j].dim >= o.dim {
                            errors.push(format!(
                                "closure order {} < {} is not dimension-increasing ({} >= {})",
                                c, o.label, orbits[j].dim, o.dim
                            ));
                        }
                    }
                    None => errors.push(format!("orbit {}: covers unknown orbit {c}", o.label)),
                }
            }
        }
        // transitive closure
        for k in 0..n {
            let via = below[k].clone();
            for row in below.iter_mut().filter(|r| r[k]) {
                for (cell, &v) in row.iter_mut().zip(&via) {
                    *cell |= v;
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if below[i][j] && below[j][i] {
                    errors.push(format!(
                        "closure relation is cyclic through {} and {}",
                        orbits[i].label, orbits[j].label
                    ));
                }
            }
        }

        let irr_labels = weyl.irr_labels();
        let mut support = Vec::with_capacity(irr_labels.len());
        for label in &irr_labels {
            match support_map.get(label) {
                Some(o) => match index.get(o.as_str()) {
                    Some(&i) => support.push(i),
                    None => errors.push(format!("support_map sends {label} to unknown orbit {o}")),
                },
                None => errors.push(format!("support_map is missing irreducible {label}")),
            }
        }
        for key in support_map.keys() {
            if !irr_labels.contains(key) {
                errors.push(format!("support_map names unknown irreducible {key}"));
            }
        }

        if !errors.is_empty() {
            return Err(DatumError::Validation(errors));
        }
        Ok(Self {
            orbits,
            irr_labels,
            support,
            below,
        })
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn irr_labels(&self) -> &[String] {
        &self.irr_labels
    }

    pub fn orbit_index(&self, label: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.label == label)
    }

    /// Orbit index of the irreducible at position `chi`.
    pub fn support_of(&self, chi: usize) -> usize {
        self.support[chi]
    }

    pub fn orbit_dim(&self, orbit: usize) -> u32 {
        self.orbits[orbit].dim
    }

    /// `O_a ⊆ closure(O_b)`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }

    pub fn support_map(&self) -> BTreeMap<String, String> {
        self.irr_labels
            .iter()
            .zip(&self.support)
            .map(|(l, &o)| (l.clone(), self.orbits[o].label.clone()))
            .collect()
    }

    /// Copy with one covering relation removed, for fault-injection tests.
    /// Returns `None` if the relation is not a stored cover.
    pub fn without_cover(&self, upper: &str, lower: &str, weyl: &WeylDatum) -> Option<Self> {
        let mut orbits = self.orbits.clone();
        let o = orbits.iter_mut().find(|o| o.label == upper)?;
        let before = o.covers.len();
        o.covers.retain(|c| c != lower);
        if o.covers.len() == before {
            return None;
        }
        Self::new(orbits, &self.support_map(), weyl).ok()
    }

    pub fn to_json(&self) -> String {
        files::to_json(&SpringerFile {
            schema: SPRINGER_SCHEMA.to_string(),
            orbits: self.orbits.clone(),
            support_map: self.support_map(),
        })
    }

    pub fn from_json(text: &str, weyl: &WeylDatum) -> Result<Self, DatumError> {
        let file: SpringerFile = files::parse_json(text)?;
        files::check_schema(&file.schema, SPRINGER_SCHEMA)?;
        Self::new(file.orbits, &file.support_map, weyl)
    }

    pub fn save(&self, path: &Path) -> Result<(), DatumError> {
        files::write_atomic(path, self.to_json().as_bytes())?;
        Ok(())
    }
}

pub fn load_springer(path: &Path, weyl: &WeylDatum) -> Result<SpringerDatum, DatumError> {
    SpringerDatum::from_json(&files::read_to_string(path)?, weyl)
}

/// Type `A_{n-1}`: orbits are partitions of `n` ordered by dominance, with
/// `dim O_λ = 2(d - n(λ))`; the irreducible `λ` is supported on orbit `λ`.
pub fn generate_type_a(n: usize) -> Result<SpringerDatum, DatumError> {
    let weyl = crate::weyl::generate_symmetric_group_bounded(n, n.max(crate::weyl::DEFAULT_SYMMETRIC_BOUND))?;
    let parts = Partition::all(n);
    let d = n * (n - 1) / 2;
    let orbits = parts
        .iter()
        .map(|lambda| {
            let covers = parts
                .iter()
                .filter(|mu| {
                    *mu != lambda
                        && lambda.dominates(mu)
                        && !parts
                            .iter()
                            .any(|nu| nu != lambda && nu != *mu && lambda.dominates(nu) && nu.dominates(mu))
                })
                .map(ToString::to_string)
                .collect();
            Orbit {
                label: lambda.to_string(),
                dim: 2 * (d - lambda.n_statistic()) as u32,
                covers,
            }
        })
        .collect();
    let support_map = parts.iter().map(|p| (p.to_string(), p.to_string())).collect();
    SpringerDatum::new(orbits, &support_map, &weyl)
}

/// One block per orbit that supports at least one irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub orbit: String,
    pub dim: u32,
    /// Irreducible indices supported on the orbit, increasing.
    pub members: Vec<usize>,
}

/// Blocks in a linear extension of the closure order, smallest orbits
/// first, together with the closure relation between blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub blocks: Vec<Block>,
    /// `closure[a][b]`: block `a`'s orbit lies in the closure of block `b`'s.
    pub closure: Vec<Vec<bool>>,
}

impl BlockStructure {
    pub fn num_irreducibles(&self) -> usize {
        self.blocks.iter().map(|b| b.members.len()).sum()
    }

    /// Block position of every irreducible index.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.num_irreducibles()];
        for (k, b) in self.blocks.iter().enumerate() {
            for &m in &b.members {
                if m < out.len() {
                    out[m] = k;
                }
            }
        }
        out
    }

    /// Orbit dimension of each irreducible's support.
    pub fn irr_dims(&self) -> Vec<u32> {
        let mut out = vec![0; self.num_irreducibles()];
        for b in &self.blocks {
            for &m in &b.members {
                if m < out.len() {
                    out[m] = b.dim;
                }
            }
        }
        out
    }

    /// Problems with the structure itself: members must partition
    /// `0..n` and the block order must refine the closure order.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.num_irreducibles();
        let mut seen = vec![false; n];
        for b in &self.blocks {
            for &m in &b.members {
                if m >= n || seen[m] {
                    out.push(format!("irreducible index {m} is repeated or out of range"));
                } else {
                    seen[m] = true;
                }
            }
        }
        let m = self.blocks.len();
        if self.closure.len() != m || self.closure.iter().any(|r| r.len() != m) {
            out.push("closure relation has the wrong shape".to_string());
            return out;
        }
        for a in 0..m {
            for b in 0..a {
                if self.closure[a][b] {
                    out.push(format!(
                        "block order puts {} before {} but {} < {} in closure order",
                        self.blocks[b].orbit, self.blocks[a].orbit, self.blocks[a].orbit, self.blocks[b].orbit
                    ));
                }
            }
        }
        out
    }
}

/// Orders the blocks by a linear extension of the closure order.
///
/// Without a seed the extension is deterministic (smallest dimension, then
/// datum order, among the available orbits); with a seed, the available
/// orbit is drawn uniformly at each step.
pub fn block_structure(springer: &SpringerDatum, seed: Option<u64>) -> BlockStructure {
    let n = springer.orbits.len();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let mut available: Vec<usize> = (0..n)
            .filter(|&b| !placed[b] && (0..n).all(|a| a == b || placed[a] || !springer.below[a][b]))
            .collect();
        let next = match rng.as_mut() {
            Some(rng) => *available.choose(rng).expect("closure order is acyclic"),
            None => {
                available.sort_by_key(|&b| (springer.orbits[b].dim, b));
                available[0]
            }
        };
        placed[next] = true;
        order.push(next);
    }

    let order: Vec<usize> = order
        .into_iter()
        .filter(|&o| springer.support.contains(&o))
        .collect();
    let blocks = order
        .iter()
        .map(|&o| Block {
            orbit: springer.orbits[o].label.clone(),
            dim: springer.orbits[o].dim,
            members: (0..springer.support.len())
                .filter(|&chi| springer.support[chi] == o)
                .collect(),
        })
        .collect();
    let closure = order
        .iter()
        .map(|&a| order.iter().map(|&b| springer.below[a][b]).collect())
        .collect();
    BlockStructure { blocks, closure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::generate_symmetric_group;

    fn dims(s: &SpringerDatum) -> Vec<(String, u32)> {
        s.orbits().iter().map(|o| (o.label.clone(), o.dim)).collect()
    }

    #[test]
    fn type_a_small_cases() {
        let s2 = generate_type_a(2).unwrap();
        assert_eq!(dims(&s2), vec![("(1,1)".into(), 0), ("(2)".into(), 2)]);
        assert!(s2.leq(0, 1) && !s2.leq(1, 0));
        assert_eq!(s2.support_map()["(1,1)"], "(1,1)");

        let s3 = generate_type_a(3).unwrap();
        assert_eq!(
            dims(&s3),
            vec![("(1,1,1)".into(), 0), ("(2,1)".into(), 4), ("(3)".into(), 6)]
        );
        assert!(s3.leq(0, 1) && s3.leq(1, 2) && s3.leq(0, 2));

        let s4 = generate_type_a(4).unwrap();
        let d: Vec<u32> = s4.orbits().iter().map(|o| o.dim).collect();
        assert_eq!(d, vec![0, 6, 8, 10, 12]);
        for i in 0..5 {
            for j in i..5 {
                assert!(s4.leq(i, j), "dominance is total for n = 4");
            }
        }
    }

    #[test]
    fn type_a_invariants() {
        for n in 2..=7 {
            let s = generate_type_a(n).unwrap();
            let d = (n * (n - 1) / 2) as u32;
            let dims: Vec<u32> = s.orbits().iter().map(|o| o.dim).collect();
            assert_eq!(*dims.iter().max().unwrap(), 2 * d);
            assert_eq!(*dims.iter().min().unwrap(), 0);
            for o in s.orbits() {
                for c in &o.covers {
                    let lower = s.orbit_index(c).unwrap();
                    assert!(s.orbit_dim(lower) < o.dim);
                }
            }
            let mut targets: Vec<usize> = (0..s.irr_labels().len()).map(|i| s.support_of(i)).collect();
            targets.sort_unstable();
            targets.dedup();
            assert_eq!(targets.len(), s.irr_labels().len(), "support map is a bijection");
        }
    }

    #[test]
    fn type_a_n6_has_incomparable_pairs() {
        let s = generate_type_a(6).unwrap();
        let a = s.orbit_index("(3,1,1,1)").unwrap();
        let b = s.orbit_index("(2,2,2)").unwrap();
        assert!(!s.leq(a, b) && !s.leq(b, a));
        let orders: std::collections::BTreeSet<bool> = (0..32)
            .map(|seed| {
                let bs = block_structure(&s, Some(seed));
                let pa = bs.blocks.iter().position(|x| x.orbit == "(3,1,1,1)").unwrap();
                let pb = bs.blocks.iter().position(|x| x.orbit == "(2,2,2)").unwrap();
                pa < pb
            })
            .collect();
        assert_eq!(orders.len(), 2, "seeds realise both relative orders");
    }

    #[test]
    fn block_structure_refines_closure() {
        for n in 2..=7 {
            let s = generate_type_a(n).unwrap();
            for seed in [None, Some(1), Some(2), Some(99)] {
                let bs = block_structure(&s, seed);
                assert!(bs.violations().is_empty());
                assert!(bs.blocks.iter().all(|b| b.members.len() == 1));
                assert_eq!(bs.num_irreducibles(), s.irr_labels().len());
            }
        }
        let s5 = generate_type_a(5).unwrap();
        let forced = block_structure(&s5, None);
        for seed in 0..8 {
            assert_eq!(block_structure(&s5, Some(seed)), forced);
        }
    }

    #[test]
    fn round_trip() {
        let w = generate_symmetric_group(4).unwrap();
        let s = generate_type_a(4).unwrap();
        let back = SpringerDatum::from_json(&s.to_json(), &w).unwrap();
        assert_eq!(back, s);
    }

    fn expect_violation(s: &SpringerDatum, w: &WeylDatum, edit: impl Fn(&mut serde_json::Value), needle: &str) {
        let mut v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        edit(&mut v);
        match SpringerDatum::from_json(&v.to_string(), w) {
            Err(DatumError::Validation(msgs)) => {
                assert!(msgs.iter().any(|m| m.contains(needle)), "{msgs:?}")
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_files_are_rejected() {
        let w = generate_symmetric_group(3).unwrap();
        let s = generate_type_a(3).unwrap();
        expect_violation(&s, &w, |v| v["orbits"][1]["dim"] = 3.into(), "is odd");
        expect_violation(
            &s,
            &w,
            |v| {
                v["support_map"].as_object_mut().unwrap().remove("(2,1)");
            },
            "missing irreducible (2,1)",
        );
        expect_violation(
            &s,
            &w,
            |v| v["orbits"][0]["covers"] = serde_json::json!(["(3)"]),
            "cyclic",
        );
        expect_violation(&s, &w, |v| v["orbits"][2]["dim"] = 8.into(), "exceeds 2d");
    }

    #[test]
    fn removing_a_cover_coarsens_the_order() {
        let w = generate_symmetric_group(3).unwrap();
        let s = generate_type_a(3).unwrap();
        let coarse = s.without_cover("(3)", "(2,1)", &w).unwrap();
        assert!(!coarse.leq(1, 2));
        assert!(s.without_cover("(3)", "(1,1,1)", &w).is_none());
    }
}
