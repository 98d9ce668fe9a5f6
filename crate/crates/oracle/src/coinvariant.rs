//! Brute-force graded character of the coinvariant algebra of `S_n`.
//!
//! Works in `Q[x_1..x_n]` modulo the symmetric polynomials of positive
//! degree. Under lex order with `x_1 > ... > x_n` that ideal has the Gröbner
//! basis `h_k(x_k, ..., x_n)`, `k = 1..n`, whose leading terms are `x_k^k`,
//! so the standard monomials are `x^a` with `a_k < k`. Each class
//! representative permutes variables; traces are read off normal forms.

use std::collections::{BTreeMap, HashMap};

use green_core::weyl::generate_symmetric_group;
use green_core::{LaurentPoly, Partition, WeylDatum};
use num_rational::BigRational;
use num_traits::Zero;

use crate::OracleError;

/// Largest `n` the expander accepts.
pub const MAX_EXPAND_N: usize = 6;

type Exponent = Vec<u8>;
type Poly = BTreeMap<Exponent, i64>;

pub struct CoinvariantExpansion {
    pub weyl: WeylDatum,
    /// `traces[k][c]`: trace of the class-`c` representative on degree `k`.
    pub traces: Vec<Vec<i64>>,
    /// Graded multiplicity of each irreducible, as a polynomial in `t`.
    pub multiplicities: Vec<LaurentPoly>,
}

impl CoinvariantExpansion {
    /// Dimension of each graded piece.
    pub fn dimensions(&self) -> Vec<i64> {
        let id = self.weyl.identity_class().expect("generated datum has an identity class");
        self.traces.iter().map(|row| row[id]).collect()
    }
}

struct Reducer {
    n: usize,
    /// Non-leading terms of `h_k(x_k..x_n)` for each `k` (0-based).
    tails: Vec<Vec<Exponent>>,
    memo: HashMap<Exponent, Poly>,
}

impl Reducer {
    fn new(n: usize) -> Self {
        let tails = (0..n)
            .map(|k| {
                let mut out = Vec::new();
                let mut e = vec![0u8; n];
                monomials_in(&mut e, k, n, k + 1, &mut out);
                out.retain(|m| m[k] as usize != k + 1);
                out
            })
            .collect();
        Self {
            n,
            tails,
            memo: HashMap::new(),
        }
    }

    fn normal_form(&mut self, a: &Exponent) -> Poly {
        if let Some(p) = self.memo.get(a) {
            return p.clone();
        }
        let out = match (0..self.n).find(|&k| a[k] as usize > k) {
            None => Poly::from([(a.clone(), 1)]),
            Some(k) => {
                let mut base = a.clone();
                base[k] -= (k + 1) as u8;
                let mut acc = Poly::new();
                for tail in self.tails[k].clone() {
                    let m: Exponent = base.iter().zip(&tail).map(|(x, y)| x + y).collect();
                    for (mono, c) in self.normal_form(&m) {
                        let entry = acc.entry(mono).or_insert(0);
                        *entry -= c;
                    }
                }
                acc.retain(|_, c| *c != 0);
                acc
            }
        };
        self.memo.insert(a.clone(), out.clone());
        out
    }
}

/// All exponent vectors of the given degree supported on variables
/// `from..n`.
fn monomials_in(e: &mut Exponent, from: usize, n: usize, degree: usize, out: &mut Vec<Exponent>) {
    if from == n - 1 {
        e[from] = degree as u8;
        out.push(e.clone());
        e[from] = 0;
        return;
    }
    for k in 0..=degree {
        e[from] = k as u8;
        monomials_in(e, from + 1, n, degree - k, out);
    }
    e[from] = 0;
}

fn standard_monomials(n: usize) -> Vec<Exponent> {
    let mut out = vec![vec![0u8; n]];
    for k in 1..n {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=k).map(move |v| {
                    let mut e = e.clone();
                    e[k] = v as u8;
                    e
                })
            })
            .collect();
    }
    out
}

/// Permutation with the given cycle type, as images `sigma[i]`.
fn representative(mu: &Partition) -> Vec<usize> {
    let mut sigma = Vec::with_capacity(mu.size());
    let mut start = 0;
    for &len in mu.parts() {
        for i in 0..len {
            sigma.push(start + (i + 1) % len);
        }
        start += len;
    }
    sigma
}

/// Graded traces and multiplicities for degrees `0..=min(max_degree, d)`.
pub fn coinvariant_expand(n: usize, max_degree: usize) -> Result<CoinvariantExpansion, OracleError> {
    if !(2..=MAX_EXPAND_N).contains(&n) {
        return Err(OracleError::BoundExceeded { n, max: MAX_EXPAND_N });
    }
    let weyl = generate_symmetric_group(n).map_err(|e| OracleError::Datum(e.to_string()))?;
    let d = n * (n - 1) / 2;
    let top = max_degree.min(d);
    let basis = standard_monomials(n);
    let mut reducer = Reducer::new(n);
    let classes: Vec<Partition> = weyl
        .classes
        .iter()
        .map(|c| c.label.parse().expect("generated class labels are partitions"))
        .collect();

    let mut traces = vec![vec![0i64; classes.len()]; top + 1];
    for (c, mu) in classes.iter().enumerate() {
        let sigma = representative(mu);
        for m in &basis {
            let degree: usize = m.iter().map(|&x| x as usize).sum();
            if degree > top {
                continue;
            }
            // x_i -> x_{sigma(i)}
            let mut image = vec![0u8; n];
            for (i, &e) in m.iter().enumerate() {
                image[sigma[i]] = e;
            }
            traces[degree][c] += reducer.normal_form(&image).get(m).copied().unwrap_or(0);
        }
    }

    let mut multiplicities = Vec::with_capacity(weyl.num_irreducibles());
    for chi in &weyl.irreducibles {
        let mut poly = LaurentPoly::zero();
        for (k, row) in traces.iter().enumerate() {
            let m = weyl.inner_product(row, &chi.values);
            if !m.is_integer() || m < BigRational::zero() {
                return Err(OracleError::Inconsistent(format!(
                    "degree {k} multiplicity of {} is {m}",
                    chi.label
                )));
            }
            poly = &poly + &LaurentPoly::t_pow(k as i64).scale(&m);
        }
        multiplicities.push(poly);
    }
    Ok(CoinvariantExpansion {
        weyl,
        traces,
        multiplicities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use green_core::coinvariants::poincare_polynomial;

    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_t_ints(terms)
    }

    #[test]
    fn n3_fake_degrees() {
        let e = coinvariant_expand(3, 10).unwrap();
        assert_eq!(e.multiplicities, vec![t(&[(3, 1)]), t(&[(1, 1), (2, 1)]), t(&[(0, 1)])]);
    }

    #[test]
    fn dimensions_follow_poincare_polynomial() {
        for n in 2..=5 {
            let e = coinvariant_expand(n, 100).unwrap();
            let poincare = poincare_polynomial(&e.weyl).unwrap();
            let expected: Vec<i64> = (0..e.dimensions().len())
                .map(|k| poincare.coeff(2 * k as i64).to_integer().try_into().unwrap())
                .collect();
            assert_eq!(e.dimensions(), expected);
        }
    }

    #[test]
    fn degree_zero_is_trivial() {
        let e = coinvariant_expand(4, 0).unwrap();
        assert_eq!(e.traces.len(), 1);
        assert!(e.traces[0].iter().all(|&v| v == 1));
    }

    #[test]
    fn standard_monomial_count() {
        for n in 2..=6 {
            let count: usize = (1..=n).product();
            assert_eq!(standard_monomials(n).len(), count);
        }
    }

    #[test]
    fn bound() {
        assert!(matches!(coinvariant_expand(7, 3), Err(OracleError::BoundExceeded { .. })));
    }

    #[test]
    fn representatives_have_cycle_type() {
        let sigma = representative(&Partition::new(vec![3, 2, 1]));
        assert_eq!(sigma, vec![1, 2, 0, 4, 3, 5]);
    }
}
