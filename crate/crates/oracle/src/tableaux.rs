//! Semistandard tableaux and Kostka-Foulkes polynomials via charge.

use green_core::{LaurentPoly, Partition};

/// A semistandard Young tableau in English notation: rows weakly increase,
/// columns strictly increase. Entries are `1..=ℓ(weight)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ssyt {
    pub rows: Vec<Vec<usize>>,
}

impl Ssyt {
    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect())
    }

    /// Multiplicity of each entry `1..=max`.
    pub fn content(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut out = vec![0; max];
        for &x in self.rows.iter().flatten() {
            out[x - 1] += 1;
        }
        out
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1].len() <= pair[0].len() && pair[1].iter().zip(&pair[0]).all(|(lo, hi)| hi < lo)
        });
        rows_ok && cols_ok
    }

    /// Rows read bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    pub fn charge(&self) -> usize {
        charge(&self.reading_word())
    }
}

/// All SSYT of the given shape and weight, built one horizontal strip of
/// equal entries at a time.
pub fn enumerate_ssyt(shape: &Partition, weight: &Partition) -> Vec<Ssyt> {
    let mut out = Vec::new();
    if shape.size() != weight.size() {
        return out;
    }
    let mut rows = vec![Vec::new(); shape.len()];
    fill(shape.parts(), weight.parts(), 0, &mut rows, &mut out);
    out
}

fn fill(shape: &[usize], weight: &[usize], letter: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Ssyt>) {
    if letter == weight.len() {
        out.push(Ssyt { rows: rows.clone() });
        return;
    }
    let old: Vec<usize> = rows.iter().map(Vec::len).collect();
    place_strip(shape, weight, letter, &old, 0, weight[letter], rows, out);
}

#[allow(clippy::too_many_arguments)]
fn place_strip(
    shape: &[usize],
    weight: &[usize],
    letter: usize,
    old: &[usize],
    row: usize,
    remaining: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Ssyt>,
) {
    if remaining == 0 {
        fill(shape, weight, letter + 1, rows, out);
        return;
    }
    if row == shape.len() {
        return;
    }
    // horizontal strip: the new row length may not pass the old length of
    // the row above
    let cap = if row == 0 { shape[0] } else { shape[row].min(old[row - 1]) };
    let room = cap.saturating_sub(old[row]);
    for k in (0..=room.min(remaining)).rev() {
        rows[row].extend(std::iter::repeat_n(letter + 1, k));
        place_strip(shape, weight, letter, old, row + 1, remaining - k, rows, out);
        let len = rows[row].len();
        rows[row].truncate(len - k);
    }
}

/// Lascoux-Schützenberger charge of a word whose content is a partition.
///
/// Standard subwords are extracted by scanning leftwards from the right
/// end for `1`, then cyclically leftwards for `2, 3, ...`; the index rises
/// by one each time the scan wraps around.
pub fn charge(word: &[usize]) -> usize {
    let mut letters: Vec<Option<usize>> = word.iter().copied().map(Some).collect();
    let mut total = 0;
    loop {
        let len = letters.len();
        let Some(mut pos) = (0..len).rev().find(|&i| letters[i] == Some(1)) else {
            break;
        };
        letters[pos] = None;
        let mut index = 0;
        let mut next = 2;
        loop {
            let mut found = None;
            for step in 1..=len {
                let i = (pos + len - step) % len;
                if letters[i] == Some(next) {
                    found = Some((i, step > pos));
                    break;
                }
            }
            let Some((i, wrapped)) = found else { break };
            if wrapped {
                index += 1;
            }
            total += index;
            letters[i] = None;
            pos = i;
            next += 1;
        }
        letters.retain(Option::is_some);
    }
    total
}

/// `K_{λμ}(t) = Σ_{T ∈ SSYT(λ, μ)} t^{charge(T)}`.
pub fn kostka_foulkes(shape: &Partition, weight: &Partition) -> LaurentPoly {
    enumerate_ssyt(shape, weight)
        .iter()
        .fold(LaurentPoly::zero(), |acc, t| &acc + &LaurentPoly::t_pow(t.charge() as i64))
}

/// Number of SSYT of the given shape and weight.
pub fn kostka_number(shape: &Partition, weight: &Partition) -> usize {
    enumerate_ssyt(shape, weight).len()
}
