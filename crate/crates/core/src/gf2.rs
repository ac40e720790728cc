//! Dense matrices over Z₂ with bit-packed rows.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = words_for(cols);
        Self {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Rows of 0/1 entries; every row must have the same length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::BadShape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &x) in r.iter().enumerate() {
                match x {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => {
                        return Err(Error::BadShape(format!(
                            "entry ({i},{j}) = {x} is not a bit"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of bounds");
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of bounds");
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j) as u8).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row_bits(i)).collect()
    }

    pub fn row_popcount(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|&w| w == 0)
    }

    /// Mod-2 sum of the listed rows.
    pub fn sum_rows(&self, idx: &[usize]) -> Vec<u64> {
        let mut acc = vec![0u64; self.words];
        for &i in idx {
            xor_into(&mut acc, self.row(i));
        }
        acc
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        xor_into(a, b);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.words {
                self.bits.swap(i * self.words + k, j * self.words + k);
            }
        }
    }

    pub fn column_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| !self.get(i, j))
    }
}

fn xor_into(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// Indices of the set bits of a packed vector.
pub fn bit_indices(v: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, &w) in v.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(64 * k + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

pub fn popcount(v: &[u64]) -> usize {
    v.iter().map(|w| w.count_ones() as usize).sum()
}

impl Serialize for GF2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReduction {
    pub reduced: GF2Matrix,
    pub rank: usize,
    /// `sources[i]` lists the original rows summing to reduced row `i`.
    pub sources: Vec<Vec<usize>>,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form. Pivots are taken column by column from the
/// left, choosing the lowest-index available row.
pub fn rref_mod2(m: &GF2Matrix) -> RowReduction {
    let mut a = m.clone();
    let mut track = GF2Matrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| a.get(i, col)) else {
            continue;
        };
        a.swap_rows(r, p);
        track.swap_rows(r, p);
        for i in 0..m.rows {
            if i != r && a.get(i, col) {
                a.xor_row(i, r);
                track.xor_row(i, r);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let sources = (0..m.rows).map(|i| bit_indices(track.row(i))).collect();
    RowReduction {
        reduced: a,
        rank: r,
        sources,
        pivots,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowSelection {
    /// Selected vector as 0/1 entries.
    pub v: Vec<u8>,
    /// Original rows whose mod-2 sum is `v`.
    pub source_rows: Vec<usize>,
    pub rank: usize,
    /// `"rank"` when all nonzero reduced rows were summed, `"row"` when one
    /// dense reduced row was taken.
    pub case: &'static str,
}

/// A combination of rows of an `n² × n²` matrix with at least `n` ones.
pub fn select_row_vector(m: &GF2Matrix, n: usize) -> Result<RowSelection> {
    let nn = n * n;
    if m.rows != nn || m.cols != nn {
        return Err(Error::BadShape(format!(
            "expected {nn}x{nn}, got {}x{}",
            m.rows, m.cols
        )));
    }
    if let Some(j) = (0..m.cols).find(|&j| m.column_is_zero(j)) {
        return Err(Error::ZeroColumn(j));
    }
    let red = rref_mod2(m);
    let r = red.rank;
    let (vec, reduced_rows, case) = if r >= n {
        let idx: Vec<usize> = (0..r).collect();
        (red.reduced.sum_rows(&idx), idx, "rank")
    } else {
        // the n² ones of M' sit in r < n rows, so some row has > n of them
        let i = (0..r)
            .find(|&i| red.reduced.row_popcount(i) * r >= nn)
            .expect("pigeonhole row exists");
        (red.reduced.row(i).to_vec(), vec![i], "row")
    };
    let mut src = vec![0u64; words_for(m.rows)];
    for &i in &reduced_rows {
        for &k in &red.sources[i] {
            src[k / 64] ^= 1 << (k % 64);
        }
    }
    let v = (0..m.cols)
        .map(|j| (vec[j / 64] >> (j % 64) & 1) as u8)
        .collect();
    Ok(RowSelection {
        v,
        source_rows: bit_indices(&src),
        rank: r,
        case,
    })
}
