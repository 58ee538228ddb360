//! Fixed-width bit rows and a dense bit matrix.
//!
//! Every row is padded to a whole number of 64-bit words. Bits past the
//! logical width are always zero; popcounts over row intersections rely on it.

use std::fmt;

pub const WORD_BITS: usize = 64;

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    (row[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i / WORD_BITS] |= 1 << (i % WORD_BITS);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// `|a ∩ b|`
#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// `|a ∩ b ∩ c|`
#[inline]
pub fn and3_count(a: &[u64], b: &[u64], c: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// Mask with the low `n` bits set, spread over `words_for(n)` words.
pub fn full_row(n: usize) -> Vec<u64> {
    let mut row = vec![u64::MAX; words_for(n)];
    trim(&mut row, n);
    row
}

/// Zero every bit at position `>= n`.
pub fn trim(row: &mut [u64], n: usize) {
    let used = words_for(n);
    for w in row.iter_mut().skip(used) {
        *w = 0;
    }
    if !n.is_multiple_of(WORD_BITS) && used > 0 {
        row[used - 1] &= (1u64 << (n % WORD_BITS)) - 1;
    }
}

/// OR the first `len` bits of `src` into `dst` starting at bit `offset`.
///
/// `src` must be clean past `len`.
pub fn or_shifted(dst: &mut [u64], src: &[u64], offset: usize, len: usize) {
    let shift = offset % WORD_BITS;
    let base = offset / WORD_BITS;
    for (k, &w) in src.iter().take(words_for(len)).enumerate() {
        if w == 0 {
            continue;
        }
        dst[base + k] |= w << shift;
        if shift != 0 {
            let hi = w >> (WORD_BITS - shift);
            if hi != 0 {
                dst[base + k + 1] |= hi;
            }
        }
    }
}

/// Iterator over the positions of set bits, ascending.
pub struct Ones<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD_BITS + tz);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.word];
        }
    }
}

pub fn ones(row: &[u64]) -> Ones<'_> {
    Ones {
        row,
        word: 0,
        cur: row.first().copied().unwrap_or(0),
    }
}

/// Dense square bit matrix; row `i` holds the out-neighbourhood of node `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n).max(1);
        BitMatrix {
            n,
            stride,
            words: vec![0; stride * n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Rows as disjoint mutable chunks, for parallel row construction.
    pub fn rows_mut(&mut self) -> std::slice::ChunksExactMut<'_, u64> {
        self.words.chunks_exact_mut(self.stride)
    }

    pub fn raw_rows_mut(&mut self) -> (&mut [u64], usize) {
        (&mut self.words, self.stride)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        get(self.row(i), j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        set(self.row_mut(i), j)
    }

    #[inline]
    pub fn clear(&mut self, i: usize, j: usize) {
        clear(self.row_mut(i), j)
    }

    pub fn row_count(&self, i: usize) -> usize {
        count(self.row(i))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in ones(self.row(i)) {
                t.set(j, i);
            }
        }
        t
    }

    /// True when no bit at column `>= n` is set in any row.
    pub fn padding_clean(&self) -> bool {
        let full = full_row(self.n);
        (0..self.n).all(|i| {
            self.row(i)
                .iter()
                .zip(full.iter().chain(std::iter::repeat(&0)))
                .all(|(w, m)| w & !m == 0)
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for i in 0..self.n.min(32) {
            let s: String = (0..self.n.min(64))
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}
