use crate::error::{Error, Result};

/// Row-major Boolean matrix with rows packed into 64-bit words. Padding bits
/// past the last column are always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of bounds");
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Column indices of the set bits in row `r`.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn padding_is_zero(&self) -> bool {
        if self.cols.is_multiple_of(64) {
            return true;
        }
        let mask = !0u64 << (self.cols % 64);
        (0..self.rows).all(|r| self.data[r * self.words + self.words - 1] & mask == 0)
    }
}

/// Boolean product: `C[s][t] = OR_v (A[s][v] AND B[v][t])`.
///
/// For each set bit `A[s][v]` the packed row `B[v]` is OR-ed into `C[s]`, so
/// the cost is `nnz(A) * cols / 64` word operations, at most `n^3 / 64`.
pub fn bool_matmul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.cols != b.rows {
        return Err(Error::Dimension {
            expected: a.cols,
            got: b.rows,
        });
    }
    let mut c = BitMatrix::zeros(a.rows, b.cols);
    let words = c.words;
    let fill_row = |s: usize, out: &mut [u64]| {
        for v in a.row_ones(s) {
            for (o, &bw) in out.iter_mut().zip(b.row_words(v)) {
                *o |= bw;
            }
        }
    };
    if words == 0 {
        return Ok(c);
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        c.data
            .par_chunks_mut(words)
            .enumerate()
            .for_each(|(s, out)| fill_row(s, out));
    }
    #[cfg(not(feature = "parallel"))]
    for (s, out) in c.data.chunks_mut(words).enumerate() {
        fill_row(s, out);
    }
    Ok(c)
}
