//! Dense bit-packed linear algebra over the two-element field.
//!
//! Row-reduction with deterministic pivoting (lowest column first, rows in
//! insertion order). Sizes here stay far below the point where a sparse
//! representation would pay off.

/// A matrix over GF(2) with bit-packed rows.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn new(ncols: usize) -> Self {
        BitMatrix { ncols, rows: Vec::new() }
    }

    fn words(&self) -> usize {
        self.ncols.div_ceil(64)
    }

    /// Append a row with ones at the given column indices (duplicates
    /// toggle, matching GF(2) addition).
    pub fn push_row(&mut self, ones: impl IntoIterator<Item = usize>) {
        let mut row = vec![0u64; self.words()];
        for c in ones {
            debug_assert!(c < self.ncols);
            row[c / 64] ^= 1 << (c % 64);
        }
        self.rows.push(row);
    }

    /// Rank by Gaussian elimination; consumes the matrix.
    pub fn rank(mut self) -> usize {
        self.reduce()
    }

    /// Row-reduce in place; returns the rank.
    fn reduce(&mut self) -> usize {
        let mut next_row = 0usize;
        for col in 0..self.ncols {
            let word = col / 64;
            let bit = 1u64 << (col % 64);
            let mut pivot = None;
            for r in next_row..self.rows.len() {
                if self.rows[r][word] & bit != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.rows.swap(next_row, p);
            for r in 0..self.rows.len() {
                if r != next_row && self.rows[r][word] & bit != 0 {
                    let (a, b) = split_rows(&mut self.rows, r, next_row);
                    for (x, y) in a.iter_mut().zip(b.iter()) {
                        *x ^= *y;
                    }
                }
            }
            next_row += 1;
            if next_row == self.rows.len() {
                break;
            }
        }
        self.rows.truncate(next_row);
        next_row
    }
}

fn split_rows(rows: &mut [Vec<u64>], i: usize, j: usize) -> (&mut Vec<u64>, &Vec<u64>) {
    debug_assert_ne!(i, j);
    if i < j {
        let (a, b) = rows.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

/// Kernel basis of the linear map sending basis vector `i` to the row
/// `rows[i]` (rows over `ncols` columns). Returns vectors over the domain
/// (length `rows.len()` index sets).
pub fn kernel_basis(rows: &[Vec<usize>], ncols: usize) -> Vec<Vec<usize>> {
    let n = rows.len();
    // augmented elimination: [image | identity]
    let mut m = BitMatrix::new(ncols + n);
    for (i, row) in rows.iter().enumerate() {
        let ones = row.iter().copied().chain(std::iter::once(ncols + i));
        m.push_row(ones);
    }
    // eliminate only on the image columns
    let mut next_row = 0usize;
    for col in 0..ncols {
        let word = col / 64;
        let bit = 1u64 << (col % 64);
        let mut pivot = None;
        for r in next_row..m.rows.len() {
            if m.rows[r][word] & bit != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        m.rows.swap(next_row, p);
        for r in 0..m.rows.len() {
            if r != next_row && m.rows[r][word] & bit != 0 {
                let (a, b) = split_rows(&mut m.rows, r, next_row);
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x ^= *y;
                }
            }
        }
        next_row += 1;
    }
    // rows whose image part is zero give kernel vectors in the tail columns
    let mut out = Vec::new();
    for row in &m.rows[..] {
        let image_zero = (0..ncols).all(|c| row[c / 64] & (1 << (c % 64)) == 0);
        if image_zero {
            let mut support = Vec::new();
            for i in 0..n {
                let c = ncols + i;
                if row[c / 64] & (1 << (c % 64)) != 0 {
                    support.push(i);
                }
            }
            if !support.is_empty() {
                out.push(support);
            }
        }
    }
    out
}
