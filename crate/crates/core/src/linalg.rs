//! Dense Gaussian elimination over GF(2).

/// Rank of the row space spanned by `rows`, each row a bit mask of at most
/// 64 columns. The slice is reduced in place.
pub fn rank_u64(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for col in 0..64 {
        let bit = 1u64 << col;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for r in rows.iter_mut().skip(rank + 1) {
            if *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Outcome of solving an affine system `A z = y` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<bool>),
    Inconsistent,
    /// Consistent but the matrix rank is below the number of unknowns.
    Underdetermined { rank: usize },
}

/// A system of equations over GF(2) in `cols` unknowns.
#[derive(Debug, Clone)]
pub struct AffineSystem {
    cols: usize,
    rows: Vec<(Vec<bool>, bool)>,
}

impl AffineSystem {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<bool>, rhs: bool) {
        assert_eq!(coeffs.len(), self.cols);
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(mut self) -> Solution {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].0[col]) else {
                continue;
            };
            self.rows.swap(r, p);
            let (pivot, prhs) = self.rows[r].clone();
            for (i, (row, rhs)) in self.rows.iter_mut().enumerate() {
                if i != r && row[col] {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                    *rhs ^= prhs;
                }
            }
            pivots.push(col);
            r += 1;
        }
        if self.rows[r..].iter().any(|(_, rhs)| *rhs) {
            return Solution::Inconsistent;
        }
        if r < self.cols {
            return Solution::Underdetermined { rank: r };
        }
        let mut z = vec![false; self.cols];
        for (row, col) in pivots.into_iter().enumerate() {
            z[col] = self.rows[row].1;
        }
        Solution::Unique(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_dependent_rows() {
        let mut id: Vec<u64> = (0..10).map(|i| 1 << i).collect();
        assert_eq!(rank_u64(&mut id), 10);
        let mut dep = vec![0b011, 0b110, 0b101];
        assert_eq!(rank_u64(&mut dep), 2);
        assert_eq!(rank_u64(&mut [0, 0]), 0);
        assert_eq!(rank_u64(&mut [u64::MAX, 1 << 63]), 2);
    }

    #[test]
    fn affine_solutions() {
        // z0 + z1 = 1, z1 = 1, z0 + z1 = 1 (redundant)
        let mut s = AffineSystem::new(2);
        s.push(vec![true, true], true);
        s.push(vec![false, true], true);
        s.push(vec![true, true], true);
        assert_eq!(s.solve(), Solution::Unique(vec![false, true]));

        let mut s = AffineSystem::new(2);
        s.push(vec![true, true], true);
        s.push(vec![true, true], false);
        assert_eq!(s.solve(), Solution::Inconsistent);

        let mut s = AffineSystem::new(2);
        s.push(vec![true, true], true);
        assert_eq!(s.solve(), Solution::Underdetermined { rank: 1 });

        assert_eq!(AffineSystem::new(0).solve(), Solution::Unique(vec![]));
    }
}
