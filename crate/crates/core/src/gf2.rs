//! Dense matrices over the two-element field.

/// A dense `rows x cols` matrix over Z/2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    /// Matrix product `self * rhs`; as linear maps this is `self` after `rhs`.
    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in gf2 product");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for c in 0..rhs.cols {
                        if rhs.get(k, c) {
                            let v = out.get(r, c) ^ true;
                            out.set(r, c, v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, c));
            let Some(p) = pivot else { continue };
            // swap rows p and rank
            for cc in 0..m.cols {
                let a = m.get(rank, cc);
                let b = m.get(p, cc);
                m.set(rank, cc, b);
                m.set(p, cc, a);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    for cc in 0..m.cols {
                        let v = m.get(r, cc) ^ m.get(rank, cc);
                        m.set(r, cc, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Dimension of the span of the columns of `self` together with `other`.
    pub fn joint_column_rank(&self, other: &Mat) -> usize {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m.rank()
    }

    /// A matrix whose columns form a basis of the kernel of `self`.
    pub fn kernel_basis(&self) -> Mat {
        // column-reduce a copy while mirroring the operations on an identity
        let mut m = self.clone();
        let mut v = Mat::identity(self.cols);
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; self.rows];
        for c in 0..m.cols {
            loop {
                let low = (0..m.rows).rev().find(|&r| m.get(r, c));
                let Some(low) = low else { break };
                match pivot_of_row[low] {
                    None => {
                        pivot_of_row[low] = Some(c);
                        break;
                    }
                    Some(p) => {
                        for r in 0..m.rows {
                            let x = m.get(r, c) ^ m.get(r, p);
                            m.set(r, c, x);
                        }
                        for r in 0..v.rows {
                            let x = v.get(r, c) ^ v.get(r, p);
                            v.set(r, c, x);
                        }
                    }
                }
            }
        }
        let zero_cols: Vec<usize> = (0..m.cols)
            .filter(|&c| (0..m.rows).all(|r| !m.get(r, c)))
            .collect();
        let mut out = Mat::zero(self.cols, zero_cols.len());
        for (j, &c) in zero_cols.iter().enumerate() {
            for r in 0..self.cols {
                out.set(r, j, v.get(r, c));
            }
        }
        out
    }
}
