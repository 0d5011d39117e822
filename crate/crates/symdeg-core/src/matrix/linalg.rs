//! Dense exact linear algebra over `Q(√r)`: rank, nullspaces, solving, and
//! inverses by fraction-exact Gaussian elimination. Sizes stay tiny (the
//! intertwiner systems of desk-scale points), so no pivoting strategy beyond
//! first-nonzero is needed.

use num::BigRational;

use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.get(i, j)))
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_int(v));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix, r: &BigRational) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).add(&a.mul(b, r));
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).add(o.get(i, j)));
            }
        }
        m
    }

    pub fn neg(&self) -> Matrix {
        let mut m = self.clone();
        for v in &mut m.data {
            *v = v.neg();
        }
        m
    }

    pub fn scale(&self, s: &Scalar, r: &BigRational) -> Matrix {
        let mut m = self.clone();
        for v in &mut m.data {
            *v = v.mul(s, r);
        }
        m
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Matrix {
        let mut c = Matrix::zeros(self.rows, 1);
        for i in 0..self.rows {
            c.set(i, 0, self.get(i, j).clone());
        }
        c
    }

    pub fn columns(&self, idx: &[usize]) -> Matrix {
        let mut c = Matrix::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                c.set(i, jj, self.get(i, j).clone());
            }
        }
        c
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self, r: &BigRational) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.get(row, j).clone();
                self.set(row, j, self.get(p, j).clone());
                self.set(p, j, tmp);
            }
            let inv = self.get(row, col).inv(r);
            for j in col..self.cols {
                let v = self.get(row, j).mul(&inv, r);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let f = self.get(i, col).clone();
                for j in col..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(row, j), r));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, r: &BigRational) -> usize {
        let mut m = self.clone();
        m.echelon(r).len()
    }

    /// Basis of the right kernel, as columns of a matrix.
    pub fn nullspace(&self, r: &BigRational) -> Matrix {
        let mut m = self.clone();
        let pivots = m.echelon(r);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Scalar::one());
            for (prow, &pcol) in pivots.iter().enumerate() {
                basis.set(pcol, k, m.get(prow, f).neg());
            }
        }
        basis
    }

    /// Solves `self · X = rhs` exactly; `None` when inconsistent.
    pub fn solve(&self, rhs: &Matrix, r: &BigRational) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = self.hstack(rhs);
        let pivots = aug.echelon(r);
        if pivots.iter().any(|&p| p >= self.cols) {
            return None; // a pivot in the right-hand block
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pcol, j, aug.get(prow, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self, r: &BigRational) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Matrix::identity(self.rows), r)?;
        if self.mul(&sol, r) == Matrix::identity(self.rows) {
            Some(sol)
        } else {
            None
        }
    }
}
