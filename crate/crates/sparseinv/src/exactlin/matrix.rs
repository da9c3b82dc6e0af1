//! Dense matrices over arbitrary-precision rationals.
//!
//! Everything downstream — subspace arithmetic, block system matrices,
//! rank certificates — reduces to exact row reduction here, so this module
//! keeps one elimination core and derives rank / kernel / solving from it.
//! Elimination is fraction-free: rows are scaled to integers up front and
//! reduced by cross-multiplication, with each row divided by its content
//! after every pivot step so coefficient growth stays tame. Entries only
//! return to rationals in the final normalization pass.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactlin::Rat;

/// Row-major matrix of [`Rat`] entries. Zero-row and zero-column shapes are
/// legal and show up routinely (empty support patterns, zero subspaces).
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Outcome of row reduction: the unique reduced row echelon form together
/// with its pivot columns.
#[derive(Clone, Debug)]
pub struct RowReduction {
    /// Reduced row echelon form, same shape as the input.
    pub rref: RatMatrix,
    /// Column index of each pivot, in row order (strictly increasing).
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds from per-row entry vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows: expected uniform width {ncols}"
        );
        let nrows = rows.len();
        RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer-literal convenience used all over the tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Builds a single-column matrix from a vector of entries.
    pub fn column(entries: Vec<Rat>) -> Self {
        let rows = entries.len();
        RatMatrix {
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: usize) -> RatMatrix {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut acc = RatMatrix::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        RatMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        RatMatrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    /// Keeps the listed columns, in the order given.
    pub fn select_cols(&self, cols: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(self.rows, cols.len(), |i, j| self.at(i, cols[j]).clone())
    }

    /// Keeps the listed rows, in the order given.
    pub fn select_rows(&self, rows: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(rows.len(), self.cols, |i, j| self.at(rows[i], j).clone())
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, c).clone()).collect()
    }

    /// Applies the matrix to a vector given as a slice.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "apply length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Fraction-free row reduction to the (unique) reduced row echelon
    /// form. Rows are scaled to integers, eliminated by cross-multiplication
    /// and re-reduced by their content after every pivot, then normalized so
    /// each pivot is 1.
    ///
    /// # Examples
    ///
    /// ```
    /// use sparseinv::exactlin::RatMatrix;
    /// let m = RatMatrix::from_int_rows(&[&[2, 4], &[1, 2]]);
    /// let red = m.row_reduce();
    /// assert_eq!(red.pivots, vec![0]);
    /// assert_eq!(red.rref, RatMatrix::from_int_rows(&[&[1, 2], &[0, 0]]));
    /// ```
    pub fn row_reduce(&self) -> RowReduction {
        // Integer rows: clear denominators per row, then strip the content.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    let d = self.at(i, j).denom();
                    lcm = lcm.lcm(d);
                }
                let row: Vec<BigInt> = (0..self.cols)
                    .map(|j| {
                        let e = self.at(i, j);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect();
                reduce_content(row)
            })
            .collect();

        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            for i in 0..self.rows {
                if i == r || m[i][c].is_zero() {
                    continue;
                }
                // row_i <- pivot * row_i - m[i][c] * row_r, then re-reduce.
                let f = m[i][c].clone();
                let p = m[r][c].clone();
                for j in 0..self.cols {
                    let v = &p * &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
                let row = std::mem::take(&mut m[i]);
                m[i] = reduce_content(row);
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }

        // Normalize: divide each pivot row by its pivot entry.
        let mut rref = RatMatrix::zeros(self.rows, self.cols);
        for (row, &c) in pivots.iter().enumerate() {
            let p = m[row][c].clone();
            for j in 0..self.cols {
                if !m[row][j].is_zero() {
                    rref.set(row, j, Rat::new(m[row][j].clone(), p.clone()));
                }
            }
        }
        RowReduction { rref, pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().pivots.len()
    }

    /// Basis of the right kernel, one column per free variable of the
    /// reduced echelon form (ordered by free column index). The result has
    /// `cols - rank` columns; rank-nullity holds by construction.
    ///
    /// # Examples
    ///
    /// ```
    /// use sparseinv::exactlin::RatMatrix;
    /// let m = RatMatrix::from_int_rows(&[&[1, 1, 0]]);
    /// let k = m.kernel();
    /// assert_eq!(k.cols(), 2);
    /// assert!(m.mul(&k).is_zero());
    /// ```
    pub fn kernel(&self) -> RatMatrix {
        let RowReduction { rref, pivots } = self.row_reduce();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Rat::one());
            for (row, &c) in pivots.iter().enumerate() {
                let v = rref.at(row, f);
                if !v.is_zero() {
                    basis.set(c, k, -v.clone());
                }
            }
        }
        basis
    }

    /// One exact solution of `self * x = rhs` (a column vector), or `None`
    /// if the system is inconsistent. Free variables are set to zero, which
    /// makes the particular solution deterministic.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, rhs.len(), "solve rhs length mismatch");
        let aug = self.hstack(&RatMatrix::column(rhs.to_vec()));
        let RowReduction { rref, pivots } = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = rref.at(row, self.cols).clone();
        }
        Some(x)
    }
}

/// Divides an integer row by the gcd of its entries (no-op on zero rows).
fn reduce_content(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for v in &row {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return row;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return row;
    }
    for v in &mut row {
        if !v.is_zero() {
            *v = &*v / &g;
        }
    }
    row
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
