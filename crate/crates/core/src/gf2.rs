//! Dense matrices over GF(2) and Gauss-Jordan elimination.
//!
//! Pivoting always takes the lowest-index candidate row, so particular
//! solutions and kernel bases are reproducible.

use std::fmt;

use crate::bits::BitVector;
use crate::error::{check_dim, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors, all of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_dim(cols, r.len())?;
        }
        Ok(Gf2Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_dim(rows, c.len())?;
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_dim(self.cols, v.len())?;
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.iter_ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        check_dim(self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Gf2Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows selected by index, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Gf2Matrix {
        Gf2Matrix {
            rows: indices.len(),
            cols: self.cols,
            data: indices.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn eliminate(&self) -> Elimination {
        Elimination::new(self)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn kernel_basis(&self) -> Vec<BitVector> {
        self.eliminate().kernel_basis()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    /// Some `x` with `self · x = b`, or `None` if `b` is outside the image.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        self.eliminate().solve(b)
    }

    pub fn image_contains(&self, b: &BitVector) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }

    /// Rows rendered as hex strings (see [`BitVector::to_hex`]).
    pub fn to_hex_rows(&self) -> Vec<String> {
        self.data.iter().map(BitVector::to_hex).collect()
    }

    pub fn from_hex_rows(cols: usize, rows: &[String]) -> Result<Gf2Matrix> {
        let data = rows
            .iter()
            .map(|h| BitVector::from_hex(cols, h))
            .collect::<Result<Vec<_>>>()?;
        Gf2Matrix::from_rows(cols, data)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form together with the row operations that produced it.
///
/// `transform · source = rref`, which lets repeated solves against the same
/// matrix reuse a single elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    rref: Gf2Matrix,
    transform: Gf2Matrix,
    pivots: Vec<usize>,
}

impl Elimination {
    pub fn new(m: &Gf2Matrix) -> Self {
        let mut rref = m.clone();
        let mut transform = Gf2Matrix::identity(m.rows);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| rref.data[r].get(col)) else {
                continue;
            };
            rref.data.swap(rank, p);
            transform.data.swap(rank, p);
            let (pivot_row, pivot_t) = (rref.data[rank].clone(), transform.data[rank].clone());
            for r in 0..m.rows {
                if r != rank && rref.data[r].get(col) {
                    rref.data[r].xor_assign(&pivot_row);
                    transform.data[r].xor_assign(&pivot_t);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Elimination {
            rref,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rref(&self) -> &Gf2Matrix {
        &self.rref
    }

    pub fn cols(&self) -> usize {
        self.rref.cols
    }

    pub fn kernel_dim(&self) -> usize {
        self.rref.cols - self.rank()
    }

    /// One basis vector per free column, in increasing column order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let cols = self.rref.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(cols, free);
                for (i, &p) in self.pivots.iter().enumerate() {
                    if self.rref.data[i].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Particular solution with every free variable set to zero.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        check_dim(self.rref.rows, b.len())?;
        let c = self.transform.mul_vec(b)?;
        if c.iter_ones().any(|i| i >= self.rank()) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.rref.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            if c.get(i) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

/// Every element of the span of `basis` (assumed independent), in Gray-code
/// order starting from zero. Returns `None` when the span exceeds `cap`
/// elements.
pub fn enumerate_span(len: usize, basis: &[BitVector], cap: usize) -> Option<Vec<BitVector>> {
    if basis.len() >= usize::BITS as usize - 1 || (1usize << basis.len()) > cap {
        return None;
    }
    let total = 1usize << basis.len();
    let mut out = Vec::with_capacity(total);
    let mut cur = BitVector::zeros(len);
    out.push(cur.clone());
    for k in 1..total {
        let flip = k.trailing_zeros() as usize;
        cur.xor_assign(&basis[flip]);
        out.push(cur.clone());
    }
    Some(out)
}
