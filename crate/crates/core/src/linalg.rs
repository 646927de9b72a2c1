//! Dense matrices over `F_q`.
//!
//! Elimination scans pivots left-to-right, top-to-bottom and always
//! produces the reduced row echelon form, so every derived basis
//! (null spaces, parity checks, solutions) is canonical.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Field, Symbol};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Symbol>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Symbol>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v as u32)) {
            return Err(Error::ElementOutOfRange { value: bad as u32, q: field.q() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds from row vectors; an empty list needs `cols` to fix the width.
    pub fn from_rows(field: &Field, rows: &[Vec<Symbol>], cols: usize) -> Result<Matrix> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Symbol {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Symbol) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Symbol] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Symbol>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Symbol> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(i, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `x * M`.
    pub fn left_mul(&self, x: &[Symbol]) -> Result<Vec<Symbol>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, v));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `M * x^T`.
    pub fn apply(&self, x: &[Symbol]) -> Result<Vec<Symbol>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows).map(|r| self.field.dot(self.row(r), x)).collect())
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..m.cols {
            if top == m.rows {
                break;
            }
            let Some(pr) = (top..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(top, pr);
            let inv = f.inv(m.get(top, c)).expect("pivot is nonzero");
            m.scale_row(top, inv);
            for r in 0..m.rows {
                if r != top {
                    let factor = m.get(r, c);
                    if factor != 0 {
                        m.add_row_multiple(r, top, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            top += 1;
        }
        m.data.truncate(top * m.cols);
        m.rows = top;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x^T = 0}`, one row per free column, in RREF order.
    pub fn null_space(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        basis
    }

    /// Canonical solution of `M x^T = b^T` (free variables zero), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Symbol]) -> Result<Option<Vec<Symbol>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(pr, self.cols);
        }
        Ok(Some(x))
    }

    /// Parity-check matrix `H` of the row space of a full-row-rank `G`:
    /// `(n-k) x n`, `G H^T = 0`, rank `n-k`.
    pub fn parity_check(&self) -> Result<Matrix> {
        let rank = self.rank();
        if rank != self.rows {
            return Err(Error::RankDeficient { rank, rows: self.rows });
        }
        Ok(self.null_space())
    }

    /// Columns at the given (strictly increasing) indices.
    pub fn column_submatrix(&self, cols: &[usize]) -> Result<Matrix> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange { index: c, len: self.cols });
        }
        if cols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("column indices must be strictly increasing".into()));
        }
        Ok(self.select_columns(cols))
    }

    /// Columns in the given order, repeats allowed; indices must be valid.
    pub(crate) fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("{} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: Symbol) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    // row[dst] += s * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, s: Symbol) {
        for c in 0..self.cols {
            let v = self.field.add(self.get(dst, c), self.field.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn f4() -> Field {
        Field::with_order(4).unwrap()
    }

    fn hermitian() -> Matrix {
        Matrix::from_rows(
            &f4(),
            &[vec![1, 1, 1, 1, 1, 1, 1, 1], vec![0, 1, 2, 2, 2, 3, 3, 3], vec![0, 0, 1, 2, 3, 1, 2, 3]],
            8,
        )
        .unwrap()
    }

    // Dimension of the row space by counting distinct vectors in the span.
    fn span_size(m: &Matrix) -> usize {
        let f = m.field();
        let q = f.q() as usize;
        let mut seen = std::collections::HashSet::new();
        for idx in 0..q.pow(m.rows() as u32) {
            let mut msg = vec![0; m.rows()];
            let mut t = idx;
            for d in msg.iter_mut() {
                *d = (t % q) as Symbol;
                t /= q;
            }
            seen.insert(m.left_mul(&msg).unwrap());
        }
        seen.len()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(&f2(), 3, 8).rank(), 0);
        let g = hermitian();
        assert_eq!(g.rank(), 3);
        let sub = g.column_submatrix(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(sub.rank(), 3);
        // brute-force oracle: 4^3 distinct combinations means rank 3
        assert_eq!(span_size(&sub), 64);
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(Matrix::identity(&f2(), 3).null_space().rows(), 0);
        let ones = Matrix::from_rows(&f2(), &[vec![1, 1, 1]], 3).unwrap();
        let ns = ones.null_space();
        assert_eq!(ns.row_vecs(), vec![vec![1, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = Field::prime(5).unwrap();
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.solve(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));
        let m = Matrix::from_rows(&f, &[vec![0, 0], vec![1, 2]], 2).unwrap();
        assert_eq!(m.solve(&[1, 0]).unwrap(), None);
        assert!(m.solve(&[1]).is_err());
    }

    #[test]
    fn parity_check_examples() {
        let f = Field::prime(3).unwrap();
        // G = [I | A] gives H = [-A^T | I]
        let g = Matrix::from_rows(&f, &[vec![1, 0, 2, 1], vec![0, 1, 1, 1]], 4).unwrap();
        let h = g.parity_check().unwrap();
        assert_eq!(h.row_vecs(), vec![vec![1, 2, 1, 0], vec![2, 2, 0, 1]]);
        let hg = hermitian().parity_check().unwrap();
        assert_eq!((hg.rows(), hg.cols()), (5, 8));
        assert!(hermitian().mul(&hg.transpose()).unwrap().is_zero());
        let full = Matrix::identity(&f, 4);
        assert_eq!(full.parity_check().unwrap().rows(), 0);
        let deficient = Matrix::from_rows(&f, &[vec![1, 1], vec![2, 2]], 2).unwrap();
        assert!(matches!(deficient.parity_check(), Err(Error::RankDeficient { rank: 1, rows: 2 })));
    }

    #[test]
    fn column_selection() {
        let g = hermitian();
        assert_eq!(g.column_submatrix(&[]).unwrap().cols(), 0);
        assert_eq!(g.column_submatrix(&(0..8).collect::<Vec<_>>()).unwrap(), g);
        assert_eq!(g.column_submatrix(&[5]).unwrap().column(0), vec![1, 3, 1]);
        assert!(g.column_submatrix(&[8]).is_err());
        assert!(g.column_submatrix(&[2, 1]).is_err());
    }

    #[test]
    fn solve_on_information_free_columns() {
        let g = hermitian();
        let s = [0, 1, 2];
        let sub = g.column_submatrix(&s).unwrap();
        let target = vec![3, 1, 2];
        let msg = sub.transpose().solve(&target).unwrap().unwrap();
        assert_eq!(sub.left_mul(&msg).unwrap(), target);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (prop_oneof![Just(2u32), Just(3), Just(4), Just(5)], 1usize..6, 1usize..7).prop_flat_map(|(q, r, c)| {
            proptest::collection::vec(0..q as Symbol, r * c).prop_map(move |data| {
                Matrix::new(&Field::with_order(q).unwrap(), r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn null_space_is_annihilated(m in arb_matrix()) {
            let ns = m.null_space();
            prop_assert_eq!(ns.rows(), m.cols() - m.rank());
            for v in ns.row_vecs() {
                prop_assert!(m.apply(&v).unwrap().iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn parity_round_trip(m in arb_matrix()) {
            let (g, _) = m.rref();
            prop_assume!(g.rows() > 0);
            let h = g.parity_check().unwrap();
            // row space of G equals the null space of H
            let back = h.null_space();
            prop_assert_eq!(back.rref().0, g.rref().0);
        }

        #[test]
        fn solve_is_certified(m in arb_matrix(), seed in any::<u64>()) {
            let q = m.field().q() as u64;
            let b: Vec<Symbol> = (0..m.rows()).map(|i| ((seed >> (3 * i)) % q) as Symbol).collect();
            match m.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(m.apply(&x).unwrap(), b),
                None => {
                    let mut cols: Vec<Vec<Symbol>> = m.row_vecs();
                    for (row, &v) in cols.iter_mut().zip(&b) { row.push(v); }
                    let aug = Matrix::from_rows(m.field(), &cols, m.cols() + 1).unwrap();
                    prop_assert!(aug.rank() > m.rank());
                }
            }
        }
    }
}
