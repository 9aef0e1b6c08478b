//! Exact integer matrices: fraction-free determinants, adjugates, integer
//! kernel lattices via Hermite reduction, and rational linear solving.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&v| BigInt::from(v))
            })
            .collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let data = rows
            .into_iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row
            })
            .collect();
        IntMatrix { rows: r, cols: c, data }
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
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Product of squared Euclidean row norms (the square of the Hadamard bound).
    pub fn hadamard_bound_sq(&self) -> BigInt {
        let mut acc = BigInt::one();
        for r in 0..self.rows {
            let norm_sq: BigInt = self.row(r).iter().map(|v| v * v).sum();
            acc *= norm_sq;
        }
        acc
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with
    /// deterministic first-nonzero pivoting.
    pub fn det_fraction_free(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut w = self.data.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n {
            // first row at or below k with nonzero entry in column k
            let pivot = (k..n).find(|&r| !w[idx(r, k)].is_zero());
            let Some(p) = pivot else {
                return Ok(BigInt::zero());
            };
            if p != k {
                for c in 0..n {
                    w.swap(idx(k, c), idx(p, c));
                }
                sign = -sign;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let num = &w[idx(k, k)] * &w[idx(r, c)] - &w[idx(r, k)] * &w[idx(k, c)];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss exact division");
                    w[idx(r, c)] = num / &prev;
                }
                w[idx(r, k)] = BigInt::zero();
            }
            prev = w[idx(k, k)].clone();
        }
        let det = if sign < 0 { -prev } else { prev };
        // Hadamard: det^2 <= prod of squared row norms
        debug_assert!(
            &det * &det <= self.hadamard_bound_sq(),
            "Hadamard bound violated"
        );
        Ok(det)
    }

    /// Adjugate via cofactor expansion; satisfies m * adj(m) = det(m) * I exactly.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "adjugate of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(IntMatrix::zero(0, 0));
        }
        if n == 1 {
            return Ok(IntMatrix::identity(1));
        }
        let mut adj = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let cof = minor.det_fraction_free()?;
                let signed = if (i + j) % 2 == 0 { cof } else { -cof };
                adj.set(j, i, signed);
            }
        }
        debug_assert!({
            let det = self.det_fraction_free()?;
            let prod = self.mul(&adj)?;
            let mut expected = IntMatrix::zero(n, n);
            for i in 0..n {
                expected.set(i, i, det.clone());
            }
            prod == expected
        });
        Ok(adj)
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == drop_row {
                continue;
            }
            for c in 0..self.cols {
                if c == drop_col {
                    continue;
                }
                data.push(self.at(r, c).clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Matrix with column `drop_col` removed.
    pub fn drop_column(&self, drop_col: usize) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c != drop_col {
                    data.push(self.at(r, c).clone());
                }
            }
        }
        IntMatrix { rows: self.rows, cols: self.cols - 1, data }
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Row Hermite reduction: returns (H, U) with U unimodular and U * self = H,
    /// H in row echelon form. Deterministic (smallest pivot magnitude, then
    /// lowest row index).
    pub fn row_hermite(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..self.rows {
                    if !h.at(r, col).is_zero() {
                        best = match best {
                            None => Some(r),
                            Some(b) => {
                                if h.at(r, col).abs() < h.at(b, col).abs() {
                                    Some(r)
                                } else {
                                    Some(b)
                                }
                            }
                        };
                    }
                }
                let Some(b) = best else { break };
                if b != pivot_row {
                    h.swap_rows(b, pivot_row);
                    u.swap_rows(b, pivot_row);
                }
                let mut done = true;
                let piv = h.at(pivot_row, col).clone();
                for r in pivot_row + 1..self.rows {
                    if !h.at(r, col).is_zero() {
                        let q = h.at(r, col) / &piv;
                        h.row_axpy(r, pivot_row, &(-&q));
                        u.row_axpy(r, pivot_row, &(-q));
                        if !h.at(r, col).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    if h.at(pivot_row, col).is_negative() {
                        h.negate_row(pivot_row);
                        u.negate_row(pivot_row);
                    }
                    pivot_row += 1;
                    break;
                }
            }
        }
        (h, u)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row[dst] += k * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(dst, c) + k * self.at(src, c);
            self.set(dst, c, v);
        }
    }

    pub fn rank(&self) -> usize {
        let (h, _) = self.row_hermite();
        (0..h.rows)
            .filter(|&r| h.row(r).iter().any(|v| !v.is_zero()))
            .count()
    }

    /// Basis of the full integer kernel lattice {x in Z^cols : self * x = 0},
    /// one basis vector per row. The basis is primitive: it generates every
    /// integer kernel vector.
    pub fn kernel_basis(&self) -> IntMatrix {
        let t = self.transpose();
        let (h, u) = t.row_hermite();
        let mut rows = Vec::new();
        for r in 0..h.rows {
            if h.row(r).iter().all(|v| v.is_zero()) {
                rows.push(u.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            IntMatrix::zero(0, self.cols)
        } else {
            IntMatrix::from_rows(rows)
        }
    }

    /// Gram determinant det(self * self^T), exact.
    pub fn gram_det(&self) -> Result<BigInt> {
        self.mul(&self.transpose())?.det_fraction_free()
    }

    /// Fraction-free echelon scan with the first-nonzero pivot rule.
    /// Returns the selected pivot rows and columns, in selection order.
    /// The square submatrix on those rows and columns is nonsingular and
    /// maximal for the scan order.
    pub fn echelon_pivots(&self) -> (Vec<usize>, Vec<usize>) {
        let mut w = self.row_vecs();
        let mut prev = BigInt::one();
        let mut sel_rows = Vec::new();
        let mut sel_cols = Vec::new();
        let mut col_used = vec![false; self.cols];
        for r in 0..self.rows {
            // first unused column where the reduced row is nonzero
            let pc = (0..self.cols).find(|&c| !col_used[c] && !w[r][c].is_zero());
            let Some(pc) = pc else { continue };
            // Bareiss update of all later rows
            for i in r + 1..self.rows {
                for c in 0..self.cols {
                    if c == pc {
                        continue;
                    }
                    let num = &w[r][pc] * &w[i][c] - &w[i][pc] * &w[r][c];
                    debug_assert!((&num % &prev).is_zero());
                    w[i][c] = num / &prev;
                }
                w[i][pc] = BigInt::zero();
            }
            prev = w[r][pc].clone();
            col_used[pc] = true;
            sel_rows.push(r);
            sel_cols.push(pc);
        }
        (sel_rows, sel_cols)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.at(r, c).clone()))
            .collect();
        IntMatrix { rows: rows.len(), cols: cols.len(), data }
    }
}

/// Greedy maximal linearly independent subset of the given rows over Q,
/// scanning in order. Returns the kept indices.
pub fn independent_rows_q(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let mut kept: Vec<Vec<BigRational>> = Vec::new();
    let mut kept_idx = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v: Vec<BigRational> = row
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for (b, &pc) in kept.iter().zip(&pivots) {
            if !v[pc].is_zero() {
                let f = v[pc].clone() / b[pc].clone();
                for c in 0..v.len() {
                    let sub = &f * &b[c];
                    v[c] -= sub;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            kept.push(v);
            pivots.push(pc);
            kept_idx.push(i);
        }
    }
    kept_idx
}

/// Greedy maximal linearly independent subset of the rows over F_p.
pub fn independent_rows_mod_p(rows: &[Vec<i64>], p: u64) -> Vec<usize> {
    use super::primes::{inv_mod_checked, mul_mod};
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut kept: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut kept_idx = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v: Vec<u64> = row.iter().map(|&x| reduce(x)).collect();
        for (b, &pc) in kept.iter().zip(&pivots) {
            if v[pc] != 0 {
                let f = mul_mod(v[pc], inv_mod_checked(b[pc], p), p);
                for c in 0..v.len() {
                    let sub = mul_mod(f, b[c], p);
                    v[c] = (v[c] + p - sub) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            kept.push(v);
            pivots.push(pc);
            kept_idx.push(i);
        }
    }
    kept_idx
}

/// Exact solve of a * x = b over the rationals.
/// Returns None if inconsistent, else (particular solution, nullspace basis).
pub fn solve_rational(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), rows);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut v = row.clone();
            v.push(rhs.clone());
            v
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut pr = 0usize;
    for pc in 0..cols {
        let Some(r) = (pr..rows).find(|&r| !m[r][pc].is_zero()) else {
            continue;
        };
        m.swap(pr, r);
        let inv = m[pr][pc].clone();
        for c in pc..=cols {
            m[pr][c] = &m[pr][c] / &inv;
        }
        for r in 0..rows {
            if r != pr && !m[r][pc].is_zero() {
                let f = m[r][pc].clone();
                for c in pc..=cols {
                    let sub = &f * &m[pr][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    // inconsistency: zero row with nonzero rhs
    for r in pr..rows {
        if m[r][..cols].iter().all(|x| x.is_zero()) && !m[r][cols].is_zero() {
            return None;
        }
    }
    let zero = BigRational::zero();
    let mut particular = vec![zero.clone(); cols];
    for (k, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = m[k][cols].clone();
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut nullspace = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![zero.clone(); cols];
        v[fc] = BigRational::one();
        for (k, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[k][fc].clone();
        }
        nullspace.push(v);
    }
    Some((particular, nullspace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn det_examples() {
        assert_eq!(m(&[&[1, 0], &[0, 1]]).det_fraction_free().unwrap(), BigInt::from(1));
        assert_eq!(
            m(&[&[-2, -1], &[-4, -1]]).det_fraction_free().unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det_fraction_free().unwrap(), BigInt::zero());
        assert!(m(&[&[1, 2, 3], &[4, 5, 6]]).det_fraction_free().is_err());
    }

    #[test]
    fn adjugate_examples() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(a.adjugate().unwrap(), m(&[&[3, 0], &[0, 2]]));
        let b = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(b.adjugate().unwrap(), m(&[&[4, -2], &[-3, 1]]));
        let id = IntMatrix::identity(3);
        assert_eq!(id.adjugate().unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn kernel_examples() {
        // kernel of (1,0,0) is span{e2, e3}
        let k = m(&[&[1, 0, 0]]).kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in 0..2 {
            assert!(k.at(r, 0).is_zero());
        }
        assert_eq!(k.gram_det().unwrap(), BigInt::one());

        // kernel of (1,2,3): rank 2, Gram determinant 14 = |alpha|^2
        let k = m(&[&[1, 2, 3]]).kernel_basis();
        assert_eq!(k.rows(), 2);
        assert_eq!(k.gram_det().unwrap(), BigInt::from(14));

        // kernel of (2,4): basis +-(2,-1)
        let k = m(&[&[2, 4]]).kernel_basis();
        assert_eq!(k.rows(), 1);
        let v = (k.at(0, 0).clone(), k.at(0, 1).clone());
        assert!(
            v == (BigInt::from(2), BigInt::from(-1)) || v == (BigInt::from(-2), BigInt::from(1))
        );
    }

    #[test]
    fn kernel_orthogonality_and_primitivity() {
        let a = m(&[&[3, -1, 4, 1], &[2, 7, 1, -5]]);
        let k = a.kernel_basis();
        assert_eq!(k.rows(), 2);
        // orthogonality: a * k^T = 0
        let prod = a.mul(&k.transpose()).unwrap();
        assert!(prod.row_vecs().iter().flatten().all(|v| v.is_zero()));
        // primitivity check: a known kernel vector must be an integer combination
        // of the basis rows; test membership via rational solve
        let basis_t: Vec<Vec<BigRational>> = (0..4)
            .map(|c| {
                (0..k.rows())
                    .map(|r| BigRational::from_integer(k.at(r, c).clone()))
                    .collect()
            })
            .collect();
        // find any kernel vector by scaling a rational nullspace vector
        let arat: Vec<Vec<BigRational>> = a
            .row_vecs()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let (_, null) = solve_rational(&arat, &vec![BigRational::zero(); 2]).unwrap();
        for nv in &null {
            let lcm = nv
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            let intvec: Vec<BigRational> = nv
                .iter()
                .map(|x| x * BigRational::from_integer(lcm.clone()))
                .collect();
            let (sol, _) = solve_rational(&basis_t, &intvec).expect("member of kernel lattice");
            for s in &sol {
                assert!(s.is_integer(), "kernel basis is not primitive");
            }
        }
    }

    #[test]
    fn echelon_pivot_rule() {
        let a = m(&[&[0, 0, 0], &[-2, -1, -5], &[-4, -2, -10], &[0, 3, 1]]);
        let (rows, cols) = a.echelon_pivots();
        // row 0 skipped (zero), row 1 pivots at col 0, row 2 proportional to row 1,
        // row 3 pivots at col 1
        assert_eq!(rows, vec![1, 3]);
        assert_eq!(cols, vec![0, 1]);
        let sub = a.submatrix(&rows, &cols);
        assert!(!sub.det_fraction_free().unwrap().is_zero());
    }

    #[test]
    fn solve_underdetermined() {
        let a = vec![vec![
            BigRational::from_integer(BigInt::from(-2)),
            BigRational::from_integer(BigInt::from(-1)),
        ]];
        let b = vec![BigRational::from_integer(BigInt::from(5))];
        let (part, null) = solve_rational(&a, &b).unwrap();
        assert_eq!(null.len(), 1);
        // -2x - y = 5 must hold for the particular solution
        let lhs = &a[0][0] * &part[0] + &a[0][1] * &part[1];
        assert_eq!(lhs, b[0]);
    }
}
