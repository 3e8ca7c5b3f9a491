use std::fmt;

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::{format_rational, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += xi * a;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// Kronecker product with `(A ⊗ B)[(i,j),(l,m)] = A[i,l] B[j,m]`.
    pub fn kronecker(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.rows {
                    for m in 0..o.cols {
                        let b = o.get(j, m);
                        if !b.is_zero() {
                            out.set(i * o.rows + j, l * o.cols + m, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into position `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut b = RowBasis::new(self.cols);
        for i in 0..self.rows {
            b.insert(self.row(i).to_vec());
        }
        b.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -rref.get(r, f).clone();
                }
                x
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = Rational::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.put_block(0, 0, self);
        aug.put_block(0, n, &Matrix::identity(n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(zI - M)` via reduction to Hessenberg form.
    pub fn char_poly(&self) -> Polynomial {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else { continue };
            if p != c + 1 {
                h.swap_rows(p, c + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + c + 1);
                }
            }
            let inv = Rational::one() / h.get(c + 1, c).clone();
            for i in c + 2..n {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let f = h.get(i, c) * &inv;
                for j in 0..n {
                    let v = h.get(i, j) - &f * h.get(c + 1, j);
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, c + 1) + &f * h.get(r, i);
                    h.set(r, c + 1, v);
                }
            }
        }
        let z = Polynomial::from_i64(&[0, 1]);
        let mut ps: Vec<Polynomial> = vec![Polynomial::one()];
        for m in 0..n {
            let mut next = &(&z - &Polynomial::constant(h.get(m, m).clone())) * &ps[m];
            let mut prod = Rational::one();
            for i in (0..m).rev() {
                prod *= h.get(i + 1, i);
                if prod.is_zero() {
                    break;
                }
                let c = h.get(i, m) * &prod;
                if !c.is_zero() {
                    next = &next - &ps[i].scale(&c);
                }
            }
            ps.push(next);
        }
        ps.pop().unwrap()
    }

    /// `p(M)` by Horner's scheme.
    pub fn eval_poly(&self, p: &Polynomial) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::identity(n).scale(c));
        }
        acc
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally built basis of a row space. Keeps the inserted vectors and an echelon
/// form that tracks how each echelon row combines them, so coordinates can be recovered.
#[derive(Clone, Debug)]
pub struct RowBasis {
    dim: usize,
    vectors: Vec<Vec<Rational>>,
    echelon: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
}

impl RowBasis {
    pub fn new(dim: usize) -> Self {
        RowBasis { dim, vectors: Vec::new(), echelon: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// Reduces `v` against the echelon rows; returns the residue and the combination of
    /// inserted vectors that was subtracted.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = v.to_vec();
        let mut combo = vec![Rational::zero(); self.vectors.len()];
        for (p, row, tr) in &self.echelon {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (c, t) in combo.iter_mut().zip(tr) {
                if !t.is_zero() {
                    *c += &f * t;
                }
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Inserts `v` if it is independent of the current span; returns whether it was added.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let (r, combo) = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = Rational::one() / r[p].clone();
        let row: Vec<Rational> = r.iter().map(|x| x * &inv).collect();
        let mut tr: Vec<Rational> = combo.iter().map(|c| -c * &inv).collect();
        tr.push(inv.clone());
        for (_, _, t) in self.echelon.iter_mut() {
            t.push(Rational::zero());
        }
        self.vectors.push(v);
        self.echelon.push((p, row, tr));
        true
    }

    /// Coordinates of `v` with respect to the inserted vectors, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (r, combo) = self.reduce(v);
        r.iter().all(|x| x.is_zero()).then_some(combo)
    }

    /// Matrix whose rows are the inserted vectors.
    pub fn to_matrix(&self) -> Matrix {
        if self.vectors.is_empty() {
            return Matrix::zeros(0, self.dim);
        }
        Matrix::from_rows(self.vectors.clone())
    }
}
