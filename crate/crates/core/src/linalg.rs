//! Exact dense matrices: elimination, characteristic and minimal
//! polynomials, companion matrices, direct sums and similarity.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx};
use crate::poly::Poly;

#[derive(Clone)]
pub struct Matrix<F: Field = FieldCtx> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]", self)
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    /// Rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.field.render(self.get(r, c)))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// The matrix unit with a one at (`r`, `c`), zero-based.
    pub fn unit(field: F, n: usize, r: usize, c: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        m.data[r * n + c] = m.field.one();
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_fn(
        field: F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_ints(field: F, rows: &[&[i64]]) -> Self {
        let rs = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, rs).expect("well-formed integer matrix")
    }

    /// A column vector.
    pub fn column(field: F, entries: Vec<F::Elem>) -> Self {
        let rows = entries.len();
        Matrix {
            field,
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn diag(field: F, entries: Vec<F::Elem>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
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

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare)
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(self.field.clone(), n);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<F::Elem> {
        let n = self.require_square()?;
        Ok((0..n).fold(self.field.zero(), |acc, i| {
            self.field.add(&acc, self.get(i, i))
        }))
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen as the
    /// first nonzero entry in row order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).unwrap();
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b` (free variables set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve_linear(&self, b: &Self) -> Result<Option<Self>> {
        if b.cols != 1 || b.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side must be {}x1, got {}x{}",
                self.rows, b.rows, b.cols
            )));
        }
        if self.field != b.field {
            return Err(Error::ContextMismatch);
        }
        let f = &self.field;
        let aug = Matrix::from_fn(f.clone(), self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b.get(r, 0).clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.cols).clone();
        }
        Ok(Some(Matrix::column(f.clone(), x)))
    }

    /// Inverse by Gauss–Jordan; `None` if singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        let n = self.require_square()?;
        let f = &self.field;
        let aug = Matrix::from_fn(f.clone(), n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                f.one()
            } else {
                f.zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(f.clone(), n, n, |r, c| {
            red.get(r, c + n).clone()
        })))
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<F::Elem> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !f.is_zero(m.get(r, col))) else {
                return Ok(f.zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = f.neg(&det);
            }
            let pivot = m.get(col, col).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(tI - A)` by Berkowitz's division-free
    /// recurrence over leading principal submatrices.
    pub fn charpoly(&self) -> Result<Poly<F>> {
        let n = self.require_square()?;
        let f = &self.field;
        // Coefficients from the highest degree down: [1, c_{r-1}, ..., c_0].
        let mut p: Vec<F::Elem> = vec![f.one()];
        for r in 0..n {
            // Vector [1, -a_rr, -R C, -R A_r C, ..., -R A_r^{r-1} C].
            let mut v = Vec::with_capacity(r + 2);
            v.push(f.one());
            v.push(f.neg(self.get(r, r)));
            let mut col: Vec<F::Elem> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rc = (0..r).fold(f.zero(), |acc, j| {
                    f.add(&acc, &f.mul(self.get(r, j), &col[j]))
                });
                v.push(f.neg(&rc));
                col = (0..r)
                    .map(|i| {
                        (0..r).fold(f.zero(), |acc, j| {
                            f.add(&acc, &f.mul(self.get(i, j), &col[j]))
                        })
                    })
                    .collect();
            }
            // Lower-triangular Toeplitz product with the previous vector.
            let next: Vec<F::Elem> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(f.zero(), |acc, j| {
                        if i - j < v.len() {
                            f.add(&acc, &f.mul(&v[i - j], &p[j]))
                        } else {
                            acc
                        }
                    })
                })
                .collect();
            p = next;
        }
        p.reverse();
        Ok(Poly::new(f.clone(), p))
    }

    /// Minimal polynomial: the first linear dependence among the vectorized
    /// powers `I, A, A^2, ...`.
    pub fn minpoly(&self) -> Result<Poly<F>> {
        let n = self.require_square()?;
        let mut relation = Krylov::new(self.field.clone(), n * n);
        let mut power = Matrix::identity(self.field.clone(), n);
        loop {
            if let Some(p) = relation.push(power.data.clone()) {
                return Ok(p);
            }
            power = power.checked_mul(self)?;
        }
    }

    /// Evaluates a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, p: &Poly<F>) -> Result<Self> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut acc = Matrix::zeros(f.clone(), n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.checked_mul(self)?;
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Minimal and characteristic polynomials coincide.
    pub fn is_nonderogatory(&self) -> Result<bool> {
        let n = self.require_square()?;
        Ok(self.minpoly()?.degree() == Some(n))
    }

    /// Frobenius companion matrix of a monic polynomial: ones on the
    /// subdiagonal, last column `(-a_0, ..., -a_{n-1})`.
    pub fn companion(p: &Poly<F>) -> Result<Self> {
        let n = p.degree().ok_or(Error::ZeroPolynomial)?;
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        if n == 0 {
            return Err(Error::InvalidInput("companion matrix of a constant".into()));
        }
        let f = p.field().clone();
        let mut m = Matrix::zeros(f.clone(), n, n);
        for i in 0..n - 1 {
            m.set(i + 1, i, f.one());
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(&p.coeff(i)));
        }
        Ok(m)
    }

    /// Block-diagonal matrix `A_1 ⊕ ... ⊕ A_t`.
    pub fn direct_sum(blocks: &[Self]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::InvalidInput("no blocks".into()))?;
        if blocks.iter().any(|b| b.field != first.field) {
            return Err(Error::ContextMismatch);
        }
        if blocks.iter().any(|b| !b.is_square()) {
            return Err(Error::NotSquare);
        }
        let total: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(first.field.clone(), total, total);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(off + r, off + c, b.get(r, c).clone());
                }
            }
            off += b.rows;
        }
        Ok(m)
    }

    /// Krylov matrix `[v, Av, ..., A^{n-1} v]` for a column vector `v`.
    fn krylov_matrix(&self, v: &[F::Elem]) -> Self {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        let mut cur = Matrix::column(self.field.clone(), v.to_vec());
        for _ in 0..n {
            cols.push(cur.data.clone());
            cur = self.checked_mul(&cur).unwrap();
        }
        Matrix::from_fn(self.field.clone(), n, n, |r, c| cols[c][r].clone())
    }

    /// A vector whose Krylov matrix is invertible, if one is found among
    /// unit vectors, sums of two unit vectors and `(1, c, c^2, ...)`.
    fn cyclic_vector(&self) -> Option<Self> {
        let n = self.rows;
        let f = &self.field;
        let unit = |i: usize| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        };
        let mut candidates: Vec<Vec<F::Elem>> = (0..n).map(unit).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = unit(i);
                v[j] = f.one();
                candidates.push(v);
            }
        }
        for c in 2..(2 * n as i64 + 4) {
            let c = f.from_int(c);
            let mut v = Vec::with_capacity(n);
            let mut x = f.one();
            for _ in 0..n {
                v.push(x.clone());
                x = f.mul(&x, &c);
            }
            candidates.push(v);
        }
        candidates.push(vec![f.one(); n]);
        candidates.into_iter().find_map(|v| {
            let k = self.krylov_matrix(&v);
            (k.rank() == n).then_some(k)
        })
    }

    /// Finds `P` with `A = P^{-1} B P` when `B` is nonderogatory.
    ///
    /// Returns `Ok(None)` if the two matrices are not similar. Fails with
    /// `NotNonderogatory` when `B` is derogatory.
    pub fn similarity_transform(a: &Self, b: &Self) -> Result<Option<Self>> {
        let n = a.require_square()?;
        if b.require_square()? != n {
            return Err(Error::ShapeMismatch(format!(
                "{n}x{n} vs {}x{}",
                b.rows, b.cols
            )));
        }
        if a.field != b.field {
            return Err(Error::ContextMismatch);
        }
        if !b.is_nonderogatory()? {
            return Err(Error::NotNonderogatory);
        }
        let chi = b.charpoly()?;
        if a.charpoly()? != chi || a.minpoly()? != chi {
            return Ok(None);
        }
        // Both are similar to the companion matrix of chi through their
        // Krylov bases: K_A^{-1} A K_A = C = K_B^{-1} B K_B.
        let (Some(ka), Some(kb)) = (a.cyclic_vector(), b.cyclic_vector()) else {
            return Err(Error::SearchExhausted { tried: 0 });
        };
        let ka_inv = ka.inverse()?.expect("Krylov basis is invertible");
        Ok(Some(kb.checked_mul(&ka_inv)?))
    }
}

impl Matrix<FieldCtx> {
    pub fn ctx(&self) -> FieldCtx {
        *self.field()
    }

    /// Parses the `0,-1;1,0` text format.
    pub fn parse(ctx: FieldCtx, text: &str) -> Result<Self> {
        let rows: Result<Vec<Vec<_>>> = text
            .split(';')
            .map(|row| row.split(',').map(|e| ctx.parse(e)).collect())
            .collect();
        Matrix::from_rows(ctx, rows?)
    }
}

/// Incremental search for the first linear dependence among a sequence of
/// vectors `v_0, v_1, ...`. Each pushed vector is reduced against the echelon
/// form of its predecessors while tracking the combination that produced it.
pub struct Krylov<F: Field> {
    field: F,
    dim: usize,
    // (pivot, reduced vector with 1 at pivot, combination of the v_i)
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
    count: usize,
}

impl<F: Field> Krylov<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Krylov {
            field,
            dim,
            rows: Vec::new(),
            count: 0,
        }
    }

    /// Number of vectors pushed so far.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Pushes `v_k`. Returns the monic relation `t^k - sum c_i t^i` once
    /// `v_k = sum_{i<k} c_i v_i`.
    pub fn push(&mut self, v: Vec<F::Elem>) -> Option<Poly<F>> {
        assert_eq!(v.len(), self.dim);
        let f = &self.field;
        let k = self.count;
        self.count += 1;
        let mut w = v;
        let mut combo = vec![f.zero(); k + 1];
        combo[k] = f.one();
        for (pivot, row, rc) in &self.rows {
            let c = w[*pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                if !f.is_zero(ri) {
                    *wi = f.sub(wi, &f.mul(&c, ri));
                }
            }
            for (ci, ri) in combo.iter_mut().zip(rc) {
                if !f.is_zero(ri) {
                    *ci = f.sub(ci, &f.mul(&c, ri));
                }
            }
        }
        match w.iter().position(|x| !f.is_zero(x)) {
            None => Some(Poly::new(f.clone(), combo)),
            Some(p) => {
                let inv = f.inv(&w[p]).unwrap();
                let w = w.iter().map(|x| f.mul(x, &inv)).collect();
                let combo = combo.iter().map(|x| f.mul(x, &inv)).collect();
                self.rows.push((p, w, combo));
                None
            }
        }
    }
}
