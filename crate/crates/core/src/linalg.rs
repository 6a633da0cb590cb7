//! Dense matrices over Q(ζ_N).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{CycNum, CycPoly};
use crate::error::{Error, Result};
use crate::poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMat {
    order: usize,
    rows: usize,
    cols: usize,
    entries: Vec<CycNum>,
}

impl ExactMat {
    pub fn from_rows(order: usize, rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::DimensionMismatch("matrices must have positive dimensions".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<CycNum> = rows.into_iter().flatten().collect();
        if let Some(e) = entries.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch { left: order, right: e.order() });
        }
        Ok(ExactMat { order, rows: r, cols: c, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(order: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            order,
            rows.iter()
                .map(|r| r.iter().map(|&v| CycNum::from_int(order, v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(order: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNum) -> Self {
        assert!(rows > 0 && cols > 0, "matrices must have positive dimensions");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.order(), order, "entry order mismatch");
                entries.push(e);
            }
        }
        ExactMat { order, rows, cols, entries }
    }

    pub fn zeros(order: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(order, rows, cols, |_, _| CycNum::zero(order))
    }

    pub fn identity(order: usize, n: usize) -> Self {
        Self::from_fn(order, n, n, |i, j| if i == j { CycNum::one(order) } else { CycNum::zero(order) })
    }

    pub fn diagonal(order: usize, diag: &[CycNum]) -> Self {
        let n = diag.len();
        Self::from_fn(order, n, n, |i, j| if i == j { diag[i].clone() } else { CycNum::zero(order) })
    }

    /// Column vector.
    pub fn column(order: usize, v: &[CycNum]) -> Self {
        Self::from_fn(order, v.len(), 1, |i, _| v[i].clone())
    }

    /// Row vector.
    pub fn row_vector(order: usize, v: &[CycNum]) -> Self {
        Self::from_fn(order, 1, v.len(), |_, j| v[j].clone())
    }

    pub fn order(&self) -> usize {
        self.order
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

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        assert_eq!(v.order(), self.order, "entry order mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycNum::is_zero)
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(self.with_entries(entries))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(self.with_entries(entries))
    }

    fn with_entries(&self, entries: Vec<CycNum>) -> Self {
        ExactMat { order: self.order, rows: self.rows, cols: self.cols, entries }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.with_entries(self.entries.iter().map(|e| -e).collect())
    }

    pub fn scale(&self, c: &CycNum) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.try_mul(c)).collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.with_entries(self.entries.iter().map(|e| e.scale(c)).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<CycNum> {
        self.require_square("trace")?;
        Ok((0..self.rows).fold(CycNum::zero(self.order), |acc, i| &acc + self.get(i, i)))
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("{what} needs a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    /// `1 - self` for a square matrix.
    pub fn one_minus(&self) -> Result<Self> {
        self.require_square("one_minus")?;
        Self::identity(self.order, self.rows).try_sub(self)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        self.require_square("pow")?;
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::identity(self.order, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Row echelon form by Gaussian elimination, pivoting on the first non-zero
    /// entry of each column. Returns the reduced matrix and its pivot columns.
    fn echelon(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.entries.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).inv().expect("pivot is non-zero");
            for i in (r + 1)..a.rows {
                let f = a.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let f = f * &inv;
                for j in c..a.cols {
                    let v = a.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let upd = a.get(i, j) - &(&f * v);
                    a.entries[i * a.cols + j] = upd;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.order, n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(Error::SingularMatrix)?;
            if p != c {
                for j in 0..n {
                    a.entries.swap(p * n + j, c * n + j);
                    inv.entries.swap(p * n + j, c * n + j);
                }
            }
            let piv_inv = a.get(c, c).inv()?;
            for j in 0..n {
                a.entries[c * n + j] = a.get(c, j) * &piv_inv;
                inv.entries[c * n + j] = inv.get(c, j) * &piv_inv;
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let av = a.get(c, j);
                    if !av.is_zero() {
                        a.entries[i * n + j] = a.get(i, j) - &(&f * av);
                    }
                    let iv = inv.get(c, j);
                    if !iv.is_zero() {
                        inv.entries[i * n + j] = inv.get(i, j) - &(&f * iv);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial `det(X - A)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<CycPoly> {
        self.require_square("char_poly")?;
        let n = self.rows;
        let order = self.order;
        let mut coeffs = vec![CycNum::zero(order); n + 1];
        coeffs[n] = CycNum::one(order);
        let mut m = Self::zeros(order, n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            m = self.try_mul(&m)?;
            for i in 0..n {
                let idx = i * n + i;
                m.entries[idx] = &m.entries[idx] + &coeffs[n - k + 1];
            }
            let t = self.try_mul(&m)?.trace()?;
            coeffs[n - k] = -&t.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        CycPoly::new(order, coeffs)
    }

    pub fn det(&self) -> Result<CycNum> {
        let n = self.rows;
        let p = self.char_poly()?;
        let c0 = p.coeff(0);
        Ok(if n % 2 == 0 { c0 } else { -c0 })
    }

    /// True when every entry strictly below the diagonal vanishes.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Block placement: writes `block` with its top-left corner at (r, c).
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) -> Result<()> {
        if block.order != self.order {
            return Err(Error::OrderMismatch { left: self.order, right: block.order });
        }
        if r + block.rows > self.rows || c + block.cols > self.cols {
            return Err(Error::DimensionMismatch("block does not fit".into()));
        }
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r + i) * self.cols + c + j] = block.get(i, j).clone();
            }
        }
        Ok(())
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(self.order, rows, cols, |i, j| self.get(r + i, c + j).clone())
    }

    /// Body of a LaTeX `pmatrix` environment, rows separated by `\\`.
    pub fn to_latex_body(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(CycNum::to_latex).collect::<Vec<_>>().join(" & "))
            .collect::<Vec<_>>()
            .join(" \\\\\n")
    }

    pub fn to_latex(&self) -> String {
        format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}", self.to_latex_body())
    }
}

impl fmt::Display for ExactMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        let width: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(1))
            .collect();
        for (i, row) in cells.iter().enumerate() {
            f.write_str("[ ")?;
            for (j, cell) in row.iter().enumerate() {
                let pad = width[j] - cell.chars().count();
                write!(f, "{}{cell}", " ".repeat(pad))?;
                if j + 1 < row.len() {
                    f.write_str("  ")?;
                }
            }
            f.write_str(" ]")?;
            if i + 1 < cells.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExactMatRepr {
    order: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<CycNum>>,
}

impl Serialize for ExactMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExactMatRepr { order: self.order, rows: self.rows, cols: self.cols, entries: self.to_rows() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ExactMatRepr::deserialize(deserializer)?;
        let m = ExactMat::from_rows(repr.order, repr.entries).map_err(D::Error::custom)?;
        if m.rows != repr.rows || m.cols != repr.cols {
            return Err(D::Error::custom("declared dimensions do not match entries"));
        }
        Ok(m)
    }
}

/// `a - s·I`.
pub fn minus_scalar(a: &ExactMat, s: &CycNum) -> Result<ExactMat> {
    let id = ExactMat::identity(a.order(), a.rows()).scale(s)?;
    a.try_sub(&id)
}
