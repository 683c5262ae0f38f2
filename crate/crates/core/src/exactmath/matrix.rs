//! Dense matrices over a [`Ring`] with exact Gaussian elimination.

use std::fmt;

use super::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    Underdetermined {
        particular: Vec<Scalar>,
        nullspace: Vec<Vec<Scalar>>,
    },
    Inconsistent,
}

impl ExactMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = ExactMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for x in row {
                if !x.belongs_to(ring) {
                    return Err(Error::MixedRings {
                        left: ring.to_string(),
                        right: x.ring().to_string(),
                    });
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Integer matrix over `ring`.
    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
            .collect();
        ExactMatrix::from_rows(ring, rows).expect("rectangular integer matrix")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(v.belongs_to(&self.ring), "scalar from a different ring");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (i / self.cols, i % self.cols, x))
    }

    pub fn transpose(&self) -> Self {
        let mut out = ExactMatrix::zeros(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    fn same_ring(&self, other: &ExactMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = ExactMatrix::zeros(&self.ring, self.rows, other.cols);
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
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &ExactMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<ExactMatrix> {
        self.same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(ExactMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Applies `f` entrywise, producing a matrix over `ring`.
    pub fn map(&self, ring: &Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<ExactMatrix> {
        let rows = self
            .rows()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut m = ExactMatrix::from_rows(ring, rows)?;
        m.cols = self.cols;
        Ok(m)
    }

    fn require_field(&self, op: &'static str) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::UnsupportedRing {
                op,
                ring: self.ring.to_string(),
            })
        }
    }

    /// Reduced row echelon form using only unit pivots. Returns the reduced
    /// matrix and the pivot columns. Over a parameter ring a column whose
    /// entries below the current row are nonzero but never constant yields
    /// [`Error::NoUnitPivot`].
    pub fn rref_unit_pivots(&self) -> Result<(ExactMatrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col).is_unit()) else {
                if (row..m.rows).any(|r| !m.get(r, col).is_zero()) {
                    return Err(Error::NoUnitPivot(col));
                }
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).checked_inv()?;
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    m.axpy_row(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    /// Reduced row echelon form over a field.
    pub fn rref(&self) -> Result<(ExactMatrix, Vec<usize>)> {
        self.require_field("row reduction")?;
        self.rref_unit_pivots()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, f: &Scalar) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            if !self.data[i].is_zero() {
                self.data[i] = &self.data[i] * f;
            }
        }
    }

    // row[r] -= f * row[src]
    fn axpy_row(&mut self, r: usize, src: usize, f: &Scalar) {
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[r * self.cols + c] - &(f * s);
            self.data[r * self.cols + c] = v;
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>> {
        let (r, pivots) = self.rref()?;
        Ok(kernel_from_rref(&r, &pivots))
    }

    /// Solves `A x = b` over a field.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution> {
        self.require_field("solve")?;
        self.solve_unit_pivots(b)
    }

    /// Solves `A x = b` using only unit pivots; works over parameter rings
    /// when every pivot can be chosen constant.
    pub fn solve_unit_pivots(&self, b: &[Scalar]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = ExactMatrix::zeros(&self.ring, self.rows, self.cols + 1);
        for (r, br) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.data[r * (self.cols + 1) + c] = self.get(r, c).clone();
            }
            if !br.belongs_to(&self.ring) {
                return Err(Error::MixedRings {
                    left: self.ring.to_string(),
                    right: br.ring().to_string(),
                });
            }
            aug.data[r * (self.cols + 1) + self.cols] = br.clone();
        }
        let (red, pivots) = match aug.rref_unit_pivots() {
            Ok(x) => x,
            Err(Error::NoUnitPivot(c)) if c == self.cols => return Ok(Solution::Inconsistent),
            Err(e) => return Err(e),
        };
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![self.ring.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        // Drop the augmented column before computing the kernel.
        let mut coef = ExactMatrix::zeros(&self.ring, red.rows, self.cols);
        for r in 0..red.rows {
            for c in 0..self.cols {
                coef.data[r * self.cols + c] = red.get(r, c).clone();
            }
        }
        let kernel = kernel_from_rref(&coef, &pivots);
        if kernel.is_empty() {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Underdetermined {
                particular: x,
                nullspace: kernel,
            })
        }
    }
}

fn kernel_from_rref(r: &ExactMatrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let free: Vec<usize> = (0..r.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![r.ring.zero(); r.cols];
            v[f] = r.ring.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            v
        })
        .collect()
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A row space built incrementally. Rows are kept with unit pivots so that
/// reducing a vector against them in insertion order is exact.
#[derive(Clone, Debug)]
pub struct RowSpace {
    ring: Ring,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(ring: &Ring, width: usize) -> Self {
        RowSpace {
            ring: ring.clone(),
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Rows in insertion order, each with a unit entry at its pivot.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after reduction by the stored rows.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Result<Vec<Scalar>> {
        if v.len() != self.width {
            return Err(Error::DimensionMismatch {
                expected: self.width,
                found: v.len(),
            });
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, s) in v.iter_mut().zip(row) {
                if !s.is_zero() {
                    *x = x.checked_sub(&f.checked_mul(s)?)?;
                }
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: Vec<Scalar>) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Scalar::is_zero))
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> Result<bool> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedRing {
                op: "row space",
                ring: self.ring.to_string(),
            });
        }
        let mut v = self.reduce(v)?;
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].checked_inv()?;
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> Ring {
        Ring::Rational
    }

    #[test]
    fn product_and_commutator() {
        let r = qq();
        let a = ExactMatrix::from_i64(&r, &[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::from_i64(&r, &[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, ExactMatrix::from_i64(&r, &[&[2, 1], &[4, 3]]));
        let ba = b.mul(&a).unwrap();
        let c = ab.sub(&ba).unwrap();
        assert_eq!(c, ExactMatrix::from_i64(&r, &[&[-1, -3], &[3, 1]]));
    }

    #[test]
    fn rank_and_kernel() {
        let r = qq();
        let m = ExactMatrix::from_i64(&r, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank().unwrap(), 2);
        let k = m.nullspace().unwrap();
        assert_eq!(k.len(), 1);
        let kv = ExactMatrix::from_rows(&r, vec![k[0].clone()]).unwrap().transpose();
        assert!(m.mul(&kv).unwrap().is_zero());
    }

    #[test]
    fn solve_cases() {
        let r = qq();
        let m = ExactMatrix::from_i64(&r, &[&[1, 1], &[1, -1]]);
        let b = vec![r.from_i64(2), r.from_i64(0)];
        assert_eq!(m.solve(&b).unwrap(), Solution::Unique(vec![r.one(), r.one()]));
        let s = ExactMatrix::from_i64(&r, &[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[r.one(), r.one()]).unwrap(), Solution::Inconsistent);
        assert!(matches!(
            s.solve(&[r.one(), r.from_i64(2)]).unwrap(),
            Solution::Underdetermined { .. }
        ));
    }

    #[test]
    fn rank_rejected_over_parameters() {
        let r = Ring::parametric(["a"]).unwrap();
        let m = ExactMatrix::from_rows(&r, vec![vec![r.param("a").unwrap()]]).unwrap();
        assert!(matches!(m.rank(), Err(Error::UnsupportedRing { .. })));
        assert_eq!(m.rref_unit_pivots(), Err(Error::NoUnitPivot(0)));
    }

    #[test]
    fn row_space_membership() {
        let r = qq();
        let mut rs = RowSpace::new(&r, 3);
        assert!(rs.insert(vec![r.from_i64(0), r.from_i64(2), r.from_i64(1)]).unwrap());
        assert!(rs.insert(vec![r.from_i64(1), r.from_i64(1), r.from_i64(0)]).unwrap());
        assert!(!rs.insert(vec![r.from_i64(2), r.from_i64(4), r.from_i64(1)]).unwrap());
        assert_eq!(rs.dim(), 2);
        assert!(!rs.contains(vec![r.one(), r.zero(), r.zero()]).unwrap());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ExactMatrix::identity(&qq(), 2);
        let b = ExactMatrix::identity(&Ring::prime(5).unwrap(), 2);
        assert!(matches!(a.mul(&b), Err(Error::MixedRings { .. })));
        assert!(matches!(
            a.mul(&ExactMatrix::identity(&qq(), 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
