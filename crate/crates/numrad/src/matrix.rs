//! Dense complex matrices and 2x2 block carriers.
//!
//! Everything is row-major `Complex64` storage. Matrices are immutable
//! values once built; all operations return fresh matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from a row-major entry vector. Panics on length mismatch;
    /// use [`ComplexMatrix::from_json`] for fallible construction from input data.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Square matrix from row-major real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        Self::diag(
            &entries
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    /// Column vector from complex entries.
    pub fn col_vector(entries: &[Complex64]) -> Self {
        Self::new(entries.len(), 1, entries.to_vec())
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

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> ComplexMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance to the nearest Hermitian matrix times 2, i.e. ||M - M*||_F.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)].conj();
                s += d.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Matrix product.
    pub fn matmul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "inner dimensions must agree for matmul"
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product with a plain slice, writing into `out`.
    pub(crate) fn matvec_into(&self, x: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(out.len(), self.rows);
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (a, b) in row.iter().zip(x.iter()) {
                acc += a * b;
            }
            out[i] = acc;
        }
    }

    /// Hermitian part (M + M*)/2 and skew part (M - M*)/(2i); M = re + i*im.
    pub fn cartesian(&self) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let n = self.ensure_square()?;
        let mut re = ComplexMatrix::zeros(n, n);
        let mut im = ComplexMatrix::zeros(n, n);
        let half = Complex64::new(0.5, 0.0);
        let mhalf_i = Complex64::new(0.0, -0.5);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                let b = self[(j, i)].conj();
                re[(i, j)] = (a + b) * half;
                im[(i, j)] = (a - b) * mhalf_i;
            }
        }
        Ok((re, im))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>12.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// JSON wire form: `{"rows": n, "cols": m, "data": [[re, im], ...]}` row-major.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<Vec<f64>>,
}

impl ComplexMatrix {
    pub fn from_json(text: &str) -> Result<ComplexMatrix> {
        let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            message: format!("matrix json: {e}"),
        })?;
        if raw.rows == 0 || raw.cols == 0 {
            return Err(Error::Parse {
                message: format!("matrix dimensions must be >= 1, got {}x{}", raw.rows, raw.cols),
            });
        }
        let expected = raw.rows * raw.cols;
        if raw.data.len() != expected {
            return Err(Error::Parse {
                message: format!(
                    "matrix data has {} entries, expected rows*cols = {} (mismatch at index {})",
                    raw.data.len(),
                    expected,
                    raw.data.len().min(expected)
                ),
            });
        }
        let mut data = Vec::with_capacity(expected);
        for (idx, pair) in raw.data.iter().enumerate() {
            if pair.len() != 2 {
                return Err(Error::Parse {
                    message: format!(
                        "matrix data entry at index {idx} has {} components, expected [re, im]",
                        pair.len()
                    ),
                });
            }
            data.push(Complex64::new(pair[0], pair[1]));
        }
        Ok(ComplexMatrix::new(raw.rows, raw.cols, data))
    }

    pub fn to_json(&self) -> String {
        let raw = MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| vec![z.re, z.im]).collect(),
        };
        serde_json::to_string(&raw).expect("matrix json serialization")
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| vec![z.re, z.im]).collect(),
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let text = serde_json::to_string(&raw).map_err(D::Error::custom);
        ComplexMatrix::from_json(&text?).map_err(D::Error::custom)
    }
}

/// Four equal-size square blocks `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Serialize)]
pub struct BlockMatrix2x2 {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub d: ComplexMatrix,
}

impl BlockMatrix2x2 {
    pub fn new(
        a: ComplexMatrix,
        b: ComplexMatrix,
        c: ComplexMatrix,
        d: ComplexMatrix,
    ) -> Result<Self> {
        let n = a.ensure_square()?;
        for (name, m) in [("b", &b), ("c", &c), ("d", &d)] {
            m.ensure_square()?;
            if m.rows() != n {
                return Err(Error::DimensionMismatch {
                    context: format!(
                        "block {name} is {}x{} but block a is {n}x{n}",
                        m.rows(),
                        m.cols()
                    ),
                });
            }
        }
        Ok(Self { a, b, c, d })
    }

    pub fn block_dim(&self) -> usize {
        self.a.rows()
    }

    /// All four blocks set to the same matrix.
    pub fn splat(m: ComplexMatrix) -> Result<Self> {
        Self::new(m.clone(), m.clone(), m.clone(), m)
    }

    /// Split a 2n x 2n matrix into its four n x n blocks.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        let dim = m.ensure_square()?;
        if dim % 2 != 0 {
            return Err(Error::DimensionMismatch {
                context: format!("cannot split a {dim}x{dim} matrix into 2x2 blocks"),
            });
        }
        let n = dim / 2;
        let mut blocks = [
            ComplexMatrix::zeros(n, n),
            ComplexMatrix::zeros(n, n),
            ComplexMatrix::zeros(n, n),
            ComplexMatrix::zeros(n, n),
        ];
        for i in 0..n {
            for j in 0..n {
                blocks[0][(i, j)] = m[(i, j)];
                blocks[1][(i, j)] = m[(i, j + n)];
                blocks[2][(i, j)] = m[(i + n, j)];
                blocks[3][(i, j)] = m[(i + n, j + n)];
            }
        }
        let [a, b, c, d] = blocks;
        Self::new(a, b, c, d)
    }

    /// The full 2n x 2n matrix `[[a, b], [c, d]]`.
    pub fn embed(&self) -> ComplexMatrix {
        let n = self.block_dim();
        let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.a[(i, j)];
                out[(i, j + n)] = self.b[(i, j)];
                out[(i + n, j)] = self.c[(i, j)];
                out[(i + n, j + n)] = self.d[(i, j)];
            }
        }
        out
    }

    /// Diagonal part `[[a, 0], [0, d]]`.
    pub fn diag_part(&self) -> BlockMatrix2x2 {
        let n = self.block_dim();
        BlockMatrix2x2 {
            a: self.a.clone(),
            b: ComplexMatrix::zeros(n, n),
            c: ComplexMatrix::zeros(n, n),
            d: self.d.clone(),
        }
    }

    /// Off-diagonal part `[[0, b], [c, 0]]`.
    pub fn offdiag_part(&self) -> BlockMatrix2x2 {
        let n = self.block_dim();
        BlockMatrix2x2 {
            a: ComplexMatrix::zeros(n, n),
            b: self.b.clone(),
            c: self.c.clone(),
            d: ComplexMatrix::zeros(n, n),
        }
    }
}

/// Embed four blocks as a single 2n x 2n matrix.
pub fn block_embed(blocks: &BlockMatrix2x2) -> ComplexMatrix {
    blocks.embed()
}

/// Off-diagonal embed `[[0, b], [c, 0]]` of two square blocks of equal size.
pub fn offdiag_embed(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = b.ensure_square()?;
    c.ensure_square()?;
    if c.rows() != n {
        return Err(Error::DimensionMismatch {
            context: format!("blocks are {}x{} and {}x{}", n, n, c.rows(), c.cols()),
        });
    }
    let z = ComplexMatrix::zeros(n, n);
    Ok(BlockMatrix2x2::new(z.clone(), b.clone(), c.clone(), z)?.embed())
}

/// Diagonal embed `[[a, 0], [0, d]]` of two square blocks of equal size.
pub fn diag_embed(a: &ComplexMatrix, d: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    d.ensure_square()?;
    if d.rows() != n {
        return Err(Error::DimensionMismatch {
            context: format!("blocks are {}x{} and {}x{}", n, n, d.rows(), d.cols()),
        });
    }
    let z = ComplexMatrix::zeros(n, n);
    Ok(BlockMatrix2x2::new(a.clone(), z.clone(), z, d.clone())?.embed())
}

/// Conjugate transpose as a free function.
pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_conjugates_1x1() {
        let m = ComplexMatrix::new(1, 1, vec![c(0.0, 1.0)]);
        assert_eq!(m.adjoint()[(0, 0)], c(0.0, -1.0));
    }

    #[test]
    fn adjoint_transposes_real() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let a = m.adjoint();
        assert_eq!(a[(0, 0)], c(0.0, 0.0));
        assert_eq!(a[(1, 0)], c(1.0, 0.0));
        assert_eq!(a[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn adjoint_is_involution() {
        let m = ComplexMatrix::new(
            2,
            3,
            vec![
                c(1.0, 2.0),
                c(-0.5, 0.25),
                c(0.0, -3.0),
                c(4.0, 4.0),
                c(0.1, 0.2),
                c(-1.0, 1.0),
            ],
        );
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn cartesian_of_hermitian_has_zero_skew() {
        let h = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let (re, im) = h.cartesian().unwrap();
        assert!((&re - &h).frobenius_norm() < 1e-15);
        assert!(im.frobenius_norm() < 1e-15);
    }

    #[test]
    fn cartesian_of_nilpotent() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let (re, im) = m.cartesian().unwrap();
        assert_eq!(re[(0, 1)], c(0.5, 0.0));
        assert_eq!(re[(1, 0)], c(0.5, 0.0));
        assert_eq!(im[(0, 1)], c(0.0, -0.5));
        assert_eq!(im[(1, 0)], c(0.0, 0.5));
    }

    #[test]
    fn cartesian_of_i_times_hermitian() {
        let h = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(-3.0, 0.0)]);
        let ih = h.scale(c(0.0, 1.0));
        let (re, im) = ih.cartesian().unwrap();
        assert!(re.frobenius_norm() < 1e-15);
        assert!((&im - &h).frobenius_norm() < 1e-15);
    }

    #[test]
    fn cartesian_reassembles() {
        let m = ComplexMatrix::new(
            3,
            3,
            (0..9)
                .map(|k| c(0.3 * k as f64 - 1.0, 0.7 * (k as f64).sin()))
                .collect(),
        );
        let (re, im) = m.cartesian().unwrap();
        let back = &re + &im.scale(c(0.0, 1.0));
        assert!((&back - &m).frobenius_norm() <= 1e-15 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn block_embed_of_ones() {
        let one = ComplexMatrix::from_real(1, 1, &[1.0]);
        let blocks = BlockMatrix2x2::splat(one).unwrap();
        let y = blocks.embed();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(y[(i, j)], c(1.0, 0.0));
            }
        }
    }

    #[test]
    fn diag_part_is_projection() {
        let blocks = BlockMatrix2x2::new(
            ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]),
            ComplexMatrix::from_real(2, 2, &[5.0, 6.0, 7.0, 8.0]),
            ComplexMatrix::from_real(2, 2, &[9.0, 10.0, 11.0, 12.0]),
            ComplexMatrix::from_real(2, 2, &[13.0, 14.0, 15.0, 16.0]),
        )
        .unwrap();
        let via_part = blocks.diag_part().embed();
        let via_embed = diag_embed(&blocks.a, &blocks.d).unwrap();
        assert_eq!(via_part, via_embed);
    }

    #[test]
    fn parts_sum_to_full_embed() {
        let blocks = BlockMatrix2x2::new(
            ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]),
            ComplexMatrix::from_real(2, 2, &[5.0, 6.0, 7.0, 8.0]),
            ComplexMatrix::from_real(2, 2, &[9.0, 10.0, 11.0, 12.0]),
            ComplexMatrix::from_real(2, 2, &[13.0, 14.0, 15.0, 16.0]),
        )
        .unwrap();
        let sum = &blocks.diag_part().embed() + &blocks.offdiag_part().embed();
        assert_eq!(sum, blocks.embed());
    }

    #[test]
    fn block_roundtrip_through_split() {
        let blocks = BlockMatrix2x2::new(
            ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]),
            ComplexMatrix::from_real(2, 2, &[5.0, 6.0, 7.0, 8.0]),
            ComplexMatrix::from_real(2, 2, &[9.0, 10.0, 11.0, 12.0]),
            ComplexMatrix::from_real(2, 2, &[13.0, 14.0, 15.0, 16.0]),
        )
        .unwrap();
        let back = BlockMatrix2x2::from_matrix(&blocks.embed()).unwrap();
        assert_eq!(back.a, blocks.a);
        assert_eq!(back.b, blocks.b);
        assert_eq!(back.c, blocks.c);
        assert_eq!(back.d, blocks.d);
    }

    #[test]
    fn json_roundtrip() {
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, -2.0), c(0.5, 0.0), c(0.0, 3.0), c(-1.0, 1.0)]);
        let back = ComplexMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_length_mismatch_naming_index() {
        let bad = r#"{"rows": 2, "cols": 3, "data": [[1.0, 0.0], [2.0, 0.0]]}"#;
        let err = ComplexMatrix::from_json(bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("index 2"), "message was: {msg}");
    }

    #[test]
    fn json_rejects_bad_pair_naming_index() {
        let bad = r#"{"rows": 1, "cols": 2, "data": [[1.0, 0.0], [2.0]]}"#;
        let err = ComplexMatrix::from_json(bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("index 1"), "message was: {msg}");
    }
}
