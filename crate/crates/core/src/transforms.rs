//! Search-space transformations shared by the base functions.

use crate::constants::{GRAM_SCHMIDT_PIVOT_MIN, OSZ_AMPLITUDE, OSZ_NEGATIVE, OSZ_POSITIVE, PENALTY_BOUND};
use crate::error::{Error, Result};
use crate::rng::gaussian_stream;

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Matrix { dim, data }
    }

    pub fn from_rows(dim: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), dim * dim, "matrix data must hold dim * dim entries");
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.apply_into(x, &mut out);
        out
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut data = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.get(k, j);
                }
            }
        }
        Matrix { dim: d, data }
    }

    /// `self * diag(scales)`, i.e. column `j` multiplied by `scales[j]`.
    pub fn scale_columns(&self, scales: &[f64]) -> Matrix {
        let d = self.dim;
        let mut data = self.data.clone();
        for i in 0..d {
            for j in 0..d {
                data[i * d + j] *= scales[j];
            }
        }
        Matrix { dim: d, data }
    }

    /// `diag(scales) * self`, i.e. row `i` multiplied by `scales[i]`.
    pub fn scale_rows(&self, scales: &[f64]) -> Matrix {
        let d = self.dim;
        let mut data = self.data.clone();
        for i in 0..d {
            for j in 0..d {
                data[i * d + j] *= scales[i];
            }
        }
        Matrix { dim: d, data }
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim;
        let mut data = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.get(i, j);
            }
        }
        Matrix { dim: d, data }
    }

    /// FNV-1a over the little-endian bytes of every entry.
    pub fn checksum(&self) -> u64 {
        fnv1a(&self.data)
    }
}

/// FNV-1a over the little-endian bytes of a slice of doubles.
pub fn fnv1a(values: &[f64]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in values {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Orthogonal matrix drawn from a seeded Gaussian fill.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationMatrix(Matrix);

impl RotationMatrix {
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.0.apply(x)
    }

    pub fn checksum(&self) -> u64 {
        self.0.checksum()
    }
}

/// Draws a `dim x dim` rotation.
///
/// The matrix is filled row-major from `gaussian_stream(seed, dim * dim)` and
/// its rows are orthonormalized with modified Gram-Schmidt (each row is swept
/// twice against the already accepted rows, which keeps orthogonality at
/// machine precision for `dim` up to a few hundred). If any pivot norm drops
/// below 1e-12 the draw is discarded and repeated with `seed + 1`.
pub fn random_rotation(seed: u64, dim: usize) -> Result<RotationMatrix> {
    if dim == 0 {
        return Err(Error::InvalidDimension(dim));
    }
    let mut seed = seed;
    loop {
        if let Some(m) = gram_schmidt(gaussian_stream(seed, dim * dim), dim) {
            return Ok(RotationMatrix(m));
        }
        seed = seed.wrapping_add(1);
    }
}

fn gram_schmidt(mut data: Vec<f64>, dim: usize) -> Option<Matrix> {
    for i in 0..dim {
        let (done, rest) = data.split_at_mut(i * dim);
        let row = &mut rest[..dim];
        for _pass in 0..2 {
            for j in 0..i {
                let q = &done[j * dim..(j + 1) * dim];
                let proj: f64 = row.iter().zip(q).map(|(a, b)| a * b).sum();
                for (r, qv) in row.iter_mut().zip(q) {
                    *r -= proj * qv;
                }
            }
        }
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < GRAM_SCHMIDT_PIVOT_MIN {
            return None;
        }
        row.iter_mut().for_each(|v| *v /= norm);
    }
    Some(Matrix { dim, data })
}

/// Diagonal `Lambda(alpha)` with entries `alpha^((i-1) / (2(D-1)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalScaling {
    alpha: f64,
    entries: Vec<f64>,
}

impl DiagonalScaling {
    pub fn new(alpha: f64, dim: usize) -> Self {
        assert!(alpha > 0.0, "condition parameter must be positive");
        let entries = (0..dim)
            .map(|i| alpha.powf(0.5 * index_fraction(i, dim)))
            .collect();
        DiagonalScaling { alpha, entries }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.entries).map(|(a, b)| a * b).collect()
    }
}

/// `(i - 1) / (D - 1)` for one-based `i`; zero when `D = 1`.
#[inline]
pub fn index_fraction(i: usize, dim: usize) -> f64 {
    if dim <= 1 {
        0.0
    } else {
        i as f64 / (dim - 1) as f64
    }
}

/// Scalar oscillation nonlinearity.
pub fn t_osz_scalar(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let xhat = x.abs().ln();
    let (c1, c2) = if x > 0.0 { OSZ_POSITIVE } else { OSZ_NEGATIVE };
    x.signum() * (xhat + OSZ_AMPLITUDE * ((c1 * xhat).sin() + (c2 * xhat).sin())).exp()
}

pub fn t_osz(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| t_osz_scalar(x)).collect()
}

/// Asymmetry operator: positive coordinates are raised to
/// `1 + beta * (i-1)/(D-1) * sqrt(x_i)`, the rest pass through.
pub fn t_asy(v: &[f64], beta: f64) -> Vec<f64> {
    let d = v.len();
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            if x > 0.0 {
                x.powf(1.0 + beta * index_fraction(i, d) * x.sqrt())
            } else {
                x
            }
        })
        .collect()
}

/// `sum_i max(0, |x_i| - 5)^2`.
pub fn boundary_penalty(x: &[f64]) -> f64 {
    x.iter()
        .map(|&v| {
            let excess = v.abs() - PENALTY_BOUND;
            if excess > 0.0 {
                excess * excess
            } else {
                0.0
            }
        })
        .sum()
}

pub fn boundary_penalty_gradient(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            let excess = v.abs() - PENALTY_BOUND;
            if excess > 0.0 {
                2.0 * excess * v.signum()
            } else {
                0.0
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{uniform_stream, SeededStream};

    fn max_orthogonality_error(r: &RotationMatrix) -> f64 {
        let m = r.matrix();
        let prod = m.matmul(&m.transpose());
        let d = m.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod.get(i, j) - target).abs());
            }
        }
        worst
    }

    #[test]
    fn rotation_rejects_zero_dimension() {
        assert!(matches!(random_rotation(1, 0), Err(Error::InvalidDimension(0))));
    }

    #[test]
    fn one_dimensional_rotation_is_sign() {
        for seed in 0..20 {
            let r = random_rotation(seed, 1).unwrap();
            assert_eq!(r.matrix().get(0, 0).abs(), 1.0);
        }
    }

    #[test]
    fn rotations_are_orthogonal_isometries() {
        for seed in 0..100u64 {
            for &d in &[2usize, 5, 20] {
                let r = random_rotation(seed, d).unwrap();
                assert!(max_orthogonality_error(&r) < 1e-10);
                let x: Vec<f64> = uniform_stream(seed ^ 0xABCD, d).iter().map(|u| 10.0 * u - 5.0).collect();
                let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let ny = r.apply(&x).iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!((nx - ny).abs() < 1e-10);
            }
        }
        let r = random_rotation(3, 10).unwrap();
        assert!(max_orthogonality_error(&r) < 1e-10);
    }

    #[test]
    fn rotation_is_deterministic() {
        assert_eq!(random_rotation(11, 7).unwrap(), random_rotation(11, 7).unwrap());
        assert_ne!(random_rotation(11, 7).unwrap(), random_rotation(12, 7).unwrap());
    }

    #[test]
    fn degenerate_draw_is_rejected() {
        // Two identical rows collapse the second pivot.
        let data = vec![1.0, 2.0, 1.0, 2.0];
        assert!(gram_schmidt(data, 2).is_none());
    }

    #[test]
    fn diagonal_scaling_entries() {
        let s = DiagonalScaling::new(1e6, 4);
        let e = s.entries();
        assert_eq!(e[0], 1.0);
        assert!((e[3] * e[3] / (e[0] * e[0]) - 1e6).abs() < 1e-6);
        assert!(DiagonalScaling::new(1.0, 5).entries().iter().all(|&v| v == 1.0));
        assert_eq!(DiagonalScaling::new(10.0, 1).entries(), &[1.0]);
    }

    // Independent scalar reimplementation written directly from the formula.
    fn osz_reference(x: f64) -> f64 {
        if x > 0.0 {
            let l = x.ln();
            (l + 0.049 * ((10.0 * l).sin() + (7.9 * l).sin())).exp()
        } else if x < 0.0 {
            let l = (-x).ln();
            -(l + 0.049 * ((5.5 * l).sin() + (3.1 * l).sin())).exp()
        } else {
            0.0
        }
    }

    #[test]
    fn t_osz_values() {
        assert_eq!(t_osz(&[0.0]), vec![0.0]);
        let v = t_osz_scalar(2.0);
        assert_eq!(v, osz_reference(2.0));
        // evaluated independently in double precision
        assert!((v - 1.988_409_243_192_105).abs() < 1e-12, "{v}");
        assert_eq!(t_osz_scalar(-3.5), osz_reference(-3.5));
    }

    #[test]
    fn t_osz_sign_and_monotonicity() {
        let mut s = SeededStream::new(77);
        for _ in 0..1000 {
            let x = s.uniform_in(-50.0, 50.0);
            assert_eq!(t_osz_scalar(x).signum(), x.signum());
            let a = s.uniform_in(-10.0, 10.0);
            let b = s.uniform_in(-10.0, 10.0);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            assert!(t_osz_scalar(lo) <= t_osz_scalar(hi));
        }
    }

    #[test]
    fn t_asy_cases() {
        let v = vec![-1.0, 0.3, 2.0, -4.0];
        assert_eq!(t_asy(&v, 0.0), v);
        let out = t_asy(&v, 0.5);
        assert_eq!(out[0], -1.0);
        assert_eq!(out[3], -4.0);
        assert_eq!(t_asy(&[1.0, 1.0, 1.0], 0.5), vec![1.0, 1.0, 1.0]);
        // first coordinate always has exponent 1
        assert_eq!(t_asy(&[2.0, 2.0], 0.5)[0], 2.0);
        let expected = 2.0f64.powf(1.0 + 0.5 * 2.0f64.sqrt());
        assert_eq!(t_asy(&[2.0, 2.0], 0.5)[1], expected);
    }

    #[test]
    fn boundary_penalty_cases() {
        assert_eq!(boundary_penalty(&[5.0, -5.0, 0.0, 3.2]), 0.0);
        assert_eq!(boundary_penalty(&[6.0, 0.0, 0.0]), 1.0);
        assert_eq!(boundary_penalty(&[-7.0, 6.0]), 5.0);
    }

    #[test]
    fn boundary_penalty_gradient_matches_finite_differences() {
        let mut s = SeededStream::new(5);
        let h = 1e-6;
        for _ in 0..200 {
            let x: Vec<f64> = (0..4).map(|_| s.uniform_in(-9.0, 9.0)).collect();
            if x.iter().any(|v| (v.abs() - 5.0).abs() < 1e-3) {
                continue;
            }
            let g = boundary_penalty_gradient(&x);
            for i in 0..x.len() {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[i] += h;
                xm[i] -= h;
                let fd = (boundary_penalty(&xp) - boundary_penalty(&xm)) / (2.0 * h);
                let scale = g[i].abs().max(1.0);
                assert!((fd - g[i]).abs() / scale < 1e-6, "{fd} vs {}", g[i]);
            }
        }
    }
}
