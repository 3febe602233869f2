//! Small dense complex linear algebra: 2×2 matrices with an exponential,
//! and a pivoted 3×3 solve.

#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::model::C64;

/// Eigenvalue gap below which [`Mat2::exp_decomposition`] falls back to the
/// scaled Taylor series.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::zero();
        Self([[one, zero], [zero, one]])
    }

    pub fn zero() -> Self {
        Self([[C64::zero(); 2]; 2])
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = self.0;
        Self([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.0, other.0);
        Self([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.0, other.0);
        let mut out = [[C64::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Max-row-sum norm.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|r| r[0].norm() + r[1].norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = self.sub(other);
        d.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues, ordered by decreasing real part.
    pub fn eigenvalues(&self) -> [C64; 2] {
        let half_tr = self.trace() * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let (l1, l2) = (half_tr + disc, half_tr - disc);
        if l1.re >= l2.re {
            [l1, l2]
        } else {
            [l2, l1]
        }
    }

    /// Spectral decomposition used to evaluate exp(ζ·self) for many ζ.
    pub fn exp_decomposition(&self) -> ExpDecomposition {
        let [l1, l2] = self.eigenvalues();
        let gap = (l1 - l2).norm();
        if gap <= DEGENERACY_GAP * self.norm_inf().max(1.0) {
            return ExpDecomposition::Degenerate(*self);
        }
        let id = Self::identity();
        let p1 = self.sub(&id.scale(l2)).scale((l1 - l2).inv());
        let p2 = self.sub(&id.scale(l1)).scale((l2 - l1).inv());
        ExpDecomposition::Spectral {
            lambdas: [l1, l2],
            projectors: [p1, p2],
        }
    }

    /// exp(self) by scaling and squaring of a truncated Taylor series.
    pub fn exp_taylor(&self) -> Self {
        let norm = self.norm_inf();
        let mut squarings = 0u32;
        if norm > 0.5 {
            squarings = Float::ceil(Float::log2(norm / 0.5)) as u32;
        }
        let scaled = self.scale(C64::new(Float::powi(0.5, squarings as i32), 0.0));
        let mut term = Self::identity();
        let mut sum = Self::identity();
        for k in 1..=24 {
            term = term.mul(&scaled).scale(C64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.norm_inf() < 1e-18 * sum.norm_inf() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        sum
    }
}

/// exp(ζA) evaluator: spectral projectors when the eigenvalues are
/// separated, the Taylor series otherwise.
#[derive(Debug, Clone, Copy)]
pub enum ExpDecomposition {
    Spectral {
        lambdas: [C64; 2],
        projectors: [Mat2; 2],
    },
    Degenerate(Mat2),
}

impl ExpDecomposition {
    pub fn exp(&self, zeta: f64) -> Mat2 {
        match self {
            Self::Spectral { lambdas, projectors } => {
                let e1 = (lambdas[0] * zeta).exp();
                let e2 = (lambdas[1] * zeta).exp();
                projectors[0].scale(e1).add(&projectors[1].scale(e2))
            }
            Self::Degenerate(m) => m.scale(C64::new(zeta, 0.0)).exp_taylor(),
        }
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` when a pivot underflows relative to the matrix scale.
pub fn solve3(mut a: [[C64; 3]; 3], mut b: [C64; 3]) -> Option<[C64; 3]> {
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap_or(col);
        if a[pivot][col].norm() <= 1e-14 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (dst, src) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * src;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = [C64::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    // Independent route: exp(A) = e^μ [cosh(s) I + sinh(s)/s (A − μI)],
    // μ = tr/2, s² = μ² − det.
    fn exp_cosh(a: &Mat2) -> Mat2 {
        let mu = a.trace() * 0.5;
        let s = (mu * mu - a.det()).sqrt();
        let sinhc = if s.norm() < 1e-8 { c(1.0, 0.0) + s * s / 6.0 } else { s.sinh() / s };
        let shifted = a.sub(&Mat2::identity().scale(mu));
        Mat2::identity().scale(s.cosh()).add(&shifted.scale(sinhc)).scale(mu.exp())
    }

    #[test]
    fn spectral_matches_cosh_form() {
        let a = Mat2([[c(-0.3, 0.2), c(0.1, -0.4)], [c(0.25, 0.05), c(-0.02, -0.7)]]);
        let d = a.exp_decomposition();
        assert!(matches!(d, ExpDecomposition::Spectral { .. }));
        for zeta in [0.0, 0.5, 3.0, 17.0] {
            let lhs = d.exp(zeta);
            let rhs = exp_cosh(&a.scale(c(zeta, 0.0)));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12, "zeta={zeta}");
        }
    }

    #[test]
    fn degenerate_falls_back_to_taylor() {
        // Jordan block: exp(ζ[[λ,1],[0,λ]]) = e^{ζλ}[[1,ζ],[0,1]]
        let lam = c(-0.1, 0.3);
        let a = Mat2([[lam, c(1.0, 0.0)], [c(0.0, 0.0), lam]]);
        let d = a.exp_decomposition();
        assert!(matches!(d, ExpDecomposition::Degenerate(_)));
        let zeta = 4.0;
        let e = (lam * zeta).exp();
        let want = Mat2([[e, e * zeta], [c(0.0, 0.0), e]]);
        assert!(d.exp(zeta).max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn taylor_matches_cosh_form_for_large_norm() {
        let a = Mat2([[c(-3.0, 1.0), c(2.0, 0.0)], [c(-1.0, 0.5), c(0.5, -2.0)]]);
        let lhs = a.exp_taylor();
        let rhs = exp_cosh(&a);
        assert!(lhs.max_abs_diff(&rhs) < 1e-10 * rhs.norm_inf().max(1.0));
    }

    #[test]
    fn solve3_residual() {
        let a = [
            [c(0.0, 0.5), c(0.0, 0.0), c(-0.5, 16.5)],
            [c(0.0, 0.5), c(-0.5, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.5), c(0.0, 0.5)],
        ];
        let b = [c(0.0, -0.5), c(0.0, -0.5), c(0.0, 0.0)];
        let x = solve3(a, b).unwrap();
        for i in 0..3 {
            let r: C64 = (0..3).map(|k| a[i][k] * x[k]).sum::<C64>() - b[i];
            assert!(r.norm() < 1e-14);
        }
        assert!(solve3([[C64::zero(); 3]; 3], b).is_none());
    }
}
