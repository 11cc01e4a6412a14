//! Covariant bi-differential operators: the linear system cutting out the
//! coefficients `c_{r,t}` of
//!
//! ```text
//! D = Σ_{r+t ≤ k} c_{r,t} Δ_{xx}^r Δ_{xy}^{k−r−t} Δ_{yy}^t
//! ```
//!
//! and its exact nullspace. Covariance of `D` under the principal-series
//! actions with spectral parameters `(λ₁, λ₂)` is equivalent to the
//! vanishing, for every `r + t ≤ k`, of
//!
//! ```text
//! E¹_{r,t}: 4(r+1)(r+1+λ₁) c_{r+1,t} + 2(k−r−t)(k−r+t−1+ρ+λ₂) c_{r,t}
//!           − (k−r−t+1)(k−r−t) c_{r,t−1} = 0
//! E²_{r,t}: 4(t+1)(t+1+λ₂) c_{r,t+1} + 2(k−r−t)(k+r−t−1+ρ+λ₁) c_{r,t}
//!           − (k−r−t+1)(k−r−t) c_{r−1,t} = 0
//! ```
//!
//! where coefficients with indices outside `{r, t ≥ 0, r+t ≤ k}` are zero.
//! Away from the plane zero set (see [`crate::params::in_zk`]) the solution
//! space is one-dimensional: multiplicity one.

use crate::exact::QComplex;
use crate::params::{rho_of, ParamError};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// The assembled covariance system for one `(n, k, λ₁, λ₂)`.
#[derive(Debug, Clone)]
pub struct BidiffSystem {
    n: u32,
    k: u32,
    lambda: [QComplex; 2],
    /// Unknown order: `(r, t)` lexicographic, `r + t ≤ k`.
    unknowns: Vec<(u32, u32)>,
    /// Dense coefficient rows over the unknowns; identically-zero rows dropped.
    rows: Vec<Vec<QComplex>>,
}

/// Exact nullspace of a [`BidiffSystem`].
#[derive(Debug, Clone, PartialEq)]
pub struct NullspaceResult {
    pub nullity: usize,
    /// Basis vectors over the system's unknown order, each scaled so its
    /// first nonzero coordinate is 1.
    pub basis: Vec<Vec<QComplex>>,
}

impl BidiffSystem {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> &[QComplex; 2] {
        &self.lambda
    }

    pub fn unknowns(&self) -> &[(u32, u32)] {
        &self.unknowns
    }

    pub fn rows(&self) -> &[Vec<QComplex>] {
        &self.rows
    }

    /// Exact residual check: does `coeffs` satisfy every equation?
    pub fn is_solution(&self, coeffs: &[QComplex]) -> bool {
        assert_eq!(coeffs.len(), self.unknowns.len());
        self.rows.iter().all(|row| {
            let mut acc = QComplex::zero();
            for (c, x) in row.iter().zip(coeffs) {
                acc = acc + c * x;
            }
            acc.is_zero()
        })
    }
}

/// Assembles the covariance system for order `k` on `S^{n−1}` with spectral
/// parameters `(λ₁, λ₂)`.
pub fn build_system(
    n: u32,
    k: u32,
    lambda1: &QComplex,
    lambda2: &QComplex,
) -> Result<BidiffSystem, ParamError> {
    if n < 4 {
        return Err(ParamError::DimensionTooSmall(n));
    }
    let rho = QComplex::from_rational(rho_of(n));
    let unknowns: Vec<(u32, u32)> = (0..=k)
        .flat_map(|r| (0..=(k - r)).map(move |t| (r, t)))
        .collect();
    let col = |r: i64, t: i64| -> Option<usize> {
        if r < 0 || t < 0 || r + t > i64::from(k) {
            return None;
        }
        unknowns.iter().position(|&(ur, ut)| i64::from(ur) == r && i64::from(ut) == t)
    };
    let int = QComplex::from_int;

    let mut rows = Vec::new();
    let mut push_row = |entries: Vec<(Option<usize>, QComplex)>| {
        let mut row = vec![QComplex::zero(); unknowns.len()];
        for (idx, coeff) in entries {
            if let Some(i) = idx {
                row[i] = &row[i] + &coeff;
            }
        }
        if row.iter().any(|c| !c.is_zero()) {
            rows.push(row);
        }
    };

    for &(r, t) in &unknowns {
        let (r, t, k) = (i64::from(r), i64::from(t), i64::from(k));
        let gap = k - r - t;
        // E¹_{r,t}
        push_row(vec![
            (col(r + 1, t), int(4 * (r + 1)) * (int(r + 1) + lambda1.clone())),
            (
                col(r, t),
                int(2 * gap) * (&(&int(k - r + t - 1) + &rho) + lambda2),
            ),
            (col(r, t - 1), int(-(gap + 1) * gap)),
        ]);
        // E²_{r,t}
        push_row(vec![
            (col(r, t + 1), int(4 * (t + 1)) * (int(t + 1) + lambda2.clone())),
            (
                col(r, t),
                int(2 * gap) * (&(&int(k + r - t - 1) + &rho) + lambda1),
            ),
            (col(r - 1, t), int(-(gap + 1) * gap)),
        ]);
    }

    Ok(BidiffSystem {
        n,
        k,
        lambda: [lambda1.clone(), lambda2.clone()],
        unknowns,
        rows,
    })
}

/// Exact nullspace by Gaussian elimination over the complex rationals.
pub fn nullspace(sys: &BidiffSystem) -> NullspaceResult {
    let cols = sys.unknowns.len();
    let mut m: Vec<Vec<QComplex>> = sys.rows.clone();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;

    for c in 0..cols {
        let Some(src) = (pivot_row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = m[pivot_row][c].recip();
        for x in &mut m[pivot_row] {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != pivot_row && !m[r][c].is_zero() {
                let factor = m[r][c].clone();
                for j in 0..cols {
                    let sub = &factor * &m[pivot_row][j];
                    m[r][j] = &m[r][j] - &sub;
                }
            }
        }
        pivot_cols.push(c);
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut v = vec![QComplex::zero(); cols];
        v[f] = QComplex::one();
        for (pi, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[pi][f].clone();
        }
        // Scale so the first nonzero coordinate (in unknown order) is 1.
        if let Some(first) = v.iter().position(|c| !c.is_zero()) {
            let inv = v[first].recip();
            for x in &mut v {
                *x = &*x * &inv;
            }
        }
        basis.push(v);
    }
    NullspaceResult { nullity: basis.len(), basis }
}

/// Floating nullity via singular values: rank counts `σ > σ_max · dim · 1e−12`.
///
/// Always agrees with [`nullspace`] on exact input; exposed so that the two
/// routes can be compared in verification.
pub fn float_nullity(sys: &BidiffSystem) -> usize {
    let cols = sys.unknowns.len();
    if sys.rows.is_empty() {
        return cols;
    }
    let m = DMatrix::from_fn(sys.rows.len(), cols, |r, c| {
        let (re, im) = sys.rows[r][c].to_f64_parts();
        Complex64::new(re, im)
    });
    let dim = sys.rows.len().max(cols) as f64;
    let svals = m.singular_values();
    let sigma_max = svals.iter().cloned().fold(0.0f64, f64::max);
    let threshold = sigma_max * dim * 1e-12;
    let rank = svals.iter().filter(|&&s| s > threshold).count();
    cols - rank
}
