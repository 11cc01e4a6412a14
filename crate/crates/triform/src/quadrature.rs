//! Seeded Monte Carlo quadrature for the kernel integrals, against the
//! uniform probability measure on `S^{n−1} × S^{n−1} × S^{n−1}`.
//!
//! Estimates are deterministic functions of `(parameters, samples, seed)`:
//! samples are drawn from per-chunk ChaCha8 streams (`set_stream(i)` on a
//! fixed 65 536-sample chunk grid) and the partial sums are reduced in chunk
//! order, so the result is bit-identical regardless of how many worker
//! threads Rayon uses.
//!
//! The estimates use the *probability* measure; the closed forms elsewhere
//! in this crate carry their own normalization of the surface measure. The
//! two are proportional, with a constant depending only on `n` — observed
//! for `n = 4` to be the closed-form value at `α = 0`, i.e. 1.327743785…
//! Ratio tests therefore compare `closed_form(α) / estimate(α)` across
//! several `α` rather than pinning an absolute constant.

use crate::exact::{rat, rational_to_f64};
use crate::geometry::{at_action, kappa_at, sample_sphere, SpherePoint};
use crate::params::ParamPoint;
use crate::trilinear::MultiIndex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Fixed chunk size of the deterministic parallel reduction.
const CHUNK: u64 = 1 << 16;

/// Triples with a pairwise chordal distance below this are redrawn; the
/// integrand is singular (or numerically wild) on collapsed configurations.
const COINCIDENCE_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadratureError {
    /// The integrand is not absolutely integrable: some effective exponent
    /// `α_j + 2a_j` is ≤ −(n−1), or their sum is ≤ −2(n−1).
    #[error("kernel integral diverges: {0}")]
    DivergentRegion(String),
    /// Monte Carlo needs real exponents and weights.
    #[error("parameters must be real for Monte Carlo estimation")]
    NotReal,
}

/// A Monte Carlo mean with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Paired invariance test: the same sample stream evaluated against the
/// plain integrand (`lhs`) and the conformally transformed one (`rhs`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceEstimate {
    pub lhs: McEstimate,
    pub rhs: McEstimate,
    /// `|lhs − rhs|` in units of the combined standard error (0 when equal).
    pub zscore: f64,
}

fn real_alpha(p: &ParamPoint) -> Result<[f64; 3], QuadratureError> {
    let alpha = p.alpha();
    if alpha.iter().any(|a| !a.is_real()) {
        return Err(QuadratureError::NotReal);
    }
    Ok([
        rational_to_f64(&alpha[0].re),
        rational_to_f64(&alpha[1].re),
        rational_to_f64(&alpha[2].re),
    ])
}

/// Checks absolute convergence of the integrand with effective exponents
/// `e_j = α_j + 2a_j`, exactly.
fn check_convergence(p: &ParamPoint, a: &MultiIndex) -> Result<(), QuadratureError> {
    let n1 = rat(i64::from(p.n()) - 1, 1);
    let mut sum = rat(0, 1);
    for (j, (alpha, aj)) in p.alpha().iter().zip(a.as_array()).enumerate() {
        let e = &alpha.re + rat(2 * i64::from(aj), 1);
        if e <= -&n1 {
            return Err(QuadratureError::DivergentRegion(format!(
                "effective exponent e_{} = {} is <= -(n-1) = {}",
                j + 1,
                e,
                -&n1
            )));
        }
        sum += e;
    }
    let bound = -(&n1 * rat(2, 1));
    if sum <= bound {
        return Err(QuadratureError::DivergentRegion(format!(
            "effective exponent sum {sum} is <= -2(n-1) = {bound}"
        )));
    }
    Ok(())
}

/// Draws a triple of independent uniform points, redrawing near-coincident
/// configurations, and returns the three pairwise distances
/// `(|x−y|, |y−z|, |z−x|)` together with the points.
fn sample_triple(
    n: usize,
    rng: &mut ChaCha8Rng,
) -> (SpherePoint, SpherePoint, SpherePoint, [f64; 3]) {
    loop {
        let x = sample_sphere(n, rng);
        let y = sample_sphere(n, rng);
        let z = sample_sphere(n, rng);
        let d = [x.dist(&y), y.dist(&z), z.dist(&x)];
        if d.iter().all(|&v| v > COINCIDENCE_CUTOFF) {
            return (x, y, z, d);
        }
    }
}

/// Deterministic chunked map–reduce over the sample index space: `f` maps a
/// chunk's RNG and sample count to partial accumulators, summed in chunk order.
fn chunked_sums<const W: usize, F>(samples: u64, seed: u64, f: F) -> [f64; W]
where
    F: Fn(&mut ChaCha8Rng, u64) -> [f64; W] + Sync,
{
    assert!(samples >= 1_000, "need at least 1000 Monte Carlo samples");
    let chunks = samples.div_ceil(CHUNK);
    let partials: Vec<[f64; W]> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let count = CHUNK.min(samples - i * CHUNK);
            f(&mut rng, count)
        })
        .collect();
    let mut total = [0.0; W];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}

fn estimate_from(sum: f64, sumsq: f64, samples: u64, seed: u64) -> McEstimate {
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sumsq / n) - mean * mean).max(0.0) * n / (n - 1.0);
    McEstimate { estimate: mean, std_error: (var / n).sqrt(), samples, seed }
}

/// Monte Carlo estimate of the kernel integral against the basis function
/// `p_a`, i.e. the mean of `|x−y|^{α₃+2a₃} |y−z|^{α₁+2a₁} |z−x|^{α₂+2a₂}`
/// over uniform independent triples.
///
/// Requires real `α` and at least 1000 samples; errors when the integrand
/// is not absolutely integrable.
pub fn mc_kernel(
    p: &ParamPoint,
    a: &MultiIndex,
    samples: u64,
    seed: u64,
) -> Result<McEstimate, QuadratureError> {
    let alpha = real_alpha(p)?;
    check_convergence(p, a)?;
    let n = p.n() as usize;
    let [a1, a2, a3] = a.as_array();
    // Pairings: |x−y| carries (α₃, a₃), |y−z| carries (α₁, a₁), |z−x| (α₂, a₂).
    let exps = [
        alpha[2] + 2.0 * f64::from(a3),
        alpha[0] + 2.0 * f64::from(a1),
        alpha[1] + 2.0 * f64::from(a2),
    ];
    let [sum, sumsq] = chunked_sums(samples, seed, |rng, count| {
        let mut acc = [0.0; 2];
        for _ in 0..count {
            let (_, _, _, d) = sample_triple(n, rng);
            let v = d[0].powf(exps[0]) * d[1].powf(exps[1]) * d[2].powf(exps[2]);
            acc[0] += v;
            acc[1] += v * v;
        }
        acc
    });
    Ok(estimate_from(sum, sumsq, samples, seed))
}

/// Paired Monte Carlo test of conformal invariance at flow time `t`, using
/// the spectral weights of `p` itself. See [`mc_invariance_weighted`].
pub fn mc_invariance(
    p: &ParamPoint,
    a: &MultiIndex,
    t: f64,
    samples: u64,
    seed: u64,
) -> Result<InvarianceEstimate, QuadratureError> {
    let lambda = p.lambda();
    if lambda.iter().any(|l| !l.is_real()) {
        return Err(QuadratureError::NotReal);
    }
    let weights = [
        rational_to_f64(&lambda[0].re),
        rational_to_f64(&lambda[1].re),
        rational_to_f64(&lambda[2].re),
    ];
    mc_invariance_weighted(p, weights, a, t, samples, seed)
}

/// Paired Monte Carlo comparison of the kernel integral of `p_a` (`lhs`)
/// with the integral of its image under the principal-series action at flow
/// time `t`, built from the supplied spectral weights (`rhs`).
///
/// When `weights` equals the spectral parameter of `p`, both integrals agree
/// exactly and the z-score stays at noise level; mismatched weights break the
/// covariance and push the z-score up. The two estimates share one sample
/// stream, so `t = 0` gives `lhs == rhs` bit-for-bit and z-score 0.
pub fn mc_invariance_weighted(
    p: &ParamPoint,
    weights: [f64; 3],
    a: &MultiIndex,
    t: f64,
    samples: u64,
    seed: u64,
) -> Result<InvarianceEstimate, QuadratureError> {
    let alpha = real_alpha(p)?;
    check_convergence(p, a)?;
    let n = p.n() as usize;
    let rho = f64::from(p.n() - 1) / 2.0;
    let [a1, a2, a3] = a.as_array();
    let kernel_exps = [alpha[2], alpha[0], alpha[1]];
    let basis_exps = [2 * a3, 2 * a1, 2 * a2];
    let weight_exps = [weights[0] + rho, weights[1] + rho, weights[2] + rho];

    let [sum_l, sumsq_l, sum_r, sumsq_r] = chunked_sums(samples, seed, |rng, count| {
        let mut acc = [0.0; 4];
        for _ in 0..count {
            let (x, y, z, d) = sample_triple(n, rng);
            let w = d[0].powf(kernel_exps[0])
                * d[1].powf(kernel_exps[1])
                * d[2].powf(kernel_exps[2]);
            let f_plain = d[0].powi(basis_exps[0] as i32)
                * d[1].powi(basis_exps[1] as i32)
                * d[2].powi(basis_exps[2] as i32);

            let (xb, yb, zb) = (at_action(-t, &x), at_action(-t, &y), at_action(-t, &z));
            let f_moved = xb.dist(&yb).powi(basis_exps[0] as i32)
                * yb.dist(&zb).powi(basis_exps[1] as i32)
                * zb.dist(&xb).powi(basis_exps[2] as i32);
            let kappas = kappa_at(-t, &x).powf(weight_exps[0])
                * kappa_at(-t, &y).powf(weight_exps[1])
                * kappa_at(-t, &z).powf(weight_exps[2]);

            let lhs = w * f_plain;
            let rhs = w * kappas * f_moved;
            acc[0] += lhs;
            acc[1] += lhs * lhs;
            acc[2] += rhs;
            acc[3] += rhs * rhs;
        }
        acc
    });
    let lhs = estimate_from(sum_l, sumsq_l, samples, seed);
    let rhs = estimate_from(sum_r, sumsq_r, samples, seed);
    let diff = (lhs.estimate - rhs.estimate).abs();
    let denom = (lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error).sqrt();
    let zscore = if diff == 0.0 { 0.0 } else { diff / denom };
    Ok(InvarianceEstimate { lhs, rhs, zscore })
}
