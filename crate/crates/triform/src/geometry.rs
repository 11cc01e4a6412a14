//! The sphere `S^{n−1} ⊂ ℝⁿ`, a one-parameter group of conformal
//! diffeomorphisms, their conformal factors, orbit classification of triples
//! under the diagonal action, and uniform sampling.
//!
//! The flow moves points along the first coordinate axis:
//!
//! ```text
//! a_t(x) = ( (sinh t + x₁ cosh t) / D,  x₂ / D, …, xₙ / D ),
//! D = cosh t + x₁ sinh t,    κ(t, x) = 1 / D,
//! ```
//!
//! with the covariance `|a_t x − a_t y| = √(κ(t,x) κ(t,y)) |x − y|` that makes
//! the kernel integrals conformally invariant. The poles `±e₁` are fixed,
//! with `κ(t, e₁) = e^{−t}` and `κ(t, −e₁) = e^{t}`.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

/// Tolerance for accepting caller-supplied coordinates as "on the sphere".
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// Default coincidence tolerance for [`orbit_of`].
pub const ORBIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("coordinates have norm {0}, not within {UNIT_NORM_TOL} of 1")]
    NotUnit(f64),
    #[error("cannot normalize a (near-)zero vector")]
    Degenerate,
    #[error("ambient dimension {0} is too small; need at least 2")]
    AmbientTooSmall(usize),
}

/// A point of `S^{n−1}`, stored as its `n` ambient coordinates (unit norm).
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Wraps coordinates that are already unit length (within
    /// [`UNIT_NORM_TOL`]), re-normalizing the stored copy exactly.
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::AmbientTooSmall(coords.len()));
        }
        let norm = norm(&coords);
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(GeometryError::NotUnit(norm));
        }
        Ok(Self::normalized(coords, norm))
    }

    /// Projects an arbitrary nonzero vector to the sphere.
    pub fn from_unnormalized(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::AmbientTooSmall(coords.len()));
        }
        let norm = norm(&coords);
        if !(norm > 1e-12) {
            return Err(GeometryError::Degenerate);
        }
        Ok(Self::normalized(coords, norm))
    }

    fn normalized(mut coords: Vec<f64>, norm: f64) -> Self {
        for c in &mut coords {
            *c /= norm;
        }
        SpherePoint { coords }
    }

    /// First pole `e₁ = (1, 0, …, 0)` of the flow.
    pub fn pole(n: usize) -> Self {
        assert!(n >= 2);
        let mut coords = vec![0.0; n];
        coords[0] = 1.0;
        SpherePoint { coords }
    }

    /// Ambient dimension `n` (the sphere itself is `S^{n−1}`).
    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Euclidean (chordal) distance in the ambient space.
    pub fn dist(&self, other: &SpherePoint) -> f64 {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// The conformal flow at time `t` applied to `x`.
pub fn at_action(t: f64, x: &SpherePoint) -> SpherePoint {
    let (cosh, sinh) = (t.cosh(), t.sinh());
    let d = cosh + x.coords[0] * sinh;
    let mut coords = Vec::with_capacity(x.coords.len());
    coords.push((sinh + x.coords[0] * cosh) / d);
    coords.extend(x.coords[1..].iter().map(|c| c / d));
    // The image is on the sphere exactly in real arithmetic; renormalize to
    // absorb the ~1e-16 floating drift.
    let n = norm(&coords);
    SpherePoint::normalized(coords, n)
}

/// Conformal factor `κ(t, x) = (cosh t + x₁ sinh t)^{−1}` of the flow;
/// strictly positive, with `d/dt κ(t,x)|_{t=0} = −x₁`.
pub fn kappa_at(t: f64, x: &SpherePoint) -> f64 {
    1.0 / (t.cosh() + x.coords[0] * t.sinh())
}

/// Diagonal-action orbit of a triple of sphere points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitId {
    /// All three points distinct: the open orbit.
    Distinct,
    /// `y = z ≠ x`.
    YzEqual,
    /// `z = x ≠ y`.
    ZxEqual,
    /// `x = y ≠ z`.
    XyEqual,
    /// Total collapse `x = y = z`.
    AllEqual,
}

/// Classifies `(x, y, z)` by which arguments coincide, where coincidence
/// means chordal distance below `tol` (use [`ORBIT_TOL`] by default).
///
/// If two of the three distances are below `tol` the three points are within
/// `2·tol` of each other and the triple is classified as [`OrbitId::AllEqual`].
pub fn orbit_of(x: &SpherePoint, y: &SpherePoint, z: &SpherePoint, tol: f64) -> OrbitId {
    let close = [y.dist(z) < tol, z.dist(x) < tol, x.dist(y) < tol];
    match close.iter().filter(|&&c| c).count() {
        0 => OrbitId::Distinct,
        1 if close[0] => OrbitId::YzEqual,
        1 if close[1] => OrbitId::ZxEqual,
        1 => OrbitId::XyEqual,
        _ => OrbitId::AllEqual,
    }
}

/// Uniform sample from `S^{n−1}`: a standard Gaussian vector, normalized.
pub fn sample_sphere<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpherePoint {
    assert!(n >= 2, "sphere needs ambient dimension at least 2");
    loop {
        let coords: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let len = norm(&coords);
        if len > 1e-12 {
            return SpherePoint::normalized(coords, len);
        }
    }
}

/// An orthogonal transformation of the ambient space.
#[derive(Debug, Clone)]
pub struct Rotation {
    matrix: DMatrix<f64>,
}

impl Rotation {
    pub fn ambient_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, x: &SpherePoint) -> SpherePoint {
        let v = nalgebra::DVector::from_column_slice(x.coords());
        let w = &self.matrix * v;
        let coords: Vec<f64> = w.iter().copied().collect();
        let n = norm(&coords);
        SpherePoint::normalized(coords, n)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Haar-distributed random rotation: QR of a Gaussian matrix with the sign
/// of the `R` diagonal folded into `Q`.
pub fn random_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Rotation {
    assert!(n >= 2);
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r_diag: Vec<f64> = (0..n).map(|i| qr.r()[(i, i)]).collect();
    let mut q = qr.q();
    for (j, d) in r_diag.iter().enumerate() {
        if *d < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    Rotation { matrix: q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn constructors_validate() {
        assert!(SpherePoint::new(vec![1.0, 0.0, 0.0, 0.0]).is_ok());
        assert!(matches!(
            SpherePoint::new(vec![1.0, 1.0]),
            Err(GeometryError::NotUnit(_))
        ));
        assert!(matches!(
            SpherePoint::new(vec![1.0]),
            Err(GeometryError::AmbientTooSmall(1))
        ));
        assert!(matches!(
            SpherePoint::from_unnormalized(vec![0.0, 0.0, 0.0]),
            Err(GeometryError::Degenerate)
        ));
        let p = SpherePoint::from_unnormalized(vec![3.0, 4.0]).unwrap();
        assert!((p.coords()[0] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn poles_are_fixed_with_exponential_factor() {
        for n in [2usize, 4, 7] {
            let plus = SpherePoint::pole(n);
            let minus = SpherePoint::from_unnormalized(
                std::iter::once(-1.0).chain(std::iter::repeat(0.0)).take(n).collect(),
            )
            .unwrap();
            for t in [-1.3, 0.0, 0.4, 2.0] {
                assert!(at_action(t, &plus).dist(&plus) < 1e-15);
                assert!(at_action(t, &minus).dist(&minus) < 1e-15);
                assert!((kappa_at(t, &plus) - (-t).exp()).abs() < 1e-14 * (-t).exp());
                assert!((kappa_at(t, &minus) - t.exp()).abs() < 1e-14 * t.exp());
            }
        }
    }

    #[test]
    fn flow_is_a_one_parameter_group() {
        let mut r = rng(7);
        for _ in 0..50 {
            let x = sample_sphere(4, &mut r);
            let (s, t) = (r.random_range(-1.5..1.5), r.random_range(-1.5..1.5));
            let composed = at_action(s, &at_action(t, &x));
            let direct = at_action(s + t, &x);
            assert!(composed.dist(&direct) < 1e-12);
            // Cocycle of the conformal factor under composition.
            let lhs = kappa_at(s + t, &x);
            let rhs = kappa_at(s, &at_action(t, &x)) * kappa_at(t, &x);
            assert!((lhs - rhs).abs() < 1e-12 * lhs.abs());
            // Inverse flow really inverts.
            assert!(at_action(-t, &at_action(t, &x)).dist(&x) < 1e-12);
        }
    }

    #[test]
    fn distance_covariance_spot_check() {
        let mut r = rng(11);
        for _ in 0..200 {
            let x = sample_sphere(5, &mut r);
            let y = sample_sphere(5, &mut r);
            let t = r.random_range(-2.0..2.0);
            let lhs = at_action(t, &x).dist(&at_action(t, &y));
            let rhs = (kappa_at(t, &x) * kappa_at(t, &y)).sqrt() * x.dist(&y);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn conformal_factor_derivative_at_zero() {
        let mut r = rng(13);
        let h = 1e-5;
        for _ in 0..100 {
            let x = sample_sphere(4, &mut r);
            let fd = (kappa_at(h, &x) - kappa_at(-h, &x)) / (2.0 * h);
            assert!((fd + x.coords()[0]).abs() < 1e-8);
        }
    }

    #[test]
    fn orbit_classification() {
        let mut r = rng(17);
        let x = sample_sphere(4, &mut r);
        let y = sample_sphere(4, &mut r);
        let z = sample_sphere(4, &mut r);
        assert_eq!(orbit_of(&x, &y, &z, ORBIT_TOL), OrbitId::Distinct);
        assert_eq!(orbit_of(&x, &y, &y, ORBIT_TOL), OrbitId::YzEqual);
        assert_eq!(orbit_of(&x, &y, &x, ORBIT_TOL), OrbitId::ZxEqual);
        assert_eq!(orbit_of(&x, &x, &z, ORBIT_TOL), OrbitId::XyEqual);
        assert_eq!(orbit_of(&x, &x, &x, ORBIT_TOL), OrbitId::AllEqual);
        // A loose tolerance merges nearby points.
        assert_eq!(orbit_of(&x, &y, &z, 3.0), OrbitId::AllEqual);
    }

    #[test]
    fn sampling_is_uniform_in_the_first_coordinate() {
        // On S³ the first coordinate has density ∝ (1−u²)^{1/2}, with CDF
        // F(u) = 1/2 + (u√(1−u²) + asin u)/π. Kolmogorov–Smirnov at the 1%
        // level with a fixed seed.
        let n_samples = 100_000;
        let mut r = rng(23);
        let mut firsts: Vec<f64> = (0..n_samples)
            .map(|_| sample_sphere(4, &mut r).coords()[0])
            .collect();
        firsts.sort_by(f64::total_cmp);
        let cdf = |u: f64| 0.5 + (u * (1.0 - u * u).sqrt() + u.asin()) / std::f64::consts::PI;
        let mut ks: f64 = 0.0;
        for (i, u) in firsts.iter().enumerate() {
            let f = cdf(*u);
            ks = ks
                .max((f - i as f64 / n_samples as f64).abs())
                .max(((i + 1) as f64 / n_samples as f64 - f).abs());
        }
        let critical = 1.628 / (n_samples as f64).sqrt();
        assert!(ks < critical, "KS statistic {ks} exceeds 1% critical value {critical}");
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let a = sample_sphere(6, &mut rng(99));
        let b = sample_sphere(6, &mut rng(99));
        assert_eq!(a.coords(), b.coords());
        let c = sample_sphere(6, &mut rng(100));
        assert!(a.dist(&c) > 1e-3);
    }

    #[test]
    fn rotations_are_orthogonal_isometries() {
        let mut r = rng(31);
        let rot = random_rotation(5, &mut r);
        let qtq = rot.matrix().transpose() * rot.matrix();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((qtq[(i, j)] - expected).abs() < 1e-12);
            }
        }
        let x = sample_sphere(5, &mut r);
        let y = sample_sphere(5, &mut r);
        assert!((rot.apply(&x).dist(&rot.apply(&y)) - x.dist(&y)).abs() < 1e-12);
    }
}
