//! Parameter space of the trilinear form: the spectral chart `λ ∈ ℂ³`, the
//! geometric chart `α ∈ ℂ³`, pole-plane classification, and exact membership
//! in the zero set of the normalized form.
//!
//! The two charts are related by the exact affine bijection
//!
//! ```text
//! α₁ = −ρ − λ₁ + λ₂ + λ₃          λ₁ = ρ + (α₂ + α₃)/2
//! α₂ = −ρ + λ₁ − λ₂ + λ₃          λ₂ = ρ + (α₃ + α₁)/2
//! α₃ = −ρ + λ₁ + λ₂ − λ₃          λ₃ = ρ + (α₁ + α₂)/2
//! ```
//!
//! with `ρ = (n−1)/2`. A [`ParamPoint`] stores both charts and keeps them
//! consistent; all membership tests below are decided in exact arithmetic.

use crate::exact::{progression_index, rat, QComplex, Rational};
use num_traits::{Signed, Zero};
use std::fmt;

/// Errors from parameter-space constructors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    /// The theory needs `n ≥ 4` (sphere dimension `n−1 ≥ 3`).
    #[error("dimension parameter n = {0} is too small; need n >= 4")]
    DimensionTooSmall(u32),
}

/// A point of the parameter space in both charts, for a fixed sphere `S^{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    n: u32,
    lambda: [QComplex; 3],
    alpha: [QComplex; 3],
}

impl ParamPoint {
    /// Builds a point from the spectral chart.
    pub fn from_lambda(n: u32, lambda: [QComplex; 3]) -> Result<Self, ParamError> {
        if n < 4 {
            return Err(ParamError::DimensionTooSmall(n));
        }
        let rho = QComplex::from_rational(rho_of(n));
        let [l1, l2, l3] = &lambda;
        let alpha = [
            &(&(l2 + l3) - l1) - &rho,
            &(&(l1 + l3) - l2) - &rho,
            &(&(l1 + l2) - l3) - &rho,
        ];
        Ok(ParamPoint { n, lambda, alpha })
    }

    /// Builds a point from the geometric chart.
    pub fn from_alpha(n: u32, alpha: [QComplex; 3]) -> Result<Self, ParamError> {
        if n < 4 {
            return Err(ParamError::DimensionTooSmall(n));
        }
        let rho = QComplex::from_rational(rho_of(n));
        let half = QComplex::from_rational(rat(1, 2));
        let [a1, a2, a3] = &alpha;
        let lambda = [
            &rho + &(&half * &(a2 + a3)),
            &rho + &(&half * &(a3 + a1)),
            &rho + &(&half * &(a1 + a2)),
        ];
        Ok(ParamPoint { n, lambda, alpha })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `ρ = (n−1)/2`.
    pub fn rho(&self) -> Rational {
        rho_of(self.n)
    }

    pub fn lambda(&self) -> &[QComplex; 3] {
        &self.lambda
    }

    pub fn alpha(&self) -> &[QComplex; 3] {
        &self.alpha
    }

    pub fn sum_alpha(&self) -> QComplex {
        &(&self.alpha[0] + &self.alpha[1]) + &self.alpha[2]
    }

    pub fn sum_lambda(&self) -> QComplex {
        &(&self.lambda[0] + &self.lambda[1]) + &self.lambda[2]
    }
}

/// `ρ = (n−1)/2` as an exact rational.
pub fn rho_of(n: u32) -> Rational {
    rat(i64::from(n) - 1, 2)
}

/// Which pole planes of the unnormalized kernel integral pass through a point.
///
/// First-kind planes are `α_j = −(n−1) − 2k`; the second-kind family is
/// `α₁+α₂+α₃ = −2(n−1) − 2k`, `k ∈ ℕ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleClass {
    /// `(j, k)` for each first-kind plane containing the point, `j ∈ {1,2,3}`.
    pub first_kind: Vec<(u8, u64)>,
    /// `k` when the point lies on a second-kind plane.
    pub second_kind: Option<u64>,
}

impl PoleClass {
    pub fn is_pole(&self) -> bool {
        !self.first_kind.is_empty() || self.second_kind.is_some()
    }

    /// Number of distinct pole planes through the point.
    pub fn plane_count(&self) -> usize {
        self.first_kind.len() + usize::from(self.second_kind.is_some())
    }

    /// A pole lying on exactly one plane.
    pub fn is_generic(&self) -> bool {
        self.plane_count() == 1
    }
}

/// Exact classification of the pole planes through `p`.
pub fn classify_pole(p: &ParamPoint) -> PoleClass {
    let n1 = rat(i64::from(p.n) - 1, 1);
    let step = rat(-2, 1);
    let mut first_kind = Vec::new();
    for (j, a) in p.alpha.iter().enumerate() {
        if let Some(k) = progression_index(a, &-&n1, &step) {
            first_kind.push((j as u8 + 1, k));
        }
    }
    let second_kind = progression_index(&p.sum_alpha(), &-(&n1 * rat(2, 1)), &step);
    PoleClass { first_kind, second_kind }
}

/// Exact membership in the zero set of the normalized trilinear form.
///
/// The geometric-chart characterization (up to permutation): either two of
/// the `α_j` lie in `−(n−1) − 2ℕ`, or `Σα ∈ −2(n−1) − 2ℕ` with some
/// `α_j ∈ 2ℕ`. The spectral-chart characterization: some `λ_c = −ρ − l`
/// with `l ∈ ℕ` while the other two satisfy `λ_a ∓ λ_b = m ∈ ℤ`, `|m| ≤ l`,
/// `m ≡ l (mod 2)`. Both are evaluated and must agree.
pub fn in_zero_set(p: &ParamPoint) -> bool {
    let by_alpha = zero_set_alpha_chart(p);
    let by_lambda = zero_set_lambda_chart(p);
    assert_eq!(
        by_alpha, by_lambda,
        "zero-set characterizations disagree at n={} alpha=({}, {}, {})",
        p.n, p.alpha[0], p.alpha[1], p.alpha[2]
    );
    by_alpha
}

fn zero_set_alpha_chart(p: &ParamPoint) -> bool {
    let class = classify_pole(p);
    if class.first_kind.len() >= 2 {
        return true;
    }
    class.second_kind.is_some()
        && p.alpha
            .iter()
            .any(|a| progression_index(a, &Rational::zero(), &rat(2, 1)).is_some())
}

fn zero_set_lambda_chart(p: &ParamPoint) -> bool {
    let rho = p.rho();
    for c in 0..3 {
        let Some(l) = progression_index(&p.lambda[c], &-&rho, &rat(-1, 1)) else {
            continue;
        };
        let a = &p.lambda[(c + 1) % 3];
        let b = &p.lambda[(c + 2) % 3];
        if integer_within_parity(&(a - b), l) || integer_within_parity(&(a + b), l) {
            return true;
        }
    }
    false
}

/// True when `x` is an integer `m` with `|m| ≤ l` and `m ≡ l (mod 2)`.
fn integer_within_parity(x: &QComplex, l: u64) -> bool {
    if !x.is_integer() {
        return false;
    }
    let m = x.re.to_integer();
    let l = num_bigint::BigInt::from(l);
    m.abs() <= l && (m - l) % 2 == num_bigint::BigInt::zero()
}

/// The six membership conditions for the zero set restricted to the plane
/// `λ₁ + λ₂ + λ₃ = −ρ − 2k` (with `λ₃` implied). Labels follow the
/// conventional i–vi order:
///
/// * `I`   — `λ₁ + λ₂ ∈ −k + ℕ`
/// * `II`  — `λ₁ ∈ −ρ − k − ℕ`
/// * `III` — `λ₂ ∈ −ρ − k − ℕ`
/// * `IV`  — `λ₁ = −ρ − l` with `λ₂ ∈ {−k, …, −k + l}`
/// * `V`   — `λ₂ = −ρ − l` with `λ₁ ∈ {−k, …, −k + l}`
/// * `VI`  — `λ₁ = −k + p`, `λ₂ = −k + q`, `p, q ∈ ℕ`, `p + q ≤ k`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ZkCondition {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for ZkCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ZkCondition::I => "i",
            ZkCondition::II => "ii",
            ZkCondition::III => "iii",
            ZkCondition::IV => "iv",
            ZkCondition::V => "v",
            ZkCondition::VI => "vi",
        };
        f.write_str(s)
    }
}

/// Outcome of the plane-restricted zero-set test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZkVerdict {
    pub in_zk: bool,
    /// Every condition that holds, in i–vi order (possibly several).
    pub satisfied: Vec<ZkCondition>,
}

/// Zero-set membership on the plane `Σλ = −ρ − 2k`, given `(λ₁, λ₂)`.
///
/// Equivalent to completing the triple with `λ₃ = −ρ − 2k − λ₁ − λ₂` and
/// calling [`in_zero_set`], but decided by the six plane conditions directly.
pub fn in_zk(n: u32, k: u32, l1: &QComplex, l2: &QComplex) -> Result<ZkVerdict, ParamError> {
    if n < 4 {
        return Err(ParamError::DimensionTooSmall(n));
    }
    let rho = rho_of(n);
    let neg_k = rat(-i64::from(k), 1);
    let up = rat(1, 1);
    let down = rat(-1, 1);
    let deep_base = -(&rho + rat(i64::from(k), 1)); // −ρ − k
    let spectral_base = -&rho;

    let mut satisfied = Vec::new();
    if progression_index(&(l1 + l2), &neg_k, &up).is_some() {
        satisfied.push(ZkCondition::I);
    }
    if progression_index(l1, &deep_base, &down).is_some() {
        satisfied.push(ZkCondition::II);
    }
    if progression_index(l2, &deep_base, &down).is_some() {
        satisfied.push(ZkCondition::III);
    }
    let window = |pole: &QComplex, other: &QComplex| -> bool {
        match progression_index(pole, &spectral_base, &down) {
            Some(l) => progression_index(other, &neg_k, &up).is_some_and(|t| t <= l),
            None => false,
        }
    };
    if window(l1, l2) {
        satisfied.push(ZkCondition::IV);
    }
    if window(l2, l1) {
        satisfied.push(ZkCondition::V);
    }
    if let (Some(p), Some(q)) = (
        progression_index(l1, &neg_k, &up),
        progression_index(l2, &neg_k, &up),
    ) {
        if p + q <= u64::from(k) {
            satisfied.push(ZkCondition::VI);
        }
    }
    Ok(ZkVerdict { in_zk: !satisfied.is_empty(), satisfied })
}

/// Irreducibility of the spherical principal-series representation with
/// spectral parameter `λ`: reducible exactly on `(−ρ − ℕ) ∪ (ρ + ℕ)`.
pub fn is_irreducible(n: u32, lambda: &QComplex) -> Result<bool, ParamError> {
    if n < 4 {
        return Err(ParamError::DimensionTooSmall(n));
    }
    let rho = rho_of(n);
    Ok(progression_index(lambda, &-&rho, &rat(-1, 1)).is_none()
        && progression_index(lambda, &rho, &rat(1, 1)).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QComplex {
        s.parse().unwrap()
    }

    fn alphas(n: u32, s: [&str; 3]) -> ParamPoint {
        ParamPoint::from_alpha(n, s.map(|v| q(v))).unwrap()
    }

    #[test]
    fn chart_conversion_matches_hand_values() {
        let p = ParamPoint::from_lambda(4, [q("3/2"), q("3/2"), q("-3/2")]).unwrap();
        assert_eq!(p.alpha(), &[q("-3"), q("-3"), q("3")]);
        let p = ParamPoint::from_alpha(5, [q("-4"), q("0"), q("0")]).unwrap();
        assert_eq!(p.lambda(), &[q("2"), q("0"), q("0")]);
    }

    #[test]
    fn charts_are_inverse_bijections() {
        let p = ParamPoint::from_alpha(7, [q("1/3-2i"), q("-7/5"), q("4+i")]).unwrap();
        let back = ParamPoint::from_lambda(7, p.lambda().clone()).unwrap();
        assert_eq!(&back, &p);
        assert_eq!(
            p.sum_alpha(),
            &p.sum_lambda() - &QComplex::from_rational(rat(3, 1) * p.rho())
        );
    }

    #[test]
    fn small_dimension_is_rejected() {
        let e = ParamPoint::from_alpha(3, [q("0"), q("0"), q("0")]).unwrap_err();
        assert_eq!(e, ParamError::DimensionTooSmall(3));
        assert!(in_zk(2, 0, &q("0"), &q("0")).is_err());
        assert!(is_irreducible(1, &q("0")).is_err());
    }

    #[test]
    fn pole_classification_examples() {
        let c = classify_pole(&alphas(4, ["-3", "0", "0"]));
        assert_eq!(c.first_kind, vec![(1, 0)]);
        assert_eq!(c.second_kind, None);
        assert!(c.is_pole() && c.is_generic());

        let c = classify_pole(&alphas(4, ["-2", "-2", "-2"]));
        assert!(c.first_kind.is_empty());
        assert_eq!(c.second_kind, Some(0));
        assert!(c.is_generic());

        let c = classify_pole(&alphas(4, ["-3", "0", "-3"]));
        assert_eq!(c.first_kind, vec![(1, 0), (3, 0)]);
        assert_eq!(c.second_kind, Some(0));
        assert_eq!(c.plane_count(), 3);
        assert!(!c.is_generic());

        let c = classify_pole(&alphas(4, ["0", "0", "0"]));
        assert!(!c.is_pole());

        // A first-kind plane with k > 0, and a non-pole with non-real entries.
        let c = classify_pole(&alphas(5, ["-8", "1/3", "0"]));
        assert_eq!(c.first_kind, vec![(1, 2)]);
        let c = classify_pole(&alphas(4, ["-3+i", "0", "0"]));
        assert!(!c.is_pole());
    }

    #[test]
    fn zero_set_examples() {
        assert!(in_zero_set(&alphas(4, ["-3", "-3", "5"])));
        assert!(in_zero_set(&alphas(4, ["-4", "-2", "0"])));
        assert!(!in_zero_set(&alphas(4, ["-3", "0", "0"])));
        assert!(!in_zero_set(&alphas(4, ["0", "0", "0"])));
        assert!(!in_zero_set(&alphas(4, ["-2", "-2", "-2"])));
        // Second kind needs a nonnegative even entry: Σα = -8 with α₃ = 0.
        assert!(in_zero_set(&alphas(4, ["-4", "-4", "0"])));
        // Zero set is permutation invariant.
        assert!(in_zero_set(&alphas(4, ["5", "-3", "-3"])));
    }

    #[test]
    fn plane_conditions_match_examples() {
        let v = in_zk(4, 1, &q("-1"), &q("-1")).unwrap();
        assert!(v.in_zk);
        assert_eq!(v.satisfied, vec![ZkCondition::VI]);

        let v = in_zk(4, 1, &q("-1"), &q("1/3")).unwrap();
        assert!(!v.in_zk);
        assert!(v.satisfied.is_empty());

        let v = in_zk(4, 1, &q("-5/2"), &q("7")).unwrap();
        assert!(v.in_zk);
        assert_eq!(v.satisfied, vec![ZkCondition::II]);
    }

    #[test]
    fn plane_conditions_agree_with_zero_set() {
        // Complete (λ₁, λ₂) to the plane Σλ = −ρ−2k and compare verdicts.
        let grid: Vec<QComplex> = [
            "-3", "-5/2", "-2", "-3/2", "-1", "-1/2", "0", "1/2", "1", "7", "1/3", "-7/3",
        ]
        .iter()
        .map(|s| q(s))
        .collect();
        for n in [4u32, 5, 7] {
            let rho = QComplex::from_rational(rho_of(n));
            for k in 0u32..=3 {
                for l1 in &grid {
                    for l2 in &grid {
                        let verdict = in_zk(n, k, l1, l2).unwrap().in_zk;
                        let l3 = &(-(l1 + l2) - QComplex::from_int(2 * i64::from(k))) - &rho;
                        let p =
                            ParamPoint::from_lambda(n, [l1.clone(), l2.clone(), l3]).unwrap();
                        assert_eq!(
                            verdict,
                            in_zero_set(&p),
                            "n={n} k={k} l1={l1} l2={l2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibility_boundary() {
        assert!(!is_irreducible(4, &q("-3/2")).unwrap());
        assert!(!is_irreducible(4, &q("-5/2")).unwrap());
        assert!(!is_irreducible(4, &q("3/2")).unwrap());
        assert!(!is_irreducible(4, &q("7/2")).unwrap());
        assert!(is_irreducible(4, &q("1/2")).unwrap());
        assert!(is_irreducible(4, &q("3/2+i")).unwrap());
        assert!(is_irreducible(4, &q("0")).unwrap());
    }
}
