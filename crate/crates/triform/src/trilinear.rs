//! Closed-form evaluation of the normalized trilinear form on the invariant
//! basis, exact prediction of its zeros, and witness search.
//!
//! On `S^{n−1}` the basis functions are
//! `p_a(x,y,z) = |x−y|^{2a₃} |y−z|^{2a₁} |z−x|^{2a₂}` for a multi-index
//! `a ∈ ℕ³`. The normalized form applied to `p_a` has the closed form
//!
//! ```text
//! I_α(a) = (π/2)^{3(n−1)/2} · 2^{Σα} · 4^{|a|}
//!        · (Σα/2 + 2ρ)_{|a|} · Π_j (α_j/2 + ρ)_{a_j}
//!        / [ Γ((α₁+α₂)/2 + 2ρ + a₁+a₂) Γ((α₂+α₃)/2 + 2ρ + a₂+a₃) Γ((α₃+α₁)/2 + 2ρ + a₃+a₁) ]
//! ```
//!
//! and an equivalent expression in the spectral chart. Every factor is
//! either a rising factorial or a reciprocal Gamma, so vanishing is decidable
//! exactly: [`is_exact_zero`] never consults floating point, and
//! [`eval_normalized`] cross-checks the two charts against each other on
//! every call.

use crate::exact::{pochhammer_exact, progression_index, rat, QComplex, Rational};
use crate::params::{classify_pole, ParamPoint};
use crate::specfun::{log_gamma, pochhammer_f, recip_gamma, ComplexF};
use num_traits::Zero;

/// Exponent multi-index of an invariant basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    pub a1: u32,
    pub a2: u32,
    pub a3: u32,
}

impl MultiIndex {
    pub fn new(a1: u32, a2: u32, a3: u32) -> Self {
        MultiIndex { a1, a2, a3 }
    }

    /// Total degree `a₁ + a₂ + a₃`.
    pub fn order(&self) -> u32 {
        self.a1 + self.a2 + self.a3
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.a1, self.a2, self.a3]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrilinearError {
    /// The unnormalized integral is requested at (or within the floating
    /// pole window of) a pole of its meromorphic continuation.
    #[error("unnormalized form has a pole at alpha = ({0}, {1}, {2})")]
    IsAPole(String, String, String),
}

fn cf(q: &QComplex) -> ComplexF {
    let (re, im) = q.to_f64_parts();
    ComplexF::new(re, im)
}

/// Geometric-chart closed form for the normalized value at `p_a`.
fn eval_geometric(p: &ParamPoint, a: &MultiIndex) -> ComplexF {
    let n1 = f64::from(p.n() - 1); // = 2ρ
    let alpha: Vec<ComplexF> = p.alpha().iter().map(cf).collect();
    let s: ComplexF = alpha[0] + alpha[1] + alpha[2];
    let [a1, a2, a3] = a.as_array();
    let pref = (std::f64::consts::PI / 2.0).powf(1.5 * n1)
        * f64::exp2(2.0 * f64::from(a.order()));
    let two_pow = (s * std::f64::consts::LN_2).exp();
    let rising = pochhammer_f(s / 2.0 + n1, a.order())
        * pochhammer_f(alpha[0] / 2.0 + n1 / 2.0, a1)
        * pochhammer_f(alpha[1] / 2.0 + n1 / 2.0, a2)
        * pochhammer_f(alpha[2] / 2.0 + n1 / 2.0, a3);
    let recips = recip_gamma((alpha[0] + alpha[1]) / 2.0 + n1 + f64::from(a1 + a2))
        * recip_gamma((alpha[1] + alpha[2]) / 2.0 + n1 + f64::from(a2 + a3))
        * recip_gamma((alpha[2] + alpha[0]) / 2.0 + n1 + f64::from(a3 + a1));
    pref * two_pow * rising * recips
}

/// Spectral-chart closed form for the same value.
fn eval_spectral(p: &ParamPoint, a: &MultiIndex) -> ComplexF {
    let n1 = f64::from(p.n() - 1);
    let rho = n1 / 2.0;
    let l: Vec<ComplexF> = p.lambda().iter().map(cf).collect();
    let s = l[0] + l[1] + l[2];
    let [a1, a2, a3] = a.as_array();
    let pref = (std::f64::consts::PI.sqrt() / 2.0).powf(3.0 * n1)
        * f64::exp2(2.0 * f64::from(a.order()));
    let two_pow = (s * std::f64::consts::LN_2).exp();
    let rising = pochhammer_f((s + rho) / 2.0, a.order())
        * pochhammer_f((-l[0] + l[1] + l[2] + rho) / 2.0, a1)
        * pochhammer_f((l[0] - l[1] + l[2] + rho) / 2.0, a2)
        * pochhammer_f((l[0] + l[1] - l[2] + rho) / 2.0, a3);
    let recips = recip_gamma(l[0] + rho + f64::from(a2 + a3))
        * recip_gamma(l[1] + rho + f64::from(a3 + a1))
        * recip_gamma(l[2] + rho + f64::from(a1 + a2));
    pref * two_pow * rising * recips
}

/// Both chart evaluations, geometric first. They agree to rounding; exposing
/// the pair lets verification suites measure the disagreement directly.
pub fn eval_forms(p: &ParamPoint, a: &MultiIndex) -> (ComplexF, ComplexF) {
    (eval_geometric(p, a), eval_spectral(p, a))
}

/// Value of the normalized form on the basis function `p_a`.
///
/// Entire in the parameters; evaluates the geometric-chart formula and
/// asserts agreement with the spectral chart to 1e-9 (relative, with an
/// absolute floor of 1e-9 so structural zeros compare cleanly). Inputs whose
/// Gamma arguments sit within ≈1e-8 of a nonpositive integer *without being
/// exactly integral* can trip the snap window asymmetrically; rationals with
/// moderate denominators are always safe.
pub fn eval_normalized(p: &ParamPoint, a: &MultiIndex) -> ComplexF {
    let (g, s) = eval_forms(p, a);
    let scale = g.norm().max(s.norm()).max(1.0);
    assert!(
        (g - s).norm() <= 1e-9 * scale,
        "chart evaluations disagree at alpha=({}, {}, {}), a=({}, {}, {}): {g} vs {s}",
        p.alpha()[0], p.alpha()[1], p.alpha()[2], a.a1, a.a2, a.a3
    );
    g
}

/// Exact vanishing test for the normalized value at `p_a`.
///
/// Decided factor by factor in rational arithmetic: a rising factorial
/// vanishes iff its base is a nonpositive integer exceeded by the length, and
/// a reciprocal Gamma vanishes iff its argument is a nonpositive integer.
pub fn is_exact_zero(p: &ParamPoint, a: &MultiIndex) -> bool {
    let half = QComplex::from_rational(rat(1, 2));
    let two_rho = QComplex::from_rational(rat(i64::from(p.n()) - 1, 1));
    let rho = QComplex::from_rational(p.rho());
    let alpha = p.alpha();
    let [a1, a2, a3] = a.as_array();

    let head = &(&half * &p.sum_alpha()) + &two_rho;
    if pochhammer_exact(&head, a.order()).is_zero() {
        return true;
    }
    for (j, aj) in [a1, a2, a3].into_iter().enumerate() {
        let base = &(&half * &alpha[j]) + &rho;
        if pochhammer_exact(&base, aj).is_zero() {
            return true;
        }
    }
    let pair_arg = |i: usize, j: usize, shift: u32| -> QComplex {
        &(&(&half * &(&alpha[i] + &alpha[j])) + &two_rho) + &QComplex::from_int(i64::from(shift))
    };
    let gamma_pole = |arg: QComplex| -> bool {
        progression_index(&arg, &Rational::zero(), &rat(-1, 1)).is_some()
    };
    gamma_pole(pair_arg(0, 1, a1 + a2))
        || gamma_pole(pair_arg(1, 2, a2 + a3))
        || gamma_pole(pair_arg(2, 0, a3 + a1))
}

/// The unnormalized kernel integral against the constant function `1⊗1⊗1`,
/// by its closed form
///
/// ```text
/// (π/2)^{3(n−1)/2} 2^{Σα} Γ(Σα/2+2ρ) Γ(α₁/2+ρ) Γ(α₂/2+ρ) Γ(α₃/2+ρ)
///   / [ Γ((α₁+α₂)/2+2ρ) Γ((α₂+α₃)/2+2ρ) Γ((α₃+α₁)/2+2ρ) ]
/// ```
///
/// Errors with [`TrilinearError::IsAPole`] on the pole planes (where the
/// meromorphic continuation genuinely diverges), including inputs inside the
/// floating pole window of a numerator Gamma.
pub fn unnormalized_br(p: &ParamPoint) -> Result<ComplexF, TrilinearError> {
    let pole_err = || {
        TrilinearError::IsAPole(
            p.alpha()[0].to_string(),
            p.alpha()[1].to_string(),
            p.alpha()[2].to_string(),
        )
    };
    if classify_pole(p).is_pole() {
        return Err(pole_err());
    }
    let n1 = f64::from(p.n() - 1);
    let alpha: Vec<ComplexF> = p.alpha().iter().map(cf).collect();
    let s = alpha[0] + alpha[1] + alpha[2];
    let mut ln = ComplexF::new((std::f64::consts::PI / 2.0).ln() * 1.5 * n1, 0.0)
        + s * std::f64::consts::LN_2;
    for arg in [
        s / 2.0 + n1,
        alpha[0] / 2.0 + n1 / 2.0,
        alpha[1] / 2.0 + n1 / 2.0,
        alpha[2] / 2.0 + n1 / 2.0,
    ] {
        ln += log_gamma(arg).map_err(|_| pole_err())?;
    }
    let recips = recip_gamma((alpha[0] + alpha[1]) / 2.0 + n1)
        * recip_gamma((alpha[1] + alpha[2]) / 2.0 + n1)
        * recip_gamma((alpha[2] + alpha[0]) / 2.0 + n1);
    Ok(ln.exp() * recips)
}

/// A basis function on which the normalized form does not vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub index: MultiIndex,
    pub value: ComplexF,
}

/// Finds the first basis function (by total order, then lexicographically by
/// `(a₁, a₂, a₃)`) on which the form is exactly nonzero, searching orders
/// `0..=max_order`. `None` means every basis value up to that order vanishes
/// — for points of the zero set, all of them do.
pub fn find_witness(p: &ParamPoint, max_order: u32) -> Option<Witness> {
    for m in 0..=max_order {
        for a1 in 0..=m {
            for a2 in 0..=(m - a1) {
                let a = MultiIndex::new(a1, a2, m - a1 - a2);
                if !is_exact_zero(p, &a) {
                    return Some(Witness { index: a, value: eval_normalized(p, &a) });
                }
            }
        }
    }
    None
}
