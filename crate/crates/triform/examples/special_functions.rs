//! Exercises the special-function layer: complex log-Gamma, reciprocal
//! Gamma with its exact zeros, and Pochhammer symbols in both exact and
//! floating arithmetic.

use triform::exact::{pochhammer_exact, rat};
use triform::specfun::{log_gamma, pochhammer_f, recip_gamma, ComplexF};
use triform::QComplex;

fn main() {
    let z = ComplexF::new(0.5, 2.0);
    let lg = log_gamma(z).unwrap();
    println!("log Γ(1/2 + 2i)      = {:.15} + {:.15}i", lg.re, lg.im);

    // Recurrence Γ(z+1) = z Γ(z), checked multiplicatively.
    let ratio = (log_gamma(z + 1.0).unwrap() - lg).exp() / z;
    println!("Γ(z+1)/(zΓ(z))       = 1 + {:.2e}", (ratio - 1.0).norm());

    // Reflection Γ(z)Γ(1−z) = π / sin(πz).
    let refl = (lg + log_gamma(1.0 - z).unwrap()).exp() * (std::f64::consts::PI * z).sin()
        / std::f64::consts::PI;
    println!("reflection residual  = {:.2e}", (refl - 1.0).norm());

    // 1/Γ is entire and vanishes exactly on the nonpositive integers.
    println!("1/Γ(1/2)             = {:.15}", recip_gamma(ComplexF::new(0.5, 0.0)).re);
    for k in [0.0, -1.0, -4.0] {
        println!("1/Γ({k:>2})             = {:?}", recip_gamma(ComplexF::new(k, 0.0)).re);
    }

    // Rising factorials: exact rational against floating evaluation.
    let base = QComplex::new(rat(-7, 2), rat(1, 3));
    let exact = pochhammer_exact(&base, 6);
    let (re, im) = exact.to_f64_parts();
    let (bre, bim) = base.to_f64_parts();
    let float = pochhammer_f(ComplexF::new(bre, bim), 6);
    println!("(-7/2 + 1/3i)_6      = {exact}");
    println!("        as floats    = {:.15} + {:.15}i", float.re, float.im);
    println!("        gap          = {:.2e}", (float - ComplexF::new(re, im)).norm());

    // A rising factorial with a nonpositive-integer base eventually dies.
    let dead = pochhammer_exact(&QComplex::from_int(-3), 4);
    println!("(-3)_4               = {dead} (exactly zero)");
}
