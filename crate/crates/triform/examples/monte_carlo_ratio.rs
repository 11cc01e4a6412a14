//! Estimates the kernel integrals by seeded Monte Carlo and compares them
//! to the closed form: the ratio is one fixed constant across parameters,
//! which is how the closed form is validated end to end.

use triform::quadrature::mc_kernel;
use triform::trilinear::{unnormalized_br, MultiIndex};
use triform::{ParamPoint, QComplex};

fn q(s: &str) -> QComplex {
    s.parse().unwrap()
}

fn main() {
    let origin = MultiIndex::new(0, 0, 0);
    let samples = 400_000;
    println!("n = 4, {samples} samples per point (seeded, reproducible)\n");
    for alpha in [["-1", "-1", "-1"], ["-3/2", "-1/2", "-1"], ["1/2", "1/2", "1/2"], ["0", "0", "0"]] {
        let p = ParamPoint::from_alpha(4, alpha.map(q)).unwrap();
        let closed = unnormalized_br(&p).unwrap().re;
        let est = mc_kernel(&p, &origin, samples, 42).unwrap();
        println!(
            "alpha = ({:>4}, {:>4}, {:>4})  closed form {:>10.6}  MC {:>9.6} ± {:.6}  ratio {:.4}",
            alpha[0], alpha[1], alpha[2], closed, est.estimate, est.std_error,
            closed / est.estimate
        );
    }

    // The integral only converges while every exponent stays above -(n-1)
    // and the sum above -2(n-1); outside that region the estimator refuses.
    let p = ParamPoint::from_alpha(4, [q("-7/2"), q("0"), q("0")]).unwrap();
    match mc_kernel(&p, &origin, samples, 42) {
        Err(e) => println!("\nalpha = (-7/2, 0, 0): {e}"),
        Ok(_) => unreachable!(),
    }
}
