//! Builds the covariance system for bi-differential operators and solves it
//! exactly: one-dimensional solution spaces at generic spectral parameters,
//! with extra solutions only on the degenerate planes.

use triform::bidiff::{build_system, float_nullity, nullspace};
use triform::params::in_zk;
use triform::QComplex;

fn q(s: &str) -> QComplex {
    s.parse().unwrap()
}

fn show(n: u32, k: u32, l1: &str, l2: &str) {
    let (l1, l2) = (q(l1), q(l2));
    let sys = build_system(n, k, &l1, &l2).unwrap();
    let ns = nullspace(&sys);
    let verdict = in_zk(n, k, &l1, &l2).unwrap();
    println!(
        "n = {n}, k = {k}, lambda = ({l1}, {l2}): {} unknowns, {} equations",
        sys.unknowns().len(),
        sys.rows().len()
    );
    println!(
        "  on a degenerate plane: {}{}",
        verdict.in_zk,
        if verdict.satisfied.is_empty() {
            String::new()
        } else {
            format!(
                " (conditions {})",
                verdict.satisfied.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            )
        }
    );
    println!("  exact nullity {}, floating nullity {}", ns.nullity, float_nullity(&sys));
    for v in &ns.basis {
        let coeffs: Vec<String> = sys
            .unknowns()
            .iter()
            .zip(v)
            .map(|(&(r, t), c)| format!("c[{r},{t}] = {c}"))
            .collect();
        println!("  solution: {}", coeffs.join(", "));
    }
    println!();
}

fn main() {
    // The classical order-one operator.
    show(4, 1, "0", "0");
    // Generic parameters: multiplicity one at every order.
    show(4, 2, "1/3", "-5/7");
    show(5, 3, "1/2", "1/2");
    // On the degenerate plane extra solutions can appear.
    show(4, 1, "-1", "-1");
}
