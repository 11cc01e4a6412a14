//! Searches for witnesses: basis functions on which the normalized form
//! provably does not vanish. Pole points outside the zero set always admit
//! one; zero-set points never do.

use triform::params::{classify_pole, in_zero_set};
use triform::trilinear::find_witness;
use triform::{ParamPoint, QComplex};

fn q(s: &str) -> QComplex {
    s.parse().unwrap()
}

fn search(n: u32, alpha: [&str; 3]) {
    let p = ParamPoint::from_alpha(n, alpha.map(q)).unwrap();
    let pole = classify_pole(&p);
    println!(
        "n = {n}, alpha = ({}, {}, {}): {} pole plane(s), in zero set: {}",
        alpha[0],
        alpha[1],
        alpha[2],
        pole.plane_count(),
        in_zero_set(&p)
    );
    match find_witness(&p, 12) {
        Some(w) => println!(
            "  witness a = ({}, {}, {}) of order {}, value {:.10}\n",
            w.index.a1,
            w.index.a2,
            w.index.a3,
            w.index.order(),
            w.value.re
        ),
        None => println!("  no witness of order <= 12: every basis value vanishes\n"),
    }
}

fn main() {
    // Generic point: the order-zero basis function already works.
    search(4, ["1/2", "-1/3", "2/5"]);
    // Single first-kind pole: still not in the zero set.
    search(4, ["-11", "1", "1"]);
    // First-kind and second-kind planes meet; the witness needs some order.
    search(5, ["-12", "-2", "-2"]);
    // Two first-kind planes: the zero set, so the search is exhaustive and
    // comes back empty.
    search(4, ["-3", "-7", "0"]);
}
