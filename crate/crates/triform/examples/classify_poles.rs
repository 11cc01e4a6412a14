//! Walks a handful of parameter points through the two charts and prints
//! their pole planes, zero-set membership, and representation data.

use triform::params::{classify_pole, in_zero_set, is_irreducible};
use triform::{ParamPoint, QComplex};

fn q(s: &str) -> QComplex {
    s.parse().unwrap()
}

fn inspect(n: u32, alpha: [&str; 3]) {
    let p = ParamPoint::from_alpha(n, alpha.map(q)).unwrap();
    let pole = classify_pole(&p);
    println!(
        "n = {n}, alpha = ({}, {}, {})",
        p.alpha()[0],
        p.alpha()[1],
        p.alpha()[2]
    );
    println!(
        "  lambda = ({}, {}, {})",
        p.lambda()[0],
        p.lambda()[1],
        p.lambda()[2]
    );
    if pole.is_pole() {
        for (j, k) in &pole.first_kind {
            println!("  pole plane of the first kind in coordinate {j} (index {k})");
        }
        if let Some(k) = pole.second_kind {
            println!("  pole plane of the second kind (index {k})");
        }
        println!(
            "  {} plane(s) through the point{}",
            pole.plane_count(),
            if pole.is_generic() { " — generic pole" } else { "" }
        );
    } else {
        println!("  not a pole of the kernel integral");
    }
    println!("  in zero set of the normalized form: {}", in_zero_set(&p));
    let irr: Vec<String> = p
        .lambda()
        .iter()
        .map(|l| is_irreducible(n, l).unwrap().to_string())
        .collect();
    println!("  principal series irreducible: ({})\n", irr.join(", "));
}

fn main() {
    // A generic point: no poles, nothing vanishes.
    inspect(4, ["1/2", "-1/3", "2/5"]);
    // One pole plane of the first kind.
    inspect(4, ["-3", "0", "1/2"]);
    // Two first-kind planes: inside the zero set.
    inspect(4, ["-3", "-5", "1/2"]);
    // Second kind plus an even coordinate: also inside the zero set.
    inspect(4, ["2", "-4", "-6"]);
    // Second kind alone: a pole, but the normalized form survives.
    inspect(5, ["-7/2", "-5/2", "-2"]);
}
