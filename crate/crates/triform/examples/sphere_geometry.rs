//! The conformal flow on the sphere: moves points with `a_t`, tracks the
//! conformal factor, and checks the distance covariance that underpins the
//! invariance of the trilinear kernel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triform::geometry::{at_action, kappa_at, orbit_of, sample_sphere, SpherePoint, ORBIT_TOL};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    // The two fixed points of the flow scale by e^{∓t}.
    let north = SpherePoint::pole(4);
    println!("kappa(t = 0.8) at  e1 = {:.15}   (e^-0.8 = {:.15})", kappa_at(0.8, &north), (-0.8f64).exp());

    // Distance covariance |a_t x − a_t y| = √(κ(t,x) κ(t,y)) |x − y|.
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x = sample_sphere(4, &mut rng);
        let y = sample_sphere(4, &mut rng);
        let t = 1.3;
        let lhs = at_action(t, &x).dist(&at_action(t, &y));
        let rhs = (kappa_at(t, &x) * kappa_at(t, &y)).sqrt() * x.dist(&y);
        worst = worst.max((lhs - rhs).abs());
    }
    println!("distance covariance over 1000 pairs at t = 1.3: max residual {worst:.2e}");

    // The flow preserves orbit types of triples.
    let x = sample_sphere(4, &mut rng);
    let y = sample_sphere(4, &mut rng);
    let z = x.clone();
    let before = orbit_of(&x, &y, &z, ORBIT_TOL);
    let after = orbit_of(
        &at_action(0.9, &x),
        &at_action(0.9, &y),
        &at_action(0.9, &z),
        1e-6,
    );
    println!("orbit of (x, y, x): {before:?} -> after the flow: {after:?}");

    // Group law: a_s ∘ a_t = a_{s+t}.
    let p = sample_sphere(4, &mut rng);
    let two_step = at_action(0.4, &at_action(0.5, &p));
    let one_step = at_action(0.9, &p);
    println!("group law residual: {:.2e}", two_step.dist(&one_step));
}
