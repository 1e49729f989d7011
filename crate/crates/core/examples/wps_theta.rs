//! The fan and the anticanonical polytope of a weighted projective space.
//!
//! Usage: `cargo run --example wps_theta -- 5,5,4,4,2`

use toricy::survey::{anticanonical_points, classify_weight_system};
use toricy::toric::{wps, WeightSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w: WeightSystem = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "5,5,4,4,2".into())
        .parse()?;
    let x = wps(&w)?;
    println!("P{w}: rank {}, class group {}", x.rank(), x.class_group());
    for r in x.rays() {
        println!("  ray {r:?}");
    }
    let theta = x.anticanonical_polytope()?;
    print!("anticanonical polytope:\n{theta}");

    let (_, exps, points) = anticanonical_points(&w)?;
    println!("{} monomials of degree {}", exps.len(), w.degree());
    for (e, u) in exps.iter().zip(&points).take(5) {
        println!("  x^{e:?} <-> {u:?}");
    }

    let rec = classify_weight_system(&w)?;
    println!(
        "lattice hull: {} vertices; F {} R {} C {} Q {} -> bucket {}",
        rec.hull_vertices, rec.f, rec.r, rec.c, rec.q, rec.bucket
    );
    Ok(())
}
