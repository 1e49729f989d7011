//! Polars, lattice points, faces and the canonical/reflexive/Q-Fano flags of small polytopes.

use toricy::polytope::RationalPolytope;

fn describe(name: &str, p: &RationalPolytope) -> toricy::Result<()> {
    let flags = p.classify();
    println!("{name}: {} vertices, {} facets", p.vertices().len(), p.facets().len());
    println!(
        "  lattice points {} (interior {})",
        p.lattice_points().len(),
        p.interior_lattice_points().len()
    );
    println!(
        "  canonical {} reflexive {} qfano {}",
        flags.is_canonical, flags.is_reflexive, flags.is_qfano
    );
    if let Some(x) = &flags.extra_interior_point {
        println!("  extra interior point {x}");
    }
    if let Some(v) = &flags.non_lattice_polar_vertex {
        println!("  polar vertex off the lattice {v}");
    }
    let counts = p.relint_counts()?;
    for (d, c) in counts.iter().enumerate().skip(1) {
        println!("  {}-faces: {} with relative-interior points {:?}", d - 1, c.len(), c);
    }
    Ok(())
}

fn main() -> toricy::Result<()> {
    let triangle = RationalPolytope::from_int_vertices(&[&[1, 0], &[0, 1], &[-1, -1]])?;
    describe("P2 fan polytope", &triangle)?;
    let polar = triangle.polar()?;
    print!("its polar:\n{polar}");
    describe("polar", &polar)?;
    assert_eq!(polar.polar()?, triangle);

    let tall = RationalPolytope::from_int_vertices(&[&[1, 0], &[0, 1], &[-2, -3]])?;
    describe("fan polytope of P(1,2,3)", &tall)?;

    let fat = RationalPolytope::from_int_vertices(&[&[2, 0], &[0, 2], &[-2, -2]])?;
    describe("dilated triangle", &fat)?;
    Ok(())
}
