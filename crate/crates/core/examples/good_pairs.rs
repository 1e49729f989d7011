//! A good pair in the plane, its polar pair and the two families they describe.

use toricy::goodpair::{good_pair, shared_ambient_duals_agree};
use toricy::polytope::RationalPolytope;

fn main() -> toricy::Result<()> {
    let cross = RationalPolytope::from_int_vertices(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])?;
    let triangle = RationalPolytope::from_int_vertices(&[&[2, -1], &[-1, 2], &[-1, -1]])?;
    let gp = good_pair(cross, triangle.clone())?;
    let polar = gp.polar_pair();
    print!("polar pair:\n{}{}", polar.delta1(), polar.delta2());

    let (family, dual) = gp.families()?;
    for f in [&family, &dual] {
        println!(
            "{} family: {} monomials on a variety with {} rays and class group {}, Calabi-Yau {}",
            if f.dual { "dual" } else { "primal" },
            f.support.len(),
            f.ambient.rays().len(),
            f.ambient.class_group(),
            f.calabi_yau
        );
        print!("grading:\n{}", f.ambient.grading());
    }

    let small = RationalPolytope::from_int_vertices(&[&[1, 0], &[0, 1], &[-1, -1]])?;
    let other = good_pair(small, triangle)?;
    println!(
        "dual families of two pairs over the same ambient agree: {}",
        shared_ambient_duals_agree(&gp, &other)?
    );

    let bad = RationalPolytope::from_int_vertices(&[&[3, 0], &[0, 1], &[-1, -1]])?;
    let tri = RationalPolytope::from_int_vertices(&[&[2, -1], &[-1, 2], &[-1, -1]])?;
    if let Err(e) = good_pair(bad, tri) {
        println!("rejected: {e}");
    }
    Ok(())
}
