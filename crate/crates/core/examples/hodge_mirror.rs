//! Hodge numbers of Calabi-Yau threefolds from four-dimensional reflexive polytopes, and the
//! mirror test for good pairs.

use toricy::goodpair::good_pair;
use toricy::hodge::{batyrev_hodge, mirror_test};
use toricy::polytope::RationalPolytope;

fn main() -> toricy::Result<()> {
    let simplex = RationalPolytope::from_int_vertices(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[-1, -1, -1, -1],
    ])?;
    println!("quintic mirror: {}", batyrev_hodge(&simplex)?);
    println!("quintic: {}", batyrev_hodge(&simplex.polar()?)?);

    let same = good_pair(simplex.clone(), simplex.clone())?;
    let t = mirror_test(&same)?;
    println!("reflexive pair: passes {} ({} vs {})", t.passes, t.family, t.dual_family);

    let bigger = RationalPolytope::from_int_vertices(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[-1, -1, -1, -1],
        &[1, 1, 1, 1],
        &[0, 0, 0, -1],
    ])?;
    let t = mirror_test(&good_pair(simplex, bigger)?)?;
    println!("nested pair: passes {} ({} vs {})", t.passes, t.family, t.dual_family);
    Ok(())
}
