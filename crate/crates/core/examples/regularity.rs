//! Irreducibility, well-formedness, normality and quasismoothness of general anticanonical
//! hypersurfaces, for the full monomial support and for the vertices of its lattice hull.

use toricy::hypersurface::{
    crepant_rays, exponents_u64, quasismooth_general_wps, regularity_report, FamilyDatum,
};
use toricy::polytope::RationalPolytope;
use toricy::toric::{wps, WeightSystem};

fn analyze(weights: &[u64]) -> toricy::Result<()> {
    let w = WeightSystem::new(weights)?;
    let x = wps(&w)?;
    let all = x.anticanonical_polytope()?.lattice_points().to_vec();
    let newton = RationalPolytope::hull_of_integers(&all)?;
    let hull = newton.integer_vertices().expect("hull of lattice points");
    println!("P{w}");
    for (label, support) in [("full support", all), ("hull vertices", hull)] {
        let exps = support
            .iter()
            .map(|u| exponents_u64(&x, u))
            .collect::<toricy::Result<Vec<_>>>()?;
        let qs = quasismooth_general_wps(&w, &exps)?;
        let fd = FamilyDatum::with_support(x.clone(), newton.clone(), support)?;
        let r = regularity_report(&fd)?;
        println!(
            "  {label}: irreducible {} well-formed {} normal {:?} quasismooth {}",
            r.irreducible, r.well_formed, r.normal_sufficient, qs.quasismooth
        );
        if let Some(bad) = qs.witness {
            let ws: Vec<u64> = bad.iter().map(|&i| w.weights()[i]).collect();
            println!("    singular along the stratum with weights {ws:?}");
        }
        for p in &r.offending_pairs {
            println!("    rays {} and {}: {:?}", p.i, p.j, p.clause);
        }
    }
    let fd = FamilyDatum::new(x, newton)?;
    println!("  crepant rays: {}", crepant_rays(&fd)?.len());
    Ok(())
}

fn main() -> toricy::Result<()> {
    analyze(&[1, 1, 1, 1, 1])?;
    analyze(&[1, 1, 2, 3, 3, 3])?;
    analyze(&[5, 5, 4, 4, 2])?;
    Ok(())
}
