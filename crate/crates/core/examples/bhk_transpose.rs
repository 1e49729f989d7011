//! Transposing an exponent matrix with a diagonal symmetry group, and checking that the result
//! agrees with the polar good pair.

use toricy::bhk::{
    check_transpose, classical_dual_weights, recover_variety, BhkDatum, DEFAULT_INDEX_CAP,
};
use toricy::linalg::IntMatrix;

fn main() -> toricy::Result<()> {
    let a = IntMatrix::from_i64(&[
        &[3, 1, 0, 0, 0],
        &[0, 4, 0, 0, 0],
        &[0, 0, 5, 0, 0],
        &[0, 0, 0, 5, 0],
        &[0, 0, 0, 0, 10],
    ]);
    let x = recover_variety(&a)?;
    print!("ambient grading:\n{}", x.grading());
    let dw = classical_dual_weights(&a)?;
    println!("transposed weights {:?}", dw.weights);

    let bd = BhkDatum::from_matrix(&a, None)?;
    let sym = bd.symmetry_group()?;
    println!("diagonal symmetries: {}", sym.structure);
    let lattices = bd.intermediate_lattices(DEFAULT_INDEX_CAP)?;
    println!("{} choices of group", lattices.len());
    for m_g in lattices {
        let g = bd.with_group(m_g)?;
        let t = g.transpose()?;
        let group = g.group_elements()?;
        let dual_group = t.group_elements()?;
        println!(
            "G = {} -> G^T = {}, dual class group {}, check {}",
            group.structure,
            dual_group.structure,
            t.ambient()?.class_group(),
            check_transpose(&g)?.holds()
        );
        for phases in &dual_group.generators {
            let s: Vec<String> = phases.iter().map(ToString::to_string).collect();
            println!("  G^T generator ({})", s.join(", "));
        }
    }
    Ok(())
}
