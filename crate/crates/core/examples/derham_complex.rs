//! The discrete deRham complex: mass matrices, the derivative and the
//! Poisson solve for an initial electric field.
//!
//! cargo run --example derham_complex

use feec_pic::{DeRhamComplex1d, MassId, Result, SpaceId};

fn main() -> Result<()> {
    let c = DeRhamComplex1d::new(3, 16, 4.0 * std::f64::consts::PI)?;
    println!("M0 stencil {:?}", c.mass(MassId::M0).stencil());
    println!("M1 stencil {:?}", c.mass(MassId::M1).stencil());

    // d/dx of the projected sine against the projected cosine
    let e = c.l2_project(SpaceId::V0, |x| (0.5 * x).sin());
    let de = c.apply_deriv(&e);
    let want = c.l2_project(SpaceId::V1, |x| 0.5 * (0.5 * x).cos());
    let err = de.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("max |G P0 sin - P1 (sin)'| = {err:.2e}");

    // rho = cos(x/2) gives E = 2 sin(x/2)
    let rho = c.load_vector(SpaceId::V0, |x| (0.5 * x).cos());
    let d = c.poisson_solve_initial_field(&rho)?;
    let dx = c.cell_width();
    for i in (0..16).step_by(4) {
        let x = (i as f64 + 0.5) * dx;
        let got = c.v1().eval_field(&d, x)?;
        println!("E({x:.3}) = {got:+.6}   exact {:+.6}", 2.0 * (0.5 * x).sin());
    }
    Ok(())
}
