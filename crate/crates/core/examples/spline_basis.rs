//! Periodic B-spline basis values, derivatives and exact path integrals.
//!
//! cargo run --example spline_basis

use feec_pic::{Result, SplineSpace};

fn main() -> Result<()> {
    let space = SplineSpace::new(3, 8, 8.0)?;
    for x in [0.0, 0.5, 2.25, 7.9] {
        let basis = space.eval_basis(x);
        let deriv = space.eval_basis_derivative(x)?;
        let sum: f64 = basis.values().iter().sum();
        println!("x = {x:>5}: sum = {sum:.15}");
        for ((j, n), (_, dn)) in basis.iter().zip(deriv.iter()) {
            println!("    N_{j}  = {n:.6}   N_{j}' = {dn:+.6}");
        }
    }

    // integrals of the degree-2 splines along a path that wraps around
    let v1 = SplineSpace::new(2, 8, 8.0)?;
    let ints = v1.integrate_basis_along_segment(6.5, 9.25);
    let total: f64 = ints.values().sum();
    println!("path 6.5 -> 9.25: {ints:?}");
    println!("sum of integrals = {total} (path length 2.75)");
    Ok(())
}
