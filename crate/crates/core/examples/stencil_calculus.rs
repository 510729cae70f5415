//! Grid operators as exact stencils: powers, composition, canonical form and
//! Fourier symbols.

use holistic_fd::stencil::{even_power, odd_power};
use holistic_fd::{compose, grid_operator, symbol, GridOpName, Result};

fn main() -> Result<()> {
    let d2 = grid_operator(GridOpName::Delta, 2)?;
    let md = grid_operator(GridOpName::MuDelta, 1)?;
    let nabla2 = grid_operator(GridOpName::Nabla, 2)?;
    println!("δ²    = {d2}");
    println!("μδ    = {md}");
    println!("∇²    = {nabla2}");

    // μδ·μδ = δ² + δ⁴/4
    let md_sq = compose(&md, &md);
    println!("μδ·μδ = {md_sq}");
    for (label, c) in md_sq.canonical().entries() {
        println!("    {c} {label}");
    }
    assert_eq!(
        md_sq,
        d2.add(&even_power(2).scale(&holistic_fd::rational::rat(1, 4)))?
    );

    // one-sided operators have both even and odd parts
    println!("∇² in the central basis:");
    for (label, c) in nabla2.canonical().entries() {
        println!("    {c} {label}");
    }

    // λ(θ) of δ²/h² is −(4/h²)sin²(θ/2)
    let h = 0.5;
    let scaled = d2.with_hpower(-2);
    for theta in [0.0, 1.0, std::f64::consts::PI] {
        let lambda = symbol(&scaled, theta, h);
        let exact = -4.0 / (h * h) * (theta / 2.0).sin().powi(2);
        println!("θ = {theta:.3}: λ = {:.6} (expected {exact:.6})", lambda.re);
    }
    println!("μδ³   = {}", odd_power(2));
    Ok(())
}
