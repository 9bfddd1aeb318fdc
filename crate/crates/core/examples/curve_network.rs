//! Solve the strain-energy optimal curve on every edge of a cube and write
//! the network as a polyline OBJ.
//!
//! cargo run --example curve_network

use trispline::basis::{BasisFamily, UnivariateBasis};
use trispline::curve_network::{build_network, solve_edge};
use trispline::mesh::{shapes, vertex_frames, Vec3};
use trispline::pipeline::write_polylines;
use trispline::tables::{EnergyWeights, PhiTable};

fn main() -> trispline::Result<()> {
    let fam = BasisFamily::cubic();
    let phi = PhiTable::closed_combined(fam, &EnergyWeights::new(vec![1.0])?)?;

    // A single edge: a straight segment gets the classic thirds.
    let s = solve_edge(&Vec3::zeros(), &Vec3::x(), &Vec3::x(), &-Vec3::x(), &phi)?;
    println!(
        "straight segment: lambda = ({}, {})",
        s.lambda_ij, s.lambda_ji
    );

    let mesh = shapes::cube();
    let frames = vertex_frames(&mesh)?;
    let network = build_network(&mesh, &frames, &UnivariateBasis::new(fam)?, &phi)?;
    for (&(i, j), s) in network.edges().iter().zip(network.solutions()).take(3) {
        println!(
            "edge ({i}, {j}): lambda_ij = {:.6}, lambda_ji = {:.6}",
            s.lambda_ij, s.lambda_ji
        );
    }
    let mid = network.eval_curve(0, 1, 0.5, 0)?;
    println!("curve (0, 1) at its midpoint: {:.6?}", mid.as_slice());

    let path = std::env::temp_dir().join("cube_curves.obj");
    let mut file = std::io::BufWriter::new(std::fs::File::create(&path).unwrap());
    write_polylines(&mut file, &network.polylines(32)).unwrap();
    println!("wrote {}", path.display());
    Ok(())
}
