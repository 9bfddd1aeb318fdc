//! Build the thin-plate optimal C0 patches over the curve network of an
//! icosphere and check that neighbouring patches share their boundaries.
//!
//! cargo run --example c0_patches

use trispline::basis::{BasisFamily, TrivariateBasis, UnivariateBasis};
use trispline::c0_patch::{build_patches, edge_chart_point, patch_normal, thin_plate_energy};
use trispline::curve_network::build_network;
use trispline::mesh::{shapes, vertex_frames};
use trispline::tables::{EnergyWeights, PhiTable, TauSet, ThinPlateGram};

fn main() -> trispline::Result<()> {
    let fam = BasisFamily::trigonometric(2.0)?;
    let mesh = shapes::icosphere(1);
    let frames = vertex_frames(&mesh)?;
    let phi = PhiTable::closed_combined(fam, &EnergyWeights::new(vec![1.0, 1.0])?)?;
    let network = build_network(&mesh, &frames, &UnivariateBasis::new(fam)?, &phi)?;
    let eps = EnergyWeights::new(vec![1.0])?;
    let taus = TauSet::for_family(fam, 1e-11)?;
    let nets = build_patches(&mesh, &network, &taus, &eps)?;

    let tri = TrivariateBasis::new(fam)?;
    let gram = ThinPlateGram::quadrature(&tri, 1e-11)?;
    let energy: f64 = nets.iter().map(|n| thin_plate_energy(n, &gram, &eps)).sum();
    println!(
        "{} patches, total thin-plate energy {energy:.6}",
        nets.len()
    );
    println!(
        "interior point of face 0: {:.6?}",
        nets[0].get(1, 1).as_slice()
    );

    // The two patches along an edge have the same trace but, in general,
    // different normals: the surface is only C0 at this stage.
    let h = 0;
    let t = mesh.twin(h).unwrap();
    let beta = fam.beta;
    let (x, y) = edge_chart_point(h % 3, 0.5 * beta, beta);
    let (u, v) = edge_chart_point(t % 3, 0.5 * beta, beta);
    let a = patch_normal(&nets[h / 3], &tri, x, y)?;
    let b = patch_normal(&nets[t / 3], &tri, u, v)?;
    println!("normal jump across edge midpoint: {:.3e} rad", a.angle(&b));
    Ok(())
}
