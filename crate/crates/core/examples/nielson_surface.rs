//! Blend side-vertex interpolants into a G1 surface and measure how well
//! the normals agree across edges.
//!
//! cargo run --release --example nielson_surface

use trispline::mesh::shapes;
use trispline::nielson::BlendKind;
use trispline::pipeline::{run_pipeline, PipelineConfig};

fn main() -> trispline::Result<()> {
    for blend in [BlendKind::RationalDeg2, BlendKind::RationalDeg1] {
        let config = PipelineConfig {
            blend,
            theta: vec![1.0, 1.0],
            ..Default::default()
        };
        let out = run_pipeline(&config, shapes::icosphere(2))?;
        let s = &out.surface;
        let patch = s.patch(0);
        let b = [1.0 / 3.0; 3];
        println!(
            "{blend}: centre of face 0 at {:.6?}, C0 patch at {:.6?}",
            patch.eval(b)?.as_slice(),
            s.c0_point(0, b)?.as_slice()
        );
        let d = s.g1_defect(20, 1e-6)?;
        println!(
            "{blend}: {} samples, normals across edges differ by at most {:.2e} rad",
            d.samples, d.between_sides
        );
    }
    Ok(())
}
