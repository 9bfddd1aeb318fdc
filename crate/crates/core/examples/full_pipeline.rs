//! Run every stage on a bumpy sphere, tessellate the result and write the
//! surface and a report.
//!
//! cargo run --release --example full_pipeline

use std::io::BufWriter;
use trispline::basis::FamilyTag;
use trispline::mesh::shapes;
use trispline::pipeline::{run_pipeline, tessellate_surface, write_report, PipelineConfig};

fn main() -> trispline::Result<()> {
    let config = PipelineConfig {
        family: FamilyTag::AlgebraicTrigonometric,
        theta: vec![1.0, 1.0],
        epsilon: vec![1.0, 1.0],
        samples: 6,
        ..Default::default()
    };
    let mesh = shapes::uv_sphere(12, 16, 0.15);
    let out = run_pipeline(&config, mesh)?;
    let t = tessellate_surface(&out.surface, config.samples)?;
    let dir = std::env::temp_dir();
    let obj = dir.join("bumpy_sphere.obj");
    t.write_obj(&mut BufWriter::new(std::fs::File::create(&obj).unwrap()))
        .unwrap();
    let report = dir.join("bumpy_sphere.txt");
    let r = write_report(
        &mut BufWriter::new(std::fs::File::create(&report).unwrap()),
        &config,
        &out,
    )?;
    println!(
        "{} vertices, {} triangles written to {}",
        t.positions.len(),
        t.faces.len(),
        obj.display()
    );
    println!(
        "strain energy {:.4}, thin-plate energy {:.4}, G1 defect {:.2e} rad; report in {}",
        r.total_strain_energy,
        r.total_thin_plate_energy,
        r.g1.between_sides,
        report.display()
    );
    Ok(())
}
