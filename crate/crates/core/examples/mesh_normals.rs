//! Load a mesh, inspect its half-edge structure and compute vertex normals
//! and edge tangents.
//!
//! cargo run --example mesh_normals [path.obj]

use trispline::mesh::{load_obj_file, shapes, vertex_frames};

fn main() -> trispline::Result<()> {
    let mesh = match std::env::args().nth(1) {
        Some(path) => load_obj_file(path)?,
        None => load_obj_file(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/examples/data/cube.obj"
        ))?,
    };
    println!(
        "{} vertices, {} faces, {} edges, {} on the boundary",
        mesh.n_vertices(),
        mesh.n_faces(),
        mesh.n_edges(),
        mesh.n_boundary_edges()
    );
    let frames = vertex_frames(&mesh)?;
    for v in 0..mesh.n_vertices().min(4) {
        println!("normal {v}: {:.6?}", frames.normal(v).as_slice());
    }
    let (a, b) = mesh.edges()[0];
    println!(
        "tangent {a} -> {b}: {:.6?}",
        frames.tangent(a, b).unwrap().as_slice()
    );

    let sphere = shapes::icosphere(2);
    let frames = vertex_frames(&sphere)?;
    let worst = (0..sphere.n_vertices())
        .map(|v| (frames.normal(v) - sphere.position(v).normalize()).norm())
        .fold(0.0, f64::max);
    println!("icosphere: largest deviation of normals from radial directions {worst:.2e}");
    Ok(())
}
