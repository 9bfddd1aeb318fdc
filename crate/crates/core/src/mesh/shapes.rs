//! Procedural test meshes.

use super::{HalfEdgeMesh, Vec3};
use std::collections::HashMap;
use std::f64::consts::PI;

/// The cube [-1, 1]^3 with every square split along a diagonal
/// (8 vertices, 12 faces), oriented outwards.
pub fn cube() -> HalfEdgeMesh {
    let positions = (0..8)
        .map(|i| {
            Vec3::new(
                if i & 1 == 0 { -1.0 } else { 1.0 },
                if i & 2 == 0 { -1.0 } else { 1.0 },
                if i & 4 == 0 { -1.0 } else { 1.0 },
            )
        })
        .collect();
    // Each square listed counterclockwise seen from outside.
    let squares = [
        [0, 2, 3, 1], // z = -1
        [4, 5, 7, 6], // z = +1
        [0, 1, 5, 4], // y = -1
        [2, 6, 7, 3], // y = +1
        [0, 4, 6, 2], // x = -1
        [1, 3, 7, 5], // x = +1
    ];
    let faces = squares
        .iter()
        .flat_map(|q| [[q[0], q[1], q[2]], [q[0], q[2], q[3]]])
        .collect();
    HalfEdgeMesh::from_faces(positions, faces).expect("cube is a valid mesh")
}

/// Regular icosahedron refined `level` times by edge midpoint subdivision,
/// with all vertices projected to the unit sphere.
pub fn icosphere(level: usize) -> HalfEdgeMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut positions: Vec<Vec3> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|p| Vec3::from(*p).normalize())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, pos: &mut Vec<Vec3>| {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                pos.push(((pos[a] + pos[b]) * 0.5).normalize());
                pos.len() - 1
            })
        };
        let mut next = Vec::with_capacity(4 * faces.len());
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut positions);
            let bc = midpoint(b, c, &mut positions);
            let ca = midpoint(c, a, &mut positions);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    HalfEdgeMesh::from_faces(positions, faces).expect("icosphere is a valid mesh")
}

/// Latitude-longitude sphere with two poles, `rings` circles of latitude and
/// `segments` vertices per circle: 2 + rings * segments vertices and
/// 2 * rings * segments faces. The radius is modulated by
/// 1 + bump * sin(3 theta) cos(2 phi) so that the surface is not too
/// symmetric.
pub fn uv_sphere(rings: usize, segments: usize, bump: f64) -> HalfEdgeMesh {
    assert!(rings >= 1 && segments >= 3);
    let point = |theta: f64, phi: f64| {
        let r = 1.0 + bump * (3.0 * theta).sin() * (2.0 * phi).cos();
        r * Vec3::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        )
    };
    let mut positions = vec![point(0.0, 0.0)];
    for i in 1..=rings {
        let theta = PI * i as f64 / (rings + 1) as f64;
        for j in 0..segments {
            positions.push(point(theta, 2.0 * PI * j as f64 / segments as f64));
        }
    }
    positions.push(point(PI, 0.0));
    let south = positions.len() - 1;
    let ring = |i: usize, j: usize| 1 + i * segments + j % segments;
    let mut faces = Vec::with_capacity(2 * rings * segments);
    for j in 0..segments {
        faces.push([0, ring(0, j), ring(0, j + 1)]);
    }
    for i in 0..rings - 1 {
        for j in 0..segments {
            let (a, b, c, d) = (
                ring(i, j),
                ring(i, j + 1),
                ring(i + 1, j),
                ring(i + 1, j + 1),
            );
            faces.push([a, c, d]);
            faces.push([a, d, b]);
        }
    }
    for j in 0..segments {
        faces.push([south, ring(rings - 1, j + 1), ring(rings - 1, j)]);
    }
    HalfEdgeMesh::from_faces(positions, faces).expect("uv sphere is a valid mesh")
}

/// The square [0, 1]^2 in the plane z = 0 as an n x n grid of split
/// squares, with boundary.
pub fn flat_grid(n: usize) -> HalfEdgeMesh {
    height_grid(n, |_, _| 0.0)
}

/// The graph of `height` over [0, 1]^2 sampled on an n x n grid, with the
/// diagonals alternating so that the triangulation has no preferred
/// direction.
pub fn height_grid(n: usize, height: impl Fn(f64, f64) -> f64) -> HalfEdgeMesh {
    assert!(n >= 1);
    let id = |i: usize, j: usize| i * (n + 1) + j;
    let mut positions = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            let (x, y) = (j as f64 / n as f64, i as f64 / n as f64);
            positions.push(Vec3::new(x, y, height(x, y)));
        }
    }
    let mut faces = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b, c, d) = (id(i, j), id(i, j + 1), id(i + 1, j), id(i + 1, j + 1));
            if (i + j) % 2 == 0 {
                faces.push([a, b, d]);
                faces.push([a, d, c]);
            } else {
                faces.push([a, b, c]);
                faces.push([b, d, c]);
            }
        }
    }
    HalfEdgeMesh::from_faces(positions, faces).expect("grid is a valid mesh")
}
