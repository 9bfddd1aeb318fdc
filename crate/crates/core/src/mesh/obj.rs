use super::{HalfEdgeMesh, Vec3};
use crate::error::{Error, Result};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// Read `v` and `f` records of a Wavefront OBJ stream. Face corners may carry
/// texture and normal indices (`a/b/c`, `a//c`), which are ignored, and may be
/// negative (relative to the end of the vertex list). All other records are
/// skipped.
pub fn load_obj<R: BufRead>(reader: R) -> Result<HalfEdgeMesh> {
    let mut positions = Vec::new();
    let mut faces = Vec::new();
    for (ln, line) in reader.lines().enumerate() {
        let line_no = ln + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("v") => {
                let mut xyz = [0.0; 3];
                for c in xyz.iter_mut() {
                    let t = tok.next().ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: "vertex needs three coordinates".into(),
                    })?;
                    *c = t.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid coordinate {t:?}"),
                    })?;
                }
                positions.push(Vec3::from(xyz));
            }
            Some("f") => {
                let corners: Vec<&str> = tok.collect();
                if corners.len() != 3 {
                    return Err(Error::NonTriangleFace {
                        line: line_no,
                        count: corners.len(),
                    });
                }
                let mut face = [0usize; 3];
                for (slot, c) in face.iter_mut().zip(&corners) {
                    let head = c.split('/').next().unwrap_or("");
                    let idx: i64 = head.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid vertex index {c:?}"),
                    })?;
                    let count = positions.len();
                    let resolved = if idx > 0 { idx - 1 } else { count as i64 + idx };
                    if idx == 0 || resolved < 0 || resolved >= count as i64 {
                        return Err(Error::IndexOutOfRange {
                            line: line_no,
                            index: idx,
                            count,
                        });
                    }
                    *slot = resolved as usize;
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    HalfEdgeMesh::from_faces(positions, faces)
}

pub fn load_obj_file(path: impl AsRef<Path>) -> Result<HalfEdgeMesh> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_obj(BufReader::new(file))
}

/// Write a triangle mesh, with per-vertex normals when given. Coordinates
/// are printed with 17 significant digits so the output round-trips.
pub fn write_obj<W: Write>(
    mut w: W,
    positions: &[Vec3],
    normals: Option<&[Vec3]>,
    faces: &[[usize; 3]],
) -> std::io::Result<()> {
    for p in positions {
        writeln!(w, "v {:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
    }
    if let Some(ns) = normals {
        for n in ns {
            writeln!(w, "vn {:.16e} {:.16e} {:.16e}", n.x, n.y, n.z)?;
        }
    }
    for f in faces {
        let [a, b, c] = f.map(|i| i + 1);
        if normals.is_some() {
            writeln!(w, "f {a}//{a} {b}//{b} {c}//{c}")?;
        } else {
            writeln!(w, "f {a} {b} {c}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 3\nf 2 4 3\n";

    #[test]
    fn parses_attributes_and_comments() {
        let src = "# comment\nv 0 0 0\nv 1 0 0\nvn 0 0 1\nv 0 1 0\nf 1//1 2//1 -1//1\n";
        let m = load_obj(src.as_bytes()).unwrap();
        assert_eq!((m.n_vertices(), m.n_faces()), (3, 1));
        assert_eq!(m.face(0), [0, 1, 2]);
        assert_eq!(m.n_boundary_edges(), 3);
    }

    #[test]
    fn shared_edge_has_twins() {
        let m = load_obj(TWO.as_bytes()).unwrap();
        assert_eq!(m.n_edges(), 5);
        assert_eq!(m.n_boundary_edges(), 4);
        assert!(m.check_invariants());
    }

    #[test]
    fn format_violations() {
        let quad = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
        assert!(matches!(
            load_obj(quad.as_bytes()),
            Err(Error::NonTriangleFace { line: 5, count: 4 })
        ));
        let same_dir = "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 -1 0\nf 1 2 3\nf 1 2 4\n";
        assert!(matches!(
            load_obj(same_dir.as_bytes()),
            Err(Error::NonManifoldEdge { from: 0, to: 1 })
        ));
        let oob = "v 0 0 0\nv 1 0 0\nf 1 2 3\n";
        assert!(matches!(
            load_obj(oob.as_bytes()),
            Err(Error::IndexOutOfRange {
                line: 3,
                index: 3,
                count: 2
            })
        ));
        assert!(matches!(
            load_obj("v 0 0 0\n".as_bytes()),
            Err(Error::EmptyMesh)
        ));
        assert!(matches!(
            load_obj("v 0 x 0\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn write_then_read_round_trips() {
        let m = load_obj(TWO.as_bytes()).unwrap();
        let mut buf = Vec::new();
        let ns = vec![Vec3::z(); 4];
        write_obj(&mut buf, m.positions(), Some(&ns), m.faces()).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("f 2//2 4//4 3//3\n"));
        assert!(!text.contains('\r'));
        let back = load_obj(buf.as_slice()).unwrap();
        assert_eq!(back.positions(), m.positions());
        assert_eq!(back.faces(), m.faces());
    }
}
