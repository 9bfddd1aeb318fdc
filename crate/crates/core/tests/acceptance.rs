//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! a failure status if any criterion fails.

use nalgebra::{Matrix3, Rotation3, Unit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;
use trispline::basis::{BasisFamily, FamilyTag, TrivariateBasis, UnivariateBasis};
use trispline::c0_patch::{solve_interior_point, thin_plate_energy, ControlNet};
use trispline::curve_network::{control_points, energy_gradient, solve_edge, strain_energy};
use trispline::mesh::{shapes, HalfEdgeMesh, Vec3};
use trispline::nielson::{BlendKind, NielsonSurface};
use trispline::pipeline::{run_pipeline, tessellate_surface, PipelineConfig};
use trispline::tables::{
    phi_closed, phi_quadrature, tau_closed, tau_quadrature, EnergyWeights, PhiTable, TauSet,
    ThinPlateGram,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_families() -> Vec<BasisFamily> {
    FamilyTag::ALL
        .iter()
        .flat_map(|&t| BasisFamily::sample_set(t))
        .collect()
}

fn closed_tau_families() -> Vec<BasisFamily> {
    all_families()
        .into_iter()
        .filter(|f| f.tag != FamilyTag::Hyperbolic)
        .collect()
}

fn default_families() -> Vec<BasisFamily> {
    FamilyTag::ALL
        .iter()
        .map(|&t| BasisFamily::with_default_beta(t))
        .collect()
}

fn unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n < 1.0 {
            return v / n;
        }
    }
}

fn point(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    Vec3::new(
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
    )
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for fam in all_families() {
        let uni = UnivariateBasis::new(fam).map_err(|e| e.to_string())?;
        for r in 1..=2 {
            let c = phi_closed(fam, r).map_err(|e| e.to_string())?;
            let q = phi_quadrature(&uni, r, 1e-12).map_err(|e| e.to_string())?;
            for k in 0..4 {
                for l in 0..4 {
                    worst = worst.max((c.get(k, l) - q.get(k, l)).abs());
                }
            }
        }
    }
    let cubic = phi_closed(BasisFamily::cubic(), 1).map_err(|e| e.to_string())?;
    let printed = [
        ((0, 1), -9.0 / 10.0),
        ((0, 2), -3.0 / 5.0),
        ((1, 1), 6.0 / 5.0),
        ((1, 2), 3.0 / 10.0),
    ];
    let exact = printed.iter().all(|&((k, l), v)| cubic.get(k, l) == v);
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-9 && exact && secs < 10.0,
        format!("max |closed - quadrature| = {worst:.2e}, cubic r=1 printed values exact: {exact}, {secs:.2} s"),
    )
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for fam in closed_tau_families() {
        let tri = TrivariateBasis::new(fam).map_err(|e| e.to_string())?;
        for g in 1..=2 {
            let c = tau_closed(fam, g).map_err(|e| e.to_string())?;
            let q = tau_quadrature(&tri, g, 1e-12).map_err(|e| e.to_string())?;
            for z in 0..=g {
                for k in 0..10 {
                    worst = worst.max((c.values[z][k] - q.values[z][k]).abs());
                }
            }
        }
    }
    let quartic = tau_closed(BasisFamily::quartic(), 2)
        .map_err(|e| e.to_string())?
        .get(0, (1, 1));
    let cubic = tau_closed(BasisFamily::cubic(), 1)
        .map_err(|e| e.to_string())?
        .get(0, (1, 1));
    let exact = quartic == 48.0 && (cubic - 0.2).abs() <= f64::EPSILON * 0.2;
    check(
        worst <= 1e-8 && exact,
        format!("max |closed - quadrature| = {worst:.2e}, quartic tau^(0,2)_111 = {quartic}, cubic tau^(0,1)_111 = {cubic}"),
    )
}

fn criterion_3() -> Outcome {
    let mut phi_worst: f64 = 0.0;
    let mut tau_worst: f64 = 0.0;
    for fam in all_families() {
        for r in 1..=2 {
            let c = phi_closed(fam, r).map_err(|e| e.to_string())?;
            phi_worst = c.row_sums().iter().fold(phi_worst, |m, s| m.max(s.abs()));
        }
    }
    for fam in closed_tau_families() {
        for g in 1..=2 {
            let c = tau_closed(fam, g).map_err(|e| e.to_string())?;
            for z in 0..=g {
                tau_worst = tau_worst.max(c.index_sum(z).abs());
            }
        }
    }
    check(
        phi_worst <= 1e-12 && tau_worst <= 1e-12,
        format!("max |phi row sum| = {phi_worst:.2e}, max |tau index sum| = {tau_worst:.2e}"),
    )
}

fn random_edge(rng: &mut ChaCha8Rng) -> (Vec3, Vec3, Vec3, Vec3) {
    (point(rng, 2.0), point(rng, 2.0), unit(rng), unit(rng))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn criterion_4() -> Outcome {
    let phi = phi_closed(BasisFamily::cubic(), 1).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (pi, pj, tij, tji) = random_edge(&mut rng);
        let s = solve_edge(&pi, &pj, &tij, &tji, &phi).map_err(|e| e.to_string())?;
        let d = pj - pi;
        let t = tij.dot(&tji);
        let lij = d.dot(&(t * tji + 4.0 * tij)) / (16.0 - t * t);
        let lji = (-d).dot(&(t * tij + 4.0 * tji)) / (16.0 - t * t);
        worst = worst.max(rel(s.lambda_ij, lij)).max(rel(s.lambda_ji, lji));
    }
    check(
        worst <= 1e-12,
        format!("1000 random edges, max deviation {worst:.2e}"),
    )
}

/// Coefficients (a, b, c) with
/// `l_ij = <d, a t_ij + b <t_ij, t_ji> t_ji> / (1 - c <t_ij, t_ji>^2)`,
/// read off from the table.
fn solver_coefficients(phi: &PhiTable) -> (f64, f64, f64) {
    let (p11, p12, p22) = (phi.get(1, 1), phi.get(1, 2), phi.get(2, 2));
    let a1 = -(phi.get(1, 2) + phi.get(1, 3));
    let a2 = phi.get(2, 0) + phi.get(2, 1);
    (a1 / p11, -p12 * a2 / (p11 * p22), p12 * p12 / (p11 * p22))
}

fn compare_with_printed(
    phi: &PhiTable,
    a: f64,
    b: f64,
    c: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(f64, f64), String> {
    let (x, y, z) = solver_coefficients(phi);
    let coeff = rel(x, a).max(rel(y, b)).max(rel(z, c));
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (pi, pj, tij, tji) = random_edge(rng);
        let s = solve_edge(&pi, &pj, &tij, &tji, phi).map_err(|e| e.to_string())?;
        let d = pj - pi;
        let t = tij.dot(&tji);
        let lij = d.dot(&(a * tij + b * t * tji)) / (1.0 - c * t * t);
        let lji = (-d).dot(&(a * tji + b * t * tij)) / (1.0 - c * t * t);
        worst = worst.max(rel(s.lambda_ij, lij)).max(rel(s.lambda_ji, lji));
    }
    Ok((coeff, worst))
}

fn criterion_5() -> Outcome {
    let theta = EnergyWeights::new(vec![1.0, 1.0]).map_err(|e| e.to_string())?;
    let phi = PhiTable::closed_combined(BasisFamily::cubic(), &theta).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (coeff, solve) = compare_with_printed(
        &phi,
        7564.0 / 15376.0,
        -3599.0 / 15376.0,
        3481.0 / 15376.0,
        &mut rng,
    )?;
    check(
        coeff <= 1e-12 && solve <= 1e-12,
        format!("coefficient ratios off by {coeff:.2e}, solver vs printed formula {solve:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let fam = BasisFamily::trigonometric(PI / 2.0).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut coeff: f64 = 0.0;
    let mut solve: f64 = 0.0;
    // Printed as k / (2 (A^2 - B^2 t^2)) <d, A t_ij + s B t t_ji>, so
    // a = k / (2 A), b = s k B / (2 A^2), c = B^2 / A^2.
    let cases = [
        (
            vec![1.0, 0.0],
            3.0 * PI - 8.0,
            6.0 * PI - 16.0,
            10.0 - 3.0 * PI,
            1.0,
        ),
        (
            vec![1.0, 1.0],
            15.0 * PI - 16.0,
            21.0 * PI - 32.0,
            15.0 * PI - 32.0,
            -1.0,
        ),
    ];
    for (theta, k, a, b, sign) in cases {
        let w = EnergyWeights::new(theta).map_err(|e| e.to_string())?;
        let phi = PhiTable::closed_combined(fam, &w).map_err(|e| e.to_string())?;
        let (x, y) = compare_with_printed(
            &phi,
            k / (2.0 * a),
            sign * k * b / (2.0 * a * a),
            b * b / (a * a),
            &mut rng,
        )?;
        coeff = coeff.max(x);
        solve = solve.max(y);
    }
    check(
        coeff <= 1e-12 && solve <= 1e-12,
        format!("theta = (1,0) and (1,1): coefficients off by {coeff:.2e}, solver vs printed formula {solve:.2e}"),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut stationarity: f64 = 0.0;
    let mut violations = 0;
    for fam in default_families() {
        let theta = EnergyWeights::new(vec![1.0, 1.0]).map_err(|e| e.to_string())?;
        let phi = PhiTable::closed_combined(fam, &theta).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let (pi, pj, tij, tji) = random_edge(&mut rng);
            let s = solve_edge(&pi, &pj, &tij, &tji, &phi).map_err(|e| e.to_string())?;
            let c = control_points(&pi, &pj, &tij, &tji, s.lambda_ij, s.lambda_ji);
            let e0 = strain_energy(&c, &phi);
            let g = energy_gradient(&c, &tij, &tji, &phi);
            // Gradient relative to the size of its separate contributions.
            let scale = (pj - pi).norm().max(1e-300) * (phi.get(1, 1).abs() + phi.get(2, 2).abs());
            stationarity = stationarity.max(g[0].abs().max(g[1].abs()) / scale);
            for _ in 0..100 {
                let d0 = rng.gen_range(-1.0..1.0) * 10f64.powf(rng.gen_range(-4.0..0.0));
                let d1 = rng.gen_range(-1.0..1.0) * 10f64.powf(rng.gen_range(-4.0..0.0));
                let cp = control_points(&pi, &pj, &tij, &tji, s.lambda_ij + d0, s.lambda_ji + d1);
                if strain_energy(&cp, &phi) < e0 - 1e-13 * e0.abs() {
                    violations += 1;
                }
            }
        }
    }
    check(
        violations == 0 && stationarity <= 1e-9,
        format!("5 families x 100 edges x 100 perturbations: {violations} lower energies, max relative gradient {stationarity:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut violations = 0;
    let mut fixed: f64 = 0.0;
    for fam in default_families() {
        let tri = TrivariateBasis::new(fam).map_err(|e| e.to_string())?;
        let taus = TauSet::for_family(fam, 1e-11).map_err(|e| e.to_string())?;
        let gram = ThinPlateGram::quadrature(&tri, 1e-11).map_err(|e| e.to_string())?;
        for eps in [vec![1.0], vec![1.0, 1.0]] {
            let w = EnergyWeights::new(eps).map_err(|e| e.to_string())?;
            for _ in 0..20 {
                let mut net = ControlNet {
                    face: [0, 1, 2],
                    points: std::array::from_fn(|_| point(&mut rng, 1.0)),
                };
                let p = solve_interior_point(&net, &taus, &w).map_err(|e| e.to_string())?;
                net.points[trispline::basis::tri_slot(1, 1)] = p;
                let e0 = thin_plate_energy(&net, &gram, &w);
                for _ in 0..50 {
                    let mut q = net.clone();
                    let delta = unit(&mut rng) * 10f64.powf(rng.gen_range(-4.0..0.0));
                    q.points[trispline::basis::tri_slot(1, 1)] = p + delta;
                    if thin_plate_energy(&q, &gram, &w) < e0 - 1e-12 * e0.abs() {
                        violations += 1;
                    }
                }
            }
            let c = Vec3::new(0.3, -1.7, 2.5);
            let constant = ControlNet {
                face: [0, 1, 2],
                points: [c; 10],
            };
            let p = solve_interior_point(&constant, &taus, &w).map_err(|e| e.to_string())?;
            fixed = fixed.max((p - c).norm());
        }
    }
    check(
        violations == 0 && fixed <= 1e-12,
        format!("5 families x 2 orders x 20 nets x 50 perturbations: {violations} lower energies, constant net error {fixed:.2e}"),
    )
}

fn surface_for(mesh: HalfEdgeMesh, blend: BlendKind) -> Result<NielsonSurface, String> {
    let config = PipelineConfig {
        blend,
        ..Default::default()
    };
    run_pipeline(&config, mesh)
        .map(|o| o.surface)
        .map_err(|e| e.to_string())
}

fn criterion_9() -> Outcome {
    let mut corner: f64 = 0.0;
    let mut boundary: f64 = 0.0;
    let mut across: f64 = 0.0;
    for mesh in [shapes::cube(), shapes::icosphere(2)] {
        let s = surface_for(mesh, BlendKind::RationalDeg2)?;
        let beta = s.beta();
        for f in 0..s.mesh.n_faces() {
            let face = s.mesh.face(f);
            let patch = s.patch(f);
            for c in 0..3 {
                let mut b = [0.0; 3];
                b[c] = 1.0;
                let p = patch.eval(b).map_err(|e| e.to_string())?;
                corner = corner.max((p - s.mesh.position(face[c])).norm());
                let (a, bb) = (face[c], face[(c + 1) % 3]);
                for m in 0..=50 {
                    let x = m as f64 / 50.0;
                    let mut bc = [0.0; 3];
                    bc[c] = 1.0 - x;
                    bc[(c + 1) % 3] = x;
                    let p = patch.eval(bc).map_err(|e| e.to_string())?;
                    let q = s
                        .network
                        .eval_curve(a, bb, beta * x, 0)
                        .map_err(|e| e.to_string())?;
                    boundary = boundary.max((p - q).norm());
                    // The same point seen from the other face.
                    if let Some(t) = s.mesh.twin(3 * f + c) {
                        let (g, sg) = (t / 3, t % 3);
                        let mut bg = [0.0; 3];
                        bg[sg] = x;
                        bg[(sg + 1) % 3] = 1.0 - x;
                        let r = s.patch(g).eval(bg).map_err(|e| e.to_string())?;
                        across = across.max((p - r).norm());
                    }
                }
            }
        }
    }
    check(
        corner <= 1e-9 && boundary <= 1e-10 && across <= 1e-10,
        format!("cube and icosphere: corner {corner:.2e}, boundary {boundary:.2e}, across faces {across:.2e}"),
    )
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut sides: f64 = 0.0;
    let mut field: f64 = 0.0;
    let mut samples = 0;
    for blend in [BlendKind::RationalDeg2, BlendKind::RationalDeg1] {
        for mesh in [shapes::cube(), shapes::icosphere(2)] {
            let s = surface_for(mesh, blend)?;
            let d = s.g1_defect(20, 1e-6).map_err(|e| e.to_string())?;
            sides = sides.max(d.between_sides);
            field = field.max(d.to_field);
            samples += d.samples;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        sides <= 1e-3 && field <= 1e-3 && secs < 60.0,
        format!("{samples} samples, both blends: between sides {sides:.2e} rad, to field {field:.2e} rad, {secs:.1} s"),
    )
}

fn criterion_11() -> Outcome {
    let mesh = shapes::icosphere(1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let axis = Unit::new_normalize(unit(&mut rng));
    let rot: Matrix3<f64> = *Rotation3::from_axis_angle(&axis, 1.234).matrix();
    let shift = Vec3::new(3.0, -2.0, 5.0);
    let base = surface_for(mesh.clone(), BlendKind::RationalDeg2)?;
    let moved = surface_for(mesh.transformed(&rot, &shift), BlendKind::RationalDeg2)?;
    let mut rigid: f64 = 0.0;
    for f in 0..mesh.n_faces() {
        let (pa, pb) = (base.patch(f), moved.patch(f));
        for b in [
            [0.2, 0.3, 0.5],
            [0.6, 0.2, 0.2],
            [0.05, 0.9, 0.05],
            [0.0, 0.5, 0.5],
        ] {
            let p = pa.eval(b).map_err(|e| e.to_string())?;
            let q = pb.eval(b).map_err(|e| e.to_string())?;
            rigid = rigid.max((rot * p + shift - q).norm());
        }
    }
    let s = 3.7;
    let scaled = surface_for(
        mesh.transformed(&(Matrix3::identity() * s), &Vec3::zeros()),
        BlendKind::RationalDeg2,
    )?;
    let mut scale: f64 = 0.0;
    for (a, b) in base
        .network
        .solutions()
        .iter()
        .zip(scaled.network.solutions())
    {
        scale = scale
            .max((b.lambda_ij - s * a.lambda_ij).abs() / (s * a.lambda_ij).abs())
            .max((b.lambda_ji - s * a.lambda_ji).abs() / (s * a.lambda_ji).abs());
    }
    check(
        rigid <= 1e-9 && scale <= 1e-12,
        format!("rigid motion {rigid:.2e}, scaling by {s}: relative lambda error {scale:.2e}"),
    )
}

fn criterion_12() -> Outcome {
    let start = Instant::now();
    let mesh = shapes::uv_sphere(29, 33, 0.1);
    let (nv, nf) = (mesh.n_vertices(), mesh.n_faces());
    let out = run_pipeline(&PipelineConfig::default(), mesh).map_err(|e| e.to_string())?;
    let t = tessellate_surface(&out.surface, 8).map_err(|e| e.to_string())?;
    let mut obj = Vec::new();
    t.write_obj(&mut obj).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    check(
        nv == 959 && nf == 1914 && t.faces.len() == 64 * nf && secs < 120.0,
        format!(
            "n_v = {nv}, n_f = {nf}, {} output triangles, {secs:.1} s",
            t.faces.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("univariate tables against quadrature", criterion_1),
        ("trivariate tables against quadrature", criterion_2),
        ("partition of unity sums", criterion_3),
        ("cubic first order solution formula", criterion_4),
        ("cubic mixed order solution formula", criterion_5),
        ("trigonometric solution formulas", criterion_6),
        ("curve optimality", criterion_7),
        ("interior point optimality", criterion_8),
        ("surface interpolation", criterion_9),
        ("G1 continuity", criterion_10),
        ("rigid motion and scaling", criterion_11),
        ("desk-scale end to end run", criterion_12),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
