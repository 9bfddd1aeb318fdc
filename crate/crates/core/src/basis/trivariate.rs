use super::{c_fn, s_fn, BasisFamily, FamilyTag};
use crate::error::{Error, Result};
use crate::jet::{Jet, Real};

/// Storage order of the ten trivariate functions: entry `n` holds the index
/// pair (r, s) of T_{r,s,3-r-s}.
pub const TRI_INDEX: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 0),
    (1, 1),
    (1, 2),
    (2, 0),
    (2, 1),
    (3, 0),
];

/// Position of T_{r,s,3-r-s} in [`TRI_INDEX`].
pub const fn tri_slot(r: usize, s: usize) -> usize {
    match r {
        0 => s,
        1 => 4 + s,
        2 => 7 + s,
        _ => 9,
    }
}

/// A point (u, v, w) of the domain u + v + w = beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarycentricPoint {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BarycentricPoint {
    pub fn new(u: f64, v: f64, w: f64, beta: f64) -> Result<Self> {
        let p = BarycentricPoint { u, v, w };
        p.check(beta)?;
        Ok(p)
    }

    /// Chart coordinates x = u, y = v with w eliminated.
    pub fn from_chart(x: f64, y: f64, beta: f64) -> Self {
        BarycentricPoint {
            u: x,
            v: y,
            w: beta - x - y,
        }
    }

    pub fn check(&self, beta: f64) -> Result<()> {
        let slack = 1e-12 * beta.max(1.0);
        let inside = |t: f64| t >= -slack && t <= beta + slack;
        if !(inside(self.u) && inside(self.v) && inside(self.w))
            || (self.u + self.v + self.w - beta).abs() > slack
        {
            return Err(Error::DomainError {
                value: self.u + self.v + self.w,
                domain: format!(
                    "u + v + w = {beta}, each in [0, {beta}] (got ({}, {}, {}))",
                    self.u, self.v, self.w
                ),
            });
        }
        Ok(())
    }
}

/// The ten constrained trivariate functions T_{r,s,3-r-s} on u + v + w = beta.
#[derive(Debug, Clone)]
pub struct TrivariateBasis {
    family: BasisFamily,
    k: [f64; 8],
}

/// Half-angle sines and cosines of one argument.
#[derive(Clone, Copy)]
struct Half<T> {
    s: T,
    c: T,
}

impl TrivariateBasis {
    pub fn new(family: BasisFamily) -> Result<Self> {
        family.validate()?;
        let beta = family.beta;
        let mut k = [0.0; 8];
        match family.tag {
            FamilyTag::Trigonometric | FamilyTag::Hyperbolic => {
                let hyp = family.tag == FamilyTag::Hyperbolic;
                let s2: f64 = s_fn(beta / 2.0, hyp);
                let c2: f64 = c_fn(beta / 2.0, hyp);
                let s4 = s2.powi(4);
                let s5 = s4 * s2;
                // For the hyperbolic system the coefficient of the central
                // product term carries the opposite sign; with the sign as in
                // the trigonometric system the functions do not sum to one.
                let central = if hyp { -1.0 } else { 1.0 };
                k = [
                    1.0 / s4,
                    4.0 * c2 / s4,
                    (2.0 + 4.0 * c2 * c2) / s4,
                    (4.0 + 8.0 * c2 * c2) / s5,
                    (16.0 * c2 + 8.0 * c2.powi(3)) / s5,
                    central * (10.0 + 20.0 * c2 * c2) / s4,
                    0.0,
                    0.0,
                ];
            }
            FamilyTag::AlgebraicTrigonometric => {
                let (sb, cb) = beta.sin_cos();
                let e = 2.0 * sb - beta - beta * cb;
                let f = beta - sb;
                let ch = (beta / 2.0).cos();
                k = [
                    1.0 / f,
                    sb / (e * f),
                    4.0 * (3.0 * beta + 4.0 * sb - beta * cb) * ch / (e * f),
                    4.0 * sb * ch / (e * f),
                    sb,
                    cb,
                    0.0,
                    0.0,
                ];
            }
            _ => {}
        }
        Ok(TrivariateBasis { family, k })
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn beta(&self) -> f64 {
        self.family.beta
    }

    /// All ten functions at a generic point, in [`TRI_INDEX`] order.
    pub fn funcs<T: Real>(&self, u: T, v: T, w: T) -> [T; 10] {
        match self.family.tag {
            FamilyTag::CubicBernstein => {
                let m = |r: i32, s: i32, t: i32, c: f64| u.powi(r) * v.powi(s) * w.powi(t) * c;
                [
                    m(0, 0, 3, 1.0),
                    m(0, 1, 2, 3.0),
                    m(0, 2, 1, 3.0),
                    m(0, 3, 0, 1.0),
                    m(1, 0, 2, 3.0),
                    m(1, 1, 1, 6.0),
                    m(1, 2, 0, 3.0),
                    m(2, 0, 1, 3.0),
                    m(2, 1, 0, 3.0),
                    m(3, 0, 0, 1.0),
                ]
            }
            FamilyTag::QuarticBernsteinBlended => self.quartic(u, v, w),
            FamilyTag::Trigonometric | FamilyTag::Hyperbolic => self.trigonometric(u, v, w),
            FamilyTag::AlgebraicTrigonometric => self.algebraic_trigonometric(u, v, w),
        }
    }

    fn quartic<T: Real>(&self, u: T, v: T, w: T) -> [T; 10] {
        let fact = [1.0, 1.0, 2.0, 6.0, 24.0];
        let b = |r: usize, s: usize, t: usize| {
            u.powi(r as i32)
                * v.powi(s as i32)
                * w.powi(t as i32)
                * (24.0 / (fact[r] * fact[s] * fact[t]))
        };
        [
            b(0, 0, 4),
            b(0, 1, 3) + b(0, 2, 2) * 0.5,
            b(0, 2, 2) * 0.5 + b(0, 3, 1),
            b(0, 4, 0),
            b(1, 0, 3) + b(2, 0, 2) * 0.5,
            b(1, 1, 2) + b(1, 2, 1) + b(2, 1, 1),
            b(1, 3, 0) + b(2, 2, 0) * 0.5,
            b(2, 0, 2) * 0.5 + b(3, 0, 1),
            b(2, 2, 0) * 0.5 + b(3, 1, 0),
            b(4, 0, 0),
        ]
    }

    fn trigonometric<T: Real>(&self, u: T, v: T, w: T) -> [T; 10] {
        let hyp = self.family.tag == FamilyTag::Hyperbolic;
        let half = |t: T| Half {
            s: s_fn(t * 0.5, hyp),
            c: c_fn(t * 0.5, hyp),
        };
        let (hu, hv, hw) = (half(u), half(v), half(w));
        let k = &self.k;
        // The red group R(a, b, c); the green and blue groups are R at the
        // cyclically permuted arguments (w, u, v) and (v, w, u).
        let r440 = |a: Half<T>| a.s.powi(4) * k[0];
        let r430 = |a: Half<T>, b: Half<T>, c: Half<T>| a.s.powi(3) * c.s * b.c * k[1];
        let r420 = |a: Half<T>, b: Half<T>, c: Half<T>| (a.s * c.s * b.c).powi(2) * k[2];
        let r431 = |a: Half<T>, b: Half<T>, c: Half<T>| a.s.powi(3) * c.s * b.s * k[3];
        let r421 = |a: Half<T>, b: Half<T>, c: Half<T>| (a.s * c.s).powi(2) * b.c * b.s * k[4];
        let r422 = (hu.s * hv.s * hw.s).powi(2) * k[5];

        // R_{4,1,0}(u,v,w) = R_{4,3,0}(w,v,u)
        let r_410 = r430(hw, hv, hu);
        let r_430 = r430(hu, hv, hw);
        let r_420 = r420(hu, hv, hw);
        // G(u,v,w) = R(w,u,v); G_{4,1,0}(u,v,w) = G_{4,3,0}(u,w,v) = R_{4,3,0}(v,u,w)
        let g_440 = r440(hw);
        let g_430 = r430(hw, hu, hv);
        let g_420 = r420(hw, hu, hv);
        let g_410 = r430(hv, hu, hw);
        // B(u,v,w) = R(v,w,u); B_{4,1,0}(u,v,w) = B_{4,3,0}(v,u,w) = R_{4,3,0}(u,w,v)
        let b_440 = r440(hv);
        let b_430 = r430(hv, hw, hu);
        let b_420 = r420(hv, hw, hu);
        let b_410 = r430(hu, hw, hv);

        let center = r431(hu, hv, hw)
            + r421(hu, hv, hw)
            + r422
            + r431(hw, hu, hv)
            + r421(hw, hu, hv)
            + r431(hv, hw, hu)
            + r421(hv, hw, hu);

        [
            g_440,
            g_430 + g_420 * 0.5,
            g_420 * 0.5 + g_410,
            b_440,
            r_420 * 0.5 + r_410,
            center,
            b_430 + b_420 * 0.5,
            r_430 + r_420 * 0.5,
            b_420 * 0.5 + b_410,
            r440(hu),
        ]
    }

    fn algebraic_trigonometric<T: Real>(&self, u: T, v: T, w: T) -> [T; 10] {
        let beta = self.family.beta;
        let k = &self.k;
        let t300 = |a: T| (a - a.sin()) * k[0];
        // T_{2,1,0}(a, b, c) exactly as printed, with beta - c kept as written.
        let t210 = |a: T, b: T, c: T| {
            let bc = T::cst(beta) - c;
            (b + b.sin() + a.sin() - bc.sin() + a * bc.cos() - bc * a.cos()) * k[1]
        };
        let (su, sv, sw) = ((u * 0.5).sin(), (v * 0.5).sin(), (w * 0.5).sin());
        let (cu, cv, cw) = ((u * 0.5).cos(), (v * 0.5).cos(), (w * 0.5).cos());
        let t111 =
            su * sv * sw * k[2] - (u * cu * sv * sw + v * su * cv * sw + w * su * sv * cw) * k[3];
        // Symmetries: T201(u,v,w)=T210(u,w,v), T120(u,v,w)=T210(v,u,w),
        // T102(u,v,w)=T201(w,v,u)=T210(w,u,v), T021(u,v,w)=T120(w,v,u)=T210(v,w,u),
        // T012(u,v,w)=T021(u,w,v)=T210(w,v,u).
        [
            t300(w),
            t210(w, v, u),
            t210(v, w, u),
            t300(v),
            t210(w, u, v),
            t111,
            t210(v, u, w),
            t210(u, w, v),
            t210(u, v, w),
            t300(u),
        ]
    }

    /// T_{r,s,3-r-s} at a domain point.
    pub fn eval(&self, idx: (usize, usize), p: BarycentricPoint) -> Result<f64> {
        check_index(idx)?;
        p.check(self.beta())?;
        Ok(self.funcs(p.u, p.v, p.w)[tri_slot(idx.0, idx.1)])
    }

    /// All ten functions in [`TRI_INDEX`] order, without a domain check.
    pub fn eval_all(&self, p: BarycentricPoint) -> [f64; 10] {
        self.funcs(p.u, p.v, p.w)
    }

    /// Value, gradient and Hessian of every function in the chart
    /// x = u, y = v, w = beta - x - y.
    pub fn chart_jets(&self, x: f64, y: f64) -> [Jet<2>; 10] {
        let u = Jet::<2>::var(x, 0);
        let v = Jet::<2>::var(y, 1);
        let w = Jet::<2>::constant(self.beta()) - u - v;
        self.funcs(u, v, w)
    }

    /// Partial derivative d^(dx+dy) / dx^dx dy^dy of T_{r,s,3-r-s} in the chart.
    pub fn eval_partial(
        &self,
        idx: (usize, usize),
        x: f64,
        y: f64,
        dx_order: usize,
        dy_order: usize,
    ) -> Result<f64> {
        check_index(idx)?;
        BarycentricPoint::from_chart(x, y, self.beta()).check(self.beta())?;
        if dx_order + dy_order > 2 {
            return Err(Error::DomainError {
                value: (dx_order + dy_order) as f64,
                domain: "total derivative order 0..=2".into(),
            });
        }
        let j = self.chart_jets(x, y)[tri_slot(idx.0, idx.1)];
        Ok(jet_partial(&j, dx_order, dy_order))
    }
}

/// Extract a chart partial derivative of total order at most 2 from a jet.
pub(crate) fn jet_partial(j: &Jet<2>, dx: usize, dy: usize) -> f64 {
    match (dx, dy) {
        (0, 0) => j.v,
        (1, 0) => j.g[0],
        (0, 1) => j.g[1],
        (2, 0) => j.h[0][0],
        (1, 1) => j.h[0][1],
        (0, 2) => j.h[1][1],
        _ => unreachable!("derivative order above two"),
    }
}

fn check_index(idx: (usize, usize)) -> Result<()> {
    if idx.0 > 3 || idx.1 > 3 - idx.0.min(3) {
        return Err(Error::DomainError {
            value: (idx.0 * 10 + idx.1) as f64,
            domain: "index pair (r, s) with r + s <= 3".into(),
        });
    }
    Ok(())
}
