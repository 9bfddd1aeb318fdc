use super::{c_fn, s_fn, BasisFamily, FamilyTag};
use crate::error::{Error, Result};
use crate::jet::{Jet, Real};

/// The four univariate basis functions B_{3,0..3} on [0, beta].
#[derive(Debug, Clone)]
pub struct UnivariateBasis {
    family: BasisFamily,
    /// Normalizing constants c_r, r = 0..4, of the degree-4 trigonometric or
    /// hyperbolic system. Unused by the other families.
    c: [f64; 5],
    /// Algebraic-trigonometric constants 1/(beta - sin beta) and
    /// sin(beta) / ((beta - sin beta)(2 sin beta - beta - beta cos beta)).
    at: [f64; 2],
}

impl UnivariateBasis {
    pub fn new(family: BasisFamily) -> Result<Self> {
        family.validate()?;
        let beta = family.beta;
        let mut c = [0.0; 5];
        let mut at = [0.0; 2];
        match family.tag {
            FamilyTag::Trigonometric | FamilyTag::Hyperbolic => {
                let hyp = family.tag == FamilyTag::Hyperbolic;
                let s2: f64 = s_fn(beta / 2.0, hyp);
                let c2: f64 = c_fn(beta / 2.0, hyp);
                let binom = |n: usize, k: usize| -> f64 {
                    if k > n {
                        0.0
                    } else {
                        (1..=k).fold(1.0, |acc, i| acc * (n + 1 - i) as f64 / i as f64)
                    }
                };
                for r in 0..=4usize {
                    let rr = r.min(4 - r);
                    let mut sum = 0.0;
                    for l in 0..=rr / 2 {
                        sum += binom(2, rr - l)
                            * binom(rr - l, l)
                            * (2.0 * c2).powi((rr - 2 * l) as i32);
                    }
                    c[r] = sum / s2.powi(4);
                }
            }
            FamilyTag::AlgebraicTrigonometric => {
                let (sb, cb) = beta.sin_cos();
                let f = beta - sb;
                let e = 2.0 * sb - beta - beta * cb;
                at = [1.0 / f, sb / (f * e)];
            }
            _ => {}
        }
        Ok(UnivariateBasis { family, c, at })
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn beta(&self) -> f64 {
        self.family.beta
    }

    /// Highest derivative order available from [`UnivariateBasis::eval`].
    pub fn max_derivative_order(&self) -> usize {
        2
    }

    /// The trigonometric or hyperbolic normalizing constants c_0..c_4.
    pub fn normalizing_constants(&self) -> [f64; 5] {
        self.c
    }

    /// Evaluate all four functions at a generic scalar.
    pub fn funcs<T: Real>(&self, x: T) -> [T; 4] {
        let beta = self.family.beta;
        match self.family.tag {
            FamilyTag::CubicBernstein => {
                let y = T::cst(1.0) - x;
                [
                    y.powi(3),
                    x * y.powi(2) * 3.0,
                    x.powi(2) * y * 3.0,
                    x.powi(3),
                ]
            }
            FamilyTag::QuarticBernsteinBlended => {
                let y = T::cst(1.0) - x;
                let b1 = x * y.powi(3) * 4.0;
                let b2 = x.powi(2) * y.powi(2) * 6.0;
                let b3 = x.powi(3) * y * 4.0;
                [y.powi(4), b1 + b2 * 0.5, b2 * 0.5 + b3, x.powi(4)]
            }
            FamilyTag::Trigonometric | FamilyTag::Hyperbolic => {
                let hyp = self.family.tag == FamilyTag::Hyperbolic;
                let a = s_fn((T::cst(beta) - x) * 0.5, hyp);
                let b = s_fn(x * 0.5, hyp);
                let c = &self.c;
                let t0 = a.powi(4) * c[0];
                let t1 = a.powi(3) * b * c[1];
                let t2 = a.powi(2) * b.powi(2) * c[2];
                let t3 = a * b.powi(3) * c[3];
                let t4 = b.powi(4) * c[4];
                [t0, t1 + t2 * 0.5, t2 * 0.5 + t3, t4]
            }
            FamilyTag::AlgebraicTrigonometric => {
                let y = T::cst(beta) - x;
                [self.at_b3(y), self.at_b2(y), self.at_b2(x), self.at_b3(x)]
            }
        }
    }

    fn at_b3<T: Real>(&self, x: T) -> T {
        (x - x.sin()) * self.at[0]
    }

    fn at_b2<T: Real>(&self, x: T) -> T {
        let beta = self.family.beta;
        let (sb, cb) = beta.sin_cos();
        let y = T::cst(beta) - x;
        (y + y.sin() + x.sin() - sb + x * cb - x.cos() * beta) * self.at[1]
    }

    /// Values and first two derivatives of all four functions, without a
    /// domain check. Entry `[k][r]` is the r-th derivative of B_{3,k}.
    pub fn eval_all(&self, x: f64) -> [[f64; 3]; 4] {
        let j = self.funcs(Jet::<1>::var(x, 0));
        let mut out = [[0.0; 3]; 4];
        for k in 0..4 {
            out[k] = [j[k].v, j[k].g[0], j[k].h[0][0]];
        }
        out
    }

    /// The r-th derivative of B_{3,k} at x.
    pub fn eval(&self, k: usize, x: f64, r: usize) -> Result<f64> {
        self.check_domain(x)?;
        if k > 3 || r > 2 {
            return Err(Error::DomainError {
                value: if k > 3 { k as f64 } else { r as f64 },
                domain: "index 0..=3, derivative order 0..=2".into(),
            });
        }
        if r == 0 {
            return Ok(self.funcs(x)[k]);
        }
        Ok(self.eval_all(x)[k][r])
    }

    pub(crate) fn check_domain(&self, x: f64) -> Result<()> {
        let beta = self.family.beta;
        let slack = 1e-12 * beta.max(1.0);
        if !(x >= -slack && x <= beta + slack) {
            return Err(Error::DomainError {
                value: x,
                domain: format!("[0, {beta}]"),
            });
        }
        Ok(())
    }
}
