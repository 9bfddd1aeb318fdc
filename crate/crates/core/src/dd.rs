//! Double-double arithmetic.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! carrying about 32 significant digits. The closed-form integral tables
//! are evaluated in this type because their numerators cancel heavily for
//! small shape parameters.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn powi(self, n: u32) -> Self {
        let mut out = Dd::ONE;
        let mut base = self;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                out = out * base;
            }
            base = base * base;
            k >>= 1;
        }
        out
    }

    fn mul_pow2(self, f: f64) -> Self {
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// Sine and cosine, with the argument reduced to [-pi, pi] and then
    /// to a quarter of that before summing the Taylor series.
    pub fn sin_cos(self) -> (Self, Self) {
        let two_pi = PI.mul_pow2(2.0);
        let k = (self.to_f64() / two_pi.hi).round();
        let r = self - two_pi * k;
        // sin and cos of r/4, then two double-angle steps.
        let q = r.mul_pow2(0.25);
        let q2 = q * q;
        let mut term = q;
        let mut s = q;
        let mut n = 1.0;
        loop {
            term = -(term * q2) / ((n + 1.0) * (n + 2.0));
            n += 2.0;
            s = s + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        let mut term = Dd::ONE;
        let mut c = Dd::ONE;
        let mut n = 0.0;
        loop {
            term = -(term * q2) / ((n + 1.0) * (n + 2.0));
            n += 2.0;
            c = c + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        for _ in 0..2 {
            let s2 = (s * c).mul_pow2(2.0);
            let c2 = c * c - s * s;
            s = s2;
            c = c2;
        }
        (s, c)
    }

    pub fn sin(self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(self) -> Self {
        self.sin_cos().1
    }

    /// Exponential by Taylor series of x / 2^m followed by m squarings.
    pub fn exp(self) -> Self {
        let x = self.to_f64();
        let mut m = 0;
        let mut scale = 1.0;
        while x.abs() * scale > 1e-3 {
            scale *= 0.5;
            m += 1;
        }
        let r = self.mul_pow2(scale);
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term = term * r / n;
            sum = sum + term;
            if term.abs().hi < 1e-34 {
                break;
            }
        }
        for _ in 0..m {
            sum = sum * sum;
        }
        sum
    }

    pub fn sinh(self) -> Self {
        let e = self.exp();
        (e - Dd::ONE / e).mul_pow2(0.5)
    }

    pub fn cosh(self) -> Self {
        let e = self.exp();
        (e + Dd::ONE / e).mul_pow2(0.5)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * q1;
        let q2 = r.hi / o.hi;
        let r = r - o * q2;
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

macro_rules! mixed_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<f64> for Dd {
            type Output = Dd;
            #[inline]
            fn $f(self, o: f64) -> Dd {
                $tr::$f(self, Dd::new(o))
            }
        }
        impl $tr<Dd> for f64 {
            type Output = Dd;
            #[inline]
            fn $f(self, o: Dd) -> Dd {
                $tr::$f(Dd::new(self), o)
            }
        }
    )*};
}

mixed_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_keep_the_low_part() {
        let third = Dd::ONE / 3.0;
        let back = third * 3.0 - 1.0;
        assert!(back.to_f64().abs() < 1e-31);
        let x = Dd::new(1.0 + f64::EPSILON);
        let sq = x * x - 1.0 - 2.0 * f64::EPSILON;
        assert!((sq.to_f64() - f64::EPSILON * f64::EPSILON).abs() < 1e-45);
    }

    #[test]
    fn elementary_functions_match_f64() {
        for &x in &[0.25, 0.5, 1.0, 2.0, 3.0, 6.0, 12.5, -4.0] {
            let (s, c) = Dd::new(x).sin_cos();
            assert!((s.to_f64() - x.sin()).abs() < 2e-16);
            assert!((c.to_f64() - x.cos()).abs() < 2e-16);
            let e = Dd::new(x).exp().to_f64();
            assert!((e - x.exp()).abs() <= 2e-16 * x.exp());
            // Pythagoras in full precision.
            let one = s * s + c * c - 1.0;
            assert!(one.to_f64().abs() < 1e-30);
        }
    }

    #[test]
    fn pi_is_a_zero_of_sine() {
        let (s, _) = PI.sin_cos();
        assert!(s.to_f64().abs() < 1e-31);
        let (s, c) = PI.mul_pow2(0.25).sin_cos();
        assert!((s - c).to_f64().abs() < 1e-31);
    }

    #[test]
    fn hyperbolic_identity() {
        let x = Dd::new(0.7);
        let one = x.cosh() * x.cosh() - x.sinh() * x.sinh() - 1.0;
        assert!(one.to_f64().abs() < 1e-30);
    }
}
