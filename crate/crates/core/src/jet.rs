//! Second-order forward-mode differentiation.
//!
//! A [`Jet`] carries a value together with its first and second derivative
//! with respect to a single scalar parameter. Closed-form generatrices and
//! parsed expressions are evaluated on jets so that tangents and curvatures
//! come out exact up to rounding instead of through finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Jet { v, d1, d2 }
    }

    pub const fn constant(v: f64) -> Self {
        Jet { v, d1: 0.0, d2: 0.0 }
    }

    /// The independent variable itself.
    pub const fn variable(v: f64) -> Self {
        Jet { v, d1: 1.0, d2: 0.0 }
    }

    /// Composes an outer function `f` (given by `f(v)`, `f'(v)`, `f''(v)`)
    /// with this jet.
    #[inline]
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Jet {
        Jet {
            v: f0,
            d1: f1 * self.d1,
            d2: f2 * self.d1 * self.d1 + f1 * self.d2,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.d1 == 0.0 && self.d2 == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    pub fn recip(self) -> Jet {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sin(self) -> Jet {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Jet {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Jet {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn exp(self) -> Jet {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Jet {
        let r = 1.0 / self.v;
        self.chain(self.v.ln(), r, -r * r)
    }

    pub fn sqrt(self) -> Jet {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }

    pub fn sinh(self) -> Jet {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Jet {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(c, s, c)
    }

    pub fn tanh(self) -> Jet {
        let t = self.v.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }

    pub fn asin(self) -> Jet {
        let w = 1.0 - self.v * self.v;
        let r = 1.0 / w.sqrt();
        self.chain(self.v.asin(), r, self.v * r / w)
    }

    pub fn acos(self) -> Jet {
        let w = 1.0 - self.v * self.v;
        let r = 1.0 / w.sqrt();
        self.chain(self.v.acos(), -r, -self.v * r / w)
    }

    pub fn atan(self) -> Jet {
        let w = 1.0 / (1.0 + self.v * self.v);
        self.chain(self.v.atan(), w, -2.0 * self.v * w * w)
    }

    pub fn acosh(self) -> Jet {
        let w = self.v * self.v - 1.0;
        let r = 1.0 / w.sqrt();
        self.chain(self.v.acosh(), r, -self.v * r / w)
    }

    pub fn abs(self) -> Jet {
        if self.v < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Real power with a constant exponent.
    pub fn powf(self, p: f64) -> Jet {
        if p == 0.0 {
            return Jet::constant(1.0);
        }
        if p == 1.0 {
            return self;
        }
        if p == 2.0 {
            return self * self;
        }
        let f0 = self.v.powf(p);
        let f1 = p * self.v.powf(p - 1.0);
        let f2 = p * (p - 1.0) * self.v.powf(p - 2.0);
        self.chain(f0, f1, f2)
    }

    /// General power; falls back to [`Jet::powf`] when the exponent is constant.
    pub fn pow(self, e: Jet) -> Jet {
        if e.is_constant() {
            self.powf(e.v)
        } else {
            (e * self.ln()).exp()
        }
    }
}

impl From<f64> for Jet {
    fn from(v: f64) -> Self {
        Jet::constant(v)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        if o.is_constant() {
            return self / o.v;
        }
        self * o.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, o: f64) -> Jet {
        Jet::new(self.v + o, self.d1, self.d2)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, o: f64) -> Jet {
        Jet::new(self.v - o, self.d1, self.d2)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, o: f64) -> Jet {
        Jet::new(self.v * o, self.d1 * o, self.d2 * o)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, o: f64) -> Jet {
        Jet::new(self.v / o, self.d1 / o, self.d2 / o)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        o + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self - o.v, -o.d1, -o.d2)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        o * self
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        o.recip() * self
    }
}
