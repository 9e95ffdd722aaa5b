//! Arbitrary-precision reals and complex numbers on top of MPFR.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::numtheory::ExactRational;

/// Arbitrary-precision real with an explicit working precision in bits.
pub type BigFloat = Float;

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Complex number whose parts share one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex { re, im }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let norm =
            Float::with_val(p, o.re.clone().square()) + Float::with_val(p, o.im.clone().square());
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        BigComplex {
            re: re / &norm,
            im: im / &norm,
        }
    }

    pub fn scale(&self, x: &Float) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * x),
            im: Float::with_val(p, &self.im * x),
        }
    }

    pub fn add_real(&self, x: &Float) -> Self {
        BigComplex {
            re: Float::with_val(self.prec(), &self.re + x),
            im: self.im.clone(),
        }
    }

    /// `i * z`
    pub fn mul_i(&self) -> Self {
        BigComplex {
            re: Float::with_val(self.prec(), -&self.im),
            im: self.re.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex {
            re: c * &m,
            im: s * m,
        }
    }

    /// Principal square root, with argument in `(-pi/2, pi/2]`.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let m = self.abs();
        let re = (Float::with_val(p, &m + &self.re) / 2u32).sqrt();
        let mut im = (Float::with_val(p, &m - &self.re) / 2u32).sqrt();
        if self.im.is_sign_negative() && !self.im.is_zero() {
            im = -im;
        }
        BigComplex { re, im }
    }
}

/// `exp(pi i theta)` for exact rational `theta`.
///
/// Multiples of `1/2` come out exact; otherwise the angle is formed at a few
/// guard bits above `prec` and rounded once.
pub fn exp_pi_i(theta: &ExactRational, prec: u32) -> BigComplex {
    let reduced = crate::numtheory::Phase::new(theta.clone());
    let t = reduced.exponent();
    let two_t = Rational::from(t * 2u32);
    if two_t.is_integer() {
        let (re, im) = match two_t.numer().to_u32() {
            Some(0) => (1, 0),
            Some(1) => (0, 1),
            Some(2) => (-1, 0),
            Some(3) => (0, -1),
            _ => unreachable!("multiple of 1/2 in [0, 2)"),
        };
        return BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        };
    }
    let wp = prec + 16;
    let angle = pi(wp) * Float::with_val(wp, t);
    let (s, c) = angle.sin_cos(Float::new(wp));
    BigComplex {
        re: Float::with_val(prec, c),
        im: Float::with_val(prec, s),
    }
}

/// Nearest integer to `x`, ties to even.
pub fn round_to_integer(x: &Float) -> Integer {
    x.to_integer().expect("finite value")
}

/// Fixed-point decimal rendering with `decimals` digits after the point,
/// rounded half to even. Uses `.` as the separator regardless of locale.
pub fn format_fixed(x: &Float, decimals: u32) -> String {
    let wp = x.prec() + 4 * decimals + 8;
    let scale = Integer::from(10u32).pow(decimals);
    let scaled = Float::with_val(wp, x * &scale);
    let n = round_to_integer(&scaled);
    let negative = n < 0;
    let digits = n.abs().to_string();
    let body = if decimals == 0 {
        digits
    } else {
        let d = decimals as usize;
        let padded = format!("{digits:0>width$}", width = d + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - d);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Compact scientific rendering with `digits` significant digits.
pub fn format_sci(x: &Float, digits: usize) -> String {
    let s = x.to_string_radix(10, Some(digits));
    s.replace('@', "")
}
