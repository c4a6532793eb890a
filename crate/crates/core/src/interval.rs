//! Directed-rounding interval arithmetic on arbitrary-precision floats.
//!
//! Every operation returns an interval guaranteed to contain the true
//! value. Transcendental results are widened by a couple of ulps on each
//! side so that the guarantee does not depend on the last bit of the
//! underlying library.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num::bigint::BigInt;
use num::{BigRational, One, Zero};

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

/// A closed interval `[lo, hi]` with exact dyadic endpoints.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl Interval {
    pub fn point(f: BigFloat) -> Self {
        Interval { lo: f.clone(), hi: f }
    }

    pub fn zero() -> Self {
        Interval::point(BigFloat::from_i8(0, 64))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive() && !self.lo.is_zero()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative() && !self.hi.is_zero()
    }

    /// Exact rational value of the lower endpoint.
    pub fn lo_rational(&self) -> BigRational {
        bigfloat_to_rational(&self.lo)
    }

    /// Exact rational value of the upper endpoint.
    pub fn hi_rational(&self) -> BigRational {
        bigfloat_to_rational(&self.hi)
    }

    /// Exact interval width as a rational.
    pub fn width(&self) -> BigRational {
        self.hi_rational() - self.lo_rational()
    }

    /// Midpoint as f64, for rendering only.
    pub fn to_f64(&self) -> f64 {
        let mid = (self.lo_rational() + self.hi_rational()) / BigRational::from_integer(2.into());
        rational_to_f64(&mid)
    }
}

/// Evaluation context: working precision plus the shared constants cache.
pub struct Ctx {
    pub prec: usize,
    consts: Consts,
}

impl Ctx {
    pub fn new(prec: usize) -> Self {
        Ctx {
            prec,
            consts: Consts::new().expect("constants cache"),
        }
    }

    /// Exact conversion of a big integer (no rounding).
    pub fn from_bigint(&self, n: &BigInt) -> BigFloat {
        let (sign, mag) = n.clone().into_parts();
        if mag.is_zero() {
            return BigFloat::from_i8(0, self.prec);
        }
        let words = mag.to_u64_digits();
        let e = (words.len() * 64) as astro_float::Exponent;
        let s = if sign == num::bigint::Sign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        BigFloat::from_words(&words, s, e)
    }

    /// Enclosing interval of an exact rational at the working precision.
    pub fn from_rational(&self, r: &BigRational) -> Interval {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        Interval {
            lo: n.div(&d, self.prec, DOWN),
            hi: n.div(&d, self.prec, UP),
        }
    }

    pub fn from_i64(&self, n: i64) -> Interval {
        Interval::point(BigFloat::from_i64(n, self.prec))
    }

    pub fn add(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: a.lo.add(&b.lo, self.prec, DOWN),
            hi: a.hi.add(&b.hi, self.prec, UP),
        }
    }

    pub fn sub(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: a.lo.sub(&b.hi, self.prec, DOWN),
            hi: a.hi.sub(&b.lo, self.prec, UP),
        }
    }

    pub fn neg(&self, a: &Interval) -> Interval {
        Interval {
            lo: a.hi.neg(),
            hi: a.lo.neg(),
        }
    }

    pub fn abs(&self, a: &Interval) -> Interval {
        if !a.lo.is_negative() {
            a.clone()
        } else if !a.hi.is_positive() {
            self.neg(a)
        } else {
            let m = a.lo.neg().max(&a.hi);
            Interval {
                lo: BigFloat::from_i8(0, self.prec),
                hi: m,
            }
        }
    }

    pub fn mul(&self, a: &Interval, b: &Interval) -> Interval {
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for x in [&a.lo, &a.hi] {
            for y in [&b.lo, &b.hi] {
                let d = x.mul(y, self.prec, DOWN);
                let u = x.mul(y, self.prec, UP);
                lo = Some(match lo {
                    None => d,
                    Some(c) => c.min(&d),
                });
                hi = Some(match hi {
                    None => u,
                    Some(c) => c.max(&u),
                });
            }
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Panics if `b` straddles zero; callers dispatch on exact signs first.
    pub fn div(&self, a: &Interval, b: &Interval) -> Interval {
        assert!(
            !b.contains_zero(),
            "interval division by interval containing zero"
        );
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for x in [&a.lo, &a.hi] {
            for y in [&b.lo, &b.hi] {
                let d = x.div(y, self.prec, DOWN);
                let u = x.div(y, self.prec, UP);
                lo = Some(match lo {
                    None => d,
                    Some(c) => c.min(&d),
                });
                hi = Some(match hi {
                    None => u,
                    Some(c) => c.max(&u),
                });
            }
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Square root; the true value must be `>= 0`. A lower endpoint that
    /// dips below zero from earlier rounding is clamped.
    pub fn sqrt(&self, a: &Interval) -> Interval {
        let zero = BigFloat::from_i8(0, self.prec);
        let lo_in = if a.lo.is_negative() { &zero } else { &a.lo };
        let hi_in = if a.hi.is_negative() { &zero } else { &a.hi };
        Interval {
            lo: lo_in.sqrt(self.prec, DOWN),
            hi: hi_in.sqrt(self.prec, UP),
        }
    }

    pub fn pi(&mut self) -> Interval {
        let lo = self.consts.pi(self.prec, DOWN);
        let hi = self.consts.pi(self.prec, UP);
        Interval {
            lo: self.slack_down(lo),
            hi: self.slack_up(hi),
        }
    }

    /// Sine for arguments within `[0, pi]` (allowing interval slack just
    /// outside). The minimum of sine over such an interval is attained at
    /// an endpoint; the maximum is 1 whenever the interval may contain
    /// pi/2, otherwise also at an endpoint.
    pub fn sin(&mut self, a: &Interval) -> Interval {
        let p = self.prec;
        let sl_d = a.lo.sin(p, DOWN, &mut self.consts);
        let sl_u = a.lo.sin(p, UP, &mut self.consts);
        let sh_d = a.hi.sin(p, DOWN, &mut self.consts);
        let sh_u = a.hi.sin(p, UP, &mut self.consts);
        let lo = self.slack_down(sl_d.min(&sh_d));
        let half_pi = {
            let pi = self.pi();
            Interval {
                lo: pi.lo.div(&BigFloat::from_i8(2, p), p, DOWN),
                hi: pi.hi.div(&BigFloat::from_i8(2, p), p, UP),
            }
        };
        let may_contain_half_pi = a.lo.cmp(&half_pi.hi).unwrap_or(0) <= 0
            && a.hi.cmp(&half_pi.lo).unwrap_or(0) >= 0;
        let one = BigFloat::from_i8(1, p);
        let hi = if may_contain_half_pi {
            one
        } else {
            let h = self.slack_up(sl_u.max(&sh_u));
            h.min(&one)
        };
        Interval { lo, hi }
    }

    /// Arcsine on `[-1, 1]`; endpoints outside the domain are clamped
    /// (callers reject genuinely out-of-domain inputs first).
    pub fn asin(&mut self, a: &Interval) -> Interval {
        let p = self.prec;
        let one = BigFloat::from_i8(1, p);
        let neg_one = BigFloat::from_i8(-1, p);
        let lo_in = a.lo.clamp(&neg_one, &one);
        let hi_in = a.hi.clamp(&neg_one, &one);
        let lo = lo_in.asin(p, DOWN, &mut self.consts);
        let hi = hi_in.asin(p, UP, &mut self.consts);
        Interval {
            lo: self.slack_down(lo),
            hi: self.slack_up(hi),
        }
    }

    /// Arctangent (monotone on all of R).
    pub fn atan(&mut self, a: &Interval) -> Interval {
        let p = self.prec;
        let lo = a.lo.atan(p, DOWN, &mut self.consts);
        let hi = a.hi.atan(p, UP, &mut self.consts);
        Interval {
            lo: self.slack_down(lo),
            hi: self.slack_up(hi),
        }
    }

    fn ulp_slack(&self, f: &BigFloat) -> BigFloat {
        let e = f.exponent().unwrap_or(0);
        let shift = e as i64 - self.prec as i64 + 2;
        let shift = shift.clamp(
            astro_float::EXPONENT_MIN as i64 + 1,
            astro_float::EXPONENT_MAX as i64 - 1,
        ) as astro_float::Exponent;
        BigFloat::from_words(&[1], Sign::Pos, shift)
    }

    fn slack_down(&self, f: BigFloat) -> BigFloat {
        let u = self.ulp_slack(&f);
        f.sub(&u, self.prec, DOWN)
    }

    fn slack_up(&self, f: BigFloat) -> BigFloat {
        let u = self.ulp_slack(&f);
        f.add(&u, self.prec, UP)
    }
}

/// Exact conversion: every finite `BigFloat` is a dyadic rational.
pub fn bigfloat_to_rational(f: &BigFloat) -> BigRational {
    if f.is_zero() {
        return BigRational::zero();
    }
    let (words, _n, sign, e, _inexact) = f.as_raw_parts().expect("finite float");
    let mut mag = num::BigUint::zero();
    for (i, w) in words.iter().enumerate() {
        mag += num::BigUint::from(*w) << (64 * i);
    }
    let mut value = BigRational::from_integer(BigInt::from(mag));
    if sign == Sign::Neg {
        value = -value;
    }
    let shift = e as i64 - (words.len() as i64) * 64;
    let two = BigRational::from_integer(2.into());
    if shift >= 0 {
        value * pow_rational(&two, shift as u64)
    } else {
        value / pow_rational(&two, (-shift) as u64)
    }
}

fn pow_rational(base: &BigRational, exp: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    result
}

/// Rational to nearest f64, for rendering only.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // scale so the integer quotient keeps ~64 bits of precision
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = 64 - (nb - db);
    let (q, s) = if shift >= 0 {
        ((num << shift as u64) / den, -shift)
    } else {
        (num / (den << (-shift) as u64), -shift)
    };
    let qf = to_f64_lossy(&q);
    qf * 2f64.powi(s as i32)
}

fn to_f64_lossy(n: &BigInt) -> f64 {
    let (sign, mag) = n.clone().into_parts();
    let mut v = 0f64;
    for d in mag.to_u64_digits().iter().rev() {
        v = v * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num::bigint::Sign::Minus {
        -v
    } else {
        v
    }
}
