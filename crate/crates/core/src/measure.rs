//! Certified high-precision measurement.
//!
//! All numeric output goes through adaptive-precision interval
//! evaluation: the working precision doubles until the result interval
//! pins every requested decimal digit (both endpoints round to the same
//! decimal string and the width is below 10^-(digits+2)). Values that
//! would otherwise straddle a rounding boundary escalate precision
//! instead of guessing.

use crate::geometry::Point;
use crate::interval::{Ctx, Interval};
use crate::tower::Tower;
use num::bigint::BigInt;
use num::{BigRational, Signed, Zero};
use thiserror::Error;

/// Hard ceiling for adaptive precision; reaching it means a measured
/// value sits exactly on a decimal rounding boundary.
const PRECISION_CEILING: usize = 1 << 20;

const START_PRECISION: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("argument outside the chord range [0, 2]")]
    DomainError,
    #[error("relative error against a zero target")]
    ZeroTarget,
    #[error("degenerate ray (point coincides with the vertex)")]
    DegenerateRay,
    #[error("precision ceiling reached; value sits on a rounding boundary")]
    PrecisionCeiling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Angle,
    Length,
}

impl Kind {
    pub fn unit(&self) -> &'static str {
        match self {
            Kind::Angle => "deg",
            Kind::Length => "",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Kind::Angle => "angle",
            Kind::Length => "length",
        }
    }
}

/// A certified numeric result.
#[derive(Debug, Clone)]
pub struct Measurement {
    pub name: String,
    pub kind: Kind,
    pub requested_digits: usize,
    pub value: Interval,
    pub decimal: String,
    pub target_decimal: Option<String>,
    pub abs_error_decimal: Option<String>,
    pub rel_error_percent: Option<String>,
}

/// Correctly rounded decimal string of an exact rational, round half to
/// even. Uses '.' as separator, no grouping.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let scale = BigRational::from_integer(BigInt::from(10u8).pow(digits as u32));
    let scaled = r * &scale;
    let rounded = round_half_even(&scaled);
    let neg = rounded.is_negative() && !rounded.is_zero();
    let mag = rounded.magnitude().to_string();
    let mut digits_str = mag;
    if digits_str.len() <= digits {
        let pad = digits + 1 - digits_str.len();
        digits_str = "0".repeat(pad) + &digits_str;
    }
    let split = digits_str.len() - digits;
    let (int_part, frac_part) = digits_str.split_at(split);
    let body = if digits == 0 {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_part}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn round_half_even(r: &BigRational) -> BigInt {
    let floor = r.floor().to_integer();
    let frac = r - BigRational::from_integer(floor.clone());
    let half = BigRational::new(1.into(), 2.into());
    if frac < half {
        floor
    } else if frac > half {
        floor + 1
    } else if (&floor % 2u8).is_zero() {
        floor
    } else {
        floor + 1
    }
}

/// Runs `f` at doubling precision until the interval certifies `digits`
/// decimal digits. `f` may return `None` to request more precision.
pub fn certify<F>(digits: usize, mut f: F) -> Result<(Interval, String), MeasureError>
where
    F: FnMut(&mut Ctx) -> Option<Interval>,
{
    let width_bound = BigRational::new(1.into(), BigInt::from(10u8).pow(digits as u32 + 2));
    let mut prec = START_PRECISION;
    loop {
        let mut ctx = Ctx::new(prec);
        if let Some(iv) = f(&mut ctx) {
            let lo = iv.lo_rational();
            let hi = iv.hi_rational();
            if &hi - &lo < width_bound {
                let s_lo = decimal_string(&lo, digits);
                let s_hi = decimal_string(&hi, digits);
                if s_lo == s_hi {
                    return Ok((iv, s_lo));
                }
            }
        }
        prec *= 2;
        if prec > PRECISION_CEILING {
            return Err(MeasureError::PrecisionCeiling);
        }
    }
}

/// chr(x) = 2·sin(x/2) on [0, pi].
pub fn chord(ctx: &mut Ctx, x: &Interval) -> Interval {
    let two = ctx.from_i64(2);
    let half = ctx.div(x, &two);
    let s = ctx.sin(&half);
    ctx.mul(&two, &s)
}

/// arcchr(c) = 2·arcsin(c/2), in [0, pi]. `c` must lie in [0, 2] up to
/// interval tolerance.
pub fn arcchord(ctx: &mut Ctx, c: &Interval) -> Result<Interval, MeasureError> {
    let two = ctx.from_i64(2);
    let zero = ctx.from_i64(0);
    if ctx.sub(c, &two).is_strictly_positive() || ctx.sub(&zero, c).is_strictly_positive() {
        return Err(MeasureError::DomainError);
    }
    let half = ctx.div(c, &two);
    let a = ctx.asin(&half);
    Ok(ctx.mul(&two, &a))
}

/// Radians to degrees: x·180/pi.
pub fn to_degrees(ctx: &mut Ctx, x: &Interval) -> Interval {
    let pi = ctx.pi();
    let d = ctx.from_i64(180);
    ctx.div(&ctx.mul(x, &d), &pi)
}

/// Enclosure of phi = (1+√5)/2.
pub fn phi_interval(ctx: &Ctx) -> Interval {
    let five = ctx.from_i64(5);
    let one = ctx.from_i64(1);
    let two = ctx.from_i64(2);
    ctx.div(&ctx.add(&one, &ctx.sqrt(&five)), &two)
}

/// Golden angle 360·(1 − 1/phi) in degrees.
pub fn golden_angle_deg(ctx: &Ctx) -> Interval {
    let phi = phi_interval(ctx);
    let one = ctx.from_i64(1);
    let inv = ctx.div(&one, &phi);
    let beta = ctx.sub(&one, &inv);
    ctx.mul(&ctx.from_i64(360), &beta)
}

/// The larger arc 360/phi in degrees.
pub fn golden_alpha_deg(ctx: &Ctx) -> Interval {
    let phi = phi_interval(ctx);
    ctx.div(&ctx.from_i64(360), &phi)
}

/// Certified golden constants at the requested decimal precision.
pub fn golden_constants(
    digits: usize,
) -> Result<(Measurement, Measurement, Measurement), MeasureError> {
    let (phi_iv, phi_dec) = certify(digits, |ctx| Some(phi_interval(ctx)))?;
    let (beta_iv, beta_dec) = certify(digits, |ctx| Some(golden_angle_deg(ctx)))?;
    let (alpha_iv, alpha_dec) = certify(digits, |ctx| Some(golden_alpha_deg(ctx)))?;
    let mk = |name: &str, kind, iv, dec| Measurement {
        name: name.to_string(),
        kind,
        requested_digits: digits,
        value: iv,
        decimal: dec,
        target_decimal: None,
        abs_error_decimal: None,
        rel_error_percent: None,
    };
    Ok((
        mk("phi", Kind::Length, phi_iv, phi_dec),
        mk("golden_angle", Kind::Angle, beta_iv, beta_dec),
        mk("golden_alpha", Kind::Angle, alpha_iv, alpha_dec),
    ))
}

/// Exact sign dispatch for the angle at `center` between rays toward `p`
/// and `q`; the fold into [0, pi] happens through the quadrant cases.
struct AngleShape {
    cross: crate::tower::FieldElement,
    dot: crate::tower::FieldElement,
    sign_cross: i32,
    sign_dot: i32,
}

fn angle_shape(t: &Tower, p: &Point, center: &Point, q: &Point) -> Result<AngleShape, MeasureError> {
    let ux = t.sub(&p.x, &center.x);
    let uy = t.sub(&p.y, &center.y);
    let vx = t.sub(&q.x, &center.x);
    let vy = t.sub(&q.y, &center.y);
    if (ux.is_zero() && uy.is_zero()) || (vx.is_zero() && vy.is_zero()) {
        return Err(MeasureError::DegenerateRay);
    }
    let cross = t.sub(&t.mul(&ux, &vy), &t.mul(&uy, &vx));
    let dot = t.add(&t.mul(&ux, &vx), &t.mul(&uy, &vy));
    let sign_cross = t.sign(&cross);
    let sign_dot = t.sign(&dot);
    Ok(AngleShape {
        cross,
        dot,
        sign_cross,
        sign_dot,
    })
}

/// Unsigned angle in radians, as an interval at the context precision.
fn angle_interval(ctx: &mut Ctx, t: &Tower, shape: &AngleShape) -> Option<Interval> {
    let pi = ctx.pi();
    let two = ctx.from_i64(2);
    match (shape.sign_cross, shape.sign_dot) {
        (0, s) => {
            debug_assert!(s != 0, "zero vectors were rejected earlier");
            if s > 0 {
                Some(Interval::zero())
            } else {
                Some(pi)
            }
        }
        (_, 0) => Some(ctx.div(&pi, &two)),
        (_, s_dot) => {
            let cross_iv = ctx.abs(&t.approx(&shape.cross, ctx.prec));
            let dot_iv = ctx.abs(&t.approx(&shape.dot, ctx.prec));
            if dot_iv.contains_zero() {
                return None; // not yet separated at this precision
            }
            let q = ctx.div(&cross_iv, &dot_iv);
            let base = ctx.atan(&q);
            if s_dot > 0 {
                Some(base)
            } else {
                Some(ctx.sub(&pi, &base))
            }
        }
    }
}

/// Central angle at `center` between `p` and `q`, in degrees, folded to
/// [0, 180], certified to `digits` decimals.
pub fn central_angle(
    t: &Tower,
    p: &Point,
    center: &Point,
    q: &Point,
    digits: usize,
    name: &str,
) -> Result<Measurement, MeasureError> {
    let shape = angle_shape(t, p, center, q)?;
    let (iv, dec) = certify(digits, |ctx| {
        let rad = angle_interval(ctx, t, &shape)?;
        Some(to_degrees(ctx, &rad))
    })?;
    Ok(Measurement {
        name: name.to_string(),
        kind: Kind::Angle,
        requested_digits: digits,
        value: iv,
        decimal: dec,
        target_decimal: None,
        abs_error_decimal: None,
        rel_error_percent: None,
    })
}

/// A reusable degree-valued evaluator for the angle at `center`, for use
/// with [`attach_target`] alongside [`central_angle`].
pub fn central_angle_evaluator<'a>(
    t: &'a Tower,
    p: &Point,
    center: &Point,
    q: &Point,
) -> Result<impl Fn(&mut Ctx) -> Option<Interval> + 'a, MeasureError> {
    let shape = angle_shape(t, p, center, q)?;
    Ok(move |ctx: &mut Ctx| {
        let rad = angle_interval(ctx, t, &shape)?;
        Some(to_degrees(ctx, &rad))
    })
}

/// Certifies |x − chord(2π/5)| < 10^−30 for an exact scalar `x`.
pub fn certified_chord_2pi_5(t: &Tower, x: &crate::tower::FieldElement) -> bool {
    let bound = BigRational::new(1.into(), BigInt::from(10u8).pow(30));
    let mut prec = 128;
    while prec <= PRECISION_CEILING {
        let mut ctx = Ctx::new(prec);
        let pi = ctx.pi();
        let arg = ctx.div(&ctx.mul(&ctx.from_i64(2), &pi), &ctx.from_i64(5));
        let c = chord(&mut ctx, &arg);
        let xv = t.approx(x, prec);
        let d = ctx.abs(&ctx.sub(&xv, &c));
        if d.hi_rational() < bound {
            return true;
        }
        if d.lo_rational() > bound {
            return false;
        }
        prec *= 2;
    }
    false
}

/// Length |pq|, certified to `digits` decimals.
pub fn length(
    t: &Tower,
    p: &Point,
    q: &Point,
    digits: usize,
    name: &str,
) -> Result<Measurement, MeasureError> {
    let d2 = crate::geometry::dist_sq(t, p, q);
    let (iv, dec) = certify(digits, |ctx| {
        let approx = t.approx(&d2, ctx.prec);
        Some(ctx.sqrt(&approx))
    })?;
    Ok(Measurement {
        name: name.to_string(),
        kind: Kind::Length,
        requested_digits: digits,
        value: iv,
        decimal: dec,
        target_decimal: None,
        abs_error_decimal: None,
        rel_error_percent: None,
    })
}

/// Attaches a target plus certified absolute and relative errors to a
/// measurement. `target_fn` must evaluate the target at any precision.
pub fn attach_target<F>(
    m: &mut Measurement,
    target_fn: F,
    target_nonzero: bool,
    value_fn: impl Fn(&mut Ctx) -> Option<Interval>,
) -> Result<(), MeasureError>
where
    F: Fn(&mut Ctx) -> Interval,
{
    if !target_nonzero {
        return Err(MeasureError::ZeroTarget);
    }
    let digits = m.requested_digits;
    let (_, target_dec) = certify(digits, |ctx| Some(target_fn(ctx)))?;
    let (_, abs_dec) = certify(digits, |ctx| {
        let v = value_fn(ctx)?;
        let tgt = target_fn(ctx);
        Some(ctx.abs(&ctx.sub(&v, &tgt)))
    })?;
    let (_, rel_dec) = certify(digits, |ctx| {
        let v = value_fn(ctx)?;
        let tgt = target_fn(ctx);
        if tgt.contains_zero() {
            return None;
        }
        let abs = ctx.abs(&ctx.sub(&v, &tgt));
        let rel = ctx.div(&abs, &ctx.abs(&tgt));
        Some(ctx.mul(&rel, &ctx.from_i64(100)))
    })?;
    m.target_decimal = Some(target_dec);
    m.abs_error_decimal = Some(abs_dec);
    m.rel_error_percent = Some(format!("{rel_dec}%"));
    Ok(())
}
