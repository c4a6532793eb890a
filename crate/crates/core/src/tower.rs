//! Exact arithmetic over real constructible numbers.
//!
//! Numbers live in a tower of quadratic extensions of the rationals,
//! Q ⊂ Q(√r₀) ⊂ Q(√r₀)(√r₁) ⊂ …, represented as coordinate vectors over
//! the multiplicative basis of square-root products. An element at level
//! `k` has exactly `2^k` rational coordinates; the tower is kept faithful
//! (no radicand is a square in the field below it), so an element is zero
//! iff its coordinate vector is identically zero.

use crate::interval::{Ctx, Interval};
use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative element")]
    NegativeRadicand,
}

/// An element of the tower: `2^level` rational coordinates over the basis
/// of products of adjoined square roots.
#[derive(Clone, Debug)]
pub struct FieldElement {
    level: usize,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_rational(r: BigRational) -> Self {
        FieldElement {
            level: 0,
            coords: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Exact zero test: faithful representation makes this coordinate-wise.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

}

/// A growing chain of quadratic extensions. One tower per construction
/// context; growth happens only through [`Tower::sqrt`].
#[derive(Debug, Clone)]
pub struct Tower {
    // radicand k is an element of the level-k field (2^k coordinates)
    radicands: Vec<Vec<BigRational>>,
    sign_precision_ceiling: usize,
}

impl Default for Tower {
    fn default() -> Self {
        Self::new()
    }
}

impl Tower {
    pub fn new() -> Self {
        Tower {
            radicands: Vec::new(),
            sign_precision_ceiling: 1 << 16,
        }
    }

    pub fn with_sign_ceiling(ceiling: usize) -> Self {
        Tower {
            radicands: Vec::new(),
            sign_precision_ceiling: ceiling,
        }
    }

    /// Number of adjoined radicands.
    pub fn height(&self) -> usize {
        self.radicands.len()
    }

    /// The radicand generating level `k+1`, as a field element of level `k`.
    pub fn radicand(&self, k: usize) -> FieldElement {
        FieldElement {
            level: k,
            coords: self.radicands[k].clone(),
        }
    }

    /// Embeds `x` into the level-`level` field (coordinates are a prefix).
    pub fn lift(&self, x: &FieldElement, level: usize) -> FieldElement {
        assert!(level >= x.level && level <= self.height());
        let mut coords = x.coords.clone();
        coords.resize(1 << level, BigRational::zero());
        FieldElement { level, coords }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let level = x.level.max(y.level);
        let a = self.lift(x, level);
        let b = self.lift(y, level);
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(p, q)| p + q)
            .collect();
        FieldElement { level, coords }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement {
            level: x.level,
            coords: x.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let level = x.level.max(y.level);
        let a = self.lift(x, level);
        let b = self.lift(y, level);
        FieldElement {
            level,
            coords: self.mul_vec(&a.coords, &b.coords, level),
        }
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement, TowerError> {
        if x.is_zero() {
            return Err(TowerError::DivisionByZero);
        }
        Ok(FieldElement {
            level: x.level,
            coords: self.inv_vec(&x.coords, x.level),
        })
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement, TowerError> {
        let inv = self.inv(y)?;
        Ok(self.mul(x, &inv))
    }

    pub fn eq(&self, x: &FieldElement, y: &FieldElement) -> bool {
        self.sub(x, y).is_zero()
    }

    /// Exact sign: exact zero is dispatched first, then interval
    /// evaluation at doubling precision until zero is excluded.
    pub fn sign(&self, x: &FieldElement) -> i32 {
        if x.is_zero() {
            return 0;
        }
        let mut prec = 64usize;
        loop {
            let iv = self.approx(x, prec);
            if iv.is_strictly_positive() {
                return 1;
            }
            if iv.is_strictly_negative() {
                return -1;
            }
            prec *= 2;
            assert!(
                prec <= self.sign_precision_ceiling,
                "sign precision ceiling exceeded on a nonzero element; \
                 this indicates tower corruption"
            );
        }
    }

    /// Directed-rounding enclosure of the real value of `x`.
    pub fn approx(&self, x: &FieldElement, precision_bits: usize) -> Interval {
        let prec = precision_bits.max(8);
        let ctx = Ctx::new(prec);
        // square roots of the radicands, bottom-up
        let mut roots: Vec<Interval> = Vec::with_capacity(x.level);
        for k in 0..x.level {
            let r = eval_vec(&ctx, &self.radicands[k], k, &roots);
            roots.push(ctx.sqrt(&r));
        }
        eval_vec(&ctx, &x.coords, x.level, &roots)
    }

    /// Exact square root. Returns the in-tower root when one exists
    /// (keeping the tower faithful); otherwise adjoins `x` as a new
    /// radicand. The result always has sign >= 0.
    pub fn sqrt(&mut self, x: &FieldElement) -> Result<FieldElement, TowerError> {
        if x.is_zero() {
            return Ok(FieldElement::zero());
        }
        if self.sign(x) < 0 {
            return Err(TowerError::NegativeRadicand);
        }
        let h = self.height();
        let lifted = self.lift(x, h);
        if let Some(coords) = self.sqrt_in(&lifted.coords, h) {
            let root = FieldElement { level: h, coords };
            return Ok(if self.sign(&root) < 0 {
                self.neg(&root)
            } else {
                root
            });
        }
        self.radicands.push(lifted.coords);
        let mut coords = vec![BigRational::zero(); 1 << (h + 1)];
        coords[1 << h] = BigRational::one();
        Ok(FieldElement {
            level: h + 1,
            coords,
        })
    }

    // --- coordinate-vector kernels -------------------------------------

    fn mul_vec(&self, a: &[BigRational], b: &[BigRational], level: usize) -> Vec<BigRational> {
        if level == 0 {
            return vec![&a[0] * &b[0]];
        }
        let half = 1 << (level - 1);
        let (a0, a1) = a.split_at(half);
        let (b0, b1) = b.split_at(half);
        let r = &self.radicands[level - 1][..half];
        // (a0 + a1√r)(b0 + b1√r) = a0·b0 + a1·b1·r + (a0·b1 + a1·b0)√r
        let a0b0 = self.mul_vec(a0, b0, level - 1);
        let a1b1 = self.mul_vec(a1, b1, level - 1);
        let a1b1r = self.mul_vec(&a1b1, r, level - 1);
        let a0b1 = self.mul_vec(a0, b1, level - 1);
        let a1b0 = self.mul_vec(a1, b0, level - 1);
        let mut out = Vec::with_capacity(1 << level);
        for i in 0..half {
            out.push(&a0b0[i] + &a1b1r[i]);
        }
        for i in 0..half {
            out.push(&a0b1[i] + &a1b0[i]);
        }
        out
    }

    fn inv_vec(&self, a: &[BigRational], level: usize) -> Vec<BigRational> {
        if level == 0 {
            assert!(!a[0].is_zero(), "inv_vec on zero (faithfulness violated)");
            return vec![a[0].recip()];
        }
        let half = 1 << (level - 1);
        let (a0, a1) = a.split_at(half);
        let r = &self.radicands[level - 1][..half];
        // 1/(a0 + a1√r) = (a0 - a1√r) / (a0² - a1²·r)
        let a0sq = self.mul_vec(a0, a0, level - 1);
        let a1sq = self.mul_vec(a1, a1, level - 1);
        let a1sqr = self.mul_vec(&a1sq, r, level - 1);
        let denom: Vec<BigRational> = a0sq
            .iter()
            .zip(&a1sqr)
            .map(|(p, q)| p - q)
            .collect();
        let d_inv = self.inv_vec(&denom, level - 1);
        let lo = self.mul_vec(a0, &d_inv, level - 1);
        let hi = self.mul_vec(a1, &d_inv, level - 1);
        let mut out = lo;
        out.extend(hi.into_iter().map(|c| -c));
        out
    }

    /// Searches for an exact square root of `a` within the level-`level`
    /// field. Classical recursive decomposition: for x = a0 + a1·√r, the
    /// norm a0² − r·a1² must be a square below, and the root's components
    /// follow from the two candidate half-sums.
    fn sqrt_in(&self, a: &[BigRational], level: usize) -> Option<Vec<BigRational>> {
        if level == 0 {
            return rational_sqrt(&a[0]).map(|r| vec![r]);
        }
        let half = 1 << (level - 1);
        let (a0, a1) = a.split_at(half);
        let r = &self.radicands[level - 1][..half];
        if a1.iter().all(|c| c.is_zero()) {
            // root is either c (below) or d·√r with d² = a0/r
            if let Some(c) = self.sqrt_in(a0, level - 1) {
                let mut out = c;
                out.resize(1 << level, BigRational::zero());
                return Some(out);
            }
            let r_inv = self.inv_vec(r, level - 1);
            let q = self.mul_vec(a0, &r_inv, level - 1);
            if let Some(d) = self.sqrt_in(&q, level - 1) {
                let mut out = vec![BigRational::zero(); half];
                out.extend(d);
                return Some(out);
            }
            return None;
        }
        // norm n = a0² − r·a1²
        let a0sq = self.mul_vec(a0, a0, level - 1);
        let a1sq = self.mul_vec(a1, a1, level - 1);
        let a1sqr = self.mul_vec(&a1sq, r, level - 1);
        let n: Vec<BigRational> = a0sq.iter().zip(&a1sqr).map(|(p, q)| p - q).collect();
        let s = self.sqrt_in(&n, level - 1)?;
        for signed in [1i32, -1] {
            // t = (a0 ± s)/2 is the candidate c²
            let t: Vec<BigRational> = a0
                .iter()
                .zip(&s)
                .map(|(p, q)| {
                    let sum = if signed > 0 { p + q } else { p - q };
                    sum / BigRational::from_integer(2.into())
                })
                .collect();
            if t.iter().all(|c| c.is_zero()) {
                continue;
            }
            if let Some(c) = self.sqrt_in(&t, level - 1) {
                if c.iter().all(|x| x.is_zero()) {
                    continue;
                }
                // d = a1 / (2c)
                let two_c: Vec<BigRational> = c
                    .iter()
                    .map(|x| x * BigRational::from_integer(2.into()))
                    .collect();
                let inv_2c = self.inv_vec(&two_c, level - 1);
                let d = self.mul_vec(a1, &inv_2c, level - 1);
                let mut out = c;
                out.extend(d);
                return Some(out);
            }
        }
        None
    }
}

fn eval_vec(ctx: &Ctx, coords: &[BigRational], level: usize, roots: &[Interval]) -> Interval {
    if level == 0 {
        return ctx.from_rational(&coords[0]);
    }
    let half = 1 << (level - 1);
    let lo = eval_vec(ctx, &coords[..half], level - 1, roots);
    let hi = eval_vec(ctx, &coords[half..], level - 1, roots);
    ctx.add(&lo, &ctx.mul(&hi, &roots[level - 1]))
}

/// Square root in Q: both numerator and denominator must be perfect squares.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let sn = int_sqrt(r.numer())?;
    let sd = int_sqrt(r.denom())?;
    Some(BigRational::new(sn, sd))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> FieldElement {
        FieldElement::from_ratio(n, d)
    }

    #[test]
    fn rational_sum() {
        let t = Tower::new();
        let s = t.add(&rat(1, 2), &rat(1, 3));
        assert!(t.eq(&s, &rat(5, 6)));
    }

    #[test]
    fn sqrt5_plus_neg_sqrt5_is_zero() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let n = t.neg(&s5);
        assert!(t.add(&s5, &n).is_zero());
    }

    #[test]
    fn conjugate_sum_is_one() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let half = rat(1, 2);
        let one = rat(1, 1);
        let phi = t.mul(&t.add(&one, &s5), &half);
        let phibar = t.mul(&t.sub(&one, &s5), &half);
        assert!(t.eq(&t.add(&phi, &phibar), &one));
    }

    #[test]
    fn sqrt5_squared_is_five() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        assert!(t.eq(&t.mul(&s5, &s5), &rat(5, 1)));
        assert_eq!(s5.level(), 1);
        assert_eq!(s5.coords(), &[BigRational::zero(), BigRational::one()]);
    }

    #[test]
    fn phi_squared_is_phi_plus_one() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let phi = t.mul(&t.add(&rat(1, 1), &s5), &rat(1, 2));
        let lhs = t.mul(&phi, &phi);
        let rhs = t.add(&phi, &rat(1, 1));
        assert!(t.eq(&lhs, &rhs));
        // phi² - phi - 1 = 0
        assert!(t.sub(&lhs, &rhs).is_zero());
    }

    #[test]
    fn inv_phi_is_phi_minus_one() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let phi = t.mul(&t.add(&rat(1, 1), &s5), &rat(1, 2));
        let inv = t.inv(&phi).unwrap();
        let expected = t.sub(&phi, &rat(1, 1));
        assert!(t.eq(&inv, &expected));
    }

    #[test]
    fn sqrt_of_perfect_square_stays_rational() {
        let mut t = Tower::new();
        let two = t.sqrt(&rat(4, 1)).unwrap();
        assert_eq!(two.level(), 0);
        assert!(t.eq(&two, &rat(2, 1)));
        assert_eq!(t.height(), 0);
    }

    #[test]
    fn denesting_sqrt_5_plus_2_sqrt6() {
        let mut t = Tower::new();
        let s2 = t.sqrt(&rat(2, 1)).unwrap();
        let s3 = t.sqrt(&rat(3, 1)).unwrap();
        assert_eq!(t.height(), 2);
        // 5 + 2√6 = 5 + 2·√2·√3
        let s6 = t.mul(&s2, &s3);
        let arg = t.add(&rat(5, 1), &t.mul(&rat(2, 1), &s6));
        let root = t.sqrt(&arg).unwrap();
        assert_eq!(t.height(), 2, "denesting must not grow the tower");
        let expected = t.add(&s2, &s3);
        assert!(t.eq(&root, &expected));
        // and is_zero sees the identity directly
        assert!(t.sub(&root, &expected).is_zero());
    }

    #[test]
    fn tower_faithfulness_sqrt6_after_sqrt2_sqrt3() {
        let mut t = Tower::new();
        let s2 = t.sqrt(&rat(2, 1)).unwrap();
        let s3 = t.sqrt(&rat(3, 1)).unwrap();
        let s6 = t.sqrt(&rat(6, 1)).unwrap();
        assert_eq!(t.height(), 2, "6 = (√2·√3)² is a square in the tower");
        assert!(t.eq(&s6, &t.mul(&s2, &s3)));
    }

    #[test]
    fn phi_is_not_1618_over_1000() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let phi = t.mul(&t.add(&rat(1, 1), &s5), &rat(1, 2));
        assert!(!t.sub(&phi, &rat(1618, 1000)).is_zero());
        assert_eq!(t.sign(&t.sub(&phi, &rat(1618, 1000))), 1);
    }

    #[test]
    fn sign_basics() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let phi = t.mul(&t.add(&rat(1, 1), &s5), &rat(1, 2));
        assert_eq!(t.sign(&t.sub(&phi, &rat(1, 1))), 1);
        assert_eq!(t.sign(&FieldElement::zero()), 0);
        let neg = t.neg(&phi);
        assert_eq!(t.sign(&neg), -1);
    }

    #[test]
    fn sign_of_pentagon_side_minus_one() {
        // 2·sin(π/5) = √((5−√5)/2) ≈ 1.17557 > 1
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let arg = t.div(&t.sub(&rat(5, 1), &s5), &rat(2, 1)).unwrap();
        let side = t.sqrt(&arg).unwrap();
        assert_eq!(t.sign(&t.sub(&side, &rat(1, 1))), 1);
    }

    #[test]
    fn div_by_zero_is_an_error() {
        let t = Tower::new();
        assert!(matches!(
            t.div(&rat(1, 1), &FieldElement::zero()),
            Err(TowerError::DivisionByZero)
        ));
    }

    #[test]
    fn sqrt_of_negative_is_an_error() {
        let mut t = Tower::new();
        assert!(matches!(
            t.sqrt(&rat(-2, 1)),
            Err(TowerError::NegativeRadicand)
        ));
    }

    #[test]
    fn approx_phi_contains_reference() {
        let mut t = Tower::new();
        let s5 = t.sqrt(&rat(5, 1)).unwrap();
        let phi = t.mul(&t.add(&rat(1, 1), &s5), &rat(1, 2));
        let iv = t.approx(&phi, 64);
        let lo = crate::interval::rational_to_f64(&iv.lo_rational());
        let hi = crate::interval::rational_to_f64(&iv.hi_rational());
        assert!(lo <= 1.6180339887498949 && 1.6180339887498949 <= hi);
        assert!(hi - lo < 1e-15);
    }

    #[test]
    fn approx_zero_is_point_zero() {
        let t = Tower::new();
        let iv = t.approx(&FieldElement::zero(), 64);
        assert!(iv.lo_rational().is_zero() && iv.hi_rational().is_zero());
    }

    #[test]
    fn approx_width_shrinks_with_precision() {
        let mut t = Tower::new();
        let s2 = t.sqrt(&rat(2, 1)).unwrap();
        let w64 = t.approx(&s2, 64).width();
        let w128 = t.approx(&s2, 128).width();
        let w256 = t.approx(&s2, 256).width();
        assert!(w128 <= w64);
        assert!(w256 <= w128);
    }
}
