//! Closed intervals of doubles with outward rounding.
//!
//! Arithmetic results are widened by one ulp on each side, which encloses the
//! exact result of correctly rounded IEEE operations. The transcendental
//! functions from libm are not guaranteed to be correctly rounded, so their
//! results are widened by [`LIBM_ULPS`] ulps.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub const LIBM_ULPS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_down())
}

fn up(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_up())
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "{lo} > {hi}");
        Interval { lo, hi }
    }

    /// Encloses an exact integer.
    pub fn from_big(n: &BigUint) -> Self {
        let x = n.to_f64().unwrap_or(f64::INFINITY);
        if n.bits() <= 53 {
            Interval::point(x)
        } else {
            Interval::new(down(x, 1), up(x, 1))
        }
    }

    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            self.lo / 2.0 + self.hi / 2.0
        }
    }

    fn widen(lo: f64, hi: f64, ulps: u32) -> Self {
        Interval::new(down(lo, ulps), up(hi, ulps))
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of a non-positive interval");
        Self::widen(self.lo.ln(), self.hi.ln(), LIBM_ULPS)
    }

    pub fn exp(self) -> Self {
        let lo = down(self.lo.exp(), LIBM_ULPS).max(0.0);
        Interval::new(lo, up(self.hi.exp(), LIBM_ULPS))
    }

    /// `x^{1/n}` for a non-negative interval, exact at zero.
    pub fn root(self, n: usize) -> Self {
        assert!(self.lo >= 0.0 && n >= 1);
        let nn = Interval::point(n as f64);
        let lo = if self.lo == 0.0 {
            0.0
        } else {
            (Interval::point(self.lo).ln() / nn).exp().lo
        };
        let hi = if self.hi == 0.0 {
            0.0
        } else {
            (Interval::point(self.hi).ln() / nn).exp().hi
        };
        Interval::new(lo, hi)
    }

    /// `x^p` for a positive interval and a non-negative exponent interval.
    pub fn pow(self, p: Interval) -> Self {
        assert!(p.lo >= 0.0);
        if self.lo == 0.0 && self.hi == 0.0 {
            return Interval::point(0.0);
        }
        (self.ln() * p).exp()
    }

    pub fn max(self, o: Interval) -> Self {
        Interval::new(self.lo.max(o.lo), self.hi.max(o.hi))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl std::ops::Add for Interval {
    type Output = Interval;

    fn add(self, o: Interval) -> Interval {
        Interval::widen(self.lo + o.lo, self.hi + o.hi, 1)
    }
}

impl std::ops::Sub for Interval {
    type Output = Interval;

    fn sub(self, o: Interval) -> Interval {
        Interval::widen(self.lo - o.hi, self.hi - o.lo, 1)
    }
}

impl std::ops::Mul for Interval {
    type Output = Interval;

    fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::widen(lo, hi, 1)
    }
}

impl std::ops::Div for Interval {
    type Output = Interval;

    /// Division by an interval not containing zero.
    fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing 0");
        let p = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::widen(lo, hi, 1)
    }
}
