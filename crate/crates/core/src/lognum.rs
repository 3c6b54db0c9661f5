//! Signed log-magnitude arithmetic.
//!
//! Bound formulas multiply quantities like `binom(52,26)^800`, which overflow
//! every float format, so all bound evaluation happens on `(sign, ln |x|)`
//! pairs and only converts to `f64` (saturating to infinity) at report time.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

/// A real number stored as a sign and the natural log of its magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogNum {
    /// -1, 0, or +1.
    sign: i8,
    /// ln of the magnitude; `NEG_INFINITY` when `sign == 0`.
    ln: f64,
}

impl LogNum {
    pub const ZERO: LogNum = LogNum {
        sign: 0,
        ln: f64::NEG_INFINITY,
    };
    pub const ONE: LogNum = LogNum { sign: 1, ln: 0.0 };

    pub fn from_f64(x: f64) -> LogNum {
        if x == 0.0 {
            LogNum::ZERO
        } else {
            LogNum {
                sign: if x > 0.0 { 1 } else { -1 },
                ln: x.abs().ln(),
            }
        }
    }

    pub fn from_biguint(x: &BigUint) -> LogNum {
        if x.bits() == 0 {
            return LogNum::ZERO;
        }
        LogNum {
            sign: 1,
            ln: ln_biguint(x),
        }
    }

    pub fn from_bigint(x: &BigInt) -> LogNum {
        let mag = LogNum::from_biguint(x.magnitude());
        if x.is_negative() {
            mag.neg()
        } else {
            mag
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// ln of the magnitude (`NEG_INFINITY` for zero).
    pub fn ln_abs(self) -> f64 {
        self.ln
    }

    /// Converts back to `f64`, saturating to `±inf` when the magnitude is
    /// too large and flushing to `±0` when too small.
    pub fn to_f64(self) -> f64 {
        self.sign as f64 * self.ln.exp()
    }

    pub fn neg(self) -> LogNum {
        LogNum {
            sign: -self.sign,
            ln: self.ln,
        }
    }

    pub fn abs(self) -> LogNum {
        LogNum {
            sign: self.sign.abs(),
            ln: self.ln,
        }
    }

    pub fn mul(self, rhs: LogNum) -> LogNum {
        let sign = self.sign * rhs.sign;
        if sign == 0 {
            LogNum::ZERO
        } else {
            LogNum {
                sign,
                ln: self.ln + rhs.ln,
            }
        }
    }

    pub fn div(self, rhs: LogNum) -> LogNum {
        assert!(rhs.sign != 0, "LogNum division by zero");
        if self.sign == 0 {
            return LogNum::ZERO;
        }
        LogNum {
            sign: self.sign * rhs.sign,
            ln: self.ln - rhs.ln,
        }
    }

    /// Integer power; `powi(0)` is one, including for zero (empty product).
    pub fn powi(self, e: u32) -> LogNum {
        if e == 0 {
            return LogNum::ONE;
        }
        if self.sign == 0 {
            return LogNum::ZERO;
        }
        let sign = if self.sign < 0 && e % 2 == 1 { -1 } else { 1 };
        LogNum {
            sign,
            ln: self.ln * e as f64,
        }
    }

    /// Signed addition via log-sum-exp on the larger magnitude.
    pub fn add(self, rhs: LogNum) -> LogNum {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln >= rhs.ln {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let delta = small.ln - big.ln; // <= 0
        if big.sign == small.sign {
            LogNum {
                sign: big.sign,
                ln: big.ln + delta.exp().ln_1p(),
            }
        } else {
            if delta == 0.0 {
                return LogNum::ZERO;
            }
            // Cancellation: |big| - |small| = |big| * (1 - e^delta).
            LogNum {
                sign: big.sign,
                ln: big.ln + (-delta.exp()).ln_1p(),
            }
        }
    }

    pub fn sub(self, rhs: LogNum) -> LogNum {
        self.add(rhs.neg())
    }

    /// Compares by signed value.
    pub fn cmp_value(self, rhs: LogNum) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self.sign, rhs.sign) {
            (a, b) if a < b => Less,
            (a, b) if a > b => Greater,
            (0, 0) => Equal,
            (s, _) => {
                let ord = self.ln.partial_cmp(&rhs.ln).unwrap_or(Equal);
                if s > 0 {
                    ord
                } else {
                    ord.reverse()
                }
            }
        }
    }
}

/// ln of a positive big integer, accurate to f64 precision at any size.
fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("fits in f64 range").ln()
    } else {
        // Keep the top ~900 bits (far beyond f64 mantissa) and account for
        // the shift exactly.
        let shift = bits - 900;
        let top = (x >> shift).to_f64().expect("shifted value fits");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Sum of a slice of LogNums (sequential signed accumulation).
pub fn lognum_sum(terms: &[LogNum]) -> LogNum {
    terms.iter().fold(LogNum::ZERO, |acc, t| acc.add(*t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn roundtrip_and_algebra_match_f64() {
        let xs = [3.5, -0.02, 117.0, -4096.25, 1e-12];
        for &a in &xs {
            assert!(close(LogNum::from_f64(a).to_f64(), a, 1e-14));
            for &b in &xs {
                let (la, lb) = (LogNum::from_f64(a), LogNum::from_f64(b));
                assert!(close(la.mul(lb).to_f64(), a * b, 1e-12));
                assert!(close(la.div(lb).to_f64(), a / b, 1e-12));
                assert!(close(la.add(lb).to_f64(), a + b, 1e-12));
                assert!(close(la.sub(lb).to_f64(), a - b, 1e-12));
            }
        }
    }

    #[test]
    fn powers_and_zero() {
        let x = LogNum::from_f64(-1.5);
        assert!(close(x.powi(3).to_f64(), -3.375, 1e-12));
        assert!(close(x.powi(2).to_f64(), 2.25, 1e-12));
        assert_eq!(LogNum::ZERO.powi(0), LogNum::ONE);
        assert!(LogNum::ZERO.powi(5).is_zero());
        assert!(LogNum::from_f64(7.0).sub(LogNum::from_f64(7.0)).is_zero());
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let two_pow_2000 = BigUint::one() << 2000;
        let x = LogNum::from_biguint(&two_pow_2000);
        assert!(close(x.ln_abs(), 2000.0 * std::f64::consts::LN_2, 1e-12));
        // (2^2000)^3 stays finite in log space.
        let cubed = x.powi(3);
        assert!(close(cubed.ln_abs(), 6000.0 * std::f64::consts::LN_2, 1e-12));
        assert_eq!(cubed.to_f64(), f64::INFINITY); // saturation on export
    }

    #[test]
    fn sum_is_stable_for_spread_magnitudes() {
        let terms: Vec<LogNum> = (0..10)
            .map(|k| LogNum::from_f64(2f64.powi(-k)))
            .collect();
        let total = lognum_sum(&terms).to_f64();
        assert!(close(total, 2.0 - 2f64.powi(-9), 1e-12));
    }

    #[test]
    fn value_ordering() {
        use std::cmp::Ordering::*;
        let a = LogNum::from_f64(-2.0);
        let b = LogNum::from_f64(0.5);
        assert_eq!(a.cmp_value(b), Less);
        assert_eq!(b.cmp_value(a), Greater);
        assert_eq!(LogNum::ZERO.cmp_value(LogNum::ZERO), Equal);
        assert_eq!(LogNum::from_f64(-1.0).cmp_value(LogNum::from_f64(-3.0)), Greater);
    }
}
