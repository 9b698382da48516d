use serde::{Deserialize, Serialize};

use crate::{KResult, KernelError};

/// Coefficient field F_p for a prime p.
///
/// Elements are canonical representatives in `0..p`, stored as `u64`.
/// p is restricted to `2 <= p < 2^31` so products fit in `u64` without
/// intermediate reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

pub const DEFAULT_CHAR: u64 = 32003;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Builds the field F_p. Characteristic 0 is reserved for a rational
    /// tier that this kernel does not implement.
    pub fn new(p: u64) -> KResult<Self> {
        if p == 0 {
            return Err(KernelError::unsupported(
                "characteristic 0 coefficients are not supported; use a prime p >= 2",
            ));
        }
        if p >= 1 << 31 {
            return Err(KernelError::unsupported(format!(
                "characteristic {p} too large; must be below 2^31"
            )));
        }
        if !is_prime(p) {
            return Err(KernelError::unsupported(format!(
                "characteristic {p} is not prime"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on 0, which indicates a kernel bug
    /// (division by zero is guarded at call sites).
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of 0 in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}
