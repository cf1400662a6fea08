//! Primality, Legendre symbols and the Gauss-sum unit.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime `p >= 3`. Construction runs a deterministic primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if value >= 3 && value % 2 == 1 && is_prime(value) {
            Ok(OddPrime(value))
        } else {
            Err(Error::NotOddPrime(value))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p` as a signed integer; all primes used here are far below `i64::MAX`.
    #[inline]
    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        OddPrime::new(value)
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The unit `a(p)`: `1` when `p = 1 (mod 4)` and `i` when `p = 3 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaussUnit {
    One,
    I,
}

impl GaussUnit {
    pub fn to_complex(self) -> Complex64 {
        match self {
            GaussUnit::One => Complex64::new(1.0, 0.0),
            GaussUnit::I => Complex64::new(0.0, 1.0),
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The first twelve primes as witnesses are
/// sufficient for every `n < 3.3e24`, which covers all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol `(a/n)` for odd `n`, via quadratic reciprocity.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/n) = -1 iff n = 3, 5 (mod 8)
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for any integer `a`.
pub fn legendre_symbol(a: i64, p: OddPrime) -> i8 {
    let a = a.rem_euclid(p.as_i64()) as u64;
    jacobi(a, p.get())
}

/// Legendre symbol for a raw modulus; rejects even or composite `p`.
pub fn legendre_symbol_checked(a: i64, p: u64) -> Result<i8> {
    Ok(legendre_symbol(a, OddPrime::new(p)?))
}

/// The symbols `(j/p)` for `j = 0..p`.
pub fn legendre_table(p: OddPrime) -> Vec<i8> {
    (0..p.as_i64()).map(|j| legendre_symbol(j, p)).collect()
}

pub fn gauss_unit(p: OddPrime) -> GaussUnit {
    if p.get() % 4 == 1 {
        GaussUnit::One
    } else {
        GaussUnit::I
    }
}

/// All odd primes in `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<OddPrime> {
    let lo = lo.max(3);
    if hi < lo {
        return Vec::new();
    }
    let limit = (hi as f64).sqrt() as u64 + 1;
    let mut small = vec![true; limit as usize + 1];
    let mut base_primes = Vec::new();
    for i in 2..=limit as usize {
        if small[i] {
            base_primes.push(i as u64);
            let mut k = i * i;
            while k <= limit as usize {
                small[k] = false;
                k += i;
            }
        }
    }
    let width = (hi - lo + 1) as usize;
    let mut mark = vec![true; width];
    for &q in &base_primes {
        let start = (lo.div_ceil(q) * q).max(q * q);
        let mut m = start;
        while m <= hi {
            mark[(m - lo) as usize] = false;
            m += q;
        }
    }
    mark.iter()
        .enumerate()
        .filter(|&(i, &is_p)| is_p && (lo + i as u64) % 2 == 1)
        .map(|(i, _)| OddPrime(lo + i as u64))
        .collect()
}
