//! Dense polynomials over the prime field F_p, used for field moduli,
//! irreducibility testing, and minimal polynomials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial over F_p in canonical form: coefficients ascending,
/// each in `[0, p)`, no trailing zeros (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime, a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut bb: u128 = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % m as u128;
        }
        bb = bb * bb % m as u128;
        e >>= 1;
    }
    acc as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of n, without multiplicity.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Poly {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, coeffs: c }
    }

    pub fn zero(p: u64) -> Poly {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Poly {
        Poly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Poly {
        Poly::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            c[i] = (a + b) % p;
        }
        Poly::new(p, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            c[i] = (a + p - b) % p;
        }
        Poly::new(p, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(p);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = ((c[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        Poly::new(p, c)
    }

    /// Remainder of self modulo m (m nonzero).
    pub fn rem(&self, m: &Poly) -> Poly {
        let p = self.p;
        let md = m.deg().expect("modulus must be nonzero");
        let lead_inv = mod_inv(*m.coeffs.last().unwrap(), p);
        let mut r = self.coeffs.clone();
        while r.len() > md {
            let k = r.len() - 1;
            let c = r[k];
            if c != 0 {
                let f = (c as u128 * lead_inv as u128 % p as u128) as u64;
                for (i, &mc) in m.coeffs.iter().enumerate() {
                    let idx = k - md + i;
                    let sub = (f as u128 * mc as u128 % p as u128) as u64;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
        }
        Poly::new(p, r)
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // normalize to monic
        let p = a.p;
        let inv = mod_inv(*a.coeffs.last().unwrap(), p);
        let c = a
            .coeffs
            .iter()
            .map(|&x| (x as u128 * inv as u128 % p as u128) as u64)
            .collect();
        Poly::new(p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let x = x % p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = ((acc as u128 * x as u128 + c as u128) % p as u128) as u64;
        }
        acc
    }
}

/// Irreducibility of a monic polynomial over F_p via the gcd test with
/// X^{p^d} - X for all d <= deg(f)/2.
pub fn is_irreducible(p: u64, f: &Poly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let deg = f.deg().ok_or(Error::NotMonic)?;
    if deg == 0 {
        return Err(Error::NotMonic);
    }
    if deg == 1 {
        return Ok(true);
    }
    let x = Poly::x(p);
    let mut h = x.rem(f); // will hold X^{p^d} mod f
    for _d in 1..=deg / 2 {
        h = h.powmod(p, f);
        let g = f.gcd(&h.sub(&x));
        if g.deg() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographically least monic irreducible of degree n over F_p,
/// coefficients compared from the constant term upward.
pub fn least_irreducible(p: u64, n: usize) -> Poly {
    assert!(n >= 1);
    if n == 1 {
        // X itself is the least monic linear polynomial
        return Poly::x(p);
    }
    // odometer over (c_0, ..., c_{n-1}) with c_0 most significant;
    // c_0 = 0 is skipped since X divides such polynomials
    let mut digits = vec![0u64; n];
    digits[0] = 1;
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let f = Poly::new(p, coeffs);
        if is_irreducible(p, &f).expect("monic by construction") {
            return f;
        }
        // increment from the last coordinate (least significant)
        let mut i = n - 1;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            if i == 0 {
                unreachable!("an irreducible of every degree exists over F_p");
            }
            i -= 1;
        }
    }
}
