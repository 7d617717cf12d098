//! Exact arithmetic in F_p and F_{p^n} on the power basis of a monic
//! irreducible modulus, with discrete logs, square testing, and root
//! finding over supplied domains.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{is_irreducible, is_prime, least_irreducible, prime_factors, Poly};

/// Default ceiling on group orders for discrete-log serialization.
pub const DEFAULT_DLOG_BOUND: u64 = 1 << 26;

/// A prime power q = p^k, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<PrimePower> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::PreconditionFailed("exponent must be positive"));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p).ok_or(Error::BoundExceeded)?;
        }
        Ok(PrimePower { p, k, q })
    }

    /// Factor q into p^k; errors if q is not a prime power.
    pub fn from_q(q: u64) -> Result<PrimePower> {
        if q < 2 {
            return Err(Error::NonPrime(q));
        }
        let ps = prime_factors(q);
        if ps.len() != 1 {
            return Err(Error::NonPrime(q));
        }
        let p = ps[0];
        let mut k = 0u32;
        let mut m = q;
        while m > 1 {
            m /= p;
            k += 1;
        }
        PrimePower::new(p, k)
    }
}

/// An element of a `FieldCtx`: n coordinates in the power basis of the
/// modulus root, each in `[0, p)`. Ordering is lexicographic on the
/// coordinate sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt {
    coeffs: Vec<u64>,
}

impl Elt {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// A concrete finite field F_{p^n} with a fixed monic irreducible
/// modulus and a distinguished primitive element. Immutable after
/// construction and safe to share across threads.
pub struct FieldCtx {
    p: u64,
    n: usize,
    order: u64,
    modulus: Poly,
    primitive: Elt,
    dlog_bound: u64,
    baby_table: OnceLock<BsgsTable>,
}

struct BsgsTable {
    m: u64,
    baby: HashMap<Elt, u64>,
    giant_step: Elt, // primitive^{-m}
}

/// Build F_{p^n}. With `modulus` absent, the lexicographically least
/// monic irreducible of degree n is used (coefficients compared from
/// the constant term upward). The primitive element is the least
/// element in enumeration order with full multiplicative order; in
/// particular the residue class of X is chosen whenever it is primitive.
pub fn make_extension(p: u64, n: usize, modulus: Option<Poly>) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if n == 0 {
        return Err(Error::DegreeMismatch);
    }
    let modulus = match modulus {
        Some(f) => {
            if f.p() != p || f.deg() != Some(n) {
                return Err(Error::DegreeMismatch);
            }
            if !f.is_monic() {
                return Err(Error::NotMonic);
            }
            if !is_irreducible(p, &f)? {
                return Err(Error::ReduciblePoly);
            }
            f
        }
        None => least_irreducible(p, n),
    };
    let mut order: u64 = 1;
    for _ in 0..n {
        order = order.checked_mul(p).ok_or(Error::BoundExceeded)?;
    }
    let mut ctx = FieldCtx {
        p,
        n,
        order,
        modulus,
        primitive: Elt { coeffs: vec![0; n] },
        dlog_bound: DEFAULT_DLOG_BOUND,
        baby_table: OnceLock::new(),
    };
    ctx.primitive = ctx.find_primitive();
    Ok(ctx)
}

impl FieldCtx {
    /// Rebuild a context from serialized parts, verifying the modulus is
    /// irreducible and the claimed primitive element has full order.
    pub fn from_parts(p: u64, n: usize, modulus: Poly, primitive: Vec<u64>) -> Result<FieldCtx> {
        let ctx = make_extension(p, n, Some(modulus))?;
        let prim = ctx.elt(primitive)?;
        if !ctx.has_full_order(&prim) {
            return Err(Error::MalformedCertificate(
                "claimed primitive element does not have full order".into(),
            ));
        }
        Ok(FieldCtx { primitive: prim, ..ctx })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// p^n
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn primitive(&self) -> Elt {
        self.primitive.clone()
    }

    pub fn dlog_bound(&self) -> u64 {
        self.dlog_bound
    }

    pub fn set_dlog_bound(&mut self, bound: u64) {
        self.dlog_bound = bound;
    }

    fn find_primitive(&self) -> Elt {
        let factors = prime_factors(self.order - 1);
        for idx in 1..self.order {
            let e = self.elt_from_index(idx);
            if self.has_full_order_with(&e, &factors) {
                return e;
            }
        }
        unreachable!("a finite field always has a primitive element")
    }

    fn has_full_order(&self, e: &Elt) -> bool {
        self.has_full_order_with(e, &prime_factors(self.order - 1))
    }

    fn has_full_order_with(&self, e: &Elt, factors: &[u64]) -> bool {
        if self.is_zero(e) {
            return false;
        }
        factors
            .iter()
            .all(|&r| !self.is_one(&self.pow(e, (self.order - 1) / r)))
    }

    // ---- element construction and enumeration ----

    pub fn zero(&self) -> Elt {
        Elt { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> Elt {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Elt {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = c % self.p;
        Elt { coeffs }
    }

    /// -1 as a field element.
    pub fn neg_one(&self) -> Elt {
        self.neg(&self.one())
    }

    /// Validated element from coordinates (shorter vectors are padded).
    pub fn elt(&self, coeffs: Vec<u64>) -> Result<Elt> {
        if coeffs.len() > self.n {
            return Err(Error::MixedContexts);
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::MixedContexts);
        }
        let mut c = coeffs;
        c.resize(self.n, 0);
        Ok(Elt { coeffs: c })
    }

    /// Enumeration index: coordinates read as base-p digits, constant
    /// term least significant. Index order is the canonical scan order
    /// throughout the library.
    pub fn index_of(&self, e: &Elt) -> u64 {
        let mut idx = 0u64;
        for &c in e.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn elt_from_index(&self, mut idx: u64) -> Elt {
        let mut coeffs = vec![0; self.n];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        Elt { coeffs }
    }

    /// All field elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.order).map(|i| self.elt_from_index(i))
    }

    pub fn is_zero(&self, e: &Elt) -> bool {
        e.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, e: &Elt) -> bool {
        e.coeffs[0] == 1 && e.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check(&self, e: &Elt) {
        assert_eq!(e.coeffs.len(), self.n, "element from a different field context");
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Elt { coeffs }
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        Elt { coeffs }
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        self.check(a);
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Elt { coeffs }
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        self.check(a);
        self.check(b);
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * self.n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        // reduce by the monic modulus
        let md = self.n;
        let mcoeffs = self.modulus.coeffs();
        for k in (md..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for (i, &mc) in mcoeffs[..md].iter().enumerate() {
                    let idx = k - md + i;
                    prod[idx] = (prod[idx] + p - c * mc as u128 % p) % p;
                }
            }
        }
        let coeffs = prod[..self.n].iter().map(|&x| x as u64).collect();
        Elt { coeffs }
    }

    pub fn scalar_mul(&self, c: u64, a: &Elt) -> Elt {
        self.check(a);
        let p = self.p;
        let c = c % p;
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| (x as u128 * c as u128 % p as u128) as u64)
            .collect();
        Elt { coeffs }
    }

    pub fn square(&self, a: &Elt) -> Elt {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elt, mut e: u64) -> Elt {
        self.check(a);
        if self.is_zero(a) {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Elt) -> Result<Elt> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    // ---- discrete logs ----

    fn bsgs_table(&self) -> &BsgsTable {
        self.baby_table.get_or_init(|| {
            let ord = self.order - 1;
            let m = (ord as f64).sqrt().ceil() as u64;
            let mut baby = HashMap::with_capacity(m as usize);
            let mut cur = self.one();
            for j in 0..m {
                baby.entry(cur.clone()).or_insert(j);
                cur = self.mul(&cur, &self.primitive);
            }
            let giant_step = self
                .inv(&self.pow(&self.primitive, m % ord))
                .expect("primitive is nonzero");
            BsgsTable { m, baby, giant_step }
        })
    }

    /// Baby-step giant-step discrete log base the primitive element.
    pub fn discrete_log(&self, e: &Elt) -> Result<u64> {
        self.check(e);
        if self.is_zero(e) {
            return Err(Error::ZeroElement);
        }
        if self.order - 1 > self.dlog_bound {
            return Err(Error::BoundExceeded);
        }
        let t = self.bsgs_table();
        let mut gamma = e.clone();
        for i in 0..=t.m {
            if let Some(&j) = t.baby.get(&gamma) {
                return Ok((i * t.m + j) % (self.order - 1));
            }
            gamma = self.mul(&gamma, &t.giant_step);
        }
        unreachable!("BSGS covers the whole group")
    }

    // ---- squares ----

    /// In characteristic 2 every element is a square; in odd
    /// characteristic, e is a square iff e = 0 or e^{(p^n-1)/2} = 1.
    pub fn is_square(&self, e: &Elt) -> bool {
        if self.p == 2 {
            return true;
        }
        if self.is_zero(e) {
            return true;
        }
        self.is_one(&self.pow(e, (self.order - 1) / 2))
    }

    /// Deterministic square root: of the (at most two) roots, the one
    /// with lexicographically least coordinate sequence.
    pub fn sqrt(&self, e: &Elt) -> Result<Elt> {
        if self.is_zero(e) {
            return Ok(self.zero());
        }
        let ord = self.order - 1;
        let k = self.discrete_log(e)?;
        if self.p == 2 {
            // odd group order: halve the exponent in Z/ord
            let half = if k % 2 == 0 { k / 2 } else { (k + ord) / 2 };
            return Ok(self.pow(&self.primitive, half));
        }
        if k % 2 != 0 {
            return Err(Error::NotASquare);
        }
        let r = self.pow(&self.primitive, k / 2);
        let r2 = self.neg(&r);
        Ok(if r <= r2 { r } else { r2 })
    }

    // ---- sparse polynomials with possibly large exponents ----

    /// Evaluate sum of coeff * x^exp terms.
    pub fn poly_eval(&self, terms: &[(Elt, u64)], x: &Elt) -> Elt {
        let mut acc = self.zero();
        for (c, e) in terms {
            acc = self.add(&acc, &self.mul(c, &self.pow(x, *e)));
        }
        acc
    }

    /// Roots over a supplied domain, in the domain's order.
    pub fn poly_roots<'a, I>(&self, terms: &[(Elt, u64)], domain: I) -> Vec<Elt>
    where
        I: IntoIterator<Item = &'a Elt>,
    {
        domain
            .into_iter()
            .filter(|x| self.is_zero(&self.poly_eval(terms, x)))
            .cloned()
            .collect()
    }
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}
