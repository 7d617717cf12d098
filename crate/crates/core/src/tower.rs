//! The degree-t cyclic extension view F_{q^t}/F_q inside one ambient
//! field: relative Frobenius, norm, trace, the norm-one group, the
//! Hilbert-90 map, and subfield embeddings.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{make_extension, Elt, FieldCtx, PrimePower};
use crate::poly::Poly;

/// F_{q^t}/F_q inside one ambient field of order q^t. The base field is
/// the fixed set of x -> x^q.
#[derive(Clone)]
pub struct TowerCtx {
    ambient: Arc<FieldCtx>,
    q: u64,
    t: u32,
}

impl TowerCtx {
    pub fn new(ambient: Arc<FieldCtx>, q: u64, t: u32) -> Result<TowerCtx> {
        if t < 2 {
            return Err(Error::PreconditionFailed("extension degree must be >= 2"));
        }
        let pp = PrimePower::from_q(q)?;
        if pp.p != ambient.p() {
            return Err(Error::MixedContexts);
        }
        let mut qt: u64 = 1;
        for _ in 0..t {
            qt = qt.checked_mul(q).ok_or(Error::BoundExceeded)?;
        }
        if qt != ambient.order() {
            return Err(Error::DegreeMismatch);
        }
        Ok(TowerCtx { ambient, q, t })
    }

    /// Build the ambient field with the canonical (least) modulus.
    pub fn for_q_t(q: u64, t: u32) -> Result<TowerCtx> {
        let pp = PrimePower::from_q(q)?;
        let n = pp.k as usize * t as usize;
        let ambient = Arc::new(make_extension(pp.p, n, None)?);
        TowerCtx::new(ambient, q, t)
    }

    pub fn ambient(&self) -> &Arc<FieldCtx> {
        &self.ambient
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ambient
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn p(&self) -> u64 {
        self.ambient.p()
    }

    /// Order of the norm-one group, (q^t - 1)/(q - 1).
    pub fn norm_one_order(&self) -> u64 {
        (self.ambient.order() - 1) / (self.q - 1)
    }

    /// x^(q^j), the j-fold relative Frobenius.
    pub fn frobenius(&self, x: &Elt, j: u32) -> Elt {
        let f = &self.ambient;
        if f.is_zero(x) {
            return f.zero();
        }
        let ord = f.order() - 1;
        let mut e: u64 = 1;
        for _ in 0..j {
            e = (e as u128 * self.q as u128 % ord as u128) as u64;
        }
        f.pow(x, e)
    }

    /// Product of all Galois conjugates; lies in the base field.
    pub fn norm(&self, x: &Elt) -> Elt {
        let f = &self.ambient;
        let mut acc = f.one();
        let mut conj = x.clone();
        for _ in 0..self.t {
            acc = f.mul(&acc, &conj);
            conj = self.frobenius(&conj, 1);
        }
        acc
    }

    /// Sum of all Galois conjugates; lies in the base field.
    pub fn trace(&self, x: &Elt) -> Elt {
        let f = &self.ambient;
        let mut acc = f.zero();
        let mut conj = x.clone();
        for _ in 0..self.t {
            acc = f.add(&acc, &conj);
            conj = self.frobenius(&conj, 1);
        }
        acc
    }

    /// x is in the base field F_q iff x^q = x.
    pub fn in_base(&self, x: &Elt) -> bool {
        self.frobenius(x, 1) == *x
    }

    /// All base field elements: 0 followed by the powers of
    /// primitive^((q^t-1)/(q-1)).
    pub fn base_field_elements(&self) -> Vec<Elt> {
        let f = &self.ambient;
        let g = f.pow(&f.primitive(), (f.order() - 1) / (self.q - 1));
        let mut out = Vec::with_capacity(self.q as usize);
        out.push(f.zero());
        let mut cur = f.one();
        for _ in 0..self.q - 1 {
            out.push(cur.clone());
            cur = f.mul(&cur, &g);
        }
        out
    }

    /// x^(q-1); the image always has norm 1 (Hilbert 90).
    pub fn hilbert90_map(&self, x: &Elt) -> Result<Elt> {
        if self.ambient.is_zero(x) {
            return Err(Error::ZeroElement);
        }
        Ok(self.ambient.pow(x, self.q - 1))
    }

    /// Enumerate the cyclic group of norm-1 elements.
    pub fn norm_one_group(&self) -> Result<NormOneGroup> {
        let f = &self.ambient;
        let size = self.norm_one_order();
        if size > f.dlog_bound() {
            return Err(Error::BoundExceeded);
        }
        let generator = f.pow(&f.primitive(), self.q - 1);
        let mut elements = Vec::with_capacity(size as usize);
        let mut index = HashMap::with_capacity(size as usize);
        let mut cur = f.one();
        for i in 0..size {
            debug_assert!(f.is_one(&self.norm(&cur)));
            index.insert(cur.clone(), i);
            elements.push(cur.clone());
            cur = f.mul(&cur, &generator);
        }
        assert!(f.is_one(&cur), "generator order mismatch");
        Ok(NormOneGroup {
            elements,
            generator,
            index,
        })
    }
}

/// The cyclic group of norm-1 elements, enumerated as powers of
/// primitive^(q-1) in index order.
pub struct NormOneGroup {
    elements: Vec<Elt>,
    generator: Elt,
    index: HashMap<Elt, u64>,
}

impl NormOneGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Elt] {
        &self.elements
    }

    pub fn generator(&self) -> &Elt {
        &self.generator
    }

    pub fn contains(&self, e: &Elt) -> bool {
        self.index.contains_key(e)
    }

    /// Index of e as a power of the generator.
    pub fn index_of(&self, e: &Elt) -> Option<u64> {
        self.index.get(e).copied()
    }

    /// Non-identity elements in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = &Elt> {
        self.elements.iter().skip(1)
    }
}

/// A field homomorphism from a small field into a big one, determined by
/// sending the small primitive element to a root of its minimal
/// polynomial inside the big field.
pub struct SubfieldEmbedding {
    image_of_primitive: Elt,
    small_order: u64,
}

/// Embed F_{p^m} into F_{p^{md}}. The image of the small primitive is
/// pow(bigPrimitive, (p^{md}-1)/(p^m-1) * s) for the least s making the
/// minimal polynomials match.
pub fn embed_subfield(small: &FieldCtx, big: &Arc<FieldCtx>) -> Result<SubfieldEmbedding> {
    if small.p() != big.p() {
        return Err(Error::MixedContexts);
    }
    if big.n() % small.n() != 0 {
        return Err(Error::DegreeMismatch);
    }
    let minpoly = minimal_poly_over_prime_field(small, &small.primitive())?;
    let e = (big.order() - 1) / (small.order() - 1);
    let mut cand = big.one();
    let step = big.pow(&big.primitive(), e);
    for _s in 1..small.order() {
        cand = big.mul(&cand, &step);
        if eval_prime_poly(big, &minpoly, &cand) {
            return Ok(SubfieldEmbedding {
                image_of_primitive: cand,
                small_order: small.order(),
            });
        }
    }
    Err(Error::NoCompatibleRoot)
}

impl SubfieldEmbedding {
    pub fn apply(&self, small: &FieldCtx, big: &FieldCtx, x: &Elt) -> Result<Elt> {
        if small.order() != self.small_order {
            return Err(Error::MixedContexts);
        }
        if small.is_zero(x) {
            return Ok(big.zero());
        }
        let k = small.discrete_log(x)?;
        Ok(big.pow(&self.image_of_primitive, k))
    }

    pub fn image_of_primitive(&self) -> &Elt {
        &self.image_of_primitive
    }
}

/// Minimal polynomial over F_p of an element of F_{p^m}: the product of
/// (X - conjugate) over the distinct p-power conjugates.
fn minimal_poly_over_prime_field(f: &FieldCtx, a: &Elt) -> Result<Poly> {
    let p = f.p();
    // distinct conjugates under x -> x^p
    let mut conjugates = vec![a.clone()];
    let mut cur = f.pow(a, p);
    while cur != *a {
        conjugates.push(cur.clone());
        cur = f.pow(&cur, p);
    }
    // expand the product with Elt coefficients
    let mut coeffs: Vec<Elt> = vec![f.one()];
    for c in &conjugates {
        let mut next = vec![f.zero(); coeffs.len() + 1];
        for (i, co) in coeffs.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], co);
            next[i] = f.sub(&next[i], &f.mul(co, c));
        }
        coeffs = next;
    }
    // all coefficients must be prime-field constants
    let mut out = Vec::with_capacity(coeffs.len());
    for co in &coeffs {
        if co.coeffs()[1..].iter().any(|&c| c != 0) {
            return Err(Error::NoCompatibleRoot);
        }
        out.push(co.coeffs()[0]);
    }
    Ok(Poly::new(p, out))
}

fn eval_prime_poly(f: &FieldCtx, poly: &Poly, x: &Elt) -> bool {
    let mut acc = f.zero();
    for &c in poly.coeffs().iter().rev() {
        acc = f.add(&f.mul(&acc, x), &f.from_u64(c));
    }
    f.is_zero(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn tower_16_3() -> TowerCtx {
        let m = Poly::new(2, vec![1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]);
        let f = Arc::new(make_extension(2, 12, Some(m)).unwrap());
        TowerCtx::new(f, 16, 3).unwrap()
    }

    #[test]
    fn frobenius_identity_and_period() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let f = tc.field();
        for i in [0u64, 1, 7, 33, 124] {
            let x = f.elt_from_index(i);
            assert_eq!(tc.frobenius(&x, 0), x);
            assert_eq!(tc.frobenius(&x, tc.t()), x);
        }
    }

    #[test]
    fn norm_matches_brute_force_product() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let f = tc.field();
        for i in 0..f.order() {
            let x = f.elt_from_index(i);
            let brute = f.mul(&f.mul(&x, &tc.frobenius(&x, 1)), &tc.frobenius(&x, 2));
            assert_eq!(tc.norm(&x), brute);
            assert!(tc.in_base(&tc.norm(&x)));
        }
    }

    #[test]
    fn trace_of_base_elements() {
        let tc = TowerCtx::for_q_t(3, 4).unwrap();
        let f = tc.field();
        assert!(f.is_zero(&tc.trace(&f.zero())));
        for c in tc.base_field_elements() {
            let expected = f.scalar_mul(tc.t() as u64, &c);
            assert_eq!(tc.trace(&c), expected);
        }
    }

    #[test]
    fn trace_matches_brute_force_sum() {
        let tc = TowerCtx::for_q_t(2, 5).unwrap();
        let f = tc.field();
        for x in f.elements() {
            let mut s = f.zero();
            for j in 0..tc.t() {
                s = f.add(&s, &tc.frobenius(&x, j));
            }
            assert_eq!(tc.trace(&x), s);
        }
    }

    #[test]
    fn norm_one_group_sizes() {
        assert_eq!(TowerCtx::for_q_t(2, 3).unwrap().norm_one_group().unwrap().len(), 7);
        assert_eq!(TowerCtx::for_q_t(5, 3).unwrap().norm_one_group().unwrap().len(), 31);
        let g273 = tower_16_3().norm_one_group().unwrap();
        assert_eq!(g273.len(), 273);
    }

    #[test]
    fn a405_has_norm_one_in_f2_12() {
        let tc = tower_16_3();
        let f = tc.field();
        let a = f.pow(&f.primitive(), 405);
        assert!(f.is_one(&tc.norm(&a)));
        assert!(!f.is_one(&a));
        assert!(tc.norm_one_group().unwrap().contains(&a));
    }

    #[test]
    fn norm_one_elements_have_group_order() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let f = tc.field();
        let g = tc.norm_one_group().unwrap();
        for x in g.elements() {
            assert!(f.is_one(&f.pow(x, 31)));
        }
    }

    #[test]
    fn hilbert90_image_is_the_norm_one_group() {
        let tc = TowerCtx::for_q_t(4, 3).unwrap();
        let f = tc.field();
        let g = tc.norm_one_group().unwrap();
        let mut image = std::collections::HashSet::new();
        for x in f.elements() {
            if !f.is_zero(&x) {
                let y = tc.hilbert90_map(&x).unwrap();
                assert!(f.is_one(&tc.norm(&y)));
                image.insert(y);
            }
        }
        assert_eq!(image.len(), g.len());
        assert!(g.elements().iter().all(|e| image.contains(e)));
        // base field maps to 1
        for c in tc.base_field_elements() {
            if !f.is_zero(&c) {
                assert!(f.is_one(&tc.hilbert90_map(&c).unwrap()));
            }
        }
    }

    #[test]
    fn hilbert90_sends_trace_zero_to_h1_roots() {
        // for t=3, q=5: Tr(A)=0 implies h1(A^{q-1}) = 0
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let f = tc.field();
        let one = f.one();
        let h1 = [(one.clone(), 6u64), (one.clone(), 1), (one, 0)];
        for x in f.elements() {
            if !f.is_zero(&x) && f.is_zero(&tc.trace(&x)) {
                let y = tc.hilbert90_map(&x).unwrap();
                assert!(f.is_zero(&f.poly_eval(&h1, &y)));
            }
        }
    }

    #[test]
    fn embedding_fixes_prime_field() {
        let small = make_extension(2, 1, None).unwrap();
        let m = Poly::new(2, vec![1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]);
        let big = Arc::new(make_extension(2, 12, Some(m)).unwrap());
        let emb = embed_subfield(&small, &big).unwrap();
        assert!(big.is_one(&emb.apply(&small, &big, &small.one()).unwrap()));
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        let small = make_extension(3, 2, None).unwrap();
        let big = Arc::new(make_extension(3, 4, None).unwrap());
        let emb = embed_subfield(&small, &big).unwrap();
        for i in 0..small.order() {
            for j in 0..small.order() {
                let a = small.elt_from_index(i);
                let b = small.elt_from_index(j);
                let ea = emb.apply(&small, &big, &a).unwrap();
                let eb = emb.apply(&small, &big, &b).unwrap();
                assert_eq!(emb.apply(&small, &big, &small.add(&a, &b)).unwrap(), big.add(&ea, &eb));
                assert_eq!(emb.apply(&small, &big, &small.mul(&a, &b)).unwrap(), big.mul(&ea, &eb));
            }
        }
    }

    #[test]
    fn composite_embedding_agrees_with_direct() {
        let f4 = make_extension(2, 2, None).unwrap();
        let f16 = Arc::new(make_extension(2, 4, None).unwrap());
        let f256 = Arc::new(make_extension(2, 8, None).unwrap());
        let e1 = embed_subfield(&f4, &f16).unwrap();
        let e2 = embed_subfield(&f16, &f256).unwrap();
        let direct = embed_subfield(&f4, &f256).unwrap();
        for i in 0..4u64.min(f4.order()) {
            let x = f4.elt_from_index(i);
            let via = e2
                .apply(&f16, &f256, &e1.apply(&f4, &f16, &x).unwrap())
                .unwrap();
            assert_eq!(via, direct.apply(&f4, &f256, &x).unwrap());
        }
    }

    #[test]
    fn norm_is_stable_under_squaring_lift() {
        // N_{F_{q^3}/F_q}(B) = N_{F_{q^6}/F_{q^2}}(B) for B in the image
        let small = make_extension(2, 3, None).unwrap();
        let big = Arc::new(make_extension(2, 6, None).unwrap());
        let tc_small = TowerCtx::new(Arc::new(make_extension(2, 3, None).unwrap()), 2, 3).unwrap();
        let tc_big = TowerCtx::new(big.clone(), 4, 3).unwrap();
        let emb = embed_subfield(&small, &big).unwrap();
        for i in 0..small.order() {
            let x = small.elt_from_index(i);
            let nx = tc_small.norm(&x);
            let lifted_norm = emb.apply(&small, &big, &nx).unwrap();
            let ex = emb.apply(&small, &big, &x).unwrap();
            assert_eq!(tc_big.norm(&ex), lifted_norm);
        }
    }

    #[test]
    fn frobenius_fixed_points_in_norm_one_group() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let tc = TowerCtx::for_q_t(q, 3).unwrap();
            let f = tc.field();
            let g = tc.norm_one_group().unwrap();
            let gcd = {
                let (mut a, mut b) = (q - 1, tc.norm_one_order());
                while b != 0 {
                    let r = a % b;
                    a = b;
                    b = r;
                }
                a
            };
            let fixed: Vec<&Elt> = g
                .elements()
                .iter()
                .filter(|x| tc.frobenius(x, 1) == **x)
                .collect();
            // fixed points are exactly the gcd(q-1, |N|)-torsion of F_q*
            let torsion: Vec<Elt> = tc
                .base_field_elements()
                .into_iter()
                .filter(|x| !f.is_zero(x) && f.is_one(&f.pow(x, gcd)))
                .collect();
            assert_eq!(fixed.len(), torsion.len(), "q={q}");
            for x in &torsion {
                assert!(g.contains(x));
            }
        }
    }
}
