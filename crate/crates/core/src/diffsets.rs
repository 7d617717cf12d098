//! Singer-type difference sets as root sets: the planar pair H1, H2
//! (roots of h1, h2 for t = 3), the general sets D_t and S_t, mixed
//! representation formulas, and brute-force difference-set certification.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::Elt;
use crate::tower::{NormOneGroup, TowerCtx};

/// The planar difference sets H1 (roots of X^{q+1}+X+1) and H2 (roots of
/// X^{q+1}+X^q+1), in enumeration order of the norm-one group.
pub struct PlanarPair {
    pub h1: Vec<Elt>,
    pub h2: Vec<Elt>,
}

impl PlanarPair {
    pub fn union(&self) -> Vec<Elt> {
        let mut out = self.h1.clone();
        let seen: HashSet<&Elt> = self.h1.iter().collect();
        for x in &self.h2 {
            if !seen.contains(x) {
                out.push(x.clone());
            }
        }
        out
    }

    pub fn union_set(&self) -> HashSet<Elt> {
        self.h1.iter().chain(self.h2.iter()).cloned().collect()
    }
}

/// Full pair-count certificate for a claimed (n, m, lambda) difference set.
pub struct DiffSetCert {
    pub group_order: u64,
    pub set_size: u64,
    pub lambda: u64,
    /// count of ordered pairs (B, C) in D x D with B * C^{-1} = g, keyed
    /// by the group index of g, for every non-identity g.
    pub representation_counts: Vec<(u64, u64)>,
    pub ok: bool,
}

impl DiffSetCert {
    /// The Singer parameter relation lambda * (n - 1) = m * (m - 1).
    pub fn parameters_consistent(&self) -> bool {
        self.lambda * (self.group_order - 1) == self.set_size * (self.set_size - 1)
    }
}

/// The general Singer sets for degree t >= 3: D_t (roots of d_t in the
/// norm-one group) and S_t (trace-zero coset representatives).
pub struct GeneralSinger {
    pub dt: Vec<Elt>,
    pub st: Vec<Elt>,
}

/// Evaluate h_i at x: h1(X) = X^{q+1} + X + 1, h2(X) = X^{q+1} + X^q + 1.
pub fn h_eval(tc: &TowerCtx, i: u8, x: &Elt) -> Result<Elt> {
    let f = tc.field();
    let q = tc.q();
    let head = f.mul(&f.pow(x, q), x);
    let mid = match i {
        1 => x.clone(),
        2 => f.pow(x, q),
        _ => return Err(Error::BadIndex),
    };
    Ok(f.add(&f.add(&head, &mid), &f.one()))
}

pub fn is_h_root(tc: &TowerCtx, i: u8, x: &Elt) -> Result<bool> {
    Ok(tc.field().is_zero(&h_eval(tc, i, x)?))
}

/// Roots of h1 and h2, scanning only the norm-one group (all roots lie
/// there).
pub fn planar_sets(tc: &TowerCtx, group: &NormOneGroup) -> Result<PlanarPair> {
    require_t(tc, 3)?;
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for x in group.elements() {
        if is_h_root(tc, 1, x)? {
            h1.push(x.clone());
        }
        if is_h_root(tc, 2, x)? {
            h2.push(x.clone());
        }
    }
    let expected = (tc.q() + 1) as usize;
    assert_eq!(h1.len(), expected, "|H1| must be q+1");
    assert_eq!(h2.len(), expected, "|H2| must be q+1");
    Ok(PlanarPair { h1, h2 })
}

/// The unique mixed representation A = A1 * A2 with A1 in H1, A2 in H2:
/// A1 = (A^{q+1} - 1)/(1 - A^q), A2 = (A - A^{q+1})/(A^{q+1} - 1).
pub fn mixed_rep_planar(tc: &TowerCtx, a: &Elt) -> Result<(Elt, Elt)> {
    require_t(tc, 3)?;
    let f = tc.field();
    if f.is_one(a) {
        return Err(Error::IdentityElement);
    }
    if !f.is_one(&tc.norm(a)) {
        return Err(Error::NotNormOne);
    }
    let one = f.one();
    let aq = tc.frobenius(a, 1);
    let aq1 = f.mul(a, &aq); // A^{q+1}
    let a1 = f.div(&f.sub(&aq1, &one), &f.sub(&one, &aq))?;
    let a2 = f.div(&f.sub(a, &aq1), &f.sub(&aq1, &one))?;
    debug_assert_eq!(f.mul(&a1, &a2), *a);
    debug_assert!(is_h_root(tc, 1, &a1)?);
    debug_assert!(is_h_root(tc, 2, &a2)?);
    Ok((a1, a2))
}

/// Count all ordered pairs (B, C) in D x D with B * C^{-1} = g for every
/// non-identity g of the group; valid iff every count equals lambda.
pub fn verify_difference_set(
    tc: &TowerCtx,
    group: &NormOneGroup,
    d: &[Elt],
    lambda_expected: u64,
) -> Result<DiffSetCert> {
    let f = tc.field();
    let n = group.len() as u64;
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for b in d {
        if !group.contains(b) {
            return Err(Error::ElementOutsideGroup);
        }
        for c in d {
            let g = f.div(b, c)?;
            let gi = group.index_of(&g).expect("quotient stays in the group");
            if gi != 0 {
                *counts.entry(gi).or_insert(0) += 1;
            }
        }
    }
    let mut representation_counts: Vec<(u64, u64)> = (1..n)
        .map(|gi| (gi, counts.get(&gi).copied().unwrap_or(0)))
        .collect();
    representation_counts.sort_unstable();
    let ok = representation_counts.iter().all(|&(_, c)| c == lambda_expected);
    Ok(DiffSetCert {
        group_order: n,
        set_size: d.len() as u64,
        lambda: lambda_expected,
        representation_counts,
        ok,
    })
}

/// One representative per F_q*-coset of the nonzero trace-zero elements,
/// chosen by least discrete log.
pub fn singer_trace_zero(tc: &TowerCtx) -> Result<Vec<Elt>> {
    if tc.t() < 3 {
        return Err(Error::PreconditionFailed("t must be >= 3"));
    }
    let f = tc.field();
    let base_nonzero: Vec<Elt> = tc
        .base_field_elements()
        .into_iter()
        .filter(|c| !f.is_zero(c))
        .collect();
    let mut covered: HashSet<Elt> = HashSet::new();
    let mut reps = Vec::new();
    // walk x = primitive^k in increasing k, so representatives have
    // least discrete log in their coset
    let mut x = f.one();
    for _ in 0..f.order() - 1 {
        if !covered.contains(&x) && f.is_zero(&tc.trace(&x)) {
            reps.push(x.clone());
            for c in &base_nonzero {
                covered.insert(f.mul(&x, c));
            }
        }
        x = f.mul(&x, &f.primitive());
    }
    Ok(reps)
}

/// Verify that x -> x^{q-1} maps the trace-zero cosets bijectively onto H1.
pub fn equivalence_to_singer(tc: &TowerCtx, group: &NormOneGroup) -> Result<()> {
    require_t(tc, 3)?;
    let pair = planar_sets(tc, group)?;
    let reps = singer_trace_zero(tc)?;
    let h1: HashSet<&Elt> = pair.h1.iter().collect();
    if reps.len() != h1.len() {
        return Err(Error::BijectionFailure);
    }
    let mut image = HashSet::new();
    for r in &reps {
        let y = tc.hilbert90_map(r)?;
        if !h1.contains(&y) || !image.insert(y) {
            return Err(Error::BijectionFailure);
        }
    }
    Ok(())
}

/// d_t(Y) = 1 + Y + Y^{1+q} + ... + Y^{1+q+...+q^{t-2}}.
pub fn d_t_eval(tc: &TowerCtx, x: &Elt) -> Elt {
    let f = tc.field();
    let mut acc = f.one();
    let mut prod = f.one(); // running product x * x^q * ... * x^{q^j}
    let mut conj = x.clone();
    for _ in 0..tc.t() - 1 {
        prod = f.mul(&prod, &conj);
        acc = f.add(&acc, &prod);
        conj = tc.frobenius(&conj, 1);
    }
    acc
}

/// D_t as roots of d_t over the norm-one group, together with S_t; the
/// Hilbert-90 bijection between them is asserted.
pub fn general_sets(tc: &TowerCtx, group: &NormOneGroup) -> Result<GeneralSinger> {
    if tc.t() < 3 {
        return Err(Error::PreconditionFailed("t must be >= 3"));
    }
    let f = tc.field();
    let dt: Vec<Elt> = group
        .elements()
        .iter()
        .filter(|x| f.is_zero(&d_t_eval(tc, x)))
        .cloned()
        .collect();
    let st = singer_trace_zero(tc)?;
    let expected = ((pow_u64(tc.q(), tc.t() - 1) - 1) / (tc.q() - 1)) as usize;
    assert_eq!(dt.len(), expected, "d_t splits over the norm-one group");
    assert_eq!(st.len(), expected);
    let dt_set: HashSet<&Elt> = dt.iter().collect();
    let mut image = HashSet::new();
    for r in &st {
        let y = tc.hilbert90_map(r)?;
        if !dt_set.contains(&y) || !image.insert(y) {
            return Err(Error::BijectionFailure);
        }
    }
    Ok(GeneralSinger { dt, st })
}

/// Mixed D_t-representations of A as the root pairs (B, B/A) of
/// f_{t,A}(X) = d_t(X) - A^{1+q+...+q^{t-2}} * d_t(X/A).
pub fn f_ta_mixed_reps(tc: &TowerCtx, sets: &GeneralSinger, a: &Elt) -> Result<Vec<(Elt, Elt)>> {
    let f = tc.field();
    if f.is_one(a) {
        return Err(Error::IdentityElement);
    }
    if !f.is_one(&tc.norm(a)) {
        return Err(Error::NotNormOne);
    }
    // A^{1+q+...+q^{t-2}}; for A of norm 1 this is 1/phi^{(t-1)}(A)
    let mut scale = f.one();
    let mut conj = a.clone();
    for _ in 0..tc.t() - 1 {
        scale = f.mul(&scale, &conj);
        conj = tc.frobenius(&conj, 1);
    }
    let a_inv = f.inv(a)?;
    let dt_set: HashSet<&Elt> = sets.dt.iter().collect();
    let mut out = Vec::new();
    for x in f.elements() {
        let val = f.sub(
            &d_t_eval(tc, &x),
            &f.mul(&scale, &d_t_eval(tc, &f.mul(&x, &a_inv))),
        );
        if f.is_zero(&val) {
            let c = f.mul(&x, &a_inv);
            assert!(dt_set.contains(&x), "f_{{t,A}} roots lie in D_t");
            assert!(dt_set.contains(&c), "f_{{t,A}} root quotients lie in D_t");
            out.push((x, c));
        }
    }
    let expected = ((pow_u64(tc.q(), tc.t() - 2) - 1) / (tc.q() - 1)) as usize;
    assert_eq!(out.len(), expected, "root count of f_{{t,A}}");
    Ok(out)
}

/// Intersection basis of L and A*L for a (t-1)-dimensional F_q-subspace L
/// of the ambient field, computed set-theoretically with a greedy basis
/// extraction; the intersection has F_q-dimension t-2.
pub fn subspace_mixed_reps(tc: &TowerCtx, basis: &[Elt], a: &Elt) -> Result<Vec<Elt>> {
    let f = tc.field();
    if tc.in_base(a) {
        return Err(Error::ElementInBaseField);
    }
    if basis.len() != tc.t() as usize - 1 {
        return Err(Error::BadBasisDimension);
    }
    let l = fq_span(tc, basis);
    if l.len() != pow_u64(tc.q(), tc.t() - 1) as usize {
        return Err(Error::BadBasisDimension);
    }
    let al: HashSet<Elt> = l.iter().map(|x| f.mul(a, x)).collect();
    let mut inter: Vec<Elt> = l.iter().filter(|x| al.contains(*x)).cloned().collect();
    inter.sort_by_key(|x| f.index_of(x));
    assert_eq!(
        inter.len(),
        pow_u64(tc.q(), tc.t() - 2) as usize,
        "L and A*L intersect in dimension t-2"
    );
    // greedy F_q-basis of the intersection
    let mut span: HashSet<Elt> = HashSet::new();
    span.insert(f.zero());
    let mut out = Vec::new();
    for x in inter {
        if f.is_zero(&x) || span.contains(&x) {
            continue;
        }
        out.push(x.clone());
        let mut next = HashSet::new();
        for s in &span {
            for c in tc.base_field_elements() {
                next.insert(f.add(s, &f.mul(&c, &x)));
            }
        }
        span = next;
    }
    Ok(out)
}

/// All F_q-linear combinations of the given elements.
pub fn fq_span(tc: &TowerCtx, basis: &[Elt]) -> HashSet<Elt> {
    let f = tc.field();
    let mut span: HashSet<Elt> = HashSet::new();
    span.insert(f.zero());
    for b in basis {
        let mut next = HashSet::new();
        for s in &span {
            for c in tc.base_field_elements() {
                next.insert(f.add(s, &f.mul(&c, b)));
            }
        }
        span = next;
    }
    span
}

/// A basis of the trace kernel, a (t-1)-dimensional F_q-subspace.
pub fn trace_kernel_basis(tc: &TowerCtx) -> Vec<Elt> {
    let f = tc.field();
    let target = pow_u64(tc.q(), tc.t() - 1) as usize;
    let mut span: HashSet<Elt> = HashSet::new();
    span.insert(f.zero());
    let mut basis = Vec::new();
    for x in f.elements() {
        if span.len() == target {
            break;
        }
        if f.is_zero(&tc.trace(&x)) && !span.contains(&x) && !f.is_zero(&x) {
            basis.push(x.clone());
            let mut next = HashSet::new();
            for s in &span {
                for c in tc.base_field_elements() {
                    next.insert(f.add(s, &f.mul(&c, &x)));
                }
            }
            span = next;
        }
    }
    assert_eq!(span.len(), target);
    basis
}

/// Minimal polynomial of C in H1 u H2 outside the base field, expressed
/// through its trace: X^3 - tau*X^2 - (tau+3)*X - 1. Coefficients are
/// returned ascending as ambient elements (all lie in the base field).
pub fn minimal_poly_from_trace(tc: &TowerCtx, c: &Elt) -> Result<Vec<Elt>> {
    require_t(tc, 3)?;
    let f = tc.field();
    if tc.in_base(c) {
        return Err(Error::ElementInBaseField);
    }
    if !(is_h_root(tc, 1, c)? || is_h_root(tc, 2, c)?) {
        return Err(Error::NotAMember);
    }
    let tau = tc.trace(c);
    let three = f.from_u64(3);
    let coeffs = vec![
        f.neg_one(),
        f.neg(&f.add(&tau, &three)),
        f.neg(&tau),
        f.one(),
    ];
    // annihilates C
    let mut acc = f.zero();
    for co in coeffs.iter().rev() {
        acc = f.add(&f.mul(&acc, c), co);
    }
    if !f.is_zero(&acc) {
        return Err(Error::IdentityViolated("m_tau(C) != 0"));
    }
    // a cubic over F_q with no root in F_q is irreducible
    for y in tc.base_field_elements() {
        let mut v = f.zero();
        for co in coeffs.iter().rev() {
            v = f.add(&f.mul(&v, &y), co);
        }
        if f.is_zero(&v) {
            return Err(Error::IdentityViolated("m_tau has a base-field root"));
        }
    }
    Ok(coeffs)
}

fn require_t(tc: &TowerCtx, t: u32) -> Result<()> {
    if tc.t() != t {
        return Err(Error::PreconditionFailed("operation requires extension degree 3"));
    }
    Ok(())
}

pub(crate) fn pow_u64(b: u64, e: u32) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * b)
}
