//! Norm-equation systems over cubic extensions: the single-equation
//! system (norm one, shifted norm minus one), the three-equation system
//! with a parameter A, general shifted-norm systems, H-representations
//! via quadratic discriminants, and the characteristic-dependent
//! procedures producing a parameter A with the maximum six solutions.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::diffsets::{is_h_root, mixed_rep_planar, planar_sets, PlanarPair};
use crate::error::{Error, Result};
use crate::field::{make_extension, Elt, FieldCtx, PrimePower};
use crate::tower::{embed_subfield, TowerCtx};

/// A system of shifted-norm equations norm(X + shift_i) = target_i over
/// a tower; targets are nonzero base-field elements.
pub struct NormSystemGen {
    shifts: Vec<Elt>,
    targets: Vec<Elt>,
}

impl NormSystemGen {
    pub fn new(tc: &TowerCtx, shifts: Vec<Elt>, targets: Vec<Elt>) -> Result<NormSystemGen> {
        if shifts.len() != targets.len() {
            return Err(Error::PreconditionFailed("shifts and targets must pair up"));
        }
        let f = tc.field();
        let distinct: HashSet<&Elt> = shifts.iter().collect();
        if distinct.len() != shifts.len() {
            return Err(Error::DuplicateShifts);
        }
        for t in &targets {
            if f.is_zero(t) {
                return Err(Error::ZeroElement);
            }
            if !tc.in_base(t) {
                return Err(Error::PreconditionFailed("targets must lie in the base field"));
            }
        }
        Ok(NormSystemGen { shifts, targets })
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn shifts(&self) -> &[Elt] {
        &self.shifts
    }

    pub fn targets(&self) -> &[Elt] {
        &self.targets
    }
}

/// A parameter A together with the six solutions of the three-equation
/// system, their H-membership tags, and the three product decompositions
/// of A they induce.
#[derive(Clone)]
pub struct SixSolutionCert {
    pub q: u64,
    pub a: Elt,
    pub solutions: Vec<Elt>,
    pub membership: Vec<u8>,
    pub decompositions: Vec<(Elt, Elt)>,
}

impl SixSolutionCert {
    /// Re-check every invariant from scratch against the given tower.
    pub fn verify(&self, tc: &TowerCtx) -> Result<()> {
        let f = tc.field();
        if self.q != tc.q() {
            return Err(Error::MixedContexts);
        }
        if !f.is_one(&tc.norm(&self.a)) || f.is_one(&self.a) {
            return Err(Error::VerificationFailed("A must lie in the norm-one group, A != 1"));
        }
        if self.solutions.len() != 6 || self.membership.len() != 6 {
            return Err(Error::VerificationFailed("exactly six tagged solutions required"));
        }
        let neg_one = f.neg_one();
        let distinct: HashSet<&Elt> = self.solutions.iter().collect();
        if distinct.len() != 6 {
            return Err(Error::VerificationFailed("solutions must be pairwise distinct"));
        }
        for (y, &tag) in self.solutions.iter().zip(&self.membership) {
            if !f.is_one(&tc.norm(y))
                || tc.norm(&f.add(y, &f.one())) != neg_one
                || tc.norm(&f.add(y, &self.a)) != neg_one
            {
                return Err(Error::VerificationFailed("a solution fails a norm equation"));
            }
            if !is_h_root(tc, tag, y)? {
                return Err(Error::VerificationFailed("membership tag mismatch"));
            }
        }
        if self.decompositions.len() != 3 {
            return Err(Error::VerificationFailed("three decompositions required"));
        }
        let mut factors = Vec::new();
        for (b, c) in &self.decompositions {
            if f.mul(b, c) != self.a {
                return Err(Error::VerificationFailed("decomposition does not multiply to A"));
            }
            factors.push(b.clone());
            factors.push(c.clone());
        }
        let factor_set: HashSet<&Elt> = factors.iter().collect();
        if factor_set != distinct {
            return Err(Error::VerificationFailed(
                "decomposition factors must be exactly the six solutions",
            ));
        }
        Ok(())
    }
}

/// Solutions of norm(Y) = 1, norm(Y+1) = -1, computed two independent
/// ways (direct scan of the norm-one group; union of the planar root
/// sets) which must agree.
pub fn solve_norm1(tc: &TowerCtx) -> Result<Vec<Elt>> {
    let f = tc.field();
    let group = tc.norm_one_group()?;
    let neg_one = f.neg_one();
    let scan: Vec<Elt> = group
        .elements()
        .iter()
        .filter(|y| tc.norm(&f.add(y, &f.one())) == neg_one)
        .cloned()
        .collect();
    let pair = planar_sets(tc, &group)?;
    let union = pair.union_set();
    if scan.len() != union.len() || scan.iter().any(|y| !union.contains(y)) {
        return Err(Error::OracleMismatch);
    }
    Ok(scan)
}

/// Solutions of the three-equation system with parameter A: the elements
/// Y of H1 u H2 with A/Y also in H1 u H2. Always at most six.
pub fn solve_3eq(tc: &TowerCtx, a: &Elt) -> Result<Vec<Elt>> {
    let f = tc.field();
    if f.is_one(a) {
        return Err(Error::IdentityElement);
    }
    if !f.is_one(&tc.norm(a)) {
        return Err(Error::NotNormOne);
    }
    let group = tc.norm_one_group()?;
    let pair = planar_sets(tc, &group)?;
    let sols = solve_3eq_in(tc, &pair, a)?;
    Ok(sols)
}

pub(crate) fn solve_3eq_in(tc: &TowerCtx, pair: &PlanarPair, a: &Elt) -> Result<Vec<Elt>> {
    let f = tc.field();
    let union = pair.union_set();
    let mut sols: Vec<Elt> = union
        .iter()
        .filter(|y| union.contains(&f.div(a, y).expect("H members are nonzero")))
        .cloned()
        .collect();
    sols.sort_by_key(|y| f.index_of(y));
    if sols.len() > 6 {
        return Err(Error::BoundViolation);
    }
    Ok(sols)
}

/// All X in the ambient field satisfying every equation of the system.
/// When the system has t equations, the solution count is at most t!.
pub fn solve_general(tc: &TowerCtx, sys: &NormSystemGen) -> Result<Vec<Elt>> {
    let f = tc.field();
    let sols: Vec<Elt> = f
        .elements()
        .filter(|x| {
            sys.shifts
                .iter()
                .zip(&sys.targets)
                .all(|(s, t)| tc.norm(&f.add(x, s)) == *t)
        })
        .collect();
    if sys.len() == tc.t() as usize {
        let bound: usize = (1..=sys.len()).product();
        assert!(sols.len() <= bound, "solution bound for a full system");
    }
    Ok(sols)
}

/// H_i-representation of A with distinct factors via the quadratic
/// discriminant: for i=1 the quadratic is X^2 + (A+1-A*phi(A))X + A with
/// phi(A) = A^q; for i=2 the same with psi(A) = A^{q^2} in place of
/// phi(A). Returns the factor pair when the discriminant is a nonzero
/// square, absent otherwise (repeated factors are excluded).
pub fn h_rep_discriminant(tc: &TowerCtx, i: u8, a: &Elt) -> Result<Option<(Elt, Elt)>> {
    let f = tc.field();
    if tc.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !(i == 1 || i == 2) {
        return Err(Error::BadIndex);
    }
    if !f.is_one(&tc.norm(a)) {
        return Err(Error::NotNormOne);
    }
    let conj = tc.frobenius(a, if i == 1 { 1 } else { 2 });
    let one = f.one();
    // linear coefficient A + 1 - A*conj
    let b = f.sub(&f.add(a, &one), &f.mul(a, &conj));
    let disc = f.sub(&f.mul(&b, &b), &f.scalar_mul(4, a));
    if f.is_zero(&disc) || !f.is_square(&disc) {
        return Ok(None);
    }
    let g = f.sqrt(&disc)?;
    let half = f.inv(&f.from_u64(2))?;
    let x_plus = f.mul(&f.add(&f.neg(&b), &g), &half);
    let x_minus = f.mul(&f.sub(&f.neg(&b), &g), &half);
    assert!(is_h_root(tc, i, &x_plus)?, "quadratic roots lie in H_i");
    assert!(is_h_root(tc, i, &x_minus)?, "quadratic roots lie in H_i");
    debug_assert_eq!(f.mul(&x_plus, &x_minus), *a);
    Ok(Some(order_pair(f, x_plus, x_minus)))
}

/// Oracle H_i-representation: scan unordered pairs (repeats allowed) of
/// H_i for product A. At most one exists.
pub fn h_rep_enumerate(tc: &TowerCtx, i: u8, a: &Elt) -> Result<Option<(Elt, Elt)>> {
    let group = tc.norm_one_group()?;
    let pair = planar_sets(tc, &group)?;
    let hi = if i == 1 {
        &pair.h1
    } else if i == 2 {
        &pair.h2
    } else {
        return Err(Error::BadIndex);
    };
    let f = tc.field();
    let mut found: Option<(Elt, Elt)> = None;
    for (j, b) in hi.iter().enumerate() {
        for c in &hi[j..] {
            if f.mul(b, c) == *a {
                if found.is_some() {
                    return Err(Error::MultipleRepresentations);
                }
                found = Some(order_pair(f, b.clone(), c.clone()));
            }
        }
    }
    Ok(found)
}

/// For A in H_i, its unique H_{3-i}-representation (1/A^q) * (1/A^{q^2}).
pub fn cross_rep_of_member(tc: &TowerCtx, i: u8, a: &Elt) -> Result<(Elt, Elt)> {
    let f = tc.field();
    if !is_h_root(tc, i, a)? {
        return Err(Error::NotAMember);
    }
    let b = f.inv(&tc.frobenius(a, 1))?;
    let c = f.inv(&tc.frobenius(a, 2))?;
    assert!(is_h_root(tc, 3 - i, &b)?);
    assert!(is_h_root(tc, 3 - i, &c)?);
    debug_assert_eq!(f.mul(&b, &c), *a);
    Ok((b, c))
}

/// H_i^*: products of distinct pairs of H_i, keyed by value. Collisions
/// are impossible (each value has at most one H_i-representation).
fn h_star(f: &FieldCtx, hi: &[Elt]) -> Result<HashMap<Elt, (Elt, Elt)>> {
    let mut out = HashMap::new();
    for (j, b) in hi.iter().enumerate() {
        for c in &hi[j + 1..] {
            let v = f.mul(b, c);
            if out
                .insert(v, order_pair(f, b.clone(), c.clone()))
                .is_some()
            {
                return Err(Error::MultipleRepresentations);
            }
        }
    }
    Ok(out)
}

/// For q = 2 mod 3 and q > 2: produce the least element of H1* n H2*
/// (nonempty by the sigma-sum argument) and certify its six solutions.
pub fn find_six_char2mod3(tc: &TowerCtx) -> Result<SixSolutionCert> {
    if tc.q() % 3 != 2 || tc.q() <= 2 {
        return Err(Error::PreconditionFailed("requires q = 2 mod 3 and q > 2"));
    }
    let f = tc.field();
    let group = tc.norm_one_group()?;
    let pair = planar_sets(tc, &group)?;
    let star1 = h_star(f, &pair.h1)?;
    let star2 = h_star(f, &pair.h2)?;
    let a = star1
        .keys()
        .filter(|v| star2.contains_key(*v))
        .min_by_key(|v| group.index_of(v).expect("products stay in the group"))
        .ok_or(Error::NoWitness)?
        .clone();
    let (b1, c1) = star1[&a].clone();
    let (b2, c2) = star2[&a].clone();
    let (a1, a2) = mixed_rep_planar(tc, &a)?;
    let cert = SixSolutionCert {
        q: tc.q(),
        a,
        solutions: vec![b1.clone(), c1.clone(), a1.clone(), b2.clone(), c2.clone(), a2.clone()],
        membership: vec![1, 1, 1, 2, 2, 2],
        decompositions: vec![(b1, c1), (b2, c2), (a1, a2)],
    };
    cert.verify(tc)?;
    Ok(cert)
}

/// Element sums used in the counting argument for q = 2 mod 3.
pub struct SigmaReport {
    pub sigma_group: Elt,
    pub sigma_group_non_identity: Elt,
    /// pair sums over distinct products of H1 and H2; present for q > 2
    pub sigma_h_star: Option<(Elt, Elt)>,
    pub ok: bool,
}

/// Verify sigma(N) = 0, sigma(N \ {1}) = -1, and (for q > 2)
/// sigma(H_i^*) = 0, the coefficient of X^{q-1} in h_i.
pub fn sigma_checks(tc: &TowerCtx) -> Result<SigmaReport> {
    let f = tc.field();
    let group = tc.norm_one_group()?;
    let mut total = f.zero();
    for x in group.elements() {
        total = f.add(&total, x);
    }
    let non_identity = f.sub(&total, &f.one());
    let mut ok = f.is_zero(&total) && non_identity == f.neg_one();
    let sigma_h_star = if tc.q() > 2 {
        let pair = planar_sets(tc, &group)?;
        let mut sums = Vec::new();
        for hi in [&pair.h1, &pair.h2] {
            let mut s = f.zero();
            for (j, b) in hi.iter().enumerate() {
                for c in &hi[j + 1..] {
                    s = f.add(&s, &f.mul(b, c));
                }
            }
            ok &= f.is_zero(&s);
            sums.push(s);
        }
        Some((sums.remove(0), sums.remove(0)))
    } else {
        None
    };
    Ok(SigmaReport {
        sigma_group: total,
        sigma_group_non_identity: non_identity,
        sigma_h_star,
        ok,
    })
}

/// Characteristic 3, q >= 9: scan C in H1 u H2 \ {1} in group order; for
/// trace tau the element tau^2 + 1 being a nonzero square makes C^2 have
/// an H_{3-i}-representation B * E with B != E, and A = C/E works.
pub fn find_six_char3(tc: &TowerCtx) -> Result<SixSolutionCert> {
    if tc.p() != 3 {
        return Err(Error::NotChar3);
    }
    if tc.q() < 9 {
        return Err(Error::PreconditionFailed("requires q >= 9"));
    }
    let f = tc.field();
    let group = tc.norm_one_group()?;
    let pair = planar_sets(tc, &group)?;
    let mut members: Vec<(u8, Elt)> = Vec::new();
    for c in &pair.h1 {
        if !f.is_one(c) {
            members.push((1, c.clone()));
        }
    }
    for c in &pair.h2 {
        if !f.is_one(c) {
            members.push((2, c.clone()));
        }
    }
    members.sort_by_key(|(_, c)| group.index_of(c).expect("H members have norm one"));
    for (i, c) in members {
        let tau = tc.trace(&c);
        let crit = f.add(&f.mul(&tau, &tau), &f.one());
        if f.is_zero(&crit) || !f.is_square(&crit) {
            continue;
        }
        let c2 = f.mul(&c, &c);
        let Some((b, e)) = h_rep_discriminant(tc, 3 - i, &c2)? else {
            continue;
        };
        for e_pick in [&e, &b] {
            let b_pick = f.div(&c2, e_pick)?;
            let a = f.div(&c, e_pick)?;
            let (a1, a2) = mixed_rep_planar(tc, &a)?;
            let inv_e = f.inv(e_pick)?;
            let inv_c = f.inv(&c)?;
            // C and 1/E lie in H_i; 1/C and B lie in H_{3-i}
            let (h1_side, h2_side) = if i == 1 {
                (
                    vec![a1.clone(), c.clone(), inv_e.clone()],
                    vec![a2.clone(), inv_c.clone(), b_pick.clone()],
                )
            } else {
                (
                    vec![a1.clone(), inv_c.clone(), b_pick.clone()],
                    vec![a2.clone(), c.clone(), inv_e.clone()],
                )
            };
            let sols: Vec<Elt> = h1_side.iter().chain(h2_side.iter()).cloned().collect();
            let tags: Vec<u8> = vec![1, 1, 1, 2, 2, 2];
            let distinct: HashSet<&Elt> = sols.iter().collect();
            if distinct.len() != 6 {
                continue;
            }
            let cert = SixSolutionCert {
                q: tc.q(),
                a,
                solutions: sols,
                membership: tags,
                decompositions: vec![(c.clone(), inv_e), (b_pick, inv_c), (a1, a2)],
            };
            cert.verify(tc)?;
            return Ok(cert);
        }
    }
    Err(Error::ExhaustedWithoutWitness)
}

/// The evaluated identities around the discriminant quartic D(C).
pub struct DcReport {
    pub d: Elt,
    pub norm_d: Elt,
}

/// For C in H1 u H2 \ {1}: verify the product form of the quartic D(C),
/// the trace expressions of the four factor norms, and the product
/// formula for N(D).
pub fn dc_identities(tc: &TowerCtx, c: &Elt) -> Result<DcReport> {
    let f = tc.field();
    if f.is_one(c) || !(is_h_root(tc, 1, c)? || is_h_root(tc, 2, c)?) {
        return Err(Error::NotAMember);
    }
    let one = f.one();
    let c2 = f.mul(c, c);
    let cp1 = f.add(c, &one);
    let cp1_2 = f.mul(&cp1, &cp1);
    // (C^2 (C+1)^2 + (C+1)^2 - C^2)^2 - 4 (C+1)^4 C^2
    let inner = f.sub(&f.add(&f.mul(&c2, &cp1_2), &cp1_2), &c2);
    let d = f.sub(
        &f.mul(&inner, &inner),
        &f.scalar_mul(4, &f.mul(&f.mul(&cp1_2, &cp1_2), &c2)),
    );
    // (C^2+3C+1)(C^2+C+1)(C^2+C-1)(C^2-C-1)
    let f1 = f.add(&f.add(&c2, &f.scalar_mul(3, c)), &one);
    let f2 = f.add(&f.add(&c2, c), &one);
    let f3 = f.sub(&f.add(&c2, c), &one);
    let f4 = f.sub(&f.sub(&c2, c), &one);
    let product = f.mul(&f.mul(&f1, &f2), &f.mul(&f3, &f4));
    if d != product {
        return Err(Error::IdentityViolated("quartic product form of D(C)"));
    }
    // factor norms expressed in tau = trace(C)
    let tau = tc.trace(c);
    let tau2 = f.mul(&tau, &tau);
    let m_t2_3t_1 = f.neg(&f.add(&f.add(&tau2, &f.scalar_mul(3, &tau)), &one));
    let t2_3t_9 = f.add(&f.add(&tau2, &f.scalar_mul(3, &tau)), &f.from_u64(9));
    let t2_3t_1 = f.add(&f.add(&tau2, &f.scalar_mul(3, &tau)), &one);
    let checks = [
        (tc.norm(&f1), &m_t2_3t_1, "N(C^2+3C+1)"),
        (tc.norm(&f2), &t2_3t_9, "N(C^2+C+1)"),
        (tc.norm(&f3), &t2_3t_1, "N(C^2+C-1)"),
        (tc.norm(&f4), &m_t2_3t_1, "N(C^2-C-1)"),
    ];
    for (lhs, rhs, name) in checks {
        if lhs != *rhs {
            return Err(Error::IdentityViolated(name));
        }
    }
    let norm_d = tc.norm(&d);
    let expected = f.mul(
        &f.mul(&m_t2_3t_1, &m_t2_3t_1),
        &f.mul(&t2_3t_9, &t2_3t_1),
    );
    if norm_d != expected {
        return Err(Error::IdentityViolated("product formula for N(D)"));
    }
    Ok(DcReport { d, norm_d })
}

/// Universal witness scan: the first A in the norm-one group (in group
/// order) whose three-equation system has six solutions forming three
/// clean product decompositions.
pub fn find_six_any(tc: &TowerCtx) -> Result<SixSolutionCert> {
    let group = tc.norm_one_group()?;
    let pair = planar_sets(tc, &group)?;
    for a in group.non_identity() {
        if let Some(cert) = cert_from_solutions(tc, &pair, a)? {
            return Ok(cert);
        }
    }
    Err(Error::NoWitness)
}

/// Assemble and verify a certificate for A when its three-equation
/// system has six solutions pairing up under Y -> A/Y without fixed
/// points; None otherwise.
pub(crate) fn cert_from_solutions(
    tc: &TowerCtx,
    pair: &PlanarPair,
    a: &Elt,
) -> Result<Option<SixSolutionCert>> {
    let f = tc.field();
    let sols = solve_3eq_in(tc, pair, a)?;
    if sols.len() != 6 {
        return Ok(None);
    }
    let mut decomps = Vec::new();
    for y in &sols {
        let z = f.div(a, y)?;
        if z == *y {
            return Ok(None); // fixed point: no clean three-pair matching
        }
        if f.index_of(y) < f.index_of(&z) {
            decomps.push((y.clone(), z));
        }
    }
    if decomps.len() != 3 {
        return Ok(None);
    }
    let mut membership = Vec::new();
    for y in &sols {
        membership.push(if is_h_root(tc, 1, y)? { 1 } else { 2 });
    }
    let cert = SixSolutionCert {
        q: tc.q(),
        a: a.clone(),
        solutions: sols,
        membership,
        decompositions: decomps,
    };
    cert.verify(tc)?;
    Ok(Some(cert))
}

/// Lift a certificate over F_{q^3}/F_q to one over F_{q^6}/F_{q^2}: the
/// same six elements solve the lifted system because the two norms agree
/// on the smaller field.
pub fn squaring_lift(tc: &TowerCtx, cert: &SixSolutionCert) -> Result<(TowerCtx, SixSolutionCert)> {
    cert.verify(tc)?;
    let small = tc.field();
    let p = tc.p();
    let small_n = small.n();
    let big_n = small_n * 2;
    let mut big_order: u64 = 1;
    for _ in 0..big_n {
        big_order = big_order.checked_mul(p).ok_or(Error::BoundExceeded)?;
    }
    if big_order > small.dlog_bound() {
        return Err(Error::BoundExceeded);
    }
    let big = Arc::new(make_extension(p, big_n, None)?);
    let emb = embed_subfield(small, &big)?;
    let q2 = tc.q() * tc.q();
    let big_tc = TowerCtx::new(big.clone(), q2, 3)?;
    let a = emb.apply(small, &big, &cert.a)?;
    let mut solutions = Vec::new();
    let mut membership = Vec::new();
    for y in &cert.solutions {
        let ly = emb.apply(small, &big, y)?;
        let tag = if is_h_root(&big_tc, 1, &ly)? {
            1
        } else if is_h_root(&big_tc, 2, &ly)? {
            2
        } else {
            return Err(Error::LiftVerificationFailed);
        };
        solutions.push(ly);
        membership.push(tag);
    }
    let mut decompositions = Vec::new();
    for (b, c) in &cert.decompositions {
        decompositions.push((emb.apply(small, &big, b)?, emb.apply(small, &big, c)?));
    }
    let lifted = SixSolutionCert { q: q2, a, solutions, membership, decompositions };
    lifted.verify(&big_tc).map_err(|_| Error::LiftVerificationFailed)?;
    Ok((big_tc, lifted))
}

/// Sum of the quadratic character eta(y^2 + 1) over y in F_q, as an
/// integer. Equals -1 for every odd q.
pub fn eta_character_sum(q: PrimePower) -> Result<i64> {
    if q.p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let f = make_extension(q.p, q.k as usize, None)?;
    let one = f.one();
    let mut sum: i64 = 0;
    for y in f.elements() {
        let v = f.add(&f.mul(&y, &y), &one);
        if f.is_zero(&v) {
            continue;
        }
        sum += if f.is_square(&v) { 1 } else { -1 };
    }
    Ok(sum)
}

fn order_pair(f: &FieldCtx, a: Elt, b: Elt) -> (Elt, Elt) {
    if f.index_of(&a) <= f.index_of(&b) {
        (a, b)
    } else {
        (b, a)
    }
}
