//! Self-contained certificate files: JSON-serializable forms of the
//! in-memory certificates that embed a full field descriptor, so a
//! verifier can re-check every claim from the file alone.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diffsets::verify_difference_set;
use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::ng::{BicliqueCert, K46Construction};
use crate::normsys::SixSolutionCert;
use crate::poly::Poly;
use crate::tower::TowerCtx;

pub const VERIFIER_VERSION: &str = "1";

/// Everything needed to rebuild a field: prime, degree, modulus
/// coefficients (ascending), and the distinguished primitive element.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
    pub primitive: Vec<u64>,
}

impl FieldDescriptor {
    pub fn of(f: &FieldCtx) -> FieldDescriptor {
        FieldDescriptor {
            p: f.p(),
            n: f.n(),
            modulus: f.modulus().coeffs().to_vec(),
            primitive: f.primitive().coeffs().to_vec(),
        }
    }

    /// Rebuild the field, re-validating irreducibility and primitivity.
    pub fn rebuild(&self) -> Result<FieldCtx> {
        let modulus = Poly::new(self.p, self.modulus.clone());
        FieldCtx::from_parts(self.p, self.n, modulus, self.primitive.clone())
    }
}

/// A field element as both a generator power (absent for zero) and its
/// coordinate vector; the two must agree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EltRepr {
    pub power: Option<u64>,
    pub coords: Vec<u64>,
}

impl EltRepr {
    pub fn of(f: &FieldCtx, e: &Elt) -> Result<EltRepr> {
        let power = if f.is_zero(e) {
            None
        } else {
            Some(f.discrete_log(e)?)
        };
        Ok(EltRepr { power, coords: e.coeffs().to_vec() })
    }

    pub fn to_elt(&self, f: &FieldCtx) -> Result<Elt> {
        let e = f.elt(self.coords.clone()).map_err(|_| {
            Error::MalformedCertificate("element coordinates out of range".into())
        })?;
        match self.power {
            None => {
                if !f.is_zero(&e) {
                    return Err(Error::MalformedCertificate(
                        "missing power on a nonzero element".into(),
                    ));
                }
            }
            Some(k) => {
                if f.pow(&f.primitive(), k) != e {
                    return Err(Error::MalformedCertificate(
                        "power and coordinates disagree".into(),
                    ));
                }
            }
        }
        Ok(e)
    }
}

/// A difference set presented as powers of the norm-one group generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiffSetCertFile {
    pub q: u64,
    pub t: u32,
    pub field: FieldDescriptor,
    pub set: Vec<u64>,
    pub lambda: u64,
    pub ok: bool,
}

impl DiffSetCertFile {
    pub fn build(tc: &TowerCtx, set: &[Elt], lambda: u64, ok: bool) -> Result<DiffSetCertFile> {
        let group = tc.norm_one_group()?;
        let mut powers = Vec::with_capacity(set.len());
        for e in set {
            powers.push(group.index_of(e).ok_or(Error::ElementOutsideGroup)?);
        }
        Ok(DiffSetCertFile {
            q: tc.q(),
            t: tc.t(),
            field: FieldDescriptor::of(tc.field()),
            set: powers,
            lambda,
            ok,
        })
    }

    /// Rebuild the tower and re-run the full pair-count verification.
    pub fn verify(&self) -> Result<()> {
        let f = Arc::new(self.field.rebuild()?);
        let tc = TowerCtx::new(f, self.q, self.t)?;
        let group = tc.norm_one_group()?;
        let field = tc.field();
        let gen = group.generator().clone();
        let set: Vec<Elt> = self.set.iter().map(|&k| field.pow(&gen, k)).collect();
        let cert = verify_difference_set(&tc, &group, &set, self.lambda)?;
        if cert.ok != self.ok {
            return Err(Error::MalformedCertificate("difference-set flag mismatch".into()));
        }
        if !cert.ok {
            return Err(Error::VerificationFailed("claimed set is not a difference set"));
        }
        Ok(())
    }
}

/// File form of a six-solution certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SixSolutionCertFile {
    pub q: u64,
    pub field: FieldDescriptor,
    pub a: EltRepr,
    pub solutions: Vec<EltRepr>,
    pub membership: Vec<u8>,
    pub decompositions: Vec<(EltRepr, EltRepr)>,
    pub verifier_version: String,
}

impl SixSolutionCertFile {
    pub fn build(tc: &TowerCtx, cert: &SixSolutionCert) -> Result<SixSolutionCertFile> {
        let f = tc.field();
        Ok(SixSolutionCertFile {
            q: cert.q,
            field: FieldDescriptor::of(f),
            a: EltRepr::of(f, &cert.a)?,
            solutions: cert
                .solutions
                .iter()
                .map(|y| EltRepr::of(f, y))
                .collect::<Result<_>>()?,
            membership: cert.membership.clone(),
            decompositions: cert
                .decompositions
                .iter()
                .map(|(b, c)| Ok((EltRepr::of(f, b)?, EltRepr::of(f, c)?)))
                .collect::<Result<_>>()?,
            verifier_version: VERIFIER_VERSION.to_string(),
        })
    }

    pub fn verify(&self) -> Result<()> {
        let f = Arc::new(self.field.rebuild()?);
        let tc = TowerCtx::new(f, self.q, 3)?;
        let field = tc.field();
        let cert = SixSolutionCert {
            q: self.q,
            a: self.a.to_elt(field)?,
            solutions: self
                .solutions
                .iter()
                .map(|y| y.to_elt(field))
                .collect::<Result<_>>()?,
            membership: self.membership.clone(),
            decompositions: self
                .decompositions
                .iter()
                .map(|(b, c)| Ok((b.to_elt(field)?, c.to_elt(field)?)))
                .collect::<Result<_>>()?,
        };
        cert.verify(&tc)
    }
}

/// File form of a biclique certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BicliqueCertFile {
    pub q: u64,
    pub t: u32,
    pub field: FieldDescriptor,
    pub left: Vec<(EltRepr, EltRepr)>,
    pub right: Vec<(EltRepr, EltRepr)>,
    pub construction: Option<ConstructionRepr>,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionRepr {
    pub a: EltRepr,
    pub c: EltRepr,
    pub d: Option<EltRepr>,
}

impl BicliqueCertFile {
    pub fn build(tc: &TowerCtx, cert: &BicliqueCert) -> Result<BicliqueCertFile> {
        let f = tc.field();
        let vertex = |(a, x): &(Elt, Elt)| -> Result<(EltRepr, EltRepr)> {
            Ok((EltRepr::of(f, a)?, EltRepr::of(f, x)?))
        };
        let construction = match &cert.construction {
            None => None,
            Some(K46Construction { a, c, d }) => Some(ConstructionRepr {
                a: EltRepr::of(f, a)?,
                c: EltRepr::of(f, c)?,
                d: d.as_ref().map(|d| EltRepr::of(f, d)).transpose()?,
            }),
        };
        Ok(BicliqueCertFile {
            q: cert.q,
            t: cert.t,
            field: FieldDescriptor::of(f),
            left: cert.left.iter().map(vertex).collect::<Result<_>>()?,
            right: cert.right.iter().map(vertex).collect::<Result<_>>()?,
            construction,
            verified: true,
        })
    }

    pub fn verify(&self) -> Result<()> {
        let f = Arc::new(self.field.rebuild()?);
        let tc = TowerCtx::new(f, self.q, self.t - 1)?;
        let field = tc.field();
        let vertex = |(a, x): &(EltRepr, EltRepr)| -> Result<(Elt, Elt)> {
            Ok((a.to_elt(field)?, x.to_elt(field)?))
        };
        let cert = BicliqueCert {
            q: self.q,
            t: self.t,
            left: self.left.iter().map(vertex).collect::<Result<_>>()?,
            right: self.right.iter().map(vertex).collect::<Result<_>>()?,
            construction: None,
        };
        cert.verify(&tc)
    }
}

/// Any certificate file, tagged for the `verify` entry point.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertFile {
    DiffSet(DiffSetCertFile),
    SixSolution(SixSolutionCertFile),
    Biclique(BicliqueCertFile),
}

impl CertFile {
    pub fn verify(&self) -> Result<()> {
        match self {
            CertFile::DiffSet(c) => c.verify(),
            CertFile::SixSolution(c) => c.verify(),
            CertFile::Biclique(c) => c.verify(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates are serializable")
    }

    pub fn from_json(s: &str) -> Result<CertFile> {
        serde_json::from_str(s).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffsets::planar_sets;
    use crate::ng::build_k46;
    use crate::normsys::find_six_char2mod3;

    #[test]
    fn diffset_roundtrip_and_verify() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let g = tc.norm_one_group().unwrap();
        let pair = planar_sets(&tc, &g).unwrap();
        let file = DiffSetCertFile::build(&tc, &pair.h1, 1, true).unwrap();
        let json = CertFile::DiffSet(file).to_json();
        let back = CertFile::from_json(&json).unwrap();
        back.verify().unwrap();
    }

    #[test]
    fn diffset_bad_set_fails() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let g = tc.norm_one_group().unwrap();
        let pair = planar_sets(&tc, &g).unwrap();
        let mut file = DiffSetCertFile::build(&tc, &pair.h1, 1, true).unwrap();
        file.set[0] = (file.set[0] + 1) % g.len() as u64;
        assert!(file.verify().is_err());
    }

    #[test]
    fn six_solution_roundtrip_and_tamper() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let cert = find_six_char2mod3(&tc).unwrap();
        let file = SixSolutionCertFile::build(&tc, &cert).unwrap();
        let json = CertFile::SixSolution(file.clone()).to_json();
        CertFile::from_json(&json).unwrap().verify().unwrap();
        // inconsistent power/coords pair is rejected
        let mut bad = file;
        bad.a.power = bad.a.power.map(|k| k + 1);
        assert!(matches!(bad.verify(), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn biclique_roundtrip() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let cert = find_six_char2mod3(&tc).unwrap();
        let bic = build_k46(&tc, &cert).unwrap();
        let file = BicliqueCertFile::build(&tc, &bic).unwrap();
        let json = CertFile::Biclique(file).to_json();
        CertFile::from_json(&json).unwrap().verify().unwrap();
    }

    #[test]
    fn descriptor_rejects_fake_primitive() {
        let tc = TowerCtx::for_q_t(5, 3).unwrap();
        let mut d = FieldDescriptor::of(tc.field());
        d.primitive = tc.field().one().coeffs().to_vec();
        assert!(matches!(d.rebuild(), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn malformed_json_reports_cleanly() {
        assert!(matches!(
            CertFile::from_json("{\"kind\": \"unknown\"}"),
            Err(Error::MalformedCertificate(_))
        ));
    }
}
