//! Serialized sdepth certificates that can be re-checked from scratch.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::partition::{verify_partition, Interval, IntervalPartition};
use crate::poset::CharPoset;
use crate::search::SdepthCertificate;
use crate::ENGINE_VERSION;

/// Canonical text of an ideal: arity then generators in degrevlex order.
pub fn canonical_encoding(ideal: &MonomialIdeal) -> String {
    let gens: Vec<String> = ideal
        .generators()
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("n={};[{}]", ideal.arity(), gens.join(";"))
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Hash of the quotient `I/J` tied to the engine version.
pub fn quotient_hash(numerator: &MonomialIdeal, denominator: &MonomialIdeal) -> String {
    sha256_hex(&format!(
        "{ENGINE_VERSION}|{}|{}",
        canonical_encoding(numerator),
        canonical_encoding(denominator)
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentStats {
    pub nodes: u64,
    pub counting_prunes: u64,
    pub dead_end_prunes: u64,
}

/// Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub n: usize,
    pub g: Vec<u32>,
    pub ideal_hash: String,
    pub numerator: Vec<Vec<u32>>,
    pub denominator: Vec<Vec<u32>>,
    pub s: usize,
    pub intervals: Vec<[Vec<u32>; 2]>,
    pub verified: bool,
    pub stats: DocumentStats,
}

impl CertificateDocument {
    /// Builds the document, running the independent verifier on the way.
    pub fn new(poset: &CharPoset, cert: &SdepthCertificate) -> Self {
        let verified = verify_partition(poset, &cert.partition, cert.s).is_ok()
            && cert.partition.min_top_rank(poset) == Some(cert.s);
        Self {
            n: poset.arity(),
            g: poset.ceiling().exponents().to_vec(),
            ideal_hash: quotient_hash(poset.numerator(), poset.denominator()),
            numerator: generator_vectors(poset.numerator()),
            denominator: generator_vectors(poset.denominator()),
            s: cert.s,
            intervals: cert
                .partition
                .intervals
                .iter()
                .map(|iv| [iv.bottom.exponents().to_vec(), iv.top.exponents().to_vec()])
                .collect(),
            verified,
            stats: DocumentStats {
                nodes: cert.stats.nodes,
                counting_prunes: cert.stats.counting_prunes,
                dead_end_prunes: cert.stats.dead_end_prunes,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Rebuilds the poset from the stored ideals and box, then re-verifies
    /// the partition and the claimed value. Returns a description of the
    /// first mismatch.
    pub fn check(&self) -> Result<(), String> {
        if !self.verified {
            return Err("certificate is not marked verified".into());
        }
        let numerator = ideal_from(self.n, &self.numerator)?;
        let denominator = ideal_from(self.n, &self.denominator)?;
        if quotient_hash(&numerator, &denominator) != self.ideal_hash {
            return Err("ideal hash does not match the stored ideals".into());
        }
        let g = monomial_from(self.n, &self.g)?;
        let poset =
            CharPoset::build(&numerator, &denominator, Some(&g)).map_err(|e| e.to_string())?;
        let mut intervals = Vec::with_capacity(self.intervals.len());
        for [b, t] in &self.intervals {
            intervals.push(Interval::new(monomial_from(self.n, b)?, monomial_from(self.n, t)?));
        }
        let partition = IntervalPartition::new(intervals);
        verify_partition(&poset, &partition, self.s).map_err(|v| v.to_string())?;
        match partition.min_top_rank(&poset) {
            Some(r) if r == self.s => Ok(()),
            other => Err(format!("claimed s = {} but partition gives {other:?}", self.s)),
        }
    }
}

fn generator_vectors(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    ideal.generators().iter().map(|g| g.exponents().to_vec()).collect()
}

fn monomial_from(n: usize, exps: &[u32]) -> Result<Monomial, String> {
    if exps.len() != n {
        return Err(format!("vector {exps:?} does not have length {n}"));
    }
    Monomial::new(exps.to_vec()).map_err(|e| e.to_string())
}

fn ideal_from(n: usize, gens: &[Vec<u32>]) -> Result<MonomialIdeal, String> {
    let gens = gens
        .iter()
        .map(|g| monomial_from(n, g))
        .collect::<Result<Vec<_>, _>>()?;
    MonomialIdeal::new(n, gens).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{sdepth_poset, SearchConfig};

    fn document() -> CertificateDocument {
        let ideal = MonomialIdeal::maximal(3).unwrap();
        let poset = CharPoset::for_ideal(&ideal).unwrap();
        let cert = sdepth_poset(&poset, &SearchConfig::default()).unwrap();
        CertificateDocument::new(&poset, &cert)
    }

    #[test]
    fn round_trip_and_check() {
        let doc = document();
        assert!(doc.verified);
        assert_eq!(doc.s, 2);
        let back = CertificateDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.check(), Ok(()));
    }

    #[test]
    fn field_order_is_stable() {
        let json = document().to_json();
        let keys = ["\"n\"", "\"g\"", "\"ideal_hash\"", "\"numerator\"", "\"denominator\"",
            "\"s\"", "\"intervals\"", "\"verified\"", "\"stats\""];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tampering_is_detected() {
        let mut doc = document();
        doc.s = 3;
        assert!(doc.check().is_err());

        let mut doc = document();
        doc.intervals.pop();
        assert!(doc.check().is_err());

        let mut doc = document();
        doc.numerator.pop();
        assert!(doc.check().unwrap_err().contains("hash"));

        let mut doc = document();
        doc.verified = false;
        assert!(doc.check().is_err());
    }

    #[test]
    fn hash_depends_on_both_ideals() {
        let a = MonomialIdeal::maximal(2).unwrap();
        let z = MonomialIdeal::zero(2);
        let u = MonomialIdeal::unit(2);
        assert_ne!(quotient_hash(&a, &z), quotient_hash(&u, &a));
        assert_eq!(quotient_hash(&a, &z), quotient_hash(&a.clone(), &z));
        assert_eq!(canonical_encoding(&a), "n=2;[0,1;1,0]");
    }
}
