//! Minimal-series data of principal W-algebras: central charges, nondegenerate
//! levels and central characters of the simple modules.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::affine::{enumerate_pr_k_nondeg, is_admissible_number};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};
use crate::rootsys::{langlands_dual, RootSystem, Weight};

/// `|qρ − pρ^∨|²`-form and factored form of the central charge; errors if they differ.
pub fn central_charge(rs: &RootSystem, p: i64, qq: i64) -> Result<Q> {
    if p < 1 || qq < 1 || p.gcd(&qq) != 1 {
        return Err(Error::Precondition(format!("need coprime p, q >= 1, got ({p}, {qq})")));
    }
    let (norm, factored) = central_charge_forms(rs, p, qq);
    if norm != factored {
        return Err(Error::Inconsistent(format!(
            "central charge forms disagree: {} vs {}",
            fmt_q(&norm),
            fmt_q(&factored)
        )));
    }
    Ok(norm)
}

/// Both closed forms, unchecked.
pub fn central_charge_forms(rs: &RootSystem, p: i64, qq: i64) -> (Q, Q) {
    let l = q(rs.rank() as i64);
    let rho_check = rs.rho_check();
    let v: Weight = rs.rho.iter().zip(&rho_check).map(|(r, rc)| q(qq) * r - q(p) * rc).collect();
    let pq = q(p * qq);
    let norm = &l - q(12) * rs.inner_weights(&v, &v) / &pq;
    let h = rs.coxeter_h;
    let hv = rs.dual_coxeter_hv;
    let hv_dual = langlands_dual(rs).dual_coxeter_hv;
    let factored =
        -&l * q((h + 1) * p - hv * qq) * q(rs.lacing_rv * hv_dual * p - (h + 1) * qq) / pq;
    (norm, factored)
}

/// Why a level is or is not nondegenerate admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    pub p: i64,
    pub q: i64,
    pub reason: Option<String>,
}

pub fn nondegeneracy(rs: &RootSystem, k: &Q) -> Nondegeneracy {
    let an = is_admissible_number(rs, k);
    if !an.admissible {
        return Nondegeneracy { nondegenerate: false, p: an.p, q: an.q, reason: an.reason };
    }
    let rv = rs.lacing_rv;
    let (bound, name) = if an.q.gcd(&rv) == 1 {
        (rs.coxeter_h, "h".to_string())
    } else {
        (rv * langlands_dual(rs).dual_coxeter_hv, "r^∨h^∨_{Lg}".to_string())
    };
    let ok = an.q >= bound;
    let reason = (!ok).then(|| format!("degenerate: q = {} < {name} = {bound}", an.q));
    Nondegeneracy { nondegenerate: ok, p: an.p, q: an.q, reason }
}

/// Admissible with `q ≥ h` when `(q, r^∨) = 1`, `q ≥ r^∨ h^∨_{Lg}` when `(q, r^∨) = r^∨`.
pub fn is_nondegenerate(rs: &RootSystem, k: &Q) -> bool {
    nondegeneracy(rs, k).nondegenerate
}

/// Dominant representative of `λ̄ + ρ`; equal exactly on dot-orbits.
pub fn central_character(rs: &RootSystem, lambda: &[Q]) -> Weight {
    let shifted: Weight = lambda.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
    rs.weyl_dominant_representative(&shifted)
}

/// `λ̄ = −(k + h^∨) ρ^∨`.
pub fn vacuum_weight(rs: &RootSystem, k: &Q) -> Weight {
    let s = k + q(rs.dual_coxeter_hv);
    rs.rho_check().iter().map(|x| -(x * &s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModelRecord {
    pub cartan_type: String,
    pub p: i64,
    pub q: i64,
    pub level: Q,
    pub central_charge: Q,
    /// Sorted, deduplicated central-character fingerprints.
    pub characters: Vec<Weight>,
    pub count: usize,
    /// `|Pr^k_nondeg|` before deduplication.
    pub nondegenerate_weights: usize,
    pub vacuum: Weight,
}

impl Serialize for MinimalModelRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let chars: Vec<Vec<String>> = self.characters.iter().map(|w| w.iter().map(fmt_q).collect()).collect();
        let mut st = s.serialize_struct("MinimalModelRecord", 10)?;
        st.serialize_field("schema_version", &1)?;
        st.serialize_field("type", &self.cartan_type)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("level", &fmt_q(&self.level))?;
        st.serialize_field("c", &fmt_q(&self.central_charge))?;
        st.serialize_field("count", &self.count)?;
        st.serialize_field("nondegenerate_weights", &self.nondegenerate_weights)?;
        st.serialize_field("vacuum", &self.vacuum.iter().map(fmt_q).collect::<Vec<_>>())?;
        st.serialize_field("characters", &chars)?;
        st.end()
    }
}

impl MinimalModelRecord {
    /// One row per character: `type,p,q,level,c,index,character` with `;` between coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("type,p,q,level,c,index,character\n");
        for (i, w) in self.characters.iter().enumerate() {
            let ch: Vec<String> = w.iter().map(fmt_q).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.cartan_type,
                self.p,
                self.q,
                fmt_q(&self.level),
                fmt_q(&self.central_charge),
                i,
                ch.join(";")
            ));
        }
        out
    }
}

/// Enumerates `Pr^k_nondeg`, maps each weight to its central character and deduplicates.
pub fn enumerate_minimal_series(rs: &RootSystem, k: &Q) -> Result<MinimalModelRecord> {
    let nd = nondegeneracy(rs, k);
    if !nd.nondegenerate {
        return Err(Error::Precondition(format!(
            "k = {} rejected: {}",
            fmt_q(k),
            nd.reason.unwrap_or_default()
        )));
    }
    let weights = enumerate_pr_k_nondeg(rs, k)?;
    let fingerprints: BTreeSet<Weight> =
        weights.par_iter().map(|w| central_character(rs, &w.finite_part)).collect::<Vec<_>>().into_iter().collect();
    let vacuum = central_character(rs, &vacuum_weight(rs, k));
    if !fingerprints.contains(&vacuum) {
        return Err(Error::Inconsistent("vacuum character missing from the enumeration".into()));
    }
    let characters: Vec<Weight> = fingerprints.into_iter().collect();
    Ok(MinimalModelRecord {
        cartan_type: rs.cartan_type.to_string(),
        p: nd.p,
        q: nd.q,
        level: k.clone(),
        central_charge: central_charge(rs, nd.p, nd.q)?,
        count: characters.len(),
        characters,
        nondegenerate_weights: weights.len(),
        vacuum,
    })
}

/// `k = p/q − h^∨`.
pub fn level_from_pq(rs: &RootSystem, p: i64, qq: i64) -> Result<Q> {
    if qq < 1 || p.gcd(&qq) != 1 || p < 0 {
        return Err(Error::Precondition(format!("need coprime p >= 0, q >= 1, got ({p}, {qq})")));
    }
    Ok(Q::new(p.into(), qq.into()) - q(rs.dual_coxeter_hv))
}
