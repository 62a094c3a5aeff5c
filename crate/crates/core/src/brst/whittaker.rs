//! Lie algebra cohomology of `m = l ⊕ g_{≥1}` with coefficients in
//! `Y = U(g) ⊗_{U(m)} ℂ_χ`, twisted by `−χ`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::algebra::wedge;
use super::classical::{assemble, reliable_k2, Enumerated};
use super::quantum::{enveloping, filtered_cohomology};
use super::{multisets, AdaptedBasis, CohomologyReport, ComplexKind, GradedComplex, Mono, Truncation, MAX_BASIS};
use crate::error::{Error, Result};
use crate::nilp::{is_character, DynkinGrading, NilpotentDatum};
use crate::rational::{span_rank, Q};
use crate::rootsys::{ChevalleyBasis, LieVec};

fn degree_of(cb: &ChevalleyBasis, nd: &NilpotentDatum, v: &LieVec) -> Option<i64> {
    let hv = cb.bracket(&nd.h, v);
    let k = v.iter().position(|x| !x.is_zero())?;
    let ev = &hv[k] / &v[k];
    let evi = crate::rational::to_i64(&ev)?;
    let scaled: Vec<Q> = v.iter().map(|x| x * &ev).collect();
    (scaled == hv).then_some(evi)
}

/// Complement of `m` first, then `m` in the given order.
fn whittaker_basis(
    cb: &ChevalleyBasis,
    dg: &DynkinGrading,
    nd: &NilpotentDatum,
    m: &[LieVec],
) -> Result<(AdaptedBasis, usize)> {
    let mut m_ev = Vec::new();
    for v in m {
        match degree_of(cb, nd, v) {
            Some(e) if e > 0 => m_ev.push(e),
            _ => return Err(Error::Precondition("m must be spanned by homogeneous vectors of positive degree".into())),
        }
    }
    if span_rank(m) != m.len() {
        return Err(Error::Precondition("spanning vectors of m are dependent".into()));
    }
    if !is_character(cb, nd, m) {
        return Err(Error::Precondition("χ is not a character of m (m is not χ-isotropic)".into()));
    }
    let mut vecs: Vec<LieVec> = Vec::new();
    let mut evs = Vec::new();
    for (&k, piece) in dg.pieces.iter().rev() {
        for v in piece {
            let mut t: Vec<LieVec> = m.to_vec();
            t.extend(vecs.iter().cloned());
            t.push(v.clone());
            if span_rank(&t) == t.len() {
                vecs.push(v.clone());
                evs.push(k);
            }
        }
    }
    let n_c = vecs.len();
    if n_c + m.len() != cb.dim() {
        return Err(Error::Precondition("m must contain g_{≥1}".into()));
    }
    vecs.extend(m.iter().cloned());
    evs.extend(m_ev);
    Ok((AdaptedBasis::new(cb, nd, vecs, evs)?, n_c))
}

/// The Chevalley complex `Y ⊗ Λ(m*)` truncated to Kazhdan degree `≤ t.n`.
pub fn whittaker_complex(
    cb: &ChevalleyBasis,
    dg: &DynkinGrading,
    nd: &NilpotentDatum,
    m: &[LieVec],
    t: Truncation,
) -> Result<GradedComplex> {
    let (ab, n_c) = whittaker_basis(cb, dg, nd, m)?;
    let dm = ab.dim() - n_c;
    let u = enveloping(&ab);
    let top = 2 * t.n as i64;
    let weights: Vec<i64> = (0..n_c).map(|a| ab.k2(a)).collect();
    let min_w = weights.iter().copied().min().unwrap_or(1).max(1);
    let words = multisets(&weights, (top / min_w) as usize);
    let mut groups: BTreeMap<i64, Vec<(i64, Mono, usize)>> = BTreeMap::new();
    for mask in 0u64..(1u64 << dm) {
        let k2m: i64 = (0..dm).filter(|b| mask >> b & 1 == 1).map(|b| ab.ev[n_c + b]).sum();
        for (word, kw) in &words {
            if kw + k2m <= top {
                let mono = Mono { u: word.clone(), w: vec![], c: mask };
                groups.entry(i64::from(mask.count_ones())).or_default().push((kw + k2m, mono, word.len()));
            }
        }
    }
    let mut e = Enumerated { basis: BTreeMap::new(), kazhdan: BTreeMap::new(), weight: BTreeMap::new() };
    for (p, mut v) in groups {
        if v.len() > MAX_BASIS {
            return Err(Error::Resource(format!("truncation overflow: {} basis monomials in degree {p}", v.len())));
        }
        v.sort();
        e.kazhdan.insert(p, v.iter().map(|x| x.0).collect());
        e.weight.insert(p, v.iter().map(|x| x.2).collect());
        e.basis.insert(p, v.into_iter().map(|x| x.1).collect());
    }
    // d_CE on the dual basis of m
    let ce: Vec<Vec<(u64, Q)>> = (0..dm)
        .map(|c| {
            let mut out = Vec::new();
            for a in 0..dm {
                for b in a + 1..dm {
                    for (k, v) in ab.bracket(n_c + a, n_c + b) {
                        if *k as usize == n_c + c {
                            out.push(((1u64 << a) | (1u64 << b), -v));
                        }
                    }
                }
            }
            out
        })
        .collect();
    let apply = |mono: &Mono| -> HashMap<Mono, Q> {
        let mut out: HashMap<Mono, Q> = HashMap::new();
        let mut push = |y: Vec<u16>, front: u64, back: u64, v: Q| {
            if let Some((c, neg)) = wedge(front, back) {
                let v = if neg { -v } else { v };
                *out.entry(Mono { u: y, w: vec![], c }).or_insert_with(Q::zero) += v;
            }
        };
        for a in 0..dm {
            if mono.c >> a & 1 == 1 {
                continue;
            }
            for (s, c) in u.ad((n_c + a) as u16, &mono.u) {
                let split = s.iter().position(|&g| g as usize >= n_c).unwrap_or(s.len());
                let mut coeff = c;
                for &g in &s[split..] {
                    coeff *= &ab.chi[g as usize];
                }
                if !coeff.is_zero() {
                    push(s[..split].to_vec(), 1 << a, mono.c, coeff);
                }
            }
        }
        let mut bits = mono.c;
        let mut pos = 0;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = mono.c & !(1u64 << b);
            let sign = if pos % 2 == 0 { Q::one() } else { -Q::one() };
            pos += 1;
            for (f, v) in &ce[b] {
                push(mono.u.clone(), *f, rest, v * &sign);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    let differential = assemble(&e, apply, true)?;
    Ok(GradedComplex {
        kind: ComplexKind::Whittaker,
        truncation: t,
        basis: e.basis,
        kazhdan: e.kazhdan,
        weight: e.weight,
        differential,
        n_pos: dm,
        generator_k2: weights.into_iter().max().unwrap_or(0),
    })
}

/// Graded dimensions of the Kazhdan filtration on `H^•(m, Y ⊗ ℂ_{−χ})`.
pub fn whittaker_reduction(
    cb: &ChevalleyBasis,
    dg: &DynkinGrading,
    nd: &NilpotentDatum,
    m: &[LieVec],
    t: Truncation,
) -> Result<CohomologyReport> {
    let c = whittaker_complex(cb, dg, nd, m, t)?;
    Ok(CohomologyReport {
        complex: ComplexKind::Whittaker,
        truncation: t,
        dims: filtered_cohomology(&c, false),
        reliable_k2: reliable_k2(&c),
    })
}
