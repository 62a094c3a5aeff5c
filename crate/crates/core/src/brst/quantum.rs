//! The quantum complex `U(g) ⊗ D ⊗ Cl` with `ad d`, filtered by Kazhdan degree.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::algebra::{Clifford, Pbw};
use super::classical::{assemble, enumerate, generator_images, reliable_k2, Images};
use super::{filtered_dims, max_generator_k2, AdaptedBasis, CohomologyReport, ComplexKind, GradedComplex, Mono, Truncation};
use crate::error::{Error, Result};
use crate::nilp::{DynkinGrading, NilpotentDatum};
use crate::rational::{q, Q};
use crate::rootsys::ChevalleyBasis;

/// `U(g)` in the PBW basis of an adapted basis.
pub(crate) fn enveloping(ab: &AdaptedBasis) -> Pbw {
    Pbw::new(ab.dim(), |a, b| (ab.bracket(a, b).to_vec(), Q::zero()))
}

/// The Weyl algebra on `g_{1/2}` with `[φ_a, φ_b] = χ([x_a, x_b])`.
pub(crate) fn weyl(ab: &AdaptedBasis) -> Pbw {
    Pbw::new(ab.n_half(), |a, b| {
        let c: Q = ab.bracket(a, b).iter().map(|(k, c)| c * &ab.chi[*k as usize]).sum();
        (vec![], c)
    })
}

struct Quantum<'a> {
    ab: &'a AdaptedBasis,
    img: Images,
    u: Pbw,
    w: Pbw,
    cl: Clifford,
}

impl Quantum<'_> {
    fn apply(&self, m: &Mono) -> HashMap<Mono, Q> {
        let (dp, nh) = (self.ab.n_pos(), self.ab.n_half());
        let mut out: HashMap<Mono, Q> = HashMap::new();
        let mut push = |u: &[u16], w: &[u16], c: u64, v: Q| {
            if !v.is_zero() {
                *out.entry(Mono { u: u.to_vec(), w: w.to_vec(), c }).or_insert_with(Q::zero) += v;
            }
        };
        for i in 0..dp {
            let cls = self.cl.mul(1 << i, m.c);
            if cls.is_empty() {
                continue;
            }
            for (s, c) in self.u.ad(i as u16, &m.u) {
                for (cl, sg) in &cls {
                    push(&s, &m.w, *cl, &c * q(*sg));
                }
            }
        }
        for k in 0..m.w.len() {
            let mut rest = m.w.clone();
            rest.remove(k);
            for i in 0..nh {
                let om = self.w.bracket_constant(i as u16, m.w[k]);
                if om.is_zero() {
                    continue;
                }
                for (cl, sg) in self.cl.mul(1 << i, m.c) {
                    push(&m.u, &rest, cl, om * q(sg));
                }
            }
        }
        let mut bits = m.c;
        let mut pos = 0;
        while bits != 0 {
            let b = bits.trailing_zeros();
            bits &= bits - 1;
            let left = m.c & ((1u64 << b) - 1);
            let right = m.c & !((1u64 << (b + 1)) - 1);
            let sign = if pos % 2 == 0 { Q::one() } else { -Q::one() };
            pos += 1;
            for (t, coeff) in &self.img.odd[b as usize] {
                let coeff = coeff * &sign;
                let us = match t.u.first() {
                    Some(&g) => (*self.u.mul_gen(&m.u, g)).clone(),
                    None => vec![(m.u.clone(), Q::one())],
                };
                let ws = match t.w.first() {
                    Some(&g) => (*self.w.mul_gen(&m.w, g)).clone(),
                    None => vec![(m.w.clone(), Q::one())],
                };
                let mut cls: Vec<(u64, i64)> = Vec::new();
                for (a, s1) in self.cl.mul(left, t.c) {
                    for (bb, s2) in self.cl.mul(a, right) {
                        cls.push((bb, s1 * s2));
                    }
                }
                for (uu, cu) in &us {
                    for (ww, cw) in &ws {
                        let base = &coeff * cu * cw;
                        for (cc, s) in &cls {
                            push(uu, ww, *cc, &base * q(*s));
                        }
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// The quantum complex for `M = U(g)` on PBW monomials of Kazhdan degree `≤ t.n`.
pub fn quantum_complex(
    cb: &ChevalleyBasis,
    dg: &DynkinGrading,
    nd: &NilpotentDatum,
    t: Truncation,
) -> Result<GradedComplex> {
    if t.n > 8 {
        return Err(Error::Resource(format!("Kazhdan truncation {} exceeds 8", t.n)));
    }
    let ab = AdaptedBasis::graded(cb, dg, nd)?;
    let qa = Quantum {
        ab: &ab,
        img: generator_images(&ab),
        u: enveloping(&ab),
        w: weyl(&ab),
        cl: Clifford { n: ab.n_pos() as u32 },
    };
    let e = enumerate(&ab, &t, true)?;
    let differential = assemble(&e, |m| qa.apply(m), true)?;
    Ok(GradedComplex {
        kind: ComplexKind::Quantum,
        truncation: t,
        basis: e.basis,
        kazhdan: e.kazhdan,
        weight: e.weight,
        differential,
        n_pos: ab.n_pos(),
        generator_k2: max_generator_k2(&ab),
    })
}

/// Associated graded dimensions of the Kazhdan filtration on the cohomology of a
/// filtered complex, reading classes from the weight `≤ d_cut` part.
pub(crate) fn filtered_cohomology(c: &GradedComplex, use_weight: bool) -> BTreeMap<(i64, i64), usize> {
    let top = 2 * c.truncation.n as i64;
    let bottom = c.kazhdan.values().flatten().copied().min().unwrap_or(0).min(0);
    let cuts: Vec<i64> = (bottom - 1..=top).collect();
    let d_cut = c.truncation.d_cut;
    c.basis
        .keys()
        .copied()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&p| {
            let labels: Vec<i64> = c.kazhdan[&p]
                .iter()
                .zip(&c.weight[&p])
                .map(|(&k, &w)| if use_weight && w > d_cut { i64::MAX } else { k })
                .collect();
            let k = filtered_dims(c.differential.get(&(p - 1)), c.differential.get(&p), &labels, &cuts);
            (1..cuts.len()).map(|i| ((p, cuts[i]), k[i] - k[i - 1])).collect::<Vec<_>>()
        })
        .collect()
}

/// Graded dimensions of `gr_K H` for the quantum complex.
pub fn quantum_cohomology(c: &GradedComplex) -> CohomologyReport {
    CohomologyReport {
        complex: ComplexKind::Quantum,
        truncation: c.truncation,
        dims: filtered_cohomology(c, true),
        reliable_k2: reliable_k2(c),
    }
}
