//! The classical complex `ℂ[g*] ⊗ ℂ[φ̄] ⊗ Λ(g_{>0}^*) ⊗ Λ(g_{>0})` with the odd
//! derivation `{d̄, ·}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::algebra::wedge;
use super::{
    filtered_dims, max_generator_k2, multisets, AdaptedBasis, CohomologyReport, ComplexKind, GradedComplex, Mono,
    Truncation, MAX_BASIS,
};
use crate::error::{Error, Result};
use crate::linalg::SparseMat;
use crate::nilp::{DynkinGrading, NilpotentDatum};
use crate::rational::{q, Q};
use crate::rootsys::ChevalleyBasis;

/// Images of the generators under the differential. The formulas coincide for the
/// classical and quantum complexes once written in normal order.
pub(crate) struct Images {
    pub x: Vec<Vec<(Mono, Q)>>,
    pub phi: Vec<Vec<(Mono, Q)>>,
    /// Indexed by Clifford bit: `ψ*_i` at `i`, `ψ_i` at `n_pos + i`.
    pub odd: Vec<Vec<(Mono, Q)>>,
}

pub(crate) fn generator_images(ab: &AdaptedBasis) -> Images {
    let (n, dp, nh) = (ab.dim(), ab.n_pos(), ab.n_half());
    let star = |i: usize| 1u64 << i;
    let psi = |i: usize| 1u64 << (dp + i);
    let x = (0..n)
        .map(|a| {
            let mut t = Vec::new();
            for i in 0..dp {
                for (k, c) in ab.bracket(i, a) {
                    t.push((Mono { u: vec![*k], w: vec![], c: star(i) }, c.clone()));
                }
            }
            t
        })
        .collect();
    let omega = |i: usize, j: usize| -> Q {
        ab.bracket(i, j).iter().map(|(k, c)| c * &ab.chi[*k as usize]).sum()
    };
    let phi = (0..nh)
        .map(|j| {
            (0..nh)
                .filter_map(|i| {
                    let w = omega(i, j);
                    (!w.is_zero()).then(|| (Mono { u: vec![], w: vec![], c: star(i) }, w))
                })
                .collect()
        })
        .collect();
    let mut odd = vec![Vec::new(); 2 * dp];
    for m in 0..dp {
        let mut t = Vec::new();
        for i in 0..dp {
            for j in i + 1..dp {
                for (k, c) in ab.bracket(i, j) {
                    if *k as usize == m {
                        t.push((Mono { u: vec![], w: vec![], c: star(i) | star(j) }, -c));
                    }
                }
            }
        }
        odd[m] = t;
        let mut t = vec![(Mono { u: vec![m as u16], w: vec![], c: 0 }, Q::one())];
        if m < nh {
            t.push((Mono { u: vec![], w: vec![m as u16], c: 0 }, Q::one()));
        } else if !ab.chi[m].is_zero() {
            t.push((Mono::default(), ab.chi[m].clone()));
        }
        for i in 0..dp {
            for (k, c) in ab.bracket(i, m) {
                t.push((Mono { u: vec![], w: vec![], c: star(i) | psi(*k as usize) }, c.clone()));
            }
        }
        odd[dp + m] = t;
    }
    Images { x, phi, odd }
}

pub(crate) fn merge(a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.sort_unstable();
    v
}

fn remove_one(a: &[u16], x: u16) -> Vec<u16> {
    let mut v = a.to_vec();
    let pos = v.iter().position(|&y| y == x).expect("factor present");
    v.remove(pos);
    v
}

fn distinct_with_multiplicity(a: &[u16]) -> Vec<(u16, i64)> {
    let mut out: Vec<(u16, i64)> = Vec::new();
    for &x in a {
        match out.last_mut() {
            Some(l) if l.0 == x => l.1 += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// `{d̄, m}` for a basis monomial, via the Leibniz rule.
pub(crate) fn apply_classical(img: &Images, m: &Mono) -> HashMap<Mono, Q> {
    let mut out: HashMap<Mono, Q> = HashMap::new();
    let mut push = |u: Vec<u16>, w: Vec<u16>, front: u64, back: u64, coeff: Q| {
        if let Some((c, neg)) = wedge(front, back) {
            let v = if neg { -coeff } else { coeff };
            *out.entry(Mono { u, w, c }).or_insert_with(Q::zero) += v;
        }
    };
    for (a, k) in distinct_with_multiplicity(&m.u) {
        let rest = remove_one(&m.u, a);
        for (t, c) in &img.x[a as usize] {
            push(merge(&rest, &t.u), merge(&m.w, &t.w), t.c, m.c, c * q(k));
        }
    }
    for (b, k) in distinct_with_multiplicity(&m.w) {
        let rest = remove_one(&m.w, b);
        for (t, c) in &img.phi[b as usize] {
            push(merge(&m.u, &t.u), merge(&rest, &t.w), t.c, m.c, c * q(k));
        }
    }
    let mut bits = m.c;
    let mut pos = 0;
    while bits != 0 {
        let b = bits.trailing_zeros();
        bits &= bits - 1;
        let rest = m.c & !(1u64 << b);
        let sign = if pos % 2 == 0 { Q::one() } else { -Q::one() };
        for (t, c) in &img.odd[b as usize] {
            push(merge(&m.u, &t.u), merge(&m.w, &t.w), t.c, rest, c * &sign);
        }
        pos += 1;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub(crate) struct Enumerated {
    pub basis: BTreeMap<i64, Vec<Mono>>,
    pub kazhdan: BTreeMap<i64, Vec<i64>>,
    pub weight: BTreeMap<i64, Vec<usize>>,
}

/// Monomials of doubled Kazhdan degree `≤ 2n` and weight `≤ d_max`, grouped by charge
/// `#ψ* − #ψ` and sorted by `(k2, monomial)`. `with_phi` adds the `φ` variables.
pub(crate) fn enumerate(ab: &AdaptedBasis, t: &Truncation, with_phi: bool) -> Result<Enumerated> {
    let (n, dp) = (ab.dim(), ab.n_pos());
    let nh = if with_phi { ab.n_half() } else { 0 };
    let mut even_w: Vec<i64> = (0..n).map(|a| ab.k2(a)).collect();
    even_w.extend(std::iter::repeat(1).take(nh));
    let evens = multisets(&even_w, t.d_max);
    let top = 2 * t.n as i64;
    let mut groups: BTreeMap<i64, Vec<(i64, Mono, usize)>> = BTreeMap::new();
    for mask in 0u64..(1u64 << (2 * dp)) {
        let (mut k2, mut psis, mut charge) = (0i64, 0usize, 0i64);
        for b in 0..2 * dp {
            if mask >> b & 1 == 1 {
                if b < dp {
                    k2 += ab.ev[b];
                    charge += 1;
                } else {
                    k2 += 2 - ab.ev[b - dp];
                    psis += 1;
                    charge -= 1;
                }
            }
        }
        if psis > t.d_max {
            continue;
        }
        for (word, kw) in &evens {
            let weight = word.len() + psis;
            if weight > t.d_max || k2 + kw > top {
                continue;
            }
            let split = word.iter().position(|&v| v as usize >= n).unwrap_or(word.len());
            let u = word[..split].to_vec();
            let w = word[split..].iter().map(|&v| v - n as u16).collect();
            groups.entry(charge).or_default().push((k2 + kw, Mono { u, w, c: mask }, weight));
        }
    }
    let mut e = Enumerated { basis: BTreeMap::new(), kazhdan: BTreeMap::new(), weight: BTreeMap::new() };
    for (p, mut v) in groups {
        if v.len() > MAX_BASIS {
            return Err(Error::Resource(format!(
                "truncation overflow: {} basis monomials in degree {p} (limit {MAX_BASIS})",
                v.len()
            )));
        }
        v.sort();
        e.kazhdan.insert(p, v.iter().map(|x| x.0).collect());
        e.weight.insert(p, v.iter().map(|x| x.2).collect());
        e.basis.insert(p, v.into_iter().map(|x| x.1).collect());
    }
    Ok(e)
}

/// Row-convention matrices of `apply` from each degree into the next.
pub(crate) fn assemble(
    e: &Enumerated,
    mut apply: impl FnMut(&Mono) -> HashMap<Mono, Q>,
    strict: bool,
) -> Result<BTreeMap<i64, SparseMat>> {
    let mut out = BTreeMap::new();
    for (&p, src) in &e.basis {
        let Some(dst) = e.basis.get(&(p + 1)) else { continue };
        let index: HashMap<&Mono, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = SparseMat::new(src.len(), dst.len());
        for (r, m) in src.iter().enumerate() {
            let mut row = Vec::new();
            for (t, c) in apply(m) {
                match index.get(&t) {
                    Some(&i) => row.push((i, c)),
                    None if strict => {
                        return Err(Error::Inconsistent(format!("differential leaves the truncation at {t:?}")))
                    }
                    None => {}
                }
            }
            row.sort_by_key(|x| x.0);
            mat.data[r] = row;
        }
        out.insert(p, mat);
    }
    Ok(out)
}

/// The classical complex for `M = ℂ[g*]`, truncated to Kazhdan degree `≤ t.n`.
pub fn classical_complex(
    cb: &ChevalleyBasis,
    dg: &DynkinGrading,
    nd: &NilpotentDatum,
    t: Truncation,
) -> Result<GradedComplex> {
    if t.n > 10 {
        return Err(Error::Resource(format!("Kazhdan truncation {} exceeds 10", t.n)));
    }
    let ab = AdaptedBasis::graded(cb, dg, nd)?;
    let img = generator_images(&ab);
    let e = enumerate(&ab, &t, true)?;
    let differential = assemble(&e, |m| apply_classical(&img, m), true)?;
    Ok(GradedComplex {
        kind: ComplexKind::Classical,
        truncation: t,
        basis: e.basis,
        kazhdan: e.kazhdan,
        weight: e.weight,
        differential,
        n_pos: ab.n_pos(),
        generator_k2: max_generator_k2(&ab),
    })
}

fn positions(c: &GradedComplex, p: i64, k2: i64) -> Vec<usize> {
    c.kazhdan.get(&p).map_or(vec![], |v| (0..v.len()).filter(|&i| v[i] == k2).collect())
}

/// Exact cohomology of each `(p, κ)` block. Classes are those of the weight `≤ d_cut`
/// subcomplex that survive in the weight `≤ d_max` one.
pub fn classical_cohomology(c: &GradedComplex) -> CohomologyReport {
    let mut jobs = Vec::new();
    for &p in c.basis.keys() {
        for k2 in c.kazhdan_degrees(p) {
            jobs.push((p, k2));
        }
    }
    let d_cut = c.truncation.d_cut;
    let dims: BTreeMap<(i64, i64), usize> = jobs
        .par_iter()
        .map(|&(p, k2)| {
            let here = positions(c, p, k2);
            let prev = c.differential.get(&(p - 1)).map(|d| d.restrict(&positions(c, p - 1, k2), &here));
            let cur = c.differential.get(&p).map(|d| d.restrict(&here, &positions(c, p + 1, k2)));
            let labels: Vec<i64> = here.iter().map(|&i| i64::from(c.weight[&p][i] > d_cut)).collect();
            ((p, k2), filtered_dims(prev.as_ref(), cur.as_ref(), &labels, &[0])[0])
        })
        .collect();
    CohomologyReport {
        complex: ComplexKind::Classical,
        truncation: c.truncation,
        dims,
        reliable_k2: reliable_k2(c),
    }
}

pub(crate) fn reliable_k2(c: &GradedComplex) -> i64 {
    2 * c.truncation.n as i64 - c.generator_k2
}

/// The differential split by which Clifford count changes: `minus` removes a `ψ`
/// (the Koszul part), `plus` adds a `ψ*`.
#[derive(Clone, Debug)]
pub struct BigradeSplit {
    pub minus: BTreeMap<i64, SparseMat>,
    pub plus: BTreeMap<i64, SparseMat>,
}

impl BigradeSplit {
    /// `(d₋² = 0, d₊² = 0, d₋d₊ + d₊d₋ = 0)` on every pair of consecutive degrees.
    pub fn identities(&self) -> (bool, bool, bool) {
        let mut ok = (true, true, true);
        for (p, m) in &self.minus {
            let (Some(m2), Some(pl), Some(pl2)) =
                (self.minus.get(&(p + 1)), self.plus.get(p), self.plus.get(&(p + 1)))
            else {
                continue;
            };
            ok.0 &= m.mul(m2).is_zero();
            ok.1 &= pl.mul(pl2).is_zero();
            ok.2 &= m.mul(pl2).add(&pl.mul(m2)).is_zero();
        }
        ok
    }

    pub fn holds(&self) -> bool {
        self.identities() == (true, true, true)
    }
}

/// Splits the classical differential into its two bidegree components.
pub fn bigrade_split(c: &GradedComplex) -> BigradeSplit {
    let low = (1u64 << c.n_pos) - 1;
    let stars = |m: &Mono| (m.c & low).count_ones();
    let mut minus = BTreeMap::new();
    let mut plus = BTreeMap::new();
    for (p, d) in &c.differential {
        let (src, dst) = (&c.basis[p], &c.basis[&(p + 1)]);
        let mut mi = SparseMat::new(d.rows, d.cols);
        let mut pl = SparseMat::new(d.rows, d.cols);
        for (r, row) in d.data.iter().enumerate() {
            for (col, v) in row {
                if stars(&dst[*col]) > stars(&src[r]) {
                    pl.data[r].push((*col, v.clone()));
                } else {
                    mi.data[r].push((*col, v.clone()));
                }
            }
        }
        minus.insert(*p, mi);
        plus.insert(*p, pl);
    }
    BigradeSplit { minus, plus }
}
