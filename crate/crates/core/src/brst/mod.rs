//! Classical, quantum and Whittaker reduction complexes with exact cohomology.

pub mod algebra;
pub mod center;
pub mod classical;
pub mod quantum;
pub mod whittaker;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{prefix_ranks, SparseMat};
use crate::nilp::{DynkinGrading, NilpotentDatum};
use crate::rational::{fmt_q, Mat, Q};
use crate::rootsys::{ChevalleyBasis, LieVec};

pub use classical::{bigrade_split, classical_cohomology, classical_complex, BigradeSplit};
pub use center::{casimirs, harish_chandra_image, jacobian_check, CenterElement, JacobianVerdict};
pub use quantum::{quantum_cohomology, quantum_complex};
pub use whittaker::{whittaker_complex, whittaker_reduction};


/// Refuse complexes with more basis monomials than this in one cohomological degree.
pub const MAX_BASIS: usize = 400_000;

/// Basis of `g` by homogeneous vectors with structure constants and `χ` values.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub vecs: Vec<LieVec>,
    /// `ad h` eigenvalue of each vector.
    pub ev: Vec<i64>,
    pub chi: Vec<Q>,
    brackets: Vec<Vec<Vec<(u16, Q)>>>,
}

impl AdaptedBasis {
    pub fn new(cb: &ChevalleyBasis, nd: &NilpotentDatum, vecs: Vec<LieVec>, ev: Vec<i64>) -> Result<Self> {
        let n = cb.dim();
        if vecs.len() != n {
            return Err(Error::Inconsistent("adapted basis has wrong size".into()));
        }
        let mut m = Mat::zeros(n, n);
        for (j, v) in vecs.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = v[i].clone();
            }
        }
        let inv = m.inverse().ok_or_else(|| Error::Inconsistent("adapted vectors are dependent".into()))?;
        let mut brackets = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let coords = inv.mul_vec(&cb.bracket(&vecs[a], &vecs[b]));
                brackets[a][b] =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u16, c)).collect();
            }
        }
        let chi = vecs.iter().map(|v| nd.chi_of(v)).collect();
        Ok(AdaptedBasis { vecs, ev, chi, brackets })
    }

    /// `g_{>0}` (with `g_{1/2}` first, degrees ascending), then `g_0`, then `g_{<0}`.
    pub fn graded(cb: &ChevalleyBasis, dg: &DynkinGrading, nd: &NilpotentDatum) -> Result<Self> {
        let mut vecs = Vec::new();
        let mut ev = Vec::new();
        let order = dg.pieces.keys().filter(|&&k| k > 0).chain(dg.pieces.keys().filter(|&&k| k <= 0).rev());
        for &k in order {
            for v in dg.piece(k) {
                vecs.push(v.clone());
                ev.push(k);
            }
        }
        AdaptedBasis::new(cb, nd, vecs, ev)
    }

    pub fn dim(&self) -> usize {
        self.vecs.len()
    }

    /// Number of leading vectors with positive degree.
    pub fn n_pos(&self) -> usize {
        self.ev.iter().take_while(|&&e| e > 0).count()
    }

    /// Number of leading vectors in `g_{1/2}`.
    pub fn n_half(&self) -> usize {
        self.ev.iter().take_while(|&&e| e == 1).count()
    }

    /// `[x_a, x_b]` in this basis.
    pub fn bracket(&self, a: usize, b: usize) -> &[(u16, Q)] {
        &self.brackets[a][b]
    }

    /// Doubled Kazhdan degree `2 - ev` of a basis vector.
    pub fn k2(&self, a: usize) -> i64 {
        2 - self.ev[a]
    }
}

/// Which reduction a complex or report describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexKind {
    Classical,
    Quantum,
    Whittaker,
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Classical => "classical",
            ComplexKind::Quantum => "quantum",
            ComplexKind::Whittaker => "whittaker",
        })
    }
}

/// Normal-ordered monomial `u ⊗ w ⊗ c`: a word in `g`, a word in the `φ`'s,
/// and a Clifford (or exterior) monomial as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub u: Vec<u16>,
    pub w: Vec<u16>,
    pub c: u64,
}

/// Truncation parameters: Kazhdan bound `n` and the polynomial-plus-`ψ` degree bounds.
/// Classes are read off from the subcomplex of degree `≤ d_cut` mapped into the one of degree `≤ d_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub n: usize,
    pub d_max: usize,
    pub d_cut: usize,
}

impl Truncation {
    /// Degree bounds from the smallest positive doubled Kazhdan degree of a generator:
    /// `2` for even gradings, `1` once `g_{1/2}` or the `φ`'s are present.
    pub fn new(n: usize, dg: &DynkinGrading) -> Self {
        let d = if dg.is_even() { n } else { 2 * n };
        Truncation { n, d_max: d, d_cut: d }
    }
}

/// A cochain complex with a monomial basis in each cohomological degree, labelled by
/// doubled Kazhdan degree. The differential never raises the Kazhdan degree; for the
/// classical complex it preserves it.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub kind: ComplexKind,
    pub truncation: Truncation,
    pub basis: BTreeMap<i64, Vec<Mono>>,
    pub kazhdan: BTreeMap<i64, Vec<i64>>,
    /// Polynomial degree plus number of `ψ` factors.
    pub weight: BTreeMap<i64, Vec<usize>>,
    /// Degree `p` to `p + 1`; row `r` is the image of basis element `r`.
    pub differential: BTreeMap<i64, SparseMat>,
    /// Number of `ψ*` bits (`dim g_{>0}`) in the Clifford masks.
    pub n_pos: usize,
    /// Largest doubled Kazhdan degree of a polynomial generator.
    pub generator_k2: i64,
}

impl GradedComplex {
    pub fn degrees(&self) -> Vec<i64> {
        self.basis.keys().copied().collect()
    }

    pub fn dim(&self, p: i64) -> usize {
        self.basis.get(&p).map_or(0, Vec::len)
    }

    /// Kazhdan-degree-preserving part of the differential between the
    /// `(p, k2)` and `(p + 1, k2)` pieces.
    pub fn block(&self, p: i64, k2: i64) -> SparseMat {
        let pick = |deg: i64| -> Vec<usize> {
            self.kazhdan.get(&deg).map_or(vec![], |v| (0..v.len()).filter(|&i| v[i] == k2).collect())
        };
        let (rows, cols) = (pick(p), pick(p + 1));
        match self.differential.get(&p) {
            Some(d) => d.restrict(&rows, &cols),
            None => SparseMat::new(rows.len(), cols.len()),
        }
    }

    /// Doubled Kazhdan degrees present in degree `p`.
    pub fn kazhdan_degrees(&self, p: i64) -> Vec<i64> {
        let mut v: Vec<i64> = self.kazhdan.get(&p).cloned().unwrap_or_default();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `d ∘ d = 0` on every pair of consecutive degrees.
    pub fn square_is_zero(&self) -> bool {
        self.differential.par_iter().all(|(p, d)| match self.differential.get(&(p + 1)) {
            Some(next) => d.mul(next).is_zero(),
            None => true,
        })
    }
}

/// For the subcomplexes `S_t = {labels ≤ t}` of a complex with consecutive
/// differentials `prev: C^{p-1} → C^p` and `cur: C^p → C^{p+1}` (row convention),
/// the dimension of the image of `H^p(S_t)` in `H^p` of the whole complex, for each cut.
pub(crate) fn filtered_dims(prev: Option<&SparseMat>, cur: Option<&SparseMat>, labels: &[i64], cuts: &[i64]) -> Vec<usize> {
    let n = labels.len();
    // within a label, short rows first to limit fill-in
    let len = |i: usize| cur.map_or(0, |d| d.data[i].len());
    let mut asc: Vec<usize> = (0..n).collect();
    asc.sort_by_key(|&i| (labels[i], len(i), i));
    let tlen = prev.map(|d| {
        let mut v = vec![0usize; n];
        for row in &d.data {
            for (c, _) in row {
                v[*c] += 1;
            }
        }
        v
    });
    let mut desc: Vec<usize> = (0..n).collect();
    desc.sort_by_key(|&i| (std::cmp::Reverse(labels[i]), tlen.as_ref().map_or(0, |v| v[i]), i));
    let inside: Vec<usize> = cuts.iter().map(|&t| labels.iter().filter(|&&l| l <= t).count()).collect();
    let (z, b) = rayon::join(
        || match cur {
            Some(d) => {
                let rows: Vec<Vec<(usize, Q)>> = asc.iter().map(|&i| d.data[i].clone()).collect();
                let r = prefix_ranks(d.cols, &rows, &inside);
                inside.iter().zip(r).map(|(s, r)| s - r).collect::<Vec<_>>()
            }
            None => inside.clone(),
        },
        || match prev {
            Some(d) => {
                let t = d.transpose();
                let rows: Vec<Vec<(usize, Q)>> = desc.iter().map(|&i| t.data[i].clone()).collect();
                let mut outside: Vec<usize> = inside.iter().map(|s| n - s).collect();
                outside.push(n);
                let mut order: Vec<usize> = (0..outside.len()).collect();
                order.sort_by_key(|&i| outside[i]);
                let sorted: Vec<usize> = order.iter().map(|&i| outside[i]).collect();
                let r = prefix_ranks(t.cols, &rows, &sorted);
                let mut by_cut = vec![0; outside.len()];
                for (k, &i) in order.iter().enumerate() {
                    by_cut[i] = r[k];
                }
                let total = by_cut[outside.len() - 1];
                by_cut[..cuts.len()].iter().map(|r| total - r).collect::<Vec<_>>()
            }
            None => vec![0; cuts.len()],
        },
    );
    z.into_iter().zip(b).map(|(z, b)| z - b).collect()
}

/// Graded dimensions of a reduction, `dims[(p, k2)]` with `k2` the doubled Kazhdan degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub complex: ComplexKind,
    pub truncation: Truncation,
    pub dims: BTreeMap<(i64, i64), usize>,
    /// Largest doubled Kazhdan degree where the numbers are certified.
    pub reliable_k2: i64,
}

impl CohomologyReport {
    pub fn dim(&self, p: i64, k2: i64) -> usize {
        self.dims.get(&(p, k2)).copied().unwrap_or(0)
    }

    /// Step of the Hilbert series: 1 for even gradings, 1/2 otherwise.
    pub fn half_steps(&self) -> bool {
        self.dims.iter().any(|(&(p, k2), &d)| p == 0 && d > 0 && k2 % 2 != 0)
    }

    /// `H⁰` dimensions for Kazhdan degree `0, s, 2s, …, N` with `s` from [`Self::half_steps`].
    pub fn h0_series(&self) -> Vec<usize> {
        let top = 2 * self.truncation.n as i64;
        let step = if self.half_steps() { 1 } else { 2 };
        (0..=top).step_by(step).map(|k2| self.dim(0, k2)).collect()
    }

    /// `H^p = 0` for `p ≠ 0` at every Kazhdan degree up to the reliable bound.
    pub fn vanishing_holds(&self) -> bool {
        self.dims.iter().all(|(&(p, k2), &d)| p == 0 || k2 > self.reliable_k2 || d == 0)
    }

    /// `H⁰` dimensions keyed by doubled Kazhdan degree.
    pub fn h0_by_degree(&self) -> BTreeMap<i64, usize> {
        self.dims.iter().filter(|((p, _), _)| *p == 0).map(|(&(_, k), &d)| (k, d)).collect()
    }
}

impl Serialize for CohomologyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dims: Vec<(i64, String, usize)> =
            self.dims.iter().map(|(&(p, k2), &d)| (p, fmt_q(&Q::new(k2.into(), 2.into())), d)).collect();
        let step = if self.half_steps() { "1/2" } else { "1/1" };
        let mut st = s.serialize_struct("CohomologyReport", 9)?;
        st.serialize_field("schema_version", &1)?;
        st.serialize_field("complex", &self.complex.to_string())?;
        st.serialize_field("truncation", &self.truncation.n)?;
        st.serialize_field("degree_bound", &self.truncation.d_max)?;
        st.serialize_field("dims", &dims)?;
        st.serialize_field("h0_series", &self.h0_series())?;
        st.serialize_field("series_step", step)?;
        st.serialize_field("vanishing_window", &fmt_q(&Q::new(self.reliable_k2.into(), 2.into())))?;
        st.serialize_field("vanishing_holds", &self.vanishing_holds())?;
        st.end()
    }
}

/// Doubled Kazhdan degree of the generator of `ℂ[g*]` of highest degree.
pub(crate) fn max_generator_k2(ab: &AdaptedBasis) -> i64 {
    (0..ab.dim()).map(|a| ab.k2(a)).max().unwrap_or(0)
}

/// Multisets over `weights.len()` variables of size at most `max_len`, with their weight sums.
pub(crate) fn multisets(weights: &[i64], max_len: usize) -> Vec<(Vec<u16>, i64)> {
    fn rec(weights: &[i64], start: usize, max_len: usize, cur: &mut Vec<u16>, sum: i64, out: &mut Vec<(Vec<u16>, i64)>) {
        out.push((cur.clone(), sum));
        if cur.len() == max_len {
            return;
        }
        for v in start..weights.len() {
            cur.push(v as u16);
            rec(weights, v, max_len, cur, sum + weights[v], out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, max_len, &mut Vec::new(), 0, &mut out);
    out
}
