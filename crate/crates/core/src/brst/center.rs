//! Central elements of `U(g)`, their Harish-Chandra images and the Jacobian test.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::algebra::{Pbw, Terms};
use crate::error::{Error, Result};
use crate::poly::{det, Poly};
use crate::rational::{fmt_q, q, Q};
use crate::repr::highest_weight_module;
use crate::rootsys::ChevalleyBasis;
use crate::rootsys::Family;

/// Largest number of index tuples expanded when building a generator.
const MAX_TUPLES: usize = 200_000;

/// An element of `U(g)` in the PBW basis `n₋, h, n₊` of the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterElement {
    pub degree: usize,
    pub terms: Terms,
}

impl CenterElement {
    pub fn constant(c: Q) -> Self {
        let terms = if c.is_zero() { vec![] } else { vec![(vec![], c)] };
        CenterElement { degree: 0, terms }
    }

    /// Product in `U(g)`.
    pub fn mul(&self, other: &CenterElement, cb: &ChevalleyBasis) -> CenterElement {
        let u = chevalley_pbw(cb);
        let mut acc: HashMap<Vec<u16>, Q> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cbb) in &other.terms {
                for (w, c) in u.mul(a, b) {
                    *acc.entry(w).or_insert_with(Q::zero) += ca * cbb * c;
                }
            }
        }
        let mut terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort();
        CenterElement { degree: self.degree + other.degree, terms }
    }
}

pub(crate) fn chevalley_pbw(cb: &ChevalleyBasis) -> Pbw {
    Pbw::new(cb.dim(), |a, b| (cb.bracket_basis(a, b).iter().map(|(k, c)| (*k as u16, c.clone())).collect(), Q::zero()))
}

/// `[g, z] = 0` for all Chevalley generators `e_i, f_i`.
pub fn is_central(cb: &ChevalleyBasis, z: &CenterElement) -> bool {
    let u = chevalley_pbw(cb);
    let gens: Vec<usize> = (0..cb.rs.rank()).flat_map(|i| [cb.e(i), cb.f(i)]).collect();
    gens.into_iter().all(|g| {
        let mut acc: HashMap<Vec<u16>, Q> = HashMap::new();
        for (w, c) in &z.terms {
            for (s, c2) in u.ad(g as u16, w) {
                *acc.entry(s).or_insert_with(Q::zero) += c * c2;
            }
        }
        acc.values().all(Zero::is_zero)
    })
}

fn generator_degrees(cb: &ChevalleyBasis) -> Result<Vec<usize>> {
    let l = cb.rs.rank();
    match cb.rs.cartan_type.family {
        Family::A => Ok((2..=l + 1).collect()),
        Family::B | Family::C => Ok((1..=l).map(|i| 2 * i).collect()),
        Family::G => Ok(vec![2, 6]),
        _ => Err(Error::Unsupported(format!("center generators for type {}", cb.rs.cartan_type))),
    }
}

/// Symmetrised trace invariants `Σ tr(ρ(x^{a_1})⋯ρ(x^{a_k})) x_{a_1}⋯x_{a_k}` in the
/// module of highest weight `ϖ₁`, one per fundamental degree.
pub fn casimirs(cb: &ChevalleyBasis) -> Result<Vec<CenterElement>> {
    let degrees = generator_degrees(cb)?;
    let n = cb.dim();
    let mut lambda = vec![0; cb.rs.rank()];
    lambda[0] = 1;
    let rep = highest_weight_module(cb, &lambda)?;
    let dual: Vec<_> = cb.dual_basis().iter().map(|x| rep.act(x)).collect();
    let u = chevalley_pbw(cb);
    let mut out = Vec::new();
    for k in degrees {
        let tuples = n.checked_pow(k as u32).filter(|&t| t <= MAX_TUPLES);
        if tuples.is_none() {
            return Err(Error::Resource(format!("degree-{k} invariant needs {n}^{k} index tuples")));
        }
        let mut acc: HashMap<Vec<u16>, Q> = HashMap::new();
        let mut idx = vec![0usize; k];
        let perms = permutations(k);
        let scale = Q::new(1.into(), (perms.len() as i64).into());
        loop {
            let mut m = dual[idx[0]].clone();
            for &a in &idx[1..] {
                m = m.mul(&dual[a]);
            }
            let tr: Q = (0..rep.dim).map(|i| m[(i, i)].clone()).sum();
            if !tr.is_zero() {
                for p in &perms {
                    let mut cur: Terms = vec![(vec![], &tr * &scale)];
                    for &j in p {
                        let mut next: HashMap<Vec<u16>, Q> = HashMap::new();
                        for (w, c) in &cur {
                            for (s, c2) in u.mul_gen(w, idx[j] as u16).iter() {
                                *next.entry(s.clone()).or_insert_with(Q::zero) += c * c2;
                            }
                        }
                        cur = next.into_iter().collect();
                    }
                    for (w, c) in cur {
                        *acc.entry(w).or_insert_with(Q::zero) += c;
                    }
                }
            }
            let mut pos = 0;
            while pos < k && idx[pos] + 1 == n {
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
            idx[pos] += 1;
        }
        let mut terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort();
        out.push(CenterElement { degree: k, terms });
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out
}

/// `μ(z)` as a polynomial in `t_i = ⟨λ+ρ, α_i^∨⟩`, so that `z v_λ = μ(z)(λ+ρ) v_λ`.
pub fn harish_chandra_image(cb: &ChevalleyBasis, z: &CenterElement) -> Result<Poly> {
    if !is_central(cb, z) {
        return Err(Error::Precondition("element is not central".into()));
    }
    let l = cb.rs.rank();
    let h_index: HashMap<usize, u16> = (0..l).map(|i| (cb.h(i), i as u16)).collect();
    let mut out = Poly::zero();
    for (w, c) in &z.terms {
        let Some(vars) = w.iter().map(|a| h_index.get(&(*a as usize)).copied()).collect::<Option<Vec<u16>>>() else {
            continue;
        };
        let mut t = Poly::constant(c.clone());
        for v in vars {
            t = &t * &(&Poly::var(v) - &Poly::one());
        }
        out = &out + &t;
    }
    if !is_weyl_invariant(cb, &out) {
        return Err(Error::Inconsistent("Harish-Chandra image is not W-invariant".into()));
    }
    Ok(out)
}

/// Invariance under the simple reflections `t_k ↦ t_k − a_{kj} t_j`.
pub fn is_weyl_invariant(cb: &ChevalleyBasis, p: &Poly) -> bool {
    let a = &cb.rs.cartan_matrix;
    let l = cb.rs.rank();
    (0..l).all(|j| {
        let s = p.substitute(&|k| {
            let k = k as usize;
            &Poly::var(k as u16) - &Poly::var(j as u16).scale(&q(a[k][j]))
        });
        s == *p
    })
}

/// `∏_{α>0} α^∨` as a polynomial in the `t_i`.
pub fn coroot_product(cb: &ChevalleyBasis) -> Poly {
    cb.rs.positive_roots.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear(&cb.rs.coroot_coordinates(r)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianVerdict {
    pub determinant: Poly,
    /// `det = C · ∏ α^∨` with this `C ≠ 0`, if it holds.
    pub constant: Option<Q>,
}

impl JacobianVerdict {
    pub fn holds(&self) -> bool {
        self.constant.is_some()
    }
}

impl Serialize for JacobianVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("JacobianVerdict", 4)?;
        st.serialize_field("schema_version", &1)?;
        st.serialize_field("determinant", &self.determinant.render(&|i| format!("t{}", i + 1)))?;
        st.serialize_field("proportional", &self.holds())?;
        st.serialize_field("constant", &self.constant.as_ref().map(fmt_q))?;
        st.end()
    }
}

/// `det(∂μ(p_i)/∂t_j)` compared with `∏_{α>0} α^∨`.
pub fn jacobian_check(cb: &ChevalleyBasis, generators: &[CenterElement]) -> Result<JacobianVerdict> {
    let l = cb.rs.rank();
    if generators.len() != l {
        return Err(Error::Precondition(format!("need {l} generators, got {}", generators.len())));
    }
    let images = generators.iter().map(|z| harish_chandra_image(cb, z)).collect::<Result<Vec<_>>>()?;
    let m: Vec<Vec<Poly>> = images.iter().map(|p| (0..l).map(|j| p.derivative(j as u16)).collect()).collect();
    let d = det(&m);
    let constant = if d.is_zero() { None } else { d.ratio_to(&coroot_product(cb)) };
    Ok(JacobianVerdict { determinant: d, constant })
}
