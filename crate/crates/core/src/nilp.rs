//! sl₂-triples, Dynkin gradings, the form on `g_{1/2}`, Lagrangians,
//! the Kirillov–Kostant bracket and associated-variety membership.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{parse_q, q, span_rank, Mat, Q};
use crate::repr::{natural_type_a, short_root_module};
use crate::rootsys::{ChevalleyBasis, Family, LieVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotentLabel {
    Principal,
    Minimal,
    /// Jordan type in `sl_n`.
    Partition(Vec<usize>),
}

impl fmt::Display for NilpotentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotentLabel::Principal => write!(f, "principal"),
            NilpotentLabel::Minimal => write!(f, "minimal"),
            NilpotentLabel::Partition(p) => {
                let parts: Vec<String> = p.iter().map(usize::to_string).collect();
                write!(f, "p={}", parts.join(","))
            }
        }
    }
}

impl FromStr for NilpotentLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "principal" => Ok(NilpotentLabel::Principal),
            "minimal" => Ok(NilpotentLabel::Minimal),
            other => {
                let body = other
                    .strip_prefix("p=")
                    .ok_or_else(|| Error::Parse(format!("unknown nilpotent label {other:?}")))?;
                let parts: std::result::Result<Vec<usize>, _> = body.split(',').map(|x| x.trim().parse()).collect();
                let parts = parts.map_err(|_| Error::Parse(format!("bad partition {body:?}")))?;
                if parts.is_empty() || parts.contains(&0) {
                    return Err(Error::Parse(format!("bad partition {body:?}")));
                }
                Ok(NilpotentLabel::Partition(parts))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct NilpotentDatum {
    pub label: NilpotentLabel,
    pub e: LieVec,
    pub h: LieVec,
    pub f: LieVec,
    /// `χ(x_a) = (f|x_a)` on the Chevalley basis.
    pub chi: Vec<Q>,
}

impl NilpotentDatum {
    fn new(cb: &ChevalleyBasis, label: NilpotentLabel, e: LieVec, h: LieVec, f: LieVec) -> Result<Self> {
        let chi = cb.form.mul_vec(&f);
        let nd = NilpotentDatum { label, e, h, f, chi };
        nd.verify(cb)?;
        Ok(nd)
    }

    pub fn chi_of(&self, x: &[Q]) -> Q {
        x.iter().zip(&self.chi).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    /// Triple relations and nilpotency of `ad f`.
    pub fn verify(&self, cb: &ChevalleyBasis) -> Result<()> {
        let two = |v: &LieVec, s: i64| -> LieVec { v.iter().map(|x| x * q(s)).collect() };
        let ok = cb.bracket(&self.h, &self.e) == two(&self.e, 2)
            && cb.bracket(&self.e, &self.f) == self.h
            && cb.bracket(&self.h, &self.f) == two(&self.f, -2)
            && cb.ad(&self.f).nilpotency_order().is_some();
        if ok {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!("{} is not an sl2-triple", self.label)))
        }
    }
}

/// The unique `f` in the `-2` eigenspace of `ad h` with `[e, f] = h`.
fn solve_f(cb: &ChevalleyBasis, e: &[Q], h: &[Q]) -> Result<LieVec> {
    let n = cb.dim();
    let adh = cb.ad(h);
    let shifted = adh.sub(&Mat::identity(n).mul(&scalar(n, -2)));
    let space = shifted.kernel();
    if space.is_empty() {
        return Err(Error::Inconsistent("ad h has no -2 eigenspace".into()));
    }
    let ade = cb.ad(e);
    let mut m = Mat::zeros(n, space.len());
    for (j, v) in space.iter().enumerate() {
        let img = ade.mul_vec(v);
        for i in 0..n {
            m[(i, j)] = img[i].clone();
        }
    }
    let c = m.solve(h).ok_or_else(|| Error::Inconsistent("no f with [e,f] = h".into()))?;
    let mut f = cb.zero();
    for (cj, v) in c.iter().zip(&space) {
        for i in 0..n {
            f[i] += cj * &v[i];
        }
    }
    Ok(f)
}

fn scalar(n: usize, s: i64) -> Mat {
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = q(s);
    }
    m
}

/// `e = Σ e_i`, `h = 2ρ^∨`, `f` solved from `[e, f] = h`.
pub fn principal_triple(cb: &ChevalleyBasis) -> Result<NilpotentDatum> {
    let l = cb.rs.rank();
    let mut e = cb.zero();
    for i in 0..l {
        e[cb.e(i)] = Q::one();
    }
    // α_j(h) = Σ_i c_i a_ij = 2
    let at = Mat::from_i64(&cb.rs.cartan_matrix).transpose();
    let c = at.solve(&vec![q(2); l]).expect("Cartan matrix is invertible");
    let mut h = cb.zero();
    for i in 0..l {
        h[cb.h(i)] = c[i].clone();
    }
    let f = solve_f(cb, &e, &h)?;
    NilpotentDatum::new(cb, NilpotentLabel::Principal, e, h, f)
}

/// `(e_θ, h_θ, e_{-θ})`.
pub fn minimal_triple(cb: &ChevalleyBasis) -> Result<NilpotentDatum> {
    let theta = cb.rs.theta.clone();
    let e = cb.unit(cb.root_index(&theta));
    let mt: Vec<i64> = theta.iter().map(|x| -x).collect();
    let f = cb.unit(cb.root_index(&mt));
    let h = cb.bracket(&e, &f);
    NilpotentDatum::new(cb, NilpotentLabel::Minimal, e, h, f)
}

/// Jordan-form triple in `sl_n`, with `cb` of type `A_{n-1}`.
pub fn sl2_triple_type_a(cb: &ChevalleyBasis, partition: &[usize]) -> Result<NilpotentDatum> {
    let n: usize = partition.iter().sum();
    if cb.rs.cartan_type.family != Family::A || cb.rs.rank() + 1 != n {
        return Err(Error::Precondition(format!(
            "partition of {n} does not match {}",
            cb.rs.cartan_type
        )));
    }
    if n > 6 {
        return Err(Error::Unsupported("type-A partitions are limited to n <= 6".into()));
    }
    let nat = natural_type_a(cb)?;
    let mut em = Mat::zeros(n, n);
    let mut hm = Mat::zeros(n, n);
    let mut start = 0;
    for &m in partition {
        for i in 0..m {
            hm[(start + i, start + i)] = q(m as i64 - 1 - 2 * i as i64);
            if i + 1 < m {
                em[(start + i, start + i + 1)] = Q::one();
            }
        }
        start += m;
    }
    let e = nat.preimage(&em).ok_or_else(|| Error::Inconsistent("Jordan matrix not in sl_n".into()))?;
    let h = nat.preimage(&hm).ok_or_else(|| Error::Inconsistent("weight matrix not in sl_n".into()))?;
    let f = solve_f(cb, &e, &h)?;
    NilpotentDatum::new(cb, NilpotentLabel::Partition(partition.to_vec()), e, h, f)
}

pub fn nilpotent_from_label(cb: &ChevalleyBasis, label: &NilpotentLabel) -> Result<NilpotentDatum> {
    match label {
        NilpotentLabel::Principal => principal_triple(cb),
        NilpotentLabel::Minimal => minimal_triple(cb),
        NilpotentLabel::Partition(p) => sl2_triple_type_a(cb, p),
    }
}

#[derive(Clone, Debug)]
pub struct DynkinGrading {
    /// `g_j` keyed by the `ad h` eigenvalue `2j`.
    pub pieces: BTreeMap<i64, Vec<LieVec>>,
    /// `g^e`, each vector homogeneous, with its `ad h` eigenvalue.
    pub centralizer_e: Vec<(i64, LieVec)>,
    /// `j + 1` for each basis vector of `g^e`.
    pub kazhdan_degrees: Vec<Q>,
}

impl DynkinGrading {
    pub fn piece(&self, ev: i64) -> &[LieVec] {
        self.pieces.get(&ev).map_or(&[], Vec::as_slice)
    }

    pub fn dim_piece(&self, ev: i64) -> usize {
        self.piece(ev).len()
    }

    pub fn half(&self) -> &[LieVec] {
        self.piece(1)
    }

    /// `g_{≥1}` in increasing degree.
    pub fn geq_one(&self) -> Vec<LieVec> {
        self.pieces.range(2..).flat_map(|(_, v)| v.clone()).collect()
    }

    /// `g_{>0}` with `g_{1/2}` first.
    pub fn positive(&self) -> Vec<LieVec> {
        self.pieces.range(1..).flat_map(|(_, v)| v.clone()).collect()
    }

    pub fn is_even(&self) -> bool {
        self.pieces.keys().all(|k| k % 2 == 0)
    }
}

/// Eigenspaces of `ad h`, the centraliser `g^e` and Kazhdan degrees.
pub fn dynkin_grading(cb: &ChevalleyBasis, nd: &NilpotentDatum) -> Result<DynkinGrading> {
    let n = cb.dim();
    let adh = cb.ad(&nd.h);
    let ade = cb.ad(&nd.e);
    let bound = 2 * n as i64;
    let mut pieces = BTreeMap::new();
    let mut total = 0;
    for ev in -bound..=bound {
        let ker = adh.sub(&scalar(n, ev)).kernel();
        if !ker.is_empty() {
            total += ker.len();
            pieces.insert(ev, ker);
        }
    }
    if total != n {
        return Err(Error::Inconsistent("ad h is not semisimple with integral eigenvalues".into()));
    }
    let mut centralizer_e = Vec::new();
    for (&ev, basis) in &pieces {
        let mut m = Mat::zeros(n, basis.len());
        for (j, v) in basis.iter().enumerate() {
            let img = ade.mul_vec(v);
            for i in 0..n {
                m[(i, j)] = img[i].clone();
            }
        }
        for c in m.kernel() {
            let mut v = cb.zero();
            for (cj, b) in c.iter().zip(basis) {
                for i in 0..n {
                    v[i] += cj * &b[i];
                }
            }
            centralizer_e.push((ev, v));
        }
    }
    let kazhdan_degrees = centralizer_e.iter().map(|(ev, _)| Q::new((*ev).into(), 2.into()) + Q::one()).collect();
    Ok(DynkinGrading { pieces, centralizer_e, kazhdan_degrees })
}

fn in_half(cb: &ChevalleyBasis, nd: &NilpotentDatum, x: &[Q]) -> bool {
    cb.bracket(&nd.h, x) == x
}

/// `χ([x, y])` for `x, y ∈ g_{1/2}`.
pub fn half_form(cb: &ChevalleyBasis, nd: &NilpotentDatum, x: &[Q], y: &[Q]) -> Result<Q> {
    if !in_half(cb, nd, x) || !in_half(cb, nd, y) {
        return Err(Error::Precondition("argument outside g_{1/2}".into()));
    }
    Ok(nd.chi_of(&cb.bracket(x, y)))
}

/// Gram matrix of the form on the given vectors.
pub fn half_form_matrix(cb: &ChevalleyBasis, nd: &NilpotentDatum, basis: &[LieVec]) -> Mat {
    let k = basis.len();
    let mut m = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = nd.chi_of(&cb.bracket(&basis[i], &basis[j]));
        }
    }
    m
}

/// Lagrangian in `g_{1/2}`: greedy isotropic extension over `g_{1/2}` basis vectors,
/// visited in `order` (default: basis order), completed through `l^⊥` if needed.
pub fn lagrangian(cb: &ChevalleyBasis, dg: &DynkinGrading, nd: &NilpotentDatum, order: Option<&[usize]>) -> Vec<LieVec> {
    let half = dg.half();
    let target = half.len() / 2;
    let idx: Vec<usize> = order.map_or_else(|| (0..half.len()).collect(), <[usize]>::to_vec);
    let pair = |x: &LieVec, y: &LieVec| nd.chi_of(&cb.bracket(x, y));
    let mut l: Vec<LieVec> = Vec::new();
    for &i in &idx {
        if l.len() == target {
            break;
        }
        let v = &half[i];
        if l.iter().all(|w| pair(v, w).is_zero()) {
            l.push(v.clone());
        }
    }
    while l.len() < target {
        // l^⊥ inside g_{1/2}, as coefficient vectors over `half`
        let mut m = Mat::zeros(l.len(), half.len());
        for (r, w) in l.iter().enumerate() {
            for (c, b) in half.iter().enumerate() {
                m[(r, c)] = pair(w, b);
            }
        }
        let next = m.kernel().into_iter().map(|c| combine(cb, &c, half)).find(|v| {
            let mut t = l.clone();
            t.push(v.clone());
            span_rank(&t) > l.len()
        });
        match next {
            Some(v) => l.push(v),
            None => break,
        }
    }
    l
}

fn combine(cb: &ChevalleyBasis, coeffs: &[Q], basis: &[LieVec]) -> LieVec {
    let mut v = cb.zero();
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    v
}

/// `m = l ⊕ g_{≥1}`.
pub fn m_subalgebra(dg: &DynkinGrading, l: &[LieVec]) -> Vec<LieVec> {
    l.iter().cloned().chain(dg.geq_one()).collect()
}

/// `χ([x, y]) = 0` for every pair of spanning vectors.
pub fn is_character(cb: &ChevalleyBasis, nd: &NilpotentDatum, m: &[LieVec]) -> bool {
    m.iter().all(|x| m.iter().all(|y| nd.chi_of(&cb.bracket(x, y)).is_zero()))
}

/// Kirillov–Kostant bracket of polynomials in the coordinate functions `x_a`.
pub fn kk_bracket(cb: &ChevalleyBasis, p: &Poly, r: &Poly) -> Poly {
    let n = cb.dim();
    let dp: Vec<Poly> = (0..n).map(|a| p.derivative(a as u16)).collect();
    let dr: Vec<Poly> = (0..n).map(|b| r.derivative(b as u16)).collect();
    let mut out = Poly::zero();
    for a in 0..n {
        if dp[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if dr[b].is_zero() {
                continue;
            }
            let br = cb.bracket_basis(a, b);
            if br.is_empty() {
                continue;
            }
            let mut lin = Poly::zero();
            for (c, k) in br {
                lin.add_term(vec![*c as u16], k.clone());
            }
            out = &out + &(&(&dp[a] * &dr[b]) * &lin);
        }
    }
    out
}

/// Membership in the associated variety of the admissible affine vertex algebra
/// with denominator `q`: `(ad x)^{2q} = 0` if `(q, r^∨) = 1`, otherwise
/// `π_{θ_s}(x)^{2q/r^∨} = 0`.
pub fn variety_membership(cb: &ChevalleyBasis, x: &[Q], qd: i64) -> Result<bool> {
    if qd < 1 {
        return Err(Error::Precondition(format!("denominator q = {qd} must be positive")));
    }
    let rv = cb.rs.lacing_rv;
    let g = qd.gcd(&rv);
    if g == 1 {
        let ad = cb.ad(x);
        return Ok(ad.pow(2 * qd as usize).is_zero());
    }
    if g != rv {
        return Err(Error::Precondition(format!("(q, r^∨) = {g} is neither 1 nor r^∨")));
    }
    let pi = short_root_module(cb)?;
    Ok(pi.act(x).pow((2 * qd / rv) as usize).is_zero())
}

/// Parses an element of `g`: `0`, `e`, `f`, `h` (principal triple), `minimal`,
/// or a signed sum of `[c*]label` terms with basis labels such as `e1`, `f11`, `h2`.
pub fn parse_element(cb: &ChevalleyBasis, spec: &str) -> Result<LieVec> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    match s.as_str() {
        "" => return Err(Error::Parse("empty element".into())),
        "0" => return Ok(cb.zero()),
        "e" | "principal" => return Ok(principal_triple(cb)?.e),
        "f" => return Ok(principal_triple(cb)?.f),
        "h" => return Ok(principal_triple(cb)?.h),
        "minimal" => return Ok(minimal_triple(cb)?.e),
        _ => {}
    }
    let labels: BTreeMap<String, usize> = (0..cb.dim()).map(|a| (cb.label(a), a)).collect();
    let mut out = cb.zero();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('*') && !cur.ends_with('/') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        let (coef, label) = match t.rsplit_once('*') {
            Some((c, l)) => (parse_q(c)?, l.to_string()),
            None => (Q::one(), t.clone()),
        };
        let a = *labels
            .get(&label)
            .ok_or_else(|| Error::Parse(format!("unknown basis label {label:?} for {}", cb.rs.cartan_type)))?;
        out[a] += if neg { -coef } else { coef };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::rootsys::RootSystem;

    fn cb(s: &str) -> ChevalleyBasis {
        ChevalleyBasis::new(&RootSystem::new(s.parse().unwrap()).unwrap())
    }

    fn dims(dg: &DynkinGrading) -> Vec<(i64, usize)> {
        dg.pieces.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    #[test]
    fn principal_examples() {
        let c = cb("A1");
        let nd = principal_triple(&c).unwrap();
        assert_eq!(nd.f, c.unit(c.f(0)));
        let dg = dynkin_grading(&c, &nd).unwrap();
        assert_eq!(dims(&dg), vec![(-2, 1), (0, 1), (2, 1)]);
        assert_eq!(dg.kazhdan_degrees, vec![q(2)]);

        let c = cb("A2");
        let nd = principal_triple(&c).unwrap();
        assert_eq!((nd.h[c.h(0)].clone(), nd.h[c.h(1)].clone()), (q(2), q(2)));
        assert_eq!((nd.f[c.f(0)].clone(), nd.f[c.f(1)].clone()), (q(2), q(2)));
        let dg = dynkin_grading(&c, &nd).unwrap();
        assert_eq!(dg.dim_piece(2), 2);
        assert_eq!(dg.dim_piece(4), 1);
        let mut kd = dg.kazhdan_degrees.clone();
        kd.sort();
        assert_eq!(kd, vec![q(2), q(3)]);

        let c = cb("B2");
        let dg = dynkin_grading(&c, &principal_triple(&c).unwrap()).unwrap();
        assert!(dg.is_even());
        let mut kd = dg.kazhdan_degrees.clone();
        kd.sort();
        assert_eq!(kd, vec![q(2), q(4)]);
    }

    #[test]
    fn principal_kazhdan_degrees_are_exponents_plus_one() {
        for (t, exps) in [("G2", vec![1, 5]), ("A3", vec![1, 2, 3]), ("B3", vec![1, 3, 5]), ("C3", vec![1, 3, 5])] {
            let c = cb(t);
            let dg = dynkin_grading(&c, &principal_triple(&c).unwrap()).unwrap();
            let mut kd = dg.kazhdan_degrees.clone();
            kd.sort();
            let want: Vec<Q> = exps.iter().map(|m| q(m + 1)).collect();
            assert_eq!(kd, want, "{t}");
        }
    }

    #[test]
    fn type_a_partitions() {
        let c = cb("A1");
        let nd = sl2_triple_type_a(&c, &[2]).unwrap();
        assert_eq!(dims(&dynkin_grading(&c, &nd).unwrap()), vec![(-2, 1), (0, 1), (2, 1)]);
        let c = cb("A2");
        let min = sl2_triple_type_a(&c, &[2, 1]).unwrap();
        let dg = dynkin_grading(&c, &min).unwrap();
        assert_eq!(dg.dim_piece(1), 2);
        assert_eq!(dg.geq_one().len(), 1);
        assert_eq!(dg.centralizer_e.len(), 4);
        let prin = sl2_triple_type_a(&c, &[3]).unwrap();
        let from_partition = dims(&dynkin_grading(&c, &prin).unwrap());
        let from_simple = dims(&dynkin_grading(&c, &principal_triple(&c).unwrap()).unwrap());
        assert_eq!(from_partition, from_simple);
        assert!(sl2_triple_type_a(&c, &[2, 2]).is_err());
    }

    #[test]
    fn minimal_a2_matches_partition_21() {
        let c = cb("A2");
        let a = dims(&dynkin_grading(&c, &minimal_triple(&c).unwrap()).unwrap());
        let b = dims(&dynkin_grading(&c, &sl2_triple_type_a(&c, &[2, 1]).unwrap()).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn grading_is_compatible_with_bracket() {
        for t in ["A2", "B2", "G2", "A3"] {
            let c = cb(t);
            for nd in [principal_triple(&c).unwrap(), minimal_triple(&c).unwrap()] {
                let dg = dynkin_grading(&c, &nd).unwrap();
                let total: usize = dg.pieces.values().map(Vec::len).sum();
                assert_eq!(total, c.dim());
                for (i, xi) in &dg.pieces {
                    for (j, yj) in &dg.pieces {
                        for x in xi {
                            for y in yj {
                                let z = c.bracket(x, y);
                                assert_eq!(c.bracket(&nd.h, &z), z.iter().map(|v| v * q(i + j)).collect::<Vec<_>>());
                            }
                        }
                    }
                }
                assert_eq!(dg.dim_piece(1) % 2, 0);
            }
        }
    }

    #[test]
    fn half_form_and_lagrangians() {
        let c = cb("A2");
        let nd = minimal_triple(&c).unwrap();
        let dg = dynkin_grading(&c, &nd).unwrap();
        let g = half_form_matrix(&c, &nd, dg.half());
        assert!(!g.det().is_zero());
        assert_eq!(g, g.transpose().mul(&scalar(2, -1)));
        let l1 = lagrangian(&c, &dg, &nd, None);
        let l2 = lagrangian(&c, &dg, &nd, Some(&[1, 0]));
        assert_eq!((l1.len(), l2.len()), (1, 1));
        assert_ne!(l1, l2);
        for l in [&l1, &l2] {
            assert!(is_character(&c, &nd, &m_subalgebra(&dg, l)));
        }
        assert!(half_form(&c, &nd, &nd.e, &nd.e).is_err());

        let p = principal_triple(&c).unwrap();
        let dp = dynkin_grading(&c, &p).unwrap();
        assert!(lagrangian(&c, &dp, &p, None).is_empty());
    }

    #[test]
    fn kk_bracket_examples() {
        let c = cb("A1");
        let (e, f, h) = (c.e(0) as u16, c.f(0) as u16, c.h(0) as u16);
        let ef = &Poly::var(e) * &Poly::var(f);
        let hh = Poly::var(h);
        // {e, f} = h
        assert_eq!(kk_bracket(&c, &Poly::var(e), &Poly::var(f)), hh);
        assert!(kk_bracket(&c, &ef, &hh).is_zero());
        let casimir = &ef.scale(&q(2)) + &(&hh * &hh).scale(&qf(1, 2));
        for a in 0..3u16 {
            assert!(kk_bracket(&c, &casimir, &Poly::var(a)).is_zero());
        }
    }

    #[test]
    fn kk_bracket_jacobi_on_quadratics() {
        let c = cb("A2");
        let x = |i: usize| Poly::var(i as u16);
        let p = &x(0) * &x(5);
        let r = &x(3) * &x(7);
        let s = &x(2) * &x(4);
        let j = &(&kk_bracket(&c, &p, &kk_bracket(&c, &r, &s)) + &kk_bracket(&c, &r, &kk_bracket(&c, &s, &p)))
            + &kk_bracket(&c, &s, &kk_bracket(&c, &p, &r));
        assert!(j.is_zero());
    }

    /// Nilpotency order of `ad x` for a type-A Jordan type `λ` is `2λ_1 - 1`.
    fn jordan_ad_order(partition: &[usize]) -> usize {
        2 * partition.iter().max().unwrap() - 1
    }

    #[test]
    fn variety_examples() {
        let c = cb("A1");
        assert!(variety_membership(&c, &c.zero(), 2).unwrap());
        assert!(variety_membership(&c, &c.unit(c.e(0)), 2).unwrap());
        assert!(!variety_membership(&c, &c.unit(c.h(0)), 2).unwrap());

        let c = cb("A2");
        let prin = principal_triple(&c).unwrap().e;
        let min = minimal_triple(&c).unwrap().e;
        assert_eq!(c.ad(&prin).nilpotency_order(), Some(jordan_ad_order(&[3])));
        assert_eq!(c.ad(&min).nilpotency_order(), Some(jordan_ad_order(&[2, 1])));
        assert!(!variety_membership(&c, &prin, 2).unwrap());
        assert!(variety_membership(&c, &prin, 3).unwrap());
        assert!(variety_membership(&c, &min, 2).unwrap());
    }

    #[test]
    fn variety_is_nilcone_for_large_q() {
        let c = cb("A2");
        let semisimple = parse_element(&c, "h1").unwrap();
        let mixed = parse_element(&c, "e1+h2").unwrap();
        for qd in [3, 4, 5] {
            for nd in [principal_triple(&c).unwrap().e, minimal_triple(&c).unwrap().e, c.zero()] {
                assert!(variety_membership(&c, &nd, qd).unwrap());
            }
            assert!(!variety_membership(&c, &semisimple, qd).unwrap());
            assert!(!variety_membership(&c, &mixed, qd).unwrap());
        }
    }

    #[test]
    fn short_root_test_in_non_simply_laced() {
        let c = cb("B2");
        // q = 2 shares the factor r^∨ = 2: uses the 5-dimensional module
        let prin = principal_triple(&c).unwrap().e;
        assert!(!variety_membership(&c, &prin, 2).unwrap());
        assert!(variety_membership(&c, &prin, 6).unwrap());
        assert!(variety_membership(&c, &c.zero(), 2).unwrap());
        let g = cb("G2");
        assert!(variety_membership(&g, &minimal_triple(&g).unwrap().e, 3).unwrap());
    }

    #[test]
    fn parse_elements_and_labels() {
        let c = cb("A2");
        let v = parse_element(&c, "2*e1 - 1/2*f11 + h2").unwrap();
        assert_eq!(v[c.e(0)], q(2));
        assert_eq!(v[c.h(1)], q(1));
        assert_eq!(v[c.root_index(&[-1, -1])], qf(-1, 2));
        assert!(parse_element(&c, "e9").is_err());
        assert_eq!("p=2,1".parse::<NilpotentLabel>().unwrap(), NilpotentLabel::Partition(vec![2, 1]));
        assert_eq!(NilpotentLabel::Partition(vec![3]).to_string(), "p=3");
        assert!("foo".parse::<NilpotentLabel>().is_err());
    }
}
