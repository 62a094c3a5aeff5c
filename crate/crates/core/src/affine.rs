//! Affine weights: pairings with real roots, integral root systems,
//! admissibility, and enumeration of the sets `Pr^k` and `Pr^k_nondeg`.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, span_rank, Q};
use crate::rootsys::{neg, Root, RootSystem, Weight};

/// Largest denominator of `k + h^∨` accepted by the enumerators.
pub const MAX_DENOMINATOR: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeight {
    pub finite_part: Weight,
    pub level: Q,
}

impl AffineWeight {
    pub fn new(finite_part: Weight, level: Q) -> Self {
        AffineWeight { finite_part, level }
    }

    /// `kΛ₀`.
    pub fn vacuum(rs: &RootSystem, level: Q) -> Self {
        AffineWeight { finite_part: vec![Q::zero(); rs.rank()], level }
    }
}

impl Serialize for AffineWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AffineWeight", 2)?;
        let fp: Vec<String> = self.finite_part.iter().map(fmt_q).collect();
        st.serialize_field("finite_part", &fp)?;
        st.serialize_field("level", &fmt_q(&self.level))?;
        st.end()
    }
}

/// `ᾱ + nδ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineRealRoot {
    pub finite_root: Root,
    pub delta_multiple: i64,
}

impl AffineRealRoot {
    pub fn new(finite_root: Root, delta_multiple: i64) -> Self {
        AffineRealRoot { finite_root, delta_multiple }
    }

    pub fn is_positive(&self) -> bool {
        self.delta_multiple > 0
            || (self.delta_multiple == 0 && self.finite_root.iter().any(|&x| x > 0))
    }
}

#[derive(Clone, Debug)]
pub struct IntegralRootDatum {
    /// Integral roots are listed for `0 <= n <= window`.
    pub window: i64,
    pub integral_roots: Vec<AffineRealRoot>,
    pub simple_system: Vec<AffineRealRoot>,
    pub cartan_matrix_of_integral_system: Vec<Vec<i64>>,
}

/// `k + h^∨ = p/q` in lowest terms, with the admissibility verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleNumber {
    pub admissible: bool,
    pub p: i64,
    pub q: i64,
    pub reason: Option<String>,
}

/// `⟨λ + ρ̂, α^∨⟩ = ⟨λ̄ + ρ, ᾱ^∨⟩ + n (k + h^∨) · 2/(ᾱ|ᾱ)`.
pub fn affine_pairing(rs: &RootSystem, lambda: &AffineWeight, alpha: &AffineRealRoot) -> Result<Q> {
    let r = &alpha.finite_root;
    if r.iter().all(|&x| x == 0) || !rs.is_root(r) {
        return Err(Error::Precondition(format!("{r:?} is not a finite root")));
    }
    Ok(finite_pairing(rs, &lambda.finite_part, r) + q(alpha.delta_multiple) * slope(rs, &lambda.level, r))
}

/// `⟨λ̄ + ρ, ᾱ^∨⟩`.
fn finite_pairing(rs: &RootSystem, lam: &[Q], r: &[i64]) -> Q {
    let shifted: Vec<Q> = lam.iter().map(|x| x + Q::one()).collect();
    rs.pair_root_coroot_weight(&shifted, r)
}

/// Increment of the pairing per unit of `δ`: `(k + h^∨) · 2/(ᾱ|ᾱ)`.
fn slope(rs: &RootSystem, level: &Q, r: &[i64]) -> Q {
    (level + q(rs.dual_coxeter_hv)) * q(2) / rs.root_norm(r)
}

fn shifted_level(rs: &RootSystem, level: &Q) -> Result<Q> {
    let s = level + q(rs.dual_coxeter_hv);
    if s.is_positive() {
        Ok(s)
    } else if s.is_zero() {
        Err(Error::Unsupported("critical level: k + h^∨ = 0".into()))
    } else {
        Err(Error::Unsupported("k + h^∨ < 0 is outside the supported regime".into()))
    }
}

/// Smallest `n` for which `ᾱ + nδ` is positive.
fn first_positive(r: &[i64]) -> i64 {
    if r.iter().any(|&x| x > 0) {
        0
    } else {
        1
    }
}

/// Regular dominance: no positive real root pairs into `{0, -1, -2, ...}`.
///
/// Pairings grow linearly in `n`, so only `n <= -a/s` can violate and the
/// scan stops there.
pub fn is_regular_dominant(rs: &RootSystem, lambda: &AffineWeight) -> Result<bool> {
    let s_level = shifted_level(rs, &lambda.level)?;
    for r in rs.all_roots() {
        let a = finite_pairing(rs, &lambda.finite_part, &r);
        let s = &s_level * q(2) / rs.root_norm(&r);
        let exact = (-&a / &s).floor().to_integer().to_i64().unwrap_or(i64::MAX);
        let mut n = first_positive(&r);
        while n <= exact {
            let v = &a + q(n) * &s;
            if v.is_integer() && !v.is_positive() {
                return Ok(false);
            }
            n += 1;
        }
    }
    Ok(true)
}

/// Integral roots in `0 <= n <= r^∨ q`, and the simple system of the full integral system.
pub fn integral_root_datum(rs: &RootSystem, lambda: &AffineWeight) -> Result<IntegralRootDatum> {
    let period = integrality_period(rs, &lambda.level);
    let is_integral = |r: &[i64], n: i64| -> bool {
        (finite_pairing(rs, &lambda.finite_part, r) + q(n) * slope(rs, &lambda.level, r)).is_integer()
    };
    let all = rs.all_roots();
    let mut integral_roots = Vec::new();
    for n in 0..=period {
        for r in &all {
            if is_integral(r, n) {
                integral_roots.push(AffineRealRoot::new(r.clone(), n));
            }
        }
    }

    // Positive integral roots with n up to twice the period hold every simple root.
    let reach = 2 * period;
    let positive: Vec<AffineRealRoot> = (0..=reach)
        .flat_map(|n| all.iter().map(move |r| AffineRealRoot::new(r.clone(), n)))
        .filter(|a| a.is_positive() && is_integral(&a.finite_root, a.delta_multiple))
        .collect();
    let mut simple_system = Vec::new();
    for b in &positive {
        let nb = b.delta_multiple;
        let keeps_positive = positive.iter().all(|g| {
            if g == b || g.delta_multiple > 3 * nb + 1 {
                return true;
            }
            let c = pairing_int(rs, &g.finite_root, &b.finite_root);
            let img = AffineRealRoot::new(
                g.finite_root.iter().zip(&b.finite_root).map(|(x, y)| x - c * y).collect(),
                g.delta_multiple - c * nb,
            );
            img.is_positive()
        });
        if keeps_positive {
            simple_system.push(b.clone());
        }
    }
    let cartan_matrix_of_integral_system = simple_system
        .iter()
        .map(|bi| simple_system.iter().map(|bj| pairing_int(rs, &bj.finite_root, &bi.finite_root)).collect())
        .collect();
    Ok(IntegralRootDatum { window: period, integral_roots, simple_system, cartan_matrix_of_integral_system })
}

/// `⟨γ, β^∨⟩` for finite roots, as an integer.
fn pairing_int(rs: &RootSystem, gamma: &[i64], beta: &[i64]) -> i64 {
    let g: Vec<Q> = gamma.iter().map(|&x| q(x)).collect();
    let b: Vec<Q> = beta.iter().map(|&x| q(x)).collect();
    let v = rs.inner_simple(&g, &b) * q(2) / rs.root_norm(beta);
    v.to_integer().to_i64().expect("Cartan integer")
}

/// `r^∨ q`, where `q` is the denominator of `k + h^∨`.
fn integrality_period(rs: &RootSystem, level: &Q) -> i64 {
    let s = level + q(rs.dual_coxeter_hv);
    s.denom().to_i64().unwrap_or(1) * rs.lacing_rv
}

/// Regular dominant and the integral roots span `ℚΔ̂^{re}`.
pub fn is_admissible_weight(rs: &RootSystem, lambda: &AffineWeight) -> Result<bool> {
    if !is_regular_dominant(rs, lambda)? {
        return Ok(false);
    }
    Ok(spans_real_roots(rs, &integral_root_datum(rs, lambda)?))
}

fn spans_real_roots(rs: &RootSystem, datum: &IntegralRootDatum) -> bool {
    let vecs: Vec<Vec<Q>> = datum
        .integral_roots
        .iter()
        .map(|a| a.finite_root.iter().map(|&x| q(x)).chain([q(a.delta_multiple)]).collect())
        .collect();
    !vecs.is_empty() && span_rank(&vecs) == rs.rank() + 1
}

/// Writes `k + h^∨ = p/q` and tests `p >= h^∨` (`(q, r^∨) = 1`) or `p >= h` (`(q, r^∨) = r^∨`).
pub fn is_admissible_number(rs: &RootSystem, k: &Q) -> AdmissibleNumber {
    let s = k + q(rs.dual_coxeter_hv);
    if !s.is_positive() {
        let reason = if s.is_zero() { "critical level: k + h^∨ = 0" } else { "k + h^∨ < 0" };
        return AdmissibleNumber { admissible: false, p: 0, q: 0, reason: Some(reason.into()) };
    }
    let (p, qq) = match (s.numer().to_i64(), s.denom().to_i64()) {
        (Some(p), Some(d)) => (p, d),
        _ => {
            return AdmissibleNumber { admissible: false, p: 0, q: 0, reason: Some("level out of range".into()) }
        }
    };
    let g = qq.gcd(&rs.lacing_rv);
    let (bound, name) = if g == 1 { (rs.dual_coxeter_hv, "h^∨") } else { (rs.coxeter_h, "h") };
    let ok = g == 1 || g == rs.lacing_rv;
    let admissible = ok && p >= bound;
    let reason = (!admissible).then(|| format!("p = {p} < {name} = {bound}"));
    AdmissibleNumber { admissible, p, q: qq, reason }
}

fn require_admissible(rs: &RootSystem, k: &Q) -> Result<(i64, i64)> {
    let an = is_admissible_number(rs, k);
    if !an.admissible {
        return Err(Error::Precondition(format!(
            "k = {} is not admissible: {}",
            fmt_q(k),
            an.reason.unwrap_or_default()
        )));
    }
    if an.q > MAX_DENOMINATOR {
        return Err(Error::Resource(format!(
            "denominator q = {} exceeds the enumeration limit {MAX_DENOMINATOR}",
            an.q
        )));
    }
    Ok((an.p, an.q))
}

/// Whether two Cartan matrices agree up to a simultaneous permutation of rows and columns.
pub fn cartan_isomorphic(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| a[i][j] == b[perm[i]][perm[j]])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Candidates with `⟨λ̄+ρ, α_i^∨⟩ ∈ (1/q)ℤ ∩ (-r^∨ p, r^∨ p)`.
fn grid(rs: &RootSystem, p: i64, qq: i64) -> Vec<Weight> {
    let bound = rs.lacing_rv * p * qq;
    let steps: Vec<i64> = (-bound + 1..bound).collect();
    let mut out: Vec<Weight> = vec![vec![]];
    for _ in 0..rs.rank() {
        out = out
            .into_iter()
            .flat_map(|w| {
                steps.iter().map(move |&j| {
                    let mut v = w.clone();
                    v.push(Q::new(j.into(), qq.into()) - Q::one());
                    v
                })
            })
            .collect();
    }
    out
}

/// All `λ` of level `k` with `λ` admissible and `Δ̂(λ) ≅ Δ̂(kΛ₀)`, sorted.
pub fn enumerate_pr_k(rs: &RootSystem, k: &Q) -> Result<Vec<AffineWeight>> {
    let (p, qq) = require_admissible(rs, k)?;
    let vac = integral_root_datum(rs, &AffineWeight::vacuum(rs, k.clone()))?;
    let target = vac.cartan_matrix_of_integral_system;
    let found: Result<Vec<Option<AffineWeight>>> = grid(rs, p, qq)
        .into_par_iter()
        .map(|fp| {
            let lam = AffineWeight::new(fp, k.clone());
            if !is_regular_dominant(rs, &lam)? {
                return Ok(None);
            }
            let d = integral_root_datum(rs, &lam)?;
            let ok = spans_real_roots(rs, &d) && cartan_isomorphic(&d.cartan_matrix_of_integral_system, &target);
            Ok(ok.then_some(lam))
        })
        .collect();
    let mut out: Vec<AffineWeight> = found?.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// `λ ∈ Pr^k` with `⟨λ̄, α^∨⟩ ∉ ℤ` for every finite root.
pub fn is_nondegenerate_weight(rs: &RootSystem, lambda: &AffineWeight) -> bool {
    rs.positive_roots
        .iter()
        .all(|r| !rs.pair_root_coroot_weight(&lambda.finite_part, r).is_integer())
}

pub fn enumerate_pr_k_nondeg(rs: &RootSystem, k: &Q) -> Result<Vec<AffineWeight>> {
    Ok(enumerate_pr_k(rs, k)?.into_iter().filter(|l| is_nondegenerate_weight(rs, l)).collect())
}

/// Negative of an affine real root.
pub fn negate(a: &AffineRealRoot) -> AffineRealRoot {
    AffineRealRoot::new(neg(&a.finite_root), -a.delta_multiple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use std::collections::BTreeSet;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn aw(fp: Vec<Q>, k: Q) -> AffineWeight {
        AffineWeight::new(fp, k)
    }

    /// Independent description of admissible weights of `sl_2`:
    /// `⟨λ̄, α^∨⟩ = (r - 1) - s p/q` with `1 <= r <= p-1`, `0 <= s <= q-1`.
    fn a1_oracle(p: i64, qq: i64) -> BTreeSet<Q> {
        let mut out = BTreeSet::new();
        for r in 1..p {
            for s in 0..qq {
                out.insert(q(r - 1) - qf(s * p, qq));
            }
        }
        out
    }

    #[test]
    fn pairing_examples() {
        let a1 = rs("A1");
        let v = affine_pairing(&a1, &aw(vec![q(0)], q(0)), &AffineRealRoot::new(vec![1], 0)).unwrap();
        assert_eq!(v, q(1));
        let v = affine_pairing(&a1, &aw(vec![q(0)], qf(-1, 2)), &AffineRealRoot::new(vec![-1], 1)).unwrap();
        assert_eq!(v, qf(1, 2));
        let a2 = rs("A2");
        let v = affine_pairing(&a2, &aw(vec![q(1), q(0)], q(1)), &AffineRealRoot::new(vec![1, 1], 0)).unwrap();
        assert_eq!(v, q(3));
        assert!(affine_pairing(&a1, &aw(vec![q(0)], q(0)), &AffineRealRoot::new(vec![0], 1)).is_err());
    }

    #[test]
    fn regular_dominance_examples() {
        let a1 = rs("A1");
        assert!(is_regular_dominant(&a1, &aw(vec![q(0)], qf(-1, 2))).unwrap());
        assert!(!is_regular_dominant(&a1, &aw(vec![q(-2)], qf(-1, 2))).unwrap());
        assert!(is_regular_dominant(&a1, &aw(vec![q(1)], q(1))).unwrap());
        assert!(is_regular_dominant(&a1, &aw(vec![q(0)], q(-2))).is_err());
    }

    #[test]
    fn integral_datum_examples() {
        let a1 = rs("A1");
        let d = integral_root_datum(&a1, &AffineWeight::vacuum(&a1, q(0))).unwrap();
        assert_eq!(d.integral_roots.len() as i64, 2 * (d.window + 1));
        let d = integral_root_datum(&a1, &AffineWeight::vacuum(&a1, qf(-1, 2))).unwrap();
        assert!(d.integral_roots.iter().all(|a| a.delta_multiple % 2 == 0));
        assert_eq!(d.simple_system, vec![AffineRealRoot::new(vec![1], 0), AffineRealRoot::new(vec![-1], 2)]);
        let a2 = rs("A2");
        let d = integral_root_datum(&a2, &AffineWeight::vacuum(&a2, qf(-3, 2))).unwrap();
        for a in &d.integral_roots {
            assert_eq!(a.delta_multiple % 2, 0);
        }
    }

    #[test]
    fn integral_level_gives_extended_cartan_matrix() {
        for (t, ext) in [
            ("A1", vec![vec![2, -2], vec![-2, 2]]),
            ("A2", vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]),
            ("B2", vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]]),
            ("G2", vec![vec![2, -3, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
        ] {
            let r = rs(t);
            let d = integral_root_datum(&r, &AffineWeight::vacuum(&r, q(1))).unwrap();
            assert!(cartan_isomorphic(&d.cartan_matrix_of_integral_system, &ext), "{t}");
        }
    }

    #[test]
    fn admissible_weight_examples() {
        let a1 = rs("A1");
        assert!(is_admissible_weight(&a1, &AffineWeight::vacuum(&a1, qf(-1, 2))).unwrap());
        assert!(is_admissible_weight(&a1, &AffineWeight::vacuum(&a1, qf(-1, 3))).unwrap());
        assert!(!is_admissible_weight(&a1, &aw(vec![qf(1, 3)], qf(-1, 2))).unwrap());
    }

    #[test]
    fn admissible_number_examples() {
        let a1 = rs("A1");
        let a = is_admissible_number(&a1, &qf(-1, 2));
        assert_eq!((a.admissible, a.p, a.q), (true, 3, 2));
        let a = is_admissible_number(&a1, &qf(-4, 3));
        assert_eq!((a.admissible, a.p, a.q), (true, 2, 3));
        let a = is_admissible_number(&a1, &q(-2));
        assert!(!a.admissible);
        assert!(a.reason.unwrap().contains("critical"));
        let b2 = rs("B2");
        // k + 3 = 3/2: q even needs p >= h = 4
        assert!(!is_admissible_number(&b2, &qf(-3, 2)).admissible);
        assert!(is_admissible_number(&b2, &qf(-1, 2)).admissible);
    }

    #[test]
    fn a1_enumeration_matches_oracle() {
        let a1 = rs("A1");
        for (p, qq) in [(3, 2), (3, 4), (5, 2), (5, 4), (3, 1), (7, 4)] {
            let k = qf(p, qq) - q(2);
            let pr = enumerate_pr_k(&a1, &k).unwrap();
            let got: BTreeSet<Q> = pr.iter().map(|l| l.finite_part[0].clone()).collect();
            assert_eq!(got, a1_oracle(p, qq), "({p},{qq})");
            assert_eq!(pr.len() as i64, (p - 1) * qq);
            let nd = enumerate_pr_k_nondeg(&a1, &k).unwrap();
            assert_eq!(nd.len() as i64, (p - 1) * (qq - 1));
        }
    }

    #[test]
    fn vacuum_is_always_in_pr_k() {
        for (t, ks) in [
            ("A1", vec![qf(-1, 2), qf(-4, 3), q(1)]),
            ("A2", vec![qf(-3, 2), qf(-7, 4), q(0)]),
            ("B2", vec![qf(-1, 2), qf(-5, 3)]),
        ] {
            let r = rs(t);
            for k in ks {
                let pr = enumerate_pr_k(&r, &k).unwrap();
                assert!(pr.contains(&AffineWeight::vacuum(&r, k.clone())), "{t} {k}");
            }
        }
    }

    #[test]
    fn refuses_large_denominator() {
        let a1 = rs("A1");
        let k = qf(131, 65) - q(2);
        assert!(matches!(enumerate_pr_k(&a1, &k), Err(Error::Resource(_))));
        assert!(matches!(enumerate_pr_k(&a1, &q(-2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn cartan_isomorphism() {
        let a = vec![vec![2, -1], vec![-3, 2]];
        let b = vec![vec![2, -3], vec![-1, 2]];
        assert!(cartan_isomorphic(&a, &b));
        assert!(!cartan_isomorphic(&a, &[vec![2, -1], vec![-1, 2]]));
    }
}
