//! Finite root systems of simple Lie algebras.
//!
//! Roots are integer vectors in simple-root coordinates. Weights are rational
//! vectors in fundamental-weight coordinates, so `λ_i = ⟨λ, α_i^∨⟩`. The
//! invariant form is normalised so that long roots have squared length 2.

mod chevalley;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Mat, Q};

pub use chevalley::{BasisElement, ChevalleyBasis, LieVec};
pub use weyl::{weyl_dominant_representative, weyl_orbit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::Parse(format!("no simple Lie algebra of type {family:?}{rank}")));
        }
        Ok(CartanType { family, rank })
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// The type of the Langlands dual algebra, in Bourbaki labelling.
    pub fn dual(&self) -> CartanType {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        CartanType { family, rank: self.rank }
    }

    /// Cartan matrix `a_ij = ⟨α_i^∨, α_j⟩`, Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            Family::B => a[n - 1][n - 2] = -2,
            Family::C => a[n - 2][n - 1] = -2,
            Family::F => a[2][1] = -2,
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty Cartan type".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(Error::Parse(format!("unknown Cartan family in {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in Cartan type {s:?}")))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub type Root = Vec<i64>;
pub type Weight = Vec<Q>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    /// `(α_i|α_j)` on simple roots.
    pub form: Mat,
    /// `(α_i|α_i)` for each simple root.
    pub simple_lengths: Vec<Q>,
    pub rho: Weight,
    /// `ρ^∨` transported to `h*` by the form, in simple-root coordinates.
    pub rho_check_simple: Vec<Q>,
    pub coxeter_h: i64,
    pub dual_coxeter_hv: i64,
    pub lacing_rv: i64,
    pub theta: Root,
    pub theta_s: Root,
    cartan_inverse: Mat,
    root_index: HashMap<Root, usize>,
}

pub fn build_root_system(label: Family, rank: usize) -> Result<RootSystem> {
    RootSystem::new(CartanType::new(label, rank)?)
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let a = cartan_type.cartan_matrix();
        let n = cartan_type.rank;

        // relative squared lengths from (α_i|α_i)/(α_j|α_j) = a_ji / a_ij
        let mut len: Vec<Option<Q>> = vec![None; n];
        len[0] = Some(Q::one());
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && a[i][j] != 0 && len[j].is_none() {
                    let li = len[i].clone().unwrap();
                    len[j] = Some(li * Q::new(a[i][j].into(), a[j][i].into()));
                    stack.push(j);
                }
            }
        }
        let len: Vec<Q> = len.into_iter().map(|l| l.expect("connected diagram")).collect();
        let max = len.iter().max().unwrap().clone();
        let simple_lengths: Vec<Q> = len.iter().map(|l| l * q(2) / &max).collect();
        let mut form = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                form[(i, j)] = q(a[i][j]) * &simple_lengths[i] / q(2);
            }
        }
        debug_assert_eq!(form, form.transpose());

        let positive_roots = generate_positive_roots(&a);
        let root_index =
            positive_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let cartan_inverse = Mat::from_i64(&a).inverse().expect("Cartan matrix is invertible");

        let mut rs = RootSystem {
            cartan_type,
            cartan_matrix: a.clone(),
            positive_roots,
            form,
            simple_lengths,
            rho: vec![Q::one(); n],
            rho_check_simple: vec![Q::zero(); n],
            coxeter_h: 0,
            dual_coxeter_hv: 0,
            lacing_rv: 1,
            theta: vec![],
            theta_s: vec![],
            cartan_inverse,
            root_index,
        };

        let theta = rs.positive_roots.last().unwrap().clone();
        let max_len = q(2);
        let theta_s = rs
            .positive_roots
            .iter()
            .rev()
            .find(|r| rs.root_norm(r) != max_len)
            .cloned()
            .unwrap_or_else(|| theta.clone());
        rs.coxeter_h = height(&theta) + 1;
        let mut rho_check = vec![Q::zero(); n];
        for r in &rs.positive_roots {
            let c = q(2) / rs.root_norm(r);
            for (x, &ri) in rho_check.iter_mut().zip(r) {
                *x += &c * q(ri) / q(2);
            }
        }
        rs.rho_check_simple = rho_check;
        let hv = rs.pair_root_coroot_weight(&rs.rho.clone(), &theta) + Q::one();
        rs.dual_coxeter_hv = crate::rational::to_i64(&hv).expect("integral dual Coxeter number");
        rs.lacing_rv = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| -a[i][j])
            .max()
            .unwrap_or(1)
            .max(1);
        rs.theta = theta;
        rs.theta_s = theta_s;
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// All roots: positive ones followed by their negatives in the same order.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| neg(r)));
        out
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.root_index.contains_key(r) || self.root_index.contains_key(&neg(r))
    }

    pub fn positive_index(&self, r: &[i64]) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    /// `(α|β)` for vectors in simple-root coordinates.
    pub fn inner_simple(&self, a: &[Q], b: &[Q]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[j].is_zero() && !self.form[(i, j)].is_zero() {
                    s += &a[i] * &b[j] * &self.form[(i, j)];
                }
            }
        }
        s
    }

    pub fn root_norm(&self, r: &[i64]) -> Q {
        let rq = to_q(r);
        self.inner_simple(&rq, &rq)
    }

    pub fn is_long(&self, r: &[i64]) -> bool {
        self.root_norm(r) == q(2)
    }

    /// Simple-root coordinates of a weight given in fundamental coordinates.
    pub fn weight_to_simple(&self, w: &[Q]) -> Vec<Q> {
        self.cartan_inverse.mul_vec(w)
    }

    /// Fundamental-weight coordinates of a vector in simple-root coordinates.
    pub fn simple_to_weight(&self, v: &[Q]) -> Weight {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| q(self.cartan_matrix[i][j]) * &v[j]).sum())
            .collect()
    }

    pub fn root_to_weight(&self, r: &[i64]) -> Weight {
        self.simple_to_weight(&to_q(r))
    }

    /// `(λ|μ)` for weights in fundamental coordinates.
    pub fn inner_weights(&self, a: &[Q], b: &[Q]) -> Q {
        self.inner_simple(&self.weight_to_simple(a), &self.weight_to_simple(b))
    }

    /// `⟨λ, α^∨⟩` for a weight λ and a root α.
    pub fn pair_root_coroot_weight(&self, w: &[Q], r: &[i64]) -> Q {
        let mut s = Q::zero();
        for (j, &rj) in r.iter().enumerate() {
            if rj != 0 {
                s += q(rj) * &self.simple_lengths[j] / q(2) * &w[j];
            }
        }
        s * q(2) / self.root_norm(r)
    }

    /// Coordinates of the coroot `α^∨` in the basis of simple coroots.
    pub fn coroot_coordinates(&self, r: &[i64]) -> Vec<Q> {
        let norm = self.root_norm(r);
        r.iter()
            .zip(&self.simple_lengths)
            .map(|(&ri, l)| q(ri) * l / &norm)
            .collect()
    }

    /// `ρ^∨` in fundamental-weight coordinates (through the form).
    pub fn rho_check(&self) -> Weight {
        self.simple_to_weight(&self.rho_check_simple)
    }

    /// `(θ|ρ^∨)`.
    pub fn theta_rho_check(&self) -> Q {
        self.inner_simple(&to_q(&self.theta), &self.rho_check_simple)
    }

    /// `(θ_s|ρ^∨)`.
    pub fn theta_s_rho_check(&self) -> Q {
        self.inner_simple(&to_q(&self.theta_s), &self.rho_check_simple)
    }

    /// Dual Coxeter number of the Langlands dual algebra.
    pub fn dual_coxeter_of_dual(&self) -> i64 {
        langlands_dual(self).dual_coxeter_hv
    }

    pub fn weyl_dominant_representative(&self, v: &[Q]) -> Weight {
        weyl_dominant_representative(self, v)
    }
}

pub fn langlands_dual(rs: &RootSystem) -> RootSystem {
    RootSystem::new(rs.cartan_type.dual()).expect("dual of a valid type is valid")
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

pub fn neg(r: &[i64]) -> Root {
    r.iter().map(|x| -x).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn to_q(r: &[i64]) -> Vec<Q> {
    r.iter().map(|&x| q(x)).collect()
}

fn generate_positive_roots(a: &[Vec<i64>]) -> Vec<Root> {
    let n = a.len();
    let mut by_height: Vec<Vec<Root>> = vec![(0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()];
    let mut all: std::collections::HashSet<Root> = by_height[0].iter().cloned().collect();
    loop {
        let mut next = Vec::new();
        for r in by_height.last().unwrap() {
            for i in 0..n {
                // α_i-string through r: r - q α_i, ..., r + p α_i with p - q = -⟨r, α_i^∨⟩
                let mut qd = 0;
                let mut cur = r.clone();
                loop {
                    cur[i] -= 1;
                    if all.contains(&cur) {
                        qd += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| a[i][j] * r[j]).sum();
                let p = qd - pairing;
                if p > 0 {
                    let mut s = r.clone();
                    s[i] += 1;
                    if !all.contains(&s) {
                        all.insert(s.clone());
                        next.push(s);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        by_height.push(next);
    }
    by_height.into_iter().flatten().collect()
}
