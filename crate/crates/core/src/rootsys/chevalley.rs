//! Chevalley basis and structure constants.
//!
//! Signs follow the extraspecial-pair convention: for every non-simple
//! positive root `ξ`, the pair `(γ, δ)` with `γ` minimal in the root order
//! and `γ + δ = ξ` gets `N_{γ,δ} = +(p + 1)`. All other constants follow from
//! Carter's identities together with `N_{-α,-β} = -N_{α,β}`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{add, neg, Root, RootSystem};
use crate::rational::{q, Mat, Q};

/// Element of `g` as coordinates in the Chevalley basis.
pub type LieVec = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisElement {
    /// `e_α` for a root `α` (either sign).
    Root(Root),
    /// `h_i = α_i^∨`.
    Cartan(usize),
}

#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    pub rs: RootSystem,
    /// Basis order: negative roots (highest first), `h_1..h_l`, positive roots (lowest first).
    pub elements: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    /// `brackets[a][b]` = sparse expansion of `[x_a, x_b]`.
    brackets: Vec<Vec<Vec<(usize, Q)>>>,
    /// Gram matrix of the normalised invariant form.
    pub form: Mat,
}

struct Constants<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(Root, Root), Q>,
}

impl<'a> Constants<'a> {
    fn order(&self, r: &[i64]) -> usize {
        self.rs.positive_index(r).expect("positive root")
    }

    fn extraspecial(&self, xi: &[i64]) -> (Root, Root) {
        for g in &self.rs.positive_roots {
            let d: Root = xi.iter().zip(g).map(|(a, b)| a - b).collect();
            if self.rs.positive_index(&d).is_some() {
                return (g.clone(), d);
            }
        }
        unreachable!("simple roots have no extraspecial pair")
    }

    fn norm(&self, r: &[i64]) -> Q {
        self.rs.root_norm(r)
    }

    /// `N_{μ,ν}` for arbitrary roots; zero when `μ + ν` is not a root.
    fn n(&mut self, mu: &[i64], nu: &[i64]) -> Q {
        let s = add(mu, nu);
        if s.iter().all(|&x| x == 0) || !self.rs.is_root(&s) {
            return Q::zero();
        }
        let pos = |r: &[i64]| r.iter().any(|&x| x > 0);
        match (pos(mu), pos(nu)) {
            (true, true) => self.npos(mu, nu),
            (false, false) => -self.npos(&neg(mu), &neg(nu)),
            _ => {
                let sigma = neg(&s);
                if pos(&sigma) == pos(nu) {
                    self.norm(&sigma) / self.norm(mu) * self.n(nu, &sigma)
                } else {
                    self.norm(&sigma) / self.norm(nu) * self.n(&sigma, mu)
                }
            }
        }
    }

    fn npos(&mut self, a: &[i64], b: &[i64]) -> Q {
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let xi = add(a, b);
        let (g, d) = self.extraspecial(&xi);
        let v = if a == g.as_slice() {
            let mut p = 0;
            let mut cur = b.to_vec();
            loop {
                cur = cur.iter().zip(a).map(|(x, y)| x - y).collect();
                if self.rs.is_root(&cur) {
                    p += 1;
                } else {
                    break;
                }
            }
            q(p + 1)
        } else if b == g.as_slice() {
            -self.npos(b, a)
        } else {
            debug_assert!(self.order(&g) < self.order(a).min(self.order(b)));
            let ng = self.npos(&g, &d);
            let mg = neg(&g);
            let md = neg(&d);
            let bg = add(b, &mg);
            let ag = add(a, &mg);
            let mut acc = Q::zero();
            if self.rs.is_root(&bg) {
                acc += self.n(b, &mg) * self.n(a, &md) / self.norm(&bg);
            }
            if self.rs.is_root(&ag) {
                acc += self.n(&mg, a) * self.n(b, &md) / self.norm(&ag);
            }
            self.norm(&xi) / ng * acc
        };
        self.memo.insert(key, v.clone());
        v
    }
}

impl ChevalleyBasis {
    pub fn new(rs: &RootSystem) -> Self {
        let l = rs.rank();
        let pos = &rs.positive_roots;
        let mut elements = Vec::with_capacity(2 * pos.len() + l);
        for r in pos.iter().rev() {
            elements.push(BasisElement::Root(neg(r)));
        }
        for i in 0..l {
            elements.push(BasisElement::Cartan(i));
        }
        for r in pos {
            elements.push(BasisElement::Root(r.clone()));
        }
        let index: HashMap<BasisElement, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let dim = elements.len();
        let mut consts = Constants { rs, memo: HashMap::new() };

        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let v = match (&elements[a], &elements[b]) {
                    (BasisElement::Cartan(_), BasisElement::Cartan(_)) => vec![],
                    (BasisElement::Cartan(i), BasisElement::Root(r)) => {
                        let c: i64 = (0..l).map(|j| rs.cartan_matrix[*i][j] * r[j]).sum();
                        if c == 0 { vec![] } else { vec![(b, q(c))] }
                    }
                    (BasisElement::Root(r), BasisElement::Cartan(i)) => {
                        let c: i64 = (0..l).map(|j| rs.cartan_matrix[*i][j] * r[j]).sum();
                        if c == 0 { vec![] } else { vec![(a, q(-c))] }
                    }
                    (BasisElement::Root(r), BasisElement::Root(s)) => {
                        let sum = add(r, s);
                        if sum.iter().all(|&x| x == 0) {
                            rs.coroot_coordinates(r)
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(i, c)| (index[&BasisElement::Cartan(i)], c))
                                .collect()
                        } else if rs.is_root(&sum) {
                            vec![(index[&BasisElement::Root(sum)], consts.n(r, s))]
                        } else {
                            vec![]
                        }
                    }
                };
                brackets[a][b] = v;
            }
        }

        let mut form = Mat::zeros(dim, dim);
        for a in 0..dim {
            match &elements[a] {
                BasisElement::Cartan(i) => {
                    for j in 0..l {
                        let b = index[&BasisElement::Cartan(j)];
                        form[(a, b)] = q(4) * &rs.form[(*i, j)]
                            / (&rs.simple_lengths[*i] * &rs.simple_lengths[j]);
                    }
                }
                BasisElement::Root(r) => {
                    let b = index[&BasisElement::Root(neg(r))];
                    form[(a, b)] = q(2) / rs.root_norm(r);
                }
            }
        }

        ChevalleyBasis { rs: rs.clone(), elements, index, brackets, form }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, e: &BasisElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn root_index(&self, r: &[i64]) -> usize {
        self.index[&BasisElement::Root(r.to_vec())]
    }

    pub fn e(&self, i: usize) -> usize {
        let mut r = vec![0; self.rs.rank()];
        r[i] = 1;
        self.root_index(&r)
    }

    pub fn f(&self, i: usize) -> usize {
        let mut r = vec![0; self.rs.rank()];
        r[i] = -1;
        self.root_index(&r)
    }

    pub fn h(&self, i: usize) -> usize {
        self.index[&BasisElement::Cartan(i)]
    }

    pub fn unit(&self, a: usize) -> LieVec {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }

    pub fn zero(&self) -> LieVec {
        vec![Q::zero(); self.dim()]
    }

    /// Sparse `[x_a, x_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.brackets[a][b]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> LieVec {
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for (c, k) in &self.brackets[a][b] {
                    out[*c] += xa * yb * k;
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on coordinate columns.
    pub fn ad(&self, x: &[Q]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..n {
                for (c, k) in &self.brackets[a][b] {
                    m[(*c, b)] += xa * k;
                }
            }
        }
        m
    }

    /// Normalised invariant form `(x|y)`.
    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        let tmp = self.form.mul_vec(y);
        x.iter().zip(&tmp).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    /// Basis dual to the Chevalley basis under the invariant form.
    pub fn dual_basis(&self) -> Vec<LieVec> {
        let inv = self.form.inverse().expect("invariant form is nondegenerate");
        (0..self.dim()).map(|a| inv.col(a)).collect()
    }

    /// Jacobi residual `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` on basis triples.
    pub fn jacobi_residual(&self, a: usize, b: usize, c: usize) -> LieVec {
        let (x, y, z) = (self.unit(a), self.unit(b), self.unit(c));
        let t1 = self.bracket(&x, &self.bracket(&y, &z));
        let t2 = self.bracket(&y, &self.bracket(&z, &x));
        let t3 = self.bracket(&z, &self.bracket(&x, &y));
        t1.iter().zip(&t2).zip(&t3).map(|((p, q), r)| p + q + r).collect()
    }

    /// `h3`, `e2`, `f1` for Cartan and simple root vectors; `e121` (simple-root
    /// coordinates) for the other root vectors.
    pub fn label(&self, a: usize) -> String {
        match &self.elements[a] {
            BasisElement::Cartan(i) => format!("h{}", i + 1),
            BasisElement::Root(r) => {
                let sign = if r.iter().any(|&x| x < 0) { "f" } else { "e" };
                if super::height(r).abs() == 1 {
                    let i = r.iter().position(|&x| x != 0).unwrap();
                    return format!("{sign}{}", i + 1);
                }
                let digits: Vec<String> = r.iter().map(|x| x.abs().to_string()).collect();
                format!("{sign}{}", digits.join(""))
            }
        }
    }
}
