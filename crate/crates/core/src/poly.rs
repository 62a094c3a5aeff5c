//! Commutative polynomials over `Q` in numbered variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{fmt_q, q, Q};

/// Sorted multiset of variable indices.
pub type Monomial = Vec<u16>;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![], c);
        }
        p
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn var(i: u16) -> Self {
        Poly::monomial(vec![i], Q::one())
    }

    pub fn monomial(mut m: Monomial, c: Q) -> Self {
        m.sort_unstable();
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(vec![i as u16], c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn derivative(&self, i: u16) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let k = m.iter().filter(|&&x| x == i).count();
            if k == 0 {
                continue;
            }
            let mut rest = m.clone();
            let pos = rest.iter().position(|&x| x == i).unwrap();
            rest.remove(pos);
            out.add_term(rest, c * q(k as i64));
        }
        out
    }

    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Replaces each variable `i` by `f(i)`.
    pub fn substitute(&self, f: &impl Fn(u16) -> Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &v in m {
                t = &t * &f(v);
            }
            out = &out + &t;
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.clone(), |acc, &v| acc * &point[v as usize]))
            .sum()
    }

    /// Homogeneous part of the given degree.
    pub fn homogeneous(&self, d: usize) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Exact quotient `self / other` when `other` divides `self`; `None` otherwise.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        // graded order, so leading terms multiply
        let lead = |p: &Poly| p.terms.iter().max_by_key(|(m, _)| (m.len(), *m)).map(|(m, c)| (m.clone(), c.clone()));
        let (om, oc) = lead(other)?;
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((m, c)) = lead(&rem) {
            let mut rest = m.clone();
            for v in &om {
                let pos = rest.iter().position(|x| x == v)?;
                rest.remove(pos);
            }
            let t = Poly::monomial(rest, c / &oc);
            rem = &rem - &(&t * other);
            quo = &quo + &t;
        }
        Some(quo)
    }

    /// True when the polynomial is a constant multiple of `other`; returns that constant.
    pub fn ratio_to(&self, other: &Poly) -> Option<Q> {
        let (m, c) = other.terms.iter().next()?;
        let r = self.terms.get(m)? / c;
        (other.scale(&r) == *self).then_some(r)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(Q::zero);
            *e += c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                m.sort_unstable();
                *acc.entry(m).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { terms: acc }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{i}"))
    }
}

impl Poly {
    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(u16) -> String) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|&v| name(v)).collect();
                if vars.is_empty() {
                    fmt_q(c)
                } else {
                    format!("{}*{}", fmt_q(c), vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }

    /// Rendering with custom variable names.
    pub fn render(&self, name: &dyn Fn(u16) -> String) -> String {
        struct W<'a>(&'a Poly, &'a dyn Fn(u16) -> String);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        W(self, name).to_string()
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
                let term = &m[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}
