//! Normal-ordering arithmetic for PBW-type algebras, the Clifford algebra
//! on `g_{>0} ⊕ g_{>0}^*`, and exterior products.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::rational::Q;

pub type Word = Vec<u16>;
pub type Terms = Vec<(Word, Q)>;

/// Algebra generated by ordered symbols `g_0 < g_1 < …` subject to
/// `[g_a, g_b] = Σ c_k g_k + c_0`. Monomials are non-decreasing words.
pub struct Pbw {
    linear: Vec<Vec<Vec<(u16, Q)>>>,
    constant: Vec<Vec<Q>>,
    memo: RefCell<HashMap<(Word, u16), Rc<Terms>>>,
}

impl Pbw {
    /// `bracket(a, b)` returns the linear part and the constant of `[g_a, g_b]`.
    pub fn new(n: usize, bracket: impl Fn(usize, usize) -> (Vec<(u16, Q)>, Q)) -> Self {
        let mut linear = vec![vec![Vec::new(); n]; n];
        let mut constant = vec![vec![Q::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let (l, c) = bracket(a, b);
                linear[a][b] = l;
                constant[a][b] = c;
            }
        }
        Pbw { linear, constant, memo: RefCell::new(HashMap::new()) }
    }

    pub fn generators(&self) -> usize {
        self.linear.len()
    }

    pub fn bracket_linear(&self, a: u16, b: u16) -> &[(u16, Q)] {
        &self.linear[a as usize][b as usize]
    }

    pub fn bracket_constant(&self, a: u16, b: u16) -> &Q {
        &self.constant[a as usize][b as usize]
    }

    /// `m · g_g` in normal order.
    pub fn mul_gen(&self, m: &[u16], g: u16) -> Rc<Terms> {
        if m.last().map_or(true, |&y| y <= g) {
            let mut w = m.to_vec();
            w.push(g);
            return Rc::new(vec![(w, Q::one())]);
        }
        let key = (m.to_vec(), g);
        if let Some(r) = self.memo.borrow().get(&key) {
            return r.clone();
        }
        let y = *m.last().unwrap();
        let p = &m[..m.len() - 1];
        let mut acc: HashMap<Word, Q> = HashMap::new();
        // p·y·g = (p·g)·y + p·[y, g]
        for (t, c) in self.mul_gen(p, g).iter() {
            for (s, c2) in self.mul_gen(t, y).iter() {
                add_into(&mut acc, s, c * c2);
            }
        }
        for (z, cz) in &self.linear[y as usize][g as usize] {
            for (s, c2) in self.mul_gen(p, *z).iter() {
                add_into(&mut acc, s, cz * c2);
            }
        }
        let k = &self.constant[y as usize][g as usize];
        if !k.is_zero() {
            add_into(&mut acc, p, k.clone());
        }
        let r = Rc::new(finish(acc));
        self.memo.borrow_mut().insert(key, r.clone());
        r
    }

    /// Product of two normal-ordered words.
    pub fn mul(&self, a: &[u16], b: &[u16]) -> Terms {
        let mut cur: Terms = vec![(a.to_vec(), Q::one())];
        for &g in b {
            let mut acc: HashMap<Word, Q> = HashMap::new();
            for (w, c) in &cur {
                for (s, c2) in self.mul_gen(w, g).iter() {
                    add_into(&mut acc, s, c * c2);
                }
            }
            cur = finish(acc);
        }
        cur
    }

    /// `[g_x, m]` for a normal-ordered word `m`.
    pub fn ad(&self, x: u16, m: &[u16]) -> Terms {
        let mut acc: HashMap<Word, Q> = HashMap::new();
        for k in 0..m.len() {
            for (z, cz) in &self.linear[x as usize][m[k] as usize] {
                let head = self.mul_gen(&m[..k], *z);
                for (w, c) in head.iter() {
                    for (s, c2) in self.mul(w, &m[k + 1..]) {
                        add_into(&mut acc, &s, cz * c * c2);
                    }
                }
            }
            let k0 = &self.constant[x as usize][m[k] as usize];
            if !k0.is_zero() {
                let mut w = m.to_vec();
                w.remove(k);
                add_into(&mut acc, &w, k0.clone());
            }
        }
        finish(acc)
    }
}

fn add_into(acc: &mut HashMap<Word, Q>, w: &[u16], c: Q) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(w) {
        Some(v) => *v += c,
        None => {
            acc.insert(w.to_vec(), c);
        }
    }
}

fn finish(acc: HashMap<Word, Q>) -> Terms {
    let mut v: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort();
    v
}

/// Sign of the supercommutative product of two odd monomials given as bitmasks
/// (factors in increasing bit order); `None` when they share a factor.
pub fn wedge(a: u64, b: u64) -> Option<(u64, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((a | b, swaps % 2 == 1))
}

/// Clifford algebra on `ψ*_0…ψ*_{n-1}` (bits `0..n`) and `ψ_0…ψ_{n-1}` (bits `n..2n`)
/// with `ψ*_i ψ_j + ψ_j ψ*_i = δ_ij`. Normal order: increasing bit index.
#[derive(Clone, Copy, Debug)]
pub struct Clifford {
    pub n: u32,
}

impl Clifford {
    pub fn star(&self, i: usize) -> u64 {
        1 << i
    }

    pub fn psi(&self, i: usize) -> u64 {
        1 << (self.n as usize + i)
    }

    /// `c · gen` for a single generator bit `g`.
    fn mul_gen(&self, c: u64, g: u32, coeff: i64, out: &mut Vec<(u64, i64)>) {
        let n = self.n;
        if g >= n {
            if c >> g & 1 == 1 {
                return;
            }
            let s = (c >> (g + 1)).count_ones();
            out.push((c | 1 << g, if s % 2 == 0 { coeff } else { -coeff }));
            return;
        }
        let psis = c >> n;
        let partner = g + n;
        if c >> partner & 1 == 1 {
            let s = (c >> (partner + 1)).count_ones();
            out.push((c & !(1 << partner), if s % 2 == 0 { coeff } else { -coeff }));
        }
        if c >> g & 1 == 1 {
            return;
        }
        let s = psis.count_ones() + ((c & ((1u64 << n) - 1)) >> (g + 1)).count_ones();
        out.push((c | 1 << g, if s % 2 == 0 { coeff } else { -coeff }));
    }

    /// Product of two normal-ordered monomials as signed monomials.
    pub fn mul(&self, a: u64, b: u64) -> Vec<(u64, i64)> {
        let mut cur = vec![(a, 1i64)];
        let mut rest = b;
        while rest != 0 {
            let g = rest.trailing_zeros();
            rest &= rest - 1;
            let mut next = Vec::new();
            for (c, k) in cur {
                self.mul_gen(c, g, k, &mut next);
            }
            next.sort_unstable();
            let mut merged: Vec<(u64, i64)> = Vec::with_capacity(next.len());
            for (c, k) in next {
                match merged.last_mut() {
                    Some(l) if l.0 == c => l.1 += k,
                    _ => merged.push((c, k)),
                }
            }
            merged.retain(|x| x.1 != 0);
            cur = merged;
        }
        cur
    }
}
