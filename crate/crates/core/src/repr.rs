//! Finite-dimensional irreducible representations built from a highest weight.
//!
//! A vector below the highest weight is determined by its images under the
//! raising operators `e_j`, so each new level is built by computing
//! `e_j f_i v = f_i e_j v + δ_ij ⟨μ, α_i^∨⟩ v` and keeping an independent set
//! per weight.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, span_rank, Mat, Q};
use crate::rootsys::{add, ChevalleyBasis};

#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    /// Weight of each basis vector, fundamental coordinates.
    pub weights: Vec<Vec<i64>>,
    /// `mats[a]` represents Chevalley basis element `a`.
    pub mats: Vec<Mat>,
}

/// Per-level data: basis weights plus `e_j` images of each basis vector into the previous level.
struct Level {
    weights: Vec<Vec<i64>>,
    /// `raise[j][v]` = coordinates of `e_j v` in the previous level.
    raise: Vec<Vec<Vec<Q>>>,
}

/// Irreducible module `L(λ)` for a dominant integral `λ`.
pub fn highest_weight_module(cb: &ChevalleyBasis, lambda: &[i64]) -> Result<Representation> {
    let rs = &cb.rs;
    let l = rs.rank();
    if lambda.len() != l || lambda.iter().any(|&x| x < 0) {
        return Err(Error::Precondition(format!("weight {lambda:?} is not dominant integral")));
    }
    const MAX_DIM: usize = 512;
    let mut levels: Vec<Level> = vec![Level { weights: vec![lambda.to_vec()], raise: vec![vec![]; l] }];
    // lower[d][i] : matrix of f_i from level d to level d+1 (rows = dim d+1).
    let mut lower: Vec<Vec<Mat>> = Vec::new();
    let mut total = 1usize;
    loop {
        let d = levels.len() - 1;
        let cur = &levels[d];
        let n_cur = cur.weights.len();
        // candidates f_i v, grouped by weight, each keyed by its e-images in level d.
        let mut by_weight: BTreeMap<Vec<i64>, Vec<(usize, usize, Vec<Vec<Q>>)>> = BTreeMap::new();
        for i in 0..l {
            for v in 0..n_cur {
                let mu = &cur.weights[v];
                let wt: Vec<i64> = (0..l).map(|k| mu[k] - rs.cartan_matrix[k][i]).collect();
                let mut imgs = Vec::with_capacity(l);
                for j in 0..l {
                    let mut img = vec![Q::zero(); n_cur];
                    if d > 0 {
                        let ejv = &cur.raise[j][v];
                        let fi = &lower[d - 1][i];
                        for (u, c) in ejv.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (w, x) in img.iter_mut().enumerate() {
                                let m = &fi[(w, u)];
                                if !m.is_zero() {
                                    *x += c * m;
                                }
                            }
                        }
                    }
                    if i == j {
                        img[v] += q(mu[i]);
                    }
                    imgs.push(img);
                }
                by_weight.entry(wt).or_default().push((i, v, imgs));
            }
        }
        let mut next = Level { weights: vec![], raise: vec![vec![]; l] };
        let mut fmats: Vec<Mat> = Vec::new();
        let mut columns: Vec<Vec<(usize, Vec<Q>)>> = vec![Vec::new(); l];
        for (wt, cands) in by_weight {
            let flat = |imgs: &Vec<Vec<Q>>| -> Vec<Q> { imgs.iter().flatten().cloned().collect() };
            let mut chosen: Vec<Vec<Q>> = Vec::new();
            let mut chosen_imgs: Vec<Vec<Vec<Q>>> = Vec::new();
            for (_, _, imgs) in &cands {
                let f = flat(imgs);
                if f.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut trial = chosen.clone();
                trial.push(f.clone());
                if span_rank(&trial) > chosen.len() {
                    chosen = trial;
                    chosen_imgs.push(imgs.clone());
                }
            }
            let base = next.weights.len();
            for imgs in &chosen_imgs {
                next.weights.push(wt.clone());
                for j in 0..l {
                    next.raise[j].push(imgs[j].clone());
                }
            }
            if chosen.is_empty() {
                continue;
            }
            let basis_t = Mat::from_rows(&chosen).transpose();
            for (i, v, imgs) in &cands {
                let coords = basis_t.solve(&flat(imgs)).ok_or_else(|| {
                    Error::Inconsistent("weight vector outside its weight space".into())
                })?;
                let col: Vec<Q> = (0..base).map(|_| Q::zero()).chain(coords).collect();
                columns[*i].push((*v, col));
            }
        }
        let n_next = next.weights.len();
        if n_next == 0 {
            break;
        }
        total += n_next;
        if total > MAX_DIM {
            return Err(Error::Resource(format!("module exceeds {MAX_DIM} dimensions")));
        }
        for cols in columns.iter() {
            let mut m = Mat::zeros(n_next, n_cur);
            for (v, col) in cols {
                for (w, x) in col.iter().enumerate() {
                    m[(w, *v)] = x.clone();
                }
            }
            fmats.push(m);
        }
        lower.push(fmats);
        levels.push(next);
    }

    let offsets: Vec<usize> = levels
        .iter()
        .scan(0, |acc, lv| {
            let o = *acc;
            *acc += lv.weights.len();
            Some(o)
        })
        .collect();
    let dim = total;
    let weights: Vec<Vec<i64>> = levels.iter().flat_map(|lv| lv.weights.clone()).collect();
    let mut e = vec![Mat::zeros(dim, dim); l];
    let mut f = vec![Mat::zeros(dim, dim); l];
    for (d, lv) in levels.iter().enumerate().skip(1) {
        for j in 0..l {
            for (v, img) in lv.raise[j].iter().enumerate() {
                for (u, c) in img.iter().enumerate() {
                    e[j][(offsets[d - 1] + u, offsets[d] + v)] = c.clone();
                }
            }
        }
    }
    for (d, fm) in lower.iter().enumerate() {
        for i in 0..l {
            let m = &fm[i];
            for r in 0..m.rows {
                for c in 0..m.cols {
                    if !m[(r, c)].is_zero() {
                        f[i][(offsets[d + 1] + r, offsets[d] + c)] = m[(r, c)].clone();
                    }
                }
            }
        }
    }
    let mut h = vec![Mat::zeros(dim, dim); l];
    for (v, w) in weights.iter().enumerate() {
        for i in 0..l {
            h[i][(v, v)] = q(w[i]);
        }
    }
    let mats = extend_to_basis(cb, &e, &f, &h);
    Ok(Representation { dim, weights, mats })
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    a.mul(b).sub(&b.mul(a))
}

fn scale(m: &Mat, s: &Q) -> Mat {
    Mat { rows: m.rows, cols: m.cols, data: m.data.iter().map(|x| x * s).collect() }
}

/// Images of every Chevalley basis element, from generators via extraspecial brackets.
fn extend_to_basis(cb: &ChevalleyBasis, e: &[Mat], f: &[Mat], h: &[Mat]) -> Vec<Mat> {
    let rs = &cb.rs;
    let mut mats: Vec<Option<Mat>> = vec![None; cb.dim()];
    for i in 0..rs.rank() {
        mats[cb.e(i)] = Some(e[i].clone());
        mats[cb.f(i)] = Some(f[i].clone());
        mats[cb.h(i)] = Some(h[i].clone());
    }
    for sign in [1i64, -1] {
        for r in &rs.positive_roots {
            let root: Vec<i64> = r.iter().map(|x| x * sign).collect();
            let a = cb.root_index(&root);
            if mats[a].is_some() {
                continue;
            }
            // any decomposition root = γ + δ with both already built
            let mut done = false;
            for g in &rs.positive_roots {
                let gs: Vec<i64> = g.iter().map(|x| x * sign).collect();
                let ds: Vec<i64> = root.iter().zip(&gs).map(|(x, y)| x - y).collect();
                if !rs.is_root(&ds) || add(&gs, &ds) != root {
                    continue;
                }
                let (ia, ib) = (cb.root_index(&gs), cb.root_index(&ds));
                if let (Some(ma), Some(mb)) = (&mats[ia], &mats[ib]) {
                    let coef = cb
                        .bracket_basis(ia, ib)
                        .iter()
                        .find(|(c, _)| *c == a)
                        .map(|(_, k)| k.clone())
                        .expect("root sum bracket is nonzero");
                    mats[a] = Some(scale(&commutator(ma, mb), &(Q::one() / coef)));
                    done = true;
                    break;
                }
            }
            assert!(done, "root vector not reachable by brackets");
        }
    }
    mats.into_iter().map(|m| m.expect("all basis images built")).collect()
}

impl Representation {
    /// `π(x)` for `x` in Chevalley coordinates.
    pub fn act(&self, x: &[Q]) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (a, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.data.iter_mut().zip(&self.mats[a].data) {
                if !m.is_zero() {
                    *o += c * m;
                }
            }
        }
        out
    }

    /// Preimage of a matrix under `π`, if it lies in the image.
    pub fn preimage(&self, m: &Mat) -> Option<Vec<Q>> {
        let n = self.mats.len();
        let mut a = Mat::zeros(self.dim * self.dim, n);
        for (j, mj) in self.mats.iter().enumerate() {
            for (r, x) in mj.data.iter().enumerate() {
                a[(r, j)] = x.clone();
            }
        }
        a.solve(&m.data)
    }

    /// Checks `π([x_a, x_b]) = [π(x_a), π(x_b)]` on all basis pairs.
    pub fn is_homomorphism(&self, cb: &ChevalleyBasis) -> bool {
        let n = cb.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let lhs = self.act(&cb.bracket(&cb.unit(a), &cb.unit(b)));
                lhs == commutator(&self.mats[a], &self.mats[b])
            })
        })
    }
}

/// `π_{θ_s}`, the irreducible module whose highest weight is the highest short root.
pub fn short_root_module(cb: &ChevalleyBasis) -> Result<Representation> {
    let w = cb.rs.root_to_weight(&cb.rs.theta_s);
    let lambda: Vec<i64> = w.iter().map(|x| crate::rational::to_i64(x).expect("integral")).collect();
    highest_weight_module(cb, &lambda)
}

/// Natural `n`-dimensional module of `sl_n` (type `A_{n-1}`), basis ordered by decreasing weight.
pub fn natural_type_a(cb: &ChevalleyBasis) -> Result<Representation> {
    if cb.rs.cartan_type.family != crate::rootsys::Family::A {
        return Err(Error::Unsupported("natural module requested outside type A".into()));
    }
    let mut lambda = vec![0; cb.rs.rank()];
    lambda[0] = 1;
    highest_weight_module(cb, &lambda)
}
