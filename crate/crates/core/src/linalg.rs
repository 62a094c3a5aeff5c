//! Sparse exact linear algebra.
//!
//! Ranks are computed by fraction-free elimination on integer rows. Entries
//! stay in `i128` while they fit and a row is promoted to `BigInt` the first
//! time an operation would overflow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::rational::{lcm_denominators, Q};

/// Row-major sparse matrix with exact rational entries. Rows keep columns sorted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<(usize, Q)>>,
}

impl SparseMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds from unsorted triples, summing duplicates and dropping zeros.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut acc: Vec<HashMap<usize, Q>> = vec![HashMap::new(); rows];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc[r].entry(c).or_insert_with(Q::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|m| {
                let mut row: Vec<(usize, Q)> = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        SparseMat { rows, cols, data }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::new(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c].push((r, v.clone()));
            }
        }
        t
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .par_iter()
            .map(|row| {
                let mut acc: HashMap<usize, Q> = HashMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        *acc.entry(*c).or_insert_with(Q::zero) += a * b;
                    }
                }
                let mut out: Vec<(usize, Q)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                out.sort_by_key(|(c, _)| *c);
                out
            })
            .collect();
        SparseMat { rows: self.rows, cols: other.cols, data }
    }

    /// `self + other`.
    pub fn add(&self, other: &SparseMat) -> SparseMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut acc: std::collections::BTreeMap<usize, Q> = a.iter().cloned().collect();
                for (c, v) in b {
                    *acc.entry(*c).or_insert_with(Q::zero) += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMat { rows: self.rows, cols: self.cols, data }
    }

    /// Submatrix on the given row and column index sets (kept in the given order).
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> SparseMat {
        let mut cmap = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            cmap[old] = new;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<(usize, Q)> = self.data[r]
                    .iter()
                    .filter(|(c, _)| cmap[*c] != usize::MAX)
                    .map(|(c, v)| (cmap[*c], v.clone()))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        SparseMat { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.cols, &self.data)
    }
}

#[derive(Clone, Debug)]
enum Row {
    Small(Vec<(u32, i128)>),
    Big(Vec<(u32, BigInt)>),
}

impl Row {
    fn lead(&self) -> Option<u32> {
        match self {
            Row::Small(v) => v.first().map(|x| x.0),
            Row::Big(v) => v.first().map(|x| x.0),
        }
    }

    fn to_big(&self) -> Vec<(u32, BigInt)> {
        match self {
            Row::Small(v) => v.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect(),
            Row::Big(v) => v.clone(),
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

/// `a*r - b*p` with `r`, `p` sharing a leading column; `None` on overflow.
fn combine_small(r: &[(u32, i128)], p: &[(u32, i128)], a: i128, b: i128) -> Option<Vec<(u32, i128)>> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (c, v) = if j == p.len() || (i < r.len() && r[i].0 < p[j].0) {
            let v = r[i].1.checked_mul(a)?;
            i += 1;
            (r[i - 1].0, v)
        } else if i == r.len() || p[j].0 < r[i].0 {
            let v = p[j].1.checked_mul(b)?.checked_neg()?;
            j += 1;
            (p[j - 1].0, v)
        } else {
            let v = r[i].1.checked_mul(a)?.checked_sub(p[j].1.checked_mul(b)?)?;
            i += 1;
            j += 1;
            (r[i - 1].0, v)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    let g = out.iter().fold(0i128, |g, (_, v)| gcd_i128(g, *v));
    if g > 1 {
        for e in out.iter_mut() {
            e.1 /= g;
        }
    }
    Some(out)
}

fn combine_big(r: &[(u32, BigInt)], p: &[(u32, BigInt)], a: &BigInt, b: &BigInt) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (c, v) = if j == p.len() || (i < r.len() && r[i].0 < p[j].0) {
            i += 1;
            (r[i - 1].0, &r[i - 1].1 * a)
        } else if i == r.len() || p[j].0 < r[i].0 {
            j += 1;
            (p[j - 1].0, -(&p[j - 1].1 * b))
        } else {
            i += 1;
            j += 1;
            (r[i - 1].0, &r[i - 1].1 * a - &p[j - 1].1 * b)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    let g = out.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if g > BigInt::one() {
        for e in out.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
    out
}

fn small_or_big(v: Vec<(u32, BigInt)>) -> Row {
    const LIMIT: i128 = 1 << 62;
    let small: Option<Vec<(u32, i128)>> = v
        .iter()
        .map(|(c, x)| x.to_i128().filter(|y| y.abs() < LIMIT).map(|y| (*c, y)))
        .collect();
    match small {
        Some(s) => Row::Small(s),
        None => Row::Big(v),
    }
}

/// Reduces `row` against the pivots; `Some(row)` if it contributes a new pivot.
fn reduce(mut row: Row, pivots: &HashMap<u32, Row>) -> Option<Row> {
    loop {
        let lead = row.lead()?;
        let Some(p) = pivots.get(&lead) else {
            return Some(row);
        };
        row = match (&row, p) {
            (Row::Small(r), Row::Small(pv)) => {
                let (x, y) = (pv[0].1, r[0].1);
                let g = gcd_i128(x, y);
                match combine_small(r, pv, x / g, y / g) {
                    Some(out) => Row::Small(out),
                    None => big_step(&row, p),
                }
            }
            _ => big_step(&row, p),
        };
    }
}

fn big_step(row: &Row, p: &Row) -> Row {
    let (r, pv) = (row.to_big(), p.to_big());
    let (x, y) = (pv[0].1.clone(), r[0].1.clone());
    let g = x.gcd(&y);
    small_or_big(combine_big(&r, &pv, &(x / &g), &(y / &g)))
}

/// Clears denominators of a rational row and relabels columns by `perm`.
fn integer_row(row: &[(usize, Q)], perm: &[u32]) -> Row {
    let l = lcm_denominators(row.iter().map(|(_, v)| v));
    let mut v: Vec<(u32, BigInt)> = row
        .iter()
        .map(|(c, x)| (perm[*c], (x * Q::from_integer(l.clone())).to_integer()))
        .collect();
    v.sort_by_key(|(c, _)| *c);
    let g = v.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if g > BigInt::one() {
        for e in v.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
    small_or_big(v)
}

/// Exact rank of the row space of `rows` (columns `< cols`).
pub fn rank_of_rows(cols: usize, rows: &[Vec<(usize, Q)>]) -> usize {
    // Sparse columns are eliminated first.
    let mut count = vec![0usize; cols];
    for row in rows {
        for (c, _) in row {
            count[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&c| (count[c], c));
    let mut perm = vec![0u32; cols];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new as u32;
    }
    let mut idx: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    idx.sort_by_key(|&i| (rows[i].len(), i));

    let mut pivots: HashMap<u32, Row> = HashMap::new();
    for i in idx {
        let row = integer_row(&rows[i], &perm);
        if let Some(r) = reduce(row, &pivots) {
            let lead = r.lead().expect("nonzero row");
            pivots.insert(lead, r);
        }
    }
    pivots.len()
}

/// Ranks of the leading `k` rows for each `k` in `cuts` (non-decreasing), in one elimination pass.
pub fn prefix_ranks(cols: usize, rows: &[Vec<(usize, Q)>], cuts: &[usize]) -> Vec<usize> {
    let mut count = vec![0usize; cols];
    for row in rows {
        for (c, _) in row {
            count[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&c| (count[c], c));
    let mut perm = vec![0u32; cols];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new as u32;
    }
    let mut pivots: HashMap<u32, Row> = HashMap::new();
    let mut out = Vec::with_capacity(cuts.len());
    let mut next = 0;
    for &cut in cuts {
        while next < cut.min(rows.len()) {
            if !rows[next].is_empty() {
                if let Some(r) = reduce(integer_row(&rows[next], &perm), &pivots) {
                    pivots.insert(r.lead().expect("nonzero row"), r);
                }
            }
            next += 1;
        }
        out.push(pivots.len());
    }
    out
}

/// Ranks of many matrices, computed in parallel; output order matches input order.
pub fn ranks(mats: &[&SparseMat]) -> Vec<usize> {
    mats.par_iter().map(|m| m.rank()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf, Mat};
    use proptest::prelude::*;

    fn to_sparse(m: &Mat) -> SparseMat {
        let mut s = SparseMat::new(m.rows, m.cols);
        for r in 0..m.rows {
            for c in 0..m.cols {
                if !m[(r, c)].is_zero() {
                    s.data[r].push((c, m[(r, c)].clone()));
                }
            }
        }
        s
    }

    #[test]
    fn small_examples() {
        let m = Mat::from_rows(&[
            vec![q(1), qf(1, 2), q(0)],
            vec![q(2), q(1), q(0)],
            vec![q(0), q(0), qf(-3, 7)],
        ]);
        assert_eq!(to_sparse(&m).rank(), 2);
        assert_eq!(SparseMat::new(4, 5).rank(), 0);
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        // Entries near 2^60 force the BigInt path during elimination.
        let big = q(1 << 60);
        let m = Mat::from_rows(&[
            vec![big.clone(), q(3), q(1)],
            vec![q(7), big.clone(), q(1)],
            vec![q(5), q(11), big.clone()],
        ]);
        assert_eq!(to_sparse(&m).rank(), m.rank());
    }

    #[test]
    fn product_and_restrict() {
        let a = SparseMat::from_triples(2, 2, [(0, 1, q(1))]);
        assert!(a.mul(&a).is_zero());
        let r = a.restrict(&[0], &[1]);
        assert_eq!(r.data[0], vec![(0, q(1))]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn matches_dense_rank(
            rows in 1usize..9,
            cols in 1usize..9,
            seed in proptest::collection::vec((-4i64..5, 1i64..4), 81),
        ) {
            let mut m = Mat::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let (n, d) = seed[r * 9 + c];
                    // sparsify
                    if (r + 2 * c + (n + 4) as usize) % 3 != 0 {
                        m[(r, c)] = qf(n, d);
                    }
                }
            }
            prop_assert_eq!(to_sparse(&m).rank(), m.rank());
            let t = to_sparse(&m).transpose();
            prop_assert_eq!(t.rank(), m.rank());
            let s = to_sparse(&m);
            let cuts: Vec<usize> = (0..=rows).collect();
            let pr = prefix_ranks(cols, &s.data, &cuts);
            for k in 0..=rows {
                prop_assert_eq!(pr[k], rank_of_rows(cols, &s.data[..k]));
            }
        }
    }
}
