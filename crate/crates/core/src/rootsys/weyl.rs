use std::collections::BTreeSet;

use num_traits::Zero;

use super::{RootSystem, Weight};
use crate::rational::{q, Q};

/// Simple reflection `s_i` on a weight in fundamental coordinates.
pub fn reflect(rs: &RootSystem, v: &[Q], i: usize) -> Weight {
    let vi = v[i].clone();
    if vi.is_zero() {
        return v.to_vec();
    }
    v.iter()
        .enumerate()
        .map(|(j, x)| x - &vi * q(rs.cartan_matrix[j][i]))
        .collect()
}

/// The dominant element of the `W`-orbit of `v`, found by reflecting away
/// negative coordinates until none remain.
pub fn weyl_dominant_representative(rs: &RootSystem, v: &[Q]) -> Weight {
    let mut cur = v.to_vec();
    while let Some(i) = cur.iter().position(|x| x < &Q::zero()) {
        cur = reflect(rs, &cur, i);
    }
    cur
}

/// Full `W`-orbit of a weight by breadth-first closure under simple reflections.
pub fn weyl_orbit(rs: &RootSystem, v: &[Q]) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![v.to_vec()];
    seen.insert(v.to_vec());
    while let Some(w) = frontier.pop() {
        for i in 0..rs.rank() {
            let r = reflect(rs, &w, i);
            if seen.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    seen
}
