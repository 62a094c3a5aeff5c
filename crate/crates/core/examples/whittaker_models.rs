//! Whittaker-model reduction H(m, Y) for two Lagrangian subspaces of g_{1/2},
//! compared with the quantum BRST reduction.
use finitew::brst::{quantum_cohomology, quantum_complex, whittaker_reduction, Truncation};
use finitew::nilp::{dynkin_grading, lagrangian, m_subalgebra, nilpotent_from_label, NilpotentLabel};
use finitew::rational::{fmt_q, Q};
use finitew::rootsys::{ChevalleyBasis, RootSystem};

fn render(cb: &ChevalleyBasis, v: &[Q]) -> String {
    let terms: Vec<String> =
        v.iter().enumerate().filter(|(_, c)| **c != Q::from_integer(0.into())).map(|(a, c)| format!("{}*{}", fmt_q(c), cb.label(a))).collect();
    terms.join(" + ")
}

fn main() -> finitew::Result<()> {
    let cb = ChevalleyBasis::new(&RootSystem::new("A2".parse()?)?);
    let nd = nilpotent_from_label(&cb, &NilpotentLabel::Minimal)?;
    let dg = dynkin_grading(&cb, &nd)?;
    let t = Truncation::new(3, &dg);
    for order in [[0, 1], [1, 0]] {
        let l = lagrangian(&cb, &dg, &nd, Some(&order));
        let m = m_subalgebra(&dg, &l);
        let labels: Vec<String> = l.iter().map(|v| render(&cb, v)).collect();
        let r = whittaker_reduction(&cb, &dg, &nd, &m, t)?;
        println!("Lagrangian span({}): H⁰ {:?}", labels.join(" "), r.h0_series());
    }
    let q = quantum_cohomology(&quantum_complex(&cb, &dg, &nd, t)?);
    println!("quantum BRST:  H⁰ {:?}", q.h0_series());
    Ok(())
}
