//! sl₂-triples, Dynkin gradings, Lagrangians and associated-variety membership.
use finitew::nilp::{dynkin_grading, lagrangian, m_subalgebra, nilpotent_from_label, variety_membership, NilpotentLabel};
use finitew::rational::fmt_q;
use finitew::rootsys::{ChevalleyBasis, RootSystem};

fn main() -> finitew::Result<()> {
    let cb = ChevalleyBasis::new(&RootSystem::new("A3".parse()?)?);
    for label in ["principal", "minimal", "p=2,2", "p=3,1"] {
        let label: NilpotentLabel = label.parse()?;
        let nd = nilpotent_from_label(&cb, &label)?;
        let dg = dynkin_grading(&cb, &nd)?;
        let dims: Vec<String> = dg.pieces.iter().map(|(ev, b)| format!("{ev}:{}", b.len())).collect();
        let kazhdan: Vec<String> = dg.kazhdan_degrees.iter().map(fmt_q).collect();
        let m = m_subalgebra(&dg, &lagrangian(&cb, &dg, &nd, None));
        println!("{label}: ad h eigenspaces {{{}}}, dim m = {}", dims.join(" "), m.len());
        println!("  Kazhdan degrees of g^e: [{}]", kazhdan.join(", "));
        let mut verdicts = Vec::new();
        for q in 1..=4 {
            verdicts.push(format!("q={q}:{}", variety_membership(&cb, &nd.e, q)?));
        }
        println!("  e in the variety: {}", verdicts.join(" "));
    }
    Ok(())
}
