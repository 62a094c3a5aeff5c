//! Quantum BRST reduction of U(g): the associated graded of H⁰ for the Kazhdan
//! filtration matches the classical answer degree by degree.
use finitew::brst::{classical_cohomology, classical_complex, quantum_cohomology, quantum_complex, Truncation};
use finitew::nilp::{dynkin_grading, nilpotent_from_label, NilpotentLabel};
use finitew::rootsys::{ChevalleyBasis, RootSystem};

fn main() -> finitew::Result<()> {
    for (ty, label, n) in [("A1", "principal", 6), ("A2", "minimal", 3)] {
        let cb = ChevalleyBasis::new(&RootSystem::new(ty.parse()?)?);
        let label: NilpotentLabel = label.parse()?;
        let nd = nilpotent_from_label(&cb, &label)?;
        let dg = dynkin_grading(&cb, &nd)?;
        let t = Truncation::new(n, &dg);
        let qc = quantum_complex(&cb, &dg, &nd, t)?;
        let quantum = quantum_cohomology(&qc);
        let classical = classical_cohomology(&classical_complex(&cb, &dg, &nd, t)?);
        let step = if quantum.half_steps() { "1/2" } else { "1" };
        println!("{ty} {label}, N = {n}, d² = 0: {}", qc.square_is_zero());
        println!("  quantum   gr H⁰ (step {step}): {:?}", quantum.h0_series());
        println!("  classical H⁰   (step {step}): {:?}", classical.h0_series());
    }
    Ok(())
}
