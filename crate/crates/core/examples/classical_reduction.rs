//! Classical BRST reduction for the principal nilpotent of sl₃: the cohomology is
//! concentrated in degree 0 and its Hilbert series is 1/((1 − t²)(1 − t³)).
use finitew::brst::{bigrade_split, classical_cohomology, classical_complex, Truncation};
use finitew::nilp::{dynkin_grading, nilpotent_from_label, NilpotentLabel};
use finitew::rootsys::{ChevalleyBasis, RootSystem};

fn main() -> finitew::Result<()> {
    let cb = ChevalleyBasis::new(&RootSystem::new("A2".parse()?)?);
    let nd = nilpotent_from_label(&cb, &NilpotentLabel::Principal)?;
    let dg = dynkin_grading(&cb, &nd)?;
    let c = classical_complex(&cb, &dg, &nd, Truncation::new(6, &dg))?;
    for p in c.degrees() {
        println!("C^{p}: {} monomials", c.dim(p));
    }
    println!("d² = 0: {}", c.square_is_zero());
    let (minus, plus, cross) = bigrade_split(&c).identities();
    println!("d₋² = 0: {minus}, d₊² = 0: {plus}, d₋d₊ + d₊d₋ = 0: {cross}");
    let r = classical_cohomology(&c);
    println!("H⁰ by Kazhdan degree: {:?}", r.h0_series());
    println!("H^p = 0 for p ≠ 0 up to degree {}/2: {}", r.reliable_k2, r.vanishing_holds());
    Ok(())
}
