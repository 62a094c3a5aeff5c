//! Center generators of U(g), their Harish-Chandra images in the variables
//! t_i = ⟨λ + ρ, α_i^∨⟩, and the Jacobian against the product of positive coroots.
use finitew::brst::{casimirs, harish_chandra_image, jacobian_check};
use finitew::brst::center::is_weyl_invariant;
use finitew::rational::fmt_q;
use finitew::rootsys::{ChevalleyBasis, RootSystem};

fn main() -> finitew::Result<()> {
    for ty in ["A1", "A2", "B2"] {
        let cb = ChevalleyBasis::new(&RootSystem::new(ty.parse()?)?);
        let name = |i: u16| format!("t{}", i + 1);
        println!("{ty}:");
        for z in casimirs(&cb)? {
            let p = harish_chandra_image(&cb, &z)?;
            println!("  degree {}: {}  (W-invariant: {})", z.degree, p.render(&name), is_weyl_invariant(&cb, &p));
        }
        let v = jacobian_check(&cb, &casimirs(&cb)?)?;
        println!("  Jacobian {} = {} × ∏ α^∨", v.determinant.render(&name), v.constant.as_ref().map(fmt_q).unwrap_or("?".into()));
    }
    Ok(())
}
