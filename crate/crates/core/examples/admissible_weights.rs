//! Admissible levels and the sets Pr^k, Pr^k_nondeg.
use finitew::affine::{enumerate_pr_k, is_admissible_number, is_nondegenerate_weight};
use finitew::rational::{fmt_q, parse_q};
use finitew::rootsys::RootSystem;

fn main() -> finitew::Result<()> {
    let a1 = RootSystem::new("A1".parse()?)?;
    for k in ["-2", "-3/2", "-1/2", "-5/4", "1"] {
        let an = is_admissible_number(&a1, &parse_q(k)?);
        println!("A1 k = {k}: admissible {} {}", an.admissible, an.reason.unwrap_or_default());
    }

    let a2 = RootSystem::new("A2".parse()?)?;
    let k = parse_q("-3/2")?;
    let pr = enumerate_pr_k(&a2, &k)?;
    println!("A2 k = -3/2: |Pr^k| = {}", pr.len());
    for w in &pr {
        let fp: Vec<String> = w.finite_part.iter().map(fmt_q).collect();
        let tag = if is_nondegenerate_weight(&a2, w) { "nondegenerate" } else { "" };
        println!("  λ̄ = ({}) {tag}", fp.join(", "));
    }
    Ok(())
}
