//! Minimal-series W-algebras: central charges and simple-module central characters.
use finitew::rational::fmt_q;
use finitew::rootsys::RootSystem;
use finitew::wmodels::{central_charge, enumerate_minimal_series, is_nondegenerate, level_from_pq};

fn main() -> finitew::Result<()> {
    let a1 = RootSystem::new("A1".parse()?)?;
    println!("Virasoro minimal models:");
    for (p, q) in [(3, 2), (3, 4), (5, 4), (5, 6), (7, 6)] {
        let k = level_from_pq(&a1, p, q)?;
        let rec = enumerate_minimal_series(&a1, &k)?;
        println!("  ({p},{q}) k = {}: c = {}, {} modules", fmt_q(&k), fmt_q(&rec.central_charge), rec.count);
    }

    let a2 = RootSystem::new("A2".parse()?)?;
    let k = level_from_pq(&a2, 5, 4)?;
    println!("W₃ at k = {}: nondegenerate {}", fmt_q(&k), is_nondegenerate(&a2, &k));
    let rec = enumerate_minimal_series(&a2, &k)?;
    println!("  c = {}, {} characters from {} weights", fmt_q(&rec.central_charge), rec.count, rec.nondegenerate_weights);
    for ch in &rec.characters {
        let coords: Vec<String> = ch.iter().map(fmt_q).collect();
        println!("  [{}]", coords.join(", "));
    }

    let b2 = RootSystem::new("B2".parse()?)?;
    println!("B2 c(p, q) for q = 5: {}", (6..10).map(|p| fmt_q(&central_charge(&b2, p, 5).unwrap())).collect::<Vec<_>>().join(", "));
    Ok(())
}
