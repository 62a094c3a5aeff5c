//! Cartan data, Coxeter numbers and the (θ|ρ^∨) pairings for a few simple types.
use finitew::rootsys::{langlands_dual, RootSystem};
use finitew::rational::fmt_q;

fn main() -> finitew::Result<()> {
    for ty in ["A2", "B3", "C3", "D4", "G2", "F4"] {
        let rs = RootSystem::new(ty.parse()?)?;
        println!("{ty}: {:?}", rs.cartan_type.cartan_matrix());
        println!(
            "  |Δ+| = {}, h = {}, h^∨ = {}, r^∨ = {}, h^∨ of dual = {}",
            rs.num_positive_roots(),
            rs.coxeter_h,
            rs.dual_coxeter_hv,
            rs.lacing_rv,
            langlands_dual(&rs).dual_coxeter_hv
        );
        let rho: Vec<String> = rs.rho_check().iter().map(fmt_q).collect();
        println!("  ρ^∨ = [{}]", rho.join(", "));
        println!("  (θ|ρ^∨) = {}, (θ_s|ρ^∨) = {}", fmt_q(&rs.theta_rho_check()), fmt_q(&rs.theta_s_rho_check()));
    }
    Ok(())
}
