//! End-to-end acceptance gate: ten numbered criteria, one PASS/FAIL line each.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use finitew::affine::{enumerate_pr_k, enumerate_pr_k_nondeg};
use finitew::brst::{
    casimirs, classical_cohomology, classical_complex, jacobian_check, quantum_cohomology, quantum_complex,
    whittaker_complex, whittaker_reduction, CohomologyReport, GradedComplex, Truncation,
};
use finitew::nilp::{
    dynkin_grading, lagrangian, m_subalgebra, nilpotent_from_label, parse_element, variety_membership, DynkinGrading,
    NilpotentDatum, NilpotentLabel,
};
use finitew::poly::Poly;
use finitew::rational::{q, qf, span_rank, Q};
use finitew::rootsys::{langlands_dual, ChevalleyBasis, RootSystem};
use finitew::wmodels::{central_charge_forms, enumerate_minimal_series, level_from_pq};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rs(ty: &str) -> RootSystem {
    RootSystem::new(ty.parse().unwrap()).unwrap()
}

struct Instance {
    name: &'static str,
    label: &'static str,
    n: usize,
    cb: ChevalleyBasis,
    nd: NilpotentDatum,
    dg: DynkinGrading,
}

impl Instance {
    fn new(name: &'static str, ty: &'static str, label: &'static str, n: usize) -> Self {
        let cb = ChevalleyBasis::new(&rs(ty));
        let nl: NilpotentLabel = label.parse().unwrap();
        let nd = nilpotent_from_label(&cb, &nl).unwrap();
        let dg = dynkin_grading(&cb, &nd).unwrap();
        Instance { name, label, n, cb, nd, dg }
    }

    fn truncation(&self) -> Truncation {
        Truncation::new(self.n, &self.dg)
    }

    fn whittaker_m(&self, order: Option<&[usize]>) -> Vec<Vec<Q>> {
        let l = lagrangian(&self.cb, &self.dg, &self.nd, order);
        m_subalgebra(&self.dg, &l)
    }
}

/// Classical and quantum complexes of one instance with their cohomology.
struct Computed {
    classical: GradedComplex,
    quantum: GradedComplex,
    reports: Option<(CohomologyReport, CohomologyReport)>,
}

/// Coefficients of `∏ 1/(1 − t^{d_i})` up to `t^top`.
fn product_series(degrees: &[usize], top: usize) -> Vec<usize> {
    let mut s = vec![0usize; top + 1];
    s[0] = 1;
    for &d in degrees {
        for i in d..=top {
            s[i] += s[i - d];
        }
    }
    s
}

fn criterion_1(insts: &[Instance], computed: &mut Vec<Computed>) -> Outcome {
    let start = Instant::now();
    for inst in insts {
        let t = inst.truncation();
        let classical = classical_complex(&inst.cb, &inst.dg, &inst.nd, t).map_err(|e| e.to_string())?;
        let quantum = quantum_complex(&inst.cb, &inst.dg, &inst.nd, t).map_err(|e| e.to_string())?;
        let m = inst.whittaker_m(None);
        let whittaker = whittaker_complex(&inst.cb, &inst.dg, &inst.nd, &m, t).map_err(|e| e.to_string())?;
        for (kind, c) in [("classical", &classical), ("quantum", &quantum), ("whittaker", &whittaker)] {
            check(c.square_is_zero(), format!("{} {kind}: d² ≠ 0", inst.name))?;
        }
        computed.push(Computed { classical, quantum, reports: None });
    }
    let el = start.elapsed();
    check(el < Duration::from_secs(60), format!("took {el:?}"))?;
    Ok(format!("d² = 0 on all blocks of 9 complexes in {:.1}s", el.as_secs_f64()))
}

fn criterion_2(insts: &[Instance], computed: &mut [Computed]) -> Outcome {
    for (inst, c) in insts.iter().zip(computed.iter_mut()) {
        let cl = classical_cohomology(&c.classical);
        let qu = quantum_cohomology(&c.quantum);
        for r in [&cl, &qu] {
            check(r.reliable_k2 >= 0, format!("{} {}: empty reliable window", inst.name, r.complex))?;
            check(r.vanishing_holds(), format!("{} {}: H^p ≠ 0 for some p ≠ 0: {:?}", inst.name, r.complex, r.dims))?;
        }
        c.reports = Some((cl, qu));
    }
    Ok("H^p = 0 for p ≠ 0 in the reliable window, classical and quantum".into())
}

fn criterion_3(insts: &[Instance], computed: &[Computed]) -> Outcome {
    let expected: [(&str, Vec<usize>, Vec<usize>); 2] =
        [("A1 principal", vec![1, 0, 1, 0, 1], vec![2]), ("A2 principal", vec![1, 0, 1, 1, 1, 1, 2], vec![2, 3])];
    for (name, listed, degrees) in expected {
        let i = insts.iter().position(|x| x.name == name).unwrap();
        let (cl, qu) = computed[i].reports.as_ref().ok_or("cohomology missing")?;
        let series = qu.h0_series();
        let oracle = product_series(&degrees, series.len() - 1);
        check(series[..listed.len()] == listed[..], format!("{name}: {series:?} vs {listed:?}"))?;
        check(series == oracle, format!("{name}: {series:?} vs product {oracle:?}"))?;
        check(h0(cl) == h0(qu), format!("{name}: classical and quantum H⁰ differ"))?;
    }
    let i = insts.iter().position(|x| x.name == "A2 minimal").unwrap();
    let (cl, qu) = computed[i].reports.as_ref().ok_or("cohomology missing")?;
    check(h0(cl) == h0(qu), "A2 minimal: classical and quantum H⁰ differ")?;
    Ok("gr H⁰ = ∏ 1/(1 − t^{m_i+1}) for A1, A2 principal; classical = quantum degree-wise".into())
}

/// Nonzero `H⁰` dimensions keyed by doubled Kazhdan degree.
fn h0(r: &CohomologyReport) -> BTreeMap<i64, usize> {
    r.h0_by_degree().into_iter().filter(|&(_, d)| d > 0).collect()
}

/// Whittaker and quantum dims agree at every cohomological degree inside both reliable windows.
fn same_dims(a: &CohomologyReport, b: &CohomologyReport) -> bool {
    let top = a.reliable_k2.min(b.reliable_k2);
    let keys: BTreeSet<(i64, i64)> = a.dims.keys().chain(b.dims.keys()).copied().filter(|k| k.1 <= top).collect();
    keys.into_iter().all(|(p, k)| a.dim(p, k) == b.dim(p, k)) && h0(a) == h0(b)
}

fn criterion_4(insts: &[Instance], computed: &[Computed]) -> Outcome {
    for (inst, c) in insts.iter().zip(computed) {
        let (_, qu) = c.reports.as_ref().ok_or("cohomology missing")?;
        let orders: Vec<Option<Vec<usize>>> =
            if inst.label == "minimal" { vec![Some(vec![0, 1]), Some(vec![1, 0])] } else { vec![None] };
        let ms: Vec<Vec<Vec<Q>>> = orders.iter().map(|o| inst.whittaker_m(o.as_deref())).collect();
        if ms.len() == 2 {
            let both: Vec<Vec<Q>> = ms.concat();
            check(span_rank(&both) > ms[0].len(), format!("{}: Lagrangian choices coincide", inst.name))?;
        }
        for m in &ms {
            let w = whittaker_reduction(&inst.cb, &inst.dg, &inst.nd, m, inst.truncation()).map_err(|e| e.to_string())?;
            check(same_dims(&w, qu), format!("{}: whittaker {:?} vs quantum {:?}", inst.name, w.dims, qu.dims))?;
        }
    }
    Ok("Whittaker = quantum for A1, A2 principal and A2 minimal (two Lagrangians)".into())
}

fn criterion_5() -> Outcome {
    let t = |i: u16| Poly::var(i);
    let products = [("A1", t(0)), ("A2", &(&t(0) * &t(1)) * &(&t(0) + &t(1)))];
    for (ty, prod) in products {
        let cb = ChevalleyBasis::new(&rs(ty));
        let gens = casimirs(&cb).map_err(|e| e.to_string())?;
        let v = jacobian_check(&cb, &gens).map_err(|e| e.to_string())?;
        let c = v.determinant.ratio_to(&prod);
        check(!v.determinant.is_zero(), format!("{ty}: zero Jacobian"))?;
        check(matches!(&c, Some(c) if *c != q(0)), format!("{ty}: det = {} not ∝ {}", v.determinant, prod))?;
        check(v.constant == c, format!("{ty}: library constant {:?} vs {:?}", v.constant, c))?;
    }
    Ok("det(∂μ(p_i)/∂t_j) = C ∏ α^∨ with C ≠ 0 for A1, A2".into())
}

/// `Pr^k(A1)` by brute force: `x = ⟨λ̄ + ρ, α^∨⟩ ∈ (1/q)ℤ`, and every integral positive
/// real coroot `±α + nδ` must pair positively with `λ + ρ̂` (slope `p/q` per `δ`).
fn a1_grid_oracle(p: i64, qq: i64) -> BTreeSet<Q> {
    let slope = qf(p, qq);
    let mut out = BTreeSet::new();
    for j in -4 * p * qq..=4 * p * qq {
        let x = qf(j, qq);
        let integral = |v: &Q| v.is_integer();
        let plus_ok = (0..=3 * qq).map(|n| &x + &slope * q(n)).filter(integral).all(|v| v > q(0));
        let minus_ok = (1..=3 * qq).map(|n| -&x + &slope * q(n)).filter(integral).all(|v| v > q(0));
        if plus_ok && minus_ok {
            out.insert(x - q(1));
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let a1 = rs("A1");
    for (p, qq) in [(3, 2), (3, 4), (5, 2), (5, 4)] {
        let k = level_from_pq(&a1, p, qq).map_err(|e| e.to_string())?;
        let all = enumerate_pr_k(&a1, &k).map_err(|e| e.to_string())?;
        let nondeg = enumerate_pr_k_nondeg(&a1, &k).map_err(|e| e.to_string())?;
        check(all.len() as i64 == (p - 1) * qq, format!("({p},{qq}): |Pr^k| = {}", all.len()))?;
        check(nondeg.len() as i64 == (p - 1) * (qq - 1), format!("({p},{qq}): |Pr^k_nondeg| = {}", nondeg.len()))?;
        let got: BTreeSet<Q> = all.iter().map(|w| w.finite_part[0].clone()).collect();
        let oracle = a1_grid_oracle(p, qq);
        check(got == oracle, format!("({p},{qq}): enumeration differs from the grid oracle"))?;
        let closed: BTreeSet<Q> =
            (1..p).flat_map(|r| (0..qq).map(move |s| q(r - 1) - qf(s * p, qq))).collect();
        check(oracle == closed, format!("({p},{qq}): grid oracle differs from (r−1) − s·p/q"))?;
        let got_nd: BTreeSet<Q> = nondeg.iter().map(|w| w.finite_part[0].clone()).collect();
        let closed_nd: BTreeSet<Q> =
            (1..p).flat_map(|r| (1..qq).map(move |s| q(r - 1) - qf(s * p, qq))).collect();
        check(got_nd == closed_nd, format!("({p},{qq}): nondegenerate set differs"))?;
    }
    let el = start.elapsed();
    check(el < Duration::from_secs(30), format!("took {el:?}"))?;
    Ok(format!("|Pr^k| = (p−1)q, |Pr^k_nondeg| = (p−1)(q−1) on 4 pairs in {:.1}s", el.as_secs_f64()))
}

fn criterion_7() -> Outcome {
    let cases = [("A1", 3, 2, Some(1), qf(0, 1)), ("A1", 3, 4, Some(3), qf(1, 2)), ("A1", 5, 4, Some(6), qf(7, 10)), ("A2", 5, 4, None, qf(4, 5))];
    for (ty, p, qq, count, c) in cases {
        let r = rs(ty);
        let k = level_from_pq(&r, p, qq).map_err(|e| e.to_string())?;
        if ty == "A2" {
            check(k == qf(5, 4) - q(3), "A2 level is not 5/4 − 3")?;
        }
        let rec = enumerate_minimal_series(&r, &k).map_err(|e| e.to_string())?;
        let (norm, factored) = central_charge_forms(&r, p, qq);
        check(norm == factored, format!("{ty} ({p},{qq}): closed forms differ"))?;
        check(rec.central_charge == c && norm == c, format!("{ty} ({p},{qq}): c = {}", rec.central_charge))?;
        if let Some(n) = count {
            check(rec.count == n, format!("{ty} ({p},{qq}): count {} ≠ {n}", rec.count))?;
        }
        check(rec.count == rec.characters.len(), "count does not match the character list")?;
        check(rec.characters.contains(&rec.vacuum), format!("{ty} ({p},{qq}): vacuum missing"))?;
    }
    Ok("counts 1, 3, 6 and c = 0, 1/2, 7/10, 4/5; both forms agree; vacuum present".into())
}

fn criterion_8() -> Outcome {
    // (h, h^∨ of the Langlands dual)
    let table = [("A1", 2, 2), ("A2", 3, 3), ("B2", 4, 3), ("G2", 6, 4)];
    for (ty, h, hv_dual) in table {
        let r = rs(ty);
        let rho_check = r.rho_check();
        let pair = |root: &[i64]| r.inner_weights(&r.root_to_weight(root), &rho_check);
        let height = |x: &Vec<i64>| x.iter().sum::<i64>();
        let theta = r.positive_roots.iter().max_by_key(|x| height(x)).unwrap();
        let short = r.positive_roots.iter().map(|x| r.root_norm(x)).min().unwrap();
        let theta_s = r.positive_roots.iter().filter(|x| r.root_norm(x) == short).max_by_key(|x| height(x)).unwrap();
        check(r.coxeter_h == h && langlands_dual(&r).dual_coxeter_hv == hv_dual, format!("{ty}: Coxeter numbers"))?;
        check(pair(theta) == q(h - 1), format!("{ty}: (θ|ρ^∨) = {}", pair(theta)))?;
        check(pair(theta_s) == q(hv_dual - 1), format!("{ty}: (θ_s|ρ^∨) = {}", pair(theta_s)))?;
        check(r.theta_rho_check() == pair(theta) && r.theta_s_rho_check() == pair(theta_s), format!("{ty}: library pairing"))?;
    }
    Ok("(θ|ρ^∨) = h − 1, (θ_s|ρ^∨) = h^∨_{Lg} − 1 for A1, A2, B2, G2".into())
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Jordan-type oracle in the defining representation of `sl_n`: `x` lies in the
/// variety at denominator `q` iff `x` is nilpotent with `x^q = 0`, i.e. its largest
/// Jordan block `m` satisfies `2m − 1 ≤ 2q`, the nilpotency order of `ad x`.
fn jordan_oracle(x: &[Vec<i64>], qd: usize) -> bool {
    let mut pow = x.to_vec();
    for _ in 1..qd {
        pow = mat_mul(&pow, x);
    }
    pow.iter().flatten().all(|&v| v == 0)
}

fn unit(n: usize, i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[i][j] = 1;
    m
}

fn add(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

/// `(type, element spec, q, matrix in the defining representation)`.
fn variety_cases() -> Vec<(&'static str, &'static str, i64, Vec<Vec<i64>>)> {
    let z2 = vec![vec![0; 2]; 2];
    let h2 = vec![vec![1, 0], vec![0, -1]];
    let h3 = vec![vec![2, 0, 0], vec![0, 0, 0], vec![0, 0, -2]];
    let e3 = add(&unit(3, 0, 1), &unit(3, 1, 2));
    vec![
        ("A1", "0", 2, z2),
        ("A1", "e", 2, unit(2, 0, 1)),
        ("A1", "f", 2, unit(2, 1, 0)),
        ("A1", "h", 2, h2),
        ("A2", "e", 2, e3.clone()),
        ("A2", "e", 3, e3),
        ("A2", "minimal", 2, unit(3, 0, 2)),
        ("A2", "h", 3, h3),
    ]
}

fn criterion_9() -> Outcome {
    let mut expect = Vec::new();
    for (ty, spec, qd, mat) in variety_cases() {
        let cb = ChevalleyBasis::new(&rs(ty));
        let x = parse_element(&cb, spec).map_err(|e| e.to_string())?;
        let got = variety_membership(&cb, &x, qd).map_err(|e| e.to_string())?;
        let oracle = jordan_oracle(&mat, qd as usize);
        check(got == oracle, format!("{ty} {spec} q={qd}: {got} vs oracle {oracle}"))?;
        expect.push(got);
    }
    let listed = [true, true, true, false, false, true, true, false];
    check(expect == listed, format!("verdicts {expect:?}"))?;
    Ok("A1 q=2: {0, e, f} in, h out; A2 principal out at q=2, in at q=3; minimal in at q=2".into())
}

fn cli_commands() -> Vec<Vec<String>> {
    let mut cmds: Vec<Vec<&str>> = Vec::new();
    for (ty, label, n) in [("A1", "principal", "6"), ("A2", "principal", "6"), ("A2", "minimal", "4")] {
        for kind in ["--classical", "--quantum", "--whittaker"] {
            cmds.push(vec!["brst", "--type", ty, "--nilpotent", label, "--max-degree", n, kind]);
        }
    }
    cmds.push(vec!["brst", "--type", "A2", "--nilpotent", "minimal", "--max-degree", "4", "--whittaker", "--lagrangian", "1,0"]);
    cmds.push(vec!["jacobian", "--type", "A1"]);
    cmds.push(vec!["jacobian", "--type", "A2"]);
    for k in ["-1/2", "-5/4", "1/2", "-3/4"] {
        cmds.push(vec!["admissible", "--type", "A1", "--k", k]);
    }
    for (ty, p, qq) in [("A1", "3", "2"), ("A1", "3", "4"), ("A1", "5", "4"), ("A2", "5", "4")] {
        cmds.push(vec!["minimal-models", "--type", ty, "--p", p, "--q", qq]);
    }
    cmds.push(vec!["--format", "csv", "minimal-models", "--type", "A1", "--p", "5", "--q", "4"]);
    let mut out: Vec<Vec<String>> = cmds.into_iter().map(|c| c.into_iter().map(String::from).collect()).collect();
    for (ty, spec, qd, _) in variety_cases() {
        out.push(vec!["variety".into(), "--type".into(), ty.into(), "--q".into(), qd.to_string(), "--element".into(), spec.into()]);
    }
    out
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_finitew");
    let cmds = cli_commands();
    for args in &cmds {
        let run = |jobs: &str| {
            Command::new(bin).arg("--jobs").arg(jobs).args(args).output().map_err(|e| e.to_string())
        };
        let (a, b) = (run("1")?, run("8")?);
        check(a.status.success(), format!("{}: {}", args.join(" "), String::from_utf8_lossy(&a.stderr)))?;
        check(a.status == b.status && a.stdout == b.stdout, format!("{}: output depends on --jobs", args.join(" ")))?;
    }
    Ok(format!("{} CLI commands byte-identical under --jobs 1 and --jobs 8", cmds.len()))
}

fn main() {
    let insts = vec![
        Instance::new("A1 principal", "A1", "principal", 6),
        Instance::new("A2 principal", "A2", "principal", 6),
        Instance::new("A2 minimal", "A2", "minimal", 4),
    ];
    let mut computed = Vec::new();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "differential nilpotency", criterion_1(&insts, &mut computed)));
    results.push((2, "cohomology vanishing", criterion_2(&insts, &mut computed)));
    results.push((3, "Hilbert series of H⁰", criterion_3(&insts, &computed)));
    results.push((4, "Whittaker agreement", criterion_4(&insts, &computed)));
    results.push((5, "Jacobian identity", criterion_5()));
    results.push((6, "admissible enumeration", criterion_6()));
    results.push((7, "minimal-series counts and charges", criterion_7()));
    results.push((8, "Coxeter identities", criterion_8()));
    results.push((9, "associated variety", criterion_9()));
    results.push((10, "CLI determinism", criterion_10()));
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(msg) => println!("criterion {n:>2} PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
