//! Command-line front end: argument model, dispatch and output rendering.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{enumerate_pr_k, is_admissible_number, is_nondegenerate_weight};
use crate::brst::{
    bigrade_split, casimirs, classical_cohomology, classical_complex, harish_chandra_image, jacobian_check,
    quantum_cohomology, quantum_complex, whittaker_complex, whittaker_reduction, CohomologyReport, Truncation,
};
use crate::error::{Error, Result};
use crate::nilp::{dynkin_grading, lagrangian, m_subalgebra, nilpotent_from_label, parse_element, variety_membership, NilpotentLabel};
use crate::rational::{fmt_q, parse_q};
use crate::rootsys::{CartanType, ChevalleyBasis, RootSystem};
use crate::wmodels::{enumerate_minimal_series, level_from_pq, nondegeneracy};

#[derive(Parser, Debug, Clone)]
#[command(name = "finitew", version, about = "Exact W-algebra, admissible-level and finite BRST computations")]
pub struct Cli {
    /// Worker threads for parallel block computations (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Central charge and simple-module characters of the minimal series at k = p/q − h^∨.
    MinimalModels {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Admissibility of k and the set Pr^k.
    Admissible {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Graded dimensions of a truncated BRST reduction.
    Brst(BrstArgs),
    /// Associated-variety membership of an element of g at denominator q.
    Variety {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// `0`, `e`, `f`, `h`, `minimal`, or a sum such as `e1+2*f12`.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Harish-Chandra images of the center generators and their Jacobian.
    Jacobian {
        #[arg(long = "type")]
        cartan_type: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BrstArgs {
    #[arg(long = "type")]
    pub cartan_type: String,
    /// `principal`, `minimal` or a type-A partition `p=2,1`.
    #[arg(long)]
    pub nilpotent: String,
    /// Kazhdan truncation N.
    #[arg(long)]
    pub max_degree: String,
    #[arg(long, conflicts_with_all = ["quantum", "whittaker"])]
    pub classical: bool,
    #[arg(long, conflicts_with = "whittaker")]
    pub quantum: bool,
    #[arg(long)]
    pub whittaker: bool,
    /// Order in which g_{1/2} basis vectors are offered to the Lagrangian (Whittaker only).
    #[arg(long)]
    pub lagrangian: Option<String>,
}

/// Runs a parsed command and returns the rendered report.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::MinimalModels { cartan_type, p, q } => minimal_models(cartan_type, p, q, cli.format),
        Command::Admissible { cartan_type, k } => admissible(cartan_type, k, cli.format),
        Command::Brst(a) => brst(a, cli.format),
        Command::Variety { cartan_type, q, element } => variety(cartan_type, q, element, cli.format),
        Command::Jacobian { cartan_type } => jacobian(cartan_type, cli.format),
    }
}

fn root_system(s: &str) -> Result<RootSystem> {
    RootSystem::new(s.parse::<CartanType>()?)
}

fn parse_int(name: &str, s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("--{name} expects an integer, got {s:?}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialises");
    s.push('\n');
    s
}

fn minimal_models(ty: &str, p: &str, q: &str, fmt: Format) -> Result<String> {
    let rs = root_system(ty)?;
    let (p, q) = (parse_int("p", p)?, parse_int("q", q)?);
    let k = level_from_pq(&rs, p, q)?;
    let rec = enumerate_minimal_series(&rs, &k)?;
    Ok(match fmt {
        Format::Json => to_json(&rec),
        Format::Csv => rec.to_csv(),
    })
}

fn admissible(ty: &str, k: &str, fmt: Format) -> Result<String> {
    let rs = root_system(ty)?;
    let k = parse_q(k)?;
    let an = is_admissible_number(&rs, &k);
    if !an.admissible {
        return Err(Error::Precondition(format!(
            "k = {} is not admissible: {}",
            fmt_q(&k),
            an.reason.unwrap_or_default()
        )));
    }
    let nd = nondegeneracy(&rs, &k);
    let weights = enumerate_pr_k(&rs, &k)?;
    let flags: Vec<bool> = weights.iter().map(|w| is_nondegenerate_weight(&rs, w)).collect();
    let n_nondeg = flags.iter().filter(|&&b| b).count();
    Ok(match fmt {
        Format::Json => {
            let ws: Vec<Value> = weights
                .iter()
                .zip(&flags)
                .map(|(w, nd)| {
                    json!({
                        "finite_part": w.finite_part.iter().map(fmt_q).collect::<Vec<_>>(),
                        "nondegenerate": nd,
                    })
                })
                .collect();
            to_json(&json!({
                "schema_version": 1,
                "type": rs.cartan_type.to_string(),
                "level": fmt_q(&k),
                "p": an.p,
                "q": an.q,
                "admissible": true,
                "nondegenerate_level": nd.nondegenerate,
                "count": weights.len(),
                "nondegenerate_count": n_nondeg,
                "weights": ws,
            }))
        }
        Format::Csv => {
            let mut out = String::from("type,level,index,finite_part,nondegenerate\n");
            for (i, (w, f)) in weights.iter().zip(&flags).enumerate() {
                let fp: Vec<String> = w.finite_part.iter().map(fmt_q).collect();
                let _ = writeln!(out, "{},{},{},{},{}", rs.cartan_type, fmt_q(&k), i, fp.join(";"), f);
            }
            out
        }
    })
}

fn parse_order(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad --lagrangian order {s:?}"))))
        .collect()
}

fn brst(a: &BrstArgs, fmt: Format) -> Result<String> {
    let rs = root_system(&a.cartan_type)?;
    let label: NilpotentLabel = a.nilpotent.parse()?;
    let n = parse_int("max-degree", &a.max_degree)?;
    let n = usize::try_from(n).map_err(|_| Error::Parse(format!("--max-degree must be >= 0, got {n}")))?;
    let cb = ChevalleyBasis::new(&rs);
    let nd = nilpotent_from_label(&cb, &label)?;
    let dg = dynkin_grading(&cb, &nd)?;
    let t = Truncation::new(n, &dg);
    let mut extra: Vec<(&str, Value)> = Vec::new();
    let report: CohomologyReport = if a.whittaker {
        let order = a.lagrangian.as_deref().map(parse_order).transpose()?;
        let l = lagrangian(&cb, &dg, &nd, order.as_deref());
        let m = m_subalgebra(&dg, &l);
        let c = whittaker_complex(&cb, &dg, &nd, &m, t)?;
        extra.push(("square_is_zero", json!(c.square_is_zero())));
        whittaker_reduction(&cb, &dg, &nd, &m, t)?
    } else if a.quantum {
        let c = quantum_complex(&cb, &dg, &nd, t)?;
        extra.push(("square_is_zero", json!(c.square_is_zero())));
        quantum_cohomology(&c)
    } else {
        let c = classical_complex(&cb, &dg, &nd, t)?;
        extra.push(("square_is_zero", json!(c.square_is_zero())));
        extra.push(("bigrade_split_holds", json!(bigrade_split(&c).holds())));
        classical_cohomology(&c)
    };
    Ok(match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serialises");
            let obj = v.as_object_mut().expect("report is an object");
            obj.insert("type".into(), json!(rs.cartan_type.to_string()));
            obj.insert("nilpotent".into(), json!(label.to_string()));
            for (k, x) in extra {
                obj.insert(k.into(), x);
            }
            to_json(&v)
        }
        Format::Csv => {
            let mut out = String::from("type,nilpotent,complex,degree,kazhdan,dim\n");
            for (&(p, k2), d) in &report.dims {
                let kz = fmt_q(&crate::rational::qf(k2, 2));
                let _ = writeln!(out, "{},{},{},{},{},{}", rs.cartan_type, label, report.complex, p, kz, d);
            }
            out
        }
    })
}

fn variety(ty: &str, q: &str, element: &str, fmt: Format) -> Result<String> {
    let rs = root_system(ty)?;
    let qd = parse_int("q", q)?;
    let cb = ChevalleyBasis::new(&rs);
    let x = parse_element(&cb, element)?;
    let member = variety_membership(&cb, &x, qd)?;
    Ok(match fmt {
        Format::Json => to_json(&json!({
            "schema_version": 1,
            "type": rs.cartan_type.to_string(),
            "q": qd,
            "element": element,
            "coordinates": x.iter().map(fmt_q).collect::<Vec<_>>(),
            "member": member,
        })),
        Format::Csv => format!("type,q,element,member\n{},{},\"{}\",{}\n", rs.cartan_type, qd, element, member),
    })
}

fn jacobian(ty: &str, fmt: Format) -> Result<String> {
    let rs = root_system(ty)?;
    let cb = ChevalleyBasis::new(&rs);
    let gens = casimirs(&cb)?;
    let images = gens.iter().map(|z| harish_chandra_image(&cb, z)).collect::<Result<Vec<_>>>()?;
    let verdict = jacobian_check(&cb, &gens)?;
    let name = |i: u16| format!("t{}", i + 1);
    Ok(match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(&verdict).expect("verdict serialises");
            let obj = v.as_object_mut().expect("verdict is an object");
            obj.insert("type".into(), json!(rs.cartan_type.to_string()));
            obj.insert("degrees".into(), json!(gens.iter().map(|z| z.degree).collect::<Vec<_>>()));
            obj.insert("images".into(), json!(images.iter().map(|p| p.render(&name)).collect::<Vec<_>>()));
            to_json(&v)
        }
        Format::Csv => format!(
            "type,proportional,constant,determinant\n{},{},{},\"{}\"\n",
            rs.cartan_type,
            verdict.holds(),
            verdict.constant.as_ref().map(fmt_q).unwrap_or_default(),
            verdict.determinant.render(&name)
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Result<String> {
        let cli = Cli::try_parse_from(std::iter::once("finitew").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn minimal_models_json() {
        let out = go(&["minimal-models", "--type", "A1", "--p", "3", "--q", "4"]).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["c"], "1/2");
        assert_eq!(v["count"], 3);
    }

    #[test]
    fn critical_level() {
        let e = go(&["admissible", "--type", "A1", "--k", "-2"]).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("critical level"));
    }

    #[test]
    fn parse_failures() {
        assert_eq!(go(&["jacobian", "--type", "X2"]).unwrap_err().exit_code(), 2);
        assert_eq!(go(&["admissible", "--type", "A1", "--k", "1/0"]).unwrap_err().exit_code(), 2);
        let e = go(&["brst", "--type", "A1", "--nilpotent", "principal", "--max-degree", "40"]).unwrap_err();
        assert_eq!(e.exit_code(), 4);
        assert!(Cli::try_parse_from(["finitew", "brst", "--type", "A1", "--nilpotent", "principal", "--max-degree", "2", "--classical", "--quantum"]).is_err());
    }

    #[test]
    fn brst_quantum_series() {
        let out = go(&["brst", "--type", "A1", "--nilpotent", "principal", "--max-degree", "4", "--quantum"]).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["h0_series"], json!([1, 0, 1, 0, 1]));
        assert_eq!(v["square_is_zero"], true);
    }

    #[test]
    fn csv_outputs() {
        let out = go(&["--format", "csv", "variety", "--type", "A1", "--q", "2", "--element", "h"]).unwrap();
        assert_eq!(out, "type,q,element,member\nA1,2,\"h\",false\n");
        let out = go(&["--format", "csv", "admissible", "--type", "A1", "--k", "-1/2"]).unwrap();
        // (p − 1)q = 4 weights
        assert_eq!(out.lines().count(), 1 + 4);
    }
}
