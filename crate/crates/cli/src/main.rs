//! Batch front end: parse a problem file, run one command, print a
//! deterministic text or JSON report.
//!
//! Exit codes: 0 success, 1 input error, 2 unsupported-field or
//! inconclusive-search errors.

mod problem;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use binpart::binpart::{
    binomial_part, cellular_decomposition, oracle_degree_bounded, BinOptions,
};
use binpart::explat::exponent_lattice;
use binpart::ideal::Ideal;
use binpart::poly::{Poly, TermOrder};
use binpart::unitchar::unit_lattice;
use binpart::Error;

use problem::{field_header, parse_problem, ProblemFile};

#[derive(Parser)]
#[command(name = "binpart", about = "binomial parts of polynomial ideals", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the binomial part Bin(I)
    Bin {
        /// problem file (or `-` for stdin)
        file: String,
        #[arg(long)]
        json: bool,
        /// only binomials of total degree <= N (restricted scan)
        #[arg(long, value_name = "N")]
        degree_bound: Option<u32>,
        /// radical-ideal shortcut (zero-dimensional input)
        #[arg(long)]
        radical: bool,
        /// run the brute-force oracle to degree N and assert containment
        #[arg(long, value_name = "N")]
        oracle_check: Option<u32>,
        /// seed for the randomized splitting choices
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compute the monomial part Mon(I)
    Mon {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Cellular decomposition of I
    Cellular {
        file: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exponent lattice of the listed field elements
    Explat {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Unit lattice with character of the listed polynomials modulo I
    Unitlat {
        file: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Brute-force binomials of bounded degree (differential oracle)
    Oracle {
        file: String,
        #[arg(long, value_name = "N", default_value_t = 4)]
        degree_bound: u32,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<Error>() {
                Some(Error::UnsupportedField(_))
                | Some(Error::Inconclusive { .. })
                | Some(Error::BudgetExceeded(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load(path: &str) -> anyhow::Result<ProblemFile> {
    let text = read_input(path)?;
    Ok(parse_problem(&text)?)
}

/// Reduced Groebner basis, monic, sorted ascending by leading term.
fn normalized_generators(ideal: &Ideal) -> Vec<Poly> {
    let order = TermOrder::DegRevLex;
    let gb = ideal.groebner_basis(&order);
    let mut gens: Vec<Poly> = gb.iter().map(|g| g.monic(&order)).collect();
    gens.sort_by(|a, b| {
        order.cmp_exp(a.leading_exp(&order).unwrap(), b.leading_exp(&order).unwrap())
    });
    gens
}

fn gens_json(gens: &[Poly]) -> serde_json::Value {
    json!(gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Cmd::Bin { file, json, degree_bound, radical, oracle_check, seed } => {
            if let Some(s) = seed {
                binpart::set_global_seed(s);
            }
            let pf = load(&file)?;
            let ideal = Ideal::new(&pf.ring, pf.ideal_gens.clone());
            let opts = BinOptions { degree_bound, radical };
            let res = binomial_part(&ideal, &opts)?;
            if let Some(delta) = oracle_check {
                for b in oracle_degree_bounded(&ideal, delta) {
                    if !res.ideal.contains(&b) {
                        anyhow::bail!(
                            "oracle check failed: {b} is a binomial of I of degree <= {delta} \
                             but is not in the computed binomial part"
                        );
                    }
                }
            }
            let gens = normalized_generators(&res.ideal);
            if json {
                let prov: serde_json::Map<String, serde_json::Value> = res
                    .provenance
                    .iter()
                    .map(|(g, tag)| (g.to_string(), json!(tag)))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "command": "bin",
                        "ring": ring_json(&pf),
                        "generators": gens_json(&gens),
                        "provenance": prov,
                    })
                );
            } else {
                for g in &gens {
                    println!("{g}");
                }
            }
        }
        Cmd::Mon { file, json } => {
            let pf = load(&file)?;
            let ideal = Ideal::new(&pf.ring, pf.ideal_gens.clone());
            let mon = ideal.monomial_part();
            let gens = normalized_generators(&mon);
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "mon",
                        "ring": ring_json(&pf),
                        "generators": gens_json(&gens),
                    })
                );
            } else {
                for g in &gens {
                    println!("{g}");
                }
            }
        }
        Cmd::Cellular { file, json, seed } => {
            if let Some(s) = seed {
                binpart::set_global_seed(s);
            }
            let pf = load(&file)?;
            let ideal = Ideal::new(&pf.ring, pf.ideal_gens.clone());
            let comps = cellular_decomposition(&ideal)?;
            if json {
                let arr: Vec<serde_json::Value> = comps
                    .iter()
                    .map(|c| {
                        json!({
                            "Y": c.y_set.iter().map(|&v| pf.ring.vars()[v].clone()).collect::<Vec<_>>(),
                            "generators": gens_json(&normalized_generators(&c.ideal)),
                            "nilpotency": c
                                .nilpotency
                                .iter()
                                .map(|(&v, &d)| (pf.ring.vars()[v].clone(), json!(d)))
                                .collect::<serde_json::Map<String, serde_json::Value>>(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "command": "cellular",
                        "ring": ring_json(&pf),
                        "components": arr,
                    })
                );
            } else {
                for (i, c) in comps.iter().enumerate() {
                    let names: Vec<String> =
                        c.y_set.iter().map(|&v| pf.ring.vars()[v].clone()).collect();
                    println!("component {}: Y = {{{}}}", i + 1, names.join(","));
                    for (&v, &d) in &c.nilpotency {
                        println!("  nilpotent: {}^{}", pf.ring.vars()[v], d);
                    }
                    for g in normalized_generators(&c.ideal) {
                        println!("  {g}");
                    }
                }
            }
        }
        Cmd::Explat { file, json } => {
            let pf = load(&file)?;
            let mut elems = Vec::new();
            for e in &pf.elements {
                match e.as_constant() {
                    Some(c) => elems.push(c),
                    None => anyhow::bail!(
                        "explat needs coefficient-field constants; `{e}` involves ring variables"
                    ),
                }
            }
            if elems.is_empty() {
                anyhow::bail!("explat needs an `elements:` section");
            }
            let lat = exponent_lattice(&elems)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "explat",
                        "ring": ring_json(&pf),
                        "lattice": { "basis": lat.basis_i64(), "values": [] },
                    })
                );
            } else {
                print_lattice_rows(&lat.basis_i64());
            }
        }
        Cmd::Unitlat { file, json, seed } => {
            if let Some(s) = seed {
                binpart::set_global_seed(s);
            }
            let pf = load(&file)?;
            let ideal = Ideal::new(&pf.ring, pf.ideal_gens.clone());
            let fpolys: Vec<Poly> = if pf.elements.is_empty() {
                (0..pf.ring.nvars()).map(|i| pf.ring.var(i)).collect()
            } else {
                pf.elements.clone()
            };
            let cl = unit_lattice(&ideal, &fpolys)?;
            let values: Vec<String> = cl.values.iter().map(|v| v.to_string()).collect();
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "unitlat",
                        "ring": ring_json(&pf),
                        "lattice": { "basis": cl.lattice.basis_i64(), "values": values },
                    })
                );
            } else {
                for (row, v) in cl.lattice.basis_i64().iter().zip(&values) {
                    println!(
                        "[{}] -> {}",
                        row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                        v
                    );
                }
            }
        }
        Cmd::Oracle { file, degree_bound, json } => {
            let pf = load(&file)?;
            let ideal = Ideal::new(&pf.ring, pf.ideal_gens.clone());
            let mut found = oracle_degree_bounded(&ideal, degree_bound);
            let order = TermOrder::DegRevLex;
            found.sort_by(|a, b| {
                order.cmp_exp(a.leading_exp(&order).unwrap(), b.leading_exp(&order).unwrap())
            });
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "oracle",
                        "ring": ring_json(&pf),
                        "generators": gens_json(&found),
                    })
                );
            } else {
                for g in &found {
                    println!("{g}");
                }
            }
        }
    }
    Ok(())
}

fn ring_json(pf: &ProblemFile) -> serde_json::Value {
    json!(format!(
        "{}[{}]",
        field_header(pf.ring.field()),
        pf.ring.vars().join(",")
    ))
}

fn print_lattice_rows(rows: &[Vec<i64>]) {
    if rows.is_empty() {
        println!("(zero lattice)");
    }
    for row in rows {
        println!(
            "[{}]",
            row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        );
    }
}
