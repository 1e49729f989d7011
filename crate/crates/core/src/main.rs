use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use toricy::bhk::{check_transpose, BhkDatum};
use toricy::goodpair::good_pair;
use toricy::hodge::{batyrev_hodge, mirror_test};
use toricy::hypersurface::{exponents_u64, quasismooth_general_wps, regularity_report, FamilyDatum};
use toricy::io::{read_matrix, read_polytope, read_rational_rows};
use toricy::survey::{format_table1, lattice_hull_of_theta, survey, table1, table1_from_records, to_csv};
use toricy::toric::{wps, WeightSystem};
use toricy::Error;

#[derive(Parser)]
#[command(name = "toricy", version, about = "Reflexive polytopes, toric varieties and their Calabi-Yau hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weighted projective spaces.
    Wps {
        #[command(subcommand)]
        cmd: WpsCmd,
    },
    /// Regularity and quasismoothness of the general anticanonical hypersurface of P(w).
    Analyze {
        /// Comma-separated weights, e.g. 1,1,2,3,3,3.
        #[arg(long)]
        weights: WeightSystem,
        #[arg(long, value_enum, default_value_t = Support::Full)]
        support: Support,
        #[arg(long)]
        json: bool,
    },
    /// Good pairs of polytopes.
    Goodpair {
        #[command(subcommand)]
        cmd: GoodpairCmd,
    },
    /// Transposition of exponent matrices.
    Bhk {
        #[command(subcommand)]
        cmd: BhkCmd,
    },
    /// Hodge numbers "h11 h21" of a four-dimensional reflexive polytope.
    Hodge {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Compares the Hodge numbers of a good pair's family with those of its polar pair.
    MirrorTest {
        #[arg(long)]
        delta1: PathBuf,
        #[arg(long)]
        delta2: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classifies all normalized weight systems with bounded entries.
    Survey {
        #[arg(long, default_value_t = 5)]
        dim: usize,
        #[arg(long, default_value_t = 10)]
        max_w: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Worker threads; 1 runs serially.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Cumulative counts of five-dimensional weight systems by bound.
    Table1 {
        #[arg(long, default_value_t = 10)]
        max_w: u64,
    },
}

#[derive(Subcommand)]
enum WpsCmd {
    /// Anticanonical polytope of P(w).
    Theta {
        weights: WeightSystem,
        /// Also list its lattice points.
        #[arg(long)]
        points: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GoodpairCmd {
    /// The polar pair and both families.
    Dual {
        #[arg(long)]
        delta1: PathBuf,
        #[arg(long)]
        delta2: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum BhkCmd {
    /// Dual matrix, dual ambient and dual group.
    Transpose {
        #[arg(long)]
        matrix: PathBuf,
        /// Rows of rational coefficients on the monomials; with the monomials they generate M_G.
        #[arg(long)]
        group_lattice: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Support {
    /// Every lattice point of the anticanonical polytope.
    Full,
    /// Only the vertices of the hull of those points.
    Hull,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Failure of an internal cross-check, reported with exit code 2.
#[derive(Debug)]
struct Inconsistent(String);

impl std::fmt::Display for Inconsistent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "consistency check failed: {}", self.0)
    }
}

impl std::error::Error for Inconsistent {}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn print_json(v: &serde_json::Value) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Wps {
            cmd: WpsCmd::Theta {
                weights,
                points,
                json,
            },
        } => {
            let x = wps(&weights)?;
            let theta = x.anticanonical_polytope()?;
            let hull = lattice_hull_of_theta(&weights)?;
            let flags = hull.classify();
            if json {
                let mut v = json!({
                    "weights": weights,
                    "rays": x.rays().iter().map(|r| strings(r)).collect::<Vec<_>>(),
                    "theta": theta,
                    "hull": hull,
                    "hull_flags": flags,
                });
                if points {
                    v["points"] = json!(theta
                        .lattice_points()
                        .iter()
                        .map(|p| strings(p))
                        .collect::<Vec<_>>());
                }
                print_json(&v)?;
            } else {
                print!("{theta}");
                if points {
                    println!("{} lattice points", theta.lattice_points().len());
                    for p in theta.lattice_points() {
                        println!("{}", strings(p).join(" "));
                    }
                }
                println!(
                    "lattice hull: {} vertices, lattice {}, canonical {}, reflexive {}, qfano {}",
                    hull.vertices().len(),
                    flags.is_lattice,
                    flags.is_canonical,
                    flags.is_reflexive,
                    flags.is_qfano
                );
            }
        }
        Cmd::Analyze {
            weights,
            support,
            json,
        } => {
            let x = wps(&weights)?;
            let theta = x.anticanonical_polytope()?;
            let all = theta.lattice_points().to_vec();
            let newton = toricy::polytope::RationalPolytope::hull_of_integers(&all)?;
            let points = match support {
                Support::Full => all,
                Support::Hull => newton.integer_vertices().context("lattice hull")?,
            };
            let exps = points
                .iter()
                .map(|u| exponents_u64(&x, u))
                .collect::<toricy::Result<Vec<_>>>()?;
            let qs = quasismooth_general_wps(&weights, &exps)?;
            let report = FamilyDatum::with_support(x, newton, points)
                .and_then(|fd| regularity_report(&fd));
            let witness: Option<Vec<u64>> = qs
                .witness
                .as_ref()
                .map(|idx| idx.iter().map(|&i| weights.weights()[i]).collect());
            if json {
                let report_json = match &report {
                    Ok(r) => json!(r),
                    Err(e) => json!({ "error": e.to_string() }),
                };
                print_json(&json!({
                    "weights": weights,
                    "regularity": report_json,
                    "quasismooth": qs.quasismooth,
                    "quasismooth_witness_weights": witness,
                }))?;
            } else {
                println!("weights {weights}");
                match &report {
                    Ok(r) => {
                        println!("irreducible {}", r.irreducible);
                        println!("well_formed {}", r.well_formed);
                        println!("normal_sufficient {:?}", r.normal_sufficient);
                        println!("canonical_newton {}", r.canonical_newton);
                    }
                    Err(e) => println!("regularity unavailable: {e}"),
                }
                println!("quasismooth {}", qs.quasismooth);
                if let Some(w) = witness {
                    println!("witness weights {w:?}");
                }
            }
        }
        Cmd::Goodpair {
            cmd: GoodpairCmd::Dual {
                delta1,
                delta2,
                json,
            },
        } => {
            let gp = good_pair(read_polytope(&delta1)?, read_polytope(&delta2)?)?;
            let polar = gp.polar_pair();
            let (family, dual) = gp.families()?;
            if json {
                print_json(&json!({
                    "polar_pair": { "delta1": polar.delta1(), "delta2": polar.delta2() },
                    "batyrev_case": gp.is_batyrev_case(),
                    "family": family,
                    "dual_family": dual,
                }))?;
            } else {
                println!("polar delta1:\n{}", polar.delta1());
                println!("polar delta2:\n{}", polar.delta2());
                println!("family: {} monomials, {} rays", family.support.len(), family.ambient.rays().len());
                println!("dual family: {} monomials, {} rays", dual.support.len(), dual.ambient.rays().len());
            }
        }
        Cmd::Bhk {
            cmd: BhkCmd::Transpose {
                matrix,
                group_lattice,
                json,
            },
        } => {
            let a = read_matrix(&matrix)?;
            let group = group_lattice.map(|p| read_rational_rows(&p)).transpose()?;
            let bd = BhkDatum::from_matrix(&a, group.as_deref())?;
            let t = bd.transpose()?;
            let ambient = t.ambient()?;
            let dual_group = t.group_elements()?;
            let check = check_transpose(&bd)?;
            if json {
                print_json(&json!({
                    "dual_matrix": t.a_matrix(),
                    "dual_ambient": ambient,
                    "dual_group": dual_group,
                    "check": check,
                }))?;
            } else {
                println!("dual matrix:\n{}", t.a_matrix());
                println!("dual class group: {}", ambient.class_group());
                println!("dual grading:\n{}", ambient.grading());
                println!("dual group: {}", dual_group.structure);
                for g in &dual_group.generators {
                    let s: Vec<String> = g.iter().map(ToString::to_string).collect();
                    println!("  phases ({})", s.join(", "));
                }
                println!("transpose check: {}", if check.holds() { "ok" } else { "failed" });
            }
            if !check.holds() {
                bail!(Inconsistent("transposed data do not match the polar pair".into()));
            }
        }
        Cmd::Hodge { polytope } => {
            println!("{}", batyrev_hodge(&read_polytope(&polytope)?)?);
        }
        Cmd::MirrorTest {
            delta1,
            delta2,
            json,
        } => {
            let gp = good_pair(read_polytope(&delta1)?, read_polytope(&delta2)?)?;
            let t = mirror_test(&gp)?;
            if json {
                print_json(&json!(t))?;
            } else {
                println!(
                    "{}: family {} dual family {}",
                    if t.passes { "pass" } else { "fail" },
                    t.family,
                    t.dual_family
                );
            }
        }
        Cmd::Survey {
            dim,
            max_w,
            format,
            jobs,
        } => {
            let records = survey(dim, max_w, jobs)?;
            let table = table1_from_records(&records, max_w);
            match format {
                Format::Csv => {
                    print!("{}", to_csv(&records)?);
                    eprint!("{}", format_table1(&table));
                }
                Format::Json => print_json(&json!({ "records": records, "table": table }))?,
            }
        }
        Cmd::Table1 { max_w } => {
            print!("{}", format_table1(&table1(max_w)?));
        }
    }
    Ok(())
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<serde_json::Error>()
                .is_some_and(|j| j.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe))
    })
}

fn main() -> ExitCode {
    // usage errors exit with 1; 2 is kept for failed consistency checks
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e.downcast_ref::<Inconsistent>().is_some()
                || matches!(e.downcast_ref::<Error>(), Some(Error::Internal(_)));
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}
