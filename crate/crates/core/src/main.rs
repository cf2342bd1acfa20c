use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wemono::cusps::{orbit_summary, verify_cusp_subgroups, CuspSubgroup};
use wemono::finquot::Engine;
use wemono::planegeom::lemma65_profile_check;
use wemono::report::{cycle_of, fmt_cycle, Report, Runner, Suite};
use wemono::svg::hull_svg;

#[derive(Parser)]
#[command(name = "wemono", version, about = "Exact checks for the Wiman-Edge monodromy group and its plane cubics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached group enumerations.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Worker threads for enumerations and the case analysis.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Presentation,
    TheoremA,
    Torsion,
    Cusps,
    Resolutions,
    Chern,
    Cover,
    Plane,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one verification suite, or all of them in dependency order.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Print the resolution cycle of a cusp.
    Resolve {
        /// lambda8, lambda24, lambda40 or lambda120.
        cusp: String,
        /// Write the hull figure here.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Run every suite and print one document keyed by claim id.
    Report,
    /// Print the two surviving plane cubics.
    Cubics,
    /// Print the orbits of the monodromy group on the cusp cosets.
    Orbits,
}

fn suites(s: SuiteArg) -> Vec<Suite> {
    match s {
        SuiteArg::Presentation => vec![Suite::Presentation],
        SuiteArg::TheoremA => vec![Suite::TheoremA],
        SuiteArg::Torsion => vec![Suite::Torsion],
        SuiteArg::Cusps => vec![Suite::Cusps],
        SuiteArg::Resolutions => vec![Suite::Resolutions],
        SuiteArg::Chern => vec![Suite::Chern],
        SuiteArg::Cover => vec![Suite::Cover],
        SuiteArg::Plane => vec![Suite::Plane],
        SuiteArg::All => Suite::ALL.to_vec(),
    }
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    match report.first_failure() {
        None => ExitCode::SUCCESS,
        Some(c) => {
            eprintln!("failed: {}", c.id);
            ExitCode::FAILURE
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let engine = Engine { jobs: cli.jobs, cache_dir: cli.cache.clone() };
    let runner = Runner::new(engine);
    match cli.cmd {
        Cmd::Verify { suite } => Ok(emit(&runner.run(&suites(suite)), cli.format)),
        Cmd::Report => Ok(emit(&runner.run(&Suite::ALL), cli.format)),
        Cmd::Resolve { cusp, svg } => {
            CuspSubgroup::by_name(&cusp).map_err(|e| e.to_string())?;
            let c = cycle_of(&cusp)?;
            let can = c.canonical();
            if let Some(path) = &svg {
                std::fs::write(path, hull_svg(&c, &format!("{cusp}: {}", fmt_cycle(&can))))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            match cli.format {
                Format::Text => println!("{}", fmt_cycle(&can)),
                Format::Json => println!(
                    "{}",
                    pretty(&json!({
                        "cusp": cusp,
                        "cycle": can,
                        "vertices": c.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "certificate": c.certificate,
                    }))
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cubics => {
            let d = runner.plane()?;
            let a = runner.cases()?;
            let rows: Vec<_> = a
                .survivors
                .iter()
                .enumerate()
                .map(|(i, (case, f))| {
                    let p = lemma65_profile_check(f, d);
                    json!({
                        "name": format!("cubic{}", i + 1),
                        "case": case,
                        "equation": f.normalized().to_string(),
                        "puncture_counts": p.orbit_counts,
                        "meets": p.meets_q,
                    })
                })
                .collect();
            match cli.format {
                Format::Text => {
                    for r in &rows {
                        println!(
                            "{} (case {}): {}",
                            r["name"].as_str().unwrap(),
                            r["case"].as_str().unwrap(),
                            r["equation"].as_str().unwrap()
                        );
                    }
                }
                Format::Json => println!("{}", pretty(&json!(rows))),
            }
            Ok(if a.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Orbits => {
            let t = runner.cosets()?;
            let q = runner.quotient()?;
            let orbits = orbit_summary(t, q);
            let subs = verify_cusp_subgroups(t, q).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Text => {
                    println!("{} cosets, {} orbits", t.len(), orbits.len());
                    for (i, o) in orbits.iter().enumerate() {
                        let names: Vec<&str> = subs.cusps.iter().filter(|c| c.orbit == i).map(|c| c.cusp).collect();
                        let sub: Vec<&str> = subs.cusps.iter().filter(|c| c.orbit == i).map(|c| c.subgroup).collect();
                        println!(
                            "orbit {i}: size {:>3}, stabilizer {:>3}, representative {:>3}  {} {}",
                            o.size,
                            o.stabilizer_order,
                            o.representative,
                            names.join(","),
                            sub.join(",")
                        );
                    }
                }
                Format::Json => println!("{}", pretty(&json!({"cosets": t.len(), "orbits": orbits, "cusps": subs.cusps}))),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
