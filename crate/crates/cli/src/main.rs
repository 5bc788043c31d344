//! Batch command-line front end: build catalog groups, run analysis reports,
//! execute the table-verification suite, assemble/decompose from JSON, and
//! import/export groups.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or i/o error.

use clap::{Parser, Subcommand, ValueEnum};
use rrgroup::analysis;
use rrgroup::catalog;
use rrgroup::jsonio;
use rrgroup::matgroup::{set_element_cap, MatrixGroup};
use rrgroup::verify::{verify_tables, Suite, Tier};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rrg", version, about = "exact engine for reflection-rotation groups")]
struct Cli {
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// element enumeration cap (also RRG_MAX_ELEMENTS)
    #[arg(long, global = true)]
    max_elements: Option<u128>,
    /// worker threads for independent checks
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// seed for randomized internals; the engine is deterministic, the flag
    /// is accepted for interface stability
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a catalog group and report its order
    Build {
        #[arg(long)]
        group: String,
    },
    /// Full structural report for a group
    Info {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        file: Option<String>,
    },
    /// Run the table-verification suite
    VerifyTables {
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
    },
    /// Check that isotropy data is generated by reflections and rotations
    IsotropyCheck {
        #[arg(long)]
        group: String,
    },
    /// The plane system of a rotation group's involutive rotations
    PlaneSystem {
        #[arg(long)]
        group: String,
    },
    /// Assemble a reflection-rotation group from triple data (JSON file)
    Assemble {
        #[arg(long)]
        file: String,
    },
    /// Decompose a group into triple data
    Decompose {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        file: Option<String>,
    },
    /// Export a group (optionally all elements, one matrix per line)
    Export {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = false)]
        elements: bool,
    },
    /// List the catalog name grammar
    CatalogList,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Fast,
    Full,
}

fn load_group(group: &Option<String>, file: &Option<String>) -> anyhow::Result<MatrixGroup> {
    match (group, file) {
        (Some(name), None) => Ok(catalog::catalog_lookup(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let v: serde_json::Value = serde_json::from_str(&text)?;
            Ok(jsonio::group_from_json(&v)?)
        }
        _ => anyhow::bail!("exactly one of --group or --file is required"),
    }
}

fn print_suite(suite: &Suite, format: Format) {
    match format {
        Format::Text => {
            for c in &suite.checks {
                println!(
                    "[{}] {:<42} expected {:<12} computed {:<12} ({} ms)",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    c.expected,
                    c.computed,
                    c.millis
                );
            }
            let passed = suite.checks.iter().filter(|c| c.pass).count();
            println!("{} / {} checks passed", passed, suite.checks.len());
        }
        Format::Json => {
            let v = json!({
                "checks": suite.checks.iter().map(|c| json!({
                    "name": c.name,
                    "expected": c.expected,
                    "computed": c.computed,
                    "status": if c.pass { "pass" } else { "fail" },
                    "elapsed_ms": c.millis,
                })).collect::<Vec<_>>(),
                "passed": suite.passed(),
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(cap) = cli.max_elements {
        set_element_cap(cap);
    }
    let _ = cli.seed; // deterministic engine
    match cli.command {
        Command::Build { group } => {
            let g = catalog::catalog_lookup(&group)?;
            let order = g.order()?;
            match cli.format {
                Format::Text => {
                    println!("{}: dim {}, conductor {}, order {}", group, g.dim, g.conductor, order);
                    if let Some(expect) = g.expected_order {
                        println!(
                            "catalog order {} ({})",
                            expect,
                            if expect == order { "verified" } else { "MISMATCH" }
                        );
                    }
                }
                Format::Json => {
                    let v = json!({
                        "name": group,
                        "dim": g.dim,
                        "conductor": g.conductor,
                        "order": order.to_string(),
                        "catalog_order_verified": g.expected_order.map(|e| e == order),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            if let Some(expect) = g.expected_order {
                if expect != order {
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Info { group, file } => {
            let g = load_group(&group, &file)?;
            let report = analysis::analyze(&g)?;
            match cli.format {
                Format::Text => {
                    println!("order               {}", report.order);
                    println!("reflections         {}", report.reflections);
                    println!("rotations           {}", report.rotations);
                    println!("rotation orders     {:?}", report.rotation_orders);
                    println!("commutant dimension {}", report.commutant_dim);
                    println!("component dims      {:?}", report.components);
                    for (name, pass) in &report.checks {
                        println!("check {:<34} {}", name, if *pass { "pass" } else { "fail" });
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&jsonio::report_to_json(&report)).unwrap()
                    );
                }
            }
            if report.checks.values().any(|v| !v) {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTables { tier } => {
            let tier = match tier {
                TierArg::Fast => Tier::Fast,
                TierArg::Full => Tier::Full,
            };
            let suite = if cli.jobs > 1 {
                use rayon::prelude::*;
                let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
                let defs = rrgroup::verify::check_definitions(tier);
                let checks =
                    pool.install(|| defs.par_iter().map(|d| d.execute()).collect::<Vec<_>>());
                Suite { checks }
            } else {
                verify_tables(tier)
            };
            print_suite(&suite, cli.format);
            if suite.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::IsotropyCheck { group } => {
            let g = catalog::catalog_lookup(&group)?;
            let (ok, failures) = analysis::isotropy_rotation_check(&g, rrgroup::matgroup::element_cap())?;
            match cli.format {
                Format::Text => {
                    println!(
                        "isotropy rotation check for {}: {}",
                        group,
                        if ok { "pass" } else { "FAIL" }
                    );
                    if !ok {
                        println!("{} failing class representatives", failures.len());
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "group": group,
                            "pass": ok,
                            "failures": failures.len(),
                        }))
                        .unwrap()
                    );
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::PlaneSystem { group } => {
            let g = catalog::catalog_lookup(&group)?;
            let inv = analysis::inventory(&g, rrgroup::matgroup::element_cap())?;
            let ps = analysis::plane_system(&g, &inv)?;
            match cli.format {
                Format::Text => {
                    println!("{}: {} planes, closed under its half-turns", group, ps.planes.len());
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "group": group,
                            "planes": ps.planes.len(),
                            "closed": true,
                        }))
                        .unwrap()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Assemble { file } => {
            let text = std::fs::read_to_string(&file)?;
            let v: serde_json::Value = serde_json::from_str(&text)?;
            let data = jsonio::assembly_from_json(&v)?;
            let g = data.assemble()?;
            let order = g.order()?;
            match cli.format {
                Format::Text => {
                    println!("assembled group: dim {}, order {}", g.dim, order);
                }
                Format::Json => {
                    let mut out = jsonio::group_to_json(&g);
                    out["order"] = json!(order.to_string());
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { group, file } => {
            let g = load_group(&group, &file)?;
            let data = rrgroup::assembly::decompose(&g)?;
            match cli.format {
                Format::Text => {
                    println!("{} triples, {} classes", data.triples.len(), data.classes.len());
                    for (i, t) in data.triples.iter().enumerate() {
                        println!(
                            "triple {i}: |G|={} |H|={} |F|={}",
                            t.g.order()?,
                            t.h.order()?,
                            t.f.order()?
                        );
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&jsonio::assembly_to_json(&data)).unwrap()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { group, elements } => {
            let g = catalog::catalog_lookup(&group)?;
            println!("{}", serde_json::to_string(&jsonio::group_to_json(&g)).unwrap());
            if elements {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                for el in g.elements(rrgroup::matgroup::element_cap())? {
                    writeln!(
                        lock,
                        "{}",
                        serde_json::to_string(&jsonio::matrix_to_json(&el.matrix)).unwrap()
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CatalogList => {
            for (name, what) in catalog::catalog_listing() {
                println!("{:<36} {}", name, what);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[cfg(unix)]
unsafe fn restore_default_sigpipe() {
    libc::signal(libc::SIGPIPE, libc::SIG_DFL);
}

fn main() -> ExitCode {
    // die quietly when a pipe closes mid-stream (e.g. `rrg export | head`)
    #[cfg(unix)]
    unsafe {
        restore_default_sigpipe();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
