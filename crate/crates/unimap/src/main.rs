//! Command-line front end: exact counts, verification sweeps, uniform
//! sampling, Stanley polynomials and constellation counts.

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;
use unimap::bijection::{sample_uniform_map, MapRng};
use unimap::constellation::{induction_check, ps_count_m3, qc_count, MultiType};
use unimap::counting::{self, Composition, Int, Partition};
use unimap::oracle;
use unimap::stanley;

#[derive(Parser)]
#[command(
    name = "unimap",
    about = "Exact enumeration and uniform sampling of unicellular maps",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a counting formula exactly
    Count(CountArgs),
    /// Cross-check formulas against brute-force enumeration
    Verify {
        /// What to verify (only "all" is defined)
        target: String,
        /// Largest edge count for the exhaustive sweeps
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
    },
    /// Sample uniform random unicellular maps, one JSON object per line
    Sample {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Stanley character polynomial F_n, or a character evaluation
    Stanley {
        #[arg(long)]
        n: usize,
        /// Number of p/q variable pairs
        #[arg(long, default_value_t = 2)]
        vars: usize,
        /// Evaluate the normalized character: "p1,p2,..;q1,q2,.."
        #[arg(long)]
        eval: Option<String>,
    },
    /// 3-constellation counts and the length induction
    Constellation {
        /// ps3, qc or induction
        which: String,
        #[arg(long, value_name = "PARTS")]
        lambda1: String,
        #[arg(long, value_name = "PARTS")]
        lambda2: String,
        #[arg(long, value_name = "PARTS")]
        lambda3: String,
    },
    /// White-genus distribution of covered maps, as CSV
    Dist {
        #[arg(long)]
        genus: usize,
        /// Comma-separated list of edge counts
        #[arg(long)]
        edges: String,
    },
}

#[derive(Args)]
struct CountArgs {
    /// Formula name: catalan, lehman-walsh, harer-zagier, cperm, colored,
    /// jackson, goupil-schaeffer, morales-vassilieva, bipartite, covered,
    /// covered-type, mullin
    formula: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    elements: Option<usize>,
    #[arg(long)]
    colors: Option<usize>,
    #[arg(long)]
    black_colors: Option<usize>,
    #[arg(long)]
    white_colors: Option<usize>,
    /// White composition, comma-separated parts
    #[arg(long)]
    white: Option<String>,
    /// Black composition, comma-separated parts
    #[arg(long)]
    black: Option<String>,
    #[arg(long)]
    genus1: Option<usize>,
    #[arg(long)]
    genus2: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn parse_parts(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad part {x:?}: {e}")))
        .collect()
}

fn run_count(args: &CountArgs) -> Result<Int, String> {
    let need = |opt: Option<usize>, name: &str| opt.ok_or(format!("missing --{name}"));
    match args.formula.as_str() {
        "catalan" => Ok(counting::catalan(need(args.n, "n")?)),
        "lehman-walsh" => Ok(counting::epsilon_lw(
            need(args.genus, "genus")?,
            need(args.edges, "edges")?,
        )),
        "harer-zagier" => Ok(counting::epsilon_hz(
            need(args.genus, "genus")?,
            need(args.edges, "edges")?,
        )),
        "cperm" => Ok(counting::cperm_count(
            need(args.genus, "genus")?,
            need(args.elements, "elements")?,
        )),
        "colored" => Ok(counting::colored_count(
            need(args.colors, "colors")?,
            need(args.edges, "edges")?,
        )),
        "jackson" => Ok(counting::jackson_count(
            need(args.black_colors, "black-colors")?,
            need(args.white_colors, "white-colors")?,
            need(args.edges, "edges")?,
        )),
        "goupil-schaeffer" => {
            let i = Composition::new(parse_parts(args.white.as_deref().ok_or("missing --white")?)?);
            let j = Composition::new(parse_parts(args.black.as_deref().ok_or("missing --black")?)?);
            counting::goupil_schaeffer_bil(&i, &j).map_err(|e| e.to_string())
        }
        "morales-vassilieva" => {
            let i = Composition::new(parse_parts(args.white.as_deref().ok_or("missing --white")?)?);
            let j = Composition::new(parse_parts(args.black.as_deref().ok_or("missing --black")?)?);
            counting::morales_vassilieva_bic(&i, &j).map_err(|e| e.to_string())
        }
        "bipartite" => Ok(counting::bipartite_unicellular_count(
            need(args.genus, "genus")?,
            need(args.edges, "edges")?,
        )),
        "covered" => Ok(counting::covered_count(
            need(args.genus, "genus")?,
            need(args.edges, "edges")?,
        )),
        "covered-type" => Ok(counting::covered_by_type(
            need(args.genus1, "genus1")?,
            need(args.genus2, "genus2")?,
            need(args.edges, "edges")?,
        )),
        "mullin" => {
            let n = need(args.edges, "edges")?;
            Ok(counting::catalan(n) * counting::catalan(n + 1))
        }
        other => Err(format!("unknown formula {other:?}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are successful exits; anything else is usage
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Count(args) => {
            let value = run_count(&args)?;
            if args.json {
                let mut extra = Vec::new();
                for (name, v) in [
                    ("n", args.n),
                    ("genus", args.genus),
                    ("edges", args.edges),
                    ("elements", args.elements),
                    ("colors", args.colors),
                    ("black_colors", args.black_colors),
                    ("white_colors", args.white_colors),
                    ("genus1", args.genus1),
                    ("genus2", args.genus2),
                ] {
                    if let Some(v) = v {
                        extra.push(format!("\"{name}\":{v}"));
                    }
                }
                for (name, v) in [("white", &args.white), ("black", &args.black)] {
                    if let Some(v) = v {
                        extra.push(format!("\"{name}\":\"{v}\""));
                    }
                }
                println!(
                    "{{\"formula\":\"{}\",\"args\":{{{}}},\"value\":\"{value}\"}}",
                    args.formula,
                    extra.join(",")
                );
            } else {
                println!("{value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { target, max_edges } => {
            if target != "all" {
                return Err(format!("unknown verify target {target:?}"));
            }
            let rows = oracle::verify_all(max_edges);
            let mut all_ok = true;
            for row in &rows {
                println!(
                    "{:<44} {}  {}",
                    row.name,
                    if row.pass { "pass" } else { "FAIL" },
                    row.detail
                );
                all_ok &= row.pass;
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Sample { genus, edges, count, seed } => {
            let mut rng = MapRng::from_seed(seed);
            for _ in 0..count {
                let map = sample_uniform_map(genus, edges, &mut rng).map_err(|e| e.to_string())?;
                println!("{}", map.to_json());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stanley { n, vars, eval } => {
            match eval {
                None => println!("{}", stanley::stanley_f(n, vars)),
                Some(spec_str) => {
                    let (ps, qs) = spec_str
                        .split_once(';')
                        .ok_or("--eval wants \"p1,p2,..;q1,q2,..\"")?;
                    let p = parse_parts(ps)?;
                    let q = parse_parts(qs)?;
                    if p.len() != q.len() {
                        return Err("p and q lists must have equal length".into());
                    }
                    println!("{}", stanley::character_eval(n, &p, &q));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Constellation { which, lambda1, lambda2, lambda3 } => {
            let l1 = Partition::new(parse_parts(&lambda1)?);
            let l2 = Partition::new(parse_parts(&lambda2)?);
            let l3 = Partition::new(parse_parts(&lambda3)?);
            match which.as_str() {
                "ps3" | "qc" => {
                    let t = MultiType::new(l1, l2, l3).map_err(|e| e.to_string())?;
                    let v = if which == "ps3" {
                        ps_count_m3(&t).map_err(|e| e.to_string())?
                    } else {
                        qc_count(&t).map_err(|e| e.to_string())?
                    };
                    println!("{v}");
                    Ok(ExitCode::SUCCESS)
                }
                "induction" => {
                    let n = l1.size();
                    let (ok, lhs, rhs) = induction_check(l1.len(), l2.len(), l3.len(), n);
                    println!(
                        "lengths ({},{},{}) size {n}: lhs {lhs} rhs {rhs} -> {}",
                        l1.len(),
                        l2.len(),
                        l3.len(),
                        if ok { "pass" } else { "FAIL" }
                    );
                    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
                }
                other => Err(format!("unknown constellation mode {other:?}")),
            }
        }
        Command::Dist { genus, edges } => {
            let ns = parse_parts(&edges)?;
            println!("edges,white_genus,probability");
            for n in ns {
                for (g1, p) in counting::white_genus_distribution(genus, n).iter().enumerate() {
                    println!("{n},{g1},{p}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
