use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use wreath_core::maximal::{
    find_ab_with_budget, find_b_inv_a_with_budget, prodense_projection_search, verify_certificate,
    Budgets, DescentCertificate, FailureKind, ProdenseCertificate, SearchOutcome,
};
use wreath_core::permgrp::{orbit, stabilizer_generators_capped, DEFAULT_SCHREIER_CAP};
use wreath_core::{
    basilica, checks, norm, Element, Error, Expr, GeneratorSystem, SubgroupHandle, Vertex,
};

/// Exit codes.
const NEGATIVE: u8 = 1;
const PARSE: u8 = 2;
const PRECONDITION: u8 = 3;
const BUDGET: u8 = 4;
const UNVERIFIED: u8 = 5;
const INTERNAL: u8 = 6;

#[derive(Parser)]
#[command(
    name = "wreath",
    version,
    about = "Exact computation in automaton groups"
)]
struct Cli {
    /// Group definition file; the Basilica group when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    system: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Gens {
    /// Comma-separated generator words of the subgroup.
    #[arg(long, default_value = "a,b")]
    gens: String,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = Budgets::default().max_visited)]
    max_visited: usize,
    #[arg(long, default_value_t = Budgets::default().max_schreier)]
    max_schreier: usize,
    #[arg(long, default_value_t = Budgets::default().max_depth)]
    max_depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Root permutation and first-level sections of a word.
    Eval {
        word: String,
        /// Also print the portrait to this depth.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Recompute the identity and property suites and report pass/fail.
    #[command(name = "check-paper", visible_alias = "check")]
    Check {
        /// Run only these suites (repeatable or comma-separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search for a vertex where the subgroup projects onto the whole group.
    Prodense {
        #[command(flatten)]
        gens: Gens,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// Write the certificate to this file as well.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Replay a projection certificate.
    Verify {
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
        /// Subgroup to check against; defaults to the one recorded in the file.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Word norm and a geodesic representative.
    Norm { word: String },
    /// Growth of the ball of radius r.
    Ball {
        radius: usize,
        /// List every class with its norm.
        #[arg(long)]
        table: bool,
    },
    /// Orbit of a vertex with transversal words over the subgroup generators.
    Orbit {
        #[command(flatten)]
        gens: Gens,
        vertex: String,
    },
    /// Schreier generators of a vertex stabilizer.
    Stab {
        #[command(flatten)]
        gens: Gens,
        vertex: String,
        #[arg(long, default_value_t = DEFAULT_SCHREIER_CAP)]
        cap: usize,
    },
    /// Order of the action of a subgroup on a level.
    Order {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        level: usize,
    },
    /// Vertex and power of two at which a power of g has section ab.
    FindAb {
        word: String,
        #[arg(long, default_value_t = Budgets::default().max_visited)]
        max_visited: usize,
    },
    /// Vertex and power of two at which a power of g has section b⁻¹a.
    FindBinva {
        word: String,
        #[arg(long, default_value_t = Budgets::default().max_visited)]
        max_visited: usize,
    },
    /// Element of the rigid stabilizer of v with section w at v.
    Lift { word: String, vertex: String },
    /// Image in Z².
    Abelianize { word: String },
    /// Image in the Heisenberg group, as (p,q,r) for a^p b^q c^r.
    Heis { word: String },
    /// Coordinates in B'/B''.
    Bprime { word: String },
    /// Labels of the portrait down to the given depth.
    Portrait {
        word: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Emit a Graphviz description.
        #[arg(long)]
        dot: bool,
    },
}

enum Failure {
    Engine(Error),
    Io(String),
    /// A computed negative answer, already printed.
    Negative,
    Unverified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_system(cli.system.as_deref()).and_then(|sys| run(&sys, cli.command));
    match result {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = match f {
                Failure::Negative => NEGATIVE,
                Failure::Unverified => {
                    emit("verification failed\n");
                    UNVERIFIED
                }
                Failure::Io(msg) => {
                    eprintln!("error: {msg}");
                    PARSE
                }
                Failure::Engine(e) => {
                    eprintln!("error: {e}");
                    match e {
                        Error::Parse { .. } | Error::Input(_) => PARSE,
                        Error::Precondition(_) => PRECONDITION,
                        Error::Budget(_) => BUDGET,
                        Error::Internal(_) => INTERNAL,
                    }
                }
            };
            ExitCode::from(code)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_system(path: Option<&std::path::Path>) -> Result<Arc<GeneratorSystem>, Failure> {
    match path {
        None => Ok(basilica::system()),
        Some(p) => Ok(GeneratorSystem::parse_definition(&read(p)?)?),
    }
}

fn budgets(b: &BudgetArgs) -> Budgets {
    Budgets {
        max_visited: b.max_visited,
        max_schreier: b.max_schreier,
        max_depth: b.max_depth,
    }
}

fn root_label(g: &Element) -> String {
    let p = g.root_perm();
    if g.system().alphabet() == 2 {
        return if p.is_identity() { "1" } else { "σ" }.to_string();
    }
    p.to_string()
}

fn descent_line(c: &DescentCertificate) -> String {
    format!(
        "vertex={} k={} target={} visited={}\n",
        c.vertex(),
        c.exponent_log,
        c.target,
        c.visited
    )
}

fn run(sys: &Arc<GeneratorSystem>, command: Command) -> Outcome {
    let elem = |w: &str| Element::parse(sys, w);
    let vertex = |v: &str| Vertex::parse(v, sys.alphabet());
    let subgroup = |g: &Gens| SubgroupHandle::parse(sys, &g.gens);
    let mut out = String::new();
    match command {
        Command::Eval { word, depth } => {
            let g = elem(&word)?;
            let secs: Vec<String> = g.sections().iter().map(Element::to_string).collect();
            let _ = writeln!(
                out,
                "root={} sections=({})",
                root_label(&g),
                secs.join(", ")
            );
            if let Some(d) = depth {
                out.push_str(&g.portrait(d).to_string());
            }
        }
        Command::Check { only, seed, json } => {
            let report = checks::run_checks(sys, &only, seed)?;
            if json {
                let text = serde_json::to_string_pretty(&report)
                    .map_err(|e| Failure::Io(e.to_string()))?;
                emit(&format!("{text}\n"));
            } else {
                emit(&report.to_text());
            }
            return if report.all_passed() {
                Ok(out)
            } else {
                Err(Failure::Negative)
            };
        }
        Command::Prodense {
            gens,
            budgets: b,
            out: file,
        } => {
            let h = subgroup(&gens)?;
            match prodense_projection_search(&h, budgets(&b))? {
                SearchOutcome::Certificate(c) => {
                    let text = c.to_text();
                    if let Some(path) = file {
                        std::fs::write(&path, &text)
                            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    }
                    out.push_str(&text);
                }
                SearchOutcome::Failure(f) => {
                    emit(&format!("{f}\n"));
                    return Err(match f.kind {
                        FailureKind::NotInLattice(_) => Failure::Negative,
                        FailureKind::Budget(msg) => Failure::Engine(Error::Budget(msg)),
                    });
                }
            }
        }
        Command::Verify { cert, gens } => {
            let c: ProdenseCertificate = read(&cert)?.parse()?;
            let gens = gens.unwrap_or_else(|| c.subgroup.join(","));
            let h = SubgroupHandle::parse(sys, &gens)?;
            if !verify_certificate(&h, &c)? {
                return Err(Failure::Unverified);
            }
            let _ = writeln!(out, "verified vertex={}", c.vertex);
        }
        Command::Norm { word } => {
            let g = elem(&word)?;
            let geodesic = Element::new(sys, norm::geodesic_rep(&g));
            let _ = writeln!(out, "norm={} geodesic={geodesic}", norm::norm(&g));
        }
        Command::Ball { radius, table } => {
            let ball = norm::ball(sys, radius);
            if table {
                out.push_str(&ball.to_table());
            } else {
                let _ = writeln!(out, "radius={radius} size={}", ball.len());
                let _ = writeln!(out, "spheres {:?}", ball.sphere_sizes());
                let _ = writeln!(out, "growth {:?}", ball.growth());
            }
        }
        Command::Orbit { gens, vertex: v } => {
            let table = orbit(&subgroup(&gens)?, &vertex(&v)?);
            let _ = writeln!(out, "size={}", table.len());
            out.push_str(&table.to_text());
        }
        Command::Stab {
            gens,
            vertex: v,
            cap,
        } => {
            let h = subgroup(&gens)?;
            for s in stabilizer_generators_capped(&h, &vertex(&v)?, cap) {
                let _ = writeln!(out, "{}\t{}", Expr::from_word(&s.word), s.element);
            }
        }
        Command::Order { gens, level } => {
            let _ = writeln!(out, "{}", subgroup(&gens)?.level_order(level));
        }
        Command::FindAb { word, max_visited } => {
            out = descent_line(&find_ab_with_budget(&elem(&word)?, max_visited)?);
        }
        Command::FindBinva { word, max_visited } => {
            out = descent_line(&find_b_inv_a_with_budget(&elem(&word)?, max_visited)?);
        }
        Command::Lift { word, vertex: v } => {
            let _ = writeln!(
                out,
                "{}",
                basilica::lift_section(&elem(&word)?, &vertex(&v)?)?
            );
        }
        Command::Abelianize { word } => {
            let _ = writeln!(out, "{}", basilica::ab_image(&elem(&word)?)?);
        }
        Command::Heis { word } => {
            let _ = writeln!(out, "{}", basilica::heis_image(&elem(&word)?)?);
        }
        Command::Bprime { word } => {
            let _ = writeln!(out, "{}", basilica::bprime_coords(&elem(&word)?)?);
        }
        Command::Portrait { word, depth, dot } => {
            let p = elem(&word)?.portrait(depth);
            out = if dot { p.to_dot() } else { p.to_string() };
        }
    }
    Ok(out)
}
