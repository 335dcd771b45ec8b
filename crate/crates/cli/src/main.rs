//! `nearring`: build, check, compare and search finite near-rings.
//!
//! Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage or
//! input error, 3 budget exhausted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use nearring::construct::{
    heisenberg_a_near_ring, last_column_near_ring, m0, order81_f_not_a, twisted_power,
};
use nearring::fields::{dickson9, gf, mult_automorphisms, NearField};
use nearring::format::{parse, render, FormatError};
use nearring::groups::{group_automorphisms, parse_group_spec, FiniteGroup};
use nearring::ring::isomorphic;
use nearring::search::{
    classify_p2, fpf_subgroups, search_near_rings, verify_minimality, Fingerprint, Mode, SearchOptions,
    DEFAULT_AUT_CAP,
};
use nearring::structure::audit::theorem_audit;
use nearring::structure::{ideals, is_simple, j2};
use nearring::{Error, NearRing};

#[derive(Parser)]
#[command(name = "nearring", version, about = "Construct, check and search finite near-rings")]
struct Cli {
    /// Wall-clock budget in seconds for searches.
    #[arg(long, global = true, default_value_t = 600)]
    timeout: u64,
    /// Largest group order searched or analysed.
    #[arg(long, global = true, default_value_t = 128)]
    cap: usize,
    /// Worker threads for searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a near-ring and print it in the .nr format.
    Construct {
        #[command(subcommand)]
        kind: Construction,
        /// Write to this file instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a .nr file and report properties.
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "f,a,ring,nearfield")]
        props: Vec<Prop>,
    },
    /// Check the structural consequences of the f- and a-properties.
    Audit {
        #[arg(long)]
        file: PathBuf,
    },
    /// Decide whether two .nr files describe isomorphic near-rings.
    Iso { a: PathBuf, b: PathBuf },
    /// Search a group for near-rings up to isomorphism.
    Search {
        /// Group specifier such as Z2^4 or Z3^2.
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "f")]
        mode: String,
        /// Identity element of the near-rings (a nonzero index).
        #[arg(long)]
        base: Option<usize>,
        /// Keep near-rings with a single unit in the f-modes.
        #[arg(long)]
        include_vacuous: bool,
        /// Write representatives and a manifest to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the proper f-near-rings on Z_p^2.
    Classify {
        #[arg(long)]
        p2: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that no f-near-ring without the a-property exists below order 81.
    VerifyMinimality,
    /// Summarise a .nr file or a group.
    Info {
        #[arg(long, conflicts_with = "group")]
        file: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Twisted power F^k of a near-field.
    Tim1 {
        /// gf<q> (q a prime power up to 729) or dickson9.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Indices into the multiplicative automorphisms of the field, one
        /// per slot after the first; 0 is the identity.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<usize>,
    },
    /// The order-81 f-near-ring whose units plus zero are not closed.
    Unitex1,
    /// The a-near-ring on the Heisenberg group of order 27.
    Tg1,
    /// The near-ring on Z_p^k whose non-unit maps have one nonzero column.
    Unitex {
        #[arg(long, default_value_t = 3)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// All zero-preserving self-maps of a group.
    M0 {
        #[arg(long)]
        group: String,
    },
    /// The Galois field GF(p^k).
    Gf {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// The Dickson near-field of order 9.
    Dickson9,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    F,
    A,
    Af,
    Ring,
    Nearfield,
    Field,
    Commutative,
    Simple,
}

/// A failed run with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Size { .. }) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Construct { kind, out } => construct(kind, out.as_deref()),
        Command::Check { file, props } => check(file, props, cli.cap),
        Command::Audit { file } => {
            let n = load(file)?;
            let r = theorem_audit(&n, cli.cap);
            print!("{}", r.to_lines());
            Ok(if r.is_clean() { 0 } else { 1 })
        }
        Command::Iso { a, b } => {
            let (x, y) = (load(a)?, load(b)?);
            match isomorphic(&x, &y) {
                Some(map) => {
                    let cells: Vec<String> = map.iter().map(|v| v.to_string()).collect();
                    println!("isomorphic");
                    println!("map {}", cells.join(" "));
                    Ok(0)
                }
                None => {
                    println!("not isomorphic");
                    Ok(1)
                }
            }
        }
        Command::Search {
            group,
            mode,
            base,
            include_vacuous,
            out,
        } => {
            let g = group_from_spec(group)?;
            let mode: Mode = mode.parse()?;
            let mut o = options(cli);
            o.base = *base;
            o.include_vacuous = *include_vacuous;
            let r = search_near_rings(&g, mode, &o)?;
            print!("{r}");
            if let Some(dir) = out {
                r.write_dir(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
            }
            Ok(if r.exhaustive { 0 } else { 3 })
        }
        Command::Classify { p2, out } => {
            let c = classify_p2(*p2, &options(cli))?;
            print!("{c}");
            if let Some(dir) = out {
                c.report.write_dir(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
            }
            Ok(if !c.report.exhaustive {
                3
            } else if c.verdict() {
                0
            } else {
                1
            })
        }
        Command::VerifyMinimality => {
            let r = verify_minimality(&options(cli))?;
            print!("{r}");
            Ok(if r.passed() {
                0
            } else if r.parts.iter().all(|p| p.passed) {
                3
            } else {
                1
            })
        }
        Command::Info { file, group } => match (file, group) {
            (Some(f), _) => info_ring(&load(f)?, cli.cap),
            (None, Some(g)) => info_group(&group_from_spec(g)?, cli.cap),
            (None, None) => Err(Failure::input("info needs --file or --group")),
        },
    }
}

fn options(cli: &Cli) -> SearchOptions {
    SearchOptions {
        timeout: Some(Duration::from_secs(cli.timeout)),
        threads: cli.threads,
        cap: cli.cap,
        structure_cap: cli.cap,
        ..SearchOptions::default()
    }
}

fn group_from_spec(spec: &str) -> Result<FiniteGroup, Failure> {
    Ok(parse_group_spec(spec)?.with_name(spec.trim()))
}

fn load(path: &Path) -> Result<NearRing, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure {
        code: if matches!(e, FormatError::Invalid { .. }) { 1 } else { 2 },
        message: format!("{}: {e}", path.display()),
    })
}

fn field_from_spec(spec: &str) -> Result<NearField, Failure> {
    if spec == "dickson9" {
        return Ok(dickson9());
    }
    let bad = || Failure::input(format!("unknown field {spec:?}; expected gf<q> or dickson9"));
    let q: usize = spec.strip_prefix("gf").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let p = (2..=q).find(|d| q % d == 0).ok_or_else(bad)?;
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(bad());
    }
    Ok(gf(p, k)?)
}

fn construct(kind: &Construction, out: Option<&Path>) -> Outcome {
    let n = match kind {
        Construction::Tim1 { field, k, alpha } => {
            let f = field_from_spec(field)?;
            let autos = mult_automorphisms(&f)?;
            let slots = k.saturating_sub(1);
            let picks: Vec<usize> = if alpha.is_empty() { vec![0; slots] } else { alpha.clone() };
            if picks.len() != slots {
                return Err(Failure::input(format!("--alpha needs {slots} entries for k = {k}")));
            }
            let chosen = picks
                .iter()
                .map(|&i| {
                    autos.get(i).cloned().ok_or_else(|| {
                        Failure::input(format!("alpha index {i} out of range; the field has {}", autos.len()))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            twisted_power(&f, *k, &chosen)?
        }
        Construction::Unitex1 => order81_f_not_a().map_err(|e| Failure {
            code: 1,
            message: format!("order-81 construction failed: {e}"),
        })?,
        Construction::Tg1 => heisenberg_a_near_ring()?,
        Construction::Unitex { p, k } => last_column_near_ring(*p, *k)?,
        Construction::M0 { group } => m0(&group_from_spec(group)?)?,
        Construction::Gf { p, k } => gf(*p, *k)?.into_ring(),
        Construction::Dickson9 => dickson9().into_ring(),
    };
    let text = render(&n);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn check(path: &Path, props: &[Prop], cap: usize) -> Outcome {
    let n = load(path)?;
    println!("valid: true (order {}, one {})", n.order(), n.one());
    for p in props {
        let line = match p {
            Prop::F => {
                let c = n.is_f();
                let mut s = format!("f: {}", yes_no(c.holds));
                if c.vacuous {
                    s.push_str(" (vacuous: one unit)");
                }
                if let Some((u, a)) = c.witness {
                    let _ = write!(s, " (unit {u} fixes {a})");
                }
                s
            }
            Prop::A => {
                let c = n.is_a();
                let mut s = format!("a: {}", yes_no(c.holds));
                if let Some((u, v)) = c.witness {
                    let _ = write!(s, " (units {u} + {v} = {} is not a unit)", n.add(u, v));
                }
                s
            }
            Prop::Af => format!("af: {}", yes_no(n.is_f().holds && n.is_a().holds)),
            Prop::Ring => format!("ring: {}", yes_no(n.is_ring())),
            Prop::Nearfield => format!("nearfield: {}", yes_no(n.is_nearfield())),
            Prop::Field => format!("field: {}", yes_no(n.is_field())),
            Prop::Commutative => format!("commutative: {}", yes_no(n.is_mul_commutative())),
            Prop::Simple => format!("simple: {}", yes_no(is_simple(&n, cap)?)),
        };
        println!("{line}");
    }
    Ok(0)
}

fn info_ring(n: &NearRing, cap: usize) -> Outcome {
    let units = n.units();
    println!("order {}", n.order());
    println!("one {}", n.one());
    println!("units {} [{}]", units.len(), join(units.members()));
    println!("f {}", yes_no(n.is_f().holds));
    println!("a {}", yes_no(n.is_a().holds));
    println!("ring {}", yes_no(n.is_ring()));
    println!("nearfield {}", yes_no(n.is_nearfield()));
    println!("fingerprint {}", Fingerprint::of(n, cap));
    if n.order() <= cap {
        let r = j2(n, cap)?;
        println!("j2 {} [{}]", r.j2.len(), join(&r.j2.elements.to_vec()));
        println!("ideals {}", ideals(n, cap)?.len());
        println!("simple {}", yes_no(is_simple(n, cap)?));
    } else {
        println!("structure skipped: order above cap {cap}");
    }
    Ok(0)
}

fn info_group(g: &FiniteGroup, cap: usize) -> Outcome {
    println!("group {}", g.name());
    println!("order {}", g.order());
    println!("abelian {}", yes_no(g.is_abelian()));
    println!("exponent {}", g.exponent());
    if let Some((p, k)) = g.elementary_abelian_rank() {
        println!("elementary abelian {p}^{k}");
    }
    if g.order() > cap {
        println!("automorphisms skipped: order above cap {cap}");
        return Ok(0);
    }
    match group_automorphisms(g, DEFAULT_AUT_CAP) {
        Ok(a) => println!("automorphisms {}", a.len()),
        Err(_) => println!("automorphisms more than {DEFAULT_AUT_CAP}"),
    }
    if g.is_elementary_abelian() {
        if let Ok(subs) = fpf_subgroups(g, DEFAULT_AUT_CAP) {
            let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
            println!("fpf subgroups {} orders [{}]", subs.len(), join(&orders));
        }
    }
    Ok(0)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
