use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use bgparam::error::{Error, Result};
use bgparam::io::format::{load_endo, load_group, load_param, parse_b};
use bgparam::io::report::{self, Report};
use bgparam::packet::{build_packet_member, Parameter};

#[derive(Parser)]
#[command(name = "rk", about = "B(G)-parametrization bookkeeping", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Directory for JSON reports; RK_OUT_DIR takes precedence. Without either, JSON goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Transporter sets, double cosets and geometric-lemma indices.
    Weyl {
        #[command(flatten)]
        group: GroupArg,
        /// Simple indices of the first Levi; `G` for the whole group.
        #[arg(long, default_value = "")]
        l1: String,
        #[arg(long, default_value = "")]
        l2: String,
        #[arg(long, default_value = "double-coset")]
        kind: String,
    },
    /// Newton point, stratum and κ_G of an element `LEVI:KAPPA`.
    Bset {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        b: String,
    },
    /// Irreducible representations of S_φ up to a height.
    Irr {
        #[arg(long)]
        param: String,
        #[arg(long, default_value_t = 2)]
        height: i64,
    },
    /// Packet member of ρ = (λ, E), fiber over b, or a round-trip sweep.
    Packet {
        #[arg(long)]
        param: String,
        /// `λ` in X*(A_M̂) with optional module index, e.g. `1,0#0`.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value_t = 2)]
        height: i64,
    },
    /// Both sides of the endoscopic character identity on G_b.
    Eci {
        #[arg(long)]
        param: String,
        /// Exponents of s (`0,1/2`) or a TOML file.
        #[arg(long)]
        endo: String,
        #[arg(long, conflicts_with = "rho")]
        b: Option<String>,
        /// Take b from the packet member of this ρ.
        #[arg(long)]
        rho: Option<String>,
    },
    /// Run the bundled worked examples.
    Examples,
}

#[derive(Args)]
struct GroupArg {
    /// Preset name or TOML file.
    #[arg(long)]
    group: String,
}

fn levi(g: &bgparam::root_datum::Group, s: &str) -> Result<Vec<usize>> {
    if s.trim() == "G" {
        return Ok(g.full_levi());
    }
    let mut v = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim().parse::<usize>().map_err(|_| Error::Validation { file: "--l1/--l2".into(), line: 0, msg: format!("bad index `{x}`") })
        })
        .collect::<Result<Vec<_>>>()?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn parse_rho(s: &str) -> Result<(Vec<BigInt>, usize)> {
    let bad = |m: String| Error::Validation { file: "--rho".into(), line: 0, msg: m };
    let (l, e) = s.split_once('#').unwrap_or((s, "0"));
    let lambda = l
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| bad(format!("bad integer `{x}`"))))
        .collect::<Result<Vec<_>>>()?;
    let e = e.trim().parse().map_err(|_| bad(format!("bad module index `{e}`")))?;
    Ok((lambda, e))
}

fn parameter(arg: &str) -> Result<Parameter> {
    let (d, g) = load_param(arg)?;
    Parameter::new(std::sync::Arc::new(g), d)
}

fn run(cmd: &Cmd) -> Result<Vec<(String, Report)>> {
    Ok(match cmd {
        Cmd::Weyl { group, l1, l2, kind } => {
            let (name, g) = load_group(&group.group)?;
            vec![("weyl".into(), report::weyl_report(&name, &g, &levi(&g, l1)?, &levi(&g, l2)?, kind)?)]
        }
        Cmd::Bset { group, b } => {
            let (name, g) = load_group(&group.group)?;
            vec![("bset".into(), report::bset_report(&name, &g, &parse_b(b)?)?)]
        }
        Cmd::Irr { param, height } => vec![("irr".into(), report::irr_report(&parameter(param)?, *height)?)],
        Cmd::Packet { param, rho, b, height } => {
            let p = parameter(param)?;
            let rho = rho.as_deref().map(parse_rho).transpose()?;
            let b = b.as_deref().map(parse_b).transpose()?;
            let r = report::packet_report(&p, rho.as_ref().map(|(l, e)| (l.as_slice(), *e)), b.as_ref(), *height)?;
            vec![("packet".into(), r)]
        }
        Cmd::Eci { param, endo, b, rho } => {
            let p = parameter(param)?;
            let e = load_endo(endo)?;
            let b = match (b, rho) {
                (Some(b), _) => parse_b(b)?,
                (None, Some(r)) => {
                    let (l, k) = parse_rho(r)?;
                    build_packet_member(&p, &l, k)?.b
                }
                (None, None) => {
                    return Err(Error::Validation { file: "--b".into(), line: 0, msg: "eci needs --b or --rho".into() })
                }
            };
            vec![("eci".into(), report::eci_report(&p, &e, &b)?)]
        }
        Cmd::Examples => bgparam::examples::all()?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = std::env::var_os("RK_OUT_DIR").map(PathBuf::from).or(cli.out.clone());
    let reports = match run(&cli.cmd) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut ok = true;
    for (name, r) in &reports {
        ok &= r.ok();
        for (check, pass) in &r.checks {
            if !pass {
                eprintln!("{name}: check failed: {check}");
            }
        }
        match &out {
            Some(dir) => {
                let path = dir.join(format!("{name}.json"));
                if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, r.to_json())) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                println!("{} {}", if r.ok() { "ok  " } else { "FAIL" }, path.display());
            }
            None => print!("{}", r.to_json()),
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
