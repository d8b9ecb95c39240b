//! Batch front end: named verification suites and single-quantity
//! computation, all in exact arithmetic. Every number printed is a rational
//! `num/den` (integers print without the denominator); there is no floating
//! point anywhere in the binary.
//!
//! Exit codes: 0 success, 1 at least one FAIL report line, 2 usage error.

use chromcong_core::arith::{is_prime, Rational};
use chromcong_core::chromatic::{bq_sum, height_sum, profile_from_finite_group, GroupProfile};
use chromcong_core::groups::{group_by_name, hall_gen_count, tuple_class_sum, AbelianPType};
use chromcong_core::moduli::{chi_orb_closed, chi_orb_punctured, chi_q, count_residue_tuples};
use chromcong_core::report::{exit_code, render_reports, ReportFormat};
use chromcong_core::suites::{run_suite, SuiteOptions};
use chromcong_core::{bernoulli, zeta_neg};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "chromcong",
    version,
    about = "Exact verification of Euler-characteristic congruences and Bernoulli numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run a named verification suite; prints one report line per check.
    Verify {
        /// One of: finite-groups, hall, bernoulli, prop61, thm611, chi-q, section7, all
        suite: String,
        /// Restrict to one prime
        #[arg(long)]
        p: Option<u64>,
        /// Restrict to one tuple length / height (suite-dependent)
        #[arg(long)]
        n: Option<u32>,
        /// Restrict to one genus
        #[arg(long)]
        u: Option<u32>,
        /// Upper genus bound for sweeps
        #[arg(long = "u-max")]
        u_max: Option<u32>,
        /// Restrict to one catalog group (e.g. S3, D8, C5xC5)
        #[arg(long)]
        group: Option<String>,
        /// Report format: text or jsonl
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Compute one exact quantity and print it as `num/den`.
    Compute {
        /// One of: bernoulli, zeta, chi-orb, chi-q, N, hall, tuple-sum,
        /// height-sum, bq-sum, residue
        quantity: String,
        /// Prime; when given, the value's residue in Q/Z_(p) is appended
        #[arg(long)]
        p: Option<u64>,
        /// Tuple length / height
        #[arg(long)]
        n: Option<u32>,
        /// Genus (zeta index / closed-surface genus)
        #[arg(long)]
        u: Option<u32>,
        /// Bernoulli index
        #[arg(long)]
        m: Option<u32>,
        /// Quotient genus for chi-orb
        #[arg(long)]
        v: Option<u32>,
        /// Marked points for chi-orb
        #[arg(long)]
        s: Option<u32>,
        /// Modulus for N
        #[arg(long)]
        k: Option<u64>,
        /// Comma-separated divisors for N (omit for the empty tuple)
        #[arg(long)]
        ls: Option<String>,
        /// Abelian p-type as comma-separated lambdas, e.g. 2,1
        #[arg(long = "type")]
        ptype: Option<String>,
        /// Rational input for residue, e.g. 5/3 or -691/2730
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
        /// Catalog group name
        #[arg(long)]
        group: Option<String>,
        /// Subgroup profile file (chromatic interchange format)
        #[arg(long)]
        profile: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Commands::Verify {
            suite,
            p,
            n,
            u,
            u_max,
            group,
            format,
        } => run_verify(
            &suite,
            SuiteOptions {
                p,
                n,
                u,
                u_max,
                group,
            },
            &format,
        ),
        Commands::Compute {
            quantity,
            p,
            n,
            u,
            m,
            v,
            s,
            k,
            ls,
            ptype,
            value,
            group,
            profile,
        } => run_compute(ComputeArgs {
            quantity,
            p,
            n,
            u,
            m,
            v,
            s,
            k,
            ls,
            ptype,
            value,
            group,
            profile,
        }),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run_verify(suite: &str, opts: SuiteOptions, format: &str) -> Result<ExitCode, String> {
    let format: ReportFormat = format.parse()?;
    let reports = run_suite(suite, &opts).map_err(|e| e.to_string())?;
    print!("{}", render_reports(&reports, format));
    Ok(ExitCode::from(u8::try_from(exit_code(&reports)).unwrap()))
}

struct ComputeArgs {
    quantity: String,
    p: Option<u64>,
    n: Option<u32>,
    u: Option<u32>,
    m: Option<u32>,
    v: Option<u32>,
    s: Option<u32>,
    k: Option<u64>,
    ls: Option<String>,
    ptype: Option<String>,
    value: Option<String>,
    group: Option<String>,
    profile: Option<PathBuf>,
}

fn run_compute(args: ComputeArgs) -> Result<ExitCode, String> {
    let p = match args.p {
        Some(p) if !is_prime(p) => return Err(format!("--p {p} is not prime")),
        other => other,
    };
    let value = match args.quantity.as_str() {
        "bernoulli" => {
            let m = args.m.ok_or("bernoulli requires --m")?;
            bernoulli(m)
        }
        "zeta" => {
            let u = args.u.ok_or("zeta requires --u")?;
            if u < 1 {
                return Err("zeta requires --u >= 1".into());
            }
            zeta_neg(u)
        }
        "chi-orb" => match (args.v, args.s, args.u) {
            (Some(v), Some(s), None) => chi_orb_punctured(v, s),
            (None, None, Some(u)) if u >= 2 => chi_orb_closed(u),
            (None, None, Some(_)) => return Err("chi-orb with --u requires u >= 2".into()),
            _ => return Err("chi-orb requires either --v and --s, or --u".into()),
        },
        "chi-q" => {
            let u = args.u.ok_or("chi-q requires --u")?;
            if u < 2 {
                return Err("chi-q requires --u >= 2".into());
            }
            Rational::integer(chi_q(u))
        }
        "N" => {
            let k = args.k.ok_or("N requires --k")?;
            let ls = parse_u64_list(args.ls.as_deref())?;
            for &l in &ls {
                if l == 0 || l == k || k % l != 0 {
                    return Err(format!("l = {l} is not a proper divisor of k = {k}"));
                }
            }
            Rational::integer(count_residue_tuples(k, &ls))
        }
        "hall" => {
            let p = p.ok_or("hall requires --p")?;
            let n = args.n.ok_or("hall requires --n")?;
            if n < 1 {
                return Err("hall requires --n >= 1".into());
            }
            let lambdas: Vec<u32> = parse_u64_list(args.ptype.as_deref())?
                .into_iter()
                .map(|l| u32::try_from(l).map_err(|_| format!("lambda {l} out of range")))
                .collect::<Result<_, _>>()?;
            if lambdas.contains(&0) {
                return Err("lambdas must be >= 1".into());
            }
            Rational::integer(hall_gen_count(&AbelianPType::new(p, lambdas), n))
        }
        "tuple-sum" => {
            let g = group_by_name(&args.group.ok_or("tuple-sum requires --group")?)
                .map_err(|e| e.to_string())?;
            let p = p.ok_or("tuple-sum requires --p")?;
            let n = args.n.ok_or("tuple-sum requires --n")?;
            if !(1..=3).contains(&n) {
                return Err("tuple-sum supports --n in 1..=3".into());
            }
            tuple_class_sum(&g, p, n)
        }
        "height-sum" => {
            let n = args.n.ok_or("height-sum requires --n")?;
            if n < 1 {
                return Err("height-sum requires --n >= 1".into());
            }
            height_sum(
                &load_profile(args.profile.as_deref(), args.group.as_deref(), p)?,
                n,
            )
        }
        "bq-sum" => bq_sum(&load_profile(
            args.profile.as_deref(),
            args.group.as_deref(),
            p,
        )?),
        "residue" => {
            let p = p.ok_or("residue requires --p")?;
            let q: Rational = args
                .value
                .as_deref()
                .ok_or("residue requires --value <num/den>")?
                .parse()?;
            let (c, e) = q.residue_qzp(p);
            println!("{}", Rational::new(BigInt::from(c), BigInt::from(p).pow(e)));
            return Ok(ExitCode::SUCCESS);
        }
        other => {
            return Err(format!(
                "unknown quantity {other:?} (expected bernoulli, zeta, chi-orb, chi-q, N, hall, \
                 tuple-sum, height-sum, bq-sum, or residue)"
            ))
        }
    };
    match p {
        Some(p) => {
            let (c, e) = value.residue_qzp(p);
            let residue = Rational::new(BigInt::from(c), BigInt::from(p).pow(e));
            println!("{value} residue={residue}");
        }
        None => println!("{value}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Profiles come either from a file in the interchange format or from a
/// catalog group at a prime.
fn load_profile(
    path: Option<&Path>,
    group: Option<&str>,
    p: Option<u64>,
) -> Result<GroupProfile, String> {
    match (path, group) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            text.parse()
                .map_err(|e: chromcong_core::chromatic::ProfileError| e.to_string())
        }
        (None, Some(name)) => {
            let g = group_by_name(name).map_err(|e| e.to_string())?;
            let p = p.ok_or("profiles from a group also need --p")?;
            Ok(profile_from_finite_group(&g, p))
        }
        (Some(_), Some(_)) => Err("give either --profile or --group, not both".into()),
        (None, None) => {
            Err("a profile is required: --profile <path> or --group <name> --p <prime>".into())
        }
    }
}

fn parse_u64_list(text: Option<&str>) -> Result<Vec<u64>, String> {
    let Some(text) = text else {
        return Ok(Vec::new());
    };
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid integer {part:?} in list"))
        })
        .collect()
}
