//! Batch command-line surface over the weighted-Bergman laboratory.
//!
//! One subcommand per experiment family; every run emits a single
//! machine-readable record (JSON by default, CSV on request) on stdout.
//! Progress notes for long scans go to stderr, never into the data stream.
//!
//! Exit codes: 0 success; 2 validation/usage error; 3 divergent-integral or
//! analytic-nonintegrability outcomes (a structured record is still emitted).

mod record;

use anyhow::{anyhow, Context};
use bergman_lab::kernels::{
    cayley, cayley_inverse, disk_kernel, g_weighted_kernel, hartogs_kernel,
    hartogs_kernel_series, punctured_kernel, DiskPoint, HalfPlanePoint, HartogsForm,
    HartogsPoint, NonVanishingHolomorphic, PuncturedForm,
};
use bergman_lab::muckenhoupt::{
    ap_plus_scan, cayley_weight_pair, default_truncation, sigma_weight, two_weight_probe,
    ApVerdictKind, DiskFamily, FactorBase, HalfPlaneWeight, ProbeOptions, ScanMode,
    StepFunction, TilingSquare,
};
use bergman_lab::projection::{blowup_experiment, schur_feasible, schur_numeric_check};
use bergman_lab::quadrature::{
    weighted_moment, weighted_moment_quadrature, DiskRegion, QuadratureSpec,
};
use bergman_lab::ranges::{
    alpha_example_range, decompose_exponent, intersect_ranges, range_disk_star,
    range_generalized, range_hartogs, range_two_weight, Endpoint, GeneralizedHartogsSpec,
    PRange,
};
use bergman_lab::{Error as CoreError, Rat};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use record::{json_number, CommandOutput, OutputFormat, Record, RequestEcho, Tolerances};
use serde_json::Value;
use std::collections::BTreeMap;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "bergman-lab", version, about = "Weighted Bergman projection laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output encoding for the experiment record.
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: OutputFormat,
    /// Relative tolerance override (also via BERGMAN_LAB_RTOL).
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RangeDomain {
    DiskStar,
    Hartogs,
    TwoWeight,
    Generalized,
    AlphaExample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelKind {
    Disk,
    Punctured,
    GWeighted,
    Hartogs,
    Cayley,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelFormArg {
    Closed,
    Homotopy,
    Transform,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairKind {
    Cayley,
    Sigma,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Special,
    General,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sharp L^p range tables.
    Ranges {
        #[arg(long, value_enum)]
        domain: RangeDomain,
        #[arg(long, allow_hyphen_values = true)]
        s_prime: Option<String>,
        /// Target-space exponent for the two-weight map.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Exponent of the (z-1)^alpha example.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Ball-factor dimensions of the generalized triangle, e.g. "1,2".
        #[arg(long)]
        ball_dims: Option<String>,
        /// Weight exponents of the generalized triangle, e.g. "0,-3".
        #[arg(long, allow_hyphen_values = true)]
        weight_exponents: Option<String>,
        /// Sample points for the two-weight sharpness predicate.
        #[arg(long, allow_hyphen_values = true)]
        sharp_at: Option<String>,
    },
    /// Kernel evaluation at given points.
    Kernel {
        #[arg(long, value_enum)]
        kind: KernelKind,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        s_prime: f64,
        #[arg(long, value_enum, default_value = "closed")]
        form: KernelFormArg,
        #[arg(long, default_value_t = 24)]
        series_degree: i32,
        /// Point as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta2: Option<String>,
        /// Weight function for g-weighted kernels: "one" or "alpha-power".
        #[arg(long, default_value = "one")]
        g: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        alpha: f64,
        /// Evaluate the inverse Cayley transform instead.
        #[arg(long, default_value_t = false)]
        inverse: bool,
    },
    /// Weighted monomial moments (closed form and quadrature).
    Moments {
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        s_prime: f64,
    },
    /// Endpoint blow-up experiment.
    Blowup {
        #[arg(long, allow_hyphen_values = true)]
        s_prime: f64,
        #[arg(long)]
        p: f64,
        /// Strictly increasing ladder, e.g. "10,30,100,300".
        #[arg(long)]
        n: String,
    },
    /// Schur-test feasibility (and optional numeric sup check).
    Schur {
        #[arg(long, allow_hyphen_values = true)]
        s_prime: f64,
        #[arg(long)]
        p: f64,
        /// Radii of diagonal sample points for the numeric sup.
        #[arg(long)]
        sample_radii: Option<String>,
    },
    /// Two-weight condition scan over a dyadic disk family.
    Apcheck {
        #[arg(long, value_enum)]
        pair: PairKind,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        s: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        k: i64,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "special")]
        mode: ModeArg,
        /// Custom weights as "dist-i:EXP,dist-minus-i:EXP,cayley:EXP[,scalar:C]".
        #[arg(long, allow_hyphen_values = true)]
        mu1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        centers: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = -10)]
        radius_exp_lo: i32,
        #[arg(long, allow_hyphen_values = true, default_value_t = 10)]
        radius_exp_hi: i32,
    },
    /// Two-weight inequality probe for the absolute Bergman operator.
    Probe {
        #[arg(long, value_enum)]
        pair: PairKind,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        s: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        k: i64,
        #[arg(long)]
        p: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu2: Option<String>,
        /// Indicator tiles as "j,k;j,k;...".
        #[arg(long, allow_hyphen_values = true, default_value = "0,0;1,0;0,-1;0,-2")]
        tiles: String,
        #[arg(long, default_value_t = 8)]
        grid: u32,
        #[arg(long, default_value_t = 8)]
        levels: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rel_tol = cli
        .rel_tol
        .or_else(|| std::env::var("BERGMAN_LAB_RTOL").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1e-10);
    let spec = QuadratureSpec { rel_tol, ..Default::default() };
    let request = RequestEcho {
        subcommand: subcommand_name(&cli.command).to_string(),
        parameters: echo_parameters(),
        output: format!("{:?}", cli.output).to_lowercase(),
    };
    let tolerances = Tolerances {
        rel_tol: spec.rel_tol,
        abs_tol: spec.abs_tol,
        max_subdivision_depth: spec.max_subdivision_depth,
    };

    let outcome = run(&cli.command, &spec);
    let output = match outcome {
        Ok(output) => output,
        Err(e) => match e.downcast_ref::<CoreError>() {
            Some(CoreError::DivergentIntegral(_))
            | Some(CoreError::AnalyticNonIntegrable { .. }) => {
                let mut out = CommandOutput::new();
                out.scalar("error", e.to_string());
                out.verdict("outcome", "divergent");
                out.exit_code = 3;
                out
            }
            _ => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
    };

    let exit = output.exit_code;
    let rec = Record { request, tolerances, output };
    let emitted = match cli.output {
        OutputFormat::Json => serde_json::to_writer_pretty(std::io::stdout(), &rec.to_json())
            .map(|_| println!())
            .map_err(|e| anyhow!(e)),
        OutputFormat::Csv => rec.write_csv(std::io::stdout()),
    };
    if let Err(e) = emitted {
        eprintln!("error: failed to emit record: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(exit as u8)
}

fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Ranges { .. } => "ranges",
        Command::Kernel { .. } => "kernel",
        Command::Moments { .. } => "moments",
        Command::Blowup { .. } => "blowup",
        Command::Schur { .. } => "schur",
        Command::Apcheck { .. } => "apcheck",
        Command::Probe { .. } => "probe",
    }
}

/// The raw argv after the binary name; enough to replay the run verbatim.
fn echo_parameters() -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let args: Vec<String> = std::env::args().skip(1).collect();
    map.insert("argv".to_string(), args.join(" "));
    map
}

fn run(cmd: &Command, spec: &QuadratureSpec) -> anyhow::Result<CommandOutput> {
    match cmd {
        Command::Ranges { domain, s_prime, t, alpha, ball_dims, weight_exponents, sharp_at } => {
            cmd_ranges(*domain, s_prime, t, alpha, ball_dims, weight_exponents, sharp_at)
        }
        Command::Kernel {
            kind,
            s_prime,
            form,
            series_degree,
            z,
            zeta,
            z1,
            z2,
            zeta1,
            zeta2,
            g,
            alpha,
            inverse,
        } => cmd_kernel(
            *kind,
            *s_prime,
            *form,
            *series_degree,
            z.as_deref(),
            zeta.as_deref(),
            z1.as_deref(),
            z2.as_deref(),
            zeta1.as_deref(),
            zeta2.as_deref(),
            g,
            *alpha,
            *inverse,
        ),
        Command::Moments { m, s_prime } => cmd_moments(*m, *s_prime, spec),
        Command::Blowup { s_prime, p, n } => cmd_blowup(*s_prime, *p, n, spec),
        Command::Schur { s_prime, p, sample_radii } => {
            cmd_schur(*s_prime, *p, sample_radii.as_deref(), spec)
        }
        Command::Apcheck {
            pair,
            s,
            k,
            p,
            mode,
            mu1,
            mu2,
            centers,
            radius_exp_lo,
            radius_exp_hi,
        } => cmd_apcheck(
            *pair,
            *s,
            *k,
            *p,
            *mode,
            mu1.as_deref(),
            mu2.as_deref(),
            centers.as_deref(),
            *radius_exp_lo,
            *radius_exp_hi,
            spec,
        ),
        Command::Probe { pair, s, k, p, mu1, mu2, tiles, grid, levels } => {
            cmd_probe(*pair, *s, *k, *p, mu1.as_deref(), mu2.as_deref(), tiles, *grid, *levels, spec)
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> anyhow::Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| anyhow!("cannot parse {what}: {x:?}")))
        .collect()
}

fn parse_complex(s: &str) -> anyhow::Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(re.trim().parse()?, 0.0)),
        [re, im] => Ok(Complex64::new(re.trim().parse()?, im.trim().parse()?)),
        _ => Err(anyhow!("complex points are written as \"re,im\" (got {s:?})")),
    }
}

fn put_range_f64(out: &mut CommandOutput, range: &PRange<f64>) {
    out.number("lo", range.lo);
    out.scalar(
        "hi",
        match range.hi {
            Endpoint::Finite(h) => json_number(h),
            Endpoint::Infinity => Value::String("inf".into()),
        },
    );
    out.scalar("open", true);
    out.scalar("empty", range.empty);
}

fn put_range_exact(out: &mut CommandOutput, range: &PRange<Rat>) {
    out.scalar("lo_exact", range.lo.to_string());
    out.scalar(
        "hi_exact",
        match range.hi {
            Endpoint::Finite(h) => h.to_string(),
            Endpoint::Infinity => "inf".to_string(),
        },
    );
}

fn to_f64_range(range: &PRange<Rat>) -> PRange<f64> {
    let hi = match range.hi {
        Endpoint::Finite(h) => Endpoint::Finite(h.to_f64()),
        Endpoint::Infinity => Endpoint::Infinity,
    };
    PRange { lo: range.lo.to_f64(), hi, empty: range.empty }
}

fn need_rat(opt: &Option<String>, what: &str) -> anyhow::Result<Rat> {
    let s = opt.as_deref().ok_or_else(|| anyhow!("--{what} is required for this domain"))?;
    Rat::from_decimal_str(s).ok_or_else(|| anyhow!("--{what} must be a decimal literal (got {s:?})"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_ranges(
    domain: RangeDomain,
    s_prime: &Option<String>,
    t: &Option<String>,
    alpha: &Option<String>,
    ball_dims: &Option<String>,
    weight_exponents: &Option<String>,
    sharp_at: &Option<String>,
) -> anyhow::Result<CommandOutput> {
    let mut out = CommandOutput::new();
    match domain {
        RangeDomain::DiskStar | RangeDomain::Hartogs => {
            let sp = need_rat(s_prime, "s-prime")?;
            let range = if domain == RangeDomain::DiskStar {
                range_disk_star(sp)?
            } else {
                range_hartogs(sp)?
            };
            let d = decompose_exponent(sp)?;
            put_range_f64(&mut out, &to_f64_range(&range));
            put_range_exact(&mut out, &range);
            out.scalar("k", d.k);
            out.number("s", d.s.to_f64());
        }
        RangeDomain::TwoWeight => {
            let sp = need_rat(s_prime, "s-prime")?;
            let tt = need_rat(t, "t")?;
            let verdict = range_two_weight(sp, tt)?;
            put_range_f64(&mut out, &to_f64_range(&verdict.range));
            put_range_exact(&mut out, &verdict.range);
            out.number("unbounded_below", verdict.unbounded_below.to_f64());
            out.scalar("notes", verdict.notes.clone());
            if let Some(points) = sharp_at {
                let ps: Vec<Rat> = points
                    .split(',')
                    .map(|x| {
                        Rat::from_decimal_str(x.trim())
                            .ok_or_else(|| anyhow!("bad sharp-at point {x:?}"))
                    })
                    .collect::<anyhow::Result<_>>()?;
                let ps_f64: Vec<f64> = ps.iter().map(|p| p.to_f64()).collect();
                out.numbers("sharp_at_p", &ps_f64);
                let flags: Vec<Value> =
                    ps.iter().map(|&p| Value::Bool(verdict.sharp_at(p))).collect();
                out.arrays.push(("sharp".to_string(), flags));
            }
        }
        RangeDomain::Generalized => {
            let dims: Vec<u32> = match ball_dims.as_deref() {
                Some(s) if !s.trim().is_empty() => parse_list(s, "ball dimension")?,
                _ => Vec::new(),
            };
            let exps_s = weight_exponents
                .as_deref()
                .ok_or_else(|| anyhow!("--weight-exponents is required"))?;
            let exps: Vec<Rat> = exps_s
                .split(',')
                .map(|x| {
                    Rat::from_decimal_str(x.trim())
                        .ok_or_else(|| anyhow!("bad weight exponent {x:?}"))
                })
                .collect::<anyhow::Result<_>>()?;
            let gspec = GeneralizedHartogsSpec::new(dims, exps)?;
            let reduced: Vec<f64> = gspec.reduced_exponents().iter().map(|e| e.to_f64()).collect();
            let range = range_generalized(&gspec)?;
            put_range_f64(&mut out, &to_f64_range(&range));
            put_range_exact(&mut out, &range);
            out.numbers("reduced_exponents", &reduced);
        }
        RangeDomain::AlphaExample => {
            let a = need_rat(alpha, "alpha")?;
            let range = alpha_example_range(a)?;
            put_range_f64(&mut out, &to_f64_range(&range));
            put_range_exact(&mut out, &range);
            if let Some(sp) = s_prime {
                // intersect with the one-weight range when s' is also given
                let sp = Rat::from_decimal_str(sp).ok_or_else(|| anyhow!("bad s-prime"))?;
                let combined = intersect_ranges(&range, &range_hartogs(sp)?);
                out.number("combined_lo", combined.lo.to_f64());
                out.scalar(
                    "combined_hi",
                    match combined.hi {
                        Endpoint::Finite(h) => json_number(h.to_f64()),
                        Endpoint::Infinity => Value::String("inf".into()),
                    },
                );
                out.scalar("combined_empty", combined.empty);
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_kernel(
    kind: KernelKind,
    s_prime: f64,
    form: KernelFormArg,
    series_degree: i32,
    z: Option<&str>,
    zeta: Option<&str>,
    z1: Option<&str>,
    z2: Option<&str>,
    zeta1: Option<&str>,
    zeta2: Option<&str>,
    g: &str,
    alpha: f64,
    inverse: bool,
) -> anyhow::Result<CommandOutput> {
    let mut out = CommandOutput::new();
    let need = |o: Option<&str>, name: &str| {
        o.ok_or_else(|| anyhow!("--{name} is required for this kernel"))
            .and_then(parse_complex)
    };
    match kind {
        KernelKind::Disk => {
            let v = disk_kernel(DiskPoint::new(need(z, "z")?)?, DiskPoint::new(need(zeta, "zeta")?)?)?;
            out.number("value_re", v.re);
            out.number("value_im", v.im);
        }
        KernelKind::Punctured => {
            let f = match form {
                KernelFormArg::Closed => PuncturedForm::Closed,
                KernelFormArg::Homotopy => PuncturedForm::Homotopy,
                _ => return Err(anyhow!("punctured kernel takes --form closed|homotopy")),
            };
            let v = punctured_kernel(
                s_prime,
                DiskPoint::new(need(z, "z")?)?,
                DiskPoint::new(need(zeta, "zeta")?)?,
                f,
            )?;
            out.number("value_re", v.re);
            out.number("value_im", v.im);
        }
        KernelKind::GWeighted => {
            let gfun = match g {
                "one" => NonVanishingHolomorphic::Identity,
                "alpha-power" => NonVanishingHolomorphic::PowerOfZMinusOne { alpha },
                other => return Err(anyhow!("unknown weight function {other:?}")),
            };
            let v = g_weighted_kernel(
                &gfun,
                DiskPoint::new(need(z, "z")?)?,
                DiskPoint::new(need(zeta, "zeta")?)?,
            )?;
            out.number("value_re", v.re);
            out.number("value_im", v.im);
        }
        KernelKind::Hartogs => {
            let zp = HartogsPoint::new(need(z1, "z1")?, need(z2, "z2")?)?;
            let wp = HartogsPoint::new(need(zeta1, "zeta1")?, need(zeta2, "zeta2")?)?;
            match form {
                KernelFormArg::Transform => {
                    let v = hartogs_kernel(s_prime, zp, wp, HartogsForm::Transform)?;
                    out.number("value_re", v.re);
                    out.number("value_im", v.im);
                }
                KernelFormArg::Series => {
                    let (v, bound) = hartogs_kernel_series(s_prime, zp, wp, series_degree)?;
                    out.number("value_re", v.re);
                    out.number("value_im", v.im);
                    out.number("tail_bound", bound);
                    out.scalar("series_degree", series_degree);
                }
                _ => return Err(anyhow!("Hartogs kernel takes --form transform|series")),
            }
        }
        KernelKind::Cayley => {
            if inverse {
                let w = DiskPoint::new(need(z, "z")?)?;
                let v = cayley_inverse(w)?.value();
                out.number("value_re", v.re);
                out.number("value_im", v.im);
            } else {
                let zp = HalfPlanePoint::new(need(z, "z")?)?;
                let v = cayley(zp)?.value();
                out.number("value_re", v.re);
                out.number("value_im", v.im);
            }
        }
    }
    Ok(out)
}

fn cmd_moments(m: i32, s_prime: f64, spec: &QuadratureSpec) -> anyhow::Result<CommandOutput> {
    let closed = weighted_moment(m, s_prime)?;
    let quad = weighted_moment_quadrature(m, s_prime, spec)?;
    let mut out = CommandOutput::new();
    out.number("value", quad);
    out.number("closed_form", closed);
    out.number("rel_deviation", ((quad - closed) / closed).abs());
    Ok(out)
}

fn cmd_blowup(s_prime: f64, p: f64, n: &str, spec: &QuadratureSpec) -> anyhow::Result<CommandOutput> {
    let n_values: Vec<u32> = parse_list(n, "ladder entry")?;
    let series = blowup_experiment(s_prime, p, &n_values, spec)?;
    let mut out = CommandOutput::new();
    let n_f64: Vec<f64> = series.n_values.iter().map(|&v| v as f64).collect();
    out.numbers("n", &n_f64);
    out.numbers("norm_f", &series.norms_f);
    out.numbers("norm_Bf", &series.norms_bf);
    out.numbers("ratio", &series.ratios);
    out.numbers("log10_norm_f", &series.log10_norms_f);
    out.numbers("log10_norm_Bf", &series.log10_norms_bf);
    out.numbers("log10_ratio", &series.log10_ratios);
    out.number("s_prime", series.s_prime);
    out.number("p", series.p);
    out.number("endpoint_p", series.endpoint_p);
    out.number("nu", series.nu);
    out.scalar("image_in_lp", series.image_in_lp);
    if let Some(dev) = series.endpoint_identity_max_rel_dev {
        out.number("endpoint_identity_max_rel_dev", dev);
    }
    Ok(out)
}

fn cmd_schur(
    s_prime: f64,
    p: f64,
    sample_radii: Option<&str>,
    spec: &QuadratureSpec,
) -> anyhow::Result<CommandOutput> {
    let mut out = CommandOutput::new();
    match schur_feasible(s_prime, p)? {
        None => {
            out.verdict("feasibility", "infeasible");
            out.scalar("feasible", false);
        }
        Some(params) => {
            out.verdict("feasibility", "feasible");
            out.scalar("feasible", true);
            out.number("delta", params.delta);
            out.number("sigma", params.sigma);
            if let Some(radii) = sample_radii {
                let rs: Vec<f64> = parse_list(radii, "sample radius")?;
                let samples: Vec<DiskPoint> = rs
                    .iter()
                    .map(|&r| DiskPoint::new(Complex64::new(r, 0.0)).map_err(|e| anyhow!(e)))
                    .collect::<anyhow::Result<_>>()?;
                let sup = schur_numeric_check(s_prime, &params, &samples, spec)?;
                out.number("numeric_sup", sup);
                out.numbers("sample_radii", &rs);
            }
        }
    }
    Ok(out)
}

fn parse_weight(s: &str) -> anyhow::Result<HalfPlaneWeight> {
    let mut factors = Vec::new();
    let mut scalar = 1.0f64;
    for part in s.split(',') {
        let (name, val) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("weight factors are written base:exponent (got {part:?})"))?;
        let val: f64 = val.trim().parse().context("bad factor exponent")?;
        match name.trim() {
            "dist-i" => factors.push((FactorBase::DistToI, val)),
            "dist-minus-i" => factors.push((FactorBase::DistToMinusI, val)),
            "cayley" => factors.push((FactorBase::CayleyModulus, val)),
            "scalar" => scalar = val,
            other => return Err(anyhow!("unknown weight factor {other:?}")),
        }
    }
    Ok(HalfPlaneWeight::new(factors).with_scalar(scalar))
}

fn resolve_pair(
    pair: PairKind,
    s: f64,
    k: i64,
    p: f64,
    mu1: Option<&str>,
    mu2: Option<&str>,
) -> anyhow::Result<(HalfPlaneWeight, HalfPlaneWeight)> {
    match pair {
        PairKind::Cayley => Ok(cayley_weight_pair(s, k, p)),
        PairKind::Sigma => {
            let w = sigma_weight(p);
            Ok((w.clone(), w))
        }
        PairKind::Custom => {
            let m1 = parse_weight(mu1.ok_or_else(|| anyhow!("--mu1 required for custom pair"))?)?;
            let m2 = parse_weight(mu2.ok_or_else(|| anyhow!("--mu2 required for custom pair"))?)?;
            Ok((m1, m2))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_apcheck(
    pair: PairKind,
    s: f64,
    k: i64,
    p: f64,
    mode: ModeArg,
    mu1: Option<&str>,
    mu2: Option<&str>,
    centers: Option<&str>,
    radius_exp_lo: i32,
    radius_exp_hi: i32,
    spec: &QuadratureSpec,
) -> anyhow::Result<CommandOutput> {
    let (w1, w2) = resolve_pair(pair, s, k, p, mu1, mu2)?;
    let mut family = DiskFamily::default();
    if let Some(cs) = centers {
        family.centers = parse_list(cs, "center")?;
    }
    if radius_exp_lo > radius_exp_hi {
        return Err(anyhow!("empty radius range"));
    }
    family.radii = (radius_exp_lo..=radius_exp_hi).map(|m| (m as f64).exp2()).collect();
    let mode = match mode {
        ModeArg::Special => ScanMode::Special,
        ModeArg::General => ScanMode::General,
    };
    eprintln!(
        "apcheck: scanning {} disks ({} centers x {} radii{})",
        family.centers.len() * family.radii.len(),
        family.centers.len(),
        family.radii.len(),
        if mode == ScanMode::General { " + disks at i" } else { "" }
    );
    let verdict = ap_plus_scan(&w1, &w2, p, &family, mode, spec)?;
    eprintln!("apcheck: done (sup = {:.6e})", verdict.sup_quotient);

    let mut out = CommandOutput::new();
    out.number("sup_quotient", verdict.sup_quotient);
    let (label, exit) = match &verdict.verdict {
        ApVerdictKind::BoundedEvidence => ("bounded-evidence", 0),
        ApVerdictKind::Divergent => ("divergent", 0),
        ApVerdictKind::AnalyticNonIntegrable { factor, threshold } => {
            out.scalar("nonintegrable_factor", factor.clone());
            out.scalar("nonintegrable_threshold", threshold.clone());
            ("analytic-nonintegrable", 3)
        }
    };
    out.verdict("verdict", label);
    out.exit_code = exit;
    let (scales, sups): (Vec<f64>, Vec<f64>) = verdict.refinement_trace.iter().copied().unzip();
    out.numbers("trace_scale", &scales);
    out.numbers("trace_sup", &sups);
    let mut wc_re = Vec::new();
    let mut wc_im = Vec::new();
    let mut wr = Vec::new();
    let mut wq = Vec::new();
    for (region, q) in &verdict.witnesses {
        let (c, r) = match region {
            DiskRegion::Special(d) => (Complex64::new(d.x0, 0.0), d.radius),
            DiskRegion::General(d) => (d.center, d.radius),
        };
        wc_re.push(c.re);
        wc_im.push(c.im);
        wr.push(r);
        wq.push(*q);
    }
    out.numbers("witness_center_re", &wc_re);
    out.numbers("witness_center_im", &wc_im);
    out.numbers("witness_radius", &wr);
    out.numbers("witness_quotient", &wq);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_probe(
    pair: PairKind,
    s: f64,
    k: i64,
    p: f64,
    mu1: Option<&str>,
    mu2: Option<&str>,
    tiles: &str,
    grid: u32,
    levels: u32,
    spec: &QuadratureSpec,
) -> anyhow::Result<CommandOutput> {
    let (w1, w2) = resolve_pair(pair, s, k, p, mu1, mu2)?;
    let mut family = Vec::new();
    let mut tile_j = Vec::new();
    let mut tile_k = Vec::new();
    for part in tiles.split(';') {
        let (j, kk) = part
            .split_once(',')
            .ok_or_else(|| anyhow!("tiles are written j,k;j,k (got {part:?})"))?;
        let j: i64 = j.trim().parse()?;
        let kk: i32 = kk.trim().parse()?;
        family.push(StepFunction::indicator(TilingSquare::new(j, kk)));
        tile_j.push(j as f64);
        tile_k.push(kk as f64);
    }
    eprintln!("probe: {} test functions, grid {grid} per tile, {levels} levels", family.len());
    let report = two_weight_probe(
        &w1,
        &w2,
        p,
        &family,
        &default_truncation(),
        ProbeOptions { grid_per_tile: grid, levels },
        spec,
    )?;
    eprintln!("probe: done");
    let mut out = CommandOutput::new();
    out.numbers("tile_j", &tile_j);
    out.numbers("tile_k", &tile_k);
    let ratio_vals: Vec<Value> = report
        .ratios
        .iter()
        .map(|r| r.map(json_number).unwrap_or(Value::Null))
        .collect();
    out.arrays.push(("ratio".to_string(), ratio_vals));
    let edom_vals: Vec<Value> = report
        .e_domination_per_function
        .iter()
        .map(|r| r.map(json_number).unwrap_or(Value::Null))
        .collect();
    out.arrays.push(("e_domination".to_string(), edom_vals));
    if let Some(m) = report.max_ratio {
        out.number("max_ratio", m);
    }
    if let Some(m) = report.median_ratio {
        out.number("median_ratio", m);
    }
    out.number("e_domination_c", report.e_domination_c);
    out.scalar("grid_per_tile", report.grid_per_tile);
    out.scalar("tiles_evaluated", report.tiles_evaluated as u64);
    let excluded = report.ratios.iter().filter(|r| r.is_none()).count();
    out.scalar("excluded", excluded as u64);
    Ok(out)
}
