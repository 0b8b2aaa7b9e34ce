use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use auxzeta::config::{self, FittedConstants, RunConfig};
use auxzeta::rzeta::{
    bigF, log_abs_bigf, log_j, rzeta_left_asymptotic, rzeta_mainsum, rzeta_quadrature,
    AsymptoticRegime,
};
use auxzeta::special::{chi, per, theta, PerSeries};
use auxzeta::verify::{self, Report, MEAN_T0};
use auxzeta::xray::{xray, XrayFunction};
use auxzeta::zeros::{density_check, scan_catalog, RectangleRegion, Which, ZeroCatalog};
use auxzeta::zeta::{default_terms, z_function_detailed, zeta};
use auxzeta::{Complex64, Error};

// stdout may be a closed pipe; that is not an error worth a panic
macro_rules! say {
    ($($a:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($a)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "auxzeta",
    version,
    about = "Riemann's auxiliary function R(s), its zeros and checks"
)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the configuration).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate R, F, J, zeta, chi, theta, Z or per at one point.
    Eval {
        function: String,
        /// Complex argument such as 4+110i; real for theta, Z and per.
        #[arg(allow_hyphen_values = true)]
        s: String,
        /// For R: quadrature, mainsum or asymptotic.
        #[arg(long, default_value = "quadrature")]
        method: String,
    },
    /// Scan for zeros of R up to height T, extending an existing catalog.
    Scan {
        #[arg(long = "T")]
        t: f64,
    },
    /// Run one numerical check and write its JSON report.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Plot the curves Re f = 0 and Im f = 0 over a window.
    Xray {
        /// R, F or zeta.
        #[arg(long, default_value = "F")]
        function: String,
        /// sigma_min,sigma_max,t_min,t_max
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 400)]
        resolution: usize,
    },
    /// Fit the constants of the trend checks against a catalog reaching T = 400.
    Calibrate,
}

#[derive(Args)]
struct GridArgs {
    /// Largest T; the grid is 101, 126, … up to T.
    #[arg(long = "T", default_value_t = 300.0)]
    t: f64,
}

#[derive(Subcommand)]
enum Check {
    /// Littlewood's identity on a rectangle.
    Littlewood {
        #[arg(long, allow_hyphen_values = true, default_value = "-1,4,20,60")]
        rect: String,
        #[arg(long, default_value = "R")]
        function: String,
    },
    /// ∫ log|R(σ+it)| against its zero-sum form, residual over log T.
    Thm1 {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        sigma: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// ∫ log|R(σ+it)| for σ right of the zeros, residual over T^(20/21).
    Thm2 {
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        sigma: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// N_R(T) from the difference of the second theorem at σ = 5 and σ = 4.
    Thm2Count {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// 2^σ |∫ log|R(σ+it)|| bounded by one constant and decreasing in σ.
    Thm3 {
        #[arg(long, value_delimiter = ',', default_value = "4,5,6,7")]
        sigmas: Vec<f64>,
        #[arg(long = "T", default_value_t = 300.0)]
        t: f64,
    },
    /// Argument change along a segment against Backlund's bound.
    Backlund {
        #[arg(long, allow_hyphen_values = true, default_value = "4+100i")]
        a: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-1+100i")]
        b: String,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
    },
    /// Jensen's inequality and the mean square of R at σ.
    Jensen {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long = "T", default_value_t = 400.0)]
        t: f64,
    },
    /// Mean of log|Γ(s/2)| against its closed form on random (σ, T).
    GammaMean {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// The per-term identity on σ = 1.
    Per {
        #[arg(
            long = "T",
            value_delimiter = ',',
            default_value = "50,100,150,200,250,300,350,400,450,500"
        )]
        t: Vec<f64>,
    },
    /// Mean of log|e^(πiη)| on the regime edge.
    Littlemean {
        #[arg(long = "T", default_value_t = 200.0)]
        t: f64,
    },
    /// Mean of log|J| on the regime edge against its main terms.
    MeanJ {
        #[arg(long = "T", default_value_t = 200.0)]
        t: f64,
    },
    /// Decomposition of the mean of log|F|; σ defaults to the regime edge.
    LogF {
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<f64>,
        #[arg(long = "T", default_value_t = 300.0)]
        t: f64,
    },
    /// Left-region product against quadrature on 10 heights in [100, 400].
    LeftAsymptotic,
    /// ω(T)/2π against the count of zeros with β ≥ ½.
    Omega {
        #[arg(
            long = "T",
            value_delimiter = ',',
            default_value = "50,100,200,300,400"
        )]
        t: Vec<f64>,
    },
    /// Lower bound for the zeros with β ≤ ½.
    Density {
        #[arg(long = "T", default_value_t = 300.0)]
        t: f64,
    },
    /// Sign changes of Z against zeros of cos(θ − ω) and of R on the line.
    CriticalLine {
        #[arg(long, default_value_t = 101.0)]
        from: f64,
        #[arg(long, default_value_t = 300.0)]
        to: f64,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
    },
}

/// Nonzero exit with a JSON diagnostic.
struct Failure {
    code: u8,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::OutOfRegime { .. } | Error::NearAsymptoticPole(_) | Error::InvalidInput(_) => {
                (2, "regime")
            }
            Error::GammaPole(_) | Error::ChiPole(_) | Error::ZetaPole => (2, "pole"),
            Error::AccuracyUnreachable { .. } => (2, "accuracy"),
            Error::ScanFailed { .. } | Error::RefinementFailed { .. } => (3, "scan"),
            Error::BoundaryZero { .. } => (3, "boundary-zero"),
            Error::BeyondFrontier { .. } => (4, "catalog-frontier"),
            Error::Io(io) if io.kind() == std::io::ErrorKind::NotFound => (4, "missing-input"),
            Error::Config(_) => (4, "config"),
            _ => (1, "internal"),
        };
        let mut body = json!({ "error": kind, "message": e.to_string(), "exit_code": code });
        if let Error::ScanFailed { cells } = &e {
            body["cells"] = json!(cells);
        }
        Failure { code, body }
    }
}

fn missing(what: &str, path: &Path) -> Failure {
    Failure {
        code: 4,
        body: json!({
            "error": "missing-input",
            "message": format!("{what} not found at {}", path.display()),
            "exit_code": 4,
        }),
    }
}

fn invalid(msg: String) -> Failure {
    Failure::from(Error::InvalidInput(msg))
}

/// Parses a + bi, a − bi, bi or a.
fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || invalid(format!("cannot parse complex number {text:?}"));
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t
            .parse::<f64>()
            .map(|x| Complex64::new(x, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn parse_rect(text: &str, window: bool) -> Result<RectangleRegion, Failure> {
    let v: Vec<f64> = text
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| invalid(format!("cannot parse rectangle {text:?}")))?;
    if v.len() != 4 {
        return Err(invalid(format!(
            "rectangle needs four numbers, got {text:?}"
        )));
    }
    let r = if window {
        RectangleRegion::window(v[0], v[1], v[2], v[3])
    } else {
        RectangleRegion::new(v[0], v[1], v[2], v[3])
    };
    Ok(r?)
}

fn real_arg(s: Complex64, name: &str) -> Result<f64, Failure> {
    if s.im != 0.0 {
        return Err(invalid(format!("{name} takes a real argument")));
    }
    Ok(s.re)
}

fn cval(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn eval(function: &str, s: Complex64, method: &str) -> Result<Value, Failure> {
    let out = match function {
        "R" => match method {
            "quadrature" => {
                let e = rzeta_quadrature(s, 1e-13)?;
                json!({ "value": cval(e.value), "method": "quadrature", "error_estimate": e.abs_error_estimate })
            }
            "mainsum" => {
                let a = rzeta_mainsum(s, FittedConstants::bundled().mainsum_c)?;
                json!({ "value": cval(a.value), "method": "mainsum", "error_estimate": a.claimed_abs_error })
            }
            "asymptotic" => {
                let a = rzeta_left_asymptotic(
                    s,
                    &AsymptoticRegime::default(),
                    FittedConstants::bundled().asymptotic_a,
                )?;
                json!({ "value": cval(a.value), "method": "asymptotic", "error_estimate": a.claimed_abs_error })
            }
            m => return Err(invalid(format!("unknown method {m:?}"))),
        },
        "F" => {
            let v = bigF(s)?;
            json!({ "value": cval(v), "log_abs": log_abs_bigf(s)?, "method": "quadrature" })
        }
        "J" => {
            let l = log_j(s, &AsymptoticRegime::default())?;
            json!({ "value": cval(l.value.exp()), "log": cval(l.value), "method": "closed form" })
        }
        "zeta" => {
            json!({ "value": cval(zeta(s)?), "method": "euler-maclaurin", "terms": default_terms(s) })
        }
        "chi" => json!({ "value": cval(chi(s)?), "method": "log-gamma" }),
        "theta" => json!({ "value": theta(real_arg(s, "theta")?), "method": "log-gamma" }),
        "Z" => {
            let z = z_function_detailed(real_arg(s, "Z")?)?;
            json!({ "value": z.z, "method": "euler-maclaurin", "via_r": z.via_r, "imag_residue": z.imag_residue })
        }
        "per" => {
            let series = PerSeries::default();
            json!({ "value": per(real_arg(s, "per")?, series), "method": "fourier series",
                    "error_estimate": series.tail_bound() })
        }
        f => return Err(invalid(format!("unknown function {f:?}"))),
    };
    let mut out = out;
    out["function"] = json!(function);
    out["s"] = cval(s);
    Ok(out)
}

fn load_catalog(cfg: &RunConfig) -> Result<ZeroCatalog, Failure> {
    let dir = cfg.catalog_dir();
    if !ZeroCatalog::csv_path(&dir).exists() {
        return Err(missing(
            "zero catalog (run `auxzeta scan` first)",
            &ZeroCatalog::csv_path(&dir),
        ));
    }
    Ok(ZeroCatalog::load(&dir)?)
}

fn scan(cfg: &RunConfig, t: f64) -> Result<Value, Failure> {
    let dir = cfg.catalog_dir();
    let cat = if ZeroCatalog::csv_path(&dir).exists() {
        ZeroCatalog::load(&dir)?.extend(t, Which::R)?
    } else {
        scan_catalog(t, None, Which::R)?
    };
    cat.save(&dir)?;
    let w = cat.winding_total(Which::R)?;
    Ok(json!({
        "catalog": dir,
        "records": cat.records.len(),
        "total_multiplicity": cat.total_multiplicity(),
        "winding_total": w.count,
        "t_frontier": cat.t_frontier,
        "beta_window": cat.beta_window,
    }))
}

fn run_check(cfg: &RunConfig, check: &Check) -> Result<Report, Failure> {
    let k = cfg.constants()?;
    let t0 = cfg.t0;
    let rep = match check {
        Check::Littlewood { rect, function } => {
            let which = match function.as_str() {
                "R" => Which::R,
                "F" => Which::F,
                f => return Err(invalid(format!("littlewood takes R or F, got {f:?}"))),
            };
            let rect = parse_rect(rect, false)?;
            let cat = load_catalog(cfg)?;
            cat.check_frontier(rect.t_max)?;
            verify::littlewood_closure(&rect, which, &cat.records)?
        }
        Check::Thm1 { sigma, grid } => {
            let cat = load_catalog(cfg)?;
            verify::thm1_check(*sigma, &config::theorem_grid(grid.t), &cat, t0, k.kappa1)?
        }
        Check::Thm2 { sigma, grid } => {
            let cat = load_catalog(cfg)?;
            verify::thm2_check(*sigma, &config::theorem_grid(grid.t), &cat, t0, k.kappa2)?
        }
        Check::Thm2Count { grid } => {
            let cat = load_catalog(cfg)?;
            verify::thm2_count_difference(&config::theorem_grid(grid.t), &cat, t0, k.kappa2)?
        }
        Check::Thm3 { sigmas, t } => verify::thm3_check(sigmas, *t, t0, k.thm3_c)?,
        Check::Backlund { a, b, radius } => {
            let cat = load_catalog(cfg)?;
            verify::backlund_bound_check(
                Which::R,
                parse_complex(a)?,
                parse_complex(b)?,
                *radius,
                &cat.records,
            )?
        }
        Check::Jensen { sigma, t } => {
            let cat = load_catalog(cfg).ok();
            verify::jensen_meansquare_check(*sigma, *t, t0, cat.as_ref())?
        }
        Check::GammaMean { samples, seed } => verify::gamma_mean_check(*samples, *seed)?,
        Check::Per { t } => verify::per_integral_check(t, MEAN_T0, k.kappa3)?,
        Check::Littlemean { t } => verify::littlemean_check(*t, MEAN_T0, k.kappa4)?,
        Check::MeanJ { t } => verify::mean_j_check(*t, MEAN_T0, k.kappa5)?,
        Check::LogF { sigma, t } => {
            let cat = load_catalog(cfg)?;
            let sigma = sigma.unwrap_or(1.0 - t.powf(3.0 / 7.0));
            verify::log_f_decomposition_check(sigma, *t, MEAN_T0, &cat.records, k.kappa6, k.kappa7)?
        }
        Check::LeftAsymptotic => {
            verify::left_asymptotic_check(&config::asymptotic_heights(), k.asymptotic_a)?
        }
        Check::Omega { t } => {
            let cat = load_catalog(cfg)?;
            verify::omega_count_check(&cat, t, k.kappa_omega)?
        }
        Check::Density { t } => {
            let cat = load_catalog(cfg)?;
            let int = verify::log_modulus_line_integral(
                verify::LineFunction::R,
                0.5,
                t0,
                *t,
                &cat.records,
                None,
            )?;
            let d = density_check(&cat, *t, int.value())?;
            let mut rep = Report::new("density", json!({ "T": t, "t0": t0 }));
            rep.lhs = d.lhs as f64;
            rep.rhs = d.rhs;
            rep.residual = d.slack;
            rep.pass = d.pass;
            rep.details = serde_json::to_value(&d).map_err(Error::from)?;
            rep
        }
        Check::CriticalLine { from, to, step } => {
            let cat = load_catalog(cfg)?;
            verify::critical_line_check(&cat, *from, *to, *step)?
        }
    };
    Ok(rep)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut cfg = match &cli.config {
        Some(p) if !p.exists() => return Err(missing("configuration", p)),
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(o) = cli.out {
        cfg.out_dir = o;
    }
    if let Some(n) = cli.threads {
        cfg.threads = n;
    }
    if let Some(p) = &cfg.constants_path {
        if !p.exists() {
            return Err(missing("constants file", p));
        }
    }
    if cfg.threads > 0 {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global();
    }
    match cli.cmd {
        Cmd::Eval {
            function,
            s,
            method,
        } => {
            let v = eval(&function, parse_complex(&s)?, &method)?;
            say!("{}", serde_json::to_string_pretty(&v).map_err(Error::from)?);
            Ok(0)
        }
        Cmd::Scan { t } => {
            let v = scan(&cfg, t)?;
            say!("{}", serde_json::to_string_pretty(&v).map_err(Error::from)?);
            Ok(0)
        }
        Cmd::Verify { check } => {
            let rep = run_check(&cfg, &check)?;
            std::fs::create_dir_all(&cfg.out_dir).map_err(Error::from)?;
            let path = cfg.out_dir.join(format!("{}.json", rep.check_name));
            std::fs::write(&path, rep.to_json()).map_err(Error::from)?;
            say!("{}", rep.to_json());
            if rep.pass {
                Ok(0)
            } else {
                let body = json!({ "error": "check-failed", "check": rep.check_name, "report": path, "exit_code": 1 });
                eprintln!("{body}");
                Ok(1)
            }
        }
        Cmd::Xray {
            function,
            window,
            resolution,
        } => {
            let f: XrayFunction = function.parse()?;
            let w = parse_rect(&window, true)?;
            let x = xray(f, &w, resolution)?;
            let stem = format!("xray_{function}");
            let (svg, csv) = x.write(&cfg.out_dir, &stem)?;
            let v = json!({
                "svg": svg,
                "csv": csv,
                "grid": [x.nx, x.ny],
                "crossings": x.crossings.iter().map(|z| cval(*z)).collect::<Vec<_>>(),
                "warnings": x.failures,
            });
            say!("{}", serde_json::to_string_pretty(&v).map_err(Error::from)?);
            if x.failures > 0 {
                eprintln!(
                    "{}",
                    json!({ "warning": "evaluation failures rendered as gaps", "count": x.failures })
                );
            }
            Ok(0)
        }
        Cmd::Calibrate => {
            let cat = load_catalog(&cfg)?;
            let cal = config::calibrate(&cat)?;
            std::fs::create_dir_all(&cfg.out_dir).map_err(Error::from)?;
            let path = cfg.out_dir.join("fitted_constants.toml");
            let text = format!(
                "# written by `auxzeta calibrate` against a zero catalog to T = {}\n{}",
                cat.t_frontier,
                cal.constants.to_toml()
            );
            std::fs::write(&path, text).map_err(Error::from)?;
            say!(
                "{}",
                serde_json::to_string_pretty(
                    &json!({ "constants": path, "observed": cal.observed })
                )
                .map_err(Error::from)?
            );
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let body = json!({ "error": "usage", "message": e.kind().to_string(), "detail": e.to_string(), "exit_code": 2 });
            eprintln!("{body}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}
