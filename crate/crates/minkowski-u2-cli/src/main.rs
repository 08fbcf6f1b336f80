//! `mu2`: command-line front end for the `minkowski-u2` library.
//!
//! One binary, subcommand style, built for scripting: JSON for structured
//! results, CSV for sampled tables that feed external plotters. Every
//! command is deterministic given its input, `--seed`, and configuration.
//!
//! Exit codes are a stable contract: 0 on success, 2 on usage or parse
//! errors, 3 on domain errors (for example inverting a unitary that lies on
//! the boundary). Errors are emitted to stderr as one JSON object,
//! `{"error": code, "message": text}`.
//!
//! Tolerances come from, in increasing precedence: built-in defaults, an
//! optional TOML config file named by the `MU2_CONFIG` environment
//! variable, then flags. All three tolerances must lie in (0, 1e-3].

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;

use minkowski_u2::abelian::{cokernel, kernel, smith_normal_form, IntegerMatrix};
use minkowski_u2::boundary::{bubble_v, sigma_perp, ExtendedComplex};
use minkowski_u2::bw::{bw_compose, facts, find_space, registry, BwError};
use minkowski_u2::cayley::{cayley, cayley_inverse, classify_stratum, CayleyError};
use minkowski_u2::rays::{ray_limit, ray_unitary_at, LightRay, RayError};
use minkowski_u2::sample;
use minkowski_u2::spacetime::{event_to_matrix, matrix_to_event};
use minkowski_u2::surgery::{surgery_homology, FramedLinkMatrix, SurgeryError};
use minkowski_u2::{Matrix2C, MinkowskiEvent, Tolerances};

const MAX_SAMPLES: u64 = 10_000_000;
const MAX_RAY_STEPS: usize = 1_000_000;
const TOL_CEILING: f64 = 1e-3;

#[derive(Parser)]
#[command(
    name = "mu2",
    version,
    about = "Cayley model of compactified Minkowski space, plus exact integer homology tools",
    after_help = "Config file: set MU2_CONFIG to a TOML file with any of \
                  hermitian_tol, unitary_tol, eigtol, seed, output_format. \
                  Flags override the file."
)]
struct Cli {
    /// Hermiticity tolerance, Frobenius norm of M - M* (default 1e-9)
    #[arg(long, global = true, value_name = "TOL")]
    tol_hermitian: Option<f64>,

    /// Unitarity tolerance, Frobenius norm of U*U - 1 (default 1e-9)
    #[arg(long, global = true, value_name = "TOL")]
    tol_unitary: Option<f64>,

    /// Stratum threshold on |det(U - 1)| (default 1e-9)
    #[arg(long, global = true, value_name = "TOL")]
    eigtol: Option<f64>,

    /// RNG seed for sampling commands (default 0)
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Output format; defaults to json, or csv for `sample` and `ray`
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the Cayley transform to an event (or Hermitian matrix), or its
    /// inverse to a unitary matrix
    Transform {
        /// Map a unitary back to an event instead of forward
        #[arg(long)]
        inverse: bool,
        /// Event coordinates x0,x1,x2,x3
        #[arg(long, value_name = "X0,X1,X2,X3")]
        event: Option<String>,
        /// 2x2 complex matrix as row-major JSON [[re,im],...], or "-" for stdin
        #[arg(long, value_name = "JSON")]
        matrix: Option<String>,
    },
    /// Report which stratum of U(2) a unitary matrix belongs to
    Classify {
        /// 2x2 complex matrix as row-major JSON [[re,im],...], or "-" for stdin
        #[arg(long, value_name = "JSON")]
        matrix: String,
    },
    /// Emit random points of one stratum with their coordinates, as CSV
    Sample {
        /// Which stratum to draw from
        #[arg(value_enum)]
        region: Region,
        /// Number of rows (at most 10^7)
        n: u64,
    },
    /// Tabulate the distance from a light ray's image to its boundary limit
    Ray {
        /// Base event: x1,x2,x3 (with x0 = 0) or x0,x1,x2,x3
        #[arg(long, value_name = "COORDS")]
        x: String,
        /// Spatial direction v1,v2,v3 (normalized internally)
        #[arg(long, value_name = "V1,V2,V3")]
        v: String,
        /// Largest parameter value tabulated
        #[arg(long, default_value_t = 1e6, value_name = "T")]
        tmax: f64,
        /// Number of rows, log-spaced from t = 1 to t = tmax
        #[arg(long, default_value_t = 24, value_name = "N")]
        steps: usize,
    },
    /// Smith normal form of an integer matrix, with cokernel and kernel
    Snf {
        /// Integer matrix as JSON array-of-arrays; omit or "-" for stdin
        #[arg(long, value_name = "JSON")]
        matrix: Option<String>,
    },
    /// First and second homology of surgery on a framed link
    Surgery {
        /// Symmetric integer linking matrix as JSON array-of-arrays, or "-" for stdin
        #[arg(long, value_name = "JSON")]
        matrix: String,
    },
    /// Brauer-Wall arithmetic: dump the registry, one space, or compose two
    /// of its elements
    Bw {
        /// Space name, e.g. U2; omit to dump the whole registry
        #[arg(long, value_name = "NAME")]
        space: Option<String>,
        /// Two elements "(b1;b2,s1;s2)" to compose in the named space
        #[arg(long, num_args = 2, value_name = "ELT")]
        compose: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Region {
    Interior,
    Cone,
    Bubble,
}

/// Optional TOML config file, pointed to by `MU2_CONFIG`.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    hermitian_tol: Option<f64>,
    unitary_tol: Option<f64>,
    eigtol: Option<f64>,
    seed: Option<u64>,
    output_format: Option<Format>,
}

struct Settings {
    tol: Tolerances,
    seed: u64,
    format: Option<Format>,
}

enum CliError {
    Usage(String),
    Domain { code: &'static str, message: String },
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn domain(code: &'static str, message: impl ToString) -> CliError {
    CliError::Domain {
        code,
        message: message.to_string(),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(message)) => {
            eprintln!("{}", json!({ "error": "usage", "message": message }));
            std::process::exit(2);
        }
        Err(CliError::Domain { code, message }) => {
            eprintln!("{}", json!({ "error": code, "message": message }));
            std::process::exit(3);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = load_config()?;
    let tol = Tolerances {
        hermitian: cli
            .tol_hermitian
            .or(file.hermitian_tol)
            .unwrap_or(Tolerances::DEFAULT.hermitian),
        unitary: cli
            .tol_unitary
            .or(file.unitary_tol)
            .unwrap_or(Tolerances::DEFAULT.unitary),
        eig: cli.eigtol.or(file.eigtol).unwrap_or(Tolerances::DEFAULT.eig),
    };
    for (name, value) in [
        ("hermitian", tol.hermitian),
        ("unitary", tol.unitary),
        ("eigtol", tol.eig),
    ] {
        if !(value > 0.0 && value <= TOL_CEILING) {
            return Err(usage(format!(
                "{name} tolerance must lie in (0, {TOL_CEILING}], got {value}"
            )));
        }
    }
    let settings = Settings {
        tol,
        seed: cli.seed.or(file.seed).unwrap_or(0),
        format: cli.format.or(file.output_format),
    };

    match cli.command {
        Command::Transform {
            inverse,
            event,
            matrix,
        } => cmd_transform(inverse, event, matrix, &settings),
        Command::Classify { matrix } => cmd_classify(&matrix, &settings),
        Command::Sample { region, n } => cmd_sample(region, n, &settings),
        Command::Ray { x, v, tmax, steps } => cmd_ray(&x, &v, tmax, steps, &settings),
        Command::Snf { matrix } => cmd_snf(matrix, &settings),
        Command::Surgery { matrix } => cmd_surgery(&matrix, &settings),
        Command::Bw { space, compose } => cmd_bw(space, compose, &settings),
    }
}

fn load_config() -> Result<FileConfig, CliError> {
    let Some(path) = std::env::var_os("MU2_CONFIG") else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.to_string_lossy())))?;
    toml::from_str(&text)
        .map_err(|e| usage(format!("config {}: {e}", path.to_string_lossy())))
}

/// Commands have a natural format; `--format json` is always honored, but
/// csv only exists for tabular output.
fn resolve_format(
    settings: &Settings,
    natural: Format,
    command: &str,
) -> Result<Format, CliError> {
    match (settings.format, natural) {
        (None, natural) => Ok(natural),
        (Some(Format::Json), _) => Ok(Format::Json),
        (Some(Format::Csv), Format::Csv) => Ok(Format::Csv),
        (Some(Format::Csv), Format::Json) => Err(usage(format!(
            "csv output is not defined for `{command}`"
        ))),
    }
}

// ---------------------------------------------------------------------- input

/// Read an argument that may be inline text or "-" for stdin.
fn arg_or_stdin(value: &str) -> Result<String, CliError> {
    if value != "-" {
        return Ok(value.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| usage(format!("reading stdin: {e}")))?;
    Ok(buf)
}

fn parse_floats(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|p| {
            let v: f64 = p
                .trim()
                .parse()
                .map_err(|_| usage(format!("{what}: `{p}` is not a number")))?;
            if !v.is_finite() {
                return Err(usage(format!("{what}: `{p}` is not finite")));
            }
            Ok(v)
        })
        .collect()
}

fn parse_event(text: &str) -> Result<MinkowskiEvent, CliError> {
    let c = parse_floats(text, "--event")?;
    if c.len() != 4 {
        return Err(usage(format!(
            "--event needs 4 coordinates x0,x1,x2,x3, got {}",
            c.len()
        )));
    }
    Ok(MinkowskiEvent::new(c[0], c[1], c[2], c[3]))
}

fn parse_matrix2(value: &str) -> Result<Matrix2C, CliError> {
    let text = arg_or_stdin(value)?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("--matrix must be row-major [[re,im],...] JSON: {e}")))
}

fn parse_integer_matrix(value: &str) -> Result<IntegerMatrix, CliError> {
    let text = arg_or_stdin(value)?;
    let m: IntegerMatrix = serde_json::from_str(&text)
        .map_err(|e| usage(format!("--matrix must be a JSON array of integer rows: {e}")))?;
    if m.rows() == 0 || m.cols() == 0 {
        return Err(usage("--matrix must be nonempty"));
    }
    Ok(m)
}

fn cayley_domain(err: CayleyError) -> CliError {
    let code = match err {
        CayleyError::NotHermitian { .. } => "not_hermitian",
        CayleyError::NotUnitary { .. } => "not_unitary",
        CayleyError::OnBoundary { .. } => "on_boundary",
    };
    domain(code, err)
}

// ------------------------------------------------------------------- commands

fn cmd_transform(
    inverse: bool,
    event: Option<String>,
    matrix: Option<String>,
    settings: &Settings,
) -> Result<(), CliError> {
    resolve_format(settings, Format::Json, "transform")?;
    if inverse {
        if event.is_some() {
            return Err(usage(
                "--inverse consumes a unitary matrix; --event cannot be combined with it",
            ));
        }
        let Some(matrix) = matrix else {
            return Err(usage("--inverse requires --matrix"));
        };
        let u = parse_matrix2(&matrix)?;
        let stratum = classify_stratum(&u, &settings.tol).map_err(cayley_domain)?;
        let m = cayley_inverse(&u, &settings.tol).map_err(cayley_domain)?;
        let e = matrix_to_event(&m, &settings.tol)
            .expect("the image of the inverse Cayley transform is Hermitian");
        println!(
            "{}",
            json!({ "event": e, "matrix": m, "stratum": stratum })
        );
        return Ok(());
    }

    let m = match (event, matrix) {
        (Some(e), None) => event_to_matrix(&parse_event(&e)?),
        (None, Some(s)) => parse_matrix2(&s)?,
        _ => return Err(usage("provide exactly one of --event or --matrix")),
    };
    let u = cayley(&m, &settings.tol).map_err(cayley_domain)?;
    let stratum = classify_stratum(&u, &settings.tol).map_err(cayley_domain)?;
    println!("{}", json!({ "unitary": u, "stratum": stratum }));
    Ok(())
}

fn cmd_classify(matrix: &str, settings: &Settings) -> Result<(), CliError> {
    resolve_format(settings, Format::Json, "classify")?;
    let u = parse_matrix2(matrix)?;
    let stratum = classify_stratum(&u, &settings.tol).map_err(cayley_domain)?;
    println!(
        "{}",
        serde_json::to_string(&stratum).expect("stratum serializes")
    );
    Ok(())
}

fn cmd_sample(region: Region, n: u64, settings: &Settings) -> Result<(), CliError> {
    let format = resolve_format(settings, Format::Csv, "sample")?;
    if n > MAX_SAMPLES {
        return Err(usage(format!("n must be at most {MAX_SAMPLES}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());

    let matrix_header = "m00_re,m00_im,m01_re,m01_im,m10_re,m10_im,m11_re,m11_im";
    let header = match region {
        Region::Interior => format!("index,x0,x1,x2,x3,{matrix_header}"),
        Region::Cone => format!("index,x0,z_re,z_im,{matrix_header}"),
        Region::Bubble => format!("index,z_re,z_im,{matrix_header}"),
    };

    let mut json_rows: Vec<serde_json::Value> = Vec::new();
    if format == Format::Csv {
        writeln!(out, "{header}").map_err(write_failed)?;
    }

    for index in 0..n {
        match region {
            Region::Interior => {
                let m = sample::random_hermitian(&mut rng, 1.0);
                let e = matrix_to_event(&m, &settings.tol).expect("sample is Hermitian");
                let u = cayley(&m, &settings.tol).expect("sample is Hermitian");
                match format {
                    Format::Csv => {
                        let c = e.coords();
                        writeln!(
                            out,
                            "{index},{},{},{},{},{}",
                            c[0],
                            c[1],
                            c[2],
                            c[3],
                            matrix_csv(&u)
                        )
                        .map_err(write_failed)?;
                    }
                    Format::Json => {
                        json_rows.push(json!({ "index": index, "event": e, "matrix": u }));
                    }
                }
            }
            Region::Cone => {
                let alpha = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                let x0 = 0.5 * (alpha / 2.0).tan();
                let z = sample::random_sphere_point(&mut rng);
                let u = sigma_perp(x0, &z);
                match format {
                    Format::Csv => {
                        let (re, im) = extended_parts(&z);
                        writeln!(out, "{index},{x0},{re},{im},{}", matrix_csv(&u))
                            .map_err(write_failed)?;
                    }
                    Format::Json => {
                        json_rows
                            .push(json!({ "index": index, "x0": x0, "z": z, "matrix": u }));
                    }
                }
            }
            Region::Bubble => {
                let z = sample::random_sphere_point(&mut rng);
                let m = -bubble_v(&z);
                match format {
                    Format::Csv => {
                        let (re, im) = extended_parts(&z);
                        writeln!(out, "{index},{re},{im},{}", matrix_csv(&m))
                            .map_err(write_failed)?;
                    }
                    Format::Json => {
                        json_rows.push(json!({ "index": index, "z": z, "matrix": m }));
                    }
                }
            }
        }
    }

    if format == Format::Json {
        writeln!(
            out,
            "{}",
            serde_json::Value::Array(json_rows)
        )
        .map_err(write_failed)?;
    }
    out.flush().map_err(write_failed)
}

fn write_failed(e: std::io::Error) -> CliError {
    domain("io", format!("writing output: {e}"))
}

fn matrix_csv(m: &Matrix2C) -> String {
    let e = m.entries();
    format!(
        "{},{},{},{},{},{},{},{}",
        e[0].re, e[0].im, e[1].re, e[1].im, e[2].re, e[2].im, e[3].re, e[3].im
    )
}

fn extended_parts(z: &ExtendedComplex) -> (f64, f64) {
    match z {
        ExtendedComplex::Finite(w) => (w.re, w.im),
        ExtendedComplex::Infinity => (f64::INFINITY, f64::INFINITY),
    }
}

fn cmd_ray(
    x: &str,
    v: &str,
    tmax: f64,
    steps: usize,
    settings: &Settings,
) -> Result<(), CliError> {
    let format = resolve_format(settings, Format::Csv, "ray")?;
    let xs = parse_floats(x, "--x")?;
    let base = match xs.len() {
        3 => MinkowskiEvent::new(0.0, xs[0], xs[1], xs[2]),
        4 => MinkowskiEvent::new(xs[0], xs[1], xs[2], xs[3]),
        k => {
            return Err(usage(format!(
                "--x needs 3 spatial or 4 full coordinates, got {k}"
            )))
        }
    };
    let vs = parse_floats(v, "--v")?;
    if vs.len() != 3 {
        return Err(usage(format!("--v needs 3 components, got {}", vs.len())));
    }
    if !tmax.is_finite() || tmax < 1.0 {
        return Err(usage(format!("--tmax must be a finite value >= 1, got {tmax}")));
    }
    if steps == 0 || steps > MAX_RAY_STEPS {
        return Err(usage(format!("--steps must lie in 1..={MAX_RAY_STEPS}")));
    }

    let ray = LightRay::from_direction(base, [vs[0], vs[1], vs[2]]).map_err(|e| match e {
        RayError::ZeroDirection => domain("zero_direction", e),
        other => domain("ray", other),
    })?;
    let limit = ray_limit(&ray);

    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut json_rows: Vec<serde_json::Value> = Vec::new();
    if format == Format::Csv {
        writeln!(out, "t,distance").map_err(write_failed)?;
    }
    for k in 0..steps {
        let t = if steps == 1 || k == steps - 1 {
            tmax
        } else {
            tmax.powf(k as f64 / (steps - 1) as f64)
        };
        let d = ray_unitary_at(&ray, t).distance(&limit);
        match format {
            Format::Csv => writeln!(out, "{t},{d}").map_err(write_failed)?,
            Format::Json => json_rows.push(json!({ "t": t, "distance": d })),
        }
    }
    if format == Format::Json {
        writeln!(out, "{}", serde_json::Value::Array(json_rows)).map_err(write_failed)?;
    }
    out.flush().map_err(write_failed)
}

fn cmd_snf(matrix: Option<String>, settings: &Settings) -> Result<(), CliError> {
    resolve_format(settings, Format::Json, "snf")?;
    let a = parse_integer_matrix(matrix.as_deref().unwrap_or("-"))?;
    let dec = smith_normal_form(&a);
    let coker = cokernel(&a);
    let ker = kernel(&a);
    println!(
        "{}",
        json!({
            "U": dec.u,
            "D": dec.d,
            "V": dec.v,
            "cokernel": coker,
            "kernel": { "group": ker.group, "basis": ker.basis },
        })
    );
    Ok(())
}

fn cmd_surgery(matrix: &str, settings: &Settings) -> Result<(), CliError> {
    resolve_format(settings, Format::Json, "surgery")?;
    let q = parse_integer_matrix(matrix)?;
    let link = FramedLinkMatrix::new(q).map_err(|e| match e {
        SurgeryError::NotSquare { .. } => domain("not_square", e),
        SurgeryError::NotSymmetric { .. } => domain("not_symmetric", e),
    })?;
    let h = surgery_homology(&link);
    println!("{}", json!({ "H1": h.h1, "H2": h.h2 }));
    Ok(())
}

fn cmd_bw(
    space: Option<String>,
    compose: Option<Vec<String>>,
    settings: &Settings,
) -> Result<(), CliError> {
    resolve_format(settings, Format::Json, "bw")?;
    match (space, compose) {
        (None, None) => {
            println!(
                "{}",
                json!({ "spaces": registry(), "facts": facts() })
            );
            Ok(())
        }
        (None, Some(_)) => Err(usage("--compose requires --space")),
        (Some(name), None) => {
            let desc = find_space(&name)
                .ok_or_else(|| domain("unknown_space", format!("no space named `{name}`")))?;
            println!(
                "{}",
                serde_json::to_string(&desc).expect("descriptor serializes")
            );
            Ok(())
        }
        (Some(name), Some(elements)) => {
            let desc = find_space(&name)
                .ok_or_else(|| domain("unknown_space", format!("no space named `{name}`")))?;
            let a = parse_bw(&desc, &elements[0])?;
            let b = parse_bw(&desc, &elements[1])?;
            let result = bw_compose(&desc, &a, &b).map_err(|e| domain("bw", e))?;
            println!(
                "{}",
                json!({
                    "space": desc.name,
                    "result": result,
                    "display": result.to_string(),
                })
            );
            Ok(())
        }
    }
}

fn parse_bw(
    desc: &minkowski_u2::bw::SpaceDescriptor,
    input: &str,
) -> Result<minkowski_u2::bw::BwElement, CliError> {
    desc.parse_element(input).map_err(|e| match e {
        BwError::MalformedElement { .. } => usage(e.to_string()),
        other => domain("bw", other),
    })
}
