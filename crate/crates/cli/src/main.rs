//! `barq`: compute, compare, certify and render exact graded barcodes.
//!
//! Exit codes: 0 success, 1 a verification answered "no", 2 bad input,
//! 3 internal error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use barq_core::barcode::{Bar, Endpoint};
use barq_core::bottleneck::{bottleneck, quotient};
use barq_core::complex::verify_filtered_map;
use barq_core::demo::{
    distinguish_powers, twist_complex, TwistComplexSpec, Verdict, VerdictMethod,
};
use barq_core::io::{
    barcode_from_doc, barcode_to_doc, complex_from_doc, complex_to_doc, filtered_map_from_doc,
    format_endpoint, format_rational, matching_cert_to_doc, parse_rational, to_canonical_json,
    twist_spec_from_doc, MatchingCertDoc, SCHEMA,
};
use barq_core::matching::verify_delta_matching;
use barq_core::module::realize;
use barq_core::{rational, Barcode, Complex, Error, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "barq",
    version,
    about = "Exact graded barcodes and action-filtered complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on graded barcode documents
    Barcode {
        #[command(subcommand)]
        cmd: BarcodeCmd,
    },
    /// Operations on filtered complex documents
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Generate the spherical twist complex and compare powers
    Twist(TwistArgs),
    /// Randomized internal consistency checks
    Selftest,
}

#[derive(Subcommand)]
enum BarcodeCmd {
    /// Bottleneck distance with a realizing matching certificate
    Distance { left: PathBuf, right: PathBuf },
    /// Distance in the shift-quotient space, with the optimal shift
    Qdistance { left: PathBuf, right: PathBuf },
    /// Semi-infinite bar counts per degree
    Sigma { file: PathBuf },
    /// Shift the action by a rational amount
    Shift {
        #[arg(long, value_name = "p/q")]
        by: String,
        file: PathBuf,
    },
    /// Drop finite bars shorter than a threshold
    Truncate {
        #[arg(long, value_name = "p/q")]
        eps: String,
        file: PathBuf,
    },
    /// Draw the barcode as an SVG file
    Render {
        #[arg(long, value_name = "OUT.svg")]
        svg: PathBuf,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaMode {
    Diam,
    Fund,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Barcode of the action filtration
    Persistence { file: PathBuf },
    /// Multiset of generator actions
    Spectrum { file: PathBuf },
    /// Left endpoints of semi-infinite bars, per degree
    Selectors { file: PathBuf },
    /// Spectral invariant gap
    Gamma {
        #[arg(long, value_enum, default_value = "diam")]
        mode: GammaMode,
        /// Top degree for --mode fund
        #[arg(long)]
        top: Option<i64>,
        file: PathBuf,
    },
    /// Tensor product of two complexes
    Tensor { left: PathBuf, right: PathBuf },
    /// Dual complex (degrees and actions negated)
    Dual { file: PathBuf },
    /// Check a candidate filtered chain map
    VerifyMap { file: PathBuf },
}

#[derive(Parser)]
struct TwistArgs {
    /// Half the twist power: builds the complex for tau^(2m)
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Sphere dimension (even, >= 2)
    #[arg(long, default_value_t = 2)]
    n: i64,
    /// Read the generator data from a twist spec document instead
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Compare tau^(2 k1) against tau^(2 k2)
    #[arg(long, requires = "k2", allow_negative_numbers = true)]
    k1: Option<i64>,
    #[arg(long, requires = "k1", allow_negative_numbers = true)]
    k2: Option<i64>,
    /// Write the complex document to a file instead of standard output
    #[arg(long, value_name = "OUT.json")]
    emit: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Rank { .. } | Error::Undefined(_) => 1,
                Error::Parse(_)
                | Error::Structural(_)
                | Error::Range(_)
                | Error::Precondition(_) => 2,
            })
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Structural(format!("cannot write {}: {e}", path.display())))
}

fn load_barcode(path: &Path) -> Result<Barcode, Error> {
    let doc = barq_core::io::from_json_str(&read_file(path)?, "barcode document")?;
    let barcode = barcode_from_doc(&doc)?;
    let diags = barcode.validate();
    if !diags.is_empty() {
        return Err(Error::Parse(format!(
            "{}: {}",
            path.display(),
            diags.join("; ")
        )));
    }
    Ok(barcode)
}

fn load_complex(path: &Path) -> Result<Complex, Error> {
    let doc = barq_core::io::from_json_str(&read_file(path)?, "complex document")?;
    let complex = complex_from_doc(&doc)?;
    let diags = complex.validate();
    if !diags.is_empty() {
        return Err(Error::Parse(format!(
            "{}: {}",
            path.display(),
            diags.join("; ")
        )));
    }
    Ok(complex)
}

fn emit<T: Serialize>(doc: &T) {
    print!("{}", to_canonical_json(doc));
}

#[derive(Serialize)]
struct DistanceOut {
    schema: String,
    distance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<MatchingCertDoc>,
}

#[derive(Serialize)]
struct SigmaOut {
    schema: String,
    sigma: BTreeMap<String, usize>,
    total: usize,
}

#[derive(Serialize)]
struct RenderOut {
    schema: String,
    file: String,
    rects: usize,
    arrows: usize,
}

#[derive(Serialize)]
struct SpectrumOut {
    schema: String,
    spectrum: Vec<String>,
}

#[derive(Serialize)]
struct SelectorsOut {
    schema: String,
    selectors: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
struct GammaOut {
    schema: String,
    mode: String,
    gamma: String,
}

#[derive(Serialize)]
struct VerifyOut {
    schema: String,
    valid: bool,
}

#[derive(Serialize)]
struct VerdictOut {
    schema: String,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma_first: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma_second: Option<usize>,
    justification: Vec<String>,
}

#[derive(Serialize)]
struct SelftestOut {
    schema: String,
    seed: u64,
    checks: usize,
    ok: bool,
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Barcode { cmd } => run_barcode(cmd),
        Command::Complex { cmd } => run_complex(cmd),
        Command::Twist(args) => run_twist(args),
        Command::Selftest => run_selftest(),
    }
}

fn run_barcode(cmd: BarcodeCmd) -> Result<u8, Error> {
    match cmd {
        BarcodeCmd::Distance { left, right } => {
            let (a, b) = (load_barcode(&left)?, load_barcode(&right)?);
            let res = bottleneck(&a, &b);
            emit(&DistanceOut {
                schema: SCHEMA.to_string(),
                distance: format_endpoint(&res.distance),
                shift: None,
                certificate: res.certificate.as_ref().map(matching_cert_to_doc),
            });
            Ok(0)
        }
        BarcodeCmd::Qdistance { left, right } => {
            let (a, b) = (load_barcode(&left)?, load_barcode(&right)?);
            let res = quotient(&a, &b);
            emit(&DistanceOut {
                schema: SCHEMA.to_string(),
                distance: format_endpoint(&res.distance),
                shift: Some(format_rational(&res.shift)),
                certificate: res.certificate.as_ref().map(matching_cert_to_doc),
            });
            Ok(0)
        }
        BarcodeCmd::Sigma { file } => {
            let b = load_barcode(&file)?;
            emit(&SigmaOut {
                schema: SCHEMA.to_string(),
                sigma: b
                    .sigma_infinity()
                    .into_iter()
                    .map(|(deg, count)| (deg.to_string(), count))
                    .collect(),
                total: b.sigma_infinity_total(),
            });
            Ok(0)
        }
        BarcodeCmd::Shift { by, file } => {
            let b = load_barcode(&file)?;
            emit(&barcode_to_doc(&b.shift(&parse_rational(&by)?)));
            Ok(0)
        }
        BarcodeCmd::Truncate { eps, file } => {
            let b = load_barcode(&file)?;
            emit(&barcode_to_doc(&b.truncate(&parse_rational(&eps)?)?));
            Ok(0)
        }
        BarcodeCmd::Render { svg, file } => {
            let b = load_barcode(&file)?;
            let (contents, rects, arrows) = render_svg(&b);
            write_file(&svg, &contents)?;
            emit(&RenderOut {
                schema: SCHEMA.to_string(),
                file: svg.display().to_string(),
                rects,
                arrows,
            });
            Ok(0)
        }
    }
}

fn run_complex(cmd: ComplexCmd) -> Result<u8, Error> {
    match cmd {
        ComplexCmd::Persistence { file } => {
            let c = load_complex(&file)?;
            emit(&barcode_to_doc(&c.persistence_barcode()?));
            Ok(0)
        }
        ComplexCmd::Spectrum { file } => {
            let c = load_complex(&file)?;
            emit(&SpectrumOut {
                schema: SCHEMA.to_string(),
                spectrum: c.spectrum().iter().map(format_rational).collect(),
            });
            Ok(0)
        }
        ComplexCmd::Selectors { file } => {
            let c = load_complex(&file)?;
            emit(&SelectorsOut {
                schema: SCHEMA.to_string(),
                selectors: c
                    .selectors()?
                    .into_iter()
                    .map(|(deg, vs)| (deg.to_string(), vs.iter().map(format_rational).collect()))
                    .collect(),
            });
            Ok(0)
        }
        ComplexCmd::Gamma { mode, top, file } => {
            let c = load_complex(&file)?;
            let (label, value) = match mode {
                GammaMode::Diam => ("diam", c.gamma_diam()?),
                GammaMode::Fund => {
                    let top = top.ok_or_else(|| {
                        Error::Parse("--mode fund requires --top <degree>".to_string())
                    })?;
                    ("fund", c.gamma_fund(top)?)
                }
            };
            emit(&GammaOut {
                schema: SCHEMA.to_string(),
                mode: label.to_string(),
                gamma: format_rational(&value),
            });
            Ok(0)
        }
        ComplexCmd::Tensor { left, right } => {
            let (a, b) = (load_complex(&left)?, load_complex(&right)?);
            emit(&complex_to_doc(&a.tensor(&b)));
            Ok(0)
        }
        ComplexCmd::Dual { file } => {
            let c = load_complex(&file)?;
            emit(&complex_to_doc(&c.dual()));
            Ok(0)
        }
        ComplexCmd::VerifyMap { file } => {
            let doc = barq_core::io::from_json_str(&read_file(&file)?, "filtered map")?;
            let map = filtered_map_from_doc(&doc)?;
            let valid = verify_filtered_map(&map)?;
            emit(&VerifyOut {
                schema: SCHEMA.to_string(),
                valid,
            });
            Ok(if valid { 0 } else { 1 })
        }
    }
}

fn run_twist(args: TwistArgs) -> Result<u8, Error> {
    if let (Some(k1), Some(k2)) = (args.k1, args.k2) {
        let verdict = distinguish_powers::<Rational>(k1, k2, args.n)?;
        let out = match verdict {
            Verdict::Different {
                method,
                sigma_first,
                sigma_second,
                justification,
            } => VerdictOut {
                schema: SCHEMA.to_string(),
                verdict: "different".to_string(),
                method: Some(
                    match method {
                        VerdictMethod::Direct => "direct",
                        VerdictMethod::Squaring => "squaring",
                    }
                    .to_string(),
                ),
                sigma_first: Some(sigma_first),
                sigma_second: Some(sigma_second),
                justification,
            },
            Verdict::Inconclusive { reason } => VerdictOut {
                schema: SCHEMA.to_string(),
                verdict: "inconclusive".to_string(),
                method: None,
                sigma_first: None,
                sigma_second: None,
                justification: vec![reason],
            },
        };
        emit(&out);
        return Ok(0);
    }

    let spec = match &args.spec {
        Some(path) => {
            let doc = barq_core::io::from_json_str(&read_file(path)?, "twist spec")?;
            twist_spec_from_doc(&doc)?
        }
        None => TwistComplexSpec::with_defaults(args.m, args.n),
    };
    let doc = complex_to_doc(&twist_complex(&spec)?);
    match &args.emit {
        Some(path) => write_file(path, &to_canonical_json(&doc))?,
        None => emit(&doc),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// SVG rendering
//
// Fixed layout: 640px wide, 16px per bar row, 40px margins; the action axis
// is scaled to span the finite endpoints. Finite bars are rectangles,
// semi-infinite bars end in a triangular arrowhead at the right edge.

fn render_svg(b: &Barcode) -> (String, usize, usize) {
    let margin = 40.0;
    let width = 640.0;
    let row = 16.0;
    let height = margin * 2.0 + row * b.len() as f64;

    let mut values: Vec<&Rational> = b.bars.iter().map(|bar| &bar.left).collect();
    for bar in &b.bars {
        if let Endpoint::Finite(r) = &bar.right {
            values.push(r);
        }
    }
    let to_f = |r: &Rational| -> f64 {
        let n: f64 = r.numer().to_string().parse().unwrap_or(0.0);
        let d: f64 = r.denom().to_string().parse().unwrap_or(1.0);
        n / d
    };
    let lo = values.iter().map(|v| to_f(v)).fold(f64::INFINITY, f64::min);
    let hi = values
        .iter()
        .map(|v| to_f(v))
        .fold(f64::NEG_INFINITY, f64::max);
    let (lo, span) = if values.is_empty() || hi <= lo {
        (lo.min(0.0), 1.0)
    } else {
        (lo, hi - lo)
    };
    let x = |v: f64| margin + (v - lo) / span * (width - 2.0 * margin);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    let mut rects = 0;
    let mut arrows = 0;
    for (i, bar) in b.bars.iter().enumerate() {
        let y = margin + row * i as f64 + 4.0;
        let x0 = x(to_f(&bar.left));
        match &bar.right {
            Endpoint::Finite(r) => {
                let w = (x(to_f(r)) - x0).max(1.0);
                out.push_str(&format!(
                    "  <rect x=\"{x0:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"8\" fill=\"#336\"><title>deg {}: ({}, {}]</title></rect>\n",
                    bar.degree,
                    format_rational(&bar.left),
                    format_endpoint(&bar.right),
                ));
                rects += 1;
            }
            Endpoint::Infinity => {
                let tip = width - margin / 2.0;
                out.push_str(&format!(
                    "  <line x1=\"{x0:.2}\" y1=\"{:.2}\" x2=\"{tip:.2}\" y2=\"{:.2}\" stroke=\"#633\" stroke-width=\"8\"/>\n",
                    y + 4.0,
                    y + 4.0,
                ));
                out.push_str(&format!(
                    "  <polygon class=\"arrow\" points=\"{tip:.2},{y:.2} {tip:.2},{:.2} {:.2},{:.2}\" fill=\"#633\"/>\n",
                    y + 8.0,
                    tip + 8.0,
                    y + 4.0,
                ));
                arrows += 1;
            }
        }
    }
    out.push_str("</svg>\n");
    (out, rects, arrows)
}

// ---------------------------------------------------------------------------
// selftest

fn selftest_rand_barcode(r: &mut rand_chacha::ChaCha8Rng) -> Barcode {
    let n = r.gen_range(0..=5);
    Barcode::new(
        (0..n)
            .map(|_| {
                let deg = r.gen_range(0..=2);
                let left = rational(r.gen_range(-16..=16), 8);
                if r.gen_bool(0.3) {
                    Bar::infinite(deg, left)
                } else {
                    let len = rational(r.gen_range(1..=16), 8);
                    Bar::finite(deg, left.clone(), left + len)
                }
            })
            .collect(),
    )
}

fn run_selftest() -> Result<u8, Error> {
    let seed = std::env::var("PERSIST_TWIST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0u64);
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut ok = true;

    for _ in 0..20 {
        let a = selftest_rand_barcode(&mut r);
        let b = selftest_rand_barcode(&mut r);
        let res = bottleneck(&a, &b);
        if let Some(cert) = &res.certificate {
            ok &= verify_delta_matching(&a, &b, cert)? == res.distance.is_finite();
            ok &= quotient(&a, &b).distance <= res.distance;
        }
        ok &= realize(&a).decompose()? == a;
        checks += 3;
    }
    for m in 0..=4u32 {
        let spec: TwistComplexSpec<Rational> = TwistComplexSpec::with_defaults(m, 2);
        let total = twist_complex(&spec)?
            .persistence_barcode()?
            .sigma_infinity_total();
        ok &= total == if m == 0 { 2 } else { 2 * m as usize };
        checks += 1;
    }

    emit(&SelftestOut {
        schema: SCHEMA.to_string(),
        seed,
        checks,
        ok,
    });
    Ok(if ok { 0 } else { 1 })
}
