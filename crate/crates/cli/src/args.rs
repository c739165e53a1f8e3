//! Flag parsing: integer ranges, complex numbers, `rho` grids.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use weylosc::{c, Method, MethodChoice, C64};

#[derive(Debug, Parser)]
#[command(name = "weylosc", version, about = "Weyl symbol of the harmonic-oscillator resolvent")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F_{d,z}(rho).
    Eval(Common),
    /// Power-series coefficients c_0 .. c_k.
    SeriesCoeffs(Common),
    /// Large-rho expansion: coefficients d_1 .. d_n, or truncated sums when --rho is given.
    Asymptotic(Common),
    /// n-th rho-derivative; with --s also the derivative bound.
    Derivative(Common),
    /// Spectral projection symbol p_n(rho).
    Projection(Common),
    /// Cross-method sweep and property suites.
    Verify(Common),
    /// Trace pairing of F_{d,z} with p_0 .. p_n against g_n / (E_n - z).
    Certify(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Dimension, or an inclusive range "a:b".
    #[arg(long)]
    pub d: Option<String>,
    /// Spectral parameter as "a+bi".
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["z_re", "z_im"])]
    pub z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z_im: Option<f64>,
    /// A value or "start:stop:count:log|lin".
    #[arg(long)]
    pub rho: Option<String>,
    /// auto, quadrature, series, confluent, bessel, elementary or asymptotic.
    #[arg(long, default_value = "auto")]
    pub method: String,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A malformed flag value; reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

pub fn parse_dims(s: &str) -> Result<Vec<u32>, UsageError> {
    let parse = |t: &str| -> Result<u32, UsageError> {
        match t.trim().parse::<u32>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => usage(format!("invalid dimension '{t}'")),
        }
    };
    match s.split_once(':') {
        None => Ok(vec![parse(s)?]),
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return usage(format!("empty dimension range '{s}'"));
            }
            Ok((a..=b).collect())
        }
    }
}

/// Parses `"a"`, `"bi"`, `"a+bi"`, `"a-bi"` (with `i` or `j`).
pub fn parse_complex(s: &str) -> Result<C64, UsageError> {
    let t: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
    let bad = || UsageError(format!("invalid complex number '{s}'"));
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(c(num(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(x),
    };
    let z = match split {
        Some(i) => c(num(&body[..i])?, imag(&body[i..])?),
        None => c(0.0, imag(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

pub fn parse_rho(s: &str) -> Result<Vec<f64>, UsageError> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| -> Result<f64, UsageError> {
        match x.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
            _ => usage(format!("invalid rho '{x}'")),
        }
    };
    match parts.as_slice() {
        [v] => Ok(vec![num(v)?]),
        [a, b, n, kind] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = match n.trim().parse() {
                Ok(n) if n >= 1 => n,
                _ => return usage(format!("rho range needs a positive count, got '{n}'")),
            };
            if n == 1 {
                return Ok(vec![a]);
            }
            let t = |i: usize| i as f64 / (n - 1) as f64;
            match *kind {
                "lin" => Ok((0..n).map(|i| if i == n - 1 { b } else { a + (b - a) * t(i) }).collect()),
                "log" => {
                    if a <= 0.0 || b <= 0.0 {
                        return usage("log rho range needs positive endpoints");
                    }
                    Ok(weylosc::verify::log_grid(a, b, n))
                }
                _ => usage(format!("rho range kind must be 'log' or 'lin', got '{kind}'")),
            }
        }
        _ => usage(format!("rho must be a value or start:stop:count:log|lin, got '{s}'")),
    }
}

pub fn parse_method(s: &str) -> Result<MethodChoice, UsageError> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(MethodChoice::Auto);
    }
    s.parse::<Method>()
        .map(MethodChoice::Explicit)
        .map_err(|_| UsageError(format!("unknown method '{s}'")))
}

/// Flags after validation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dims: Option<Vec<u32>>,
    pub z: Option<C64>,
    pub rho: Option<Vec<f64>>,
    pub method: MethodChoice,
    pub n: Option<u32>,
    pub k: Option<usize>,
    pub s: Option<f64>,
    pub tol: f64,
    pub format: Format,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(a: &Common) -> Result<Self, UsageError> {
        if !(a.tol > 0.0 && a.tol <= 1e-2) {
            return usage(format!("--tol must lie in (0, 1e-2], got {}", a.tol));
        }
        let z = match (&a.z, a.z_re, a.z_im) {
            (Some(s), _, _) => Some(parse_complex(s)?),
            (None, None, None) => None,
            (None, re, im) => Some(c(re.unwrap_or(0.0), im.unwrap_or(0.0))),
        };
        if let Some(s) = a.s {
            if !(0.0..=1.0).contains(&s) {
                return usage(format!("--s must lie in [0, 1], got {s}"));
            }
        }
        Ok(RunConfig {
            dims: a.d.as_deref().map(parse_dims).transpose()?,
            z,
            rho: a.rho.as_deref().map(parse_rho).transpose()?,
            method: parse_method(&a.method)?,
            n: a.n,
            k: a.k,
            s: a.s,
            tol: a.tol,
            format: a.format,
            seed: a.seed,
            out: a.out.clone(),
        })
    }

    pub fn dims(&self) -> Result<&[u32], UsageError> {
        self.dims.as_deref().ok_or_else(|| UsageError("--d is required".into()))
    }

    pub fn z_or_zero(&self) -> C64 {
        self.z.unwrap_or_default()
    }

    pub fn rho(&self) -> Result<&[f64], UsageError> {
        self.rho.as_deref().ok_or_else(|| UsageError("--rho is required".into()))
    }

    pub fn n(&self) -> Result<u32, UsageError> {
        self.n.ok_or_else(|| UsageError("--n is required".into()))
    }
}
