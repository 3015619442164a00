//! Parsers for the CLI's structured string inputs.
//!
//! These accept untrusted command-line text, so every function here is total:
//! any input either parses or returns [`Error::Parse`], never panics, and
//! sweep expansion is capped so hostile steps cannot allocate unbounded
//! memory. Each parser has a matching fuzz target under `fuzz/fuzz_targets/`.

use num_complex::Complex64;

use crate::caratheodory::GridSpec;
use crate::subclass::ClassSpec;
use crate::Error;

/// Inclusive-endpoint cap on how many values a sweep may expand to.
pub const MAX_SWEEP_POINTS: usize = 100_000;

/// Relative slack when deciding whether a sweep hits its right endpoint.
const SWEEP_EPS: f64 = 1e-12;

fn parse_err(what: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn finite_f64(what: &'static str, input: &str, s: &str) -> Result<f64, Error> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|e| parse_err(what, input, format!("{e}")))?;
    if !v.is_finite() {
        return Err(parse_err(what, input, "value must be finite"));
    }
    Ok(v)
}

/// Parses a parameter sweep: either a single value `"x"` or an inclusive
/// range `"start:end:step"`. Endpoints count as hit within a relative
/// `1e−12`, so branch boundaries like `0:1:0.25` land exactly on `1`.
pub fn parse_sweep(input: &str) -> Result<Vec<f64>, Error> {
    const WHAT: &str = "sweep";
    let parts: Vec<&str> = input.split(':').collect();
    match parts.len() {
        1 => Ok(vec![finite_f64(WHAT, input, parts[0])?]),
        3 => {
            let start = finite_f64(WHAT, input, parts[0])?;
            let end = finite_f64(WHAT, input, parts[1])?;
            let step = finite_f64(WHAT, input, parts[2])?;
            if start == end {
                return Ok(vec![start]);
            }
            if step <= 0.0 {
                return Err(parse_err(WHAT, input, "step must be positive"));
            }
            if end < start {
                return Err(parse_err(WHAT, input, "end must not be below start"));
            }
            let span = end - start;
            let count = span / step;
            if !count.is_finite() || count > (MAX_SWEEP_POINTS - 1) as f64 {
                return Err(parse_err(
                    WHAT,
                    input,
                    format!("sweep would exceed {MAX_SWEEP_POINTS} points"),
                ));
            }
            let slack = SWEEP_EPS * end.abs().max(1.0);
            let mut out = Vec::new();
            let mut k = 0usize;
            loop {
                let v = start + step * k as f64;
                if v > end + slack {
                    break;
                }
                // snap the endpoint so inclusive ranges end exactly
                out.push(if (v - end).abs() <= slack { end } else { v });
                k += 1;
            }
            if out.is_empty() {
                return Err(parse_err(WHAT, input, "empty sweep"));
            }
            Ok(out)
        }
        _ => Err(parse_err(
            WHAT,
            input,
            "expected a number or start:end:step",
        )),
    }
}

/// Parses a complex number given as `"re,im"`; a bare `"re"` means `re + 0i`.
pub fn parse_complex_pair(input: &str) -> Result<Complex64, Error> {
    const WHAT: &str = "complex pair";
    let parts: Vec<&str> = input.split(',').collect();
    match parts.len() {
        1 => Ok(Complex64::new(finite_f64(WHAT, input, parts[0])?, 0.0)),
        2 => Ok(Complex64::new(
            finite_f64(WHAT, input, parts[0])?,
            finite_f64(WHAT, input, parts[1])?,
        )),
        _ => Err(parse_err(WHAT, input, "expected re,im")),
    }
}

/// Hard cap on grid cells accepted from the command line (~64 times the
/// default resolution).
pub const MAX_GRID_CELLS: usize = 400_000_000;

/// Parses a grid resolution triple `"NR,NRHO,NPHI"`.
pub fn parse_grid(input: &str) -> Result<GridSpec, Error> {
    const WHAT: &str = "grid";
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 3 {
        return Err(parse_err(WHAT, input, "expected NR,NRHO,NPHI"));
    }
    let mut dims = [0usize; 3];
    for (slot, part) in dims.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| parse_err(WHAT, input, format!("{e}")))?;
    }
    let cells = dims[0]
        .checked_mul(dims[1])
        .and_then(|x| x.checked_mul(dims[2]))
        .ok_or_else(|| parse_err(WHAT, input, "grid size overflows"))?;
    if cells > MAX_GRID_CELLS {
        return Err(parse_err(
            WHAT,
            input,
            format!("grid has {cells} cells, cap is {MAX_GRID_CELLS}"),
        ));
    }
    GridSpec::new(dims[0], dims[1], dims[2])
}

/// Class selectors accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassName {
    S,
    Starlike,
    Convex,
    StronglyStarlike,
    StronglyConvex,
    Ozaki,
    F0,
    Spirallike,
    GammaConvex,
    All,
}

impl ClassName {
    pub fn label(&self) -> &'static str {
        match self {
            ClassName::S => "s",
            ClassName::Starlike => "starlike",
            ClassName::Convex => "convex",
            ClassName::StronglyStarlike => "strongly_starlike",
            ClassName::StronglyConvex => "strongly_convex",
            ClassName::Ozaki => "ozaki",
            ClassName::F0 => "f0",
            ClassName::Spirallike => "spirallike",
            ClassName::GammaConvex => "gamma_convex",
            ClassName::All => "all",
        }
    }

    pub const ALL_NAMES: [&'static str; 10] = [
        "s",
        "starlike",
        "convex",
        "strongly_starlike",
        "strongly_convex",
        "ozaki",
        "f0",
        "spirallike",
        "gamma_convex",
        "all",
    ];
}

/// Parses a class selector name (as listed in `ClassName::ALL_NAMES`).
pub fn parse_class(input: &str) -> Result<ClassName, Error> {
    match input.trim().to_ascii_lowercase().as_str() {
        "s" => Ok(ClassName::S),
        "starlike" => Ok(ClassName::Starlike),
        "convex" => Ok(ClassName::Convex),
        "strongly_starlike" => Ok(ClassName::StronglyStarlike),
        "strongly_convex" => Ok(ClassName::StronglyConvex),
        "ozaki" => Ok(ClassName::Ozaki),
        "f0" => Ok(ClassName::F0),
        "spirallike" => Ok(ClassName::Spirallike),
        "gamma_convex" => Ok(ClassName::GammaConvex),
        "all" => Ok(ClassName::All),
        _ => Err(parse_err(
            "class",
            input,
            format!("known classes: {}", ClassName::ALL_NAMES.join(", ")),
        )),
    }
}

/// Instantiates class specs for a selector from (possibly swept) parameters.
/// Sweep values outside a class's admissible range are skipped, so a sweep
/// like `0:1:0.1` against `strongly_starlike` yields the ten valid points.
/// Errors only if nothing remains.
pub fn instantiate_classes(
    name: ClassName,
    alphas: &[f64],
    nus: &[f64],
    lambdas: &[f64],
    gammas: &[f64],
) -> Result<Vec<ClassSpec>, Error> {
    let mut out = Vec::new();
    match name {
        ClassName::S => out.push(ClassSpec::S),
        ClassName::Starlike => {
            for &a in alphas {
                if let Ok(cs) = ClassSpec::starlike_of_order(a) {
                    out.push(cs);
                }
            }
        }
        ClassName::Convex => {
            for &a in alphas {
                if let Ok(cs) = ClassSpec::convex_of_order(a) {
                    out.push(cs);
                }
            }
        }
        ClassName::StronglyStarlike => {
            for &a in alphas {
                if let Ok(cs) = ClassSpec::strongly_starlike(a) {
                    out.push(cs);
                }
            }
        }
        ClassName::StronglyConvex => {
            for &a in alphas {
                if let Ok(cs) = ClassSpec::strongly_convex(a) {
                    out.push(cs);
                }
            }
        }
        ClassName::Ozaki => {
            for &n in nus {
                if let Ok(cs) = ClassSpec::ozaki(n) {
                    out.push(cs);
                }
            }
        }
        ClassName::F0 => {
            for &l in lambdas {
                if let Ok(cs) = ClassSpec::f0(l) {
                    out.push(cs);
                }
            }
        }
        ClassName::Spirallike => {
            for &g in gammas {
                for &a in alphas {
                    if let Ok(cs) = ClassSpec::spirallike(g, a) {
                        out.push(cs);
                    }
                }
            }
        }
        ClassName::GammaConvex => {
            for &g in gammas {
                for &a in alphas {
                    if let Ok(cs) = ClassSpec::gamma_convex(g, a) {
                        out.push(cs);
                    }
                }
            }
        }
        ClassName::All => unreachable!("expanded by the caller"),
    }
    if out.is_empty() {
        return Err(Error::ParameterOutOfRange(format!(
            "no admissible parameter points for class {}",
            name.label()
        )));
    }
    Ok(out)
}
