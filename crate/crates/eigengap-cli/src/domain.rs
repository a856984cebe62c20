//! Domain-string parsing.
//!
//! A domain is written `kind` or `kind:param,param,…` with kinds
//! `interval`, `box`, `tri-eq`, `tri-ri`, `ball`, `hemisphere`, `sphere`,
//! `torus`, `clifford`, and `cpn`.  Parameters are positional lengths or
//! named values `n=`, `R=`, `D=`, `d=`.  A length is a positive rational
//! written as an integer (`3`), a fraction (`1/2`), or a decimal (`0.1`),
//! optionally followed by `pi` for π-scaled lengths (`pi`, `2pi`, `1/2pi`).
//! Every numeric value is parsed exactly; decimals become the rational with
//! power-of-ten denominator, never a float.

use eigengap::spectrum::{DomainSpec, Length};
use eigengap::{Error, Rat, Result};

/// Parse one length token such as `3`, `1/2`, `0.1`, `pi`, or `2pi`.
pub fn parse_length(token: &str, pos: usize) -> Result<Length> {
    let (body, pi_exp) = match token.strip_suffix("pi") {
        Some(rest) => (rest, 1u8),
        None => (token, 0u8),
    };
    let coeff = if body.is_empty() && pi_exp == 1 {
        Rat::new(1, 1)
    } else {
        parse_rat(body, pos)?
    };
    if coeff <= Rat::new(0, 1) {
        return Err(Error::Parameter(format!(
            "length `{token}` must be positive (byte {pos})"
        )));
    }
    Ok(Length { coeff, pi_exp })
}

/// Parse an exact rational from integer, fraction, or decimal notation.
pub fn parse_rat(body: &str, pos: usize) -> Result<Rat> {
    let bad = |what: &str| Error::Parameter(format!("{what} `{body}` (byte {pos})"));
    if let Some((num, den)) = body.split_once('/') {
        let n: i64 = num.parse().map_err(|_| bad("malformed numerator in"))?;
        let d: i64 = den.parse().map_err(|_| bad("malformed denominator in"))?;
        if d == 0 {
            return Err(bad("zero denominator in"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = body.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("malformed decimal"));
        }
        let negative = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad("malformed decimal"))?
        };
        let digits: i64 = frac.parse().map_err(|_| bad("malformed decimal"))?;
        let den = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(|| bad("too many decimal digits in"))?;
        let whole = int
            .checked_mul(den)
            .ok_or_else(|| bad("out-of-range decimal"))?;
        let num = if negative {
            whole.checked_sub(digits)
        } else {
            whole.checked_add(digits)
        }
        .ok_or_else(|| bad("out-of-range decimal"))?;
        return Ok(Rat::new(num, den));
    }
    let n: i64 = body.parse().map_err(|_| bad("malformed number"))?;
    Ok(Rat::new(n, 1))
}

struct Param<'a> {
    name: Option<&'a str>,
    value: &'a str,
    pos: usize,
}

fn split_params(rest: &str, base: usize) -> Result<Vec<Param<'_>>> {
    let mut params = Vec::new();
    let mut pos = base;
    for piece in rest.split(',') {
        if piece.is_empty() {
            return Err(Error::Parameter(format!(
                "empty parameter (byte {pos})"
            )));
        }
        let param = match piece.split_once('=') {
            Some((name, value)) => Param {
                name: Some(name),
                value,
                pos,
            },
            None => Param {
                name: None,
                value: piece,
                pos,
            },
        };
        params.push(param);
        pos += piece.len() + 1;
    }
    Ok(params)
}

fn parse_u32(p: &Param<'_>) -> Result<u32> {
    p.value.parse().map_err(|_| {
        Error::Parameter(format!(
            "expected a positive integer, got `{}` (byte {})",
            p.value, p.pos
        ))
    })
}

fn reject_named(kind: &str, params: &[Param<'_>]) -> Result<()> {
    if let Some(p) = params.iter().find(|p| p.name.is_some()) {
        return Err(Error::Parameter(format!(
            "`{kind}` takes positional parameters only, got `{}=` (byte {})",
            p.name.unwrap(),
            p.pos
        )));
    }
    Ok(())
}

fn single_length(kind: &str, name: &str, params: &[Param<'_>]) -> Result<Length> {
    match params {
        [] => Ok(Length::of(1, 1)),
        [p] => {
            if let Some(given) = p.name {
                if given != name {
                    return Err(Error::Parameter(format!(
                        "`{kind}` takes `{name}=`, got `{given}=` (byte {})",
                        p.pos
                    )));
                }
            }
            parse_length(p.value, p.pos)
        }
        [_, extra, ..] => Err(Error::Parameter(format!(
            "`{kind}` takes at most one parameter, got `{}` (byte {})",
            extra.value, extra.pos
        ))),
    }
}

fn single_dim(kind: &str, default: u32, params: &[Param<'_>]) -> Result<u32> {
    match params {
        [] => Ok(default),
        [p] => {
            if let Some(given) = p.name {
                if given != "n" {
                    return Err(Error::Parameter(format!(
                        "`{kind}` takes `n=`, got `{given}=` (byte {})",
                        p.pos
                    )));
                }
            }
            parse_u32(p)
        }
        [_, extra, ..] => Err(Error::Parameter(format!(
            "`{kind}` takes at most one parameter, got `{}` (byte {})",
            extra.value, extra.pos
        ))),
    }
}

fn no_params(kind: &str, params: &[Param<'_>]) -> Result<()> {
    if let Some(p) = params.first() {
        return Err(Error::Parameter(format!(
            "`{kind}` takes no parameters, got `{}` (byte {})",
            p.value, p.pos
        )));
    }
    Ok(())
}

fn length_list(kind: &str, params: &[Param<'_>]) -> Result<Vec<Length>> {
    if params.is_empty() {
        return Err(Error::Parameter(format!(
            "`{kind}` needs at least one side length, e.g. `{kind}:1,1`"
        )));
    }
    reject_named(kind, params)?;
    params
        .iter()
        .map(|p| parse_length(p.value, p.pos))
        .collect()
}

/// Parse and validate a domain string.
pub fn parse_domain(s: &str) -> Result<DomainSpec> {
    let (kind, rest) = match s.split_once(':') {
        Some((kind, rest)) => (kind, Some(rest)),
        None => (s, None),
    };
    let params = match rest {
        Some(rest) => split_params(rest, kind.len() + 1)?,
        None => Vec::new(),
    };
    let domain = match kind {
        "interval" => DomainSpec::Interval {
            length: single_length(kind, "d", &params)?,
        },
        "box" => DomainSpec::Box {
            sides: length_list(kind, &params)?,
        },
        "tri-eq" => DomainSpec::TriangleEquilateral {
            diameter: single_length(kind, "D", &params)?,
        },
        "tri-ri" => DomainSpec::TriangleRightIsosceles {
            leg: single_length(kind, "d", &params)?,
        },
        "ball" => {
            let mut dim = 2u32;
            let mut radius = Length::of(1, 1);
            for p in &params {
                match p.name {
                    Some("n") => dim = parse_u32(p)?,
                    Some("R") | None => radius = parse_length(p.value, p.pos)?,
                    Some(other) => {
                        return Err(Error::Parameter(format!(
                            "`ball` takes `n=` and `R=`, got `{other}=` (byte {})",
                            p.pos
                        )))
                    }
                }
            }
            DomainSpec::Ball { dim, radius }
        }
        "hemisphere" => {
            no_params(kind, &params)?;
            DomainSpec::Hemisphere
        }
        "sphere" => DomainSpec::Sphere {
            dim: single_dim(kind, 2, &params)?,
        },
        "torus" => DomainSpec::FlatTorus {
            sides: length_list(kind, &params)?,
        },
        "clifford" => {
            no_params(kind, &params)?;
            DomainSpec::CliffordTorus
        }
        "cpn" => DomainSpec::ProjectiveSpace {
            complex_dim: single_dim(kind, 1, &params)?,
        },
        other => {
            return Err(Error::Parameter(format!(
                "unknown domain kind `{other}` (byte 0); expected one of \
                 interval, box, tri-eq, tri-ri, ball, hemisphere, sphere, \
                 torus, clifford, cpn"
            )))
        }
    };
    domain.validate()?;
    Ok(domain)
}
