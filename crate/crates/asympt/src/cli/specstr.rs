//! Parsers for the CLI mini-grammar: family and phi spec strings
//! (`name:key=val,...` with rationals written `a/b`) and geometric
//! grids (`start:end:x2`). Errors carry the byte position of the
//! offending token.

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::families::FamilySpec;
use crate::phicat::PhiSpec;
use crate::scalar::Scalar;

fn err(message: impl Into<String>, position: usize) -> Error {
    Error::Parse {
        message: message.into(),
        position,
    }
}

/// `(key, value, byte position of the value)` triples.
type KeyValues<'a> = Vec<(&'a str, &'a str, usize)>;

/// Splits `name:key=val,key=val` into the name and (key, val, position)
/// triples, where the position points at the value.
fn split_spec(s: &str) -> Result<(&str, KeyValues<'_>)> {
    let (name, rest) = match s.find(':') {
        Some(i) => (&s[..i], Some((&s[i + 1..], i + 1))),
        None => (s, None),
    };
    if name.is_empty() {
        return Err(err("empty spec name", 0));
    }
    let mut pairs = Vec::new();
    if let Some((args, base)) = rest {
        if args.is_empty() {
            return Err(err("expected key=value after ':'", base));
        }
        let mut offset = base;
        for part in args.split(',') {
            let eq = part
                .find('=')
                .ok_or_else(|| err(format!("expected key=value, found {part:?}"), offset))?;
            let key = &part[..eq];
            let val = &part[eq + 1..];
            if key.is_empty() || val.is_empty() {
                return Err(err(format!("malformed key=value pair {part:?}"), offset));
            }
            pairs.push((key, val, offset + eq + 1));
            offset += part.len() + 1;
        }
    }
    Ok((name, pairs))
}

fn parse_rational(val: &str, pos: usize) -> Result<Rational> {
    val.parse().map_err(|_| {
        err(
            format!("expected an exact rational like 2/3, found {val:?}"),
            pos,
        )
    })
}

/// Exact rational when written `a/b` or as an integer; float otherwise.
fn parse_scalar(val: &str, pos: usize) -> Result<Scalar> {
    if let Ok(r) = val.parse::<Rational>() {
        return Ok(Scalar::Exact(r));
    }
    val.parse::<f64>()
        .map(Scalar::Real)
        .map_err(|_| err(format!("expected a number, found {val:?}"), pos))
}

/// `poisson`, `gamma`, `binomial:p=1/3`, `nb:p=1/2` (alias
/// `negbinomial`). Custom i.i.d. families are a library-level construct
/// with no spec-string syntax.
pub fn parse_family(s: &str) -> Result<FamilySpec> {
    let (name, pairs) = split_spec(s)?;
    let find_p = |required: bool| -> Result<Option<Rational>> {
        let mut p = None;
        for (key, val, pos) in &pairs {
            match *key {
                "p" => p = Some(parse_rational(val, *pos)?),
                other => {
                    return Err(err(
                        format!("unknown key {other:?} for family {name:?}"),
                        *pos - other.len() - 1,
                    ))
                }
            }
        }
        if required && p.is_none() {
            return Err(err(format!("family {name:?} requires p=<rational>"), 0));
        }
        Ok(p)
    };
    match name {
        "poisson" => {
            find_p(false)?.map_or(Ok(()), |_| Err(err("poisson takes no parameters", 0)))?;
            Ok(FamilySpec::poisson())
        }
        "gamma" => {
            find_p(false)?.map_or(Ok(()), |_| Err(err("gamma takes no parameters", 0)))?;
            Ok(FamilySpec::gamma())
        }
        "binomial" => FamilySpec::binomial(find_p(true)?.expect("checked")),
        "nb" | "negbinomial" => FamilySpec::neg_binomial(find_p(true)?.expect("checked")),
        other => Err(err(format!("unknown family {other:?}"), 0)),
    }
}

/// `power:r=<num>,a=<num>`, `log:beta=<num>`, `xlogx`.
pub fn parse_phi(s: &str) -> Result<PhiSpec> {
    let (name, pairs) = split_spec(s)?;
    let get = |wanted: &str| -> Result<Option<Scalar>> {
        for (key, val, pos) in &pairs {
            if *key == wanted {
                return Ok(Some(parse_scalar(val, *pos)?));
            }
        }
        Ok(None)
    };
    match name {
        "power" => {
            let r = get("r")?.ok_or_else(|| err("power requires r=<num>", 0))?;
            let a = get("a")?.unwrap_or_else(Scalar::zero);
            for (key, _, pos) in &pairs {
                if *key != "r" && *key != "a" {
                    return Err(err(
                        format!("unknown key {key:?} for phi \"power\""),
                        *pos - key.len() - 1,
                    ));
                }
            }
            PhiSpec::power_shift(r, a)
        }
        "log" => {
            let beta = get("beta")?.ok_or_else(|| err("log requires beta=<num>", 0))?;
            for (key, _, pos) in &pairs {
                if *key != "beta" {
                    return Err(err(
                        format!("unknown key {key:?} for phi \"log\""),
                        *pos - key.len() - 1,
                    ));
                }
            }
            PhiSpec::log_shift(beta)
        }
        "xlogx" => {
            if !pairs.is_empty() {
                return Err(err("xlogx takes no parameters", 0));
            }
            Ok(PhiSpec::x_log_x())
        }
        other => Err(err(format!("unknown phi {other:?}"), 0)),
    }
}

/// `start:end:xK` (geometric, factor `K >= 2`) or a comma-separated
/// list of explicit values. Values are exact rationals.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>> {
    if let Some(rest) = s.find(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(err("grid must be start:end:xK", rest));
        }
        let start = parse_rational(parts[0], 0)?;
        let end = parse_rational(parts[1], parts[0].len() + 1)?;
        let factor_pos = parts[0].len() + parts[1].len() + 2;
        let factor_str = parts[2]
            .strip_prefix('x')
            .ok_or_else(|| err("grid factor must look like x2", factor_pos))?;
        let factor: i64 = factor_str
            .parse()
            .map_err(|_| err(format!("bad grid factor {:?}", parts[2]), factor_pos))?;
        if factor < 2 {
            return Err(err("grid factor must be at least 2", factor_pos));
        }
        if !start.is_positive() || end < start {
            return Err(err("grid needs 0 < start <= end", 0));
        }
        let mut out = Vec::new();
        let mut v = start;
        let f = Rational::from(factor);
        while v <= end {
            out.push(v.clone());
            v = &v * &f;
        }
        Ok(out)
    } else {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            out.push(parse_rational(part, offset)?);
            offset += part.len() + 1;
        }
        Ok(out)
    }
}
