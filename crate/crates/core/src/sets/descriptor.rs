use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `f(n) = a·n + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineFunction {
    a: u64,
    b: i64,
}

impl AffineFunction {
    /// Rejects constant exponents `a = 0, b <= 0`, which are never positive.
    pub fn new(a: u64, b: i64) -> Result<Self> {
        if a == 0 && b <= 0 {
            return Err(Error::invalid(format!(
                "f(n) = {b} is never a positive exponent"
            )));
        }
        Ok(AffineFunction { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `f(n)` if it is a positive exponent that fits in 64 bits.
    pub fn eval(&self, n: u64) -> Option<u64> {
        let v = self.a as i128 * n as i128 + self.b as i128;
        if v < 1 {
            return None;
        }
        u64::try_from(v).ok()
    }
}

/// A named integer family, with its parameters.
///
/// String forms (as used on the command line): `affine:a,b`,
/// `anti-korselt`, `phi-half`, `lambda-half`, `frak-p`, `upsilon:k`,
/// `w:n` (the exponents `k` with `n | S_k(n)`) and `h:k` (the `n` with
/// `n | S_k(n)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SetDescriptor {
    Affine(AffineFunction),
    AntiKorselt,
    PhiHalf,
    LambdaHalf,
    FrakP,
    Upsilon(u32),
    W(u64),
    H(u64),
}

impl SetDescriptor {
    pub fn affine(a: u64, b: i64) -> Result<Self> {
        AffineFunction::new(a, b).map(SetDescriptor::Affine)
    }

    pub fn upsilon(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("upsilon index must be positive"));
        }
        Ok(SetDescriptor::Upsilon(k))
    }

    pub fn w(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("W(n) needs n >= 1"));
        }
        Ok(SetDescriptor::W(n))
    }

    pub fn h(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("H(k) needs k >= 1"));
        }
        Ok(SetDescriptor::H(k))
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDescriptor::Affine(af) => write!(f, "affine:{},{}", af.a, af.b),
            SetDescriptor::AntiKorselt => write!(f, "anti-korselt"),
            SetDescriptor::PhiHalf => write!(f, "phi-half"),
            SetDescriptor::LambdaHalf => write!(f, "lambda-half"),
            SetDescriptor::FrakP => write!(f, "frak-p"),
            SetDescriptor::Upsilon(k) => write!(f, "upsilon:{k}"),
            SetDescriptor::W(n) => write!(f, "w:{n}"),
            SetDescriptor::H(k) => write!(f, "h:{k}"),
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

impl FromStr for SetDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s.as_str(), None),
        };
        let need = |what: &str| {
            args.ok_or_else(|| Error::Parse(format!("`{name}` needs a parameter ({what})")))
        };
        let none = |d: SetDescriptor| match args {
            Some(_) => Err(Error::Parse(format!("`{name}` takes no parameters"))),
            None => Ok(d),
        };
        match name {
            "affine" => {
                let args = need("a,b")?;
                let (a, b) = args
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected `affine:a,b`, got {s:?}")))?;
                SetDescriptor::affine(parse_num(a, "a")?, parse_num(b, "b")?)
            }
            "anti-korselt" => none(SetDescriptor::AntiKorselt),
            "phi-half" => none(SetDescriptor::PhiHalf),
            "lambda-half" => none(SetDescriptor::LambdaHalf),
            "frak-p" => none(SetDescriptor::FrakP),
            "upsilon" => SetDescriptor::upsilon(parse_num(need("k")?, "k")?),
            "w" => SetDescriptor::w(parse_num(need("n")?, "n")?),
            "h" => SetDescriptor::h(parse_num(need("k")?, "k")?),
            _ => Err(Error::Parse(format!("unknown set family {name:?}"))),
        }
    }
}

impl TryFrom<String> for SetDescriptor {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SetDescriptor> for String {
    fn from(d: SetDescriptor) -> String {
        d.to_string()
    }
}
