//! Exact rational and 256-bit floating-point arithmetic for oracles.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// Decimal literal parsed exactly, e.g. `q("0.001")` is 1/1000.
pub fn q(s: &str) -> Q {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let v = Q::new(digits, scale);
    if neg {
        -v
    } else {
        v
    }
}

pub fn qs(items: &[&str]) -> Vec<Q> {
    items.iter().map(|s| q(s)).collect()
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The exact value of a double.
pub fn from_f64(v: f64) -> Q {
    Q::from_f64(v).expect("finite")
}

/// `v * 2^1074` as an integer, exact for every finite double. Sums of these
/// are exact and much cheaper than rational sums.
pub fn fixed(v: f64) -> BigInt {
    let bits = v.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as usize;
    let frac = bits & ((1 << 52) - 1);
    let magnitude = if biased == 0 {
        BigInt::from(frac)
    } else {
        BigInt::from(frac | (1 << 52)) << (biased - 1)
    };
    if v.is_sign_negative() {
        -magnitude
    } else {
        magnitude
    }
}

pub fn row(v: &[f64]) -> Vec<Q> {
    v.iter().map(|&x| from_f64(x)).collect()
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().expect("representable")
}

pub fn min(a: &Q, b: &Q) -> Q {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Q, b: &Q) -> Q {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn l1(v: &[Q]) -> Q {
    v.iter().fold(Q::zero(), |acc, x| acc + x)
}

pub fn and(x: &[Q], w: &[Q]) -> Vec<Q> {
    x.iter().zip(w).map(|(a, b)| min(a, b)).collect()
}

/// `[x, 1 - x]` in exact arithmetic.
pub fn complement(x: &[Q]) -> Vec<Q> {
    let mut out = x.to_vec();
    out.extend(x.iter().map(|v| Q::one() - v));
    out
}

/// `|actual - exact| <= rel * |exact|` (or `<= rel` when `exact` is zero),
/// evaluated without rounding.
pub fn assert_close(what: &str, actual: f64, exact: &Q, rel: f64) {
    let err = (from_f64(actual) - exact).abs();
    let scale = if exact.is_zero() { Q::one() } else { exact.abs() };
    assert!(
        err <= from_f64(rel) * scale,
        "{what}: got {actual:e}, exact {}, error {}",
        to_f64(exact),
        to_f64(&err)
    );
}

/// Working precision of the floating oracle: 256 bits, about 77 digits.
pub const P: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub fn big(v: f64) -> BigFloat {
    BigFloat::from_f64(v, P)
}

pub fn sqrt(v: &BigFloat) -> BigFloat {
    v.sqrt(P, RM)
}

pub fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, P, RM)
}

pub fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.sub(b, P, RM)
}

pub fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, P, RM)
}

pub fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, P, RM)
}

pub struct Hp {
    cc: Consts,
}

impl Hp {
    pub fn new() -> Self {
        Hp {
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn dec(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, P, RM, &mut self.cc)
    }

    pub fn rat(&mut self, v: &Q) -> BigFloat {
        let n = self.dec(&v.numer().to_string());
        let d = self.dec(&v.denom().to_string());
        n.div(&d, P, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(P, RM)
    }

    pub fn exp(&mut self, v: &BigFloat) -> BigFloat {
        v.exp(P, RM, &mut self.cc)
    }

    pub fn ln(&mut self, v: &BigFloat) -> BigFloat {
        v.ln(P, RM, &mut self.cc)
    }

    /// Correctly rounded conversion through the decimal expansion.
    pub fn nearest_f64(&mut self, v: &BigFloat) -> f64 {
        let s = v.format(Radix::Dec, RM, &mut self.cc).expect("formats");
        s.parse().expect("decimal expansion parses")
    }

    /// `|actual - exact| <= rel * |exact|` at full precision.
    pub fn assert_close(&mut self, what: &str, actual: f64, exact: &BigFloat, rel: f64) {
        let err = sub(&big(actual), exact).abs();
        let bound = mul(&big(rel), &exact.abs());
        let shown = self.nearest_f64(exact);
        assert!(
            err.cmp(&bound).is_some_and(|c| c <= 0),
            "{what}: got {actual:e}, exact {shown:e}"
        );
    }

    /// `|a - b| <= tol`, both high precision.
    pub fn assert_agree(&mut self, what: &str, a: &BigFloat, b: &BigFloat, tol: &str) {
        let err = sub(a, b).abs();
        let tol = self.dec(tol);
        assert!(
            err.cmp(&tol).is_some_and(|c| c <= 0),
            "{what}: oracle and literal disagree"
        );
    }
}
