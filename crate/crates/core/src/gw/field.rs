use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base-field classes the Grothendieck–Witt model supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// Algebraically closed, of characteristic 0 or a prime.
    AlgClosed { characteristic: u64 },
    RealClosed,
    /// Finite field with `q` elements, `q` an odd prime power.
    FiniteOdd { q: u64 },
    Rational,
}

impl FieldDescriptor {
    pub fn alg_closed(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldDescriptor::AlgClosed { characteristic })
        } else {
            Err(Error::InvalidField(format!("characteristic {characteristic} is not 0 or a prime")))
        }
    }

    pub fn finite(q: u64) -> Result<Self> {
        match prime_power(q) {
            Some((2, _)) => Err(Error::InvalidField("characteristic 2 is not supported".into())),
            Some(_) => Ok(FieldDescriptor::FiniteOdd { q }),
            None => Err(Error::InvalidField(format!("{q} is not a prime power"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::AlgClosed { characteristic } => characteristic,
            FieldDescriptor::FiniteOdd { q } => prime_power(q).map_or(0, |(p, _)| p),
            FieldDescriptor::RealClosed | FieldDescriptor::Rational => 0,
        }
    }

    /// `−1` is not a sum of squares.
    pub fn is_formally_real(&self) -> bool {
        matches!(self, FieldDescriptor::RealClosed | FieldDescriptor::Rational)
    }

    /// Number of orderings (signatures reported per element).
    pub fn orderings(&self) -> usize {
        usize::from(self.is_formally_real())
    }

    /// Square class of a nonzero integer viewed in this field.
    pub fn square_class(&self, a: i64) -> Result<SquareClass> {
        if a == 0 {
            return Err(Error::InvalidField("0 has no square class".into()));
        }
        match *self {
            FieldDescriptor::AlgClosed { characteristic } => {
                if characteristic != 0 && (a.unsigned_abs() % characteristic) == 0 {
                    return Err(Error::InvalidField(format!("{a} vanishes in characteristic {characteristic}")));
                }
                Ok(SquareClass::ONE)
            }
            FieldDescriptor::RealClosed => Ok(SquareClass::Int(a.signum())),
            FieldDescriptor::Rational => Ok(SquareClass::Int(square_free_part(a))),
            FieldDescriptor::FiniteOdd { q } => {
                let (p, k) = prime_power(q).expect("validated prime power");
                let r = a.rem_euclid(p as i64) as u64;
                if r == 0 {
                    return Err(Error::InvalidField(format!("{a} vanishes in F_{q}")));
                }
                // F_p ⊂ F_{p^2} ⊂ F_q when k is even, and F_{p^2} contains all square roots from F_p.
                if k % 2 == 0 || pow_mod(r, (p - 1) / 2, p) == 1 {
                    Ok(SquareClass::ONE)
                } else {
                    Ok(SquareClass::NonSquare)
                }
            }
        }
    }

    /// Whether `class` is a legal normalized token for this field.
    pub fn admits(&self, class: SquareClass) -> bool {
        match (self, class) {
            (FieldDescriptor::AlgClosed { .. }, c) => c == SquareClass::ONE,
            (FieldDescriptor::RealClosed, SquareClass::Int(a)) => a == 1 || a == -1,
            (FieldDescriptor::FiniteOdd { .. }, c) => c == SquareClass::ONE || c == SquareClass::NonSquare,
            (FieldDescriptor::Rational, SquareClass::Int(a)) => a != 0 && square_free_part(a) == a,
            _ => false,
        }
    }

    /// Product of two normalized square classes.
    pub fn mul_classes(&self, a: SquareClass, b: SquareClass) -> SquareClass {
        use SquareClass::*;
        match (self, a, b) {
            (FieldDescriptor::AlgClosed { .. }, _, _) => SquareClass::ONE,
            (FieldDescriptor::FiniteOdd { .. }, x, y) => {
                if (x == NonSquare) != (y == NonSquare) {
                    NonSquare
                } else {
                    SquareClass::ONE
                }
            }
            (_, Int(x), Int(y)) => {
                // x, y square-free: x·y = g²·(x/g)(y/g) with coprime square-free factors.
                let g = gcd(x.unsigned_abs(), y.unsigned_abs()) as i64;
                Int((x / g) * (y / g))
            }
            (_, x, y) => unreachable!("square class {x:?} or {y:?} not valid for {self}"),
        }
    }

    /// Sign of a square class at the (unique) ordering, for formally real fields.
    pub fn sign(&self, class: SquareClass) -> Option<i64> {
        match (self.is_formally_real(), class) {
            (true, SquareClass::Int(a)) => Some(a.signum()),
            _ => None,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::AlgClosed { characteristic } => write!(f, "alg-closed:{characteristic}"),
            FieldDescriptor::RealClosed => f.write_str("real-closed"),
            FieldDescriptor::FiniteOdd { q } => write!(f, "finite:{q}"),
            FieldDescriptor::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `alg-closed[:p]`, `real-closed`, `finite:q` and `rational`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let num = |a: &str| {
            a.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidField(format!("bad number {a:?} in {s:?}")))
        };
        match (kind, arg) {
            ("alg-closed", None) => Ok(FieldDescriptor::AlgClosed { characteristic: 0 }),
            ("alg-closed", Some(p)) => FieldDescriptor::alg_closed(num(p)?),
            ("real-closed", None) => Ok(FieldDescriptor::RealClosed),
            ("finite", Some(q)) => FieldDescriptor::finite(num(q)?),
            ("rational", None) => Ok(FieldDescriptor::Rational),
            _ => Err(Error::InvalidField(format!("unknown field {s:?}"))),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Square-class token. Integers are square-free representatives; over a
/// finite field the only other class is the fixed non-square `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Int(i64),
    NonSquare,
}

impl SquareClass {
    pub const ONE: SquareClass = SquareClass::Int(1);
}

impl Ord for SquareClass {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SquareClass::Int(a), SquareClass::Int(b)) => a.cmp(b),
            (SquareClass::Int(_), SquareClass::NonSquare) => Ordering::Less,
            (SquareClass::NonSquare, SquareClass::Int(_)) => Ordering::Greater,
            (SquareClass::NonSquare, SquareClass::NonSquare) => Ordering::Equal,
        }
    }
}

impl PartialOrd for SquareClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Int(a) => write!(f, "{a}"),
            SquareClass::NonSquare => f.write_str("u"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawClass {
    Int(i64),
    Sym(String),
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            SquareClass::Int(a) => RawClass::Int(a),
            SquareClass::NonSquare => RawClass::Sym("u".into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawClass::deserialize(d)? {
            RawClass::Int(a) => Ok(SquareClass::Int(a)),
            RawClass::Sym(s) if s == "u" => Ok(SquareClass::NonSquare),
            RawClass::Sym(s) => Err(serde::de::Error::custom(format!("unknown square class {s:?}"))),
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Signed square-free part: `a = s²·square_free_part(a)`.
pub fn square_free_part(a: i64) -> i64 {
    assert!(a != 0, "zero has no square-free part");
    let mut m = a.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out *= m;
    a.signum() * out as i64
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `q = p^k` with `p` prime, `k ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q % d == 0).unwrap_or(q);
    let mut m = q;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["alg-closed:0", "alg-closed:7", "real-closed", "finite:5", "finite:9", "rational"] {
            assert_eq!(s.parse::<FieldDescriptor>().unwrap().to_string(), s);
        }
        assert_eq!("alg-closed".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::AlgClosed { characteristic: 0 });
        for bad in ["finite:8", "finite:6", "finite:1", "alg-closed:4", "complex", "finite"] {
            assert!(bad.parse::<FieldDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn minus_one_over_finite_fields() {
        // Euler's criterion: -1 is a square in F_q iff q ≡ 1 mod 4.
        for q in [3u64, 5, 7, 11, 13, 27, 25, 49] {
            let f = FieldDescriptor::finite(q).unwrap();
            let expected = if q % 4 == 1 { SquareClass::ONE } else { SquareClass::NonSquare };
            assert_eq!(f.square_class(-1).unwrap(), expected, "q = {q}");
        }
        let f7 = FieldDescriptor::finite(7).unwrap();
        assert_eq!(f7.square_class(2).unwrap(), SquareClass::ONE);
        assert_eq!(f7.square_class(3).unwrap(), SquareClass::NonSquare);
        assert!(f7.square_class(14).is_err());
    }

    #[test]
    fn rational_classes() {
        assert_eq!(square_free_part(36), 1);
        assert_eq!(square_free_part(-12), -3);
        assert_eq!(square_free_part(50), 2);
        let q = FieldDescriptor::Rational;
        assert_eq!(q.mul_classes(SquareClass::Int(6), SquareClass::Int(10)), SquareClass::Int(15));
        assert_eq!(q.mul_classes(SquareClass::Int(-2), SquareClass::Int(-2)), SquareClass::ONE);
        assert!(q.admits(SquareClass::Int(-6)));
        assert!(!q.admits(SquareClass::Int(12)));
    }

    #[test]
    fn token_serde() {
        assert_eq!(serde_json::to_string(&SquareClass::NonSquare).unwrap(), "\"u\"");
        assert_eq!(serde_json::from_str::<SquareClass>("-3").unwrap(), SquareClass::Int(-3));
    }
}
