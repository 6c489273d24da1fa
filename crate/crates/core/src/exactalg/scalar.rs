use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{Ring, RingKind};
use crate::error::{Error, Result};

/// An element of one of the supported rings, always in canonical form:
/// reduced fractions over Q, residues in `[0, p)` over F_p, big integers over Z.
/// Structural equality is therefore equality in the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
    Integer(BigInt),
}

impl Scalar {
    pub fn zero(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: Ring, v: i64) -> Scalar {
        Scalar::from_bigint(ring, &BigInt::from(v))
    }

    pub fn from_bigint(ring: Ring, v: &BigInt) -> Scalar {
        match ring.kind() {
            RingKind::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            RingKind::Integers => Scalar::Integer(v.clone()),
            RingKind::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// Maps a rational into `ring`. Fails when the denominator is not invertible there.
    pub fn from_rational(ring: Ring, q: &BigRational) -> Result<Scalar> {
        match ring.kind() {
            RingKind::Rationals => Ok(Scalar::Rational(q.clone())),
            RingKind::Integers => {
                if q.is_integer() {
                    Ok(Scalar::Integer(q.to_integer()))
                } else {
                    Err(Error::Parse(format!("{q} is not an integer")))
                }
            }
            RingKind::PrimeField(p) => {
                let num = Scalar::from_bigint(ring, q.numer());
                let den = Scalar::from_bigint(ring, q.denom());
                let inv = den
                    .inverse()
                    .ok_or_else(|| Error::Parse(format!("denominator of {q} vanishes mod {p}")))?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses an integer `"-3"` or a fraction `"p/q"`.
    pub fn parse(ring: Ring, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
                let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(
                s.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?,
            ),
        };
        Scalar::from_rational(ring, &q)
    }

    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Rational(_) => Ring::rationals(),
            Scalar::Integer(_) => Ring::integers(),
            Scalar::Modular { modulus, .. } => Ring::prime_field(*modulus).expect("modulus validated on construction"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::Integer(z) => z.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::Integer(z) => z.is_one(),
        }
    }

    /// Multiplicative inverse, if this is a unit of its ring.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => (!q.is_zero()).then(|| Scalar::Rational(q.recip())),
            Scalar::Integer(z) => (z.abs().is_one()).then(|| Scalar::Integer(z.clone())),
            Scalar::Modular { value, modulus } => {
                if *value == 0 {
                    return None;
                }
                Some(Scalar::Modular {
                    value: pow_mod(*value, *modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Integer(z) => z.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    /// The underlying integer for Z scalars.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Scalar::Integer(z) => Some(z),
            _ => None,
        }
    }

    /// Lift of an F_p residue or Z value to a signed integer, if it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Integer(z) => Some(z.clone()),
            Scalar::Modular { value, .. } => Some(BigInt::from(*value)),
            Scalar::Rational(q) => q.is_integer().then(|| q.to_integer()),
        }
    }

    fn check_same(&self, other: &Scalar) {
        debug_assert_eq!(self.ring(), other.ring(), "scalar ring mismatch");
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => panic!("scalar ring mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Integer(a) => Scalar::Integer(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => panic!("scalar ring mismatch"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::Integer(z) => write!(f, "{z}"),
        }
    }
}
