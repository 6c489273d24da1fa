use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three coefficient rings the engine computes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Rationals,
    PrimeField(u64),
    Integers,
}

/// A validated coefficient ring. `PrimeField(p)` can only be built for prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring(RingKind);

impl Ring {
    pub const fn rationals() -> Ring {
        Ring(RingKind::Rationals)
    }

    pub const fn integers() -> Ring {
        Ring(RingKind::Integers)
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring(RingKind::PrimeField(p)))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn kind(self) -> RingKind {
        self.0
    }

    pub fn is_field(self) -> bool {
        !matches!(self.0, RingKind::Integers)
    }

    /// The characteristic; 0 for Q and Z.
    pub fn characteristic(self) -> u64 {
        match self.0 {
            RingKind::PrimeField(p) => p,
            _ => 0,
        }
    }
}

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "Fp:{p}"),
            RingKind::Integers => write!(f, "Z"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        match s {
            "Q" | "q" => Ok(Ring::rationals()),
            "Z" | "z" => Ok(Ring::integers()),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .or_else(|| s.strip_prefix("fp:"))
                    .ok_or_else(|| Error::Parse(format!("unknown ring {s:?} (expected Q, Fp:<p> or Z)")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad characteristic in {s:?}")))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Ring, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
