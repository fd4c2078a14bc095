use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::is_prime;

/// Coefficient ring of a matrix group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    /// `Z/m`
    Zmod { m: u32 },
    /// `F_p[t]/(t^l)`
    PolyTrunc { p: u32, l: u32 },
}

/// Description of a finite group, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: u32 },
    Product { factors: Vec<GroupSpec> },
    Sl { n: u32, ring: RingSpec },
    CongruenceKernel { n: u32, ring: RingSpec, level: u32 },
    Unitriangular { n: u32, p: u32 },
}

/// Splits `m` as `p^e` when it is a prime power.
pub fn prime_power(m: u32) -> Option<(u32, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2..=m).find(|d| m % d == 0)?;
    let mut rest = m;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl RingSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RingSpec::Zmod { m } if m < 2 => Err(Error::SpecError(format!("zmod needs m >= 2, got {m}"))),
            RingSpec::Zmod { m } if m > 1 << 16 => Err(Error::SpecError(format!("zmod modulus {m} is too large"))),
            RingSpec::PolyTrunc { p, .. } if !is_prime(p as u64) => {
                Err(Error::SpecError(format!("poly_trunc needs a prime p, got {p}")))
            }
            RingSpec::PolyTrunc { l, .. } if l < 1 => Err(Error::SpecError("poly_trunc needs l >= 1".into())),
            RingSpec::PolyTrunc { p, l } if p > 1 << 16 || l > 64 => {
                Err(Error::SpecError(format!("poly_trunc({p}, {l}) is too large")))
            }
            _ => Ok(()),
        }
    }

    /// `(residue characteristic, nilpotency length of the maximal ideal)` for
    /// local rings.
    pub fn local_data(&self) -> Option<(u32, u32)> {
        match *self {
            RingSpec::Zmod { m } => prime_power(m),
            RingSpec::PolyTrunc { p, l } => Some((p, l)),
        }
    }
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Cyclic { n } => {
                if *n < 1 {
                    return Err(Error::SpecError("cyclic needs n >= 1".into()));
                }
            }
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::SpecError("product needs at least one factor".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
            GroupSpec::Sl { n, ring } => {
                check_n(*n)?;
                ring.validate()?;
            }
            GroupSpec::CongruenceKernel { n, ring, level } => {
                check_n(*n)?;
                ring.validate()?;
                let (_, e) = ring
                    .local_data()
                    .ok_or_else(|| Error::SpecError("congruence kernels need a local ring (prime power modulus)".into()))?;
                if *level < 1 || *level >= e {
                    return Err(Error::SpecError(format!(
                        "congruence level must satisfy 1 <= level < {e}, got {level}"
                    )));
                }
            }
            GroupSpec::Unitriangular { n, p } => {
                check_n(*n)?;
                if !is_prime(*p as u64) {
                    return Err(Error::SpecError(format!("unitriangular needs a prime p, got {p}")));
                }
            }
        }
        Ok(())
    }
}

fn check_n(n: u32) -> Result<()> {
    if !(2..=6).contains(&n) {
        return Err(Error::SpecError(format!("matrix size must be between 2 and 6, got {n}")));
    }
    Ok(())
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod { m } => write!(f, "Z/{m}"),
            RingSpec::PolyTrunc { p, l } => write!(f, "F{p}[t]/t^{l}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { n } => write!(f, "C{n}"),
            GroupSpec::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(" x "))
            }
            GroupSpec::Sl { n, ring } => write!(f, "SL{n}({ring})"),
            GroupSpec::CongruenceKernel { n, ring, level } => write!(f, "K{level}(SL{n}({ring}))"),
            GroupSpec::Unitriangular { n, p } => write!(f, "UT{n}(F{p})"),
        }
    }
}
