//! Exact scalars: roots of unity and cyclotomic fields, plus sparse matrices over them.

mod field;
mod matrix;
mod root;

pub use field::{cyclotomic_polynomial, euler_phi, CycloNumber};
pub use matrix::CycloMatrix;
pub use root::RootOfUnity;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_CONDUCTOR_CAP: u32 = 360;

/// The conductor cap, overridable through `CYCLO_CONDUCTOR_CAP`.
pub fn conductor_cap() -> u32 {
    std::env::var("CYCLO_CONDUCTOR_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CONDUCTOR_CAP)
}

pub fn check_conductor(n: u32) -> Result<()> {
    let cap = conductor_cap();
    if n > cap {
        return Err(Error::ConductorCap { conductor: n, cap });
    }
    Ok(())
}

/// A scalar as it appears in exported documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scalar {
    Root(RootOfUnity),
    Cyclo(CycloNumber),
}

impl Scalar {
    /// Prefers the root-of-unity form whenever the value is one.
    pub fn from_number(x: &CycloNumber) -> Scalar {
        match x.as_root_of_unity() {
            Some(r) => Scalar::Root(r),
            None => Scalar::Cyclo(x.clone()),
        }
    }

    pub fn to_number(&self, conductor: u32) -> Result<CycloNumber> {
        match self {
            Scalar::Root(r) => CycloNumber::from_root(r, conductor),
            Scalar::Cyclo(x) => x.lift_conductor(conductor),
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Root(r) => r.order(),
            Scalar::Cyclo(x) => x.conductor(),
        }
    }
}
