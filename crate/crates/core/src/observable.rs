//! Names of the observables shared by the classical, Fock and position-space
//! routes.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Gauge-invariant observables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Observable {
    H,
    T1,
    T2,
    M3,
    P1,
    P2,
    L3,
    Xc1,
    Xc2,
    X1,
    X2,
}

impl Observable {
    pub const ALL: [Observable; 11] = [
        Observable::H,
        Observable::T1,
        Observable::T2,
        Observable::M3,
        Observable::P1,
        Observable::P2,
        Observable::L3,
        Observable::Xc1,
        Observable::Xc2,
        Observable::X1,
        Observable::X2,
    ];

    /// The seven observables whose matrix elements are tabulated.
    pub const TABULATED: [Observable; 7] = [
        Observable::H,
        Observable::T1,
        Observable::T2,
        Observable::M3,
        Observable::P1,
        Observable::P2,
        Observable::L3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::H => "H",
            Observable::T1 => "T1",
            Observable::T2 => "T2",
            Observable::M3 => "M3",
            Observable::P1 => "p1",
            Observable::P2 => "p2",
            Observable::L3 => "L3",
            Observable::Xc1 => "xc1",
            Observable::Xc2 => "xc2",
            Observable::X1 => "x1",
            Observable::X2 => "x2",
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownObservable(s.to_string()))
    }
}

/// Gauge-variant observables: canonical momenta and canonical angular
/// momentum about `x0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaugeVariant {
    Pi1,
    Pi2,
    L3c,
}

impl GaugeVariant {
    pub const ALL: [GaugeVariant; 3] = [GaugeVariant::Pi1, GaugeVariant::Pi2, GaugeVariant::L3c];

    pub fn name(self) -> &'static str {
        match self {
            GaugeVariant::Pi1 => "pi1",
            GaugeVariant::Pi2 => "pi2",
            GaugeVariant::L3c => "L3c",
        }
    }
}

impl fmt::Display for GaugeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GaugeVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        GaugeVariant::ALL
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownObservable(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for o in Observable::ALL {
            assert_eq!(o.name().parse::<Observable>().unwrap(), o);
        }
        for o in GaugeVariant::ALL {
            assert_eq!(o.name().parse::<GaugeVariant>().unwrap(), o);
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            "Q7".parse::<Observable>(),
            Err(Error::UnknownObservable(_))
        ));
    }
}
