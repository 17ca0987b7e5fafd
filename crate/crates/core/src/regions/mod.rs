//! Closed-form DoF regions for the broadcast (BC), interference (IC) and
//! cognitive radio (CRC) channels with no channel knowledge at the
//! transmitters, plus the perfect-CSIT regions they are compared against.
//!
//! Two-user formulas take antenna counts in the order `(M1, N1, M2, N2)`
//! (transmitter then receiver of each pair); the BC takes `(M, N1, N2)`.

use std::fmt;

use crate::error::{DofError, Result};
use crate::polytope::{Polytope2D, SimplexRegion};
use crate::rational::Rational;

mod bc;
mod crc;
mod ic;
mod kuser;
mod report;

pub use bc::{bc2_csit, bc2_no_csit, bck_no_csit};
pub use crc::{crc_classify, crc_corner_points, crc_csit, crc_inner, crc_outer};
pub use ic::{ic_classify, ic_corner_points, ic_csit, ic_inner, ic_outer, overall_bc_outer};
pub use kuser::{crck_region, ick_region};
pub use report::{report, Region, RegionReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelClass {
    Bc2,
    Bck,
    Ic2,
    Crc2,
    Ick,
    Crck,
}

impl ChannelClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelClass::Bc2 => "bc",
            ChannelClass::Bck => "bck",
            ChannelClass::Ic2 => "ic",
            ChannelClass::Crc2 => "crc",
            ChannelClass::Ick => "ick",
            ChannelClass::Crck => "crck",
        }
    }

    pub fn parse(s: &str) -> Option<ChannelClass> {
        Some(match s.to_ascii_lowercase().as_str() {
            "bc" | "bc2" => ChannelClass::Bc2,
            "bck" => ChannelClass::Bck,
            "ic" | "ic2" => ChannelClass::Ic2,
            "crc" | "crc2" => ChannelClass::Crc2,
            "ick" => ChannelClass::Ick,
            "crck" => ChannelClass::Crck,
            _ => return None,
        })
    }

    pub fn is_two_user(&self) -> bool {
        matches!(
            self,
            ChannelClass::Bc2 | ChannelClass::Ic2 | ChannelClass::Crc2
        )
    }
}

impl fmt::Display for ChannelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Antenna counts of one channel instance.
///
/// `tx` holds the single `M` of a broadcast channel, or `M1..MK` otherwise;
/// `rx` holds `N1..NK`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AntennaConfig {
    class: ChannelClass,
    tx: Vec<u32>,
    rx: Vec<u32>,
}

impl AntennaConfig {
    pub fn new(class: ChannelClass, tx: Vec<u32>, rx: Vec<u32>) -> Result<Self> {
        if tx.iter().chain(&rx).any(|&n| n == 0) {
            return Err(DofError::domain("antenna counts must be at least 1"));
        }
        let k = rx.len();
        let ok = match class {
            ChannelClass::Bc2 => tx.len() == 1 && k == 2,
            ChannelClass::Bck => tx.len() == 1 && k >= 1,
            ChannelClass::Ic2 | ChannelClass::Crc2 => tx.len() == 2 && k == 2,
            ChannelClass::Ick | ChannelClass::Crck => tx.len() == k && k >= 2,
        };
        if !ok {
            return Err(DofError::domain(format!(
                "{class} needs {}, got {} transmit and {} receive counts",
                match class {
                    ChannelClass::Bc2 => "one transmit and two receive counts",
                    ChannelClass::Bck => "one transmit and at least one receive count",
                    ChannelClass::Ic2 | ChannelClass::Crc2 => "two transmit and two receive counts",
                    ChannelClass::Ick | ChannelClass::Crck =>
                        "equal-length transmit and receive lists of length >= 2",
                },
                tx.len(),
                k
            )));
        }
        Ok(AntennaConfig { class, tx, rx })
    }

    pub fn bc2(m: u32, n1: u32, n2: u32) -> Result<Self> {
        Self::new(ChannelClass::Bc2, vec![m], vec![n1, n2])
    }

    pub fn ic2(m1: u32, n1: u32, m2: u32, n2: u32) -> Result<Self> {
        Self::new(ChannelClass::Ic2, vec![m1, m2], vec![n1, n2])
    }

    pub fn crc2(m1: u32, n1: u32, m2: u32, n2: u32) -> Result<Self> {
        Self::new(ChannelClass::Crc2, vec![m1, m2], vec![n1, n2])
    }

    pub fn bck(m: u32, rx: Vec<u32>) -> Result<Self> {
        Self::new(ChannelClass::Bck, vec![m], rx)
    }

    pub fn ick(tx: Vec<u32>, rx: Vec<u32>) -> Result<Self> {
        Self::new(ChannelClass::Ick, tx, rx)
    }

    pub fn crck(tx: Vec<u32>, rx: Vec<u32>) -> Result<Self> {
        Self::new(ChannelClass::Crck, tx, rx)
    }

    /// Build from a flat count list as typed on the command line:
    /// `M N1 N2` for `bc`, `M1 N1 M2 N2` for `ic`/`crc`.
    pub fn from_flat(class: ChannelClass, counts: &[u32]) -> Result<Self> {
        match (class, counts) {
            (ChannelClass::Bc2, &[m, n1, n2]) => Self::bc2(m, n1, n2),
            (ChannelClass::Ic2, &[m1, n1, m2, n2]) => Self::ic2(m1, n1, m2, n2),
            (ChannelClass::Crc2, &[m1, n1, m2, n2]) => Self::crc2(m1, n1, m2, n2),
            (ChannelClass::Bc2, _) => Err(DofError::domain("bc expects 3 counts: M N1 N2")),
            (ChannelClass::Ic2 | ChannelClass::Crc2, _) => Err(DofError::domain(format!(
                "{class} expects 4 counts: M1 N1 M2 N2"
            ))),
            _ => Err(DofError::domain(format!("{class} takes --tx/--rx lists"))),
        }
    }

    pub fn class(&self) -> ChannelClass {
        self.class
    }

    pub fn tx(&self) -> &[u32] {
        &self.tx
    }

    pub fn rx(&self) -> &[u32] {
        &self.rx
    }

    pub fn users(&self) -> usize {
        self.rx.len()
    }

    /// `(M1, N1, M2, N2)` of a two-pair channel.
    pub fn pair_counts(&self) -> Option<(u32, u32, u32, u32)> {
        match self.class {
            ChannelClass::Ic2 | ChannelClass::Crc2 => {
                Some((self.tx[0], self.rx[0], self.tx[1], self.rx[1]))
            }
            _ => None,
        }
    }

    /// Counts as they would be typed on the command line.
    pub fn flat_counts(&self) -> Vec<u32> {
        match self.class {
            ChannelClass::Bc2 | ChannelClass::Bck => {
                self.tx.iter().chain(&self.rx).copied().collect()
            }
            _ => self
                .tx
                .iter()
                .zip(&self.rx)
                .flat_map(|(&m, &n)| [m, n])
                .collect(),
        }
    }

    /// Notes on hypotheses the closed forms take for granted.
    pub fn flags(&self) -> Vec<String> {
        let mut out = Vec::new();
        if matches!(self.class, ChannelClass::Bc2 | ChannelClass::Bck) && self.tx[0] == 1 {
            out.push("single transmit antenna: the broadcast characterization assumes M > 1; formulas applied as-is".into());
        }
        out
    }
}

impl fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.flat_counts().iter().map(|n| n.to_string()).collect();
        write!(f, "{} {}", self.class, c.join(" "))
    }
}

/// Position of a configuration in the case tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    Bc,
    Bck,
    IcA,
    IcB1,
    IcB2,
    IcC1,
    IcC2,
    IcD1,
    IcD2,
    IcD3,
    CrcA,
    CrcB1,
    CrcB2,
    CrcC1,
    CrcC2a,
    CrcC2b,
    Ick,
    Crck,
    IckUnknown,
    CrckUnknown,
}

impl CaseId {
    pub const ALL: [CaseId; 20] = [
        CaseId::Bc,
        CaseId::Bck,
        CaseId::IcA,
        CaseId::IcB1,
        CaseId::IcB2,
        CaseId::IcC1,
        CaseId::IcC2,
        CaseId::IcD1,
        CaseId::IcD2,
        CaseId::IcD3,
        CaseId::CrcA,
        CaseId::CrcB1,
        CaseId::CrcB2,
        CaseId::CrcC1,
        CaseId::CrcC2a,
        CaseId::CrcC2b,
        CaseId::Ick,
        CaseId::Crck,
        CaseId::IckUnknown,
        CaseId::CrckUnknown,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseId::Bc => "BC",
            CaseId::Bck => "BCK",
            CaseId::IcA => "IC-A",
            CaseId::IcB1 => "IC-B1",
            CaseId::IcB2 => "IC-B2",
            CaseId::IcC1 => "IC-C1",
            CaseId::IcC2 => "IC-C2",
            CaseId::IcD1 => "IC-D1",
            CaseId::IcD2 => "IC-D2",
            CaseId::IcD3 => "IC-D3",
            CaseId::CrcA => "CRC-A",
            CaseId::CrcB1 => "CRC-B1",
            CaseId::CrcB2 => "CRC-B2",
            CaseId::CrcC1 => "CRC-C1",
            CaseId::CrcC2a => "CRC-C2a",
            CaseId::CrcC2b => "CRC-C2b",
            CaseId::Ick => "ICK",
            CaseId::Crck => "CRCK",
            CaseId::IckUnknown => "ICK-UNKNOWN",
            CaseId::CrckUnknown => "CRCK-UNKNOWN",
        }
    }

    pub fn parse(s: &str) -> Option<CaseId> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseLabel {
    pub class: ChannelClass,
    pub case_id: CaseId,
    /// The inner bound is known to be the whole region.
    pub exact: bool,
    pub theorem_ref: String,
}

impl CaseLabel {
    pub(crate) fn new(
        class: ChannelClass,
        case_id: CaseId,
        exact: bool,
        theorem_ref: impl Into<String>,
    ) -> Self {
        CaseLabel {
            class,
            case_id,
            exact,
            theorem_ref: theorem_ref.into(),
        }
    }
}

pub(crate) fn r(n: u32) -> Rational {
    Rational::from(n)
}

/// `(x)⁺`
pub(crate) fn pos(x: i64) -> i64 {
    x.max(0)
}

pub(crate) fn planar(p: crate::error::Result<Polytope2D>) -> Polytope2D {
    p.expect("closed-form region with positive antenna counts")
}

pub(crate) fn simplex(s: crate::error::Result<SimplexRegion>) -> SimplexRegion {
    s.expect("closed-form simplex with positive antenna counts")
}
