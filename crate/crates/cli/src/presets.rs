//! Built-in example configurations, selectable by name.

use dofregion::{AntennaConfig, ChannelClass};

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub configs: &'static [(ChannelClass, &'static [u32])],
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2a",
        description: "BC, M <= N1 <= N2: no-CSIT and perfect-CSIT regions coincide",
        configs: &[(ChannelClass::Bc2, &[2, 2, 3])],
    },
    Preset {
        name: "fig2b",
        description: "BC, N2 < M <= N1",
        configs: &[(ChannelClass::Bc2, &[3, 3, 2])],
    },
    Preset {
        name: "fig2c",
        description: "BC, N2 <= N1 < M < N1 + N2",
        configs: &[(ChannelClass::Bc2, &[4, 3, 2])],
    },
    Preset {
        name: "fig2d",
        description: "BC, N2 <= N1 < N1 + N2 <= M",
        configs: &[(ChannelClass::Bc2, &[6, 3, 2])],
    },
    Preset {
        name: "fig3",
        description: "IC with N1 >= N2 and N2 <= M2 (representative antenna counts)",
        configs: &[(ChannelClass::Ic2, &[2, 4, 5, 3])],
    },
    Preset {
        name: "fig4",
        description: "CRC, N2 <= M2",
        configs: &[(ChannelClass::Crc2, &[3, 4, 3, 2])],
    },
    Preset {
        name: "fig5",
        description: "IC, M2 >= N2 > N1 > M1: inner and outer bounds differ",
        configs: &[(ChannelClass::Ic2, &[2, 3, 4, 4])],
    },
    Preset {
        name: "fig6",
        description: "CRC, N1 > M1, N2 > M2, N2 < min(N1, M1 + M2): inner and outer bounds differ",
        configs: &[(ChannelClass::Crc2, &[3, 5, 2, 4])],
    },
    Preset {
        name: "fig7",
        description: "CRC region next to the IC bounds for the same antenna counts",
        configs: &[
            (ChannelClass::Crc2, &[2, 3, 4, 5]),
            (ChannelClass::Ic2, &[2, 3, 4, 5]),
        ],
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name.eq_ignore_ascii_case(name))
}

impl Preset {
    pub fn build(&self) -> Vec<AntennaConfig> {
        self.configs
            .iter()
            .map(|(c, n)| AntennaConfig::from_flat(*c, n).expect("preset counts are valid"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dofregion::regions::report;

    #[test]
    fn presets_build() {
        for p in PRESETS {
            assert!(!p.build().is_empty());
        }
        assert!(find("FIG5").is_some() && find("fig9").is_none());
        let fig5 = report(&find("fig5").unwrap().build()[0]);
        assert!(!fig5.label.exact);
        let fig3 = report(&find("fig3").unwrap().build()[0]);
        assert_eq!(fig3.label.case_id.as_str(), "IC-B1");
    }
}
