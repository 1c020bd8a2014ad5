//! Named parameter bundles for the published curves. Explicit flags
//! override any value a preset supplies.

use clap::ValueEnum;
use serde::Serialize;

use crate::args::{Clip, Range, SegmentSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Preset {
    /// 4 m of fused silica in one path, N from 1 to 10⁶.
    #[value(name = "fig2")]
    #[serde(rename = "fig2")]
    Fig2,
    /// Silica in path 1 from 0 to 4 m, N from 1 to 10⁶, clipped at unity.
    #[value(name = "fig3")]
    #[serde(rename = "fig3")]
    Fig3,
    /// 1 cm of fused silica in each path.
    #[value(name = "ntrans-1cm")]
    #[serde(rename = "ntrans-1cm")]
    NTrans1cm,
}

/// σ_φ used by every preset, rad/s.
pub const SIGMA_PHI_RAD_PER_S: f64 = 3.7e11;

#[derive(Debug, Clone, Default)]
pub struct PresetValues {
    pub sigma_phi: Option<f64>,
    pub path1: Vec<SegmentSpec>,
    pub path2: Vec<SegmentSpec>,
    pub n: Option<u64>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub points: Option<usize>,
    pub n_range: Option<Range>,
    pub n_points: Option<usize>,
    pub x_range: Option<Range>,
    pub x_points: Option<usize>,
    pub clip: Option<Clip>,
}

fn segment(text: &str) -> SegmentSpec {
    text.parse().expect("preset segment is well formed")
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::NTrans1cm => "ntrans-1cm",
        }
    }

    pub fn values(self) -> PresetValues {
        let base = PresetValues {
            sigma_phi: Some(SIGMA_PHI_RAD_PER_S),
            ..PresetValues::default()
        };
        match self {
            Preset::Fig2 => PresetValues {
                path1: vec![segment("fused_silica:400cm")],
                n: Some(1_000_000),
                n_min: Some(1),
                n_max: Some(1_000_000),
                points: Some(61),
                ..base
            },
            Preset::Fig3 => PresetValues {
                n_range: Some(Range { lo: 1.0, hi: 1e6 }),
                n_points: Some(31),
                x_range: Some(Range { lo: 0.0, hi: 400.0 }),
                x_points: Some(41),
                clip: Some(Clip::Unity),
                ..base
            },
            Preset::NTrans1cm => PresetValues {
                path1: vec![segment("fused_silica:1cm")],
                path2: vec![segment("fused_silica:1cm")],
                n: Some(7305),
                ..base
            },
        }
    }
}
