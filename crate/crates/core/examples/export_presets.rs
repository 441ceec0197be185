//! Writes the preset scenarios as JSON files.
//!
//! ```text
//! cargo run --example export_presets -- [DIR]
//! ```
//!
//! `DIR` defaults to `scenarios/` next to this crate's manifest.

use std::path::PathBuf;

use loopss::ring::Ring;
use loopss::scenarios::{materialize, serialize_scenario, Preset, PresetId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios"));
    std::fs::create_dir_all(&dir)?;
    let presets = [
        ("path_cpn_diag_2.json", Preset::new(PresetId::PathCpnDiag { n: 2 })),
        ("path_cpn_diag_3.json", Preset::new(PresetId::PathCpnDiag { n: 3 })),
        ("free_loop_cpn_2.json", Preset::new(PresetId::PairWithMorphism { n: 2 })),
        ("free_loop_cpn_2_f3.json", Preset::new(PresetId::PairWithMorphism { n: 2 }).over(Ring::PrimeField(3))),
        ("free_loop_cpn_3.json", Preset::new(PresetId::PairWithMorphism { n: 3 })),
        ("free_loop_rank_one_2_2.json", Preset::new(PresetId::FreeLoopRankOne { m: 2, k: 2 })),
    ];
    for (name, preset) in presets {
        let path = dir.join(name);
        std::fs::write(&path, serialize_scenario(&materialize(&preset)?))?;
        println!("{} <- {}", path.display(), preset.id);
    }
    Ok(())
}
