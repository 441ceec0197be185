//! The transported differential over `F_p` vanishes exactly when `p`
//! divides `n + 1`.
//!
//! ```text
//! cargo run --example characteristic_p
//! ```

use loopss::naturality::run_scenario;
use loopss::ring::Ring;
use loopss::scenarios::{materialize, Preset, PresetId};
use loopss::sseq::{collapse_report, CollapseResult};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("n  p  d^(2n) y");
    for n in 1..=4u32 {
        for p in [2u64, 3, 5, 7] {
            let preset = Preset::new(PresetId::PairWithMorphism { n }).over(Ring::prime_field(p)?);
            let linked = run_scenario(&materialize(&preset)?)?;
            let verdict = match collapse_report(&linked.run)? {
                CollapseResult::NonCollapse { images, .. } => images.join(", "),
                CollapseResult::Collapses => "0 (collapses)".to_string(),
            };
            println!("{n}  {p}  {verdict}");
            assert_eq!(verdict.ends_with("(collapses)"), (n as u64 + 1).is_multiple_of(p));
        }
    }
    Ok(())
}
