//! Rational free loop fibrations over spaces with `H*(X; Q) = Q[x]/(x^k)`,
//! `|x| = 2m`: spheres (`k = 2`), `CP^{k-1}` (`m = 1`), `HP^{k-1}` (`m = 2`)
//! and the Cayley plane (`m = 4, k = 3`).
//!
//! ```text
//! cargo run --example rank_one_spaces
//! ```

use loopss::scenarios::{materialize, Preset, PresetId};
use loopss::sseq::{collapse_report, run_to_limit, CollapseResult};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let shapes = [("S^4", 2, 2), ("S^8", 4, 2), ("CP^2", 1, 3), ("HP^2", 2, 3), ("OP^2", 4, 3)];
    for (name, m, k) in shapes {
        let run = run_to_limit(&materialize(&Preset::new(PresetId::FreeLoopRankOne { m, k }))?)?;
        match collapse_report(&run)? {
            CollapseResult::NonCollapse { page, source, target, images, .. } => {
                println!("{name:5} m={m} k={k}: d{page} {source} -> {target}: {}", images.join(", "));
                assert_eq!(page, 2 * m * (k - 1));
            }
            CollapseResult::Collapses => println!("{name:5} m={m} k={k}: collapses"),
        }
    }
    Ok(())
}
