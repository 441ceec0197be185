//! Integral `E_∞` of the free loop fibration over `CP^n`: the transported
//! differential leaves `Z/(n+1)` at `(2n, 1)` while `u·x` survives.
//!
//! ```text
//! cargo run --example torsion_witness -- [n]
//! ```

use loopss::cli::{build_report, render_ascii};
use loopss::naturality::run_scenario;
use loopss::scenarios::{materialize, Preset, PresetId};
use loopss::sseq::Bidegree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let s = materialize(&Preset::new(PresetId::PairWithMorphism { n }))?;
    let linked = run_scenario(&s)?;
    let inf = linked.run.infinity();
    for cell in [Bidegree::new(2 * n, 1), Bidegree::new(2, 1)] {
        println!("E∞{cell} = {}", inf.invariants(cell)?);
        for (order, rep) in linked.run.representatives(inf.index, cell)? {
            let order = order.map_or("free".to_string(), |o| format!("order {o}"));
            println!("  {} ({order})", s.render(&rep));
        }
    }
    let report = build_report(&linked, "", Some(&[inf.index]))?;
    print!("{}", render_ascii(&report, inf.index));
    Ok(())
}
