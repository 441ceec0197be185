//! Transports the path-fibration differentials along constant loops into the
//! free loop fibration over `CP^n` and reports the first nonzero
//! differential.
//!
//! ```text
//! cargo run --example free_loop_noncollapse -- [max_n]
//! ```

use loopss::naturality::{check_naturality, run_scenario};
use loopss::scenarios::{materialize, Preset, PresetId};
use loopss::sseq::CollapseResult;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(4);
    for n in 1..=max_n {
        let s = materialize(&Preset::new(PresetId::PairWithMorphism { n }))?;
        let linked = run_scenario(&s)?;
        for t in &linked.transported {
            println!("n={n}: d{}({}) = {}", t.page, s.render(&t.source), s.render(&t.image));
        }
        let link = s.link.as_ref().expect("pair preset is linked");
        let source = linked.source.as_ref().expect("source run");
        let violations = check_naturality(&source.run, &linked.run, &link.morphism)?;
        assert!(violations.is_empty());
        match loopss::sseq::collapse_report(&linked.run)? {
            CollapseResult::NonCollapse { page, source, target, images, .. } => {
                println!("n={n}: first nonzero differential d{page}: {source} -> {target}, {}", images.join(", "))
            }
            CollapseResult::Collapses => println!("n={n}: collapses through the window"),
        }
    }
    Ok(())
}
