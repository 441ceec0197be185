//! The path fibration `ΩCP^n → Map(I, CP^n) → CP^n × CP^n` pulled back
//! along the diagonal: E3, convergence to `H*(CP^n)`, and the differentials
//! that can still act on selected classes.
//!
//! ```text
//! cargo run --example path_fibration -- [n]
//! ```

use loopss::scenarios::{materialize, Preset, PresetId};
use loopss::sseq::{annihilator_candidates, audit_convergence, run_to_limit, Bidegree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let s = materialize(&Preset::new(PresetId::PathCpnDiag { n }))?;
    let run = run_to_limit(&s)?;

    let e3 = run.page(3)?;
    for q in [1, 0] {
        let row: Vec<String> =
            (0..=4 * n).map(|p| e3.invariants(Bidegree::new(p, q)).map(|g| g.to_string())).collect::<Result<_, _>>()?;
        println!("E3 row q={q}: {}", row.join(" "));
    }
    for (order, rep) in run.representatives(3, Bidegree::new(2 * n, 1))? {
        assert!(order.is_none());
        println!("E3({},1) generator: {}", 2 * n, s.render(&rep));
    }

    let target = s.target.as_ref().expect("preset has a target");
    let discrepancies = audit_convergence(&run, target)?;
    println!("E∞ against H*(CP^{n}): {} discrepancies", discrepancies.len());

    for (page, text) in [(2, "c1 - c2"), (3, "y")] {
        let class = s.parse(text)?;
        println!("class {text} on page {page}:");
        for c in annihilator_candidates(&run, page, &class)? {
            println!("  d{} {:?} {} basis {:?}", c.page, c.direction, c.partner, c.partner_basis);
        }
    }
    Ok(())
}
