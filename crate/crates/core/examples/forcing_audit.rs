//! Leaves out `d^{2n}(y)` in the path fibration and lets the convergence
//! audit show what goes wrong and which differentials could repair it.
//!
//! ```text
//! cargo run --example forcing_audit -- [n]
//! ```

use loopss::scenarios::{materialize, Preset, PresetId};
use loopss::sseq::{annihilator_candidates, audit_convergence, run_to_limit, settling_page};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let mut s = materialize(&Preset::new(PresetId::PathCpnDiag { n }))?;
    s.assignments.retain(|a| a.page == 2);
    let run = run_to_limit(&s)?;
    let target = s.target.clone().expect("preset has a target");
    for d in audit_convergence(&run, &target)?.iter().filter(|d| d.degree % 2 == 1) {
        println!("degree {}: expected {}, found {}", d.degree, d.expected, d.found);
        for cell in &d.survivors {
            for rep in &cell.representatives {
                let class = s.parse(rep)?;
                let from = settling_page(&run, &class)?.expect("survivor");
                println!("  {rep} at {} can only be removed by:", cell.cell);
                for c in annihilator_candidates(&run, from, &class)? {
                    println!("    d{} {:?} {}", c.page, c.direction, c.partner);
                }
            }
        }
        if d.degree == 2 * n + 1 {
            break;
        }
    }
    Ok(())
}
