//! The base of the path fibration in the basis `v = c1 - c2`, `w = c1`:
//! the same spectral sequence written two ways, and the degree-wise change
//! of basis behind it.
//!
//! ```text
//! cargo run --example basis_change
//! ```

use loopss::algebra::change_basis_express;
use loopss::scenarios::{materialize, Preset, PresetId};
use loopss::sseq::run_to_limit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 2;
    let c = materialize(&Preset::new(PresetId::PathCpnDiag { n }))?;
    let vw = materialize(&Preset::new(PresetId::PathCpnDiagVw { n }))?;
    let (rc, rv) = (run_to_limit(&c)?, run_to_limit(&vw)?);
    for (a, b) in rc.pages.iter().zip(&rv.pages) {
        let same = a.cells.keys().all(|&at| a.invariants(at) == b.invariants(at));
        println!("E{}: invariants agree: {same}", a.index);
    }

    let sum = c.parse("c1^2 + c1*c2 + c2^2")?;
    let base_sum = loopss::algebra::parse_element(&c.base, "c1^2 + c1*c2 + c2^2", &Default::default())?;
    let new = [
        ("v".to_string(), loopss::algebra::parse_element(&c.base, "c1 - c2", &Default::default())?),
        ("w".to_string(), loopss::algebra::parse_element(&c.base, "c1", &Default::default())?),
    ];
    let (p, expressed) = change_basis_express(&c.base, &base_sum, &new)?;
    println!("{} = {}", c.render(&sum), expressed.render(&p));
    Ok(())
}
