//! The groups V_{a,c} for the fundamental alcove: bounding roots move up
//! one step, the others stay at f_c.

use bruhat_frattini::apartment::fundamental_alcove;
use bruhat_frattini::frattini::frattini_levels;
use bruhat_frattini::root_system::{build, Family, RootSystemKind};
use bruhat_frattini::valued_datum::SplittingData;

fn main() -> bruhat_frattini::Result<()> {
    let runs = [
        (Family::A, 2, SplittingData::split()),
        (Family::C, 2, SplittingData::new(2, false)?),
        (Family::BC, 2, SplittingData::new(2, false)?),
        (Family::BC, 2, SplittingData::new(2, true)?),
    ];
    for (fam, rank, split) in runs {
        let sys = build(RootSystemKind::new(fam, rank)?)?;
        let c = fundamental_alcove(&sys, &split)?;
        let lv = frattini_levels(&sys, &c, 5)?;
        println!("{} d = {} ramified = {}: ξ = {}", sys.kind(), split.d, split.ramified, lv.xi);
        for e in lv.entries.iter().filter(|e| e.bounding) {
            println!(
                "  {:?}: {} -> {} (exponent {}{})",
                e.coeffs,
                e.base_level,
                e.frattini_level,
                e.quotient_exponent,
                e.adjunct_2a.map(|x| format!(", U_2a at {x}")).unwrap_or_default()
            );
        }
    }
    Ok(())
}
