//! The fundamental alcove in its three shapes: reduced, non-reduced with
//! a ramified root group, and trialitarian G2.

use bruhat_frattini::apartment::{fundamental_alcove, neighbor_vertices, unit_ball_alcove_count};
use bruhat_frattini::root_system::{build, Family, RootSystemKind};
use bruhat_frattini::valued_datum::SplittingData;

fn main() -> bruhat_frattini::Result<()> {
    let cases = [
        (Family::A, 2, SplittingData::split()),
        (Family::BC, 2, SplittingData::new(2, true)?),
        (Family::G2, 2, SplittingData::new(3, false)?),
    ];
    for (fam, rank, split) in cases {
        let sys = build(RootSystemKind::new(fam, rank)?)?;
        let c = fundamental_alcove(&sys, &split)?;
        println!("{} with d = {}:", sys.kind(), split.d);
        for w in &c.bounding {
            println!("  wall ({:?}, {})", w.coeffs, w.level);
        }
        let vs: Vec<String> = c
            .vertices
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        println!("  vertices {}", vs.join(" "));
        println!("  neighbour across wall 0: {:?}", neighbor_vertices(&sys, &c, 0).len());
        println!("  alcoves in the unit ball at q = 3: {}", unit_ball_alcove_count(&sys, &c, 3));
    }
    Ok(())
}
