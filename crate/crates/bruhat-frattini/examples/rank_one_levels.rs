//! Levels of U_a and U_{-a} reached by H^p[H, H] in rank one.

use bruhat_frattini::frac::half;
use bruhat_frattini::frattini::{rank1_levels, Rank1Kind};
use bruhat_frattini::valued_datum::SplittingData;

fn main() -> bruhat_frattini::Result<()> {
    let r = rank1_levels(&SplittingData::split(), Rank1Kind::Reduced, half(2), 3)?;
    println!("SL2, l = 1: U_a at {}, U_-a at {}", r.plus, r.minus);
    for ramified in [false, true] {
        let split = SplittingData::new(2, ramified)?;
        for l in [half(0), half(1), half(-3)] {
            let r = rank1_levels(&split, Rank1Kind::Bc1, l, 5)?;
            println!(
                "SU3 {} l = {l}: U_a at {}, U_-a at {}, torus depth {} (or {}), swapped {}",
                if ramified { "ramified" } else { "unramified" },
                r.plus,
                r.minus,
                r.torus_depth,
                r.improved_torus_depth.unwrap_or(r.torus_depth),
                r.swapped
            );
        }
    }
    Ok(())
}
