//! Γ_a, Γ′_a and Γ_2a for every positive root of BC2, in both ramification
//! cases, and the panel residue sizes they imply.

use bruhat_frattini::frac::half;
use bruhat_frattini::root_system::{build, Family, RootSystemKind};
use bruhat_frattini::valued_datum::{gamma_sets, panel_residue_card, SplittingData};

fn main() -> bruhat_frattini::Result<()> {
    let bc2 = build(RootSystemKind::new(Family::BC, 2)?)?;
    for ramified in [false, true] {
        let split = SplittingData::new(2, ramified)?;
        println!("{}", if ramified { "ramified" } else { "unramified" });
        for a in bc2.positive() {
            let g = gamma_sets(&bc2, a, &split);
            print!("  {:?}  Γ = {}  Γ′ = {}", g.root.coeffs, g.gamma, g.gamma_prime);
            if let Some(d) = g.gamma_double {
                print!("  Γ_2a = {d}");
            }
            println!();
        }
        let a = bc2.simple()[1];
        for l in [half(0), half(1)] {
            match panel_residue_card(&bc2, a, l, &split, 3) {
                Ok(n) => println!("  panel of ({:?}, {l}) at q = 3: {n} alcoves", bc2.coeffs(a)),
                Err(e) => println!("  ({:?}, {l}): {e}", bc2.coeffs(a)),
            }
        }
    }
    Ok(())
}
