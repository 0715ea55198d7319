//! Build a few relative root systems and print their highest roots, Cartan
//! matrices and the δ-scaled systems used by the level recursions.

use bruhat_frattini::root_system::{build, delta_system, delta_weights, Family, RootSystemKind};
use bruhat_frattini::valued_datum::SplittingData;

fn main() -> bruhat_frattini::Result<()> {
    for (fam, rank) in [(Family::A, 3), (Family::C, 3), (Family::G2, 2), (Family::BC, 2)] {
        let sys = build(RootSystemKind::new(fam, rank)?)?;
        println!(
            "{}: {} roots, highest {:?}, reduced: {}",
            sys.kind(),
            sys.len(),
            sys.highest_root().coeffs,
            sys.is_reduced()
        );
        for row in sys.cartan() {
            println!("    {row:?}");
        }
    }

    // ramified ^2A_5 has relative type C3; the long roots are rescaled
    let c3 = build(RootSystemKind::new(Family::C, 3)?)?;
    let split = SplittingData::new(2, true)?;
    let w = delta_weights(&c3, &split)?;
    let scaled = delta_system(&c3, &w.delta)?;
    println!("δ on C3 (ramified d = 2): {:?}", w.delta);
    println!("Φ_nd^δ is {} with highest root {:?}", scaled.kind(), scaled.highest_root().coeffs);
    Ok(())
}
