//! Push the values of f_c on Δ ∪ {−θ} through the positive and negative
//! level recursions: l′ vanishes on Φ⁺ and l″ recovers f′ on the other
//! negative roots.

use bruhat_frattini::apartment::fundamental_alcove;
use bruhat_frattini::frac::Q;
use bruhat_frattini::frattini::{negative_bounds, positive_bounds};
use bruhat_frattini::root_system::{build, Family, RootSystemKind};
use bruhat_frattini::valued_datum::SplittingData;

fn main() -> bruhat_frattini::Result<()> {
    for (fam, rank, split) in [
        (Family::B, 3, SplittingData::split()),
        (Family::F4, 4, SplittingData::new(2, false)?),
        (Family::G2, 2, SplittingData::new(3, true)?),
        (Family::BC, 3, SplittingData::new(2, true)?),
    ] {
        let sys = build(RootSystemKind::new(fam, rank)?)?;
        let c = fundamental_alcove(&sys, &split)?;
        let l: Vec<Q> = sys.simple().iter().map(|&a| c.f_c[a]).collect();
        let mt = sys.neg(c.theta());
        let lp = positive_bounds(&sys, &split, &l)?;
        let nb = negative_bounds(&sys, &c.weights, &split, &l, c.f_c[mt])?;
        let zero_above = sys.positive().all(|b| lp[b] == Q::from_integer(0));
        let matches = sys
            .nd()
            .into_iter()
            .filter(|&a| !sys.is_positive(a) && a != mt)
            .all(|a| nb.l_second[a] == c.f_prime[a]);
        println!(
            "{} d = {}{}: l′ = 0 on Φ⁺: {zero_above}; l″ = f′ below: {matches}",
            sys.kind(),
            split.d,
            if split.ramified { " ramified" } else { "" },
        );
    }
    Ok(())
}
