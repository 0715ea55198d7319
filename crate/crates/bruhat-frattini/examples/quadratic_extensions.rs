//! Ramified and unramified quadratic models: trace uniformizers, good
//! torus elements and the inversion of τu·x − v·y = w.

use bruhat_frattini::frac::half;
use bruhat_frattini::local_field::{
    good_torus_element, inversion_depth, min_trace_unipotent, solve_inversion, torus_valuations,
    trace_uniformizer, LocalModel,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bruhat_frattini::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for ramified in [false, true] {
        let m = LocalModel::quadratic(5, ramified, 24)?;
        println!("{:?}", m.desc());
        let w = trace_uniformizer(&m)?;
        println!("  trace uniformizer {w}, trace {}", m.trace(&w));
        let t = good_torus_element(&m)?;
        println!("  torus element {t}: {:?}", torus_valuations(&m, &t)?);
        let h = min_trace_unipotent(&m, 1)?;
        println!("  (u, v) at level 1: u = {}", h.u);

        let depth = inversion_depth(&m, 1, half(1));
        let target = m.random(&mut rng, depth, true);
        let (uv, xy) = solve_inversion(&m, &target, 1, half(1))?;
        let back = &(&m.tau(&uv.u) * &xy.u) - &(&uv.v * &xy.v);
        println!("  l″ = {depth}; τu·x − v·y = w holds: {}", back.compare(&target).equal);
    }
    Ok(())
}
