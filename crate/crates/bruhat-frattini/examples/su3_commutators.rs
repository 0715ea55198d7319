//! Commutators in quasi-split SU3: the opposite-root factorization with
//! parameters read off the matrix, and the torus action.

use bruhat_frattini::frac::half;
use bruhat_frattini::local_field::{HPoint, LocalModel};
use bruhat_frattini::matrix_verify::{commutator, su3_minus, su3_plus, su3_torus, OppositeParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bruhat_frattini::Result<()> {
    let m = LocalModel::quadratic(5, true, 24)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let uv = HPoint::random(&m, &mut rng, half(1), 0);
    let xy = HPoint::random(&m, &mut rng, half(1), 0);

    let g = commutator(&su3_minus(&m, &xy.inverse(&m)), &su3_plus(&m, &uv))?;
    let p = OppositeParams::new(&m, &uv, &xy)?;
    let read = OppositeParams::from_matrix(&m, &g)?;
    println!("T = {}", p.t);
    println!("V = {}", p.uv.v);
    println!("Y = {}", p.xy.v);
    println!("factorization holds: {}", g.compare(&p.matrix(&m)?).equal);
    println!("V read off the matrix agrees: {}", read.uv.v.compare(&p.uv.v).equal);

    let t = &m.one() + &m.uniformizer();
    let c = commutator(&su3_plus(&m, &uv), &su3_torus(&m, &t)?)?;
    println!("[x_a(u,v), ã(1+ϖ)] has (1,3) entry {}", c.get(0, 2));
    Ok(())
}
