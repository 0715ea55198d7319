//! d(P) = m·f·ξ for a handful of quasi-split types.

use bruhat_frattini::frattini::{generator_count, xi_from_levels, DpInput, GroupTag};

fn main() -> bruhat_frattini::Result<()> {
    let runs: [(&str, bool, u32, u32, u32); 6] = [
        ("1A4", false, 1, 1, 3),
        ("1G2", false, 2, 1, 5),
        ("2A5", false, 1, 2, 3),
        ("2A4", true, 1, 1, 5),
        ("3D4", false, 1, 1, 5),
        ("2E6", true, 2, 2, 7),
    ];
    for (tag, ramified, m, f, p) in runs {
        let tag: GroupTag = tag.parse()?;
        let r = generator_count(&DpInput { tag, ramified, f_prime: None, m, f, p })?;
        println!("{}", r.derivation);
        if let Ok(xi) = xi_from_levels(&tag, ramified, p) {
            println!("    from the alcove: ξ = {xi}");
        }
    }
    let bad = generator_count(&DpInput {
        tag: "2A2".parse()?,
        ramified: false,
        f_prime: None,
        m: 1,
        f: 1,
        p: 3,
    });
    println!("^2A_2 at p = 3: {}", bad.unwrap_err());
    Ok(())
}
