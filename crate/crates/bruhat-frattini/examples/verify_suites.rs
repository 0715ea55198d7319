//! Run every identity suite on both quadratic models over F_5((t)).

use bruhat_frattini::matrix_verify::{run_suite, Suite, SuiteConfig};

fn main() -> bruhat_frattini::Result<()> {
    for suite in Suite::ALL {
        for ramified in [false, true] {
            let cfg = SuiteConfig {
                trials: 100,
                seed: 2024,
                ..SuiteConfig::new(5, ramified)
            };
            let r = run_suite(suite, &cfg)?;
            println!(
                "{:20} {:10} {:4} trials {} failures, margin {:?}",
                suite.id(),
                if ramified { "ramified" } else { "unramified" },
                r.trials,
                r.failures,
                r.worst_precision_margin
            );
        }
    }
    Ok(())
}
