//! Prints the reference profile of each target for small qubit counts.

use liepool::{reference_profile, AlgebraTarget};

fn main() {
    for n in 1..=6 {
        for target in [AlgebraTarget::full(), AlgebraTarget::odd_y(), AlgebraTarget::chem()] {
            let t = std::time::Instant::now();
            match reference_profile(n, &target) {
                Ok(p) => println!(
                    "n={n} {:<6} rank {:>2} mcp_size {:>4} ({}) [{:.2?}]",
                    target.name(),
                    p.rank,
                    p.mcp_size.map_or("?".to_string(), |m| m.to_string()),
                    p.source,
                    t.elapsed()
                ),
                Err(e) => println!("n={n} {:<6} {e}", target.name()),
            }
        }
    }
}
