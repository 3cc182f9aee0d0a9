//! Setting every y_i to a single y.

use ppgf::recursion::{compute_q, denominator_dk, specialize_denominator, specialize_single_y};

fn main() -> ppgf::Result<()> {
    for k in 1..=3 {
        let d = specialize_denominator(&denominator_dk(k)?, k)?;
        println!("k={k}: {d}");
        println!("  Q_k = {}", specialize_single_y(&compute_q(k), k)?);
    }
    Ok(())
}
