//! Numerators of Q_k and Q~_k over D_k from the rational recursion.

use std::env;

use ppgf::recursion::{denominator_dk, numerator, Variant};

fn main() -> ppgf::Result<()> {
    let max_k: usize = env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for k in 1..=max_k {
        let n = numerator(k, Variant::Exact)?;
        let nt = numerator(k, Variant::Tilde)?;
        println!("k={k}: D_k has {} factors", denominator_dk(k)?.len());
        println!("  N_k  ({} terms) = {n}", n.len());
        println!("  N~_k ({} terms) = {nt}", nt.len());
    }
    Ok(())
}
