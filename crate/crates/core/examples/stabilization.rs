//! Truncated series times D_k, cut at a fixed degree, settles on the
//! numerator once enough terms are included.

use ppgf::recursion::{compute_q_tilde, denominator_dk, numerator, Variant};

fn main() -> ppgf::Result<()> {
    let k = 2;
    let cutoff = 6;
    let qt = compute_q_tilde(k);
    let dk = denominator_dk(k)?.expand();
    let target = numerator(k, Variant::Tilde)?;
    // bound the top row only
    let weights: Vec<i64> = (0..2 * k).map(|i| i64::from(i < k)).collect();
    for n in 1..=10 {
        let approx = (&qt.series_weighted(&weights, n - 1)? * &dk).truncate(cutoff);
        let mark = if approx == target { "=" } else { " " };
        println!("{n:2} {mark} {approx}");
    }
    Ok(())
}
