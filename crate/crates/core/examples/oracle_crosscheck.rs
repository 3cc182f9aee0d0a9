//! Compares every route with brute-force enumeration.

use ppgf::cli::verify_checks;
use ppgf::enumerate::enumerate_pp;

fn main() -> ppgf::Result<()> {
    for p in enumerate_pp(2, 3, false) {
        println!("{p}  size {}", p.size());
    }
    for k in 1..=4 {
        for check in verify_checks(k, 8)? {
            println!(
                "k={k} {}: {}",
                check.name,
                if check.ok { "ok" } else { "FAILED" }
            );
        }
    }
    Ok(())
}
