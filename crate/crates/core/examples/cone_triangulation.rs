//! Hilbert basis, half-open triangulation and counts for the cone of
//! plane partitions with two rows.

use ppgf::cli::catalan;
use ppgf::conegeom::{count_linear_extensions, gf_via_triangulation, rays_uk, triangulation};
use ppgf::recursion::denominator_dk;

fn main() -> ppgf::Result<()> {
    let k = 3;
    for (i, r) in rays_uk(k).iter().enumerate() {
        println!("ray {i:02}: {r}");
    }
    for cone in triangulation(k) {
        let rays: Vec<String> = cone.rays.iter().map(|r| r.to_string()).collect();
        println!(
            "cone det={} marks={:?}\n  {}",
            cone.determinant(),
            cone.halfopen_marks,
            rays.join("\n  ")
        );
    }
    let num = gf_via_triangulation(k).clear_to(&denominator_dk(k)?)?;
    println!("numerator over D_{k}: {num}");
    for k in 2..=8 {
        println!(
            "k={k} rays={} cones={} catalan={}",
            rays_uk(k).len(),
            count_linear_extensions(k),
            catalan(k)
        );
    }
    Ok(())
}
