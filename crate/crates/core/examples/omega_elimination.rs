//! MacMahon's Omega operator: p_{2,2} from a crude form, then further
//! columns one at a time.

use ppgf::omega::{ap_step, p22_stages, BoxGF};

fn main() -> ppgf::Result<()> {
    for (i, stage) in p22_stages()?.iter().enumerate() {
        println!("stage {i}: {} terms", stage.terms().len());
    }
    let mut p = BoxGF::p21();
    println!("p_2,1 = {}", p.value);
    for _ in 0..3 {
        p = ap_step(&p)?;
        println!("p_2,{} numerator has {} terms", p.n, p.value.num().len());
    }
    println!("p_2,2 = {}", ap_step(&BoxGF::p21())?.value);
    Ok(())
}
