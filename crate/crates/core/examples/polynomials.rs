//! Sparse polynomials and factored rational functions.

use ppgf::{FactoredGF, Polynomial, VariableContext};

fn main() -> ppgf::Result<()> {
    let ctx = VariableContext::plane_partition(2);
    let p = Polynomial::parse(&ctx, "1 - x1^2*y1*x2")?;
    let q = Polynomial::parse(&ctx, "x1 + y2")?;
    println!("p * q = {}", &p * &q);
    println!("json: {}", p.to_json());

    let m = ctx.var("x1")?;
    let g = FactoredGF::with_factors(p.mul_one_minus(&m), [m.clone(), ctx.var("x2")?])?;
    println!("before reduce: {g}");
    println!("after reduce:  {}", g.reduce());
    println!("series to degree 3: {}", g.series(3)?);
    Ok(())
}
