// Composition and non-categorical adjoints of graph kernels.

use logfan::kernel::{
    adjoint_exchange_check, compose, excess_data, left_adjoint, parse_kernel, right_adjoint, sym_decomposition,
    LogMorphism,
};
use logfan::log_product::LogPair;

pub fn run_example() -> logfan::Result<()> {
    let p1 = LogPair::p1();
    for n in 2..=3 {
        let pn = LogPair::projective(n)?;
        let g = parse_kernel("graph(deg=1)", p1, pn)?;
        let r = right_adjoint(&g)?;
        println!("{pn}: right adjoint {}, left adjoint {}", r.pretty(), left_adjoint(&g)?.pretty());
        let data = excess_data(&LogMorphism::transversal(pn, 1)?);
        println!("  tangent table {} in {}", data.tangent_sub, data.tangent_ambient);
        println!("  excess {}, Sym = {}", data.excess, sym_decomposition(&data.excess)?.pretty());
        println!("  composite {}", compose(&g, &r)?.pretty());
        println!("  exchange holds: {}", adjoint_exchange_check(&g)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
