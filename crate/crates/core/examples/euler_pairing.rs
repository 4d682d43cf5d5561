// The log Euler pairing of the graph of a line in the plane with itself,
// printed step by step.

use logfan::kernel::{euler_pairing, euler_pairing_traced, parse_kernel};
use logfan::log_product::LogPair;

pub fn run_example() -> logfan::Result<()> {
    let p1 = LogPair::p1();
    let o = parse_kernel("diag(O,0)", p1, p1)?;
    println!("chi(i_*O, i_*O) = {}", euler_pairing(&o, &o)?);

    let g = parse_kernel("graph(deg=1)", p1, LogPair::projective(2)?)?;
    let trace = euler_pairing_traced(&g, &g)?;
    print!("chi(O_Γ, O_Γ):\n{trace}");
    assert_eq!(trace.value, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
