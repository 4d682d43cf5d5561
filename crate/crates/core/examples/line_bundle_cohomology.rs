// Cohomology of shifted split bundles on projective space and curves.

use logfan::cohomology::{euler_characteristic, graded_cohomology, parse_bundle};
use logfan::log_product::LogPair;
use logfan::Error;

pub fn run_example() -> logfan::Result<()> {
    let p2 = LogPair::projective(2)?;
    for text in ["O(1)", "O(-1)^2", "O(-3)", "O(2)+O(-4)[1]"] {
        let b = parse_bundle(p2, text)?;
        print!("P2, {b}: chi = {}\n{}", euler_characteristic(&b)?, graded_cohomology(&b)?);
    }

    let c = LogPair::curve(2);
    for text in ["O", "K", "O(5)", "O(-1)"] {
        let b = parse_bundle(c, text)?;
        print!("genus 2, {b}:\n{}", graded_cohomology(&b)?);
    }
    // Degree 1 on a genus-2 curve: h^0 depends on the bundle, chi does not.
    let b = parse_bundle(c, "O(1)")?;
    match graded_cohomology(&b) {
        Err(e @ Error::AmbiguousDegree { .. }) => println!("{e}; chi = {}", euler_characteristic(&b)?),
        other => panic!("expected an ambiguity, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
