// Log Hochschild homology tables from the HKR decomposition.

use logfan::log_hkr::{hkr_cohomology, hkr_homology, log_cotangent, log_serre, residue_euler_check};
use logfan::log_product::LogPair;

pub fn run_example() -> logfan::Result<()> {
    let mut pairs = vec![LogPair::p1()];
    for n in 2..=4 {
        pairs.push(LogPair::projective(n)?);
    }
    pairs.extend([LogPair::curve(1), LogPair::curve(3)]);

    for pair in &pairs {
        println!("== {pair}");
        println!("Omega^log = {}", log_cotangent(pair)?.omega_log);
        println!("S^log = {}", log_serre(pair)?);
        print!("HH_*:\n{}", hkr_homology(pair)?);
        print!("HH^*:\n{}", hkr_cohomology(pair)?);
    }

    for n in 1..=4 {
        for q in 1..=n {
            assert!(residue_euler_check(n, q)?);
        }
    }
    println!("residue sequence checks pass for n <= 4");
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
