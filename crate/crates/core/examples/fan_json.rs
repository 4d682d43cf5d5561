// Fans as JSON: dump a log product, read it back and check it.

use logfan::lattice_fan::Fan;
use logfan::log_product::{log_product, LogPair};

pub fn run_example() -> logfan::Result<()> {
    let space = log_product(&[LogPair::p1(), LogPair::p1()])?;
    let text = space.fan().to_json();
    println!("{text}");
    let back = Fan::from_json(&text)?;
    assert_eq!(&back, space.fan());
    println!("round trip ok, smooth={}", back.is_smooth());
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
