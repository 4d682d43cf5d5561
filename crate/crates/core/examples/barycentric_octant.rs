// Three copies of the local model `(A^1, 0)`: the log product is the
// barycentric subdivision of the octant.

use logfan::lattice_fan::is_smooth;
use logfan::log_product::{log_product, LogPair};

pub fn run_example() -> logfan::Result<()> {
    let space = log_product(&[LogPair::affine_local(); 3])?;
    let fan = space.fan();
    println!("rays ({}):", fan.rays().len());
    for r in fan.rays() {
        println!("  {r}  {:?}", fan.label(&r));
    }
    println!("maximal cones ({}):", fan.max_cones().len());
    for c in fan.max_cones() {
        println!("  {c}  smooth={}", is_smooth(c, fan.rank())?);
    }
    assert_eq!(fan.rays().len(), 7);
    assert_eq!(fan.max_cones().len(), 6);
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
