// Log Chern characters of diagonal kernels and of graphs.

use logfan::kernel::{chern_log, chern_log_expansion, parse_kernel};
use logfan::log_product::LogPair;

pub fn run_example() -> logfan::Result<()> {
    let p1 = LogPair::p1();
    for text in ["diag(O,0)", "diag(O(7),1)", "diag(O(-3),2)", "diag(O,0)+diag(O(5),1)"] {
        let e = parse_kernel(text, p1, p1)?;
        println!("ch({}) = {}", e.pretty(), chern_log(&e)?);
    }

    let p2 = LogPair::projective(2)?;
    for text in ["graph(deg=1)", "graph(deg=1,O,1)", "graph(deg=2)+graph(deg=2)"] {
        let e = parse_kernel(text, p1, p2)?;
        println!("ch_e({}) = {}", e.pretty(), chern_log_expansion(&e)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
