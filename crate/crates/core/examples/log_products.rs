// Log products of projective pairs, building-set orders and projections.

use logfan::lattice_fan::induces_fan_map;
use logfan::log_product::{
    building_set, log_product, order_independence_check, parse_order, projection, strict_transform_rays, LogPair,
};

pub fn run_example() -> logfan::Result<()> {
    let p1 = LogPair::p1();
    let p2 = LogPair::projective(2)?;

    let space = log_product(&[p1, p2])?;
    println!(
        "P1 x^log P2: {} rays, {} cones, smooth={}",
        space.fan().rays().len(),
        space.fan().max_cones().len(),
        space.fan().is_smooth()
    );

    let triple = [p1, p1, p1];
    let strata: Vec<String> = building_set(3)?.iter().map(|s| s.to_string()).collect();
    println!("building set: {}", strata.join(" "));
    let alt = parse_order("1,2;1,2,3;1,3;2,3")?;
    println!(
        "alternative order gives the same fan: {}",
        order_independence_check(&triple, &building_set(3)?, &alt)?
    );

    let space = log_product(&triple)?;
    let d = strict_transform_rays(&space, 0)?;
    println!("D_1 pulls back to {} plus:", d.strict);
    for (s, r) in &d.exceptional {
        println!("  E{s} = {r}");
    }

    let (pair, map) = projection(&space, &[0, 2])?;
    println!(
        "projection to factors 1,3 is a fan map: {}",
        induces_fan_map(space.fan(), pair.fan(), &map)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> logfan::Result<()> {
    run_example()
}
