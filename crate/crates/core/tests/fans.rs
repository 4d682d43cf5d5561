use logfan::lattice_fan::{induces_fan_map, product_fan, star_subdivide, Cone, Fan, LatticeMap, LatticeVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cone(rank: usize, rays: &[&[i64]]) -> Cone {
    Cone::new(rank, rays.iter().map(|r| LatticeVector::new(r.to_vec()))).unwrap()
}

#[test]
fn subdivision_preserves_support() {
    let fan = Fan::projective_space(3);
    let center = cone(3, &[&[1, 0, 0], &[0, 1, 0]]);
    let sub = star_subdivide(&fan, &center).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let p = fan.random_support_point(&mut rng);
        assert!(sub.contains_point(&p));
    }
    let octant = Fan::octant(3);
    let sub = star_subdivide(&octant, &cone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
    for _ in 0..1000 {
        let p = octant.random_support_point(&mut rng);
        assert!(sub.contains_point(&p));
        let q = sub.random_support_point(&mut rng);
        assert!(octant.contains_point(&q));
    }
}

#[test]
fn subdivision_keeps_face_closure_and_smoothness() {
    let mut fan = Fan::octant(3);
    for center in [
        cone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        cone(3, &[&[1, 0, 0], &[0, 1, 0]]),
    ] {
        fan = star_subdivide(&fan, &center).unwrap();
        assert!(fan.face_closure_violation().is_none());
        assert!(fan.is_smooth());
    }
    assert_eq!(fan.exceptional_count(), 2);
    assert_eq!(fan.max_cones().len(), 4);
}

#[test]
fn subdivision_is_deterministic() {
    let center = cone(2, &[&[1, 0], &[0, 1]]);
    let a = star_subdivide(&Fan::projective_space(2), &center).unwrap();
    let b = star_subdivide(&Fan::projective_space(2), &center).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn centers_outside_the_fan_are_rejected() {
    let bad = cone(2, &[&[1, 0], &[1, 1]]);
    assert!(star_subdivide(&Fan::projective_space(2), &bad).is_err());
}

#[test]
fn fan_maps() {
    let blown = star_subdivide(&Fan::octant(2), &cone(2, &[&[1, 0], &[0, 1]])).unwrap();
    assert!(induces_fan_map(&blown, &Fan::octant(2), &LatticeMap::identity(2)).unwrap());
    let proj = LatticeMap::coordinate_projection(3, &[0, 1]);
    assert!(induces_fan_map(&Fan::octant(3), &Fan::octant(2), &proj).unwrap());
    assert!(!induces_fan_map(&Fan::octant(3), &blown, &proj).unwrap());
}

#[test]
fn products_of_smooth_fans_are_smooth() {
    let f = product_fan(&Fan::projective_space(1), &Fan::projective_space(2));
    assert_eq!(f.rank(), 3);
    assert_eq!(f.max_cones().len(), 6);
    assert!(f.is_smooth());
}
