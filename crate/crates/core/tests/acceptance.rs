use std::collections::BTreeSet;

use logfan::cohomology::parse_bundle;
use logfan::kernel::{
    bicategory_law_check, chern_log, euler_pairing, euler_pairing_traced, functoriality_check, parse_kernel,
    random_kernel_pair,
};
use logfan::lattice_fan::{Fan, LatticeVector};
use logfan::log_hkr::{hkr_homology, residue_euler_check};
use logfan::log_product::{
    building_set, is_building_order, log_product, log_product_with_order, order_independence_check, parse_order,
    LogPair, Stratum,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(results: &mut Vec<bool>, n: usize, name: &str, ok: bool, detail: String) {
    println!("{} criterion {n}: {name}{}", if ok { "PASS" } else { "FAIL" }, detail);
    results.push(ok);
}

fn det(rows: &[Vec<i64>]) -> i128 {
    // Fraction-free elimination.
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn full_cones_unimodular(fan: &Fan) -> bool {
    fan.max_cones().iter().all(|c| {
        let rows: Vec<Vec<i64>> = c.rays().iter().map(|r| r.coords().to_vec()).collect();
        rows.len() == fan.rank() && det(&rows).abs() == 1
    })
}

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::new(c.to_vec())
}

fn barycentric_octant() -> (bool, String) {
    let space = log_product(&[LogPair::affine_local(); 3]).unwrap();
    let fan = space.fan();
    let want_rays: BTreeSet<_> = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
    ]
    .iter()
    .map(|c| v(c))
    .collect();
    // One chamber per ordering of the coordinates.
    let mut want_cones = BTreeSet::new();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let mut acc = [0i64; 3];
        let mut cone = BTreeSet::new();
        for i in perm {
            acc[i] = 1;
            cone.insert(v(&acc));
        }
        want_cones.insert(cone);
    }
    let rays: BTreeSet<_> = fan.rays().into_iter().collect();
    let cones: BTreeSet<BTreeSet<_>> = fan
        .max_cones()
        .iter()
        .map(|c| c.rays().iter().cloned().collect())
        .collect();
    let ok = rays == want_rays && cones == want_cones && full_cones_unimodular(fan);
    (ok, format!(" ({} rays, {} cones)", rays.len(), cones.len()))
}

fn all_orders(n: usize) -> Vec<Vec<Stratum>> {
    fn perms(items: &[Stratum]) -> Vec<Vec<Stratum>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, head.clone());
                out.push(p);
            }
        }
        out
    }
    perms(&building_set(n).unwrap())
        .into_iter()
        .filter(|o| is_building_order(o, n))
        .collect()
}

fn order_independence() -> (bool, String) {
    let p1 = LogPair::p1();
    let triple = [p1; 3];
    let orders = all_orders(3);
    let reference = log_product(&triple).unwrap();
    let mut ok = orders.contains(&parse_order("1,2;1,2,3;1,3;2,3").unwrap());
    for o in &orders {
        let f = log_product_with_order(&triple, o).unwrap();
        ok &= f.fan().max_cones() == reference.fan().max_cones() && f.fan().rays() == reference.fan().rays();
    }
    let quad = [LogPair::affine_local(); 4];
    let base = building_set(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 10 {
        let mut o = base.clone();
        o.shuffle(&mut rng);
        if is_building_order(&o, 4) {
            ok &= order_independence_check(&quad, &base, &o).unwrap();
            checked += 1;
        }
    }
    (ok, format!(" ({} valid orders for n=3, {checked} for n=4)", orders.len()))
}

fn smoothness() -> (bool, String) {
    let base = [LogPair::p1(), LogPair::projective(2).unwrap(), LogPair::projective(3).unwrap()];
    let mut products: Vec<Vec<LogPair>> = Vec::new();
    for a in base {
        for b in base {
            products.push(vec![a, b]);
            for c in base {
                products.push(vec![a, b, c]);
            }
        }
    }
    let mut ok = true;
    for ps in &products {
        let space = log_product(ps).unwrap();
        ok &= space.fan().is_smooth() && full_cones_unimodular(space.fan());
    }
    (ok, format!(" ({} products)", products.len()))
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

// h^0, h^n of O(k) on P^n.
fn pn_line(n: i64, k: i64) -> (u64, u64) {
    (binom(n + k, n), binom(-k - 1, n))
}

fn hkr_tables() -> (bool, String) {
    let mut ok = true;
    for n in 1..=4i64 {
        // Omega^log = O(-1)^n; wedge^q has C(n,q) copies of O(-q).
        let mut table = std::collections::BTreeMap::new();
        for q in 0..=n {
            let (h0, hn) = pn_line(n, -q);
            let c = binom(n, q);
            if h0 * c > 0 {
                *table.entry(q).or_insert(0) += h0 * c;
            }
            if hn * c > 0 {
                *table.entry(q - n).or_insert(0) += hn * c;
            }
        }
        let got = hkr_homology(&LogPair::projective(n as u32).unwrap()).unwrap();
        ok &= got.dims().iter().map(|(&d, &m)| (d, m)).collect::<std::collections::BTreeMap<_, _>>() == table;
        ok &= table == std::collections::BTreeMap::from([(0, 1)]);
    }
    let mut notes = Vec::new();
    for g in 1..=4u64 {
        // Riemann-Roch: O has h0 = 1, h1 = g; Omega(pt) has degree 2g-1 > 2g-2, so h0 = g, h1 = 0.
        let want = std::collections::BTreeMap::from([(-1i64, g), (0, 1), (1, g)]);
        let got = hkr_homology(&LogPair::curve(g as u32)).unwrap();
        ok &= got.dims().clone() == want;
        notes.push(format!("g={g}: {:?}", got.dims()));
    }
    (
        ok,
        format!(
            " (curves of genus >= 1 are not concentrated in degree 0, contrary to the k[0] claim: {})",
            notes.join("; ")
        ),
    )
}

fn residue() -> (bool, String) {
    let mut ok = true;
    for n in 1..=4u32 {
        for q in 1..=n {
            ok &= residue_euler_check(n, q).unwrap();
            // chi(Omega^q_{P^n}) = (-1)^q and chi(wedge^q O(-1)^n) = 0 for 1 <= q <= n.
            let sign = |e: u32| if e % 2 == 0 { 1i64 } else { -1 };
            ok &= sign(q) + sign(q - 1) == 0;
        }
    }
    (ok, String::new())
}

fn chern_constants() -> (bool, String) {
    let p1 = LogPair::p1();
    let ch = |t: &str| chern_log(&parse_kernel(t, p1, p1).unwrap()).unwrap().value();
    let mut ok = ch("diag(O,0)") == 1;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let k: i64 = rng.gen_range(-50..=50);
        for s in -6..=6i64 {
            ok &= ch(&format!("diag(O({k}),{s})")) == if s.rem_euclid(2) == 0 { 1 } else { -1 };
        }
    }
    for _ in 0..100 {
        let mut terms = Vec::new();
        let mut want = 0i64;
        for _ in 0..rng.gen_range(1..=5) {
            let (k, s): (i64, i64) = (rng.gen_range(-9..=9), rng.gen_range(-6..=6));
            terms.push(format!("diag(O({k}),{s})"));
            want += if s.rem_euclid(2) == 0 { 1 } else { -1 };
        }
        ok &= ch(&terms.join("+")) == want;
    }
    (ok, String::new())
}

fn euler() -> (bool, String) {
    let p1 = LogPair::p1();
    let o = parse_kernel("diag(O,0)", p1, p1).unwrap();
    let mut ok = euler_pairing(&o, &o).unwrap() == 1;
    let g = parse_kernel("graph(deg=1)", p1, LogPair::projective(2).unwrap()).unwrap();
    let trace = euler_pairing_traced(&g, &g).unwrap();
    let step = |label: &str| {
        trace
            .steps
            .iter()
            .find(|s| s.label == label)
            .map(|s| s.text.clone())
            .unwrap_or_default()
    };
    ok &= trace.value == 0;
    ok &= step("adjoint") == "τΓ_{f,*}O(1)[-1]";
    ok &= step("excess") == parse_bundle(p1, "O(1)").unwrap().to_string();
    ok &= step("Sym") == "i_*O ⊕ i_*O(-1)[1]";
    ok &= step("additivity") == "-1 + 1 = 0";
    (ok, format!(" (traced value {})", trace.value))
}

fn functoriality() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut passed = 0;
    for _ in 0..200 {
        let pair = random_kernel_pair(&mut rng).unwrap();
        if functoriality_check(&pair).unwrap().all() {
            passed += 1;
        }
    }
    (passed == 200, format!(" ({passed}/200)"))
}

fn bicategory() -> (bool, String) {
    let passed = (1000..1100u64).filter(|&s| bicategory_law_check(s).unwrap()).count();
    (passed == 100, format!(" ({passed}/100)"))
}

fn main() {
    let criteria: [(&str, fn() -> (bool, String)); 9] = [
        ("barycentric octant", barycentric_octant),
        ("order independence", order_independence),
        ("smooth log products", smoothness),
        ("HKR tables", hkr_tables),
        ("residue Euler check", residue),
        ("Chern constants", chern_constants),
        ("Euler pairing", euler),
        ("functoriality", functoriality),
        ("bicategory laws", bicategory),
    ];
    let mut results = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        report(&mut results, i + 1, name, ok, detail);
    }
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
