use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{graded_cohomology, parse_bundle, GradedDim};
use crate::error::Result;
use crate::kernel::{
    bicategory_law_check, chern_log, chern_log_with, compose, euler_pairing, euler_pairing_traced,
    excess_data, functoriality_check, hh_action, parse_kernel, random_kernel_pair, right_adjoint,
    sym_decomposition, HochschildClass, TraceSign,
};
use crate::lattice_fan::induces_fan_map;
use crate::log_hkr::{hkr_homology, log_serre, residue_euler_check};
use crate::log_product::{
    building_set, log_product, order_independence_check, parse_order, projection, strict_transform_rays,
    LogPair, Stratum,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCase {
    pub id: String,
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub cases: Vec<VerifyCase>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    pub fn case(&self, id: &str) -> Option<&VerifyCase> {
        self.cases.iter().find(|c| c.id == id)
    }
}

struct Builder {
    cases: Vec<VerifyCase>,
}

impl Builder {
    fn check(&mut self, id: &str, anchor: &str, expected: impl ToString, actual: Result<String>) {
        let expected = expected.to_string();
        let (actual, pass) = match actual {
            Ok(a) => {
                let pass = a == expected;
                (a, pass)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.cases.push(VerifyCase {
            id: id.into(),
            anchor: anchor.into(),
            expected,
            actual,
            pass,
        });
    }
}

fn p(n: u32) -> LogPair {
    LogPair::projective(n).expect("positive dimension")
}

fn dims(g: &GradedDim) -> String {
    let parts: Vec<String> = g.dims().iter().map(|(d, n)| format!("{d}:{n}")).collect();
    format!("{{{}}}", parts.join(","))
}

/// Runs every worked example and property suite with the standard sign
/// convention.
pub fn verify_suite() -> VerifyReport {
    verify_suite_with(TraceSign::Graded)
}

pub fn verify_suite_with(sign: TraceSign) -> VerifyReport {
    let mut b = Builder { cases: Vec::new() };
    let p1 = LogPair::p1();

    b.check("fig1-octant-counts", "fig-barycentric-octant", "7 rays, 6 cones, smooth", (|| {
        let space = log_product(&[LogPair::affine_local(); 3])?;
        let fan = space.fan();
        Ok(format!(
            "{} rays, {} cones, {}",
            fan.rays().len(),
            fan.max_cones().len(),
            if fan.is_smooth() { "smooth" } else { "singular" }
        ))
    })());

    b.check("building-set-triple", "triple-product-order", "{1,2,3} {1,2} {1,3} {2,3}", (|| {
        Ok(building_set(3)?.iter().map(Stratum::to_string).collect::<Vec<_>>().join(" "))
    })());

    b.check("triple-order-independence", "triple-product-same-blowup", "true", (|| {
        let pairs = [LogPair::affine_local(); 3];
        let alt = parse_order("1,2;1,2,3;1,3;2,3")?;
        Ok(order_independence_check(&pairs, &building_set(3)?, &alt)?.to_string())
    })());

    b.check("projection-triple", "projection-lemma-square", "true", (|| {
        let space = log_product(&[p1, p1, p1])?;
        let (target, map) = projection(&space, &[0, 1])?;
        Ok(induces_fan_map(space.fan(), target.fan(), &map)?.to_string())
    })());

    b.check("strict-transform-triple", "strong-composition-total-transform", "{1,2,3} {1,2} {1,3}", (|| {
        let space = log_product(&[p1, p1, p1])?;
        let d = strict_transform_rays(&space, 0)?;
        Ok(d.exceptional.iter().map(|(s, _)| s.to_string()).collect::<Vec<_>>().join(" "))
    })());

    b.check("log-products-smooth", "sequential-blowups-smooth", "true", (|| {
        let base = [p1, p(2), p(3)];
        let mut all = true;
        for a in base {
            for c in base {
                all &= log_product(&[a, c])?.fan().is_smooth();
                for d in base {
                    all &= log_product(&[a, c, d])?.fan().is_smooth();
                }
            }
        }
        Ok(all.to_string())
    })());

    b.check("sym-p1-cohomology", "sym-of-shifted-minus-one", "{0:1}", (|| {
        Ok(dims(&graded_cohomology(&parse_bundle(p1, "O+O(-1)[1]")?)?))
    })());

    b.check("hkr-p1", "hkr-concentrated-degree-zero", "{0:1}", (|| Ok(dims(&hkr_homology(&p1)?)))());

    b.check("hkr-projective-regression", "hkr-projective-space", "{0:1} {0:1} {0:1} {0:1}", (|| {
        let v = (1..=4).map(|n| Ok(dims(&hkr_homology(&p(n))?))).collect::<Result<Vec<_>>>()?;
        Ok(v.join(" "))
    })());

    b.check(
        "hkr-curve-positive-genus",
        "curve-hh-concentrated-claim",
        "g=1 {-1:1,0:1,1:1} g=2 {-1:2,0:1,1:2} (not k[0])",
        (|| {
            let mut parts = Vec::new();
            for g in 1..=2u32 {
                parts.push(format!("g={g} {}", dims(&hkr_homology(&LogPair::curve(g))?)));
            }
            Ok(format!("{} (not k[0])", parts.join(" ")))
        })(),
    );

    b.check("residue-euler", "residue-sequence", "true", (|| {
        let mut all = true;
        for n in 1..=4 {
            for q in 1..=n {
                all &= residue_euler_check(n, q)?;
            }
        }
        Ok(all.to_string())
    })());

    b.check("log-serre-p1", "log-serre-p1", "O(-1)[1]", (|| Ok(log_serre(&p1)?.to_string()))());

    b.check("unit-law", "kernel-unit", "diag(O(3),2)", (|| {
        let unit = parse_kernel("diag(O,0)", p1, p1)?;
        let e = parse_kernel("diag(O(3),2)", p1, p1)?;
        Ok(compose(&unit, &e)?.to_string())
    })());

    b.check("right-adjoint-graph", "graph-right-adjoint", "τΓ_{f,*}O(1)[-1]", (|| {
        Ok(right_adjoint(&parse_kernel("graph(deg=1)", p1, p(2))?)?.pretty())
    })());

    b.check("right-adjoint-diag", "diagonal-self-adjoint", "diag(O,0)", (|| {
        Ok(right_adjoint(&parse_kernel("diag(O,0)", p1, p1)?)?.to_string())
    })());

    b.check("excess-plane", "excess-bundle-cokernel", "O(1)", (|| {
        Ok(excess_data(&crate::kernel::LogMorphism::transversal(p(2), 1)?).excess.to_string())
    })());

    b.check("sym-excess", "sym-decomposition", "i_*O ⊕ i_*O(-1)[1]", (|| {
        let e = parse_bundle(p1, "O(1)")?;
        Ok(sym_decomposition(&e)?.pretty())
    })());

    b.check("graph-composite", "graph-self-intersection", "i_*O(1)[-1] ⊕ i_*O", (|| {
        let g = parse_kernel("graph(deg=1)", p1, p(2))?;
        Ok(compose(&g, &right_adjoint(&g)?)?.pretty())
    })());

    b.check("hh-identity", "diagonal-acts-as-identity", "1", (|| {
        let e = parse_kernel("diag(O,0)", p1, p1)?;
        Ok(hh_action(&e, &HochschildClass::unit(p1))?.to_string())
    })());

    b.check("chern-normalized", "chern-normalization", "1", (|| {
        Ok(chern_log_with(&parse_kernel("diag(O,0)", p1, p1)?, sign)?.to_string())
    })());

    b.check("chern-shift", "chern-shifted-line-bundle", "-1", (|| {
        Ok(chern_log_with(&parse_kernel("diag(O(4),1)", p1, p1)?, sign)?.to_string())
    })());

    b.check("chern-sign-law", "chern-any-line-bundle", "true", (|| {
        let mut all = true;
        for k in -5..=5 {
            for s in -6..=6i64 {
                let e = parse_kernel(&format!("diag(O({k}),{s})"), p1, p1)?;
                all &= chern_log_with(&e, sign)?.value() == if s % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(all.to_string())
    })());

    b.check("chern-additivity", "chern-direct-sum", "0", (|| {
        Ok(chern_log_with(&parse_kernel("diag(O,0)+diag(O(5),1)", p1, p1)?, sign)?.to_string())
    })());

    b.check("euler-diagonal", "euler-pairing-diagonal", "1", (|| {
        let o = parse_kernel("diag(O,0)", p1, p1)?;
        Ok(euler_pairing(&o, &o)?.to_string())
    })());

    b.check("euler-graph", "euler-pairing-graph", "0", (|| {
        let g = parse_kernel("graph(deg=1)", p1, p(2))?;
        Ok(euler_pairing(&g, &g)?.to_string())
    })());

    b.check("euler-graph-additivity", "euler-pairing-graph-sum", "-1 + 1 = 0", (|| {
        let g = parse_kernel("graph(deg=1)", p1, p(2))?;
        let trace = euler_pairing_traced(&g, &g)?;
        Ok(trace
            .steps
            .iter()
            .find(|s| s.label == "additivity")
            .map(|s| s.text.clone())
            .unwrap_or_default())
    })());

    b.check("bicategory-laws", "dg-bicategory", "100/100", (|| {
        let ok = (0..100u64).map(bicategory_law_check).collect::<Result<Vec<_>>>()?;
        Ok(format!("{}/100", ok.iter().filter(|&&x| x).count()))
    })());

    b.check("functoriality", "adjoint-and-hh-functoriality", "200/200", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x10f);
        let mut ok = 0;
        for _ in 0..200 {
            if functoriality_check(&random_kernel_pair(&mut rng)?)?.all() {
                ok += 1;
            }
        }
        Ok(format!("{ok}/200"))
    })());

    b.check("chern-graded-unit", "chern-normalization", "1", (|| {
        Ok(chern_log(&parse_kernel("diag(O(2),0)", p(3), p(3))?)?.to_string())
    })());

    VerifyReport { cases: b.cases }
}
