use logfan::log_hkr::{bott_dims, hkr_cohomology, hkr_homology, log_serre, relative_serre_of_log_diagonal, residue_euler_check};
use logfan::log_product::LogPair;

#[test]
fn projective_spaces_are_concentrated() {
    for n in 1..=6 {
        let hh = hkr_homology(&LogPair::projective(n).unwrap()).unwrap();
        assert_eq!(hh.dims().iter().map(|(d, m)| (*d, *m)).collect::<Vec<_>>(), vec![(0, 1)]);
    }
}

#[test]
fn degrees_stay_within_dimension() {
    for pair in [LogPair::p1(), LogPair::projective(3).unwrap(), LogPair::curve(2), LogPair::curve(5)] {
        let n = pair.dim() as i64;
        for table in [hkr_homology(&pair).unwrap(), hkr_cohomology(&pair).unwrap()] {
            assert!(table.dims().keys().all(|d| -n <= *d && *d <= 2 * n));
        }
    }
}

#[test]
fn curves_have_symmetric_tables() {
    for g in 1..=6 {
        let hh = hkr_homology(&LogPair::curve(g)).unwrap();
        assert_eq!(hh.get(-1), g as u64);
        assert_eq!(hh.get(1), g as u64);
        assert_eq!(hh.get(0), 1);
        assert_eq!(hh.euler(), 1 - 2 * g as i64);
    }
}

#[test]
fn residue_checks() {
    for n in 1..=6 {
        for q in 1..=n {
            assert!(residue_euler_check(n, q).unwrap(), "n={n} q={q}");
        }
    }
}

#[test]
fn bott_extremes() {
    // Omega^q twisted by zero: only H^q, of dimension one.
    for n in 1..=4 {
        for q in 0..=n {
            let d = bott_dims(n, q, 0).unwrap();
            assert_eq!(d.dims().iter().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(), vec![(q as i64, 1)]);
        }
    }
}

#[test]
fn serre_functors() {
    for n in 1..=4u32 {
        let s = log_serre(&LogPair::projective(n).unwrap()).unwrap();
        assert_eq!(s.degree(), -(n as i64));
        assert_eq!(s.inverse().inverse(), s);
    }
    assert!(relative_serre_of_log_diagonal(&LogPair::p1()).is_ok());
}
