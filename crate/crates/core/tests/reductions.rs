//! Specializations that collapse one family onto another.

use bellkit_core::bell::BellFamily;
use bellkit_core::special::{stirling_table, StirlingKind};
use bellkit_core::verify::{check, TheoremId};
use bellkit_core::ExactRational;
use num_traits::Zero;

#[test]
fn lambda_zero_gives_classical_families() {
    let zero = ExactRational::zero();
    let mut degenerate = vec![BellFamily::DegBell, BellFamily::DegBell2];
    degenerate.extend((-1..=3).map(|k| BellFamily::DegPolyBell2 { k }));
    for f in degenerate {
        let deg = f.explicit_values(8);
        let cls = f.classical_counterpart().explicit_values(8);
        for (d, c) in deg.iter().zip(&cls) {
            assert_eq!(d.value.eval(Some(&zero), None), c.value, "{f} n={}", d.n);
        }
    }
    for kind in [StirlingKind::First, StirlingKind::Second] {
        let deg = stirling_table(kind, true, 8);
        let cls = stirling_table(kind, false, 8);
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(deg.get(n, k).eval(Some(&zero), None), cls.get(n, k));
            }
        }
    }
}

#[test]
fn poly_index_one_is_signed_plain_family() {
    let poly = BellFamily::PolyBell2 { k: 1 }.explicit_values(10);
    let plain = BellFamily::Bell2.explicit_values(10);
    for (p, b) in poly.iter().zip(&plain) {
        let sign = if p.n % 2 == 1 { 1 } else { -1 };
        assert_eq!(p.value, b.value.scale(&ExactRational::from_integer(sign.into())));
    }
    let deg_poly = BellFamily::DegPolyBell2 { k: 1 }.explicit_values(8);
    let deg_plain = BellFamily::DegBell2.explicit_values(8);
    for (p, b) in deg_poly.iter().zip(&deg_plain) {
        let sign = if p.n % 2 == 1 { 1 } else { -1 };
        assert_eq!(p.value.scale(&ExactRational::from_integer(sign.into())), b.value);
    }
}

#[test]
fn reduction_checks_pass() {
    for (id, n) in [(TheoremId::ReduceLambda0, 8), (TheoremId::ReduceK1, 10)] {
        let r = check(id, n, Some(-1..=3)).unwrap();
        assert!(r.passed(), "{id}: {:?}", r.counterexample);
    }
}
