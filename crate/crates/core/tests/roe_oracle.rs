mod common;

use common::textbook_roe;
use mixfv::flux::roe_flux;
use mixfv::{GasComponent, Model, ModelKind, Primitive};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.1f64..10.0, -3.0f64..3.0, 0.1f64..10.0, 0.0f64..=1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn equal_gamma_roe_matches_single_gas_roe(l in state(), r in state(), g in 1.1f64..1.9) {
        let m = Model::new(ModelKind::MassFraction, 1, GasComponent::perfect(g), GasComponent::perfect(g)).unwrap();
        let to = |s: (f64, f64, f64, f64)| m.to_conserved(&Primitive::mass_fraction(s.0, s.1, s.2, s.3)).unwrap();
        let ours = roe_flux(&m, &to(l), &to(r)).unwrap();
        let oracle = textbook_roe(g, l, r);
        let scale = oracle.iter().chain(ours.iter()).fold(1.0f64, |m, v| m.max(v.abs()));
        for k in 0..4 {
            prop_assert!((ours[k] - oracle[k]).abs() <= 1e-12 * scale, "slot {k}: {} vs {}", ours[k], oracle[k]);
        }
    }
}
