use std::f64::consts::PI;

use sre_core::asymptotics::subleading_dn;
use sre_core::harness::{
    dominant_period, fit_exponent, run_compare, table_from_json, table_to_csv, table_to_json, Format, SweepConfig,
};
use sre_core::Model;

fn sweep(model: Model, n: Vec<f64>, alpha: Vec<f64>, lengths: Vec<usize>) -> SweepConfig {
    SweepConfig { model, n, alpha, lengths, out: None, format: Format::Csv }
}

#[test]
fn fit_recovers_subleading_exponent() {
    let specs = [
        Model::xx_half_filled(),
        Model::new(vec![PI / 3.0], -1).unwrap(),
        Model::new(vec![2.0 * PI / 5.0, 3.0 * PI / 5.0], -1).unwrap(),
    ];
    for spec in &specs {
        let hint = dominant_period(spec);
        for (n, alpha) in [(1.0, PI / 2.0), (2.0, PI / 3.0), (3.0, 0.0), (2.0, -0.4)] {
            let series: Vec<(f64, f64)> = (256..=4096)
                .step_by(7)
                .map(|len| (len as f64, subleading_dn(spec, n, alpha, len).unwrap().norm()))
                .collect();
            let expected = 2.0 / n * (1.0 - alpha.abs() / PI);
            let fit = fit_exponent(&series, hint, 0.0).unwrap();
            assert!(
                (fit.exponent - expected).abs() < 0.05,
                "{} n={n} α={alpha}: fitted {} expected {expected}",
                spec.model_id(),
                fit.exponent
            );
        }
    }
}

#[test]
fn normalisation_row_is_exactly_one() {
    let spec = Model::new(vec![0.7, 2.2], 1).unwrap();
    let t = run_compare(&sweep(spec, vec![1.0], vec![0.0], vec![1, 2, 3, 17, 64, 255])).unwrap();
    for r in &t.rows {
        assert!((r.exact.re - 1.0).abs() < 1e-12 && r.exact.im.abs() < 1e-12, "L={}", r.len);
    }
}

#[test]
fn tables_are_deterministic_and_round_trip() {
    let cfg = sweep(Model::new(vec![1.0], -1).unwrap(), vec![0.5, 2.0], vec![-1.0, 0.0, 2.0], vec![9, 17, 40]);
    let a = run_compare(&cfg).unwrap();
    let b = run_compare(&cfg).unwrap();
    assert_eq!(table_to_csv(&a).unwrap(), table_to_csv(&b).unwrap());
    assert_eq!(a.rows.len(), 18);
    let back = table_from_json(&table_to_json(&a).unwrap()).unwrap();
    assert_eq!(back.rows, a.rows);
    assert_eq!(back.metadata.model, a.metadata.model);
}
