//! Browser demo: outage and BER against transmit power, ergodic capacity
//! against the source-RIS distance. Every entry point takes a config in the
//! same `key = value` format as the command-line tool and returns a flat
//! `Float64Array` of `x, y` pairs; points that fail to evaluate come back
//! as NaN so the page can leave a gap.

use rislink::cli::{cmd_metric, parse_config, Method, MethodSel, Metric, MetricRequest, SettingsOverride, Sweep};
use wasm_bindgen::prelude::*;

fn curve(config: &str, metric: Metric, method: &str, sweep: String) -> Result<Vec<f64>, String> {
    let raw = parse_config(config).map_err(|e| e.to_string())?;
    let method = match method {
        "exact" => Method::Exact,
        "asymptotic" => Method::Asymptotic,
        "mc" => Method::Mc,
        other => return Err(format!("unknown method '{other}'")),
    };
    let req = MetricRequest {
        metric,
        methods: MethodSel::One(method),
        sweep: Some(Sweep::parse(&sweep).map_err(|e| e.to_string())?),
        flags: SettingsOverride::default(),
    };
    let table = cmd_metric(&raw, &req).map_err(|e| e.to_string())?;
    Ok(table
        .rows
        .iter()
        .flat_map(|r| [r.x, *r.estimate.as_ref().unwrap_or(&f64::NAN)])
        .collect())
}

pub fn op_vs_power(config: &str, method: &str, p_min_dbm: f64, p_max_dbm: f64, steps: u32) -> Result<Vec<f64>, String> {
    curve(config, Metric::Op, method, format!("tx_power_dbm={p_min_dbm}:{p_max_dbm}:{steps}"))
}

pub fn ber_vs_power(config: &str, method: &str, p_min_dbm: f64, p_max_dbm: f64, steps: u32) -> Result<Vec<f64>, String> {
    curve(config, Metric::Ber, method, format!("tx_power_dbm={p_min_dbm}:{p_max_dbm}:{steps}"))
}

pub fn ec_vs_distance(config: &str, method: &str, r_min_m: f64, r_max_m: f64, steps: u32) -> Result<Vec<f64>, String> {
    curve(config, Metric::Ec, method, format!("r_h_m={r_min_m}:{r_max_m}:{steps}"))
}

#[wasm_bindgen(js_name = opCurve)]
pub fn op_curve(config: &str, method: &str, p_min_dbm: f64, p_max_dbm: f64, steps: u32) -> Result<Vec<f64>, JsError> {
    op_vs_power(config, method, p_min_dbm, p_max_dbm, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = berCurve)]
pub fn ber_curve(config: &str, method: &str, p_min_dbm: f64, p_max_dbm: f64, steps: u32) -> Result<Vec<f64>, JsError> {
    ber_vs_power(config, method, p_min_dbm, p_max_dbm, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = ecCurve)]
pub fn ec_curve(config: &str, method: &str, r_min_m: f64, r_max_m: f64, steps: u32) -> Result<Vec<f64>, JsError> {
    ec_vs_distance(config, method, r_min_m, r_max_m, steps).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rislink::cli::{FIG1_CONFIG, FIG3_CONFIG};

    #[test]
    fn curves_are_pairs() {
        let op = op_vs_power(FIG1_CONFIG, "exact", 40.0, 80.0, 5).unwrap();
        assert_eq!(op.len(), 10);
        let ys: Vec<f64> = op.chunks(2).map(|p| p[1]).collect();
        assert!(ys.windows(2).all(|w| w[1] < w[0]), "{ys:?}");

        let ber = ber_vs_power(FIG1_CONFIG, "asymptotic", 40.0, 80.0, 3).unwrap();
        assert!(ber.chunks(2).all(|p| p[1] > 0.0 && p[1] < 0.5));

        let ec = ec_vs_distance(FIG3_CONFIG, "exact", 10.0, 90.0, 9).unwrap();
        let ys: Vec<f64> = ec.chunks(2).map(|p| p[1]).collect();
        let min = ys.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(min, ys[4]);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(op_vs_power("n_elements = 4\nbogus = 1", "exact", 0.0, 1.0, 2).is_err());
        assert!(op_vs_power(FIG1_CONFIG, "magic", 0.0, 1.0, 2).is_err());
        assert!(ec_vs_distance(FIG1_CONFIG, "exact", 10.0, 90.0, 0).is_err());
    }
}
