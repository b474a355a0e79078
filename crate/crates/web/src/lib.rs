//! Browser bindings. Every function takes and returns JSON text; failures
//! come back as `{"error": "..."}`.

use nonrev::certificate::{decode_pairs, Certificate};
use nonrev::element::Element;
use nonrev::oracle::finite_sweep;
use nonrev::order::Structure;
use nonrev::strategies::run;
use nonrev::structures::{compatible_strategies, describe, structure_by_id, Plane, STRUCTURE_IDS};
use nonrev::verify::verify_certificate;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest run the page accepts.
pub const MAX_STEPS: usize = 400;
/// Largest finite sweep the page accepts.
pub const MAX_SCAN: usize = 5;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Structures with the strategies that run on them.
#[wasm_bindgen]
pub fn structures() -> String {
    let list: Vec<Value> = STRUCTURE_IDS
        .iter()
        .map(|id| {
            let runnable: Vec<&str> = compatible_strategies(id).into_iter().filter(|s| !s.ends_with("-lift")).collect();
            json!({ "id": id, "strategies": runnable, "result": describe(id) })
        })
        .collect();
    Value::Array(list).to_string()
}

fn coords(x: &Element) -> Option<[f64; 2]> {
    match x {
        Element::Pair(m, n) => Some([*m as f64, *n as f64]),
        Element::RatPair(a, b) => Some([*a.numer() as f64 / *a.denom() as f64, *b.numer() as f64 / *b.denom() as f64]),
        _ => None,
    }
}

fn index(st: Option<&dyn Structure>, x: &Element) -> Option<f64> {
    match x {
        Element::Vertex(v) => Some(*v as f64),
        _ => st?.index_of(x)?.to_string().parse().ok(),
    }
}

/// The final map as drawable points: plane coordinates where the
/// structure has them, enumeration indices otherwise.
fn drawing(cert: &Certificate) -> Value {
    let st: Option<Box<dyn Structure>> = match cert.structure.as_str() {
        "zxz" => Some(Box::new(Plane::integer())),
        "qxq" => Some(Box::new(Plane::rational())),
        "random-poset" => None,
        id => structure_by_id(id).ok(),
    };
    let Some(pairs) = st.as_deref().and_then(|s| decode_pairs(s, &cert.final_map).ok()).or_else(|| {
        let parse = |s: &str| s.strip_prefix('v')?.parse().ok().map(Element::Vertex);
        cert.final_map.iter().map(|[x, y]| Some((parse(x)?, parse(y)?))).collect()
    }) else {
        return Value::Null;
    };
    let planar = pairs.iter().all(|(x, y)| coords(x).is_some() && coords(y).is_some());
    let arrows: Vec<Value> = pairs
        .iter()
        .map(|(x, y)| {
            let (from, to) = if planar {
                (coords(x).map(|c| c.to_vec()), coords(y).map(|c| c.to_vec()))
            } else {
                (index(st.as_deref(), x).map(|i| vec![i]), index(st.as_deref(), y).map(|i| vec![i]))
            };
            json!({ "x": x.to_string(), "y": y.to_string(), "from": from, "to": to })
        })
        .collect();
    json!({ "planar": planar, "arrows": arrows })
}

/// Runs a strategy, verifies the result, and returns the certificate, the
/// report and a drawing of the final map.
#[wasm_bindgen]
pub fn run_and_verify(structure: &str, strategy: &str, steps: usize) -> String {
    if steps > MAX_STEPS {
        return error(format!("at most {MAX_STEPS} steps in the browser"));
    }
    match run(structure, strategy, steps, None) {
        Ok(cert) => json!({
            "certificate": cert.to_json(),
            "report": verify_certificate(&cert),
            "drawing": drawing(&cert),
        })
        .to_string(),
        Err(e) => error(e),
    }
}

/// Verifies certificate text, typically after hand edits.
#[wasm_bindgen]
pub fn verify_text(text: &str) -> String {
    match Certificate::from_json(text) {
        Ok(cert) => json!({ "report": verify_certificate(&cert), "drawing": drawing(&cert) }).to_string(),
        Err(e) => error(format!("not a certificate: {e}")),
    }
}

/// Scans every bijection of every labeled poset up to `max_size` points.
#[wasm_bindgen]
pub fn finite_scan(max_size: usize) -> String {
    if max_size > MAX_SCAN {
        return error(format!("at most {MAX_SCAN} points in the browser"));
    }
    match finite_sweep(max_size) {
        Ok(sweep) => json!({ "passed": sweep.passed(), "sweep": sweep }).to_string(),
        Err(e) => error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn lists_runnable_strategies_only() {
        let v = parse(&structures());
        let zxz = v.as_array().unwrap().iter().find(|s| s["id"] == "zxz").unwrap();
        assert_eq!(zxz["strategies"], json!(["convex"]));
    }

    #[test]
    fn plane_runs_draw_coordinates() {
        let v = parse(&run_and_verify("zxz", "convex", 10));
        assert!(v["report"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
        assert_eq!(v["drawing"]["planar"], true);
        assert_eq!(v["drawing"]["arrows"][0]["from"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn other_runs_draw_indices() {
        for (structure, strategy) in [("divisibility", "well-founded"), ("random-poset", "universal")] {
            let v = parse(&run_and_verify(structure, strategy, 10));
            assert_eq!(v["drawing"]["planar"], false, "{structure}");
            assert!(v["drawing"]["arrows"][0]["to"][0].is_number(), "{structure}");
        }
    }

    #[test]
    fn edited_certificates_fail() {
        let v = parse(&run_and_verify("divisibility", "well-founded", 10));
        let text = v["certificate"].as_str().unwrap().replacen("\"x1\": \"3\"", "\"x1\": \"5\"", 1);
        let r = parse(&verify_text(&text));
        assert!(r["report"]["checks"].as_array().unwrap().iter().any(|c| c["passed"] == false));
        assert!(parse(&verify_text("{")).get("error").is_some());
    }

    #[test]
    fn scans_and_guards() {
        assert_eq!(parse(&finite_scan(3))["passed"], true);
        assert!(parse(&finite_scan(6)).get("error").is_some());
        assert!(parse(&run_and_verify("divisibility", "convex", 5)).get("error").is_some());
    }
}
