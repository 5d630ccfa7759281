//! WebAssembly entry points for the browser demo. Every function returns a
//! JSON document: the result under `ok`, or a message under `error`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use branchlab::branching::{branch_kostant, branch_oracle, build_k_structure};
use branchlab::chevalley::LieAlgebra;
use branchlab::hwmodule::build_irrep_capped;
use branchlab::mstruct::{fiber_label, is_spherical, minimal_fiber_element};
use branchlab::realform::{build_real_form, RealFormData, ThetaSpec};
use branchlab::rootsys::DominantWeight;
use branchlab::{Error, Result};

/// Largest module the page will build.
const WEB_DIM_CAP: u64 = 400;

fn real_form(name: &str) -> Result<RealFormData> {
    let spec = ThetaSpec::preset(name)?;
    let g = LieAlgebra::new(&spec.cartan()?)?;
    build_real_form(&g, &spec)
}

fn weight(rf: &RealFormData, text: &str) -> Result<DominantWeight> {
    let w: Vec<i64> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("{t:?} is not an integer"))))
        .collect::<Result<_>>()?;
    if w.len() != rf.rank() {
        return Err(Error::Parse(format!("expected {} coefficients, got {}", rf.rank(), w.len())));
    }
    DominantWeight::new(w)
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Names of the bundled real forms.
#[wasm_bindgen]
pub fn presets() -> String {
    json!(ThetaSpec::preset_names()).to_string()
}

/// Real form summary: dimensions and the classification of simple roots.
#[wasm_bindgen]
pub fn classify(realform: &str) -> String {
    respond(real_form(realform).map(|rf| serde_json::to_value(rf.summary()).expect("summary serializes")))
}

/// Branching of `V_λ` to `k` by both methods, with their agreement.
#[wasm_bindgen]
pub fn branch(realform: &str, weight_text: &str) -> String {
    respond((|| {
        let rf = real_form(realform)?;
        let lambda = weight(&rf, weight_text)?;
        let ks = build_k_structure(&rf)?;
        let v = build_irrep_capped(&rf.g, &lambda, WEB_DIM_CAP)?;
        let kostant = branch_kostant(&v, &rf, &ks)?;
        let oracle = branch_oracle(&v, &rf, &ks)?;
        Ok(json!({
            "dim": v.dim(),
            "entries": kostant.entries,
            "checksum": kostant.checksum,
            "agree": kostant.same_decomposition(&oracle),
        }))
    })())
}

/// Whether `λ` is spherical, its fiber label and the minimal element of its fiber.
#[wasm_bindgen]
pub fn fiber(realform: &str, weight_text: &str) -> String {
    respond((|| {
        let rf = real_form(realform)?;
        let lambda = weight(&rf, weight_text)?;
        let label = fiber_label(&lambda, &rf);
        let minimal = minimal_fiber_element(&label, &rf)?;
        Ok(json!({ "spherical": is_spherical(&lambda, &rf), "label": label, "minimal": minimal.0 }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_adjoint_of_sl3() {
        let v: Value = serde_json::from_str(&branch("sl3R", "1,1")).unwrap();
        assert_eq!(v["ok"]["checksum"], 8);
        assert_eq!(v["ok"]["agree"], true);
    }

    #[test]
    fn errors_are_reported() {
        let v: Value = serde_json::from_str(&branch("sl3R", "1")).unwrap();
        assert!(v["error"].is_string());
        let v: Value = serde_json::from_str(&branch("sl3R", "40,40")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("cap"));
    }

    #[test]
    fn fiber_of_su21() {
        let v: Value = serde_json::from_str(&fiber("su21", "2,5")).unwrap();
        assert_eq!(v["ok"]["minimal"], json!([0, 3]));
        assert_eq!(v["ok"]["spherical"], false);
    }
}
