use branchlab::branching::{build_k_structure, KStructure};
use branchlab::chevalley::LieAlgebra;
use branchlab::realform::{build_real_form, RealFormData, ThetaSpec};

pub fn real_form(name: &str) -> RealFormData {
    let spec = ThetaSpec::preset(name).unwrap();
    let g = LieAlgebra::new(&spec.cartan().unwrap()).unwrap();
    build_real_form(&g, &spec).unwrap()
}

#[allow(dead_code)]
pub fn with_k(name: &str) -> (RealFormData, KStructure) {
    let rf = real_form(name);
    let ks = build_k_structure(&rf).unwrap();
    (rf, ks)
}
