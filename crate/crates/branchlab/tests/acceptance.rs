//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use branchlab::branching::{
    branch_kostant, branch_oracle, build_k_structure, build_k_type, oracle_multiplicities, parity_checks,
    z_lambda_space, KStructure,
};
use branchlab::checks::require_all;
use branchlab::chevalley::LieAlgebra;
use branchlab::hwmodule::{build_irrep, verify_prv_annihilation};
use branchlab::ideal::{q_polynomial, verify_annihilator};
use branchlab::mstruct::{fiber_enumerate, fiber_label, is_spherical, minimal_fiber_element, precedes, FiberLabel};
use branchlab::psembed::{parameter_checks, ps_ktype_bound, verify_borel_weil_annihilation};
use branchlab::realform::{build_real_form, structure_checks, RealFormData, ThetaSpec};
use branchlab::rootsys::DominantWeight;
use branchlab::scalar::Scalar;

const SUITE_FORMS: [&str; 4] = ["sl2R", "sl3R", "su21", "sp4R"];
const SUITE_DIM: u128 = 200;
const FIBER_LEVEL: i64 = 5;

struct Form {
    name: &'static str,
    rf: RealFormData,
    ks: KStructure,
}

fn load(name: &'static str) -> Form {
    let spec = ThetaSpec::preset(name).expect("preset");
    let g = LieAlgebra::new(&spec.cartan().expect("cartan")).expect("algebra");
    let rf = build_real_form(&g, &spec).expect("real form");
    let ks = build_k_structure(&rf).expect("k structure");
    Form { name, rf, ks }
}

type Outcome = Result<String, String>;

fn suite<'a>(forms: &'a [Form]) -> Vec<(&'a Form, DominantWeight)> {
    forms
        .iter()
        .filter(|f| SUITE_FORMS.contains(&f.name))
        .flat_map(|f| f.rf.g.rs.dominant_weights_with_dim_at_most(SUITE_DIM).into_iter().map(move |l| (f, l)))
        .collect()
}

fn over_suite(forms: &[Form], check: impl Fn(&Form, &DominantWeight) -> Result<(), String> + Sync) -> Outcome {
    let items = suite(forms);
    let failures: Vec<String> = items
        .par_iter()
        .filter_map(|(f, l)| check(f, l).err().map(|e| format!("{} {:?}: {e}", f.name, l.0)))
        .collect();
    if failures.is_empty() {
        Ok(format!("{} weights", items.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn branching_equality(forms: &[Form]) -> Outcome {
    over_suite(forms, |f, l| {
        let v = build_irrep(&f.rf.g, l).map_err(|e| e.to_string())?;
        let k = branch_kostant(&v, &f.rf, &f.ks).map_err(|e| e.to_string())?;
        let o = branch_oracle(&v, &f.rf, &f.ks).map_err(|e| e.to_string())?;
        if !k.same_decomposition(&o) {
            return Err(format!("kostant {:?} oracle {:?}", k.entries, o.entries));
        }
        if k.checksum != v.dim() as u64 {
            return Err(format!("checksum {} for dim {}", k.checksum, v.dim()));
        }
        Ok(())
    })
}

fn sl2_closed_form(forms: &[Form]) -> Outcome {
    let f = forms.iter().find(|f| f.name == "sl2R").expect("sl2R");
    for n in 0..=8i64 {
        let lambda = DominantWeight(vec![n]);
        let v = build_irrep(&f.rf.g, &lambda).map_err(|e| e.to_string())?;
        let report = branch_oracle(&v, &f.rf, &f.ks).map_err(|e| e.to_string())?;
        let got: Vec<(Vec<i64>, u64)> = report.entries.iter().map(|e| (e.weight.clone(), e.multiplicity)).collect();
        let mut want: Vec<(Vec<i64>, u64)> = (0..=n).map(|j| (vec![n - 2 * j], 1)).collect();
        want.sort();
        if got != want {
            return Err(format!("n = {n}: got {got:?}"));
        }
        let roots = q_polynomial(&f.rf, &lambda, 0).roots;
        for c in -(n + 2)..=(n + 2) {
            let z = build_k_type(&f.ks, &[Scalar::int(c)]).map_err(|e| e.to_string())?;
            let d = z_lambda_space(&z, &lambda, &f.rf, &f.ks).map_err(|e| e.to_string())?.len();
            if d != usize::from(roots.contains(&c)) {
                return Err(format!("n = {n}, character {c}: dim Z^λ = {d}"));
            }
        }
    }
    Ok("n = 0..8".into())
}

fn cartan_helgason(forms: &[Form]) -> Outcome {
    let f = forms.iter().find(|f| f.name == "sl3R").expect("sl3R");
    let weights = DominantWeight::all_up_to(2, 6);
    let failures: Vec<String> = weights
        .par_iter()
        .filter_map(|l| {
            let run = || -> Result<(), String> {
                let v = build_irrep(&f.rf.g, l).map_err(|e| e.to_string())?;
                let trivial = vec![0i64; f.ks.rank()];
                let mult = oracle_multiplicities(&v, &f.rf, &f.ks)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .find(|(w, _)| *w == trivial)
                    .map_or(0, |(_, d)| d);
                let even = l.0.iter().all(|n| n % 2 == 0);
                if is_spherical(l, &f.rf) != even || mult != usize::from(even) {
                    return Err(format!("trivial multiplicity {mult}, spherical {}", is_spherical(l, &f.rf)));
                }
                Ok(())
            };
            run().err().map(|e| format!("{:?}: {e}", l.0))
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} weights", weights.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn annihilator_identities(forms: &[Form]) -> Outcome {
    over_suite(forms, |f, l| {
        let v = build_irrep(&f.rf.g, l).map_err(|e| e.to_string())?;
        verify_prv_annihilation(&f.rf.g, &v).map_err(|e| e.to_string())?;
        let report = verify_annihilator(&v, &f.rf).map_err(|e| e.to_string())?;
        require_all(&report.generators).map_err(|e| e.to_string())
    })
}

fn structure_identities(forms: &[Form]) -> Outcome {
    let mut count = 0;
    for f in forms {
        let checks = structure_checks(&f.rf);
        count += checks.len();
        require_all(&checks).map_err(|e| format!("{}: {e}", f.name))?;
    }
    Ok(format!("{count} checks on {} presets", forms.len()))
}

fn fibers_by_label(f: &Form) -> BTreeMap<FiberLabel, Vec<DominantWeight>> {
    let mut out: BTreeMap<FiberLabel, Vec<DominantWeight>> = BTreeMap::new();
    for l in DominantWeight::all_up_to(f.rf.rank(), FIBER_LEVEL) {
        out.entry(fiber_label(&l, &f.rf)).or_default().push(l);
    }
    out
}

fn fiber_theory(forms: &[Form]) -> Outcome {
    let mut count = 0;
    for f in forms {
        for (label, members) in fibers_by_label(f) {
            let lmin = minimal_fiber_element(&label, &f.rf).map_err(|e| format!("{}: {e}", f.name))?;
            let listed = fiber_enumerate(&label, FIBER_LEVEL, &f.rf).map_err(|e| format!("{}: {e}", f.name))?;
            if listed != members {
                return Err(format!("{}: fiber of {:?} enumerates differently", f.name, lmin.0));
            }
            if !members.iter().all(|m| precedes(&lmin, m)) {
                return Err(format!("{}: {:?} is not minimal", f.name, lmin.0));
            }
            if label.is_trivial() && lmin.0.iter().any(|&x| x != 0) {
                return Err(format!("{}: trivial label has minimal element {:?}", f.name, lmin.0));
            }
            count += 1;
        }
    }
    Ok(format!("{count} fibers"))
}

fn spectrum_domination(forms: &[Form]) -> Outcome {
    let mut jobs = Vec::new();
    for f in forms {
        for (label, members) in fibers_by_label(f) {
            if members.len() < 2 {
                continue;
            }
            let lmin = minimal_fiber_element(&label, &f.rf).map_err(|e| e.to_string())?;
            for m in members.into_iter().filter(|m| *m != lmin) {
                if f.rf.g.rs.weyl_dimension(&m.0) <= SUITE_DIM {
                    jobs.push((f, lmin.clone(), m));
                }
            }
        }
    }
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(f, lmin, m)| {
            let run = || -> Result<(), String> {
                let big = branch_kostant(&build_irrep(&f.rf.g, m).map_err(|e| e.to_string())?, &f.rf, &f.ks)
                    .map_err(|e| e.to_string())?;
                let small = branch_oracle(&build_irrep(&f.rf.g, lmin).map_err(|e| e.to_string())?, &f.rf, &f.ks)
                    .map_err(|e| e.to_string())?;
                match small.entries.iter().find(|e| big.multiplicity(&e.weight) < e.multiplicity) {
                    Some(e) => Err(format!("k-type {:?} drops below {:?}", e.weight, lmin.0)),
                    None => Ok(()),
                }
            };
            run().err().map(|e| format!("{} {:?}: {e}", f.name, m.0))
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} fiber members", jobs.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn borel_weil_core(forms: &[Form]) -> Outcome {
    over_suite(forms, |f, l| {
        let v = build_irrep(&f.rf.g, l).map_err(|e| e.to_string())?;
        require_all(&parameter_checks(&v, &f.rf).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        require_all(&verify_borel_weil_annihilation(l, &f.rf).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ps_ktype_bound(&v, &f.rf, &f.ks).map(|_| ()).map_err(|e| e.to_string())
    })
}

fn integrality_parity(forms: &[Form]) -> Outcome {
    over_suite(forms, |f, l| {
        let v = build_irrep(&f.rf.g, l).map_err(|e| e.to_string())?;
        require_all(&parity_checks(&v, &f.rf, &f.ks).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    })
}

fn main() -> ExitCode {
    let forms: Vec<Form> = ThetaSpec::preset_names().into_iter().map(load).collect();
    let criteria: [(&str, fn(&[Form]) -> Outcome); 9] = [
        ("branching equality of Kostant and oracle paths", branching_equality),
        ("sl(2,R) characters and roots of q", sl2_closed_form),
        ("spherical weights of sl(3,R)", cartan_helgason),
        ("annihilator generators kill v_λ", annihilator_identities),
        ("real form structure identities", structure_identities),
        ("fibers are translates of spherical weights", fiber_theory),
        ("spectrum domination along fibers", spectrum_domination),
        ("principal series parameters and bounds", borel_weil_core),
        ("integrality and parity of z_i", integrality_parity),
    ];
    let mut ok = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&forms);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {secs:.2}s)", k + 1),
            Err(detail) => {
                ok = false;
                println!("FAIL {}: {name} ({detail}; {secs:.2}s)", k + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
