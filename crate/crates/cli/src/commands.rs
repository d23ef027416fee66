use std::path::Path;

use serde_json::{json, Value};
use trivolve_core::algebra::Algebra;
use trivolve_core::duality::{
    arens_products, check_introverted, extend_involution, find_characters, tim_obstruction_check, tim_set,
    verify_character, whole_dual, ArensStructure, IntrovertedSpace,
};
use trivolve_core::io::{
    complex_list_to_json, complex_to_json, map_to_json, matrix_to_json, parse_algebra, parse_map, parse_rows,
    parse_vector, vector_to_json, LoadedAlgebra,
};
use trivolve_core::search::{search_trivolutions, FamilySpec};
use trivolve_core::spectra::{spectrum, verify_spectral_inclusion};
use trivolve_core::suite::run_suite;
use trivolve_core::trivolution::{
    canonical_decomposition, check_trivolutive_hom, classify_star_map, factor_through_involution, StarKind,
};
use trivolve_core::unitization::{
    canonical_extension, find_type1_solutions, range_identity, verify_extension, ExtensionSpec,
};
use trivolve_core::{AlgMap, CMatrix, DualVector, Error, Result, C64};

use crate::report::Report;
use crate::{Cli, Command};

pub fn run(cli: &Cli) -> Report {
    let name = command_name(&cli.command);
    if !(cli.tolerance > 0.0 && cli.rank_tolerance > 0.0) {
        return Report::from_error(name, &Error::Input("tolerances must be positive".into()));
    }
    let result = match &cli.command {
        Command::Check { algebra, map } => check(cli, algebra, map),
        Command::Decompose { algebra, map } => decompose(cli, algebra, map),
        Command::Factor { algebra, map } => factor(cli, algebra, map),
        Command::Hom { algebra, map } => hom(cli, algebra, map),
        Command::Extend {
            algebra,
            map,
            lambda0,
            x0,
        } => extend(cli, algebra, map, lambda0.as_deref().zip(x0.as_deref())),
        Command::Spectra { algebra, map, element } => spectra(cli, algebra, map, element),
        Command::Arens { algebra, map, dual } => arens(cli, algebra, map.as_deref(), dual.as_deref()),
        Command::Tim {
            algebra,
            map,
            dual,
            character,
        } => tim(cli, algebra, map, dual.as_deref(), character.as_deref()),
        Command::Search { algebra, family, map } => search(cli, algebra, family, map),
        Command::Suite => suite(cli),
    };
    result.unwrap_or_else(|e| Report::from_error(name, &e))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Decompose { .. } => "decompose",
        Command::Factor { .. } => "factor",
        Command::Hom { .. } => "hom",
        Command::Extend { .. } => "extend",
        Command::Spectra { .. } => "spectra",
        Command::Arens { .. } => "arens",
        Command::Tim { .. } => "tim",
        Command::Search { .. } => "search",
        Command::Suite => "suite",
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(cli: &Cli, path: &Path) -> Result<LoadedAlgebra> {
    parse_algebra(&read(path)?, cli.tolerance()).map_err(|e| with_path(e, path))
}

fn load_map(path: &Path, source: &Algebra, target: &Algebra) -> Result<AlgMap> {
    parse_map(&read(path)?, source, target).map_err(|e| with_path(e, path))
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Input(msg) => Error::Input(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn load_pair(cli: &Cli, algebra: &Path, map: &Path) -> Result<(Algebra, AlgMap)> {
    let a = load_algebra(cli, algebra)?.algebra;
    let tau = load_map(map, &a, &a)?;
    Ok((a, tau))
}

fn parse_element(a: &Algebra, text: &str) -> Result<trivolve_core::Element> {
    let v = parse_vector(text)?;
    a.element(v.iter().copied().collect())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn classification(a: &Algebra, tau: &AlgMap) -> Result<Value> {
    let class = classify_star_map(a, tau)?;
    let mut v = to_value(&class);
    v["failures"] = json!(class.failures());
    Ok(v)
}

fn check(cli: &Cli, algebra: &Path, map: &Path) -> Result<Report> {
    let (a, tau) = load_pair(cli, algebra, map)?;
    let class = classify_star_map(&a, &tau)?;
    let body = json!({
        "classification": class.kind.as_str(),
        "algebra": a.id().to_string(),
        "details": classification(&a, &tau)?,
    });
    Ok(Report::verdict("check", body, class.kind != StarKind::NotStar))
}

fn decompose(cli: &Cli, algebra: &Path, map: &Path) -> Result<Report> {
    let (a, tau) = load_pair(cli, algebra, map)?;
    let class = classify_star_map(&a, &tau)?;
    let d = canonical_decomposition(&a, &tau)?;
    let eps = a.tol().eps;
    let body = json!({
        "classification": class.kind.as_str(),
        "decomposition": {
            "I_basis": matrix_to_json(&d.ideal_i.basis().transpose()),
            "B_basis": matrix_to_json(&d.subalg_b.basis().transpose()),
            "p": map_to_json(&d.projection_p),
            "rho": map_to_json(&d.involution_rho),
        },
        "residuals": to_value(&d.residuals),
    });
    Ok(Report::verdict("decompose", body, d.residuals.max() <= eps))
}

fn factor(cli: &Cli, algebra: &Path, maps: &[std::path::PathBuf]) -> Result<Report> {
    if maps.len() > 2 {
        return Err(Error::Input("factor takes τ and optionally J".into()));
    }
    let (a, tau) = load_pair(cli, algebra, &maps[0])?;
    let d = canonical_decomposition(&a, &tau)?;
    if d.ideal_i.dim() == 0 {
        return Err(Error::KernelTrivial);
    }
    let j = match maps.get(1) {
        Some(path) => load_map(path, &d.i_algebra, &d.i_algebra)?,
        None => AlgMap::conjugation(&d.i_algebra),
    };
    let f = factor_through_involution(&a, &tau, &j)?;
    let body = json!({
        "C_dim": f.c_algebra.dim(),
        "C": trivolve_core::io::algebra_to_json(&f.c_algebra),
        "J": map_to_json(&j),
        "lambda": map_to_json(&f.lambda),
        "sigma": map_to_json(&f.sigma),
        "mu": map_to_json(&f.mu),
        "residuals": to_value(&f.residuals),
    });
    Ok(Report::verdict("factor", body, f.residuals.max() <= a.tol().eps))
}

fn hom(cli: &Cli, algebras: &[std::path::PathBuf], maps: &[std::path::PathBuf]) -> Result<Report> {
    if algebras.len() != 2 || maps.len() != 3 {
        return Err(Error::Input(
            "hom takes two --algebra (A₁, A₂) and three --map (τ₁, τ₂, π)".into(),
        ));
    }
    let a1 = load_algebra(cli, &algebras[0])?.algebra;
    let a2 = load_algebra(cli, &algebras[1])?.algebra;
    let tau1 = load_map(&maps[0], &a1, &a1)?;
    let tau2 = load_map(&maps[1], &a2, &a2)?;
    let pi = load_map(&maps[2], &a1, &a2)?;
    let h = check_trivolutive_hom(&a1, &tau1, &a2, &tau2, &pi)?;
    let body = json!({
        "pi11": map_to_json(&h.pi11),
        "pi22": map_to_json(&h.pi22),
        "pi12": matrix_to_json(&h.pi12),
        "pi21": matrix_to_json(&h.pi21),
        "residuals": {
            "intertwining": h.intertwine_residual,
            "off_diagonal": h.offdiag_residual,
            "rho": h.rho_residual,
        },
    });
    Ok(Report::ok("hom", body))
}

fn extension_json(e: &ExtensionSpec) -> Value {
    json!({
        "family": e.family.as_str(),
        "lambda0": complex_to_json(e.lambda0),
        "x0": vector_to_json(e.x0.coords()),
        "norm_of_extension": e.norm_of_extension,
        "contractive": e.contractive,
        "classified_trivolution": e.classified_trivolution,
        "agree": e.agree,
        "residuals": to_value(&e.residuals),
        "best_effort": e.best_effort,
    })
}

fn extend(cli: &Cli, algebra: &Path, map: &Path, given: Option<(&str, &str)>) -> Result<Report> {
    let (a, tau) = load_pair(cli, algebra, map)?;
    let class = classify_star_map(&a, &tau)?;
    if !class.is_star() {
        return Err(Error::NotATrivolution(class.failures().join("; ")));
    }
    if let Some((l, x)) = given {
        let l = parse_vector(&format!("[{l}]"))?;
        if l.len() != 1 {
            return Err(Error::Input("λ₀ must be a single complex number".into()));
        }
        let x0 = parse_element(&a, x)?;
        let e = verify_extension(&a, &tau, l[0], &x0)?;
        let ok = e.agree && e.classified_trivolution;
        return Ok(Report::verdict(
            "extend",
            json!({ "extension": extension_json(&e) }),
            ok,
        ));
    }
    let (l0, x0) = canonical_extension(&a);
    let canonical = verify_extension(&a, &tau, l0, &x0)?;
    let type1 = find_type1_solutions(&a, &tau, cli.seed)?;
    let mut type_i = Vec::new();
    for s in type1
        .solutions
        .iter()
        .filter(|s| s.coords().iter().any(|z| z.norm() > a.tol().eps))
    {
        let mut e = verify_extension(&a, &tau, C64::new(1.0, 0.0), s)?;
        e.best_effort |= type1.best_effort;
        type_i.push(e);
    }
    let type_ii = match range_identity(&a, &tau)? {
        Some(e_b) => Some(verify_extension(&a, &tau, C64::new(0.0, 0.0), &a.element_from(e_b))?),
        None => None,
    };
    let all: Vec<(&str, &ExtensionSpec)> = std::iter::once(("canonical", &canonical))
        .chain(type_i.iter().map(|e| ("type_I", e)))
        .chain(type_ii.iter().map(|e| ("type_II", e)))
        .collect();
    let ok = all.iter().all(|(_, e)| e.agree && e.classified_trivolution);
    let body = json!({
        "annihilator_dim": type1.annihilator.dim(),
        "extensions": all
            .iter()
            .map(|(role, e)| {
                let mut v = extension_json(e);
                v["role"] = json!(role);
                v
            })
            .collect::<Vec<_>>(),
    });
    Ok(Report::verdict("extend", body, ok))
}

fn spectra(cli: &Cli, algebra: &Path, map: &Path, element: &str) -> Result<Report> {
    let (a, tau) = load_pair(cli, algebra, map)?;
    let x = parse_element(&a, element)?;
    let sx = spectrum(&a, &x)?;
    let r = verify_spectral_inclusion(&a, &tau, &x)?;
    let holds = r.holds(trivolve_core::spectra::SPECTRAL_TOL);
    let body = json!({
        "x": vector_to_json(x.coords()),
        "tau_x": vector_to_json(&tau.apply_coords(x.coords())),
        "spectrum_x": complex_list_to_json(&sx.values),
        "spectrum_computed_in": to_value(&sx.computed_in),
        "certificate": to_value(&r),
        "holds": holds,
    });
    if !holds {
        let mut rep = Report::verdict("spectra", body, false);
        rep.body["error"] = json!({
            "kind": "certification",
            "law": "spec_B(τ(x)) ⊆ conj spec_A(x)",
            "residual": r.inclusion_distance.max(r.inverse_residual.unwrap_or(0.0)),
        });
        return Ok(rep);
    }
    Ok(Report::ok("spectra", body))
}

fn dual_space(a: &Algebra, dual: Option<&Path>) -> Result<IntrovertedSpace> {
    match dual {
        None => whole_dual(a),
        Some(path) => {
            let rows = parse_rows(&read(path)?).map_err(|e| with_path(e, path))?;
            if rows.is_empty() {
                return Err(Error::Input("empty dual basis".into()));
            }
            if rows.iter().any(|r| r.len() != a.dim()) {
                return Err(Error::ShapeMismatch {
                    expected: (rows.len(), a.dim()),
                    found: (rows.len(), rows.iter().map(|r| r.len()).max().unwrap_or(0)),
                });
            }
            check_introverted(a, &CMatrix::from_columns(&rows))
        }
    }
}

fn tensor_json(k: usize, t: &[C64]) -> Value {
    Value::Array(
        (0..k)
            .map(|i| {
                Value::Array(
                    (0..k)
                        .map(|j| complex_list_to_json(&t[(i * k + j) * k..(i * k + j + 1) * k]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn arens_json(s: &ArensStructure) -> Value {
    json!({
        "dim": s.dim,
        "box": tensor_json(s.dim, &s.box_tensor),
        "diamond": tensor_json(s.dim, &s.diamond_tensor),
        "regular": s.regular,
        "residual": s.residual,
    })
}

fn space_json(x: &IntrovertedSpace) -> Value {
    json!({
        "dim": x.dim(),
        "basis": matrix_to_json(&x.x.basis().transpose()),
        "submodule": x.submodule,
        "left_introverted": x.left_introverted,
        "right_introverted": x.right_introverted,
        "faithful": x.faithful,
        "diagnostic": x.diagnostic,
    })
}

fn arens(cli: &Cli, algebra: &Path, map: Option<&Path>, dual: Option<&Path>) -> Result<Report> {
    let a = load_algebra(cli, algebra)?.algebra;
    let x = dual_space(&a, dual)?;
    let s = arens_products(&a, &x)?;
    let mut body = json!({ "X": space_json(&x), "arens": arens_json(&s) });
    if let Some(path) = map {
        let theta = load_map(path, &a, &a)?;
        let e = extend_involution(&a, &theta, &x)?;
        body["extension"] = json!({
            "theta": map_to_json(&e.theta),
            "involutive_residual": e.involutive_residual,
            "anti_residual": e.anti_residual,
            "extends_residual": e.extends_residual,
        });
    }
    Ok(Report::ok("arens", body))
}

fn tim(cli: &Cli, algebra: &Path, map: &Path, dual: Option<&Path>, character: Option<&str>) -> Result<Report> {
    let (a, theta) = load_pair(cli, algebra, map)?;
    let x = dual_space(&a, dual)?;
    let ext = extend_involution(&a, &theta, &x)?;
    let eps = a.tol().eps;
    let characters = match character {
        Some(text) => vec![verify_character(&a, &DualVector::new(&a, parse_vector(text)?)?)?],
        None => find_characters(&a)?
            .characters
            .into_iter()
            .filter(|c| x.x.contains(c.values(), eps))
            .collect(),
    };
    if characters.is_empty() {
        return Err(Error::Certification {
            law: "some character lies in X".into(),
            residual: f64::NAN,
        });
    }
    let mut out = Vec::new();
    let mut ok = true;
    for phi in &characters {
        let set = tim_set(&a, &x, phi)?;
        let mut entry = json!({
            "character": vector_to_json(phi.values()),
            "tims": {
                "particular": set.particular.as_ref().map(vector_to_json),
                "homogeneous": matrix_to_json(&set.homogeneous.transpose()),
                "affine_dim": set.affine_dim(),
            },
        });
        match tim_obstruction_check(&a, &x, phi, &ext.theta) {
            Ok(r) => {
                ok &= r.unique;
                entry["obstruction"] = to_value(&r);
            }
            Err(e) => {
                ok = false;
                entry["obstruction"] = Report::from_error("tim", &e).body["error"].clone();
            }
        }
        out.push(entry);
    }
    let body = json!({
        "X": space_json(&x),
        "extension": {
            "involutive_residual": ext.involutive_residual,
            "anti_residual": ext.anti_residual,
            "extends_residual": ext.extends_residual,
        },
        "characters": out,
    });
    Ok(Report::verdict("tim", body, ok))
}

fn search(cli: &Cli, algebra: &Path, family: &str, maps: &[std::path::PathBuf]) -> Result<Report> {
    let loaded = load_algebra(cli, algebra)?;
    let a = &loaded.algebra;
    let spec = match family {
        "group" => FamilySpec::GroupQuotients {
            group: loaded
                .group
                .clone()
                .ok_or_else(|| Error::Input("family `group` needs an algebra given by a group table".into()))?,
            normal: None,
        },
        "pairs" => {
            if maps.is_empty() || !maps.len().is_multiple_of(2) {
                return Err(Error::Input("family `pairs` takes alternating --map p --map ρ".into()));
            }
            let mut pairs = Vec::new();
            for chunk in maps.chunks(2) {
                let p = load_map(&chunk[0], a, a)?;
                let (_, range) = p.kernel_image(a)?;
                let b = a.subalgebra(&range)?;
                let rho = load_map(&chunk[1], &b, &b)?;
                pairs.push((p, rho));
            }
            FamilySpec::UserPairs(pairs)
        }
        tag => FamilySpec::from_tag(tag)?,
    };
    let found = search_trivolutions(a, &spec)?;
    let mut items = Vec::new();
    let mut involutions = 0;
    for t in &found {
        let kind = classify_star_map(a, t)?.kind;
        if kind == StarKind::Involution {
            involutions += 1;
        }
        items.push(json!({ "classification": kind.as_str(), "map": map_to_json(t) }));
    }
    let body = json!({
        "family": spec.tag(),
        "count": found.len(),
        "involutions": involutions,
        "proper": found.len() - involutions,
        "trivolutions": items,
    });
    Ok(Report::ok("search", body))
}

fn suite(cli: &Cli) -> Result<Report> {
    let r = run_suite(cli.seed);
    let passed = r.passed;
    Ok(Report::verdict("suite", to_value(&r), passed))
}
