use serde_json::{json, Map, Value};
use trivolve_core::Error;

/// Outcome of one command: the body is emitted as-is; `certified` decides
/// between exit codes 0 and 1.
pub struct Report {
    pub command: &'static str,
    pub body: Value,
    pub certified: bool,
    pub input_error: bool,
}

impl Report {
    pub fn ok(command: &'static str, body: Value) -> Report {
        Report {
            command,
            body,
            certified: true,
            input_error: false,
        }
    }

    pub fn verdict(command: &'static str, body: Value, certified: bool) -> Report {
        Report {
            command,
            body,
            certified,
            input_error: false,
        }
    }

    pub fn from_error(command: &'static str, err: &Error) -> Report {
        let input_error = is_input_error(err);
        let (law, residual) = law_of(err);
        let mut e = Map::new();
        e.insert(
            "kind".into(),
            json!(if input_error { "input" } else { "certification" }),
        );
        e.insert("message".into(), json!(err.to_string()));
        if let Some(law) = law {
            e.insert("law".into(), json!(law));
        }
        if let Some(r) = residual {
            e.insert("residual".into(), json!(r));
        }
        if let Error::AssociativityViolation { i, j, k, l, .. } = err {
            e.insert("worst_quadruple".into(), json!([i, j, k, l]));
        }
        Report {
            command,
            body: json!({ "error": Value::Object(e) }),
            certified: false,
            input_error,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.input_error {
            2
        } else if self.certified {
            0
        } else {
            1
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            0 => "ok",
            1 => "certification_failed",
            _ => "input_error",
        }
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "status": self.status(),
            "report": self.body,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status());
        render(&mut out, &self.body, 1);
        out
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                if is_leaf(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", compact(val)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(out, val, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_leaf(item) {
                    out.push_str(&format!("{pad}- {}\n", compact(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(out, item, depth + 1);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", compact(other))),
    }
}

/// Scalars, and arrays without objects inside (vectors, matrices, tensors).
fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(is_leaf),
        _ => true,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_input_error(err: &Error) -> bool {
    matches!(
        err,
        Error::Input(_)
            | Error::AssociativityViolation { .. }
            | Error::IdentityMismatch { .. }
            | Error::AlgebraMismatch
            | Error::NotAGroup(_)
            | Error::ShapeMismatch { .. }
            | Error::ModeUnsupported
            | Error::UnsupportedFamily(_)
    )
}

/// The law whose certification failed, by name, with its residual.
fn law_of(err: &Error) -> (Option<String>, Option<f64>) {
    let law = |s: &str| Some(s.to_string());
    match err {
        Error::AssociativityViolation { residual, .. } => (law("(xy)z = x(yz)"), Some(*residual)),
        Error::IdentityMismatch { residual } => (law("ex = xe = x"), Some(*residual)),
        Error::NotAnIdeal { residual, .. } => (law("A·I + I·A ⊆ I"), Some(*residual)),
        Error::NotASubalgebra { residual } => (law("B·B ⊆ B"), Some(*residual)),
        Error::NotATrivolution(_) => (law("τ conjugate-linear, anti-multiplicative, τ³ = τ, τ ≠ 0"), None),
        Error::NotAProjection { residual } => (law("p² = p"), Some(*residual)),
        Error::NotAHomomorphism { residual } => (law("π(xy) = π(x)π(y)"), Some(*residual)),
        Error::NotAnInvolution { .. } => (law("ρ conjugate-linear, anti-multiplicative, ρ² = id"), None),
        Error::KernelTrivial => (law("ker τ ≠ 0 (τ is an involution)"), None),
        Error::JNotInvolution { .. } => (law("J² = id on ker τ, J anti-multiplicative"), None),
        Error::NotIntertwining { residual } => (law("π∘τ₁ = τ₂∘π"), Some(*residual)),
        Error::NotRightIdentity { residual } => (law("x·e = x"), Some(*residual)),
        Error::SubalgebraMismatch => (law("A_sub = e·C"), None),
        Error::NotInRange { residual } => (law("x ∈ τ(A)"), Some(*residual)),
        Error::InvalidExtension => (law("x₀² = −x₀ with λ₀ = 1, or x₀ = e_B with λ₀ = 0"), None),
        Error::NotContractive { norm } => (law("‖τ‖ ≤ 1"), Some(*norm)),
        Error::NotUnital => (law("A has an identity"), None),
        Error::BNotUnital => (law("τ(A) has an identity"), None),
        Error::NotIntroverted(_) => (law("Ψ·λ ∈ X for Ψ ∈ X*, λ ∈ X"), None),
        Error::NotInvariant { residual } => (law("θ*(X) ⊆ X"), Some(*residual)),
        Error::NotArensRegular { residual } => (law("Φ□Ψ = Φ◇Ψ"), Some(*residual)),
        Error::CharacterNotInX { residual } => (law("φ ∈ X"), Some(*residual)),
        Error::NotCompatibleInvolution { .. } => (law("⟨φ, a*⟩ = conj⟨φ, a⟩"), None),
        Error::Certification { law: l, residual } => (Some(l.clone()), Some(*residual)),
        _ => (None, None),
    }
}
