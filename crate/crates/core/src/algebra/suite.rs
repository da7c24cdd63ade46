use serde::Serialize;

use super::expr::normal_form_str;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// Stated directly in the calculus.
    Stated,
    /// Agreement between two written forms of the same right-hand side.
    CrossForm,
    /// Follows from the presentation but is not stated explicitly.
    Lemma,
}

/// An operator identity written as `lhs - rhs`, which must vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Identity {
    pub name: &'static str,
    pub residual: &'static str,
    pub kind: IdentityKind,
}

const fn stated(name: &'static str, residual: &'static str) -> Identity {
    Identity { name, residual, kind: IdentityKind::Stated }
}

/// Operator identities checked by both the symbolic and the numeric suites.
pub const IDENTITIES: &[Identity] = &[
    stated("shift_inverse_A_Abar", "A*Abar - I"),
    stated("shift_inverse_Abar_A", "Abar*A - I"),
    stated("commutator_A_P", "[A,P] - a*A"),
    stated("commutator_Abar_P", "[Abar,P] + a*Abar"),
    stated("commutator_D_P", "[D,P] - A"),
    stated("commutator_Dbar_P", "[Dbar,P] - Abar"),
    stated("commutator_X_P", "[X,P] - (-i + (i/2)*a*Q)"),
    stated("hamiltonian_shift_form", "H - (-(1/(4*a^2))*(A - Abar)^2 + P^2)"),
    stated("lie_hamilton_X_anticommutator", "[X,H] - (-2*i*P + i*(a/2)*{Q,P})"),
    stated("lie_hamilton_X_ordered", "[X,H] - (-2*i*P + i*a*P*Q + a^2*X)"),
    stated("lie_hamilton_P_anticommutator", "[P,H] - (2*i*X - i*(a/2)*{Q,X})"),
    stated("lie_hamilton_P_ordered", "[P,H] - (2*i*X - i*a*X*Q)"),
    Identity {
        name: "lie_hamilton_X_cross_form",
        residual: "(i*a/2)*{Q,P} - i*a*P*Q - a^2*X",
        kind: IdentityKind::CrossForm,
    },
    Identity { name: "lie_hamilton_P_cross_form", residual: "(i*a/2)*{Q,X} - i*a*X*Q", kind: IdentityKind::CrossForm },
    Identity { name: "difference_operators_commute", residual: "[D,Dbar]", kind: IdentityKind::Lemma },
];

/// Result of normal-ordering one identity residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicCheck {
    pub identity: String,
    pub zero: bool,
    pub normal_form_term_count: usize,
    #[serde(skip)]
    pub kind: IdentityKind,
    #[serde(skip)]
    pub normal_form: String,
}

/// Normal-orders every residual in [`IDENTITIES`].
pub fn verify_symbolic_suite() -> Vec<SymbolicCheck> {
    IDENTITIES
        .iter()
        .map(|id| {
            let nf = normal_form_str(id.residual)
                .unwrap_or_else(|e| panic!("built-in identity `{}` is malformed: {e}", id.name));
            SymbolicCheck {
                identity: id.name.to_string(),
                zero: nf.is_zero(),
                normal_form_term_count: nf.term_count(),
                kind: id.kind,
                normal_form: nf.to_string(),
            }
        })
        .collect()
}
