use serde_json::json;
use sha2::{Digest, Sha256};

use crate::gcomplex::{GAction, SimplicialComplex};

/// Canonical text of a complex: vertex names and maximal simplices by name, in
/// basis order, as compact JSON.
pub fn complex_text(x: &SimplicialComplex) -> String {
    json!({
        "vertices": x.vertex_names(),
        "maximal_simplices": x.maximal_simplex_names(),
    })
    .to_string()
}

/// Canonical text of an action: the complex, the group table and every
/// permutation.
pub fn action_text(a: &GAction) -> String {
    json!({
        "complex": {
            "vertices": a.complex().vertex_names(),
            "maximal_simplices": a.complex().maximal_simplex_names(),
        },
        "group": a.group().table(),
        "perms": a.perms(),
    })
    .to_string()
}

/// Lowercase hex SHA-256.
pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn action_digest(a: &GAction) -> String {
    sha256_hex(&action_text(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn known_vector() {
        assert_eq!(
            sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn digests_separate_actions() {
        let a = action_digest(&fixtures::cycle_antipodal(6));
        assert_eq!(a, action_digest(&fixtures::cycle_antipodal(6)));
        assert_ne!(a, action_digest(&fixtures::cycle_antipodal(4)));
        assert_ne!(
            action_digest(&fixtures::cycle_rotation(9, 3)),
            action_digest(&GAction::trivial(fixtures::cycle(9)))
        );
    }
}
