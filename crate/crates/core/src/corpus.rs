//! The built-in test corpus.

use crate::error::Result;
use crate::family::group_from_family;
use crate::group::FiniteGroup;

/// Factors of the coprime direct products in the corpus.
pub const COPRIME_PRODUCTS: [(&str, &str); 2] =
    [("dihedral:8", "cyclic:3"), ("symmetric:3", "cyclic:5")];

/// Family specs of every corpus group, in corpus order.
pub fn corpus_specs() -> Vec<String> {
    let mut specs: Vec<String> = (2..=16).map(|n| format!("cyclic:{n}")).collect();
    specs.extend(
        [
            "abelian:[2,2]",
            "abelian:[2,4]",
            "abelian:[3,3]",
            "abelian:[2,2,2]",
            "dihedral:8",
            "dihedral:16",
            "dihedral:32",
            "quaternion:8",
            "quaternion:16",
            "semidihedral:16",
            "extraspecial:3,+",
            "extraspecial:3,-",
            "heisenberg:3",
            "symmetric:3",
            "symmetric:4",
            "Ct:p=3,t=1,level=1",
        ]
        .map(String::from),
    );
    // Dsemi levels up to order 64: |level n| = 2^(n + r)
    for r in 1..=2u32 {
        for level in 2..=(6 - r) {
            specs.push(format!("Dsemi:r={r},level={level}"));
        }
    }
    specs.extend(COPRIME_PRODUCTS.iter().map(|(a, b)| format!("{a} x {b}")));
    specs
}

pub fn corpus() -> Result<Vec<FiniteGroup>> {
    corpus_specs()
        .iter()
        .map(|s| group_from_family(s))
        .collect()
}
