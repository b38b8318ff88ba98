//! Commutator and tensor identities that hold in every tensor square,
//! written for right actions (`x^y = y^-1 x y`, `[x, y] = x^-1 y^-1 x y`).
//! Each is checked for `⊗` in `T` (when available) and for `∧` in `W`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{Elem, FiniteGroup};

use super::ExteriorSquare;

/// Orders up to this are checked on every 4-tuple.
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrownViolation {
    pub rule: &'static str,
    pub form: &'static str,
    pub tuple: [Elem; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrownReport {
    pub tuples: u64,
    pub exhaustive: bool,
    pub forms: Vec<&'static str>,
    pub violations: Vec<BrownViolation>,
}

impl BrownReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The target of a pairing `G x G -> H` with a compatible `G`-action.
struct Target<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    pair: &'a dyn Fn(Elem, Elem) -> Elem,
    act: &'a dyn Fn(Elem, Elem) -> Elem,
}

const RULES: [&str; 7] = ["R1a", "R1b", "R2", "R3", "R4", "R5", "R6"];

impl Target<'_> {
    fn check(&self, [x, y, z, t]: [Elem; 4], out: &mut Vec<&'static str>) {
        let (g, h) = (self.g, self.h);
        let p = |a, b| (self.pair)(a, b);
        let act = |s, k| (self.act)(s, k);
        let m = |a, b| h.mul(a, b);
        let pxy = p(x, y);
        let pzt = p(z, t);
        let ipxy = h.inv(pxy);
        let yx_comm = g.commutator(y, x);
        // (x^-1 ⊗ y)^x = (x ⊗ y)^-1 = (x ⊗ y^-1)^y
        if act(p(g.inv(x), y), x) != ipxy {
            out.push(RULES[0]);
        }
        if act(p(x, g.inv(y)), y) != ipxy {
            out.push(RULES[1]);
        }
        // (z ⊗ t)^{yx} (x ⊗ y) = (x ⊗ y) (z ⊗ t)^{xy}
        if m(act(pzt, g.mul(y, x)), pxy) != m(pxy, act(pzt, g.mul(x, y))) {
            out.push(RULES[2]);
        }
        // z ⊗ [y, x] = (x ⊗ y)^z (x ⊗ y)^-1
        if p(z, yx_comm) != m(act(pxy, z), ipxy) {
            out.push(RULES[3]);
        }
        // [y, x] ⊗ t = (x ⊗ y) ((x ⊗ y)^-1)^t
        if p(yx_comm, t) != m(pxy, act(ipxy, t)) {
            out.push(RULES[4]);
        }
        // (x ⊗ y)(z ⊗ t)(x ⊗ y)^-1 = (z ⊗ t)^{[y, x]}
        if m(m(pxy, pzt), ipxy) != act(pzt, yx_comm) {
            out.push(RULES[5]);
        }
        // [(x ⊗ y)^-1, (z ⊗ t)^-1] = [y, x] ⊗ [t, z]
        if m(m(m(pxy, pzt), ipxy), h.inv(pzt)) != p(yx_comm, g.commutator(t, z)) {
            out.push(RULES[6]);
        }
    }
}

/// Check every rule on all tuples when `|G| <= 8`, else on `samples`
/// random tuples drawn with the given seed.
pub fn check_brown_identities(
    g: &FiniteGroup,
    sq: &ExteriorSquare,
    samples: u64,
    seed: u64,
) -> BrownReport {
    let n = g.order();
    let wedge_pair = |a: Elem, b: Elem| sq.wedge(a, b);
    let wedge_act = |s: Elem, k: Elem| sq.act(s, k);
    let mut targets: Vec<(&'static str, Target)> = vec![(
        "wedge",
        Target {
            g,
            h: &sq.w,
            pair: &wedge_pair,
            act: &wedge_act,
        },
    )];
    let tensor_pair;
    let tensor_act;
    if let Some((t, _)) = &sq.tensor {
        tensor_pair = |a: Elem, b: Elem| t.pair(a, b);
        tensor_act = |s: Elem, k: Elem| t.act(s, k);
        targets.insert(
            0,
            (
                "tensor",
                Target {
                    g,
                    h: &t.t,
                    pair: &tensor_pair,
                    act: &tensor_act,
                },
            ),
        );
    }
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let mut violations = Vec::new();
    let mut tuples = 0u64;
    let mut failed = Vec::new();
    let mut visit = |tuple: [Elem; 4]| {
        tuples += 1;
        for (form, target) in &targets {
            failed.clear();
            target.check(tuple, &mut failed);
            for &rule in &failed {
                if violations.len() < 32 {
                    violations.push(BrownViolation { rule, form, tuple });
                }
            }
        }
    };
    if exhaustive {
        let n = n as Elem;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        visit([x, y, z, t]);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut tuple = [0; 4];
            for v in &mut tuple {
                *v = rng.gen_range(0..n as Elem);
            }
            visit(tuple);
        }
    }
    BrownReport {
        tuples,
        exhaustive,
        forms: targets.iter().map(|(f, _)| *f).collect(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::group_from_family;
    use crate::tensor::exterior_square;

    #[test]
    fn identities_hold() {
        for (spec, samples) in [
            ("dihedral:8", 0),
            ("quaternion:8", 0),
            ("abelian:[2,2]", 0),
            ("symmetric:3", 1000),
        ] {
            let g = group_from_family(spec).unwrap();
            let sq = exterior_square(&g).unwrap();
            let r = check_brown_identities(&g, &sq, samples, 0);
            assert_eq!(r.forms, vec!["tensor", "wedge"]);
            assert!(r.holds(), "{spec}: {:?}", r.violations);
            if g.order() <= 8 {
                assert!(r.exhaustive);
                assert_eq!(r.tuples, (g.order() as u64).pow(4));
            } else {
                assert_eq!(r.tuples, 1000);
            }
        }
    }
}
