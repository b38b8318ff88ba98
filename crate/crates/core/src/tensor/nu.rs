//! The tensor square as the subgroup `[G, G^φ]` of `ν(G)`.
//!
//! `ν(G)` is presented on two copies of a presentation of `G` plus crossed
//! relators for base generators `a, b, c`:
//! `[a, b^φ]^c = [a^c, (b^c)^φ] = [a, b^φ]^{c^φ}`.
//! After enumeration the result is certified: conjugation by `c` and by
//! `c^φ` must agree on `T = [G, G^φ]`, and `(x ⊗ y)^c = x^c ⊗ y^c` must hold
//! for every pair. Together these are the full defining relations of
//! `ν(G)`, so a certified enumeration is `ν(G)` itself. Failing triples are
//! added as relators and the enumeration repeated.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::fp::{
    generator_presentation, invert_word, todd_coxeter, word_commutator, word_conjugate, CosetTable,
    Presentation, Word, WordMap,
};
use crate::group::{close_under, Elem, FiniteGroup, GroupHom};

use super::TensorSquare;

/// Rounds of relator augmentation before giving up.
const MAX_ROUNDS: usize = 6;
/// Extra relators added per failed round.
const BATCH: usize = 64;

/// A presentation of `ν(G)`: generators `0..d` are the base generators,
/// `d..2d` their `φ` copies.
#[derive(Clone, Debug)]
pub struct NuPresentation {
    pub base: Presentation,
    pub full: Presentation,
    pub words: WordMap,
}

impl NuPresentation {
    pub fn d(&self) -> usize {
        self.base.ngens
    }

    /// A base word in the first copy (identity embedding).
    pub fn embed(&self, w: &[i32]) -> Word {
        w.to_vec()
    }

    /// A base word in the `φ` copy.
    pub fn embed_phi(&self, w: &[i32]) -> Word {
        let d = self.d() as i32;
        w.iter()
            .map(|&l| if l > 0 { l + d } else { l - d })
            .collect()
    }

    /// Word for `x ⊗ y = [x, y^φ]`.
    pub fn pair_word(&self, x: Elem, y: Elem) -> Word {
        word_commutator(self.words.word(x), &self.embed_phi(self.words.word(y)))
    }

    /// `[x,y^φ]^z (x^z ⊗ y^z)^-1`, with conjugation through the given copy.
    fn crossed_relator(
        &self,
        g: &FiniteGroup,
        x: Elem,
        y: Elem,
        z: Elem,
        through_phi: bool,
    ) -> Word {
        let zw = self.words.word(z);
        let conj = if through_phi {
            self.embed_phi(zw)
        } else {
            self.embed(zw)
        };
        let mut r = word_conjugate(&self.pair_word(x, y), &conj);
        r.extend(invert_word(
            &self.pair_word(g.conjugate(x, z), g.conjugate(y, z)),
        ));
        r
    }
}

/// Presentation of `ν(G)` with generator-level crossed relators.
pub fn nu_presentation(g: &FiniteGroup) -> Result<NuPresentation> {
    let (base, words) = generator_presentation(g)?;
    let d = base.ngens;
    let mut names: Vec<String> = base.names.clone();
    names.extend(base.names.iter().map(|n| format!("{n}'")));
    let mut np = NuPresentation {
        full: base.clone(),
        base,
        words,
    };
    let mut rels: Vec<Word> = np.base.relators.clone();
    rels.extend(np.base.relators.iter().map(|r| np.embed_phi(r)));
    let gens = np.words.gens.clone();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for through_phi in [false, true] {
                    rels.push(np.crossed_relator(g, gens[a], gens[b], gens[c], through_phi));
                }
            }
        }
    }
    np.full = Presentation::with_names(names, rels, format!("nu({})", g.label()))?;
    Ok(np)
}

/// Elements of the enumerated group are coset numbers; a product `a * w`
/// is traced through the table.
struct Nu<'a> {
    table: &'a CosetTable,
}

impl Nu<'_> {
    fn element(&self, w: &[i32]) -> u32 {
        self.table.trace(0, w)
    }

    fn mul_word(&self, a: u32, w: &[i32]) -> u32 {
        self.table.trace(a, w)
    }
}

/// Build `T = [G, G^φ]` with its pairing, `∇`, `κ` and the action of `G`.
pub fn tensor_square(g: &FiniteGroup, limit: usize) -> Result<TensorSquare> {
    let mut np = nu_presentation(g)?;
    let n = g.order();
    for _round in 0..MAX_ROUNDS {
        let table = todd_coxeter(&np.full, &[], limit)?;
        let nu = Nu { table: &table };
        match build(g, &np, &nu)? {
            Ok(mut t) => {
                t.nu_order = table.ncosets;
                if table.ncosets != n * n * t.t.order() {
                    return Err(Error::Invalid(format!(
                        "|nu(G)| = {} but |G|^2 |T| = {}",
                        table.ncosets,
                        n * n * t.t.order()
                    )));
                }
                return Ok(t);
            }
            Err(extra) => {
                let names = np.full.names.clone();
                let mut rels = np.full.relators.clone();
                rels.extend(extra);
                np.full = Presentation::with_names(names, rels, np.full.label.clone())?;
            }
        }
    }
    Err(Error::Invalid(format!(
        "nu presentation for {} not certified after {MAX_ROUNDS} rounds",
        g.label()
    )))
}

/// Either a certified tensor square or relators that fail certification.
fn build(
    g: &FiniteGroup,
    np: &NuPresentation,
    nu: &Nu,
) -> Result<std::result::Result<TensorSquare, Vec<Word>>> {
    let n = g.order();
    let gens = &np.words.gens;
    // cosets of all pairs
    let pair_words: Vec<Word> = (0..n * n)
        .map(|i| np.pair_word((i / n) as Elem, (i % n) as Elem))
        .collect();
    let pair_coset: Vec<u32> = pair_words.iter().map(|w| nu.element(w)).collect();

    // greedy generators of T among the pairs
    let mut tgen: Vec<usize> = Vec::new();
    let mut members: HashSet<u32> = HashSet::from([0]);
    for (i, &c) in pair_coset.iter().enumerate() {
        if members.contains(&c) {
            continue;
        }
        tgen.push(i);
        members = close_cosets(nu, &tgen, &pair_words);
    }
    let closure = close_under(0u32, tgen.len(), usize::MAX, |&s, k| {
        nu.mul_word(s, &pair_words[tgen[k]])
    })?;
    let order = closure.elements.len();
    let index: HashMap<u32, Elem> = closure
        .elements
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as Elem))
        .collect();
    let t = FiniteGroup::from_flat(
        order,
        closure.table.clone(),
        format!("{}(x){}", g.label(), g.label()),
    )?;
    let pair: Vec<Elem> = pair_coset.iter().map(|c| index[c]).collect();

    // kappa along the closure tree
    let mut kappa = vec![g.identity(); order];
    for j in 1..order {
        let gi = tgen[closure.via[j] as usize];
        let step = g.commutator((gi / n) as Elem, (gi % n) as Elem);
        kappa[j] = g.mul(kappa[closure.parent[j] as usize], step);
    }

    // action of every z in G, extended from the images of T's generators
    let conj_gen = |z: Elem, k: usize, phi: bool| -> Option<Elem> {
        let zw = np.words.word(z);
        let zw = if phi { np.embed_phi(zw) } else { zw.clone() };
        let mut w = invert_word(&zw);
        w.extend_from_slice(&pair_words[tgen[k]]);
        w.extend(zw);
        index.get(&nu.element(&w)).copied()
    };
    let mut extra: Vec<Word> = Vec::new();
    let mut action = vec![0 as Elem; n * order];
    for z in g.elements() {
        let mut imgs = Vec::with_capacity(tgen.len());
        for (k, &pair_index) in tgen.iter().enumerate() {
            let a = conj_gen(z, k, false);
            let b = conj_gen(z, k, true);
            match (a, b) {
                (Some(a), Some(b)) if a == b => imgs.push(a),
                _ => {
                    let (x, y) = ((pair_index / n) as Elem, (pair_index % n) as Elem);
                    extra.push(np.crossed_relator(g, x, y, z, true));
                    extra.push(np.crossed_relator(g, x, y, z, false));
                    imgs.push(a.unwrap_or(0));
                }
            }
        }
        let row = &mut action[z as usize * order..(z as usize + 1) * order];
        row[0] = t.identity();
        for j in 1..order {
            row[j] = t.mul(
                row[closure.parent[j] as usize],
                imgs[closure.via[j] as usize],
            );
        }
    }
    if extra.is_empty() {
        'outer: for &z in gens {
            for x in g.elements() {
                for y in g.elements() {
                    let lhs =
                        action[z as usize * order + pair[(x as usize) * n + y as usize] as usize];
                    let rhs = pair[g.conjugate(x, z) as usize * n + g.conjugate(y, z) as usize];
                    if lhs != rhs {
                        extra.push(np.crossed_relator(g, x, y, z, false));
                        extra.push(np.crossed_relator(g, x, y, z, true));
                        if extra.len() >= BATCH {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    if !extra.is_empty() {
        extra.truncate(BATCH);
        return Ok(Err(extra));
    }
    let nabla_gens: Vec<Elem> = g
        .elements()
        .map(|x| pair[x as usize * n + x as usize])
        .collect();
    let nabla = t.generated(&nabla_gens);
    Ok(Ok(TensorSquare {
        t,
        pair,
        nabla,
        kappa: GroupHom { images: kappa },
        action,
        group_order: n,
        nu_order: 0,
    }))
}

fn close_cosets(nu: &Nu, tgen: &[usize], words: &[Word]) -> HashSet<u32> {
    let mut seen: HashSet<u32> = HashSet::from([0]);
    let mut list = vec![0u32];
    let mut i = 0;
    while i < list.len() {
        let s = list[i];
        for &k in tgen {
            let y = nu.mul_word(s, &words[k]);
            if seen.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    seen
}
