//! Finitely presented groups: words, presentations, coset enumeration, and
//! presentations of concrete finite groups.

mod parse;
mod todd_coxeter;

use std::collections::VecDeque;
use std::fmt;

pub use parse::{parse_presentation, parse_word};
pub use todd_coxeter::{default_coset_limit, todd_coxeter, CosetTable, DEFAULT_COSET_LIMIT};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::perm::{group_from_permutations, Perm};

/// A word over generators `0..ngens`: letter `g + 1` is generator `g`,
/// letter `-(g + 1)` its inverse.
pub type Word = Vec<i32>;

/// Orders up to this use the multiplication-table presentation.
pub const TABLE_PRESENTATION_THRESHOLD: usize = 24;

#[inline]
pub fn letter(g: usize, inverse: bool) -> i32 {
    if inverse {
        -(g as i32 + 1)
    } else {
        g as i32 + 1
    }
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let r = free_reduce(w);
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == -r[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    r[lo..hi].to_vec()
}

pub fn word_power(w: &[i32], k: i64) -> Word {
    let base = if k < 0 { invert_word(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

/// `a^-1 b^-1 a b`.
pub fn word_commutator(a: &[i32], b: &[i32]) -> Word {
    let mut w = invert_word(a);
    w.extend(invert_word(b));
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    w
}

/// `c^-1 a c`.
pub fn word_conjugate(a: &[i32], c: &[i32]) -> Word {
    let mut w = invert_word(c);
    w.extend_from_slice(a);
    w.extend_from_slice(c);
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<Word>,
    pub label: String,
    pub names: Vec<String>,
}

impl Presentation {
    /// Relators are freely and cyclically reduced; empty ones are dropped.
    pub fn new(ngens: usize, relators: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        let names = default_names(ngens);
        Self::with_names(names, relators, label)
    }

    pub fn with_names(
        names: Vec<String>,
        relators: Vec<Word>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let ngens = names.len();
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(&l) = r
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > ngens)
            {
                return Err(Error::Invalid(format!(
                    "letter {l} outside {ngens} generators"
                )));
            }
            let r = cyclic_reduce(&r);
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation {
            ngens,
            relators: rels,
            label: label.into(),
            names,
        })
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.names[w[i].unsigned_abs() as usize - 1];
            let exp = (j - i) as i64 * i64::from(w[i].signum());
            parts.push(if exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            });
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "<{} | {}>", self.names.join(","), rels.join(", "))
    }
}

/// `a..z` then `A..Z` for up to 52 generators, otherwise `g1, g2, ...`.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 52 {
        (b'a'..=b'z')
            .chain(b'A'..=b'Z')
            .take(n)
            .map(|c| (c as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("g{i}")).collect()
    }
}

/// Image of the coset action: generator `g` acts by column `2g`.
pub fn perm_group_from_cosets(t: &CosetTable) -> Result<FiniteGroup> {
    let gens: Vec<Perm> = (0..t.ngens)
        .map(|g| (0..t.ncosets).map(|c| t.act(c as u32, 2 * g)).collect())
        .collect();
    let g = group_from_permutations(t.ncosets, &gens, DEFAULT_ORDER_CAP)?;
    Ok(g)
}

/// Shortest words for every element of `G` over a generating list, from a
/// breadth-first spanning tree that uses generators and their inverses.
#[derive(Clone, Debug)]
pub struct WordMap {
    pub gens: Vec<Elem>,
    pub words: Vec<Word>,
}

impl WordMap {
    pub fn new(g: &FiniteGroup, gens: &[Elem]) -> Result<Self> {
        let mut words: Vec<Option<Word>> = vec![None; g.order()];
        words[g.identity() as usize] = Some(Vec::new());
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                for inverse in [false, true] {
                    let y = g.mul(x, if inverse { g.inv(s) } else { s });
                    if words[y as usize].is_none() {
                        let mut w = words[x as usize].clone().unwrap();
                        w.push(letter(i, inverse));
                        words[y as usize] = Some(w);
                        queue.push_back(y);
                    }
                }
            }
        }
        let words = words
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid("generators do not generate the group".into()))?;
        Ok(WordMap {
            gens: gens.to_vec(),
            words,
        })
    }

    pub fn word(&self, x: Elem) -> &Word {
        &self.words[x as usize]
    }

    /// Evaluate a word in `G`.
    pub fn evaluate(&self, g: &FiniteGroup, w: &[i32]) -> Elem {
        w.iter().fold(g.identity(), |acc, &l| {
            let s = self.gens[l.unsigned_abs() as usize - 1];
            g.mul(acc, if l > 0 { s } else { g.inv(s) })
        })
    }
}

/// A presentation of `G` verified by enumeration: the multiplication-table
/// presentation for small orders, a generator presentation above.
pub fn presentation_of_group(g: &FiniteGroup) -> Result<Presentation> {
    if g.order() <= TABLE_PRESENTATION_THRESHOLD {
        let n = g.order();
        let mut rels = Vec::with_capacity(n * n);
        for a in g.elements() {
            for b in g.elements() {
                let c = g.mul(a, b);
                rels.push(vec![a as i32 + 1, b as i32 + 1, -(c as i32 + 1)]);
            }
        }
        let p = Presentation::new(n, rels, format!("table:{}", g.label()))?;
        verify_presentation(&p, g.order())?;
        Ok(p)
    } else {
        Ok(generator_presentation(g)?.0)
    }
}

fn verify_presentation(p: &Presentation, expected: usize) -> Result<()> {
    let limit = (expected * 64).max(1024);
    let got = match todd_coxeter(p, &[], limit) {
        Ok(t) => t.ncosets,
        Err(Error::EnumerationLimitExceeded { .. }) => limit,
        Err(e) => return Err(e),
    };
    if got != expected {
        return Err(Error::PresentationUnverified {
            label: p.label.clone(),
            expected,
            got,
        });
    }
    Ok(())
}

/// Presentation on the greedy generating set: power relators, products of
/// two generators and conjugates of generators rewritten through the word
/// map, then, while enumeration gives more than `|G|` cosets, relators
/// `w_c w_d^-1` for distinct cosets `c, d` that name the same element.
pub fn generator_presentation(g: &FiniteGroup) -> Result<(Presentation, WordMap)> {
    let gens = g.greedy_generators();
    let wm = WordMap::new(g, &gens)?;
    let k = gens.len();
    let mut rels: Vec<Word> = Vec::new();
    let rewrite = |target: Elem, lhs: Word| -> Word {
        let mut w = lhs;
        w.extend(invert_word(wm.word(target)));
        w
    };
    for (i, &a) in gens.iter().enumerate() {
        rels.push(word_power(&[letter(i, false)], g.element_order(a) as i64));
        for (j, &b) in gens.iter().enumerate() {
            rels.push(rewrite(
                g.mul(a, b),
                vec![letter(i, false), letter(j, false)],
            ));
            if i != j {
                rels.push(rewrite(
                    g.conjugate(a, b),
                    vec![letter(j, true), letter(i, false), letter(j, false)],
                ));
            }
        }
    }
    let label = format!("gens:{}", g.label());
    let limit = (g.order() * 64).max(4096);
    for _round in 0..64 {
        let p = Presentation::new(k, rels.clone(), label.clone())?;
        match todd_coxeter(&p, &[], limit) {
            Ok(t) if t.ncosets == g.order() => {
                return Ok((prune_relators(p, g.order(), limit), wm))
            }
            Ok(t) => rels.extend(collision_relators(g, &wm, &t, 16)),
            Err(Error::EnumerationLimitExceeded { .. }) => {
                rels.extend(schreier_relators(g, &wm, 64, &rels))
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::PresentationUnverified {
        label,
        expected: g.order(),
        got: 0,
    })
}

/// Drop duplicate relators, then greedily drop (longest first) every relator
/// whose removal keeps the enumeration at `order` cosets.
fn prune_relators(p: Presentation, order: usize, limit: usize) -> Presentation {
    let mut rels: Vec<Word> = Vec::new();
    for r in p.relators {
        if !rels.contains(&r) {
            rels.push(r);
        }
    }
    let mut by_length: Vec<usize> = (0..rels.len()).collect();
    by_length.sort_by_key(|&i| std::cmp::Reverse(rels[i].len()));
    let mut keep = vec![true; rels.len()];
    for i in by_length {
        keep[i] = false;
        let trial: Vec<Word> = rels
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(r, _)| r.clone())
            .collect();
        let ok = Presentation::new(p.ngens, trial, "trial")
            .ok()
            .and_then(|t| todd_coxeter(&t, &[], limit).ok())
            .is_some_and(|t| t.ncosets == order);
        if !ok {
            keep[i] = true;
        }
    }
    let rels = rels
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r)
        .collect();
    Presentation {
        relators: rels,
        ..p
    }
}

/// Evaluate every coset's tree word in `G` and return relators for the first
/// collisions found.
fn collision_relators(g: &FiniteGroup, wm: &WordMap, t: &CosetTable, max: usize) -> Vec<Word> {
    let words = t.tree_words();
    let mut first: Vec<Option<usize>> = vec![None; g.order()];
    let mut out = Vec::new();
    for (c, w) in words.iter().enumerate() {
        let x = wm.evaluate(g, w) as usize;
        match first[x] {
            None => first[x] = Some(c),
            Some(d) => {
                let mut r = w.clone();
                r.extend(invert_word(&words[d]));
                out.push(r);
                if out.len() >= max {
                    break;
                }
            }
        }
    }
    out
}

/// Schreier relators `w_x s w_{xs}^-1` not yet present.
fn schreier_relators(g: &FiniteGroup, wm: &WordMap, max: usize, existing: &[Word]) -> Vec<Word> {
    let mut out = Vec::new();
    for x in g.elements() {
        for (i, &s) in wm.gens.iter().enumerate() {
            let mut r = wm.word(x).clone();
            r.push(letter(i, false));
            r.extend(invert_word(wm.word(g.mul(x, s))));
            let r = cyclic_reduce(&r);
            if !r.is_empty() && !existing.contains(&r) && !out.contains(&r) {
                out.push(r);
                if out.len() >= max {
                    return out;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::group_from_family;

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(word_commutator(&[1], &[2]), vec![-1, -2, 1, 2]);
        assert_eq!(word_conjugate(&[1], &[2]), vec![-2, 1, 2]);
        assert_eq!(word_power(&[1, 2], -2), vec![-2, -1, -2, -1]);
    }

    #[test]
    fn letters_are_checked() {
        assert!(Presentation::new(1, vec![vec![2]], "x").is_err());
        let p = Presentation::new(1, vec![vec![1, -1]], "x").unwrap();
        assert!(p.relators.is_empty());
    }

    #[test]
    fn round_trips_through_enumeration() {
        for spec in [
            "cyclic:2",
            "abelian:[2,2]",
            "dihedral:8",
            "symmetric:4",
            "quaternion:16",
            "heisenberg:3",
            "dihedral:32",
        ] {
            let g = group_from_family(spec).unwrap();
            let p = presentation_of_group(&g).unwrap();
            let t = todd_coxeter(&p, &[], DEFAULT_COSET_LIMIT).unwrap();
            assert_eq!(t.ncosets, g.order(), "{spec}");
            let h = perm_group_from_cosets(&t).unwrap();
            assert_eq!(h.order(), g.order());
            assert_eq!(h.class_count(), g.class_count(), "{spec}");
        }
    }

    #[test]
    fn word_map_evaluates() {
        let g = group_from_family("symmetric:4").unwrap();
        let gens = g.greedy_generators();
        let wm = WordMap::new(&g, &gens).unwrap();
        for x in g.elements() {
            assert_eq!(wm.evaluate(&g, wm.word(x)), x);
        }
    }
}
