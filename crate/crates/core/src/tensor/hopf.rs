//! The exterior square through a free presentation `1 -> R -> F -> G -> 1`:
//! `G ∧ G ≅ [F, F]/[R, F]` and `M(G) ≅ (R ∩ [F, F])/[R, F]`.
//!
//! `R` is free on the Schreier generators `s_{c,x} = w_c x w_{cx}^-1` of a
//! breadth-first transversal. `A = R/[R, F]` is `Z^{rank R}` modulo
//! `y^-1 s y = s` for every Schreier generator `s` and generator `y`;
//! `A ≅ Z^d ⊕ M(G)`. The central extension `F/[R, F]` is realized on pairs
//! `(g, a)` with a cocycle `f`, and `G ∧ G` is its derived subgroup.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{close_under, AbelianInvariants, Elem, FiniteGroup, GroupHom};
use crate::snf::{AbelianQuotient, SparseRow};

use super::{ExteriorSquare, Route};

const NONE: u32 = u32::MAX;

struct Transversal {
    gens: Vec<Elem>,
    /// Breadth-first order of elements.
    order: Vec<Elem>,
    /// `w_h = w_{parent[h]} letter[h]`.
    parent: Vec<Elem>,
    letter: Vec<i32>,
}

impl Transversal {
    fn new(g: &FiniteGroup) -> Self {
        let gens = g.greedy_generators();
        let n = g.order();
        let mut parent = vec![NONE; n];
        let mut letter = vec![0i32; n];
        let e = g.identity();
        parent[e as usize] = e;
        let mut order = vec![e];
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                for inverse in [false, true] {
                    let y = g.mul(x, if inverse { g.inv(s) } else { s });
                    if parent[y as usize] == NONE {
                        parent[y as usize] = x;
                        letter[y as usize] = if inverse {
                            -(i as i32 + 1)
                        } else {
                            i as i32 + 1
                        };
                        order.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        Transversal {
            gens,
            order,
            parent,
            letter,
        }
    }

    fn word(&self, g: &FiniteGroup, mut x: Elem) -> Vec<i32> {
        let mut w = Vec::new();
        while x != g.identity() {
            w.push(self.letter[x as usize]);
            x = self.parent[x as usize];
        }
        w.reverse();
        w
    }
}

/// Schreier generator numbering: `index[c * d + i]` for edge `(c, x_i)`,
/// `NONE` on tree edges.
struct Schreier {
    d: usize,
    index: Vec<u32>,
    count: usize,
}

impl Schreier {
    fn new(g: &FiniteGroup, tr: &Transversal) -> Self {
        let d = tr.gens.len();
        let n = g.order();
        let mut tree = vec![false; n * d];
        for &y in &tr.order[1..] {
            let p = tr.parent[y as usize];
            let l = tr.letter[y as usize];
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                tree[p as usize * d + i] = true;
            } else {
                // y x_i = p
                tree[y as usize * d + i] = true;
            }
        }
        let mut index = vec![NONE; n * d];
        let mut count = 0;
        for c in 0..n {
            for i in 0..d {
                if !tree[c * d + i] {
                    index[c * d + i] = count as u32;
                    count += 1;
                }
            }
        }
        Schreier { d, index, count }
    }

    /// Add the Reidemeister–Schreier rewrite of `w` (read from coset `start`)
    /// into `acc`; returns the end coset.
    fn rewrite(
        &self,
        g: &FiniteGroup,
        gens: &[Elem],
        start: Elem,
        w: &[i32],
        acc: &mut HashMap<usize, i64>,
    ) -> Elem {
        let mut cur = start;
        for &l in w {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                let s = self.index[cur as usize * self.d + i];
                if s != NONE {
                    *acc.entry(s as usize).or_insert(0) += 1;
                }
                cur = g.mul(cur, gens[i]);
            } else {
                let nxt = g.mul(cur, g.inv(gens[i]));
                let s = self.index[nxt as usize * self.d + i];
                if s != NONE {
                    *acc.entry(s as usize).or_insert(0) -= 1;
                }
                cur = nxt;
            }
        }
        cur
    }
}

/// The extension `F/[R, F]` on pairs `(g, a)`.
struct Extension<'a> {
    g: &'a FiniteGroup,
    dim: usize,
    q: AbelianQuotient,
    /// `f[(x * n + y) * dim ..]` = cocycle value `f(x, y)`.
    f: Vec<i64>,
}

type Key = (Elem, Vec<i64>);

impl Extension<'_> {
    fn cocycle(&self, x: Elem, y: Elem) -> &[i64] {
        let n = self.g.order();
        let base = (x as usize * n + y as usize) * self.dim;
        &self.f[base..base + self.dim]
    }

    fn mul(&self, a: &Key, b: &Key) -> Key {
        let mut v: Vec<i64> =
            a.1.iter()
                .zip(&b.1)
                .zip(self.cocycle(a.0, b.0))
                .map(|((x, y), z)| x + y + z)
                .collect();
        self.q.normalize(&mut v);
        (self.g.mul(a.0, b.0), v)
    }

    fn inv(&self, a: &Key) -> Key {
        let gi = self.g.inv(a.0);
        let mut v: Vec<i64> =
            a.1.iter()
                .zip(self.cocycle(a.0, gi))
                .map(|(x, z)| -x - z)
                .collect();
        self.q.normalize(&mut v);
        (gi, v)
    }

    fn lift(&self, x: Elem) -> Key {
        (x, vec![0; self.dim])
    }

    fn commutator(&self, x: Elem, y: Elem) -> Key {
        let (a, b) = (self.lift(x), self.lift(y));
        let ab = self.mul(&a, &b);
        let ba = self.mul(&b, &a);
        self.mul(&self.inv(&ba), &ab)
    }
}

pub(crate) fn exterior_square(g: &FiniteGroup) -> Result<ExteriorSquare> {
    let n = g.order();
    let tr = Transversal::new(g);
    let d = tr.gens.len();
    let sch = Schreier::new(g, &tr);
    if sch.count != n * d.saturating_sub(1) + 1 && d > 0 {
        return Err(Error::Invalid(format!(
            "Schreier rank {} differs from |G|(d-1)+1 = {}",
            sch.count,
            n * (d - 1) + 1
        )));
    }
    let words: Vec<Vec<i32>> = (0..n as Elem).map(|x| tr.word(g, x)).collect();

    // A = R/[R,F]: relations y^-1 s y - s
    let mut rows: Vec<SparseRow> = Vec::with_capacity(sch.count * d);
    for c in 0..n as Elem {
        for i in 0..d {
            let s = sch.index[c as usize * d + i];
            if s == NONE {
                continue;
            }
            let cx = g.mul(c, tr.gens[i]);
            let mut body = words[c as usize].clone();
            body.push(i as i32 + 1);
            body.extend(words[cx as usize].iter().rev().map(|&l| -l));
            for y in 0..d {
                let mut w = vec![-(y as i32 + 1)];
                w.extend_from_slice(&body);
                w.push(y as i32 + 1);
                let mut acc = HashMap::new();
                let end = sch.rewrite(g, &tr.gens, g.identity(), &w, &mut acc);
                debug_assert_eq!(end, g.identity());
                *acc.entry(s as usize).or_insert(0) -= 1;
                let mut row: SparseRow = acc
                    .into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|(c, v)| (c, BigInt::from(v)))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows.sort();
    rows.dedup();
    let q = AbelianQuotient::new(sch.count, rows)?;
    if q.free_rank() != d {
        return Err(Error::Invalid(format!(
            "R/[R,F] has free rank {} (expected {d})",
            q.free_rank()
        )));
    }
    let dim = q.dim();
    let hopf_multiplier = AbelianInvariants {
        torsion: q.torsion(),
    };

    // F(c, l): image of w_c l w_{c l}^-1 for a single letter l
    let step = |c: Elem, l: i32| -> Vec<i64> {
        let i = l.unsigned_abs() as usize - 1;
        let mut v = vec![0i64; dim];
        if l > 0 {
            let s = sch.index[c as usize * d + i];
            if s != NONE {
                q.accumulate(&mut v, s as usize, 1);
            }
        } else {
            let nxt = g.mul(c, g.inv(tr.gens[i]));
            let s = sch.index[nxt as usize * d + i];
            if s != NONE {
                q.accumulate(&mut v, s as usize, -1);
            }
        }
        v
    };
    // f(x, h) = f(x, parent(h)) + F(x parent(h), letter(h)) along the tree
    let mut f = vec![0i64; n * n * dim];
    for x in 0..n as Elem {
        for &h in &tr.order[1..] {
            let p = tr.parent[h as usize];
            let st = step(g.mul(x, p), tr.letter[h as usize]);
            let (dst, src) = (
                (x as usize * n + h as usize) * dim,
                (x as usize * n + p as usize) * dim,
            );
            for k in 0..dim {
                f[dst + k] = f[src + k] + st[k];
            }
            q.normalize(&mut f[dst..dst + dim]);
        }
    }
    let ext = Extension { g, dim, q, f };

    let comm: Vec<Key> = (0..n * n)
        .map(|i| ext.commutator((i / n) as Elem, (i % n) as Elem))
        .collect();
    let identity = ext.lift(g.identity());
    let mut wgens: Vec<Key> = Vec::new();
    let mut members: std::collections::HashSet<Key> =
        std::collections::HashSet::from([identity.clone()]);
    for c in &comm {
        if members.contains(c) {
            continue;
        }
        wgens.push(c.clone());
        members = close_keys(&ext, &identity, &wgens);
    }
    let closure = close_under(identity, wgens.len(), usize::MAX, |a, k| {
        ext.mul(a, &wgens[k])
    })?;
    let order = closure.elements.len();
    let index: HashMap<&Key, Elem> = closure
        .elements
        .iter()
        .enumerate()
        .map(|(i, k)| (k, i as Elem))
        .collect();
    let w = FiniteGroup::from_flat(
        order,
        closure.table.clone(),
        format!("{}^{}", g.label(), g.label()),
    )?;
    let wedge: Vec<Elem> = comm.iter().map(|c| index[c]).collect();
    let kappa_prime = GroupHom {
        images: closure.elements.iter().map(|k| k.0).collect(),
    };
    let mut action = vec![0 as Elem; n * order];
    for z in g.elements() {
        let zl = ext.lift(z);
        let zi = ext.inv(&zl);
        for (j, k) in closure.elements.iter().enumerate() {
            action[z as usize * order + j] = index[&ext.mul(&ext.mul(&zi, k), &zl)];
        }
    }
    let sq = ExteriorSquare::assemble(g, w, wedge, kappa_prime, action, Route::Hopf, None)?;
    if sq.multiplier_invariants != hopf_multiplier {
        return Err(Error::Invalid(format!(
            "multiplier {} disagrees with the Hopf torsion {}",
            sq.multiplier_invariants, hopf_multiplier
        )));
    }
    Ok(sq)
}

fn close_keys(ext: &Extension, identity: &Key, gens: &[Key]) -> std::collections::HashSet<Key> {
    let mut seen = std::collections::HashSet::from([identity.clone()]);
    let mut list = vec![identity.clone()];
    let mut i = 0;
    while i < list.len() {
        for s in gens {
            let y = ext.mul(&list[i], s);
            if seen.insert(y.clone()) {
                list.push(y);
            }
        }
        i += 1;
    }
    seen
}
