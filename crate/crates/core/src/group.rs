//! Finite groups realized by complete Cayley tables over element indices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::snf::{self, SparseRow};

/// Element index inside a [`FiniteGroup`].
pub type Elem = u32;

/// Default upper bound on the number of elements of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// Orders up to this value get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    label: String,
}

impl FiniteGroup {
    /// Validate a raw Cayley table (`table[i][j]` is the index of `g_i * g_j`).
    pub fn from_table(table: Vec<Vec<Elem>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::not_a_group("empty table"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup {
                    reason: format!("row {i} has length {} (expected {n})", row.len()),
                    witness: Some((i as u32, 0, 0)),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat, format!("cayley:{n}"))
    }

    /// Validate a row-major flat table.
    pub fn from_flat(order: usize, table: Vec<Elem>, label: impl Into<String>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::not_a_group("table is not square"));
        }
        let (identity, inverse) = validate(order, &table)?;
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
            label: label.into(),
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            identity: 0,
            inverse: vec![0],
            label: "trivial".into(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        let n = self.order;
        &self.table[a as usize * n..(a as usize + 1) * n]
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `a^b = b^-1 a b`.
    #[inline]
    pub fn conjugate(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn power(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.first_noncommuting_pair().is_none()
    }

    fn first_noncommuting_pair(&self) -> Option<(Elem, Elem)> {
        for a in self.elements() {
            for b in a + 1..self.order as Elem {
                if !self.commute(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    // ---- subgroups -------------------------------------------------------

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(
            self.order,
            self.elements().collect(),
            self.greedy_generators(),
        )
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![self.identity], Vec::new())
    }

    /// Subgroup generated by `gens` (breadth-first closure).
    pub fn generated(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        let mut members = vec![self.identity];
        seen[self.identity as usize] = true;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup::from_sorted(self.order, members, gens.to_vec())
    }

    /// Wrap a member set, verifying closure.
    pub fn subgroup_from_members(&self, mut members: Vec<Elem>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        let s = Subgroup::from_sorted(self.order, members, Vec::new());
        if !s.contains(self.identity) {
            return Err(Error::Invalid("subgroup misses the identity".into()));
        }
        for &a in s.members() {
            if !s.contains(self.inv(a)) {
                return Err(Error::Invalid(format!(
                    "subgroup not closed under inverse at {a}"
                )));
            }
            for &b in s.members() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::Invalid(format!("subgroup not closed at ({a}, {b})")));
                }
            }
        }
        if !self.order.is_multiple_of(s.order()) {
            return Err(Error::Invalid(
                "subgroup order does not divide group order".into(),
            ));
        }
        let gens = self.greedy_generators_of(&s);
        Ok(Subgroup {
            generators: gens,
            ..s
        })
    }

    /// Generating set built by repeatedly adding the smallest element that
    /// enlarges the generated subgroup.
    pub fn greedy_generators(&self) -> Vec<Elem> {
        let all: Vec<Elem> = self.elements().collect();
        self.greedy_from(&all)
    }

    fn greedy_generators_of(&self, s: &Subgroup) -> Vec<Elem> {
        self.greedy_from(s.members())
    }

    fn greedy_from(&self, pool: &[Elem]) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.generated(&[]);
        for &x in pool {
            if current.order() == pool.len() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.generated(&gens);
            }
        }
        gens
    }

    /// `C_G(x) = {a : ax = xa}`.
    pub fn centralizer(&self, x: Elem) -> Subgroup {
        let members: Vec<Elem> = self.elements().filter(|&a| self.commute(a, x)).collect();
        Subgroup::from_sorted(self.order, members, Vec::new())
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&a| self.elements().all(|b| self.commute(a, b)))
            .collect();
        Subgroup::from_sorted(self.order, members, Vec::new())
    }

    /// Subgroup generated by all `[a, b]` with `a` in `left`, `b` in `right`.
    pub fn commutator_subgroup(&self, left: &Subgroup, right: &Subgroup) -> Subgroup {
        let mut gens: Vec<Elem> = Vec::new();
        let mut seen = vec![false; self.order];
        for &a in left.members() {
            for &b in right.members() {
                let c = self.commutator(a, b);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    gens.push(c);
                }
            }
        }
        self.generated(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.normality_witness(s).is_none()
    }

    fn normality_witness(&self, s: &Subgroup) -> Option<(Elem, Elem)> {
        let gens = self.greedy_generators();
        for &n in s.members() {
            for &g in &gens {
                if !s.contains(self.conjugate(n, g)) {
                    return Some((n, g));
                }
            }
        }
        None
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[Elem]) -> Subgroup {
        let mut gens: Vec<Elem> = Vec::new();
        let mut seen = vec![false; self.order];
        for &x in elems {
            for g in self.elements() {
                let c = self.conjugate(x, g);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    gens.push(c);
                }
            }
        }
        self.generated(&gens)
    }

    /// Every normal subgroup, as joins of normal closures of single elements.
    pub fn normal_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order > cap {
            return Err(Error::SubgroupEnumerationCapExceeded {
                cap,
                order: self.order,
            });
        }
        let classes = self.conjugacy_classes();
        let mut found: Vec<Subgroup> = vec![self.trivial_subgroup()];
        let mut keys: HashSet<Vec<u64>> = HashSet::new();
        keys.insert(found[0].mask.clone());
        let mut principal = Vec::new();
        for &r in &classes.reps {
            let n = self.normal_closure(&[r]);
            if keys.insert(n.mask.clone()) {
                found.push(n.clone());
            }
            principal.push(n);
        }
        let mut i = 0;
        while i < found.len() {
            for p in &principal {
                if p.members().iter().all(|&x| found[i].contains(x)) {
                    continue;
                }
                let mut gens = found[i].members().to_vec();
                gens.extend_from_slice(p.generators());
                let j = self.generated(&minimal_pool(self, &gens));
                if keys.insert(j.mask.clone()) {
                    found.push(j);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members().cmp(b.members()))
        });
        Ok(found)
    }

    // ---- classes ---------------------------------------------------------

    pub fn conjugacy_classes(&self) -> ConjClasses {
        let n = self.order;
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for x in self.elements() {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            let mut size = 0;
            for g in self.elements() {
                let y = self.conjugate(x, g);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = c;
                    size += 1;
                }
            }
            reps.push(x);
            sizes.push(size);
        }
        ConjClasses {
            reps,
            class_of,
            sizes,
        }
    }

    // ---- constructions ---------------------------------------------------

    /// `G/N` with the canonical surjection; coset representatives are the
    /// smallest member indices.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        if let Some((element, by)) = self.normality_witness(n) {
            return Err(Error::NotNormal { element, by });
        }
        let mut coset = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            for &m in n.members() {
                coset[self.mul(x, m) as usize] = id;
            }
            reps.push(x);
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(coset[self.mul(a, b) as usize]);
            }
        }
        let label = format!("{}/N{}", self.label, n.order());
        let quotient = FiniteGroup::from_flat(q, table, label)?;
        Ok((quotient, GroupHom { images: coset }))
    }

    /// The subgroup `s` as a group in its own right, plus its embedding.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        let members = s.members();
        let mut pos = HashMap::with_capacity(members.len());
        for (i, &m) in members.iter().enumerate() {
            pos.insert(m, i as Elem);
        }
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                table.push(pos[&self.mul(a, b)]);
            }
        }
        let g = FiniteGroup::from_flat(k, table, format!("{}<{}>", self.label, k))?;
        Ok((g, members.to_vec()))
    }

    // ---- invariants ------------------------------------------------------

    /// `Some((p, k))` when the order is `p^k` with `k >= 1`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        prime_power(self.order as u64)
    }

    pub fn is_p_group(&self) -> bool {
        self.order == 1 || self.prime_power().is_some()
    }

    /// Divisor-chain invariants of an abelian group, via Smith normal form
    /// of the relation lattice of a generating set.
    pub fn abelian_invariants(&self) -> Result<AbelianInvariants> {
        Ok(self.abelian_coordinates()?.0)
    }

    /// Invariants together with the coordinates of every element in a basis
    /// realizing them: element `x` is `sum c_i b_i` with `c_i` in `[0, d_i)`.
    pub fn abelian_coordinates(&self) -> Result<(AbelianInvariants, Vec<Vec<i64>>)> {
        if let Some((a, b)) = self.first_noncommuting_pair() {
            return Err(Error::NotAbelian(a, b));
        }
        let gens = self.greedy_generators();
        let k = gens.len();
        if k == 0 {
            return Ok((AbelianInvariants::trivial(), vec![Vec::new(); self.order]));
        }
        // coordinates along a breadth-first spanning tree
        let mut coord: Vec<Option<Vec<i64>>> = vec![None; self.order];
        coord[self.identity as usize] = Some(vec![0; k]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if coord[y as usize].is_none() {
                    let mut v = coord[x as usize].clone().unwrap();
                    v[i] += 1;
                    coord[y as usize] = Some(v);
                    queue.push_back(y);
                }
            }
        }
        let mut rows: HashSet<Vec<i64>> = HashSet::new();
        for x in self.elements() {
            let vx = coord[x as usize].as_ref().unwrap();
            for (i, &g) in gens.iter().enumerate() {
                let vy = coord[self.mul(x, g) as usize].as_ref().unwrap();
                let mut r = vx.clone();
                r[i] += 1;
                for (a, b) in r.iter_mut().zip(vy) {
                    *a -= b;
                }
                if r.iter().any(|&v| v != 0) {
                    rows.insert(r);
                }
            }
        }
        let mut rows: Vec<Vec<i64>> = rows.into_iter().collect();
        rows.sort();
        let sparse: Vec<SparseRow> = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| *v != 0)
                    .map(|(c, v)| (c, BigInt::from(v)))
                    .collect()
            })
            .collect();
        let q = snf::AbelianQuotient::new(k, sparse)?;
        debug_assert_eq!(q.free_rank(), 0, "finite abelian group has no free part");
        let coords = coord
            .into_iter()
            .map(|v| {
                let mut acc = vec![0i64; q.dim()];
                for (i, &c) in v.unwrap().iter().enumerate() {
                    if c != 0 {
                        q.accumulate(&mut acc, i, c);
                    }
                }
                acc
            })
            .collect();
        Ok((
            AbelianInvariants {
                torsion: q.torsion(),
            },
            coords,
        ))
    }

    /// Minimal number of generators of a p-group: the rank of `G/Phi(G)`
    /// with `Phi(G) = G^p [G, G]`.
    pub fn min_generators(&self) -> Result<usize> {
        if self.order == 1 {
            return Ok(0);
        }
        let (p, _) = self.prime_power().ok_or(Error::NotPGroup(self.order))?;
        let frattini = self.frattini_subgroup_p(p);
        let mut index = self.order / frattini.order();
        let mut rank = 0;
        while index > 1 {
            index /= p as usize;
            rank += 1;
        }
        Ok(rank)
    }

    fn frattini_subgroup_p(&self, p: u64) -> Subgroup {
        let mut gens: Vec<Elem> = self.elements().map(|x| self.power(x, p as i64)).collect();
        gens.extend(self.derived_subgroup().members().iter().copied());
        gens.sort_unstable();
        gens.dedup();
        self.generated(&minimal_pool(self, &gens))
    }

    /// `gamma_1 = G`, `gamma_{i+1} = [gamma_i, G]`, up to and including the
    /// first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), &g);
            let stable = next.order() == series.last().unwrap().order();
            if stable {
                break;
            }
            let trivial = next.order() == 1;
            series.push(next);
            if trivial {
                break;
            }
        }
        series
    }

    /// Nilpotency class, or `None` when the series stabilizes above 1.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        (s.last().unwrap().order() == 1).then(|| s.len() - 1)
    }

    /// `n - c` for a p-group of order `p^n` and class `c`.
    pub fn coclass(&self) -> Option<usize> {
        if self.order == 1 {
            return Some(0);
        }
        let (_, n) = self.prime_power()?;
        let c = self.nilpotency_class()?;
        Some(n as usize - c)
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().reps.len()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

/// Keep only the elements that enlarge the running closure.
fn minimal_pool(g: &FiniteGroup, pool: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; g.order()];
    seen[g.identity() as usize] = true;
    let mut members = vec![g.identity()];
    let mut gens = Vec::new();
    for &x in pool {
        if seen[x as usize] {
            continue;
        }
        gens.push(x);
        // extend the closure with the new generator
        let mut i = 0;
        members.clear();
        members.push(g.identity());
        seen.iter_mut().for_each(|s| *s = false);
        seen[g.identity() as usize] = true;
        while i < members.len() {
            let a = members[i];
            for &h in &gens {
                let b = g.mul(a, h);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    members.push(b);
                }
            }
            i += 1;
        }
    }
    gens
}

fn validate(n: usize, table: &[Elem]) -> Result<(Elem, Vec<Elem>)> {
    let mut seen = vec![u32::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = table[i * n + j];
            if v as usize >= n {
                return Err(Error::NotAGroup {
                    reason: format!("row {i}: entry {v} out of range"),
                    witness: Some((i as u32, j as u32, 0)),
                });
            }
            if seen[v as usize] == i as u32 {
                return Err(Error::NotAGroup {
                    reason: format!("row {i} is not a permutation (repeats {v})"),
                    witness: Some((i as u32, j as u32, 0)),
                });
            }
            seen[v as usize] = i as u32;
        }
    }
    // A row that is a permutation but clashes in columns: blame the row
    // involved in the most column collisions.
    let mut first_in_col = vec![u32::MAX; n];
    let mut blame = vec![0usize; n];
    let mut broken_col = None;
    for j in 0..n {
        first_in_col.iter_mut().for_each(|s| *s = u32::MAX);
        for i in 0..n {
            let v = table[i * n + j] as usize;
            if first_in_col[v] != u32::MAX {
                blame[i] += 1;
                blame[first_in_col[v] as usize] += 1;
                broken_col.get_or_insert(j);
            } else {
                first_in_col[v] = i as u32;
            }
        }
    }
    if let Some(j) = broken_col {
        let row = (0..n)
            .max_by_key(|&i| (blame[i], std::cmp::Reverse(i)))
            .unwrap();
        return Err(Error::NotAGroup {
            reason: format!("row {row} breaks the Latin property (column {j} repeats a value)"),
            witness: Some((row as u32, j as u32, 0)),
        });
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| table[e * n + j] as usize == j && table[j * n + e] as usize == j))
        .ok_or_else(|| Error::not_a_group("no two-sided identity"))? as Elem;
    let mut inverse = vec![0; n];
    for i in 0..n {
        let row = &table[i * n..(i + 1) * n];
        let j = row.iter().position(|&v| v == identity).unwrap();
        if table[j * n + i] != identity {
            return Err(Error::NotAGroup {
                reason: format!("element {i} has no two-sided inverse"),
                witness: Some((i as u32, j as u32, 0)),
            });
        }
        inverse[i] = j as Elem;
    }
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let check = |a: usize, b: usize, c: usize| -> Result<()> {
        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
            return Err(Error::NotAGroup {
                reason: format!("associativity fails at ({a}, {b}, {c})"),
                witness: Some((a as u32, b as u32, c as u32)),
            });
        }
        Ok(())
    };
    if n <= FULL_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 * n * n {
            check(
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            )?;
        }
    }
    Ok((identity, inverse))
}

/// `Some((p, k))` when `n = p^k`, `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Closed subset of a [`FiniteGroup`], stored as sorted member indices plus
/// a bitmask for O(1) membership.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<Elem>,
    generators: Vec<Elem>,
    mask: Vec<u64>,
}

impl Subgroup {
    pub(crate) fn from_sorted(
        parent_order: usize,
        members: Vec<Elem>,
        generators: Vec<Elem>,
    ) -> Self {
        let mut mask = vec![0u64; parent_order.div_ceil(64)];
        for &m in &members {
            mask[m as usize / 64] |= 1 << (m % 64);
        }
        Subgroup {
            parent_order,
            members,
            generators,
            mask,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        (x as usize) < self.parent_order && self.mask[x as usize / 64] & (1 << (x % 64)) != 0
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Subgroup::from_sorted(self.parent_order, members, Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.members == other.members
    }
}

impl Eq for Subgroup {}

/// Conjugacy classes; each representative is the smallest index in its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    pub reps: Vec<Elem>,
    pub class_of: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl ConjClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Divisor chain `d_1 | d_2 | ...` with every entry greater than 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            torsion: Vec::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.torsion.iter().product()
    }

    /// Number of cyclic factors (minimal generator count).
    pub fn rank(&self) -> usize {
        self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Whether a group with these invariants embeds in one with `sup`.
    pub fn embeds_in(&self, sup: &AbelianInvariants) -> bool {
        snf::chain_embeds(&self.torsion, &sup.torsion)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A map between groups given by the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub images: Vec<Elem>,
}

impl GroupHom {
    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x as usize]
    }

    pub fn is_homomorphism(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        self.images.len() == src.order()
            && src.elements().all(|a| {
                src.elements()
                    .all(|b| self.apply(src.mul(a, b)) == dst.mul(self.apply(a), self.apply(b)))
            })
    }

    pub fn is_surjective(&self, dst: &FiniteGroup) -> bool {
        let mut hit = vec![false; dst.order()];
        for &y in &self.images {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn kernel(&self, src: &FiniteGroup, dst: &FiniteGroup) -> Subgroup {
        let members = src
            .elements()
            .filter(|&x| self.apply(x) == dst.identity())
            .collect();
        Subgroup::from_sorted(src.order(), members, Vec::new())
    }

    /// Image of a subgroup, as a subgroup of `dst`.
    pub fn image_of(&self, s: &Subgroup, dst: &FiniteGroup) -> Subgroup {
        let mut members: Vec<Elem> = s.members().iter().map(|&x| self.apply(x)).collect();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_sorted(dst.order(), members, Vec::new())
    }
}

/// `G x H` with `(i, j) -> i * |H| + j`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (m, n) = (g.order(), h.order());
    let order = m
        .checked_mul(n)
        .filter(|&o| o <= cap)
        .ok_or(Error::OrderCapExceeded { cap })?;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (a1, a2) = ((a / n) as Elem, (a % n) as Elem);
        for b in 0..order {
            let (b1, b2) = ((b / n) as Elem, (b % n) as Elem);
            table.push(g.mul(a1, b1) * n as Elem + h.mul(a2, b2));
        }
    }
    FiniteGroup::from_flat(order, table, format!("{}x{}", g.label(), h.label()))
}

/// Breadth-first closure of a generated group.
pub(crate) struct Closure<K> {
    pub elements: Vec<K>,
    pub table: Vec<Elem>,
    /// `parent[j] * gen[via[j]] = j` for `j > 0`.
    pub parent: Vec<Elem>,
    pub via: Vec<u32>,
}

/// Enumerate the group generated by `ngens` generators, given right
/// multiplication by a generator; identity first, then products in
/// generator order. The Cayley table is filled from the spanning tree.
pub(crate) fn close_under<K, F>(
    identity: K,
    ngens: usize,
    cap: usize,
    mut mul_gen: F,
) -> Result<Closure<K>>
where
    K: Eq + Hash + Clone,
    F: FnMut(&K, usize) -> K,
{
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<K, Elem> = HashMap::new();
    index.insert(identity, 0);
    let mut parent = vec![0];
    let mut via = vec![0];
    let mut rgen: Vec<Elem> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for g in 0..ngens {
            let y = mul_gen(&elements[i], g);
            let idx = match index.get(&y) {
                Some(&k) => k,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    let k = elements.len() as Elem;
                    index.insert(y.clone(), k);
                    elements.push(y);
                    parent.push(i as Elem);
                    via.push(g as u32);
                    k
                }
            };
            rgen.push(idx);
        }
        i += 1;
    }
    let n = elements.len();
    let mut table = vec![0; n * n];
    for a in 0..n {
        table[a * n] = a as Elem;
        for j in 1..n {
            let left = table[a * n + parent[j] as usize] as usize;
            table[a * n + j] = rgen[left * ngens + via[j] as usize];
        }
    }
    Ok(Closure {
        elements,
        table,
        parent,
        via,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cyclic_table(n: usize) -> Vec<Vec<Elem>> {
        (0..n)
            .map(|i| (0..n).map(|j| ((i + j) % n) as Elem).collect())
            .collect()
    }

    fn dihedral8() -> FiniteGroup {
        // r^k s^e, product (k1,e1)(k2,e2) = (k1 + (-1)^e1 k2, e1 + e2)
        let idx = |k: i64, e: i64| (k.rem_euclid(4) + 4 * e.rem_euclid(2)) as Elem;
        let mut t = vec![vec![0; 8]; 8];
        for a in 0..8i64 {
            for b in 0..8i64 {
                let (k1, e1, k2, e2) = (a % 4, a / 4, b % 4, b / 4);
                let sign = if e1 == 0 { 1 } else { -1 };
                t[a as usize][b as usize] = idx(k1 + sign * k2, e1 + e2);
            }
        }
        FiniteGroup::from_table(t).unwrap()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn cyclic_six() {
        let g = FiniteGroup::from_table(cyclic_table(6)).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 5);
        assert_eq!(g.abelian_invariants().unwrap().torsion, vec![6]);
    }

    #[test]
    fn swapped_entry_is_rejected_with_row() {
        let mut t = cyclic_table(6);
        t[2].swap(1, 2);
        match FiniteGroup::from_table(t) {
            Err(Error::NotAGroup {
                witness: Some((row, _, _)),
                ..
            }) => assert_eq!(row, 2),
            other => panic!("expected NotAGroup, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(t),
            Err(Error::NotAGroup { .. })
        ));
    }

    #[test]
    fn dihedral_basics() {
        let g = dihedral8();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.count(), 5);
        assert_eq!(classes.sizes.iter().sum::<usize>(), 8);
        // r = index 1
        assert_eq!(g.centralizer(1).order(), 4);
        let z = g.center();
        assert_eq!(z.members(), &[0, 2]);
        let (q, hom) = g.quotient(&z).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.abelian_invariants().unwrap().torsion, vec![2, 2]);
        assert!(hom.is_homomorphism(&g, &q));
        assert_eq!(g.min_generators().unwrap(), 2);
        let lcs = g.lower_central_series();
        let orders: Vec<usize> = lcs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![8, 2, 1]);
        assert_eq!(g.coclass(), Some(1));
    }

    #[test]
    fn non_normal_quotient_fails() {
        let g = dihedral8();
        let s = g.generated(&[4]); // a reflection
        assert!(matches!(g.quotient(&s), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn products_and_normal_subgroups() {
        let c2 = FiniteGroup::from_table(cyclic_table(2)).unwrap();
        let c3 = FiniteGroup::from_table(cyclic_table(3)).unwrap();
        let p = direct_product(&c2, &c3, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(p.abelian_invariants().unwrap().torsion, vec![6]);
        let d8 = dihedral8();
        let normals = d8.normal_subgroups(64).unwrap();
        // 1, Z, three of order 4, G
        assert_eq!(normals.len(), 6);
        assert!(matches!(
            direct_product(&d8, &d8, 32),
            Err(Error::OrderCapExceeded { cap: 32 })
        ));
    }

    #[test]
    fn abelian_checks() {
        let d8 = dihedral8();
        assert!(matches!(
            d8.abelian_invariants(),
            Err(Error::NotAbelian(_, _))
        ));
        let c8 = FiniteGroup::from_table(cyclic_table(8)).unwrap();
        assert_eq!(c8.min_generators().unwrap(), 1);
        let c6 = FiniteGroup::from_table(cyclic_table(6)).unwrap();
        assert!(matches!(c6.min_generators(), Err(Error::NotPGroup(6))));
        assert_eq!(c8.lower_central_series().len(), 2);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(smallest_prime_factor(15), 3);
    }
}
