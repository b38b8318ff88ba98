//! HLT coset enumeration with lookahead.
//!
//! Column `2g` holds generator `g`, column `2g + 1` its inverse, so the
//! inverse column is `col ^ 1`. Coincidences are processed with a
//! union-find over coset numbers and a queue, as in Holt's handbook.

use std::collections::VecDeque;

use super::{Presentation, Word};
use crate::error::{Error, Result};

pub const DEFAULT_COSET_LIMIT: usize = 2_000_000;

const NONE: u32 = u32::MAX;

/// The live-coset limit, overridable through `XDEG_MAX_COSETS`.
pub fn default_coset_limit() -> usize {
    std::env::var("XDEG_MAX_COSETS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_COSET_LIMIT)
}

/// A completed, standardized coset table: cosets are numbered in the order
/// a breadth-first walk from coset 0 meets them, columns in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub ncosets: usize,
    pub ngens: usize,
    /// Row-major, `2 * ngens` columns.
    pub action: Vec<u32>,
    pub subgroup_gens: Vec<Word>,
}

impl CosetTable {
    #[inline]
    pub fn act(&self, coset: u32, col: usize) -> u32 {
        self.action[coset as usize * 2 * self.ngens + col]
    }

    #[inline]
    pub fn act_letter(&self, coset: u32, l: i32) -> u32 {
        self.act(coset, column(l))
    }

    pub fn trace(&self, coset: u32, w: &[i32]) -> u32 {
        w.iter().fold(coset, |c, &l| self.act_letter(c, l))
    }

    /// Word reaching each coset from coset 0 along the breadth-first tree.
    pub fn tree_words(&self) -> Vec<Word> {
        let cols = 2 * self.ngens;
        let mut words: Vec<Option<Word>> = vec![None; self.ncosets];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0u32]);
        while let Some(c) = queue.pop_front() {
            for col in 0..cols {
                let d = self.act(c, col);
                if words[d as usize].is_none() {
                    let mut w = words[c as usize].clone().unwrap();
                    w.push(letter_of(col));
                    words[d as usize] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.unwrap_or_default()).collect()
    }
}

#[inline]
fn column(l: i32) -> usize {
    if l > 0 {
        2 * (l as usize - 1)
    } else {
        2 * ((-l) as usize - 1) + 1
    }
}

#[inline]
fn letter_of(col: usize) -> i32 {
    let g = (col / 2) as i32 + 1;
    if col.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

/// Enumerate the cosets of `<h>` in the group presented by `p`.
pub fn todd_coxeter(p: &Presentation, h: &[Word], limit: usize) -> Result<CosetTable> {
    if limit == 0 {
        return Err(Error::Invalid("coset limit must be positive".into()));
    }
    let mut e = Enumerator::new(p, h, limit);
    e.run()?;
    Ok(e.standardize())
}

enum Scan {
    Done,
    /// A definition was needed while at the live-coset limit.
    Full,
}

struct Enumerator {
    ngens: usize,
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    limit: usize,
    relators: Vec<Vec<usize>>,
    subgroup: Vec<Vec<usize>>,
    subgroup_words: Vec<Word>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(p: &Presentation, h: &[Word], limit: usize) -> Self {
        let cols = 2 * p.ngens;
        let to_cols = |w: &Word| w.iter().map(|&l| column(l)).collect::<Vec<_>>();
        Enumerator {
            ngens: p.ngens,
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            limit,
            relators: p.relators.iter().map(to_cols).collect(),
            subgroup: h.iter().map(to_cols).collect(),
            subgroup_words: h.to_vec(),
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    #[inline]
    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                let icol = col ^ 1;
                self.set(d, icol, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_ix = self.get(nu, icol);
                    if nu_ix != NONE {
                        self.merge(mu, nu_ix);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, icol, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    fn define(&mut self, c: u32, col: usize) -> bool {
        if self.live >= self.limit {
            return false;
        }
        let n = self.parent.len() as u32;
        if n == NONE {
            return false;
        }
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, col, n);
        self.set(n, col ^ 1, c);
        true
    }

    /// Scan `c` under word `w`, defining cosets when `fill` is set.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Scan {
        if w.is_empty() {
            return Scan::Done;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j {
                let nx = self.get(f, w[i]);
                if nx == NONE {
                    break;
                }
                f = nx;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Scan::Done;
            }
            while j >= i {
                let nx = self.get(b, w[j] ^ 1);
                if nx == NONE {
                    break;
                }
                b = nx;
                if j == 0 {
                    // the whole word was traced backwards
                    self.coincidence(f, b);
                    return Scan::Done;
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Scan::Done;
            }
            if i == j {
                // deduction
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Scan::Done;
            }
            if !fill {
                return Scan::Done;
            }
            if !self.define(f, w[i]) {
                return Scan::Full;
            }
        }
    }

    /// Scan every live coset under every relator without defining.
    fn lookahead(&mut self) {
        let mut c = 0u32;
        while (c as usize) < self.parent.len() {
            if self.alive(c) {
                for r in 0..self.relators.len() {
                    let w = std::mem::take(&mut self.relators[r]);
                    self.scan(c, &w, false);
                    self.relators[r] = w;
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    /// Renumber live cosets contiguously; returns the new index of the first
    /// live coset at or after `from`.
    fn compact(&mut self, from: u32) -> u32 {
        let n = self.parent.len();
        let mut new_index = vec![NONE; n];
        let mut k = 0u32;
        for c in 0..n as u32 {
            if self.alive(c) {
                new_index[c as usize] = k;
                k += 1;
            }
        }
        let mut table = Vec::with_capacity(k as usize * self.cols);
        for c in 0..n as u32 {
            if self.alive(c) {
                for col in 0..self.cols {
                    let d = self.get(c, col);
                    table.push(if d == NONE {
                        NONE
                    } else {
                        new_index[d as usize]
                    });
                }
            }
        }
        let next = (from as usize..n)
            .map(|c| new_index[c])
            .find(|&x| x != NONE)
            .unwrap_or(k);
        self.table = table;
        self.parent = (0..k).collect();
        next
    }

    fn run(&mut self) -> Result<()> {
        for s in 0..self.subgroup.len() {
            let w = self.subgroup[s].clone();
            loop {
                match self.scan(0, &w, true) {
                    Scan::Done => break,
                    Scan::Full => self.relieve()?,
                }
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.parent.len() {
            if self.parent.len() - self.live > self.live {
                c = self.compact(c);
                if c as usize >= self.parent.len() {
                    break;
                }
            }
            if !self.alive(c) {
                c += 1;
                continue;
            }
            let mut r = 0;
            while r < self.relators.len() && self.alive(c) {
                let w = std::mem::take(&mut self.relators[r]);
                let res = self.scan(c, &w, true);
                self.relators[r] = w;
                match res {
                    Scan::Done => r += 1,
                    Scan::Full => self.relieve()?,
                }
            }
            let mut col = 0;
            while col < self.cols && self.alive(c) {
                if self.get(c, col) == NONE && !self.define(c, col) {
                    self.relieve()?;
                    continue;
                }
                col += 1;
            }
            c += 1;
        }
        self.verify()
    }

    /// Lookahead at the limit; fail unless it frees a useful number of cosets.
    fn relieve(&mut self) -> Result<()> {
        let before = self.live;
        self.lookahead();
        let freed = before - self.live;
        if freed == 0 || freed < self.limit / 64 {
            return Err(Error::EnumerationLimitExceeded { limit: self.limit });
        }
        Ok(())
    }

    fn verify(&mut self) -> Result<()> {
        for c in 0..self.parent.len() as u32 {
            if !self.alive(c) {
                continue;
            }
            for col in 0..self.cols {
                let d = self.get(c, col);
                if d == NONE || !self.alive(d) || self.get(d, col ^ 1) != c {
                    return Err(Error::Invalid(format!(
                        "incomplete coset table at ({c}, {col})"
                    )));
                }
            }
            for r in &self.relators {
                let end = r.iter().fold(c, |x, &col| self.get(x, col));
                if end != c {
                    return Err(Error::Invalid(format!("relator fails at coset {c}")));
                }
            }
        }
        for h in &self.subgroup {
            if h.iter().fold(0u32, |x, &col| self.get(x, col)) != 0 {
                return Err(Error::Invalid(
                    "subgroup generator does not fix coset 0".into(),
                ));
            }
        }
        Ok(())
    }

    fn standardize(&self) -> CosetTable {
        let n = self.parent.len();
        let mut order = Vec::with_capacity(self.live);
        let mut new_index = vec![NONE; n];
        new_index[0] = 0;
        order.push(0u32);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for col in 0..self.cols {
                let d = self.get(c, col);
                if new_index[d as usize] == NONE {
                    new_index[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut action = Vec::with_capacity(order.len() * self.cols);
        for &c in &order {
            for col in 0..self.cols {
                action.push(new_index[self.get(c, col) as usize]);
            }
        }
        CosetTable {
            ncosets: order.len(),
            ngens: self.ngens,
            action,
            subgroup_gens: self.subgroup_words.clone(),
        }
    }
}
