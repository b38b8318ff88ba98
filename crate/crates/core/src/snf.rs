//! Smith normal form over big integers and quotients of free abelian groups.
//!
//! [`AbelianQuotient`] presents `Z^n / L` for a lattice `L` given by integer
//! relation rows. Unit pivots are eliminated sparsely first; the dense
//! remainder goes through a full Smith normal form with pivoting on the
//! smallest nonzero entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Diagonal of a Smith normal form plus the optional column transform `V`
/// with `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// One entry per column; zeros past the rank.
    pub diagonal: Vec<BigInt>,
    pub column_transform: Option<Vec<Vec<BigInt>>>,
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `col_dst -= q * col_src` on every row.
fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let delta = &row[src] * q;
        row[dst] -= delta;
    }
}

/// Smith normal form of a dense `m x n` matrix.
pub fn smith_normal_form(matrix: &[Vec<BigInt>], ncols: usize, track_columns: bool) -> Snf {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let m = a.len();
    let n = ncols;
    let mut v: Option<Vec<Vec<BigInt>>> = track_columns.then(|| {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    });
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        if let Some(v) = v.as_mut() {
            swap_cols(v, t, pj);
        }
        loop {
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(head[t].iter()).skip(t) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                col_axpy(&mut a, j, t, &q);
                if let Some(v) = v.as_mut() {
                    col_axpy(v, j, t, &q);
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Move the smallest remainder of row/column t into the pivot.
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    if let Some(v) = v.as_mut() {
                        swap_cols(v, t, best.1);
                    }
                }
                continue;
            }
            // Divisibility: every later entry must be a multiple of the pivot.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(tail[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diagonal = (0..n)
        .map(|i| {
            if i < m {
                a[i][i].clone()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    Snf {
        diagonal,
        column_transform: v,
    }
}

/// Sparse integer row: sorted `(column, nonzero coefficient)` pairs.
pub type SparseRow = Vec<(usize, BigInt)>;

fn axpy_sparse(dst: &SparseRow, src: &SparseRow, q: &BigInt) -> SparseRow {
    // dst - q * src
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            out.push((src[j].0, -(q * &src[j].1)));
            j += 1;
        } else {
            let v = &dst[i].1 - q * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// The finitely generated abelian group `Z^n / L` with explicit coordinates.
///
/// Coordinates live in `Z/m_1 x ... x Z/m_k` where `m_i = 0` marks a free
/// factor; torsion moduli form a divisor chain and come first.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    moduli: Vec<u64>,
    images: Vec<Vec<i64>>,
}

impl AbelianQuotient {
    pub fn new(ncols: usize, rows: Vec<SparseRow>) -> Result<Self> {
        let mut rows: Vec<Option<SparseRow>> = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|(_, v)| !v.is_zero());
                r.sort_by_key(|(c, _)| *c);
                (!r.is_empty()).then_some(r)
            })
            .collect();
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            if let Some(r) = r {
                for (c, _) in r {
                    col_rows[*c].push(i);
                }
            }
        }
        let mut eliminated: Vec<(usize, SparseRow)> = Vec::new();
        let mut is_elim = vec![false; ncols];

        loop {
            // Markowitz-style choice among unit entries.
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, r) in rows.iter().enumerate() {
                let Some(r) = r else { continue };
                for (c, v) in r {
                    if v.abs().is_one() {
                        let cost = (r.len() - 1) * (col_rows[*c].len().saturating_sub(1));
                        if best.is_none_or(|b| cost < b.0) {
                            best = Some((cost, i, *c));
                        }
                    }
                }
                if matches!(best, Some((0, _, _))) {
                    break;
                }
            }
            let Some((_, pr, pc)) = best else { break };
            let prow = rows[pr].take().expect("pivot row present");
            let unit = prow.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
            for (c, _) in &prow {
                col_rows[*c].retain(|&i| i != pr);
            }
            let others: Vec<usize> = std::mem::take(&mut col_rows[pc]);
            for i in others {
                let r = rows[i].take().unwrap();
                let coef = r.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
                let q = &coef * &unit;
                for (c, _) in &r {
                    col_rows[*c].retain(|&k| k != i);
                }
                let nr = axpy_sparse(&r, &prow, &q);
                debug_assert!(nr.iter().all(|(c, _)| *c != pc));
                for (c, _) in &nr {
                    col_rows[*c].push(i);
                }
                if !nr.is_empty() {
                    rows[i] = Some(nr);
                }
            }
            // e_pc == -unit * (rest of pivot row) in the quotient
            let expr: SparseRow = prow
                .into_iter()
                .filter(|(c, _)| *c != pc)
                .map(|(c, v)| (c, -(&v * &unit)))
                .collect();
            is_elim[pc] = true;
            eliminated.push((pc, expr));
        }

        let remaining: Vec<usize> = (0..ncols).filter(|&c| !is_elim[c]).collect();
        let mut pos = vec![usize::MAX; ncols];
        for (k, &c) in remaining.iter().enumerate() {
            pos[c] = k;
        }
        let dense: Vec<Vec<BigInt>> = rows
            .into_iter()
            .flatten()
            .map(|r| {
                let mut d = vec![BigInt::zero(); remaining.len()];
                for (c, v) in r {
                    d[pos[c]] = v;
                }
                d
            })
            .collect();
        let snf = smith_normal_form(&dense, remaining.len(), true);
        let v = snf.column_transform.expect("tracked");

        // keep coordinates whose modulus is not 1
        let kept: Vec<usize> = (0..remaining.len())
            .filter(|&i| !snf.diagonal[i].is_one())
            .collect();
        let big_moduli: Vec<BigInt> = kept.iter().map(|&i| snf.diagonal[i].clone()).collect();
        let mut moduli = Vec::with_capacity(kept.len());
        for m in &big_moduli {
            moduli.push(
                m.to_u64()
                    .ok_or_else(|| Error::Invalid("torsion modulus overflow".into()))?,
            );
        }

        let mut big_images: Vec<Option<Vec<BigInt>>> = vec![None; ncols];
        for (k, &c) in remaining.iter().enumerate() {
            big_images[c] = Some(kept.iter().map(|&i| v[k][i].clone()).collect());
        }
        for (c, expr) in eliminated.iter().rev() {
            let mut acc = vec![BigInt::zero(); kept.len()];
            for (src, coef) in expr {
                let img = big_images[*src]
                    .as_ref()
                    .expect("later columns resolved first");
                for (a, b) in acc.iter_mut().zip(img) {
                    *a += coef * b;
                }
            }
            for (a, m) in acc.iter_mut().zip(&big_moduli) {
                if !m.is_zero() {
                    *a = a.mod_floor(m);
                }
            }
            big_images[*c] = Some(acc);
        }
        let mut images = Vec::with_capacity(ncols);
        for img in big_images {
            let img = img.unwrap();
            let mut out = Vec::with_capacity(img.len());
            for (x, m) in img.iter().zip(&big_moduli) {
                let x = if m.is_zero() {
                    x.clone()
                } else {
                    x.mod_floor(m)
                };
                out.push(
                    x.to_i64()
                        .ok_or_else(|| Error::Invalid("coordinate overflow".into()))?,
                );
            }
            images.push(out);
        }
        Ok(AbelianQuotient { moduli, images })
    }

    /// Moduli of the coordinates (`0` = free factor), torsion first.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    /// Torsion invariants as a divisor chain (entries > 1).
    pub fn torsion(&self) -> Vec<u64> {
        self.moduli.iter().copied().filter(|&m| m > 1).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|&&m| m == 0).count()
    }

    /// Image of the basis vector `e_col`.
    pub fn image(&self, col: usize) -> &[i64] {
        &self.images[col]
    }

    /// Reduce torsion coordinates into `[0, m)`.
    pub fn normalize(&self, v: &mut [i64]) {
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            if m != 0 {
                *x = x.rem_euclid(m as i64);
            }
        }
    }

    /// `acc += coef * image(col)`, normalized.
    pub fn accumulate(&self, acc: &mut [i64], col: usize, coef: i64) {
        for (a, b) in acc.iter_mut().zip(&self.images[col]) {
            *a += coef * b;
        }
        self.normalize(acc);
    }
}

/// Abelian invariants (torsion divisor chain, free rank) of `Z^n / <rows>`.
pub fn invariants_of_relations(ncols: usize, rows: Vec<SparseRow>) -> Result<(Vec<u64>, usize)> {
    let q = AbelianQuotient::new(ncols, rows)?;
    Ok((q.torsion(), q.free_rank()))
}

/// Whether the finite abelian group with invariants `sub` embeds in the one
/// with invariants `sup` (both divisor chains, ascending).
///
/// Top-aligned componentwise divisibility; equivalent to containment of the
/// p-primary partitions for every prime p.
pub fn chain_embeds(sub: &[u64], sup: &[u64]) -> bool {
    let sub: Vec<u64> = sub.iter().copied().filter(|&d| d > 1).collect();
    let sup: Vec<u64> = sup.iter().copied().filter(|&d| d > 1).collect();
    if sub.len() > sup.len() {
        return false;
    }
    sub.iter()
        .rev()
        .zip(sup.iter().rev())
        .all(|(a, b)| b % a == 0)
}

/// Convert a list of orders into divisor-chain invariants.
pub fn chain_from_cyclic_factors(factors: &[u64]) -> Result<Vec<u64>> {
    let n = factors.len();
    let rows = factors
        .iter()
        .enumerate()
        .map(|(i, &d)| vec![(i, BigInt::from(d))])
        .collect();
    Ok(invariants_of_relations(n, rows)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn sparse(rows: &[&[i64]]) -> Vec<SparseRow> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, &x)| (c, BigInt::from(x)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_of_textbook_matrix() {
        // diag(2, 6, 0)-equivalent: rows (2,4,4), (-6,6,12), (10,-4,-16)
        let m = dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&m, 3, false);
        let d: Vec<i64> = s.diagonal.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn quotient_of_cyclic_relations() {
        // Z^2 / <(2,0),(0,4)> = Z/2 x Z/4
        let (t, f) = invariants_of_relations(2, sparse(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!((t, f), (vec![2, 4], 0));
        // Z^2 / <(2,0),(0,3)> = Z/6
        let (t, f) = invariants_of_relations(2, sparse(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!((t, f), (vec![6], 0));
        // free part survives
        let (t, f) = invariants_of_relations(3, sparse(&[&[1, -1, 0], &[0, 2, 0]])).unwrap();
        assert_eq!((t, f), (vec![2], 1));
    }

    #[test]
    fn images_respect_relations() {
        let rows = sparse(&[&[1, 1, 0, 0], &[0, 3, 3, 0], &[0, 0, 2, 2]]);
        let q = AbelianQuotient::new(4, rows.clone()).unwrap();
        for r in &rows {
            let mut acc = vec![0i64; q.dim()];
            for (c, v) in r {
                q.accumulate(&mut acc, *c, v.to_i64().unwrap());
            }
            for (x, m) in acc.iter().zip(q.moduli()) {
                if *m == 0 {
                    assert_eq!(*x, 0);
                } else {
                    assert_eq!(x % *m as i64, 0);
                }
            }
        }
    }

    #[test]
    fn chain_embedding() {
        assert!(chain_embeds(&[2], &[2, 4]));
        assert!(chain_embeds(&[4], &[2, 4]));
        assert!(!chain_embeds(&[2, 2, 2], &[2, 4]));
        assert!(!chain_embeds(&[8], &[2, 4]));
        assert!(chain_embeds(&[], &[]));
        assert!(chain_embeds(&[1], &[]));
        assert!(chain_embeds(&[3], &[6]));
    }

    #[test]
    fn chain_from_factors() {
        assert_eq!(chain_from_cyclic_factors(&[2, 3]).unwrap(), vec![6]);
        assert_eq!(chain_from_cyclic_factors(&[4, 2, 1]).unwrap(), vec![2, 4]);
    }
}
