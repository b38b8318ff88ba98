//! Named group families, including the tower families `Ct`, `Dsemi` and `Zp`.
//!
//! Coordinate groups are semidirect products `V ⋊ <g>` with
//! `(v, k)(v', k') = (v + σ^{-k} v', k + k')`, so that `g^-1 (v,0) g = (σ v, 0)`.
//! The element index of `(v, k)` is `enc(v) + |V| k` where `enc` reads `v` in
//! mixed radix, first coordinate least significant.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{direct_product, prime_power, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::perm::{group_from_permutations, Perm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(u64),
    Abelian(Vec<u64>),
    /// Dihedral group of the given order `2m`.
    Dihedral(u64),
    /// Generalized quaternion group of the given order (a power of 2, at least 8).
    Quaternion(u64),
    /// Semidihedral group of the given order (a power of 2, at least 16).
    Semidihedral(u64),
    Extraspecial {
        p: u64,
        plus: bool,
    },
    Heisenberg(u64),
    Symmetric(u64),
    Ct {
        p: u64,
        t: u32,
        level: u32,
    },
    Dsemi {
        r: u32,
        level: u32,
    },
    Zp {
        p: u64,
        level: u32,
    },
    Product(Box<Family>, Box<Family>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::Abelian(d) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "abelian:[{}]", parts.join(","))
            }
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Quaternion(n) => write!(f, "quaternion:{n}"),
            Family::Semidihedral(n) => write!(f, "semidihedral:{n}"),
            Family::Extraspecial { p, plus } => {
                write!(f, "extraspecial:{p},{}", if *plus { '+' } else { '-' })
            }
            Family::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            Family::Symmetric(n) => write!(f, "symmetric:{n}"),
            Family::Ct { p, t, level } => write!(f, "Ct:p={p},t={t},level={level}"),
            Family::Dsemi { r, level } => write!(f, "Dsemi:r={r},level={level}"),
            Family::Zp { p, level } => write!(f, "Zp:p={p},level={level}"),
            Family::Product(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        parse_family(spec)
    }
}

fn bad(spec: &str, reason: impl Into<String>) -> Error {
    Error::BadFamilySpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Parse `name:args`, where args are comma separated and may carry `key=`
/// prefixes in the documented order. `A x B` builds a direct product.
pub fn parse_family(spec: &str) -> Result<Family> {
    let spec = spec.trim();
    let spec = spec.strip_prefix("family:").unwrap_or(spec);
    for sep in [" x ", " × ", "×"] {
        if let Some((a, b)) = spec.split_once(sep) {
            return Ok(Family::Product(
                Box::new(parse_family(a)?),
                Box::new(parse_family(b)?),
            ));
        }
    }
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let name = name.trim();
    let rest = rest.trim();
    if name.eq_ignore_ascii_case("abelian") {
        let inner = rest.trim_start_matches('[').trim_end_matches(']');
        let d = inner
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| bad(spec, format!("bad invariant {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if d.contains(&0) {
            return Err(bad(spec, "invariants must be positive"));
        }
        return Ok(Family::Abelian(d));
    }
    let args: Vec<(Option<&str>, &str)> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|a| match a.split_once('=') {
                Some((k, v)) => (Some(k.trim()), v.trim()),
                None => (None, a.trim()),
            })
            .collect()
    };
    let arg = |i: usize, key: &str| -> Result<&str> {
        let (k, v) = args
            .get(i)
            .ok_or_else(|| bad(spec, format!("missing argument {key}")))?;
        if let Some(k) = k {
            if *k != key {
                return Err(bad(spec, format!("expected {key}=, found {k}=")));
            }
        }
        Ok(v)
    };
    let num = |i: usize, key: &str| -> Result<u64> {
        let v = arg(i, key)?;
        v.parse::<u64>()
            .map_err(|_| bad(spec, format!("{key} must be a positive integer, got {v:?}")))
    };
    let expect_args = |n: usize| -> Result<()> {
        if args.len() != n {
            return Err(bad(
                spec,
                format!("expected {n} argument(s), got {}", args.len()),
            ));
        }
        Ok(())
    };
    let small = |v: u64, key: &str| -> Result<u32> {
        u32::try_from(v)
            .ok()
            .filter(|&x| (1..=64).contains(&x))
            .ok_or_else(|| bad(spec, format!("{key} out of range")))
    };
    let family = match name.to_ascii_lowercase().as_str() {
        "cyclic" => {
            expect_args(1)?;
            Family::Cyclic(num(0, "n")?)
        }
        "dihedral" => {
            expect_args(1)?;
            Family::Dihedral(num(0, "n")?)
        }
        "quaternion" => {
            expect_args(1)?;
            Family::Quaternion(num(0, "n")?)
        }
        "semidihedral" => {
            expect_args(1)?;
            Family::Semidihedral(num(0, "n")?)
        }
        "heisenberg" => {
            expect_args(1)?;
            Family::Heisenberg(num(0, "p")?)
        }
        "symmetric" => {
            expect_args(1)?;
            Family::Symmetric(num(0, "n")?)
        }
        "extraspecial" => {
            expect_args(2)?;
            let plus = match arg(1, "sign")? {
                "+" => true,
                "-" => false,
                s => return Err(bad(spec, format!("sign must be + or -, got {s:?}"))),
            };
            Family::Extraspecial {
                p: num(0, "p")?,
                plus,
            }
        }
        "ct" => {
            expect_args(3)?;
            Family::Ct {
                p: num(0, "p")?,
                t: small(num(1, "t")?, "t")?,
                level: small(num(2, "level")?, "level")?,
            }
        }
        "dsemi" => {
            expect_args(2)?;
            Family::Dsemi {
                r: small(num(0, "r")?, "r")?,
                level: small(num(1, "level")?, "level")?,
            }
        }
        "zp" => {
            expect_args(2)?;
            Family::Zp {
                p: num(0, "p")?,
                level: small(num(1, "level")?, "level")?,
            }
        }
        _ => return Err(bad(spec, format!("unknown family {name:?}"))),
    };
    Ok(family)
}

/// Build a family member with the default order cap.
pub fn group_from_family(spec: &str) -> Result<FiniteGroup> {
    build_family(&parse_family(spec)?, DEFAULT_ORDER_CAP)
}

pub fn build_family(f: &Family, cap: usize) -> Result<FiniteGroup> {
    let spec = f.to_string();
    let require_prime = |p: u64| -> Result<()> {
        match prime_power(p) {
            Some((q, 1)) if q == p => Ok(()),
            _ => Err(bad(&spec, format!("{p} is not prime"))),
        }
    };
    let check_order = |order: u128| -> Result<usize> {
        if order > cap as u128 {
            Err(Error::OrderCapExceeded { cap })
        } else {
            Ok(order as usize)
        }
    };
    let g = match f {
        Family::Cyclic(n) => {
            if *n == 0 {
                return Err(bad(&spec, "order must be positive"));
            }
            check_order(*n as u128)?;
            metacyclic(*n, 1, 1, 0)?
        }
        Family::Abelian(d) => {
            let order = d
                .iter()
                .try_fold(1u128, |acc, &x| acc.checked_mul(x as u128))
                .unwrap_or(u128::MAX);
            check_order(order)?;
            let mut g = FiniteGroup::trivial();
            for &x in d {
                g = direct_product(&g, &metacyclic(x, 1, 1, 0)?, cap)?;
            }
            g
        }
        Family::Dihedral(n) => {
            if *n < 2 || n % 2 != 0 {
                return Err(bad(&spec, "dihedral order must be even and at least 2"));
            }
            check_order(*n as u128)?;
            let m = n / 2;
            metacyclic(m, 2, (m as i64 - 1).rem_euclid(m as i64) as u64, 0)?
        }
        Family::Quaternion(n) => {
            match prime_power(*n) {
                Some((2, k)) if k >= 3 => {}
                _ => {
                    return Err(bad(
                        &spec,
                        "quaternion order must be a power of 2, at least 8",
                    ))
                }
            }
            check_order(*n as u128)?;
            let m = n / 2;
            // b^2 = a^{m/2}, b^-1 a b = a^-1
            metacyclic(m, 2, m - 1, m / 2)?
        }
        Family::Semidihedral(n) => {
            match prime_power(*n) {
                Some((2, k)) if k >= 4 => {}
                _ => {
                    return Err(bad(
                        &spec,
                        "semidihedral order must be a power of 2, at least 16",
                    ))
                }
            }
            check_order(*n as u128)?;
            let m = n / 2;
            metacyclic(m, 2, m / 2 - 1, 0)?
        }
        Family::Heisenberg(p) => {
            require_prime(*p)?;
            check_order((*p as u128).pow(3))?;
            heisenberg(*p)?
        }
        Family::Extraspecial { p, plus } => {
            require_prime(*p)?;
            check_order((*p as u128).pow(3))?;
            match (*p, *plus) {
                (2, true) => metacyclic(4, 2, 3, 0)?,
                (2, false) => metacyclic(4, 2, 3, 2)?,
                (p, true) => heisenberg(p)?,
                (p, false) => metacyclic(p * p, p, 1 + p, 0)?,
            }
        }
        Family::Symmetric(n) => {
            if *n == 0 || *n > 5 {
                return Err(bad(&spec, "symmetric degree must be between 1 and 5"));
            }
            let n = *n as usize;
            let mut gens: Vec<Perm> = Vec::new();
            if n >= 2 {
                let mut swap: Perm = (0..n as u32).collect();
                swap.swap(0, 1);
                gens.push(swap);
            }
            if n >= 3 {
                gens.push((0..n as u32).map(|i| (i + 1) % n as u32).collect());
            }
            group_from_permutations(n, &gens, cap)?
        }
        Family::Ct { p, t, level } => {
            require_prime(*p)?;
            let c = CoordinateGroup::ct(*p, *t, *level).map_err(|r| bad(&spec, r))?;
            check_order(c.order_u128())?;
            c.build()?
        }
        Family::Dsemi { r, level } => {
            let c = CoordinateGroup::dsemi(*r, *level);
            check_order(c.order_u128())?;
            c.build()?
        }
        Family::Zp { p, level } => {
            require_prime(*p)?;
            let c = CoordinateGroup::zp(*p, *level);
            check_order(c.order_u128())?;
            c.build()?
        }
        Family::Product(a, b) => {
            let ga = build_family(a, cap)?;
            let gb = build_family(b, cap)?;
            direct_product(&ga, &gb, cap)?
        }
    };
    Ok(g.with_label(spec))
}

/// `Z/m ⋊ Z/k` style group on pairs `(i, e)`, `0 <= i < m`, `0 <= e < k`,
/// with `b^-1 a b = a^u` and `b^k = a^w`. Requires `u^k = 1 (mod m)` and
/// `u w = w (mod m)`.
fn metacyclic(m: u64, k: u64, u: u64, w: u64) -> Result<FiniteGroup> {
    let n = (m * k) as usize;
    let mm = m as i128;
    // a^i b = b a^{iu}, so b^e a^j = a^{j u^-e} b^e
    let uinv = if k == 1 {
        1
    } else {
        pow_mod(u as i128, k as i128 - 1, mm)
    };
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (i1, e1) = ((a as u64 % m) as i128, (a as u64 / m) as i128);
        let twist = pow_mod(uinv, e1, mm);
        for b in 0..n {
            let (i2, e2) = ((b as u64 % m) as i128, (b as u64 / m) as i128);
            let mut i = i1 + twist * i2;
            let mut e = e1 + e2;
            if e >= k as i128 {
                e -= k as i128;
                i += w as i128;
            }
            let i = i.rem_euclid(mm);
            table.push((i + mm * e) as u32);
        }
    }
    FiniteGroup::from_flat(n, table, format!("metacyclic:{m},{k},{u},{w}"))
}

fn pow_mod(base: i128, exp: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let mut r = 1i128;
    let mut b = base.rem_euclid(m);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Upper unitriangular 3×3 matrices over `Z/p`: `(a, b, c)` is
/// `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
fn heisenberg(p: u64) -> Result<FiniteGroup> {
    let p = p as usize;
    let n = p * p * p;
    let dec = |x: usize| (x % p, (x / p) % p, x / (p * p));
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a1, b1, c1) = dec(x);
        for y in 0..n {
            let (a2, b2, c2) = dec(y);
            let a = (a1 + a2) % p;
            let b = (b1 + b2) % p;
            let c = (c1 + c2 + a1 * b2) % p;
            table.push((a + p * b + p * p * c) as u32);
        }
    }
    FiniteGroup::from_flat(n, table, format!("heisenberg:{p}"))
}

/// Semidirect product `(Z/p^n)^d ⋊ Z/m` with `g^-1 v g = σ v`.
#[derive(Clone, Debug)]
pub struct CoordinateGroup {
    pub p: u64,
    /// Truncation level: coordinates live in `Z/p^n`.
    pub n: u32,
    pub dim: usize,
    /// Order of the acting cyclic group.
    pub m: u64,
    /// Column-major: `sigma[j]` is the image of the j-th basis vector.
    pub sigma: Vec<Vec<i64>>,
}

impl CoordinateGroup {
    /// `(Z/p^n)^{d_t} ⋊ C_{p^t}` with `σ` the companion action of the
    /// `p^t`-th cyclotomic polynomial: `σ(e_1) = -e_d`,
    /// `σ(e_i) = e_{i-1} - [p^{t-1} | i-1] e_d`.
    pub fn ct(p: u64, t: u32, n: u32) -> std::result::Result<Self, String> {
        if t == 0 {
            return Err("t must be at least 1".into());
        }
        let d = (p.checked_pow(t - 1).ok_or("t too large")? * (p - 1)) as usize;
        let pt1 = p.pow(t - 1) as usize;
        let mut sigma = vec![vec![0i64; d]; d];
        sigma[0][d - 1] = -1;
        for i in 2..=d {
            sigma[i - 1][i - 2] += 1;
            if (i - 1) % pt1 == 0 {
                sigma[i - 1][d - 1] -= 1;
            }
        }
        Ok(CoordinateGroup {
            p,
            n,
            dim: d,
            m: p.pow(t),
            sigma,
        })
    }

    /// `Z/2^n ⋊ C_{2^r}` with inversion.
    pub fn dsemi(r: u32, n: u32) -> Self {
        CoordinateGroup {
            p: 2,
            n,
            dim: 1,
            m: 1 << r,
            sigma: vec![vec![-1]],
        }
    }

    /// `Z/p^n` (trivial acting part).
    pub fn zp(p: u64, n: u32) -> Self {
        CoordinateGroup {
            p,
            n,
            dim: 1,
            m: 1,
            sigma: vec![vec![1]],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn vector_count(&self) -> u64 {
        self.modulus().pow(self.dim as u32)
    }

    fn order_u128(&self) -> u128 {
        (self.modulus() as u128)
            .checked_pow(self.dim as u32)
            .and_then(|v| v.checked_mul(self.m as u128))
            .unwrap_or(u128::MAX)
    }

    pub fn order(&self) -> usize {
        self.order_u128() as usize
    }

    pub fn encode(&self, v: &[i64], k: i64) -> u32 {
        let q = self.modulus() as i64;
        let mut idx: u64 = 0;
        for &x in v.iter().rev() {
            idx = idx * q as u64 + x.rem_euclid(q) as u64;
        }
        (idx + self.vector_count() * k.rem_euclid(self.m as i64) as u64) as u32
    }

    pub fn decode(&self, x: u32) -> (Vec<i64>, i64) {
        let q = self.modulus();
        let nv = self.vector_count();
        let (mut vi, k) = (x as u64 % nv, x as u64 / nv);
        let mut v = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            v.push((vi % q) as i64);
            vi /= q;
        }
        (v, k as i64)
    }

    fn apply(&self, mat: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        let q = self.modulus() as i64;
        let mut out = vec![0i64; self.dim];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o = (*o + mat[j][i] * vj).rem_euclid(q);
            }
        }
        out
    }

    fn mat_mul(&self, a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        // column j of a·b is a applied to column j of b
        b.iter().map(|col| self.apply(a, col)).collect()
    }

    /// `σ^{-k}` for `k = 0..m`, computed as `σ^{m-k}`.
    fn inverse_powers(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        let q = self.modulus() as i64;
        let id: Vec<Vec<i64>> = (0..self.dim)
            .map(|j| (0..self.dim).map(|i| i64::from(i == j) % q).collect())
            .collect();
        let sigma: Vec<Vec<i64>> = self
            .sigma
            .iter()
            .map(|c| c.iter().map(|x| x.rem_euclid(q)).collect())
            .collect();
        let mut pows = vec![id.clone()];
        for _ in 0..self.m {
            let next = self.mat_mul(&sigma, pows.last().unwrap());
            pows.push(next);
        }
        if pows[self.m as usize] != id {
            return Err(Error::Invalid(
                "acting matrix does not have the stated order".into(),
            ));
        }
        Ok((0..self.m as usize)
            .map(|k| pows[(self.m as usize - k) % self.m as usize].clone())
            .collect())
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let n = self.order();
        let nv = self.vector_count() as usize;
        let m = self.m as usize;
        let inv_pows = self.inverse_powers()?;
        // act[k][v] = enc(σ^{-k} v)
        let vectors: Vec<Vec<i64>> = (0..nv as u32).map(|x| self.decode(x).0).collect();
        let act: Vec<Vec<u32>> = inv_pows
            .iter()
            .map(|mat| {
                vectors
                    .iter()
                    .map(|v| self.encode(&self.apply(mat, v), 0))
                    .collect()
            })
            .collect();
        let add: Vec<u32> = {
            let mut t = Vec::with_capacity(nv * nv);
            for a in &vectors {
                for b in &vectors {
                    let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    t.push(self.encode(&s, 0));
                }
            }
            t
        };
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (v1, k1) = (x % nv, x / nv);
            for y in 0..n {
                let (v2, k2) = (y % nv, y / nv);
                let v = add[v1 * nv + act[k1][v2] as usize] as usize;
                let k = (k1 + k2) % m;
                table.push((v + nv * k) as u32);
            }
        }
        FiniteGroup::from_flat(n, table, "coordinate")
    }

    /// Reduce level-`n` coordinates to level `n - 1` (same family, one level down).
    pub fn project_to(&self, lower: &CoordinateGroup, x: u32) -> u32 {
        let (v, k) = self.decode(x);
        lower.encode(&v, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!(parse_family("cyclic:6").unwrap(), Family::Cyclic(6));
        assert_eq!(
            parse_family("abelian:[2,4]").unwrap(),
            Family::Abelian(vec![2, 4])
        );
        assert_eq!(
            parse_family("Ct:p=3,t=1,level=2").unwrap(),
            Family::Ct {
                p: 3,
                t: 1,
                level: 2
            }
        );
        assert_eq!(
            parse_family("Dsemi:1,3").unwrap(),
            Family::Dsemi { r: 1, level: 3 }
        );
        assert_eq!(
            parse_family("extraspecial:3,-").unwrap(),
            Family::Extraspecial { p: 3, plus: false }
        );
        assert!(matches!(
            parse_family("bogus:3"),
            Err(Error::BadFamilySpec { .. })
        ));
        assert!(matches!(
            parse_family("Ct:p=3,level=1,t=1"),
            Err(Error::BadFamilySpec { .. })
        ));
        let prod = parse_family("dihedral:8 x cyclic:3").unwrap();
        assert_eq!(prod.to_string(), "dihedral:8 x cyclic:3");
    }

    #[test]
    fn orders() {
        let cases = [
            ("cyclic:1", 1),
            ("cyclic:12", 12),
            ("abelian:[2,2,2]", 8),
            ("dihedral:8", 8),
            ("dihedral:6", 6),
            ("quaternion:8", 8),
            ("quaternion:16", 16),
            ("semidihedral:16", 16),
            ("heisenberg:3", 27),
            ("extraspecial:3,-", 27),
            ("symmetric:4", 24),
            ("Ct:p=3,t=1,level=1", 27),
            ("Ct:p=3,t=1,level=2", 243),
            ("Ct:p=2,t=2,level=1", 16),
            ("Dsemi:r=1,level=2", 8),
            ("Dsemi:r=2,level=3", 32),
            ("Zp:p=2,level=3", 8),
            ("dihedral:8 x cyclic:3", 24),
        ];
        for (spec, order) in cases {
            let g = group_from_family(spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
            assert_eq!(g.order(), order, "{spec}");
            assert_eq!(g.label(), parse_family(spec).unwrap().to_string());
        }
    }

    #[test]
    fn small_fingerprints() {
        let fp = |s: &str| {
            let g = group_from_family(s).unwrap();
            (
                g.order(),
                g.class_count(),
                g.center().order(),
                g.is_abelian(),
            )
        };
        assert_eq!(fp("dihedral:8"), (8, 5, 2, false));
        assert_eq!(fp("quaternion:8"), (8, 5, 2, false));
        assert_eq!(fp("symmetric:3"), (6, 3, 1, false));
        assert_eq!(fp("heisenberg:3"), (27, 11, 3, false));
        assert_eq!(fp("extraspecial:3,-"), (27, 11, 3, false));
        assert_eq!(fp("semidihedral:16"), (16, 7, 2, false));
        assert_eq!(fp("quaternion:16"), (16, 7, 2, false));
        // exponent distinguishes the two extraspecial groups of order 27
        let plus = group_from_family("extraspecial:3,+").unwrap();
        let minus = group_from_family("extraspecial:3,-").unwrap();
        assert!(plus.elements().all(|x| plus.element_order(x) <= 3));
        assert!(minus.elements().any(|x| minus.element_order(x) == 9));
        // Q8 has a single involution, D8 has five
        let q8 = group_from_family("quaternion:8").unwrap();
        assert_eq!(
            q8.elements().filter(|&x| q8.element_order(x) == 2).count(),
            1
        );
    }

    #[test]
    fn ct_action_has_uniserial_shape() {
        let c = CoordinateGroup::ct(3, 1, 1).unwrap();
        assert_eq!(c.sigma, vec![vec![0, -1], vec![1, -1]]);
        let g = c.build().unwrap();
        assert_eq!(g.coclass(), Some(1));
        let c2 = CoordinateGroup::ct(2, 2, 2).unwrap();
        assert_eq!(c2.dim, 2);
        assert_eq!(c2.build().unwrap().order(), 64);
    }

    #[test]
    fn dsemi_derived_subgroup_index() {
        for r in 1..=2u32 {
            for n in 2..=4u32 {
                let g = CoordinateGroup::dsemi(r, n).build().unwrap();
                let d = g.derived_subgroup();
                assert_eq!(g.order() / d.order(), 1usize << (r + 1), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let c = CoordinateGroup::ct(3, 1, 2).unwrap();
        for x in [0u32, 1, 80, 81, 242] {
            let (v, k) = c.decode(x);
            assert_eq!(c.encode(&v, k), x);
        }
    }

    #[test]
    fn cap_and_bad_specs() {
        assert!(matches!(
            build_family(&parse_family("cyclic:100").unwrap(), 50),
            Err(Error::OrderCapExceeded { cap: 50 })
        ));
        assert!(matches!(
            group_from_family("quaternion:12"),
            Err(Error::BadFamilySpec { .. })
        ));
        assert!(matches!(
            group_from_family("heisenberg:4"),
            Err(Error::BadFamilySpec { .. })
        ));
        assert!(matches!(
            group_from_family("symmetric:6"),
            Err(Error::BadFamilySpec { .. })
        ));
    }
}
