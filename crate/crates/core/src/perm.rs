//! Permutation groups in disjoint-cycle notation (1-based points).

use crate::error::{Error, Result};
use crate::group::{close_under, FiniteGroup};

/// Images of `0..degree`, acting on the right: `x^(pq) = (x^p)^q`.
pub type Perm = Vec<u32>;

pub fn identity_perm(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

/// `p` then `q`.
pub fn compose(p: &[u32], q: &[u32]) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

/// Parse `"(1 2 3)(4 5)"`, `"(1,2)"` or `"()"` as a permutation of `1..=degree`.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Perm> {
    let mut perm = identity_perm(degree);
    let mut touched = vec![false; degree];
    let bytes = text.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Ok(perm);
    }
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(Error::parse(
                i,
                format!("expected '(' in permutation {text:?}"),
            ));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b',') {
                i += 1;
            }
            if i >= bytes.len() {
                return Err(Error::parse(i, "unterminated cycle"));
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::parse(
                    i,
                    format!("unexpected character {:?}", bytes[i] as char),
                ));
            }
            let point: usize = text[start..i]
                .parse()
                .map_err(|_| Error::parse(start, "bad point"))?;
            if point == 0 || point > degree {
                return Err(Error::parse(
                    start,
                    format!("point {point} outside 1..={degree}"),
                ));
            }
            if touched[point - 1] {
                return Err(Error::parse(start, format!("point {point} repeated")));
            }
            touched[point - 1] = true;
            cycle.push(point as u32 - 1);
        }
        for w in 0..cycle.len() {
            perm[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
        }
        skip_ws(&mut i);
    }
    Ok(perm)
}

/// Render in disjoint-cycle notation; the identity is `"()"`.
pub fn format_permutation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Cayley table of `<gens>`, enumerated breadth-first from the identity in
/// generator order. Also returns the permutation of every element.
pub fn permutation_closure(
    degree: usize,
    gens: &[Perm],
    cap: usize,
) -> Result<(FiniteGroup, Vec<Perm>)> {
    for g in gens {
        let mut hit = vec![false; degree];
        if g.len() != degree
            || g.iter()
                .any(|&x| x as usize >= degree || std::mem::replace(&mut hit[x as usize], true))
        {
            return Err(Error::Invalid(format!(
                "not a permutation of degree {degree}"
            )));
        }
    }
    let c = close_under(identity_perm(degree), gens.len(), cap, |p, g| {
        compose(p, &gens[g])
    })?;
    let n = c.elements.len();
    let g = FiniteGroup::from_flat(n, c.table, format!("perm:{degree}:{n}"))?;
    Ok((g, c.elements))
}

pub fn group_from_permutations(degree: usize, gens: &[Perm], cap: usize) -> Result<FiniteGroup> {
    permutation_closure(degree, gens, cap).map(|(g, _)| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;

    #[test]
    fn parse_and_format_round_trip() {
        let p = parse_permutation("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p, vec![1, 2, 0, 4, 3]);
        assert_eq!(format_permutation(&p), "(1 2 3)(4 5)");
        assert_eq!(parse_permutation("()", 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_permutation("(1,3)", 3).unwrap(), vec![2, 1, 0]);
        assert!(parse_permutation("(1 4)", 3).is_err());
        assert!(parse_permutation("(1 1)", 3).is_err());
        assert!(parse_permutation("1 2", 3).is_err());
    }

    #[test]
    fn dihedral_from_square_symmetries() {
        let gens = vec![
            parse_permutation("(1 2 3 4)", 4).unwrap(),
            parse_permutation("(1 3)", 4).unwrap(),
        ];
        let g = group_from_permutations(4, &gens, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.class_count(), 5);
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            group_from_permutations(3, &[], DEFAULT_ORDER_CAP)
                .unwrap()
                .order(),
            1
        );
        let t = parse_permutation("(1 2)", 2).unwrap();
        assert_eq!(
            group_from_permutations(2, &[t], DEFAULT_ORDER_CAP)
                .unwrap()
                .order(),
            2
        );
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![
            parse_permutation("(1 2 3 4 5)", 5).unwrap(),
            parse_permutation("(1 2)", 5).unwrap(),
        ];
        assert!(matches!(
            group_from_permutations(5, &gens, 100),
            Err(Error::OrderCapExceeded { cap: 100 })
        ));
        assert_eq!(group_from_permutations(5, &gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn breadth_first_order_is_deterministic() {
        let gens = vec![
            parse_permutation("(1 2 3)", 3).unwrap(),
            parse_permutation("(1 2)", 3).unwrap(),
        ];
        let (_, perms) = permutation_closure(3, &gens, 10).unwrap();
        assert_eq!(perms[0], vec![0, 1, 2]);
        assert_eq!(perms[1], gens[0]);
        assert_eq!(perms[2], gens[1]);
    }
}
