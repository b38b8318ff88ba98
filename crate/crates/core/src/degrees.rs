//! Commutativity and exterior degrees, exterior centralizers, and the
//! inequalities relating them, checked exactly with the counting measure
//! `μ(S) = |S|/|G|`.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    direct_product, smallest_prime_factor, AbelianInvariants, Elem, FiniteGroup, Subgroup,
    DEFAULT_ORDER_CAP,
};
use crate::rational::Rational;
use crate::tensor::{exterior_square, ExteriorSquare};

/// Largest order for which normal subgroups are enumerated.
pub const NORMAL_SUBGROUP_CAP: usize = 64;

/// Pair sets larger than this are not probed for closure.
const PAIR_PROBE_LIMIT: u64 = 1 << 26;

/// `k(G)/|G|`.
pub fn commutativity_degree(g: &FiniteGroup) -> Rational {
    Rational::ratio(g.class_count() as u64, g.order() as u64)
}

/// `|{(x, y) : xy = yx}| / |G|²`.
pub fn commutativity_degree_by_pairs(g: &FiniteGroup) -> Rational {
    let count: u64 = g
        .elements()
        .map(|x| g.elements().filter(|&y| g.commute(x, y)).count() as u64)
        .sum();
    let n = g.order() as u64;
    Rational::ratio(count, n * n)
}

/// `Ĉ(x) = {a : a ∧ x = 1}`, checked to be closed under multiplication.
pub fn exterior_centralizer(g: &FiniteGroup, sq: &ExteriorSquare, x: Elem) -> Result<Subgroup> {
    let members: Vec<Elem> = g
        .elements()
        .filter(|&a| sq.wedge_is_trivial(a, x))
        .collect();
    g.subgroup_from_members(members)
}

/// `Ẑ = ⋂ Ĉ(x)`, the elements `a` with `a ∧ y = 1` for every `y`.
pub fn exterior_center(g: &FiniteGroup, sq: &ExteriorSquare) -> Result<Subgroup> {
    let members: Vec<Elem> = g
        .elements()
        .filter(|&a| g.elements().all(|y| sq.wedge_is_trivial(a, y)))
        .collect();
    g.subgroup_from_members(members)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    /// `(1/|G|) Σ_classes |Ĉ(x)|/|C(x)|`.
    ClassSum,
    /// Direct count of trivial wedges.
    BruteForce,
}

pub fn exterior_degree(g: &FiniteGroup) -> Result<Rational> {
    let sq = exterior_square(g)?;
    exterior_degree_of(g, &sq, DegreeMode::ClassSum)
}

pub fn exterior_degree_of(
    g: &FiniteGroup,
    sq: &ExteriorSquare,
    mode: DegreeMode,
) -> Result<Rational> {
    let n = g.order() as u64;
    match mode {
        DegreeMode::BruteForce => Ok(Rational::ratio(sq.trivial_pair_count(), n * n)),
        DegreeMode::ClassSum => {
            let mut sum = Rational::zero();
            for &x in &g.conjugacy_classes().reps {
                let cw = exterior_centralizer(g, sq, x)?.order() as u64;
                let c = g.centralizer(x).order() as u64;
                sum = sum + Rational::ratio(cw, c);
            }
            Ok(sum / Rational::from(n))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Le,
    Ge,
    Eq,
    /// `lhs` divides `rhs`.
    Divides,
    /// Holds flag carries an implication or structural check; `lhs`/`rhs`
    /// are the quantities it compares.
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Applicability {
    Applies,
    /// Evaluated anyway (non-p-group, smallest prime used) but not claimed.
    OutsideHypotheses,
    /// Hypotheses fail; the record is informational only.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremRecord {
    pub name: String,
    pub relation: Relation,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub applicability: Applicability,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl TheoremRecord {
    pub(crate) fn compare(
        name: &str,
        relation: Relation,
        lhs: Rational,
        rhs: Rational,
        applicability: Applicability,
    ) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Divides => {
                let (a, b) = (lhs.numer().clone(), rhs.numer().clone());
                lhs.denom().is_one() && rhs.denom().is_one() && !a.is_zero() && (b % a).is_zero()
            }
            Relation::Check => unreachable!("use TheoremRecord::check"),
        };
        TheoremRecord {
            name: name.into(),
            relation,
            lhs,
            rhs,
            holds,
            applicability,
            detail: None,
        }
    }

    pub(crate) fn check(
        name: &str,
        lhs: Rational,
        rhs: Rational,
        holds: bool,
        applicability: Applicability,
    ) -> Self {
        TheoremRecord {
            name: name.into(),
            relation: Relation::Check,
            lhs,
            rhs,
            holds,
            applicability,
            detail: None,
        }
    }

    pub(crate) fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// A claimed statement that fails.
    pub fn is_violation(&self) -> bool {
        !self.holds && self.applicability == Applicability::Applies
    }
}

/// `C(x)/Ĉ(x)` for one class representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerQuotient {
    pub rep: Elem,
    pub centralizer_order: usize,
    pub exterior_centralizer_order: usize,
    /// `None` when the quotient is not abelian.
    pub invariants: Option<AbelianInvariants>,
    pub normal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub label: String,
    pub order: usize,
    pub p: u64,
    pub p_group: bool,
    pub d: Rational,
    pub d_wedge: Rational,
    pub z_order: usize,
    pub z_wedge_order: usize,
    pub multiplier: AbelianInvariants,
    pub exterior_order: usize,
    pub derived_order: usize,
    /// Abelian invariants of `G/Ẑ` when that quotient is abelian.
    pub quotient_by_exterior_center: Option<AbelianInvariants>,
    pub centralizer_quotients: Vec<CentralizerQuotient>,
    /// Whether `{(x, y) : x ∧ y = 1}` is a subgroup of `G × G`; `None` when
    /// the set is too large to probe.
    pub pair_set_is_subgroup: Option<bool>,
    pub records: Vec<TheoremRecord>,
}

impl DegreeReport {
    pub fn violations(&self) -> impl Iterator<Item = &TheoremRecord> {
        self.records.iter().filter(|r| r.is_violation())
    }

    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn record(&self, name: &str) -> Option<&TheoremRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Index map from parent elements to the elements of a subgroup realized as
/// a group.
fn local_index(embedding: &[Elem]) -> HashMap<Elem, Elem> {
    embedding
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as Elem))
        .collect()
}

fn centralizer_quotient(
    g: &FiniteGroup,
    sq: &ExteriorSquare,
    x: Elem,
) -> Result<CentralizerQuotient> {
    let c = g.centralizer(x);
    let cw = exterior_centralizer(g, sq, x)?;
    let (cg, emb) = g.subgroup_as_group(&c)?;
    let idx = local_index(&emb);
    let local: Vec<Elem> = cw.members().iter().map(|a| idx[a]).collect();
    let sub = cg.subgroup_from_members(local)?;
    let normal = cg.is_normal(&sub);
    let invariants = if normal {
        let (q, _) = cg.quotient(&sub)?;
        match q.abelian_invariants() {
            Ok(inv) => Some(inv),
            Err(Error::NotAbelian(..)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(CentralizerQuotient {
        rep: x,
        centralizer_order: c.order(),
        exterior_centralizer_order: cw.order(),
        invariants,
        normal,
    })
}

fn pair_set_is_subgroup(g: &FiniteGroup, sq: &ExteriorSquare) -> Option<bool> {
    let pairs: Vec<(Elem, Elem)> = g
        .elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| sq.wedge_is_trivial(x, y))
        .collect();
    let m = pairs.len() as u64;
    if m * m > PAIR_PROBE_LIMIT {
        return None;
    }
    Some(pairs.iter().all(|&(a, b)| {
        pairs
            .iter()
            .all(|&(c, d)| sq.wedge_is_trivial(g.mul(a, c), g.mul(b, d)))
    }))
}

/// Degrees plus every finite-scale inequality record; `p` is the smallest
/// prime dividing `|G|`.
pub fn degree_report(g: &FiniteGroup) -> Result<DegreeReport> {
    let sq = exterior_square(g)?;
    degree_report_with(g, &sq)
}

pub fn degree_report_with(g: &FiniteGroup, sq: &ExteriorSquare) -> Result<DegreeReport> {
    let n = g.order();
    if n < 2 {
        return Err(Error::Invalid(
            "degree report needs a nontrivial group".into(),
        ));
    }
    let p = smallest_prime_factor(n as u64);
    let p_group = g.is_p_group();
    let scope = if p_group {
        Applicability::Applies
    } else {
        Applicability::OutsideHypotheses
    };
    let mu = |k: usize| Rational::ratio(k as u64, n as u64);
    let pr = Rational::from(p);

    let d = commutativity_degree(g);
    let d_wedge = exterior_degree_of(g, sq, DegreeMode::ClassSum)?;
    let d_brute = exterior_degree_of(g, sq, DegreeMode::BruteForce)?;
    let z = g.center();
    let zw = exterior_center(g, sq)?;
    let m_order = sq.multiplier.order();
    let multiplier = sq.multiplier_invariants.clone();
    let (g_zw, _) = g.quotient(&zw)?;
    let quotient_by_exterior_center = g_zw.abelian_invariants().ok();
    let mut records = Vec::new();

    records.push(TheoremRecord::compare(
        "Lemma l:3 class sum",
        Relation::Eq,
        d_wedge.clone(),
        d_brute.clone(),
        Applicability::Applies,
    ));

    // fundamental bounds
    let gap = mu(z.order()) - mu(zw.order());
    let upper = &d - &(&(&(pr.clone() - Rational::one()) / &pr) * &gap);
    records.push(TheoremRecord::compare(
        "Theorem fundamental upper",
        Relation::Le,
        d_wedge.clone(),
        upper,
        scope,
    ));
    let lower = mu(zw.order()) + (&d - &mu(zw.order())) / Rational::from(m_order as u64);
    records.push(TheoremRecord::compare(
        "Theorem fundamental lower",
        Relation::Ge,
        d_wedge.clone(),
        lower,
        scope,
    ));

    // unidegree
    records.push(TheoremRecord::compare(
        "Corollary unidegree",
        Relation::Le,
        d_wedge.clone(),
        d.clone(),
        scope,
    ));
    let equal = d_wedge == d;
    records.push(
        TheoremRecord::check(
            "Corollary unidegree equality",
            Rational::from(zw.order() as u64),
            Rational::from(z.order() as u64),
            !equal || zw == z,
            scope,
        )
        .with_detail(format!(
            "d_wedge {} d; |Ẑ| = {}, |Z| = {}",
            if equal { "=" } else { "<" },
            zw.order(),
            z.order()
        )),
    );

    // |Z/Ẑ| divides |M|^n
    if p_group {
        let rank = g_zw.min_generators()?;
        let lhs = Rational::from((z.order() / zw.order()) as u64);
        let rhs = Rational::from_int(num_bigint::BigInt::from(m_order).pow(rank as u32));
        records.push(
            TheoremRecord::compare(
                "Theorem t:1 divisibility",
                Relation::Divides,
                lhs,
                rhs,
                Applicability::Applies,
            )
            .with_detail(format!("n = rk(G/Ẑ) = {rank}, |M| = {m_order}")),
        );
    }

    // C(x)/Ĉ(x) for class representatives
    let reps = g.conjugacy_classes().reps;
    let quotients: Vec<CentralizerQuotient> = reps
        .iter()
        .map(|&x| centralizer_quotient(g, sq, x))
        .collect::<Result<_>>()?;
    let embeds = |q: &CentralizerQuotient| {
        q.invariants
            .as_ref()
            .is_some_and(|inv| inv.embeds_in(&multiplier))
    };
    let good = quotients.iter().filter(|q| embeds(q)).count();
    let bad: Vec<String> = quotients
        .iter()
        .filter(|q| !embeds(q))
        .map(|q| {
            format!(
                "{}: {}",
                q.rep,
                q.invariants
                    .as_ref()
                    .map_or("nonabelian".into(), |i| i.to_string())
            )
        })
        .collect();
    let mut rec = TheoremRecord::check(
        "Proposition p:1 embedding",
        Rational::from(good as u64),
        Rational::from(quotients.len() as u64),
        bad.is_empty(),
        scope,
    );
    if !bad.is_empty() {
        rec = rec.with_detail(format!("not embedding in {multiplier}: {}", bad.join("; ")));
    }
    records.push(rec);
    let proper = quotients
        .iter()
        .filter(|q| q.centralizer_order != q.exterior_centralizer_order)
        .count();
    records.push(
        TheoremRecord::check(
            "Corollary c:1",
            Rational::from(proper as u64),
            Rational::from(m_order as u64),
            proper == 0 || m_order > 1,
            scope,
        )
        .with_detail(format!(
            "{proper} representatives with C(x) ≠ Ĉ(x); |M| = {m_order}"
        )),
    );

    // bounds for abelian / nonabelian p-groups
    let abelian = g.is_abelian();
    let rank = g.abelian_invariants().map(|i| i.rank()).unwrap_or(0);
    let app_i = if p_group && abelian && rank > 1 {
        Applicability::Applies
    } else {
        Applicability::NotApplicable
    };
    let bound_i = Rational::new(p * p + p - 1, p * p * p);
    records.push(TheoremRecord::compare(
        "Corollary application (i)",
        Relation::Le,
        d_wedge.clone(),
        bound_i.clone(),
        app_i,
    ));
    let cp2 = quotient_by_exterior_center
        .as_ref()
        .is_some_and(|i| i.torsion == vec![p, p]);
    records.push(
        TheoremRecord::check(
            "Corollary application (i) equality",
            d_wedge.clone(),
            bound_i.clone(),
            (d_wedge == bound_i) == cp2,
            app_i,
        )
        .with_detail(format!(
            "G/Ẑ {}",
            quotient_by_exterior_center
                .as_ref()
                .map_or(format!("nonabelian of order {}", g_zw.order()), |i| i
                    .to_string())
        )),
    );
    let app_ii = if p_group && !abelian && zw != z {
        Applicability::Applies
    } else {
        Applicability::NotApplicable
    };
    records.push(TheoremRecord::compare(
        "Corollary application (ii)",
        Relation::Le,
        d_wedge.clone(),
        Rational::new(p * p * p + p - 1, p * p * p * p),
        app_ii,
    ));

    // structure
    let all_normal = quotients.iter().all(|q| q.normal);
    records.push(TheoremRecord::check(
        "Lemma l:2 (i)",
        Rational::from(quotients.iter().filter(|q| q.normal).count() as u64),
        Rational::from(quotients.len() as u64),
        all_normal,
        scope,
    ));
    let mut meet = g.whole();
    for x in g.elements() {
        meet = meet.intersection(&exterior_centralizer(g, sq, x)?);
    }
    records.push(TheoremRecord::check(
        "Lemma l:2 (ii)",
        Rational::from(zw.order() as u64),
        Rational::from(z.order() as u64),
        meet == zw && zw.is_subset_of(&z),
        scope,
    ));
    records.push(TheoremRecord::check(
        "Lemma l:5 (ii)",
        d_wedge.clone(),
        Rational::one(),
        d_wedge.is_one() == zw.is_whole(),
        scope,
    ));
    records.push(TheoremRecord::compare(
        "Exterior square order",
        Relation::Eq,
        Rational::from(sq.w.order() as u64),
        Rational::from((g.derived_subgroup().order() * m_order) as u64),
        Applicability::Applies,
    ));

    Ok(DegreeReport {
        label: g.label().to_string(),
        order: n,
        p,
        p_group,
        d,
        d_wedge,
        z_order: z.order(),
        z_wedge_order: zw.order(),
        multiplier,
        exterior_order: sq.w.order(),
        derived_order: g.derived_subgroup().order(),
        quotient_by_exterior_center,
        centralizer_quotients: quotients,
        pair_set_is_subgroup: pair_set_is_subgroup(g, sq),
        records,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientCheck {
    pub n_order: usize,
    pub n_generators: Vec<Elem>,
    pub d_wedge_quotient: Rational,
    pub inside_exterior_center: bool,
    /// `d^∧(G) ≤ d^∧(G/N)`.
    pub monotone: bool,
    /// `None` unless `N ⊆ Ẑ`.
    pub equality: Option<bool>,
    /// The image of every `Ĉ(x)` lies in `Ĉ(xN)`.
    pub image_inside: bool,
}

impl QuotientCheck {
    pub fn holds(&self) -> bool {
        self.monotone && self.equality != Some(false) && self.image_inside
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub label: String,
    pub d_wedge: Rational,
    pub checks: Vec<QuotientCheck>,
}

impl QuotientReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(QuotientCheck::holds)
    }
}

/// Check `d^∧(G) ≤ d^∧(G/N)` for every normal `N` (equality when `N ⊆ Ẑ`)
/// and that `Ĉ(x)` maps into `Ĉ(xN)`.
pub fn verify_quotient_monotonicity(g: &FiniteGroup) -> Result<QuotientReport> {
    let sq = exterior_square(g)?;
    verify_quotient_monotonicity_with(g, &sq)
}

pub fn verify_quotient_monotonicity_with(
    g: &FiniteGroup,
    sq: &ExteriorSquare,
) -> Result<QuotientReport> {
    let normals = g.normal_subgroups(NORMAL_SUBGROUP_CAP)?;
    let d_wedge = exterior_degree_of(g, sq, DegreeMode::BruteForce)?;
    let zw = exterior_center(g, sq)?;
    let mut checks = Vec::with_capacity(normals.len());
    for nsub in normals {
        let (q, pi) = g.quotient(&nsub)?;
        let qsq = exterior_square(&q)?;
        let dq = exterior_degree_of(&q, &qsq, DegreeMode::BruteForce)?;
        let inside = nsub.is_subset_of(&zw);
        let image_inside = g.elements().all(|x| {
            g.elements().all(|a| {
                !sq.wedge_is_trivial(a, x) || qsq.wedge_is_trivial(pi.apply(a), pi.apply(x))
            })
        });
        checks.push(QuotientCheck {
            n_order: nsub.order(),
            n_generators: nsub.generators().to_vec(),
            monotone: d_wedge <= dq,
            equality: inside.then(|| d_wedge == dq),
            d_wedge_quotient: dq,
            inside_exterior_center: inside,
            image_inside,
        });
    }
    Ok(QuotientReport {
        label: g.label().to_string(),
        d_wedge,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub label: String,
    pub d_wedge_left: Rational,
    pub d_wedge_right: Rational,
    pub d_wedge_product: Rational,
    /// `d^∧(G × H) = d^∧(G) d^∧(H)`.
    pub multiplicative: bool,
    /// `Ĉ((a, b)) = Ĉ(a) × Ĉ(b)` for every `(a, b)`.
    pub centralizers_split: bool,
}

impl ProductReport {
    pub fn holds(&self) -> bool {
        self.multiplicative && self.centralizers_split
    }
}

/// Multiplicativity of `d^∧` over a direct product of coprime order.
pub fn verify_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<ProductReport> {
    let (m, n) = (g.order(), h.order());
    if m.gcd(&n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    let gh = direct_product(g, h, DEFAULT_ORDER_CAP)?;
    let (sg, sh, sgh) = (
        exterior_square(g)?,
        exterior_square(h)?,
        exterior_square(&gh)?,
    );
    let dg = exterior_degree_of(g, &sg, DegreeMode::ClassSum)?;
    let dh = exterior_degree_of(h, &sh, DegreeMode::ClassSum)?;
    let dgh = exterior_degree_of(&gh, &sgh, DegreeMode::ClassSum)?;
    let pair = |a: Elem, b: Elem| a * n as Elem + b;
    let split = g.elements().all(|a| {
        h.elements().all(|b| {
            g.elements().all(|c| {
                h.elements().all(|e| {
                    sgh.wedge_is_trivial(pair(c, e), pair(a, b))
                        == (sg.wedge_is_trivial(c, a) && sh.wedge_is_trivial(e, b))
                })
            })
        })
    });
    Ok(ProductReport {
        label: gh.label().to_string(),
        multiplicative: dgh == &dg * &dh,
        d_wedge_left: dg,
        d_wedge_right: dh,
        d_wedge_product: dgh,
        centralizers_split: split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::group_from_family;

    fn g(spec: &str) -> FiniteGroup {
        group_from_family(spec).unwrap()
    }

    #[test]
    fn commutativity_degrees() {
        assert_eq!(commutativity_degree(&g("abelian:[2,4]")), Rational::one());
        assert_eq!(commutativity_degree(&g("symmetric:3")), Rational::new(1, 2));
        assert_eq!(commutativity_degree(&g("dihedral:8")), Rational::new(5, 8));
        for spec in ["symmetric:4", "quaternion:16", "heisenberg:3"] {
            let h = g(spec);
            assert_eq!(
                commutativity_degree(&h),
                commutativity_degree_by_pairs(&h),
                "{spec}"
            );
        }
    }

    #[test]
    fn dihedral_report() {
        let r = degree_report(&g("dihedral:8")).unwrap();
        assert_eq!(r.d, Rational::new(5, 8));
        assert_eq!(r.d_wedge, Rational::new(7, 16));
        assert_eq!(
            r.record("Theorem fundamental upper").unwrap().rhs,
            Rational::new(9, 16)
        );
        assert_eq!(
            r.record("Theorem fundamental lower").unwrap().rhs,
            Rational::new(3, 8)
        );
        assert_eq!(r.z_wedge_order, 1);
        assert!(r.all_hold(), "{:?}", r.violations().collect::<Vec<_>>());
    }

    #[test]
    fn dihedral_exterior_centralizer_of_r_squared() {
        let h = g("dihedral:8");
        let sq = exterior_square(&h).unwrap();
        let z = h.center();
        let r2 = *z.members().iter().find(|&&x| x != h.identity()).unwrap();
        let c = exterior_centralizer(&h, &sq, r2).unwrap();
        assert_eq!(c.order(), 4);
        assert!(
            h.generated(&[c.generators()[0]]).order() == 4,
            "cyclic of order 4"
        );
        assert!(exterior_centralizer(&h, &sq, h.identity())
            .unwrap()
            .is_whole());
    }

    #[test]
    fn quaternion_equality_branch() {
        let h = g("quaternion:8");
        let sq = exterior_square(&h).unwrap();
        for x in h.elements() {
            assert_eq!(exterior_centralizer(&h, &sq, x).unwrap(), h.centralizer(x));
        }
        let r = degree_report_with(&h, &sq).unwrap();
        assert_eq!(r.d_wedge, Rational::new(5, 8));
        assert_eq!(r.d, r.d_wedge);
        assert_eq!((r.z_order, r.z_wedge_order), (2, 2));
        assert!(r.all_hold());
    }

    #[test]
    fn klein_four_equality_case() {
        let r = degree_report(&g("abelian:[2,2]")).unwrap();
        assert_eq!(r.d_wedge, Rational::new(5, 8));
        assert_eq!(r.z_wedge_order, 1);
        assert_eq!(
            r.quotient_by_exterior_center.as_ref().unwrap().torsion,
            vec![2, 2]
        );
        let eq = r.record("Corollary application (i) equality").unwrap();
        assert_eq!(eq.applicability, Applicability::Applies);
        assert!(eq.holds);
        assert_eq!(eq.lhs, eq.rhs);
        let r = degree_report(&g("abelian:[3,3]")).unwrap();
        assert_eq!(r.d_wedge, Rational::new(11, 27));
    }

    #[test]
    fn cyclic_groups_are_exterior_central() {
        for n in [2, 5, 12] {
            let h = g(&format!("cyclic:{n}"));
            let sq = exterior_square(&h).unwrap();
            assert!(exterior_center(&h, &sq).unwrap().is_whole());
            assert!(exterior_degree_of(&h, &sq, DegreeMode::ClassSum)
                .unwrap()
                .is_one());
        }
    }

    #[test]
    fn quotients() {
        let r = verify_quotient_monotonicity(&g("quaternion:8")).unwrap();
        assert!(r.holds());
        let center = r.checks.iter().find(|c| c.n_order == 2).unwrap();
        assert_eq!(center.equality, Some(true));
        assert_eq!(center.d_wedge_quotient, Rational::new(5, 8));
        let whole = r.checks.last().unwrap();
        assert_eq!(whole.n_order, 8);
        assert!(whole.d_wedge_quotient.is_one());
        let r = verify_quotient_monotonicity(&g("dihedral:8")).unwrap();
        let c = r.checks.iter().find(|c| c.n_order == 2).unwrap();
        assert_eq!(
            (r.d_wedge.clone(), c.d_wedge_quotient.clone()),
            (Rational::new(7, 16), Rational::new(5, 8))
        );
        assert!(r.holds());
    }

    #[test]
    fn products() {
        let r = verify_product(&g("dihedral:8"), &g("cyclic:3")).unwrap();
        assert_eq!(r.d_wedge_product, Rational::new(7, 16));
        assert!(r.holds());
        let r = verify_product(&g("cyclic:4"), &g("cyclic:9")).unwrap();
        assert!(r.d_wedge_product.is_one());
        assert!(matches!(
            verify_product(&g("cyclic:4"), &g("cyclic:6")),
            Err(Error::NotCoprime(4, 6))
        ));
    }
}
