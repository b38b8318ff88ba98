//! Towers of finite p-groups `G_1 <- G_2 <- ...` joined by coordinate
//! reduction, used as finite models of pro-p groups.
//!
//! Measures use the counting measure at each level; a subgroup chain whose
//! index stabilizes at `p^k` has measure `1/p^k`, one whose index keeps
//! growing is declared to have measure zero.

use std::fmt;

use serde::Serialize;

use crate::degrees::{commutativity_degree, exterior_centralizer, exterior_degree_of, DegreeMode};
use crate::error::{Error, Result};
use crate::family::CoordinateGroup;
use crate::group::{prime_power, Elem, FiniteGroup, GroupHom, Subgroup};
use crate::rational::Rational;
use crate::tensor::{exterior_square, ExteriorSquare};

/// Consecutive levels a Haar decision looks at.
pub const STABILITY_WINDOW: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerFamily {
    /// `(Z/p^n)^{d_t} ⋊ C_{p^t}`, levels from 1.
    Ct { p: u64, t: u32 },
    /// `Z/2^n ⋊ C_{2^r}` with inversion, levels from 2.
    Dsemi { r: u32 },
    /// `Z/p^n`, levels from 1.
    Zp { p: u64 },
    /// Levels and projections supplied by the caller.
    Custom,
}

impl TowerFamily {
    fn first_level(&self) -> u32 {
        match self {
            TowerFamily::Dsemi { .. } => 2,
            _ => 1,
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            TowerFamily::Ct { p, .. } | TowerFamily::Zp { p } => Some(*p),
            TowerFamily::Dsemi { .. } => Some(2),
            TowerFamily::Custom => None,
        }
    }

    fn coordinates(&self, level: u32) -> Result<CoordinateGroup> {
        match *self {
            TowerFamily::Ct { p, t } => {
                CoordinateGroup::ct(p, t, level).map_err(|reason| Error::BadFamilySpec {
                    spec: self.to_string(),
                    reason,
                })
            }
            TowerFamily::Dsemi { r } => Ok(CoordinateGroup::dsemi(r, level)),
            TowerFamily::Zp { p } => Ok(CoordinateGroup::zp(p, level)),
            TowerFamily::Custom => Err(Error::BadFamilySpec {
                spec: "custom".into(),
                reason: "custom towers are built with Tower::from_levels".into(),
            }),
        }
    }

    /// Family spec of one level, as accepted by `group_from_family`.
    pub fn level_spec(&self, level: u32) -> String {
        match self {
            TowerFamily::Ct { p, t } => format!("Ct:p={p},t={t},level={level}"),
            TowerFamily::Dsemi { r } => format!("Dsemi:r={r},level={level}"),
            TowerFamily::Zp { p } => format!("Zp:p={p},level={level}"),
            TowerFamily::Custom => format!("custom:{level}"),
        }
    }
}

impl fmt::Display for TowerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerFamily::Ct { p, t } => write!(f, "Ct:p={p},t={t}"),
            TowerFamily::Dsemi { r } => write!(f, "Dsemi:r={r}"),
            TowerFamily::Zp { p } => write!(f, "Zp:p={p}"),
            TowerFamily::Custom => write!(f, "custom"),
        }
    }
}

impl std::str::FromStr for TowerFamily {
    type Err = Error;

    /// `Ct:p=3,t=1`, `Dsemi:r=1` or `Zp:p=2` (`key=` prefixes optional).
    fn from_str(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let s = s.strip_prefix("family:").unwrap_or(s);
        let bad = |reason: &str| Error::BadFamilySpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = rest
            .split(',')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .collect();
        let value = |i: usize, key: &str| -> Result<u64> {
            let a = args.get(i).ok_or_else(|| bad(&format!("missing {key}")))?;
            let v = match a.split_once('=') {
                Some((k, v)) if k.trim() == key => v.trim(),
                Some(_) => return Err(bad(&format!("expected {key}="))),
                None => a,
            };
            v.parse()
                .map_err(|_| bad(&format!("{key} must be a positive integer")))
        };
        let prime = |p: u64| -> Result<u64> {
            match prime_power(p) {
                Some((q, 1)) if q == p => Ok(p),
                _ => Err(bad(&format!("{p} is not prime"))),
            }
        };
        let small = |v: u64| -> Result<u32> {
            u32::try_from(v)
                .ok()
                .filter(|&x| (1..=16).contains(&x))
                .ok_or_else(|| bad("parameter out of range"))
        };
        let (family, arity) = match name.trim().to_ascii_lowercase().as_str() {
            "ct" => (
                TowerFamily::Ct {
                    p: prime(value(0, "p")?)?,
                    t: small(value(1, "t")?)?,
                },
                2,
            ),
            "dsemi" => (
                TowerFamily::Dsemi {
                    r: small(value(0, "r")?)?,
                },
                1,
            ),
            "zp" => (
                TowerFamily::Zp {
                    p: prime(value(0, "p")?)?,
                },
                1,
            ),
            _ => return Err(bad("expected Ct, Dsemi or Zp")),
        };
        if args.len() != arity {
            return Err(bad(&format!("expected {arity} parameter(s)")));
        }
        Ok(family)
    }
}

/// Largest level order built by default.
pub fn default_max_level_order(p: u64) -> usize {
    match p {
        2 => 512,
        3 => 243,
        _ => crate::group::DEFAULT_ORDER_CAP,
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub p: u64,
    pub family: TowerFamily,
    /// Ascending: `levels[0]` is the smallest quotient.
    pub levels: Vec<FiniteGroup>,
    /// `projections[i]` maps `levels[i + 1]` onto `levels[i]`.
    pub projections: Vec<GroupHom>,
}

impl Tower {
    /// Validate and assemble a tower from explicit levels and projections.
    pub fn from_levels(
        p: u64,
        family: TowerFamily,
        levels: Vec<FiniteGroup>,
        projections: Vec<GroupHom>,
    ) -> Result<Self> {
        if levels.is_empty() || projections.len() + 1 != levels.len() {
            return Err(Error::Invalid(format!(
                "{} levels need {} projections, got {}",
                levels.len(),
                levels.len().saturating_sub(1),
                projections.len()
            )));
        }
        for (i, g) in levels.iter().enumerate() {
            if g.order() > 1 && g.prime_power().map(|(q, _)| q) != Some(p) {
                return Err(Error::NotPGroup(g.order()));
            }
            if i > 0 && g.order() <= levels[i - 1].order() {
                return Err(Error::Invalid(format!(
                    "level orders must increase (level {i})"
                )));
            }
        }
        for (i, pi) in projections.iter().enumerate() {
            let (upper, lower) = (&levels[i + 1], &levels[i]);
            if pi.images.len() != upper.order()
                || !pi.is_homomorphism(upper, lower)
                || !pi.is_surjective(lower)
            {
                return Err(Error::Invalid(format!(
                    "projection from level {} is not a surjective homomorphism",
                    i + 1
                )));
            }
        }
        Ok(Tower {
            p,
            family,
            levels,
            projections,
        })
    }

    pub fn orders(&self) -> Vec<usize> {
        self.levels.iter().map(FiniteGroup::order).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Image of a level-`i + 1` element in level `i`.
    pub fn project(&self, i: usize, x: Elem) -> Elem {
        self.projections[i].apply(x)
    }
}

/// `depth` consecutive levels of a family, capped at the default level order.
pub fn build_tower(family: &TowerFamily, depth: usize) -> Result<Tower> {
    let p = family
        .prime()
        .ok_or_else(|| Error::Invalid("custom towers have no builder".into()))?;
    build_tower_with_cap(family, depth, default_max_level_order(p))
}

pub fn build_tower_with_cap(family: &TowerFamily, depth: usize, max_order: usize) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::Invalid("tower depth must be positive".into()));
    }
    let p = family
        .prime()
        .ok_or_else(|| Error::Invalid("custom towers have no builder".into()))?;
    let first = family.first_level();
    let coords: Vec<CoordinateGroup> = (0..depth as u32)
        .map(|i| family.coordinates(first + i))
        .collect::<Result<_>>()?;
    if let Some(top) = coords.last() {
        if top.order() > max_order {
            return Err(Error::OrderCapExceeded { cap: max_order });
        }
    }
    let mut levels = Vec::with_capacity(depth);
    for (i, c) in coords.iter().enumerate() {
        levels.push(c.build()?.with_label(family.level_spec(first + i as u32)));
    }
    let projections = coords
        .windows(2)
        .map(|w| GroupHom {
            images: (0..w[1].order() as u32)
                .map(|x| w[1].project_to(&w[0], x))
                .collect(),
        })
        .collect();
    let tower = Tower::from_levels(p, family.clone(), levels, projections)?;
    for (i, pi) in tower.projections.iter().enumerate() {
        let kernel = pi.kernel(&tower.levels[i + 1], &tower.levels[i]).order() as u64;
        if prime_power(kernel).is_some_and(|(q, _)| q != p) {
            return Err(Error::Invalid(format!(
                "projection kernel at level {} is not a {p}-group",
                i + 1
            )));
        }
    }
    Ok(tower)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaarStatus {
    Exact,
    /// The index grew strictly over the last window of levels.
    DeclaredZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HaarValue {
    pub value: Rational,
    pub status: HaarStatus,
    /// `|G_n : H_n|` per level.
    pub indices: Vec<u64>,
}

/// Measure of the closed subgroup modelled by a compatible chain `H_n ≤ G_n`.
pub fn haar_measure(tower: &Tower, chain: &[Subgroup]) -> Result<HaarValue> {
    haar_measure_with_window(tower, chain, STABILITY_WINDOW)
}

pub fn haar_measure_with_window(
    tower: &Tower,
    chain: &[Subgroup],
    window: usize,
) -> Result<HaarValue> {
    if chain.len() != tower.depth() {
        return Err(Error::Invalid(format!(
            "chain has {} members for {} levels",
            chain.len(),
            tower.depth()
        )));
    }
    for (i, h) in chain.iter().enumerate() {
        if h.parent_order() != tower.levels[i].order() {
            return Err(Error::IncompatibleChain { level: i });
        }
        if i > 0
            && !h
                .members()
                .iter()
                .all(|&x| chain[i - 1].contains(tower.project(i - 1, x)))
        {
            return Err(Error::IncompatibleChain { level: i });
        }
    }
    let indices: Vec<u64> = chain.iter().map(|h| h.index() as u64).collect();
    let window = window.max(1);
    let tail = &indices[indices.len().saturating_sub(window)..];
    if tail.iter().all(|&k| k == tail[0]) {
        return Ok(HaarValue {
            value: Rational::ratio(1, tail[0]),
            status: HaarStatus::Exact,
            indices,
        });
    }
    if indices.len() >= window && tail.windows(2).all(|w| w[0] < w[1]) {
        return Ok(HaarValue {
            value: Rational::zero(),
            status: HaarStatus::DeclaredZero,
            indices,
        });
    }
    Err(Error::InconclusiveChain { indices })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    Commutativity,
    Exterior,
}

impl std::str::FromStr for DegreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "commutativity" | "d" => Ok(DegreeKind::Commutativity),
            "exterior" | "wedge" => Ok(DegreeKind::Exterior),
            _ => Err(Error::Invalid(format!("unknown degree kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitEstimate {
    pub orders: Vec<usize>,
    pub sequence: Vec<Rational>,
    /// Two-term extrapolation assuming `x_n ≈ L + c/|G_n|`.
    pub extrapolated: Option<Rational>,
    pub claimed: Option<Rational>,
    /// Sequence is nonincreasing.
    pub monotone: bool,
    /// Why the sequence stops early, if it does.
    pub truncated: Option<String>,
}

/// `L = (x_n |G_n| - x_{n-1} |G_{n-1}|) / (|G_n| - |G_{n-1}|)` from the last
/// two terms; a single term is returned as is.
pub fn richardson(orders: &[usize], sequence: &[Rational]) -> Option<Rational> {
    match sequence.len() {
        0 => None,
        1 => Some(sequence[0].clone()),
        k => {
            let (a, b) = (
                Rational::from(orders[k - 2] as u64),
                Rational::from(orders[k - 1] as u64),
            );
            Some((&(&sequence[k - 1] * &b) - &(&sequence[k - 2] * &a)) / (&b - &a))
        }
    }
}

fn level_degree(g: &FiniteGroup, kind: DegreeKind) -> Result<Rational> {
    match kind {
        DegreeKind::Commutativity => Ok(commutativity_degree(g)),
        DegreeKind::Exterior => {
            let sq = exterior_square(g)?;
            exterior_degree_of(g, &sq, DegreeMode::ClassSum)
        }
    }
}

/// Exact degrees level by level; a resource cap ends the sequence early.
pub fn tower_degree_sequence(tower: &Tower, kind: DegreeKind) -> Result<LimitEstimate> {
    let mut sequence = Vec::new();
    let mut truncated = None;
    for g in &tower.levels {
        match level_degree(g, kind) {
            Ok(x) => sequence.push(x),
            Err(e) if e.is_resource_cap() => {
                truncated = Some(format!("stopped at order {}: {e}", g.order()));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let orders: Vec<usize> = tower.orders()[..sequence.len()].to_vec();
    Ok(LimitEstimate {
        extrapolated: richardson(&orders, &sequence),
        monotone: sequence.windows(2).all(|w| w[1] <= w[0]),
        orders,
        sequence,
        claimed: None,
        truncated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitCheck {
    pub estimate: LimitEstimate,
    pub claimed: Rational,
    pub tol: Rational,
    /// `|extrapolated - claimed|`.
    pub gap: Rational,
    /// `|x_n - claimed|` per level.
    pub level_gaps: Vec<Rational>,
    pub pass: bool,
}

impl LimitCheck {
    /// The extrapolated limit is only ever consistent with the claim; the
    /// finite levels cannot establish equality.
    pub fn verdict(&self) -> String {
        let x = self
            .estimate
            .extrapolated
            .as_ref()
            .map_or("?".into(), |x| x.to_string());
        if self.pass {
            format!(
                "extrapolated limit {x} is consistent with {} (gap {} <= {})",
                self.claimed, self.gap, self.tol
            )
        } else {
            format!(
                "extrapolated limit {x} is not consistent with {} (gap {} > {})",
                self.claimed, self.gap, self.tol
            )
        }
    }
}

/// Compare the extrapolated limit with a claimed value; needs three levels.
pub fn check_limit(
    tower: &Tower,
    kind: DegreeKind,
    claimed: &Rational,
    tol: &Rational,
) -> Result<LimitCheck> {
    let mut estimate = tower_degree_sequence(tower, kind)?;
    if estimate.sequence.len() < 3 {
        return Err(Error::InsufficientLevels {
            needed: 3,
            have: estimate.sequence.len(),
        });
    }
    estimate.claimed = Some(claimed.clone());
    let extrapolated = estimate.extrapolated.clone().expect("three levels");
    let gap = (&extrapolated - claimed).abs();
    let level_gaps = estimate
        .sequence
        .iter()
        .map(|x| (x - claimed).abs())
        .collect();
    Ok(LimitCheck {
        pass: gap <= *tol,
        estimate,
        claimed: claimed.clone(),
        tol: tol.clone(),
        gap,
        level_gaps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCompatibility {
    pub upper_order: usize,
    pub lower_order: usize,
    /// `x ∧ y ↦ π(x) ∧ π(y)` extends to a homomorphism `W_{n+1} -> W_n`.
    pub wedge_map_well_defined: bool,
    pub surjective: bool,
    /// `π ∘ κ′ = κ′ ∘ (induced map)`.
    pub kappa_commutes: bool,
    /// At each of the two levels: `κ′(x ∧ y) = [x, y]`, and when the tensor
    /// square is present, the quotient of `x ⊗ y` is `x ∧ y` and `κ′ ∘ ε = κ`.
    pub diagram_commutes: bool,
}

impl LevelCompatibility {
    pub fn holds(&self) -> bool {
        self.wedge_map_well_defined
            && self.surjective
            && self.kappa_commutes
            && self.diagram_commutes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub orders: Vec<usize>,
    pub pairs: Vec<LevelCompatibility>,
}

impl CompatibilityReport {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(LevelCompatibility::holds)
    }
}

fn diagram_commutes(g: &FiniteGroup, sq: &ExteriorSquare) -> bool {
    let kappa_ok = g.elements().all(|x| {
        g.elements()
            .all(|y| sq.kappa_prime(sq.wedge(x, y)) == g.commutator(x, y))
    });
    let tensor_ok = sq.tensor.as_ref().is_none_or(|(t, eps)| {
        g.elements().all(|x| {
            g.elements()
                .all(|y| eps.apply(t.pair(x, y)) == sq.wedge(x, y))
        }) && t
            .t
            .elements()
            .all(|s| sq.kappa_prime(eps.apply(s)) == t.kappa(s))
    });
    kappa_ok && tensor_ok
}

/// The map `W_{n+1} -> W_n` induced by the projection, if it is well defined.
fn induced_wedge_map(
    upper: &FiniteGroup,
    upper_sq: &ExteriorSquare,
    lower_sq: &ExteriorSquare,
    pi: &GroupHom,
) -> Option<Vec<Elem>> {
    let w = &upper_sq.w;
    let unset = Elem::MAX;
    let mut image = vec![unset; w.order()];
    // one generator per distinct wedge value
    let mut gens: Vec<(Elem, Elem)> = Vec::new();
    let mut seen = vec![false; w.order()];
    for x in upper.elements() {
        for y in upper.elements() {
            let v = upper_sq.wedge(x, y);
            if !seen[v as usize] {
                seen[v as usize] = true;
                gens.push((v, lower_sq.wedge(pi.apply(x), pi.apply(y))));
            }
        }
    }
    image[w.identity() as usize] = lower_sq.w.identity();
    let mut queue = vec![w.identity()];
    while let Some(e) = queue.pop() {
        for &(g, gi) in &gens {
            let target = w.mul(e, g);
            let value = lower_sq.w.mul(image[e as usize], gi);
            if image[target as usize] == unset {
                image[target as usize] = value;
                queue.push(target);
            } else if image[target as usize] != value {
                return None;
            }
        }
    }
    if image.contains(&unset) {
        return None;
    }
    let pairs_ok = upper.elements().all(|x| {
        upper.elements().all(|y| {
            image[upper_sq.wedge(x, y) as usize] == lower_sq.wedge(pi.apply(x), pi.apply(y))
        })
    });
    pairs_ok.then_some(image)
}

/// Check that exterior squares of consecutive levels form an inverse system.
pub fn tower_compatibility(tower: &Tower) -> Result<CompatibilityReport> {
    let squares: Vec<ExteriorSquare> = tower
        .levels
        .iter()
        .map(exterior_square)
        .collect::<Result<_>>()?;
    let diagrams: Vec<bool> = tower
        .levels
        .iter()
        .zip(&squares)
        .map(|(g, sq)| diagram_commutes(g, sq))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..tower.projections.len() {
        let (upper, lower) = (&tower.levels[i + 1], &tower.levels[i]);
        let (us, ls) = (&squares[i + 1], &squares[i]);
        let pi = &tower.projections[i];
        let map = induced_wedge_map(upper, us, ls, pi);
        let (surjective, kappa_commutes) = match &map {
            Some(m) => {
                let mut hit = vec![false; ls.w.order()];
                for &v in m {
                    hit[v as usize] = true;
                }
                let kc =
                    us.w.elements()
                        .all(|v| pi.apply(us.kappa_prime(v)) == ls.kappa_prime(m[v as usize]));
                (hit.iter().all(|&h| h), kc)
            }
            None => (false, false),
        };
        pairs.push(LevelCompatibility {
            upper_order: upper.order(),
            lower_order: lower.order(),
            wedge_map_well_defined: map.is_some(),
            surjective,
            kappa_commutes,
            diagram_commutes: diagrams[i] && diagrams[i + 1],
        });
    }
    Ok(CompatibilityReport {
        orders: tower.orders(),
        pairs,
    })
}

/// Exterior-centralizer indices at one `Z/2^n ⋊ C_{2^r}` level, split into
/// the identity, the nontrivial powers of the translation `t`, and the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DsemiLevelProfile {
    pub order: usize,
    pub identity_index: u64,
    /// Distinct values of `|G : Ĉ(t^i)|`, `t^i ≠ 1`.
    pub translation_indices: Vec<u64>,
    /// Largest `μ(Ĉ(x)) = 1/|G : Ĉ(x)|` over elements outside `<t>`.
    pub max_outside_measure: Rational,
    /// Elements outside `<t>` whose exterior centralizer is everything.
    pub central_outside: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DsemiProfile {
    pub r: u32,
    pub levels: Vec<DsemiLevelProfile>,
    /// Every translation index equals `2^r`, nothing outside `<t>` is
    /// exterior central, and the largest outside measure strictly decreases.
    pub matches_decomposition: bool,
}

/// Exterior-centralizer profile of a `Dsemi` tower, compared against the
/// decomposition `μ(Ĉ(1)) = 1`, `μ(Ĉ(t^i)) = 1/2^r`, `μ(Ĉ(a^j t^i)) -> 0`.
pub fn dsemi_profile(tower: &Tower) -> Result<DsemiProfile> {
    let TowerFamily::Dsemi { r } = tower.family else {
        return Err(Error::Invalid(format!(
            "{} is not a Dsemi tower",
            tower.family
        )));
    };
    let first = tower.family.first_level();
    let mut levels = Vec::new();
    for (i, g) in tower.levels.iter().enumerate() {
        let coords = CoordinateGroup::dsemi(r, first + i as u32);
        let sq = exterior_square(g)?;
        let mut translation = Vec::new();
        let mut max_outside = Rational::zero();
        let mut central_outside = 0;
        let mut identity_index = 0;
        for x in g.elements() {
            let index = exterior_centralizer(g, &sq, x)?.index() as u64;
            let (_, k) = coords.decode(x);
            if x == g.identity() {
                identity_index = index;
            } else if k == 0 {
                if !translation.contains(&index) {
                    translation.push(index);
                }
            } else {
                let m = Rational::ratio(1, index);
                if m > max_outside {
                    max_outside = m;
                }
                if index == 1 {
                    central_outside += 1;
                }
            }
        }
        translation.sort_unstable();
        levels.push(DsemiLevelProfile {
            order: g.order(),
            identity_index,
            translation_indices: translation,
            max_outside_measure: max_outside,
            central_outside,
        });
    }
    let expected = 1u64 << r;
    let matches = levels.iter().all(|l| {
        l.identity_index == 1 && l.translation_indices == [expected] && l.central_outside == 0
    }) && levels
        .windows(2)
        .all(|w| w[1].max_outside_measure < w[0].max_outside_measure);
    Ok(DsemiProfile {
        r,
        levels,
        matches_decomposition: matches,
    })
}

/// The subgroup chain `<t>` of a `Dsemi` or `Ct` tower (the translation part),
/// or of any coordinate tower: all elements with trivial acting component.
pub fn translation_chain(tower: &Tower) -> Result<Vec<Subgroup>> {
    let first = tower.family.first_level();
    tower
        .levels
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let coords = tower.family.coordinates(first + i as u32)?;
            let members: Vec<Elem> = g.elements().filter(|&x| coords.decode(x).1 == 0).collect();
            g.subgroup_from_members(members)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(spec: &str, depth: usize) -> Tower {
        build_tower(&spec.parse().unwrap(), depth).unwrap()
    }

    #[test]
    fn parses_families() {
        assert_eq!(
            "Dsemi:r=1".parse::<TowerFamily>().unwrap(),
            TowerFamily::Dsemi { r: 1 }
        );
        assert_eq!(
            "Ct:p=3,t=1".parse::<TowerFamily>().unwrap(),
            TowerFamily::Ct { p: 3, t: 1 }
        );
        assert_eq!(
            "family:Zp:2".parse::<TowerFamily>().unwrap(),
            TowerFamily::Zp { p: 2 }
        );
        assert!("Zp:p=4".parse::<TowerFamily>().is_err());
        assert!("Dsemi:r=1,level=2".parse::<TowerFamily>().is_err());
        assert!("Zq:p=2".parse::<TowerFamily>().is_err());
    }

    #[test]
    fn tower_orders() {
        assert_eq!(tower("Dsemi:r=1", 4).orders(), vec![8, 16, 32, 64]);
        assert_eq!(tower("Zp:p=2", 3).orders(), vec![2, 4, 8]);
        assert_eq!(tower("Ct:p=3,t=1", 2).orders(), vec![27, 243]);
        assert!(matches!(
            build_tower(&"Ct:p=3,t=1".parse().unwrap(), 3),
            Err(Error::OrderCapExceeded { cap: 243 })
        ));
        assert!(matches!(
            build_tower(&"Dsemi:r=1".parse().unwrap(), 8),
            Err(Error::OrderCapExceeded { cap: 512 })
        ));
    }

    #[test]
    fn projections_reduce_coordinates() {
        let t = tower("Dsemi:r=1", 3);
        for (i, pi) in t.projections.iter().enumerate() {
            assert!(pi.is_homomorphism(&t.levels[i + 1], &t.levels[i]));
            assert_eq!(pi.kernel(&t.levels[i + 1], &t.levels[i]).order(), 2);
        }
    }

    #[test]
    fn haar_values() {
        let t = tower("Dsemi:r=1", 4);
        let whole: Vec<Subgroup> = t.levels.iter().map(FiniteGroup::whole).collect();
        let h = haar_measure(&t, &whole).unwrap();
        assert_eq!(
            (h.value.clone(), h.status),
            (Rational::one(), HaarStatus::Exact)
        );
        let trans = translation_chain(&t).unwrap();
        assert_eq!(haar_measure(&t, &trans).unwrap().value, Rational::new(1, 2));
        let trivial: Vec<Subgroup> = t.levels.iter().map(FiniteGroup::trivial_subgroup).collect();
        let h = haar_measure(&t, &trivial).unwrap();
        assert_eq!(
            (h.value, h.status),
            (Rational::zero(), HaarStatus::DeclaredZero)
        );
        let t2 = tower("Dsemi:r=2", 3);
        assert_eq!(
            haar_measure(&t2, &translation_chain(&t2).unwrap())
                .unwrap()
                .value,
            Rational::new(1, 4)
        );
    }

    #[test]
    fn haar_rejects_incompatible_and_undecided_chains() {
        let t = tower("Zp:p=2", 3);
        // Z/4 does not project into the trivial subgroup of Z/2
        let mut chain: Vec<Subgroup> = t.levels.iter().map(FiniteGroup::whole).collect();
        chain[0] = t.levels[0].trivial_subgroup();
        assert!(matches!(
            haar_measure(&t, &chain),
            Err(Error::IncompatibleChain { level: 1 })
        ));
        // indices 1, 2, 2: neither stable over the window nor growing
        let mut squares: Vec<Subgroup> = t
            .levels
            .iter()
            .map(|g| g.generated(&[2 % g.order() as Elem]))
            .collect();
        squares[0] = t.levels[0].whole();
        assert_eq!(
            squares.iter().map(Subgroup::index).collect::<Vec<_>>(),
            vec![1, 2, 2]
        );
        assert!(matches!(
            haar_measure(&t, &squares),
            Err(Error::InconclusiveChain { .. })
        ));
        let t = tower("Zp:p=2", 2);
        let trivial: Vec<Subgroup> = t.levels.iter().map(FiniteGroup::trivial_subgroup).collect();
        assert!(matches!(
            haar_measure(&t, &trivial),
            Err(Error::InconclusiveChain { .. })
        ));
    }

    #[test]
    fn richardson_rule() {
        let seq = [Rational::new(19, 64), Rational::new(35, 128)];
        assert_eq!(richardson(&[32, 64], &seq), Some(Rational::new(1, 4)));
        assert_eq!(richardson(&[2], &[Rational::one()]), Some(Rational::one()));
        assert_eq!(richardson(&[], &[]), None);
    }

    #[test]
    fn cyclic_tower_is_flat() {
        let t = tower("Zp:p=2", 3);
        let est = tower_degree_sequence(&t, DegreeKind::Exterior).unwrap();
        assert!(est.sequence.iter().all(Rational::is_one));
        assert_eq!(est.extrapolated, Some(Rational::one()));
        let c = check_limit(
            &t,
            DegreeKind::Exterior,
            &Rational::one(),
            &Rational::zero(),
        )
        .unwrap();
        assert!(c.pass);
        assert!(c.verdict().contains("consistent with"));
        let short = tower("Zp:p=2", 2);
        assert!(matches!(
            check_limit(
                &short,
                DegreeKind::Exterior,
                &Rational::one(),
                &Rational::zero()
            ),
            Err(Error::InsufficientLevels { needed: 3, have: 2 })
        ));
        let compat = tower_compatibility(&t).unwrap();
        assert!(compat.holds());
    }

    #[test]
    fn dsemi_sequences() {
        let t = tower("Dsemi:r=1", 3);
        let ext = tower_degree_sequence(&t, DegreeKind::Exterior).unwrap();
        assert_eq!(ext.sequence[0], Rational::new(7, 16));
        assert!(ext.monotone);
        let com = tower_degree_sequence(&t, DegreeKind::Commutativity).unwrap();
        assert_eq!(com.sequence[0], Rational::new(5, 8));
        assert!(com.monotone);
        let compat = tower_compatibility(&tower("Dsemi:r=1", 2)).unwrap();
        assert_eq!(compat.pairs.len(), 1);
        assert!(compat.holds(), "{compat:?}");
        let single = tower_compatibility(&tower("Ct:p=3,t=1", 1)).unwrap();
        assert!(single.pairs.is_empty() && single.holds());
    }

    #[test]
    fn dsemi_profile_r1() {
        let p = dsemi_profile(&tower("Dsemi:r=1", 4)).unwrap();
        assert!(p.matches_decomposition, "{p:?}");
    }

    #[test]
    fn custom_tower_validation() {
        let t = tower("Zp:p=2", 2);
        let levels = t.levels.clone();
        let bad = GroupHom { images: vec![0; 4] };
        assert!(Tower::from_levels(2, TowerFamily::Custom, levels.clone(), vec![bad]).is_err());
        assert!(Tower::from_levels(2, TowerFamily::Custom, levels, t.projections.clone()).is_ok());
    }
}
