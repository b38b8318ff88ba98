//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use xdeg::corpus::{corpus, COPRIME_PRODUCTS};
use xdeg::degrees::{
    commutativity_degree_by_pairs, degree_report, exterior_center, exterior_degree,
    exterior_degree_of, DegreeMode,
};
use xdeg::family::group_from_family;
use xdeg::snf::chain_from_cyclic_factors;
use xdeg::suite::{verify_coprime_product, verify_corpus, CorpusVerification, SuiteOptions};
use xdeg::tensor::{
    abelian_exterior_oracle, check_brown_identities, exterior_square, tensor_square,
};
use xdeg::tower::{
    build_tower, check_limit, haar_measure, translation_chain, DegreeKind, HaarStatus, Tower,
    TowerFamily,
};
use xdeg::{Elem, FiniteGroup, Rational, Subgroup};

const CRITERION_1_LIMIT: Duration = Duration::from_secs(1);
const CRITERION_2_LIMIT: Duration = Duration::from_secs(5 * 60);
const CRITERION_8_LIMIT: Duration = Duration::from_secs(10 * 60);
const MIN_CORPUS: usize = 30;
const ORACLE_MAX_ORDER: usize = 32;
const EXHAUSTIVE_MAX_ORDER: usize = 8;
const IDENTITY_SAMPLES: u64 = 1000;
const IDENTITY_SEED: u64 = 0;
const QUOTIENT_MAX_ORDER: usize = 64;
const TOWER_MAX_ORDER: usize = 512;

fn tower_tol() -> Rational {
    Rational::new(1, 50)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fails(list: &[String]) -> String {
    if list.len() > 4 {
        format!("{}; ... ({} total)", list[..4].join("; "), list.len())
    } else {
        list.join("; ")
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (spec, p, expect) in [
        ("abelian:[2,2]", 2u64, Rational::new(5, 8)),
        ("abelian:[3,3]", 3, Rational::new(11, 27)),
    ] {
        let g = group_from_family(spec).unwrap();
        let bound = Rational::new(p * p + p - 1, p * p * p);
        let report = degree_report(&g).unwrap();
        let dw = exterior_degree(&g).unwrap();
        let cp2 = report
            .quotient_by_exterior_center
            .as_ref()
            .is_some_and(|q| q.torsion == vec![p, p]);
        let flagged = report
            .record("Corollary application (i) equality")
            .is_some_and(|r| r.holds);
        if dw != expect || bound != expect || !cp2 || !flagged {
            bad.push(format!(
                "{spec}: d_wedge {dw}, G/Ẑ {:?}",
                report.quotient_by_exterior_center
            ));
        }
    }
    let t = start.elapsed();
    let pass = bad.is_empty() && t < CRITERION_1_LIMIT;
    outcome(
        pass,
        format!(
            "5/8 and 11/27 exact, G/Ẑ = C_p x C_p; {t:.2?} {}",
            fails(&bad)
        ),
    )
}

fn criterion_2(v: &CorpusVerification, elapsed: Duration) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for g in v.groups.iter().filter(|g| g.report.p_group) {
        let r = &g.report;
        let n = r.order as u64;
        let p = Rational::from(r.p);
        let (mu_z, mu_zw) = (
            Rational::ratio(r.z_order as u64, n),
            Rational::ratio(r.z_wedge_order as u64, n),
        );
        let upper = &r.d - &(&(&(&p - &Rational::one()) / &p) * &(&mu_z - &mu_zw));
        let lower = &mu_zw + &(&(&r.d - &mu_zw) / &Rational::from(r.multiplier.order()));
        if r.d_wedge > upper || r.d_wedge < lower {
            bad.push(format!("{}: {lower} <= {} <= {upper}", r.label, r.d_wedge));
        }
        checked += 1;
    }
    let pass = bad.is_empty() && checked > 0 && elapsed < CRITERION_2_LIMIT;
    outcome(
        pass,
        format!(
            "{checked} p-groups, both bounds exact; corpus {elapsed:.2?} {}",
            fails(&bad)
        ),
    )
}

fn criterion_3(v: &CorpusVerification) -> Outcome {
    let mut bad = Vec::new();
    let mut equal = 0;
    for r in v.groups.iter().map(|g| &g.report) {
        if r.d_wedge > r.d {
            bad.push(format!("{}: {} > {}", r.label, r.d_wedge, r.d));
        }
        if r.d_wedge == r.d {
            equal += 1;
            if r.z_wedge_order != r.z_order {
                bad.push(format!(
                    "{}: equality with |Ẑ| = {} < |Z| = {}",
                    r.label, r.z_wedge_order, r.z_order
                ));
            }
        }
    }
    let n = v.groups.len();
    outcome(
        bad.is_empty() && n >= MIN_CORPUS,
        format!("{n} groups, {equal} with equality {}", fails(&bad)),
    )
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for g in corpus()
        .unwrap()
        .into_iter()
        .filter(FiniteGroup::is_p_group)
    {
        let sq = exterior_square(&g).unwrap();
        let zw = exterior_center(&g, &sq).unwrap();
        let (q, _) = g.quotient(&zw).unwrap();
        let n = q.min_generators().unwrap() as u32;
        let lhs = BigInt::from(g.center().order() / zw.order());
        let rhs = BigInt::from(sq.multiplier.order()).pow(n);
        if &rhs % &lhs != BigInt::from(0) {
            bad.push(format!("{}: {lhs} does not divide {rhs}", g.label()));
        }
        checked += 1;
    }
    outcome(
        bad.is_empty() && checked > 0,
        format!("{checked} p-groups {}", fails(&bad)),
    )
}

fn criterion_5(v: &CorpusVerification) -> Outcome {
    let mut bad = Vec::new();
    let mut reps = 0;
    let mut trivial_m = Vec::new();
    for r in v.groups.iter().map(|g| &g.report) {
        for q in &r.centralizer_quotients {
            reps += 1;
            if !q
                .invariants
                .as_ref()
                .is_some_and(|i| i.embeds_in(&r.multiplier))
            {
                bad.push(format!(
                    "{} rep {}: {:?} into {}",
                    r.label, q.rep, q.invariants, r.multiplier
                ));
            }
        }
        if r.multiplier.is_trivial() {
            trivial_m.push(r.label.as_str());
            if r.centralizer_quotients
                .iter()
                .any(|q| q.centralizer_order != q.exterior_centralizer_order)
            {
                bad.push(format!("{}: M trivial but C(x) != Ĉ(x)", r.label));
            }
        }
    }
    for must in ["quaternion:8", "cyclic:7"] {
        if !trivial_m.contains(&must) {
            bad.push(format!("{must}: multiplier not trivial"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{reps} representatives embed; {} groups with trivial M have C = Ĉ {}",
            trivial_m.len(),
            fails(&bad)
        ),
    )
}

fn criterion_6(v: &CorpusVerification) -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0;
    let mut witness = false;
    for g in v
        .groups
        .iter()
        .filter(|g| g.report.order <= QUOTIENT_MAX_ORDER)
    {
        let Some(q) = &g.quotients else {
            bad.push(format!("{}: no quotient data", g.label()));
            continue;
        };
        for c in &q.checks {
            checks += 1;
            if !c.monotone
                || c.equality == Some(false)
                || c.inside_exterior_center != c.equality.is_some()
            {
                bad.push(format!(
                    "{} / N of order {}: {} vs {}",
                    g.label(),
                    c.n_order,
                    c.d_wedge_quotient,
                    q.d_wedge
                ));
            }
            if g.label() == "quaternion:8"
                && c.n_order == 2
                && c.equality == Some(true)
                && c.d_wedge_quotient == Rational::new(5, 8)
            {
                witness = q.d_wedge == Rational::new(5, 8);
            }
        }
    }
    if !witness {
        bad.push("quaternion:8 / Z witness missing".into());
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checks} normal subgroups, Q8/Z gives 5/8 = 5/8 {}",
            fails(&bad)
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for (a, b) in COPRIME_PRODUCTS {
        let p = verify_coprime_product(a, b).unwrap();
        let (g, h) = (group_from_family(a).unwrap(), group_from_family(b).unwrap());
        let gh = group_from_family(&format!("{a} x {b}")).unwrap();
        let (x, y, xy) = (
            exterior_degree(&g).unwrap(),
            exterior_degree(&h).unwrap(),
            exterior_degree(&gh).unwrap(),
        );
        if xy != &x * &y || p.records.iter().any(|r| !r.holds) {
            bad.push(format!("{}: {xy} vs {x} * {y}", p.label));
        }
        shown.push(format!("{} = {xy}", p.label));
    }
    outcome(
        bad.is_empty(),
        format!("{} {}", shown.join(", "), fails(&bad)),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for r in [1u32, 2] {
        let family = TowerFamily::Dsemi { r };
        // levels 2.. have order 2^(level + r)
        let depth = (TOWER_MAX_ORDER.trailing_zeros() - r - 1) as usize;
        let tower = build_tower(&family, depth).unwrap();
        let claimed = Rational::new(1, 4u64.pow(r));
        let check = check_limit(&tower, DegreeKind::Exterior, &claimed, &tower_tol()).unwrap();
        let top = *check.estimate.orders.last().unwrap();
        shown.push(format!("r={r} to {top}: {}", check.verdict()));
        if !check.pass || !check.estimate.monotone || top != TOWER_MAX_ORDER {
            let seq: Vec<String> = check
                .estimate
                .sequence
                .iter()
                .map(|x| x.to_string())
                .collect();
            bad.push(format!(
                "r={r}: sequence {} monotone {}",
                seq.join(", "),
                check.estimate.monotone
            ));
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && t < CRITERION_8_LIMIT,
        format!("{}; {t:.2?} {}", shown.join("; "), fails(&bad)),
    )
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let groups = corpus().unwrap();
    let mut abelian = 0;
    for g in groups
        .iter()
        .filter(|g| g.is_abelian() && g.order() <= ORACLE_MAX_ORDER)
    {
        let oracle = abelian_exterior_oracle(g).unwrap();
        let t = tensor_square(g).unwrap();
        let tensor = t.t.abelian_invariants().unwrap().torsion;
        let sq = exterior_square(g).unwrap();
        let exterior = sq.w.abelian_invariants().unwrap().torsion;
        if tensor != chain_from_cyclic_factors(&oracle.tensor).unwrap()
            || exterior != chain_from_cyclic_factors(&oracle.exterior).unwrap()
        {
            bad.push(format!(
                "{}: {tensor:?}/{exterior:?} vs {:?}/{:?}",
                g.label(),
                oracle.tensor,
                oracle.exterior
            ));
        }
        abelian += 1;
    }
    for g in &groups {
        let sq = exterior_square(g).unwrap();
        if sq.w.order() as u64 != (g.derived_subgroup().order() * sq.multiplier.order()) as u64 {
            bad.push(format!("{}: |G∧G| = {}", g.label(), sq.w.order()));
        }
        let class_sum = exterior_degree_of(g, &sq, DegreeMode::ClassSum).unwrap();
        let pairs = exterior_degree_of(g, &sq, DegreeMode::BruteForce).unwrap();
        let direct = Rational::ratio(sq.trivial_pair_count(), (g.order() * g.order()) as u64);
        if class_sum != pairs || pairs != direct {
            bad.push(format!("{}: {class_sum} vs {pairs} vs {direct}", g.label()));
        }
        if xdeg::degrees::commutativity_degree(g) != commutativity_degree_by_pairs(g) {
            bad.push(format!("{}: d by classes vs pairs", g.label()));
        }
    }
    outcome(
        bad.is_empty() && abelian > 0,
        format!(
            "{abelian} abelian oracles, {} groups |W| = |G'||M| and class sum = pairs {}",
            groups.len(),
            fails(&bad)
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();
    let mut exhaustive = 0;
    let mut sampled = 0;
    for g in corpus().unwrap() {
        let sq = exterior_square(&g).unwrap();
        let b = check_brown_identities(&g, &sq, IDENTITY_SAMPLES, IDENTITY_SEED);
        if g.order() <= EXHAUSTIVE_MAX_ORDER {
            exhaustive += 1;
            if !b.exhaustive {
                bad.push(format!("{}: not exhaustive", g.label()));
            }
        } else {
            sampled += 1;
            if !b.exhaustive && b.tuples < IDENTITY_SAMPLES {
                bad.push(format!("{}: only {} tuples", g.label(), b.tuples));
            }
        }
        if !b.holds() {
            bad.push(format!("{}: {} violations", g.label(), b.violations.len()));
        }
    }
    outcome(bad.is_empty(), format!("{exhaustive} exhaustive, {sampled} with >= {IDENTITY_SAMPLES} tuples (seed {IDENTITY_SEED}), 0 violations {}", fails(&bad)))
}

/// Preimages of `h0 ≤ G_1` along the tower.
fn preimage_chain(tower: &Tower, h0: Subgroup) -> Vec<Subgroup> {
    let mut chain = vec![h0];
    for i in 1..tower.depth() {
        let members: Vec<Elem> = tower.levels[i]
            .elements()
            .filter(|&x| chain[i - 1].contains(tower.project(i - 1, x)))
            .collect();
        chain.push(tower.levels[i].subgroup_from_members(members).unwrap());
    }
    chain
}

fn is_inverse_p_power(x: &Rational, p: u64) -> bool {
    if x.is_zero() {
        return true;
    }
    if *x.numer() != BigInt::from(1) {
        return false;
    }
    let mut d = x.denom().clone();
    let p = BigInt::from(p);
    while &d % &p == BigInt::from(0) {
        d /= &p;
    }
    d == BigInt::from(1)
}

fn criterion_11() -> Outcome {
    let mut bad = Vec::new();
    let mut emitted = 0;
    for (spec, depth) in [
        ("Dsemi:r=1", 5),
        ("Dsemi:r=2", 4),
        ("Zp:p=2", 6),
        ("Zp:p=3", 4),
        ("Ct:p=3,t=1", 2),
    ] {
        let family: TowerFamily = spec.parse().unwrap();
        let p = family.prime().unwrap();
        let tower = build_tower(&family, depth).unwrap();
        let mut chains: Vec<(String, Vec<Subgroup>)> = vec![
            (
                "whole".into(),
                tower.levels.iter().map(FiniteGroup::whole).collect(),
            ),
            (
                "trivial".into(),
                tower
                    .levels
                    .iter()
                    .map(FiniteGroup::trivial_subgroup)
                    .collect(),
            ),
            (
                "center".into(),
                tower.levels.iter().map(FiniteGroup::center).collect(),
            ),
            (
                "derived".into(),
                tower
                    .levels
                    .iter()
                    .map(FiniteGroup::derived_subgroup)
                    .collect(),
            ),
        ];
        if let Ok(t) = translation_chain(&tower) {
            chains.push(("translation".into(), t));
        }
        let base = &tower.levels[0];
        for x in base.elements() {
            chains.push((
                format!("preimage <{x}>"),
                preimage_chain(&tower, base.generated(&[x])),
            ));
        }
        for (name, chain) in chains {
            match haar_measure(&tower, &chain) {
                Ok(h) => {
                    emitted += 1;
                    if !is_inverse_p_power(&h.value, p) {
                        bad.push(format!("{spec} {name}: {}", h.value));
                    }
                    if name == "whole"
                        && (h.value != Rational::one() || h.status != HaarStatus::Exact)
                    {
                        bad.push(format!("{spec} whole chain: {}", h.value));
                    }
                    if name.starts_with("preimage") && h.status != HaarStatus::Exact {
                        bad.push(format!("{spec} {name}: index not stable"));
                    }
                }
                Err(e) if name == "whole" || name.starts_with("preimage") => {
                    bad.push(format!("{spec} {name}: {e}"))
                }
                Err(_) => {}
            }
        }
    }
    outcome(
        bad.is_empty() && emitted > 0,
        format!(
            "{emitted} values, all 1/p^k or 0, whole chain 1 {}",
            fails(&bad)
        ),
    )
}

fn main() -> ExitCode {
    let opts = SuiteOptions {
        samples: IDENTITY_SAMPLES,
        seed: IDENTITY_SEED,
    };
    let c1 = criterion_1();
    let start = Instant::now();
    let v = verify_corpus(&opts).unwrap();
    let corpus_time = start.elapsed();
    let results = [
        ("exterior degree of C_p x C_p and the equality case", c1),
        (
            "fundamental upper and lower bounds on corpus p-groups",
            criterion_2(&v, corpus_time),
        ),
        ("d_wedge <= d, and equality forces Ẑ = Z", criterion_3(&v)),
        ("|Z/Ẑ| divides |M|^rk(G/Ẑ)", criterion_4()),
        (
            "C(x)/Ĉ(x) embeds in M(G); trivial M gives C = Ĉ",
            criterion_5(&v),
        ),
        (
            "quotient monotonicity and equality for N in Ẑ",
            criterion_6(&v),
        ),
        ("multiplicativity over coprime products", criterion_7()),
        (
            "Dsemi towers r = 1, 2: limit 1/4^r within 1/50",
            criterion_8(),
        ),
        (
            "abelian oracle, |G∧G| = |G'||M|, class sum = pairs",
            criterion_9(),
        ),
        ("crossed-pairing identity suite", criterion_10()),
        ("Haar values are 1/p^k or 0", criterion_11()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail.trim_end()
        );
        failed += usize::from(!o.pass);
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
