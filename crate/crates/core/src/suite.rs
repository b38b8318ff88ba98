//! The full theorem suite over one group, a coprime product, or the corpus.

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{corpus_specs, COPRIME_PRODUCTS};
use crate::degrees::{
    commutativity_degree_by_pairs, degree_report_with, verify_product,
    verify_quotient_monotonicity_with, Applicability, DegreeReport, QuotientReport, Relation,
    TheoremRecord, NORMAL_SUBGROUP_CAP,
};
use crate::error::Result;
use crate::family::group_from_family;
use crate::group::FiniteGroup;
use crate::rational::Rational;
use crate::tensor::{check_brown_identities, exterior_square, BrownReport};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Random tuples for the identity check on groups above the exhaustive limit.
    pub samples: u64,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupVerification {
    pub report: DegreeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotients: Option<QuotientReport>,
    pub identities: BrownReport,
    /// Degree-report records followed by the quotient, identity and
    /// pair-count records.
    pub records: Vec<TheoremRecord>,
}

impl GroupVerification {
    pub fn label(&self) -> &str {
        &self.report.label
    }

    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| !r.is_violation())
    }
}

fn count(n: usize) -> Rational {
    Rational::from(n as u64)
}

pub fn verify_group(g: &FiniteGroup, opts: &SuiteOptions) -> Result<GroupVerification> {
    let sq = exterior_square(g)?;
    let report = degree_report_with(g, &sq)?;
    let scope = if report.p_group {
        Applicability::Applies
    } else {
        Applicability::OutsideHypotheses
    };
    let mut records = report.records.clone();
    records.push(TheoremRecord::compare(
        "Commutativity degree pair count",
        Relation::Eq,
        report.d.clone(),
        commutativity_degree_by_pairs(g),
        Applicability::Applies,
    ));
    let quotients = if g.order() <= NORMAL_SUBGROUP_CAP {
        let q = verify_quotient_monotonicity_with(g, &sq)?;
        let total = q.checks.len();
        let monotone = q.checks.iter().filter(|c| c.monotone).count();
        records.push(TheoremRecord::check(
            "Theorem qut",
            count(monotone),
            count(total),
            monotone == total,
            scope,
        ));
        let inside: Vec<_> = q.checks.iter().filter_map(|c| c.equality).collect();
        let equal = inside.iter().filter(|&&e| e).count();
        records.push(TheoremRecord::check(
            "Theorem qut equality",
            count(equal),
            count(inside.len()),
            equal == inside.len(),
            scope,
        ));
        let images = q.checks.iter().filter(|c| c.image_inside).count();
        records.push(TheoremRecord::check(
            "Lemma l:2 (iii)",
            count(images),
            count(total),
            images == total,
            scope,
        ));
        Some(q)
    } else {
        None
    };
    let identities = check_brown_identities(g, &sq, opts.samples, opts.seed);
    let mut rec = TheoremRecord::check(
        "Lemma l:1 identities",
        count(identities.violations.len()),
        Rational::zero(),
        identities.holds(),
        Applicability::Applies,
    )
    .with_detail(format!(
        "{} tuples ({}), forms {}",
        identities.tuples,
        if identities.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        },
        identities.forms.join("+")
    ));
    if let Some(v) = identities.violations.first() {
        rec = rec.with_detail(format!(
            "first violation {} ({}) at {:?}",
            v.rule, v.form, v.tuple
        ));
    }
    records.push(rec);
    Ok(GroupVerification {
        report,
        quotients,
        identities,
        records,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductVerification {
    pub label: String,
    pub records: Vec<TheoremRecord>,
}

pub fn verify_coprime_product(left: &str, right: &str) -> Result<ProductVerification> {
    let (g, h) = (group_from_family(left)?, group_from_family(right)?);
    let r = verify_product(&g, &h)?;
    let expected = &r.d_wedge_left * &r.d_wedge_right;
    let records = vec![
        TheoremRecord::compare(
            "Theorem product",
            Relation::Eq,
            r.d_wedge_product.clone(),
            expected,
            Applicability::Applies,
        )
        .with_detail(format!("{} * {}", r.d_wedge_left, r.d_wedge_right)),
        TheoremRecord::check(
            "Lemma l:2 (v)",
            count(g.order() * h.order()),
            count(g.order() * h.order()),
            r.centralizers_split,
            Applicability::Applies,
        ),
    ];
    Ok(ProductVerification {
        label: r.label,
        records,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusVerification {
    pub groups: Vec<GroupVerification>,
    pub products: Vec<ProductVerification>,
}

impl CorpusVerification {
    pub fn all_hold(&self) -> bool {
        self.groups.iter().all(GroupVerification::all_hold)
            && self
                .products
                .iter()
                .all(|p| p.records.iter().all(|r| !r.is_violation()))
    }

    /// `(group, record)` rows in corpus order, products last.
    pub fn rows(&self) -> impl Iterator<Item = (&str, &TheoremRecord)> {
        self.groups
            .iter()
            .flat_map(|g| g.records.iter().map(move |r| (g.label(), r)))
            .chain(
                self.products
                    .iter()
                    .flat_map(|p| p.records.iter().map(move |r| (p.label.as_str(), r))),
            )
    }
}

/// Run the suite on every corpus group, in parallel; results keep corpus order.
pub fn verify_corpus(opts: &SuiteOptions) -> Result<CorpusVerification> {
    let specs = corpus_specs();
    let groups = specs
        .par_iter()
        .map(|s| verify_group(&group_from_family(s)?, opts))
        .collect::<Result<Vec<_>>>()?;
    let products = COPRIME_PRODUCTS
        .par_iter()
        .map(|(a, b)| verify_coprime_product(a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorpusVerification { groups, products })
}
