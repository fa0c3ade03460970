use std::collections::{BTreeMap, BTreeSet};

use ff_linalg::PrimeField;
use flag_engine::{
    count_fixed_points, enumerate_fixed_points, fixed_degree_bound, interpolate, poincare_with, split_primes, Budget,
    ComponentPolicy, Constraint, CountMode, FlagError, FlagVariety, Holdout, PoincarePolynomial, VarietySpec,
};
use ideal_combinatorics::{dim_flag_variety, FlagShape};
use log::{debug, info};
use nilpotent_core::{is_distinguished, minimal_levi, JordanDatum};
use num::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::stratum::stratum_of;
use crate::verify::{verify_reduction, AuditRow, Violation};
use crate::{reduce, MutationKind, PavingError, ReductionStep, StratumDescriptor, StratumKind};

/// A corruption applied at one reduction edge, or at every edge when `edge` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub edge: Option<String>,
    pub kind: MutationKind,
}

#[derive(Clone, Debug)]
pub struct PavingOptions {
    pub budget: Budget,
    /// Primes at which strata are enumerated and Φ, Ψ and the Claims are checked pointwise.
    pub verify_primes: Vec<u64>,
    /// Sample primes for counts; by default D + 1 split primes for the degree bound D.
    pub primes: Option<Vec<u64>>,
    /// Extra prime for the holdout comparison; by default the next split prime.
    pub holdout: Option<u64>,
    pub mutation: Option<Mutation>,
}

impl Default for PavingOptions {
    fn default() -> Self {
        PavingOptions {
            budget: Budget::default(),
            verify_primes: vec![3, 5],
            primes: None,
            holdout: None,
            mutation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// c_1 = 1.
    SingleJ,
    /// c_1 = 0.
    VectorJ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Internal { branch: Branch, strata: Vec<StratumEntry> },
    EmptyStratum,
    BaseRank,
    RegularPoint,
    FallbackEnumeration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertNode {
    pub id: String,
    pub jordan: JordanDatum,
    pub shape: FlagShape,
    pub c: Vec<usize>,
    pub constraints: Vec<Constraint>,
    pub counts: BTreeMap<u64, u64>,
    /// Constant term first; for internal nodes the sum over the strata.
    pub polynomial: Vec<i64>,
    #[serde(flatten)]
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumEntry {
    pub stratum: StratumDescriptor,
    pub counts: BTreeMap<u64, u64>,
    pub reduction: Option<ReductionStep>,
    /// Stratum and reduced point numbers at each verification prime.
    pub verified: BTreeMap<u64, (u64, u64)>,
    pub child: CertNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PavingCertificate {
    pub primes: Vec<u64>,
    pub verify_primes: Vec<u64>,
    pub root: CertNode,
    /// Sum of the leaf polynomials, checked at the holdout prime.
    pub polynomial: PoincarePolynomial,
    /// Direct interpolation of graded counts of the whole variety.
    /// `None` when the counts do not interpolate to an integral polynomial.
    pub direct: Option<PoincarePolynomial>,
    pub violations: Vec<Violation>,
}

impl PavingCertificate {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every stratum with a reduction, in tree order; the child id names the edge.
    pub fn reductions(&self) -> Vec<&StratumEntry> {
        fn walk<'a>(node: &'a CertNode, out: &mut Vec<&'a StratumEntry>) {
            if let NodeKind::Internal { strata, .. } = &node.kind {
                for s in strata {
                    if s.reduction.is_some() {
                        out.push(s);
                    }
                    walk(&s.child, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn edges(&self) -> Vec<String> {
        self.reductions().iter().map(|s| s.child.id.clone()).collect()
    }

    pub fn leaves(&self) -> Vec<&CertNode> {
        let mut out = Vec::new();
        collect_leaves(&self.root, &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PavingOutcome {
    pub certificate: PavingCertificate,
    pub audit: Vec<AuditRow>,
}

struct Built {
    node: CertNode,
    violations: Vec<Violation>,
    audit: Vec<AuditRow>,
}

struct Paver<'a> {
    primes: Vec<u64>,
    options: &'a PavingOptions,
}

fn violation(node: &str, stratum: &str, q: u64, check: &str, detail: impl Into<String>) -> Violation {
    Violation {
        node: node.to_string(),
        stratum: stratum.to_string(),
        q,
        check: check.to_string(),
        detail: detail.into(),
    }
}

fn polynomial_of(counts: &BTreeMap<u64, u64>) -> Result<Vec<i64>, String> {
    let pts: Vec<(u64, u64)> = counts.iter().map(|(&q, &n)| (q, n)).collect();
    interpolate(&pts)
        .into_iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64().ok_or_else(|| c.to_string()) } else { Err(c.to_string()) })
        .collect()
}

fn add_polys(a: &mut Vec<i64>, b: &[i64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    while a.len() > 1 && a.last() == Some(&0) {
        a.pop();
    }
}

fn evaluate(poly: &[i64], q: u64) -> i128 {
    poly.iter().rev().fold(0i128, |acc, &c| acc * q as i128 + c as i128)
}

impl Paver<'_> {
    fn counts(&self, variety: &FlagVariety, constraints: &[Constraint]) -> Result<BTreeMap<u64, u64>, PavingError> {
        self.primes
            .iter()
            .map(|&q| Ok((q, count_fixed_points(variety, PrimeField::new(q)?, constraints, self.options.budget)?)))
            .collect()
    }

    fn mutation_at(&self, edge: &str) -> Option<&MutationKind> {
        self.options.mutation.as_ref().filter(|m| m.edge.as_deref().is_none_or(|e| e == edge)).map(|m| &m.kind)
    }

    fn leaf(
        &self,
        id: &str,
        variety: &FlagVariety,
        constraints: &[Constraint],
        counts: BTreeMap<u64, u64>,
        kind: NodeKind,
    ) -> Built {
        let mut violations = Vec::new();
        let polynomial = polynomial_of(&counts).unwrap_or_else(|c| {
            violations.push(violation(id, "", 0, "integral_polynomial", format!("coefficient {c}")));
            vec![0]
        });
        if kind == NodeKind::RegularPoint {
            for (&q, &n) in &counts {
                if n > 1 {
                    violations.push(violation(id, "", q, "regular_at_most_one", format!("{n} points")));
                }
            }
        }
        let r = variety.realization();
        Built {
            node: CertNode {
                id: id.to_string(),
                jordan: r.jordan(),
                shape: variety.shape().clone(),
                c: variety.c().to_vec(),
                constraints: constraints.to_vec(),
                counts,
                polynomial,
                kind,
            },
            violations,
            audit: Vec::new(),
        }
    }

    fn node(&self, id: &str, variety: &FlagVariety, constraints: &[Constraint]) -> Result<Built, PavingError> {
        let counts = self.counts(variety, constraints)?;
        let r = variety.realization();
        let jordan = r.jordan();
        let shape = variety.shape();
        debug!("node {id}: {:?} d={:?} c={:?} counts {:?}", jordan.parts, shape.d, variety.c(), counts);
        let kind = if jordan.is_regular() {
            Some(NodeKind::RegularPoint)
        } else if r.m() <= 2 {
            Some(NodeKind::BaseRank)
        } else if !is_distinguished(&jordan) || !shape.form.has_form() || shape.k() < 2 {
            Some(NodeKind::FallbackEnumeration)
        } else {
            None
        };
        if let Some(kind) = kind {
            return Ok(self.leaf(id, variety, constraints, counts, kind));
        }

        let c = variety.c();
        let k = shape.k();
        let branch = if c[1] == 1 { Branch::SingleJ } else { Branch::VectorJ };
        let mut kinds = BTreeSet::new();
        for &q in &self.options.verify_primes {
            for p in enumerate_fixed_points(variety, PrimeField::new(q)?, constraints, self.options.budget)? {
                kinds.insert(stratum_of(&p, variety)?.kind);
            }
        }
        if branch == Branch::SingleJ {
            for b in r.blocks().iter().filter(|b| b.size >= 2) {
                kinds.insert(StratumKind::SingleJ { j: b.top_weight() });
            }
        }
        let kinds: Vec<StratumKind> = kinds.into_iter().collect();
        let results = kinds
            .par_iter()
            .enumerate()
            .map(|(i, kind)| {
                let descriptor = StratumDescriptor::new(kind.clone(), c, k, r);
                self.stratum(&format!("{id}.{i}"), id, variety, constraints, descriptor)
            })
            .collect::<Result<Vec<_>, PavingError>>()?;

        let mut violations = Vec::new();
        let mut audit = Vec::new();
        let mut strata = Vec::new();
        let mut polynomial = vec![0];
        for (entry, v, a) in results {
            add_polys(&mut polynomial, &entry.child.polynomial);
            violations.extend(v);
            audit.extend(a);
            strata.push(entry);
        }
        for (&q, &n) in &counts {
            let sum: u64 = strata.iter().map(|s| s.counts[&q]).sum();
            if sum != n {
                violations.push(violation(id, "", q, "partition", format!("strata sum to {sum}, node has {n}")));
            }
            if evaluate(&polynomial, q) != n as i128 {
                violations.push(violation(id, "", q, "assembly", "sum of stratum polynomials misses the count"));
            }
        }
        Ok(Built {
            node: CertNode {
                id: id.to_string(),
                jordan,
                shape: shape.clone(),
                c: c.to_vec(),
                constraints: constraints.to_vec(),
                counts,
                polynomial,
                kind: NodeKind::Internal { branch, strata },
            },
            violations,
            audit,
        })
    }

    fn stratum(
        &self,
        edge: &str,
        parent: &str,
        variety: &FlagVariety,
        constraints: &[Constraint],
        descriptor: StratumDescriptor,
    ) -> Result<(StratumEntry, Vec<Violation>, Vec<AuditRow>), PavingError> {
        let label = descriptor.kind.label();
        let mut cut = constraints.to_vec();
        cut.extend(descriptor.kind.constraints());
        let counts = self.counts(variety, &cut)?;
        let mutation = self.mutation_at(edge);
        let mut violations = Vec::new();
        let mut audit = Vec::new();
        let mut verified = BTreeMap::new();

        if counts.values().all(|&n| n == 0) && mutation.is_none() {
            let built = self.leaf(edge, variety, &cut, counts.clone(), NodeKind::EmptyStratum);
            let reduction = reduce(variety, constraints, &descriptor, None).ok();
            let entry = StratumEntry { stratum: descriptor, counts, reduction, verified, child: built.node };
            return Ok((entry, built.violations, audit));
        }

        let step = match reduce(variety, constraints, &descriptor, mutation) {
            Ok(step) => step,
            Err(e @ (PavingError::ClaimViolation(_) | PavingError::InvalidReduction(_))) => {
                violations.push(violation(parent, &label, 0, "reduction", e.to_string()));
                let built = self.leaf(edge, variety, &cut, counts.clone(), NodeKind::FallbackEnumeration);
                violations.extend(built.violations);
                let entry = StratumEntry { stratum: descriptor, counts, reduction: None, verified, child: built.node };
                return Ok((entry, violations, audit));
            }
            Err(e) => return Err(e),
        };
        for &q in &self.options.verify_primes {
            let report = verify_reduction(
                parent,
                variety,
                constraints,
                &descriptor,
                &step,
                PrimeField::new(q)?,
                mutation,
                self.options.budget,
            )?;
            verified.insert(q, (report.stratum_points, report.reduced_points));
            violations.extend(report.violations);
            audit.extend(report.audit);
        }

        let child = match (step.feasible, step.variety()) {
            (true, Ok(reduced)) => {
                let built = self.node(edge, &reduced, &step.constraints)?;
                violations.extend(built.violations);
                audit.extend(built.audit);
                built.node
            }
            (false, Ok(reduced)) => {
                let zeros = self.primes.iter().map(|&q| (q, 0)).collect();
                self.leaf(edge, &reduced, &step.constraints, zeros, NodeKind::EmptyStratum).node
            }
            (_, Err(e)) => {
                violations.push(violation(parent, &label, 0, "reduced_variety", e.to_string()));
                let built = self.leaf(edge, variety, &cut, counts.clone(), NodeKind::FallbackEnumeration);
                built.node
            }
        };
        for (&q, &n) in &counts {
            if child.counts.get(&q) != Some(&n) {
                violations.push(violation(
                    parent,
                    &label,
                    q,
                    "bijection_count",
                    format!("stratum has {n} points, reduced locus {:?}", child.counts.get(&q)),
                ));
            }
        }
        let entry = StratumEntry { stratum: descriptor, counts, reduction: Some(step), verified, child };
        Ok((entry, violations, audit))
    }
}

/// Sample primes for a variety: D + 1 split primes, D the degree bound of its graded
/// locus, and the next split prime as holdout.
pub fn sample_primes(variety: &FlagVariety) -> (Vec<u64>, u64) {
    let r = variety.realization();
    let d = dim_flag_variety(variety.shape()).min(fixed_degree_bound(r));
    let mut primes: Vec<u64> = split_primes(r).take(d + 2).collect();
    let holdout = primes.pop().expect("infinitely many split primes");
    (primes, holdout)
}

/// Builds the stratification tree of the graded locus of a variety with distinguished e,
/// verifies every reduction, and assembles the count polynomial from the leaves.
pub fn pave_fixed_locus(spec: &VarietySpec, options: &PavingOptions) -> Result<PavingOutcome, PavingError> {
    if !is_distinguished(&spec.jordan) {
        let (gl, core) = minimal_levi(&spec.jordan);
        return Err(PavingError::NotDistinguished { parts: spec.jordan.parts.clone(), gl, core: core.parts });
    }
    if spec.component_policy != ComponentPolicy::Both {
        return Err(PavingError::Unsupported("paving covers both components of the Lagrangian flags".into()));
    }
    let variety = spec.variety()?;
    let (default_primes, default_holdout) = sample_primes(&variety);
    let primes = options.primes.clone().unwrap_or(default_primes);
    let holdout = options.holdout.unwrap_or(default_holdout);
    info!("paving {:?} d={:?} c={:?} at primes {primes:?}", spec.jordan.parts, spec.shape.d, spec.ideal);

    let paver = Paver { primes: primes.clone(), options };
    let built = paver.node("r", &variety, &[])?;
    let mut violations = built.violations;
    let root = built.node;

    let assembled = root.polynomial.clone();
    let direct = match poincare_with(&variety, CountMode::Fixed, &[], &primes, None, options.budget) {
        Ok(p) => {
            if assembled != p.coefficients {
                violations.push(violation(
                    "r",
                    "",
                    0,
                    "direct_match",
                    format!("{assembled:?} vs {:?}", p.coefficients),
                ));
            }
            Some(p)
        }
        Err(FlagError::NonIntegral(c)) => {
            violations.push(violation("r", "", 0, "direct_match", format!("direct interpolation has coefficient {c}")));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let count = count_fixed_points(&variety, PrimeField::new(holdout)?, &[], options.budget)?;
    let predicted = evaluate(&assembled, holdout);
    let ok = predicted == count as i128;
    if !ok {
        violations.push(violation("r", "", holdout, "holdout", format!("predicted {predicted}, counted {count}")));
    }
    let polynomial = PoincarePolynomial {
        coefficients: assembled,
        samples: root.counts.clone(),
        degree_bound: primes.len().saturating_sub(1),
        holdout: Some(Holdout { q: holdout, count, predicted, ok }),
    };
    Ok(PavingOutcome {
        certificate: PavingCertificate {
            primes,
            verify_primes: options.verify_primes.clone(),
            root,
            polynomial,
            direct,
            violations,
        },
        audit: built.audit,
    })
}

fn collect_leaves<'a>(node: &'a CertNode, out: &mut Vec<&'a CertNode>) {
    match &node.kind {
        NodeKind::Internal { strata, .. } => strata.iter().for_each(|s| collect_leaves(&s.child, out)),
        _ => out.push(node),
    }
}
