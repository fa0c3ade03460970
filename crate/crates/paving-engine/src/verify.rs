use std::collections::{BTreeMap, HashSet};

use ff_linalg::PrimeField;
use flag_engine::{enumerate_fixed_points, is_graded, satisfies, Budget, Constraint, FlagVariety};
use serde::Serialize;

use crate::stratum::{meets, stratum_of};
use crate::{MutationKind, PavingError, ReductionStep, StratumDescriptor, StratumKind};

/// A failed identity or membership check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: String,
    pub stratum: String,
    pub q: u64,
    pub check: String,
    pub detail: String,
}

/// Number of times a check ran and failed at one stratum and prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub node: String,
    pub stratum: String,
    pub q: u64,
    pub check: String,
    pub checked: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub stratum_points: u64,
    pub reduced_points: u64,
    pub violations: Vec<Violation>,
    pub audit: Vec<AuditRow>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Recorder<'a> {
    node: &'a str,
    stratum: String,
    q: u64,
    tallies: BTreeMap<&'static str, (u64, u64)>,
    violations: Vec<Violation>,
}

impl Recorder<'_> {
    fn check(&mut self, check: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.tallies.entry(check).or_default();
        t.0 += 1;
        if !ok {
            t.1 += 1;
            // One example per check is enough to locate the failure.
            if t.1 == 1 {
                self.violations.push(Violation {
                    node: self.node.to_string(),
                    stratum: self.stratum.clone(),
                    q: self.q,
                    check: check.to_string(),
                    detail: detail(),
                });
            }
        }
    }
}

fn unit(m: usize, a: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[a] = 1;
    v
}

/// Checks at one prime that Φ is a bijection from the stratum onto the reduced locus
/// with inverse Ψ, and that every stratum point contains the top vectors v^{ℓ_t} in
/// V_{p_t} with j_{p_t} below the earlier j_p.
#[allow(clippy::too_many_arguments)]
pub fn verify_reduction(
    node: &str,
    variety: &FlagVariety,
    constraints: &[Constraint],
    stratum: &StratumDescriptor,
    step: &ReductionStep,
    field: PrimeField,
    mutation: Option<&MutationKind>,
    budget: Budget,
) -> Result<VerificationReport, PavingError> {
    let r = variety.realization();
    let m = r.m();
    let mut rec = Recorder {
        node,
        stratum: stratum.kind.label(),
        q: field.q() as u64,
        tallies: BTreeMap::new(),
        violations: Vec::new(),
    };
    let mut cut: Vec<Constraint> = constraints.to_vec();
    cut.extend(stratum.kind.constraints());
    let points = enumerate_fixed_points(variety, field, &cut, budget)?;

    let reduced = match step.variety() {
        Ok(v) => Some(v),
        Err(e) => {
            rec.check("reduced_variety", false, || e.to_string());
            None
        }
    };
    let mut images = HashSet::new();
    for v in &points {
        let found = stratum_of(v, variety).map(|s| s.kind);
        rec.check("stratum_membership", found.as_ref() == Ok(&stratum.kind), || format!("point lies in {found:?}"));
        for t in &stratum.steps {
            let ok = t.block.is_some_and(|l| {
                let top = r.block(l).expect("label").top();
                v.subspaces()[t.p].contains_vector(&unit(m, top))
            });
            rec.check("claim_top_vector", ok, || format!("top vector of weight {} not in V_{}", t.j, t.p));
        }
        if let StratumKind::VectorJ { j } = &stratum.kind {
            for t in &stratum.steps {
                let ok = (1..t.p).all(|p| j[t.p - 1] < j[p - 1]);
                rec.check("claim_decreasing_j", ok, || format!("j_{} is not below the earlier j_p", t.p));
            }
        }
        let Some(reduced) = &reduced else { continue };
        match step.phi(v, mutation) {
            Err(e) => rec.check("phi_image", false, || e),
            Ok(w) => {
                let ok = is_graded(&w, step.realization())
                    && satisfies(reduced, &w).unwrap_or(false)
                    && meets(&w, step.realization(), &step.constraints);
                rec.check("phi_image", ok, || "Φ(V) is not a point of the reduced locus".into());
                let back = step.psi(&w);
                rec.check("psi_after_phi", back.as_ref() == Ok(v), || "Ψ(Φ(V)) ≠ V".into());
                rec.check("phi_injective", images.insert(w), || "two points share an image".into());
            }
        }
    }

    let mut reduced_points = 0;
    if let (Some(reduced), true) = (&reduced, step.feasible) {
        let targets = enumerate_fixed_points(reduced, field, &step.constraints, budget)?;
        reduced_points = targets.len() as u64;
        for w in &targets {
            match step.psi(w) {
                Err(e) => rec.check("psi_image", false, || e),
                Ok(v) => {
                    let ok = is_graded(&v, r)
                        && v.dims() == variety.shape().d
                        && satisfies(variety, &v).unwrap_or(false)
                        && meets(&v, r, &cut);
                    rec.check("psi_image", ok, || "Ψ(W) is not a point of the stratum".into());
                    let again = step.phi(&v, mutation);
                    rec.check("phi_after_psi", again.as_ref() == Ok(w), || "Φ(Ψ(W)) ≠ W".into());
                }
            }
        }
    }
    rec.check("bijection_count", points.len() as u64 == reduced_points, || {
        format!("{} stratum points against {} reduced points", points.len(), reduced_points)
    });
    let q = rec.q;
    let audit = rec
        .tallies
        .iter()
        .map(|(&check, &(checked, failed))| AuditRow {
            node: node.to_string(),
            stratum: rec.stratum.clone(),
            q,
            check: check.to_string(),
            checked,
            failed,
        })
        .collect();
    Ok(VerificationReport { stratum_points: points.len() as u64, reduced_points, violations: rec.violations, audit })
}
