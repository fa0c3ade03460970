use std::collections::BTreeMap;

use flag_engine::{is_graded, Constraint, FlagPoint, FlagVariety};
use nilpotent_core::NilpotentRealization;
use serde::{Deserialize, Serialize};

use crate::PavingError;

/// Which L-stable piece of the graded locus a flag lies in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StratumKind {
    /// c_1 = 1: j is the highest weight with V_1 ∩ E_j ≠ 0.
    SingleJ { j: i64 },
    /// c_1 = 0: j_p is the lowest weight in which V_p grows over V_{p−1}, for p = 1..k−1.
    VectorJ { j: Vec<i64> },
}

impl StratumKind {
    /// The conditions cutting the stratum out of the graded flags.
    pub fn constraints(&self) -> Vec<Constraint> {
        match self {
            StratumKind::SingleJ { j } => {
                vec![Constraint::Grows { p: 1, j: *j }, Constraint::StillAbove { p: 1, j: *j }]
            }
            StratumKind::VectorJ { j } => j
                .iter()
                .enumerate()
                .flat_map(|(i, &jp)| {
                    [Constraint::Grows { p: i + 1, j: jp }, Constraint::StillBelow { p: i + 1, j: jp }]
                })
                .collect(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            StratumKind::SingleJ { j } => format!("j={j}"),
            StratumKind::VectorJ { j } => {
                format!("j=({})", j.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

/// One step p_t of the p-sequence, with the weight j_{p_t} and the block ℓ_t whose top
/// vector has that weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub p: usize,
    pub j: i64,
    /// Block label, or `None` when no block of size ≥ 2 has top weight j.
    pub block: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumDescriptor {
    pub kind: StratumKind,
    pub p_sequence: Vec<usize>,
    /// Threshold index of the c_1 = 0 branch; `None` for SingleJ.
    pub p0: Option<usize>,
    pub steps: Vec<Step>,
}

impl StratumDescriptor {
    pub fn new(kind: StratumKind, c: &[usize], k: usize, realization: &NilpotentRealization) -> Self {
        let block = |j: i64| {
            let tops: Vec<usize> =
                realization.blocks_with_top(j).into_iter().filter(|b| b.size >= 2).map(|b| b.label).collect();
            (tops.len() == 1).then(|| tops[0])
        };
        match &kind {
            StratumKind::SingleJ { j } => {
                let steps = vec![Step { p: 1, j: *j, block: block(*j) }];
                StratumDescriptor { kind, p_sequence: vec![1], p0: None, steps }
            }
            StratumKind::VectorJ { j } => {
                let (ps, p0) = p_sequence(j, c, k);
                let steps = ps.iter().map(|&p| Step { p, j: j[p - 1], block: block(j[p - 1]) }).collect();
                StratumDescriptor { kind, p_sequence: ps, p0: Some(p0), steps }
            }
        }
    }

    /// The last step p_s, which determines the reduction.
    pub fn last(&self) -> &Step {
        self.steps.last().expect("p-sequence is nonempty")
    }
}

/// p_1 = 1, then p_{t+1} is the smallest p > p_t with j_p < j_{p_t} and c_p < p_t.
/// Also returns p_0, the smallest p > p_s with c_p ≥ p_s, or k if there is none below k.
/// `j[p − 1]` holds j_p.
pub fn p_sequence(j: &[i64], c: &[usize], k: usize) -> (Vec<usize>, usize) {
    let mut ps = vec![1];
    loop {
        let pt = *ps.last().unwrap();
        match (pt + 1..k).find(|&p| j[p - 1] < j[pt - 1] && c[p] < pt) {
            Some(p) => ps.push(p),
            None => break,
        }
    }
    let ps_last = *ps.last().unwrap();
    let p0 = (ps_last + 1..k).find(|&p| c[p] >= ps_last).unwrap_or(k);
    (ps, p0)
}

/// dim(V_p ∩ E_j) for every p and every weight j.
pub fn weight_profile(flag: &FlagPoint, realization: &NilpotentRealization) -> Vec<BTreeMap<i64, usize>> {
    let weights = realization.distinct_weights();
    flag.subspaces()
        .iter()
        .map(|v| {
            weights.iter().map(|&j| (j, v.restrict_to_coordinates(&realization.coords_of_weight(j)).dim())).collect()
        })
        .collect()
}

/// Whether a graded flag meets every constraint.
pub fn meets(flag: &FlagPoint, realization: &NilpotentRealization, constraints: &[Constraint]) -> bool {
    let profile = weight_profile(flag, realization);
    constraints.iter().all(|c| {
        let p = c.level();
        if p == 0 || p >= profile.len() {
            return false;
        }
        let grows = |j: i64| profile[p][&j] > profile[p - 1][&j];
        match *c {
            Constraint::Grows { j, .. } => profile[p].contains_key(&j) && grows(j),
            Constraint::StillBelow { j, .. } => profile[p].keys().filter(|&&w| w < j).all(|&w| !grows(w)),
            Constraint::StillAbove { j, .. } => profile[p].keys().filter(|&&w| w > j).all(|&w| !grows(w)),
        }
    })
}

/// The stratum of a graded point of a form-type variety.
pub fn stratum_of(flag: &FlagPoint, variety: &FlagVariety) -> Result<StratumDescriptor, PavingError> {
    let r = variety.realization();
    let shape = variety.shape();
    if !shape.form.has_form() {
        return Err(PavingError::Unsupported("strata are defined for the form types only".into()));
    }
    let k = shape.k();
    if k < 2 {
        return Err(PavingError::Unsupported("strata need a flag with V_1".into()));
    }
    if flag.dims() != shape.d {
        return Err(PavingError::Flag(flag_engine::FlagError::ShapeMismatch(shape.d.clone())));
    }
    if !is_graded(flag, r) {
        return Err(PavingError::NotGraded);
    }
    let profile = weight_profile(flag, r);
    let c = variety.c();
    let kind = if c[1] == 1 {
        let j = profile[1].iter().filter(|(_, &n)| n > 0).map(|(&j, _)| j).max().expect("V_1 is nonzero");
        StratumKind::SingleJ { j }
    } else {
        let j = (1..k)
            .map(|p| {
                profile[p].iter().filter(|(j, &n)| n > profile[p - 1][j]).map(|(&j, _)| j).min().expect("V_p grows")
            })
            .collect();
        StratumKind::VectorJ { j }
    };
    Ok(StratumDescriptor::new(kind, c, k, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_sequence_examples() {
        assert_eq!(p_sequence(&[3, 1, 1], &[0, 0, 0, 1, 3, 4, 5, 6], 4), (vec![1, 2], 4));
        assert_eq!(p_sequence(&[1, 3, 5], &[0, 0, 0, 0, 3, 4, 5, 6], 4), (vec![1], 4));
        // k = 2: a single step, p_0 = 2.
        assert_eq!(p_sequence(&[3], &[0, 0, 2, 2], 2), (vec![1], 2));
    }

    #[test]
    fn p0_stops_at_first_large_c() {
        // j_2 ≥ j_1 keeps p_s = 1; c_2 = 1 ≥ p_s gives p_0 = 2.
        assert_eq!(p_sequence(&[1, 3, 1], &[0, 0, 1, 1, 2, 5, 5, 7], 4), (vec![1], 2));
    }
}
