use ff_linalg::EchelonSubspace;
use flag_engine::{ComponentPolicy, Constraint, FlagPoint, FlagVariety};
use ideal_combinatorics::FlagShape;
use nilpotent_core::{JordanDatum, NilpotentRealization};
use serde::Serialize;

use crate::{PavingError, StratumDescriptor};

/// Passage from a stratum to the isomorphic constrained graded locus on Ṽ, the span of
/// every basis vector except the two ends of block ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub removed_block: usize,
    /// Ambient coordinates of the top and bottom vectors of the removed block.
    pub removed_coords: [usize; 2],
    pub reduced_jordan: JordanDatum,
    /// d̃ before repeated dimensions are merged.
    pub raw_d: Vec<usize>,
    /// Indices removed from d̃ (and from the flag) by merging, in the order applied.
    pub dropped: Vec<usize>,
    pub shape: FlagShape,
    pub c: Vec<usize>,
    /// Conditions on the reduced flags: those of the stratum and of the parent node,
    /// transported through the reduction.
    pub constraints: Vec<Constraint>,
    /// False when a carried condition cannot hold after merging, so the reduced locus is empty.
    pub feasible: bool,
    /// Ψ adds the top vector of block ℓ to W_p for p ≥ this index.
    pub insert_from: usize,
    #[serde(skip)]
    realization: NilpotentRealization,
    #[serde(skip)]
    kept: Vec<usize>,
}

/// Deliberate corruptions of a reduction, used as negative controls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MutationKind {
    /// Adds `delta` to d̃_index before merging.
    ShiftReducedDim { index: usize, delta: i64 },
    /// Φ keeps V_index instead of V_index ∩ Ṽ.
    SkipIntersection { index: usize },
}

enum Transported {
    Keep(Constraint),
    Drop,
    Infeasible,
}

/// A condition on V in terms of Φ(V), where V_p ∩ E_{j_s} loses the top vector exactly at p_s.
fn transport(c: &Constraint, ps: usize, js: i64) -> Transported {
    match *c {
        Constraint::Grows { p, j } if p == ps && j == js => Transported::Drop,
        Constraint::StillBelow { p, j } if p == ps && js < j => Transported::Infeasible,
        Constraint::StillAbove { p, j } if p == ps && js > j => Transported::Infeasible,
        _ => Transported::Keep(c.clone()),
    }
}

fn at_level(c: &Constraint, p: usize) -> Constraint {
    match *c {
        Constraint::Grows { j, .. } => Constraint::Grows { p, j },
        Constraint::StillBelow { j, .. } => Constraint::StillBelow { p, j },
        Constraint::StillAbove { j, .. } => Constraint::StillAbove { p, j },
    }
}

/// Ideal sequence after merging W_i = W_{i−1}: the completion loses the indices i and
/// 2k − i, which coincide with i − 1 and 2k − 1 − i.
pub fn merge_c(c: &[usize], i: usize) -> Vec<usize> {
    let two_k = c.len();
    let nu = |x: usize| x - usize::from(x >= i) - usize::from(x >= two_k - i);
    let mut out = vec![usize::MAX; two_k - 2];
    for (p, &cp) in c.iter().enumerate() {
        let slot = &mut out[nu(p)];
        *slot = (*slot).min(nu(cp));
    }
    out
}

pub fn reduce(
    variety: &FlagVariety,
    constraints: &[Constraint],
    stratum: &StratumDescriptor,
    mutation: Option<&MutationKind>,
) -> Result<ReductionStep, PavingError> {
    let r = variety.realization();
    let shape = variety.shape();
    let step = stratum.last();
    let label = step.block.ok_or_else(|| {
        PavingError::ClaimViolation(format!(
            "no block of size ≥ 2 has top weight {} ({})",
            step.j,
            stratum.kind.label()
        ))
    })?;
    let block = r.block(label).expect("label from this realization");
    let removed_coords = [block.top(), block.bottom()];
    let reduced = r.remove_block_ends(label)?;
    let kept: Vec<usize> = (0..r.m()).filter(|c| !removed_coords.contains(c)).collect();
    let ps = step.p;

    let mut raw: Vec<i64> =
        shape.d.iter().enumerate().map(|(p, &dp)| if p >= ps { dp as i64 - 1 } else { dp as i64 }).collect();
    if let Some(MutationKind::ShiftReducedDim { index, delta }) = mutation {
        if let Some(x) = raw.get_mut(*index) {
            *x += delta;
        }
    }
    if raw.iter().any(|&x| x < 0) || raw.windows(2).any(|w| w[0] > w[1]) {
        return Err(PavingError::InvalidReduction(format!("reduced dimensions {raw:?} are not a flag")));
    }
    let raw_d: Vec<usize> = raw.iter().map(|&x| x as usize).collect();

    let mut feasible = true;
    let mut carried = Vec::new();
    for c in constraints.iter().chain(stratum.kind.constraints().iter()) {
        match transport(c, ps, step.j) {
            Transported::Keep(c) => {
                if !carried.contains(&c) {
                    carried.push(c)
                }
            }
            Transported::Drop => {}
            Transported::Infeasible => feasible = false,
        }
    }

    let mut d = raw_d.clone();
    let mut c = variety.c().to_vec();
    let mut dropped = Vec::new();
    while let Some(i) = (1..d.len()).find(|&i| d[i] == d[i - 1]) {
        d.remove(i);
        c = merge_c(&c, i);
        let mut next = Vec::new();
        for x in carried {
            let p = x.level();
            if p == i {
                if matches!(x, Constraint::Grows { .. }) {
                    feasible = false;
                }
            } else if p > i {
                next.push(at_level(&x, p - 1));
            } else {
                next.push(x);
            }
        }
        carried = next;
        dropped.push(i);
    }
    carried.sort();
    let reduced_shape = FlagShape::new(shape.form, reduced.m(), d)
        .map_err(|e| PavingError::InvalidReduction(format!("reduced shape: {e}")))?;
    Ok(ReductionStep {
        removed_block: label,
        removed_coords,
        reduced_jordan: reduced.jordan(),
        raw_d,
        dropped,
        shape: reduced_shape,
        c,
        constraints: carried,
        feasible,
        insert_from: ps,
        realization: reduced,
        kept,
    })
}

impl ReductionStep {
    pub fn realization(&self) -> &NilpotentRealization {
        &self.realization
    }

    pub fn variety(&self) -> Result<FlagVariety, PavingError> {
        FlagVariety::new(self.realization.clone(), self.shape.clone(), self.c.clone(), ComponentPolicy::Both)
            .map_err(|e| PavingError::InvalidReduction(format!("reduced variety: {e}")))
    }

    fn top_vector(&self, m: usize) -> Vec<u32> {
        let mut v = vec![0; m];
        v[self.removed_coords[0]] = 1;
        v
    }

    /// Φ: V_p ↦ V_p ∩ Ṽ in the coordinates of Ṽ, with merged indices removed.
    /// Errors name the first index at which the image is not a flag of the reduced shape.
    pub fn phi(&self, flag: &FlagPoint, mutation: Option<&MutationKind>) -> Result<FlagPoint, String> {
        let field = flag.field();
        let m = self.kept.len() + 2;
        let tilde = EchelonSubspace::coordinate(m, &self.kept, field);
        let mut out = Vec::new();
        for (p, v) in flag.subspaces().iter().enumerate() {
            let skip = matches!(mutation, Some(MutationKind::SkipIntersection { index }) if *index == p);
            let x = if skip { v.clone() } else { v.intersect(&tilde).expect("same ambient") };
            if !tilde.contains(&x) {
                return Err(format!("image of V_{p} is not inside the reduced space"));
            }
            let rows: Vec<Vec<u32>> =
                x.basis().to_rows().into_iter().map(|row| self.kept.iter().map(|&c| row[c]).collect()).collect();
            let w = EchelonSubspace::span_vectors(self.kept.len(), &rows, field).expect("consistent lengths");
            if w.dim() != self.raw_d[p] {
                return Err(format!("image of V_{p} has dimension {} instead of {}", w.dim(), self.raw_d[p]));
            }
            out.push(w);
        }
        for &i in &self.dropped {
            out.remove(i);
        }
        FlagPoint::new(out).map_err(|e| e.to_string())
    }

    /// Ψ: reinserts merged indices, embeds in V and adds the top vector of block ℓ from
    /// index `insert_from` on.
    pub fn psi(&self, flag: &FlagPoint) -> Result<FlagPoint, String> {
        let field = flag.field();
        let m = self.kept.len() + 2;
        let mut spaces = flag.subspaces().to_vec();
        for &i in self.dropped.iter().rev() {
            let copy = spaces[i - 1].clone();
            spaces.insert(i, copy);
        }
        let top = self.top_vector(m);
        let out: Vec<EchelonSubspace> = spaces
            .iter()
            .enumerate()
            .map(|(p, w)| {
                let mut rows: Vec<Vec<u32>> = w
                    .basis()
                    .to_rows()
                    .into_iter()
                    .map(|row| {
                        let mut v = vec![0; m];
                        for (x, &c) in row.iter().zip(&self.kept) {
                            v[c] = *x;
                        }
                        v
                    })
                    .collect();
                if p >= self.insert_from {
                    rows.push(top.clone());
                }
                EchelonSubspace::span_vectors(m, &rows, field).expect("consistent lengths")
            })
            .collect();
        FlagPoint::new(out).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_first_index_matches_dropping_c1() {
        // (c_0, c_2 − 1, …, c_{2k−2} − 1) when c_1 = 1.
        let c = vec![0, 1, 1, 2, 4, 5];
        assert_eq!(merge_c(&c, 1), vec![0, 0, 1, 3]);
        assert_eq!(merge_c(&[0, 1, 2, 3], 1), vec![0, 1]);
    }

    #[test]
    fn merging_an_inner_index() {
        // k = 3, merge W_2 = W_1: indices 2 and 4 disappear.
        let c = vec![0, 0, 1, 2, 3, 4];
        assert_eq!(merge_c(&c, 2), vec![0, 0, 1, 2]);
    }
}
