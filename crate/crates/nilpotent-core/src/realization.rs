use ff_linalg::{BilinearForm, LinalgError, Matrix, PrimeField};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::{validate_jordan, Admissibility, FormKind, JordanDatum, NilpotentError};

/// One Jordan block of e. `coords[t]` is the coordinate of the basis vector of
/// weight `size - 1 - 2t`, so coordinates run from the top of the block down.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub label: usize,
    pub size: usize,
    pub coords: Vec<usize>,
}

impl Block {
    pub fn top_weight(&self) -> i64 {
        self.size as i64 - 1
    }

    pub fn top(&self) -> usize {
        self.coords[0]
    }

    pub fn bottom(&self) -> usize {
        self.coords[self.size - 1]
    }
}

/// Dimensions of the eigenspaces E_j of h.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub dims: BTreeMap<i64, usize>,
}

impl Grading {
    pub fn dim(&self, j: i64) -> usize {
        self.dims.get(&j).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.dims.iter().all(|(&j, &d)| self.dim(-j) == d)
    }
}

/// Dimensions of the weight spaces, read off the block sizes.
pub fn weight_dims(d: &JordanDatum) -> Grading {
    let mut dims = BTreeMap::new();
    for &mu in &d.parts {
        for t in 0..mu {
            *dims.entry(mu as i64 - 1 - 2 * t as i64).or_insert(0) += 1;
        }
    }
    Grading { dims }
}

/// Integer matrices of e, h and the form in the weight basis v_i^ℓ.
///
/// e sends v_i^ℓ to v_{i+2}^ℓ, h is diagonal with the weights, and v_i^ℓ pairs
/// only with v_{-i}^ℓ, or with v_{-i} of the twin block when ℓ has the parity
/// that must occur in pairs. Blocks may be trimmed by
/// [`NilpotentRealization::remove_block_ends`]; the Gram matrix then keeps the
/// restricted values rather than being renormalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NilpotentRealization {
    form: FormKind,
    blocks: Vec<Block>,
    weights: Vec<i64>,
    e: Vec<Vec<i64>>,
    gram: Option<Vec<Vec<i64>>>,
}

/// Pairing of the weight-i vector of a block of size `mu` with its weight −i partner.
fn pairing_sign(mu: usize, i: i64) -> i64 {
    let k = (mu as i64 - 1 - i) / 2;
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn build_realization(d: &JordanDatum) -> Result<NilpotentRealization, NilpotentError> {
    if let Admissibility::Invalid(reason) = validate_jordan(d.form, &d.parts)? {
        return Err(NilpotentError::Inadmissible(reason));
    }
    let m = d.m();
    let mut blocks = Vec::with_capacity(d.parts.len());
    let mut weights = Vec::with_capacity(m);
    let mut e = vec![vec![0i64; m]; m];
    let mut gram = vec![vec![0i64; m]; m];
    let mut offset = 0;
    for (label, &mu) in d.parts.iter().enumerate() {
        let coords: Vec<usize> = (offset..offset + mu).collect();
        for t in 0..mu {
            weights.push(mu as i64 - 1 - 2 * t as i64);
            if t > 0 {
                // e v_i = v_{i+2}; column = source coordinate.
                e[coords[t - 1]][coords[t]] = 1;
            }
        }
        blocks.push(Block { label, size: mu, coords });
        offset += mu;
    }
    // Blocks whose parity admits no invariant form on their own come in equal
    // pairs and are paired with each other instead.
    let eps = if d.form == FormKind::Symmetric { 1 } else { -1 };
    let self_paired = |mu: usize| (mu % 2 == 1) == (d.form == FormKind::Symmetric);
    let mut b = 0;
    while d.form.has_form() && b < blocks.len() {
        let mu = blocks[b].size;
        let twin = if self_paired(mu) { b } else { b + 1 };
        for t in 0..mu {
            let i = mu as i64 - 1 - 2 * t as i64;
            let (u, v) = (blocks[b].coords[t], blocks[twin].coords[mu - 1 - t]);
            gram[u][v] = pairing_sign(mu, i);
            gram[v][u] = eps * pairing_sign(mu, i);
        }
        b = twin + 1;
    }
    let gram = if d.form.has_form() { Some(gram) } else { None };
    Ok(NilpotentRealization { form: d.form, blocks, weights, e, gram })
}

fn to_matrix(rows: &[Vec<i64>], field: PrimeField) -> Matrix {
    if rows.is_empty() {
        return Matrix::zeros(0, 0);
    }
    Matrix::from_rows_i64(rows, field).expect("rectangular")
}

impl NilpotentRealization {
    pub fn form(&self) -> FormKind {
        self.form
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, label: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight_of(&self, coord: usize) -> i64 {
        self.weights[coord]
    }

    pub fn e(&self) -> &[Vec<i64>] {
        &self.e
    }

    pub fn h(&self) -> Vec<Vec<i64>> {
        let m = self.m();
        (0..m).map(|r| (0..m).map(|c| if r == c { self.weights[r] } else { 0 }).collect()).collect()
    }

    pub fn gram(&self) -> Option<&[Vec<i64>]> {
        self.gram.as_deref()
    }

    pub fn e_mod(&self, field: PrimeField) -> Matrix {
        to_matrix(&self.e, field)
    }

    pub fn h_mod(&self, field: PrimeField) -> Matrix {
        to_matrix(&self.h(), field)
    }

    pub fn gram_mod(&self, field: PrimeField) -> Option<Matrix> {
        self.gram.as_ref().map(|g| to_matrix(g, field))
    }

    pub fn form_mod(&self, field: PrimeField) -> Option<Result<BilinearForm, LinalgError>> {
        self.gram_mod(field).map(|g| BilinearForm::new(g, field))
    }

    /// Block sizes in decreasing order.
    pub fn jordan(&self) -> JordanDatum {
        let mut parts: Vec<usize> = self.blocks.iter().map(|b| b.size).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        JordanDatum { form: self.form, parts }
    }

    pub fn grading(&self) -> Grading {
        let mut dims = BTreeMap::new();
        for &w in &self.weights {
            *dims.entry(w).or_insert(0) += 1;
        }
        Grading { dims }
    }

    /// Weights that occur, in decreasing order.
    pub fn distinct_weights(&self) -> Vec<i64> {
        self.grading().dims.keys().rev().copied().collect()
    }

    /// Coordinates spanning E_j, increasing.
    pub fn coords_of_weight(&self, j: i64) -> Vec<usize> {
        (0..self.m()).filter(|&c| self.weights[c] == j).collect()
    }

    /// Blocks whose top weight is `j`.
    pub fn blocks_with_top(&self, j: i64) -> Vec<&Block> {
        self.blocks.iter().filter(|b| b.top_weight() == j).collect()
    }

    /// Restriction to the span of every basis vector except the top and bottom of
    /// the block `label`. A block of size one or two disappears.
    pub fn remove_block_ends(&self, label: usize) -> Result<NilpotentRealization, NilpotentError> {
        let target = self.block(label).ok_or(NilpotentError::UnknownBlock(label))?;
        let drop = [target.top(), target.bottom()];
        if let Some(g) = &self.gram {
            if g[drop[0]][drop[1]] == 0 {
                return Err(NilpotentError::PairedBlock(label));
            }
        }
        let kept: Vec<usize> = (0..self.m()).filter(|c| !drop.contains(c)).collect();
        let mut new_index = vec![usize::MAX; self.m()];
        for (n, &old) in kept.iter().enumerate() {
            new_index[old] = n;
        }
        let sub = |mat: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            kept.iter().map(|&r| kept.iter().map(|&c| mat[r][c]).collect()).collect()
        };
        let blocks = self
            .blocks
            .iter()
            .filter_map(|b| {
                let coords: Vec<usize> = b.coords.iter().filter(|c| !drop.contains(c)).map(|&c| new_index[c]).collect();
                (!coords.is_empty()).then_some(Block { label: b.label, size: coords.len(), coords })
            })
            .collect();
        Ok(NilpotentRealization {
            form: self.form,
            blocks,
            weights: kept.iter().map(|&c| self.weights[c]).collect(),
            e: sub(&self.e),
            gram: self.gram.as_ref().map(sub),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(form: FormKind, parts: &[usize]) -> JordanDatum {
        JordanDatum::new(form, parts.to_vec()).unwrap()
    }

    #[test]
    fn sl2_block() {
        let r = build_realization(&datum(FormKind::Symplectic, &[2])).unwrap();
        assert_eq!(r.e(), &[vec![0, 1], vec![0, 0]]);
        let g = r.gram().unwrap();
        assert_eq!(g[0][1], -g[1][0]);
        assert_ne!(g[0][1], 0);
    }

    #[test]
    fn symmetric_three() {
        let r = build_realization(&datum(FormKind::Symmetric, &[3])).unwrap();
        assert_eq!(r.weights(), &[2, 0, -2]);
        let g = r.gram().unwrap();
        assert_eq!((g[0][2], g[1][1], g[2][0]), (1, -1, 1));
    }

    #[test]
    fn weight_dim_examples() {
        let g = weight_dims(&datum(FormKind::Symplectic, &[4, 2]));
        assert_eq!(g.dims, BTreeMap::from([(-3, 1), (-1, 2), (1, 2), (3, 1)]));
        let g = weight_dims(&datum(FormKind::Linear, &[1, 1, 1]));
        assert_eq!(g.dims, BTreeMap::from([(0, 3)]));
        let g = weight_dims(&datum(FormKind::Symmetric, &[5, 3]));
        assert_eq!(g.dims, BTreeMap::from([(-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1)]));
    }

    #[test]
    fn trimming_keeps_restricted_gram() {
        let r = build_realization(&datum(FormKind::Symmetric, &[5, 3])).unwrap();
        let t = r.remove_block_ends(0).unwrap();
        assert_eq!(t.m(), 6);
        assert_eq!(t.blocks()[0].size, 3);
        assert_eq!(t.weights(), &[2, 0, -2, 2, 0, -2]);
        // Middle of the old size-5 block paired with sign −1 at weight 2, unlike a fresh block.
        assert_eq!(t.gram().unwrap()[0][2], -1);
        assert_eq!(t.jordan().parts, vec![3, 3]);
        let gone = build_realization(&datum(FormKind::Symplectic, &[4, 2])).unwrap().remove_block_ends(1).unwrap();
        assert_eq!(gone.blocks().len(), 1);
        assert_eq!(gone.blocks()[0].label, 0);
    }

    #[test]
    fn twin_blocks_pair_with_each_other() {
        let r = build_realization(&datum(FormKind::Symplectic, &[3, 3])).unwrap();
        let g = r.gram().unwrap();
        assert_eq!(g[0][2], 0);
        assert_eq!(g[0][5], 1);
        assert_eq!(g[5][0], -1);
        assert_eq!(r.remove_block_ends(0), Err(NilpotentError::PairedBlock(0)));
    }

    #[test]
    fn unknown_block() {
        let r = build_realization(&datum(FormKind::Linear, &[2])).unwrap();
        assert_eq!(r.remove_block_ends(3), Err(NilpotentError::UnknownBlock(3)));
    }
}
