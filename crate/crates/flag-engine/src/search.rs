use std::sync::atomic::{AtomicU64, Ordering};

use ff_linalg::{enumerate_between, BilinearForm, EchelonSubspace, Matrix, PrimeField};
use nilpotent_core::FormKind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::component::{reference_lagrangian, sign_against};
use crate::plan::{level_plans, LevelPlan};
use crate::{ComponentPolicy, FlagError, FlagPoint, FlagVariety};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Cap on the number of candidate subspaces examined by one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cap: DEFAULT_BUDGET }
    }
}

/// Restriction of graded flags to a stratum, in terms of the weight spaces E_j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// V_p ∩ E_j ≠ V_{p−1} ∩ E_j.
    Grows { p: usize, j: i64 },
    /// V_p ∩ E_{j'} = V_{p−1} ∩ E_{j'} for every j' < j.
    StillBelow { p: usize, j: i64 },
    /// V_p ∩ E_{j'} = V_{p−1} ∩ E_{j'} for every j' > j.
    StillAbove { p: usize, j: i64 },
}

impl Constraint {
    pub fn level(&self) -> usize {
        match self {
            Constraint::Grows { p, .. } | Constraint::StillBelow { p, .. } | Constraint::StillAbove { p, .. } => *p,
        }
    }

    fn holds(&self, growth: &[(i64, usize, usize)]) -> bool {
        match *self {
            Constraint::Grows { j, .. } => growth.iter().any(|&(w, before, after)| w == j && after > before),
            Constraint::StillBelow { j, .. } => growth.iter().all(|&(w, before, after)| w >= j || after == before),
            Constraint::StillAbove { j, .. } => growth.iter().all(|&(w, before, after)| w <= j || after == before),
        }
    }
}

/// Subspace chain and the perps of its members.
type ChainState = (Vec<EchelonSubspace>, Vec<EchelonSubspace>);

struct Search<'a> {
    variety: &'a FlagVariety,
    field: PrimeField,
    e: Matrix,
    form: Option<BilinearForm>,
    plans: Vec<LevelPlan>,
    /// Weight spaces in decreasing weight order.
    weights: Vec<(i64, EchelonSubspace)>,
    graded: bool,
    constraints: Vec<Vec<Constraint>>,
    /// Reference Lagrangian and the wanted sign, when one component is selected.
    component: Option<(Option<EchelonSubspace>, bool)>,
    cap: u64,
    spent: AtomicU64,
}

impl<'a> Search<'a> {
    fn new(
        variety: &'a FlagVariety,
        field: PrimeField,
        graded: bool,
        constraints: &[Constraint],
        budget: Budget,
    ) -> Result<Self, FlagError> {
        let r = variety.realization();
        let shape = variety.shape();
        if r.form() == FormKind::Symmetric && field.q() == 2 {
            return Err(FlagError::UnusableField(2, "symmetric forms need odd characteristic".into()));
        }
        let k = shape.k();
        let mut by_level = vec![Vec::new(); k];
        for c in constraints {
            let p = c.level();
            if p == 0 || p >= k {
                return Err(FlagError::Inconsistent(format!("constraint {c:?} outside levels 1..{}", k - 1)));
            }
            by_level[p].push(c.clone());
        }
        let m = r.m();
        let weights = r
            .distinct_weights()
            .into_iter()
            .map(|j| (j, EchelonSubspace::coordinate(m, &r.coords_of_weight(j), field)))
            .collect();
        let component = match variety.policy() {
            ComponentPolicy::Both => None,
            p => Some((reference_lagrangian(r, field)?, p == ComponentPolicy::Plus)),
        };
        Ok(Search {
            variety,
            field,
            e: r.e_mod(field),
            form: r.form_mod(field).transpose()?,
            plans: level_plans(shape, variety.c()),
            weights,
            graded,
            constraints: by_level,
            component,
            cap: budget.cap,
            spent: AtomicU64::new(0),
        })
    }

    fn k(&self) -> usize {
        self.variety.shape().k()
    }

    fn m(&self) -> usize {
        self.variety.shape().m
    }

    fn zero(&self) -> EchelonSubspace {
        EchelonSubspace::zero(self.m(), self.field)
    }

    fn whole(&self) -> EchelonSubspace {
        EchelonSubspace::full(self.m(), self.field)
    }

    fn charge(&self, amount: f64) -> Result<(), FlagError> {
        let amount = if amount.is_finite() && amount < u64::MAX as f64 { amount.ceil() as u64 } else { u64::MAX };
        let before = self.spent.fetch_add(amount.min(self.cap.saturating_add(1)), Ordering::Relaxed);
        if before.saturating_add(amount) > self.cap {
            return Err(FlagError::BudgetExceeded { cap: self.cap });
        }
        Ok(())
    }

    fn perp(&self, v: &EchelonSubspace) -> Result<EchelonSubspace, FlagError> {
        Ok(self.form.as_ref().expect("form types only").perp(v)?)
    }

    /// The zero subspace is a valid V_0 unless a condition forces e = 0.
    fn level_zero_ok(&self) -> bool {
        let p = &self.plans[0];
        let needs_zero = !p.image_of_perp.is_empty() || p.image_of_whole || p.stable_perp;
        !needs_zero || self.e.is_zero()
    }

    /// Lower and upper bounds for V_t, or `None` when no V_t fits.
    fn bounds(
        &self,
        t: usize,
        chain: &[EchelonSubspace],
        perps: &[EchelonSubspace],
    ) -> Result<Option<(EchelonSubspace, EchelonSubspace)>, FlagError> {
        let plan = &self.plans[t];
        let dt = self.variety.shape().d[t];
        let mut lower = chain[t - 1].clone();
        for &s in &plan.image_of_perp {
            lower = lower.sum(&perps[s].image_under(&self.e)?)?;
        }
        if plan.image_of_whole {
            lower = lower.sum(&self.whole().image_under(&self.e)?)?;
        }
        let mut upper = if self.form.is_some() { perps[t - 1].clone() } else { self.whole() };
        for &a in &plan.preimage_of {
            upper = upper.intersect(&chain[a].preimage_under(&self.e)?)?;
        }
        if plan.stable {
            // An e-stable X ⊇ lower contains e(lower), and e^n(X) ⊆ lower for n = dim X/lower.
            loop {
                let grown = lower.sum(&lower.image_under(&self.e)?)?;
                if grown.dim() == lower.dim() {
                    break;
                }
                lower = grown;
            }
            let mut pre = lower.clone();
            for _ in lower.dim()..dt {
                pre = pre.preimage_under(&self.e)?;
            }
            upper = upper.intersect(&pre)?;
        }
        if plan.stable_perp && upper.dim() >= dt {
            // X ⊆ upper gives X ⊇ e(X^⊥) ⊇ e(upper^⊥).
            lower = lower.sum(&self.perp(&upper)?.image_under(&self.e)?)?;
        }
        if lower.dim() > dt || upper.dim() < dt || !upper.contains(&lower) {
            return Ok(None);
        }
        Ok(Some((lower, upper)))
    }

    fn growth(&self, before: &EchelonSubspace, after: &EchelonSubspace) -> Vec<(i64, usize, usize)> {
        self.weights
            .iter()
            .map(|(j, ej)| {
                let b = before.intersect(ej).expect("same space").dim();
                let a = after.intersect(ej).expect("same space").dim();
                (*j, b, a)
            })
            .collect()
    }

    fn accept(&self, t: usize, x: &EchelonSubspace, prev: &EchelonSubspace) -> Result<bool, FlagError> {
        let plan = &self.plans[t];
        if let Some(form) = &self.form {
            if !self.graded && !form.is_isotropic(x) {
                return Ok(false);
            }
        }
        if plan.stable && !x.contains(&x.image_under(&self.e)?) {
            return Ok(false);
        }
        if plan.stable_perp && !x.contains(&self.perp(x)?.image_under(&self.e)?) {
            return Ok(false);
        }
        if !self.constraints[t].is_empty() {
            let growth = self.growth(prev, x);
            if !self.constraints[t].iter().all(|c| c.holds(&growth)) {
                return Ok(false);
            }
        }
        if t + 1 == self.k() {
            if let Some((reference, plus)) = &self.component {
                let Some(reference) = reference else { return Ok(false) };
                if sign_against(reference, x, self.m() / 2) != *plus {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn candidates(
        &self,
        t: usize,
        chain: &[EchelonSubspace],
        perps: &[EchelonSubspace],
    ) -> Result<Vec<EchelonSubspace>, FlagError> {
        let Some((lower, upper)) = self.bounds(t, chain, perps)? else {
            return Ok(Vec::new());
        };
        let dt = self.variety.shape().d[t];
        let prev = &chain[t - 1];
        let raw = if self.graded {
            let xs = self.graded_between(&lower, &upper, dt)?;
            self.charge(xs.len() as f64)?;
            xs
        } else {
            self.charge(gaussian_estimate(upper.dim() - lower.dim(), dt - lower.dim(), self.field.q()))?;
            enumerate_between(&lower, &upper, dt)?.collect()
        };
        let mut out = Vec::new();
        for x in raw {
            if self.accept(t, &x, prev)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Graded subspaces X with lower ⊆ X ⊆ upper and dim X = d, isotropic in the form
    /// types. Weights are chosen from the top down, so X ∩ E_{−j} is chosen inside the
    /// annihilator of X ∩ E_j.
    fn graded_between(
        &self,
        lower: &EchelonSubspace,
        upper: &EchelonSubspace,
        d: usize,
    ) -> Result<Vec<EchelonSubspace>, FlagError> {
        let mut lows = Vec::with_capacity(self.weights.len());
        let mut highs = Vec::with_capacity(self.weights.len());
        for (_, ej) in &self.weights {
            lows.push(lower.intersect(ej)?);
            highs.push(upper.intersect(ej)?);
        }
        let mut suffix_low = vec![0; self.weights.len() + 1];
        let mut suffix_high = vec![0; self.weights.len() + 1];
        for i in (0..self.weights.len()).rev() {
            suffix_low[i] = suffix_low[i + 1] + lows[i].dim();
            suffix_high[i] = suffix_high[i + 1] + highs[i].dim();
        }
        let mut out = Vec::new();
        let mut parts: Vec<EchelonSubspace> = Vec::with_capacity(self.weights.len());
        self.graded_rec(0, d, &lows, &highs, &suffix_low, &suffix_high, &mut parts, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn graded_rec(
        &self,
        i: usize,
        remaining: usize,
        lows: &[EchelonSubspace],
        highs: &[EchelonSubspace],
        suffix_low: &[usize],
        suffix_high: &[usize],
        parts: &mut Vec<EchelonSubspace>,
        out: &mut Vec<EchelonSubspace>,
    ) -> Result<(), FlagError> {
        if i == self.weights.len() {
            if remaining == 0 {
                let mut x = self.zero();
                for p in parts.iter() {
                    x = x.sum(p)?;
                }
                out.push(x);
            }
            return Ok(());
        }
        if remaining < suffix_low[i] || remaining > suffix_high[i] {
            return Ok(());
        }
        let j = self.weights[i].0;
        let mut high = highs[i].clone();
        if let (Some(form), true) = (&self.form, j < 0) {
            if let Some(pos) = self.weights.iter().position(|(w, _)| *w == -j) {
                high = high.intersect(&form.perp(&parts[pos])?)?;
            }
        }
        if !high.contains(&lows[i]) {
            return Ok(());
        }
        let lo = lows[i].dim().max(remaining.saturating_sub(suffix_high[i + 1]));
        let hi = high.dim().min(remaining - suffix_low[i + 1]);
        for a in lo..=hi {
            if a < lows[i].dim() {
                continue;
            }
            for x in enumerate_between(&lows[i], &high, a)? {
                if j == 0 {
                    if let Some(form) = &self.form {
                        if !form.is_isotropic(&x) {
                            continue;
                        }
                    }
                }
                parts.push(x);
                self.graded_rec(i + 1, remaining - a, lows, highs, suffix_low, suffix_high, parts, out)?;
                parts.pop();
            }
        }
        Ok(())
    }

    fn push(
        &self,
        x: EchelonSubspace,
        chain: &mut Vec<EchelonSubspace>,
        perps: &mut Vec<EchelonSubspace>,
    ) -> Result<(), FlagError> {
        if self.form.is_some() && chain.len() + 1 < self.k() {
            perps.push(self.perp(&x)?);
        }
        chain.push(x);
        Ok(())
    }

    fn pop(&self, chain: &mut Vec<EchelonSubspace>, perps: &mut Vec<EchelonSubspace>) {
        if perps.len() == chain.len() {
            perps.pop();
        }
        chain.pop();
    }

    fn walk(
        &self,
        chain: &mut Vec<EchelonSubspace>,
        perps: &mut Vec<EchelonSubspace>,
        visit: &mut dyn FnMut(&[EchelonSubspace]),
    ) -> Result<(), FlagError> {
        let t = chain.len();
        if t == self.k() {
            visit(chain);
            return Ok(());
        }
        for x in self.candidates(t, chain, perps)? {
            self.push(x, chain, perps)?;
            self.walk(chain, perps, visit)?;
            self.pop(chain, perps);
        }
        Ok(())
    }

    fn root(&self) -> Result<Option<ChainState>, FlagError> {
        if !self.level_zero_ok() {
            return Ok(None);
        }
        let mut chain = Vec::new();
        let mut perps = Vec::new();
        self.push(self.zero(), &mut chain, &mut perps)?;
        Ok(Some((chain, perps)))
    }

    fn count(&self) -> Result<u64, FlagError> {
        let Some((chain, perps)) = self.root()? else {
            return Ok(0);
        };
        if self.k() == 1 {
            return Ok(1);
        }
        let first = self.candidates(1, &chain, &perps)?;
        first
            .into_par_iter()
            .map(|x| {
                let (mut chain, mut perps) = (chain.clone(), perps.clone());
                self.push(x, &mut chain, &mut perps)?;
                let mut n = 0u64;
                self.walk(&mut chain, &mut perps, &mut |_| n += 1)?;
                Ok(n)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))
    }

    fn points(&self) -> Result<Vec<FlagPoint>, FlagError> {
        let Some((mut chain, mut perps)) = self.root()? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let linear = self.form.is_none();
        let whole = self.whole();
        self.walk(&mut chain, &mut perps, &mut |c| {
            let mut spaces = c.to_vec();
            if linear {
                spaces.push(whole.clone());
            }
            out.push(FlagPoint::new(spaces).expect("nested by construction"));
        })?;
        Ok(out)
    }
}

/// Approximate Gaussian binomial [n choose k]_q as a float.
fn gaussian_estimate(n: usize, k: usize, q: u32) -> f64 {
    let q = q as f64;
    (0..k).map(|i| (q.powi((n - i) as i32) - 1.0) / (q.powi(i as i32 + 1) - 1.0)).product()
}

/// Number of F_q-points of the variety.
pub fn count_points(variety: &FlagVariety, field: PrimeField, budget: Budget) -> Result<u64, FlagError> {
    Search::new(variety, field, false, &[], budget)?.count()
}

/// All F_q-points of the variety, each exactly once, in search order.
pub fn enumerate_points(variety: &FlagVariety, field: PrimeField, budget: Budget) -> Result<Vec<FlagPoint>, FlagError> {
    Search::new(variety, field, false, &[], budget)?.points()
}

/// Number of graded F_q-points satisfying the constraints.
pub fn count_fixed_points(
    variety: &FlagVariety,
    field: PrimeField,
    constraints: &[Constraint],
    budget: Budget,
) -> Result<u64, FlagError> {
    Search::new(variety, field, true, constraints, budget)?.count()
}

/// All graded F_q-points satisfying the constraints.
pub fn enumerate_fixed_points(
    variety: &FlagVariety,
    field: PrimeField,
    constraints: &[Constraint],
    budget: Budget,
) -> Result<Vec<FlagPoint>, FlagError> {
    Search::new(variety, field, true, constraints, budget)?.points()
}
