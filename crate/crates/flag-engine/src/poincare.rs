use std::collections::BTreeMap;

use ff_linalg::PrimeField;
use ideal_combinatorics::dim_flag_variety;
use log::debug;
use nilpotent_core::{FormKind, NilpotentRealization};
use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::component::split_primes;
use crate::{count_fixed_points, count_points, Budget, Constraint, FlagError, FlagVariety};

/// Which points are counted: all of them, or the graded (torus-fixed) ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Full,
    Fixed,
}

/// Count at a prime not used for fitting, compared with the fitted polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Holdout {
    pub q: u64,
    pub count: u64,
    pub predicted: i128,
    pub ok: bool,
}

/// Point counts at sample primes and the polynomial in q through them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincarePolynomial {
    /// Constant term first.
    pub coefficients: Vec<i64>,
    pub samples: BTreeMap<u64, u64>,
    pub degree_bound: usize,
    pub holdout: Option<Holdout>,
}

impl PoincarePolynomial {
    pub fn evaluate(&self, q: u64) -> i128 {
        self.coefficients.iter().rev().fold(0i128, |acc, &c| acc * q as i128 + c as i128)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|&c| c != 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 0)
    }

    pub fn holdout_ok(&self) -> bool {
        self.holdout.as_ref().is_none_or(|h| h.ok)
    }

    /// Human-readable form such as "q^2 + 2q + 1".
    pub fn display(&self) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "q".to_string(),
                (1, c) => format!("{c}q"),
                (i, 1) => format!("q^{i}"),
                (i, c) => format!("{c}q^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Coefficients, constant term first, of the polynomial of least degree through the
/// points (x, y), by Newton divided differences over the rationals.
pub fn interpolate(samples: &[(u64, u64)]) -> Vec<BigRational> {
    let n = samples.len();
    let xs: Vec<BigRational> = samples.iter().map(|&(x, _)| BigRational::from_integer(BigInt::from(x))).collect();
    let mut dd: Vec<BigRational> = samples.iter().map(|&(_, y)| BigRational::from_integer(BigInt::from(y))).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Expand the Newton form from the innermost term outward.
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); n.max(1)];
    for i in (0..n).rev() {
        // coeffs ← coeffs · (x − x_i) + dd_i
        let mut next = vec![BigRational::zero(); n.max(1)];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < next.len() {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

/// Upper bound on the dimension of the graded locus: the dimension of the full flag
/// variety of the centralizer of h, Π_j GL(E_j) in type A and
/// Π_{j>0} GL(E_j) × G(E_0) with the form types.
pub fn fixed_degree_bound(realization: &NilpotentRealization) -> usize {
    let g = realization.grading();
    let pairs = |d: usize| d * d.saturating_sub(1) / 2;
    if realization.form() == FormKind::Linear {
        return g.dims.values().map(|&d| pairs(d)).sum();
    }
    let positive: usize = g.dims.iter().filter(|(&j, _)| j > 0).map(|(_, &d)| pairs(d)).sum();
    let r = g.dim(0);
    let zero = match realization.form() {
        FormKind::Symplectic => (r / 2) * (r / 2),
        _ if r % 2 == 1 => (r / 2) * (r / 2),
        _ => (r / 2) * (r / 2).saturating_sub(1),
    };
    positive + zero
}

/// Degree bound used for interpolation: dim G/P, or its minimum with the graded bound.
pub fn degree_bound(variety: &FlagVariety, mode: CountMode) -> usize {
    let full = if variety.shape().m == 0 { 0 } else { dim_flag_variety(variety.shape()) };
    match mode {
        CountMode::Full => full,
        CountMode::Fixed => full.min(fixed_degree_bound(variety.realization())),
    }
}

fn count(
    variety: &FlagVariety,
    mode: CountMode,
    constraints: &[Constraint],
    q: u64,
    budget: Budget,
) -> Result<u64, FlagError> {
    let field = PrimeField::new(q)?;
    let n = match mode {
        CountMode::Full if constraints.is_empty() => count_points(variety, field, budget)?,
        CountMode::Full => return Err(FlagError::Inconsistent("constraints apply to graded counts only".into())),
        CountMode::Fixed => count_fixed_points(variety, field, constraints, budget)?,
    };
    debug!("count at q = {q}: {n}");
    Ok(n)
}

/// Interpolates the point counts at the first D + 1 odd primes over which the form is split,
/// D the degree bound of the mode, and checks the next such prime as a holdout.
pub fn poincare(variety: &FlagVariety, mode: CountMode, budget: Budget) -> Result<PoincarePolynomial, FlagError> {
    let d = degree_bound(variety, mode);
    let primes: Vec<u64> = split_primes(variety.realization()).take(d + 2).collect();
    poincare_with(variety, mode, &[], &primes[..d + 1], Some(primes[d + 1]), budget)
}

/// Interpolation through the counts at the given primes, which must number at least
/// D + 1 for the degree bound D of the mode.
pub fn poincare_with(
    variety: &FlagVariety,
    mode: CountMode,
    constraints: &[Constraint],
    primes: &[u64],
    holdout: Option<u64>,
    budget: Budget,
) -> Result<PoincarePolynomial, FlagError> {
    let d = degree_bound(variety, mode);
    if primes.len() < d + 1 {
        return Err(FlagError::NotEnoughPrimes { needed: d + 1, found: primes.len() });
    }
    let mut samples = BTreeMap::new();
    for &q in primes {
        samples.insert(q, count(variety, mode, constraints, q, budget)?);
    }
    let points: Vec<(u64, u64)> = samples.iter().map(|(&q, &n)| (q, n)).collect();
    let mut coefficients = Vec::new();
    for c in interpolate(&points) {
        if !c.is_integer() {
            return Err(FlagError::NonIntegral(c.to_string()));
        }
        coefficients.push(c.to_integer().to_i64().ok_or_else(|| FlagError::NonIntegral(c.to_string()))?);
    }
    let mut poly = PoincarePolynomial { coefficients, samples, degree_bound: d, holdout: None };
    if let Some(q) = holdout {
        let n = count(variety, mode, constraints, q, budget)?;
        let predicted = poly.evaluate(q);
        poly.holdout = Some(Holdout { q, count: n, predicted, ok: predicted == n as i128 });
    }
    Ok(poly)
}
