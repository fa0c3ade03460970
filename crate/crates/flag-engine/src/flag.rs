use ff_linalg::{BilinearForm, EchelonSubspace, PrimeField};
use nilpotent_core::NilpotentRealization;

use crate::component::component_sign;
use crate::{ComponentPolicy, FlagError, FlagVariety};

/// A nested chain V_0 = 0 ⊂ V_1 ⊂ … over F_q.
///
/// For the form types the chain is V_0..V_{k−1} and consists of isotropic subspaces;
/// in type A it is V_0..V_k with V_k = V.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagPoint {
    subspaces: Vec<EchelonSubspace>,
    field: PrimeField,
}

impl FlagPoint {
    pub fn new(subspaces: Vec<EchelonSubspace>) -> Result<Self, FlagError> {
        let first = subspaces.first().ok_or_else(|| FlagError::Inconsistent("empty flag".into()))?;
        let (field, n) = (first.field(), first.ambient_dim());
        if subspaces.iter().any(|s| s.field() != field || s.ambient_dim() != n) {
            return Err(FlagError::Inconsistent("subspaces of different spaces".into()));
        }
        if subspaces.windows(2).any(|w| !w[1].contains(&w[0])) {
            return Err(FlagError::Inconsistent("subspaces are not nested".into()));
        }
        Ok(FlagPoint { subspaces, field })
    }

    pub fn subspaces(&self) -> &[EchelonSubspace] {
        &self.subspaces
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(|s| s.dim()).collect()
    }
}

/// The completed chain V̄_0 ⊆ … ⊆ V̄_{2k−1} with V̄_p = V_p for p < k and
/// V̄_p = V_{2k−1−p}^⊥ for p ≥ k. Without a form the flag is returned unchanged.
pub fn completion(flag: &FlagPoint, form: Option<&BilinearForm>) -> Result<Vec<EchelonSubspace>, FlagError> {
    let Some(form) = form else {
        return Ok(flag.subspaces.clone());
    };
    let mut chain = flag.subspaces.clone();
    if chain.iter().any(|v| !form.is_isotropic(v)) {
        return Err(FlagError::NotIsotropic);
    }
    for v in flag.subspaces.iter().rev() {
        chain.push(form.perp(v)?);
    }
    Ok(chain)
}

/// Whether the flag is a point of the variety: e(V̄_p) ⊆ V̄_{c_p} for every p, and the
/// last subspace lies in the selected component.
pub fn satisfies(variety: &FlagVariety, flag: &FlagPoint) -> Result<bool, FlagError> {
    let shape = variety.shape();
    let expected = shape.d.clone();
    if flag.dims() != expected || flag.subspaces[0].ambient_dim() != shape.m {
        return Err(FlagError::ShapeMismatch(expected));
    }
    let field = flag.field;
    let r = variety.realization();
    let form = r.form_mod(field).transpose()?;
    let chain = match completion(flag, form.as_ref()) {
        Ok(c) => c,
        Err(FlagError::NotIsotropic) => return Ok(false),
        Err(e) => return Err(e),
    };
    let e = r.e_mod(field);
    for (p, v) in chain.iter().enumerate() {
        if !chain[variety.c()[p]].contains(&v.image_under(&e)?) {
            return Ok(false);
        }
    }
    if variety.policy() != ComponentPolicy::Both {
        let last = flag.subspaces.last().expect("nonempty");
        let plus = component_sign(r, last)?;
        if plus != (variety.policy() == ComponentPolicy::Plus) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every V_p is the sum of its intersections with the weight spaces of h.
pub fn is_graded(flag: &FlagPoint, realization: &NilpotentRealization) -> bool {
    let field = flag.field;
    let m = realization.m();
    let spaces: Vec<EchelonSubspace> = realization
        .distinct_weights()
        .into_iter()
        .map(|j| EchelonSubspace::coordinate(m, &realization.coords_of_weight(j), field))
        .collect();
    flag.subspaces.iter().all(|v| {
        let total: usize = spaces.iter().map(|s| v.intersect(s).map(|x| x.dim()).unwrap_or(0)).sum();
        total == v.dim()
    })
}

/// The flag with V_p spanned by the d_p basis vectors of highest weight, ties broken by
/// coordinate order. It is graded, e-stable, and isotropic for the form types.
pub fn standard_weight_flag(
    realization: &NilpotentRealization,
    dims: &[usize],
    field: PrimeField,
) -> Result<FlagPoint, FlagError> {
    let m = realization.m();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&a| (-realization.weight_of(a), a));
    let spaces = dims
        .iter()
        .map(|&d| {
            if d > m {
                return Err(FlagError::ShapeMismatch(dims.to_vec()));
            }
            Ok(EchelonSubspace::coordinate(m, &order[..d], field))
        })
        .collect::<Result<Vec<_>, _>>()?;
    FlagPoint::new(spaces)
}
