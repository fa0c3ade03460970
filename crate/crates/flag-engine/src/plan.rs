use ideal_combinatorics::FlagShape;

/// Conditions e(V̄_p) ⊆ V̄_{c_p} rewritten as conditions on the chosen subspaces
/// V_0..V_{k−1}, each attached to the level at which it can first be checked.
///
/// For an antiadjoint e, e(V_a^⊥) ⊆ V_b^⊥ is equivalent to e(V_b) ⊆ V_a, and
/// e(V_a^⊥) ⊆ V_c is equivalent to e(V_c^⊥) ⊆ V_a.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct LevelPlan {
    /// V_t ⊆ e⁻¹(V_a).
    pub preimage_of: Vec<usize>,
    /// V_t ⊇ e(V_s^⊥); s = 0 gives e(V).
    pub image_of_perp: Vec<usize>,
    /// Type A: V_t ⊇ e(V).
    pub image_of_whole: bool,
    /// e(V_t) ⊆ V_t.
    pub stable: bool,
    /// e(V_t^⊥) ⊆ V_t.
    pub stable_perp: bool,
}

pub(crate) fn level_plans(shape: &FlagShape, c: &[usize]) -> Vec<LevelPlan> {
    let k = shape.k();
    let mut plans = vec![LevelPlan::default(); k];
    let push = |v: &mut Vec<usize>, x: usize| {
        if !v.contains(&x) {
            v.push(x);
        }
    };
    if shape.form.has_form() {
        for (p, &cp) in c.iter().enumerate() {
            if p < k {
                if cp == p {
                    plans[p].stable = true;
                } else {
                    push(&mut plans[p].preimage_of, cp);
                }
            } else if cp >= k {
                let (a, b) = (2 * k - 1 - p, 2 * k - 1 - cp);
                if a == b {
                    plans[a].stable = true;
                } else {
                    push(&mut plans[b].preimage_of, a);
                }
            } else {
                let a = 2 * k - 1 - p;
                if a == cp {
                    plans[a].stable_perp = true;
                } else {
                    push(&mut plans[a.max(cp)].image_of_perp, a.min(cp));
                }
            }
        }
    } else {
        for (p, &cp) in c.iter().enumerate() {
            if p == cp {
                if p < k {
                    plans[p].stable = true;
                }
            } else if p == k {
                plans[cp].image_of_whole = true;
            } else {
                push(&mut plans[p].preimage_of, cp);
            }
        }
    }
    for plan in &mut plans {
        plan.preimage_of.sort_unstable();
        plan.image_of_perp.sort_unstable();
    }
    plans
}
