use nilpotent_core::FormKind;
use serde::Serialize;
use std::collections::BTreeSet;

/// A root in ε-coordinates.
pub type Root = Vec<i32>;

/// The classical root system attached to a form kind and an ambient dimension.
///
/// Type A uses ε_1..ε_m; the form types use ε_1..ε_n with n = ⌊m/2⌋.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub form: FormKind,
    pub m: usize,
    pub n: usize,
    pub roots: BTreeSet<Root>,
    pub positive: BTreeSet<Root>,
    /// α_1, …, α_n (α_1, …, α_{m−1} in type A).
    pub simple: Vec<Root>,
}

pub(crate) fn unit(n: usize, i: usize) -> Root {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub(crate) fn combo(n: usize, terms: &[(usize, i32)]) -> Root {
    let mut v = vec![0; n];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

pub fn add(a: &[i32], b: &[i32]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn neg(a: &[i32]) -> Root {
    a.iter().map(|x| -x).collect()
}

pub fn inner(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds the roots of gl_m, sp_m or so_m.
pub fn build_roots(form: FormKind, m: usize) -> RootDatum {
    let n = if form == FormKind::Linear { m } else { m / 2 };
    let mut positive = BTreeSet::new();
    let mut simple = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            positive.insert(combo(n, &[(i, 1), (j, -1)]));
            if form != FormKind::Linear {
                positive.insert(combo(n, &[(i, 1), (j, 1)]));
            }
        }
        match form {
            FormKind::Symplectic => {
                positive.insert(combo(n, &[(i, 2)]));
            }
            FormKind::Symmetric if m % 2 == 1 => {
                positive.insert(unit(n, i));
            }
            _ => {}
        }
    }
    for i in 0..n.saturating_sub(1) {
        simple.push(combo(n, &[(i, 1), (i + 1, -1)]));
    }
    if n >= 1 {
        match form {
            FormKind::Linear => {}
            FormKind::Symplectic => simple.push(combo(n, &[(n - 1, 2)])),
            FormKind::Symmetric if m % 2 == 1 => simple.push(unit(n, n - 1)),
            FormKind::Symmetric if n >= 2 => simple.push(combo(n, &[(n - 2, 1), (n - 1, 1)])),
            FormKind::Symmetric => {}
        }
    }
    let roots = positive.iter().flat_map(|r| [r.clone(), neg(r)]).collect();
    RootDatum { form, m, n, roots, positive, simple }
}

impl RootDatum {
    pub fn is_root(&self, r: &[i32]) -> bool {
        self.roots.contains(r)
    }

    /// Roots spanned by the given simple roots (by 0-based index into `simple`).
    pub fn subsystem(&self, simple_indices: &[usize]) -> BTreeSet<Root> {
        let gens: Vec<Root> =
            simple_indices.iter().flat_map(|&i| [self.simple[i].clone(), neg(&self.simple[i])]).collect();
        let mut set: BTreeSet<Root> = gens.iter().cloned().collect();
        loop {
            let mut grew = false;
            let current: Vec<Root> = set.iter().cloned().collect();
            for a in &current {
                for g in &gens {
                    let s = add(a, g);
                    if self.is_root(&s) && set.insert(s) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    /// Connected components of the Dynkin diagram restricted to `simple_indices`.
    pub fn components(&self, simple_indices: &[usize]) -> Vec<Vec<usize>> {
        let mut left: Vec<usize> = simple_indices.to_vec();
        let mut out = Vec::new();
        while let Some(start) = left.pop() {
            let mut comp = vec![start];
            let mut frontier = vec![start];
            while let Some(a) = frontier.pop() {
                let (linked, rest): (Vec<usize>, Vec<usize>) =
                    left.iter().partition(|&&b| inner(&self.simple[a], &self.simple[b]) != 0);
                left = rest;
                frontier.extend(&linked);
                comp.extend(linked);
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort();
        out
    }
}
