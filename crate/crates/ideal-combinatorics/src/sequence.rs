use crate::IdealError;

/// c_0 ≤ c_1 ≤ … with 0 ≤ c_p ≤ p; x(V_p) ⊆ V_{c_p} for members of the ideal.
pub type IdealSequence = Vec<usize>;

/// Checks monotonicity and the bound c_p ≤ p, and the expected length.
pub fn validate_c(c: &[usize], expected_len: usize) -> Result<(), IdealError> {
    if c.len() != expected_len {
        return Err(IdealError::Length { expected: expected_len, found: c.len() });
    }
    for (p, &v) in c.iter().enumerate() {
        if v > p {
            return Err(IdealError::Bound { index: p, value: v });
        }
        if p > 0 && v < c[p - 1] {
            return Err(IdealError::Decreasing { index: p });
        }
    }
    Ok(())
}

/// c*_p = #{q = 1..2k−1 : c_q ≥ 2k − p}.
pub fn dual_c(c: &[usize], k: usize) -> Result<IdealSequence, IdealError> {
    validate_c(c, 2 * k)?;
    Ok((0..2 * k).map(|p| (1..2 * k).filter(|&q| c[q] >= 2 * k - p).count()).collect())
}

pub fn is_self_dual(c: &[usize]) -> bool {
    c.len().is_multiple_of(2) && dual_c(c, c.len() / 2).map(|d| d == c).unwrap_or(false)
}

pub fn max_c(a: &[usize], b: &[usize]) -> Result<IdealSequence, IdealError> {
    if a.len() != b.len() {
        return Err(IdealError::Length { expected: a.len(), found: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect())
}

/// All valid sequences of the given length, in lexicographic order.
pub fn all_valid_c(len: usize) -> Vec<IdealSequence> {
    fn rec(p: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<IdealSequence>) {
        if p == len {
            out.push(cur.clone());
            return;
        }
        let lo = if p == 0 { 0 } else { cur[p - 1] };
        for v in lo..=p {
            cur.push(v);
            rec(p + 1, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, &mut Vec::with_capacity(len), &mut out);
    out
}
