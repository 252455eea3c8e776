use crate::algebra::Monomial;

/// Number of degree-`d` monomials in `slots` variables that no monomial
/// of `leading` divides, for each `d` in `0..=max_degree`.
pub(crate) fn standard_monomial_counts(leading: &[Monomial], slots: usize, max_degree: u32) -> Vec<u64> {
    let mut counts = vec![0u64; max_degree as usize + 1];
    let mut exps = vec![0u32; slots];
    for d in 0..=max_degree {
        counts[d as usize] = count_degree(leading, &mut exps, 0, d);
    }
    counts
}

fn count_degree(leading: &[Monomial], exps: &mut Vec<u32>, slot: usize, remaining: u32) -> u64 {
    if slot + 1 == exps.len() {
        exps[slot] = remaining;
        let m = Monomial::from_exponents(exps.clone());
        let standard = !leading.iter().any(|l| l.divides(&m));
        exps[slot] = 0;
        return standard as u64;
    }
    let mut total = 0;
    for e in 0..=remaining {
        exps[slot] = e;
        total += count_degree(leading, exps, slot + 1, remaining - e);
    }
    exps[slot] = 0;
    total
}
