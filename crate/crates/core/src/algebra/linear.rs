use num_traits::One;

use super::{AlgebraError, Monomial, Polynomial, Rational};

/// The linear form `x_i - value * t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub var_index: usize,
    pub value: Rational,
}

impl LinearForm {
    pub fn new(var_index: usize, value: Rational) -> Self {
        assert!(var_index >= 1, "linear forms are indexed from x1");
        LinearForm { var_index, value }
    }

    pub fn to_polynomial(&self, var_count: usize) -> Polynomial {
        Polynomial::from_terms(
            var_count,
            [
                (Monomial::var(var_count, self.var_index), Rational::one()),
                (Monomial::t_power(var_count, 1), -self.value.clone()),
            ],
        )
    }
}

/// Expanded product of linear forms; the empty product is 1.
pub fn product_of_linear_forms(var_count: usize, factors: &[LinearForm]) -> Polynomial {
    factors.iter().fold(Polynomial::one(var_count), |acc, f| &acc * &f.to_polynomial(var_count))
}

/// Writes `p = sum_i (x_i - a_i t) * Q_i`, dividing by `x1 - a1 t` first
/// and recursing on the remainder, which is free of `x1`.
///
/// Requires `p` to vanish under `x_i -> a_i t`.
pub fn linear_decompose(p: &Polynomial, a: &[Rational]) -> Result<Vec<Polynomial>, AlgebraError> {
    let value = p.evaluate_at_point(a)?;
    if !value.is_zero() {
        return Err(AlgebraError::DoesNotVanish { value: value.to_string() });
    }
    let n = p.var_count();
    let mut remainder = p.clone();
    let mut quotients = Vec::with_capacity(n);
    for i in 1..=n {
        let (q, r) = divide_by_linear(&remainder, i, &a[i - 1]);
        quotients.push(q);
        remainder = r;
    }
    debug_assert!(remainder.is_zero());
    Ok(quotients)
}

/// Synthetic division of `p`, viewed in `K[others][x_i]`, by `x_i - s t`.
/// Returns `(Q, R)` with `R` free of `x_i`.
fn divide_by_linear(p: &Polynomial, i: usize, s: &Rational) -> (Polynomial, Polynomial) {
    let n = p.var_count();
    let top = p.terms().iter().map(|(m, _)| m.exponent(i)).max().unwrap_or(0);
    // coefficient of x_i^k, itself free of x_i
    let mut coeffs: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); top as usize + 1];
    for (m, c) in p.terms() {
        let k = m.exponent(i);
        coeffs[k as usize].push((m.with_exponent(i, 0), c.clone()));
    }
    let coeffs: Vec<Polynomial> = coeffs.into_iter().map(|ts| Polynomial::from_terms(n, ts)).collect();
    let shift = Polynomial::monomial(Monomial::t_power(n, 1), s.clone());
    // q_{k-1} = c_k + s t q_k, remainder = c_0 + s t q_0
    let mut q_coeffs: Vec<Polynomial> = vec![Polynomial::zero(n); top as usize];
    let mut carry = Polynomial::zero(n);
    for k in (1..=top as usize).rev() {
        carry = &coeffs[k] + &(&shift * &carry);
        q_coeffs[k - 1] = carry.clone();
    }
    let remainder = &coeffs[0] + &(&shift * &carry);
    let quotient =
        q_coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(Polynomial::zero(n), |acc, (k, c)| {
            let xk = Monomial::var(n, i);
            let power = Monomial::from_exponents(xk.exponents().iter().map(|&e| e * k as u32).collect());
            &acc + &c.mul_monomial(&power, &Rational::one())
        });
    (quotient, remainder)
}
