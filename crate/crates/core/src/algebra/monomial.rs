use std::fmt;

/// Exponent vector over `t, x1, ..., xm`: slot 0 is `t`, slot `i` is `xi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(var_count: usize) -> Self {
        Monomial(vec![0; var_count + 1])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "monomial needs at least the t slot");
        Monomial(exponents)
    }

    /// `t^k`
    pub fn t_power(var_count: usize, k: u32) -> Self {
        let mut e = vec![0; var_count + 1];
        e[0] = k;
        Monomial(e)
    }

    /// `x_i` with `i` in `1..=var_count`.
    pub fn var(var_count: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= var_count, "variable x{i} out of range");
        let mut e = vec![0; var_count + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of x-variables.
    pub fn var_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if divisible.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn exponent(&self, slot: usize) -> u32 {
        self.0[slot]
    }

    pub(crate) fn with_exponent(&self, slot: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[slot] = e;
        Monomial(v)
    }

    /// Same monomial in a ring with `extra` additional trailing variables.
    pub(crate) fn extend(&self, extra: usize) -> Monomial {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(0, extra));
        Monomial(v)
    }

    pub(crate) fn truncate(&self, var_count: usize) -> Monomial {
        Monomial(self.0[..=var_count].to_vec())
    }
}

impl fmt::Display for Monomial {
    /// Renders as `x1^2*x3*t`, variables in precedence order, `1` for the unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let slots = (1..self.0.len()).chain(std::iter::once(0));
        for slot in slots {
            let e = self.0[slot];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if slot == 0 {
                f.write_str("t")?;
            } else {
                write!(f, "x{slot}")?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
