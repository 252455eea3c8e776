use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::algebra::Monomial;

/// Monomial orders on `Q[t, x1, ..., xm]`.
///
/// Variable precedence is `x1 > x2 > ... > xm > t`. For
/// [`MonomialOrder::EliminationBlock`] the block consists of the last
/// `block_size` x-variables; any monomial containing a block variable is
/// larger than every monomial free of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    #[default]
    GradedReverseLex,
    GradedLex,
    EliminationBlock {
        block_size: usize,
    },
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exponents().len(), b.exponents().len());
        match *self {
            MonomialOrder::GradedReverseLex => grevlex(a.exponents(), b.exponents()),
            MonomialOrder::GradedLex => grlex(a.exponents(), b.exponents()),
            MonomialOrder::EliminationBlock { block_size } => {
                let ea = a.exponents();
                let eb = b.exponents();
                let split = ea.len().saturating_sub(block_size).max(1);
                // block variables occupy the tail of the exponent vector
                let block = grevlex_slice(&ea[split..], &eb[split..], &[], &[]);
                if block != Ordering::Equal {
                    return block;
                }
                grevlex_slice(&ea[1..split], &eb[1..split], &ea[..1], &eb[..1])
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GradedReverseLex => "grevlex".to_string(),
            MonomialOrder::GradedLex => "grlex".to_string(),
            MonomialOrder::EliminationBlock { block_size } => format!("elim({block_size})"),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    grevlex_slice(&a[1..], &b[1..], &a[..1], &b[..1])
}

/// Graded reverse lex where the x-part precedes the t-part in precedence.
fn grevlex_slice(ax: &[u32], bx: &[u32], at: &[u32], bt: &[u32]) -> Ordering {
    let da: u64 = ax.iter().chain(at).map(|&e| e as u64).sum();
    let db: u64 = bx.iter().chain(bt).map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    // last variable in precedence order with differing exponent decides;
    // the smaller exponent wins
    for (x, y) in at.iter().rev().zip(bt.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    for (x, y) in ax.iter().rev().zip(bx.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a[1..].iter().zip(&b[1..]) {
        if x != y {
            return x.cmp(y);
        }
    }
    a[0].cmp(&b[0])
}
