use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::MonomialOrder;
use crate::algebra::{Monomial, Polynomial, Rational};

/// Terms sorted descending in some fixed order; leading term first.
pub(crate) type Terms = Vec<(Monomial, Rational)>;

pub(crate) fn sorted(p: &Polynomial, order: MonomialOrder) -> Terms {
    p.sorted_terms(order)
}

fn make_monic(mut f: Terms) -> Terms {
    if let Some((_, lc)) = f.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in f.iter_mut() {
                *c *= &inv;
            }
        }
    }
    f
}

/// `f - c * m * g`, both sorted in `order`.
fn sub_scaled(
    f: &[(Monomial, Rational)],
    g: &[(Monomial, Rational)],
    c: &Rational,
    m: &Monomial,
    order: MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
    loop {
        match (f.get(i), gi.peek()) {
            (None, None) => break,
            (Some(t), None) => {
                out.push(t.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let (m2, c2) = gi.next().unwrap();
                out.push((m2, -c2));
            }
            (Some((fm, fc)), Some((gm, _))) => match order.compare(fm, gm) {
                Ordering::Greater => {
                    out.push((fm.clone(), fc.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let (m2, c2) = gi.next().unwrap();
                    out.push((m2, -c2));
                }
                Ordering::Equal => {
                    let (_, c2) = gi.next().unwrap();
                    let d = fc - c2;
                    if !d.is_zero() {
                        out.push((fm.clone(), d));
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

/// Full multivariate division remainder of `f` by `basis` (each nonempty).
pub(crate) fn reduce(f: Terms, basis: &[Terms], order: MonomialOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut f = f;
    while !f.is_empty() {
        let (lm, lc) = (&f[0].0, &f[0].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let q = g[0].0.quotient_of(lm).unwrap();
                let c = lc / &g[0].1;
                f = sub_scaled(&f, g, &c, &q, order);
            }
            None => {
                rem.push(f.remove(0));
            }
        }
    }
    rem
}

fn s_polynomial(f: &Terms, g: &Terms, order: MonomialOrder) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.quotient_of(&lcm).unwrap();
    let mg = g[0].0.quotient_of(&lcm).unwrap();
    let scaled_f: Terms = f.iter().map(|(m, c)| (m.mul(&mf), c / &f[0].1)).collect();
    sub_scaled(&scaled_f, g, &g[0].1.recip(), &mg, order)
}

/// Buchberger's algorithm with the normal selection strategy and both of
/// Buchberger's criteria. Returns the reduced basis, sorted by leading
/// monomial descending, every element monic.
pub(crate) fn groebner(generators: &[Polynomial], order: MonomialOrder) -> Vec<Terms> {
    let mut basis: Vec<Terms> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for g in generators {
        let f = reduce(sorted(g, order), &basis, order);
        if !f.is_empty() {
            push_element(&mut basis, &mut pending, make_monic(f));
        }
    }

    while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
        let la = basis[a.0][0].0.lcm(&basis[a.1][0].0);
        let lb = basis[b.0][0].0.lcm(&basis[b.1][0].0);
        order.compare(&la, &lb).then(a.cmp(b))
    }) {
        pending.remove(&(i, j));
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let h = reduce(s, &basis, order);
        if !h.is_empty() {
            push_element(&mut basis, &mut pending, make_monic(h));
        }
    }

    interreduce(basis, order)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn push_element(basis: &mut Vec<Terms>, pending: &mut HashSet<(usize, usize)>, f: Terms) {
    let k = basis.len();
    basis.push(f);
    for i in 0..k {
        pending.insert((i, k));
    }
}

fn interreduce(basis: Vec<Terms>, order: MonomialOrder) -> Vec<Terms> {
    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let mut minimal: Vec<Terms> = Vec::new();
    let mut candidates = basis;
    candidates.sort_by(|a, b| order.compare(&a[0].0, &b[0].0));
    for f in candidates {
        if !minimal.iter().any(|g| g[0].0.divides(&f[0].0)) {
            minimal.push(f);
        }
    }
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Terms> =
            minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, g)| g.clone()).collect();
        let f = &minimal[idx];
        let head = f[0].clone();
        let tail = reduce(f[1..].to_vec(), &others, order);
        let mut out = vec![head];
        out.extend(tail);
        reduced.push(make_monic(out));
    }
    reduced.sort_by(|a, b| order.compare(&b[0].0, &a[0].0));
    reduced
}

/// Checks the Buchberger criterion directly: every S-polynomial of the
/// given basis reduces to zero.
pub fn s_polynomials_reduce_to_zero(basis: &[Polynomial], order: MonomialOrder) -> bool {
    let terms: Vec<Terms> = basis.iter().filter(|p| !p.is_zero()).map(|p| sorted(p, order)).collect();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            let s = s_polynomial(&terms[i], &terms[j], order);
            if !reduce(s, &terms, order).is_empty() {
                return false;
            }
        }
    }
    true
}
