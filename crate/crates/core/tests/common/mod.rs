//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls the covering enumerator, the
//! Buchberger reducer or the Hilbert counter under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use kirwan_core::algebra::{rat, ratio, Monomial, Polynomial, Rational};
use kirwan_core::groebner::MonomialOrder;
use kirwan_core::kernel::{Covering, Vertex};
use kirwan_core::moment_model::{build_system, preset_sphere, Factor, FixedPointIndex, MomentSystem};
use rand::rngs::StdRng;
use rand::Rng;

/// Every minimal covering of `targets`, found by trying all vertex subsets.
pub fn brute_force_coverings(sys: &MomentSystem, targets: &[FixedPointIndex]) -> BTreeSet<Vec<Vertex>> {
    let vertices: Vec<Vertex> = sys
        .factors()
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (1..=f.len()).map(move |j| Vertex { factor: i + 1, value: j }))
        .collect();
    assert!(vertices.len() <= 20, "brute force limited to 20 vertices");
    let covers = |mask: u32| {
        targets
            .iter()
            .all(|p| vertices.iter().enumerate().any(|(k, v)| mask >> k & 1 == 1 && p.0[v.factor - 1] == v.value))
    };
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << vertices.len() {
        if !covers(mask) {
            continue;
        }
        let minimal = (0..vertices.len()).filter(|k| mask >> k & 1 == 1).all(|k| !covers(mask & !(1 << k)));
        if minimal {
            out.insert((0..vertices.len()).filter(|k| mask >> k & 1 == 1).map(|k| vertices[k]).collect());
        }
    }
    out
}

pub fn covering_set(coverings: &[Covering]) -> BTreeSet<Vec<Vertex>> {
    coverings
        .iter()
        .map(|c| {
            let mut v = c.vertices();
            v.sort();
            v
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of degree `d` in `slots` variables that avoid every
/// monomial in `leading`, by inclusion–exclusion over subsets of `leading`.
pub fn inclusion_exclusion_count(leading: &[Monomial], slots: usize, d: u32) -> u64 {
    assert!(leading.len() <= 16);
    let mut total: i128 = 0;
    for mask in 0u32..1 << leading.len() {
        let mut lcm = Monomial::one(slots - 1);
        for (k, m) in leading.iter().enumerate() {
            if mask >> k & 1 == 1 {
                lcm = lcm.lcm(m);
            }
        }
        if lcm.degree() > d {
            continue;
        }
        let free = (d - lcm.degree()) as u64;
        let count = binomial(free + slots as u64 - 1, slots as u64 - 1) as i128;
        total += if mask.count_ones() % 2 == 0 { count } else { -count };
    }
    total as u64
}

/// Hilbert function of `Q[t, x1..xn] / (leading monomials of basis)`.
pub fn hilbert_by_inclusion_exclusion(basis: &[Polynomial], order: MonomialOrder, max_degree: u32) -> Vec<u64> {
    let n = basis.first().map(|p| p.var_count()).unwrap_or(0);
    let leading: Vec<Monomial> = basis.iter().filter_map(|p| p.leading_term(order).map(|(m, _)| m.clone())).collect();
    (0..=max_degree).map(|d| inclusion_exclusion_count(&leading, n + 1, d)).collect()
}

/// Full remainder of `p` on division by `divisors`, term by term.
pub fn remainder(p: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let mut p = p.clone();
    let mut rem = Polynomial::zero(p.var_count());
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = divisors.iter().find_map(|g| {
            let (lm, lc) = g.leading_term(order)?;
            lm.quotient_of(&m).map(|q| (g, q, lc.clone()))
        });
        match hit {
            Some((g, q, lc)) => p = &p - &g.mul_monomial(&q, &(&c / &lc)),
            None => {
                let lead = Polynomial::monomial(m, c);
                rem = &rem + &lead;
                p = &p - &lead;
            }
        }
    }
    rem
}

/// Buchberger's criterion, checked with the division above.
pub fn is_groebner_basis(basis: &[Polynomial], order: MonomialOrder) -> bool {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(order), g.leading_term(order)) else {
                continue;
            };
            let l = mf.lcm(mg);
            let s = &f.mul_monomial(&mf.quotient_of(&l).unwrap(), &cf.recip())
                - &g.mul_monomial(&mg.quotient_of(&l).unwrap(), &cg.recip());
            if !remainder(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn random_rational(rng: &mut StdRng, max_num: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn random_positive(rng: &mut StdRng, max_num: i64, max_den: i64) -> Rational {
    ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// `n` distinct rationals in decreasing order.
pub fn distinct_values(rng: &mut StdRng, n: usize) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    while set.len() < n {
        set.insert(random_rational(rng, 12, 3));
    }
    set.into_iter().rev().collect()
}

pub fn random_factor(rng: &mut StdRng, n: usize) -> Factor {
    Factor::new("random", distinct_values(rng, n)).unwrap()
}

/// Sorted distinct moment values of all fixed points.
pub fn mu_values(sys: &MomentSystem) -> Vec<Rational> {
    let set: BTreeSet<Rational> = sys.fixed_points().map(|p| sys.mu_value(&p).unwrap()).collect();
    set.into_iter().collect()
}

/// Midpoints between consecutive moment values, plus one value beyond
/// each end: one threshold per chamber.
pub fn chamber_thresholds(values: &[Rational]) -> Vec<Rational> {
    let mut out = vec![&values[0] - rat(1)];
    out.extend(values.windows(2).map(|w| (&w[0] + &w[1]) / rat(2)));
    out.push(values.last().unwrap() + rat(1));
    out
}

/// A threshold strictly between two moment values chosen at random.
pub fn random_interior_threshold(rng: &mut StdRng, sys: &MomentSystem) -> Rational {
    let cs = chamber_thresholds(&mu_values(sys));
    if cs.len() <= 2 {
        return cs[0].clone();
    }
    cs[rng.gen_range(1..cs.len() - 1)].clone()
}

pub fn with_threshold(sys: &MomentSystem, c: Rational) -> MomentSystem {
    build_system(sys.factors().to_vec(), c).unwrap()
}

/// Sphere product with random radii at a regular threshold `c`; resamples
/// until regular.
pub fn random_spheres(rng: &mut StdRng, m: usize, c: &Rational) -> (Vec<Rational>, MomentSystem) {
    loop {
        let radii: Vec<Rational> = (0..m).map(|_| random_positive(rng, 9, 2)).collect();
        let factors = radii.iter().map(|r| preset_sphere(r.clone()).unwrap()).collect();
        if let Ok(sys) = build_system(factors, c.clone()) {
            return (radii, sys);
        }
    }
}

pub fn spheres(radii: &[i64]) -> MomentSystem {
    build_system(radii.iter().map(|&r| preset_sphere(rat(r)).unwrap()).collect(), rat(0)).unwrap()
}

/// Random homogeneous polynomial of degree `d` with a few terms.
pub fn random_homogeneous(rng: &mut StdRng, n: usize, d: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let mut e = vec![0u32; n + 1];
        for _ in 0..d {
            e[rng.gen_range(0..=n)] += 1;
        }
        p = &p + &Polynomial::monomial(Monomial::from_exponents(e), random_rational(rng, 5, 2));
    }
    p
}

/// Random polynomial of total degree at most `d`.
pub fn random_polynomial(rng: &mut StdRng, n: usize, d: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=d);
        p = &p + &random_homogeneous(rng, n, deg, 1);
    }
    p
}

pub fn trim_trailing_zeros(v: &[u64]) -> Vec<u64> {
    let end = v.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
    v[..end].to_vec()
}
