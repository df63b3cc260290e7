//! Independent oracles shared by the integration tests. Nothing here goes
//! through `derive_constraints` or the library's elimination code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cosetnum::{Rational, RepMatrix, RulePattern};

pub fn ints(values: &[Rational]) -> Vec<i64> {
    values
        .iter()
        .map(|v| {
            assert!(v.is_integer(), "{v} is not an integer");
            v.to_integer().to_i64().expect("fits in i64")
        })
        .collect()
}

pub fn rationals(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_integer(v.into())).collect()
}

/// `α = βγ`, with `ji = ij` (slots alpha, beta, gamma, alpha').
pub fn c3_closed_form(v: &[i64]) -> bool {
    let [a, b, g, a2] = v.try_into().expect("4 slots");
    a == b * g && a2 == a
}

/// `φ = βγ`, `βδ = γε = α`, read with the commuting products the cyclic
/// rule list writes once (`ji = ij`, `kj = jk`, `ik = ki`).
pub fn c4_closed_form(v: &[i64]) -> bool {
    let [a, b, g, d, e, f, a2, b2, g2] = v.try_into().expect("9 slots");
    f == b * g && b * d == a && g * e == a && a2 == a && b2 == b && g2 == g
}

/// The five Klein relations: `αβ = γγ′γ″` and cyclic, and the two chains
/// through `α″β″γ″` and `α′β′γ′`.
pub fn klein_five(v: &[i64]) -> bool {
    let [a, b, g, a1, b1, g1, a2, b2, g2] = v.try_into().expect("9 slots");
    let r1 = a1 * b1 * g1;
    let r2 = a2 * b2 * g2;
    a * b == g * g1 * g2
        && b * g == a * a1 * a2
        && g * a == b * b1 * b2
        && [a * a1, b * b1, g * g1, r2].iter().all_equal()
        && [a * a2, b * b2, g * g2, r1].iter().all_equal()
}

/// `α′β′ = α″β″`, `α′β″ = α″β′ = γ` and their cyclic shifts.
pub fn klein_alternative(v: &[i64]) -> bool {
    let [a, b, g, a1, b1, g1, a2, b2, g2] = v.try_into().expect("9 slots");
    let unprimed = [a, b, g];
    let p1 = [a1, b1, g1];
    let p2 = [a2, b2, g2];
    (0..3).all(|s| {
        let (x, y, z) = (s, (s + 1) % 3, (s + 2) % 3);
        p1[x] * p1[y] == p2[x] * p2[y] && p1[x] * p2[y] == unprimed[z] && p2[x] * p1[y] == unprimed[z]
    })
}

pub fn klein_closed_form(v: &[i64]) -> bool {
    klein_five(v) && klein_alternative(v)
}

/// Compares `(eₐe_b)e_c` with `eₐ(e_be_c)` for every basis triple, straight
/// from the rule pattern.
pub fn associative_by_products(pattern: &RulePattern, values: &[i64]) -> bool {
    let n = pattern.dim();
    let scale = |a: usize, b: usize| -> (usize, i64) {
        let (t, slot) = pattern.product(a, b);
        (t, slot.map_or(1, |s| values[s.0]))
    };
    (0..n).cartesian_product(0..n).cartesian_product(0..n).all(|((a, b), c)| {
        let (ab, s1) = scale(a, b);
        let (_, s2) = scale(ab, c);
        let (bc, s3) = scale(b, c);
        let (_, s4) = scale(a, bc);
        s1 * s2 == s3 * s4
    })
}

/// Every vector in `domain^len` accepted by `pred`.
pub fn brute_force(len: usize, domain: &[i64], pred: impl Fn(&[i64]) -> bool) -> BTreeSet<Vec<i64>> {
    std::iter::repeat_n(domain.iter().copied(), len)
        .multi_cartesian_product()
        .filter(|v| pred(v))
        .collect()
}

pub fn signature_products(v: &[i64]) -> (i64, i64, i64) {
    (v[0] * v[1] * v[2], v[3] * v[4] * v[5], v[6] * v[7] * v[8])
}

/// Sum over permutations.
pub fn leibniz_det(m: &RepMatrix) -> Rational {
    let n = m.size();
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n).tuple_combinations().filter(|&(i, j)| p[i] > p[j]).count();
            let term = (0..n).fold(Rational::one(), |acc, i| acc * &m[(i, p[i])]);
            if inversions % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// `a³ + αβb³ + αγc³ − 3αabc`.
pub fn det3_closed_form(alpha: i64, beta: i64, gamma: i64, [a, b, c]: [i64; 3]) -> i64 {
    a.pow(3) + alpha * beta * b.pow(3) + alpha * gamma * c.pow(3) - 3 * alpha * a * b * c
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_ints(rng: &mut StdRng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-bound..=bound)).collect()
}
