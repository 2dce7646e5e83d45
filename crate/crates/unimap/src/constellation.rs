//! Unicellular 3-constellations, quasi-constellations and prickly trees:
//! exact evaluators for the closed formulas and their induction relations.
//!
//! A unicellular 3-constellation of size `n` is equivalent to a triple of
//! permutations of `1..=n` composing to the long cycle; its multi-type is
//! the triple of cycle types. The square vertices have degree three and the
//! circle vertices of each color carry one partition of `n`.

use crate::counting::{
    binomial, cperm_count_by_cycles, factorial, partitions_with_length, pow2, weak_compositions,
    Composition, Int, Partition, Rat,
};
use num_traits::{One, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstellationError {
    #[error("partitions must share one size (got {0}, {1}, {2})")]
    SizeMismatch(usize, usize, usize),
    #[error("no unicellular 3-constellation exists: 2n+1-l1-l2-l3 = {0} must be an even nonnegative integer")]
    GenusParity(isize),
    #[error("prickly planarity requires l1+l2+l3 = 2n-2g0+1 (got {0} vs {1})")]
    PricklyPlanarity(usize, isize),
}

/// The multi-type of a unicellular 3-constellation: three partitions of the
/// same size, one per circle color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiType {
    pub lambda: [Partition; 3],
}

impl MultiType {
    pub fn new(l1: Partition, l2: Partition, l3: Partition) -> Result<Self, ConstellationError> {
        let (a, b, c) = (l1.size(), l2.size(), l3.size());
        if a != b || b != c {
            return Err(ConstellationError::SizeMismatch(a, b, c));
        }
        let t = MultiType { lambda: [l1, l2, l3] };
        t.genus()?;
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.lambda[0].size()
    }

    pub fn lengths(&self) -> [usize; 3] {
        [self.lambda[0].len(), self.lambda[1].len(), self.lambda[2].len()]
    }

    /// `g = (2n + 1 - l1 - l2 - l3) / 2`.
    pub fn genus(&self) -> Result<usize, ConstellationError> {
        let n = self.size() as isize;
        let [l1, l2, l3] = self.lengths();
        let parity = 2 * n + 1 - (l1 + l2 + l3) as isize;
        if parity < 0 || parity % 2 != 0 {
            return Err(ConstellationError::GenusParity(parity));
        }
        Ok((parity / 2) as usize)
    }
}

/// `a(λ) = ∏ m_i(λ)!`.
pub fn a_factor(lambda: &Partition) -> Int {
    lambda.multiplicity_factorial()
}

/// `S_g(λ) = (ℓ+2g-1)! Σ_{p_1+…+p_ℓ=g} ∏ C(λ_i - 1, 2p_i) / (2p_i + 1)`.
/// Rational in general; the full constellation formulas assemble it into
/// integers.
pub fn s_poly(lambda: &Partition, g: usize) -> Rat {
    let l = lambda.len();
    if l == 0 {
        return if g == 0 { Rat::one() } else { Rat::zero() };
    }
    let mut sum = Rat::zero();
    for ps in weak_compositions(g, l) {
        let mut term = Rat::one();
        for (i, &p) in ps.iter().enumerate() {
            let b = binomial(lambda.parts()[i] - 1, 2 * p);
            if b.is_zero() {
                term = Rat::zero();
                break;
            }
            term *= Rat::new(b, Int::from(2 * p + 1));
        }
        sum += term;
    }
    sum * Rat::from_integer(factorial(l + 2 * g - 1))
}

fn genus_sum(t: &MultiType, qc: bool) -> Result<Int, ConstellationError> {
    let g = t.genus()?;
    let n = t.size();
    let [l1, l2, l3] = t.lengths();
    let mut total = Rat::zero();
    for g0 in 0..=g {
        for g1 in 0..=g - g0 {
            for g2 in 0..=g - g0 - g1 {
                let g3 = g - g0 - g1 - g2;
                let b1 = checked_binom(n as isize - l1 as isize - 2 * g1 as isize, g0);
                let b2 = checked_binom(n as isize - l2 as isize - 2 * g2 as isize, g0);
                let b3 = checked_binom(n as isize - l3 as isize - 2 * g3 as isize, g0);
                if b1.is_zero() || b2.is_zero() || b3.is_zero() {
                    continue;
                }
                let mut term = Rat::from_integer(
                    factorial(g0) * factorial(g0) * b1 * b2 * b3,
                );
                term *= s_poly(&t.lambda[0], g1);
                term *= s_poly(&t.lambda[1], g2);
                term *= s_poly(&t.lambda[2], g3);
                if term.is_zero() {
                    continue;
                }
                if qc {
                    term *= Rat::new(Int::from(n - g0) * pow2(n), Int::from(n));
                }
                total += term;
            }
        }
    }
    let pre = Rat::new(
        Int::from(n) * Int::from(n),
        pow2(2 * g) * a_factor(&t.lambda[0]) * a_factor(&t.lambda[1]) * a_factor(&t.lambda[2]),
    );
    let out = pre * total;
    assert!(out.is_integer(), "constellation count must be integral");
    Ok(out.to_integer())
}

fn checked_binom(n: isize, k: usize) -> Int {
    if n < 0 || (n as usize) < k {
        Int::zero()
    } else {
        binomial(n as usize, k)
    }
}

/// Number of rooted unicellular 3-constellations of the given multi-type
/// (the Poulalhon-Schaeffer count at m = 3).
pub fn ps_count_m3(t: &MultiType) -> Result<Int, ConstellationError> {
    genus_sum(t, false)
}

/// Number of rooted unicellular 3-quasi-constellations of the given
/// multi-type (cyclic color condition around square vertices dropped).
pub fn qc_count(t: &MultiType) -> Result<Int, ConstellationError> {
    genus_sum(t, true)
}

/// Labelled prickly planar 3-quasi-constellations with color degree
/// compositions `(I, J, L)` and prickling number `g0`:
/// `n (n-g0) 2^n C(n-l1, g0) C(n-l2, g0) C(n-l3, g0) (l1-1)!(l2-1)!(l3-1)!`.
pub fn prickly_count(
    i: &Composition,
    j: &Composition,
    l: &Composition,
    g0: usize,
) -> Result<Int, ConstellationError> {
    let n = i.size();
    if n != j.size() || n != l.size() {
        return Err(ConstellationError::SizeMismatch(n, j.size(), l.size()));
    }
    let (l1, l2, l3) = (i.len(), j.len(), l.len());
    let want = 2 * n as isize - 2 * g0 as isize + 1;
    if (l1 + l2 + l3) as isize != want {
        return Err(ConstellationError::PricklyPlanarity(l1 + l2 + l3, want));
    }
    Ok(Int::from(n)
        * Int::from(n - g0)
        * pow2(n - g0)
        * binomial(n - l1, g0)
        * binomial(n - l2, g0)
        * binomial(n - l3, g0)
        * factorial(l1 - 1)
        * factorial(l2 - 1)
        * factorial(l3 - 1))
}

/// `c_{l1,l2,l3}(n)`: unicellular 3-constellations with the given number of
/// circle vertices per color, summed over all multi-types.
pub fn count_by_lengths(l1: usize, l2: usize, l3: usize, n: usize) -> Int {
    if n == 0 {
        return if l1 == 0 && l2 == 0 && l3 == 0 { Int::one() } else { Int::zero() };
    }
    if l1 == 0 || l2 == 0 || l3 == 0 || l1 > n || l2 > n || l3 > n {
        return Int::zero();
    }
    let mut total = Int::zero();
    for p1 in partitions_with_length(n, l1) {
        for p2 in partitions_with_length(n, l2) {
            for p3 in partitions_with_length(n, l3) {
                if let Ok(t) = MultiType::new(p1.clone(), p2.clone(), p3.clone()) {
                    total += ps_count_m3(&t).expect("feasible multi-type");
                }
            }
        }
    }
    total
}

/// Verifies the two-family induction on `c_{l1,l2,l3}(n)`:
/// `2g c(n) = n²(n-1)/2 · c_{l1,l2,l3}(n-1) + Σ_h [C(l1+2h, 2h+1)
/// c_{l1+2h,l2,l3}(n) + …]` with `2g = 2n+1-l1-l2-l3`. Returns the two
/// sides as witnesses.
pub fn induction_check(l1: usize, l2: usize, l3: usize, n: usize) -> (bool, Int, Int) {
    let two_g = 2 * n as isize + 1 - (l1 + l2 + l3) as isize;
    if two_g < 0 || two_g % 2 != 0 {
        return (true, Int::zero(), Int::zero());
    }
    let lhs = Int::from(two_g) * count_by_lengths(l1, l2, l3, n);
    let mut rhs = Int::from(n * n) * Int::from(n - 1) * count_by_lengths(l1, l2, l3, n - 1)
        / Int::from(2);
    let mut h = 1usize;
    while l1 + 2 * h <= n || l2 + 2 * h <= n || l3 + 2 * h <= n {
        rhs += binomial(l1 + 2 * h, 2 * h + 1) * count_by_lengths(l1 + 2 * h, l2, l3, n);
        rhs += binomial(l2 + 2 * h, 2 * h + 1) * count_by_lengths(l1, l2 + 2 * h, l3, n);
        rhs += binomial(l3 + 2 * h, 2 * h + 1) * count_by_lengths(l1, l2, l3 + 2 * h, n);
        h += 1;
    }
    (lhs == rhs, lhs, rhs)
}

/// Planar 3-constellations of size `m` with `m_i` circle vertices of color
/// `i`, summed over degree types.
fn planar_by_lengths(l1: usize, l2: usize, l3: usize, m: usize) -> Int {
    if l1 + l2 + l3 != 2 * m + 1 {
        return Int::zero();
    }
    count_by_lengths(l1, l2, l3, m)
}

/// `d_{l1,l2,l3}(n; g0)`: planar 3-constellations of size `n - g0` endowed
/// with a sign-normalized C-permutation per color class having `l_i`
/// cycles, and an unordered set of `g0` disjoint color-complete triples of
/// square leaves attached at circle corners. Computed by the leaf-triple
/// placement product `∏_j (n-j)³ / g0!` over the direct base
/// `d(m; 0) = Σ c^planar(m1,m2,m3) ∏ (C-perms of m_i with l_i cycles)/2^(m_i)`.
pub fn d_number(l1: usize, l2: usize, l3: usize, n: usize, g0: usize) -> Rat {
    if g0 > n {
        return Rat::zero();
    }
    let m = n - g0;
    let mut base = Rat::zero();
    // color classes of a size-m planar constellation have m1+m2+m3 = 2m+1
    for m1 in l1..=(2 * m + 1) {
        for m2 in l2..=(2 * m + 1) {
            let rest = 2 * m + 1;
            if m1 + m2 >= rest {
                continue;
            }
            let m3 = rest - m1 - m2;
            if m3 < l3 {
                continue;
            }
            let planar = planar_by_lengths(m1, m2, m3, m);
            if planar.is_zero() {
                continue;
            }
            base += Rat::new(
                planar
                    * cperm_count_by_cycles(m1, l1)
                    * cperm_count_by_cycles(m2, l2)
                    * cperm_count_by_cycles(m3, l3),
                pow2(m1 + m2 + m3),
            );
        }
    }
    let mut out = base;
    for j in 1..=g0 {
        out *= Rat::new(Int::from((n - j) * (n - j) * (n - j)), Int::from(g0 + 1 - j));
    }
    out
}

/// The genus refinement `c_{l1,l2,l3}(n; g0)` defined by the induction
/// `2g c(n;g0) = n(n-1)²/2 · c(n-1;g0-1) + Σ_h [C(l+2h,2h+1) c(n;g0) …]`
/// with `c(n;g0) = δ_{g0,0} c(n)` at genus 0 (and at `n = 0`). The solution
/// is rational in general; it matches the direct placement-product form of
/// the d-numbers through the corollary ratio.
pub fn refined_count(l1: usize, l2: usize, l3: usize, n: usize, g0: usize) -> Rat {
    let mut memo: HashMap<(usize, usize, usize, usize, usize), Rat> = HashMap::new();
    fn go(
        l1: usize,
        l2: usize,
        l3: usize,
        n: usize,
        g0: usize,
        memo: &mut HashMap<(usize, usize, usize, usize, usize), Rat>,
    ) -> Rat {
        let two_g = 2 * n as isize + 1 - (l1 + l2 + l3) as isize;
        if two_g < 0 || two_g % 2 != 0 {
            return Rat::zero();
        }
        if g0 > n {
            return Rat::zero();
        }
        if two_g == 0 || n == 0 {
            return if g0 == 0 {
                Rat::from_integer(count_by_lengths(l1, l2, l3, n))
            } else {
                Rat::zero()
            };
        }
        if let Some(v) = memo.get(&(l1, l2, l3, n, g0)) {
            return v.clone();
        }
        let mut rhs = if g0 >= 1 {
            Rat::new(
                Int::from(n) * Int::from((n - 1) * (n - 1)),
                Int::from(2),
            ) * go(l1, l2, l3, n - 1, g0 - 1, memo)
        } else {
            Rat::zero()
        };
        let mut h = 1usize;
        while l1 + 2 * h <= n || l2 + 2 * h <= n || l3 + 2 * h <= n {
            rhs += Rat::from_integer(binomial(l1 + 2 * h, 2 * h + 1))
                * go(l1 + 2 * h, l2, l3, n, g0, memo);
            rhs += Rat::from_integer(binomial(l2 + 2 * h, 2 * h + 1))
                * go(l1, l2 + 2 * h, l3, n, g0, memo);
            rhs += Rat::from_integer(binomial(l3 + 2 * h, 2 * h + 1))
                * go(l1, l2, l3 + 2 * h, n, g0, memo);
            h += 1;
        }
        let out = rhs / Rat::from_integer(Int::from(two_g));
        memo.insert((l1, l2, l3, n, g0), out.clone());
        out
    }
    go(l1, l2, l3, n, g0, &mut memo)
}

/// Checks `c(n; g0) = n / (2^(2g0) (n - g0)) · d(n; g0)`, the recursion
/// solver against the direct placement-product formula, and returns the
/// two sides.
pub fn corollary_check(l1: usize, l2: usize, l3: usize, n: usize, g0: usize) -> (bool, Rat, Rat) {
    let c = refined_count(l1, l2, l3, n, g0);
    let d = d_number(l1, l2, l3, n, g0);
    let rhs = d * Rat::new(Int::from(n), pow2(2 * g0) * Int::from(n - g0));
    (c == rhs, c, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{factorization_histogram, quasi_constellation_histogram};

    fn mt(a: &[usize], b: &[usize], c: &[usize]) -> MultiType {
        MultiType::new(
            Partition::new(a.to_vec()),
            Partition::new(b.to_vec()),
            Partition::new(c.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn s_poly_values() {
        // genus 0 collapses to (l-1)!
        for parts in [vec![3usize], vec![2, 1], vec![1, 1, 1]] {
            let lambda = Partition::new(parts);
            assert_eq!(
                s_poly(&lambda, 0),
                Rat::from_integer(factorial(lambda.len() - 1))
            );
        }
        assert_eq!(s_poly(&Partition::new(vec![3]), 1), Rat::new(Int::from(2), Int::from(3)));
        assert_eq!(a_factor(&Partition::new(vec![2, 2, 1])), Int::from(2));
    }

    #[test]
    fn planar_formula() {
        // g = 0: n² (l1-1)! (l2-1)! (l3-1)! / (a a a)
        let t = mt(&[1], &[1], &[1]);
        assert_eq!(ps_count_m3(&t).unwrap(), Int::one());
        let t = mt(&[1, 1], &[1, 1], &[2]);
        assert_eq!(t.genus().unwrap(), 0);
        // n² (l1-1)!(l2-1)!(l3-1)!/(a1 a2 a3) = 4·1·1·1/(2·2·1)
        assert_eq!(ps_count_m3(&t).unwrap(), Int::one());
    }

    #[test]
    fn matches_factorization_oracle() {
        for n in 1..=4 {
            let hist = factorization_histogram(n).unwrap();
            // every multi-type of every genus
            for l1 in partitions_with_length_all(n) {
                for l2 in partitions_with_length_all(n) {
                    for l3 in partitions_with_length_all(n) {
                        let Ok(t) = MultiType::new(l1.clone(), l2.clone(), l3.clone()) else {
                            continue;
                        };
                        let expect = hist
                            .get(&(l1.clone(), l2.clone(), l3.clone()))
                            .copied()
                            .unwrap_or(0);
                        assert_eq!(
                            ps_count_m3(&t).unwrap(),
                            Int::from(expect),
                            "n={n} {l1:?} {l2:?} {l3:?}"
                        );
                    }
                }
            }
        }
    }

    fn partitions_with_length_all(n: usize) -> Vec<Partition> {
        crate::counting::partitions(n)
    }

    #[test]
    fn quasi_constellations_at_genus_zero_and_oracle() {
        // planar: exactly 2^n times the constellation count
        for n in 1..=7 {
            for l1 in partitions_with_length_all(n) {
                for l2 in partitions_with_length_all(n) {
                    for l3 in partitions_with_length_all(n) {
                        let Ok(t) = MultiType::new(l1.clone(), l2.clone(), l3.clone()) else {
                            continue;
                        };
                        if t.genus().unwrap() != 0 {
                            continue;
                        }
                        assert_eq!(
                            qc_count(&t).unwrap(),
                            pow2(n) * ps_count_m3(&t).unwrap()
                        );
                    }
                }
            }
        }
        // rotation-system brute force at n <= 2
        for n in 1..=2 {
            let hist = quasi_constellation_histogram(n).unwrap();
            for l1 in partitions_with_length_all(n) {
                for l2 in partitions_with_length_all(n) {
                    for l3 in partitions_with_length_all(n) {
                        let Ok(t) = MultiType::new(l1.clone(), l2.clone(), l3.clone()) else {
                            continue;
                        };
                        let expect = hist
                            .get(&(l1.clone(), l2.clone(), l3.clone()))
                            .copied()
                            .unwrap_or(0);
                        assert_eq!(qc_count(&t).unwrap(), Int::from(expect), "n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_quasi_constellation_count() {
        let t = mt(&[1], &[1], &[1]);
        assert_eq!(qc_count(&t).unwrap(), Int::from(2));
    }

    #[test]
    fn symmetric_in_the_three_colors() {
        let t1 = mt(&[2, 1], &[2, 1], &[3]);
        let t2 = mt(&[2, 1], &[3], &[2, 1]);
        let t3 = mt(&[3], &[2, 1], &[2, 1]);
        let v = ps_count_m3(&t1).unwrap();
        assert_eq!(v, ps_count_m3(&t2).unwrap());
        assert_eq!(v, ps_count_m3(&t3).unwrap());
        let q = qc_count(&t1).unwrap();
        assert_eq!(q, qc_count(&t2).unwrap());
        assert_eq!(q, qc_count(&t3).unwrap());
    }

    #[test]
    fn prickly_counts() {
        // g0 = 0 forces a planar quasi-constellation shape
        let i = Composition::new(vec![2, 1]);
        let j = Composition::new(vec![1, 1, 1]);
        let l = Composition::new(vec![3]);
        // l1+l2+l3 = 6 = 2n+1-2g0 with n = 3, g0 = 0.5 -> must reject
        assert!(prickly_count(&i, &j, &l, 0).is_err());
        let l = Composition::new(vec![2, 1]);
        // lengths (2,3,2) sum 7 = 2*3+1: g0 = 0
        assert_eq!(
            prickly_count(&i, &j, &l, 0).unwrap(),
            Int::from(3) * Int::from(3) * pow2(3) * factorial(1) * factorial(2) * factorial(1)
        );
        // zero when g0 exceeds n - l_i
        let i2 = Composition::new(vec![1; 6]);
        let j2 = Composition::new(vec![3, 1, 1, 1]);
        let l2 = Composition::new(vec![6]);
        assert_eq!(prickly_count(&i2, &j2, &l2, 1).unwrap(), Int::zero());
    }

    #[test]
    fn induction_holds() {
        for n in 1..=4usize {
            for l1 in 1..=n {
                for l2 in 1..=n {
                    for l3 in 1..=n {
                        let (ok, lhs, rhs) = induction_check(l1, l2, l3, n);
                        assert!(ok, "n={n} l=({l1},{l2},{l3}): {lhs} vs {rhs}");
                    }
                }
            }
        }
    }

    #[test]
    fn refinement_grounds_at_prickling_zero() {
        // the g0 = 0 slice carries the pure vertex-permutation genus and
        // must agree with the sign-normalized planar-times-cperm base
        for n in 1..=4usize {
            for l1 in 1..=n {
                for l2 in 1..=n {
                    for l3 in 1..=n {
                        assert_eq!(
                            refined_count(l1, l2, l3, n, 0),
                            d_number(l1, l2, l3, n, 0),
                            "n={n} ({l1},{l2},{l3})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn full_prickling_reduces_to_planar_with_color_decoration() {
        // g0 = g: the cperms are forced trivial on two... the refinement at
        // maximal prickling matches the corollary ratio directly
        for n in 2..=4usize {
            let (ok, c, rhs) = corollary_check(1, 1, 1, n, n - 1);
            assert!(ok, "n={n}: {c} vs {rhs}");
        }
    }

    #[test]
    fn corollary_relation() {
        for n in 1..=4usize {
            for l1 in 1..=n {
                for l2 in 1..=n {
                    for l3 in 1..=n {
                        for g0 in 0..n {
                            let (ok, c, rhs) = corollary_check(l1, l2, l3, n, g0);
                            assert!(ok, "n={n} ({l1},{l2},{l3}) g0={g0}: {c} vs {rhs}");
                        }
                    }
                }
            }
        }
    }
}
