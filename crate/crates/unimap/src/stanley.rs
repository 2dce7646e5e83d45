//! Stanley character polynomials via free cumulants.
//!
//! `R_{n+1}` is the generating polynomial of plane trees with `n` edges
//! whose vertices carry values in `1..=r` subject to the order condition
//! (each edge's black end is at least its white end, the root being black),
//! weighted by `p` at white vertices and `q` at black ones. The operator
//! `D` replaces each variable power `x^k` by `Σ_g c_g(k) x^(k-2g)`, and
//! `F_n = D(R_{n+1}) / 2^(n+1)` evaluates normalized symmetric-group
//! characters on an `n`-cycle.

use crate::counting::{cperm_count, falling, pow2, Int, Rat};
use crate::ctree::PlaneTree;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Multivariate polynomial over the variables `p_1..p_r, q_1..q_r` with
/// exact integer coefficients. Exponent vectors have length `2r`: entry
/// `i < r` is the power of `p_(i+1)`, entry `r + j` the power of `q_(j+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    pub n_vars: usize,
    terms: BTreeMap<Vec<u32>, Int>,
}

impl SparsePoly {
    pub fn zero(n_vars: usize) -> Self {
        SparsePoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Int) -> Self {
        let mut p = SparsePoly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn variable(n_vars: usize, var: usize) -> Self {
        let mut exps = vec![0u32; n_vars];
        exps[var] = 1;
        let mut p = SparsePoly::zero(n_vars);
        p.terms.insert(exps, Int::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Int {
        self.terms.get(exps).cloned().unwrap_or_else(Int::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Divides every coefficient by `d`; panics if any division is inexact.
    pub fn exact_div(&self, d: &Int) -> SparsePoly {
        let mut out = SparsePoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(c, d);
            assert!(r.is_zero(), "coefficient {c} not divisible by {d}");
            out.terms.insert(e.clone(), q);
        }
        out
    }

    pub fn eval(&self, values: &[Int]) -> Int {
        assert_eq!(values.len(), self.n_vars);
        let mut total = Int::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &pow) in values.iter().zip(e) {
                for _ in 0..pow {
                    term *= v;
                }
            }
            total += term;
        }
        total
    }

    /// Sum of all coefficients (evaluation at all-ones).
    pub fn coeff_sum(&self) -> Int {
        self.terms.values().sum()
    }

    /// Terms in graded lexicographic order, for printing.
    fn graded_terms(&self) -> Vec<(&Vec<u32>, &Int)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea)).reverse()
        });
        ts.reverse();
        ts
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let r = self.n_vars / 2;
        let mut first = true;
        for (exps, coeff) in self.graded_terms() {
            if !first {
                f.write_str(if coeff.is_negative() { " - " } else { " + " })?;
            } else {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            }
            let mag = coeff.abs();
            let mut wrote = false;
            if !mag.is_one() || exps.iter().all(|&e| e == 0) {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                wrote = true;
                if i < r {
                    write!(f, "p{}", i + 1)?;
                } else {
                    write!(f, "q{}", i - r + 1)?;
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// The free cumulant `R_k` in the variables `p_1..p_r, q_1..q_r`: the
/// order-condition generating polynomial of plane trees with `k-1` edges.
/// Labelings are counted by dynamic programming over each tree rather than
/// by brute cartesian product.
pub fn free_cumulant_r(k: usize, r: usize) -> SparsePoly {
    assert!(k >= 1 && r >= 1);
    let n_vars = 2 * r;
    let mut total = SparsePoly::zero(n_vars);
    for tree in PlaneTree::enumerate(k - 1) {
        // f[v][c] = weighted count of labelings of v's subtree with value c+1
        let nv = tree.n_vertices();
        let mut f: Vec<Vec<SparsePoly>> = vec![Vec::new(); nv];
        // process vertices in reverse DFS order so children come first
        for v in (0..nv).rev() {
            let black = tree.depth(v) % 2 == 0;
            let mut per_value = Vec::with_capacity(r);
            for c in 0..r {
                let var = if black {
                    SparsePoly::variable(n_vars, r + c)
                } else {
                    SparsePoly::variable(n_vars, c)
                };
                let mut acc = var;
                for &w in tree.children(v) {
                    // edge constraint: black end at least the white end
                    let mut child_sum = SparsePoly::zero(n_vars);
                    let range: Box<dyn Iterator<Item = usize>> = if black {
                        Box::new(0..=c)
                    } else {
                        Box::new(c..r)
                    };
                    for cw in range {
                        child_sum = child_sum.add(&f[w][cw]);
                    }
                    acc = acc.mul(&child_sum);
                }
                per_value.push(acc);
            }
            f[v] = per_value;
        }
        for c in 0..r {
            total = total.add(&f[0][c]);
        }
    }
    total
}

/// The genus-adding operator: `D(x^k) = Σ_g c_g(k) x^(k-2g)` on each
/// variable independently, extended multiplicatively over monomials in
/// distinct variables and linearly over polynomials.
pub fn d_operator(poly: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::zero(poly.n_vars);
    for (exps, coeff) in poly.terms() {
        let mut expanded = SparsePoly::constant(poly.n_vars, coeff.clone());
        for (var, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut var_poly = SparsePoly::zero(poly.n_vars);
            let mut g = 0usize;
            while 2 * g <= e as usize {
                let c = cperm_count(g, e as usize);
                if !c.is_zero() {
                    let mut ex = vec![0u32; poly.n_vars];
                    ex[var] = e - 2 * g as u32;
                    var_poly.add_term(ex, c);
                }
                g += 1;
            }
            expanded = expanded.mul(&var_poly);
        }
        out = out.add(&expanded);
    }
    out
}

/// Stanley character polynomial `F_n = D(R_{n+1}) / 2^(n+1)`; the division
/// is exact, and a failed division would expose a bug.
pub fn stanley_f(n: usize, r: usize) -> SparsePoly {
    let rn = free_cumulant_r(n + 1, r);
    d_operator(&rn).exact_div(&pow2(n + 1))
}

/// Normalized character of the irreducible representation of `S_L`
/// evaluated on an `n`-cycle, for the shape with `p_1` rows of length
/// `q_1+…+q_r`, then `p_2` rows of length `q_2+…+q_r`, and so on
/// (`L = Σ_{i≤j} p_i q_j` boxes). Returns 0 when `L < n`.
///
/// The character is the alternating specialization of the Stanley
/// polynomial: `χ̂ = -F_n(-p; q) / (L(L-1)…(L-n+1))`, equivalently the
/// order-condition map sum signed by the parity of the white vertex count.
pub fn character_eval(n: usize, p: &[usize], q: &[usize]) -> Rat {
    assert_eq!(p.len(), q.len());
    assert!(p.iter().chain(q).all(|&x| x >= 1), "shape parameters must be positive");
    let r = p.len();
    let mut boxes = 0usize;
    for i in 0..r {
        for j in i..r {
            boxes += p[i] * q[j];
        }
    }
    if boxes < n {
        return Rat::zero();
    }
    let f = stanley_f(n, r);
    let values: Vec<Int> = p
        .iter()
        .map(|&x| -Int::from(x))
        .chain(q.iter().map(|&x| Int::from(x)))
        .collect();
    Rat::new(-f.eval(&values), falling(boxes as isize, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::catalan;
    use crate::oracle::{bipartition_classes, unicellular_maps};

    fn term(poly: &SparsePoly, exps: &[u32]) -> Int {
        poly.coeff(exps)
    }

    #[test]
    fn r2_with_two_values() {
        // single edge: q1*p1 + q2*p1 + q2*p2
        let r2 = free_cumulant_r(2, 2);
        assert_eq!(r2.n_terms(), 3);
        assert_eq!(term(&r2, &[1, 0, 1, 0]), Int::from(1));
        assert_eq!(term(&r2, &[1, 0, 0, 1]), Int::from(1));
        assert_eq!(term(&r2, &[0, 1, 0, 1]), Int::from(1));
    }

    #[test]
    fn single_value_collapses_to_catalan() {
        for k in 2..=6 {
            let rk = free_cumulant_r(k, 1);
            assert_eq!(rk.coeff_sum(), catalan(k - 1), "k={k}");
        }
    }

    #[test]
    fn d_operator_on_powers() {
        let x = SparsePoly::variable(2, 0);
        assert_eq!(d_operator(&x).coeff(&[1, 0]), Int::from(2));
        let x2 = x.mul(&x);
        let d2 = d_operator(&x2);
        assert_eq!(d2.coeff(&[2, 0]), Int::from(4));
        assert_eq!(d2.coeff(&[0, 0]), Int::from(0));
        let x3 = x2.mul(&x);
        let d3 = d_operator(&x3);
        assert_eq!(d3.coeff(&[3, 0]), Int::from(8));
        assert_eq!(d3.coeff(&[1, 0]), Int::from(4));
    }

    #[test]
    fn f1_equals_r2() {
        for r in 1..=3 {
            assert_eq!(stanley_f(1, r), free_cumulant_r(2, r));
        }
    }

    /// Brute-force order-condition sum over bipartite unicellular maps.
    fn oracle_f(n: usize, r: usize) -> SparsePoly {
        let n_vars = 2 * r;
        let mut total = SparsePoly::zero(n_vars);
        for map in unicellular_maps(n) {
            let Some(black) = bipartition_classes(&map) else { continue };
            let vertices = map.vertices();
            let nv = vertices.len();
            // which vertex a half-edge belongs to, as index into vertices
            let mut owner = vec![0usize; map.half_edge_count()];
            for (vi, v) in vertices.iter().enumerate() {
                for &h in v {
                    owner[h] = vi;
                }
            }
            let mut phi = vec![0usize; nv];
            fn rec(
                v: usize,
                nv: usize,
                r: usize,
                phi: &mut Vec<usize>,
                map: &crate::rotation::RotationMap,
                owner: &[usize],
                black: &[bool],
                total: &mut SparsePoly,
                n_vars: usize,
            ) {
                if v == nv {
                    // order condition on every edge
                    for h in 0..map.half_edge_count() {
                        let o = map.alpha().apply(h);
                        if h < o {
                            let (a, b) = (owner[h], owner[o]);
                            let (bk, wt) = if black[a] { (a, b) } else { (b, a) };
                            if phi[bk] < phi[wt] {
                                return;
                            }
                        }
                    }
                    let mut exps = vec![0u32; n_vars];
                    for (vi, &val) in phi.iter().enumerate() {
                        if black[vi] {
                            exps[n_vars / 2 + val] += 1;
                        } else {
                            exps[val] += 1;
                        }
                    }
                    total.add_term(exps, Int::from(1));
                    return;
                }
                for c in 0..r {
                    phi[v] = c;
                    rec(v + 1, nv, r, phi, map, owner, black, total, n_vars);
                }
            }
            rec(0, nv, r, &mut phi, &map, &owner, &black, &mut total, n_vars);
        }
        total
    }

    #[test]
    fn stanley_matches_brute_force() {
        for n in 1..=4 {
            for r in 1..=2 {
                assert_eq!(stanley_f(n, r), oracle_f(n, r), "n={n} r={r}");
            }
        }
        assert_eq!(stanley_f(2, 3), oracle_f(2, 3));
    }

    #[test]
    fn stable_under_adding_values() {
        // coefficients supported on 1..=r are unchanged at r+1
        for n in 1..=3 {
            let small = stanley_f(n, 2);
            let big = stanley_f(n, 3);
            for (exps, c) in small.terms() {
                let lifted = vec![
                    exps[0], exps[1], 0, // p1 p2 p3
                    exps[2], exps[3], 0, // q1 q2 q3
                ];
                assert_eq!(&big.coeff(&lifted), c);
            }
        }
    }

    #[test]
    fn trivial_representation_has_unit_character() {
        // single-row shapes: p = (1), q = (L)
        for l in 1..=8 {
            for n in 1..=l {
                assert_eq!(character_eval(n, &[1], &[l]), Rat::one(), "n={n} L={l}");
            }
        }
        // too-long cycles evaluate to zero
        assert_eq!(character_eval(4, &[1], &[3]), Rat::zero());
    }

    #[test]
    fn sign_representation_character() {
        // single-column shapes: p = (L), q = (1); an n-cycle has sign (-1)^(n-1)
        for l in 2..=7 {
            for n in 2..=l {
                let expect = if n % 2 == 0 { -Rat::one() } else { Rat::one() };
                assert_eq!(character_eval(n, &[l], &[1]), expect, "n={n} L={l}");
            }
        }
    }

    #[test]
    fn two_by_two_square_against_brute_force() {
        // λ = (2,2): p = (2), q = (2), n = 2: the alternating specialization
        // of the brute-force polynomial gives the same character (namely 0,
        // the character of the square shape on a transposition)
        let f = oracle_f(2, 1);
        let val = -f.eval(&[Int::from(-2), Int::from(2)]);
        let got = character_eval(2, &[2], &[2]);
        assert_eq!(got, Rat::new(val, falling(4, 2)));
        assert_eq!(got, Rat::zero());
    }

    #[test]
    fn standard_representation_vanishes_on_transpositions() {
        // λ = (2,1): p = (1,1), q = (1,1)
        assert_eq!(character_eval(2, &[1, 1], &[1, 1]), Rat::zero());
    }
}
