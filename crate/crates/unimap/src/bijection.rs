//! The fractional bijection between `2^(n+1)` copies of genus-g unicellular
//! maps and C-decorated trees, and the exact uniform sampler built on it.
//!
//! One code path drives both modes: a [`Chooser`] resolves the random
//! branch points (which trisection to slice, which non-minimal element to
//! split). Sampling plugs in a seeded RNG; the exact outcome expansion
//! replays every choice path and carries exact rational probabilities, so
//! the test oracle and the sampler cannot diverge.

use crate::counting::{cperm_count, factorial, Int, Rat};
use crate::ctree::{compose_ctree, decompose_ctree, CDecoratedTree, CPermutation, CTreeError, PlaneTree};
use crate::rotation::{MapError, RotationMap};
use num_bigint::RandBigInt;
use num_traits::One;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BijectionError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    CTree(#[from] CTreeError),
    #[error("copy index {0} out of range 1..=2^(n+1)")]
    CopyIndexOutOfRange(usize),
    #[error("no unicellular map has genus {0} with {1} edges")]
    InfeasibleGenus(usize, usize),
}

/// Resolves branch points: `choose(k)` returns an index in `0..k`.
pub trait Chooser {
    fn choose(&mut self, options: usize) -> usize;
}

/// Deterministic random stream; identical seeds give identical samples.
pub struct MapRng {
    rng: ChaCha8Rng,
}

impl MapRng {
    pub fn from_seed(seed: u64) -> Self {
        MapRng { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn big_below(&mut self, bound: &Int) -> Int {
        let b = bound.to_biguint().expect("positive bound");
        Int::from(self.rng.gen_biguint_below(&b))
    }
}

impl Chooser for MapRng {
    fn choose(&mut self, options: usize) -> usize {
        self.rng.gen_range(0..options)
    }
}

/// Replays a scripted prefix of choices and records the branching factors,
/// for exhaustive outcome expansion.
struct Scripted {
    script: Vec<usize>,
    factors: Vec<usize>,
    at: usize,
}

impl Chooser for Scripted {
    fn choose(&mut self, options: usize) -> usize {
        let pick = if self.at < self.script.len() {
            self.script[self.at]
        } else {
            self.script.push(0);
            0
        };
        if self.at < self.factors.len() {
            self.factors[self.at] = options;
        } else {
            self.factors.push(options);
        }
        self.at += 1;
        pick
    }
}

/// Runs `f` over every complete choice path, yielding each outcome with its
/// exact probability (product of one-over-branching-factors).
fn expand<T>(mut f: impl FnMut(&mut Scripted) -> T) -> Vec<(T, Rat)> {
    let mut out = Vec::new();
    let mut script: Vec<usize> = Vec::new();
    loop {
        let mut chooser = Scripted { script: script.clone(), factors: Vec::new(), at: 0 };
        let value = f(&mut chooser);
        let mut prob = Rat::one();
        for &k in &chooser.factors {
            prob *= Rat::new(Int::one(), Int::from(k));
        }
        out.push((value, prob));
        // advance to the next path in depth-first order
        script = chooser.script;
        while let Some(&last) = script.last() {
            let depth = script.len() - 1;
            if last + 1 < chooser.factors[depth] {
                script[depth] += 1;
                break;
            }
            script.pop();
        }
        if script.is_empty() {
            return out;
        }
    }
}

fn signs_from_copy_index(copy_index: usize, n_vertices: usize) -> Vec<bool> {
    // bit j of copy_index - 1 carries the sign of the cycle containing
    // vertex j+1; a set bit means negative
    (0..n_vertices).map(|j| (copy_index - 1) >> j & 1 == 0).collect()
}

fn copy_index_from_signs(signs: &[bool]) -> usize {
    let mut idx = 0usize;
    for (j, &positive) in signs.iter().enumerate() {
        if !positive {
            idx |= 1 << j;
        }
    }
    idx + 1
}

/// Map-vertex to C-permutation-cycle correspondence, realizing the
/// underlying-graph preservation: keys are stable vertex ids (smallest
/// half-edge), values the minima of the matching cycles.
pub type VertexCycleMap = BTreeMap<usize, usize>;

/// Sends a unicellular map with a copy index in `1..=2^(n+1)` to a
/// C-decorated tree of the same genus and edge count with the same
/// underlying graph. Positive genus resolves one `choose(2g)` per slicing
/// level through the chooser.
pub fn map_to_ctree_with(
    map: &RotationMap,
    copy_index: usize,
    chooser: &mut dyn Chooser,
) -> Result<(CDecoratedTree, VertexCycleMap), BijectionError> {
    let n = map.n_edges();
    if copy_index == 0 || (n + 1 < 64 && copy_index > 1 << (n + 1)) {
        return Err(BijectionError::CopyIndexOutOfRange(copy_index));
    }
    let g = map.genus();
    if g == 0 {
        let (tree, vertex_of) = PlaneTree::from_map(map)?;
        let signs = signs_from_copy_index(copy_index, tree.n_vertices());
        let cperm = CPermutation::signed_identity(&signs);
        let mut vm = VertexCycleMap::new();
        for h in 0..map.half_edge_count() {
            vm.insert(map.vertex_id(h), vertex_of[h] + 1);
        }
        return Ok((CDecoratedTree::new(tree, cperm)?, vm));
    }
    let taus = map.trisections()?;
    let tau = taus[chooser.choose(taus.len())];
    let sliced_vertex = map.vertex_id(tau);
    let (sliced, marks) = map.psi(tau)?;
    let (inner, inner_vm) = map_to_ctree_with(&sliced, copy_index, chooser)?;
    let marked_cycles: Vec<usize> = marks.iter().map(|id| inner_vm[id]).collect();
    let (ctree, _marked_element) = compose_ctree(&inner, &marked_cycles)?;
    // merged cycle keeps the smallest element of the union
    let merged_min = *marked_cycles.iter().min().unwrap();
    let mut vm = VertexCycleMap::new();
    for h in 0..map.half_edge_count() {
        let v = map.vertex_id(h);
        let entry = if v == sliced_vertex { merged_min } else { inner_vm[&v] };
        vm.insert(v, entry);
    }
    Ok((ctree, vm))
}

/// Inverse direction: sends a C-decorated tree to a unicellular map plus
/// the copy index, preserving the underlying graph.
pub fn ctree_to_map_with(
    ctree: &CDecoratedTree,
    chooser: &mut dyn Chooser,
) -> Result<(RotationMap, usize, VertexCycleMap), BijectionError> {
    let g = ctree.genus();
    if g == 0 {
        let signs: Vec<bool> = {
            let mut by_elem = vec![true; ctree.tree.n_vertices()];
            for (sign, cyc) in ctree.cperm.cycles() {
                by_elem[cyc[0] - 1] = *sign;
            }
            by_elem
        };
        let copy_index = copy_index_from_signs(&signs);
        let map = ctree.tree.to_map();
        let mut vm = VertexCycleMap::new();
        // tree vertex v owns half-edges 2v-1 (toward the parent) and 2(c-1)
        // per child c, so its stable id is 0 for the root and 2v-1 otherwise
        vm.insert(0, 1);
        for v in 1..ctree.tree.n_vertices() {
            vm.insert(2 * v - 1, v + 1);
        }
        return Ok((map, copy_index, vm));
    }
    let nonmin = ctree.cperm.non_minimal_elements();
    let pick = nonmin[chooser.choose(nonmin.len())];
    let (inner, marked_cycles) = decompose_ctree(ctree, pick)?;
    let (sliced, copy_index, inner_vm) = ctree_to_map_with(&inner, chooser)?;
    let wanted: Vec<usize> = marked_cycles.clone();
    let marked_ids: Vec<usize> = inner_vm
        .iter()
        .filter(|(_, &cyc)| wanted.contains(&cyc))
        .map(|(&id, _)| id)
        .collect();
    let (map, _tau) = sliced.psi_inverse(&marked_ids)?;
    let merged_min = *wanted.iter().min().unwrap();
    let merged_vertex = *marked_ids.iter().min().unwrap();
    let mut vm = VertexCycleMap::new();
    for h in 0..map.half_edge_count() {
        let v = map.vertex_id(h);
        let entry = if v == merged_vertex { merged_min } else { inner_vm[&v] };
        vm.insert(v, entry);
    }
    Ok((map, copy_index, vm))
}

/// Sampling front end for [`map_to_ctree_with`].
pub fn map_to_ctree(
    map: &RotationMap,
    copy_index: usize,
    rng: &mut MapRng,
) -> Result<CDecoratedTree, BijectionError> {
    map_to_ctree_with(map, copy_index, rng).map(|(t, _)| t)
}

/// Sampling front end for [`ctree_to_map_with`].
pub fn ctree_to_map(
    ctree: &CDecoratedTree,
    rng: &mut MapRng,
) -> Result<(RotationMap, usize), BijectionError> {
    ctree_to_map_with(ctree, rng).map(|(m, c, _)| (m, c))
}

/// Full exact outcome expansion of `map_to_ctree` over every random branch.
pub fn expand_map_to_ctree(
    map: &RotationMap,
    copy_index: usize,
) -> Vec<(CDecoratedTree, VertexCycleMap, Rat)> {
    expand(|ch| map_to_ctree_with(map, copy_index, ch).expect("expansion branch"))
        .into_iter()
        .map(|((t, vm), p)| (t, vm, p))
        .collect()
}

/// Full exact outcome expansion of `ctree_to_map`.
pub fn expand_ctree_to_map(
    ctree: &CDecoratedTree,
) -> Vec<(RotationMap, usize, VertexCycleMap, Rat)> {
    expand(|ch| ctree_to_map_with(ctree, ch).expect("expansion branch"))
        .into_iter()
        .map(|((m, c, vm), p)| (m, c, vm, p))
        .collect()
}

/// Uniform random plane tree with `n` edges, by the cycle lemma: a uniform
/// arrangement of `n` up-steps among `2n+1` steps has exactly one rotation
/// whose first `2n` steps form a Dyck word.
pub fn sample_plane_tree(n: usize, rng: &mut MapRng) -> PlaneTree {
    if n == 0 {
        return PlaneTree::trivial();
    }
    let len = 2 * n + 1;
    let mut steps: Vec<i32> = std::iter::repeat(1)
        .take(n)
        .chain(std::iter::repeat(-1).take(n + 1))
        .collect();
    // Fisher-Yates
    for i in (1..len).rev() {
        let j = rng.choose(i + 1);
        steps.swap(i, j);
    }
    let mut best = (i32::MAX, 0usize);
    let mut sum = 0i32;
    for (i, &s) in steps.iter().enumerate() {
        sum += s;
        if sum < best.0 {
            best = (sum, i);
        }
    }
    let start = (best.1 + 1) % len;
    let word: String = (0..2 * n)
        .map(|i| if steps[(start + i) % len] == 1 { '(' } else { ')' })
        .collect();
    PlaneTree::from_dyck(&word).expect("cycle lemma yields a Dyck word")
}

/// Uniform random C-permutation of genus `g` on `1..=m`: an odd cycle type
/// is drawn with probability proportional to the number of C-permutations
/// carrying it, then cycles are filled from a uniform shuffle and signed
/// with fair coins.
pub fn sample_cperm(m: usize, g: usize, rng: &mut MapRng) -> Result<CPermutation, BijectionError> {
    if m < 2 * g + 1 {
        return Err(BijectionError::InfeasibleGenus(g, m));
    }
    // cycle types: partitions of g give the odd parts 2γ_i + 1 plus
    // fixed points; weight = a_type(m) · 2^(#cycles)
    let mut types: Vec<(Vec<usize>, Int)> = Vec::new();
    for gamma in crate::counting::partitions(g) {
        let l = gamma.len();
        if m < 2 * g + l {
            continue;
        }
        let fixed = m - 2 * g - l;
        let mut parts: Vec<usize> = gamma.parts().iter().map(|&i| 2 * i + 1).collect();
        parts.extend(std::iter::repeat(1).take(fixed));
        let cycles = parts.len();
        let mut weight = factorial(m);
        let mut mult = Int::one();
        {
            let mut run = 0usize;
            let mut prev = 0usize;
            for &p in &parts {
                if p == prev {
                    run += 1;
                } else {
                    prev = p;
                    run = 1;
                }
                mult *= Int::from(run);
            }
        }
        for &p in &parts {
            weight /= Int::from(p);
        }
        weight /= mult;
        weight *= Int::one() << cycles;
        types.push((parts, weight));
    }
    let total: Int = types.iter().map(|(_, w)| w.clone()).sum();
    debug_assert_eq!(total, cperm_count(g, m));
    let mut draw = rng.big_below(&total);
    let mut chosen: &[usize] = &types[0].0;
    for (parts, w) in &types {
        if draw < *w {
            chosen = parts;
            break;
        }
        draw -= w;
    }
    // fill cycles from a uniform shuffle; rotations and equal-size block
    // order overcount every C-permutation equally, so this stays uniform
    let mut elems: Vec<usize> = (1..=m).collect();
    for i in (1..m).rev() {
        let j = rng.choose(i + 1);
        elems.swap(i, j);
    }
    let mut cycles = Vec::with_capacity(chosen.len());
    let mut at = 0;
    for &len in chosen {
        let block: Vec<usize> = elems[at..at + len].to_vec();
        at += len;
        cycles.push((rng.choose(2) == 0, block));
    }
    Ok(CPermutation::new(cycles)?)
}

/// Exactly uniform sample from the rooted unicellular maps of genus `g`
/// with `n` edges: a uniform C-decorated tree pushed through the fractional
/// bijection.
pub fn sample_uniform_map(g: usize, n: usize, rng: &mut MapRng) -> Result<RotationMap, BijectionError> {
    if n == 0 || n + 1 < 2 * g + 1 {
        return Err(BijectionError::InfeasibleGenus(g, n));
    }
    let tree = sample_plane_tree(n, rng);
    let cperm = sample_cperm(n + 1, g, rng)?;
    let ctree = CDecoratedTree::new(tree, cperm)?;
    let (map, _copy) = ctree_to_map(&ctree, rng)?;
    Ok(map)
}

/// Underlying multigraph of a map under the vertex-to-cycle correspondence:
/// edges as sorted pairs of cycle minima, sorted. Comparable against
/// [`CDecoratedTree::underlying_graph`] labelled the same way.
pub fn map_graph_key(map: &RotationMap, vm: &VertexCycleMap) -> (usize, Vec<(usize, usize)>) {
    let part = map.vertex_partition();
    let mut edges = Vec::with_capacity(map.n_edges());
    for h in 0..map.half_edge_count() {
        let other = map.alpha().apply(h);
        if h < other {
            let (a, b) = (vm[&part[h]], vm[&part[other]]);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    (vm[&part[map.root()]], edges)
}

/// Underlying multigraph of a C-decorated tree keyed by cycle minima.
pub fn ctree_graph_key(ctree: &CDecoratedTree) -> (usize, Vec<(usize, usize)>) {
    let min_of_cycle = |v: usize| -> usize {
        let idx = ctree.cperm.cycle_index_of(v + 1).unwrap();
        ctree.cperm.cycles()[idx].1[0]
    };
    let root = min_of_cycle(0);
    let mut edges: Vec<(usize, usize)> = (1..ctree.tree.n_vertices())
        .map(|v| {
            let p = ctree.tree.parent(v).unwrap();
            let (a, b) = (min_of_cycle(p), min_of_cycle(v));
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    (root, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{catalan, epsilon_lw, pow2};
    use crate::oracle::{enumerate_ctrees, unicellular_maps};
    use num_traits::{ToPrimitive, Zero};

    #[test]
    fn genus_zero_is_deterministic_and_inverse() {
        let mut rng = MapRng::from_seed(7);
        for n in 1..=4 {
            for tree in PlaneTree::enumerate(n) {
                for copy in 1..=(1 << (n + 1)) {
                    let signs = signs_from_copy_index(copy, n + 1);
                    let cperm = CPermutation::signed_identity(&signs);
                    let ctree = CDecoratedTree::new(tree.clone(), cperm).unwrap();
                    let (map, copy_back, _) = ctree_to_map_with(&ctree, &mut rng).unwrap();
                    assert_eq!(copy_back, copy);
                    let (back, _) = map_to_ctree_with(&map, copy, &mut rng).unwrap();
                    assert_eq!(back, ctree);
                }
            }
        }
    }

    #[test]
    fn expansion_probabilities_sum_to_one() {
        for map in unicellular_maps(3) {
            if map.genus() != 1 {
                continue;
            }
            let total: Rat = expand_map_to_ctree(&map, 5)
                .into_iter()
                .map(|(_, _, p)| p)
                .sum();
            assert_eq!(total, Rat::one());
        }
    }

    #[test]
    fn bistochastic_at_two_edges_genus_one() {
        // rows: (map, copy) over 2^3 copies of the unique genus-1 map;
        // columns: the 8 C-decorated trees of T_1(2)
        let maps: Vec<RotationMap> =
            unicellular_maps(2).filter(|m| m.genus() == 1).collect();
        assert_eq!(maps.len(), 1);
        let all_ctrees = enumerate_ctrees(2, 1).unwrap();
        assert_eq!(all_ctrees.len(), 8);
        let mut col_sums: BTreeMap<String, Rat> = BTreeMap::new();
        let mut rows = 0;
        for map in &maps {
            for copy in 1..=8 {
                rows += 1;
                let mut row_sum = Rat::zero();
                for (ctree, vm, p) in expand_map_to_ctree(map, copy) {
                    // graph preservation on every branch
                    assert_eq!(map_graph_key(map, &vm), ctree_graph_key(&ctree));
                    row_sum += p.clone();
                    *col_sums.entry(ctree.to_json()).or_insert_with(Rat::zero) += p;
                }
                assert_eq!(row_sum, Rat::one());
            }
        }
        assert_eq!(rows, 8);
        assert_eq!(col_sums.len(), 8);
        for (_, s) in col_sums {
            assert_eq!(s, Rat::one());
        }
        // reverse direction
        let mut col_sums_rev: BTreeMap<String, Rat> = BTreeMap::new();
        for ctree in &all_ctrees {
            let mut row_sum = Rat::zero();
            for (map, copy, vm, p) in expand_ctree_to_map(ctree) {
                assert_eq!(map_graph_key(&map, &vm), ctree_graph_key(ctree));
                row_sum += p.clone();
                let key = format!("{}|{copy}", map.canonical().unwrap().to_json());
                *col_sums_rev.entry(key).or_insert_with(Rat::zero) += p;
            }
            assert_eq!(row_sum, Rat::one());
        }
        assert_eq!(col_sums_rev.len(), 8);
        for (_, s) in col_sums_rev {
            assert_eq!(s, Rat::one());
        }
    }

    #[test]
    fn sampler_is_deterministic_under_a_seed() {
        let a = sample_uniform_map(1, 3, &mut MapRng::from_seed(42)).unwrap();
        let b = sample_uniform_map(1, 3, &mut MapRng::from_seed(42)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.genus(), 1);
        assert_eq!(a.n_edges(), 3);
    }

    #[test]
    fn sampler_hits_the_unique_small_map() {
        for seed in 0..10 {
            let m = sample_uniform_map(1, 2, &mut MapRng::from_seed(seed)).unwrap();
            assert_eq!(m.genus(), 1);
            assert_eq!(m.canonical().unwrap().alpha().images(), &[2, 3, 0, 1]);
        }
    }

    #[test]
    fn plane_tree_sampler_counts_look_uniform() {
        // exact check of the support at n=3: all 5 trees show up
        let mut rng = MapRng::from_seed(1);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..500 {
            seen.insert(sample_plane_tree(3, &mut rng).to_dyck());
        }
        assert_eq!(seen.len(), catalan(3).to_usize().unwrap());
    }

    #[test]
    fn cperm_sampler_matches_support() {
        let mut rng = MapRng::from_seed(3);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..4000 {
            let c = sample_cperm(4, 1, &mut rng).unwrap();
            assert_eq!(c.genus(), 1);
            seen.insert(format!("{c:?}"));
        }
        assert_eq!(Int::from(seen.len()), cperm_count(1, 4));
        let total_t1_3 = catalan(3) * cperm_count(1, 4);
        assert_eq!(total_t1_3, Int::from(160));
        let _ = (epsilon_lw(1, 3), pow2(4));
    }
}
