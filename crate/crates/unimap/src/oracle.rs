//! Brute-force exhaustive enumeration at desk scale.
//!
//! Rooted unicellular maps with `n` edges are enumerated canonically: the
//! face tour is fixed to the cycle `(0,1,…,2n-1)` and the map is determined
//! by a fixed-point-free involution on the half-edges, so the search space
//! is exactly the `(2n-1)!!` involutions. Everything else here builds on
//! that representation and cross-checks the closed formulas.

use crate::counting::{
    self, binomial, bipartite_unicellular_count, catalan, colored_count, cperm_count,
    double_factorial_odd, epsilon_hz, epsilon_lw, factorial, goupil_schaeffer_bi, jackson_count,
    morales_vassilieva_bic, Composition, Int, Partition,
};
use crate::ctree::{CDecoratedTree, CPermutation, PlaneTree};
use crate::perm::{fixed_point_free_involutions, Perm};
use crate::rotation::RotationMap;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("state space too large: {0} states exceeds the cap {1} (override with UNIMAP_MAX_STATES)")]
    CapExceeded(u64, u64),
}

/// Default ceiling on enumeration work; `UNIMAP_MAX_STATES` overrides it.
pub fn state_cap() -> u64 {
    std::env::var("UNIMAP_MAX_STATES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(40_000_000)
}

fn check_cap(states: u64) -> Result<(), OracleError> {
    let cap = state_cap();
    if states > cap {
        return Err(OracleError::CapExceeded(states, cap));
    }
    Ok(())
}

fn double_factorial_u64(n: usize) -> u64 {
    (1..=n).fold(1u64, |acc, k| acc.saturating_mul(2 * k as u64 - 1))
}

/// All rooted unicellular maps with `n` edges, canonically represented.
pub fn unicellular_maps(n: usize) -> impl Iterator<Item = RotationMap> {
    fixed_point_free_involutions(n)
        .map(|alpha| RotationMap::from_canonical_involution(alpha).expect("canonical map"))
}

/// Tabulated results of one exhaustive sweep.
#[derive(Debug, Clone)]
pub struct EnumReport {
    pub n_edges: usize,
    pub total: u64,
    pub by_genus: BTreeMap<usize, u64>,
    pub by_vertex_count: BTreeMap<usize, u64>,
    pub by_degrees: BTreeMap<Vec<usize>, u64>,
    /// Genus histogram of the bipartite maps only.
    pub bipartite_by_genus: BTreeMap<usize, u64>,
    /// (white degree partition, black degree partition) histogram of
    /// bipartite maps; black is the root class.
    pub bipartite_degrees: BTreeMap<(Vec<usize>, Vec<usize>), u64>,
    pub elapsed: Duration,
}

/// Bipartition classes of a canonical unicellular map, if bipartite: with
/// the root corner black, the map is bipartite iff every vertex's corner
/// labels share one parity. Returns per-vertex blackness aligned with
/// `map.vertices()`, black meaning odd labels (the root corner has label 1).
pub fn bipartition_classes(map: &RotationMap) -> Option<Vec<bool>> {
    let labels = map.corner_labels().ok()?;
    let mut out = Vec::new();
    for vertex in map.vertices() {
        let parity = labels.label(vertex[0]) % 2;
        if vertex.iter().any(|&h| labels.label(h) % 2 != parity) {
            return None;
        }
        out.push(parity == 1);
    }
    Some(out)
}

/// Sweeps all unicellular maps with `n` edges and buckets them.
pub fn enumerate_unicellular(n: usize) -> Result<EnumReport, OracleError> {
    check_cap(double_factorial_u64(n))?;
    let start = Instant::now();
    let mut report = EnumReport {
        n_edges: n,
        total: 0,
        by_genus: BTreeMap::new(),
        by_vertex_count: BTreeMap::new(),
        by_degrees: BTreeMap::new(),
        bipartite_by_genus: BTreeMap::new(),
        bipartite_degrees: BTreeMap::new(),
        elapsed: Duration::ZERO,
    };
    for map in unicellular_maps(n) {
        report.total += 1;
        let g = map.genus();
        *report.by_genus.entry(g).or_insert(0) += 1;
        let vertices = map.vertices();
        *report.by_vertex_count.entry(vertices.len()).or_insert(0) += 1;
        let mut degrees: Vec<usize> = vertices.iter().map(|v| v.len()).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        *report.by_degrees.entry(degrees).or_insert(0) += 1;
        if let Some(black) = bipartition_classes(&map) {
            *report.bipartite_by_genus.entry(g).or_insert(0) += 1;
            let mut white_deg = Vec::new();
            let mut black_deg = Vec::new();
            for (vertex, is_black) in vertices.iter().zip(black.iter()) {
                if *is_black {
                    black_deg.push(vertex.len());
                } else {
                    white_deg.push(vertex.len());
                }
            }
            white_deg.sort_unstable_by(|a, b| b.cmp(a));
            black_deg.sort_unstable_by(|a, b| b.cmp(a));
            *report.bipartite_degrees.entry((white_deg, black_deg)).or_insert(0) += 1;
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// All C-permutations of genus `g` on `1..=m`.
pub fn cperms_of_genus(m: usize, g: usize) -> Vec<CPermutation> {
    let mut out = Vec::new();
    if m < 2 * g {
        return out;
    }
    // partition 1..=m into odd blocks (m - 2g of them), smallest free
    // element leads each block
    fn blocks(
        free: &mut Vec<usize>,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        blocks_left: usize,
    ) {
        if free.is_empty() {
            if blocks_left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        if blocks_left == 0 || free.len() < blocks_left {
            return;
        }
        let leader = free.remove(0);
        let rest = free.clone();
        let mut size = 1;
        while size <= rest.len() + 1 {
            // choose size-1 companions from rest, keeping order
            fn choose(
                rest: &[usize],
                k: usize,
                start: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..rest.len() {
                    cur.push(rest[i]);
                    choose(rest, k, i + 1, cur, out);
                    cur.pop();
                }
            }
            let mut picks = Vec::new();
            choose(&rest, size - 1, 0, &mut Vec::new(), &mut picks);
            for pick in picks {
                let mut block = vec![leader];
                block.extend(pick.iter().copied());
                let mut remaining: Vec<usize> =
                    rest.iter().copied().filter(|x| !pick.contains(x)).collect();
                acc.push(block);
                blocks(&mut remaining, acc, out, blocks_left - 1);
                acc.pop();
            }
            size += 2;
        }
        free.insert(0, leader);
    }
    let mut free: Vec<usize> = (1..=m).collect();
    let mut partitions: Vec<Vec<Vec<usize>>> = Vec::new();
    blocks(&mut free, &mut Vec::new(), &mut partitions, m - 2 * g);
    // expand each block into its (len-1)! cyclic orders and 2 signs
    fn perms(xs: &[usize]) -> Vec<Vec<usize>> {
        if xs.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            let mut rest = xs.to_vec();
            rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    for part in partitions {
        // cyclic orders per block
        let block_orders: Vec<Vec<Vec<usize>>> = part
            .iter()
            .map(|b| {
                perms(&b[1..])
                    .into_iter()
                    .map(|tail| {
                        let mut cyc = vec![b[0]];
                        cyc.extend(tail);
                        cyc
                    })
                    .collect()
            })
            .collect();
        let mut stack: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for orders in &block_orders {
            let mut next = Vec::new();
            for partial in &stack {
                for ord in orders {
                    let mut p = partial.clone();
                    p.push(ord.clone());
                    next.push(p);
                }
            }
            stack = next;
        }
        for cycles in stack {
            let k = cycles.len();
            for mask in 0..(1usize << k) {
                let signed: Vec<(bool, Vec<usize>)> = cycles
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (mask >> i & 1 == 0, c.clone()))
                    .collect();
                out.push(CPermutation::new(signed).expect("odd blocks"));
            }
        }
    }
    out
}

/// All C-decorated trees with `n` edges and genus `g`.
pub fn enumerate_ctrees(n: usize, g: usize) -> Result<Vec<CDecoratedTree>, OracleError> {
    let count = catalan(n) * cperm_count(g, n + 1);
    let as_u64 = u64::try_from(&count).unwrap_or(u64::MAX);
    check_cap(as_u64)?;
    let trees = PlaneTree::enumerate(n);
    let cperms = cperms_of_genus(n + 1, g);
    let mut out = Vec::with_capacity(as_u64 as usize);
    for t in &trees {
        for c in &cperms {
            out.push(CDecoratedTree::new(t.clone(), c.clone()).expect("ground set matches"));
        }
    }
    Ok(out)
}

/// Counts surjectively `r`-colored unicellular maps with `n` edges by
/// inclusion-exclusion over the vertex-count histogram; cross-checks
/// `A_r(n)`.
pub fn colored_count_oracle(r: usize, n: usize) -> Result<Int, OracleError> {
    let report = enumerate_unicellular(n)?;
    let mut total = Int::zero();
    for (&v, &count) in &report.by_vertex_count {
        let mut surj = Int::zero();
        for k in 0..=r {
            let term = binomial(r, k) * Int::from(r - k).pow(v as u32);
            if k % 2 == 0 {
                surj += term;
            } else {
                surj -= term;
            }
        }
        total += Int::from(count) * surj;
    }
    Ok(total)
}

/// Counts bicolored bipartite unicellular maps (black vertices in `r`
/// colors, white in `s`, all colors used) for `B_{r,s}(n)`.
pub fn jackson_oracle(r: usize, s: usize, n: usize) -> Result<Int, OracleError> {
    check_cap(double_factorial_u64(n))?;
    let surj = |classes: usize, colors: usize| -> Int {
        let mut total = Int::zero();
        for k in 0..=colors {
            let term = binomial(colors, k) * Int::from(colors - k).pow(classes as u32);
            if k % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    };
    let mut total = Int::zero();
    for map in unicellular_maps(n) {
        if let Some(black) = bipartition_classes(&map) {
            let b = black.iter().filter(|&&x| x).count();
            let w = black.len() - b;
            total += surj(b, r) * surj(w, s);
        }
    }
    Ok(total)
}

/// Bipartite map counts by sorted degree pairs, for `Bi(λ, μ)` and
/// `BiL(I, J)`.
pub fn bipartite_degree_histogram(
    n: usize,
) -> Result<BTreeMap<(Vec<usize>, Vec<usize>), u64>, OracleError> {
    Ok(enumerate_unicellular(n)?.bipartite_degrees)
}

/// Colorings of a degree multiset into ordered color classes with the
/// prescribed per-color degree sums.
fn degree_colorings(degrees: &[usize], target: &Composition) -> u64 {
    fn rec(idx: usize, degrees: &[usize], target: &[usize], sums: &mut [usize], found: &mut u64) {
        if idx == degrees.len() {
            if sums == target {
                *found += 1;
            }
            return;
        }
        let deg = degrees[idx];
        for c in 0..sums.len() {
            if sums[c] + deg <= target[c] {
                sums[c] += deg;
                rec(idx + 1, degrees, target, sums, found);
                sums[c] -= deg;
            }
        }
    }
    let mut found = 0u64;
    let mut sums = vec![0usize; target.len()];
    rec(0, degrees, target.parts(), &mut sums, &mut found);
    found
}

/// Counts colored bipartite unicellular maps of colored degree distribution
/// `(I, J)` by exhaustive enumeration; the coloring count only depends on
/// the degree multisets, so the bucketed histogram carries the sum.
pub fn morales_vassilieva_oracle(i: &Composition, j: &Composition) -> Result<Int, OracleError> {
    let n = i.size();
    assert_eq!(n, j.size());
    let hist = bipartite_degree_histogram(n)?;
    let mut total = Int::zero();
    for ((white, black), &count) in &hist {
        let w = degree_colorings(white, i);
        if w == 0 {
            continue;
        }
        let b = degree_colorings(black, j);
        total += Int::from(count) * Int::from(w) * Int::from(b);
    }
    Ok(total)
}

/// Multi-type histogram of triples `(σ1, σ2, σ3)` of permutations of
/// `1..=n` whose composition is the long cycle `(1 2 … n)`. These encode
/// rooted unicellular 3-constellations of size `n`.
pub fn factorization_histogram(
    n: usize,
) -> Result<BTreeMap<(Partition, Partition, Partition), u64>, OracleError> {
    let n_perms = factorial(n);
    let states = (&n_perms * &n_perms).min(Int::from(u64::MAX));
    check_cap(u64::try_from(&states).unwrap_or(u64::MAX))?;
    let mut perms_list: Vec<Perm> = Vec::new();
    fn heap(xs: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
        if k == 1 {
            out.push(Perm::from_images(xs.clone()).unwrap());
            return;
        }
        for i in 0..k {
            heap(xs, k - 1, out);
            if k % 2 == 0 {
                xs.swap(i, k - 1);
            } else {
                xs.swap(0, k - 1);
            }
        }
    }
    heap(&mut (0..n).collect(), n, &mut perms_list);
    let zeta = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let cycle_type = |p: &Perm| -> Partition {
        Partition::new(p.cycles().into_iter().map(|c| c.len()).collect())
    };
    let mut hist: BTreeMap<(Partition, Partition, Partition), u64> = BTreeMap::new();
    for s1 in &perms_list {
        let inv1 = s1.inverse();
        for s2 in &perms_list {
            // σ3 with σ1 ∘ σ2 ∘ σ3 = ζ
            let s3 = s2.inverse().compose(&inv1).compose(&zeta);
            let key = (cycle_type(s1), cycle_type(s2), cycle_type(&s3));
            *hist.entry(key).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// Multi-type histogram of rooted unicellular 3-quasi-constellations of
/// size `n`, by direct rotation-system enumeration. Practical only for
/// `n ≤ 3`.
pub fn quasi_constellation_histogram(
    n: usize,
) -> Result<BTreeMap<(Partition, Partition, Partition), u64>, OracleError> {
    // rigid states: 2^n square rotations × (n!)^3 circle structures
    let states = (1u64 << n).saturating_mul(factorial(n).pow(3u32).try_into().unwrap_or(u64::MAX));
    check_cap(states)?;
    // half-edges: for square s and color c, square side 6s+c, circle side 6s+3+c
    let m = 6 * n;
    let mut hist: BTreeMap<(Partition, Partition, Partition), u64> = BTreeMap::new();
    let mut perms_list: Vec<Vec<usize>> = Vec::new();
    fn all_perms(k: usize) -> Vec<Vec<usize>> {
        fn rec(rest: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for (i, &x) in rest.iter().enumerate() {
                let mut r = rest.to_vec();
                r.remove(i);
                cur.push(x);
                rec(&r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&(0..k).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
        out
    }
    perms_list.extend(all_perms(n));
    let square = |s: usize, c: usize| 6 * s + c;
    let circle = |s: usize, c: usize| 6 * s + 3 + c;
    for rot_mask in 0u32..(1 << n) {
        // circle side: for each color, a permutation of squares gives the
        // successor structure; cycles of the permutation are the vertices
        for p1 in &perms_list {
            for p2 in &perms_list {
                for p3 in &perms_list {
                    let ps = [p1, p2, p3];
                    let mut sigma = vec![0usize; m];
                    for s in 0..n {
                        // square rotation: colors in ccw order (0,1,2) or (0,2,1)
                        let order: [usize; 3] =
                            if rot_mask >> s & 1 == 0 { [0, 1, 2] } else { [0, 2, 1] };
                        for k in 0..3 {
                            sigma[square(s, order[k])] = square(s, order[(k + 1) % 3]);
                        }
                    }
                    for (c, p) in ps.iter().enumerate() {
                        for s in 0..n {
                            sigma[circle(s, c)] = circle(p[s], c);
                        }
                    }
                    let mut alpha = vec![0usize; m];
                    for s in 0..n {
                        for c in 0..3 {
                            alpha[square(s, c)] = circle(s, c);
                            alpha[circle(s, c)] = square(s, c);
                        }
                    }
                    let map = match RotationMap::new(
                        Perm::from_images(sigma).unwrap(),
                        Perm::from_images(alpha).unwrap(),
                        circle(0, 0),
                    ) {
                        Ok(map) => map,
                        Err(_) => continue, // disconnected
                    };
                    if !map.is_unicellular() {
                        continue;
                    }
                    let mut types: Vec<Partition> = Vec::with_capacity(3);
                    for p in &ps {
                        let perm = Perm::from_images((*p).clone()).unwrap();
                        types.push(Partition::new(
                            perm.cycles().into_iter().map(|c| c.len()).collect(),
                        ));
                    }
                    let key = (types[0].clone(), types[1].clone(), types[2].clone());
                    // n root choices (corners at color-1 circles)
                    *hist.entry(key).or_insert(0) += n as u64;
                }
            }
        }
    }
    // rigid structures carry square labels: divide by n!
    let nf = u64::try_from(&factorial(n)).unwrap();
    for v in hist.values_mut() {
        assert_eq!(*v % nf, 0, "rigid count must be divisible by n!");
        *v /= nf;
    }
    Ok(hist)
}

/// One row of the verification table.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn row(name: &str, pass: bool, detail: String) -> CheckRow {
    CheckRow { name: name.to_string(), pass, detail }
}

/// Runs the full cross-check matrix up to `max_edges`, comparing every
/// closed formula against exhaustive enumeration.
pub fn verify_all(max_edges: usize) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let mut genus_ok = true;
    let mut total_ok = true;
    let mut tris_ok = true;
    let mut detail = String::new();
    for n in 1..=max_edges {
        match enumerate_unicellular(n) {
            Ok(report) => {
                if Int::from(report.total) != double_factorial_odd(n) {
                    total_ok = false;
                    detail = format!("total mismatch at n={n}");
                }
                for (&g, &count) in &report.by_genus {
                    if Int::from(count) != epsilon_lw(g, n) || Int::from(count) != epsilon_hz(g, n)
                    {
                        genus_ok = false;
                        detail = format!("genus bucket mismatch at n={n} g={g}");
                    }
                }
            }
            Err(e) => {
                total_ok = false;
                detail = e.to_string();
            }
        }
        for map in unicellular_maps(n) {
            let tris = map.trisections().expect("canonical maps are unicellular");
            if tris.len() != 2 * map.genus() {
                tris_ok = false;
            }
        }
    }
    rows.push(row(
        "lehman-walsh = harer-zagier = brute force",
        genus_ok && total_ok,
        if genus_ok && total_ok { format!("all n <= {max_edges}") } else { detail.clone() },
    ));
    rows.push(row(
        "trisection count = 2g",
        tris_ok,
        format!("all maps with n <= {max_edges}"),
    ));

    // signed-sequence bijection, exhaustively on small ground sets
    let mut seq_ok = true;
    for k in 1..=6usize {
        let mut seen = std::collections::HashSet::new();
        let mut count = 0u64;
        fn perms(xs: &[usize]) -> Vec<Vec<usize>> {
            if xs.is_empty() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for (i, &x) in xs.iter().enumerate() {
                let mut rest = xs.to_vec();
                rest.remove(i);
                for mut p in perms(&rest) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        for p in perms(&(1..=k).collect::<Vec<_>>()) {
            for sign in [true, false] {
                let s = crate::ctree::SignedSequence::new(sign, p.clone()).unwrap();
                let c = crate::ctree::seq_to_cperm(&s).unwrap();
                if crate::ctree::cperm_to_seq(&c).unwrap() != s {
                    seq_ok = false;
                }
                seen.insert(format!("{c:?}"));
                count += 1;
            }
        }
        if seen.len() as u64 != count {
            seq_ok = false;
        }
    }
    rows.push(row("signed sequences <-> C-permutations", seq_ok, "k <= 6".into()));

    // psi bijectivity
    let psi_cap = max_edges.min(4);
    let mut psi_ok = true;
    for n in 1..=psi_cap {
        let mut image = std::collections::HashSet::new();
        let mut pairs = 0u64;
        for map in unicellular_maps(n) {
            for tau in map.trisections().unwrap() {
                pairs += 1;
                let (out, marked) = map.psi(tau).unwrap();
                let (back, tau_back) = out.psi_inverse(&marked).unwrap();
                if back != map || tau_back != tau {
                    psi_ok = false;
                }
                image.insert(out.marked_class_key(&marked).unwrap());
            }
        }
        if image.len() as u64 != pairs {
            psi_ok = false;
        }
    }
    rows.push(row("vertex slicing bijection", psi_ok, format!("n <= {psi_cap}")));

    // colored and bipartite formulas
    let col_cap = max_edges.min(5);
    let mut col_ok = true;
    for n in 1..=col_cap {
        for r in 1..=4 {
            if colored_count_oracle(r, n).map(|v| v != colored_count(r, n)).unwrap_or(true) {
                col_ok = false;
            }
        }
        for r in 1..=3 {
            for s in 1..=3 {
                if jackson_oracle(r, s, n).map(|v| v != jackson_count(r, s, n)).unwrap_or(true) {
                    col_ok = false;
                }
            }
        }
    }
    rows.push(row("colored map formulas", col_ok, format!("n <= {col_cap}, r,s <= 4")));

    let mut bi_ok = true;
    for n in 1..=col_cap {
        let Ok(hist) = bipartite_degree_histogram(n) else {
            bi_ok = false;
            break;
        };
        for ((white, black), &count) in &hist {
            let lambda = Partition::new(white.clone());
            let mu = Partition::new(black.clone());
            match goupil_schaeffer_bi(&lambda, &mu) {
                Ok(v) => {
                    if v != Int::from(count) {
                        bi_ok = false;
                    }
                }
                Err(_) => bi_ok = false,
            }
        }
    }
    rows.push(row("goupil-schaeffer vs bipartite buckets", bi_ok, format!("n <= {col_cap}")));

    let mv_cap = max_edges.min(4);
    let mut mv_ok = true;
    for n in 1..=mv_cap {
        for i in counting::compositions(n) {
            for j in counting::compositions(n) {
                if i.len() + j.len() > n + 1 {
                    continue;
                }
                let formula = morales_vassilieva_bic(&i, &j).unwrap();
                match morales_vassilieva_oracle(&i, &j) {
                    Ok(v) => {
                        if v != formula {
                            mv_ok = false;
                        }
                    }
                    Err(_) => mv_ok = false,
                }
            }
        }
    }
    rows.push(row("morales-vassilieva vs colored buckets", mv_ok, format!("n <= {mv_cap}")));

    // covered maps
    let mut cov_ok = true;
    for n in 1..=max_edges.min(8) {
        for g in 0..=3 {
            if counting::covered_count(g, n) != catalan(n) * bipartite_unicellular_count(g, n + 1)
            {
                cov_ok = false;
            }
        }
        if counting::covered_by_type(0, 0, n) != catalan(n) * catalan(n + 1) {
            cov_ok = false;
        }
    }
    rows.push(row("covered-map identities", cov_ok, format!("n <= {}", max_edges.min(8))));

    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::pow2;

    #[test]
    fn brute_force_epsilon_values() {
        let r1 = enumerate_unicellular(1).unwrap();
        assert_eq!(r1.total, 1);
        assert_eq!(r1.by_genus.get(&0), Some(&1));
        let r2 = enumerate_unicellular(2).unwrap();
        assert_eq!(r2.by_genus.get(&0), Some(&2));
        assert_eq!(r2.by_genus.get(&1), Some(&1));
        let r4 = enumerate_unicellular(4).unwrap();
        assert_eq!(r4.by_genus.get(&2), Some(&21));
    }

    #[test]
    fn genus_buckets_match_formulas_up_to_six_edges() {
        for n in 1..=6 {
            let report = enumerate_unicellular(n).unwrap();
            assert_eq!(Int::from(report.total), double_factorial_odd(n));
            for (&g, &count) in &report.by_genus {
                assert_eq!(Int::from(count), epsilon_lw(g, n), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn bipartite_buckets_match_jackson_and_bip() {
        for n in 1..=6 {
            let report = enumerate_unicellular(n).unwrap();
            for (&g, &count) in &report.bipartite_by_genus {
                assert_eq!(Int::from(count), bipartite_unicellular_count(g, n), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn ctree_counts() {
        assert_eq!(enumerate_ctrees(2, 1).unwrap().len(), 8);
        assert_eq!(enumerate_ctrees(3, 1).unwrap().len(), 160);
        for n in 1..=4 {
            let count = enumerate_ctrees(n, 0).unwrap().len();
            assert_eq!(Int::from(count), pow2(n + 1) * catalan(n));
        }
    }

    #[test]
    fn cperm_enumeration_matches_count() {
        for m in 1..=6 {
            for g in 0..=m / 2 {
                let listed = cperms_of_genus(m, g);
                assert_eq!(Int::from(listed.len()), cperm_count(g, m), "m={m} g={g}");
                let mut dedup: Vec<String> = listed.iter().map(|c| format!("{c:?}")).collect();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), listed.len());
            }
        }
    }

    #[test]
    fn colored_oracle_matches_formula() {
        for n in 1..=4 {
            for r in 1..=4 {
                assert_eq!(colored_count_oracle(r, n).unwrap(), colored_count(r, n));
            }
        }
        assert_eq!(colored_count_oracle(2, 2).unwrap(), Int::from(12));
        assert_eq!(colored_count(2, 2), Int::from(12));
    }

    #[test]
    fn jackson_oracle_matches_formula() {
        for n in 1..=4 {
            for r in 1..=3 {
                for s in 1..=3 {
                    assert_eq!(
                        jackson_oracle(r, s, n).unwrap(),
                        jackson_count(r, s, n),
                        "n={n} r={r} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn factorizations_match_planar_constellation_formula() {
        // genus-0 multi-types against n² (ℓ1-1)!(ℓ2-1)!(ℓ3-1)!/(a a a)
        for n in 1..=4 {
            let hist = factorization_histogram(n).unwrap();
            for ((t1, t2, t3), &count) in &hist {
                let l = t1.len() + t2.len() + t3.len();
                if l != 2 * n + 1 {
                    continue;
                }
                let expect = Int::from(n) * Int::from(n)
                    * factorial(t1.len() - 1)
                    * factorial(t2.len() - 1)
                    * factorial(t3.len() - 1)
                    / (t1.multiplicity_factorial()
                        * t2.multiplicity_factorial()
                        * t3.multiplicity_factorial());
                assert_eq!(Int::from(count), expect, "n={n} {t1:?} {t2:?} {t3:?}");
            }
        }
    }
}
