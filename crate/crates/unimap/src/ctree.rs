//! Plane trees, C-permutations, and C-decorated trees.
//!
//! A C-permutation is a permutation whose cycles all have odd length, each
//! cycle carrying a sign. Its genus is `(elements - cycles) / 2`.
//! A C-decorated tree pairs a plane tree with `n` edges with a
//! C-permutation of its `n+1` vertices, numbered by left-to-right
//! depth-first traversal. Merging the vertices in each cycle yields the
//! underlying multigraph.

use crate::perm::Perm;
use crate::rotation::{MapError, RotationMap};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CTreeError {
    #[error("signed sequence must be non-empty")]
    EmptySequence,
    #[error("sequence elements must be distinct")]
    RepeatedElement,
    #[error("cycle of length {0} is even; C-permutation cycles must be odd")]
    EvenCycle(usize),
    #[error("cycle supports overlap or are empty")]
    BadSupport,
    #[error("ground set must be 1..=n+1 for a tree with n edges")]
    GroundSetMismatch,
    #[error("element {0} is the minimum of its cycle; a non-minimal element is required")]
    MarkedMinimal(usize),
    #[error("element {0} is not in the ground set")]
    NoSuchElement(usize),
    #[error("dyck word is not balanced")]
    UnbalancedDyck,
    #[error("corner index {0} out of range")]
    CornerOutOfRange(usize),
    #[error("invalid JSON C-decorated tree: {0}")]
    Json(String),
}

// ---------------------------------------------------------------------------
// Plane trees
// ---------------------------------------------------------------------------

/// A rooted plane tree. Vertex 0 is the root; children are ordered
/// left to right. The canonical vertex numbering `1..=n+1` used by
/// C-decorated trees is the left-to-right depth-first order, so vertex `v`
/// has number `v + 1`: vertices are always stored in DFS order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

impl PlaneTree {
    /// Single-vertex tree (zero edges).
    pub fn trivial() -> Self {
        PlaneTree { children: vec![vec![]], parent: vec![None] }
    }

    pub fn from_dyck(word: &str) -> Result<Self, CTreeError> {
        let mut children: Vec<Vec<usize>> = vec![vec![]];
        let mut parent: Vec<Option<usize>> = vec![None];
        let mut stack = vec![0usize];
        for ch in word.chars() {
            match ch {
                '(' => {
                    let p = *stack.last().ok_or(CTreeError::UnbalancedDyck)?;
                    let v = children.len();
                    children.push(vec![]);
                    parent.push(Some(p));
                    children[p].push(v);
                    stack.push(v);
                }
                ')' => {
                    stack.pop();
                    if stack.is_empty() {
                        return Err(CTreeError::UnbalancedDyck);
                    }
                }
                _ => return Err(CTreeError::Json(format!("bad dyck character {ch:?}"))),
            }
        }
        if stack.len() != 1 {
            return Err(CTreeError::UnbalancedDyck);
        }
        // children were appended in DFS order by construction
        Ok(PlaneTree { children, parent })
    }

    pub fn to_dyck(&self) -> String {
        let mut out = String::with_capacity(2 * self.n_edges());
        fn walk(t: &PlaneTree, v: usize, out: &mut String) {
            for &c in &t.children[v] {
                out.push('(');
                walk(t, c, out);
                out.push(')');
            }
        }
        walk(self, 0, &mut out);
        out
    }

    pub fn n_edges(&self) -> usize {
        self.children.len() - 1
    }

    pub fn n_vertices(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v != 0 && self.children[v].is_empty()
    }

    /// Depth of a vertex; the root is black, colors alternate, so a vertex
    /// is black iff its depth is even.
    pub fn depth(&self, v: usize) -> usize {
        let mut d = 0;
        let mut x = v;
        while let Some(p) = self.parent[x] {
            d += 1;
            x = p;
        }
        d
    }

    /// All plane trees with `n` edges, in lexicographic Dyck-word order
    /// with '(' < ')'.
    pub fn enumerate(n: usize) -> Vec<PlaneTree> {
        let mut words = Vec::new();
        let mut cur = String::new();
        fn rec(cur: &mut String, open: usize, close: usize, n: usize, out: &mut Vec<String>) {
            if open == n && close == n {
                out.push(cur.clone());
                return;
            }
            if open < n {
                cur.push('(');
                rec(cur, open + 1, close, n, out);
                cur.pop();
            }
            if close < open {
                cur.push(')');
                rec(cur, open, close + 1, n, out);
            }
            if close < open {
                cur.pop();
            }
        }
        rec(&mut cur, 0, 0, n, &mut words);
        words.iter().map(|w| PlaneTree::from_dyck(w).unwrap()).collect()
    }

    /// Corners in canonical order. A tree with `n` edges has `2n+1` corners:
    /// the walk around the tree visits each vertex once per incident edge,
    /// plus once more at the root (the root sector counts two corners, one
    /// on each side of the root edge sequence). Corner `i` is a pair
    /// `(vertex, gap)` where `gap` positions it among the vertex's children:
    /// gap `j` sits just before child `j`; gap `deg` sits after the last.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.n_edges() + 1);
        fn walk(t: &PlaneTree, v: usize, out: &mut Vec<(usize, usize)>) {
            for (j, &c) in t.children[v].iter().enumerate() {
                out.push((v, j));
                walk(t, c, out);
            }
            out.push((v, t.children[v].len()));
        }
        walk(self, 0, &mut out);
        out
    }

    fn renumber(children: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> (PlaneTree, Vec<usize>) {
        // rebuild DFS numbering; returns old -> new map
        let n = children.len();
        let mut order = Vec::with_capacity(n);
        fn dfs(v: usize, children: &[Vec<usize>], order: &mut Vec<usize>) {
            order.push(v);
            for &c in &children[v] {
                dfs(c, children, order);
            }
        }
        dfs(0, &children, &mut order);
        let mut old_to_new = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut new_children = vec![Vec::new(); n];
        let mut new_parent = vec![None; n];
        for (old, ch) in children.iter().enumerate() {
            new_children[old_to_new[old]] = ch.iter().map(|&c| old_to_new[c]).collect();
        }
        for (old, p) in parent.iter().enumerate() {
            new_parent[old_to_new[old]] = p.map(|q| old_to_new[q]);
        }
        (PlaneTree { children: new_children, parent: new_parent }, old_to_new)
    }

    /// Rémy expansion: inserts a new vertex at a corner. `leaf` side hangs a
    /// new leaf into the corner and marks it. The other side splits the
    /// corner's vertex: the new vertex takes the parent slot together with
    /// the children after the gap, and is marked (it is never a leaf: its
    /// first child is the old vertex).
    ///
    /// Realizes `(n+1)·P(n) ≅ 2(2n-1)·P(n-1)`. Returns the new tree, the
    /// marked vertex (in the new numbering), and the old-to-new vertex map.
    pub fn remy_expand(
        &self,
        corner: usize,
        leaf_side: bool,
    ) -> Result<(PlaneTree, usize, Vec<usize>), CTreeError> {
        let corners = self.corners();
        let &(u, gap) = corners.get(corner).ok_or(CTreeError::CornerOutOfRange(corner))?;
        let mut children = self.children.clone();
        let mut parent = self.parent.clone();
        let w = children.len();
        children.push(vec![]);
        parent.push(None);
        if leaf_side {
            children[u].insert(gap, w);
            parent[w] = Some(u);
        } else {
            let moved: Vec<usize> = children[u].split_off(gap);
            children[w] = std::iter::once(u).chain(moved.iter().copied()).collect();
            for &c in &moved {
                parent[c] = Some(w);
            }
            parent[w] = parent[u];
            if let Some(p) = parent[u] {
                let slot = children[p].iter().position(|&c| c == u).unwrap();
                children[p][slot] = w;
            }
            parent[u] = Some(w);
        }
        let root = (0..children.len()).find(|&v| parent[v].is_none()).unwrap();
        if root != 0 {
            // new vertex became the root; swap indices 0 and root before renumbering
            children.swap(0, root);
            parent.swap(0, root);
            for ch in children.iter_mut() {
                for c in ch.iter_mut() {
                    *c = if *c == 0 { root } else if *c == root { 0 } else { *c };
                }
            }
            for p in parent.iter_mut() {
                *p = p.map(|q| if q == 0 { root } else if q == root { 0 } else { q });
            }
        }
        let marked_old = if root != 0 && w == root { 0 } else { w };
        let (tree, old_to_new) = PlaneTree::renumber(children, parent);
        Ok((tree, old_to_new[marked_old], old_to_new))
    }

    /// Rémy contraction, the inverse of [`remy_expand`]. A leaf is removed
    /// from its corner; a non-leaf is merged with its first child, which
    /// absorbs the remaining children. Returns the smaller tree, the corner,
    /// the side, and the old-to-new vertex map (the removed vertex maps to
    /// `usize::MAX`).
    pub fn remy_contract(&self, v: usize) -> Result<(PlaneTree, usize, bool, Vec<usize>), CTreeError> {
        if v >= self.n_vertices() {
            return Err(CTreeError::NoSuchElement(v));
        }
        let mut children = self.children.clone();
        let mut parent = self.parent.clone();
        let leaf_side = self.is_leaf(v);
        let (hole, corner_key) = if leaf_side {
            let p = parent[v].unwrap();
            let gap = children[p].iter().position(|&c| c == v).unwrap();
            children[p].remove(gap);
            (v, (p, gap))
        } else {
            // merge v with its first child u; u keeps its own children and
            // absorbs v's later children after them
            let u = children[v][0];
            let tail: Vec<usize> = children[v][1..].to_vec();
            let gap = children[u].len();
            for &c in &tail {
                parent[c] = Some(u);
            }
            let mut uc = std::mem::take(&mut children[u]);
            uc.extend(tail);
            children[u] = uc;
            parent[u] = parent[v];
            if let Some(p) = parent[v] {
                let slot = children[p].iter().position(|&c| c == v).unwrap();
                children[p][slot] = u;
            }
            children[v].clear();
            (v, (u, gap))
        };
        // drop the hole vertex and compact indices
        let m = children.len();
        let mut compact = vec![usize::MAX; m];
        let mut idx = 0;
        for old in 0..m {
            if old != hole {
                compact[old] = idx;
                idx += 1;
            }
        }
        let mut new_children: Vec<Vec<usize>> = Vec::with_capacity(m - 1);
        let mut new_parent: Vec<Option<usize>> = Vec::with_capacity(m - 1);
        for old in 0..m {
            if old == hole {
                continue;
            }
            new_children.push(children[old].iter().map(|&c| compact[c]).collect());
            new_parent.push(parent[old].map(|p| compact[p]));
        }
        // make the root index 0 (contraction of the old root's parent case
        // cannot occur: the root is never a leaf and keeps position)
        debug_assert!(new_parent[0].is_none() || hole == 0);
        let (tree, old_to_new_compact) = PlaneTree::renumber(new_children, new_parent);
        let mut old_to_new = vec![usize::MAX; m];
        for old in 0..m {
            if old != hole {
                old_to_new[old] = old_to_new_compact[compact[old]];
            }
        }
        let (cu, cgap) = corner_key;
        let cu_new = old_to_new[cu];
        let corner = tree
            .corners()
            .iter()
            .position(|&(w, g)| w == cu_new && g == cgap)
            .expect("corner survives contraction");
        Ok((tree, corner, leaf_side, old_to_new))
    }

    /// The rotation-system form of the tree: a genus-0 unicellular map whose
    /// face tour visits the vertices in DFS order.
    pub fn to_map(&self) -> RotationMap {
        let n = self.n_edges();
        assert!(n >= 1, "rotation maps need at least one edge");
        // half-edge 2e / 2e+1: parent side / child side of edge e, where
        // edge e leads into child vertex e+1 in DFS order... edges are
        // numbered by child DFS order: edge to vertex v is v-1.
        let m = 2 * n;
        let mut sigma_cycles: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        let down = |v: usize| 2 * (v - 1); // half-edge at parent toward v
        let up = |v: usize| 2 * (v - 1) + 1; // half-edge at v toward parent
        for v in 0..self.n_vertices() {
            let mut cyc = Vec::new();
            if v != 0 {
                cyc.push(up(v));
            }
            for &c in &self.children[v] {
                cyc.push(down(c));
            }
            if !cyc.is_empty() {
                sigma_cycles.push(cyc);
            }
        }
        let sigma = Perm::from_cycles(m, &sigma_cycles).unwrap();
        let alpha_cycles: Vec<Vec<usize>> = (1..=n).map(|v| vec![down(v), up(v)]).collect();
        let alpha = Perm::from_cycles(m, &alpha_cycles).unwrap();
        let root = down(self.children[0][0]);
        RotationMap::new(sigma, alpha, root).expect("trees are valid maps")
    }

    /// Reads a genus-0 unicellular map back as a plane tree, together with
    /// the map from half-edges to tree vertices (DFS numbers `0..=n`).
    pub fn from_map(map: &RotationMap) -> Result<(PlaneTree, Vec<usize>), MapError> {
        if map.genus() != 0 {
            return Err(MapError::NotUnicellular(map.face_count()));
        }
        let labels = map.corner_labels()?;
        let m = map.half_edge_count();
        // vertices in order of first visit along the tour = DFS order
        let part = map.vertex_partition();
        let mut first_label: BTreeMap<usize, usize> = BTreeMap::new();
        for h in 0..m {
            let e = first_label.entry(part[h]).or_insert(usize::MAX);
            *e = (*e).min(labels.label(h));
        }
        let mut ids: Vec<(usize, usize)> = first_label.into_iter().map(|(id, l)| (l, id)).collect();
        ids.sort_unstable();
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        for (dfs, &(_, id)) in ids.iter().enumerate() {
            number.insert(id, dfs);
        }
        // rebuild children: follow the tour; a downward step goes to an
        // unvisited vertex
        let phi = map.face_perm();
        let mut children: Vec<Vec<usize>> = vec![vec![]; map.vertex_count()];
        let mut parent: Vec<Option<usize>> = vec![None; map.vertex_count()];
        let mut seen = vec![false; map.vertex_count()];
        seen[number[&part[map.root()]]] = true;
        let mut h = map.root();
        for _ in 0..m {
            let from = number[&part[h]];
            let to = number[&part[map.alpha().apply(h)]];
            if !seen[to] {
                seen[to] = true;
                children[from].push(to);
                parent[to] = Some(from);
            }
            h = phi.apply(h);
        }
        let tree = PlaneTree { children, parent };
        let vertex_of: Vec<usize> = (0..m).map(|h| number[&part[h]]).collect();
        Ok((tree, vertex_of))
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dyck())
    }
}

// ---------------------------------------------------------------------------
// C-permutations
// ---------------------------------------------------------------------------

/// A sequence of distinct positive integers with a global sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSequence {
    pub positive: bool,
    pub seq: Vec<usize>,
}

impl SignedSequence {
    pub fn new(positive: bool, seq: Vec<usize>) -> Result<Self, CTreeError> {
        if seq.is_empty() {
            return Err(CTreeError::EmptySequence);
        }
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seq.len() {
            return Err(CTreeError::RepeatedElement);
        }
        Ok(SignedSequence { positive, seq })
    }
}

/// A cycle-signed permutation with all cycles of odd length.
///
/// Cycles are stored minimum-first and sorted by minimum, which makes
/// equality and hashing canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CPermutation {
    cycles: Vec<(bool, Vec<usize>)>,
}

impl CPermutation {
    pub fn new(cycles: Vec<(bool, Vec<usize>)>) -> Result<Self, CTreeError> {
        let mut support = Vec::new();
        for (_, cyc) in &cycles {
            if cyc.is_empty() {
                return Err(CTreeError::BadSupport);
            }
            if cyc.len() % 2 == 0 {
                return Err(CTreeError::EvenCycle(cyc.len()));
            }
            support.extend_from_slice(cyc);
        }
        let len = support.len();
        support.sort_unstable();
        support.dedup();
        if support.len() != len {
            return Err(CTreeError::BadSupport);
        }
        let mut canon: Vec<(bool, Vec<usize>)> = cycles
            .into_iter()
            .map(|(s, cyc)| {
                let start = cyc.iter().enumerate().min_by_key(|(_, &x)| x).unwrap().0;
                let mut rot = cyc[start..].to_vec();
                rot.extend_from_slice(&cyc[..start]);
                (s, rot)
            })
            .collect();
        canon.sort_by_key(|(_, cyc)| cyc[0]);
        Ok(CPermutation { cycles: canon })
    }

    /// Identity C-permutation on `1..=m` with the given signs (`signs[i]`
    /// for element `i+1`).
    pub fn signed_identity(signs: &[bool]) -> Self {
        CPermutation {
            cycles: signs.iter().enumerate().map(|(i, &s)| (s, vec![i + 1])).collect(),
        }
    }

    pub fn cycles(&self) -> &[(bool, Vec<usize>)] {
        &self.cycles
    }

    pub fn n_elements(&self) -> usize {
        self.cycles.iter().map(|(_, c)| c.len()).sum()
    }

    pub fn n_cycles(&self) -> usize {
        self.cycles.len()
    }

    /// Rank `n - ℓ`; always even.
    pub fn rank(&self) -> usize {
        self.n_elements() - self.n_cycles()
    }

    pub fn genus(&self) -> usize {
        self.rank() / 2
    }

    /// Sorted ground set.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.cycles.iter().flat_map(|(_, c)| c.iter().copied()).collect();
        s.sort_unstable();
        s
    }

    pub fn cycle_index_of(&self, elem: usize) -> Option<usize> {
        self.cycles.iter().position(|(_, c)| c.contains(&elem))
    }

    /// Elements that are not the minimum of their cycle; a genus-g
    /// C-permutation has exactly 2g of them.
    pub fn non_minimal_elements(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cycles
            .iter()
            .flat_map(|(_, c)| c[1..].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Turns a signed sequence into a C-permutation (the sequence-to-cycles
/// direction of the signed-sequence bijection).
///
/// Repeatedly cut the suffix starting at the current minimum: an odd suffix
/// becomes a `+` cycle; an even suffix donates its second element to the end
/// of the prefix and becomes a `-` cycle. When the remaining sequence has
/// odd length and starts with its minimum, it becomes the final cycle,
/// keeping the sequence's sign.
pub fn seq_to_cperm(s: &SignedSequence) -> Result<CPermutation, CTreeError> {
    if s.seq.is_empty() {
        return Err(CTreeError::EmptySequence);
    }
    let mut gamma = s.seq.clone();
    let mut cycles: Vec<(bool, Vec<usize>)> = Vec::new();
    loop {
        let min_pos = gamma.iter().enumerate().min_by_key(|(_, &x)| x).unwrap().0;
        if min_pos == 0 && gamma.len() % 2 == 1 {
            cycles.push((s.positive, gamma));
            break;
        }
        let mut tail = gamma.split_off(min_pos);
        if tail.len() % 2 == 1 {
            cycles.push((true, tail));
        } else {
            let moved = tail.remove(1);
            gamma.push(moved);
            cycles.push((false, tail));
        }
    }
    CPermutation::new(cycles)
}

/// Inverse of [`seq_to_cperm`]: rebuilds the unique signed sequence.
///
/// Cycles are consumed in decreasing order of their minima: the largest-min
/// cycle seeds the sequence (and contributes the global sign); each further
/// cycle is appended minimum-first, a `-` sign pulling the current last
/// element back in as the second element of the appended block.
pub fn cperm_to_seq(c: &CPermutation) -> Result<SignedSequence, CTreeError> {
    if c.cycles.is_empty() {
        return Err(CTreeError::EmptySequence);
    }
    let mut iter = c.cycles.iter().rev();
    let (sign, first) = iter.next().unwrap();
    let mut gamma = first.clone();
    for (s, cyc) in iter {
        let mut block = cyc.clone();
        if !*s {
            let moved = gamma.pop().ok_or(CTreeError::BadSupport)?;
            block.insert(1, moved);
        }
        gamma.extend(block);
    }
    SignedSequence::new(*sign, gamma)
}

// ---------------------------------------------------------------------------
// C-decorated trees
// ---------------------------------------------------------------------------

/// A plane tree with `n` edges together with a C-permutation of `1..=n+1`,
/// read as a permutation of the DFS-numbered tree vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CDecoratedTree {
    pub tree: PlaneTree,
    pub cperm: CPermutation,
}

#[derive(Serialize, Deserialize)]
struct CycleJson {
    sign: String,
    elems: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CTreeJson {
    dyck: String,
    cycles: Vec<CycleJson>,
}

impl CDecoratedTree {
    pub fn new(tree: PlaneTree, cperm: CPermutation) -> Result<Self, CTreeError> {
        let want: Vec<usize> = (1..=tree.n_vertices()).collect();
        if cperm.support() != want {
            return Err(CTreeError::GroundSetMismatch);
        }
        Ok(CDecoratedTree { tree, cperm })
    }

    pub fn n_edges(&self) -> usize {
        self.tree.n_edges()
    }

    pub fn genus(&self) -> usize {
        self.cperm.genus()
    }

    /// Underlying vertex-rooted multigraph: one vertex per cycle, one edge
    /// per tree edge, rooted at the cycle containing tree vertex 1.
    /// Returned as (root cycle index, edge list of cycle-index pairs).
    pub fn underlying_graph(&self) -> (usize, Vec<(usize, usize)>) {
        let cyc_of = |v: usize| self.cperm.cycle_index_of(v + 1).unwrap();
        let root = cyc_of(0);
        let mut edges: Vec<(usize, usize)> = (1..self.tree.n_vertices())
            .map(|v| {
                let p = self.tree.parent(v).unwrap();
                let (a, b) = (cyc_of(p), cyc_of(v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        (root, edges)
    }

    pub fn to_json(&self) -> String {
        let dto = CTreeJson {
            dyck: self.tree.to_dyck(),
            cycles: self
                .cperm
                .cycles()
                .iter()
                .map(|(s, c)| CycleJson {
                    sign: if *s { "+" } else { "-" }.to_string(),
                    elems: c.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("ctree serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, CTreeError> {
        let dto: CTreeJson = serde_json::from_str(s).map_err(|e| CTreeError::Json(e.to_string()))?;
        let tree = PlaneTree::from_dyck(&dto.dyck)?;
        let cycles = dto
            .cycles
            .into_iter()
            .map(|c| match c.sign.as_str() {
                "+" => Ok((true, c.elems)),
                "-" => Ok((false, c.elems)),
                other => Err(CTreeError::Json(format!("bad sign {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        CDecoratedTree::new(tree, CPermutation::new(cycles)?)
    }
}

/// Splits the cycle holding a marked non-minimal element into `2k+1 ≥ 3`
/// marked cycles, dropping the genus by `k`: the cycle is written as a
/// signed sequence starting at the marked element and run through the
/// signed-sequence bijection. Returns the new tree and the minima of the
/// marked cycles.
pub fn decompose_ctree(
    t: &CDecoratedTree,
    marked: usize,
) -> Result<(CDecoratedTree, Vec<usize>), CTreeError> {
    let idx = t.cperm.cycle_index_of(marked).ok_or(CTreeError::NoSuchElement(marked))?;
    let (sign, cyc) = &t.cperm.cycles()[idx];
    if cyc[0] == marked {
        return Err(CTreeError::MarkedMinimal(marked));
    }
    let start = cyc.iter().position(|&x| x == marked).unwrap();
    let mut seq = cyc[start..].to_vec();
    seq.extend_from_slice(&cyc[..start]);
    let pieces = seq_to_cperm(&SignedSequence::new(*sign, seq)?)?;
    let marked_minima: Vec<usize> = pieces.cycles().iter().map(|(_, c)| c[0]).collect();
    let mut cycles: Vec<(bool, Vec<usize>)> = t
        .cperm
        .cycles()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, c)| c.clone())
        .collect();
    cycles.extend(pieces.cycles().iter().cloned());
    let out = CDecoratedTree::new(t.tree.clone(), CPermutation::new(cycles)?)?;
    Ok((out, marked_minima))
}

/// Inverse of [`decompose_ctree`]: merges an odd set of `2k+1 ≥ 3` marked
/// cycles (given by any of their elements) into a single signed cycle,
/// raising the genus by `k`, and returns the marked non-minimal element.
pub fn compose_ctree(
    t: &CDecoratedTree,
    marked: &[usize],
) -> Result<(CDecoratedTree, usize), CTreeError> {
    if marked.len() < 3 || marked.len() % 2 == 0 {
        return Err(CTreeError::BadSupport);
    }
    let mut idxs: Vec<usize> = marked
        .iter()
        .map(|&e| t.cperm.cycle_index_of(e).ok_or(CTreeError::NoSuchElement(e)))
        .collect::<Result<_, _>>()?;
    idxs.sort_unstable();
    idxs.dedup();
    if idxs.len() != marked.len() {
        return Err(CTreeError::BadSupport);
    }
    let sub = CPermutation::new(idxs.iter().map(|&i| t.cperm.cycles()[i].clone()).collect())?;
    let seq = cperm_to_seq(&sub)?;
    let head = seq.seq[0];
    let mut cycles: Vec<(bool, Vec<usize>)> = t
        .cperm
        .cycles()
        .iter()
        .enumerate()
        .filter(|(i, _)| !idxs.contains(i))
        .map(|(_, c)| c.clone())
        .collect();
    cycles.push((seq.positive, seq.seq));
    let out = CDecoratedTree::new(t.tree.clone(), CPermutation::new(cycles)?)?;
    Ok((out, head))
}

/// One case of the extended Rémy isomorphism
/// `(n+1)·T_g(n) ≅ 4(2n-1)·T_g(n-1) + 4(n-1)(2n-1)(2n-3)·T_{g-1}(n-2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RemyReduction {
    /// The marked vertex sat in a 1-cycle: remember its sign, contract once.
    Fixed { ctree: CDecoratedTree, sign: bool, corner: usize, leaf_side: bool },
    /// The marked vertex's cycle had length ≥ 3: its two cycle successors
    /// are removed and contracted, the vertex stays marked.
    Shortened {
        ctree: CDecoratedTree,
        marked_vertex: usize,
        corner1: usize,
        leaf_side1: bool,
        corner2: usize,
        leaf_side2: bool,
    },
}

/// Relabels 1-based cycle elements through a 0-based vertex renumbering.
fn relabel_cycles(cperm: &CPermutation, old_to_new: &[usize]) -> CPermutation {
    let cycles = cperm
        .cycles()
        .iter()
        .map(|(s, c)| {
            (
                *s,
                c.iter()
                    .map(|&e| {
                        debug_assert_ne!(old_to_new[e - 1], usize::MAX, "removed element still in a cycle");
                        old_to_new[e - 1] + 1
                    })
                    .collect(),
            )
        })
        .collect();
    CPermutation::new(cycles).expect("relabelling keeps cycles valid")
}

/// Forward direction of the extended Rémy isomorphism on a C-decorated tree
/// with a marked vertex (0-based tree vertex).
pub fn extended_remy_reduce(
    t: &CDecoratedTree,
    marked_vertex: usize,
) -> Result<RemyReduction, CTreeError> {
    let elem = marked_vertex + 1;
    let idx = t.cperm.cycle_index_of(elem).ok_or(CTreeError::NoSuchElement(elem))?;
    let (sign, cyc) = t.cperm.cycles()[idx].clone();
    if cyc.len() == 1 {
        let (tree, corner, leaf_side, old_to_new) = t.tree.remy_contract(marked_vertex)?;
        let remaining = CPermutation::new(
            t.cperm
                .cycles()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, c)| c.clone())
                .collect(),
        )?;
        let ctree = CDecoratedTree::new(tree, relabel_cycles(&remaining, &old_to_new))?;
        return Ok(RemyReduction::Fixed { ctree, sign, corner, leaf_side });
    }
    // cycle (v, v1, v2, …): remove the two successors of v
    let pos = cyc.iter().position(|&x| x == elem).unwrap();
    let v1 = cyc[(pos + 1) % cyc.len()] - 1;
    let v2 = cyc[(pos + 2) % cyc.len()] - 1;
    let mut shorter: Vec<usize> = Vec::with_capacity(cyc.len() - 2);
    let mut at = pos;
    shorter.push(cyc[at]);
    at = (at + 3) % cyc.len();
    while cyc[at] != elem {
        shorter.push(cyc[at]);
        at = (at + 1) % cyc.len();
    }
    let mut cycles: Vec<(bool, Vec<usize>)> = t
        .cperm
        .cycles()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, c)| c.clone())
        .collect();
    cycles.push((sign, shorter));
    let cperm = CPermutation::new(cycles)?;

    let (tree1, corner1, leaf_side1, map1) = t.tree.remy_contract(v1)?;
    let cperm1 = relabel_cycles(&cperm, &map1);
    let v2_in_1 = map1[v2];
    let marked_in_1 = map1[marked_vertex];
    let (tree2, corner2, leaf_side2, map2) = tree1.remy_contract(v2_in_1)?;
    let cperm2 = relabel_cycles(&cperm1, &map2);
    let ctree = CDecoratedTree::new(tree2, cperm2)?;
    Ok(RemyReduction::Shortened {
        ctree,
        marked_vertex: map2[marked_in_1],
        corner1,
        leaf_side1,
        corner2,
        leaf_side2,
    })
}

/// Backward direction of the extended Rémy isomorphism.
pub fn extended_remy_expand(reduction: &RemyReduction) -> Result<(CDecoratedTree, usize), CTreeError> {
    match reduction {
        RemyReduction::Fixed { ctree, sign, corner, leaf_side } => {
            let (tree, marked, old_to_new) = ctree.tree.remy_expand(*corner, *leaf_side)?;
            let mut cperm = relabel_cycles(&ctree.cperm, &old_to_new);
            let mut cycles = cperm.cycles().to_vec();
            cycles.push((*sign, vec![marked + 1]));
            cperm = CPermutation::new(cycles)?;
            Ok((CDecoratedTree::new(tree, cperm)?, marked))
        }
        RemyReduction::Shortened { ctree, marked_vertex, corner1, leaf_side1, corner2, leaf_side2 } => {
            let (tree1, v2_new, map2) = ctree.tree.remy_expand(*corner2, *leaf_side2)?;
            let cperm1 = relabel_cycles(&ctree.cperm, &map2);
            let marked1 = map2[*marked_vertex];
            let (tree0, v1_new, map1) = tree1.remy_expand(*corner1, *leaf_side1)?;
            let cperm0 = relabel_cycles(&cperm1, &map1);
            let marked0 = map1[marked1];
            let v2_final = map1[v2_new];
            // reinsert v1, v2 right after the marked element in its cycle
            let elem = marked0 + 1;
            let idx = cperm0.cycle_index_of(elem).unwrap();
            let mut cycles = cperm0.cycles().to_vec();
            let (_, cyc) = &mut cycles[idx];
            let pos = cyc.iter().position(|&x| x == elem).unwrap();
            cyc.insert(pos + 1, v2_final + 1);
            cyc.insert(pos + 1, v1_new + 1);
            let out = CDecoratedTree::new(tree0, CPermutation::new(cycles)?)?;
            Ok((out, marked0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(sign: bool, xs: &[usize]) -> SignedSequence {
        SignedSequence::new(sign, xs.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_of_the_signed_sequence_bijection() {
        let s = seq(true, &[4, 7, 3, 1, 5, 6, 2]);
        let c = seq_to_cperm(&s).unwrap();
        let expect = CPermutation::new(vec![
            (false, vec![1, 6, 2]),
            (false, vec![3]),
            (true, vec![4, 7, 5]),
        ])
        .unwrap();
        assert_eq!(c, expect);
        assert_eq!(cperm_to_seq(&c).unwrap(), s);
    }

    #[test]
    fn singleton_sequence() {
        let s = seq(true, &[1]);
        let c = seq_to_cperm(&s).unwrap();
        assert_eq!(c, CPermutation::new(vec![(true, vec![1])]).unwrap());
        assert_eq!(cperm_to_seq(&c).unwrap(), s);
    }

    #[test]
    fn one_cycle_iff_odd_and_min_first() {
        let c = seq_to_cperm(&seq(false, &[2, 5, 3, 4, 1])).unwrap();
        assert!(c.n_cycles() > 1);
        let c = seq_to_cperm(&seq(false, &[1, 5, 3, 4, 2])).unwrap();
        assert_eq!(c.n_cycles(), 1);
    }

    fn all_sequences(k: usize) -> Vec<SignedSequence> {
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
        let base: Vec<usize> = (1..=k).collect();
        let mut out = Vec::new();
        for p in perms(&base) {
            for sign in [true, false] {
                out.push(SignedSequence::new(sign, p.clone()).unwrap());
            }
        }
        out
    }

    #[test]
    fn bijective_on_small_ground_sets() {
        for k in 1..=6 {
            let seqs = all_sequences(k);
            let mut images: Vec<CPermutation> =
                seqs.iter().map(|s| seq_to_cperm(s).unwrap()).collect();
            for (s, c) in seqs.iter().zip(images.iter()) {
                assert_eq!(&cperm_to_seq(c).unwrap(), s);
            }
            images.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
            images.dedup();
            assert_eq!(images.len(), seqs.len(), "k={k}");
        }
    }

    #[test]
    fn dyck_round_trip_and_corners() {
        let t = PlaneTree::from_dyck("(()())()").unwrap();
        assert_eq!(t.to_dyck(), "(()())()");
        assert_eq!(t.n_edges(), 4);
        assert_eq!(t.corners().len(), 9);
        assert_eq!(PlaneTree::enumerate(3).len(), 5);
    }

    #[test]
    fn tree_map_round_trip() {
        for n in 1..=5 {
            for t in PlaneTree::enumerate(n) {
                let map = t.to_map();
                assert_eq!(map.genus(), 0);
                let (back, vertex_of) = PlaneTree::from_map(&map).unwrap();
                assert_eq!(back, t);
                assert_eq!(vertex_of[map.root()], 0);
            }
        }
    }

    #[test]
    fn remy_is_a_bijection() {
        use std::collections::HashSet;
        for n in 1..=5 {
            let smaller = PlaneTree::enumerate(n - 1);
            let mut seen: HashSet<(String, usize)> = HashSet::new();
            for t in &smaller {
                for corner in 0..t.corners().len() {
                    for leaf_side in [true, false] {
                        let (big, v, _) = t.remy_expand(corner, leaf_side).unwrap();
                        assert_eq!(big.n_edges(), n);
                        assert_eq!(big.is_leaf(v), leaf_side);
                        assert!(seen.insert((big.to_dyck(), v)), "collision at n={n}");
                        let (small, c2, side2, _) = big.remy_contract(v).unwrap();
                        assert_eq!(small, *t);
                        assert_eq!((c2, side2), (corner, leaf_side));
                    }
                }
            }
            // image covers all (tree, vertex) pairs: (n+1)·Cat(n) of them
            let total: usize = PlaneTree::enumerate(n).len() * (n + 1);
            assert_eq!(seen.len(), total);
            assert_eq!(total, 2 * (2 * n - 1) * smaller.len());
        }
    }

    #[test]
    fn decompose_worked_example() {
        // one 3-cycle on a 2-edge tree; marking 3 splits into three 1-cycles
        let tree = PlaneTree::from_dyck("(())").unwrap();
        let cperm = CPermutation::new(vec![(true, vec![1, 3, 2])]).unwrap();
        let t = CDecoratedTree::new(tree, cperm).unwrap();
        let (out, marked) = decompose_ctree(&t, 3).unwrap();
        assert_eq!(out.genus(), 0);
        assert_eq!(out.cperm.n_cycles(), 3);
        assert_eq!(marked.len(), 3);
        let (back, elem) = compose_ctree(&out, &marked).unwrap();
        assert_eq!(back, t);
        assert_eq!(elem, 3);
    }

    #[test]
    fn ctree_json_round_trip() {
        let tree = PlaneTree::from_dyck("(())").unwrap();
        let cperm = CPermutation::new(vec![(true, vec![1, 3, 2])]).unwrap();
        let t = CDecoratedTree::new(tree, cperm).unwrap();
        let s = t.to_json();
        assert_eq!(s, r#"{"dyck":"(())","cycles":[{"sign":"+","elems":[1,3,2]}]}"#);
        assert_eq!(CDecoratedTree::from_json(&s).unwrap(), t);
    }
}
