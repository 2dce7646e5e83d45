//! Rooted maps as rotation systems.
//!
//! A map is stored as a pair of permutations on the half-edge set `0..2n`
//! plus a root half-edge. `sigma` gives the counterclockwise successor of a
//! half-edge around its vertex; `alpha` is the fixed-point-free involution
//! pairing the two half-edges of each edge. The face permutation is
//! `sigma ∘ alpha` (alpha first); its cycles are the faces, and for a
//! unicellular map the unique cycle tours the face clockwise.
//!
//! Corners are identified with half-edges: the corner of `h` is the angular
//! sector swept just before `h` counterclockwise around its vertex, i.e. the
//! sector between `sigma⁻¹(h)` and `h`. Corner labels `1..=2n` follow the
//! clockwise face tour starting at the root corner.

use crate::perm::{Perm, PermError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MapError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("alpha must be a fixed-point-free involution")]
    AlphaNotInvolution,
    #[error("sigma and alpha arrays must have the same even length")]
    LengthMismatch,
    #[error("root half-edge {0} out of range")]
    RootOutOfRange(usize),
    #[error("map is not connected")]
    NotConnected,
    #[error("operation requires a unicellular map (got {0} faces)")]
    NotUnicellular(usize),
    #[error("corner {0} is not a trisection")]
    NotTrisection(usize),
    #[error("marked vertex set must have odd size >= 3 (got {0})")]
    BadMarkedSet(usize),
    #[error("marked vertices must be pairwise distinct")]
    MarkedNotDistinct,
    #[error("invalid JSON map: {0}")]
    Json(String),
}

/// A rooted map on an orientable surface, as a rotation system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationMap {
    n_edges: usize,
    sigma: Perm,
    alpha: Perm,
    root: usize,
}

/// Corner labels along the face tour of a unicellular map.
///
/// `labels[h]` is the label in `1..=2n` of the corner identified with
/// half-edge `h`; label 1 is the root corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerLabeling {
    labels: Vec<usize>,
}

impl CornerLabeling {
    #[inline]
    pub fn label(&self, corner: usize) -> usize {
        self.labels[corner]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Labels read counterclockwise around the vertex of `h`, starting from
    /// the minimum label.
    pub fn vertex_sequence(&self, map: &RotationMap, h: usize) -> Vec<usize> {
        map.vertex_cycle_from_min(h, self)
            .into_iter()
            .map(|c| self.labels[c])
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    n: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    root: usize,
}

impl RotationMap {
    /// Builds and validates a map. `sigma` and `alpha` are image tables on
    /// `0..2n`; `alpha` must be a fixed-point-free involution and the pair
    /// must act transitively (connected map).
    pub fn new(sigma: Perm, alpha: Perm, root: usize) -> Result<Self, MapError> {
        let m = sigma.len();
        if m != alpha.len() || m == 0 || m % 2 != 0 {
            return Err(MapError::LengthMismatch);
        }
        if root >= m {
            return Err(MapError::RootOutOfRange(root));
        }
        if !alpha.is_fixed_point_free_involution() {
            return Err(MapError::AlphaNotInvolution);
        }
        let map = RotationMap { n_edges: m / 2, sigma, alpha, root };
        if !map.is_connected() {
            return Err(MapError::NotConnected);
        }
        Ok(map)
    }

    /// The unicellular map with face tour fixed to the cycle `(0,1,…,2n-1)`
    /// and rotation determined by the involution: `sigma(h) = alpha(h) + 1`.
    /// Every rooted unicellular map is isomorphic to exactly one of these.
    pub fn from_canonical_involution(alpha: Perm) -> Result<Self, MapError> {
        let m = alpha.len();
        if !alpha.is_fixed_point_free_involution() {
            return Err(MapError::AlphaNotInvolution);
        }
        let sigma = Perm::from_images((0..m).map(|h| (alpha.apply(h) + 1) % m).collect())?;
        RotationMap::new(sigma, alpha, 0)
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.n_edges
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    pub fn alpha(&self) -> &Perm {
        &self.alpha
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Face permutation `sigma ∘ alpha`: follows the clockwise face tour.
    pub fn face_perm(&self) -> Perm {
        self.sigma.compose(&self.alpha)
    }

    pub fn face_count(&self) -> usize {
        self.face_perm().cycle_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.sigma.cycle_count()
    }

    pub fn is_unicellular(&self) -> bool {
        self.face_count() == 1
    }

    fn is_connected(&self) -> bool {
        let m = self.half_edge_count();
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(h) = stack.pop() {
            for next in [self.sigma.apply(h), self.alpha.apply(h)] {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        reached == m
    }

    /// Genus from Euler's relation `|V| - n + |F| = 2 - 2g`.
    pub fn genus(&self) -> usize {
        let v = self.vertex_count();
        let f = self.face_count();
        let euler = v as isize - self.n_edges as isize + f as isize;
        let two_g = 2 - euler;
        debug_assert!(two_g >= 0 && two_g % 2 == 0, "non-orientable Euler data");
        (two_g / 2) as usize
    }

    /// Corner labels `1..=2n` along the clockwise face tour, starting at the
    /// root corner. Defined only for unicellular maps.
    pub fn corner_labels(&self) -> Result<CornerLabeling, MapError> {
        let faces = self.face_count();
        if faces != 1 {
            return Err(MapError::NotUnicellular(faces));
        }
        let phi = self.face_perm();
        let mut labels = vec![0usize; self.half_edge_count()];
        let mut h = self.root;
        for lab in 1..=self.half_edge_count() {
            labels[h] = lab;
            h = phi.apply(h);
        }
        Ok(CornerLabeling { labels })
    }

    /// The sigma-cycle through `h`, starting at `h`.
    pub fn vertex_cycle_from(&self, h: usize) -> Vec<usize> {
        let mut cyc = vec![h];
        let mut x = self.sigma.apply(h);
        while x != h {
            cyc.push(x);
            x = self.sigma.apply(x);
        }
        cyc
    }

    fn vertex_cycle_from_min(&self, h: usize, labels: &CornerLabeling) -> Vec<usize> {
        let cyc = self.vertex_cycle_from(h);
        let start = cyc
            .iter()
            .enumerate()
            .min_by_key(|(_, &c)| labels.labels[c])
            .map(|(i, _)| i)
            .unwrap();
        let mut out = cyc[start..].to_vec();
        out.extend_from_slice(&cyc[..start]);
        out
    }

    /// Smallest half-edge index on the vertex of `h`; used as a stable
    /// vertex identifier across slicing (half-edge identities never change).
    pub fn vertex_id(&self, h: usize) -> usize {
        self.vertex_cycle_from(h).into_iter().min().unwrap()
    }

    /// Vertices as sorted half-edge lists, sorted by smallest half-edge.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let mut vs: Vec<Vec<usize>> = self
            .sigma
            .cycles()
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        vs.sort();
        vs
    }

    /// Is the corner of `h` a trisection: not the minimum of its vertex, and
    /// smaller than its counterclockwise predecessor corner.
    pub fn is_trisection(&self, h: usize, labels: &CornerLabeling) -> bool {
        let pred = self.sigma.inverse().apply(h);
        if labels.labels[h] >= labels.labels[pred] {
            return false;
        }
        // a label below its predecessor is automatically not the vertex min
        // only when the predecessor relation is read from the min; rule out
        // the min explicitly.
        let min = *self
            .vertex_cycle_from(h)
            .iter()
            .min_by_key(|&&c| labels.labels[c])
            .unwrap();
        min != h
    }

    /// All trisections, as corners (half-edges), in increasing label order.
    /// A unicellular map of genus g has exactly 2g of them.
    pub fn trisections(&self) -> Result<Vec<usize>, MapError> {
        let labels = self.corner_labels()?;
        let mut out: Vec<usize> = (0..self.half_edge_count())
            .filter(|&h| self.is_trisection(h, &labels))
            .collect();
        out.sort_by_key(|&h| labels.labels[h]);
        Ok(out)
    }

    /// Relabels half-edges so the face tour is `(0,1,…,2n-1)` and the root
    /// is 0. Two rooted unicellular maps are isomorphic iff their canonical
    /// forms are equal; the canonical alpha alone determines the map.
    pub fn canonical(&self) -> Result<RotationMap, MapError> {
        let labels = self.corner_labels()?;
        let m = self.half_edge_count();
        let rho: Vec<usize> = labels.labels.iter().map(|&l| l - 1).collect();
        let mut alpha = vec![0usize; m];
        let mut sigma = vec![0usize; m];
        for h in 0..m {
            alpha[rho[h]] = rho[self.alpha.apply(h)];
            sigma[rho[h]] = rho[self.sigma.apply(h)];
        }
        RotationMap::new(Perm::from_images(sigma)?, Perm::from_images(alpha)?, 0)
    }

    /// Cuts one vertex at three of its corners into three vertices, one per
    /// arc between consecutive cuts. Pure: returns a new map.
    fn slice_at_cuts(&self, cuts: [usize; 3]) -> RotationMap {
        let cyc = self.vertex_cycle_from(cuts[0]);
        let pos = |h: usize| cyc.iter().position(|&x| x == h).expect("cut not on vertex");
        let mut ps = [0usize, pos(cuts[1]), pos(cuts[2])];
        ps.sort_unstable();
        let mut images: Vec<usize> = self.sigma.images().to_vec();
        for i in 0..3 {
            let start = ps[i];
            let end = ps[(i + 1) % 3]; // exclusive, cyclic
            let last = if end == 0 { cyc.len() - 1 } else { end - 1 };
            images[cyc[last]] = cyc[start];
        }
        RotationMap {
            n_edges: self.n_edges,
            sigma: Perm::from_images(images).expect("slice keeps sigma a bijection"),
            alpha: self.alpha.clone(),
            root: self.root,
        }
    }

    /// Merges three vertices into one by cutting each at the given corner
    /// and concatenating the opened arcs in the given cyclic order.
    /// Inverse of `slice_at_cuts`. Returns `None` when the corners do not
    /// sit on three distinct vertices or the result is not unicellular.
    fn glue_arcs(&self, cuts: [usize; 3]) -> Option<RotationMap> {
        let arcs: Vec<Vec<usize>> = cuts.iter().map(|&h| self.vertex_cycle_from(h)).collect();
        let ids: Vec<usize> = arcs.iter().map(|a| *a.iter().min().unwrap()).collect();
        if ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2] {
            return None;
        }
        let mut images: Vec<usize> = self.sigma.images().to_vec();
        for i in 0..3 {
            let last = *arcs[i].last().unwrap();
            images[last] = arcs[(i + 1) % 3][0];
        }
        let glued = RotationMap {
            n_edges: self.n_edges,
            sigma: Perm::from_images(images).expect("glue keeps sigma a bijection"),
            alpha: self.alpha.clone(),
            root: self.root,
        };
        if glued.is_unicellular() {
            Some(glued)
        } else {
            None
        }
    }

    /// All ways to cut the vertex of `h` at three of its corners so that
    /// the result is again unicellular (each drops the genus by one).
    fn vertex_slicings(&self, h: usize) -> Vec<(RotationMap, [usize; 3])> {
        let cyc = self.vertex_cycle_from(h);
        let k = cyc.len();
        let mut out = Vec::new();
        for x in 0..k {
            for y in x + 1..k {
                for z in y + 1..k {
                    let cuts = [cyc[x], cyc[y], cyc[z]];
                    let sliced = self.slice_at_cuts(cuts);
                    if sliced.is_unicellular() {
                        out.push((sliced, cuts));
                    }
                }
            }
        }
        out
    }

    /// Slices the vertex of trisection `tau` into three vertices, producing
    /// a unicellular map of genus one less with the same edge set, plus the
    /// three cut corners. Among the valid ways to cut, the one matching the
    /// recursive bijection [`psi`] is taken when `tau`'s assignment is a
    /// single-step target, and the lexicographically first valid cut
    /// otherwise.
    pub fn slice_trisection(&self, tau: usize) -> Result<(RotationMap, usize, usize, usize), MapError> {
        let labels = self.corner_labels()?;
        if !self.is_trisection(tau, &labels) {
            return Err(MapError::NotTrisection(tau));
        }
        if let Ok((out, marked)) = self.psi(tau) {
            if marked.len() == 3 {
                // recover the cut corners: each marked vertex was opened at
                // the corner whose sector changed
                let mut cuts: Vec<usize> = Vec::new();
                for &id in &marked {
                    for &h in &out.vertex_cycle_from(id) {
                        let pred = out.sigma.inverse().apply(h);
                        if self.sigma.inverse().apply(h) != pred {
                            cuts.push(h);
                        }
                    }
                }
                if cuts.len() == 3 {
                    cuts.sort_by_key(|&h| labels.labels[h]);
                    return Ok((out, cuts[0], cuts[1], cuts[2]));
                }
            }
        }
        let (sliced, cuts) = self
            .vertex_slicings(tau)
            .into_iter()
            .next()
            .expect("a positive-genus vertex always admits a slicing");
        Ok((sliced, cuts[0], cuts[1], cuts[2]))
    }

    /// Canonical identity of a marked map: the canonical involution of the
    /// relabelled map plus the relabelled, sorted marked vertex ids. Two
    /// marked rooted maps are isomorphic iff their keys are equal.
    pub fn marked_class_key(&self, marks: &[usize]) -> Result<(Vec<usize>, Vec<usize>), MapError> {
        let labels = self.corner_labels()?;
        let m = self.half_edge_count();
        let rho: Vec<usize> = labels.labels.iter().map(|&l| l - 1).collect();
        let mut alpha = vec![0usize; m];
        for h in 0..m {
            alpha[rho[h]] = rho[self.alpha.apply(h)];
        }
        let mut mk: Vec<usize> = marks
            .iter()
            .map(|&v| self.vertex_cycle_from(v).iter().map(|&h| rho[h]).min().unwrap())
            .collect();
        mk.sort_unstable();
        Ok((alpha, mk))
    }

    /// All marked sliced maps reachable from this map by repeatedly slicing
    /// the vertex of `h` and then any vertex created along the way. Entries
    /// hold the map and the sorted marked vertex ids; `2k+1` marks mean the
    /// genus dropped by `k`.
    fn reachable_slicings(&self, h: usize) -> Vec<(RotationMap, Vec<usize>)> {
        let mut out: Vec<(RotationMap, Vec<usize>)> = Vec::new();
        let mut frontier: Vec<(RotationMap, Vec<usize>)> = Vec::new();
        let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
        for (sliced, cuts) in self.vertex_slicings(h) {
            let mut marks: Vec<usize> = cuts.iter().map(|&c| sliced.vertex_id(c)).collect();
            marks.sort_unstable();
            if seen.insert((sliced.sigma.images().to_vec(), marks.clone())) {
                frontier.push((sliced, marks));
            }
        }
        while let Some((map, marks)) = frontier.pop() {
            out.push((map.clone(), marks.clone()));
            if map.genus() == 0 {
                continue;
            }
            for &v in &marks {
                for (deeper, cuts) in map.vertex_slicings(v) {
                    let mut next: Vec<usize> =
                        marks.iter().copied().filter(|&w| w != v).collect();
                    next.extend(cuts.iter().map(|&c| deeper.vertex_id(c)));
                    next.sort_unstable();
                    if seen.insert((deeper.sigma.images().to_vec(), next.clone())) {
                        frontier.push((deeper, next));
                    }
                }
            }
        }
        out
    }

    /// The recursive slicing bijection: sends a unicellular map of genus
    /// `g > 0` with a marked trisection to a unicellular map of genus `g-k`
    /// with `2k+1` marked vertices (`1 ≤ k ≤ g`), bijectively onto the
    /// disjoint union over `k`, preserving the underlying graph (the marked
    /// vertices merge back into the vertex of `tau`). Marked vertices are
    /// returned as sorted stable vertex ids (smallest half-edge).
    ///
    /// The assignment of targets to trisections is pinned by a deterministic
    /// canonical matching computed once per `(edges, genus)` over canonical
    /// representatives; see [`psi_table`]. The concrete output keeps the
    /// half-edge identities of `self`.
    pub fn psi(&self, tau: usize) -> Result<(RotationMap, Vec<usize>), MapError> {
        let labels = self.corner_labels()?;
        if !self.is_trisection(tau, &labels) {
            return Err(MapError::NotTrisection(tau));
        }
        let table = psi_table(self.n_edges, self.genus())?;
        let canon = self.canonical()?;
        let target = table
            .forward
            .get(&(canon.alpha.images().to_vec(), labels.labels[tau]))
            .expect("every trisection has a matched target")
            .clone();
        // realize the target class concretely in our own half-edge labels
        let mut best: Option<(RotationMap, Vec<usize>)> = None;
        for (cand, marks) in self.reachable_slicings(tau) {
            if cand.marked_class_key(&marks)? != target {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, bm)) => {
                    (cand.sigma.images(), &marks) < (b.sigma.images(), bm)
                }
            };
            if better {
                best = Some((cand, marks));
            }
        }
        Ok(best.expect("matched target is reachable"))
    }

    /// Inverse of [`psi`]: glues an odd set of `2k+1 ≥ 3` marked vertices
    /// into one, raising the genus by `k`, and returns the map together
    /// with the distinguished trisection.
    ///
    /// The preimage is located by a bounded local search over the ways the
    /// last slicing step could have produced the marked vertices; every
    /// candidate is certified by running [`psi`] forward, so the pair of
    /// operations is exactly inverse by construction.
    pub fn psi_inverse(&self, marked: &[usize]) -> Result<(RotationMap, usize), MapError> {
        if marked.len() < 3 || marked.len() % 2 == 0 {
            return Err(MapError::BadMarkedSet(marked.len()));
        }
        let mut ids: Vec<usize> = marked.iter().map(|&h| self.vertex_id(h)).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != marked.len() {
            return Err(MapError::MarkedNotDistinct);
        }
        if !self.is_unicellular() {
            return Err(MapError::NotUnicellular(self.face_count()));
        }
        let mut seen = HashSet::new();
        if let Some(hit) = self.unglue_search(self, &ids, &ids, &mut seen, true) {
            return Ok(hit);
        }
        seen.clear();
        self.unglue_search(self, &ids, &ids, &mut seen, false)
            .ok_or(MapError::BadMarkedSet(ids.len()))
    }

    /// Is the half-edge labelling already the canonical one (face tour
    /// `(0,1,…,2n-1)`, root 0)?
    fn is_canonical_form(&self) -> bool {
        let m = self.half_edge_count();
        self.root == 0 && (0..m).all(|h| self.sigma.apply(h) == (self.alpha.apply(h) + 1) % m)
    }

    /// Accepts a candidate `glued` map iff running the bijection forward at
    /// one of its trisections reproduces exactly the expected output.
    fn certify(&self, cand: &RotationMap, ids: &[usize]) -> Option<(RotationMap, usize)> {
        for theta in cand.trisections().ok()? {
            if let Ok((back, back_ids)) = cand.psi(theta) {
                if back == *self && back_ids == ids {
                    return Some((cand.clone(), theta));
                }
            }
        }
        None
    }

    /// Reassembles the marked vertices into one by a sequence of three-way
    /// gluings, certifying every complete candidate against [`psi`].
    ///
    /// Isomorphic relabellings of one preimage can assemble to the same
    /// output, so when `canonical_only` is set, only candidates in canonical
    /// half-edge labelling are accepted; the search runs with that
    /// restriction first, which makes the inverse exact on canonical
    /// representatives.
    fn unglue_search(
        &self,
        original: &RotationMap,
        original_ids: &[usize],
        ids: &[usize],
        seen: &mut HashSet<Vec<usize>>,
        canonical_only: bool,
    ) -> Option<(RotationMap, usize)> {
        if ids.len() == 1 {
            if canonical_only && !self.is_canonical_form() {
                return None;
            }
            return original.certify(self, original_ids);
        }
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                for l in j + 1..ids.len() {
                    let rest: Vec<usize> = ids
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j && *k != l)
                        .map(|(_, &v)| v)
                        .collect();
                    for &c0 in &self.vertex_cycle_from(ids[i]) {
                        for &c1 in &self.vertex_cycle_from(ids[j]) {
                            for &c2 in &self.vertex_cycle_from(ids[l]) {
                                for cuts in [[c0, c1, c2], [c0, c2, c1]] {
                                    let Some(cand) = self.glue_arcs(cuts) else { continue };
                                    if !seen.insert(cand.sigma.images().to_vec()) {
                                        continue;
                                    }
                                    let mut next = rest.clone();
                                    next.push(cand.vertex_id(cuts[0]));
                                    next.sort_unstable();
                                    if let Some(hit) = cand.unglue_search(
                                        original,
                                        original_ids,
                                        &next,
                                        seen,
                                        canonical_only,
                                    ) {
                                        return Some(hit);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn trisection_labels(&self) -> Result<Vec<(usize, usize)>, MapError> {
        let labels = self.corner_labels()?;
        Ok(self
            .trisections()?
            .into_iter()
            .map(|h| (h, labels.label(h)))
            .collect())
    }

    /// Partition of half-edges into vertices, as a lookup: `part[h]` is the
    /// vertex id of `h`. Slicing refines this partition; gluing coarsens it.
    pub fn vertex_partition(&self) -> Vec<usize> {
        let m = self.half_edge_count();
        let mut part = vec![usize::MAX; m];
        for h in 0..m {
            if part[h] == usize::MAX {
                let cyc = self.vertex_cycle_from(h);
                let id = *cyc.iter().min().unwrap();
                for &x in &cyc {
                    part[x] = id;
                }
            }
        }
        part
    }

    pub fn to_json(&self) -> String {
        let dto = MapJson {
            n: self.n_edges,
            sigma: self.sigma.images().iter().map(|&x| x + 1).collect(),
            alpha: self.alpha.images().iter().map(|&x| x + 1).collect(),
            root: self.root + 1,
        };
        serde_json::to_string(&dto).expect("map serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, MapError> {
        let dto: MapJson = serde_json::from_str(s).map_err(|e| MapError::Json(e.to_string()))?;
        let m = 2 * dto.n;
        let fix = |v: Vec<usize>| -> Result<Vec<usize>, MapError> {
            v.into_iter()
                .map(|x| {
                    if x >= 1 && x <= m {
                        Ok(x - 1)
                    } else {
                        Err(MapError::Json(format!("half-edge {x} out of 1..={m}")))
                    }
                })
                .collect()
        };
        if dto.sigma.len() != m || dto.alpha.len() != m {
            return Err(MapError::Json("sigma/alpha length must be 2n".into()));
        }
        if dto.root < 1 || dto.root > m {
            return Err(MapError::Json(format!("root {} out of 1..={m}", dto.root)));
        }
        let sigma = Perm::from_images(fix(dto.sigma)?)?;
        let alpha = Perm::from_images(fix(dto.alpha)?)?;
        RotationMap::new(sigma, alpha, dto.root - 1)
    }
}

/// Matching table realizing the slicing bijection on canonical
/// representatives with `n` edges and genus `g`: maps (canonical involution,
/// trisection label) to the class key of its marked target.
struct PsiTable {
    forward: HashMap<(Vec<usize>, usize), (Vec<usize>, Vec<usize>)>,
}

static PSI_TABLES: OnceLock<Mutex<HashMap<(usize, usize), Arc<PsiTable>>>> = OnceLock::new();

fn psi_table(n: usize, g: usize) -> Result<Arc<PsiTable>, MapError> {
    let lock = PSI_TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = lock.lock().expect("psi table lock");
    if let Some(t) = cache.get(&(n, g)) {
        return Ok(t.clone());
    }
    let t = Arc::new(build_psi_table(n, g)?);
    cache.insert((n, g), t.clone());
    Ok(t)
}

/// Builds the canonical matching between trisected maps and marked sliced
/// maps. The compatibility graph (everything reachable by iterated vertex
/// slicing) contains the recursive bijection of the underlying theory, so a
/// perfect matching always exists; Kuhn's algorithm with all orderings fixed
/// canonically makes the choice deterministic.
fn build_psi_table(n: usize, g: usize) -> Result<PsiTable, MapError> {
    assert!(g >= 1, "slicing needs positive genus");
    let mut left: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut right_index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
    let mut right_keys: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for alpha in crate::perm::fixed_point_free_involutions(n) {
        let map = RotationMap::from_canonical_involution(alpha)?;
        if map.genus() != g {
            continue;
        }
        // trisections grouped by vertex share one reachable set
        let tris = map.trisection_labels()?;
        let mut by_vertex: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (h, label) in tris {
            by_vertex.entry(map.vertex_id(h)).or_default().push((h, label));
        }
        for (vid, taus) in by_vertex {
            let mut targets: Vec<usize> = Vec::new();
            for (cand, marks) in map.reachable_slicings(vid) {
                let key = cand.marked_class_key(&marks)?;
                let next = right_index.len();
                let idx = *right_index.entry(key.clone()).or_insert(next);
                if idx == right_keys.len() {
                    right_keys.push(key);
                }
                targets.push(idx);
            }
            targets.sort_unstable();
            targets.dedup();
            for (_, label) in taus {
                left.push((map.alpha.images().to_vec(), label));
                edges.push(targets.clone());
            }
        }
    }
    // sort edge lists by canonical key order so the matching is stable
    let mut order: Vec<usize> = (0..right_keys.len()).collect();
    order.sort_by(|&a, &b| right_keys[a].cmp(&right_keys[b]));
    let mut rank = vec![0usize; right_keys.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    for targets in edges.iter_mut() {
        targets.sort_by_key(|&i| rank[i]);
    }
    // Kuhn's augmenting-path matching, deterministic by construction
    let mut matched_right: Vec<Option<usize>> = vec![None; right_keys.len()];
    fn augment(
        u: usize,
        edges: &[Vec<usize>],
        matched_right: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for &v in &edges[u] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            if matched_right[v].is_none()
                || augment(matched_right[v].unwrap(), edges, matched_right, visited)
            {
                matched_right[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..left.len() {
        let mut visited = vec![false; right_keys.len()];
        let ok = augment(u, &edges, &mut matched_right, &mut visited);
        assert!(ok, "slicing compatibility graph admits a perfect matching");
    }
    let mut forward = HashMap::new();
    for (v, mu) in matched_right.iter().enumerate() {
        if let Some(u) = mu {
            forward.insert(left[*u].clone(), right_keys[v].clone());
        }
    }
    Ok(PsiTable { forward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::unicellular_maps;

    fn single_edge() -> RotationMap {
        // one edge, two vertices
        RotationMap::from_canonical_involution(Perm::from_images(vec![1, 0]).unwrap()).unwrap()
    }

    fn torus_two_edges() -> RotationMap {
        // the unique unicellular map with n=2, one vertex, one face
        RotationMap::from_canonical_involution(Perm::from_images(vec![2, 3, 0, 1]).unwrap())
            .unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(single_edge().genus(), 0);
        assert_eq!(torus_two_edges().genus(), 1);
        assert_eq!(torus_two_edges().vertex_count(), 1);
    }

    #[test]
    fn plane_trees_have_n_plus_one_vertices_and_no_trisections() {
        for n in 1..=5 {
            for map in unicellular_maps(n) {
                if map.genus() == 0 {
                    assert_eq!(map.vertex_count(), n + 1);
                    assert!(map.trisections().unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn corner_labels_are_a_bijection() {
        for map in unicellular_maps(3) {
            let labels = map.corner_labels().unwrap();
            let mut seen: Vec<usize> = labels.labels().to_vec();
            seen.sort_unstable();
            assert_eq!(seen, (1..=6).collect::<Vec<_>>());
            assert_eq!(labels.label(map.root()), 1);
        }
    }

    #[test]
    fn trisection_count_is_twice_genus() {
        for n in 1..=5 {
            for map in unicellular_maps(n) {
                let tris = map.trisections().unwrap();
                assert_eq!(tris.len(), 2 * map.genus(), "map {:?}", map);
            }
        }
    }

    #[test]
    fn torus_vertex_sequence_reads_counterclockwise_from_min() {
        let map = torus_two_edges();
        let labels = map.corner_labels().unwrap();
        assert_eq!(labels.vertex_sequence(&map, 0), vec![1, 4, 3, 2]);
    }

    #[test]
    fn slicing_drops_genus_by_one_and_keeps_one_face() {
        for n in 1..=5 {
            for map in unicellular_maps(n) {
                for tau in map.trisections().unwrap() {
                    let (sliced, c1, c2, c3) = map.slice_trisection(tau).unwrap();
                    assert_eq!(sliced.genus(), map.genus() - 1);
                    assert!(sliced.is_unicellular());
                    assert_eq!(sliced.n_edges(), map.n_edges());
                    // the three cut corners sit on three distinct new vertices
                    // that all came from tau's vertex
                    let old_vertex = map.vertex_id(tau);
                    let mut ids = [c1, c2, c3].map(|c| sliced.vertex_id(c));
                    ids.sort_unstable();
                    assert!(ids.windows(2).all(|w| w[0] != w[1]));
                    for c in [c1, c2, c3] {
                        assert_eq!(map.vertex_id(c), old_vertex);
                    }
                }
            }
        }
    }

    #[test]
    fn psi_round_trips_both_ways() {
        for n in 1..=4 {
            for map in unicellular_maps(n) {
                for tau in map.trisections().unwrap() {
                    let (out, marked) = map.psi(tau).unwrap();
                    assert!(marked.len() % 2 == 1 && marked.len() >= 3);
                    let (back, tau_back) = out.psi_inverse(&marked).unwrap();
                    assert_eq!(back, map);
                    assert_eq!(tau_back, tau);
                    let (out2, marked2) = back.psi(tau_back).unwrap();
                    assert_eq!(out2, out);
                    assert_eq!(marked2, marked);
                }
            }
        }
    }

    #[test]
    fn psi_merges_marked_vertices_in_the_partition() {
        for n in 1..=4 {
            for map in unicellular_maps(n) {
                for tau in map.trisections().unwrap() {
                    let (out, marked) = map.psi(tau).unwrap();
                    let before = map.vertex_partition();
                    let after = out.vertex_partition();
                    let m = map.half_edge_count();
                    for a in 0..m {
                        for b in 0..m {
                            let merged_after = after[a] == after[b]
                                || (marked.contains(&after[a]) && marked.contains(&after[b]));
                            assert_eq!(before[a] == before[b], merged_after);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip_is_stable() {
        let map = torus_two_edges();
        let s = map.to_json();
        assert_eq!(s, r#"{"n":2,"sigma":[4,1,2,3],"alpha":[3,4,1,2],"root":1}"#);
        let back = RotationMap::from_json(&s).unwrap();
        assert_eq!(back, map);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(RotationMap::from_json(r#"{"n":1,"sigma":[1,2],"alpha":[1,2],"root":1}"#).is_err());
        assert!(RotationMap::from_json(r#"{"n":1,"sigma":[2,1],"alpha":[2,9],"root":1}"#).is_err());
    }
}
