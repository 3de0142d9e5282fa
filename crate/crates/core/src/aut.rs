//! Automorphism groups, computed exactly.
//!
//! The search maps a small greedily-chosen generating set onto candidate
//! images of matching element order, closing the partial map after every
//! assignment and backtracking on contradiction. Each completed candidate is
//! re-verified against the full multiplication table before acceptance, so
//! the pruning logic never has to be trusted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_centerless, subgroup_generated, Group, Morphism, Subgroup};

/// `(p ∘ q)(k) = p[q[k]]`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&k| p[k]).collect()
}

/// All permutations of `0..n` in lexicographic order (identity first).
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Parity of a permutation: 0 for even, 1 for odd.
pub fn perm_parity(p: &[usize]) -> usize {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// The permutation `h -> g h g⁻¹`.
pub fn conjugation_perm(g: &Group, x: usize) -> Vec<usize> {
    g.elements().map(|h| g.conj(x, h)).collect()
}

/// Abort enumeration once this many automorphisms have been found; a desk
/// machine has no business composing more.
pub const MAX_AUT_ENUM: usize = 100_000;

/// A group realized concretely as permutations of `0..degree`, listed in
/// lexicographic order (so the identity permutation is element 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    degree: usize,
    perms: Vec<Vec<usize>>,
    group: Group,
}

impl PermGroup {
    /// Wrap a set of permutations that must be closed under composition.
    pub fn from_perms(name: &str, degree: usize, mut perms: Vec<Vec<usize>>) -> Result<PermGroup> {
        perms.sort_unstable();
        perms.dedup();
        let identity: Vec<usize> = (0..degree).collect();
        if perms.first() != Some(&identity) {
            return Err(Error::InvalidArgument(
                "permutation family must contain the identity".into(),
            ));
        }
        let n = perms.len();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let c = compose(&perms[i], &perms[j]);
                let k = perms
                    .binary_search(&c)
                    .map_err(|_| Error::InvalidArgument("permutations not closed".into()))?;
                table[i * n + j] = k;
            }
        }
        let group = Group::from_table(name, n, table)?;
        Ok(PermGroup { degree, perms, group })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn perm(&self, i: usize) -> &[usize] {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.perms.binary_search_by(|p| p.as_slice().cmp(perm)).ok()
    }

    /// Apply element `i` to a point of the permuted set.
    pub fn act(&self, i: usize, point: usize) -> usize {
        self.perms[i][point]
    }
}

/// The automorphism group of a base group, together with the conjugation map
/// from the base into it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroup {
    base_order: usize,
    perm_group: PermGroup,
    inner: Morphism,
}

impl AutGroup {
    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn group(&self) -> &Group {
        self.perm_group.group()
    }

    pub fn order(&self) -> usize {
        self.perm_group.order()
    }

    pub fn perms(&self) -> &PermGroup {
        &self.perm_group
    }

    /// The conjugation morphism base -> Aut(base).
    pub fn inner(&self) -> &Morphism {
        &self.inner
    }

    /// Indices of the inner automorphisms, sorted.
    pub fn inner_image(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.inner.map().to_vec();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Split into the conjugation morphism and the permutation realization.
    pub fn into_parts(self) -> (Morphism, PermGroup) {
        (self.inner, self.perm_group)
    }
}

struct Search<'a> {
    g: &'a Group,
    orders: Vec<usize>,
    gens: Vec<usize>,
    img: Vec<usize>,
    used: Vec<bool>,
    dom: Vec<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    /// Record `a -> fa` and close the partial map under products. Returns the
    /// trail checkpoint for undoing, or `None` after rolling back a
    /// contradiction.
    fn extend(&mut self, a: usize, fa: usize) -> Option<usize> {
        let checkpoint = self.dom.len();
        let mut queue = vec![(a, fa)];
        while let Some((b, fb)) = queue.pop() {
            if self.img[b] != usize::MAX {
                if self.img[b] != fb {
                    self.undo(checkpoint);
                    return None;
                }
                continue;
            }
            if self.used[fb] || self.orders[b] != self.orders[fb] {
                self.undo(checkpoint);
                return None;
            }
            self.img[b] = fb;
            self.used[fb] = true;
            self.dom.push(b);
            for i in 0..self.dom.len() {
                let c = self.dom[i];
                let fc = self.img[c];
                queue.push((self.g.mul(b, c), self.g.mul(fb, fc)));
                queue.push((self.g.mul(c, b), self.g.mul(fc, fb)));
            }
        }
        Some(checkpoint)
    }

    fn undo(&mut self, checkpoint: usize) {
        while self.dom.len() > checkpoint {
            let b = self.dom.pop().expect("trail entry");
            self.used[self.img[b]] = false;
            self.img[b] = usize::MAX;
        }
    }

    fn search(&mut self, gi: usize) -> Result<()> {
        if gi == self.gens.len() {
            debug_assert_eq!(self.dom.len(), self.g.order(), "generators close the group");
            if is_automorphism(self.g, &self.img) {
                if self.found.len() >= self.limit {
                    return Err(Error::CapExceeded {
                        limit: self.limit,
                        detail: "automorphism enumeration".into(),
                    });
                }
                self.found.push(self.img.clone());
            }
            return Ok(());
        }
        let gen = self.gens[gi];
        for y in self.g.elements() {
            if self.used[y] || self.orders[y] != self.orders[gen] {
                continue;
            }
            if let Some(cp) = self.extend(gen, y) {
                self.search(gi + 1)?;
                self.undo(cp);
            }
        }
        Ok(())
    }
}

/// Check a candidate bijection against the whole table.
pub fn is_automorphism(g: &Group, p: &[usize]) -> bool {
    if p.len() != g.order() {
        return false;
    }
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for i in g.elements() {
        for j in g.elements() {
            if p[g.mul(i, j)] != g.mul(p[i], p[j]) {
                return false;
            }
        }
    }
    true
}

/// A small generating set, chosen greedily: each step adds the element whose
/// closure with the current set is largest (ties to the smallest index).
pub fn greedy_generators(g: &Group) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut current = Subgroup::trivial(g);
    while current.order() < g.order() {
        let mut best: Option<(usize, usize)> = None; // (closure size, element)
        for x in g.elements() {
            if current.contains(x) {
                continue;
            }
            let size = grown_closure_size(g, &current, x);
            if best.is_none_or(|(s, _)| size > s) {
                best = Some((size, x));
            }
        }
        let (_, x) = best.expect("proper subgroup leaves elements to add");
        gens.push(x);
        current = subgroup_generated(g, &gens).expect("indices in range");
    }
    gens
}

/// `|<base ∪ {x}>|` given that `base` is already closed.
fn grown_closure_size(g: &Group, base: &Subgroup, x: usize) -> usize {
    let mut in_set = vec![false; g.order()];
    let mut members: Vec<usize> = base.elements().to_vec();
    for &m in &members {
        in_set[m] = true;
    }
    in_set[x] = true;
    members.push(x);
    let mut frontier = vec![x];
    while let Some(a) = frontier.pop() {
        let mut i = 0;
        while i < members.len() {
            let b = members[i];
            for p in [g.mul(a, b), g.mul(b, a)] {
                if !in_set[p] {
                    in_set[p] = true;
                    members.push(p);
                    frontier.push(p);
                }
            }
            i += 1;
        }
    }
    members.len()
}

/// All automorphisms of `g` as permutations, sorted lexicographically.
/// Fails with `CapExceeded` if more than `limit` exist.
pub fn automorphism_perms_limited(g: &Group, limit: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let orders: Vec<usize> = g.elements().map(|e| g.element_order(e)).collect();
    let mut s = Search {
        g,
        orders,
        gens: greedy_generators(g),
        img: vec![usize::MAX; n],
        used: vec![false; n],
        dom: Vec::new(),
        found: Vec::new(),
        limit,
    };
    s.img[0] = 0;
    s.used[0] = true;
    s.dom.push(0);
    s.search(0)?;
    let mut perms = s.found;
    perms.sort_unstable();
    Ok(perms)
}

pub fn automorphism_perms(g: &Group) -> Result<Vec<Vec<usize>>> {
    automorphism_perms_limited(g, MAX_AUT_ENUM)
}

/// The automorphism group of `g` with its conjugation morphism.
pub fn automorphism_group(g: &Group) -> Result<AutGroup> {
    let perms = automorphism_perms(g)?;
    let name = format!("Aut({})", g.name());
    let pg = PermGroup::from_perms(&name, g.order(), perms)?;
    let inner_map: Vec<usize> = g
        .elements()
        .map(|x| {
            pg.index_of(&conjugation_perm(g, x))
                .expect("conjugation is an automorphism")
        })
        .collect();
    let inner = Morphism::certify(g, pg.group(), inner_map)?;
    Ok(AutGroup { base_order: g.order(), perm_group: pg, inner })
}

/// Complete means: trivial center and no outer automorphisms.
pub fn is_complete(g: &Group) -> Result<bool> {
    if !is_centerless(g) {
        return Ok(false);
    }
    let perms = automorphism_perms(g)?;
    Ok(perms.len() == g.order())
}
