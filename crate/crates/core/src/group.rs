//! Finite groups as dense multiplication tables, plus the subgroup toolbox
//! everything else builds on.
//!
//! Conventions, used everywhere without further comment:
//! - elements are indices `0..order`, the identity is element `0`;
//! - `table[i][j]` is the product `i * j` (row acts first on the left);
//! - all types are immutable once constructed, all operations are pure.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A finite group given by its full multiplication table.
///
/// Construction always validates the three structural invariants: square
/// table, identity at index 0, associativity, and two-sided inverses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<usize>, // row-major, order * order
    inverse: Vec<usize>,
}

impl Group {
    /// Build a group from a flat row-major table, checking every axiom.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Group> {
        if order == 0 || table.len() != order * order {
            return Err(Error::NotSquare);
        }
        for &v in &table {
            if v >= order {
                return Err(Error::IndexOutOfRange { index: v, order });
            }
        }
        let at = |i: usize, j: usize| table[i * order + j];
        for i in 0..order {
            if at(0, i) != i || at(i, 0) != i {
                return Err(Error::IdentityNotAtZero);
            }
        }
        for i in 0..order {
            for j in 0..order {
                let ij = at(i, j);
                for k in 0..order {
                    if at(ij, k) != at(i, at(j, k)) {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        #[allow(clippy::needless_range_loop)] // i, j are element indices
        for i in 0..order {
            match (0..order).find(|&j| at(i, j) == 0 && at(j, i) == 0) {
                Some(j) => inverse[i] = j,
                None => return Err(Error::MissingInverse(i)),
            }
        }
        Ok(Group { name: name.into(), order, table, inverse })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Product `i * j`.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Conjugate `g * h * g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse[g])
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut o = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            o += 1;
        }
        o
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, order: self.order })
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }
}

/// A validated subgroup: strictly increasing element indices containing 0,
/// closed under the parent's multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &Group, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        for &e in &elements {
            parent.check_index(e)?;
        }
        if elements.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("must contain the identity".into()));
        }
        for &a in &elements {
            for &b in &elements {
                if elements.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed: {a} * {b} escapes"
                    )));
                }
            }
        }
        Ok(Subgroup { parent_order: parent.order(), elements })
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(parent: &Group) -> Subgroup {
        Subgroup { parent_order: parent.order(), elements: parent.elements().collect() }
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Subgroup { parent_order: parent.order(), elements: vec![0] }
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    fn check_parent(&self, parent: &Group) -> Result<()> {
        if self.parent_order != parent.order() {
            return Err(Error::InvalidSubgroup(format!(
                "subgroup of a group of order {}, given order {}",
                self.parent_order,
                parent.order()
            )));
        }
        Ok(())
    }

    pub fn is_normal(&self, parent: &Group) -> Result<bool> {
        self.check_parent(parent)?;
        for g in parent.elements() {
            for &h in &self.elements {
                if !self.contains(parent.conj(g, h)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Re-table the subgroup as a standalone group.
    ///
    /// Returns the new group together with the map from new indices back to
    /// parent indices. New index 0 is the identity because the sorted element
    /// list starts with parent index 0.
    pub fn as_group(&self, parent: &Group, name: impl Into<String>) -> Result<(Group, Vec<usize>)> {
        self.check_parent(parent)?;
        let n = self.elements.len();
        let pos = |g: usize| self.elements.binary_search(&g).expect("closed subgroup");
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = pos(parent.mul(self.elements[i], self.elements[j]));
            }
        }
        let g = Group::from_table(name, n, table)?;
        Ok((g, self.elements.clone()))
    }
}

/// Certification flags computed, never asserted, at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub homomorphism: bool,
    pub injective: bool,
    pub surjective: bool,
}

/// A total map between two groups with computed certification flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    source_order: usize,
    target_order: usize,
    map: Vec<usize>,
    certified: Certification,
}

impl Morphism {
    /// Wrap a total map and certify its properties against the two tables.
    pub fn certify(source: &Group, target: &Group, map: Vec<usize>) -> Result<Morphism> {
        if map.len() != source.order() {
            return Err(Error::InvalidArgument(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        for &v in &map {
            target.check_index(v)?;
        }
        let mut homomorphism = map[0] == 0;
        'hom: for i in source.elements() {
            for j in source.elements() {
                if map[source.mul(i, j)] != target.mul(map[i], map[j]) {
                    homomorphism = false;
                    break 'hom;
                }
            }
        }
        let mut seen = vec![false; target.order()];
        let mut injective = true;
        for &v in &map {
            if seen[v] {
                injective = false;
            }
            seen[v] = true;
        }
        let surjective = seen.iter().all(|&s| s);
        Ok(Morphism {
            source_order: source.order(),
            target_order: target.order(),
            map,
            certified: Certification { homomorphism, injective, surjective },
        })
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn certified(&self) -> Certification {
        self.certified
    }

    /// Image of a subgroup under the map (valid when the map is a certified
    /// homomorphism, so the image is again a subgroup).
    pub fn image_of(&self, target: &Group, sub: &Subgroup) -> Result<Subgroup> {
        let elems: Vec<usize> = sub.elements().iter().map(|&e| self.map[e]).collect();
        Subgroup::new(target, elems)
    }

    #[cfg(test)]
    pub(crate) fn corrupt_for_test(&mut self, i: usize, v: usize) {
        self.map[i] = v;
    }
}

/// Validate an untrusted table against the order cap, then the group axioms.
pub fn validate_group(name: &str, order: usize, table: Vec<usize>) -> Result<Group> {
    let cap = crate::order_cap();
    if order > cap {
        return Err(Error::CapExceeded {
            limit: cap,
            detail: format!("group of order {order}"),
        });
    }
    Group::from_table(name, order, table)
}

/// Closure of a generating set: the smallest subgroup containing `gens`.
pub fn subgroup_generated(g: &Group, gens: &[usize]) -> Result<Subgroup> {
    for &x in gens {
        g.check_index(x)?;
    }
    let mut in_set = vec![false; g.order()];
    in_set[0] = true;
    let mut frontier: Vec<usize> = vec![0];
    for &x in gens {
        if !in_set[x] {
            in_set[x] = true;
            frontier.push(x);
        }
    }
    // in a finite group, closure under multiplication alone suffices
    let mut members = frontier.clone();
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
    Subgroup::new(g, members)
}

/// Elements commuting with everything in `set`.
pub fn centralizer(g: &Group, set: &[usize]) -> Result<Subgroup> {
    for &x in set {
        g.check_index(x)?;
    }
    let elems: Vec<usize> = g
        .elements()
        .filter(|&c| set.iter().all(|&s| g.mul(c, s) == g.mul(s, c)))
        .collect();
    Subgroup::new(g, elems)
}

/// The center: elements commuting with the whole group.
pub fn center(g: &Group) -> Subgroup {
    let all: Vec<usize> = g.elements().collect();
    centralizer(g, &all).expect("indices in range")
}

pub fn is_centerless(g: &Group) -> bool {
    center(g).is_trivial()
}

/// Elements `x` with `x H x⁻¹ = H`.
pub fn normalizer(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    h.check_parent(g)?;
    let elems: Vec<usize> = g
        .elements()
        .filter(|&x| h.elements().iter().all(|&m| h.contains(g.conj(x, m))))
        .collect();
    Subgroup::new(g, elems)
}

/// Direct product with the index convention `(a, b) -> a * |H| + b`.
pub fn direct_product(g: &Group, h: &Group) -> Group {
    let (n, m) = (g.order(), h.order());
    let order = n * m;
    let mut table = vec![0usize; order * order];
    for a1 in 0..n {
        for b1 in 0..m {
            let i = a1 * m + b1;
            for a2 in 0..n {
                for b2 in 0..m {
                    let j = a2 * m + b2;
                    table[i * order + j] = g.mul(a1, a2) * m + h.mul(b1, b2);
                }
            }
        }
    }
    Group::from_table(format!("{}x{}", g.name(), h.name()), order, table)
        .expect("product of valid groups is valid")
}

/// All subgroups of index 2, i.e. kernels of the surjections onto the
/// two-element group. They all contain the subgroup generated by squares and
/// commutators, so they correspond to hyperplanes of the elementary abelian
/// quotient by it.
pub fn index2_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut gens: Vec<usize> = Vec::new();
    for a in g.elements() {
        gens.push(g.mul(a, a));
        for b in g.elements() {
            // commutator a b a⁻¹ b⁻¹
            gens.push(g.mul(g.conj(a, b), g.inv(b)));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let n_sub = subgroup_generated(g, &gens).expect("indices in range");

    // quotient cosets, represented by their minimal element
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps: Vec<usize> = Vec::new();
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            for &m in n_sub.elements() {
                coset_of[g.mul(x, m)] = reps.len();
            }
            reps.push(x);
        }
    }
    let q = reps.len();
    let qmul = |i: usize, j: usize| coset_of[g.mul(reps[i], reps[j])];

    // the quotient is elementary abelian of order 2^r; pick a basis greedily
    let mut basis: Vec<usize> = Vec::new();
    let mut span = vec![false; q];
    span[0] = true;
    let mut span_list = vec![0usize];
    for c in 1..q {
        if !span[c] {
            basis.push(c);
            for i in 0..span_list.len() {
                let s = qmul(span_list[i], c);
                if !span[s] {
                    span[s] = true;
                    span_list.push(s);
                }
            }
        }
    }
    let r = basis.len();
    debug_assert_eq!(q, 1 << r);

    // coordinates of each coset in the basis
    let mut coords = vec![0usize; q];
    for mask in 0..(1usize << r) {
        let mut e = 0usize;
        for (b, &bc) in basis.iter().enumerate() {
            if mask >> b & 1 == 1 {
                e = qmul(e, bc);
            }
        }
        coords[e] = mask;
    }

    let mut subs = Vec::new();
    for lam in 1..(1usize << r) {
        let elems: Vec<usize> = g
            .elements()
            .filter(|&x| (coords[coset_of[x]] & lam).count_ones().is_multiple_of(2))
            .collect();
        subs.push(Subgroup::new(g, elems).expect("character kernel is a subgroup"));
    }
    subs.sort_by(|a, b| a.elements().cmp(b.elements()));
    subs
}

/// Parse the plain-text table format:
/// a header line `cayley <name> <n>` followed by `n` rows of `n` indices.
pub fn read_cayley(text: &str) -> Result<Group> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
    let mut parts = header.split_whitespace();
    match parts.next() {
        Some("cayley") => {}
        _ => return Err(Error::Format("expected `cayley <name> <n>` header".into())),
    }
    let name = parts
        .next()
        .ok_or_else(|| Error::Format("missing group name in header".into()))?;
    let order: usize = parts
        .next()
        .ok_or_else(|| Error::Format("missing order in header".into()))?
        .parse()
        .map_err(|_| Error::Format("order is not a number".into()))?;
    if parts.next().is_some() {
        return Err(Error::Format("trailing tokens in header".into()));
    }
    let mut table = Vec::with_capacity(order * order);
    for i in 0..order {
        let row = lines
            .next()
            .ok_or_else(|| Error::Format(format!("missing row {i}")))?;
        let entries: Vec<usize> = row
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Format(format!("bad entry `{t}` in row {i}"))))
            .collect::<Result<_>>()?;
        if entries.len() != order {
            return Err(Error::Format(format!(
                "row {i} has {} entries, expected {order}",
                entries.len()
            )));
        }
        table.extend(entries);
    }
    if lines.next().is_some() {
        return Err(Error::Format("trailing lines after the table".into()));
    }
    validate_group(name, order, table)
}

/// Serialize in the exact format `read_cayley` parses.
pub fn write_cayley(g: &Group) -> String {
    let mut out = format!("cayley {} {}\n", g.name(), g.order());
    for i in g.elements() {
        let row: Vec<String> = g.elements().map(|j| g.mul(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
