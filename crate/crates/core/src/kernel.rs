//! Kernel oracles and automorphism reconstruction. A two-variable word
//! kernel is represented intensionally as an evaluation test (a word lies
//! in the kernel iff it evaluates to the identity), affiliation searches
//! produce explicit word witnesses, and `verify_reconstruction` rebuilds an
//! automorphism's conjugation action from nothing but kernel membership and
//! checks the seven coherence conditions that make the rebuild well defined.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::aut::automorphism_group;
use crate::error::{Error, Result};
use crate::group::{is_centerless, subgroup_generated, Group};
use crate::special::{are_equivalent, is_special_pair};
use crate::word::{evaluate_word, xv, yv, Token, Var, Word};

/// Letter budget for the bounded single-variable word family used by the
/// kernel-restriction check.
pub const WORD_FAMILY_LEN: usize = 3;

/// Hard size cap on that family, so huge parameter sets stay tractable.
pub const WORD_FAMILY_CAP: usize = 20_000;

/// Membership test for the kernel of the evaluation homomorphism sending
/// `x` (and optionally `y`) to fixed elements and each parameter to itself.
#[derive(Debug, Clone)]
pub struct KernelOracle<'g> {
    group: &'g Group,
    a_set: Vec<usize>,
    x_val: usize,
    y_val: Option<usize>,
}

impl<'g> KernelOracle<'g> {
    pub fn new(
        group: &'g Group,
        a_set: &[usize],
        x_val: usize,
        y_val: Option<usize>,
    ) -> Result<KernelOracle<'g>> {
        let mut a_set = a_set.to_vec();
        a_set.sort_unstable();
        a_set.dedup();
        for &a in &a_set {
            group.check_index(a)?;
        }
        group.check_index(x_val)?;
        if let Some(y) = y_val {
            group.check_index(y)?;
        }
        Ok(KernelOracle { group, a_set, x_val, y_val })
    }

    pub fn group(&self) -> &Group {
        self.group
    }

    pub fn a_set(&self) -> &[usize] {
        &self.a_set
    }

    pub fn x_val(&self) -> usize {
        self.x_val
    }

    pub fn y_val(&self) -> Option<usize> {
        self.y_val
    }

    /// Evaluate the word at the stored assignment.
    pub fn evaluate(&self, w: &Word) -> Result<usize> {
        if w.uses_var(Var::Y) && self.y_val.is_none() {
            return Err(Error::MissingAssignment);
        }
        evaluate_word(self.group, w, self.x_val, self.y_val, &self.a_set)
    }

    /// True iff the word lies in the kernel, i.e. evaluates to the identity.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        Ok(self.evaluate(w)? == 0)
    }

    /// The single-letter words available at this assignment, with their
    /// values: parameters ascending, then x, x⁻¹, y, y⁻¹. The identity
    /// parameter is omitted (its witness is the empty word).
    fn letters(&self) -> Vec<(Word, usize)> {
        let mut out = Vec::new();
        for &a in &self.a_set {
            if a != 0 {
                out.push((Word::from_tokens([Token::Param(a)]), a));
            }
        }
        out.push((Word::from_tokens([xv(1)]), self.x_val));
        out.push((Word::from_tokens([xv(-1)]), self.group.inv(self.x_val)));
        if let Some(y) = self.y_val {
            out.push((Word::from_tokens([yv(1)]), y));
            out.push((Word::from_tokens([yv(-1)]), self.group.inv(y)));
        }
        out
    }

    /// Breadth-first witness table over the subgroup generated by the
    /// assignment: each reachable element is mapped to the first word
    /// (fewest letters appended, letter order as in `letters`) evaluating
    /// to it. Witnesses longer than `bound` letters are not explored.
    fn witness_table(&self, bound: usize) -> BTreeMap<usize, Word> {
        let letters = self.letters();
        let mut table: BTreeMap<usize, Word> = BTreeMap::new();
        table.insert(0, Word::empty());
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        queue.push_back((0, 0));
        while let Some((v, depth)) = queue.pop_front() {
            if depth == bound {
                continue;
            }
            let w = table[&v].clone();
            for (lw, lv) in &letters {
                let next = self.group.mul(v, *lv);
                if let std::collections::btree_map::Entry::Vacant(e) = table.entry(next) {
                    e.insert(w.concat(lw));
                    queue.push_back((next, depth + 1));
                }
            }
        }
        table
    }
}

/// A word witness that `element` lies in the subgroup generated by the
/// oracle's assignment: the witness evaluates to the element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Affiliation {
    pub element: usize,
    pub witness: Word,
    pub bound: usize,
}

/// Search for a witness word of at most `bound` letters evaluating to `g`.
/// Absence (`None`) means no such word exists within the bound; elements
/// outside the generated subgroup are never found at any bound.
pub fn find_affiliation(
    k: &KernelOracle,
    g: usize,
    bound: usize,
) -> Result<Option<Affiliation>> {
    if bound == 0 {
        return Err(Error::InvalidArgument("witness search needs a positive bound".into()));
    }
    k.group().check_index(g)?;
    let table = k.witness_table(bound);
    Ok(table.get(&g).map(|w| Affiliation { element: g, witness: w.clone(), bound }))
}

/// Under a special pair, distinct elements have distinct kernels; kernel
/// equality is decided through the word-closure equivalence test.
pub fn kernel_injectivity(g: &Group, a_set: &[usize]) -> Result<bool> {
    if !is_special_pair(g, a_set)? {
        return Err(Error::NotSpecial);
    }
    for x in g.elements() {
        for y in x + 1..g.order() {
            if are_equivalent(g, a_set, x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Given claimed (element, witness) rows, report every pair whose witness
/// difference lies in the kernel while the elements differ — each such pair
/// breaks the well-definedness of the reconstructed map. Claims are taken
/// at face value; they are exactly what this check is meant to audit.
pub fn check_well_definedness(
    k: &KernelOracle,
    claims: &[(usize, Word)],
) -> Result<Vec<(usize, usize)>> {
    let mut violations = Vec::new();
    for (i, (g1, w1)) in claims.iter().enumerate() {
        for (g2, w2) in claims.iter().skip(i + 1) {
            let diff = w1.concat(&w2.inverse(k.group()));
            if k.contains(&diff)? && g1 != g2 {
                violations.push((*g1, *g2));
            }
        }
    }
    Ok(violations)
}

/// Per-element verdict of the reconstruction harness.
#[derive(Debug, Clone, Serialize)]
pub struct HReport {
    pub h: usize,
    pub conditions: [bool; 7],
    pub domain_size: usize,
    pub agrees_with_conjugation: bool,
}

impl HReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|&c| c) && self.agrees_with_conjugation
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionReport {
    pub group: String,
    pub rho: Vec<usize>,
    pub per_h: Vec<HReport>,
    pub union_total: bool,
    pub union_consistent: bool,
    pub union_matches_rho: bool,
}

impl ReconstructionReport {
    pub fn all_pass(&self) -> bool {
        self.per_h.iter().all(|r| r.all_pass())
            && self.union_total
            && self.union_consistent
            && self.union_matches_rho
    }
}

/// All reduced words of at most `WORD_FAMILY_LEN` letters over the oracle's
/// single-variable letters (parameters and x only), capped in size.
fn single_variable_family(k: &KernelOracle) -> Vec<Word> {
    let letters: Vec<Word> = k
        .letters()
        .into_iter()
        .filter(|(w, _)| !w.uses_var(Var::Y))
        .map(|(w, _)| w)
        .collect();
    let mut family: BTreeSet<Word> = BTreeSet::new();
    family.insert(Word::empty());
    let mut frontier: Vec<Word> = vec![Word::empty()];
    for _ in 0..WORD_FAMILY_LEN {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                if family.len() >= WORD_FAMILY_CAP {
                    return family.into_iter().collect();
                }
                let grown = w.concat(l);
                if family.insert(grown.clone()) {
                    next.push(grown);
                }
            }
        }
        frontier = next;
    }
    family.into_iter().collect()
}

/// Nontrivial kernel members used to exercise normality: full-order powers
/// of each assigned letter.
fn kernel_sample(k: &KernelOracle) -> Vec<Word> {
    let g = k.group();
    let mut out = Vec::new();
    let ord = g.element_order(k.x_val()) as i64;
    out.push(Word::from_tokens([xv(ord)]));
    if let Some(y) = k.y_val() {
        out.push(Word::from_tokens([yv(g.element_order(y) as i64)]));
    }
    for &a in k.a_set() {
        if a != 0 {
            out.push(Word::from_tokens(vec![Token::Param(a); g.element_order(a)]));
        }
    }
    out
}

/// Rebuild the action of the automorphism `rho_perm` on the group from
/// kernel data alone and check the coherence conditions along the way.
///
/// The base group is embedded into its automorphism group via conjugation;
/// for each base element h a two-variable kernel with x ↦ ρ and y ↦ h is
/// materialized, affiliated elements get breadth-first word witnesses, and
/// the seven per-kernel conditions are checked semantically:
///
/// 1. the kernel is closed under conjugation by letters,
/// 2. a single-variable word lies in the x-only kernel iff it lies in the
///    two-variable one,
/// 3. every parameter is affiliated with itself as witness,
/// 4. h is affiliated and y witnesses it,
/// 5. independent witnesses for one element differ by a kernel member,
/// 6. witnesses multiply (the affiliated set is a subgroup),
/// 7. conjugating a witness by x lands on the witness of a unique
///    affiliated element — which defines the rebuilt map.
///
/// The rebuilt partial maps must agree with conjugation by ρ, glue
/// consistently over all h, cover the whole embedded group, and reproduce
/// exactly the action of `rho_perm`.
pub fn verify_reconstruction(
    g: &Group,
    a_set: &[usize],
    rho_perm: &[usize],
) -> Result<ReconstructionReport> {
    if !is_centerless(g) {
        return Err(Error::NotCenterless);
    }
    if !is_special_pair(g, a_set)? {
        return Err(Error::NotSpecial);
    }
    let aut = automorphism_group(g)?;
    let level = aut.group().clone();
    let rho = aut.perms().index_of(rho_perm).ok_or(Error::NotAnAutomorphism)?;
    let emb = aut.inner().clone();

    // parameters must be closed under the word inverses used below, so the
    // parameter set is widened to the subgroup it generates before embedding
    let a_sub = subgroup_generated(g, a_set)?;
    let a_img: Vec<usize> = a_sub.elements().iter().map(|&a| emb.apply(a)).collect();
    let base_img: Vec<usize> = (0..g.order()).map(|i| emb.apply(i)).collect();
    let base_set: BTreeSet<usize> = base_img.iter().copied().collect();

    let y_word = Word::from_tokens([yv(1)]);
    let mut union_map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut union_consistent = true;
    let mut per_h = Vec::with_capacity(g.order());

    for h in g.elements() {
        let h_img = emb.apply(h);
        let k = KernelOracle::new(&level, &a_img, rho, Some(h_img))?;
        let k_single = KernelOracle::new(&level, &a_img, rho, None)?;
        let witnesses = k.witness_table(level.order());
        let domain: BTreeMap<usize, Word> = witnesses
            .iter()
            .filter(|(v, _)| base_set.contains(v))
            .map(|(v, w)| (*v, w.clone()))
            .collect();

        let mut conditions = [true; 7];

        // (1) conjugates of known kernel members stay in the kernel
        for w in kernel_sample(&k) {
            debug_assert!(k.contains(&w)?);
            for (c, _) in k.letters() {
                let conj = c.concat(&w).concat(&c.inverse(&level));
                if !k.contains(&conj)? {
                    conditions[0] = false;
                }
            }
        }

        // (2) the two-variable kernel restricted to single-variable words
        // is the single-variable kernel
        for w in single_variable_family(&k) {
            if k_single.contains(&w)? != k.contains(&w)? {
                conditions[1] = false;
            }
        }

        // (3) parameters are affiliated, each witnessed by itself
        for &a in k.a_set() {
            let expected =
                if a == 0 { Word::empty() } else { Word::from_tokens([Token::Param(a)]) };
            if witnesses.get(&a) != Some(&expected) {
                conditions[2] = false;
            }
        }

        // (4) h is affiliated and y is a valid witness for it
        match domain.get(&h_img) {
            Some(w) => {
                if !k.contains(&w.concat(&y_word.inverse(&level)))? {
                    conditions[3] = false;
                }
            }
            None => conditions[3] = false,
        }

        // (5) an independently produced second witness differs by a kernel
        // member
        let pad = Word::from_tokens([xv(level.element_order(rho) as i64)]);
        for w in domain.values() {
            let alt = w.concat(&pad);
            if !k.contains(&alt.concat(&w.inverse(&level)))? {
                conditions[4] = false;
            }
        }

        // (6) witnesses multiply: the affiliated set is closed and the
        // concatenated witness is equivalent to the product's own
        for (&g1, w1) in &domain {
            for (&g2, w2) in &domain {
                let prod = level.mul(g1, g2);
                match domain.get(&prod) {
                    Some(wp) => {
                        let diff = wp.concat(&w1.concat(w2).inverse(&level));
                        if !k.contains(&diff)? {
                            conditions[5] = false;
                        }
                    }
                    None => conditions[5] = false,
                }
            }
        }

        // (7) conjugating a witness by x is again a witness, of a unique
        // affiliated element; that correspondence is the rebuilt map
        let mut rebuilt: BTreeMap<usize, usize> = BTreeMap::new();
        for (&gv, w) in &domain {
            let moved = Word::from_tokens([xv(1)]).concat(w).concat(&Word::from_tokens([xv(-1)]));
            let mut targets = Vec::new();
            for (&dv, dw) in &domain {
                if k.contains(&dw.concat(&moved.inverse(&level)))? {
                    targets.push(dv);
                }
            }
            if targets.len() == 1 {
                rebuilt.insert(gv, targets[0]);
            } else {
                conditions[6] = false;
            }
        }

        let mut agrees = rebuilt.len() == domain.len();
        for (&gv, &tv) in &rebuilt {
            if level.conj(rho, gv) != tv {
                agrees = false;
            }
            match union_map.get(&gv) {
                Some(&prev) if prev != tv => union_consistent = false,
                _ => {
                    union_map.insert(gv, tv);
                }
            }
        }

        per_h.push(HReport {
            h,
            conditions,
            domain_size: domain.len(),
            agrees_with_conjugation: agrees,
        });
    }

    let union_total = base_img.iter().all(|v| union_map.contains_key(v));
    let union_matches_rho = union_total
        && g.elements().all(|i| union_map.get(&emb.apply(i)) == Some(&emb.apply(rho_perm[i])));

    Ok(ReconstructionReport {
        group: g.name().to_string(),
        rho: rho_perm.to_vec(),
        per_h,
        union_total,
        union_consistent,
        union_matches_rho,
    })
}
