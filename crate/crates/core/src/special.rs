//! Quantifier-free-type equivalence over a parameter set, and everything
//! built on it: special pairs, weakly special pairs, the normal-extension
//! lemma, level-wise specialness along a tower, restriction injectivity, and
//! the two-subgroup witness that produces a non-special pair.
//!
//! The relation `x E y` (over parameters A) holds when some isomorphism
//! between `<A, x>` and `<A, y>` fixes A pointwise and sends x to y. That is
//! decided exactly by closing the pair set `{(a,a)} ∪ {(x,y)}` under
//! coordinatewise multiplication: the closure is the graph of such an
//! isomorphism precisely when neither coordinate ever repeats, and a repeat
//! aborts the closure early, so the walk never outgrows the group itself.

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::{
    centralizer, direct_product, index2_subgroups, is_centerless, Group, Morphism, Subgroup,
};
use crate::tower::{automorphism_tower, AutTower, DEFAULT_TOWER_CAP};
use crate::word::{Token, Var, Word};

fn check_params(g: &Group, a_set: &[usize]) -> Result<()> {
    for &a in a_set {
        if a >= g.order() {
            return Err(Error::ParamOutsideA(a));
        }
    }
    Ok(())
}

/// Decide `x E y` over the parameter set.
pub fn are_equivalent(g: &Group, a_set: &[usize], x: usize, y: usize) -> Result<bool> {
    check_params(g, a_set)?;
    g.check_index(x)?;
    g.check_index(y)?;
    let n = g.order();
    let mut right_of = vec![usize::MAX; n]; // left coordinate -> its partner
    let mut left_of = vec![usize::MAX; n];
    let mut members: Vec<(usize, usize)> = Vec::new();
    let mut frontier: Vec<(usize, usize)> = Vec::new();

    // returns false on a coordinate collision
    fn insert(
        u: usize,
        v: usize,
        right_of: &mut [usize],
        left_of: &mut [usize],
        members: &mut Vec<(usize, usize)>,
        frontier: &mut Vec<(usize, usize)>,
    ) -> bool {
        if right_of[u] == v {
            return true; // already present
        }
        if right_of[u] != usize::MAX || left_of[v] != usize::MAX {
            return false;
        }
        right_of[u] = v;
        left_of[v] = u;
        members.push((u, v));
        frontier.push((u, v));
        true
    }

    let mut seeds = vec![(0, 0), (x, y)];
    seeds.extend(a_set.iter().map(|&a| (a, a)));
    for (u, v) in seeds {
        if !insert(u, v, &mut right_of, &mut left_of, &mut members, &mut frontier) {
            return Ok(false);
        }
    }
    while let Some((u, v)) = frontier.pop() {
        let mut i = 0;
        while i < members.len() {
            let (p, q) = members[i];
            for (nu, nv) in [(g.mul(u, p), g.mul(v, q)), (g.mul(p, u), g.mul(q, v))] {
                if !insert(nu, nv, &mut right_of, &mut left_of, &mut members, &mut frontier) {
                    return Ok(false);
                }
            }
            i += 1;
        }
    }
    Ok(true)
}

/// A pair `(G, A)` is special when E collapses to equality.
pub fn is_special_pair(g: &Group, a_set: &[usize]) -> Result<bool> {
    check_params(g, a_set)?;
    for x in g.elements() {
        for y in x + 1..g.order() {
            // an isomorphism preserves element order, so mixed-order pairs
            // can never be related
            if g.element_order(x) != g.element_order(y) {
                continue;
            }
            if are_equivalent(g, a_set, x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The words of length at most `bound` (in letters) over one variable and
/// the parameter set that evaluate to the identity at `x_val`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeFragment {
    pub group_name: String,
    pub x_val: usize,
    pub params: Vec<usize>,
    pub bound: usize,
    pub words: Vec<Word>,
}

/// Abort fragment enumeration past this many visited words.
const FRAGMENT_NODE_CAP: usize = 1_000_000;

pub fn type_fragment(g: &Group, a_set: &[usize], x_val: usize, bound: usize) -> Result<TypeFragment> {
    check_params(g, a_set)?;
    g.check_index(x_val)?;
    if bound == 0 {
        return Err(Error::InvalidArgument("length bound must be positive".into()));
    }
    let mut params: Vec<usize> = a_set.iter().copied().filter(|&a| a != 0).collect();
    params.sort_unstable();
    params.dedup();

    // depth-first over canonical token sequences: variable runs and single
    // nonidentity parameters strictly alternate
    struct Dfs<'a> {
        g: &'a Group,
        params: Vec<usize>,
        x_val: usize,
        bound: usize,
        visited: usize,
        words: Vec<Word>,
    }
    impl Dfs<'_> {
        fn go(&mut self, tokens: &mut Vec<Token>, value: usize, used: usize) -> Result<()> {
            self.visited += 1;
            if self.visited > FRAGMENT_NODE_CAP {
                return Err(Error::CapExceeded {
                    limit: FRAGMENT_NODE_CAP,
                    detail: "fragment enumeration".into(),
                });
            }
            if value == 0 {
                self.words.push(Word::from_tokens(tokens.iter().copied()));
            }
            let left = self.bound - used;
            let last = tokens.last().copied();
            if !matches!(last, Some(Token::Var { .. })) {
                for mag in 1..=left {
                    for sign in [1i64, -1] {
                        let exp = sign * mag as i64;
                        tokens.push(Token::Var { var: Var::X, exp });
                        let v = self.g.mul(value, crate::word::power(self.g, self.x_val, exp));
                        self.go(tokens, v, used + mag)?;
                        tokens.pop();
                    }
                }
            }
            if left >= 1 && !matches!(last, Some(Token::Param(_))) {
                for i in 0..self.params.len() {
                    let a = self.params[i];
                    tokens.push(Token::Param(a));
                    let v = self.g.mul(value, a);
                    self.go(tokens, v, used + 1)?;
                    tokens.pop();
                }
            }
            Ok(())
        }
    }
    let mut dfs = Dfs { g, params: params.clone(), x_val, bound, visited: 0, words: Vec::new() };
    dfs.go(&mut Vec::new(), 0, 0)?;
    let mut words = dfs.words;
    words.sort();
    Ok(TypeFragment { group_name: g.name().to_string(), x_val, params, bound, words })
}

/// `x` and `y` are conjugate by a tower-top element fixing the image of A
/// pointwise. This refines E.
pub fn ek_equivalent(tower: &AutTower, a_set: &[usize], x: usize, y: usize) -> Result<bool> {
    let base = tower.level(0);
    check_params(base, a_set)?;
    base.check_index(x)?;
    base.check_index(y)?;
    let top = tower.top();
    let to_top = tower.map_to_top(0);
    let a_img: Vec<usize> = a_set.iter().map(|&a| to_top[a]).collect();
    for t in top.elements() {
        if a_img.iter().any(|&a| top.conj(t, a) != a) {
            continue;
        }
        if top.conj(t, to_top[x]) == to_top[y] {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Weakly special: the conjugation relation in the tower top, restricted to
/// elements of the base, is already equality.
pub fn is_weakly_special(g: &Group, a_set: &[usize]) -> Result<bool> {
    check_params(g, a_set)?;
    let tower = automorphism_tower(g, DEFAULT_TOWER_CAP)?;
    weakly_special_in_tower(&tower, a_set)
}

pub fn weakly_special_in_tower(tower: &AutTower, a_set: &[usize]) -> Result<bool> {
    let base = tower.level(0);
    check_params(base, a_set)?;
    let top = tower.top();
    let to_top = tower.map_to_top(0);
    let a_img: Vec<usize> = a_set.iter().map(|&a| to_top[a]).collect();
    let base_img = &tower.base_images()[tower.tau()];
    for t in top.elements() {
        if a_img.iter().any(|&a| top.conj(t, a) != a) {
            continue;
        }
        for x in base.elements() {
            let xi = to_top[x];
            let c = top.conj(t, xi);
            if c != xi && base_img.contains(c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hypotheses and conclusion of the normal-extension step: if `G1 ⊴ G2` has
/// trivial centralizer and `(G1, A)` is special, then `(G2, A)` is special.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormalExtensionReport {
    pub normal: bool,
    pub centralizer_trivial: bool,
    pub sub_pair_special: bool,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub implication_ok: bool,
}

pub fn check_mylemma(g2: &Group, g1: &Subgroup, a_set: &[usize]) -> Result<NormalExtensionReport> {
    check_params(g2, a_set)?;
    for &a in a_set {
        if !g1.contains(a) {
            return Err(Error::InvalidArgument(format!(
                "parameter {a} lies outside the subgroup"
            )));
        }
    }
    let normal = g1.is_normal(g2)?;
    let centralizer_trivial = centralizer(g2, g1.elements())?.is_trivial();
    let (h, back) = g1.as_group(g2, "sub")?;
    let a_in_h: Vec<usize> = a_set
        .iter()
        .map(|&a| back.binary_search(&a).expect("parameter inside the subgroup"))
        .collect();
    let sub_pair_special = is_special_pair(&h, &a_in_h)?;
    let hypotheses_hold = normal && centralizer_trivial && sub_pair_special;
    let conclusion_holds = is_special_pair(g2, a_set)?;
    Ok(NormalExtensionReport {
        normal,
        centralizer_trivial,
        sub_pair_special,
        hypotheses_hold,
        conclusion_holds,
        implication_ok: !hypotheses_hold || conclusion_holds,
    })
}

/// At every tower level, an automorphism of the level must be pinned down by
/// what it does to the image of A. Requires the image's centralizer to be
/// trivial at each level.
pub fn restriction_injectivity(tower: &AutTower, a_set: &[usize]) -> Result<bool> {
    let base = tower.level(0);
    check_params(base, a_set)?;
    for alpha in 0..=tower.tau() {
        let map = tower.map_from_base(alpha);
        let a_img: Vec<usize> = a_set.iter().map(|&a| map[a]).collect();
        let level = tower.level(alpha);
        if !centralizer(level, &a_img)?.is_trivial() {
            return Err(Error::CentralizerNontrivial(alpha));
        }
        if alpha < tower.tau() {
            // the next level acts on this one; look for a nonidentity
            // automorphism fixing the A-image pointwise
            let action = &tower.actions()[alpha];
            for t in 1..action.order() {
                if a_img.iter().all(|&a| action.act(t, a) == a) {
                    return Ok(false);
                }
            }
        } else {
            // the top level is complete, so its automorphisms are its own
            // conjugations
            for t in level.elements().skip(1) {
                if a_img.iter().all(|&a| level.conj(t, a) == a) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelSpecial {
    pub level: usize,
    pub order: usize,
    pub special: bool,
    pub centralizer_trivial: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialIndReport {
    pub name: String,
    pub levels: Vec<LevelSpecial>,
    pub all_pass: bool,
}

/// Specialness of `(G^0, A)` must propagate to `(G^a, image of A)` at every
/// level, with the image's centralizer trivial throughout.
pub fn check_special_ind(tower: &AutTower, a_set: &[usize]) -> Result<SpecialIndReport> {
    let base = tower.level(0);
    check_params(base, a_set)?;
    if !is_special_pair(base, a_set)? {
        return Err(Error::BaseNotSpecial);
    }
    let mut levels = Vec::new();
    for alpha in 0..=tower.tau() {
        let map = tower.map_from_base(alpha);
        let a_img: Vec<usize> = a_set.iter().map(|&a| map[a]).collect();
        let level = tower.level(alpha);
        levels.push(LevelSpecial {
            level: alpha,
            order: level.order(),
            special: is_special_pair(level, &a_img)?,
            centralizer_trivial: centralizer(level, &a_img)?.is_trivial(),
        });
    }
    let all_pass = levels.iter().all(|l| l.special && l.centralizer_trivial);
    Ok(SpecialIndReport { name: base.name().to_string(), levels, all_pass })
}

/// The witness that a pair can fail to be special: two automorphisms of an
/// extended group that are E-equivalent over the inner image yet distinct.
#[derive(Debug, Clone, Serialize)]
pub struct NonSpecialWitness {
    pub base: String,
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
    pub extended_order: usize,
    pub central_involution: usize,
    pub ambient_order: usize,
    pub inner_order: usize,
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub x1_index: usize,
    pub x2_index: usize,
    pub x1_is_automorphism: bool,
    pub x2_is_automorphism: bool,
    pub distinct: bool,
    pub x1_inner: bool,
    pub x2_inner: bool,
    pub equivalent_over_inner: bool,
    pub witnesses_nonspecial: bool,
}

fn subgroup_is_centerless(g: &Group, h: &Subgroup) -> Result<bool> {
    let c = centralizer(g, h.elements())?;
    Ok(h.elements().iter().all(|&e| e == 0 || !c.contains(e)))
}

/// Extend `G` by a central involution and toggle by it across each index-2
/// subgroup; the two resulting automorphisms are distinct, outer, and
/// E-equivalent over the inner image.
pub fn build_example4(g: &Group, h1: &Subgroup, h2: &Subgroup) -> Result<NonSpecialWitness> {
    if !is_centerless(g) {
        return Err(Error::HypothesesFail("base group has nontrivial center".into()));
    }
    for (h, tag) in [(h1, "first"), (h2, "second")] {
        if h.parent_order() != g.order() {
            return Err(Error::HypothesesFail(format!(
                "{tag} subgroup does not live in the base group"
            )));
        }
        if h.order() * 2 != g.order() {
            return Err(Error::HypothesesFail(format!("{tag} subgroup is not of index 2")));
        }
        if !subgroup_is_centerless(g, h)? {
            return Err(Error::HypothesesFail(format!("{tag} subgroup has nontrivial center")));
        }
    }
    if h1 == h2 {
        return Err(Error::HypothesesFail("the two subgroups coincide".into()));
    }

    // G' = G x C2 with elements (g, b) -> 2g + b; the involution is (e, 1)
    let g2 = direct_product(g, &catalog::cyclic_group(2));
    let a = 1usize;
    let toggle_map = |h: &Subgroup| -> Vec<usize> {
        g2.elements()
            .map(|e| if h.contains(e / 2) { e } else { g2.mul(a, e) })
            .collect()
    };
    let x1 = toggle_map(h1);
    let x2 = toggle_map(h2);
    let m1 = Morphism::certify(&g2, &g2, x1.clone())?;
    let m2 = Morphism::certify(&g2, &g2, x2.clone())?;
    let auto_flags = |m: &Morphism| {
        let c = m.certified();
        c.homomorphism && c.injective && c.surjective
    };

    let aut = crate::aut::automorphism_group(&g2)?;
    let locate = |p: &[usize]| {
        aut.perms()
            .index_of(p)
            .ok_or_else(|| Error::HypothesesFail("toggle map is not an automorphism".into()))
    };
    let x1_index = locate(&x1)?;
    let x2_index = locate(&x2)?;
    let inner = aut.inner_image();
    let x1_inner = inner.binary_search(&x1_index).is_ok();
    let x2_inner = inner.binary_search(&x2_index).is_ok();
    let equivalent_over_inner = are_equivalent(aut.group(), &inner, x1_index, x2_index)?;

    let x1_is_automorphism = auto_flags(&m1);
    let x2_is_automorphism = auto_flags(&m2);
    let distinct = x1 != x2;
    let witnesses_nonspecial = x1_is_automorphism
        && x2_is_automorphism
        && distinct
        && !x1_inner
        && !x2_inner
        && equivalent_over_inner;
    Ok(NonSpecialWitness {
        base: g.name().to_string(),
        h1: h1.elements().to_vec(),
        h2: h2.elements().to_vec(),
        extended_order: g2.order(),
        central_involution: a,
        ambient_order: aut.order(),
        inner_order: inner.len(),
        x1,
        x2,
        x1_index,
        x2_index,
        x1_is_automorphism,
        x2_is_automorphism,
        distinct,
        x1_inner,
        x2_inner,
        equivalent_over_inner,
        witnesses_nonspecial,
    })
}

/// Pick the first two centerless index-2 subgroups of `g` and build the
/// witness from them.
pub fn build_example4_auto(g: &Group) -> Result<NonSpecialWitness> {
    let subs = index2_subgroups(g);
    let mut centerless: Vec<&Subgroup> = Vec::new();
    for h in &subs {
        if subgroup_is_centerless(g, h)? {
            centerless.push(h);
        }
    }
    if centerless.len() < 2 {
        return Err(Error::HypothesesFail(format!(
            "need two distinct centerless index-2 subgroups, found {}",
            centerless.len()
        )));
    }
    build_example4(g, centerless[0], centerless[1])
}

/// Walk the catalog for a group admitting the witness construction.
pub fn example4_search(max_order: usize) -> Result<Option<NonSpecialWitness>> {
    for name in catalog::names() {
        let g = catalog::build(name)?;
        if g.order() < 2 || g.order() > max_order || !is_centerless(&g) {
            continue;
        }
        match build_example4_auto(&g) {
            Ok(w) => return Ok(Some(w)),
            Err(Error::HypothesesFail(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::automorphism_group;
    use crate::word::xv;

    #[test]
    fn equivalence_is_reflexive() {
        let g = catalog::build("S3").unwrap();
        for x in g.elements() {
            assert!(are_equivalent(&g, &[0, 1], x, x).unwrap());
        }
    }

    #[test]
    fn cyclic_three_generators_are_equivalent_over_nothing() {
        let g = catalog::build("C3").unwrap();
        assert!(are_equivalent(&g, &[0], 1, 2).unwrap());
        assert!(!is_special_pair(&g, &[0]).unwrap());
    }

    #[test]
    fn full_parameter_set_separates_everything() {
        let g = catalog::build("S3").unwrap();
        let all: Vec<usize> = g.elements().collect();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(are_equivalent(&g, &all, x, y).unwrap(), x == y);
            }
        }
        assert!(is_special_pair(&g, &all).unwrap());
    }

    #[test]
    fn equivalence_is_symmetric_and_transitive_on_d4() {
        let g = catalog::build("D4").unwrap();
        let n = g.order();
        for a1 in 0..n {
            let a_set = [a1];
            let mut related = vec![vec![false; n]; n];
            #[allow(clippy::needless_range_loop)] // x, y are element indices
            for x in 0..n {
                for y in 0..n {
                    related[x][y] = are_equivalent(&g, &a_set, x, y).unwrap();
                }
            }
            for x in 0..n {
                assert!(related[x][x]);
                for y in 0..n {
                    assert_eq!(related[x][y], related[y][x], "symmetry at {a1} {x} {y}");
                    for z in 0..n {
                        if related[x][y] && related[y][z] {
                            assert!(related[x][z], "transitivity at {a1} {x} {y} {z}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn aut_group_over_inner_image_is_special() {
        let g = catalog::build("D5").unwrap();
        let aut = automorphism_group(&g).unwrap();
        let inner = aut.inner_image();
        assert_eq!(inner.len(), 10);
        assert!(is_special_pair(aut.group(), &inner).unwrap());
    }

    #[test]
    fn fragment_of_cyclic_generator_contains_the_order_relation() {
        let g = catalog::build("C3").unwrap();
        let f = type_fragment(&g, &[0], 1, 3).unwrap();
        assert!(f.words.contains(&Word::from_tokens([xv(3)])));
        assert!(f.words.contains(&Word::from_tokens([xv(-3)])));
        // empty word, x^3, x^-3
        assert_eq!(f.words.len(), 3);
    }

    #[test]
    fn fragment_of_identity_contains_bare_x() {
        let g = catalog::build("S3").unwrap();
        let f = type_fragment(&g, &[0, 1], 0, 1).unwrap();
        assert!(f.words.contains(&Word::from_tokens([xv(1)])));
    }

    #[test]
    fn fragments_match_equivalence_for_three_cycles() {
        let g = catalog::build("S3").unwrap();
        // two rotations are equivalent over the empty parameter set
        assert!(are_equivalent(&g, &[], 3, 4).unwrap());
        for bound in 1..=6 {
            let f3 = type_fragment(&g, &[], 3, bound).unwrap();
            let f4 = type_fragment(&g, &[], 4, bound).unwrap();
            assert_eq!(f3.words, f4.words, "bound {bound}");
        }
        // a transposition and a rotation separate at length 2 already
        assert!(!are_equivalent(&g, &[], 1, 3).unwrap());
        let f1 = type_fragment(&g, &[], 1, 2).unwrap();
        let f3 = type_fragment(&g, &[], 3, 2).unwrap();
        assert_ne!(f1.words, f3.words);
    }

    #[test]
    fn weakly_special_follows_specialness_and_fails_without_parameters() {
        let g = catalog::build("S3").unwrap();
        let all: Vec<usize> = g.elements().collect();
        assert!(is_weakly_special(&g, &all).unwrap());

        let d5 = catalog::build("D5").unwrap();
        let d5_all: Vec<usize> = d5.elements().collect();
        assert!(is_weakly_special(&d5, &d5_all).unwrap());
        assert!(!is_weakly_special(&d5, &[0]).unwrap());
    }

    #[test]
    fn conjugation_relation_refines_equivalence_on_d5() {
        let d5 = catalog::build("D5").unwrap();
        let tower = automorphism_tower(&d5, 10).unwrap();
        for a_set in [vec![0], vec![0, 5], vec![0, 1, 5]] {
            for x in d5.elements() {
                for y in d5.elements() {
                    if ek_equivalent(&tower, &a_set, x, y).unwrap() {
                        assert!(
                            are_equivalent(&d5, &a_set, x, y).unwrap(),
                            "A={a_set:?} x={x} y={y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn normal_extension_report_on_dihedral_aut() {
        let d5 = catalog::build("D5").unwrap();
        let aut = automorphism_group(&d5).unwrap();
        let inner = Subgroup::new(aut.group(), aut.inner_image()).unwrap();
        let a_set = inner.elements().to_vec();
        let r = check_mylemma(aut.group(), &inner, &a_set).unwrap();
        assert!(r.normal && r.centralizer_trivial && r.sub_pair_special);
        assert!(r.hypotheses_hold);
        assert!(r.conclusion_holds);
        assert!(r.implication_ok);
    }

    #[test]
    fn normal_extension_vacuous_for_abelian_group() {
        let g = catalog::build("C3").unwrap();
        let whole = Subgroup::whole(&g);
        let r = check_mylemma(&g, &whole, &[0]).unwrap();
        assert!(!r.centralizer_trivial);
        assert!(!r.hypotheses_hold);
        assert!(r.implication_ok);
    }

    #[test]
    fn restriction_injectivity_examples() {
        let s3 = catalog::build("S3").unwrap();
        let t = automorphism_tower(&s3, 10).unwrap();
        let all: Vec<usize> = s3.elements().collect();
        assert!(restriction_injectivity(&t, &all).unwrap());

        let d5 = catalog::build("D5").unwrap();
        let t = automorphism_tower(&d5, 10).unwrap();
        // two distinct reflections generate and have trivial centralizer
        assert!(restriction_injectivity(&t, &[5, 6]).unwrap());
        assert!(matches!(
            restriction_injectivity(&t, &[0]),
            Err(Error::CentralizerNontrivial(0))
        ));
    }

    #[test]
    fn specialness_propagates_up_the_dihedral_tower() {
        let d5 = catalog::build("D5").unwrap();
        let t = automorphism_tower(&d5, 10).unwrap();
        let all: Vec<usize> = d5.elements().collect();
        let report = check_special_ind(&t, &all).unwrap();
        assert!(report.all_pass, "{report:?}");
        assert_eq!(report.levels.len(), 2);

        assert!(matches!(check_special_ind(&t, &[0]), Err(Error::BaseNotSpecial)));
    }

    #[test]
    fn witness_construction_rejects_bad_hypotheses() {
        let s3 = catalog::build("S3").unwrap();
        assert!(matches!(build_example4_auto(&s3), Err(Error::HypothesesFail(_))));

        let w = catalog::build("S3wrC2").unwrap();
        let subs = index2_subgroups(&w);
        assert_eq!(subs.len(), 3);
        assert!(matches!(
            build_example4(&w, &subs[0], &subs[0]),
            Err(Error::HypothesesFail(msg)) if msg.contains("coincide")
        ));

        let c6 = catalog::build("C6").unwrap();
        assert!(matches!(build_example4_auto(&c6), Err(Error::HypothesesFail(_))));
    }
}
