//! Iterated automorphism groups and iterated normalizers.
//!
//! A tower starts from a centerless group, replaces it with its automorphism
//! group, and repeats until a complete level is reached. Each level is
//! re-indexed from scratch; the conjugation morphism into the next level is
//! the only bridge between adjacent levels, and composing those bridges is
//! the only way to talk about a low level inside a high one.

use serde::Serialize;

use crate::aut::{automorphism_group, PermGroup};
use crate::error::{Error, Result};
use crate::group::{centralizer, is_centerless, normalizer, Group, Morphism, Subgroup};

/// Every tower seen at desk scale stabilizes within three steps; ten is the
/// safety valve against a runaway construction.
pub const DEFAULT_TOWER_CAP: usize = 10;

/// The full automorphism tower of a centerless group.
#[derive(Debug, Clone)]
pub struct AutTower {
    levels: Vec<Group>,
    /// `actions[a]` realizes level `a+1` as permutations of level `a`.
    actions: Vec<PermGroup>,
    /// `embeddings[a]` is the conjugation morphism from level `a` into level `a+1`.
    embeddings: Vec<Morphism>,
    /// Image of the base group inside each level.
    base_images: Vec<Subgroup>,
    tau: usize,
}

impl AutTower {
    pub fn levels(&self) -> &[Group] {
        &self.levels
    }

    pub fn level(&self, a: usize) -> &Group {
        &self.levels[a]
    }

    pub fn top(&self) -> &Group {
        self.levels.last().expect("at least one level")
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn actions(&self) -> &[PermGroup] {
        &self.actions
    }

    pub fn embeddings(&self) -> &[Morphism] {
        &self.embeddings
    }

    pub fn base_images(&self) -> &[Subgroup] {
        &self.base_images
    }

    pub fn level_orders(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.order()).collect()
    }

    /// The composed map from level `a` into the top level.
    pub fn map_to_top(&self, a: usize) -> Vec<usize> {
        let mut map: Vec<usize> = self.levels[a].elements().collect();
        for emb in &self.embeddings[a..] {
            map = map.iter().map(|&x| emb.apply(x)).collect();
        }
        map
    }

    /// The composed map from the base group into level `a`.
    pub fn map_from_base(&self, a: usize) -> Vec<usize> {
        let mut map: Vec<usize> = self.levels[0].elements().collect();
        for emb in &self.embeddings[..a] {
            map = map.iter().map(|&x| emb.apply(x)).collect();
        }
        map
    }

    #[cfg(test)]
    pub(crate) fn corrupt_embedding_for_test(&mut self, which: usize, i: usize, v: usize) {
        self.embeddings[which].corrupt_for_test(i, v);
    }
}

/// Build the automorphism tower, stopping at the first complete level.
///
/// `cap` bounds the stabilization index itself; the ambient element cap
/// bounds the order of any level.
pub fn automorphism_tower(g: &Group, cap: usize) -> Result<AutTower> {
    if cap == 0 {
        return Err(Error::InvalidArgument("tower cap must be positive".into()));
    }
    if !is_centerless(g) {
        return Err(Error::NotCenterless);
    }
    let base_name = g.name().to_string();
    let mut levels = vec![g.clone()];
    let mut actions: Vec<PermGroup> = Vec::new();
    let mut embeddings: Vec<Morphism> = Vec::new();
    let mut base_images = vec![Subgroup::whole(g)];
    loop {
        let current = levels.last().expect("nonempty");
        let aut = automorphism_group(current)?;
        if aut.order() == current.order() {
            // the inner morphism is injective (centerless level), so equal
            // orders mean every automorphism is inner: the level is complete
            break;
        }
        if levels.len() == cap {
            return Err(Error::CapExceeded {
                limit: cap,
                detail: format!("tower of {base_name} not stable after {cap} levels"),
            });
        }
        let order_cap = crate::order_cap();
        if aut.order() > order_cap {
            return Err(Error::CapExceeded {
                limit: order_cap,
                detail: format!(
                    "tower level {} of {base_name} has order {}",
                    levels.len(),
                    aut.order()
                ),
            });
        }
        let next = aut
            .group()
            .clone()
            .with_name(format!("{base_name}^{}", levels.len()));
        assert!(is_centerless(&next), "automorphism group of a centerless level is centerless");
        let emb = aut.inner().clone();
        let cert = emb.certified();
        assert!(
            cert.homomorphism && cert.injective,
            "conjugation into the automorphism group must embed a centerless level"
        );
        let img = emb.image_of(&next, base_images.last().expect("nonempty"))?;
        base_images.push(img);
        embeddings.push(emb);
        let (_, perm_group) = aut.into_parts();
        actions.push(perm_group);
        levels.push(next);
    }
    Ok(AutTower { tau: levels.len() - 1, levels, actions, embeddings, base_images })
}

/// The iterated-normalizer chain of a subgroup, recorded up to and including
/// the first repeated level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormChain {
    group: Group,
    levels: Vec<Subgroup>,
    tau: usize,
}

impl NormChain {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn levels(&self) -> &[Subgroup] {
        &self.levels
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn level_orders(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.order()).collect()
    }
}

/// Iterate `H -> normalizer(H)` until it stops moving. Strict growth at every
/// step before the fixed point makes termination immediate.
pub fn normalizer_tower(g: &Group, h: &Subgroup) -> Result<NormChain> {
    let mut levels = vec![h.clone()];
    loop {
        let current = levels.last().expect("nonempty");
        let next = normalizer(g, current)?;
        let stable = &next == current;
        levels.push(next);
        if stable {
            break;
        }
    }
    Ok(NormChain { group: g.clone(), tau: levels.len() - 2, levels })
}

/// Rank of each ambient element against a chain: `rank[g] = a` when `g`
/// enters the chain exactly at step `a+1`, and 0 when `g` sits in the base
/// level or outside the whole chain.
pub fn tower_rank(chain: &NormChain) -> Vec<usize> {
    let mut rank = vec![0usize; chain.group().order()];
    for g in chain.group().elements() {
        for a in 0..chain.levels().len() - 1 {
            if chain.levels()[a + 1].contains(g) && !chain.levels()[a].contains(g) {
                rank[g] = a;
                break;
            }
        }
    }
    rank
}

/// The set of attained ranks must be exactly `{0, …, tau−1}`, plus 0 which is
/// always attained as the default.
pub fn rank_image_is_exact(chain: &NormChain, rank: &[usize]) -> bool {
    let mut attained = vec![false; chain.levels().len()];
    for &r in rank {
        attained[r] = true;
    }
    let tau = chain.tau();
    attained[0]
        && (0..tau).all(|a| attained[a])
        && attained.iter().skip(tau.max(1)).all(|&x| !x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TowerIdentities {
    /// Centralizer of the base image in the top level is trivial.
    pub centralizer_trivial: bool,
    /// Normalizing the image of level `b` inside the top level gives exactly
    /// the image of level `b+1`, and iterating the normalizer from the base
    /// image walks through the level images one at a time.
    pub normalizer_step: bool,
    /// The rank function of the recovered chain attains exactly
    /// `{0, …, tau−1} ∪ {0}`, and the recovered tau equals the tower's.
    pub rank_surjective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub name: String,
    pub tau: usize,
    pub level_orders: Vec<usize>,
    pub identities: TowerIdentities,
}

impl TowerReport {
    pub fn all_pass(&self) -> bool {
        self.identities.centralizer_trivial
            && self.identities.normalizer_step
            && self.identities.rank_surjective
    }
}

/// Check, inside the top level, the identities tying the two towers together.
/// Level images are recomputed from the embeddings so that a defective
/// embedding shows up as a failed identity rather than being masked.
pub fn check_norm_tower_identities(tower: &AutTower) -> TowerReport {
    let top = tower.top();
    let tau = tower.tau();

    // image of each level inside the top level, as a plain element set
    let image_sets: Vec<Vec<usize>> = (0..=tau)
        .map(|a| {
            let mut v = tower.map_to_top(a);
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let image_subgroups: Vec<Option<Subgroup>> = image_sets
        .iter()
        .map(|s| Subgroup::new(top, s.clone()).ok())
        .collect();

    let centralizer_trivial = centralizer(top, &image_sets[0])
        .map(|c| c.is_trivial())
        .unwrap_or(false);

    let mut normalizer_step = true;
    for b in 0..tau {
        let ok = match (&image_subgroups[b], &image_subgroups[b + 1]) {
            (Some(sub), Some(expected)) => {
                normalizer(top, sub).map(|n| &n == expected).unwrap_or(false)
            }
            _ => false,
        };
        if !ok {
            normalizer_step = false;
        }
    }
    let mut rank_surjective = false;
    if let Some(base_sub) = &image_subgroups[0] {
        if let Ok(chain) = normalizer_tower(top, base_sub) {
            // the recovered chain must walk exactly through the level images
            for (a, sub) in image_subgroups.iter().enumerate() {
                let matches = chain.levels().get(a).map(|l| Some(l) == sub.as_ref());
                if matches != Some(true) {
                    normalizer_step = false;
                }
            }
            let rank = tower_rank(&chain);
            rank_surjective = chain.tau() == tau && rank_image_is_exact(&chain, &rank);
        } else {
            normalizer_step = false;
        }
    } else {
        normalizer_step = false;
    }

    TowerReport {
        name: tower.level(0).name().to_string(),
        tau,
        level_orders: tower.level_orders(),
        identities: TowerIdentities { centralizer_trivial, normalizer_step, rank_surjective },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::subgroup_generated;

    #[test]
    fn complete_group_is_its_own_tower() {
        let t = automorphism_tower(&catalog::build("S3").unwrap(), 10).unwrap();
        assert_eq!(t.tau(), 0);
        assert_eq!(t.level_orders(), vec![6]);
        assert!(t.embeddings().is_empty());
    }

    #[test]
    fn dihedral_five_stabilizes_in_one_step() {
        let t = automorphism_tower(&catalog::build("D5").unwrap(), 10).unwrap();
        assert_eq!(t.tau(), 1);
        assert_eq!(t.level_orders(), vec![10, 20]);
        assert_eq!(t.base_images()[1].order(), 10);
    }

    #[test]
    fn alternating_groups_stabilize_in_one_step() {
        for (name, orders) in [("A4", vec![12, 24]), ("A5", vec![60, 120])] {
            let t = automorphism_tower(&catalog::build(name).unwrap(), 10).unwrap();
            assert_eq!(t.tau(), 1, "{name}");
            assert_eq!(t.level_orders(), orders, "{name}");
        }
    }

    #[test]
    fn s3_squared_needs_two_steps() {
        let t = automorphism_tower(&catalog::build("S3xS3").unwrap(), 10).unwrap();
        assert_eq!(t.tau(), 2);
        assert_eq!(t.level_orders(), vec![36, 72, 144]);
    }

    #[test]
    fn abelian_groups_are_rejected() {
        assert!(matches!(
            automorphism_tower(&catalog::build("C3").unwrap(), 10),
            Err(Error::NotCenterless)
        ));
    }

    #[test]
    fn cap_of_one_rejects_any_growing_tower() {
        assert!(matches!(
            automorphism_tower(&catalog::build("D5").unwrap(), 1),
            Err(Error::CapExceeded { limit: 1, .. })
        ));
    }

    #[test]
    fn transposition_chain_in_s4() {
        let g = catalog::build("S4").unwrap();
        let h = subgroup_generated(&g, &[6]).unwrap();
        let chain = normalizer_tower(&g, &h).unwrap();
        assert_eq!(chain.level_orders(), vec![2, 4, 8, 8]);
        assert_eq!(chain.tau(), 2);

        let rank = tower_rank(&chain);
        assert!(rank_image_is_exact(&chain, &rank));
        let attained: std::collections::BTreeSet<usize> = rank.iter().copied().collect();
        assert_eq!(attained.into_iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn rotation_chain_in_s3() {
        let g = catalog::build("S3").unwrap();
        let h = subgroup_generated(&g, &[3]).unwrap();
        let chain = normalizer_tower(&g, &h).unwrap();
        assert_eq!(chain.level_orders(), vec![3, 6, 6]);
        assert_eq!(chain.tau(), 1);
        let rank = tower_rank(&chain);
        assert_eq!(rank, vec![0; 6]);
        assert!(rank_image_is_exact(&chain, &rank));
    }

    #[test]
    fn whole_group_chain_is_immediately_stable() {
        let g = catalog::build("S4").unwrap();
        let chain = normalizer_tower(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(chain.tau(), 0);
        assert_eq!(chain.level_orders(), vec![24, 24]);
    }

    #[test]
    fn identities_pass_for_single_level_tower() {
        let t = automorphism_tower(&catalog::build("S3").unwrap(), 10).unwrap();
        let report = check_norm_tower_identities(&t);
        assert!(report.all_pass());
        assert_eq!(report.tau, 0);
    }

    #[test]
    fn identities_pass_for_dihedral_tower() {
        let t = automorphism_tower(&catalog::build("D5").unwrap(), 10).unwrap();
        let report = check_norm_tower_identities(&t);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn identities_pass_for_two_step_tower() {
        let t = automorphism_tower(&catalog::build("S3xS3").unwrap(), 10).unwrap();
        let report = check_norm_tower_identities(&t);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn corrupted_embedding_fails_the_normalizer_identity() {
        let mut t = automorphism_tower(&catalog::build("D5").unwrap(), 10).unwrap();
        let clean = check_norm_tower_identities(&t);
        assert!(clean.identities.normalizer_step);
        // redirect one base element onto the identity: the base image stops
        // being a subgroup, let alone the right one
        t.corrupt_embedding_for_test(0, 3, 0);
        let report = check_norm_tower_identities(&t);
        assert!(!report.identities.normalizer_step);
    }

    #[test]
    fn report_serializes_with_stable_keys() {
        let t = automorphism_tower(&catalog::build("D5").unwrap(), 10).unwrap();
        let report = check_norm_tower_identities(&t);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["name"], "D5");
        assert_eq!(json["tau"], 1);
        assert_eq!(json["level_orders"], serde_json::json!([10, 20]));
        assert_eq!(json["identities"]["centralizer_trivial"], true);
        assert_eq!(json["identities"]["normalizer_step"], true);
        assert_eq!(json["identities"]["rank_surjective"], true);
    }
}
