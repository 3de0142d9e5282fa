//! Finite relational structures: automorphism groups of tuple-set
//! relations, the orbit-relation canonicalization (which rebuilds a
//! structure carrying exactly the same automorphism group out of nothing
//! but orbits), and the normalizer-height harness over structure
//! automorphisms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::aut::{all_perms, PermGroup};
use crate::error::{Error, Result};
use crate::group::subgroup_generated;
use crate::tower::normalizer_tower;

/// Universe sizes stay small: the automorphism filter walks all `m!`
/// permutations.
pub const STRUCTURE_CAP: usize = 8;

/// Upper bound on how many candidate tuples an orbit sweep may visit.
pub const ORBIT_TUPLE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    name: String,
    arity: usize,
    tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
        universe: usize,
    ) -> Result<Relation> {
        if arity == 0 {
            return Err(Error::InvalidArgument("relations need positive arity".into()));
        }
        let tuples: BTreeSet<Vec<usize>> = tuples.into_iter().collect();
        for t in &tuples {
            if t.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "tuple {t:?} does not match arity {arity}"
                )));
            }
            for &v in t {
                if v >= universe {
                    return Err(Error::IndexOutOfRange { index: v, order: universe });
                }
            }
        }
        Ok(Relation { name: name.into(), arity, tuples })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<usize>> {
        &self.tuples
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    name: String,
    universe: usize,
    relations: Vec<Relation>,
}

impl Structure {
    pub fn new(name: impl Into<String>, universe: usize, relations: Vec<Relation>) -> Structure {
        Structure { name: name.into(), universe, relations }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// An undirected cycle on `m` points, handy in examples and tests.
    pub fn cycle_graph(m: usize) -> Structure {
        let mut edges = BTreeSet::new();
        for i in 0..m {
            edges.insert(vec![i, (i + 1) % m]);
            edges.insert(vec![(i + 1) % m, i]);
        }
        let rel = Relation { name: "edge".into(), arity: 2, tuples: edges };
        Structure::new(format!("cycle{m}"), m, vec![rel])
    }
}

fn permuted_tuple(p: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&v| p[v]).collect()
}

fn preserves(p: &[usize], r: &Relation) -> bool {
    // a bijection mapping the set into itself maps it onto itself
    r.tuples.iter().all(|t| r.tuples.contains(&permuted_tuple(p, t)))
}

/// All universe permutations preserving every relation.
pub fn structure_aut_group(s: &Structure) -> Result<PermGroup> {
    if s.universe() > STRUCTURE_CAP {
        return Err(Error::CapExceeded {
            limit: STRUCTURE_CAP,
            detail: format!("structure universe of size {}", s.universe()),
        });
    }
    let perms: Vec<Vec<usize>> = all_perms(s.universe())
        .into_iter()
        .filter(|p| s.relations().iter().all(|r| preserves(p, r)))
        .collect();
    PermGroup::from_perms(&format!("Aut({})", s.name()), s.universe(), perms)
}

/// Rebuild a structure out of one relation per automorphism orbit on tuples
/// of length `1..=max_arity`, each named after its lexicographically least
/// member. With `max_arity` equal to the universe size the result has
/// exactly the original automorphism group; smaller arities may admit more.
pub fn orbit_structure(s: &Structure, max_arity: usize) -> Result<Structure> {
    if max_arity > s.universe() {
        return Err(Error::InvalidArgument(format!(
            "arity bound {max_arity} exceeds the universe size {}",
            s.universe()
        )));
    }
    let m = s.universe();
    let mut tuple_count = 0usize;
    for r in 1..=max_arity {
        tuple_count = tuple_count.saturating_add(m.pow(r as u32));
        if tuple_count > ORBIT_TUPLE_BUDGET {
            return Err(Error::CapExceeded {
                limit: ORBIT_TUPLE_BUDGET,
                detail: format!("orbit sweep over {m}^{r} tuples"),
            });
        }
    }
    let aut = structure_aut_group(s)?;
    let mut relations = Vec::new();
    for arity in 1..=max_arity {
        let mut claimed: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut tuple = vec![0usize; arity];
        loop {
            // tuples arrive in lexicographic order, so the first unclaimed
            // member of each orbit is its least representative
            if !claimed.contains(&tuple) {
                let orbit: BTreeSet<Vec<usize>> = (0..aut.order())
                    .map(|i| permuted_tuple(aut.perm(i), &tuple))
                    .collect();
                claimed.extend(orbit.iter().cloned());
                let name = format!(
                    "R{}",
                    tuple.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
                );
                relations.push(Relation { name, arity, tuples: orbit });
            }
            // advance odometer
            let mut pos = arity;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < m {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(Structure::new(format!("orbits({})", s.name()), m, relations))
}

#[derive(Debug, Clone, Serialize)]
pub struct NlgReport {
    pub structure: String,
    pub aut_order: usize,
    pub subgroup_order: usize,
    pub tau: usize,
    pub chain_orders: Vec<usize>,
}

/// Generate a subgroup of the structure's automorphism group from explicit
/// universe permutations and measure its normalizer height.
pub fn nlg_harness(s: &Structure, generators: &[Vec<usize>]) -> Result<NlgReport> {
    let aut = structure_aut_group(s)?;
    let mut gen_indices = Vec::new();
    for p in generators {
        let idx = aut.index_of(p).ok_or(Error::NotAnAutomorphism)?;
        gen_indices.push(idx);
    }
    let h = subgroup_generated(aut.group(), &gen_indices)?;
    let chain = normalizer_tower(aut.group(), &h)?;
    Ok(NlgReport {
        structure: s.name().to_string(),
        aut_order: aut.order(),
        subgroup_order: h.order(),
        tau: chain.tau(),
        chain_orders: chain.level_orders(),
    })
}

/// Parse the plain-text structure format:
/// `structure <name> <m>`, then per relation a header
/// `relation <name> <arity> <count>` followed by `count` tuple lines.
pub fn read_structure(text: &str) -> Result<Structure> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let (name, m) = match parts.as_slice() {
        ["structure", name, m] => (
            name.to_string(),
            m.parse::<usize>().map_err(|_| Error::Format("universe size is not a number".into()))?,
        ),
        _ => return Err(Error::Format("expected `structure <name> <m>` header".into())),
    };
    let mut relations = Vec::new();
    while let Some(line) = lines.next() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (rname, arity, count) = match parts.as_slice() {
            ["relation", rname, arity, count] => (
                rname.to_string(),
                arity.parse::<usize>().map_err(|_| Error::Format("bad arity".into()))?,
                count.parse::<usize>().map_err(|_| Error::Format("bad tuple count".into()))?,
            ),
            _ => return Err(Error::Format(format!("expected relation header, got `{line}`"))),
        };
        let mut tuples = Vec::with_capacity(count);
        for i in 0..count {
            let row = lines
                .next()
                .ok_or_else(|| Error::Format(format!("missing tuple {i} of relation {rname}")))?;
            let t: Vec<usize> = row
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| Error::Format(format!("bad index `{v}`"))))
                .collect::<Result<_>>()?;
            tuples.push(t);
        }
        relations.push(Relation::new(rname, arity, tuples, m)?);
    }
    Ok(Structure::new(name, m, relations))
}

pub fn write_structure(s: &Structure) -> String {
    let mut out = format!("structure {} {}\n", s.name(), s.universe());
    for r in s.relations() {
        out.push_str(&format!("relation {} {} {}\n", r.name(), r.arity(), r.tuples().len()));
        for t in r.tuples() {
            let row: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_structure(m: usize, marked: &[usize]) -> Structure {
        let rel = Relation::new("mark", 1, marked.iter().map(|&v| vec![v]), m).unwrap();
        Structure::new("pointed", m, vec![rel])
    }

    #[test]
    fn bare_universe_has_full_symmetric_group() {
        let s = Structure::new("bare", 3, vec![]);
        let aut = structure_aut_group(&s).unwrap();
        assert_eq!(aut.order(), 6);
    }

    #[test]
    fn four_cycle_has_dihedral_automorphisms() {
        let aut = structure_aut_group(&Structure::cycle_graph(4)).unwrap();
        assert_eq!(aut.order(), 8);
        assert_eq!(aut.degree(), 4);
    }

    #[test]
    fn marked_point_is_stabilized() {
        let aut = structure_aut_group(&point_structure(3, &[0])).unwrap();
        assert_eq!(aut.order(), 2);
    }

    #[test]
    fn oversized_universe_is_refused() {
        let s = Structure::new("big", 9, vec![]);
        assert!(matches!(structure_aut_group(&s), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn orbit_structure_of_bare_universe_is_one_unary_orbit() {
        let s = Structure::new("bare", 4, vec![]);
        let o = orbit_structure(&s, 1).unwrap();
        assert_eq!(o.relations().len(), 1);
        let r = &o.relations()[0];
        assert_eq!(r.arity(), 1);
        assert_eq!(r.tuples().len(), 4);
    }

    #[test]
    fn full_arity_orbit_structure_recovers_the_group_exactly() {
        let s = Structure::cycle_graph(4);
        let original = structure_aut_group(&s).unwrap();
        let o = orbit_structure(&s, 4).unwrap();
        let rebuilt = structure_aut_group(&o).unwrap();
        assert_eq!(original.perms(), rebuilt.perms());
    }

    #[test]
    fn zero_arity_orbit_structure_forgets_everything() {
        let s = Structure::cycle_graph(4);
        let o = orbit_structure(&s, 0).unwrap();
        assert!(o.relations().is_empty());
        assert_eq!(structure_aut_group(&o).unwrap().order(), 24);
    }

    #[test]
    fn orbit_structures_never_shrink_the_group() {
        let s = point_structure(4, &[0, 1]);
        let original = structure_aut_group(&s).unwrap();
        for r in 0..=4 {
            let o = orbit_structure(&s, r).unwrap();
            let rebuilt = structure_aut_group(&o).unwrap();
            for i in 0..original.order() {
                assert!(
                    rebuilt.index_of(original.perm(i)).is_some(),
                    "arity {r} lost {:?}",
                    original.perm(i)
                );
            }
        }
    }

    #[test]
    fn reflection_chain_in_the_square() {
        let s = Structure::cycle_graph(4);
        // the reflection fixing vertices 0 and 2
        let report = nlg_harness(&s, &[vec![0, 3, 2, 1]]).unwrap();
        assert_eq!(report.aut_order, 8);
        assert_eq!(report.subgroup_order, 2);
        assert_eq!(report.chain_orders, vec![2, 4, 8, 8]);
        assert_eq!(report.tau, 2);
    }

    #[test]
    fn whole_group_and_trivial_group_have_height_zero() {
        let s = Structure::cycle_graph(4);
        let aut = structure_aut_group(&s).unwrap();
        let gens: Vec<Vec<usize>> = (0..aut.order()).map(|i| aut.perm(i).to_vec()).collect();
        let report = nlg_harness(&s, &gens).unwrap();
        assert_eq!(report.tau, 0);

        // two marked singletons on three points leave only the identity
        let rigid = Structure::new(
            "rigid",
            3,
            vec![
                Relation::new("p", 1, [vec![0]], 3).unwrap(),
                Relation::new("q", 1, [vec![1]], 3).unwrap(),
            ],
        );
        let report = nlg_harness(&rigid, &[]).unwrap();
        assert_eq!(report.aut_order, 1);
        assert_eq!(report.tau, 0);
    }

    #[test]
    fn non_automorphism_generators_are_rejected() {
        let s = Structure::cycle_graph(4);
        assert!(matches!(
            nlg_harness(&s, &[vec![1, 0, 2, 3]]), // swaps adjacent, breaks edges
            Err(Error::NotAnAutomorphism)
        ));
        assert!(matches!(nlg_harness(&s, &[vec![0, 1]]), Err(Error::NotAnAutomorphism)));
    }

    #[test]
    fn file_round_trip_is_bit_exact() {
        let s = Structure::cycle_graph(4);
        let text = write_structure(&s);
        let back = read_structure(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(write_structure(&back), text);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!(read_structure("").is_err());
        assert!(read_structure("nope x 3").is_err());
        assert!(read_structure("structure s 3\nrelation r 2 1\n0 5\n").is_err()); // out of range
        assert!(read_structure("structure s 3\nrelation r 2 2\n0 1\n").is_err()); // short
        assert!(read_structure("structure s 3\nrelation r 0 0\n").is_err()); // zero arity
    }
}
