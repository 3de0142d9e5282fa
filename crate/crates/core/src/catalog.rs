//! Built-in group constructions: cyclic, dihedral, symmetric, alternating,
//! affine groups of cyclic rings, direct products, and one wreath product.
//!
//! Every builder fixes a concrete element indexing so that tables — and
//! therefore every downstream report — are reproducible across runs:
//! - permutation groups list their permutations in lexicographic order;
//! - dihedral groups put the n rotations first, then the n reflections;
//! - affine maps `x -> a*x + b` are indexed `unit_rank(a) * n + b`.
//!
//! Index 0 is always the identity.

use std::collections::BTreeMap;

use crate::aut::{all_perms, compose, perm_parity};
use crate::error::{Error, Result};
use crate::group::{direct_product, Group};

/// Multiplication table of a family of permutations closed under composition,
/// with `table[i][j] = perms[i] ∘ perms[j]`.
fn table_from_perms(perms: &[Vec<usize>]) -> Vec<usize> {
    let index: BTreeMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = perms.len();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let c = compose(&perms[i], &perms[j]);
            table[i * n + j] = index[c.as_slice()];
        }
    }
    table
}

pub fn cyclic_group(n: usize) -> Group {
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = (i + j) % n;
        }
    }
    Group::from_table(format!("C{n}"), n, table).expect("cyclic table is a group")
}

pub fn symmetric_group(n: usize) -> Group {
    let perms = all_perms(n);
    let table = table_from_perms(&perms);
    Group::from_table(format!("S{n}"), perms.len(), table).expect("symmetric table is a group")
}

pub fn alternating_group(n: usize) -> Group {
    let perms: Vec<Vec<usize>> =
        all_perms(n).into_iter().filter(|p| perm_parity(p) == 0).collect();
    let table = table_from_perms(&perms);
    Group::from_table(format!("A{n}"), perms.len(), table).expect("alternating table is a group")
}

/// Dihedral group of order `2n`: rotations `r^i` at indices `0..n`,
/// reflections `s·r^i` at indices `n..2n`.
pub fn dihedral_group(n: usize) -> Group {
    assert!(n >= 3, "dihedral builder expects n >= 3");
    let order = 2 * n;
    let unpack = |x: usize| (x / n, x % n); // (s, i) for s^s r^i
    let mut table = vec![0usize; order * order];
    for x in 0..order {
        let (sa, ia) = unpack(x);
        for y in 0..order {
            let (sb, ib) = unpack(y);
            // s^sa r^ia · s^sb r^ib = s^(sa⊕sb) r^(ib ± ia)
            let i = if sb == 0 { (ia + ib) % n } else { (n + ib - ia) % n };
            table[x * order + y] = (sa ^ sb) * n + i;
        }
    }
    Group::from_table(format!("D{n}"), order, table).expect("dihedral table is a group")
}

/// The affine group of Z/n: all maps `x -> a*x + b` with `a` a unit,
/// indexed `unit_rank(a) * n + b` with units listed in increasing order.
pub fn affine_cyclic_group(n: usize) -> Group {
    let units: Vec<usize> = (1..n).filter(|&a| gcd(a, n) == 1).collect();
    let order = units.len() * n;
    let rank: BTreeMap<usize, usize> = units.iter().enumerate().map(|(r, &a)| (a, r)).collect();
    let mut table = vec![0usize; order * order];
    for (ri, &a1) in units.iter().enumerate() {
        for b1 in 0..n {
            let i = ri * n + b1;
            for (rj, &a2) in units.iter().enumerate() {
                for b2 in 0..n {
                    let j = rj * n + b2;
                    // (f ∘ g)(x) = a1*(a2*x + b2) + b1
                    let a = (a1 * a2) % n;
                    let b = (a1 * b2 + b1) % n;
                    table[i * order + j] = rank[&a] * n + b;
                }
            }
        }
    }
    Group::from_table(format!("AffZ{n}"), order, table).expect("affine table is a group")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `(S3 × S3) ⋊ C2`, the top element swapping the two coordinates.
/// Element `(a, b, t)` sits at index `(a*6 + b)*2 + t`.
pub fn s3_wreath_c2() -> Group {
    let s3 = symmetric_group(3);
    let order = 72;
    let mut table = vec![0usize; order * order];
    for a in 0..6 {
        for b in 0..6 {
            for t in 0..2 {
                let i = (a * 6 + b) * 2 + t;
                for c in 0..6 {
                    for d in 0..6 {
                        for u in 0..2 {
                            let j = (c * 6 + d) * 2 + u;
                            // the twist of the left factor swaps the incoming pair
                            let (c2, d2) = if t == 1 { (d, c) } else { (c, d) };
                            let k = (s3.mul(a, c2) * 6 + s3.mul(b, d2)) * 2 + (t ^ u);
                            table[i * order + j] = k;
                        }
                    }
                }
            }
        }
    }
    Group::from_table("S3wrC2", order, table).expect("wreath table is a group")
}

/// Names of every built-in group, in catalog order.
pub fn names() -> Vec<&'static str> {
    let mut v = vec![
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
        "C2xC2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12",
        "S2", "S3", "S4", "S5", "A3", "A4", "A5",
        "S3xC2", "S3xS3", "S3wrC2",
        "AffZ3", "AffZ5", "AffZ7", "AffZ9", "AffZ15",
    ];
    v.dedup();
    v
}

/// Build a catalog group by name.
pub fn build(name: &str) -> Result<Group> {
    let parse_n = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix).and_then(|s| s.parse().ok())
    };
    let g = match name {
        "C2xC2" => direct_product(&cyclic_group(2), &cyclic_group(2)),
        "S3xC2" => direct_product(&symmetric_group(3), &cyclic_group(2)),
        "S3xS3" => direct_product(&symmetric_group(3), &symmetric_group(3)),
        "S3wrC2" => s3_wreath_c2(),
        _ => {
            if let Some(n) = parse_n("AffZ") {
                if !(3..=15).contains(&n) {
                    return Err(Error::InvalidArgument(format!("no catalog group `{name}`")));
                }
                affine_cyclic_group(n)
            } else if let Some(n) = parse_n("C") {
                if !(1..=12).contains(&n) {
                    return Err(Error::InvalidArgument(format!("no catalog group `{name}`")));
                }
                cyclic_group(n)
            } else if let Some(n) = parse_n("D") {
                if !(3..=12).contains(&n) {
                    return Err(Error::InvalidArgument(format!("no catalog group `{name}`")));
                }
                dihedral_group(n)
            } else if let Some(n) = parse_n("S") {
                if !(2..=5).contains(&n) {
                    return Err(Error::InvalidArgument(format!("no catalog group `{name}`")));
                }
                symmetric_group(n)
            } else if let Some(n) = parse_n("A") {
                if !(3..=5).contains(&n) {
                    return Err(Error::InvalidArgument(format!("no catalog group `{name}`")));
                }
                alternating_group(n)
            } else {
                return Err(Error::InvalidArgument(format!("no catalog group `{name}`")));
            }
        }
    };
    Ok(g)
}
