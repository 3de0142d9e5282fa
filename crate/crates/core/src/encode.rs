//! Invertible coding gadgets: Cantor pairing, length-prefixed sequence
//! codes, word codes over a two-marker alphabet, and product set codes.
//!
//! Everything runs in `u128`. Iterated pairing roughly doubles the bit width
//! per nesting level, so sequence codes are for *short* sequences (length 5
//! over small entries is fine, length 7 is not); out-of-width inputs panic
//! via checked arithmetic rather than wrapping silently.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Token, Var, Word};

/// Cantor pairing `(x+y)(x+y+1)/2 + y`.
pub fn pair_code(x: u128, y: u128) -> u128 {
    let s = x.checked_add(y).expect("code exceeds 128 bits");
    let t = s
        .checked_mul(s.checked_add(1).expect("code exceeds 128 bits"))
        .expect("code exceeds 128 bits")
        / 2;
    t.checked_add(y).expect("code exceeds 128 bits")
}

pub fn unpair(z: u128) -> (u128, u128) {
    // w = floor((sqrt(8z+1) - 1) / 2), the diagonal index
    let r = isqrt(z.checked_mul(8).expect("code exceeds 128 bits") + 1);
    let w = (r - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = z - t;
    (w - y, y)
}

fn isqrt(n: u128) -> u128 {
    let (mut lo, mut hi) = (0u128, 1u128 << 64);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if mid * mid <= n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Length-prefixed iterated pairing: `[] -> 0`, otherwise
/// `1 + pair(len-1, s0 ⟨paired with⟩ (s1 ⟨paired with⟩ …))`.
pub fn seq_code(s: &[u128]) -> u128 {
    match s.split_last() {
        None => 0,
        Some((&last, init)) => {
            let body = init.iter().rev().fold(last, |acc, &v| pair_code(v, acc));
            1u128
                .checked_add(pair_code(s.len() as u128 - 1, body))
                .expect("code exceeds 128 bits")
        }
    }
}

pub fn seq_decode(code: u128) -> Vec<u128> {
    if code == 0 {
        return Vec::new();
    }
    let (len_minus_1, mut body) = unpair(code - 1);
    let len = len_minus_1 as usize + 1;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len - 1 {
        let (head, rest) = unpair(body);
        out.push(head);
        body = rest;
    }
    out.push(body);
    out
}

/// Integers folded onto naturals: `0, -1, 1, -2, 2, … -> 0, 1, 2, 3, 4, …`.
pub fn zigzag(n: i64) -> u128 {
    if n >= 0 {
        2 * n as u128
    } else {
        (-2 * (n as i128) - 1) as u128
    }
}

pub fn unzigzag(u: u128) -> i64 {
    if u.is_multiple_of(2) {
        (u / 2) as i64
    } else {
        -(u.div_ceil(2) as i64)
    }
}

/// A one-variable word coded over two marker parameters: the sequence
/// `a^k ⌢ b ⌢ a^m ⌢ b ⌢ (parameters in order)`, where `k` codes the
/// positions of the variable tokens and `m` codes their zigzagged exponents.
/// The two runs are kept as counts; materializing them in unary is optional
/// because the counts grow far faster than the words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WordCode {
    pub a: usize,
    pub b: usize,
    pub k: u128,
    pub m: u128,
    pub params: Vec<usize>,
}

/// Refuse to write out unary runs longer than this.
pub const MATERIALIZE_CAP: u128 = 100_000;

pub fn encode_word(w: &Word, a: usize, b: usize) -> Result<WordCode> {
    if a == b {
        return Err(Error::TooFewParams);
    }
    if w.uses_var(Var::Y) {
        return Err(Error::InvalidArgument("word codes cover one-variable words".into()));
    }
    let mut positions: Vec<u128> = Vec::new();
    let mut exps: Vec<u128> = Vec::new();
    let mut params: Vec<usize> = Vec::new();
    for (i, t) in w.tokens().iter().enumerate() {
        match *t {
            Token::Var { exp, .. } => {
                positions.push(i as u128);
                exps.push(zigzag(exp));
            }
            Token::Param(p) => params.push(p),
        }
    }
    Ok(WordCode { a, b, k: seq_code(&positions), m: seq_code(&exps), params })
}

pub fn decode_word(code: &WordCode) -> Result<Word> {
    let positions = seq_decode(code.k);
    let exps = seq_decode(code.m);
    if positions.len() != exps.len() {
        return Err(Error::Format("position and exponent lists disagree".into()));
    }
    let total = positions.len() + code.params.len();
    let mut tokens = Vec::with_capacity(total);
    let mut next_param = 0usize;
    let mut next_var = 0usize;
    for i in 0..total {
        if next_var < positions.len() && positions[next_var] == i as u128 {
            let exp = unzigzag(exps[next_var]);
            if exp == 0 {
                return Err(Error::Format("zero exponent in word code".into()));
            }
            tokens.push(Token::Var { var: Var::X, exp });
            next_var += 1;
        } else {
            let p = *code
                .params
                .get(next_param)
                .ok_or_else(|| Error::Format("variable positions overrun the word".into()))?;
            tokens.push(Token::Param(p));
            next_param += 1;
        }
    }
    if next_var < positions.len() || next_param < code.params.len() {
        return Err(Error::Format("dangling tokens in word code".into()));
    }
    Ok(Word::from_tokens(tokens))
}

impl WordCode {
    /// Spell the code out as an actual sequence over A.
    pub fn materialize(&self) -> Result<Vec<usize>> {
        if self.k > MATERIALIZE_CAP || self.m > MATERIALIZE_CAP {
            return Err(Error::CapExceeded {
                limit: MATERIALIZE_CAP as usize,
                detail: "unary run in a word code".into(),
            });
        }
        let mut out = Vec::new();
        out.extend(std::iter::repeat_n(self.a, self.k as usize));
        out.push(self.b);
        out.extend(std::iter::repeat_n(self.a, self.m as usize));
        out.push(self.b);
        out.extend(self.params.iter().copied());
        Ok(out)
    }

    /// Left-parse a materialized sequence: leading `a`-run, `b`, `a`-run,
    /// `b`, then parameters verbatim.
    pub fn parse(seq: &[usize], a: usize, b: usize) -> Result<WordCode> {
        if a == b {
            return Err(Error::TooFewParams);
        }
        let mut i = 0;
        let run = |i: &mut usize| {
            let start = *i;
            while *i < seq.len() && seq[*i] == a {
                *i += 1;
            }
            (*i - start) as u128
        };
        let k = run(&mut i);
        if seq.get(i) != Some(&b) {
            return Err(Error::Format("missing first marker".into()));
        }
        i += 1;
        let m = run(&mut i);
        if seq.get(i) != Some(&b) {
            return Err(Error::Format("missing second marker".into()));
        }
        i += 1;
        Ok(WordCode { a, b, k, m, params: seq[i..].to_vec() })
    }
}

/// Pick the two marker elements from a parameter set.
pub fn choose_markers(a_set: &[usize]) -> Result<(usize, usize)> {
    let mut sorted: Vec<usize> = a_set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < 2 {
        return Err(Error::TooFewParams);
    }
    Ok((sorted[0], sorted[1]))
}

/// `c = {x ⌢ ys | x ∈ atoms, ys ∈ seqs}`.
pub fn encode_set_pair(
    atoms: &BTreeSet<u128>,
    seqs: &BTreeSet<Vec<u128>>,
) -> Result<BTreeSet<Vec<u128>>> {
    if atoms.is_empty() {
        return Err(Error::EmptyA);
    }
    let mut out = BTreeSet::new();
    for &x in atoms {
        for ys in seqs {
            let mut s = Vec::with_capacity(ys.len() + 1);
            s.push(x);
            s.extend(ys.iter().copied());
            out.insert(s);
        }
    }
    Ok(out)
}

/// Recover `(atoms, seqs)` from a product code. The empty code is ambiguous
/// (every nonempty atom set pairs with the empty sequence set) and is
/// rejected, as is any set that is not an exact product.
pub fn decode_set_pair(code: &BTreeSet<Vec<u128>>) -> Result<(BTreeSet<u128>, BTreeSet<Vec<u128>>)> {
    if code.is_empty() {
        return Err(Error::Format(
            "empty product code: the atom set is unrecoverable".into(),
        ));
    }
    let mut atoms = BTreeSet::new();
    let mut seqs = BTreeSet::new();
    for s in code {
        let (&x, ys) = s
            .split_first()
            .ok_or_else(|| Error::Format("empty sequence in a product code".into()))?;
        atoms.insert(x);
        seqs.insert(ys.to_vec());
    }
    if atoms.len() * seqs.len() != code.len() {
        return Err(Error::Format("not a product code".into()));
    }
    Ok((atoms, seqs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{pm, xv};

    #[test]
    fn pairing_fixed_points() {
        assert_eq!(pair_code(0, 0), 0);
        assert_eq!(pair_code(1, 2), 8);
        assert_eq!(pair_code(2, 1), 7);
        assert_eq!(unpair(8), (1, 2));
    }

    #[test]
    fn pairing_round_trips_on_a_dense_grid() {
        for x in 0..100u128 {
            for y in 0..100u128 {
                assert_eq!(unpair(pair_code(x, y)), (x, y));
            }
        }
        // and on some spread-out values
        for x in [0u128, 1, 17, 1 << 20, 1 << 40] {
            for y in [0u128, 5, 1 << 31] {
                assert_eq!(unpair(pair_code(x, y)), (x, y));
            }
        }
    }

    #[test]
    fn sequence_codes_are_injective_at_small_scale() {
        assert_eq!(seq_code(&[]), 0);
        assert_eq!(seq_decode(seq_code(&[3, 1, 4])), vec![3, 1, 4]);
        let mut seen = std::collections::BTreeMap::new();
        let mut stack: Vec<Vec<u128>> = vec![Vec::new()];
        while let Some(s) = stack.pop() {
            let code = seq_code(&s);
            assert_eq!(seq_decode(code), s);
            if let Some(other) = seen.insert(code, s.clone()) {
                panic!("collision: {s:?} and {other:?}");
            }
            if s.len() < 4 {
                for v in 0..6u128 {
                    let mut t = s.clone();
                    t.push(v);
                    stack.push(t);
                }
            }
        }
        // 1 + 6 + 36 + 216 + 1296 sequences of length <= 4 over {0..5}
        assert_eq!(seen.len(), 1555);
    }

    #[test]
    fn zigzag_fixed_points() {
        let ins = [0i64, -1, 1, -2, 2];
        let outs: Vec<u128> = ins.iter().map(|&n| zigzag(n)).collect();
        assert_eq!(outs, vec![0, 1, 2, 3, 4]);
        for n in -50..=50 {
            assert_eq!(unzigzag(zigzag(n)), n);
        }
    }

    #[test]
    fn empty_word_code_is_two_markers() {
        let c = encode_word(&Word::empty(), 1, 2).unwrap();
        assert_eq!((c.k, c.m), (0, 0));
        assert_eq!(c.materialize().unwrap(), vec![2, 2]);
        assert!(decode_word(&c).unwrap().is_empty());
    }

    #[test]
    fn square_word_code_fixed_values() {
        let w = Word::from_tokens([xv(2)]);
        let c = encode_word(&w, 1, 2).unwrap();
        assert_eq!(c.k, 1); // one variable token at position 0
        assert_eq!(c.m, 15); // zigzag(2) = 4 coded as a one-element sequence
        assert!(c.params.is_empty());
        assert_eq!(decode_word(&c).unwrap(), w);
        let seq = c.materialize().unwrap();
        assert_eq!(seq.len(), 1 + 1 + 15 + 1);
        assert_eq!(WordCode::parse(&seq, 1, 2).unwrap(), c);
    }

    #[test]
    fn random_reduced_words_round_trip_distinctly() {
        // deterministic xorshift so the corpus is stable
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut codes = BTreeSet::new();
        let mut words = BTreeSet::new();
        for _ in 0..1000 {
            let mut tokens = Vec::new();
            for slot in 0..(1 + next() % 5) {
                if slot % 2 == 0 {
                    let exp = 1 + (next() % 4) as i64;
                    let sign = if next() % 2 == 0 { 1 } else { -1 };
                    tokens.push(xv(sign * exp));
                } else {
                    tokens.push(pm(1 + (next() % 3) as usize));
                }
            }
            let w = Word::from_tokens(tokens);
            let c = encode_word(&w, 1, 2).unwrap();
            assert_eq!(decode_word(&c).unwrap(), w);
            let fresh_word = words.insert(w);
            let fresh_code = codes.insert(c);
            assert_eq!(fresh_word, fresh_code, "codes collide iff words collide");
        }
        assert!(words.len() > 100);
    }

    #[test]
    fn marker_selection_needs_two_parameters() {
        assert_eq!(choose_markers(&[3, 0, 3]).unwrap(), (0, 3));
        assert!(matches!(choose_markers(&[5]), Err(Error::TooFewParams)));
        assert!(matches!(encode_word(&Word::empty(), 2, 2), Err(Error::TooFewParams)));
    }

    #[test]
    fn set_pair_codes_match_hand_evaluation() {
        let atoms: BTreeSet<u128> = [1, 2].into_iter().collect();
        let seqs: BTreeSet<Vec<u128>> = [vec![7u128]].into_iter().collect();
        let c = encode_set_pair(&atoms, &seqs).unwrap();
        let expect: BTreeSet<Vec<u128>> = [vec![1, 7], vec![2, 7]].into_iter().collect();
        assert_eq!(c, expect);
        assert_eq!(decode_set_pair(&c).unwrap(), (atoms, seqs));
    }

    #[test]
    fn set_pair_edge_cases() {
        let empty_atoms: BTreeSet<u128> = BTreeSet::new();
        let some_seqs: BTreeSet<Vec<u128>> = [vec![1u128]].into_iter().collect();
        assert!(matches!(encode_set_pair(&empty_atoms, &some_seqs), Err(Error::EmptyA)));

        // nonempty atoms with no sequences code to the empty set, which
        // cannot be decoded
        let atoms: BTreeSet<u128> = [0].into_iter().collect();
        let c = encode_set_pair(&atoms, &BTreeSet::new()).unwrap();
        assert!(c.is_empty());
        assert!(decode_set_pair(&c).is_err());

        // a non-product set is rejected
        let junk: BTreeSet<Vec<u128>> = [vec![1, 7], vec![2, 8]].into_iter().collect();
        assert!(decode_set_pair(&junk).is_err());
    }

    #[test]
    fn set_pair_random_round_trips() {
        let mut state = 42u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for _ in 0..200 {
            let atoms: BTreeSet<u128> = (0..1 + next() % 4).map(|_| (next() % 50) as u128).collect();
            let seqs: BTreeSet<Vec<u128>> = (0..1 + next() % 4)
                .map(|_| (0..next() % 4).map(|_| (next() % 50) as u128).collect())
                .collect();
            let c = encode_set_pair(&atoms, &seqs).unwrap();
            assert_eq!(decode_set_pair(&c).unwrap(), (atoms, seqs));
        }
    }

    #[test]
    fn encoded_fragments_separate_special_pair_elements() {
        let g = crate::catalog::build("S3").unwrap();
        let all: Vec<usize> = g.elements().collect();
        assert!(crate::special::is_special_pair(&g, &all).unwrap());
        let (a, b) = choose_markers(&all).unwrap();
        let mut seen: Vec<BTreeSet<WordCode>> = Vec::new();
        for x in g.elements() {
            let frag = crate::special::type_fragment(&g, &all, x, 4).unwrap();
            let coded: BTreeSet<WordCode> = frag
                .words
                .iter()
                .map(|w| encode_word(w, a, b).unwrap())
                .collect();
            assert!(!seen.contains(&coded), "fragments of distinct elements must differ");
            seen.push(coded);
        }
    }
}
