//! Words over one or two variables and a parameter set.
//!
//! A word is a token sequence mixing variable powers (`x^3`, `y^-1`) with
//! parameters (fixed group elements). Two reduction strengths exist:
//!
//! - *free* reduction merges adjacent powers of the same variable and drops
//!   identity parameters, but leaves distinct adjacent parameters alone, so a
//!   token's parameters stay recognizable;
//! - *canonical* reduction additionally multiplies adjacent parameters out in
//!   a concrete group, giving the normal form used for fragment sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Token {
    Var { var: Var, exp: i64 },
    Param(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Word {
    tokens: Vec<Token>,
}

/// Append one token to an already-reduced stack, restoring reducedness.
/// `collapse` carries the group used to multiply adjacent parameters; `None`
/// means free reduction only.
fn push_reduced(stack: &mut Vec<Token>, tok: Token, collapse: Option<&Group>) {
    match tok {
        Token::Var { exp: 0, .. } | Token::Param(0) => return,
        _ => {}
    }
    match (stack.last().copied(), tok) {
        (Some(Token::Var { var: v1, exp: e1 }), Token::Var { var: v2, exp: e2 }) if v1 == v2 => {
            stack.pop();
            push_reduced(stack, Token::Var { var: v1, exp: e1 + e2 }, collapse);
        }
        (Some(Token::Param(p1)), Token::Param(p2)) if collapse.is_some() => {
            let g = collapse.expect("checked");
            stack.pop();
            push_reduced(stack, Token::Param(g.mul(p1, p2)), collapse);
        }
        _ => stack.push(tok),
    }
}

impl Word {
    pub fn empty() -> Word {
        Word { tokens: Vec::new() }
    }

    /// Build with free reduction.
    pub fn from_tokens(raw: impl IntoIterator<Item = Token>) -> Word {
        let mut stack = Vec::new();
        for tok in raw {
            push_reduced(&mut stack, tok, None);
        }
        Word { tokens: stack }
    }

    /// Build with canonical reduction: adjacent parameters are multiplied in
    /// `g`, with any cascading cancellations carried through.
    pub fn canonical(g: &Group, raw: impl IntoIterator<Item = Token>) -> Word {
        let mut stack = Vec::new();
        for tok in raw {
            push_reduced(&mut stack, tok, Some(g));
        }
        Word { tokens: stack }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Letter length: each parameter is one letter, a power `v^k` is `|k|`
    /// letters.
    pub fn letter_len(&self) -> usize {
        self.tokens
            .iter()
            .map(|t| match t {
                Token::Var { exp, .. } => exp.unsigned_abs() as usize,
                Token::Param(_) => 1,
            })
            .sum()
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.tokens.iter().any(|t| matches!(t, Token::Var { var, .. } if *var == v))
    }

    pub fn params(&self) -> impl Iterator<Item = usize> + '_ {
        self.tokens.iter().filter_map(|t| match t {
            Token::Param(a) => Some(*a),
            _ => None,
        })
    }

    /// The freely-reduced inverse: tokens reversed, exponents negated,
    /// parameters inverted in `g`.
    pub fn inverse(&self, g: &Group) -> Word {
        Word::from_tokens(self.tokens.iter().rev().map(|t| match *t {
            Token::Var { var, exp } => Token::Var { var, exp: -exp },
            Token::Param(a) => Token::Param(g.inv(a)),
        }))
    }

    /// Concatenation, freely reduced.
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_tokens(self.tokens.iter().chain(other.tokens.iter()).copied())
    }
}

/// `x^exp` for possibly negative `exp`.
pub fn power(g: &Group, x: usize, exp: i64) -> usize {
    let base = if exp < 0 { g.inv(x) } else { x };
    let mut acc = 0;
    for _ in 0..exp.unsigned_abs() {
        acc = g.mul(acc, base);
    }
    acc
}

/// Evaluate a word at concrete values. Parameters must come from `a_set`;
/// `y_val` is required exactly when the word mentions `y`.
pub fn evaluate_word(
    g: &Group,
    w: &Word,
    x_val: usize,
    y_val: Option<usize>,
    a_set: &[usize],
) -> Result<usize> {
    g.check_index(x_val)?;
    if let Some(y) = y_val {
        g.check_index(y)?;
    }
    for a in w.params() {
        if !a_set.contains(&a) {
            return Err(Error::ParamOutsideA(a));
        }
    }
    let mut acc = 0usize;
    for t in w.tokens() {
        let v = match *t {
            Token::Var { var: Var::X, exp } => power(g, x_val, exp),
            Token::Var { var: Var::Y, exp } => {
                let y = y_val.ok_or(Error::MissingYValue)?;
                power(g, y, exp)
            }
            Token::Param(a) => {
                g.check_index(a)?;
                a
            }
        };
        acc = g.mul(acc, v);
    }
    Ok(acc)
}

/// Shorthand used all over the tests.
pub fn xv(exp: i64) -> Token {
    Token::Var { var: Var::X, exp }
}

pub fn yv(exp: i64) -> Token {
    Token::Var { var: Var::Y, exp }
}

pub fn pm(a: usize) -> Token {
    Token::Param(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn free_reduction_merges_and_cancels() {
        let w = Word::from_tokens([xv(2), xv(-1)]);
        assert_eq!(w.tokens(), &[xv(1)]);
        assert!(Word::from_tokens([xv(1), xv(-1)]).is_empty());
        // identity parameters vanish, distinct adjacent parameters stay
        let w = Word::from_tokens([pm(0), pm(1), pm(2), xv(1)]);
        assert_eq!(w.tokens(), &[pm(1), pm(2), xv(1)]);
        // x and y do not merge
        let w = Word::from_tokens([xv(1), yv(1)]);
        assert_eq!(w.tokens(), &[xv(1), yv(1)]);
    }

    #[test]
    fn canonical_reduction_collapses_parameters() {
        let g = catalog::build("S3").unwrap();
        // 1 * 1 = identity in S3 (a transposition squared), so the two
        // parameters vanish and the x-runs merge
        let w = Word::canonical(&g, [xv(1), pm(1), pm(1), xv(1)]);
        assert_eq!(w.tokens(), &[xv(2)]);
        // 3 * 3 = 4 stays a single parameter
        let w = Word::canonical(&g, [pm(3), pm(3)]);
        assert_eq!(w.tokens(), &[pm(4)]);
    }

    #[test]
    fn letter_length_counts_expanded_letters() {
        assert_eq!(Word::from_tokens([xv(3)]).letter_len(), 3);
        assert_eq!(Word::from_tokens([xv(1), pm(1), xv(-1), pm(1)]).letter_len(), 4);
        assert_eq!(Word::empty().letter_len(), 0);
    }

    #[test]
    fn evaluation_matches_stepwise_table_lookups() {
        let g = catalog::build("S3").unwrap();
        // conjugating parameter 1 by a 3-cycle and multiplying the parameter
        // back in lands at the other 3-cycle
        let w = Word::from_tokens([xv(1), pm(1), xv(-1), pm(1)]);
        assert_eq!(evaluate_word(&g, &w, 3, None, &[0, 1]).unwrap(), 4);
        // empty word and plain cancellation
        assert_eq!(evaluate_word(&g, &Word::empty(), 2, None, &[]).unwrap(), 0);
        let c = Word::from_tokens([xv(1)]).concat(&Word::from_tokens([xv(-1)]));
        assert_eq!(evaluate_word(&g, &c, 5, None, &[]).unwrap(), 0);
    }

    #[test]
    fn evaluation_validates_inputs() {
        let g = catalog::build("S3").unwrap();
        let w = Word::from_tokens([xv(1), pm(2)]);
        assert!(matches!(
            evaluate_word(&g, &w, 1, None, &[0, 1]),
            Err(Error::ParamOutsideA(2))
        ));
        let wy = Word::from_tokens([yv(1)]);
        assert!(matches!(evaluate_word(&g, &wy, 1, None, &[]), Err(Error::MissingYValue)));
        assert!(evaluate_word(&g, &Word::empty(), 9, None, &[]).is_err());
    }

    #[test]
    fn powers_run_both_directions() {
        let g = catalog::build("C5").unwrap();
        assert_eq!(power(&g, 1, 3), 3);
        assert_eq!(power(&g, 1, -2), 3);
        assert_eq!(power(&g, 2, 0), 0);
    }

    #[test]
    fn inverse_concat_cancels_canonically() {
        let g = catalog::build("S3").unwrap();
        let w = Word::from_tokens([xv(1), pm(1), xv(-2)]);
        let wi = w.inverse(&g);
        assert_eq!(wi.tokens(), &[xv(2), pm(1), xv(-1)]);
        let round = Word::canonical(&g, w.concat(&wi).tokens().iter().copied());
        assert!(round.is_empty(), "{round:?}");
        // evaluation agrees with group inversion
        for x in g.elements() {
            let v = evaluate_word(&g, &w, x, None, &[0, 1]).unwrap();
            let vi = evaluate_word(&g, &wi, x, None, &[0, 1]).unwrap();
            assert_eq!(g.inv(v), vi);
        }
    }
}
