//! Word-level rewriting in the free algebra on `P`, `A`, `Abar`.
//!
//! Rules, applied at the leftmost redex until none remain:
//!
//! ```text
//! A Abar -> 1        Abar A -> 1
//! A P    -> P A + a A
//! Abar P -> P Abar - a Abar
//! ```
//!
//! Every rule either shortens the word or removes one (shift, P) inversion,
//! so rewriting terminates; irreducible words are exactly `P^k A^m`.
//! [`SymbolicOperator`]'s product implements the same rules in closed form;
//! this module is the step-by-step version.

use std::collections::BTreeMap;

use super::coefficient::{Coefficient, GaussianRational};
use super::symbolic::SymbolicOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    P,
    A,
    Abar,
}

enum Redex {
    Cancel(usize),
    Exchange(usize, i64),
}

fn find_redex(word: &[Letter]) -> Option<Redex> {
    word.windows(2).enumerate().find_map(|(i, w)| match (w[0], w[1]) {
        (Letter::A, Letter::Abar) | (Letter::Abar, Letter::A) => Some(Redex::Cancel(i)),
        (Letter::A, Letter::P) => Some(Redex::Exchange(i, 1)),
        (Letter::Abar, Letter::P) => Some(Redex::Exchange(i, -1)),
        _ => None,
    })
}

fn irreducible_key(word: &[Letter]) -> (u32, i32) {
    let mut k = 0;
    let mut m = 0;
    for l in word {
        match l {
            Letter::P => k += 1,
            Letter::A => m += 1,
            Letter::Abar => m -= 1,
        }
    }
    (k, m)
}

/// Rewrites a linear combination of words to normal form.
pub fn normal_order(words: impl IntoIterator<Item = (Vec<Letter>, Coefficient)>) -> SymbolicOperator {
    let mut pending: BTreeMap<Vec<Letter>, Coefficient> = BTreeMap::new();
    for (w, c) in words {
        push(&mut pending, w, &c);
    }
    let mut out = SymbolicOperator::zero();
    while let Some((word, c)) = pending.pop_first() {
        match find_redex(&word) {
            None => {
                let (k, m) = irreducible_key(&word);
                out.add_term(k, m, &c);
            }
            Some(Redex::Cancel(i)) => {
                let mut w = word[..i].to_vec();
                w.extend_from_slice(&word[i + 2..]);
                push(&mut pending, w, &c);
            }
            Some(Redex::Exchange(i, sign)) => {
                let shift = word[i];
                let mut swapped = word.clone();
                swapped[i] = Letter::P;
                swapped[i + 1] = shift;
                push(&mut pending, swapped, &c);

                let mut dropped = word[..i + 1].to_vec();
                dropped.extend_from_slice(&word[i + 2..]);
                let factor = Coefficient::monomial(GaussianRational::from_int(sign), 1);
                push(&mut pending, dropped, &(&c * &factor));
            }
        }
    }
    out
}

fn push(map: &mut BTreeMap<Vec<Letter>, Coefficient>, word: Vec<Letter>, c: &Coefficient) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(word.clone()).or_default();
    *entry = &*entry + c;
    if entry.is_zero() {
        map.remove(&word);
    }
}

/// Normal form of a single word with unit coefficient.
pub fn normal_order_word(word: &[Letter]) -> SymbolicOperator {
    normal_order([(word.to_vec(), Coefficient::one())])
}
