//! Independent braid-word oracle.
//!
//! Words in the elementary generators cross-check the tiling-level move
//! bookkeeping: conjugation and exchange preserve strand count, exponent
//! sum and closure components, stabilization and destabilization trade a
//! strand against a crossing.  A bounded breadth-first search over the
//! link-type-preserving rewrites certifies desk-scale words trivial; it
//! never certifies falsely, and returns inconclusive when the budget
//! runs out.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::BraidError;
use crate::tiling::Sign;

/// A word in the elementary generators of the braid group on `strands`
/// strands: letter `i > 0` is the i-th generator, `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

/// Closure invariants of a word: strand count, exponent sum, underlying
/// permutation and the number of link components of the closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureInvariants {
    pub strands: u32,
    pub exponent_sum: i64,
    /// Image of each strand under the word, 0-based.
    pub permutation: Vec<u32>,
    pub components: u32,
}

/// Word-level moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordMove {
    /// Conjugate by a single generator: `w -> g w g^-1`.
    Conjugate(i32),
    /// Add a trivial loop of the given sign on a new strand.
    Stabilize(Sign),
    /// Remove the trivial loop on the last strand.
    Destabilize,
    /// Flip the two crossings of the last strand in the block shape
    /// `b1 s^e b2 s^-e`; `split` is the index of the first of them.
    Exchange { split: usize },
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<BraidWord, BraidError> {
        if strands == 0 {
            return Err(BraidError::ZeroStrands);
        }
        for l in &letters {
            if *l == 0 {
                return Err(BraidError::ZeroLetter);
            }
            if l.unsigned_abs() >= strands {
                return Err(BraidError::LetterOutOfRange {
                    letter: *l,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: u32) -> Result<BraidWord, BraidError> {
        BraidWord::new(strands, Vec::new())
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Cancel adjacent inverse pairs until none remain.  Confluent and
    /// terminating, so the result is independent of cancellation order.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(*l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    pub fn invariants(&self) -> ClosureInvariants {
        closure_invariants(self)
    }
}

/// Strand count, exponent sum, permutation and closure component count.
pub fn closure_invariants(w: &BraidWord) -> ClosureInvariants {
    let n = w.strands as usize;
    let mut positions: Vec<u32> = (0..w.strands).collect();
    for l in &w.letters {
        let i = (l.unsigned_abs() - 1) as usize;
        positions.swap(i, i + 1);
    }
    // positions[k] = strand now at position k; the permutation maps
    // start position of a strand to its end position.
    let mut permutation = alloc::vec![0u32; n];
    for (end, strand) in positions.iter().enumerate() {
        permutation[*strand as usize] = end as u32;
    }
    let mut seen = alloc::vec![false; n];
    let mut components = 0u32;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = permutation[cur] as usize;
        }
    }
    ClosureInvariants {
        strands: w.strands,
        exponent_sum: w.letters.iter().map(|l| i64::from(l.signum())).sum(),
        permutation,
        components,
    }
}

/// Apply a Markov or exchange move at the word level.
pub fn apply_move(w: &BraidWord, mv: WordMove) -> Result<BraidWord, BraidError> {
    match mv {
        WordMove::Conjugate(g) => {
            if g == 0 || g.unsigned_abs() >= w.strands {
                return Err(BraidError::BadConjugator { letter: g });
            }
            let mut letters = Vec::with_capacity(w.letters.len() + 2);
            letters.push(g);
            letters.extend_from_slice(&w.letters);
            letters.push(-g);
            Ok(BraidWord {
                strands: w.strands,
                letters,
            }
            .free_reduce())
        }
        WordMove::Stabilize(sign) => {
            let g = w.strands as i32;
            let mut letters = w.letters.clone();
            letters.push(if sign == Sign::Plus { g } else { -g });
            Ok(BraidWord {
                strands: w.strands + 1,
                letters,
            })
        }
        WordMove::Destabilize => {
            if w.strands < 2 {
                return Err(BraidError::NotDestabilizable);
            }
            let top = (w.strands - 1) as i32;
            let last = *w.letters.last().ok_or(BraidError::NotDestabilizable)?;
            if last.unsigned_abs() != top as u32 {
                return Err(BraidError::NotDestabilizable);
            }
            let body = &w.letters[..w.letters.len() - 1];
            if body.iter().any(|l| l.unsigned_abs() == top as u32) {
                return Err(BraidError::NotDestabilizable);
            }
            Ok(BraidWord {
                strands: w.strands - 1,
                letters: body.to_vec(),
            })
        }
        WordMove::Exchange { split } => {
            let top = w.strands - 1;
            if top == 0 {
                return Err(BraidError::ExchangeShapeMismatch);
            }
            let uses: Vec<usize> = w
                .letters
                .iter()
                .enumerate()
                .filter(|(_, l)| l.unsigned_abs() == top)
                .map(|(i, _)| i)
                .collect();
            // Shape b1 s^e b2 s^-e: exactly two top-strand crossings of
            // opposite sign, the second terminal, the first at `split`.
            if uses.len() != 2
                || uses[0] != split
                || uses[1] != w.letters.len() - 1
                || w.letters[uses[0]] != -w.letters[uses[1]]
            {
                return Err(BraidError::ExchangeShapeMismatch);
            }
            let mut letters = w.letters.clone();
            letters[uses[0]] = -letters[uses[0]];
            letters[uses[1]] = -letters[uses[1]];
            Ok(BraidWord {
                strands: w.strands,
                letters,
            })
        }
    }
}

/// Search budget for [`certify_trivial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_strands: u32,
    pub max_len: usize,
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_strands: 4,
            max_len: 12,
            max_nodes: 1_000_000,
        }
    }
}

/// Outcome of the bounded triviality search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A sequence of link-type-preserving rewrites reaches the empty
    /// word on `components` strands: the closure is the trivial unlink.
    Certified { components: u32, nodes: usize },
    /// Budget exhausted without reaching the normal form.
    Inconclusive { nodes: usize },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }
}

/// Length-preserving rewrites of the group relations: neighboring
/// generators may slide past each other when they act on disjoint
/// strands, and the two braidings of three adjacent strands agree.
fn relation_rewrites(w: &BraidWord, out: &mut Vec<BraidWord>) {
    let ls = &w.letters;
    for i in 0..ls.len() {
        // Commutation of distant generators.
        if i + 1 < ls.len() {
            let (a, b) = (ls[i], ls[i + 1]);
            if a.unsigned_abs().abs_diff(b.unsigned_abs()) >= 2 {
                let mut next = ls.to_vec();
                next.swap(i, i + 1);
                out.push(BraidWord {
                    strands: w.strands,
                    letters: next,
                });
            }
        }
        // Triple rewrites on adjacent generator indices.
        if i + 2 < ls.len() {
            let (a, b, c) = (ls[i], ls[i + 1], ls[i + 2]);
            if a.unsigned_abs() == c.unsigned_abs()
                && a.unsigned_abs().abs_diff(b.unsigned_abs()) == 1
            {
                let rewrite: Option<[i32; 3]> = if a == c && a.signum() == b.signum() {
                    // x y x -> y x y
                    Some([b, a, b])
                } else if a == c {
                    None
                } else if a == -c && a > 0 && b > 0 {
                    // x y x^-1 -> y^-1 x y
                    Some([-b, a, b])
                } else if a == -c && a < 0 && b > 0 {
                    // x^-1 y x -> y x y^-1
                    Some([b, -a, -b])
                } else if a == -c && a > 0 && b < 0 {
                    // x y^-1 x^-1 -> y^-1 x^-1 y
                    Some([b, -a, -b])
                } else if a == -c && a < 0 && b < 0 {
                    // x^-1 y^-1 x -> y x^-1 y^-1
                    Some([-b, a, b])
                } else {
                    None
                };
                if let Some(r) = rewrite {
                    let mut next = ls.to_vec();
                    next[i] = r[0];
                    next[i + 1] = r[1];
                    next[i + 2] = r[2];
                    out.push(BraidWord {
                        strands: w.strands,
                        letters: next,
                    });
                }
            }
        }
    }
}

/// Bounded breadth-first search for a certificate that the closure of
/// `w` is the trivial unlink on its component count.
///
/// The move set is free reduction (applied eagerly), single-generator
/// conjugation, destabilization, exchange and the group relations; all
/// preserve the closure's link type, so a positive answer is sound.
pub fn certify_trivial(w: &BraidWord, budget: Budget) -> Certificate {
    let target_components = closure_invariants(w).components;
    let start = w.free_reduce();
    let mut seen: BTreeSet<BraidWord> = BTreeSet::new();
    let mut queue: VecDeque<BraidWord> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut nodes = 0usize;

    while let Some(cur) = queue.pop_front() {
        nodes += 1;
        if cur.letters.is_empty() && cur.strands == target_components {
            return Certificate::Certified {
                components: target_components,
                nodes,
            };
        }
        if nodes >= budget.max_nodes {
            return Certificate::Inconclusive { nodes };
        }

        let mut next: Vec<BraidWord> = Vec::new();
        for g in 1..cur.strands as i32 {
            for s in [g, -g] {
                if let Ok(n) = apply_move(&cur, WordMove::Conjugate(s)) {
                    next.push(n);
                }
            }
        }
        if let Ok(n) = apply_move(&cur, WordMove::Destabilize) {
            next.push(n);
        }
        for split in 0..cur.letters.len() {
            if let Ok(n) = apply_move(&cur, WordMove::Exchange { split }) {
                next.push(n);
            }
        }
        relation_rewrites(&cur, &mut next);

        for n in next {
            let n = n.free_reduce();
            if n.strands > budget.max_strands || n.letters.len() > budget.max_len {
                continue;
            }
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    Certificate::Inconclusive { nodes }
}
