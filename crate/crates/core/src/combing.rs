//! Combing a pure braid word into one free word per strand.
//!
//! Level `m` (from `n` down to 2) rewrites strand-`m` letters into band
//! letters and moves them to the right end of the word. Strands below `m`
//! form a normal subgroup, so the lower letters they pass get conjugated.
//! The moved letters form `ω_m`; at level `n` they are kept in canonical
//! form inside the surface group.

use serde::Serialize;

use crate::conj::{eliminate_tn, eliminate_tn_strand, Dictionary};
use crate::error::SolverError;
use crate::pi1::{Prefix, SurfaceRelator};
use crate::presentations::{change_of_generators, Direction};
use crate::words::{Gen, Word};

/// `ω_1 ω_2 ... ω_n`, followed by the transversal word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombedForm {
    /// `levels[m-1]` is `ω_m`.
    pub levels: Vec<Word>,
    pub perm_word: Word,
}

impl CombedForm {
    pub fn is_identity(&self) -> bool {
        self.perm_word.is_empty() && self.levels.iter().all(Word::is_empty)
    }

    /// The product `ω_1 ... ω_n · s` as one word.
    pub fn to_word(&self) -> Word {
        let mut out = Word::new();
        for l in &self.levels {
            out.extend_from(l);
        }
        out.extend_from(&self.perm_word);
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CombStats {
    pub transports: u64,
    pub dehn_moves: u64,
}

/// Counts letter transports against a hard limit.
#[derive(Clone, Debug)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }

    pub(crate) fn spend(&mut self, k: u64) -> Result<(), SolverError> {
        self.used += k;
        if self.used > self.limit {
            return Err(SolverError::StepBudget { limit: self.limit });
        }
        Ok(())
    }
}

/// Splits a word over strands `<= m` into `(rest, ω_m)` with
/// `x = rest · ω_m` and `rest` over strands `< m`. Loops `T_{i,n}` are
/// kept as letters until level `i`. Strand-`m` letters are
/// collected into a prefix and every lower letter is conjugated by the
/// prefix that precedes it. At the surface level (`rel` given) the prefix
/// is kept canonical and rewrite corrections join `rest` in place.
pub fn comb_level(
    x: &Word,
    m: u32,
    rel: Option<&SurfaceRelator>,
    dict: &Dictionary,
    budget: &mut Budget,
    stats: &mut CombStats,
) -> Result<(Word, Word), SolverError> {
    let spec = dict.spec();
    let x = eliminate_tn_strand(x, spec, m);
    let table = change_of_generators(spec, m, Direction::BandToA);
    let x = x.substitute_with(|g| table.get(&g.canonical()).cloned()).free_reduce();
    let mut pre = Prefix::new(Some(dict), rel, m);
    for &l in x.letters() {
        match l.gen.strand() {
            Some(s) if s == m => pre.push_band(l, budget)?,
            Some(s) if s < m => pre.push_lower(&Word::letter(l)),
            _ => {
                return Err(SolverError::Letter {
                    pos: 0,
                    letter: l.to_string(),
                    reason: format!("letter above level {m} while combing"),
                });
            }
        }
    }
    stats.dehn_moves += pre.moves;
    stats.transports += pre.conjugated;
    pre.finish(budget)
}

/// Combs a pure word; `levels[m-1]` is over `A_{m,·}` and `T_{m,k}` for
/// `m >= 2`, and over `a_{1,·}` and `T_{1,k}` for `m = 1` (with `n = 1` the
/// single level is the surface level, over `A_{1,·}`).
pub fn comb(
    pure: &Word,
    rel: &SurfaceRelator,
    dict: &Dictionary,
    budget: &mut Budget,
    stats: &mut CombStats,
) -> Result<Vec<Word>, SolverError> {
    comb_levels(pure, dict.spec().strands, Some(rel), dict, budget, stats)
}

/// The combed form of a word over strands `<= top < n`, as a single word
/// over strand letters (`a_{i,r}` and `T_{i,k}`).
pub(crate) fn normal_word(
    x: &Word,
    top: u32,
    dict: &Dictionary,
    budget: &mut Budget,
    stats: &mut CombStats,
) -> Result<Word, SolverError> {
    let spec = dict.spec();
    let levels = comb_levels(x, top, None, dict, budget, stats)?;
    let mut out = Word::new();
    for (idx, level) in levels.iter().enumerate() {
        let table = change_of_generators(spec, idx as u32 + 1, Direction::AToBand);
        out.append_reduced(&level.substitute_with(|g| table.get(&g).cloned()));
    }
    Ok(out)
}

/// Combs levels `top` down to 1; `rel` applies to level `top`.
fn comb_levels(
    pure: &Word,
    top: u32,
    rel: Option<&SurfaceRelator>,
    dict: &Dictionary,
    budget: &mut Budget,
    stats: &mut CombStats,
) -> Result<Vec<Word>, SolverError> {
    let spec = dict.spec();
    let n = spec.strands;
    let mut levels = vec![Word::new(); top as usize];
    let mut x = pure.clone();
    for m in (1..=top).rev() {
        if m == 1 && n > 1 {
            let last = eliminate_tn(&x, spec).free_reduce();
            if let Some(l) = last.letters().iter().find(|l| l.gen.strand() != Some(1)) {
                return Err(SolverError::Letter {
                    pos: 0,
                    letter: l.to_string(),
                    reason: "letter above level 1 after combing".into(),
                });
            }
            levels[0] = last.substitute_with(|g| Some(Word::gen(g.canonical())));
            break;
        }
        let (rest, y) = comb_level(&x, m, if m == top { rel } else { None }, dict, budget, stats)?;
        x = rest;
        levels[m as usize - 1] = y;
    }
    debug_assert!(levels.iter().enumerate().all(|(idx, w)| w.letters().iter().all(|l| {
        l.gen.strand() == Some(idx as u32 + 1) && !matches!(l.gen, Gen::TLoop(_, k) if k == n && n > 1)
    })));
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{w, SurfaceSpec};

    fn run(spec: SurfaceSpec, text: &str) -> Vec<Word> {
        let d = Dictionary::new(spec);
        let rel = SurfaceRelator::new(&spec);
        comb(&w(text), &rel, &d, &mut Budget::new(1_000_000), &mut CombStats::default()).unwrap()
    }

    #[test]
    fn single_strand_letters() {
        let s = SurfaceSpec::orientable(1, 2).unwrap();
        assert_eq!(run(s, "a[1,1]"), vec![w("a[1,1]"), w("")]);
        // T_{1,n} is eliminated through the surface word of strand 1
        assert_eq!(run(s, "T[1,2]"), vec![w("a[1,1] a[1,2] a[1,1]^-1 a[1,2]^-1"), w("")]);
        let s3 = SurfaceSpec::orientable(1, 3).unwrap();
        assert_eq!(run(s3, "T[1,2]"), vec![w("T[1,2]"), w(""), w("")]);
        // on the torus a_{j,1} = A_{j,2}
        assert_eq!(run(s, "a[2,1]"), vec![w(""), w("A[2,2]")]);
    }

    #[test]
    fn level_words_sit_on_their_strand() {
        let s = SurfaceSpec::orientable(2, 3).unwrap();
        let lv = run(s, "a[3,2] a[1,1] T[2,3] a[2,4]^-1 a[3,1] T[1,2]");
        for (idx, l) in lv.iter().enumerate() {
            assert!(l.letters().iter().all(|x| x.gen.strand() == Some(idx as u32 + 1)), "{l}");
            assert!(l.is_freely_reduced());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = SurfaceSpec::orientable(2, 3).unwrap();
        let d = Dictionary::new(s);
        let word = w("a[1,1] a[2,1] a[1,2] a[3,1] a[1,3] a[3,2]");
        let rel = SurfaceRelator::new(&s);
        let err = comb(&word, &rel, &d, &mut Budget::new(1), &mut CombStats::default()).unwrap_err();
        assert!(matches!(err, SolverError::StepBudget { limit: 1 }));
    }
}
