//! Normal forms, triviality and equality of surface braid words.

use serde::Serialize;
use serde_json::{json, Value};

use crate::combing::{comb, Budget, CombStats, CombedForm};
use crate::conj::Dictionary;
use crate::error::{SolverError, WordError};
use crate::pi1::SurfaceRelator;
use crate::presentations::{band_definition, generators, relators, PresentationLevel};
use crate::sigma_machine::purify;
use crate::words::{Gen, SurfaceSpec, Word};

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

/// Step limit from `SBW_MAX_STEPS`, falling back to the default.
pub fn max_steps_from_env() -> u64 {
    std::env::var("SBW_MAX_STEPS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_STEPS)
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct StepStats {
    pub absorbs: u64,
    pub transports: u64,
    pub dehn_moves: u64,
    pub steps: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalFormReport {
    pub input: Word,
    pub combed: CombedForm,
    pub trivial: bool,
    pub stats: StepStats,
}

impl PartialEq for NormalFormReport {
    // statistics are diagnostics, not part of the result
    fn eq(&self, other: &Self) -> bool {
        self.input == other.input && self.combed == other.combed && self.trivial == other.trivial
    }
}

impl NormalFormReport {
    pub fn to_json(&self) -> Value {
        json!({
            "levels": self.combed.levels.iter().map(Word::tokens).collect::<Vec<_>>(),
            "perm_word": self.combed.perm_word.tokens(),
            "trivial": self.trivial,
            "stats": self.stats,
        })
    }
}

/// Solver for one surface and strand count; the conjugation dictionary is
/// shared by every call.
pub struct Solver {
    dict: Dictionary,
    rel: SurfaceRelator,
    max_steps: u64,
}

impl Solver {
    pub fn new(spec: SurfaceSpec) -> Self {
        Self { dict: Dictionary::new(spec), rel: SurfaceRelator::new(&spec), max_steps: max_steps_from_env() }
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn spec(&self) -> &SurfaceSpec {
        self.dict.spec()
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        Word::parse_for(text, self.spec())
    }

    fn check(&self, w: &Word) -> Result<(), WordError> {
        for (pos, l) in w.letters().iter().enumerate() {
            self.spec().check(l.gen).map_err(|message| WordError::Range { pos, message })?;
        }
        Ok(())
    }

    pub fn normal_form(&self, w: &Word) -> Result<NormalFormReport, SolverError> {
        self.check(w)?;
        let spec = self.spec();
        let mut expanded = Word::new();
        for &l in w.letters() {
            match l.gen {
                Gen::ABand(j, r) => {
                    let def = band_definition(spec, j, r)?;
                    expanded.extend_from(&if l.inv { def.inverse() } else { def });
                }
                _ => expanded.push(l),
            }
        }
        let absorbs = expanded.letters().iter().filter(|l| l.gen.is_sigma()).count() as u64;
        let (pure, perm_word) = purify(&expanded, spec)?;
        let mut budget = Budget::new(self.max_steps);
        let mut cs = CombStats::default();
        let levels = comb(&pure, &self.rel, &self.dict, &mut budget, &mut cs)?;
        let combed = CombedForm { levels, perm_word };
        let trivial = combed.is_identity();
        let stats =
            StepStats { absorbs, transports: cs.transports, dehn_moves: cs.dehn_moves, steps: budget.used };
        Ok(NormalFormReport { input: w.clone(), combed, trivial, stats })
    }

    /// Triviality is invariant under conjugation, so the word is cyclically
    /// reduced first.
    pub fn is_trivial(&self, w: &Word) -> Result<bool, SolverError> {
        self.check(w)?;
        Ok(self.normal_form(&w.cyclic_reduce())?.trivial)
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> Result<bool, SolverError> {
        self.is_trivial(&u.concat(&v.inverse()))
    }
}

/// Generators and relators (as `lhs · rhs^{-1}` words) as JSON.
pub fn emit_presentation(spec: &SurfaceSpec, level: PresentationLevel) -> Value {
    let gens: Vec<String> = generators(spec, level).iter().map(Gen::to_string).collect();
    let rels: Vec<Vec<String>> = relators(spec, level).iter().map(Word::tokens).collect();
    json!({ "generators": gens, "relators": rels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn solver(orientable: bool, g: u32, n: u32) -> Solver {
        Solver::new(SurfaceSpec::new(orientable, g, n).unwrap())
    }

    #[test]
    fn normal_form_examples() {
        let s = solver(true, 1, 2);
        let r = s.normal_form(&w("s1 s1")).unwrap();
        assert_eq!(r.combed.levels, vec![w("a[1,1] a[1,2] a[1,1]^-1 a[1,2]^-1"), w("")]);
        assert_eq!(r.combed.perm_word, w(""));
        let r = s.normal_form(&w("s1")).unwrap();
        assert_eq!(r.combed.levels, vec![w(""), w("")]);
        assert_eq!(r.combed.perm_word, w("s1"));
        assert!(!r.trivial);
    }

    #[test]
    fn triviality_examples() {
        let s = solver(true, 1, 2);
        assert!(s.is_trivial(&w("")).unwrap());
        assert!(!s.is_trivial(&w("a1")).unwrap());
        assert!(s.is_trivial(&w("a1 a2 a1^-1 a2^-1 s1^-2")).unwrap());
    }

    #[test]
    fn equality_examples() {
        let s = solver(true, 1, 1);
        assert!(s.are_equal(&w("a1 a2"), &w("a2 a1")).unwrap());
        assert!(!s.are_equal(&w("a1"), &w("a2")).unwrap());
        let word = w("a1 a2^-1");
        assert!(s.are_equal(&word, &word).unwrap());
    }

    #[test]
    fn presentation_counts() {
        let p = emit_presentation(&SurfaceSpec::orientable(1, 1).unwrap(), PresentationLevel::Pure);
        assert_eq!((p["generators"].as_array().unwrap().len(), p["relators"].as_array().unwrap().len()), (2, 1));
        let p = emit_presentation(&SurfaceSpec::orientable(1, 2).unwrap(), PresentationLevel::Theorem);
        assert_eq!(p["generators"].as_array().unwrap().len(), 3);
        let p = emit_presentation(&SurfaceSpec::non_orientable(2, 2).unwrap(), PresentationLevel::Theorem);
        assert_eq!(p["generators"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn budget_aborts() {
        let s = solver(true, 2, 4).with_max_steps(3);
        let err = s.normal_form(&w("a1 s1 a2 s2 a3 s3 a4 s1 a1")).unwrap_err();
        assert!(matches!(err, SolverError::StepBudget { limit: 3 }));
    }

    #[test]
    fn band_letters_are_accepted() {
        let s = solver(true, 2, 3);
        let band = band_definition(s.spec(), 3, 2).unwrap();
        assert!(s.are_equal(&w("A[3,2]"), &band).unwrap());
    }
}
