//! Canonical forms at the last level, inside the closed surface group.
//!
//! The last level is a word over `A_{n,·}` and lives in `π_1(M)`, a
//! one-relator group. Rewriting it is only legal up to the relator, and in
//! the braid group the relator equals the loop word
//! `C = ∏ T_{i,n-1}^{-1} T_{i,n}`. Every rewrite therefore emits a
//! correction word over the lower strands.
//!
//! Words are built by [`Prefix`], which appends one letter at a time and
//! keeps the word canonical as it grows: Torus and Klein bottle levels get
//! an exact normal form, all other surfaces are kept Dehn-reduced. The same
//! structure, without a relator, serves the free levels below.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::combing::{normal_word, Budget, CombStats};
use crate::conj::Dictionary;
use crate::error::SolverError;
use crate::presentations::{change_of_generators, surface_correction, Direction};
use crate::words::{Gen, Letter, SurfaceSpec, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelMethod {
    Dehn,
    Torus,
    Klein,
}

/// Klein bottle basis `x = A_{n,1} A_{n,2}`, `y = A_{n,2}`; strand index 0
/// marks these as basis symbols rather than braid generators.
const KLEIN_X: Gen = Gen::ABand(0, 1);
const KLEIN_Y: Gen = Gen::ABand(0, 2);

/// A cyclic rotation `ρ = q p` of `R^ε = p q`.
#[derive(Clone, Debug)]
struct Rotation {
    prefix: Word,
    suffix: Word,
    positive: bool,
}

/// The level relator in the rewriting basis together with the loop word
/// it equals in the braid group.
#[derive(Debug)]
pub struct SurfaceRelator {
    pub method: LevelMethod,
    /// Relator over the rewriting basis.
    pub relator: Word,
    /// Loop word equal to `relator` in the braid group (contains `T_{i,n}`).
    pub correction: Word,
    to_band: HashMap<Gen, Word>,
    from_band: HashMap<Gen, Word>,
    rotations: HashMap<Word, Rotation>,
    cyclic: Vec<Vec<Letter>>,
    /// Rotation -> conjugate of `C^ε` it stands for, over lower strands
    /// with `T_{i,n}` kept.
    rotation_corrections: RwLock<HashMap<Word, Word>>,
}

/// The level-`n` surface relation rewritten over `A_{n,·}`.
pub fn band_relator(spec: &SurfaceSpec) -> Word {
    let n = spec.strands;
    let h = spec.handles();
    let lhs: Word = if spec.orientable {
        (1..=h)
            .map(|r| Letter::neg(Gen::AStrand(n, r)))
            .chain((1..=h).map(|r| Letter::pos(Gen::AStrand(n, r))))
            .collect()
    } else {
        (1..=h).flat_map(|r| [Letter::pos(Gen::AStrand(n, r)); 2]).collect()
    };
    let table = change_of_generators(spec, n, Direction::BandToA);
    lhs.substitute(&table).expect("table covers strand n").free_reduce()
}

impl SurfaceRelator {
    pub fn new(spec: &SurfaceSpec) -> Self {
        let n = spec.strands;
        let band = |r: u32| Word::gen(Gen::ABand(n, r));
        let method = match (spec.orientable, spec.genus) {
            (true, 1) => LevelMethod::Torus,
            (false, 2) => LevelMethod::Klein,
            _ => LevelMethod::Dehn,
        };
        let rel_a = band_relator(spec);
        let c = surface_correction(n);
        let (relator, correction, to_band, from_band) = if method == LevelMethod::Klein {
            let to_band: HashMap<Gen, Word> = [(KLEIN_X, band(1).concat(&band(2))), (KLEIN_Y, band(2))].into();
            let mut a1 = Word::gen(KLEIN_X);
            a1.push(Letter::neg(KLEIN_Y));
            let from_band: HashMap<Gen, Word> =
                [(Gen::ABand(n, 1), a1), (Gen::ABand(n, 2), Word::gen(KLEIN_Y))].into();
            let rel_b = rel_a.substitute(&from_band).expect("klein basis").free_reduce().inverse();
            // rel_b maps back onto rel_a^{-1}, so it equals C^{-1}
            debug_assert_eq!(rel_b.substitute(&to_band).unwrap().free_reduce(), rel_a.inverse());
            (rel_b, c.inverse(), to_band, from_band)
        } else {
            let id: HashMap<Gen, Word> = (1..=spec.handles()).map(|r| (Gen::ABand(n, r), band(r))).collect();
            (rel_a, c, id.clone(), id)
        };
        let mut rotations = HashMap::new();
        let mut cyclic = Vec::new();
        for positive in [true, false] {
            let r = if positive { relator.clone() } else { relator.inverse() };
            let ls = r.letters();
            for k in 0..ls.len() {
                let rho: Vec<Letter> = ls[k..].iter().chain(&ls[..k]).copied().collect();
                cyclic.push(rho.clone());
                let rot = Rotation {
                    prefix: Word::from_letters(ls[..k].to_vec()),
                    suffix: Word::from_letters(ls[k..].to_vec()),
                    positive,
                };
                rotations.entry(Word::from_letters(rho)).or_insert(rot);
            }
        }
        Self {
            method,
            relator,
            correction,
            to_band,
            from_band,
            rotations,
            cyclic,
            rotation_corrections: RwLock::new(HashMap::new()),
        }
    }

    pub fn to_band_word(&self, w: &Word) -> Word {
        w.substitute_with(|g| self.to_band.get(&g).cloned()).free_reduce()
    }

    pub fn from_band_word(&self, w: &Word) -> Word {
        w.substitute_with(|g| self.from_band.get(&g).cloned()).free_reduce()
    }

    /// For `ρ = p^{-1} R^ε p`, the word `p^{-1} C^ε p` over lower strands.
    /// Since `R = C`, conjugating by `q = p^{-1} R^ε` gives the same element,
    /// and the shorter of the two conjugators is used.
    fn rotation_correction(&self, rho: &Word, dict: &Dictionary) -> Result<Word, SolverError> {
        if let Some(w) = self.rotation_corrections.read().expect("rotation lock").get(rho) {
            return Ok(w.clone());
        }
        let rot = self.rotations.get(rho).unwrap_or_else(|| panic!("{rho} is not a relator rotation"));
        let conjugator =
            if 2 * rot.prefix.len() <= self.relator.len() { rot.prefix.inverse() } else { rot.suffix.clone() };
        let c = if rot.positive { self.correction.clone() } else { self.correction.inverse() };
        let w = dict.conj_band_word_formal(&self.to_band_word(&conjugator), &c)?;
        self.rotation_corrections.write().expect("rotation lock").insert(rho.clone(), w.clone());
        Ok(w)
    }
}

/// Lower words at least this long are put in normal form before they are
/// conjugated out of a closing frame.
const NORMALIZE_AT: usize = 24;
/// Step allowance per letter for that attempt.
const NORMALIZE_EFFORT: u64 = 64;

/// A strand-`m` letter of the level word and the product of the lower
/// letters met while it was the last letter, relative to the prefix up to
/// and including it.
struct Frame {
    letter: Letter,
    lower: Word,
}

/// A level word built letter by letter, as a path of frames. Lower letters
/// join the innermost frame; when a frame closes (its letter cancels, or
/// the word is finished) its product is conjugated by that one letter into
/// the enclosing frame. Lower letters that cancel inside an excursion are
/// thus never conjugated at all.
///
/// Conjugation keeps `T_{i,n}` as a letter: each strand then stays in its
/// own free group, where conjugation is an automorphism, instead of
/// spilling onto lower strands through the elimination of `T_{i,n}`.
/// Combing eliminates `T_{m,n}` only when it reaches level `m`.
pub struct Prefix<'a> {
    dict: Option<&'a Dictionary>,
    rel: Option<&'a SurfaceRelator>,
    level: u32,
    root: Word,
    frames: Vec<Frame>,
    pub moves: u64,
    pub conjugated: u64,
}

impl<'a> Prefix<'a> {
    /// Without a dictionary lower letters are dropped; without a relator
    /// the level is free.
    pub fn new(dict: Option<&'a Dictionary>, rel: Option<&'a SurfaceRelator>, level: u32) -> Self {
        Self { dict, rel, level, root: Word::new(), frames: Vec::new(), moves: 0, conjugated: 0 }
    }

    fn letters(&self) -> Vec<Letter> {
        self.frames.iter().map(|f| f.letter).collect()
    }

    fn innermost(&mut self) -> &mut Word {
        match self.frames.last_mut() {
            Some(f) => &mut f.lower,
            None => &mut self.root,
        }
    }

    pub fn push_lower(&mut self, w: &Word) {
        if self.dict.is_some() {
            self.innermost().append_reduced(w);
        }
    }

    fn close_frame(&mut self, budget: &mut Budget) -> Result<(), SolverError> {
        let mut f = self.frames.pop().expect("open frame");
        if let (Some(dict), false) = (self.dict, f.lower.is_empty()) {
            if f.lower.len() >= NORMALIZE_AT && self.level > 1 {
                // drop whatever the lower relations already cancel before the
                // word is conjugated outwards; normal forms can also be much
                // longer than the word, so the attempt is capped and only
                // kept when it shrinks
                let cap = NORMALIZE_EFFORT * f.lower.len() as u64;
                let mut trial = Budget::new(cap.min(budget.remaining()));
                let mut stats = CombStats::default();
                let normal = normal_word(&f.lower, self.level - 1, dict, &mut trial, &mut stats);
                budget.spend(trial.used.min(cap))?;
                if let Ok(normal) = normal {
                    if normal.len() < f.lower.len() {
                        f.lower = normal;
                    }
                }
                if f.lower.is_empty() {
                    return Ok(());
                }
            }
            let conjugator = match self.rel {
                Some(rel) => rel.to_band_word(&Word::letter(f.letter)),
                None => Word::letter(f.letter),
            };
            let moved = dict.conj_band_word_formal(&conjugator, &f.lower)?;
            self.conjugated += f.lower.len() as u64;
            budget.spend(f.lower.len() as u64 + moved.len() as u64)?;
            self.innermost().append_reduced(&moved);
        }
        Ok(())
    }

    fn push_raw(&mut self, b: Letter, budget: &mut Budget) -> Result<(), SolverError> {
        if self.frames.last().is_some_and(|f| f.letter.cancels(b)) {
            self.close_frame(budget)
        } else {
            self.frames.push(Frame { letter: b, lower: Word::new() });
            Ok(())
        }
    }

    /// Appends a band letter, keeping the word reduced and canonical.
    pub fn push_band(&mut self, l: Letter, budget: &mut Budget) -> Result<(), SolverError> {
        let basis = match self.rel {
            Some(rel) => rel.from_band_word(&Word::letter(l)),
            None => Word::letter(l),
        };
        for &b in basis.letters() {
            let before = self.frames.len();
            self.push_raw(b, budget)?;
            if let (Some(rel), true) = (self.rel, self.frames.len() > before) {
                let from = self.frames.len().saturating_sub(rel.relator.len());
                self.canonicalize(rel, from, budget)?;
            }
        }
        Ok(())
    }

    /// Closes every frame; returns `(lower, level)` with the pushed word
    /// equal to `lower · level`.
    pub fn finish(mut self, budget: &mut Budget) -> Result<(Word, Word), SolverError> {
        let w = Word::from_letters(self.letters());
        let level = match self.rel {
            Some(rel) => rel.to_band_word(&w),
            None => w,
        };
        while !self.frames.is_empty() {
            self.close_frame(budget)?;
        }
        Ok((self.root, level))
    }

    fn canonicalize(&mut self, rel: &SurfaceRelator, mut from: usize, budget: &mut Budget) -> Result<(), SolverError> {
        loop {
            let word = self.letters();
            let hit = match rel.method {
                LevelMethod::Dehn => find_dehn(&word, rel, from),
                LevelMethod::Torus => {
                    let n = word.iter().find_map(|l| match l.gen {
                        Gen::ABand(n, _) => Some(n),
                        _ => None,
                    });
                    n.and_then(|n| find_swap(&word, from, Gen::ABand(n, 2), Gen::ABand(n, 1), false))
                }
                LevelMethod::Klein => find_swap(&word, from, KLEIN_Y, KLEIN_X, true),
            };
            let Some((start, len, gamma)) = hit else { return Ok(()) };
            let d = self.replace(rel, &word, start, len, &gamma, budget)?;
            from = d.saturating_sub(rel.relator.len());
        }
    }

    /// Replaces `word[start..start+len]` by `gamma`; the old subword times
    /// `gamma^{-1}` is a relator rotation, whose correction joins the frame
    /// at `start`. Returns the first changed index.
    fn replace(
        &mut self,
        rel: &SurfaceRelator,
        word: &[Letter],
        start: usize,
        len: usize,
        gamma: &Word,
        budget: &mut Budget,
    ) -> Result<usize, SolverError> {
        self.moves += 1;
        let alpha = Word::from_letters(word[start..start + len].to_vec());
        let rho = alpha.concat(&gamma.inverse());
        while self.frames.len() > start {
            self.close_frame(budget)?;
        }
        if let Some(dict) = self.dict {
            let corr = rel.rotation_correction(&rho, dict)?;
            budget.spend(corr.len() as u64)?;
            self.push_lower(&corr);
        }
        for &b in gamma.letters().iter().chain(&word[start + len..]) {
            self.push_raw(b, budget)?;
        }
        let next = self.letters();
        Ok(word.iter().zip(&next).take_while(|(a, b)| a == b).count())
    }
}

/// Leftmost subword longer than half a relator rotation.
fn find_dehn(word: &[Letter], rel: &SurfaceRelator, from: usize) -> Option<(usize, usize, Word)> {
    let r = rel.relator.len();
    for start in from..word.len() {
        for rho in &rel.cyclic {
            let l = word[start..].iter().zip(rho).take_while(|(a, b)| a == b).count();
            if 2 * l > r {
                return Some((start, l, Word::from_letters(rho[l..].to_vec()).inverse()));
            }
        }
    }
    None
}

/// Leftmost `movable fixed` pair; it becomes `fixed movable`, with the
/// fixed letter inverted when `twist` is set (`y x^f = x^{-f} y`).
fn find_swap(word: &[Letter], from: usize, movable: Gen, fixed: Gen, twist: bool) -> Option<(usize, usize, Word)> {
    let k = (from..word.len().saturating_sub(1)).find(|&k| word[k].gen == movable && word[k + 1].gen == fixed)?;
    let moved = if twist { word[k + 1].inverse() } else { word[k + 1] };
    Some((k, 2, Word::from_letters(vec![moved, word[k]])))
}

/// Canonical form of a word over `A_{n,·}`: returns `(lower, out, moves)`
/// with `y = lower · out` in the braid group, `lower` a word over the lower
/// strands (possibly containing `T_{i,n}`).
pub fn canonicalize_level_n(y: &Word, dict: &Dictionary) -> Result<(Word, Word, u64), SolverError> {
    let rel = SurfaceRelator::new(dict.spec());
    let mut pre = Prefix::new(Some(dict), Some(&rel), dict.spec().strands);
    let mut budget = Budget::new(u64::MAX);
    for &l in y.letters() {
        pre.push_band(l, &mut budget)?;
    }
    let moves = pre.moves;
    let (lower, out) = pre.finish(&mut budget)?;
    Ok((lower, out, moves))
}

/// Triviality in `π_1(M)` of a word over `A_{n,·}`.
pub fn is_trivial_pi1(y: &Word, spec: &SurfaceSpec) -> bool {
    let rel = SurfaceRelator::new(spec);
    let mut pre = Prefix::new(None, Some(&rel), spec.strands);
    let mut budget = Budget::new(u64::MAX);
    for &l in y.letters() {
        pre.push_band(l, &mut budget).expect("nothing is tracked");
    }
    pre.finish(&mut budget).expect("nothing is tracked").1.is_empty()
}
