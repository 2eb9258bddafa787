//! Conjugation tables: how `σ_i` and the upper-strand generators act on the
//! generators of lower strands.
//!
//! The crossing rules are closed formulas. The band rules come from the
//! pure relations: for a conjugator `y` on strand `j` and a target on
//! strand `i < j`, conjugation by `y` is an automorphism of the free group
//! on `a_{i,1..G}, T_{i,i+1..n}`. Positive conjugators use the formulas
//! directly; negative ones use the inverse automorphism, found by Nielsen
//! reduction of the image tuple.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::presentations::{t_last_word, t_loop};
use crate::words::{Gen, Letter, SurfaceSpec, Word};

/// `conjugator · target · conjugator^{-1} = result`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjRule {
    pub conjugator: Letter,
    pub target: Letter,
    pub result: Word,
}

fn pos(g: Gen) -> Letter {
    Letter::pos(g)
}

fn neg(g: Gen) -> Letter {
    Letter::neg(g)
}

/// `σ_i · x · σ_i^{-1}` for a pure letter `x`, freely reduced with
/// `T_{i,i}` erased.
pub fn sigma_conj(i: u32, x: Letter, spec: &SurfaceSpec) -> Word {
    let image = sigma_conj_positive(i, x.gen.canonical(), spec);
    if x.inv {
        image.inverse()
    } else {
        image
    }
}

fn sigma_conj_positive(i: u32, g: Gen, spec: &SurfaceSpec) -> Word {
    let t_ii1 = Gen::TLoop(i, i + 1);
    let out: Vec<Letter> = match g {
        Gen::AStrand(j, r) if j == i => {
            if !spec.orientable {
                vec![pos(t_ii1), pos(Gen::AStrand(i + 1, r)), neg(t_ii1)]
            } else if r % 2 == 0 {
                vec![pos(Gen::AStrand(i + 1, r)), neg(t_ii1)]
            } else {
                vec![pos(t_ii1), pos(Gen::AStrand(i + 1, r))]
            }
        }
        Gen::AStrand(j, r) if j == i + 1 => {
            if !spec.orientable {
                vec![pos(Gen::AStrand(i, r))]
            } else if r % 2 == 0 {
                vec![pos(t_ii1), pos(Gen::AStrand(i, r))]
            } else {
                vec![pos(Gen::AStrand(i, r)), neg(t_ii1)]
            }
        }
        Gen::TLoop(j, k) if j == i + 1 => {
            let mut w = Word::gen(Gen::TLoop(i, k));
            w.push(neg(t_ii1));
            return w;
        }
        Gen::TLoop(j, k) if j == i => {
            let mut w = Word::gen(t_ii1);
            w.extend_from(&t_loop(i + 1, k));
            return w.free_reduce();
        }
        Gen::TLoop(j, k) if k == i => {
            let mut w = t_loop(j, i - 1);
            w.push(neg(Gen::TLoop(j, i)));
            w.push(pos(Gen::TLoop(j, i + 1)));
            return w.free_reduce();
        }
        Gen::AStrand(..) | Gen::TLoop(..) => vec![pos(g)],
        Gen::Sigma(_) | Gen::A1(_) | Gen::ABand(..) => {
            panic!("sigma_conj: {g} is not a strand or loop generator")
        }
    };
    Word::from_letters(out)
}

/// `σ_i^{-1} · x · σ_i`, the inverse of [`sigma_conj`], solved from the
/// positive table using that `σ_i` commutes with `T_{i,i+1}`.
pub fn sigma_unconj(i: u32, x: Letter, spec: &SurfaceSpec) -> Word {
    let image = sigma_unconj_positive(i, x.gen.canonical(), spec).free_reduce();
    if x.inv {
        image.inverse()
    } else {
        image
    }
}

fn sigma_unconj_positive(i: u32, g: Gen, spec: &SurfaceSpec) -> Word {
    let t_ii1 = Gen::TLoop(i, i + 1);
    let out: Vec<Letter> = match g {
        Gen::AStrand(j, r) if j == i => {
            if !spec.orientable {
                vec![pos(Gen::AStrand(i + 1, r))]
            } else if r % 2 == 0 {
                vec![neg(t_ii1), pos(Gen::AStrand(i + 1, r))]
            } else {
                vec![pos(Gen::AStrand(i + 1, r)), pos(t_ii1)]
            }
        }
        Gen::AStrand(j, r) if j == i + 1 => {
            if !spec.orientable {
                vec![neg(t_ii1), pos(Gen::AStrand(i, r)), pos(t_ii1)]
            } else if r % 2 == 0 {
                vec![pos(Gen::AStrand(i, r)), pos(t_ii1)]
            } else {
                vec![neg(t_ii1), pos(Gen::AStrand(i, r))]
            }
        }
        Gen::TLoop(j, k) if j == i => {
            let mut w = t_loop(i + 1, k);
            w.push(pos(t_ii1));
            return w;
        }
        Gen::TLoop(j, k) if j == i + 1 => vec![neg(t_ii1), pos(Gen::TLoop(i, k))],
        Gen::TLoop(j, k) if k == i => {
            let mut w = Word::gen(Gen::TLoop(j, i + 1));
            w.push(neg(Gen::TLoop(j, i)));
            w.extend_from(&t_loop(j, i - 1));
            return w;
        }
        Gen::AStrand(..) | Gen::TLoop(..) => vec![pos(g)],
        Gen::Sigma(_) | Gen::A1(_) | Gen::ABand(..) => {
            panic!("sigma_unconj: {g} is not a strand or loop generator")
        }
    };
    Word::from_letters(out)
}

/// `u · x · u^{-1}` for a positive crossing word `u`, folding the table from
/// the last letter of `u` outwards.
pub fn conj_word(u: &Word, x: &Word, spec: &SurfaceSpec) -> Word {
    let mut cur = x.free_reduce();
    for l in u.letters().iter().rev() {
        let i = match (l.gen, l.inv) {
            (Gen::Sigma(i), false) => i,
            _ => panic!("conj_word: conjugator letter {l} is not a positive crossing"),
        };
        let mut next = Word::new();
        for &x in cur.letters() {
            next.append_reduced(&sigma_conj(i, x, spec));
        }
        cur = next;
    }
    cur
}

/// Replaces every `T_{j,n}^{±1}` by its expression over lower letters and
/// free-reduces.
pub fn eliminate_tn(w: &Word, spec: &SurfaceSpec) -> Word {
    let n = spec.strands;
    let mut out = Word::new();
    for &l in w.letters() {
        match l.gen {
            Gen::TLoop(j, k) if k == n => {
                let rep = t_last_word(spec, j);
                out.append_reduced(&if l.inv { rep.inverse() } else { rep });
            }
            _ => out.push_reduced(l),
        }
    }
    out
}

/// Replaces `T_{j,n}^{±1}` for the single strand `j`.
pub fn eliminate_tn_strand(w: &Word, spec: &SurfaceSpec, j: u32) -> Word {
    let n = spec.strands;
    let rep = t_last_word(spec, j);
    let mut out = Word::new();
    for &l in w.letters() {
        if l.gen == Gen::TLoop(j, n) && j < n {
            out.append_reduced(&if l.inv { rep.inverse() } else { rep.clone() });
        } else {
            out.push_reduced(l);
        }
    }
    out
}

/// Strand of a lower-level target letter, if it is a strand or loop letter.
fn target_strand(g: Gen) -> Option<u32> {
    match g.canonical() {
        Gen::AStrand(i, _) | Gen::TLoop(i, _) => Some(i),
        _ => None,
    }
}

/// An automorphism of the free group on the strand-`i` generators,
/// given by the images of the generators.
#[derive(Clone, Debug)]
struct FormalMap {
    images: HashMap<Gen, Word>,
}

impl FormalMap {
    fn apply(&self, w: &Word) -> Word {
        let mut out = Word::new();
        for &l in w.letters() {
            match self.images.get(&l.gen) {
                Some(img) if l.inv => out.append_reduced(&img.inverse()),
                Some(img) => out.append_reduced(img),
                None => out.push_reduced(l),
            }
        }
        out
    }
}

fn strand_generators(spec: &SurfaceSpec, i: u32) -> Vec<Gen> {
    (1..=spec.handles())
        .map(|r| Gen::AStrand(i, r))
        .chain((i + 1..=spec.strands).map(|l| Gen::TLoop(i, l)))
        .collect()
}

/// Images of the strand-`i` generators under conjugation by the positive
/// letter `y` living on a higher strand.
fn positive_map(spec: &SurfaceSpec, y: Gen, i: u32) -> FormalMap {
    let h = spec.handles();
    let a = |r: u32| Gen::AStrand(i, r);
    let mut images = HashMap::new();
    match y {
        Gen::ABand(j, s) => {
            let mut p = Word::new();
            for t in 1..s {
                p.push(pos(a(t)));
                if !spec.orientable {
                    p.push(pos(a(t)));
                }
            }
            for r in 1..=h {
                let img = if r == s {
                    let mut w = p.inverse();
                    w.extend_from(&t_loop(i, j - 1));
                    w.extend_from(&t_loop(i, j).inverse());
                    w.extend_from(&p);
                    w.push(pos(a(s)));
                    w.free_reduce()
                } else {
                    Word::gen(a(r))
                };
                images.insert(a(r), img);
            }
            extend_to_loops(spec, i, j, &mut images);
        }
        Gen::TLoop(j, k) => {
            for r in 1..=h {
                images.insert(a(r), Word::gen(a(r)));
            }
            for l in i + 1..=spec.strands {
                let img = if l >= j && l < k {
                    let mut w = t_loop(i, j - 1);
                    w.extend_from(&t_loop(i, j).inverse());
                    w.push(pos(Gen::TLoop(i, l)));
                    w.extend_from(&t_loop(i, k).inverse());
                    w.extend_from(&t_loop(i, j));
                    w.extend_from(&t_loop(i, j - 1).inverse());
                    w.extend_from(&t_loop(i, k));
                    w.free_reduce()
                } else {
                    Word::gen(Gen::TLoop(i, l))
                };
                images.insert(Gen::TLoop(i, l), img);
            }
        }
        _ => unreachable!("positive_map called with {y}"),
    }
    FormalMap { images }
}

/// Completes a band map given on `a_{i,·}`: loops `T_{i,l}` with `l < j`
/// are fixed, the others are determined by the element of PR7/Pr7 that
/// commutes with strand `j`.
fn extend_to_loops(spec: &SurfaceSpec, i: u32, j: u32, images: &mut HashMap<Gen, Word>) {
    let h = spec.handles();
    let a = |r: u32| Gen::AStrand(i, r);
    let on_a = FormalMap { images: images.clone() };
    for l in i + 1..=spec.strands {
        let t = Word::gen(Gen::TLoop(i, l));
        let img = if l < j {
            t
        } else if spec.orientable {
            // a_{i,2g}^{-1}...a_{i,1}^{-1} T a_{i,2g}...a_{i,1} is fixed
            let q1: Word = (1..=h).map(|r| pos(a(r))).collect();
            let q2: Word = (1..=h).rev().map(|r| pos(a(r))).collect();
            let mut w = on_a.apply(&q1);
            w.extend_from(&q1.inverse());
            w.extend_from(&t);
            w.extend_from(&q2);
            w.extend_from(&on_a.apply(&q2).inverse());
            w.free_reduce()
        } else {
            // a_{i,g}^{-2}...a_{i,1}^{-2} T is fixed
            let q: Word = (1..=h).flat_map(|r| [pos(a(r)), pos(a(r))]).collect();
            let mut w = on_a.apply(&q);
            w.extend_from(&q.inverse());
            w.extend_from(&t);
            w.free_reduce()
        };
        images.insert(Gen::TLoop(i, l), img);
    }
}

/// Conjugation of the strand-`i` generators by `A_{j,s}^{-1}`, solved in
/// closed form from the same relations as the positive map.
fn inverse_band_map(spec: &SurfaceSpec, j: u32, s: u32, i: u32) -> FormalMap {
    let h = spec.handles();
    let a = |r: u32| Gen::AStrand(i, r);
    let mut images = HashMap::new();
    let mut d_inv = t_loop(i, j - 1).inverse();
    d_inv.extend_from(&t_loop(i, j));
    let img = if spec.orientable {
        // R^{-1} T_{i,j-1}^{-1} T_{i,j} R a_{i,s}, R = a_{i,2g}...a_{i,s+1}
        let r: Word = (s + 1..=h).rev().map(|t| pos(a(t))).collect();
        let mut w = r.inverse();
        w.extend_from(&d_inv);
        w.extend_from(&r);
        w.push(pos(a(s)));
        w
    } else {
        // a_{i,s}^{-1} P^{-1} T_{i,j-1} T_{i,j}^{-1} P a_{i,s}^2, P = a_{i,1}^2...a_{i,s-1}^2
        let p: Word = (1..s).flat_map(|t| [pos(a(t)), pos(a(t))]).collect();
        let mut w = Word::letter(neg(a(s)));
        w.extend_from(&p.inverse());
        w.extend_from(&t_loop(i, j - 1));
        w.extend_from(&t_loop(i, j).inverse());
        w.extend_from(&p);
        w.push(pos(a(s)));
        w.push(pos(a(s)));
        w
    };
    for r in 1..=h {
        images.insert(a(r), if r == s { img.free_reduce() } else { Word::gen(a(r)) });
    }
    extend_to_loops(spec, i, j, &mut images);
    FormalMap { images }
}

/// Inverts a free-group automorphism by Nielsen reduction: each entry keeps
/// a word `track` over the generators with `map(track) = current`, and
/// entries are shortened by multiplying with other entries until every
/// entry is a single letter.
fn invert_map(map: &FormalMap, gens: &[Gen]) -> Option<FormalMap> {
    let mut cur: Vec<Word> = gens.iter().map(|g| map.images[g].clone()).collect();
    let mut track: Vec<Word> = gens.iter().map(|&g| Word::gen(g)).collect();
    let limit = 10_000;
    for _ in 0..limit {
        if cur.iter().all(|w| w.len() == 1) {
            let mut images = HashMap::new();
            for (w, t) in cur.iter().zip(&track) {
                let l = w.letters()[0];
                let pre = if l.inv { t.inverse() } else { t.clone() };
                images.insert(l.gen, pre);
            }
            return (images.len() == gens.len()).then_some(FormalMap { images });
        }
        let mut best: Option<(usize, usize, bool, bool, usize)> = None;
        for k in 0..cur.len() {
            for l in 0..cur.len() {
                if k == l {
                    continue;
                }
                for &left in &[false, true] {
                    for &inv in &[false, true] {
                        let other = if inv { cur[l].inverse() } else { cur[l].clone() };
                        let cand = if left { other.concat(&cur[k]) } else { cur[k].concat(&other) };
                        let len = cand.free_reduce().len();
                        if len < cur[k].len() {
                            let gain = cur[k].len() - len;
                            if best.is_none_or(|b| gain > b.4) {
                                best = Some((k, l, left, inv, gain));
                            }
                        }
                    }
                }
            }
        }
        let (k, l, left, inv, _) = best?;
        let (ol, tl) = if inv {
            (cur[l].inverse(), track[l].inverse())
        } else {
            (cur[l].clone(), track[l].clone())
        };
        if left {
            cur[k] = ol.concat(&cur[k]).free_reduce();
            track[k] = tl.concat(&track[k]).free_reduce();
        } else {
            cur[k] = cur[k].concat(&ol).free_reduce();
            track[k] = track[k].concat(&tl).free_reduce();
        }
    }
    None
}

/// Memoized conjugation rules for one surface.
#[derive(Debug)]
pub struct Dictionary {
    spec: SurfaceSpec,
    maps: RwLock<HashMap<(Letter, u32), Arc<FormalMap>>>,
    memo: RwLock<HashMap<(Letter, Letter), Word>>,
}

impl Dictionary {
    pub fn new(spec: SurfaceSpec) -> Self {
        Self { spec, maps: RwLock::new(HashMap::new()), memo: RwLock::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    fn check_conjugator(&self, y: Letter) -> Result<u32, SolverError> {
        let bad = |reason: &str| SolverError::Letter { pos: 0, letter: y.to_string(), reason: reason.into() };
        let j = match y.gen {
            Gen::ABand(j, _) => j,
            Gen::TLoop(j, _) => j,
            _ => return Err(bad("band conjugators are A[j,r] or T[j,k]")),
        };
        self.spec.check(y.gen).map_err(|m| bad(&m))?;
        Ok(j)
    }

    fn formal_map(&self, y: Letter, i: u32) -> Arc<FormalMap> {
        if let Some(m) = self.maps.read().expect("conj map lock").get(&(y, i)) {
            return m.clone();
        }
        let positive = positive_map(&self.spec, y.gen, i);
        let map = if let (true, Gen::ABand(j, s)) = (y.inv, y.gen) {
            inverse_band_map(&self.spec, j, s, i)
        } else if y.inv {
            let gens = strand_generators(&self.spec, i);
            invert_map(&positive, &gens)
                .unwrap_or_else(|| panic!("conjugation by {} on strand {i} did not invert", y.inverse()))
        } else {
            positive
        };
        let map = Arc::new(map);
        self.maps.write().expect("conj map lock").insert((y, i), map.clone());
        map
    }

    /// `y · x · y^{-1}` as a word over strand-`i` letters, possibly
    /// containing `T_{i,n}`; `x` must sit on a strand below `y`.
    pub fn band_conj(&self, y: Letter, x: Letter) -> Result<Word, SolverError> {
        let j = self.check_conjugator(y)?;
        let x = Letter { gen: x.gen.canonical(), inv: x.inv };
        let i = match target_strand(x.gen) {
            Some(i) if i < j => i,
            _ => {
                return Err(SolverError::IndexDiscipline { conjugator: y.to_string(), target: x.to_string() });
            }
        };
        let map = self.formal_map(y, i);
        Ok(map.apply(&Word::letter(x)))
    }

    /// [`band_conj`](Self::band_conj) followed by elimination of `T_{·,n}`;
    /// memoized.
    pub fn transport(&self, y: Letter, x: Letter) -> Result<Word, SolverError> {
        if let Some(w) = self.memo.read().expect("conj memo lock").get(&(y, x)) {
            return Ok(w.clone());
        }
        let w = eliminate_tn(&self.band_conj(y, x)?, &self.spec);
        self.memo.write().expect("conj memo lock").insert((y, x), w.clone());
        Ok(w)
    }

    /// `y · w · y^{-1}`, letter by letter, reduced and `T_{·,n}`-free.
    pub fn conj_letter_word(&self, y: Letter, w: &Word) -> Result<Word, SolverError> {
        let mut out = Word::new();
        for &x in w.letters() {
            out.append_reduced(&self.transport(y, x)?);
        }
        Ok(out)
    }

    /// `u · w · u^{-1}` for a word `u` of upper-strand letters.
    pub fn conj_band_word(&self, u: &Word, w: &Word) -> Result<Word, SolverError> {
        let mut cur = w.clone();
        for &y in u.letters().iter().rev() {
            cur = self.conj_letter_word(y, &cur)?;
        }
        Ok(cur)
    }

    /// `u · w · u^{-1}` keeping `T_{·,n}` letters; `w` may contain them.
    pub fn conj_band_word_formal(&self, u: &Word, w: &Word) -> Result<Word, SolverError> {
        let mut cur = w.clone();
        for &y in u.letters().iter().rev() {
            let mut out = Word::new();
            for &x in cur.letters() {
                out.append_reduced(&self.band_conj(y, x)?);
            }
            cur = out;
        }
        Ok(cur)
    }

    /// All crossing and band rules of this surface with positive targets.
    pub fn rules(&self) -> Result<Vec<ConjRule>, SolverError> {
        let spec = self.spec;
        let n = spec.strands;
        let mut out = Vec::new();
        let targets = |below: u32| -> Vec<Gen> { (1..below).flat_map(|i| strand_generators(&spec, i)).collect() };
        let all_pure: Vec<Gen> = (1..=n).flat_map(|i| strand_generators(&spec, i)).collect();
        for i in 1..n {
            for &g in &all_pure {
                out.push(ConjRule {
                    conjugator: pos(Gen::Sigma(i)),
                    target: pos(g),
                    result: sigma_conj(i, pos(g), &spec),
                });
            }
        }
        for j in 2..=n {
            let mut ys: Vec<Gen> = (1..=spec.handles()).map(|r| Gen::ABand(j, r)).collect();
            ys.extend((j + 1..n).map(|k| Gen::TLoop(j, k)));
            for y in ys {
                for inv in [false, true] {
                    let y = Letter { gen: y, inv };
                    for g in targets(j) {
                        if matches!(g, Gen::TLoop(_, l) if l == n) {
                            continue;
                        }
                        out.push(ConjRule { conjugator: y, target: pos(g), result: self.transport(y, pos(g))? });
                    }
                }
            }
        }
        Ok(out)
    }
}
