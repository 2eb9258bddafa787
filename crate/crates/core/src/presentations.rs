//! Generators, relator families and the changes of generators between the
//! theorem alphabet `{σ_i, a_r}`, the pure alphabet `{a_{i,r}, T_{j,k}}` and
//! the band alphabet `{A_{i,r}, T_{j,k}}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WordError;
use crate::words::{Gen, Letter, SurfaceSpec, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationLevel {
    /// Generators `σ_i, a_r` with relations R1-R6 (r1-r6).
    Theorem,
    /// Generators `a_{i,r}, T_{j,k}` with relations PR1-PR8 (Pr1-Pr8).
    Pure,
    /// Theorem relations together with the defining relations of
    /// `a_{i,r}` and `T_{j,k}` (R7-R9, r7-r8).
    Extended,
}

impl FromStr for PresentationLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem" => Ok(Self::Theorem),
            "pure" => Ok(Self::Pure),
            "extended" => Ok(Self::Extended),
            other => Err(format!("unknown presentation level `{other}`")),
        }
    }
}

impl fmt::Display for PresentationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Theorem => "theorem",
            Self::Pure => "pure",
            Self::Extended => "extended",
        })
    }
}

/// One relator instance, tagged with its family name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub family: String,
    pub word: Word,
}

/// Which side of the band change of generators a table expresses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `A_{i,r}` written over `a_{i,·}` (the band definition).
    AToBand,
    /// `a_{i,r}` written over `A_{i,·}` (the inverse formulas).
    BandToA,
}

fn sigma(i: u32) -> Letter {
    Letter::pos(Gen::Sigma(i))
}

fn sigma_inv(i: u32) -> Letter {
    Letter::neg(Gen::Sigma(i))
}

/// `a_{i,r}`, written with the theorem alias when `i = 1` and `theorem` is set.
fn a_letter(i: u32, r: u32, theorem: bool) -> Gen {
    if theorem && i == 1 {
        Gen::A1(r)
    } else {
        Gen::AStrand(i, r)
    }
}

/// `T_{j,k}` as a word; `T_{j,j}` is empty.
pub fn t_loop(j: u32, k: u32) -> Word {
    if j == k {
        Word::new()
    } else {
        Word::gen(Gen::TLoop(j, k))
    }
}

/// `σ_j σ_{j+1} ... σ_{k-2} σ_{k-1}^2 σ_{k-2} ... σ_j`.
pub fn t_loop_sigma_word(j: u32, k: u32) -> Word {
    let mut out = Word::new();
    for i in j..k {
        out.push(sigma(i));
    }
    for i in (j..k).rev() {
        out.push(sigma(i));
    }
    out
}

/// Defining word of the band generator `A_{j,r}` over a chosen letter
/// family: `letter(s)` must produce the generator standing for `a_{j,s}`.
fn band_word(orientable: bool, handles: u32, r: u32, letter: impl Fn(u32) -> Gen) -> Word {
    let mut out = Word::new();
    if orientable {
        for s in 1..r {
            out.push(Letter::pos(letter(s)));
        }
        for s in r + 1..=handles {
            out.push(Letter::neg(letter(s)));
        }
    } else {
        for s in 1..r {
            out.push(Letter::pos(letter(s)));
            out.push(Letter::pos(letter(s)));
        }
        out.push(Letter::neg(letter(r)));
        for s in (1..r).rev() {
            out.push(Letter::neg(letter(s)));
            out.push(Letter::neg(letter(s)));
        }
    }
    out
}

/// The defining word of `A_{j,r}` over `a_{j,·}`.
pub fn band_definition(spec: &SurfaceSpec, j: u32, r: u32) -> Result<Word, WordError> {
    spec.check(Gen::ABand(j, r)).map_err(|message| WordError::Range { pos: 0, message })?;
    Ok(band_word(spec.orientable, spec.handles(), r, |s| Gen::AStrand(j, s)))
}

/// `a_{i,k}` over `A_{i,·}`, inverting the band definition.
fn strand_in_bands(spec: &SurfaceSpec, i: u32, k: u32) -> Word {
    let band = |t: u32, positive: bool| Letter::with_sign(Gen::ABand(i, t), positive);
    let mut out = Word::new();
    if spec.orientable {
        let h = spec.handles();
        for t in 1..k {
            out.push(band(t, t % 2 == 1));
        }
        for t in k + 1..=h {
            out.push(band(t, t % 2 == 0));
        }
        if k.is_multiple_of(2) {
            out = out.inverse();
        }
    } else {
        for t in 1..k {
            out.push(band(t, true));
            out.push(band(t, true));
        }
        out.push(band(k, false));
        for t in (1..k).rev() {
            out.push(band(t, false));
            out.push(band(t, false));
        }
    }
    out
}

/// Substitution table for every `r` at strand `strand`.
pub fn change_of_generators(spec: &SurfaceSpec, strand: u32, direction: Direction) -> HashMap<Gen, Word> {
    (1..=spec.handles())
        .map(|r| match direction {
            Direction::AToBand => (
                Gen::ABand(strand, r),
                band_word(spec.orientable, spec.handles(), r, |s| Gen::AStrand(strand, s)),
            ),
            Direction::BandToA => (Gen::AStrand(strand, r), strand_in_bands(spec, strand, r)),
        })
        .collect()
}

/// `a_{i,r}` over `A_{i,·}` (single entry of the `BandToA` table).
pub fn strand_to_band_word(spec: &SurfaceSpec, i: u32, r: u32) -> Word {
    strand_in_bands(spec, i, r)
}

/// Rewrites `w` over `{σ_i, a_r}` by unfolding the defining relations of
/// `a_{i,r}`, `T_{j,k}` and `A_{j,r}`.
pub fn expand_to_theorem_generators(w: &Word, spec: &SurfaceSpec) -> Word {
    let mut cache: HashMap<Gen, Word> = HashMap::new();
    w.substitute_with(|g| Some(expand_gen(g, spec, &mut cache)))
}

fn expand_gen(g: Gen, spec: &SurfaceSpec, cache: &mut HashMap<Gen, Word>) -> Word {
    if let Some(w) = cache.get(&g) {
        return w.clone();
    }
    let out = match g {
        Gen::Sigma(_) | Gen::A1(_) => Word::gen(g),
        Gen::AStrand(1, r) => Word::gen(Gen::A1(r)),
        Gen::AStrand(i, r) => {
            let inner = expand_gen(Gen::AStrand(i - 1, r), spec, cache);
            let j = i - 1;
            let (left, right) = if !spec.orientable {
                (sigma_inv(j), sigma(j))
            } else if r % 2 == 0 {
                (sigma(j), sigma(j))
            } else {
                (sigma_inv(j), sigma_inv(j))
            };
            let mut w = Word::letter(left);
            w.extend_from(&inner);
            w.push(right);
            w
        }
        Gen::TLoop(j, k) => t_loop_sigma_word(j, k),
        Gen::ABand(j, r) => {
            let def = band_word(spec.orientable, spec.handles(), r, |s| Gen::AStrand(j, s));
            def.substitute_with(|h| Some(expand_gen(h, spec, cache)))
        }
    };
    cache.insert(g, out.clone());
    out
}

/// `A_{2,r}` over the theorem generators, as printed with the theorem
/// presentations (the two orientabilities differ in the final `σ_1` sign).
pub fn theorem_band_two(spec: &SurfaceSpec, r: u32) -> Word {
    let inner = band_word(spec.orientable, spec.handles(), r, Gen::A1);
    let mut w = Word::letter(sigma_inv(1));
    w.extend_from(&inner);
    w.push(if spec.orientable { sigma_inv(1) } else { sigma(1) });
    w
}

fn rel(family: &str, lhs: Word, rhs: &Word) -> Relator {
    Relator { family: family.to_string(), word: lhs.concat(&rhs.inverse()) }
}

fn family(spec: &SurfaceSpec, name: u32) -> String {
    if spec.orientable {
        format!("R{name}")
    } else {
        format!("r{name}")
    }
}

fn pure_family(spec: &SurfaceSpec, name: u32) -> String {
    if spec.orientable {
        format!("PR{name}")
    } else {
        format!("Pr{name}")
    }
}

/// `a_1 ... a_{2g} a_1^{-1} ... a_{2g}^{-1}` (orientable) or
/// `a_1^2 ... a_g^2` (non-orientable) at strand `i`.
pub fn surface_word(spec: &SurfaceSpec, i: u32, theorem: bool) -> Word {
    let h = spec.handles();
    let mut w = Word::new();
    if spec.orientable {
        for r in 1..=h {
            w.push(Letter::pos(a_letter(i, r, theorem)));
        }
        for r in 1..=h {
            w.push(Letter::neg(a_letter(i, r, theorem)));
        }
    } else {
        for r in 1..=h {
            w.push(Letter::pos(a_letter(i, r, theorem)));
            w.push(Letter::pos(a_letter(i, r, theorem)));
        }
    }
    w
}

fn theorem_relators(spec: &SurfaceSpec) -> Vec<Relator> {
    let n = spec.strands;
    let h = spec.handles();
    let a = |r: u32| Letter::pos(Gen::A1(r));
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 2..n {
            out.push(rel(&family(spec, 1), vec![sigma(i), sigma(j)].into(), &vec![sigma(j), sigma(i)].into()));
        }
    }
    for i in 1..n.saturating_sub(1) {
        out.push(rel(
            &family(spec, 2),
            vec![sigma(i), sigma(i + 1), sigma(i)].into(),
            &vec![sigma(i + 1), sigma(i), sigma(i + 1)].into(),
        ));
    }
    let disc_loop = if n >= 2 { t_loop_sigma_word(1, n) } else { Word::new() };
    out.push(rel(&family(spec, 3), surface_word(spec, 1, true), &disc_loop));
    if n >= 2 {
        for r in 1..=h {
            for s in 1..=h {
                if r != s {
                    let band = theorem_band_two(spec, s);
                    let lhs = Word::letter(a(r)).concat(&band);
                    out.push(rel(&family(spec, 4), lhs, &band.concat(&Word::letter(a(r)))));
                }
            }
        }
        for r in 1..=h {
            let band = theorem_band_two(spec, r);
            let mut p = Word::new();
            if spec.orientable {
                for t in 1..=r {
                    p.push(a(t));
                }
            } else {
                for t in 1..r {
                    p.push(a(t));
                    p.push(a(t));
                }
                p.push(a(r));
            }
            let lhs = p.concat(&band);
            let rhs = Word::from_letters(vec![sigma(1), sigma(1)]).concat(&band).concat(&p);
            out.push(rel(&family(spec, 5), lhs, &rhs));
        }
    }
    for r in 1..=h {
        for i in 2..n {
            out.push(rel(&family(spec, 6), vec![a(r), sigma(i)].into(), &vec![sigma(i), a(r)].into()));
        }
    }
    out
}

/// `∏_{i=1}^{n-1} T_{i,n-1}^{-1} T_{i,n}`, the right-hand side of PR1/Pr1.
pub fn surface_correction(n: u32) -> Word {
    let mut w = Word::new();
    for i in 1..n {
        w.extend_from(&t_loop(i, n - 1).inverse());
        w.extend_from(&t_loop(i, n));
    }
    w
}

/// Right-hand side of PR8/Pr8: `T_{j,n}` over letters of strands `<= j`
/// and loops ending before `n`.
pub fn t_last_word(spec: &SurfaceSpec, j: u32) -> Word {
    let h = spec.handles();
    let a = |i: u32, r: u32, positive: bool| Letter::with_sign(Gen::AStrand(i, r), positive);
    let mut w = Word::new();
    if spec.orientable {
        for i in 1..j {
            for r in (1..=h).rev() {
                w.push(a(i, r, false));
            }
            w.extend_from(&t_loop(i, j - 1));
            w.extend_from(&t_loop(i, j).inverse());
            for r in 1..=h {
                w.push(a(i, r, true));
            }
        }
        w.extend_from(&surface_word(spec, j, false));
    } else {
        w.extend_from(&surface_word(spec, j, false));
        for i in 1..j {
            w.extend_from(&t_loop(j - i, j).inverse());
            w.extend_from(&t_loop(j - i, j - 1));
        }
    }
    w
}

/// The element commuting with `a_{i,·}` (`j < i <= k`) in PR7/Pr7.
pub fn pr7_element(spec: &SurfaceSpec, j: u32, k: u32) -> Word {
    let h = spec.handles();
    let a = |r: u32, positive: bool| Letter::with_sign(Gen::AStrand(j, r), positive);
    let mut w = Word::new();
    if spec.orientable {
        for r in (1..=h).rev() {
            w.push(a(r, false));
        }
        w.extend_from(&t_loop(j, k));
        for r in (1..=h).rev() {
            w.push(a(r, true));
        }
    } else {
        for r in (1..=h).rev() {
            w.push(a(r, false));
            w.push(a(r, false));
        }
        w.extend_from(&t_loop(j, k));
    }
    w
}

fn pure_relators(spec: &SurfaceSpec) -> Vec<Relator> {
    let n = spec.strands;
    let h = spec.handles();
    let a = |i: u32, r: u32| Letter::pos(Gen::AStrand(i, r));
    let band = |j: u32, s: u32| band_word(spec.orientable, h, s, |t| Gen::AStrand(j, t));
    let t = |j: u32, k: u32| Word::gen(Gen::TLoop(j, k));
    let mut out = Vec::new();

    // level-n surface relation
    let lhs = if spec.orientable {
        let mut w = Word::new();
        for r in 1..=h {
            w.push(Letter::neg(Gen::AStrand(n, r)));
        }
        for r in 1..=h {
            w.push(a(n, r));
        }
        w
    } else {
        surface_word(spec, n, false)
    };
    out.push(rel(&pure_family(spec, 1), lhs, &surface_correction(n)));

    for i in 1..=n {
        for j in i + 1..=n {
            for r in 1..=h {
                for s in 1..=h {
                    if r != s {
                        let l = Word::letter(a(i, r)).concat(&band(j, s));
                        out.push(rel(&pure_family(spec, 2), l, &band(j, s).concat(&Word::letter(a(i, r)))));
                    }
                }
            }
            for r in 1..=h {
                let mut p = Word::new();
                if spec.orientable {
                    for s in 1..=r {
                        p.push(a(i, s));
                    }
                } else {
                    for s in 1..r {
                        p.push(a(i, s));
                        p.push(a(i, s));
                    }
                    p.push(a(i, r));
                }
                let lhs = p.concat(&band(j, r)).concat(&p.inverse()).concat(&band(j, r).inverse());
                let rhs = t(i, j).concat(&t_loop(i, j - 1).inverse());
                out.push(rel(&pure_family(spec, 3), lhs, &rhs));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                for l in k + 1..=n {
                    let disjoint = j < k;
                    let nested = i < k && l <= j;
                    if disjoint || nested {
                        out.push(rel(&pure_family(spec, 4), t(i, j).concat(&t(k, l)), &t(k, l).concat(&t(i, j))));
                    }
                    if i < k && k <= j && j < l {
                        let lhs = t(k, l).concat(&t(i, j)).concat(&t(k, l).inverse());
                        let mut rhs = Word::new();
                        rhs.extend_from(&t_loop(i, k - 1));
                        rhs.extend_from(&t_loop(i, k).inverse());
                        rhs.extend_from(&t(i, j));
                        rhs.extend_from(&t(i, l).inverse());
                        rhs.extend_from(&t_loop(i, k));
                        rhs.extend_from(&t_loop(i, k - 1).inverse());
                        rhs.extend_from(&t(i, l));
                        out.push(rel(&pure_family(spec, 5), lhs, &rhs));
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in j + 1..=n {
                if i < j || k < i {
                    for r in 1..=h {
                        let l = Word::letter(a(i, r)).concat(&t(j, k));
                        out.push(rel(&pure_family(spec, 6), l, &t(j, k).concat(&Word::letter(a(i, r)))));
                    }
                }
            }
        }
    }
    for j in 1..=n {
        for i in j + 1..=n {
            for k in i..=n {
                let e = pr7_element(spec, j, k);
                for r in 1..=h {
                    let l = Word::letter(a(i, r)).concat(&e);
                    out.push(rel(&pure_family(spec, 7), l, &e.concat(&Word::letter(a(i, r)))));
                }
            }
        }
    }
    for j in 1..n {
        out.push(rel(&pure_family(spec, 8), t(j, n), &t_last_word(spec, j)));
    }
    out
}

fn extension_relators(spec: &SurfaceSpec) -> Vec<Relator> {
    let n = spec.strands;
    let h = spec.handles();
    let mut out = Vec::new();
    for j in 1..n {
        for r in 1..=h {
            let lower = Word::gen(a_letter(j, r, true));
            let (left, right, name) = if !spec.orientable {
                (sigma_inv(j), sigma(j), "r7")
            } else if r % 2 == 0 {
                (sigma(j), sigma(j), "R7")
            } else {
                (sigma_inv(j), sigma_inv(j), "R8")
            };
            let rhs = Word::letter(left).concat(&lower).concat(&Word::letter(right));
            out.push(rel(name, Word::gen(Gen::AStrand(j + 1, r)), &rhs));
        }
    }
    let name = if spec.orientable { "R9" } else { "r8" };
    for j in 1..=n {
        for k in j + 1..=n {
            out.push(rel(name, Word::gen(Gen::TLoop(j, k)), &t_loop_sigma_word(j, k)));
        }
    }
    out
}

/// Every relator instance of `level`, as `LHS · RHS^{-1}`.
pub fn labelled_relators(spec: &SurfaceSpec, level: PresentationLevel) -> Vec<Relator> {
    match level {
        PresentationLevel::Theorem => theorem_relators(spec),
        PresentationLevel::Pure => pure_relators(spec),
        PresentationLevel::Extended => {
            let mut out = theorem_relators(spec);
            out.extend(extension_relators(spec));
            out
        }
    }
}

pub fn relators(spec: &SurfaceSpec, level: PresentationLevel) -> Vec<Word> {
    labelled_relators(spec, level).into_iter().map(|r| r.word).collect()
}

/// The generating set of `level`.
pub fn generators(spec: &SurfaceSpec, level: PresentationLevel) -> Vec<Gen> {
    let n = spec.strands;
    let h = spec.handles();
    let theorem = || (1..n).map(Gen::Sigma).chain((1..=h).map(Gen::A1));
    let loops = || (1..=n).flat_map(move |j| (j + 1..=n).map(move |k| Gen::TLoop(j, k)));
    match level {
        PresentationLevel::Theorem => theorem().collect(),
        PresentationLevel::Pure => (1..=n)
            .flat_map(|i| (1..=h).map(move |r| Gen::AStrand(i, r)))
            .chain(loops())
            .collect(),
        PresentationLevel::Extended => theorem()
            .chain((2..=n).flat_map(|i| (1..=h).map(move |r| Gen::AStrand(i, r))))
            .chain(loops())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn or(g: u32, n: u32) -> SurfaceSpec {
        SurfaceSpec::orientable(g, n).unwrap()
    }

    fn non(g: u32, n: u32) -> SurfaceSpec {
        SurfaceSpec::non_orientable(g, n).unwrap()
    }

    #[test]
    fn band_definition_examples() {
        assert_eq!(band_definition(&or(2, 2), 2, 3).unwrap(), w("a[2,1] a[2,2] a[2,4]^-1"));
        assert_eq!(band_definition(&or(1, 2), 2, 1).unwrap(), w("a[2,2]^-1"));
        assert_eq!(
            band_definition(&non(2, 2), 2, 2).unwrap(),
            w("a[2,1] a[2,1] a[2,2]^-1 a[2,1]^-1 a[2,1]^-1")
        );
        assert!(band_definition(&or(1, 2), 3, 1).is_err());
    }

    #[test]
    fn change_of_generator_examples() {
        let s = or(1, 3);
        let to_a = change_of_generators(&s, 2, Direction::BandToA);
        assert_eq!(to_a[&Gen::AStrand(2, 1)], w("A[2,2]"));
        let to_band = change_of_generators(&s, 2, Direction::AToBand);
        assert_eq!(to_band[&Gen::ABand(2, 1)], w("a[2,2]^-1"));
    }

    #[test]
    fn change_of_generators_round_trips() {
        let specs: Vec<SurfaceSpec> = (1..=3).map(|g| or(g, 2)).chain((2..=4).map(|g| non(g, 2))).collect();
        for s in specs {
            for i in 1..=2 {
                let to_a = change_of_generators(&s, i, Direction::BandToA);
                let to_band = change_of_generators(&s, i, Direction::AToBand);
                for r in 1..=s.handles() {
                    let a = Word::gen(Gen::AStrand(i, r));
                    let there = a.substitute(&to_a).unwrap();
                    let back = there.substitute(&to_band).unwrap().free_reduce();
                    assert_eq!(back, a, "{s} strand {i} r={r}");
                    let b = Word::gen(Gen::ABand(i, r));
                    let there = b.substitute(&to_band).unwrap();
                    let back = there.substitute(&to_a).unwrap().free_reduce();
                    assert_eq!(back, b, "{s} strand {i} r={r}");
                }
            }
        }
    }

    #[test]
    fn relator_examples() {
        let rs = relators(&or(1, 1), PresentationLevel::Pure);
        assert_eq!(rs, vec![w("a[1,1]^-1 a[1,2]^-1 a[1,1] a[1,2]")]);
        let r3 = labelled_relators(&or(1, 2), PresentationLevel::Theorem)
            .into_iter()
            .find(|r| r.family == "R3")
            .unwrap();
        assert_eq!(r3.word, w("a1 a2 a1^-1 a2^-1 s1^-2"));
        let r3 = labelled_relators(&non(2, 2), PresentationLevel::Theorem)
            .into_iter()
            .find(|r| r.family == "r3")
            .unwrap();
        assert_eq!(r3.word, w("a1 a1 a2 a2 s1^-2"));
    }

    #[test]
    fn theorem_family_counts() {
        let fams = |s: &SurfaceSpec| -> Vec<String> {
            let mut v: Vec<String> =
                labelled_relators(s, PresentationLevel::Theorem).into_iter().map(|r| r.family).collect();
            v.dedup();
            v
        };
        assert_eq!(fams(&or(1, 2)), vec!["R3", "R4", "R5"]);
        assert_eq!(fams(&or(1, 1)), vec!["R3"]);
        assert_eq!(fams(&non(2, 4)), vec!["r1", "r2", "r3", "r4", "r5", "r6"]);
        assert_eq!(generators(&or(1, 2), PresentationLevel::Theorem).len(), 3);
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_to_theorem_generators(&w("T[1,2]"), &or(1, 2)), w("s1 s1"));
        assert_eq!(expand_to_theorem_generators(&w("a[2,1]"), &or(1, 2)), w("s1^-1 a1 s1^-1"));
        assert_eq!(expand_to_theorem_generators(&w("a[2,1]"), &non(2, 2)), w("s1^-1 a1 s1"));
        assert_eq!(expand_to_theorem_generators(&w("a[2,2]"), &or(1, 2)), w("s1 a2 s1"));
    }

    #[test]
    fn theorem_band_matches_band_definition() {
        for s in [or(1, 2), or(2, 3), non(2, 2), non(3, 3)] {
            for r in 1..=s.handles() {
                let via_strands = expand_to_theorem_generators(&Word::gen(Gen::ABand(2, r)), &s).free_reduce();
                assert_eq!(via_strands, theorem_band_two(&s, r).free_reduce(), "{s} r={r}");
            }
        }
    }

    #[test]
    fn lemma_change_matches_printed_formulas() {
        // a_{i,k}^{(-1)^{k+1}} = (A_1 A_2^{-1} ... A_{k-1}^{±1})(A_{k+1}^{∓1} ... A_{2g-1}^{-1} A_{2g})
        let s = or(3, 1);
        for k in 1..=6u32 {
            let mut expect = Word::new();
            for t in 1..k {
                expect.push(Letter::with_sign(Gen::ABand(1, t), t % 2 == 1));
            }
            for t in k + 1..=6 {
                expect.push(Letter::with_sign(Gen::ABand(1, t), t % 2 == 0));
            }
            let got = strand_to_band_word(&s, 1, k);
            let got = if k % 2 == 0 { got.inverse() } else { got };
            assert_eq!(got, expect);
        }
    }
}
