//! Alphabets, signed letters and free words.
//!
//! Every other module speaks in [`Word`]s. A word is a plain sequence of
//! [`Letter`]s; nothing is reduced implicitly, callers ask for
//! [`Word::free_reduce`] when they want it.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WordError;

/// The surface `M` and the number of strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub orientable: bool,
    pub genus: u32,
    pub strands: u32,
}

impl SurfaceSpec {
    pub fn new(orientable: bool, genus: u32, strands: u32) -> Result<Self, WordError> {
        if strands == 0 {
            return Err(WordError::Spec("at least one strand is required".into()));
        }
        if orientable && genus < 1 {
            return Err(WordError::Spec("orientable surfaces need genus >= 1 (the sphere is excluded)".into()));
        }
        if !orientable && genus < 2 {
            return Err(WordError::Spec(
                "non-orientable surfaces need genus >= 2 (the projective plane is excluded)".into(),
            ));
        }
        Ok(Self { orientable, genus, strands })
    }

    pub fn orientable(genus: u32, strands: u32) -> Result<Self, WordError> {
        Self::new(true, genus, strands)
    }

    pub fn non_orientable(genus: u32, strands: u32) -> Result<Self, WordError> {
        Self::new(false, genus, strands)
    }

    /// Number of handle generators per strand: `2g` or `g`.
    pub fn handles(&self) -> u32 {
        if self.orientable {
            2 * self.genus
        } else {
            self.genus
        }
    }

    pub fn n(&self) -> u32 {
        self.strands
    }

    /// Checks the index ranges of `gen` against this surface.
    pub fn check(&self, gen: Gen) -> Result<(), String> {
        let n = self.strands;
        let h = self.handles();
        let ok = match gen {
            Gen::Sigma(i) => i >= 1 && i < n,
            Gen::A1(r) => r >= 1 && r <= h,
            Gen::AStrand(i, r) | Gen::ABand(i, r) => i >= 1 && i <= n && r >= 1 && r <= h,
            Gen::TLoop(j, k) => j >= 1 && j < k && k <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{gen} is out of range for n={n}, {} handle generators", h))
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.orientable { "orientable" } else { "non-orientable" };
        write!(f, "{kind} genus {} with {} strands", self.genus, self.strands)
    }
}

/// A generator symbol. Indices are 1-based throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    /// Classical crossing `σ_i`.
    Sigma(u32),
    /// `a_r`, the input alias of `a_{1,r}`.
    A1(u32),
    /// `a_{i,r}`: strand `i` crosses wall `r`.
    AStrand(u32, u32),
    /// `T_{j,k}`: strand `j` encircles strands `j+1..=k`.
    TLoop(u32, u32),
    /// `A_{j,r}`: the band generators, a second free basis at strand `j`.
    ABand(u32, u32),
}

impl Gen {
    /// Folds the `a_r` alias onto `a_{1,r}`.
    pub fn canonical(self) -> Gen {
        match self {
            Gen::A1(r) => Gen::AStrand(1, r),
            g => g,
        }
    }

    pub fn is_sigma(self) -> bool {
        matches!(self, Gen::Sigma(_))
    }

    /// The strand a pure generator moves, `None` for `σ_i`.
    pub fn strand(self) -> Option<u32> {
        match self {
            Gen::Sigma(_) => None,
            Gen::A1(_) => Some(1),
            Gen::AStrand(i, _) | Gen::ABand(i, _) | Gen::TLoop(i, _) => Some(i),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::Sigma(i) => write!(f, "s{i}"),
            Gen::A1(r) => write!(f, "a{r}"),
            Gen::AStrand(i, r) => write!(f, "a[{i},{r}]"),
            Gen::TLoop(j, k) => write!(f, "T[{j},{k}]"),
            Gen::ABand(i, r) => write!(f, "A[{i},{r}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Gen,
    pub inv: bool,
}

impl Letter {
    pub const fn pos(gen: Gen) -> Self {
        Self { gen, inv: false }
    }

    pub const fn neg(gen: Gen) -> Self {
        Self { gen, inv: true }
    }

    pub const fn with_sign(gen: Gen, positive: bool) -> Self {
        Self { gen, inv: !positive }
    }

    pub fn inverse(self) -> Self {
        Self { gen: self.gen, inv: !self.inv }
    }

    pub fn sign(self) -> i32 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

impl From<Gen> for Letter {
    fn from(gen: Gen) -> Self {
        Letter::pos(gen)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Self(vec![l])
    }

    pub fn gen(g: Gen) -> Self {
        Self(vec![Letter::pos(g)])
    }

    /// `g^e` written out as `|e|` letters.
    pub fn power(g: Gen, e: i64) -> Self {
        let l = Letter::with_sign(g, e >= 0);
        Self(vec![l; e.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// Appends `l`, cancelling it against the last letter if possible.
    pub fn push_reduced(&mut self, l: Letter) {
        if self.0.last().is_some_and(|&last| last.cancels(l)) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    /// Appends `other`, cancelling across the junction. If `self` and
    /// `other` are freely reduced so is the result.
    pub fn append_reduced(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push_reduced(l);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn free_reduce(&self) -> Word {
        let mut out = Word(Vec::with_capacity(self.len()));
        for &l in &self.0 {
            out.push_reduced(l);
        }
        out
    }

    /// Freely and cyclically reduced: a conjugate of `self`.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w.0[lo].cancels(w.0[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(w.0[lo..hi].to_vec())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Replaces every letter by its image; a `None` image keeps the letter.
    /// No reduction is performed.
    pub fn substitute_with<F>(&self, mut image: F) -> Word
    where
        F: FnMut(Gen) -> Option<Word>,
    {
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.0 {
            match image(l.gen) {
                Some(w) if l.inv => out.extend(w.0.iter().rev().map(|x| x.inverse())),
                Some(w) => out.extend_from_slice(&w.0),
                None => out.push(l),
            }
        }
        Word(out)
    }

    /// Homomorphic replacement through a table that must cover every
    /// generator of `self`.
    pub fn substitute(&self, table: &HashMap<Gen, Word>) -> Result<Word, WordError> {
        if let Some(l) = self.0.iter().find(|l| !table.contains_key(&l.gen)) {
            return Err(WordError::MissingMapping(l.gen.to_string()));
        }
        Ok(self.substitute_with(|g| table.get(&g).cloned()))
    }

    /// Parses and then checks every letter against `spec`.
    pub fn parse_for(text: &str, spec: &SurfaceSpec) -> Result<Word, WordError> {
        let tokens = tokenize(text)?;
        let mut out = Vec::new();
        for (pos, letter, count) in tokens {
            spec.check(letter.gen).map_err(|message| WordError::Range { pos, message })?;
            out.extend(std::iter::repeat_n(letter, count));
        }
        Ok(Word(out))
    }

    /// Tokens in display form, one per letter.
    pub fn tokens(&self) -> Vec<String> {
        self.0.iter().map(|l| l.to_string()).collect()
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Word, WordError> {
        let mut out = Word::new();
        for t in tokens {
            out.extend_from(&t.as_ref().parse()?);
        }
        Ok(out)
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for (_, letter, count) in tokenize(text)? {
            out.extend(std::iter::repeat_n(letter, count));
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul<Word> for Word {
    type Output = Word;

    fn mul(mut self, rhs: Word) -> Word {
        self.0.extend(rhs.0);
        self
    }
}

/// Splits `text` into (byte offset, letter, repeat count).
fn tokenize(text: &str) -> Result<Vec<(usize, Letter, usize)>, WordError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in text.split_whitespace() {
        // split_whitespace does not report offsets
        let pos = offset + text[offset..].find(chunk).unwrap_or(0);
        offset = pos + chunk.len();
        out.push(parse_token(chunk, pos)?);
    }
    Ok(out)
}

fn parse_token(tok: &str, pos: usize) -> Result<(usize, Letter, usize), WordError> {
    let err = |message: String| WordError::Parse { pos, message };
    let (body, exp) = match tok.split_once('^') {
        Some((b, e)) => {
            let e: i64 = e.parse().map_err(|_| err(format!("bad exponent in `{tok}`")))?;
            if e == 0 {
                return Err(err(format!("zero exponent in `{tok}`")));
            }
            (b, e)
        }
        None => (tok, 1),
    };
    let index = |s: &str| -> Result<u32, WordError> {
        let v: u32 = s.parse().map_err(|_| err(format!("bad index `{s}` in `{tok}`")))?;
        if v == 0 {
            return Err(err(format!("indices are 1-based, got 0 in `{tok}`")));
        }
        Ok(v)
    };
    let pair = |s: &str| -> Result<(u32, u32), WordError> {
        let inner = s
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| err(format!("expected `[i,j]` in `{tok}`")))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| err(format!("expected two indices in `{tok}`")))?;
        Ok((index(a.trim())?, index(b.trim())?))
    };
    let gen = if let Some(rest) = body.strip_prefix('s') {
        Gen::Sigma(index(rest)?)
    } else if let Some(rest) = body.strip_prefix('a') {
        if rest.starts_with('[') {
            let (i, r) = pair(rest)?;
            Gen::AStrand(i, r)
        } else {
            Gen::A1(index(rest)?)
        }
    } else if let Some(rest) = body.strip_prefix('T') {
        let (j, k) = pair(rest)?;
        if j >= k {
            return Err(err(format!("`{tok}` needs j < k")));
        }
        Gen::TLoop(j, k)
    } else if let Some(rest) = body.strip_prefix('A') {
        let (i, r) = pair(rest)?;
        Gen::ABand(i, r)
    } else {
        return Err(err(format!("unknown generator `{tok}`")));
    };
    Ok((pos, Letter::with_sign(gen, exp > 0), exp.unsigned_abs() as usize))
}

/// Shorthand used heavily in tests: panics on malformed input.
pub fn w(text: &str) -> Word {
    text.parse().unwrap_or_else(|e| panic!("bad word literal {text:?}: {e}"))
}
