//! Independent checks used by tests and `sbw selftest`: the Artin action of
//! the disc braid group on a free group, exponent-sum invariants, and an
//! exhaustive check of the permutation machinery.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::SolverError;
use crate::presentations::expand_to_theorem_generators;
use crate::sym::{epsilon, exponents_of_perm, perm_of_word, Perm};
use crate::words::{Gen, Letter, SurfaceSpec, Word};

/// Free-group word over `x_1 .. x_n`: `+i` is `x_i`, `-i` its inverse.
pub type FreeWord = Vec<i32>;

fn push_reduced(w: &mut FreeWord, x: i32) {
    if w.last() == Some(&-x) {
        w.pop();
    } else {
        w.push(x);
    }
}

fn invert(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|x| -x).collect()
}

/// An endomorphism of the free group of rank `n`, by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeGroupEndo {
    pub images: Vec<FreeWord>,
}

impl FreeGroupEndo {
    pub fn identity(n: u32) -> Self {
        Self { images: (1..=n as i32).map(|i| vec![i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| w.as_slice() == [k as i32 + 1])
    }

    pub fn apply(&self, w: &[i32]) -> FreeWord {
        let mut out = Vec::new();
        for &x in w {
            let img = &self.images[x.unsigned_abs() as usize - 1];
            let img = if x > 0 { img.clone() } else { invert(img) };
            for y in img {
                push_reduced(&mut out, y);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeGroupEndo) -> FreeGroupEndo {
        FreeGroupEndo { images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    fn crossing(n: u32, i: u32, positive: bool) -> FreeGroupEndo {
        let mut e = Self::identity(n);
        let (a, b) = (i as i32, i as i32 + 1);
        let (ia, ib) = (i as usize - 1, i as usize);
        if positive {
            e.images[ia] = vec![a, b, -a];
            e.images[ib] = vec![a];
        } else {
            e.images[ia] = vec![b];
            e.images[ib] = vec![-b, a, b];
        }
        e
    }
}

impl fmt::Display for FreeGroupEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &FreeWord| -> String {
            if w.is_empty() {
                return "1".into();
            }
            let parts: Vec<String> =
                w.iter().map(|&x| if x > 0 { format!("x{x}") } else { format!("x{}^-1", -x) }).collect();
            parts.join(" ")
        };
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", k + 1, show(w))?;
        }
        Ok(())
    }
}

/// The Artin action of a crossing word on the free group of rank `n`,
/// composed in word order: `image(uv) = image(u) ∘ image(v)`.
pub fn artin_image(w: &Word, n: u32) -> Result<FreeGroupEndo, SolverError> {
    let mut e = FreeGroupEndo::identity(n);
    for (pos, l) in w.letters().iter().enumerate() {
        match l.gen {
            Gen::Sigma(i) if i >= 1 && i < n => e = e.compose(&FreeGroupEndo::crossing(n, i, !l.inv)),
            _ => {
                return Err(SolverError::Letter {
                    pos,
                    letter: l.to_string(),
                    reason: format!("the Artin action takes crossings s1..s{} only", n.saturating_sub(1)),
                });
            }
        }
    }
    Ok(e)
}

/// Exponent sums of a braid word: one integer per `a_r`, and the crossing
/// count mod 2. For non-orientable surfaces the `a` vector is taken
/// modulo `(2, ..., 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianClass {
    pub a_vector: Vec<i64>,
    pub sigma_parity: u8,
}

impl AbelianClass {
    pub fn is_zero(&self) -> bool {
        self.sigma_parity == 0 && self.a_vector.iter().all(|&x| x == 0)
    }
}

pub fn abelianize(w: &Word, spec: &SurfaceSpec) -> AbelianClass {
    let expanded = expand_to_theorem_generators(w, spec);
    let mut a_vector = vec![0i64; spec.handles() as usize];
    let mut sigma = 0i64;
    for l in expanded.letters() {
        let e = if l.inv { -1 } else { 1 };
        match l.gen.canonical() {
            Gen::Sigma(_) => sigma += e,
            Gen::AStrand(_, r) => a_vector[r as usize - 1] += e,
            other => unreachable!("{other} survived expansion"),
        }
    }
    if !spec.orientable {
        let k = a_vector[0].div_euclid(2);
        for x in &mut a_vector {
            *x -= 2 * k;
        }
    }
    AbelianClass { a_vector, sigma_parity: sigma.rem_euclid(2) as u8 }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymCheck {
    pub n: u32,
    pub permutations: usize,
    pub failures: Vec<String>,
}

impl SymCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn all_perms(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for slot in 0..n as usize {
            let mut q = p.clone();
            q.insert(slot, n);
            out.push(q);
        }
    }
    out
}

/// Every permutation of `1..=n`: the transversal exponents evaluate back
/// to it, its word induces it, the section is idempotent, and distinct
/// permutations get distinct exponents.
pub fn brute_force_sym(n: u32) -> SymCheck {
    assert!((1..=6).contains(&n), "exhaustive check is for small n");
    let spec = SurfaceSpec::orientable(1, n).expect("valid strand count");
    let mut failures = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let perms = all_perms(n);
    for images in &perms {
        let p = Perm::from_images(images).expect("enumerated permutation");
        let st = exponents_of_perm(&p);
        let word = st.word();
        if st.to_perm() != p {
            failures.push(format!("{p}: exponents {st} evaluate to {}", st.to_perm()));
        }
        if perm_of_word(&word, &spec) != p {
            failures.push(format!("{p}: word {word} induces {}", perm_of_word(&word, &spec)));
        }
        if epsilon(&word, &spec) != word {
            failures.push(format!("{p}: section of {word} is {}", epsilon(&word, &spec)));
        }
        if !seen.insert(st.exponents().to_vec()) {
            failures.push(format!("{p}: exponents {st} already used"));
        }
    }
    SymCheck { n, permutations: perms.len(), failures }
}

/// A uniformly random word of exactly `len` letters over `σ_i^{±1}` and
/// `a_r^{±1}`.
pub fn random_word<R: Rng + ?Sized>(spec: &SurfaceSpec, len: usize, rng: &mut R) -> Word {
    let mut gens: Vec<Gen> = (1..spec.strands).map(Gen::Sigma).collect();
    gens.extend((1..=spec.handles()).map(Gen::A1));
    (0..len).map(|_| Letter { gen: gens[rng.gen_range(0..gens.len())], inv: rng.gen() }).collect()
}

/// A word over crossings only.
pub fn random_sigma_word<R: Rng + ?Sized>(n: u32, len: usize, rng: &mut R) -> Word {
    if n < 2 {
        return Word::new();
    }
    (0..len).map(|_| Letter { gen: Gen::Sigma(rng.gen_range(1..n)), inv: rng.gen() }).collect()
}
