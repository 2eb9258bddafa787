//! Strand permutations and the transversal normal form of `Σ_n`.
//!
//! Permutations compose left to right: `perm(uv)` is `perm(u)` followed by
//! `perm(v)`, matching the order in which a braid word is read.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::words::{Gen, Letter, SurfaceSpec, Word};

/// `images[i]` is the final position (0-based) of the strand starting at `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: u32) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Builds a permutation from 1-based images. Returns `None` unless the
    /// images form a bijection of `1..=n`.
    pub fn from_images(images: &[u32]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            let k = (x as usize).checked_sub(1)?;
            if k >= n || seen[k] {
                return None;
            }
            seen[k] = true;
        }
        Some(Self { images: images.iter().map(|x| x - 1).collect() })
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    /// Final position of strand `i` (both 1-based).
    pub fn image(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// Swaps whatever currently sits at positions `i` and `i+1` (1-based).
    fn apply_crossing(&mut self, i: u32) {
        let (a, b) = (i - 1, i);
        for x in &mut self.images {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Exponents `(k_1, ..., k_{n-1})` of the transversal word
/// `t_{1,k_1} ... t_{n-1,k_{n-1}}`, with `t_{m,k} = σ_m σ_{m-1} ... σ_{m-k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransversalState {
    exponents: Vec<u32>,
}

impl TransversalState {
    pub fn identity(n: u32) -> Self {
        Self { exponents: vec![0; n.saturating_sub(1) as usize] }
    }

    /// `None` unless `0 <= k_m <= m` for every `m`.
    pub fn from_exponents(exponents: Vec<u32>) -> Option<Self> {
        exponents
            .iter()
            .enumerate()
            .all(|(idx, &k)| k as usize <= idx + 1)
            .then_some(Self { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn n(&self) -> u32 {
        self.exponents.len() as u32 + 1
    }

    /// `k_m`, 1-based block index.
    pub fn k(&self, m: u32) -> u32 {
        self.exponents[(m - 1) as usize]
    }

    pub(crate) fn set_k(&mut self, m: u32, k: u32) {
        debug_assert!(k <= m);
        self.exponents[(m - 1) as usize] = k;
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// `t_{m,k}` as a word.
    pub fn block_word(m: u32, k: u32) -> Word {
        (0..k).map(|t| Letter::pos(Gen::Sigma(m - t))).collect()
    }

    /// The word `t_{1,k_1} ... t_{m-1,k_{m-1}} t_{m,k}`.
    pub fn prefix_word(&self, m: u32, k: u32) -> Word {
        let mut out = Word::new();
        for mm in 1..m {
            out.extend_from(&Self::block_word(mm, self.k(mm)));
        }
        out.extend_from(&Self::block_word(m, k));
        out
    }

    pub fn word(&self) -> Word {
        let mut out = Word::new();
        for (idx, &k) in self.exponents.iter().enumerate() {
            out.extend_from(&Self::block_word(idx as u32 + 1, k));
        }
        out
    }

    /// Evaluates the transversal word block by block: `t_{m,k}` sends the
    /// strand at position `m+1` to `m-k+1` and shifts `m-k+1..=m` up by one.
    pub fn to_perm(&self) -> Perm {
        let n = self.n();
        let mut pos: Vec<u32> = (1..=n).collect();
        for m in 1..n {
            let k = self.k(m);
            let lo = m - k + 1;
            for p in &mut pos {
                if *p == m + 1 {
                    *p = lo;
                } else if *p >= lo && *p <= m {
                    *p += 1;
                }
            }
        }
        Perm::from_images(&pos).expect("block moves are bijective")
    }
}

impl fmt::Display for TransversalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The permutation induced on the strands; pure letters act trivially.
pub fn perm_of_word(w: &Word, spec: &SurfaceSpec) -> Perm {
    let mut p = Perm::identity(spec.strands);
    for l in w {
        if let Gen::Sigma(i) = l.gen {
            p.apply_crossing(i);
        }
    }
    p
}

/// Peels blocks from the right: the last block decides where strand `n`
/// ends, the rest is a permutation of `1..n-1` and recurses.
pub fn exponents_of_perm(p: &Perm) -> TransversalState {
    let n = p.n();
    let mut state = TransversalState::identity(n);
    let mut q = p.clone();
    for m in (1..n).rev() {
        let top = m + 1;
        let k = top - q.image(top);
        state.set_k(m, k);
        // undo the block on the final positions
        let lo = m - k + 1;
        let undone: Vec<u32> = q
            .images()
            .iter()
            .map(|&x| {
                if x == lo {
                    top
                } else if x > lo && x <= top {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        q = Perm::from_images(&undone).expect("undoing a block is bijective");
    }
    debug_assert!(q.is_identity());
    state
}

/// The section `ε`: the positive transversal word of the permutation of `w`.
pub fn epsilon(w: &Word, spec: &SurfaceSpec) -> Word {
    exponents_of_perm(&perm_of_word(w, spec)).word()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn spec(n: u32) -> SurfaceSpec {
        SurfaceSpec::orientable(1, n).unwrap()
    }

    #[test]
    fn perm_examples() {
        assert!(perm_of_word(&w(""), &spec(3)).is_identity());
        assert!(perm_of_word(&w("s1 s1"), &spec(2)).is_identity());
        assert_eq!(perm_of_word(&w("s1 s2"), &spec(3)).images(), vec![3, 1, 2]);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exponents_of_perm(&Perm::identity(4)).exponents(), &[0, 0, 0]);
        let swap = Perm::from_images(&[2, 1]).unwrap();
        assert_eq!(exponents_of_perm(&swap).exponents(), &[1]);
        let p = perm_of_word(&w("s1 s2"), &spec(3));
        assert_eq!(exponents_of_perm(&p).exponents(), &[1, 1]);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&w(""), &spec(3)), w(""));
        assert_eq!(epsilon(&w("s1^-1"), &spec(2)), w("s1"));
        assert_eq!(epsilon(&w("s2 s1"), &spec(3)), w("s2 s1"));
        let p = perm_of_word(&w("s2 s1"), &spec(3));
        assert_eq!(exponents_of_perm(&p).exponents(), &[0, 2]);
    }

    #[test]
    fn block_evaluation_matches_word() {
        for n in 2..=5 {
            let mut ks = vec![0u32; n as usize - 1];
            loop {
                let st = TransversalState::from_exponents(ks.clone()).unwrap();
                assert_eq!(st.to_perm(), perm_of_word(&st.word(), &spec(n)));
                let mut idx = 0;
                loop {
                    if idx == ks.len() {
                        break;
                    }
                    ks[idx] += 1;
                    if ks[idx] as usize <= idx + 1 {
                        break;
                    }
                    ks[idx] = 0;
                    idx += 1;
                }
                if idx == ks.len() {
                    break;
                }
            }
        }
    }

    #[test]
    fn composition_is_left_to_right() {
        let s = spec(3);
        let u = w("s1");
        let v = w("s2");
        assert_eq!(perm_of_word(&u.concat(&v), &s), perm_of_word(&u, &s).then(&perm_of_word(&v, &s)));
        assert_ne!(perm_of_word(&u.concat(&v), &s), perm_of_word(&v, &s).then(&perm_of_word(&u, &s)));
    }
}
