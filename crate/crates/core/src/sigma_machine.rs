//! Splits a braid word into a pure word followed by a transversal word.
//!
//! The state is `pure_acc · word(trans)`. Appending a crossing moves it
//! leftwards through the transversal blocks until it merges with one of
//! them; when it squares an existing crossing the square `T_{j,j+1}` is
//! conjugated out to the pure part. Appending a pure letter conjugates it
//! through the whole transversal word.

use crate::conj::conj_word;
use crate::error::SolverError;
use crate::sym::TransversalState;
use crate::words::{Gen, Letter, SurfaceSpec, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaState {
    pub pure_acc: Word,
    pub trans: TransversalState,
}

impl SigmaState {
    pub fn new(spec: &SurfaceSpec) -> Self {
        Self { pure_acc: Word::new(), trans: TransversalState::identity(spec.strands) }
    }

    fn emit(&mut self, w: &Word) {
        self.pure_acc.append_reduced(w);
    }
}

/// Appends `σ_i^{sign}`; returns the number of blocks visited.
pub fn absorb_sigma(st: &mut SigmaState, i: u32, positive: bool, spec: &SurfaceSpec) -> usize {
    let n = spec.strands;
    debug_assert!(i >= 1 && i < n);
    if !positive {
        // σ_i^{-1} = T_{i,i+1}^{-1} σ_i
        let t = Word::letter(Letter::neg(Gen::TLoop(i, i + 1)));
        let residue = conj_word(&st.trans.word(), &t, spec);
        st.emit(&residue);
    }
    let mut j = i;
    let mut visits = 0;
    for m in (1..n).rev() {
        visits += 1;
        let k = st.trans.k(m);
        if j + k < m {
            continue;
        }
        if j + k >= m + 2 {
            j -= 1;
            continue;
        }
        if j + k == m + 1 {
            // the block ends in σ_j already: σ_j^2 = T_{j,j+1}
            st.trans.set_k(m, k - 1);
            let prefix = st.trans.prefix_word(m, k - 1);
            let residue = conj_word(&prefix, &Word::letter(Letter::pos(Gen::TLoop(j, j + 1))), spec);
            st.emit(&residue);
            return visits;
        }
        // j == m - k: the block grows by one
        st.trans.set_k(m, k + 1);
        return visits;
    }
    unreachable!("a crossing always merges into some block")
}

/// Appends a pure letter (strand, loop, or the `a_r` alias).
pub fn absorb_pure(st: &mut SigmaState, x: Letter, spec: &SurfaceSpec) {
    let x = Letter { gen: x.gen.canonical(), inv: x.inv };
    let conj = conj_word(&st.trans.word(), &Word::letter(x), spec);
    st.emit(&conj);
}

/// Folds the whole word; returns `(pure, s)` with `w = pure · s` and `s`
/// the transversal word of the permutation of `w`.
pub fn purify(w: &Word, spec: &SurfaceSpec) -> Result<(Word, Word), SolverError> {
    let st = purify_state(w, spec)?;
    Ok((st.pure_acc, st.trans.word()))
}

pub fn purify_state(w: &Word, spec: &SurfaceSpec) -> Result<SigmaState, SolverError> {
    let mut st = SigmaState::new(spec);
    for (pos, &l) in w.letters().iter().enumerate() {
        match l.gen {
            Gen::Sigma(i) => {
                absorb_sigma(&mut st, i, !l.inv, spec);
            }
            Gen::A1(_) | Gen::AStrand(..) | Gen::TLoop(..) => absorb_pure(&mut st, l, spec),
            Gen::ABand(..) => {
                return Err(SolverError::Letter {
                    pos,
                    letter: l.to_string(),
                    reason: "band letters must be expanded before purification".into(),
                });
            }
        }
    }
    Ok(st)
}
