//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sbw_core::conj::sigma_unconj;
use sbw_core::oracles::{abelianize, artin_image, brute_force_sym, random_sigma_word, random_word};
use sbw_core::presentations::{labelled_relators, relators, t_loop_sigma_word};
use sbw_core::solver::{max_steps_from_env, Solver};
use sbw_core::{
    expand_to_theorem_generators, perm_of_word, Dictionary, Gen, Letter, PresentationLevel, SolverError,
    SurfaceSpec, Word,
};

const LEVELS: [PresentationLevel; 3] = [PresentationLevel::Theorem, PresentationLevel::Pure, PresentationLevel::Extended];

fn families() -> Vec<SurfaceSpec> {
    let mut out = Vec::new();
    for g in 1..=3 {
        for n in 1..=4 {
            out.push(SurfaceSpec::orientable(g, n).unwrap());
        }
    }
    for g in 2..=4 {
        for n in 1..=3 {
            out.push(SurfaceSpec::non_orientable(g, n).unwrap());
        }
    }
    out
}

/// Every word found trivial must have zero abelianization and identity
/// permutation.
#[derive(Default)]
struct Guards {
    checked: usize,
    violations: Vec<String>,
}

impl Guards {
    fn record(&mut self, spec: &SurfaceSpec, w: &Word, trivial: bool) {
        if !trivial {
            return;
        }
        self.checked += 1;
        let ab = abelianize(w, spec);
        let perm = perm_of_word(&expand_to_theorem_generators(w, spec), spec);
        if !ab.is_zero() || !perm.is_identity() {
            self.violations.push(format!("{spec}: {w} trivial with {ab:?}, permutation {perm}"));
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn first_failures(failures: &[String]) -> String {
    failures.iter().take(3).map(|f| format!("\n    {f}")).collect()
}

fn relator_triviality(guards: &mut Guards) -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut failures = Vec::new();
    for spec in families() {
        let solver = Solver::new(spec);
        for level in LEVELS {
            for r in labelled_relators(&spec, level) {
                total += 1;
                match solver.is_trivial(&r.word) {
                    Ok(t) => {
                        guards.record(&spec, &r.word, t);
                        if !t {
                            failures.push(format!("{spec} {level} {}: nontrivial", r.family));
                        }
                    }
                    Err(e) => failures.push(format!("{spec} {level} {}: {e}", r.family)),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!("{}/{total} relators trivial in {elapsed:.2?}{}", total - failures.len(), first_failures(&failures)),
    )
}

fn insert_relator(w: &Word, spec: &SurfaceSpec, rng: &mut StdRng) -> Word {
    let level = LEVELS[rng.gen_range(0..LEVELS.len())];
    let rels = relators(spec, level);
    let mut r = rels[rng.gen_range(0..rels.len())].clone();
    if rng.gen() {
        r = r.inverse();
    }
    let c = random_word(spec, rng.gen_range(0..=5), rng);
    let at = rng.gen_range(0..=w.len());
    let mut out = Word::from_letters(w.letters()[..at].to_vec());
    out.extend_from(&c);
    out.extend_from(&r);
    out.extend_from(&c.inverse());
    out.extend_from(&Word::from_letters(w.letters()[at..].to_vec()));
    out
}

fn relator_insertion(guards: &mut Guards) -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut total = 0;
    let mut failures = Vec::new();
    for spec in families() {
        let solver = Solver::new(spec);
        for _ in 0..500 {
            total += 1;
            let w = random_word(&spec, rng.gen_range(0..=30), &mut rng);
            let p = insert_relator(&w, &spec, &mut rng);
            match solver.are_equal(&w, &p) {
                Ok(eq) => {
                    guards.record(&spec, &w.concat(&p.inverse()), eq);
                    if !eq {
                        failures.push(format!("{spec}: {w} vs {p}"));
                    }
                }
                Err(e) => failures.push(format!("{spec}: {w} vs {p}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(300);
    outcome(pass, format!("{}/{total} equal in {elapsed:.2?}{}", total - failures.len(), first_failures(&failures)))
}

/// An equal crossing word, by braid and commutation moves and inserted
/// cancelling pairs.
fn braid_moves(u: &Word, n: u32, rng: &mut StdRng) -> Word {
    let mut v = u.letters().to_vec();
    for _ in 0..2 * v.len() + 1 {
        let k = if v.is_empty() { 0 } else { rng.gen_range(0..v.len()) };
        match rng.gen_range(0..3) {
            0 if k + 2 < v.len() => {
                let (a, b, c) = (v[k], v[k + 1], v[k + 2]);
                if let (Gen::Sigma(i), Gen::Sigma(j), true) = (a.gen, b.gen, a == c && a.inv == b.inv) {
                    if i.abs_diff(j) == 1 {
                        v[k] = b;
                        v[k + 1] = a;
                        v[k + 2] = b;
                    }
                }
            }
            1 if k + 1 < v.len() => {
                if let (Gen::Sigma(i), Gen::Sigma(j)) = (v[k].gen, v[k + 1].gen) {
                    if i.abs_diff(j) >= 2 {
                        v.swap(k, k + 1);
                    }
                }
            }
            2 if n >= 2 => {
                let l = Letter { gen: Gen::Sigma(rng.gen_range(1..n)), inv: rng.gen() };
                let at = rng.gen_range(0..=v.len());
                v.insert(at, l);
                v.insert(at + 1, l.inverse());
            }
            _ => {}
        }
    }
    Word::from_letters(v)
}

fn disc_oracle(guards: &mut Guards) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut failures = Vec::new();
    let mut trivial = 0;
    for k in 0..500 {
        let n = rng.gen_range(2..=5);
        let orientable = rng.gen();
        let g = if orientable { rng.gen_range(1..=3) } else { rng.gen_range(2..=4) };
        let spec = SurfaceSpec::new(orientable, g, n).unwrap();
        let solver = Solver::new(spec);
        let w = if k % 3 == 0 {
            let u = random_sigma_word(n, rng.gen_range(0..=12), &mut rng);
            let v = braid_moves(&u, n, &mut rng);
            u.concat(&v.inverse())
        } else {
            random_sigma_word(n, rng.gen_range(0..=40), &mut rng)
        };
        let w = if w.len() > 40 { Word::from_letters(w.letters()[..40].to_vec()) } else { w };
        let oracle = artin_image(&w, n).unwrap().is_identity();
        match solver.is_trivial(&w) {
            Ok(t) => {
                guards.record(&spec, &w, t);
                trivial += t as usize;
                if t != oracle {
                    failures.push(format!("{spec}: {w}: solver {t}, Artin {oracle}"));
                }
            }
            Err(e) => failures.push(format!("{spec}: {w}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!("{}/500 agree ({trivial} trivial){}", 500 - failures.len(), first_failures(&failures)),
    )
}

fn sym_machinery() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut perms = 0;
    for n in 1..=5 {
        let c = brute_force_sym(n);
        perms += c.permutations;
        failures.extend(c.failures);
    }
    outcome(
        failures.is_empty(),
        format!("{perms} permutations for n <= 5 in {:.2?}{}", start.elapsed(), first_failures(&failures)),
    )
}

fn round_trip_one(solver: &Solver, w: &Word) -> Result<Option<String>, SolverError> {
    let spec = solver.spec();
    let n = spec.strands as usize;
    let a = solver.normal_form(w)?;
    let again = expand_to_theorem_generators(&a.combed.to_word(), spec);
    let b = solver.normal_form(&again)?;
    if a.combed.levels[..n - 1] != b.combed.levels[..n - 1] {
        return Ok(Some("lower levels differ".into()));
    }
    if a.combed.perm_word != b.combed.perm_word {
        return Ok(Some("permutation words differ".into()));
    }
    if !solver.are_equal(&a.combed.levels[n - 1], &b.combed.levels[n - 1])? {
        return Ok(Some("last levels are not equal".into()));
    }
    Ok(None)
}

fn round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut total = 0;
    let mut failures = Vec::new();
    for spec in families() {
        let solver = Solver::new(spec);
        for _ in 0..200 {
            total += 1;
            let w = random_word(&spec, rng.gen_range(0..=10), &mut rng);
            match round_trip_one(&solver, &w) {
                Ok(None) => {}
                Ok(Some(why)) => failures.push(format!("{spec}: {w}: {why}")),
                Err(e) => failures.push(format!("{spec}: {w}: {e}")),
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{}/{total} words reproduce their normal form{}", total - failures.len(), first_failures(&failures)),
    )
}

fn random_triviality(guards: &mut Guards) {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    for spec in families() {
        let solver = Solver::new(spec);
        for _ in 0..100 {
            let u = random_word(&spec, rng.gen_range(0..=6), &mut rng);
            let w = u.concat(&u).concat(&u.inverse().concat(&u.inverse()));
            let w = if rng.gen() { w } else { random_word(&spec, rng.gen_range(0..=8), &mut rng) };
            if let Ok(t) = solver.is_trivial(&w) {
                guards.record(&spec, &w, t);
            }
        }
    }
}

fn guards_outcome(guards: &Guards) -> Outcome {
    outcome(
        guards.violations.is_empty() && guards.checked > 0,
        format!("{} trivial words checked{}", guards.checked, first_failures(&guards.violations)),
    )
}

fn sigma_unconj_word(i: u32, z: &Word, spec: &SurfaceSpec) -> Word {
    let mut out = Word::new();
    for &l in z.letters() {
        out.append_reduced(&sigma_unconj(i, l, spec));
    }
    out
}

fn only_loops(w: &Word) -> bool {
    w.letters().iter().all(|l| matches!(l.gen, Gen::TLoop(..)))
}

fn loops_as_crossings(w: &Word) -> Word {
    let mut out = Word::new();
    for l in w.letters() {
        if let Gen::TLoop(j, k) = l.gen {
            let s = t_loop_sigma_word(j, k);
            out.extend_from(&if l.inv { s.inverse() } else { s });
        }
    }
    out
}

fn rule_soundness() -> Outcome {
    let mut specs = Vec::new();
    for n in 1..=4 {
        for g in 1..=3 {
            specs.push(SurfaceSpec::orientable(g, n).unwrap());
        }
        for g in 2..=3 {
            specs.push(SurfaceSpec::non_orientable(g, n).unwrap());
        }
    }
    let (mut rules, mut artin) = (0, 0);
    let mut failures = Vec::new();
    for spec in specs {
        let dict = Dictionary::new(spec);
        let solver = Solver::new(spec);
        let all = match dict.rules() {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{spec}: {e}"));
                continue;
            }
        };
        for rule in all {
            rules += 1;
            let y = rule.conjugator;
            let lhs = Word::letter(y).concat(&Word::letter(rule.target)).concat(&Word::letter(y.inverse()));
            let lhs_perm = perm_of_word(&expand_to_theorem_generators(&lhs, &spec), &spec);
            let rhs_perm = perm_of_word(&expand_to_theorem_generators(&rule.result, &spec), &spec);
            if !lhs_perm.is_identity() || !rhs_perm.is_identity() {
                failures.push(format!("{spec}: {y} on {}: permutation", rule.target));
            }
            // with the conjugator on the last strand, `T_{i,n}` is eliminated
            // from the result and the lower strands are no longer free, so the
            // literal round trip is taken before elimination
            let back = match y.gen {
                Gen::Sigma(i) => Ok(sigma_unconj_word(i, &rule.result, &spec)),
                _ if y.gen.strand() == Some(spec.strands) => dict
                    .band_conj(y, rule.target)
                    .and_then(|z| dict.conj_band_word_formal(&Word::letter(y.inverse()), &z)),
                _ => dict.conj_letter_word(y.inverse(), &rule.result),
            };
            match back {
                Ok(b) if b == Word::letter(rule.target) => {}
                Ok(b) => failures.push(format!("{spec}: {y} on {}: inverse gives {b}", rule.target)),
                Err(e) => failures.push(format!("{spec}: {y} on {}: {e}", rule.target)),
            }
            let identity = lhs.concat(&rule.result.inverse());
            match solver.is_trivial(&identity) {
                Ok(true) => {}
                other => failures.push(format!("{spec}: {y} on {}: solver says {other:?}", rule.target)),
            }
            let conj_is_disc = y.gen.is_sigma() || matches!(y.gen, Gen::TLoop(..));
            if conj_is_disc && only_loops(&Word::letter(rule.target)) && only_loops(&rule.result) {
                artin += 1;
                let n = spec.strands;
                let yw = if y.gen.is_sigma() { Word::letter(y) } else { loops_as_crossings(&Word::letter(y)) };
                let lhs = yw.concat(&loops_as_crossings(&Word::letter(rule.target))).concat(&yw.inverse());
                let rhs = loops_as_crossings(&rule.result);
                if artin_image(&lhs, n).unwrap() != artin_image(&rhs, n).unwrap() {
                    failures.push(format!("{spec}: {y} on {}: Artin images differ", rule.target));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{}/{rules} rules sound ({artin} checked against the Artin action){}",
            rules - failures.len().min(rules),
            first_failures(&failures)
        ),
    )
}

fn performance_smoke() -> Outcome {
    let spec = SurfaceSpec::orientable(2, 4).unwrap();
    let solver = Solver::new(spec);
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let w = random_word(&spec, 100, &mut rng);
    let start = Instant::now();
    let result = solver.normal_form(&w);
    let elapsed = start.elapsed();
    let budget = max_steps_from_env();
    match result {
        Ok(r) => {
            let len: usize = r.combed.levels.iter().map(Word::len).sum();
            outcome(
                true,
                format!("completed in {elapsed:.2?}, {} steps of {budget}, normal form of {len} letters", r.stats.steps),
            )
        }
        Err(SolverError::StepBudget { limit }) => outcome(
            false,
            format!("aborted after {elapsed:.2?}: normal form needs more than {limit} steps"),
        ),
        Err(e) => outcome(false, format!("error after {elapsed:.2?}: {e}")),
    }
}

fn main() -> ExitCode {
    let mut guards = Guards::default();
    let mut results = Vec::new();
    let mut report = |k: usize, name: &str, o: Outcome| {
        println!("criterion {k} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push(o.pass);
    };
    report(1, "relator triviality", relator_triviality(&mut guards));
    report(2, "relator insertion invariance", relator_insertion(&mut guards));
    report(3, "disc oracle equivalence", disc_oracle(&mut guards));
    report(4, "permutation machinery", sym_machinery());
    report(5, "round trip", round_trip());
    random_triviality(&mut guards);
    report(6, "necessary-condition guards", guards_outcome(&guards));
    report(7, "conjugation table soundness", rule_soundness());
    report(8, "performance smoke", performance_smoke());
    if results.iter().all(|&p| p) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
