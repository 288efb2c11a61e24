//! Named groups of corpus-wide checks and the JSON report they produce.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Caps, ElementSet};
use crate::convergence::{check_axioms, convergence_eq, convergence_le, Convergence};
use crate::corpus::{self, Bounds};
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::forcing::{ax_bx, b_values, boolean_value, intersection_infinite_value, intersection_infinite_value_by_atoms, zero_limsup_forms, Statement};
use crate::omega::compose_with_enumeration;
use crate::sequence::EPSequence;
use crate::topology::{
    check_closed_set_characterization, closure_fixpoint, condition_hbar, condition_hbar_on, dual_homeomorphism_check,
    generate_by_sequences, generate_open_form, generate_sequential_topology, is_topological_convergence,
    is_weakly_topological, maximality_brute_force, sequential_topology, FiniteTopology, Flavor,
};
use crate::verdict::{scan, Verdict, Witness};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Suite names in report order, each with the largest atom count it runs on.
pub const SUITES: &[(&str, u8)] = &[
    ("algebra", 4),
    ("sequences", 4),
    ("convergence", 3),
    ("lattice", 3),
    ("diagram", 3),
    ("topological", 3),
    ("closed-sets", 3),
    ("maximality", 2),
    ("forcing", 3),
    ("intersection", 4),
    ("zero-limsup", 3),
    ("stable-closure", 3),
    ("meet-continuity", 3),
    ("antitone", 3),
    ("hbar", 4),
    ("soundness", 3),
    ("cube", 4),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_atoms: u8,
    /// Corpus bounds; `None` uses [`Bounds::default_for`].
    pub prefix_bound: Option<usize>,
    pub cycle_bound: Option<usize>,
    pub seed: u64,
    /// Random corpus size and number of sampled pairs per atom count.
    pub samples: usize,
    /// Explicit selectors per sequence in the sampling oracles.
    pub selectors: usize,
    pub suites: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_atoms: 3,
            prefix_bound: None,
            cycle_bound: None,
            seed: DEFAULT_SEED,
            samples: 500,
            selectors: 100,
            suites: SUITES.iter().map(|(s, _)| s.to_string()).collect(),
        }
    }
}

impl SuiteConfig {
    pub fn with_suites<S: Into<String>>(mut self, suites: impl IntoIterator<Item = S>) -> Self {
        self.suites = suites.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_max_atoms(mut self, n: u8) -> Self {
        self.max_atoms = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=4).contains(&self.max_atoms) {
            return Err(Error::precondition(format!("max_atoms must be in 1..=4, got {}", self.max_atoms)));
        }
        if self.samples == 0 || self.selectors == 0 {
            return Err(Error::precondition("samples and selectors must be at least 1"));
        }
        if self.cycle_bound == Some(0) {
            return Err(Error::precondition("cycle bound must be at least 1"));
        }
        for s in &self.suites {
            if !SUITES.iter().any(|(name, _)| name == s) {
                return Err(Error::precondition(format!("unknown suite `{s}`")));
            }
        }
        Ok(())
    }

    pub fn bounds(&self, algebra: Algebra) -> Bounds {
        let d = Bounds::default_for(algebra);
        Bounds::new(self.prefix_bound.unwrap_or(d.prefix), self.cycle_bound.unwrap_or(d.cycle))
    }

    /// Exhaustive within bounds when small enough, else seeded-random.
    pub fn corpus(&self, algebra: Algebra) -> Result<Vec<EPSequence>> {
        corpus::generate(algebra, self.bounds(algebra), self.seed_for(algebra), self.samples)
    }

    fn seed_for(&self, algebra: Algebra) -> u64 {
        self.seed.wrapping_add(algebra.atoms() as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub suite: String,
    pub atoms: u8,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
    /// Seconds per suite; not part of the canonical payload.
    #[serde(skip)]
    pub timing: Vec<(String, f64)>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Checks whose name starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }

    /// Pretty JSON with sorted keys and no timing; byte-identical across
    /// runs of one config.
    pub fn canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn timing_json(&self) -> String {
        let m: BTreeMap<&str, f64> = self.timing.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        serde_json::to_string_pretty(&m).expect("timing serializes")
    }
}

struct Ctx {
    config: SuiteConfig,
    caps: Caps,
    corpora: Vec<Vec<EPSequence>>,
}

impl Ctx {
    fn algebra(&self, n: u8) -> Algebra {
        Algebra::new(n as usize).expect("validated atom count")
    }

    fn corpus(&self, n: u8) -> &[EPSequence] {
        &self.corpora[n as usize - 1]
    }

    fn rng(&self, n: u8, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ (salt << 8) ^ n as u64)
    }

    fn topology(&self, c: &Convergence, n: u8) -> Result<FiniteTopology> {
        sequential_topology(c, self.algebra(n), &self.caps)
    }
}

struct Out {
    suite: &'static str,
    atoms: u8,
    checks: Vec<CheckResult>,
}

impl Out {
    fn push(&mut self, name: impl AsRef<str>, verdict: Verdict) {
        self.push_with(name, verdict, Value::Null);
    }

    fn push_with(&mut self, name: impl AsRef<str>, verdict: Verdict, details: Value) {
        self.checks.push(CheckResult {
            name: format!("{}/{}/n={}", self.suite, name.as_ref(), self.atoms),
            suite: self.suite.to_string(),
            atoms: self.atoms,
            verdict,
            details,
        });
    }
}

/// An expected counterexample: passes, keeping the witness, iff `v` fails.
fn expect_fail(v: Verdict) -> Verdict {
    if v.holds {
        Verdict::fail(v.checked, Witness::note("expected a counterexample, found none"))
    } else {
        Verdict { holds: true, ..v }
    }
}

fn expect(checked: usize, ok: bool, note: impl Into<String>) -> Verdict {
    if ok {
        Verdict::pass(checked)
    } else {
        Verdict::fail(checked, Witness::note(note))
    }
}

fn same_topology(a: &FiniteTopology, b: &FiniteTopology) -> Verdict {
    let witness = a
        .closed_sets()
        .find(|f| !b.is_closed(*f))
        .map(|f| Witness::set(f.to_words(), format!("closed in {} only", a.label())))
        .or_else(|| {
            b.closed_sets()
                .find(|f| !a.is_closed(*f))
                .map(|f| Witness::set(f.to_words(), format!("closed in {} only", b.label())))
        });
    Verdict::from_option(a.len().max(b.len()), witness)
}

fn with_topology(v: Verdict, t: &FiniteTopology, size: usize) -> Value {
    if v.holds {
        json!({ "family_size": size })
    } else {
        json!({ "family_size": size, "topology": t })
    }
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let caps = Caps::default();
    let corpora = (1..=config.max_atoms)
        .map(|n| config.corpus(Algebra::new(n as usize)?))
        .collect::<Result<Vec<_>>>()?;
    let ctx = Ctx {
        config: config.clone(),
        caps,
        corpora,
    };
    let selected: Vec<(&'static str, u8)> = SUITES
        .iter()
        .copied()
        .filter(|(name, _)| config.suites.iter().any(|s| s == name))
        .collect();
    let jobs: Vec<(&'static str, u8)> = selected
        .iter()
        .flat_map(|&(name, ceiling)| (1..=config.max_atoms.min(ceiling)).map(move |n| (name, n)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(name, n)| {
            let start = Instant::now();
            let mut out = Out {
                suite: name,
                atoms: n,
                checks: Vec::new(),
            };
            run_one(&ctx, &mut out)?;
            Ok((out.checks, format!("{name}/n={n}"), start.elapsed().as_secs_f64()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    let mut timing = Vec::new();
    for (c, key, secs) in results {
        checks.extend(c);
        timing.push((key, secs));
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().filter(|c| c.verdict.holds).count();
    Ok(SuiteReport {
        config: config.clone(),
        passed,
        failed: checks.len() - passed,
        checks,
        timing,
    })
}

fn run_one(ctx: &Ctx, out: &mut Out) -> Result<()> {
    match out.suite {
        "algebra" => algebra_suite(ctx, out),
        "sequences" => sequences_suite(ctx, out),
        "convergence" => convergence_suite(ctx, out),
        "lattice" => lattice_suite(ctx, out),
        "diagram" => diagram_suite(ctx, out),
        "topological" => topological_suite(ctx, out),
        "closed-sets" => closed_sets_suite(ctx, out),
        "maximality" => maximality_suite(ctx, out),
        "forcing" => forcing_suite(ctx, out),
        "intersection" => intersection_suite(ctx, out),
        "zero-limsup" => zero_limsup_suite(ctx, out),
        "stable-closure" => stable_closure_suite(ctx, out),
        "meet-continuity" => meet_continuity_suite(ctx, out),
        "antitone" => antitone_suite(ctx, out),
        "hbar" => hbar_suite(ctx, out),
        "soundness" => soundness_suite(ctx, out),
        "cube" => cube_suite(ctx, out),
        other => Err(Error::precondition(format!("unknown suite `{other}`"))),
    }
}

fn algebra_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let elems: Vec<_> = b.elements().collect();
    let m = elems.len();
    let triples: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
        .collect();
    let v = scan(&triples, |&(i, j, k)| {
        let (x, y, z) = (elems[i], elems[j], elems[k]);
        let ok = x.meet(y.join(z)?)? == x.meet(y)?.join(x.meet(z)?)?
            && x.join(y.meet(z)?)? == x.join(y)?.meet(x.join(z)?)?
            && x.meet(y)?.complement() == x.complement().join(y.complement())?
            && x.meet(x.join(y)?)? == x
            && x.meet(x.complement())?.is_bottom()
            && x.join(x.complement())?.is_top();
        Ok((!ok).then(|| Witness::set(vec![x.word(), y.word(), z.word()], "Boolean law fails")))
    })?;
    out.push("boolean-laws", v);
    let sets: Vec<u64> = (0..=b.carrier_bits()).step_by(if out.atoms == 4 { 7 } else { 1 }).collect();
    let v = scan(&sets, |&bits| {
        let a = b.set(bits);
        let ok = a.is_subset(a.up_closure())?
            && a.up_closure().up_closure() == a.up_closure()
            && a.down_closure().down_closure() == a.down_closure()
            && a.up_closure().is_up_closed()
            && a.complement_each().up_closure() == a.down_closure().complement_each();
        Ok((!ok).then(|| Witness::set(a.to_words(), "closure law fails")))
    })?;
    out.push("closure-laws", v);
    Ok(())
}

/// `limsup` as `⋀_k ⋁_{m≥k} x_m` over an explicit window of terms.
fn truncated_limits(x: &EPSequence) -> (u64, u64) {
    let p = x.prefix().len();
    let c = x.cycle().len();
    // terms m >= k take every value of x_k .. x_{max(k, p) + c - 1}
    let sup_from = |k: usize| (k..k.max(p) + c).fold(0u64, |acc, m| acc | x.get(m).word());
    let inf_from = |k: usize| (k..k.max(p) + c).fold(x.algebra().top().word(), |acc, m| acc & x.get(m).word());
    // beyond p + c the tails repeat
    let limsup = (0..=p + c).fold(x.algebra().top().word(), |acc, k| acc & sup_from(k));
    let liminf = (0..=p + c).fold(0, |acc, k| acc | inf_from(k));
    (liminf, limsup)
}

fn sequences_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    out.push(
        "truncation-oracle",
        scan(xs, |x| {
            let (inf, sup) = truncated_limits(x);
            let ok = inf == x.liminf().word() && sup == x.limsup().word();
            Ok((!ok).then(|| Witness::sequence(x, format!("window gives liminf {inf}, limsup {sup}"))))
        })?,
    );
    out.push(
        "boolean-values",
        scan(xs, |x| {
            let ok = boolean_value(x, Statement::Infinite) == x.limsup()
                && boolean_value(x, Statement::Cofinite) == x.liminf();
            Ok((!ok).then(|| Witness::sequence(x, "forcing value differs from limsup/liminf")))
        })?,
    );
    let again = ctx.config.corpus(b)?;
    let sorted = xs.windows(2).all(|w| w[0] < w[1]);
    out.push_with(
        "corpus-determinism",
        expect(xs.len(), again == xs && sorted, "corpus differs between runs or has duplicates"),
        json!({ "corpus_size": xs.len() }),
    );
    let mut rng = ctx.rng(out.atoms, 1);
    let pairs: Vec<_> = (0..ctx.config.samples)
        .map(|_| {
            let x = corpus::random_sequence(&mut rng, b, ctx.config.bounds(b))?;
            Ok((x, corpus::random_selector(&mut rng)))
        })
        .collect::<Result<_>>()?;
    out.push(
        "composition-oracle",
        scan(&pairs, |(x, a)| {
            let y = compose_with_enumeration(x, a)?;
            let bad = a.members().take(32).enumerate().find(|&(i, m)| y.get(i) != x.get(m));
            Ok(bad.map(|(i, _)| Witness::sequence(x, format!("term {i} of x∘f_A differs, A = {a:?}"))))
        })?,
    );
    Ok(())
}

fn convergence_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    for c in [Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI] {
        let r = check_axioms(&c, b, xs)?;
        out.push(format!("l1/{c}"), r.l1);
        out.push(format!("l2/{c}"), r.l2);
        out.push(format!("l3/{c}"), r.l3);
        if c == Convergence::LambdaS {
            out.push(format!("hausdorff/{c}"), r.hausdorff);
        } else {
            out.push(format!("not-hausdorff/{c}"), expect_fail(r.hausdorff));
        }
        let star = Convergence::star(c.clone());
        out.push(format!("star-idempotent/{c}"), convergence_eq(&Convergence::star(star.clone()), &star, xs)?);
        out.push(format!("below-star/{c}"), convergence_le(&c, &star, xs)?);
    }
    let star_s = Convergence::star(Convergence::LambdaS);
    out.push("hausdorff/star:s", check_axioms(&star_s, b, xs)?.hausdorff);
    let lim_s = Convergence::lim_of(ctx.topology(&Convergence::LambdaS, out.atoms)?);
    out.push("star-equals-lim/s", convergence_eq(&star_s, &lim_s, xs)?);
    out.push("not-below/ls,s", expect_fail(convergence_le(&Convergence::LambdaLS, &Convergence::LambdaS, xs)?));
    out.push("not-l2/l4", expect_fail(check_axioms(&Convergence::LambdaI(4), b, xs)?.l2));
    Ok(())
}

fn lattice_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let xs = ctx.corpus(out.atoms);
    let (s, ls, li) = (Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI);
    let meet = Convergence::meet(ls.clone(), li.clone());
    out.push("meet-equals-s", convergence_eq(&meet, &s, xs)?);
    let star_meet = Convergence::meet(Convergence::star(ls.clone()), Convergence::star(li.clone()));
    out.push("star-s-equals-meet-of-stars", convergence_eq(&Convergence::star(s.clone()), &star_meet, xs)?);
    out.push("star-of-meet-equals-meet-of-stars", convergence_eq(&Convergence::star(meet), &star_meet, xs)?);
    out.push("s-below-ls", convergence_le(&s, &ls, xs)?);
    out.push("s-below-li", convergence_le(&s, &li, xs)?);
    let os = ctx.topology(&s, out.atoms)?;
    for c in [&ls, &li] {
        let t = ctx.topology(c, out.atoms)?;
        out.push(format!("opens-within-s/{c}"), expect(t.len(), t.opens_within(&os), "open set missing from O(s)"));
    }
    Ok(())
}

fn diagram_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let xs = ctx.corpus(out.atoms);
    let l4 = Convergence::LambdaI(4);
    let ls = Convergence::LambdaLS;
    let ols = ctx.topology(&ls, out.atoms)?;
    for i in 1..=3 {
        out.push(format!("equal/l{i},l4"), convergence_eq(&Convergence::LambdaI(i), &l4, xs)?);
    }
    out.push("below/l0,l1", convergence_le(&Convergence::LambdaI(0), &Convergence::LambdaI(1), xs)?);
    out.push("equal/l0,s", convergence_eq(&Convergence::LambdaI(0), &Convergence::LambdaS, xs)?);
    for i in 1..=4 {
        let li = Convergence::LambdaI(i);
        out.push(format!("bar-equals-ls/l{i}"), convergence_eq(&Convergence::bar(li.clone()), &ls, xs)?);
        let t = ctx.topology(&li, out.atoms)?;
        out.push(format!("topology-equals-ls/l{i}"), same_topology(&t, &ols));
    }
    let star_bar = Convergence::star(Convergence::bar(l4.clone()));
    let lim4 = Convergence::lim_of(ctx.topology(&l4, out.atoms)?);
    out.push("star-bar-equals-lim/l4", convergence_eq(&star_bar, &lim4, xs)?);
    Ok(())
}

fn topological_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    let caps = &ctx.caps;
    for c in [Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI] {
        out.push(format!("topological/{c}"), is_topological_convergence(&c, b, xs, caps)?);
        out.push(format!("weakly-topological/{c}"), is_weakly_topological(&c, b, xs, caps)?);
        let closed = generate_sequential_topology(&c, b, caps)?;
        let open = generate_open_form(&c, b, caps)?;
        out.push(format!("generators-agree/{c}"), same_topology(&closed, &open));
        out.push(format!("sequence-generator-agrees/{c}"), same_topology(&closed, &generate_by_sequences(&c, b)?));
        let lim = Convergence::lim_of(closed.clone());
        out.push(format!("star-below-lim/{c}"), convergence_le(&Convergence::star(c.clone()), &lim, xs)?);
        // every non-closed set is left by a convergent sequence inside it
        let bad = (0..=b.carrier_bits()).map(|w| b.set(w)).find(|&a| {
            !closed.is_closed(a) && a.nonempty_subsets().all(|t| closed.lim_support(t).bits() & !a.bits() == 0)
        });
        out.push(
            format!("sequential-space/{c}"),
            Verdict::from_option(1 << b.size(), bad.map(|a| Witness::set(a.to_words(), "sequentially closed but not closed"))),
        );
    }
    for t in [FiniteTopology::discrete(b)?, FiniteTopology::indiscrete(b)?, ctx.topology(&Convergence::LambdaLS, out.atoms)?] {
        let label = t.label().to_string();
        let lim = Convergence::lim_of(t);
        out.push(format!("lim-topological/{label}"), is_topological_convergence(&lim, b, xs, caps)?);
    }
    Ok(())
}

fn closed_sets_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    for (c, flavor) in [(Convergence::LambdaLS, Flavor::Ls), (Convergence::LambdaLI, Flavor::Li)] {
        let t = generate_sequential_topology(&c, b, &ctx.caps)?;
        let monotone = (0..=b.carrier_bits())
            .map(|w| b.set(w))
            .filter(|f| if flavor == Flavor::Ls { f.is_up_closed() } else { f.is_down_closed() });
        let kind = if flavor == Flavor::Ls { "up-sets" } else { "down-sets" };
        let expected = FiniteTopology::from_closed_sets(b, monotone)?.with_label(kind);
        let v = same_topology(&t, &expected);
        let details = with_topology(v.clone(), &t, t.len());
        out.push_with(format!("closed-are-{kind}/{c}"), v, details);
        let r = check_closed_set_characterization(&t, flavor)?;
        let details = with_topology(r.verdict.clone(), &t, r.family_size);
        out.push_with(format!("characterization/{c}"), r.verdict, details);
    }
    out.push("complement-bijection", dual_homeomorphism_check(b, &ctx.caps)?);
    Ok(())
}

fn maximality_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    for c in [Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI] {
        let r = maximality_brute_force(&c, b, xs, &ctx.caps)?;
        let verdict = Verdict {
            holds: r.holds,
            checked: r.topologies_examined,
            witness: r.witness.clone(),
        };
        out.push_with(
            format!("maximal/{c}"),
            verdict,
            json!({
                "topologies_examined": r.topologies_examined,
                "dominating": r.dominating,
                "generated_size": r.generated_size,
            }),
        );
    }
    Ok(())
}

fn forcing_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let xs = ctx.corpus(out.atoms);
    let values: Vec<_> = xs
        .par_iter()
        .map(|x| Ok((ax_bx(x)?, x.liminf().word(), x.limsup().word())))
        .collect::<Result<_>>()?;
    let idx: Vec<usize> = (0..xs.len()).collect();
    let check = |name: &str, f: &(dyn Fn(&crate::forcing::AxBx, u64, u64) -> bool + Sync)| -> Result<Verdict> {
        let note = name.to_string();
        scan(&idx, |&i| {
            let (ab, inf, sup) = &values[i];
            Ok((!f(ab, *inf, *sup)).then(|| {
                Witness::sequence(&xs[i], format!("{note}: a_x = {}, b_x = {}, b_x' = {}", ab.a_x, ab.b_x, ab.b_x_by_subsequences))
            }))
        })
    };
    let le = |a: u64, b: u64| a & !b == 0;
    out.push("chain", check("chain", &|ab, inf, sup| le(inf, ab.a_x) && le(ab.a_x, ab.b_x) && le(ab.b_x, sup))?);
    out.push("ax-equals-liminf", check("a_x", &|ab, inf, _| ab.a_x == inf)?);
    out.push("bx-equals-limsup", check("b_x", &|ab, _, sup| ab.b_x == sup)?);
    out.push("bx-displays-agree", check("b_x displays", &|ab, _, _| ab.b_x == ab.b_x_by_subsequences)?);
    out.push(
        "b-values",
        scan(xs, |x| {
            let b = b_values(x);
            let ok = b[0] == x.liminf() && b[1..].iter().all(|&v| v == x.limsup());
            Ok((!ok).then(|| Witness::sequence(x, format!("b = {:?}", b.map(|e| e.word())))))
        })?,
    );
    for i in 0..=4u8 {
        let c = Convergence::LambdaI(i);
        out.push(
            format!("definition/{c}"),
            scan(xs, |x| {
                let (inf, sup) = x.lim_inf_sup();
                let expected = if i == 0 && inf != sup {
                    x.algebra().empty_set()
                } else {
                    x.algebra().singleton(sup)?
                };
                let got = c.eval(x)?;
                Ok((got != expected).then(|| Witness::sequence(x, format!("{c} gives {got:?}"))))
            })?,
        );
    }
    Ok(())
}

fn intersection_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let mut rng = ctx.rng(out.atoms, 2);
    let pairs: Vec<_> = (0..ctx.config.samples)
        .map(|_| {
            let x = corpus::random_sequence(&mut rng, b, ctx.config.bounds(b))?;
            Ok((x, corpus::random_selector(&mut rng)))
        })
        .collect::<Result<_>>()?;
    let v = scan(&pairs, |(x, a)| {
        let (p, q) = (intersection_infinite_value(x, a)?, intersection_infinite_value_by_atoms(x, a)?);
        Ok((p != q).then(|| Witness::sequence(x, format!("A = {a:?}: composition {}, atoms {}", p.word(), q.word()))))
    })?;
    out.push_with("paths-agree", v, json!({ "pairs": pairs.len() }));
    Ok(())
}

fn zero_limsup_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let xs = ctx.corpus(out.atoms);
    let selectors = corpus::random_selectors(ctx.config.seed ^ 3, ctx.config.selectors);
    out.push(
        "forms-agree",
        scan(xs, |x| {
            let r = zero_limsup_forms(x, &selectors)?;
            Ok((!r.agree()).then(|| {
                Witness::sequence(x, format!("subsequence form {}, name form {}", r.subsequence_form, r.name_form))
            }))
        })?,
    );
    out.push(
        "only-bottom-recurs",
        scan(xs, |x| {
            let r = zero_limsup_forms(x, &[])?;
            // a constant subsequence at a nonzero tail value has no null part
            let b = x.algebra();
            let expected = x.tail_support() == b.singleton(b.bottom())?;
            Ok((r.subsequence_form != expected).then(|| Witness::sequence(x, "zero limsup iff only ⊥ recurs")))
        })?,
    );
    Ok(())
}

fn stable_closure_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let stable: Vec<EPSequence> = ctx.corpus(out.atoms).iter().filter(|x| x.is_limsup_stable()).cloned().collect();
    let v = scan(&stable, |x| {
        let got = closure_fixpoint(&Convergence::LambdaLS, x.range())?.closure;
        let mut expected = x.limsup().up();
        for e in x.range().iter() {
            expected = expected.union(e.up())?;
        }
        Ok((got != expected).then(|| Witness::sequence(x, format!("closure {got:?}, formula {expected:?}"))))
    })?;
    out.push_with("formula", v, json!({ "stable_sequences": stable.len() }));
    Ok(())
}

fn meet_continuity_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let t = ctx.topology(&Convergence::LambdaLS, out.atoms)?;
    let closed: Vec<ElementSet> = t.closed_sets().collect();
    let elems: Vec<_> = b.elements().collect();
    let v = scan(&elems, |&a| {
        for f in &closed {
            let pre = b.set_from_words(b.elements().filter(|y| f.contains(y.meet(a).unwrap())).map(|y| y.word()))?;
            if !t.is_closed(pre) {
                return Ok(Some(Witness::set(f.to_words(), format!("preimage under ∧{} is not closed", a.word()))));
            }
        }
        Ok(None)
    })?;
    out.push("meet-map-continuous", v);
    let mut rng = ctx.rng(out.atoms, 4);
    let bounds = ctx.config.bounds(b);
    let pairs: Vec<_> = (0..ctx.config.samples)
        .map(|_| {
            let x = corpus::random_sequence(&mut rng, b, bounds)?;
            let z = corpus::random_sequence(&mut rng, b, bounds)?;
            let y = x.zip_with(&z, |p, q| p.join(q).expect("same algebra"))?;
            Ok((x, y))
        })
        .collect::<Result<_>>()?;
    let v = scan(&pairs, |(x, y)| {
        let (lx, ly) = (t.lim(x)?, t.lim(y)?);
        Ok((!ly.is_subset(lx)?).then(|| Witness::sequence(x, format!("y = {y}: lim y {ly:?} ⊄ lim x {lx:?}"))))
    })?;
    out.push_with("pointwise-below-antitone", v, json!({ "pairs": pairs.len() }));
    Ok(())
}

fn antitone_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    let mut ts = vec![FiniteTopology::discrete(b)?, FiniteTopology::indiscrete(b)?];
    for c in [Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI, Convergence::LambdaI(4)] {
        ts.push(ctx.topology(&c, out.atoms)?);
    }
    ts.push(Cube::Aleksandrov.topology(b, &ctx.caps)?);
    let mut pairs = Vec::new();
    for i in 0..ts.len() {
        for j in 0..ts.len() {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    let finer = scan(&pairs, |&(i, j)| {
        if !ts[i].opens_within(&ts[j]) {
            return Ok(None);
        }
        for x in xs {
            if !ts[j].lim(x)?.is_subset(ts[i].lim(x)?)? {
                return Ok(Some(Witness::sequence(x, format!("{} ⊆ {} but lim grows", ts[i].label(), ts[j].label()))));
            }
        }
        Ok(None)
    })?;
    out.push("finer-has-fewer-limits", finer);
    let equal = scan(&pairs, |&(i, j)| {
        let mut same = true;
        for x in xs {
            if ts[i].lim(x)? != ts[j].lim(x)? {
                same = false;
                break;
            }
        }
        Ok((same && ts[i] != ts[j]).then(|| Witness::note(format!("{} and {} share lim but differ", ts[i].label(), ts[j].label()))))
    })?;
    out.push("lim-determines-topology", equal);
    Ok(())
}

fn hbar_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    let r = condition_hbar(b, &ctx.caps)?;
    let v = Verdict {
        holds: r.holds,
        checked: r.supports_checked,
        witness: r.counterexample.clone().map(|s| Witness::set(s, "no limsup-stable part")),
    };
    out.push_with("supports", v, json!({ "largest_witness": r.largest_witness }));
    out.push("corpus", condition_hbar_on(xs)?);
    out.push("weakly-topological/ls", is_weakly_topological(&Convergence::LambdaLS, b, xs, &ctx.caps)?);
    Ok(())
}

fn builtins() -> Vec<Convergence> {
    let mut v = vec![Convergence::LambdaS, Convergence::LambdaLS, Convergence::LambdaLI];
    v.extend((0..=4).map(Convergence::LambdaI));
    v.push(Convergence::star(Convergence::LambdaS));
    v.push(Convergence::meet(Convergence::LambdaLS, Convergence::LambdaLI));
    v
}

fn soundness_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    let selectors = corpus::random_selectors(ctx.config.seed ^ 5, ctx.config.selectors);
    let subsequences: Vec<Vec<EPSequence>> = xs
        .par_iter()
        .map(|x| selectors.iter().map(|a| compose_with_enumeration(x, a)).collect())
        .collect::<Result<_>>()?;
    let idx: Vec<usize> = (0..xs.len()).collect();
    out.push(
        "subsequence-supports",
        scan(&idx, |&i| {
            let ts = xs[i].tail_support();
            let bad = subsequences[i].iter().find(|y| y.tail_support().is_empty() || !y.tail_support().is_subset(ts).unwrap_or(false));
            Ok(bad.map(|y| Witness::sequence(&xs[i], format!("subsequence {y} leaves the tail support"))))
        })?,
    );
    for c in builtins() {
        out.push(
            format!("tail-support-determined/{c}"),
            scan(xs, |x| {
                let (v, w) = (c.eval(x)?, c.eval_support(x.tail_support())?);
                Ok((v != w).then(|| Witness::sequence(x, format!("{v:?} but canonical representative gives {w:?}"))))
            })?,
        );
        out.push(
            format!("selector-oracle/{c}"),
            scan(&idx, |&i| {
                let x = &xs[i];
                for y in &subsequences[i] {
                    let w = x.witness_subsequence(y.tail_support())?;
                    if c.eval(y)? != c.eval(&w)? {
                        return Ok(Some(Witness::sequence(x, format!("sampled subsequence {y} disagrees with {w}"))));
                    }
                }
                Ok(None)
            })?,
        );
        let sampled = scan(&idx, |&i| {
            let x = &xs[i];
            let v = c.eval(x)?;
            for y in &subsequences[i] {
                if !v.is_subset(c.eval(y)?)? {
                    return Ok(Some(Witness::sequence(x, format!("limit lost on {y}"))));
                }
            }
            Ok(None)
        })?;
        let reduced = check_axioms(&c, b, xs)?.l2;
        out.push(
            format!("l2-agreement/{c}"),
            expect(
                xs.len(),
                sampled.holds == reduced.holds,
                format!("sampled L2 {} but subset reduction {}", sampled.holds, reduced.holds),
            ),
        );
    }
    Ok(())
}

fn cube_suite(ctx: &Ctx, out: &mut Out) -> Result<()> {
    let b = ctx.algebra(out.atoms);
    let xs = ctx.corpus(out.atoms);
    for (cube, c) in [(Cube::Cantor, Convergence::LambdaS), (Cube::Aleksandrov, Convergence::LambdaLS)] {
        let t = cube.topology(b, &ctx.caps)?;
        let name = format!("{cube:?}").to_lowercase();
        out.push(
            format!("coordinate-limits/{name}"),
            scan(xs, |x| {
                let (direct, top, conv) = (cube.coordinate_lim(x), t.lim(x)?, c.eval(x)?);
                Ok((direct != top || top != conv)
                    .then(|| Witness::sequence(x, format!("coordinates {direct:?}, topology {top:?}, {c} {conv:?}"))))
            })?,
        );
        out.push(format!("is-sequential-topology/{name}"), same_topology(&t, &ctx.topology(&c, out.atoms)?));
    }
    out.push("topological/s", is_topological_convergence(&Convergence::LambdaS, b, xs, &ctx.caps)?);
    Ok(())
}
