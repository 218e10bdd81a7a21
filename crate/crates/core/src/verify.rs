//! Seeded verification suites with deterministic reports.
//!
//! Each suite runs independent trials, possibly in parallel, and merges
//! them in seed order, so a report depends only on the suite, the seed, the
//! trial count and the `h` bound.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::gluing::{
    compose_iso, glue_corpus, identity_witness, naturality_witness, pants_iso, self_glue_iso, symmetrizer_witness,
};
use crate::grading::{
    constraint_residuals, format_rational, int, rat, solve_constraints, AffineExpr, Grading, ParityParams, Rational,
    ShiftParams,
};
use crate::homology::oracle::relative_h1;
use crate::homology::canonical_basis;
use crate::random::{random_pair_with, random_surface_with, rng_for, Bounds};
use crate::statespace::{graded_superdim, reference_dimension_fgp, StateSpace};
use crate::surface::{compose, disjoint_union, surface_fgp, BoundaryArc, BoundaryCircle, SPlusId, SuturedSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Composition,
    SelfGlueCases,
    Pants,
    StructureMaps,
    Constraints,
    Dimensions,
    HomologyOracle,
    Invariants,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Composition,
        Suite::SelfGlueCases,
        Suite::Pants,
        Suite::StructureMaps,
        Suite::Constraints,
        Suite::Dimensions,
        Suite::HomologyOracle,
        Suite::Invariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Composition => "theorem",
            Suite::SelfGlueCases => "lemma-cases",
            Suite::Pants => "pants",
            Suite::StructureMaps => "corollary",
            Suite::Constraints => "constraints",
            Suite::Dimensions => "dimensions",
            Suite::HomologyOracle => "homology-oracle",
            Suite::Invariants => "invariants",
        }
    }

    /// Trials run when none are requested.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Composition => 200,
            Suite::StructureMaps => 20,
            Suite::Constraints => 50,
            Suite::HomologyOracle | Suite::Invariants => 100,
            Suite::SelfGlueCases | Suite::Pants | Suite::Dimensions => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite `{s}`, expected one of {}", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: Option<usize>,
    pub max_h: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            trials: None,
            max_h: 8,
        }
    }
}

/// One failed check, with enough context to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: Option<u64>,
    /// Surface files and parameters.
    pub instance: String,
    /// The identity that failed.
    pub identity: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: Suite,
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The report without timing, identical across runs with the same
    /// options.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}: {} trials, {} checks, {} failures",
            self.suite,
            self.trials,
            self.checks,
            self.failures.len()
        );
        for f in &self.failures {
            match f.seed {
                Some(seed) => {
                    let _ = writeln!(out, "failure (seed {seed}): {}", f.identity);
                }
                None => {
                    let _ = writeln!(out, "failure: {}", f.identity);
                }
            }
            for line in f.instance.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

/// Outcome of one trial: checks made and failures found.
type Outcome = (usize, Vec<Failure>);

fn failure(seed: Option<u64>, instance: impl Into<String>, identity: impl fmt::Display) -> Failure {
    Failure {
        seed,
        instance: instance.into(),
        identity: identity.to_string(),
    }
}

fn check(outcome: &mut Outcome, ok: bool, seed: Option<u64>, instance: impl FnOnce() -> String, identity: &str) {
    outcome.0 += 1;
    if !ok {
        outcome.1.push(failure(seed, instance(), identity));
    }
}

/// Runs `trial` for seeds `seed, seed + 1, ...` in parallel and merges the
/// outcomes in seed order.
fn seeded(opts: &VerifyOptions, trials: usize, trial: impl Fn(u64) -> Outcome + Sync) -> Outcome {
    let outcomes: Vec<Outcome> = (0..trials as u64)
        .into_par_iter()
        .map(|i| trial(opts.seed.wrapping_add(i)))
        .collect();
    outcomes.into_iter().fold((0, vec![]), |mut acc, (n, f)| {
        acc.0 += n;
        acc.1.extend(f);
        acc
    })
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let trials = opts.trials.unwrap_or(suite.default_trials());
    let (checks, failures) = match suite {
        Suite::Composition => random_compositions(opts, trials),
        Suite::SelfGlueCases => self_glue_cases(),
        Suite::Pants => pants(),
        Suite::StructureMaps => structure_maps(opts, trials),
        Suite::Constraints => constraints(opts, trials),
        Suite::Dimensions => dimensions(),
        Suite::HomologyOracle => homology_oracle(opts, trials),
        Suite::Invariants => invariants(opts, trials),
    };
    VerificationReport {
        suite,
        trials,
        checks,
        failures,
        wall_time: start.elapsed(),
    }
}

fn pair_dump(fp: &SuturedSurface, f: &SuturedSurface, grading: &Grading) -> String {
    format!(
        "grading: {grading}\n# F' (outer)\n{}# F (inner)\n{}",
        fp.to_text(),
        f.to_text()
    )
}

/// Whether a grading has a parity on every surface involved.
fn defined_on(grading: &Grading, surfaces: &[&SuturedSurface]) -> bool {
    surfaces.iter().all(|s| grading.pi(s).is_ok())
}

fn random_compositions(opts: &VerifyOptions, trials: usize) -> Outcome {
    let bounds = Bounds::default().with_max_h(opts.max_h);
    seeded(opts, trials, |seed| {
        let (fp, f) = random_pair_with(&mut rng_for(seed), &bounds);
        let mut outcome = (0, vec![]);
        let Ok(composite) = compose(&fp, &f) else {
            outcome.1.push(failure(Some(seed), pair_dump(&fp, &f, &Grading::tensor()), "pair does not compose"));
            return outcome;
        };
        for grading in [Grading::tensor(), Grading::half()] {
            if !defined_on(&grading, &[&fp, &f, &composite]) {
                continue;
            }
            outcome.0 += 1;
            let fails = |fp: &SuturedSurface, f: &SuturedSurface| compose_iso(fp, f, &grading).err();
            if let Some(err) = fails(&fp, &f) {
                let (fp, f, err) = shrink_pair(&fp, &f, err, |a, b| {
                    if !defined_on(&grading, &[a, b]) || compose(a, b).map_or(true, |c| grading.pi(&c).is_err()) {
                        return None;
                    }
                    fails(a, b)
                });
                outcome.1.push(failure(Some(seed), pair_dump(&fp, &f, &grading), err));
            }
        }
        outcome
    })
}

/// Smaller variants of `f` that keep the ids in `keep`.
fn shrink_candidates(f: &SuturedSurface, keep: &[SPlusId]) -> Vec<SuturedSurface> {
    let touches = |ids: &[SPlusId]| ids.iter().any(|id| keep.contains(id));
    let mut out = Vec::new();
    let relist = |mut g: SuturedSurface| {
        let present = g.splus_ids();
        g.incoming.retain(|id| present.contains(id));
        g.outgoing.retain(|id| present.contains(id));
        g
    };
    for c in 0..f.components.len() {
        if !touches(&f.components[c].splus_ids()) {
            let mut g = f.clone();
            g.components.remove(c);
            out.push(relist(g));
        }
        if f.components[c].genus > 0 {
            let mut g = f.clone();
            g.components[c].genus -= 1;
            out.push(g);
        }
        for j in 0..f.components[c].boundary.len() {
            let circle = &f.components[c].boundary[j];
            if !touches(&circle.splus_ids()) {
                let mut g = f.clone();
                g.components[c].boundary.remove(j);
                out.push(relist(g));
            }
            if let BoundaryCircle::Mixed(word) = circle {
                for (k, arc) in word.iter().enumerate() {
                    let BoundaryArc::Plus(id) = arc else { continue };
                    if keep.contains(id) {
                        continue;
                    }
                    let mut w = word.clone();
                    w.drain(k..k + 2);
                    let mut g = f.clone();
                    g.components[c].boundary[j] = if w.is_empty() {
                        BoundaryCircle::FullMinus
                    } else {
                        BoundaryCircle::Mixed(w)
                    };
                    out.push(relist(g));
                }
            }
        }
    }
    out
}

/// Greedily replaces the pair by smaller pairs that still fail.
fn shrink_pair<E>(
    fp: &SuturedSurface,
    f: &SuturedSurface,
    err: E,
    fails: impl Fn(&SuturedSurface, &SuturedSurface) -> Option<E>,
) -> (SuturedSurface, SuturedSurface, E) {
    let (mut fp, mut f, mut err) = (fp.clone(), f.clone(), err);
    'outer: loop {
        for g in shrink_candidates(&f, &f.outgoing) {
            if let Some(e) = fails(&fp, &g) {
                (f, err) = (g, e);
                continue 'outer;
            }
        }
        for g in shrink_candidates(&fp, &fp.incoming) {
            if let Some(e) = fails(&g, &f) {
                (fp, err) = (g, e);
                continue 'outer;
            }
        }
        return (fp, f, err);
    }
}

fn self_glue_cases() -> Outcome {
    let mut outcome = (0, vec![]);
    for c in glue_corpus() {
        for grading in [Grading::tensor(), Grading::half()] {
            if !defined_on(&grading, &[&c.surface]) {
                continue;
            }
            let dump = || format!("{} ({}), grading {grading}\n{}", c.name, c.case, c.surface.to_text());
            let r = match self_glue_iso(&c.surface, c.first, c.second, &grading) {
                Ok(r) => r,
                Err(e) => {
                    outcome.0 += 1;
                    outcome.1.push(failure(None, dump(), e));
                    continue;
                }
            };
            let shift = int(if c.case.rank_change() == 0 { 0 } else { 1 });
            let rank_drop = (r.source.h() - r.target.h()) as u8 % 2;
            check(&mut outcome, r.glued.case == c.case, None, dump, "gluing case");
            check(
                &mut outcome,
                r.glued.created_sminus_circles == c.created_sminus_circles,
                None,
                dump,
                "number of new S- circles",
            );
            check(&mut outcome, r.oracle.rank() == r.target.rank(), None, dump, "oracle rank = rank of the glued state space");
            check(&mut outcome, r.degree_shift == shift, None, dump, "degree shift per case");
            check(&mut outcome, r.parity_shift == rank_drop, None, dump, "parity shift = drop of h mod 2");
        }
    }
    outcome
}

fn pants() -> Outcome {
    let mut outcome = (0, vec![]);
    for p in 0..=4usize {
        let dump = || format!("open pants P_{p}, grading tensor");
        match pants_iso(p, &Grading::tensor()) {
            Ok(iso) => {
                let top = (1usize << p) - 1;
                let column = iso.matrix.column(top);
                // the unit of the algebra is basis element 0, in degree 0
                let ok = matches!(column, [(0, s)] if s.abs() == 1);
                check(&mut outcome, ok, None, dump, "top monomial maps to ±1");
                check(&mut outcome, iso.block_ranks.iter().map(|b| b.2).sum::<usize>() == 1 << p, None, dump, "rank 2^p");
            }
            Err(e) => {
                outcome.0 += 1;
                outcome.1.push(failure(None, dump(), e));
            }
        }
    }
    outcome
}

fn record(outcome: &mut Outcome, seed: Option<u64>, dump: impl FnOnce() -> String, result: Result<()>) {
    outcome.0 += 1;
    if let Err(e) = result {
        outcome.1.push(failure(seed, dump(), e));
    }
}

/// A small morphism: few intervals on either side and small `h`.
fn small_morphism(rng: &mut impl Rng) -> SuturedSurface {
    let bounds = Bounds {
        max_components: 2,
        max_genus: 1,
        max_circles: 2,
        max_arcs_per_circle: 2,
        max_h: 3,
    };
    loop {
        let f = random_surface_with(rng, &bounds);
        if f.incoming_intervals().len() <= 2 && f.outgoing_intervals().len() <= 2 {
            return f;
        }
    }
}

fn structure_maps(opts: &VerifyOptions, trials: usize) -> Outcome {
    let tensor = Grading::tensor();
    let mut outcome = (0, vec![]);
    for n in 0..=3 {
        record(&mut outcome, None, || format!("identity cobordism on {n} intervals"), identity_witness(n, &tensor).map(drop));
    }
    for (n1, n2) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (0, 3)] {
        record(
            &mut outcome,
            None,
            || format!("symmetrizer cobordism ({n1}, {n2})"),
            symmetrizer_witness(n1, n2, &tensor).map(drop),
        );
    }
    let random = seeded(opts, trials, |seed| {
        let mut rng = rng_for(seed);
        let (f, g) = (small_morphism(&mut rng), small_morphism(&mut rng));
        let mut outcome = (0, vec![]);
        record(
            &mut outcome,
            Some(seed),
            || format!("naturality, grading tensor\n# F\n{}# F'\n{}", f.to_text(), g.to_text()),
            naturality_witness(&f, &g, &tensor).map(drop),
        );
        outcome
    });
    outcome.0 += random.0;
    outcome.1.extend(random.1);
    outcome
}

/// The family every solution of the constraints must lie in.
fn expected_family() -> [AffineExpr; 9] {
    let free = |i: usize| AffineExpr {
        constant: Rational::zero(),
        terms: vec![(i, int(1))],
    };
    let c9 = |coeff: Rational, constant: Rational| AffineExpr {
        constant,
        terms: vec![(8, coeff)],
    };
    [
        c9(int(-2), int(0)),
        c9(int(2), int(0)),
        free(2),
        AffineExpr {
            constant: int(-1),
            terms: vec![],
        },
        free(4),
        c9(rat(1, 2), rat(-1, 2)),
        free(6),
        c9(int(1), int(0)),
        free(8),
    ]
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn constraints(opts: &VerifyOptions, trials: usize) -> Outcome {
    let mut outcome = (0, vec![]);
    match solve_constraints() {
        Ok(solution) => {
            let dump = || {
                solution
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("C{} = {v}\n", i + 1))
                    .collect()
            };
            check(&mut outcome, solution.free == vec![2, 4, 6, 8], None, dump, "free variables C3, C5, C7, C9");
            check(&mut outcome, solution.values == expected_family(), None, dump, "solution family");
        }
        Err(e) => {
            outcome.0 += 1;
            outcome.1.push(failure(None, "constraint system", e));
        }
    }
    let random = seeded(opts, trials, |seed| {
        let mut rng = rng_for(seed);
        let mut outcome = (0, vec![]);
        let shift = ShiftParams::new(
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let c = shift.coefficients();
        check(
            &mut outcome,
            constraint_residuals(&c).iter().all(Zero::is_zero),
            Some(seed),
            || format!("shift {shift}"),
            "the shift family solves every constraint",
        );
        let dependent = [0, 1, 3, 5, 7];
        let mut off = c.clone();
        let k = dependent[rng.gen_range(0..dependent.len())];
        let mut bump = random_rational(&mut rng);
        if bump.is_zero() {
            bump = int(1);
        }
        off[k] += bump;
        check(
            &mut outcome,
            constraint_residuals(&off).iter().any(|r| !r.is_zero()),
            Some(seed),
            || {
                let coeffs: Vec<String> = off.iter().map(format_rational).collect();
                format!("coefficients {}", coeffs.join(", "))
            },
            "a perturbation off the family violates a constraint",
        );
        outcome
    });
    outcome.0 += random.0;
    outcome.1.extend(random.1);
    outcome
}

fn dimensions() -> Outcome {
    let mut outcome = (0, vec![]);
    for g in 0..=3 {
        for p in 1..=4u32 {
            let f = surface_fgp(g, p as usize);
            let dump = || format!("F_{{{g},{p}}}, grading half");
            match graded_superdim(&f, &Grading::half()) {
                Ok(d) => {
                    let expected = reference_dimension_fgp(g, p);
                    check(&mut outcome, d == expected, None, dump, &format!("superdim {d} = {expected}"));
                    check(&mut outcome, d.exponents_integral(), None, dump, "integral exponents");
                }
                Err(e) => {
                    outcome.0 += 1;
                    outcome.1.push(failure(None, dump(), e));
                }
            }
        }
    }
    outcome
}

fn homology_oracle(opts: &VerifyOptions, trials: usize) -> Outcome {
    let bounds = Bounds::default().with_max_h(opts.max_h);
    seeded(opts, trials, |seed| {
        let f = random_surface_with(&mut rng_for(seed), &bounds);
        let oracle = relative_h1(&f);
        let mut outcome = (0, vec![]);
        let dump = || f.to_text();
        check(&mut outcome, oracle.rank == f.rank_h(), Some(seed), dump, "cellular rank = rank_h");
        check(&mut outcome, oracle.torsion.is_empty(), Some(seed), dump, "H1(F, S+) is torsion-free");
        check(
            &mut outcome,
            canonical_basis(&f).len() == f.rank_h(),
            Some(seed),
            dump,
            "canonical basis has rank_h elements",
        );
        outcome
    })
}

/// Relations of the interval actions on one state space.
fn action_relations(s: &StateSpace, outcome: &mut Outcome, seed: Option<u64>, dump: &dyn Fn() -> String) {
    let f = &s.surface;
    let mut actions = Vec::new();
    for id in f.outgoing_intervals().into_iter().chain(f.incoming_intervals()) {
        let e = match s.e_action(id) {
            Ok(e) => e,
            Err(err) => {
                outcome.0 += 1;
                outcome.1.push(failure(seed, dump(), err));
                return;
            }
        };
        let homogeneous = (0..e.matrix.cols()).all(|c| {
            e.matrix
                .column(c)
                .iter()
                .all(|&(r, _)| s.degree(r) + int(1) == s.degree(c) && s.parity(r) != s.parity(c))
        });
        check(outcome, homogeneous, seed, dump, &format!("E_{id} is odd of degree -1"));
        check(outcome, e.matrix.mul(&e.matrix).is_zero(), seed, dump, &format!("E_{id}^2 = 0"));
        actions.push((id, f.is_outgoing(id), e.matrix));
    }
    for (i, (a, a_out, x)) in actions.iter().enumerate() {
        for (b, b_out, y) in &actions[i + 1..] {
            let (xy, yx) = (x.mul(y), y.mul(x));
            if *a_out && *b_out {
                check(outcome, xy.add(&yx).is_zero(), seed, dump, &format!("E_{a} and E_{b} anticommute"));
            } else if *a_out != *b_out {
                check(outcome, xy == yx, seed, dump, &format!("E_{a} and E_{b} commute"));
            }
        }
    }
}

fn invariants(opts: &VerifyOptions, trials: usize) -> Outcome {
    let bounds = Bounds::default().with_max_h(opts.max_h.min(6));
    seeded(opts, trials, |seed| {
        let mut rng = rng_for(seed);
        let f = random_surface_with(&mut rng, &bounds);
        let g = random_surface_with(&mut rng, &bounds);
        let fg = disjoint_union(&f, &g);
        let linear = Grading::new(
            ShiftParams::new(
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
            ),
            ParityParams::new(rng.gen(), rng.gen(), rng.gen(), rng.gen()),
        );
        let mut outcome = (0, vec![]);
        for grading in [Grading::tensor(), linear] {
            let dump = || format!("grading {grading}\n# F\n{}# G\n{}", f.to_text(), g.to_text());
            let spaces = (
                StateSpace::build(&f, &grading),
                StateSpace::build(&g, &grading),
                StateSpace::build(&fg, &grading),
            );
            let (a, b, ab) = match spaces {
                (Ok(a), Ok(b), Ok(ab)) => (a, b, ab),
                (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => {
                    outcome.0 += 1;
                    outcome.1.push(failure(Some(seed), dump(), e));
                    continue;
                }
            };
            action_relations(&a, &mut outcome, Some(seed), &dump);
            check(&mut outcome, ab.delta == &a.delta + &b.delta, Some(seed), dump, "delta is additive");
            check(&mut outcome, ab.pi == (a.pi + b.pi) % 2, Some(seed), dump, "pi is additive mod 2");
            check(
                &mut outcome,
                ab.graded_superdim() == &a.graded_superdim() * &b.graded_superdim(),
                Some(seed),
                dump,
                "superdim is multiplicative",
            );
        }
        outcome
    })
}
