//! Acceptance criteria, one test per criterion. Each test prints a single
//! `PASS`/`FAIL` line with its measurements and asserts its time limit.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use ndmu::bisim::{check_simulation, invariance_test, largest_simulation, SimulationPair};
use ndmu::evalgame::{adequacy_check, game_check, Side};
use ndmu::formula::parse;
use ndmu::gamecore::{check_strategy, solve_parity, Objective, Player};
use ndmu::polarity::{
    close_box_relation, close_dia_relation, CompatSet, ConceptLattice, EnrichedContext, Polarity,
    Relation,
};
use ndmu::random::{
    atom_names, random_alternating_formula, random_board, random_concept, random_formula,
    random_model, random_open_formula, random_polarity, rng, FormulaShape,
};
use ndmu::unfolding::{
    build_unfolding_board, solve_gprime, solve_unfolding_symbolic, BoardOptions, Generators,
    LatticeMap, UnfoldSpec, UNPRUNED_BOUND,
};
use ndmu::Model;

use common::{
    duplicate_object, duplication_pairs, kleene, load, parity_oracle, scan_fixpoints,
    weaken_valuation,
};

fn report(id: u32, name: &str, ok: bool, elapsed: Duration, limit: Duration, detail: String) {
    let within = elapsed < limit;
    println!(
        "[{}] criterion {id}: {name} -- {detail}; {:.2}s (limit {}s)",
        if ok && within { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(within, "criterion {id} exceeded its time limit");
}

#[test]
fn criterion_1_worked_example() {
    let t = Instant::now();
    let model = load("worked_example.model");
    let f = parse("nu x. (box x & q)").unwrap();
    let at_g1 = game_check(&model, &f, Side::Object(model.object("g1").unwrap())).unwrap();
    let at_m2 = game_check(&model, &f, Side::Attribute(model.attribute("m2").unwrap())).unwrap();
    let value = model.evaluate_closed(&f).unwrap();
    let shown = model.context().polarity().show(&value);
    let ok = at_g1.winner == Player::Exists
        && at_m2.winner == Player::Forall
        && shown == "({g1}, {m1, m2})";
    report(
        1,
        "worked example",
        ok,
        t.elapsed(),
        Duration::from_secs(1),
        format!(
            "(g1,φ) won by {}, (m2,φ) won by {}, value {shown}",
            at_g1.winner, at_m2.winner
        ),
    );
}

#[test]
fn criterion_2_adequacy() {
    let t = Instant::now();
    let mut r = rng(2024);
    let atoms = atom_names(3);
    let (mut checks, mut alternating, mut mismatches) = (0usize, 0usize, 0usize);
    for _ in 0..200 {
        let model = random_model(&mut r, 4, 4, &atoms);
        for k in 0..50 {
            let f = if k % 3 == 0 {
                random_alternating_formula(&mut r, &atoms)
            } else {
                random_formula(&mut r, &atoms, FormulaShape::default())
            };
            let order = f.dependency_order();
            if order
                .pairs()
                .any(|(a, b)| a != b && order.kind(a) != order.kind(b))
            {
                alternating += 1;
            }
            checks += 1;
            mismatches += adequacy_check(&model, &f).unwrap().len();
        }
    }
    report(
        2,
        "adequacy",
        mismatches == 0 && alternating > 0,
        t.elapsed(),
        Duration::from_secs(60),
        format!("200 models, {checks} formulas ({alternating} with nu/mu alternation), {mismatches} mismatches"),
    );
}

fn random_maps(seed: u64, count: usize, max_side: usize) -> Vec<LatticeMap> {
    let mut r = rng(seed);
    let atoms = atom_names(2);
    (0..count)
        .map(|_| {
            let m = random_model(&mut r, max_side, max_side, &atoms);
            let f = random_open_formula(&mut r, &atoms, "v", 4);
            LatticeMap::from_formula(&m, &f, "v").unwrap()
        })
        .collect()
}

const SPECS: [(Generators, Player); 4] = [
    (Generators::Join, Player::Exists),
    (Generators::Join, Player::Forall),
    (Generators::Meet, Player::Forall),
    (Generators::Meet, Player::Exists),
];

#[test]
fn criterion_3_unfolding_lemmas() {
    let t = Instant::now();
    let (mut failures, mut distinct) = (Vec::new(), 0);
    let maps = random_maps(3, 150, 4);
    for (i, map) in maps.iter().enumerate() {
        let (lfp, gfp) = kleene(map);
        if lfp != gfp {
            distinct += 1;
        }
        for (gens, winner) in SPECS {
            let r = solve_unfolding_symbolic(map, UnfoldSpec::new(gens, winner)).unwrap();
            let want = if winner == Player::Exists { gfp } else { lfp };
            if r.fixpoint != want {
                failures.push(format!("map {i}: {gens:?}/{winner}"));
            }
        }
        if solve_gprime(map).unwrap().fixpoint != lfp {
            failures.push(format!("map {i}: G'"));
        }
    }
    report(
        3,
        "unfolding lemmas",
        failures.is_empty(),
        t.elapsed(),
        Duration::from_secs(30),
        format!(
            "{} maps ({distinct} with lfp != gfp), 5 games each, failures: {:?}",
            maps.len(),
            failures
        ),
    );
}

#[test]
fn criterion_4_explicit_vs_symbolic() {
    let t = Instant::now();
    let (mut boards, mut largest, mut disagreements) = (0, 0, 0);
    for map in random_maps(4, 200, 6) {
        for (gens, winner) in SPECS {
            let spec = UnfoldSpec::new(gens, winner);
            let symbolic = solve_unfolding_symbolic(&map, spec).unwrap();
            let n = symbolic.generators.len();
            if n > UNPRUNED_BOUND {
                continue;
            }
            let opts = BoardOptions {
                prune: false,
                ..BoardOptions::default()
            };
            let board = build_unfolding_board(&map, spec, 0, opts).unwrap();
            boards += 1;
            largest = largest.max(n);
            if board.result(map.lattice()) != symbolic {
                disagreements += 1;
            }
        }
    }
    report(
        4,
        "explicit vs symbolic unfolding winners",
        disagreements == 0 && boards >= 400,
        t.elapsed(),
        Duration::from_secs(60),
        format!(
            "{boards} unpruned boards (up to {largest} generators), {disagreements} disagreements"
        ),
    );
}

#[test]
fn criterion_5_parity_solver() {
    let t = Instant::now();
    let mut r = rng(5);
    let (mut wrong, mut bad_strategies) = (0, 0);
    let boards = 600;
    for _ in 0..boards {
        let b = random_board(&mut r, 6, 4);
        let s = solve_parity(&b);
        if s.winner != parity_oracle(&b) {
            wrong += 1;
        }
        if !check_strategy(&b, &s, Objective::Parity).is_empty() {
            bad_strategies += 1;
        }
    }
    report(
        5,
        "parity solver vs strategy-profile oracle",
        wrong == 0 && bad_strategies == 0,
        t.elapsed(),
        Duration::from_secs(30),
        format!("{boards} boards, {wrong} winner mismatches, {bad_strategies} invalid strategies"),
    );
}

#[test]
fn criterion_6_bisimulation_invariance() {
    let t = Instant::now();
    let mut r = rng(6);
    let atoms = atom_names(2);
    let mut corpus: Vec<_> = [
        "p0",
        "box p0 & dia p1",
        "nu x. box x & p0",
        "mu x. p1 | dia x",
        "nu x. mu y. box x & p0 | dia y",
        "mu x. nu y. (dia x | p1) & box y",
    ]
    .iter()
    .map(|s| parse(s).unwrap())
    .collect();
    while corpus.len() < 30 {
        corpus.push(random_formula(&mut r, &atoms, FormulaShape::default()));
    }
    let (mut pairs, mut related, mut counterexamples) = (0, 0, 0);
    let mut record = |m1: &Model, m2: &Model, p: &SimulationPair| {
        pairs += 1;
        related += p.s.len() + p.t.len();
        counterexamples += invariance_test(m1, m2, p, &corpus).unwrap().len();
    };
    for k in 0..90 {
        let m1 = random_model(&mut r, 4, 4, &atoms);
        let m2 = match k % 3 {
            0 => random_model(&mut r, 4, 4, &atoms),
            1 => duplicate_object(&m1, r_index(&mut r, &m1)),
            _ => {
                let p = m1.context().polarity().clone();
                let extra = atoms
                    .iter()
                    .map(|a| (a.clone(), random_concept(&mut r, &p)))
                    .collect();
                weaken_valuation(&m1, &extra)
            }
        };
        let largest = largest_simulation(&m1, &m2).unwrap();
        record(&m1, &m2, &largest);
        record(&m2, &m1, &largest_simulation(&m2, &m1).unwrap());
        if k % 3 == 1 {
            let g = m2.context().polarity().n_objects() - 1;
            let original = m1
                .context()
                .polarity()
                .objects()
                .iter()
                .position(|n| format!("{n}'") == m2.context().polarity().objects()[g])
                .unwrap();
            let (s, t) = duplication_pairs(&m1, original);
            record(&m1, &m2, &SimulationPair { s, t });
        }
    }
    // stored one-directional fixture: a simulation whose reverse fails
    let (a, b) = (load("one_point_bottom.model"), load("one_point_top.model"));
    let id = SimulationPair::identity(&a);
    let q = parse("q").unwrap();
    let forward_ok = check_simulation(&a, &b, &id).unwrap().is_empty();
    let reverse_fails = !check_simulation(&b, &a, &id).unwrap().is_empty()
        && b.forces(0, &q).unwrap()
        && !a.forces(0, &q).unwrap();
    report(
        6,
        "bisimulation invariance",
        counterexamples == 0 && forward_ok && reverse_fails,
        t.elapsed(),
        Duration::from_secs(60),
        format!(
            "{pairs} simulations ({related} related pairs), {} formulas, {counterexamples} counterexamples; non-reversal fixture {}",
            corpus.len(),
            if forward_ok && reverse_fails { "confirmed" } else { "NOT confirmed" }
        ),
    );
}

fn r_index(r: &mut impl rand::Rng, m: &Model) -> usize {
    r.gen_range(0..m.context().polarity().n_objects())
}

/// A random model whose relations include `I` (for `R_□`) and `I⁻¹` (for `R_◇`).
fn scenario_model(r: &mut impl rand::Rng) -> Model {
    let p = random_polarity(r, 4, 4);
    let mut rbox = p.incidence().clone();
    let mut rdia = p.incidence().transpose();
    for _ in 0..r.gen_range(0..3) {
        rbox.insert(
            r.gen_range(0..p.n_objects()),
            r.gen_range(0..p.n_attributes()),
        );
        rdia.insert(
            r.gen_range(0..p.n_attributes()),
            r.gen_range(0..p.n_objects()),
        );
    }
    let (rbox, rdia) = (close_box_relation(&p, &rbox), close_dia_relation(&p, &rdia));
    let c0 = random_concept(r, &p);
    Model::new(
        EnrichedContext::new(p, rbox, rdia),
        [("c0".to_string(), c0)].into(),
    )
    .unwrap()
}

#[test]
fn criterion_7_scenarios() {
    use ndmu::cli::{run_scenario, Scenario};
    let t = Instant::now();
    let mut r = rng(7);
    let all = [
        Scenario::CoalitionExpand,
        Scenario::CoalitionSharpen,
        Scenario::Rough,
        Scenario::Community,
    ];
    let mut models = vec![load("coalitions.model")];
    models.extend((0..60).map(|_| scenario_model(&mut r)));
    let (mut runs, mut failures) = (0, 0);
    for m in &models {
        for which in all {
            for c in run_scenario(m, which, 20).unwrap() {
                runs += 1;
                if !(c.is_fixpoint && c.is_extremal) {
                    failures += 1;
                }
            }
        }
    }
    // with R_□ = I the rough lower approximation is exact: νc.(c0 ∧ □c) = c0
    let (mut rough_checks, mut rough_failures) = (0, 0);
    let f = parse("nu c. c0 & box c").unwrap();
    for _ in 0..40 {
        let p = random_polarity(&mut r, 4, 4);
        let ctx = EnrichedContext::new(p.clone(), p.incidence().clone(), p.incidence().transpose());
        for c0 in ConceptLattice::new(&p).unwrap().concepts() {
            let m = Model::new(ctx.clone(), [("c0".to_string(), *c0)].into()).unwrap();
            rough_checks += 1;
            if m.evaluate_closed(&f).unwrap() != *c0 {
                rough_failures += 1;
            }
        }
    }
    report(
        7,
        "scenario suite",
        failures == 0 && rough_failures == 0,
        t.elapsed(),
        Duration::from_secs(5),
        format!(
            "{runs} scenario fixpoints on {} models, {failures} failed scan checks; rough with Rbox = I: {rough_checks} seeds, {rough_failures} differ from c0",
            models.len()
        ),
    );
}

/// Every context with at most 3 objects and 3 attributes, up to reordering
/// of objects and attributes.
fn small_contexts() -> Vec<Polarity> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g in 1..=3usize {
        for m in 1..=3usize {
            for bits in 0u32..(1 << (g * m)) {
                let cell = |i: usize, j: usize| bits >> (i * m + j) & 1 == 1;
                let key = permutations(g)
                    .iter()
                    .flat_map(|rp| permutations(m).into_iter().map(move |cp| (rp.clone(), cp)))
                    .map(|(rp, cp)| {
                        (0..g)
                            .flat_map(|i| (0..m).map(move |j| (i, j)))
                            .fold(0u32, |acc, (i, j)| acc << 1 | cell(rp[i], cp[j]) as u32)
                    })
                    .min()
                    .unwrap();
                if seen.insert((g, m, key)) {
                    let pairs = (0..g)
                        .flat_map(|i| (0..m).map(move |j| (i, j)))
                        .filter(|&(i, j)| cell(i, j));
                    out.push(Polarity::anonymous(Relation::from_pairs(g, m, pairs)).unwrap());
                }
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// All relations of the given shape whose box (or diamond) side is compatible.
fn compatible_relations(p: &Polarity, dia: bool) -> Vec<Relation> {
    let (rows, cols) = if dia {
        (p.n_attributes(), p.n_objects())
    } else {
        (p.n_objects(), p.n_attributes())
    };
    let mut out = Vec::new();
    for bits in 0u32..(1 << (rows * cols)) {
        let r = Relation::from_pairs(
            rows,
            cols,
            (0..rows * cols)
                .filter(|k| bits >> k & 1 == 1)
                .map(|k| (k / cols, k % cols)),
        );
        let ctx = if dia {
            EnrichedContext::new(p.clone(), p.incidence().clone(), r.clone())
        } else {
            EnrichedContext::new(p.clone(), r.clone(), p.incidence().transpose())
        };
        let relevant = ctx.check_compatible().into_iter().any(|v| {
            matches!(
                v.set,
                CompatSet::BoxObjects { .. } | CompatSet::BoxAttributes { .. }
            ) != dia
        });
        if !relevant {
            out.push(r);
        }
    }
    out
}

const BOX_LAWS: [(&str, &str); 8] = [
    ("box p & box q", "box (p & q)"),
    ("box (p & q)", "box p & box q"),
    ("top", "box top"),
    ("box (p & q)", "box p"),
    ("nu x. p & box x", "p"),
    ("nu x. p & box x", "box (nu x. p & box x)"),
    ("p & box (nu x. p & box x)", "nu x. p & box x"),
    ("nu x. box x", "box (nu x. box x)"),
];

const DIA_LAWS: [(&str, &str); 7] = [
    ("dia (p | q)", "dia p | dia q"),
    ("dia p | dia q", "dia (p | q)"),
    ("dia bot", "bot"),
    ("dia p", "dia (p | q)"),
    ("p", "mu x. p | dia x"),
    ("dia (mu x. p | dia x)", "mu x. p | dia x"),
    ("mu x. p | dia x", "p | dia (mu x. p | dia x)"),
];

const LATTICE_LAWS: [(&str, &str); 6] = [
    ("bot", "p"),
    ("p", "top"),
    ("p & q", "p"),
    ("p", "p | q"),
    ("p & (p | q)", "p"),
    ("p", "p | (p & q)"),
];

#[test]
fn criterion_8_algebra_laws() {
    let t = Instant::now();
    let contexts = small_contexts();
    let parse_pairs = |laws: &[(&str, &str)]| -> Vec<_> {
        laws.iter()
            .map(|(a, b)| (parse(a).unwrap(), parse(b).unwrap()))
            .collect()
    };
    let (box_laws, dia_laws, lattice_laws) = (
        parse_pairs(&BOX_LAWS),
        parse_pairs(&DIA_LAWS),
        parse_pairs(&LATTICE_LAWS),
    );
    let (mut frames, mut instances, mut failures, mut operator_pairs) =
        (0usize, 0usize, Vec::new(), 0usize);
    for p in &contexts {
        let l = ConceptLattice::new(p).unwrap();
        let frames_here: Vec<(EnrichedContext, &Vec<_>)> = compatible_relations(p, false)
            .into_iter()
            .map(|r| {
                (
                    EnrichedContext::new(p.clone(), r, p.incidence().transpose()),
                    &box_laws,
                )
            })
            .chain(compatible_relations(p, true).into_iter().map(|r| {
                (
                    EnrichedContext::new(p.clone(), p.incidence().clone(), r),
                    &dia_laws,
                )
            }))
            .collect();
        for (k, (ctx, laws)) in frames_here.iter().enumerate() {
            frames += 1;
            for a in l.concepts() {
                for b in l.concepts() {
                    operator_pairs += 1;
                    let meet_ok = ctx.box_op(&l.meet(a, b)).unwrap()
                        == l.meet(&ctx.box_op(a).unwrap(), &ctx.box_op(b).unwrap());
                    let join_ok = ctx.dia_op(&l.join(a, b)).unwrap()
                        == l.join(&ctx.dia_op(a).unwrap(), &ctx.dia_op(b).unwrap());
                    if !(meet_ok && join_ok) {
                        failures.push(format!("operator laws on {:?}", ctx.polarity().incidence()));
                    }
                    let valuation: BTreeMap<String, _> =
                        [("p".to_string(), *a), ("q".to_string(), *b)].into();
                    let model = Model::new(ctx.clone(), valuation).unwrap();
                    let mut laws: Vec<_> = laws.iter().collect();
                    if k == 0 {
                        laws.extend(lattice_laws.iter());
                    }
                    for (lhs, rhs) in laws {
                        instances += 1;
                        if !model.entails(lhs, rhs).unwrap() {
                            failures.push(format!("{lhs} |- {rhs}"));
                        }
                    }
                }
            }
        }
    }
    // the non-distributive lattice shows up among these contexts
    let distributivity = (
        parse("p & (q | r)").unwrap(),
        parse("(p & q) | (p & r)").unwrap(),
    );
    let non_distributive = contexts.iter().any(|p| {
        let l = ConceptLattice::new(p).unwrap();
        let ctx = EnrichedContext::new(p.clone(), p.incidence().clone(), p.incidence().transpose());
        l.concepts().iter().any(|a| {
            l.concepts().iter().any(|b| {
                l.concepts().iter().any(|c| {
                    let v = [
                        ("p".to_string(), *a),
                        ("q".to_string(), *b),
                        ("r".to_string(), *c),
                    ]
                    .into();
                    !Model::new(ctx.clone(), v)
                        .unwrap()
                        .entails(&distributivity.0, &distributivity.1)
                        .unwrap()
                })
            })
        })
    });
    failures.dedup();
    report(
        8,
        "algebra laws",
        failures.is_empty() && non_distributive,
        t.elapsed(),
        Duration::from_secs(30),
        format!(
            "{} contexts up to isomorphism, {frames} compatible frames, {operator_pairs} concept pairs, {instances} entailment instances, failures: {:?}; distributivity fails somewhere: {non_distributive}",
            contexts.len(),
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn scan_oracle_agrees_with_kleene() {
    for map in random_maps(9, 40, 4) {
        let l = map.lattice().clone();
        assert_eq!(scan_fixpoints(&l, |c| map.apply(c)), kleene(&map));
    }
}
