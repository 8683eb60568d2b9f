use ndmu::evalgame::adequacy_check;
use ndmu::random::{self, FormulaShape};

#[test]
fn adequacy_on_random_models() {
    let mut rng = random::rng(7);
    let atoms = random::atom_names(3);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let model = random::random_model(&mut rng, 4, 4, &atoms);
        for k in 0..30 {
            let f = if k % 3 == 0 {
                random::random_alternating_formula(&mut rng, &atoms)
            } else {
                random::random_formula(&mut rng, &atoms, FormulaShape::default())
            };
            let mm = adequacy_check(&model, &f).unwrap();
            if !mm.is_empty() {
                failures.push(format!("{f}: {:?}", mm));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{} failures, e.g. {:?}",
        failures.len(),
        &failures[..failures.len().min(5)]
    );
}

#[test]
fn evaluation_game_strategies_are_winning() {
    use ndmu::evalgame::verdicts;
    use ndmu::gamecore::{check_strategy, Objective};
    let mut rng = random::rng(8);
    let atoms = random::atom_names(2);
    for _ in 0..60 {
        let model = random::random_model(&mut rng, 4, 4, &atoms);
        for _ in 0..10 {
            let f = random::random_alternating_formula(&mut rng, &atoms);
            let v = verdicts(&model, &f).unwrap();
            let problems = check_strategy(v.game.board(), &v.solution, Objective::Parity);
            assert!(problems.is_empty(), "{f}: {problems:?}");
        }
    }
}

#[test]
fn alpha_renaming_preserves_meaning() {
    let mut rng = random::rng(9);
    let atoms = random::atom_names(2);
    for _ in 0..100 {
        let model = random::random_model(&mut rng, 3, 3, &atoms);
        let f = random::random_formula(&mut rng, &atoms, FormulaShape::default());
        let g = f.rename_apart();
        assert_eq!(
            model.evaluate_closed(&f).unwrap(),
            model.evaluate_closed(&g).unwrap()
        );
        assert_eq!(g.rename_apart(), g);
    }
}
