use ndmu::gamecore::{check_strategy, Objective, Player};
use ndmu::random::{atom_names, random_model, random_open_formula, rng};
use ndmu::unfolding::{
    build_unfolding_board, solve_gprime, solve_unfolding_symbolic, BoardOptions, Generators,
    LatticeMap, UnfoldSpec,
};

fn specs() -> [UnfoldSpec; 4] {
    [
        UnfoldSpec::new(Generators::Join, Player::Exists),
        UnfoldSpec::new(Generators::Join, Player::Forall),
        UnfoldSpec::new(Generators::Meet, Player::Exists),
        UnfoldSpec::new(Generators::Meet, Player::Forall),
    ]
}

fn random_maps(seed: u64, count: usize) -> Vec<LatticeMap> {
    let mut r = rng(seed);
    let atoms = atom_names(2);
    (0..count)
        .map(|_| {
            let m = random_model(&mut r, 4, 4, &atoms);
            let f = random_open_formula(&mut r, &atoms, "v", 4);
            LatticeMap::from_formula(&m, &f, "v").unwrap()
        })
        .collect()
}

#[test]
fn symbolic_winners_give_extremal_fixpoints() {
    for map in random_maps(11, 150) {
        let (lfp, gfp) = (map.lfp().unwrap(), map.gfp().unwrap());
        for spec in specs() {
            let r = solve_unfolding_symbolic(&map, spec).unwrap();
            let want = match spec.infinite_winner {
                Player::Exists => gfp,
                Player::Forall => lfp,
            };
            assert_eq!(r.fixpoint, want, "{spec:?}");
        }
        assert_eq!(solve_gprime(&map).unwrap().fixpoint, lfp);
    }
}

#[test]
fn explicit_boards_agree_with_symbolic() {
    for map in random_maps(12, 150) {
        for spec in specs() {
            let r = solve_unfolding_symbolic(&map, spec).unwrap();
            for prune in [false, true] {
                let opts = BoardOptions {
                    prune,
                    ..BoardOptions::default()
                };
                let b = build_unfolding_board(&map, spec, 0, opts).unwrap();
                assert_eq!(b.result(map.lattice()), r, "{spec:?} prune={prune}");
                let objective = Objective::InfiniteWonBy(spec.infinite_winner);
                assert!(check_strategy(&b.board, &b.solve(), objective).is_empty());
            }
        }
    }
}
