//! End-to-end acceptance gate. Each numbered criterion prints one pass/fail
//! line; the test fails if any criterion fails. All comparisons are exact.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use pfg::axioms::{
    check_balanced_contributions, check_efficiency, check_hm_consistency,
    check_sobolev_consistency, check_two_standardness, reconstruct_bc_ef, reconstruct_hm_2s,
    reconstruct_sobolev,
};
use pfg::combo::{
    bell_number, enumerate_embedded, enumerate_partitions, ewens_weight, remove_players,
};
use pfg::game::TuGame;
use pfg::generators::{cournot_game, maskin_public_goods, random_tux_game};
use pfg::reduction::{hm_reduce_tu, hm_reduce_tux, sobolev_reduce_tu, sobolev_reduce_tux};
use pfg::restriction::{restrict_direct, restrict_one, restrict_set};
use pfg::solution::{
    EgalitarianSplit, ExternalityFree, Memoized, Mpw, ShapleyValue, SolutionConcept,
};
use pfg::values::{average_game, auxiliary_game, externality_free_value, mpw};
use pfg::{Coalition, Partition, PayoffVector, PlayerId, Rational, TuxGame};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn coal(members: &[usize]) -> Coalition {
    members.iter().copied().collect()
}

fn part(blocks: &[&[usize]]) -> Partition {
    Partition::new(blocks.iter().map(|b| coal(b)).collect())
}

fn p(i: usize) -> PlayerId {
    PlayerId::new(i)
}

fn require(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn payoffs_equal(actual: &PayoffVector, expected: &[(usize, Rational)]) -> bool {
    expected.len() == actual.players().len()
        && expected.iter().all(|(i, v)| actual.get(p(*i)) == v)
}

/// Criterion 1: worked-example golden values for the solution concepts and
/// the restriction operator.
fn criterion_01() -> Result<(), String> {
    let w = maskin_public_goods();
    let value = mpw(&w).map_err(|e| e.to_string())?;
    require(
        payoffs_equal(&value, &[(1, rat(15, 2)), (2, rat(8, 1)), (3, rat(17, 2))]),
        "mpw payoffs",
    )?;

    // The singleton worths of the singleton-fixed game are symmetric, and
    // symmetric singleton worths cancel out of the Shapley formula, so the
    // externality-free value coincides with mpw on this example.
    let ef = externality_free_value(&w).map_err(|e| e.to_string())?;
    require(
        payoffs_equal(&ef, &[(1, rat(15, 2)), (2, rat(8, 1)), (3, rat(17, 2))]),
        "externality-free payoffs",
    )?;

    for i in 1..=3usize {
        let rest = restrict_one(&w, p(i)).map_err(|e| e.to_string())?;
        let others: Vec<usize> = (1..=3).filter(|&j| j != i).collect();
        for (j, k) in [(others[0], others[1]), (others[1], others[0])] {
            require(
                rest.worth_of(coal(&[j]), &part(&[&[k]])) == &rat(9, 2),
                "restriction singleton worth 9/2",
            )?;
        }
    }
    let grand = |i: usize| {
        restrict_one(&w, p(i))
            .map(|g| g.grand_worth().clone())
            .map_err(|e| e.to_string())
    };
    require(grand(1)? == rat(14, 1), "w_-1 grand worth 14")?;
    require(grand(2)? == rat(13, 1), "w_-2 grand worth 13")?;
    require(grand(3)? == rat(12, 1), "w_-3 grand worth 12")?;
    Ok(())
}

/// Criterion 2: Cournot oligopoly (n=4, scale=1) restriction golden values
/// at the four embedded-coalition classes of the subgame without firm 4.
fn criterion_02() -> Result<(), String> {
    let four = cournot_game(4, Rational::one()).map_err(|e| e.to_string())?;
    let rest = restrict_one(&four, p(4)).map_err(|e| e.to_string())?;
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        require(
            rest.worth_of(coal(&[i]), &part(&[&[j], &[k]])) == &rat(11, 200),
            "singleton vs singletons 11/200",
        )?;
        require(
            rest.worth_of(coal(&[i]), &part(&[&[j, k]])) == &rat(41, 432),
            "singleton vs pair 41/432",
        )?;
        require(
            rest.worth_of(coal(&[i, j]), &part(&[&[k]])) == &rat(25, 288),
            "pair vs singleton 25/288",
        )?;
    }
    require(rest.grand_worth() == &rat(1, 9), "grand worth 1/9")
}

/// Criterion 3: Sobolev reduction golden values on the worked example.
fn criterion_03() -> Result<(), String> {
    let w = maskin_public_goods();
    let reduced = sobolev_reduce_tux(&w, p(1), &Mpw).map_err(|e| e.to_string())?;
    require(
        reduced.worth_of(coal(&[2]), &part(&[&[3]])) == &rat(9, 2),
        "entry 9/2",
    )?;
    require(
        reduced.worth_of(coal(&[3]), &part(&[&[2]])) == &rat(5, 1),
        "entry 5",
    )?;
    require(reduced.grand_worth() == &rat(33, 2), "grand 33/2")?;
    let payoffs = mpw(&reduced).map_err(|e| e.to_string())?;
    require(
        payoffs_equal(&payoffs, &[(2, rat(8, 1)), (3, rat(17, 2))]),
        "reduced-game mpw matches original payoffs",
    )
}

/// Criterion 4: Hart–Mas-Colell reduction golden values on the worked
/// example.
fn criterion_04() -> Result<(), String> {
    let w = maskin_public_goods();
    let reduced = hm_reduce_tux(&w, p(1), &Mpw).map_err(|e| e.to_string())?;
    require(
        reduced.worth_of(coal(&[2]), &part(&[&[3]])) == &rat(6, 1),
        "entry 6",
    )?;
    require(
        reduced.worth_of(coal(&[3]), &part(&[&[2]])) == &rat(13, 2),
        "entry 13/2",
    )?;
    require(reduced.grand_worth() == &rat(33, 2), "grand 33/2")?;
    let payoffs = mpw(&reduced).map_err(|e| e.to_string())?;
    require(
        payoffs_equal(&payoffs, &[(2, rat(8, 1)), (3, rat(17, 2))]),
        "reduced-game mpw matches original payoffs",
    )
}

/// Criterion 5: axiom existence suite — mpw passes every axiom on 100
/// seeded games for each n in 2..=5, plus 2-standardness on the 2-player
/// cases.
fn criterion_05() -> Result<(), String> {
    for n in 2..=5usize {
        for seed in 0..100u64 {
            let w = random_tux_game(n, 1000 * n as u64 + seed, 25).map_err(|e| e.to_string())?;
            let phi = Memoized::new(Mpw);
            let ctx = |axiom: &str| format!("{axiom} n={n} seed={seed}");
            require(
                check_efficiency(&phi, &w).map_err(|e| e.to_string())?.pass(),
                &ctx("ef"),
            )?;
            require(
                check_balanced_contributions(&phi, &w)
                    .map_err(|e| e.to_string())?
                    .pass(),
                &ctx("bc"),
            )?;
            require(
                check_sobolev_consistency(&phi, &w)
                    .map_err(|e| e.to_string())?
                    .pass(),
                &ctx("sc"),
            )?;
            require(
                check_hm_consistency(&phi, &w, false)
                    .map_err(|e| e.to_string())?
                    .pass(),
                &ctx("hmc"),
            )?;
            require(
                check_hm_consistency(&phi, &w, true)
                    .map_err(|e| e.to_string())?
                    .pass(),
                &ctx("shmc"),
            )?;
            if n == 2 {
                require(
                    check_two_standardness(&phi, &w)
                        .map_err(|e| e.to_string())?
                        .pass(),
                    &ctx("2s"),
                )?;
            }
        }
    }
    Ok(())
}

/// Criterion 6: uniqueness suite — each axiom-driven reconstruction equals
/// mpw on 100 seeded games for each n ≤ 4.
fn criterion_06() -> Result<(), String> {
    for n in 1..=4usize {
        for seed in 0..100u64 {
            let w = random_tux_game(n, 2000 * n as u64 + seed, 25).map_err(|e| e.to_string())?;
            let expected = mpw(&w).map_err(|e| e.to_string())?;
            let ctx = |solver: &str| format!("{solver} n={n} seed={seed}");
            require(
                reconstruct_bc_ef(&w).map_err(|e| e.to_string())? == expected,
                &ctx("bc+ef reconstruction"),
            )?;
            require(
                reconstruct_sobolev(&w).map_err(|e| e.to_string())? == expected,
                &ctx("sobolev reconstruction"),
            )?;
            require(
                reconstruct_hm_2s(&w).map_err(|e| e.to_string())? == expected,
                &ctx("hm+2s reconstruction"),
            )?;
        }
    }
    Ok(())
}

/// Criterion 7: structural lemma suite on seeded games, n ≤ 5.
fn criterion_07() -> Result<(), String> {
    let e = |err: pfg::Error| err.to_string();

    // path independence of the restriction operator
    for seed in 0..5u64 {
        for n in 2..=5usize {
            let w = random_tux_game(n, 3000 + seed, 12).map_err(e)?;
            let players = w.players().members();
            for &i in &players {
                for &j in &players {
                    if i >= j {
                        continue;
                    }
                    let ij = restrict_one(&restrict_one(&w, i).map_err(e)?, j).map_err(e)?;
                    let ji = restrict_one(&restrict_one(&w, j).map_err(e)?, i).map_err(e)?;
                    require(ij == ji, &format!("path independence n={n} seed={seed}"))?;
                }
            }
        }
    }

    // averaging commutes with restriction
    for seed in 0..5u64 {
        for n in 2..=5usize {
            let w = random_tux_game(n, 3100 + seed, 12).map_err(e)?;
            for i in w.players().iter() {
                let lhs = average_game(&restrict_one(&w, i).map_err(e)?).map_err(e)?;
                let rhs = average_game(&w)
                    .map_err(e)?
                    .remove_players(Coalition::singleton(i))
                    .map_err(e)?;
                require(lhs == rhs, &format!("avg/restrict commute n={n} seed={seed}"))?;
            }
        }
    }

    // scaled-Dirac restriction law on every (T, tau)
    for n in 2..=4usize {
        let ground = Coalition::first_n(n);
        for key in enumerate_embedded(ground).map_err(e)? {
            if key.coalition.is_empty() {
                continue;
            }
            let dirac = TuxGame::scaled_dirac(ground, key.coalition, &key.outside).map_err(e)?;
            for s in ground.subsets_canonical() {
                if s == ground {
                    continue;
                }
                let restricted = restrict_set(&dirac, s).map_err(e)?;
                let expected = if s.is_disjoint(key.coalition) {
                    let tau = remove_players(&key.outside, s).map_err(e)?;
                    TuxGame::scaled_dirac(ground.difference(s), key.coalition, &tau).map_err(e)?
                } else {
                    TuxGame::null(ground.difference(s)).map_err(e)?
                };
                require(restricted == expected, "dirac restriction law")?;
            }
        }
    }

    // average and auxiliary game of a scaled Dirac are the TU Dirac; the
    // auxiliary game equals the average game in general
    for n in 1..=4usize {
        let ground = Coalition::first_n(n);
        for key in enumerate_embedded(ground).map_err(e)? {
            if key.coalition.is_empty() {
                continue;
            }
            let dirac = TuxGame::scaled_dirac(ground, key.coalition, &key.outside).map_err(e)?;
            let tu_dirac = TuGame::dirac(ground, key.coalition).map_err(e)?;
            require(average_game(&dirac).map_err(e)? == tu_dirac, "avg of dirac")?;
            require(auxiliary_game(&dirac).map_err(e)? == tu_dirac, "aux of dirac")?;
        }
    }
    for seed in 0..5u64 {
        for n in 1..=5usize {
            let w = random_tux_game(n, 3200 + seed, 12).map_err(e)?;
            require(
                auxiliary_game(&w).map_err(e)? == average_game(&w).map_err(e)?,
                &format!("aux = avg n={n} seed={seed}"),
            )?;
        }
    }

    // closed-form restriction sum agrees with iterated restriction pointwise
    for seed in 0..3u64 {
        for n in 2..=5usize {
            let w = random_tux_game(n, 3300 + seed, 12).map_err(e)?;
            for s in w.players().subsets_canonical() {
                let iterated = restrict_set(&w, s).map_err(e)?;
                for key in iterated.keys() {
                    require(
                        &restrict_direct(&w, s, key).map_err(e)? == iterated.worth(key),
                        &format!("direct restriction n={n} seed={seed}"),
                    )?;
                }
            }
        }
    }

    // single-player and set HM consistency verdicts agree
    for seed in 0..3u64 {
        for n in 2..=4usize {
            let w = random_tux_game(n, 3400 + seed, 12).map_err(e)?;
            for phi in [
                &Memoized::new(Mpw) as &dyn SolutionConcept,
                &Memoized::new(ExternalityFree) as &dyn SolutionConcept,
            ] {
                let single = check_hm_consistency(phi, &w, false).map_err(e)?.pass();
                let set = check_hm_consistency(phi, &w, true).map_err(e)?.pass();
                require(
                    single == set,
                    &format!("hmc/shmc equivalence n={n} seed={seed} phi={}", phi.name()),
                )?;
            }
        }
    }

    // both reductions commute with averaging
    for seed in 0..3u64 {
        for n in 2..=5usize {
            let w = random_tux_game(n, 3500 + seed, 12).map_err(e)?;
            let v = average_game(&w).map_err(e)?;
            for j in w.players().iter() {
                let sob = average_game(&sobolev_reduce_tux(&w, j, &Mpw).map_err(e)?).map_err(e)?;
                require(
                    sob == sobolev_reduce_tu(&v, j, &ShapleyValue).map_err(e)?,
                    &format!("sobolev averaging commutation n={n} seed={seed}"),
                )?;
                let hm = average_game(&hm_reduce_tux(&w, j, &Mpw).map_err(e)?).map_err(e)?;
                require(
                    hm == hm_reduce_tu(&v, j, &ShapleyValue).map_err(e)?,
                    &format!("hm averaging commutation n={n} seed={seed}"),
                )?;
            }
        }
    }
    Ok(())
}

/// Criterion 8: the partition weights form a probability distribution and
/// project consistently under single-player removal, up to ground size 8.
fn criterion_08() -> Result<(), String> {
    let e = |err: pfg::Error| err.to_string();
    for n in 0..=8usize {
        let ground = Coalition::first_n(n);
        let total = enumerate_partitions(ground)
            .map_err(e)?
            .iter()
            .map(ewens_weight)
            .fold(Rational::from_integer(0.into()), |a, b| a + b);
        require(total.is_one(), &format!("weights sum to 1 at n={n}"))?;
    }
    for n in 1..=8usize {
        let ground = Coalition::first_n(n);
        let all = enumerate_partitions(ground).map_err(e)?;
        let i = ground.min_member().unwrap();
        let mut projected: HashMap<Partition, Rational> = HashMap::new();
        for pi in &all {
            let smaller = remove_players(pi, Coalition::singleton(i)).map_err(e)?;
            *projected
                .entry(smaller)
                .or_insert_with(|| Rational::from_integer(0.into())) += ewens_weight(pi);
        }
        for target in enumerate_partitions(ground.remove(i)).map_err(e)? {
            require(
                projected.get(&target) == Some(&ewens_weight(&target)),
                &format!("projection consistency n={n}"),
            )?;
        }
    }
    Ok(())
}

/// Criterion 9: negative controls — the egalitarian split fails balanced
/// contributions with the expected violation, and the externality-free
/// value fails Sobolev consistency on a seeded game with a recorded
/// counterexample.
fn criterion_09() -> Result<(), String> {
    let w = maskin_public_goods();
    let report = check_balanced_contributions(&EgalitarianSplit, &w).map_err(|e| e.to_string())?;
    require(!report.pass(), "egalitarian split must fail bc")?;
    let first = &report.violations[0];
    require(first.site == "pair (1,2)", "violation pair (1,2)")?;
    require(
        first.lhs == rat(3, 2) && first.rhs == rat(1, 1),
        "violation shows 3/2 vs 1",
    )?;

    let mut found = false;
    for seed in 0..50u64 {
        let w = random_tux_game(3, seed, 10).map_err(|e| e.to_string())?;
        let report =
            check_sobolev_consistency(&ExternalityFree, &w).map_err(|e| e.to_string())?;
        if !report.pass() {
            let v = &report.violations[0];
            require(v.lhs != v.rhs, "counterexample records unequal sides")?;
            require(!v.site.is_empty(), "counterexample records a site")?;
            require(v.game.num_players() > 0, "counterexample records the game")?;
            found = true;
            break;
        }
    }
    require(found, "externality-free value must fail sc on a seeded game")
}

/// Criterion 10: performance envelope — mpw on a random 8-player game under
/// 10 s, full embedded-coalition enumeration for 10 players under 60 s.
fn criterion_10() -> Result<(), String> {
    let w = random_tux_game(8, 42, 50).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let payoffs = mpw(&w).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    require(
        &payoffs.total() == w.grand_worth(),
        "n=8 payoffs are efficient",
    )?;
    require(
        elapsed.as_secs_f64() < 10.0,
        &format!("mpw n=8 took {elapsed:?}, budget 10s"),
    )?;

    let start = Instant::now();
    let keys = enumerate_embedded(Coalition::first_n(10)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    require(keys.len() == 678_570, "E(10) has 678570 entries")?;
    require(
        BigInt::from(keys.len()) == bell_number(11),
        "E(10) count is the Bell number B(11)",
    )?;
    require(
        elapsed.as_secs_f64() < 60.0,
        &format!("E(10) enumeration took {elapsed:?}, budget 60s"),
    )?;
    let _sorted = keys.windows(2).all(|w| w[0] < w[1]);
    require(_sorted, "E(10) enumeration is strictly sorted")
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("01 worked-example golden values", criterion_01),
        ("02 cournot restriction golden values", criterion_02),
        ("03 sobolev reduction golden values", criterion_03),
        ("04 hm reduction golden values", criterion_04),
        ("05 axiom existence suite", criterion_05),
        ("06 uniqueness suite", criterion_06),
        ("07 structural lemma suite", criterion_07),
        ("08 partition weight suite", criterion_08),
        ("09 negative controls", criterion_09),
        ("10 performance envelope", criterion_10),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("criterion {name}: pass"),
            Err(msg) => {
                println!("criterion {name}: fail ({msg})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
