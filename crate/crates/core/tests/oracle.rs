mod common;

use common::{all_tournaments, oracle_mov, to_tournament, uniform, Sol};
use movlab::mov::{mov_3kings, mov_co, mov_tc, mov_uc, verify_certificate, MovResult};
use movlab::{AlternativeId, MovValue, SolutionId, Tournament};

type Fast = fn(&Tournament, AlternativeId) -> MovResult;

const FAST: [(Sol, SolutionId, Fast); 4] = [
    (Sol::Co, SolutionId::Co, mov_co),
    (Sol::Tc, SolutionId::Tc, mov_tc),
    (Sol::Uc, SolutionId::Uc, mov_uc),
    (Sol::Kings(3), SolutionId::Kings(3), mov_3kings),
];

fn check(t: &Tournament) {
    let m = t.to_matrix();
    for x in t.alternatives() {
        for (sol, id, fast) in FAST {
            let got = fast(t, x);
            let want = oracle_mov(&m, sol, x.0).map_or(MovValue::Infinite, MovValue::Finite);
            assert_eq!(got.value, want, "{id} x={x} on {t:?}");
            assert!(
                verify_certificate(t, id, x, &got).unwrap().is_valid(),
                "{id} x={x} on {t:?}"
            );
        }
    }
}

#[test]
fn exhaustive_small_tournaments() {
    for n in 3..=5 {
        for m in all_tournaments(n) {
            check(&to_tournament(&m));
        }
    }
}

#[test]
fn random_six_and_seven() {
    for n in [6, 7] {
        for seed in 0..40 {
            check(&uniform(n, 1000 * n as u64 + seed));
        }
    }
}
