use movlab::experiments::{
    read_rows_file, run_experiment, sample_seed, summarize, write_rows_file, ExperimentConfig, ModelSpec,
};
use movlab::generators::{generate, Model};
use movlab::{mov_profile, SolutionId};

fn uniform_config(sizes: Vec<usize>, samples: usize) -> ExperimentConfig {
    ExperimentConfig {
        models: vec![ModelSpec::new(Model::Uniform)],
        sizes,
        samples,
        solutions: SolutionId::FAST.to_vec(),
        seed: 11,
    }
}

#[test]
fn rows_satisfy_their_invariants() {
    let cfg = ExperimentConfig {
        samples: 4,
        sizes: vec![5, 9, 14],
        ..ExperimentConfig::default()
    };
    let rows = run_experiment(&cfg).unwrap();
    assert_eq!(rows.len(), 6 * 3 * 4 * 4);
    for r in &rows {
        assert!(
            1 <= r.argmax_mov_size && r.argmax_mov_size <= r.winner_count,
            "{r:?}"
        );
        assert!(r.unique_mov_count >= 1);
        assert_eq!(r.singleton_argmax == 1, r.argmax_mov_size == 1);
        assert!(r.max_mov > 0 && r.min_mov <= r.max_mov);
    }
}

#[test]
fn argmax_members_are_winners() {
    let cfg = uniform_config(vec![8, 12], 5);
    for (m, spec) in cfg.models.iter().enumerate() {
        for &n in &cfg.sizes {
            for s in 0..cfg.samples {
                let t = generate(&spec.config(n, sample_seed(cfg.seed, m, n, s))).unwrap();
                for sol in SolutionId::FAST {
                    let p = mov_profile(&t, sol).unwrap();
                    let w = movlab::winners(&t, sol).unwrap();
                    assert!(p.argmax.is_subset(&w));
                }
            }
        }
    }
}

#[test]
fn refinement_refines_on_uniform_cells() {
    let rows = run_experiment(&uniform_config(vec![10, 15, 20], 30)).unwrap();
    for s in summarize(&rows) {
        if s.solution == "tc" || s.solution == "kings3" {
            assert!(s.mean_argmax_mov_size < s.mean_winner_count, "{s:?}");
        }
    }
}

#[test]
fn cells_are_reproducible_individually() {
    let cfg = uniform_config(vec![7], 3);
    let rows = run_experiment(&cfg).unwrap();
    let t = generate(&cfg.cell(0, 7, 2)).unwrap();
    let p = mov_profile(&t, SolutionId::Tc).unwrap();
    let row = rows.iter().find(|r| r.sample == 2 && r.solution == "tc").unwrap();
    assert_eq!(row.argmax_mov_size, p.argmax.len());
}

#[test]
fn csv_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let rows = run_experiment(&uniform_config(vec![5], 1)).unwrap();
    write_rows_file(&rows, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(!text.contains('\r'));
    assert_eq!(read_rows_file(&path).unwrap(), rows);

    write_rows_file(&[], &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
}

#[test]
fn worker_count_does_not_change_rows() {
    let cfg = uniform_config(vec![6, 11], 6);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_experiment(&cfg).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn banks_above_guard_is_rejected() {
    let mut cfg = uniform_config(vec![12], 1);
    cfg.solutions = vec![SolutionId::Ba];
    let err = run_experiment(&cfg).unwrap_err();
    assert!(matches!(err, movlab::Error::InvalidConfig(_)), "{err}");
}
