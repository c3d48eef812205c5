//! Random test instances, accuracy sweeps, timing runs and their CSV form.

mod accuracy;
mod bench;
mod config;
mod gen;
mod report;

pub use accuracy::{accuracy_point, min_max_spread, run_accuracy_sweep, AccuracyRecord};
pub use bench::{
    recalibrated_dimension, run_overhead_bench, run_scaling_bench, run_speedup_bench,
    scaling_ratios, time_factorizations, BenchRecord,
};
pub use config::{
    ExperimentConfig, Kind, DEFAULT_REPETITIONS, DEFAULT_TRIALS, PAPER_REPETITIONS, PAPER_TRIALS,
    WARMUP_RUNS,
};
pub use gen::{gen_matrix, gen_rhs, trial_rng};
pub use report::{
    accuracy_csv, bench_csv, parse_accuracy_csv, parse_bench_csv, AccuracyRow, ACCURACY_HEADER,
    BENCH_HEADER,
};
