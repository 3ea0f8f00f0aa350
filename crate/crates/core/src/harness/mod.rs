//! Replicated experiments over generated or loaded graphs, with CSV output.

mod config;
mod experiments;

pub use config::{DegreeModel, ExperimentConfig, GraphSource, TechniqueConfig};
pub use experiments::{
    largest_component_nodes, run_assortativity_sweep, run_bias_curves, run_correction_eval,
    run_rmse_comparison, write_correction_runs_csv, write_corrections_csv, write_curves_csv,
    write_rmse_table_csv, write_sweep_csv, CorrectionRow, CorrectionRun, CorrectionTable, CurveRow,
    CurveTable, GraphFactory, RmseTable, SweepPoint, SweepTable, CORRECTIONS_CSV_HEADER,
    CORRECTION_RUNS_CSV_HEADER, CURVES_CSV_HEADER, REWIRE_TOLERANCE,
};
