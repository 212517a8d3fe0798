//! Free-group coset axes, projection distances and the projection complex.

mod acyl;
mod axis;
mod complex;
mod free;
mod lemmas;
mod theorem_c;

pub use acyl::{
    acylindricity, complex_quasi_stabilizer, f_measure, f_measure_truncated, f_table_csv,
    joint_stabilizer_check, path_distance, tree_quasi_stabilizer, v_set_exact, v_set_truncated,
    AcylindricityRow, FRow, JointStabilizerReport, QuasiStabilizer, Translates, VSetQuery, VSetReport, F_HEADER,
};
pub use axis::{AxisCoset, AxisFamily, Segment};
pub use complex::{
    ComplexSummary, ProjectionComplex, ProjectionTable, StandardPath, Universe, UNREACHABLE,
};
pub use free::{FreeGroup, RootData};
pub use lemmas::{
    bottleneck_check, bottleneck_witness, quasi_geodesic_epsilon, quasi_geodesic_report, scan_k,
    thin_triangle_check, triangle_defect, KScan, KTrial, PathTable, Report, TriangleDefect,
};
pub use theorem_c::{
    f_lookup, sample_loxodromic_pairs, theorem_c_pipeline, PipelineConfig, PipelineReport};
