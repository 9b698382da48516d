//! Problem-file parsing, report rendering, and bundled fixtures.

pub mod fixtures;
pub mod problem;
pub mod report;

pub use fixtures::{bundled_example, bundled_examples, BundledExample, Expected};
pub use problem::{
    build_problem, parse_problem, serialize_problem, BuiltProblem, ConstructionDesc, ModuleDesc,
    OptionsDesc, ProblemFile, TermDesc,
};
pub use report::{
    strip_timing, CohomologyRow, DualizingSection, ModelSection, ModuleSection, Report,
};
