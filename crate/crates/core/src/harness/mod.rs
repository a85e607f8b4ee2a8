//! Configuration, instance generation, suite orchestration and reports.

pub mod config;
pub mod generate;
pub mod report;
pub mod suites;

pub use config::{AlgebraSpec, CampaignConfig, SampleCounts, StateSpec, SubalgebraSpec, Suite, Tolerances, SCHEMA_VERSION};
pub use generate::{generate_element, Distribution};
pub use report::{ReportEntry, Status, VerificationReport, EXIT_CONFIG, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_VIOLATIONS};
pub use suites::{run_campaign, thread_cap, with_thread_cap, THREADS_ENV};
