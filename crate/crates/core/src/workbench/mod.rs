//! Catalogs, random generators, classification over windows and the check suite.

mod band;
mod catalog;
mod classify;
pub mod random;
mod suite;

pub use band::{catalog_preprojective_band, lift_band_rep, BandCatalog, BOUNDED_NOTE};
pub use catalog::{
    build_v_lambda, catalog_interval_modules, catalog_lambda_family, check_classifiable, cyclic_rep, two_point_rep, CatalogEntry,
    VLambdaVariant, WindowSpec,
};
pub use classify::{window_classify, window_classify_with, Classification, FamilyReport, CLASSIFY_SAMPLES, LAMBDAS};
pub use suite::{check_ids, run_suite, CheckRecord, ReportDoc, Status, SuiteConfig, PRINTED_CHECK};
