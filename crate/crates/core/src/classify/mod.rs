//! Two-generator algebras with Ext-dimensions 1,2,2,2,1: coefficient families,
//! identity residuals, the algebra catalog and a regularity screen.

mod catalog;
mod screen;
mod solutions;
mod tables;

pub use catalog::{catalog, CatalogName};
pub use screen::{regular_quotient_series, regular_series, regularity_screen, ScreenReport, BETTI_12221};
pub use solutions::{check_solution, solution_params, SolutionId, SolutionReport};
pub use tables::{
    case_dispatch, coeff_tables, coeff_tables_with, gm_check, si_residuals, Case, CoeffTables, GenericParams, GmCheck,
    Residual, ResidualReport, Table, XSource, FAMILIES,
};
