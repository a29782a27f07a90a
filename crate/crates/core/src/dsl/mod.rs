//! Expression language, suite runner and reports.

mod ast;
mod eval;
mod report;

pub use ast::{parse, Ast};
pub use eval::{eval, Context, EvalParams, Value};
pub use report::{render_json, render_text, run_suite, Params, Report, Status, Suite, SCHEMA_VERSION};
