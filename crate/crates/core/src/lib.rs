//! Pure-integer cutting planes generated as primal columns, solved with an
//! exact rational simplex method.
//!
//! Start with [`driver::solve_lex`] or [`driver::solve_plain`]; instances come
//! from [`instance::DualFormInstance`] or [`io::parse_instance`].

pub mod cli;
pub mod cutgen;
pub mod driver;
pub mod exact;
pub mod instance;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod simplex;
