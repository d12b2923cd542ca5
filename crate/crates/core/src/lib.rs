pub mod algebra;
pub mod chebyshev;
pub mod pattern;
pub mod oracle;
pub mod engine;
pub mod cli;
