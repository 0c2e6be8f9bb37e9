//! Library surface of the command-line tool: the expression/operator
//! parser and the JSON result record, shared with the integration tests.

pub mod parser;
pub mod records;
