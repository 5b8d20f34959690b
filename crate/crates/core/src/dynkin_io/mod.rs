//! Text in, text out: the diagram parser, table emitters and JSON reports.

mod parse;
pub mod reports;
pub mod tables;

pub use parse::{parse_cross_list, parse_diagram, parse_type, parse_with_crosses, print_diagram};
pub use reports::{cmd_classify, cmd_info, cmd_kostant, cmd_nested, cmd_oracle, Check, Report};
pub use tables::{emit_table, Fixtures, Format, TableRow};
