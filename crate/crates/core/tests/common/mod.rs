pub mod rule_cases;
pub mod corpus;
pub mod gen;
pub mod derived_checks;
