//! Command-line front end (placeholder during bring-up).

pub fn run(_argv: &[String]) -> i32 {
    0
}
