//! Reports on quantum groups at roots of unity: input handling, presets,
//! JSON and text output, and the `qfiber` command line.

pub mod app;
pub mod input;
pub mod num;
pub mod presets;
pub mod report;
pub mod selftest;
pub mod text;

use qfiber::Error;

/// 1 for bad input, 2 for a failed internal check.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_invariant_violation() {
        2
    } else {
        1
    }
}
