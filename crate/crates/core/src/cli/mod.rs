//! File formats and the command implementations behind the binary.
//!
//! Every command reads its inputs fully, computes, and only then writes its
//! output through a temporary file that is renamed into place, so a failing
//! command never leaves a partial file behind.
//!
//! Exit codes used by the binary: [`EXIT_OK`], [`EXIT_VERIFY_FAILED`],
//! [`EXIT_USAGE`].

mod commands;
pub mod ppm;
pub mod qsig;
pub mod verify;

pub use commands::{
    cmd_bench, cmd_dump, cmd_img2q, cmd_inverse, cmd_q2img, cmd_smooth, cmd_spectrum, cmd_transform, cmd_verify,
    BenchReport, BenchRow, BENCH_DIRECT_LIMIT,
};
pub use qsig::{FileSide, QsigFile};
pub use verify::{CheckRecord, Finding, VerifyOptions, VerifyReport};

pub const EXIT_OK: i32 = 0;
/// A verification or benchmark assertion failed.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Bad arguments, malformed files, or any other error.
pub const EXIT_USAGE: i32 = 2;
