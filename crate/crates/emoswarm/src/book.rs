// The guide in book/ is full of code blocks, and prose that nothing executes
// rots. mdbook cannot run examples as tests, so we smush each chapter into a
// rustdoc comment here and let `cargo test --doc` do the work. One module per
// chapter, so a failing doctest names the chapter it came from.
//
// This module only exists while rustdoc collects doctests; it compiles to
// nothing in every other build.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/arena-and-densities.md")]
pub mod arena_and_densities {}

#[doc = include_str!("../../../book/src/contours.md")]
pub mod contours {}

#[doc = include_str!("../../../book/src/steering.md")]
pub mod steering {}

#[doc = include_str!("../../../book/src/coverage.md")]
pub mod coverage {}

#[doc = include_str!("../../../book/src/behaviors.md")]
pub mod behaviors {}

#[doc = include_str!("../../../book/src/logs.md")]
pub mod logs {}

#[doc = include_str!("../../../book/src/rendering.md")]
pub mod rendering {}

#[doc = include_str!("../../../book/src/metrics.md")]
pub mod metrics {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
