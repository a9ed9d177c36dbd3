//! Deterministic planar multi-robot simulation of emotion-expressive swarm
//! behaviors.
//!
//! Six behaviors are shipped, each named for the emotion its motion style
//! suggests. Three follow parametric contours: `happiness` (a rippled
//! circle), `surprise` (a circle whose radius sweeps a sawtooth), and
//! `sadness` (a small, slowly traversed circle). Three cover the domain by
//! descending a density field with a Lloyd-style move-to-centroid law:
//! `fear` (uniform density), `disgust` (mass near the walls), and `anger`
//! (mass at the center). Robots are unicycles; every planning law is written
//! for a single integrator and mapped to wheel commands by steering a
//! look-ahead point, so the same law drives both models.
//!
//! Runs are deterministic: all randomness flows from one seed, integration
//! is fixed-step explicit Euler, and exported logs are byte-identical across
//! repeats of the same configuration.
//!
//! # Quick start
//!
//! ```
//! use emoswarm::{run, BehaviorSpec, Domain, Emotion};
//!
//! let domain = Domain::centered(1.0, 1.0)?;
//! let spec = BehaviorSpec::preset(Emotion::Sadness, domain);
//! let log = run(&spec, 4, 7, spec.default_duration, 0.01)?;
//! assert_eq!(log.records.len(), 801 * 4);
//!
//! let report = emoswarm::swarm_metrics(&log)?;
//! assert!(report.aggregate_mean_speed < 0.05); // sadness barely moves
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

// Validation guards are written `!(x > 0.0)` on purpose: unlike `x <= 0.0`
// they are also true for NaN, which is exactly what they must reject.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(doctest)]
mod book;
pub mod controllers;
pub mod densities;
pub mod dynamics;
pub mod engine;
pub mod geometry;
pub mod metrics;
pub mod render;
pub mod shapes;
pub mod trajectory;
pub mod vec2;

pub use controllers::{
    coverage_si, coverage_si_all, goto_goal_si, saturate, si_to_uni, DiffeoParams, UniControl,
};
pub use densities::{DensityField, DensityKind};
pub use dynamics::{clamp_to_domain, step_unicycle, wrap_angle, Pose};
pub use engine::{
    compute_commands, init_behavior, run, step, BehaviorSpec, Emotion, EngineError, SwarmState,
};
pub use geometry::{
    cell_centroid, compute_voronoi, locational_cost, swarm_centroids, Density, Domain, VoronoiCell,
};
pub use metrics::{swarm_metrics, trace_angularity, trace_stats, SwarmMetrics, TraceStats};
pub use render::{frame_svg, render_frames, RenderOptions};
pub use shapes::{
    happiness_contour, initial_placement_contour, sadness_contour, surprise_contour, wrap_phase,
    ContourKind, ContourParams,
};
pub use trajectory::{LogFormat, Record, RunMeta, TrajectoryLog};
pub use vec2::Vec2;
