//! Motion statistics computed from trajectory logs.
//!
//! The headline quantity is angularity: the mean absolute turning angle
//! between consecutive trace segments, after dropping segments too short to
//! carry a direction. Coverage behaviors zigzag and score high; contour
//! followers glide and score low, so the number separates the two motion
//! styles at a glance.

use crate::dynamics::wrap_angle;
use crate::trajectory::{Record, TrajectoryLog};
use crate::vec2::Vec2;
use serde::Serialize;
use thiserror::Error;

/// Segments shorter than this (in meters) carry no usable direction and are
/// skipped when turning angles are formed.
pub const MIN_SEGMENT_LENGTH: f64 = 1e-4;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("robot {robot_id} has {got} records; need at least {needed}")]
    TooShort {
        robot_id: usize,
        got: usize,
        needed: usize,
    },
}

/// Path-level statistics of one robot's trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceStats {
    /// Total distance traveled, in meters.
    pub path_length: f64,
    /// Straight-line distance from first to last position.
    pub net_displacement: f64,
    /// Path length over elapsed time.
    pub mean_speed: f64,
    /// Largest commanded forward speed magnitude.
    pub peak_speed: f64,
}

fn trace_of(log: &TrajectoryLog, robot_id: usize) -> Vec<&Record> {
    log.robot_records(robot_id).collect()
}

fn position(r: &Record) -> Vec2 {
    Vec2::new(r.x, r.y)
}

pub fn trace_stats(log: &TrajectoryLog, robot_id: usize) -> Result<TraceStats, MetricsError> {
    let trace = trace_of(log, robot_id);
    if trace.len() < 2 {
        return Err(MetricsError::TooShort {
            robot_id,
            got: trace.len(),
            needed: 2,
        });
    }
    let mut path_length = 0.0;
    for pair in trace.windows(2) {
        path_length += position(pair[0]).dist(position(pair[1]));
    }
    let net_displacement = position(trace[0]).dist(position(trace[trace.len() - 1]));
    let elapsed = trace[trace.len() - 1].t - trace[0].t;
    let mean_speed = if elapsed > 0.0 {
        path_length / elapsed
    } else {
        0.0
    };
    let peak_speed = trace.iter().map(|r| r.v.abs()).fold(0.0, f64::max);
    Ok(TraceStats {
        path_length,
        net_displacement,
        mean_speed,
        peak_speed,
    })
}

/// Mean absolute turning angle along the robot's trace, in radians.
///
/// Displacement segments between consecutive records are formed first;
/// segments shorter than [`MIN_SEGMENT_LENGTH`] are dropped, and the angles
/// are taken between consecutive surviving segments. Fewer than two
/// survivors means the trace never really moved: that is zero turning, not
/// an error. Fewer than three records cannot define a turn at all.
pub fn trace_angularity(log: &TrajectoryLog, robot_id: usize) -> Result<f64, MetricsError> {
    let trace = trace_of(log, robot_id);
    if trace.len() < 3 {
        return Err(MetricsError::TooShort {
            robot_id,
            got: trace.len(),
            needed: 3,
        });
    }
    let segments: Vec<Vec2> = trace
        .windows(2)
        .map(|pair| position(pair[1]) - position(pair[0]))
        .filter(|seg| seg.norm() > MIN_SEGMENT_LENGTH)
        .collect();
    if segments.len() < 2 {
        return Ok(0.0);
    }
    let total: f64 = segments
        .windows(2)
        .map(|pair| wrap_angle(pair[1].angle() - pair[0].angle()).abs())
        .sum();
    Ok(total / (segments.len() - 1) as f64)
}

/// One row of the swarm report: a robot's stats plus its angularity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RobotReport {
    pub robot_id: usize,
    #[serde(flatten)]
    pub stats: TraceStats,
    pub angularity: f64,
}

/// Per-robot rows plus one aggregate row: componentwise means, except
/// `peak_speed`, which keeps the swarm-wide maximum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwarmMetrics {
    pub per_robot: Vec<RobotReport>,
    pub aggregate_path_length: f64,
    pub aggregate_net_displacement: f64,
    pub aggregate_mean_speed: f64,
    pub peak_speed: f64,
    pub aggregate_angularity: f64,
}

pub fn swarm_metrics(log: &TrajectoryLog) -> Result<SwarmMetrics, MetricsError> {
    let n = log.meta.n;
    let mut per_robot = Vec::with_capacity(n);
    for robot_id in 0..n {
        per_robot.push(RobotReport {
            robot_id,
            stats: trace_stats(log, robot_id)?,
            angularity: trace_angularity(log, robot_id)?,
        });
    }
    let count = per_robot.len().max(1) as f64;
    let mean = |f: &dyn Fn(&RobotReport) -> f64| per_robot.iter().map(f).sum::<f64>() / count;
    Ok(SwarmMetrics {
        aggregate_path_length: mean(&|r| r.stats.path_length),
        aggregate_net_displacement: mean(&|r| r.stats.net_displacement),
        aggregate_mean_speed: mean(&|r| r.stats.mean_speed),
        peak_speed: per_robot
            .iter()
            .map(|r| r.stats.peak_speed)
            .fold(0.0, f64::max),
        aggregate_angularity: mean(&|r| r.angularity),
        per_robot,
    })
}
