//! Unicycle kinematics integrated with the explicit Euler scheme.

use crate::controllers::UniControl;
use crate::geometry::Domain;
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Largest accepted integration step, in seconds.
pub const MAX_TIMESTEP: f64 = 0.1;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("timestep {dt} is outside (0, {MAX_TIMESTEP}]")]
    BadTimestep { dt: f64 },
}

/// Planar pose of one unicycle robot.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub position: Vec2,
    /// Heading in radians, kept in [-pi, pi).
    pub heading: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, heading: f64) -> Pose {
        Pose {
            position: Vec2::new(x, y),
            heading: wrap_angle(heading),
        }
    }
}

/// Wrap an angle into [-pi, pi). Going through atan2 keeps long-running
/// integrations from accumulating multiples of 2 pi.
pub fn wrap_angle(a: f64) -> f64 {
    let w = a.sin().atan2(a.cos());
    if w >= PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// One explicit Euler step of the unicycle model:
/// x' = v cos(theta), y' = v sin(theta), theta' = omega.
pub fn step_unicycle(pose: Pose, cmd: UniControl, dt: f64) -> Result<Pose, DynamicsError> {
    if !(dt > 0.0 && dt <= MAX_TIMESTEP) {
        return Err(DynamicsError::BadTimestep { dt });
    }
    let (sin_t, cos_t) = pose.heading.sin_cos();
    Ok(Pose {
        position: pose.position + Vec2::new(cmd.v * cos_t, cmd.v * sin_t) * dt,
        heading: wrap_angle(pose.heading + cmd.omega * dt),
    })
}

/// Push a pose's position back inside the domain, keeping `margin` clear of
/// every wall (stops robot bodies from poking through the boundary). The
/// heading is untouched.
pub fn clamp_to_domain(pose: Pose, domain: &Domain, margin: f64) -> Pose {
    Pose {
        position: Vec2::new(
            pose.position
                .x
                .clamp(domain.x_min + margin, domain.x_max - margin),
            pose.position
                .y
                .clamp(domain.y_min + margin, domain.y_max - margin),
        ),
        heading: pose.heading,
    }
}
