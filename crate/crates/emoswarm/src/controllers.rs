//! Single-integrator control laws and their mapping onto unicycle commands.
//!
//! Planning happens in single-integrator space (a desired velocity `u` for a
//! point robot). The mapping to wheel commands steers a look-ahead point a
//! distance `l` in front of the axle: with gain K, that point moves with
//! velocity exactly K u, so any single-integrator law can drive a unicycle.

use crate::geometry::{
    cell_centroid, compute_voronoi, swarm_centroids, Density, Domain, GeometryError,
};
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ControllerError {
    #[error("look-ahead distance must be positive, got {l}")]
    NonpositiveLookAhead { l: f64 },
    #[error("diffeomorphism gain must be positive, got {gain}")]
    NonpositiveGain { gain: f64 },
}

/// Parameters of the single-integrator to unicycle mapping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffeoParams {
    /// Distance from the axle to the steered look-ahead point, in meters.
    pub look_ahead: f64,
    /// Velocity gain applied to the single-integrator command.
    pub gain: f64,
}

impl DiffeoParams {
    pub fn new(look_ahead: f64, gain: f64) -> Result<DiffeoParams, ControllerError> {
        if !(look_ahead > 0.0) {
            return Err(ControllerError::NonpositiveLookAhead { l: look_ahead });
        }
        if !(gain > 0.0) {
            return Err(ControllerError::NonpositiveGain { gain });
        }
        Ok(DiffeoParams { look_ahead, gain })
    }
}

/// Forward and angular velocity commands for one unicycle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniControl {
    pub v: f64,
    pub omega: f64,
}

/// Map a single-integrator velocity onto unicycle commands:
/// v = K (u . e_theta), omega = (K / l) (u . e_theta_perp).
pub fn si_to_uni(u: Vec2, heading: f64, params: &DiffeoParams) -> UniControl {
    let (sin_t, cos_t) = heading.sin_cos();
    let k = params.gain;
    UniControl {
        v: k * (u.x * cos_t + u.y * sin_t),
        omega: k / params.look_ahead * (-u.x * sin_t + u.y * cos_t),
    }
}

/// Proportional drive toward a fixed goal: u = goal - p.
pub fn goto_goal_si(position: Vec2, goal: Vec2) -> Vec2 {
    goal - position
}

/// Coverage descent command for robot `i`: chase the density-weighted
/// centroid of its own Voronoi cell, u_i = kappa (c_i - p_i).
pub fn coverage_si<D: Density>(
    positions: &[Vec2],
    i: usize,
    density: &D,
    domain: &Domain,
    kappa: f64,
    resolution: u32,
) -> Result<Vec2, GeometryError> {
    let cells = compute_voronoi(positions, domain)?;
    let centroid = cell_centroid(&cells[i], density, resolution)?;
    Ok((centroid - positions[i]) * kappa)
}

/// Coverage commands for the whole swarm at once. Centroids come from one
/// shared quadrature lattice over the domain (see
/// [`crate::geometry::swarm_centroids`]), which is what makes a synchronous
/// rollout of these commands a true descent of the locational cost; per-robot
/// [`coverage_si`] quadrature differs from this by its cell-local grid.
pub fn coverage_si_all<D: Density>(
    positions: &[Vec2],
    density: &D,
    domain: &Domain,
    kappa: f64,
    resolution: u32,
) -> Result<Vec<Vec2>, GeometryError> {
    let centroids = swarm_centroids(positions, density, domain, resolution)?;
    Ok(positions
        .iter()
        .zip(&centroids)
        .map(|(&p, &c)| (c - p) * kappa)
        .collect())
}

/// Clamp both command components to symmetric limits, preserving sign.
pub fn saturate(cmd: UniControl, v_max: f64, omega_max: f64) -> UniControl {
    UniControl {
        v: cmd.v.clamp(-v_max, v_max),
        omega: cmd.omega.clamp(-omega_max, omega_max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// Velocity of the look-ahead point p + l e_theta under commands (v, omega).
    fn look_ahead_velocity(cmd: UniControl, heading: f64, l: f64) -> Vec2 {
        let (sin_t, cos_t) = heading.sin_cos();
        Vec2::new(
            cmd.v * cos_t - l * cmd.omega * sin_t,
            cmd.v * sin_t + l * cmd.omega * cos_t,
        )
    }

    #[test]
    fn look_ahead_point_tracks_k_times_u_exactly() {
        let params = DiffeoParams::new(0.37, 1.9).unwrap();
        for i in 0..16 {
            let heading = -PI + 2.0 * PI * i as f64 / 16.0;
            for j in 0..8 {
                let u = Vec2::from_angle(0.9 * j as f64) * (0.1 + 0.2 * j as f64);
                let cmd = si_to_uni(u, heading, &params);
                let vel = look_ahead_velocity(cmd, heading, params.look_ahead);
                assert!(vel.dist(u * params.gain) < 1e-12);
            }
        }
    }

    #[test]
    fn aligned_command_is_pure_drive() {
        let params = DiffeoParams::new(0.5, 2.0).unwrap();
        let heading = 0.7;
        let u = Vec2::from_angle(heading) * 0.3;
        let cmd = si_to_uni(u, heading, &params);
        assert!((cmd.v - 0.6).abs() < 1e-12);
        assert!(cmd.omega.abs() < 1e-12);
    }

    #[test]
    fn perpendicular_command_is_pure_turn() {
        let params = DiffeoParams::new(0.5, 2.0).unwrap();
        let heading = -1.2;
        let u = Vec2::from_angle(heading + FRAC_PI_2) * 0.3;
        let cmd = si_to_uni(u, heading, &params);
        assert!(cmd.v.abs() < 1e-12);
        assert!((cmd.omega - 2.0 * 0.3 / 0.5).abs() < 1e-12);
    }

    #[test]
    fn goal_command_vanishes_at_the_goal() {
        let goal = Vec2::new(0.4, -0.2);
        assert_eq!(goto_goal_si(goal, goal), Vec2::ZERO);
        let u = goto_goal_si(Vec2::ZERO, goal);
        assert_eq!(u, goal);
    }

    #[test]
    fn goal_distance_decays_exponentially_under_si_rollout() {
        // p' = goal - p gives ||p - goal|| = e^(-t) d0; the discrete rollout
        // at dt = 0.01 stays within 1% of the initial distance of that curve.
        let goal = Vec2::new(0.8, 0.6);
        let mut p = Vec2::new(-0.1, 0.2);
        let d0 = p.dist(goal);
        let dt = 0.01;
        for k in 0..=300 {
            let t = k as f64 * dt;
            let gap = (p.dist(goal) - (-t).exp() * d0).abs();
            assert!(gap <= 0.01 * d0, "t = {t}: gap {gap}");
            p += goto_goal_si(p, goal) * dt;
        }
    }

    #[test]
    fn single_robot_coverage_chases_the_domain_centroid() {
        let domain = Domain::unit();
        let uniform = |_q: Vec2| 1.0;
        let positions = [Vec2::new(0.2, 0.2)];
        let u = coverage_si(&positions, 0, &uniform, &domain, 1.0, 128).unwrap();
        assert!(u.dist(Vec2::new(0.3, 0.3)) < 1e-9, "u = {u:?}");
        // kappa scales the command linearly.
        let u2 = coverage_si(&positions, 0, &uniform, &domain, 2.5, 128).unwrap();
        assert!(u2.dist(u * 2.5) < 1e-12);
        // At the centroid the command vanishes.
        let at_c = [Vec2::new(0.5, 0.5)];
        let u0 = coverage_si(&at_c, 0, &uniform, &domain, 1.0, 128).unwrap();
        assert!(u0.norm() < 1e-9);
    }

    #[test]
    fn batched_coverage_matches_per_robot_on_a_single_site() {
        // With one robot the cell is the whole domain, so the per-cell grid
        // and the shared lattice coincide node for node.
        let domain = Domain::unit();
        let uniform = |_q: Vec2| 1.0;
        let positions = [Vec2::new(0.31, 0.72)];
        let single = coverage_si(&positions, 0, &uniform, &domain, 1.3, 64).unwrap();
        let all = coverage_si_all(&positions, &uniform, &domain, 1.3, 64).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].dist(single) < 1e-12);
    }

    #[test]
    fn diffeo_is_linear_and_gains_scale_as_advertised() {
        let params = DiffeoParams::new(0.4, 1.7).unwrap();
        let heading = 0.9;
        let (u1, u2) = (Vec2::new(0.3, -0.8), Vec2::new(-1.1, 0.25));
        let (a, b) = (2.0, -0.5);
        let combined = si_to_uni(u1 * a + u2 * b, heading, &params);
        let (c1, c2) = (
            si_to_uni(u1, heading, &params),
            si_to_uni(u2, heading, &params),
        );
        assert!((combined.v - (a * c1.v + b * c2.v)).abs() < 1e-12);
        assert!((combined.omega - (a * c1.omega + b * c2.omega)).abs() < 1e-12);

        let double_k = DiffeoParams::new(0.4, 3.4).unwrap();
        let dk = si_to_uni(u1, heading, &double_k);
        assert!((dk.v - 2.0 * c1.v).abs() < 1e-12);
        assert!((dk.omega - 2.0 * c1.omega).abs() < 1e-12);

        let double_l = DiffeoParams::new(0.8, 1.7).unwrap();
        let dl = si_to_uni(u1, heading, &double_l);
        assert!((dl.v - c1.v).abs() < 1e-12);
        assert!((dl.omega - 0.5 * c1.omega).abs() < 1e-12);
    }

    #[test]
    fn saturation_clips_and_preserves_sign() {
        let cmd = UniControl {
            v: 3.0,
            omega: -7.0,
        };
        let s = saturate(cmd, 1.0, 2.0);
        assert_eq!(
            s,
            UniControl {
                v: 1.0,
                omega: -2.0
            }
        );
        let mild = UniControl { v: 0.5, omega: 0.5 };
        assert_eq!(saturate(mild, 1.0, 2.0), mild);
    }

    #[test]
    fn invalid_diffeo_params_are_rejected() {
        assert_eq!(
            DiffeoParams::new(0.0, 1.0),
            Err(ControllerError::NonpositiveLookAhead { l: 0.0 })
        );
        assert_eq!(
            DiffeoParams::new(0.1, -2.0),
            Err(ControllerError::NonpositiveGain { gain: -2.0 })
        );
        assert!(DiffeoParams::new(0.1, 1.0).is_ok());
    }
}
