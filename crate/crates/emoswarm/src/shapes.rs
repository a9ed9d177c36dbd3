//! Parametric target contours for the shape-tracking behaviors.
//!
//! Each tracked point lives on a closed curve around the domain center and is
//! addressed by a phase angle theta that advances at `phase_rate`. Three
//! families are provided: a rippled circle (happiness), an expanding circle
//! whose radius sweeps a sawtooth (surprise), and a small plain circle
//! (sadness).

use crate::dynamics::wrap_angle;
use crate::geometry::Domain;
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContourKind {
    Happiness,
    Surprise,
    Sadness,
}

#[derive(Debug, Error, PartialEq)]
pub enum ShapeError {
    #[error("contour params are for {got:?}, expected {expected:?}")]
    WrongKind {
        expected: ContourKind,
        got: ContourKind,
    },
    #[error("a placement needs at least one robot")]
    EmptySwarm,
}

/// Parameters of one contour family. Fields not used by `kind` are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourParams {
    pub kind: ContourKind,
    /// Curve center (the domain midpoint for the shipped presets).
    pub center: Vec2,
    /// Base circle radius (happiness, sadness).
    pub radius: f64,
    /// Ripple amplitude (happiness).
    pub amplitude: f64,
    /// Ripple count around the circle (happiness).
    pub frequency: u32,
    /// Sawtooth radius range (surprise).
    pub r_min: f64,
    pub r_max: f64,
    /// Radius growth in meters per second (surprise).
    pub expansion_rate: f64,
    /// Phase advance in radians per second.
    pub phase_rate: f64,
}

impl ContourParams {
    /// Rippled circle sized for the domain: R = 0.35, A = 0.05 of the smaller
    /// side, six ripples, one radian of phase per second.
    pub fn happiness_for(domain: &Domain) -> ContourParams {
        let m = domain.min_side();
        ContourParams {
            kind: ContourKind::Happiness,
            center: domain.center(),
            radius: 0.35 * m,
            amplitude: 0.05 * m,
            frequency: 6,
            r_min: 0.0,
            r_max: 0.0,
            expansion_rate: 0.0,
            phase_rate: 1.0,
        }
    }

    /// Expanding circle sized for the domain: radius sweeps from 0.10 to 0.45
    /// of the smaller side over ten seconds, then wraps.
    pub fn surprise_for(domain: &Domain) -> ContourParams {
        let m = domain.min_side();
        let (r_min, r_max) = (0.10 * m, 0.45 * m);
        ContourParams {
            kind: ContourKind::Surprise,
            center: domain.center(),
            radius: 0.0,
            amplitude: 0.0,
            frequency: 0,
            r_min,
            r_max,
            expansion_rate: (r_max - r_min) / 10.0,
            phase_rate: 1.0,
        }
    }

    /// Small slow circle: R = 0.10 of the smaller side, pi/32 radians of phase
    /// per second (an eighth of the circle every eight seconds).
    pub fn sadness_for(domain: &Domain) -> ContourParams {
        let m = domain.min_side();
        ContourParams {
            kind: ContourKind::Sadness,
            center: domain.center(),
            radius: 0.10 * m,
            amplitude: 0.0,
            frequency: 0,
            r_min: 0.0,
            r_max: 0.0,
            expansion_rate: 0.0,
            phase_rate: PI / 32.0,
        }
    }

    /// Radial distance from the center at phase `theta` and time `t`.
    pub fn radial(&self, theta: f64, t: f64) -> f64 {
        match self.kind {
            ContourKind::Happiness => {
                self.radius + self.amplitude * (self.frequency as f64 * theta).sin()
            }
            ContourKind::Surprise => self.radius_at(t),
            ContourKind::Sadness => self.radius,
        }
    }

    /// Sawtooth radius of the expanding circle; constant for the others.
    pub fn radius_at(&self, t: f64) -> f64 {
        match self.kind {
            ContourKind::Surprise => {
                (self.expansion_rate * t).rem_euclid(self.r_max - self.r_min) + self.r_min
            }
            _ => self.radius,
        }
    }

    /// The tracked point at phase `theta` and time `t`.
    pub fn point_at(&self, theta: f64, t: f64) -> Vec2 {
        let r = self.radial(theta, t);
        self.center + Vec2::new(r * theta.cos(), r * theta.sin())
    }

    /// Heading of the curve's tangent (direction of increasing phase).
    pub fn tangent_heading(&self, theta: f64, t: f64) -> f64 {
        let r = self.radial(theta, t);
        let dr = match self.kind {
            ContourKind::Happiness => {
                let f = self.frequency as f64;
                self.amplitude * f * (f * theta).cos()
            }
            _ => 0.0,
        };
        let dx = dr * theta.cos() - r * theta.sin();
        let dy = dr * theta.sin() + r * theta.cos();
        dy.atan2(dx)
    }
}

fn expect_kind(params: &ContourParams, expected: ContourKind) -> Result<(), ShapeError> {
    if params.kind == expected {
        Ok(())
    } else {
        Err(ShapeError::WrongKind {
            expected,
            got: params.kind,
        })
    }
}

/// Point on the rippled circle: (R + A sin(f theta)) (cos theta, sin theta),
/// offset by the curve center.
pub fn happiness_contour(theta: f64, params: &ContourParams) -> Result<Vec2, ShapeError> {
    expect_kind(params, ContourKind::Happiness)?;
    Ok(params.point_at(theta, 0.0))
}

/// Point on the expanding circle at time `t`: the radius follows a sawtooth
/// R(t) = mod(rate t, R_max - R_min) + R_min.
pub fn surprise_contour(theta: f64, t: f64, params: &ContourParams) -> Result<Vec2, ShapeError> {
    expect_kind(params, ContourKind::Surprise)?;
    Ok(params.point_at(theta, t))
}

/// Point on the plain circle of radius R.
pub fn sadness_contour(theta: f64, params: &ContourParams) -> Result<Vec2, ShapeError> {
    expect_kind(params, ContourKind::Sadness)?;
    Ok(params.point_at(theta, 0.0))
}

/// Phase at time `t` for a robot that started at `theta0`, wrapped into
/// [-pi, pi) through atan2 so long runs never lose precision to unbounded
/// angles.
pub fn wrap_phase(t: f64, theta0: f64, phase_rate: f64) -> f64 {
    wrap_angle(phase_rate * t + theta0)
}

/// Evenly spaced starting phases and the matching on-contour positions at
/// time `t0`. Robot i of n starts at phase 2 pi i / n (i counted from 1).
pub fn initial_placement_contour(
    n: usize,
    params: &ContourParams,
    t0: f64,
) -> Result<(Vec<Vec2>, Vec<f64>), ShapeError> {
    if n == 0 {
        return Err(ShapeError::EmptySwarm);
    }
    let mut positions = Vec::with_capacity(n);
    let mut phases = Vec::with_capacity(n);
    for i in 1..=n {
        let theta = wrap_angle(2.0 * PI * i as f64 / n as f64);
        phases.push(theta);
        positions.push(params.point_at(theta, t0));
    }
    Ok((positions, phases))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_happiness() -> ContourParams {
        ContourParams::happiness_for(&Domain::unit())
    }

    #[test]
    fn happiness_radial_extremes_hit_r_plus_minus_a() {
        let p = unit_happiness();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for k in 0..10_000 {
            let theta = 2.0 * PI * k as f64 / 10_000.0;
            let d = happiness_contour(theta, &p).unwrap().dist(p.center);
            lo = lo.min(d);
            hi = hi.max(d);
        }
        assert!((hi - (p.radius + p.amplitude)).abs() < 1e-6, "hi = {hi}");
        assert!((lo - (p.radius - p.amplitude)).abs() < 1e-6, "lo = {lo}");
    }

    #[test]
    fn happiness_at_zero_phase_sits_on_the_base_circle() {
        let p = unit_happiness();
        let q = happiness_contour(0.0, &p).unwrap();
        assert!((q.x - (p.center.x + p.radius)).abs() < 1e-15);
        assert!((q.y - p.center.y).abs() < 1e-15);
    }

    #[test]
    fn surprise_radius_sweeps_a_sawtooth() {
        let p = ContourParams::surprise_for(&Domain::unit());
        assert!((p.radius_at(0.0) - p.r_min).abs() < 1e-15);
        let period = (p.r_max - p.r_min) / p.expansion_rate;
        let mut wraps = 0;
        let mut prev = p.radius_at(0.0);
        for k in 1..=200 {
            let r = p.radius_at(period * k as f64 / 100.0);
            assert!(r >= p.r_min - 1e-12 && r < p.r_max + 1e-12);
            if r < prev {
                wraps += 1;
            } else {
                assert!(r >= prev);
            }
            prev = r;
        }
        assert_eq!(wraps, 2, "one wrap per period");
        // The sweep reaches both ends of the range.
        let hi = (0..1000)
            .map(|k| p.radius_at(period * k as f64 / 1000.0))
            .fold(0.0, f64::max);
        assert!(hi > p.r_max - 0.01 * (p.r_max - p.r_min));
    }

    #[test]
    fn sadness_points_stay_on_the_circle() {
        let p = ContourParams::sadness_for(&Domain::unit());
        for k in 0..64 {
            let theta = -PI + 2.0 * PI * k as f64 / 64.0;
            let d = sadness_contour(theta, &p).unwrap().dist(p.center);
            assert!((d - p.radius).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_params_kind_is_rejected() {
        let sad = ContourParams::sadness_for(&Domain::unit());
        assert_eq!(
            happiness_contour(0.3, &sad),
            Err(ShapeError::WrongKind {
                expected: ContourKind::Happiness,
                got: ContourKind::Sadness,
            })
        );
        assert!(surprise_contour(0.3, 0.0, &sad).is_err());
        assert!(sadness_contour(0.3, &sad).is_ok());
    }

    #[test]
    fn wrap_phase_lands_in_the_canonical_interval() {
        // rate * t + theta0 = 3 pi wraps to the seam at -pi/pi.
        let w = wrap_phase(3.0, 0.0, PI);
        assert!((-PI..PI).contains(&w));
        assert!(PI - w.abs() < 1e-9, "w = {w}");
        assert!((wrap_phase(0.0, 0.5, 1.0) - 0.5).abs() < 1e-15);
        // Advancing by a full period changes nothing.
        for &t in &[0.0, 1.7, 42.0] {
            let a = wrap_phase(t, 0.3, 2.5);
            let b = wrap_phase(t + 2.0 * PI / 2.5, 0.3, 2.5);
            assert!((a - b).abs() < 1e-9 || (2.0 * PI - (a - b).abs()) < 1e-9);
        }
    }

    #[test]
    fn four_robots_on_a_unit_circle_take_the_axis_points() {
        let p = ContourParams {
            center: Vec2::ZERO,
            radius: 1.0,
            ..ContourParams::sadness_for(&Domain::unit())
        };
        let (pos, phases) = initial_placement_contour(4, &p, 0.0).unwrap();
        // Quarter turns; pi and -pi are the same angle, so compare on the
        // circle, and check every phase is canonical.
        let expect_phase = [PI / 2.0, PI, -PI / 2.0, 0.0];
        let expect_pos = [
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
            Vec2::new(1.0, 0.0),
        ];
        for i in 0..4 {
            assert!(
                wrap_angle(phases[i] - expect_phase[i]).abs() < 1e-12,
                "phase {i}: {} vs {}",
                phases[i],
                expect_phase[i]
            );
            assert!((-PI..PI).contains(&phases[i]));
            assert!(pos[i].dist(expect_pos[i]) < 1e-12, "pos {i}: {:?}", pos[i]);
        }
    }

    #[test]
    fn placements_are_pairwise_distinct() {
        let p = unit_happiness();
        let (pos, _) = initial_placement_contour(12, &p, 0.0).unwrap();
        for i in 0..pos.len() {
            for j in (i + 1)..pos.len() {
                assert!(pos[i].dist(pos[j]) > 1e-6, "robots {i} and {j} coincide");
            }
        }
        assert_eq!(
            initial_placement_contour(0, &p, 0.0),
            Err(ShapeError::EmptySwarm)
        );
    }

    #[test]
    fn tangent_matches_a_small_phase_step() {
        let p = unit_happiness();
        for k in 0..12 {
            let theta = -PI + 2.0 * PI * k as f64 / 12.0;
            let h = 1e-6;
            let a = p.point_at(theta, 0.0);
            let b = p.point_at(theta + h, 0.0);
            let fd = (b - a).angle();
            let an = p.tangent_heading(theta, 0.0);
            assert!(
                wrap_angle(fd - an).abs() < 1e-4,
                "theta {theta}: fd {fd} vs analytic {an}"
            );
        }
    }
}
