//! Behavior presets and the simulation loop.
//!
//! An [`Emotion`] names one of six motion styles. Three follow a contour
//! (happiness, surprise, sadness): robots start on the curve and chase a
//! phase point that circles it. Three are coverage behaviors (anger, fear,
//! disgust): robots start at random collision-free positions and descend the
//! locational cost of a density field, each chasing its own region's
//! centroid. [`BehaviorSpec::preset`] bundles the tuned parameters;
//! [`run`] integrates the swarm and returns a [`TrajectoryLog`].

use crate::controllers::{
    coverage_si_all, goto_goal_si, saturate, si_to_uni, ControllerError, DiffeoParams, UniControl,
};
use crate::densities::{DensityError, DensityField, DensityKind};
use crate::dynamics::{clamp_to_domain, step_unicycle, DynamicsError, Pose, MAX_TIMESTEP};
use crate::geometry::{Domain, GeometryError, DEFAULT_RESOLUTION};
use crate::shapes::{
    initial_placement_contour, wrap_phase, ContourKind, ContourParams, ShapeError,
};
use crate::trajectory::{RunMeta, TrajectoryLog};
use crate::vec2::Vec2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const DEFAULT_DT: f64 = 0.01;
pub const DEFAULT_ROBOT_RADIUS: f64 = 0.05;
pub const DEFAULT_V_MAX: f64 = 10.0;
pub const DEFAULT_OMEGA_MAX: f64 = 100.0;
pub const DEFAULT_KAPPA: f64 = 1.0;

/// Total candidate draws allowed when scattering a coverage swarm.
pub const PLACEMENT_ATTEMPT_CAP: usize = 100_000;

/// Contour behaviors use a stiff velocity gain so the tracking lag
/// (target speed divided by the gain) stays well inside the curve's scale.
const CONTOUR_GAIN: f64 = 50.0;
/// Contour look-ahead as a fraction of the curve's outer radius.
const CONTOUR_LOOK_AHEAD_FRAC: f64 = 0.1;
/// Coverage look-ahead as a fraction of the domain's smaller side. Kept tiny
/// on purpose: the heading loop overcorrects while the centroid error is
/// large, which gives the agitated, jittery traces these behaviors are for.
const COVERAGE_LOOK_AHEAD_FRAC: f64 = 2e-4;

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("swarm needs at least one robot")]
    EmptySwarm,
    #[error("duration must be positive and finite, got {duration}")]
    BadDuration { duration: f64 },
    #[error(
        "placed only {placed} of {n} robots after {attempts} draws; lower n or grow the domain"
    )]
    PlacementFailed {
        n: usize,
        placed: usize,
        attempts: usize,
    },
    #[error(
        "unknown emotion {0:?}; expected happiness, surprise, sadness, anger, fear or disgust"
    )]
    UnknownEmotion(String),
    #[error("{emotion} has no parameter {key:?}")]
    UnknownParam { key: String, emotion: Emotion },
    #[error("parameter {key:?} rejected value {value:?}: {reason}")]
    BadParamValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("spec for {emotion} is inconsistent: {reason}")]
    InvalidSpec { emotion: Emotion, reason: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Controller(#[from] ControllerError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Emotion {
    Happiness,
    Surprise,
    Sadness,
    Anger,
    Fear,
    Disgust,
}

impl Emotion {
    pub const ALL: [Emotion; 6] = [
        Emotion::Happiness,
        Emotion::Surprise,
        Emotion::Sadness,
        Emotion::Anger,
        Emotion::Fear,
        Emotion::Disgust,
    ];

    /// Contour behaviors track a curve; the rest are coverage behaviors.
    pub fn is_contour(self) -> bool {
        matches!(
            self,
            Emotion::Happiness | Emotion::Surprise | Emotion::Sadness
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Happiness => "happiness",
            Emotion::Surprise => "surprise",
            Emotion::Sadness => "sadness",
            Emotion::Anger => "anger",
            Emotion::Fear => "fear",
            Emotion::Disgust => "disgust",
        }
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Emotion {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Emotion, EngineError> {
        let lower = s.to_ascii_lowercase();
        Emotion::ALL
            .into_iter()
            .find(|e| e.name() == lower)
            .ok_or_else(|| EngineError::UnknownEmotion(s.to_string()))
    }
}

/// Everything needed to reproduce one behavior: the domain, the control law
/// family and its parameters, command limits, and the default horizon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BehaviorSpec {
    pub emotion: Emotion,
    pub domain: Domain,
    /// Tracked curve; `Some` exactly for contour behaviors.
    pub contour: Option<ContourParams>,
    /// Coverage density; `Some` exactly for coverage behaviors.
    pub density: Option<DensityKind>,
    /// Coverage descent gain on the centroid error.
    pub kappa: f64,
    pub diffeo: DiffeoParams,
    pub v_max: f64,
    pub omega_max: f64,
    /// Quadrature lattice resolution for centroid integrals.
    pub resolution: u32,
    /// Robot body radius; also the wall clearance kept by clamping.
    pub robot_radius: f64,
    /// Horizon used when the caller does not pick one, in seconds.
    pub default_duration: f64,
}

impl BehaviorSpec {
    /// The tuned parameter set for `emotion` on `domain`. Length scales
    /// follow the domain's smaller side so behaviors look alike on any
    /// rectangle.
    pub fn preset(emotion: Emotion, domain: Domain) -> BehaviorSpec {
        let m = domain.min_side();
        let mut spec = BehaviorSpec {
            emotion,
            domain,
            contour: None,
            density: None,
            kappa: DEFAULT_KAPPA,
            diffeo: DiffeoParams {
                look_ahead: COVERAGE_LOOK_AHEAD_FRAC * m,
                gain: 1.0,
            },
            v_max: DEFAULT_V_MAX,
            omega_max: DEFAULT_OMEGA_MAX,
            resolution: DEFAULT_RESOLUTION,
            robot_radius: DEFAULT_ROBOT_RADIUS,
            default_duration: 1.0,
        };
        match emotion {
            Emotion::Happiness => {
                let contour = ContourParams::happiness_for(&domain);
                spec.diffeo = DiffeoParams {
                    look_ahead: CONTOUR_LOOK_AHEAD_FRAC * (contour.radius + contour.amplitude),
                    gain: CONTOUR_GAIN,
                };
                spec.contour = Some(contour);
                spec.default_duration = 4.0;
            }
            Emotion::Surprise => {
                let contour = ContourParams::surprise_for(&domain);
                spec.diffeo = DiffeoParams {
                    look_ahead: CONTOUR_LOOK_AHEAD_FRAC * contour.r_max,
                    gain: CONTOUR_GAIN,
                };
                spec.contour = Some(contour);
                spec.default_duration = 4.0;
            }
            Emotion::Sadness => {
                let contour = ContourParams::sadness_for(&domain);
                spec.diffeo = DiffeoParams {
                    look_ahead: CONTOUR_LOOK_AHEAD_FRAC * contour.radius,
                    gain: CONTOUR_GAIN,
                };
                spec.contour = Some(contour);
                spec.default_duration = 8.0;
            }
            Emotion::Anger => {
                spec.density = Some(DensityKind::GaussianCenter {
                    sigma: DensityField::default_sigma(&domain),
                });
                spec.diffeo.gain = 2.0;
                spec.default_duration = 6.0;
            }
            Emotion::Fear => {
                spec.density = Some(DensityKind::Uniform);
                spec.diffeo.gain = 2.0;
                spec.default_duration = 15.0;
            }
            Emotion::Disgust => {
                spec.density = Some(DensityKind::Boundary {
                    margin: DensityField::default_margin(&domain),
                    floor: DensityField::DEFAULT_FLOOR,
                });
                spec.diffeo.gain = 0.5;
                spec.default_duration = 12.0;
            }
        }
        spec
    }

    /// Build the density field, if this is a coverage behavior.
    pub fn density_field(&self) -> Result<Option<DensityField>, DensityError> {
        match self.density {
            None => Ok(None),
            Some(DensityKind::Uniform) => Ok(Some(DensityField::uniform(self.domain))),
            Some(DensityKind::GaussianCenter { sigma }) => {
                DensityField::gaussian_center(self.domain, sigma).map(Some)
            }
            Some(DensityKind::Boundary { margin, floor }) => {
                DensityField::boundary(self.domain, margin, floor).map(Some)
            }
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> EngineError {
        EngineError::InvalidSpec {
            emotion: self.emotion,
            reason: reason.into(),
        }
    }

    /// Check that every field is usable and consistent with the emotion's
    /// family. Called by [`init_behavior`], so a spec that runs has passed.
    pub fn validate(&self) -> Result<(), EngineError> {
        match (self.emotion.is_contour(), &self.contour, &self.density) {
            (true, Some(_), None) | (false, None, Some(_)) => {}
            (true, _, _) => {
                return Err(self.invalid("contour behaviors need a contour and no density"))
            }
            (false, _, _) => {
                return Err(self.invalid("coverage behaviors need a density and no contour"))
            }
        }
        DiffeoParams::new(self.diffeo.look_ahead, self.diffeo.gain)?;
        self.density_field()?;
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return Err(self.invalid(format!("kappa must be positive, got {}", self.kappa)));
        }
        if !(self.v_max > 0.0) {
            return Err(self.invalid(format!("v_max must be positive, got {}", self.v_max)));
        }
        if !(self.omega_max > 0.0) {
            return Err(self.invalid(format!(
                "omega_max must be positive, got {}",
                self.omega_max
            )));
        }
        if self.resolution < 2 {
            return Err(self.invalid(format!(
                "resolution must be at least 2, got {}",
                self.resolution
            )));
        }
        let quarter = self.domain.min_side() / 4.0;
        if !(self.robot_radius > 0.0 && self.robot_radius < quarter) {
            return Err(self.invalid(format!(
                "robot_radius must be in (0, {quarter}) for this domain, got {}",
                self.robot_radius
            )));
        }
        if !(self.default_duration > 0.0 && self.default_duration.is_finite()) {
            return Err(self.invalid(format!(
                "default_duration must be positive, got {}",
                self.default_duration
            )));
        }
        if let Some(c) = &self.contour {
            let half = self.domain.min_side() / 2.0;
            let reach = match c.kind {
                ContourKind::Happiness => {
                    if !(c.radius > 0.0 && c.amplitude >= 0.0 && c.amplitude < c.radius) {
                        return Err(self.invalid("need radius > 0 and 0 <= amplitude < radius"));
                    }
                    c.radius + c.amplitude
                }
                ContourKind::Surprise => {
                    if !(c.r_min > 0.0 && c.r_min < c.r_max && c.expansion_rate > 0.0) {
                        return Err(self.invalid("need 0 < r_min < r_max and expansion_rate > 0"));
                    }
                    c.r_max
                }
                ContourKind::Sadness => {
                    if !(c.radius > 0.0) {
                        return Err(self.invalid("need radius > 0"));
                    }
                    c.radius
                }
            };
            if reach > half {
                return Err(self.invalid(format!(
                    "contour reaches {reach} from the center but the domain only allows {half}"
                )));
            }
            if !(c.phase_rate.is_finite() && c.phase_rate != 0.0) {
                return Err(self.invalid("phase_rate must be finite and nonzero"));
            }
        }
        Ok(())
    }

    /// Override one parameter by name, as the CLI's `--set key=value` does.
    /// Range checks happen in [`validate`]; this parses and routes.
    pub fn set_param(&mut self, key: &str, value: &str) -> Result<(), EngineError> {
        let bad = |reason: &str| EngineError::BadParamValue {
            key: key.to_string(),
            value: value.to_string(),
            reason: reason.to_string(),
        };
        let as_f64 = || value.parse::<f64>().map_err(|_| bad("not a number"));
        let as_u32 = || value.parse::<u32>().map_err(|_| bad("not a whole number"));
        let unknown = || EngineError::UnknownParam {
            key: key.to_string(),
            emotion: self.emotion,
        };
        match key {
            "kappa" => self.kappa = as_f64()?,
            "gain" => self.diffeo.gain = as_f64()?,
            "look_ahead" => self.diffeo.look_ahead = as_f64()?,
            "v_max" => self.v_max = as_f64()?,
            "omega_max" => self.omega_max = as_f64()?,
            "resolution" => self.resolution = as_u32()?,
            "robot_radius" => self.robot_radius = as_f64()?,
            "duration" => self.default_duration = as_f64()?,
            "radius" | "amplitude" | "frequency" | "rate" | "r_min" | "r_max"
            | "expansion_rate" => {
                let c = self.contour.as_mut().ok_or_else(unknown)?;
                match key {
                    "radius" => c.radius = as_f64()?,
                    "amplitude" => c.amplitude = as_f64()?,
                    "frequency" => c.frequency = as_u32()?,
                    "rate" => c.phase_rate = as_f64()?,
                    "r_min" => c.r_min = as_f64()?,
                    "r_max" => c.r_max = as_f64()?,
                    "expansion_rate" => c.expansion_rate = as_f64()?,
                    _ => unreachable!(),
                }
            }
            "sigma" => match &mut self.density {
                Some(DensityKind::GaussianCenter { sigma }) => *sigma = as_f64()?,
                _ => return Err(unknown()),
            },
            "margin" => match &mut self.density {
                Some(DensityKind::Boundary { margin, .. }) => *margin = as_f64()?,
                _ => return Err(unknown()),
            },
            "floor" => match &mut self.density {
                Some(DensityKind::Boundary { floor, .. }) => *floor = as_f64()?,
                _ => return Err(unknown()),
            },
            _ => return Err(unknown()),
        }
        Ok(())
    }
}

/// Swarm configuration at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct SwarmState {
    /// Simulation time in seconds.
    pub t: f64,
    pub poses: Vec<Pose>,
    /// Starting phase of each robot on the contour; empty for coverage.
    pub phases: Vec<f64>,
    /// Generator used for placement; kept so callers can keep drawing from
    /// the same seeded stream.
    pub rng: ChaCha8Rng,
}

impl SwarmState {
    pub fn n(&self) -> usize {
        self.poses.len()
    }

    pub fn positions(&self) -> Vec<Vec2> {
        self.poses.iter().map(|p| p.position).collect()
    }
}

/// Scatter `n` collision-free positions: uniform draws over the domain inset
/// by one robot radius, rejecting any draw closer than two radii to an
/// accepted one.
fn sample_positions(
    n: usize,
    domain: &Domain,
    radius: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec2>, EngineError> {
    let min_sep_sq = (2.0 * radius) * (2.0 * radius);
    let mut positions: Vec<Vec2> = Vec::with_capacity(n);
    let mut attempts = 0;
    while positions.len() < n {
        if attempts >= PLACEMENT_ATTEMPT_CAP {
            return Err(EngineError::PlacementFailed {
                n,
                placed: positions.len(),
                attempts,
            });
        }
        attempts += 1;
        let candidate = Vec2::new(
            rng.gen_range(domain.x_min + radius..domain.x_max - radius),
            rng.gen_range(domain.y_min + radius..domain.y_max - radius),
        );
        if positions.iter().all(|p| p.dist_sq(candidate) >= min_sep_sq) {
            positions.push(candidate);
        }
    }
    Ok(positions)
}

/// Place `n` robots for the behavior: contour behaviors start on the curve
/// with evenly spaced phases, headed along it; coverage behaviors scatter to
/// seeded collision-free positions with random headings.
pub fn init_behavior(spec: &BehaviorSpec, n: usize, seed: u64) -> Result<SwarmState, EngineError> {
    spec.validate()?;
    if n == 0 {
        return Err(EngineError::EmptySwarm);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(contour) = &spec.contour {
        let (positions, phases) = initial_placement_contour(n, contour, 0.0)?;
        let poses = positions
            .iter()
            .zip(&phases)
            .map(|(&position, &theta)| Pose {
                position,
                heading: contour.tangent_heading(theta, 0.0),
            })
            .collect();
        Ok(SwarmState {
            t: 0.0,
            poses,
            phases,
            rng,
        })
    } else {
        let positions = sample_positions(n, &spec.domain, spec.robot_radius, &mut rng)?;
        let poses = positions
            .into_iter()
            .map(|position| Pose {
                position,
                heading: rng.gen_range(-PI..PI),
            })
            .collect();
        Ok(SwarmState {
            t: 0.0,
            poses,
            phases: Vec::new(),
            rng,
        })
    }
}

/// Unicycle commands for every robot, computed from the current state.
pub fn compute_commands(
    spec: &BehaviorSpec,
    state: &SwarmState,
) -> Result<Vec<UniControl>, EngineError> {
    let targets_si: Vec<Vec2> = if let Some(contour) = &spec.contour {
        state
            .poses
            .iter()
            .zip(&state.phases)
            .map(|(pose, &theta0)| {
                let theta = wrap_phase(state.t, theta0, contour.phase_rate);
                goto_goal_si(pose.position, contour.point_at(theta, state.t))
            })
            .collect()
    } else {
        let Some(field) = spec.density_field()? else {
            return Err(spec.invalid("coverage behaviors need a density and no contour"));
        };
        coverage_si_all(
            &state.positions(),
            &field,
            &spec.domain,
            spec.kappa,
            spec.resolution,
        )?
    };
    Ok(state
        .poses
        .iter()
        .zip(&targets_si)
        .map(|(pose, &u)| {
            saturate(
                si_to_uni(u, pose.heading, &spec.diffeo),
                spec.v_max,
                spec.omega_max,
            )
        })
        .collect())
}

/// Integrate one step with the given commands: Euler-step every unicycle,
/// clamp bodies inside the walls, advance time.
fn advance(
    spec: &BehaviorSpec,
    state: &mut SwarmState,
    cmds: &[UniControl],
    dt: f64,
) -> Result<(), EngineError> {
    for (pose, cmd) in state.poses.iter_mut().zip(cmds) {
        let next = step_unicycle(*pose, *cmd, dt)?;
        *pose = clamp_to_domain(next, &spec.domain, spec.robot_radius);
    }
    state.t += dt;
    Ok(())
}

/// One simulation step. Returns the commands that were applied, which were
/// computed from the state as it was when the call began.
pub fn step(
    spec: &BehaviorSpec,
    state: &mut SwarmState,
    dt: f64,
) -> Result<Vec<UniControl>, EngineError> {
    let cmds = compute_commands(spec, state)?;
    advance(spec, state, &cmds, dt)?;
    Ok(cmds)
}

/// Number of integration steps covering `duration`; the epsilon swallows
/// float noise in the quotient so e.g. 8.0 / 0.01 is 800 steps, not 801.
pub fn step_count(duration: f64, dt: f64) -> usize {
    ((duration / dt) - 1e-9).ceil().max(0.0) as usize
}

/// Simulate the behavior from its seeded start and log every step.
///
/// The log holds one record per robot per time k dt for k = 0..=steps, each
/// carrying the command computed at that instant (the final row evaluates
/// the control one extra time without applying it).
pub fn run(
    spec: &BehaviorSpec,
    n: usize,
    seed: u64,
    duration: f64,
    dt: f64,
) -> Result<TrajectoryLog, EngineError> {
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(EngineError::BadDuration { duration });
    }
    if !(dt > 0.0 && dt <= MAX_TIMESTEP) {
        return Err(DynamicsError::BadTimestep { dt }.into());
    }
    let steps = step_count(duration, dt);
    let mut state = init_behavior(spec, n, seed)?;
    let mut log = TrajectoryLog::new(RunMeta {
        emotion: spec.emotion,
        n,
        seed,
        dt,
        duration,
        steps,
        spec: spec.clone(),
    });
    for _ in 0..steps {
        let cmds = compute_commands(spec, &state)?;
        log.push_frame(state.t, &state.poses, &cmds);
        advance(spec, &mut state, &cmds, dt)?;
    }
    let cmds = compute_commands(spec, &state)?;
    log.push_frame(state.t, &state.poses, &cmds);
    Ok(log)
}
