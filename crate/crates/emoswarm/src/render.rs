//! SVG snapshots of logged runs.
//!
//! Each frame shows the domain, the tracked contour (for contour behaviors),
//! fading position trails for a configurable subset of robots, and every
//! robot as an oriented square with a heading tick. Robot groups carry
//! `data-x`/`data-y`/`data-theta` attributes with the exact logged values so
//! frames stay machine-checkable.

use crate::shapes::ContourParams;
use crate::trajectory::TrajectoryLog;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("frame {index} out of range; log holds {frames} frames")]
    BadFrame { index: usize, frames: usize },
    #[error("stride must be at least 1")]
    BadStride,
    #[error("log holds no frames")]
    EmptyLog,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Image width in pixels; height follows the domain's aspect ratio.
    pub width_px: u32,
    /// How many past positions fade out behind each robot.
    pub trail_points: usize,
    /// Which robots get trails. Ids past the swarm size are ignored; an
    /// empty list draws no trails at all.
    pub trail_robots: Vec<usize>,
}

impl Default for RenderOptions {
    fn default() -> RenderOptions {
        RenderOptions {
            width_px: 640,
            trail_points: 150,
            trail_robots: (0..5).collect(),
        }
    }
}

const PALETTE: [&str; 10] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324",
    "#469990", "#800000",
];

/// Trail opacity bands, oldest first.
const TRAIL_BANDS: [f64; 3] = [0.12, 0.3, 0.55];

struct Screen {
    x_min: f64,
    y_max: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Screen {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x_min) * self.scale, (self.y_max - y) * self.scale)
    }
}

fn contour_path(contour: &ContourParams, t: f64, screen: &Screen) -> String {
    let mut d = String::new();
    for k in 0..=256 {
        let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / 256.0;
        let p = contour.point_at(theta, t);
        let (px, py) = screen.map(p.x, p.y);
        let _ = write!(d, "{}{px:.3},{py:.3} ", if k == 0 { "M" } else { "L" });
    }
    d.push('Z');
    d
}

/// Render the frame at `frame_index` (0 is the initial state) as an SVG
/// document.
pub fn frame_svg(
    log: &TrajectoryLog,
    frame_index: usize,
    opts: &RenderOptions,
) -> Result<String, RenderError> {
    let frames: Vec<_> = log.frames().collect();
    if frames.is_empty() {
        return Err(RenderError::EmptyLog);
    }
    if frame_index >= frames.len() {
        return Err(RenderError::BadFrame {
            index: frame_index,
            frames: frames.len(),
        });
    }
    let spec = &log.meta.spec;
    let domain = &spec.domain;
    let scale = opts.width_px as f64 / domain.width();
    let screen = Screen {
        x_min: domain.x_min,
        y_max: domain.y_max,
        scale,
        width: opts.width_px as f64,
        height: domain.height() * scale,
    };
    let frame = frames[frame_index];
    let t = frame.first().map_or(0.0, |r| r.t);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = screen.width,
        h = screen.height,
    );
    let _ = writeln!(
        svg,
        r##"<rect class="domain" x="0" y="0" width="{:.3}" height="{:.3}" fill="#fcfcfa" stroke="#404040" stroke-width="2"/>"##,
        screen.width, screen.height,
    );
    if let Some(contour) = &spec.contour {
        let _ = writeln!(
            svg,
            r##"<path class="contour" d="{}" fill="none" stroke="#909090" stroke-width="1" stroke-dasharray="6 4"/>"##,
            contour_path(contour, t, &screen),
        );
    }

    // Fading trails: recent positions split into opacity bands, oldest first.
    for &robot_id in &opts.trail_robots {
        if robot_id >= log.meta.n {
            continue;
        }
        let color = PALETTE[robot_id % PALETTE.len()];
        let first = frame_index.saturating_sub(opts.trail_points);
        let tail: Vec<(f64, f64)> = (first..=frame_index)
            .map(|k| {
                let r = &frames[k][robot_id];
                screen.map(r.x, r.y)
            })
            .collect();
        if tail.len() < 2 {
            continue;
        }
        let band_len = tail.len().div_ceil(TRAIL_BANDS.len());
        for (b, opacity) in TRAIL_BANDS.iter().enumerate() {
            let start = b * band_len;
            // Bands share a boundary point so the trail stays connected.
            let end = ((b + 1) * band_len + 1).min(tail.len());
            if end.saturating_sub(start) < 2 {
                continue;
            }
            let points: Vec<String> = tail[start..end]
                .iter()
                .map(|(x, y)| format!("{x:.3},{y:.3}"))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline class="trail" points="{}" fill="none" stroke="{color}" stroke-width="1.5" stroke-opacity="{opacity}"/>"#,
                points.join(" "),
            );
        }
    }

    // Robot bodies: oriented squares with a heading tick.
    let side = (2.0 * spec.robot_radius * scale).max(4.0);
    for record in frame {
        let color = PALETTE[record.robot_id % PALETTE.len()];
        let (cx, cy) = screen.map(record.x, record.y);
        let deg = -record.theta.to_degrees();
        let (sin_t, cos_t) = record.theta.sin_cos();
        let (tx, ty) = (cx + 0.8 * side * cos_t, cy - 0.8 * side * sin_t);
        let _ = writeln!(
            svg,
            concat!(
                r#"<g class="robot" data-robot="{id}" data-x="{x}" data-y="{y}" data-theta="{theta}">"#,
                r#"<rect x="{rx:.3}" y="{ry:.3}" width="{side:.3}" height="{side:.3}" "#,
                r##"fill="{color}" stroke="#202020" stroke-width="1" "##,
                r#"transform="rotate({deg:.3} {cx:.3} {cy:.3})"/>"#,
                r#"<line x1="{cx:.3}" y1="{cy:.3}" x2="{tx:.3}" y2="{ty:.3}" "#,
                r##"stroke="#202020" stroke-width="1.5"/>"##,
                "</g>"
            ),
            id = record.robot_id,
            x = record.x,
            y = record.y,
            theta = record.theta,
            rx = cx - side / 2.0,
            ry = cy - side / 2.0,
            side = side,
            color = color,
            deg = deg,
            cx = cx,
            cy = cy,
            tx = tx,
            ty = ty,
        );
    }
    let _ = writeln!(
        svg,
        r##"<text x="8" y="16" font-family="monospace" font-size="12" fill="#404040">{} t={t:.2}s n={}</text>"##,
        log.meta.emotion, log.meta.n,
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Write every `stride`-th frame (always including frame 0) to
/// `dir/frame_<index>.svg`. Returns the written paths in order.
pub fn render_frames(
    log: &TrajectoryLog,
    dir: &Path,
    stride: usize,
    opts: &RenderOptions,
) -> Result<Vec<PathBuf>, RenderError> {
    if stride == 0 {
        return Err(RenderError::BadStride);
    }
    let frames = log.frames().count();
    if frames == 0 {
        return Err(RenderError::EmptyLog);
    }
    fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for index in (0..frames).step_by(stride) {
        let svg = frame_svg(log, index, opts)?;
        let path = dir.join(format!("frame_{index:05}.svg"));
        fs::write(&path, svg)?;
        paths.push(path);
    }
    Ok(paths)
}
