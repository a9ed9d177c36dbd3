//! Planar domain, Voronoi partitions, and density-weighted cell integrals.
//!
//! The partition is computed by clipping the domain rectangle against the
//! perpendicular-bisector half-plane of every other site, which is O(N^2) and
//! exact for the swarm sizes this crate targets. Cell integrals use midpoint
//! quadrature; see [`cell_centroid`] (per-cell grid) and [`swarm_centroids`] /
//! [`locational_cost`] (one fixed lattice over the whole domain, so that the
//! coverage iteration descends a single discrete measure).

use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Minimum separation below which two sites are treated as coincident.
pub const MIN_SITE_SEPARATION: f64 = 1e-9;

/// Density mass below which a cell integral is considered empty.
pub const ZERO_MASS_EPS: f64 = 1e-12;

/// Default quadrature resolution (nodes per axis).
pub const DEFAULT_RESOLUTION: u32 = 128;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("empty domain: x in [{x_min}, {x_max}], y in [{y_min}, {y_max}]")]
    BadDomain {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
    #[error("positions {i} and {j} are closer than {MIN_SITE_SEPARATION}")]
    DuplicatePosition { i: usize, j: usize },
    #[error("position {index} is not strictly inside the domain")]
    OutOfDomain { index: usize },
    #[error("cell of site {site} carries no density mass")]
    ZeroMass { site: usize },
    #[error("cell of site {site} is degenerate")]
    DegenerateCell { site: usize },
}

/// Axis-aligned rectangular workspace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Domain {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Domain, GeometryError> {
        if !(x_min < x_max && y_min < y_max)
            || !(x_min.is_finite() && x_max.is_finite() && y_min.is_finite() && y_max.is_finite())
        {
            return Err(GeometryError::BadDomain {
                x_min,
                x_max,
                y_min,
                y_max,
            });
        }
        Ok(Domain {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// A `width x height` rectangle centered on the origin.
    pub fn centered(width: f64, height: f64) -> Result<Domain, GeometryError> {
        Domain::new(-width / 2.0, width / 2.0, -height / 2.0, height / 2.0)
    }

    /// The unit square [0,1] x [0,1].
    pub fn unit() -> Domain {
        Domain {
            x_min: 0.0,
            x_max: 1.0,
            y_min: 0.0,
            y_max: 1.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn min_side(&self) -> f64 {
        self.width().min(self.height())
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> Vec2 {
        Vec2::new(
            (self.x_min + self.x_max) / 2.0,
            (self.y_min + self.y_max) / 2.0,
        )
    }

    /// True when `q` lies strictly inside, at least `margin` from every wall.
    pub fn contains_inset(&self, q: Vec2, margin: f64) -> bool {
        q.x > self.x_min + margin
            && q.x < self.x_max - margin
            && q.y > self.y_min + margin
            && q.y < self.y_max - margin
    }

    pub fn contains(&self, q: Vec2) -> bool {
        self.contains_inset(q, 0.0)
    }

    /// Distance from `q` to the nearest wall (negative outside).
    pub fn wall_distance(&self, q: Vec2) -> f64 {
        (q.x - self.x_min)
            .min(self.x_max - q.x)
            .min(q.y - self.y_min)
            .min(self.y_max - q.y)
    }

    fn corners(&self) -> Vec<Vec2> {
        vec![
            Vec2::new(self.x_min, self.y_min),
            Vec2::new(self.x_max, self.y_min),
            Vec2::new(self.x_max, self.y_max),
            Vec2::new(self.x_min, self.y_max),
        ]
    }
}

/// Pointwise density over the plane. Implemented by [`crate::densities::DensityField`]
/// and by any plain closure, so tests and callers can integrate arbitrary weights.
pub trait Density {
    fn eval(&self, q: Vec2) -> f64;
}

impl<F: Fn(Vec2) -> f64> Density for F {
    fn eval(&self, q: Vec2) -> f64 {
        self(q)
    }
}

/// One convex Voronoi cell, vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VoronoiCell {
    /// Index of the generating site.
    pub site: usize,
    pub vertices: Vec<Vec2>,
}

impl VoronoiCell {
    /// Signed area (positive for counterclockwise vertex order).
    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return 0.0;
        }
        let mut s = 0.0;
        for k in 0..n {
            s += v[k].cross(v[(k + 1) % n]);
        }
        s / 2.0
    }

    /// Point-in-convex-polygon test, boundary inclusive up to a small epsilon.
    pub fn contains(&self, q: Vec2) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return false;
        }
        for k in 0..n {
            let a = v[k];
            let b = v[(k + 1) % n];
            if (b - a).cross(q - a) < -1e-12 {
                return false;
            }
        }
        true
    }

    /// Axis-aligned bounding box as (lower-left, upper-right).
    pub fn bbox(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }
}

fn validate_sites(positions: &[Vec2], domain: &Domain) -> Result<(), GeometryError> {
    for (i, p) in positions.iter().enumerate() {
        if !domain.contains(*p) {
            return Err(GeometryError::OutOfDomain { index: i });
        }
    }
    for i in 0..positions.len() {
        for j in (i + 1)..positions.len() {
            if positions[i].dist(positions[j]) < MIN_SITE_SEPARATION {
                return Err(GeometryError::DuplicatePosition { i, j });
            }
        }
    }
    Ok(())
}

/// Clip a convex polygon against the half-plane of points no farther from `a`
/// than from `b` (Sutherland-Hodgman against the perpendicular bisector).
fn clip_closer_to(poly: &[Vec2], a: Vec2, b: Vec2) -> Vec<Vec2> {
    let mid = (a + b) * 0.5;
    let dir = b - a;
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for k in 0..n {
        let p = poly[k];
        let q = poly[(k + 1) % n];
        let fp = (p - mid).dot(dir);
        let fq = (q - mid).dot(dir);
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

/// Voronoi partition of `domain` generated by `positions`.
///
/// Every returned cell is the domain rectangle clipped against the bisector of
/// each other site, so the cells are convex, counterclockwise, and tile the
/// domain. Positions must be strictly inside the domain and pairwise distinct.
pub fn compute_voronoi(
    positions: &[Vec2],
    domain: &Domain,
) -> Result<Vec<VoronoiCell>, GeometryError> {
    validate_sites(positions, domain)?;
    let mut cells = Vec::with_capacity(positions.len());
    for (i, &p) in positions.iter().enumerate() {
        let mut poly = domain.corners();
        for (j, &q) in positions.iter().enumerate() {
            if i == j {
                continue;
            }
            poly = clip_closer_to(&poly, p, q);
            if poly.len() < 3 {
                return Err(GeometryError::DegenerateCell { site: i });
            }
        }
        cells.push(VoronoiCell {
            site: i,
            vertices: poly,
        });
    }
    Ok(cells)
}

/// For a horizontal line `y`, the x-interval where it crosses the convex
/// polygon, or None when the line misses it.
fn row_interval(vertices: &[Vec2], y: f64) -> Option<(f64, f64)> {
    let n = vertices.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut found = false;
    for k in 0..n {
        let a = vertices[k];
        let b = vertices[(k + 1) % n];
        if (a.y - y) * (b.y - y) <= 0.0 {
            if a.y == b.y {
                if a.y == y {
                    lo = lo.min(a.x.min(b.x));
                    hi = hi.max(a.x.max(b.x));
                    found = true;
                }
            } else {
                let x = a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
                lo = lo.min(x);
                hi = hi.max(x);
                found = true;
            }
        }
    }
    if found && lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Density-weighted centroid of one cell.
///
/// Midpoint quadrature on a `resolution x resolution` grid over the cell's
/// bounding box, keeping nodes that fall inside the polygon. Errors with
/// [`GeometryError::ZeroMass`] when the integrated mass is below
/// [`ZERO_MASS_EPS`].
pub fn cell_centroid<D: Density>(
    cell: &VoronoiCell,
    density: &D,
    resolution: u32,
) -> Result<Vec2, GeometryError> {
    if cell.vertices.len() < 3 || cell.area() <= 0.0 {
        return Err(GeometryError::DegenerateCell { site: cell.site });
    }
    let (lo, hi) = cell.bbox();
    let res = resolution.max(1) as usize;
    let hx = (hi.x - lo.x) / res as f64;
    let hy = (hi.y - lo.y) / res as f64;
    let w = hx * hy;
    let mut mass = 0.0;
    let mut first = Vec2::ZERO;
    for j in 0..res {
        let y = lo.y + (j as f64 + 0.5) * hy;
        let Some((xl, xr)) = row_interval(&cell.vertices, y) else {
            continue;
        };
        // First and last grid columns whose midpoints land in [xl, xr].
        let i0 = ((xl - lo.x) / hx - 0.5).ceil().max(0.0) as usize;
        let i1 = (((xr - lo.x) / hx - 0.5).floor() as isize).min(res as isize - 1);
        let mut i = i0 as isize;
        while i <= i1 {
            let q = Vec2::new(lo.x + (i as f64 + 0.5) * hx, y);
            let phi = density.eval(q) * w;
            mass += phi;
            first += q * phi;
            i += 1;
        }
    }
    if mass < ZERO_MASS_EPS {
        return Err(GeometryError::ZeroMass { site: cell.site });
    }
    Ok(first * (1.0 / mass))
}

/// Fixed midpoint lattice over the domain: `res x res` nodes at cell centers.
struct Lattice {
    x0: f64,
    y0: f64,
    hx: f64,
    hy: f64,
    res: usize,
}

impl Lattice {
    fn new(domain: &Domain, resolution: u32) -> Lattice {
        let res = resolution.max(1) as usize;
        Lattice {
            x0: domain.x_min,
            y0: domain.y_min,
            hx: domain.width() / res as f64,
            hy: domain.height() / res as f64,
            res,
        }
    }

    fn weight(&self) -> f64 {
        self.hx * self.hy
    }

    fn node(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(
            self.x0 + (i as f64 + 0.5) * self.hx,
            self.y0 + (j as f64 + 0.5) * self.hy,
        )
    }
}

fn nearest_site(positions: &[Vec2], q: Vec2) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, p) in positions.iter().enumerate() {
        let d = p.dist_sq(q);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Density-weighted centroids of every robot's Voronoi cell in one pass.
///
/// Each node of one fixed domain lattice is assigned to its nearest site
/// (ties to the lower index), so repeated calls along a trajectory integrate
/// against the same discrete measure. This is what makes the coverage
/// iteration a true descent: see [`locational_cost`].
pub fn swarm_centroids<D: Density>(
    positions: &[Vec2],
    density: &D,
    domain: &Domain,
    resolution: u32,
) -> Result<Vec<Vec2>, GeometryError> {
    validate_sites(positions, domain)?;
    let lat = Lattice::new(domain, resolution);
    let w = lat.weight();
    let mut mass = vec![0.0; positions.len()];
    let mut first = vec![Vec2::ZERO; positions.len()];
    for j in 0..lat.res {
        for i in 0..lat.res {
            let q = lat.node(i, j);
            let owner = nearest_site(positions, q);
            let phi = density.eval(q) * w;
            mass[owner] += phi;
            first[owner] += q * phi;
        }
    }
    for (site, &m) in mass.iter().enumerate() {
        if m < ZERO_MASS_EPS {
            return Err(GeometryError::ZeroMass { site });
        }
    }
    Ok(first
        .iter()
        .zip(&mass)
        .map(|(f, m)| *f * (1.0 / m))
        .collect())
}

/// Coverage cost: sum over cells of the density-weighted squared distance to
/// the cell's site, integrated on the same fixed lattice as
/// [`swarm_centroids`].
pub fn locational_cost<D: Density>(
    positions: &[Vec2],
    density: &D,
    domain: &Domain,
    resolution: u32,
) -> Result<f64, GeometryError> {
    validate_sites(positions, domain)?;
    let lat = Lattice::new(domain, resolution);
    let w = lat.weight();
    let mut cost = 0.0;
    for j in 0..lat.res {
        for i in 0..lat.res {
            let q = lat.node(i, j);
            let owner = nearest_site(positions, q);
            cost += density.eval(q) * w * positions[owner].dist_sq(q);
        }
    }
    Ok(cost)
}
