//! Importance densities steering the coverage behaviors.
//!
//! All shipped fields map the domain into (0, 1]: a flat field spreads the
//! swarm evenly, a centered Gaussian pulls it together, and a boundary ridge
//! pushes it against the walls.

use crate::geometry::{Density, Domain};
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DensityError {
    #[error("sigma must be positive, got {sigma}")]
    NonpositiveSigma { sigma: f64 },
    #[error(
        "margin must lie in (0, min_side/2) and floor in (0, 1), got margin {margin}, floor {floor}"
    )]
    BadMargin { margin: f64, floor: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityKind {
    Uniform,
    GaussianCenter { sigma: f64 },
    Boundary { margin: f64, floor: f64 },
}

/// A density over a rectangular domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityField {
    pub kind: DensityKind,
    pub domain: Domain,
}

impl DensityField {
    /// Constant weight 1 everywhere.
    pub fn uniform(domain: Domain) -> DensityField {
        DensityField {
            kind: DensityKind::Uniform,
            domain,
        }
    }

    /// Gaussian bump at the domain center: exp(-|q - c|^2 / (2 sigma^2)).
    pub fn gaussian_center(domain: Domain, sigma: f64) -> Result<DensityField, DensityError> {
        if !(sigma > 0.0) {
            return Err(DensityError::NonpositiveSigma { sigma });
        }
        Ok(DensityField {
            kind: DensityKind::GaussianCenter { sigma },
            domain,
        })
    }

    /// Ridge along the walls: 1 within `margin` of a wall, decaying to `floor`
    /// toward the interior as floor + (1-floor) exp(-max(0, d-margin)^2 / (2 margin^2)),
    /// where d is the distance to the nearest wall.
    pub fn boundary(domain: Domain, margin: f64, floor: f64) -> Result<DensityField, DensityError> {
        if !(margin > 0.0 && margin < domain.min_side() / 2.0 && floor > 0.0 && floor < 1.0) {
            return Err(DensityError::BadMargin { margin, floor });
        }
        Ok(DensityField {
            kind: DensityKind::Boundary { margin, floor },
            domain,
        })
    }

    /// Default Gaussian width, scaled to the domain.
    pub fn default_sigma(domain: &Domain) -> f64 {
        0.15 * domain.min_side()
    }

    /// Default boundary-ridge width, scaled to the domain.
    pub fn default_margin(domain: &Domain) -> f64 {
        0.08 * domain.min_side()
    }

    pub const DEFAULT_FLOOR: f64 = 0.05;

    /// Evaluate the density at a point. Always in (0, 1].
    pub fn evaluate(&self, q: Vec2) -> f64 {
        match self.kind {
            DensityKind::Uniform => 1.0,
            DensityKind::GaussianCenter { sigma } => {
                let d2 = q.dist_sq(self.domain.center());
                (-d2 / (2.0 * sigma * sigma)).exp()
            }
            DensityKind::Boundary { margin, floor } => {
                let d = self.domain.wall_distance(q).max(0.0);
                let excess = (d - margin).max(0.0);
                floor + (1.0 - floor) * (-excess * excess / (2.0 * margin * margin)).exp()
            }
        }
    }
}

impl Density for DensityField {
    fn eval(&self, q: Vec2) -> f64 {
        self.evaluate(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{locational_cost, Domain};

    #[test]
    fn uniform_is_one_everywhere() {
        let f = DensityField::uniform(Domain::unit());
        assert_eq!(f.evaluate(Vec2::new(0.123, 0.456)), 1.0);
        assert_eq!(f.evaluate(Vec2::new(0.0, 1.0)), 1.0);
    }

    #[test]
    fn uniform_integrates_to_the_domain_area() {
        let d = Domain::unit();
        let f = DensityField::uniform(d);
        // Reuse the cost integral with the site at the center: mass shows up
        // exactly when evaluated against a flat unit weight over the square.
        let cell = crate::geometry::VoronoiCell {
            site: 0,
            vertices: vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(0.0, 1.0),
            ],
        };
        // Midpoint sum of 1 over the square is the area bit-for-bit.
        let c = crate::geometry::cell_centroid(&cell, &f, 128).unwrap();
        assert!((c.x - 0.5).abs() < 1e-12 && (c.y - 0.5).abs() < 1e-12);
        let cost = locational_cost(&[Vec2::new(0.5, 0.5)], &f, &d, 128).unwrap();
        assert!((cost - 1.0 / 6.0).abs() < 1e-4);
    }

    #[test]
    fn gaussian_peaks_at_the_center_and_decays() {
        let d = Domain::unit();
        let f = DensityField::gaussian_center(d, 0.2).unwrap();
        assert!((f.evaluate(Vec2::new(0.5, 0.5)) - 1.0).abs() < 1e-15);
        let expected = (-0.08f64 / 0.08).exp(); // |q-c|^2 = 0.08 at (0.7, 0.7)
        assert!((f.evaluate(Vec2::new(0.7, 0.7)) - expected).abs() < 1e-12);
        assert!(f.evaluate(Vec2::new(0.0, 0.0)) < f.evaluate(Vec2::new(0.4, 0.5)));
    }

    #[test]
    fn nonpositive_sigma_is_rejected() {
        assert_eq!(
            DensityField::gaussian_center(Domain::unit(), 0.0),
            Err(DensityError::NonpositiveSigma { sigma: 0.0 })
        );
        assert!(DensityField::gaussian_center(Domain::unit(), -1.0).is_err());
    }

    #[test]
    fn boundary_is_high_at_walls_and_low_inside() {
        let d = Domain::unit();
        let f = DensityField::boundary(d, 0.08, 0.05).unwrap();
        // Inside the margin band the ridge sits at its peak.
        assert!((f.evaluate(Vec2::new(0.04, 0.5)) - 1.0).abs() < 1e-15);
        // At the center, d = 0.5: floor + (1-floor) exp(-(0.42)^2 / (2 * 0.0064)).
        let expected = 0.05 + 0.95 * (-(0.5f64 - 0.08).powi(2) / (2.0 * 0.08 * 0.08)).exp();
        let got = f.evaluate(Vec2::new(0.5, 0.5));
        assert!((got - expected).abs() < 1e-15);
        assert!(got < 0.051);
    }

    #[test]
    fn bad_margin_or_floor_is_rejected() {
        let d = Domain::unit();
        assert!(matches!(
            DensityField::boundary(d, 0.0, 0.05),
            Err(DensityError::BadMargin { .. })
        ));
        assert!(DensityField::boundary(d, 0.5, 0.05).is_err());
        assert!(DensityField::boundary(d, 0.08, 0.0).is_err());
        assert!(DensityField::boundary(d, 0.08, 1.0).is_err());
        assert!(DensityField::boundary(d, 0.08, 0.05).is_ok());
    }

    #[test]
    fn all_fields_stay_within_unit_bounds() {
        let d = Domain::centered(4.3, 3.6).unwrap();
        let fields = [
            DensityField::uniform(d),
            DensityField::gaussian_center(d, DensityField::default_sigma(&d)).unwrap(),
            DensityField::boundary(d, DensityField::default_margin(&d), 0.05).unwrap(),
        ];
        for f in &fields {
            for j in 0..40 {
                for i in 0..40 {
                    let q = Vec2::new(
                        d.x_min + d.width() * (i as f64 + 0.5) / 40.0,
                        d.y_min + d.height() * (j as f64 + 0.5) / 40.0,
                    );
                    let v = f.evaluate(q);
                    assert!(v > 0.0 && v <= 1.0, "{v} out of (0,1] for {:?}", f.kind);
                }
            }
        }
    }
}
