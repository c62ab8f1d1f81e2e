//! JSON description of a body.

use serde::{Deserialize, Serialize};

use super::{EvenFn, Ellipse, Polygon, Segment, Shape};
use crate::error::{Error, Result};
use crate::geom::{Mat2, Vec2};

/// Serializable body description.
///
/// ```json
/// {"type":"ellipse","matrix":[[a,b],[c,d]]}
/// {"type":"segment","endpoint":[x,y]}
/// {"type":"polygon","vertices":[[x1,y1],...]}
/// {"type":"samples","grid":M,"values":[...]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ShapeDoc {
    Ellipse { matrix: [[f64; 2]; 2] },
    Segment { endpoint: [f64; 2] },
    Polygon { vertices: Vec<[f64; 2]> },
    Samples { grid: usize, values: Vec<f64> },
}

impl ShapeDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("shape documents always serialize")
    }

    /// Validated exact shape, `None` for raw samples.
    pub fn shape(&self) -> Result<Option<Shape>> {
        Ok(match self {
            ShapeDoc::Ellipse { matrix: [[a, b], [c, d]] } => {
                Some(Shape::from(&Ellipse::new(Mat2::new(*a, *b, *c, *d))?))
            }
            ShapeDoc::Segment { endpoint: [x, y] } => Some(Shape::from(&Segment::new(Vec2::new(*x, *y))?)),
            ShapeDoc::Polygon { vertices } => {
                let vs = vertices.iter().map(|[x, y]| Vec2::new(*x, *y)).collect();
                Some(Shape::from(&Polygon::new(vs)?))
            }
            ShapeDoc::Samples { .. } => None,
        })
    }

    /// Support function on an `m`-point grid. Sample documents on another
    /// grid are resampled by trigonometric interpolation.
    pub fn to_even_fn(&self, m: usize) -> Result<EvenFn> {
        if let Some(shape) = self.shape()? {
            return EvenFn::from_shape(shape, m);
        }
        let ShapeDoc::Samples { grid, values } = self else {
            unreachable!("exact shapes handled above")
        };
        if values.len() != *grid {
            return Err(Error::Parse(format!("grid is {grid} but {} values given", values.len())));
        }
        let h = EvenFn::from_samples(values.clone())?;
        if *grid == m {
            return Ok(h);
        }
        super::check_grid(m)?;
        let spec = h.spectrum();
        let half = m / 2;
        let mut samples = vec![0.0; m];
        for j in 0..half {
            samples[j] = spec.eval(super::grid_angle(j, m));
            samples[j + half] = samples[j];
        }
        EvenFn::from_samples(samples)
    }

    /// `None` for sums, which have no document form of their own.
    pub fn from_shape(shape: &Shape) -> Option<Self> {
        Some(match shape {
            Shape::Ellipse(m) => ShapeDoc::Ellipse {
                matrix: [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]],
            },
            Shape::Segment(v) => ShapeDoc::Segment { endpoint: [v.x, v.y] },
            Shape::Polygon(vs) => ShapeDoc::Polygon {
                vertices: vs.iter().map(|v| [v.x, v.y]).collect(),
            },
            Shape::Sum(_) => return None,
        })
    }

    pub fn from_even_fn(h: &EvenFn) -> Self {
        h.shape().and_then(Self::from_shape).unwrap_or_else(|| ShapeDoc::Samples {
            grid: h.grid(),
            values: h.samples().to_vec(),
        })
    }
}
