use std::fmt;

use num_bigint::BigInt;

use crate::error::{GermError, Result};
use crate::poly::Rational;

pub type LatticePoint = (u64, u64);

/// Lower-left boundary of `convex(⋃ (p + R₊²))` for a finite set of lattice
/// points, stored as its vertex list.
///
/// Vertices run left to right with strictly increasing `x` and strictly
/// decreasing `y`; edge inclinations `|Δx|/|Δy|` strictly increase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    vertices: Vec<LatticePoint>,
}

/// One side of a polygon, with its inclination `|Δx|/|Δy|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: LatticePoint,
    pub to: LatticePoint,
    pub inclination: Rational,
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl NewtonPolygon {
    /// Hull of the given points: Pareto-minimal points first, then one lower
    /// hull sweep with exact integer orientation tests.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(GermError::invalid("Newton polygon of an empty point set"));
        }
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let mut front: Vec<LatticePoint> = Vec::new();
        for p in pts {
            if front.last().is_none_or(|q| p.1 < q.1) {
                front.push(p);
            }
        }
        let mut hull: Vec<LatticePoint> = Vec::with_capacity(front.len());
        for p in front {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        Ok(NewtonPolygon { vertices: hull })
    }

    /// Accepts a vertex list only if it already is a valid polygon.
    pub fn from_vertices(vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(GermError::invalid("polygon needs at least one vertex"));
        }
        for w in vertices.windows(2) {
            if !(w[0].0 < w[1].0 && w[0].1 > w[1].1) {
                return Err(GermError::invalid("vertices must increase in x and decrease in y"));
            }
        }
        for w in vertices.windows(3) {
            if cross(w[0], w[1], w[2]) <= 0 {
                return Err(GermError::invalid("vertices are not strictly convex"));
            }
        }
        Ok(NewtonPolygon { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.vertices
            .windows(2)
            .map(|w| Edge { from: w[0], to: w[1], inclination: ratio(w[1].0 - w[0].0, w[0].1 - w[1].1) })
            .collect()
    }

    pub fn first_edge_inclination(&self) -> Option<Rational> {
        self.edges().into_iter().next().map(|e| e.inclination)
    }

    /// Whether `p` lies in the region `convex(vertices) + R₊²`.
    pub fn contains(&self, p: LatticePoint) -> bool {
        let first = self.vertices[0];
        if p.0 < first.0 {
            return false;
        }
        let last = *self.vertices.last().unwrap();
        if p.0 >= last.0 {
            return p.1 >= last.1;
        }
        let k = self.vertices.windows(2).position(|w| p.0 <= w[1].0).unwrap();
        let (a, b) = (self.vertices[k], self.vertices[k + 1]);
        // (y - ya)(xb - xa) >= (yb - ya)(x - xa)
        let lhs = (p.1 as i128 - a.1 as i128) * (b.0 as i128 - a.0 as i128);
        let rhs = (b.1 as i128 - a.1 as i128) * (p.0 as i128 - a.0 as i128);
        lhs >= rhs
    }

    /// Coordinate swap `(α, β) ↦ (β, α)`.
    pub fn sigma(&self) -> NewtonPolygon {
        NewtonPolygon { vertices: self.vertices.iter().rev().map(|&(x, y)| (y, x)).collect() }
    }

    pub fn dilate(&self, r: u64) -> NewtonPolygon {
        NewtonPolygon { vertices: self.vertices.iter().map(|&(x, y)| (x * r, y * r)).collect() }
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, y)) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("]")
    }
}

pub fn sigma(polygon: &NewtonPolygon) -> NewtonPolygon {
    polygon.sigma()
}

/// Inclination of the edge ending on the horizontal axis (the last edge).
pub fn last_edge_inclination(polygon: &NewtonPolygon) -> Result<Rational> {
    polygon
        .edges()
        .pop()
        .map(|e| e.inclination)
        .ok_or_else(|| GermError::Degenerate("polygon has a single vertex".into()))
}

/// `region(a) ⊆ region(b)`; by convexity it suffices to test a's vertices.
pub fn polygon_includes(a: &NewtonPolygon, b: &NewtonPolygon) -> bool {
    a.vertices.iter().all(|&v| b.contains(v))
}
