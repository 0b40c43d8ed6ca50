//! Half-plane / disc geometry: Cayley transforms, the pseudohyperbolic
//! metric, hyperbolic lattices, separation constants and finite-radius
//! lower Beurling density estimation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::WaveletOrder;

/// Chart a point sequence lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    HalfPlane,
    Disc,
}

/// A finite set of distinct points in the upper half-plane or the unit
/// disc.
#[derive(Debug, Clone)]
pub struct PointSequence {
    points: Vec<Complex64>,
    chart: Chart,
}

/// Duplicate tolerance: quadrature-level noise must not create spurious
/// non-separation.
const DUPLICATE_TOL: f64 = 1e-12;

impl PointSequence {
    pub fn new(points: Vec<Complex64>, chart: Chart) -> Result<Self> {
        for p in &points {
            match chart {
                Chart::HalfPlane => {
                    if !(p.im > 0.0) {
                        return Err(Error::Domain {
                            re: p.re,
                            im: p.im,
                            constraint: "half-plane points need Im > 0",
                        });
                    }
                }
                Chart::Disc => {
                    if !(p.norm() < 1.0) {
                        return Err(Error::Domain {
                            re: p.re,
                            im: p.im,
                            constraint: "disc points need |z| < 1",
                        });
                    }
                }
            }
        }
        let seq = PointSequence { points, chart };
        if let Some((a, b)) = seq.find_duplicate() {
            return Err(Error::Domain {
                re: a.re,
                im: a.im,
                constraint: if b.re.is_nan() {
                    "duplicate point"
                } else {
                    "duplicate point within 1e-12"
                },
            });
        }
        Ok(seq)
    }

    fn find_duplicate(&self) -> Option<(Complex64, Complex64)> {
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                if (self.points[i] - self.points[j]).norm() <= DUPLICATE_TOL {
                    return Some((self.points[i], self.points[j]));
                }
            }
        }
        None
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same sequence in the disc chart (identity if already there).
    pub fn to_disc(&self) -> Result<PointSequence> {
        match self.chart {
            Chart::Disc => Ok(self.clone()),
            Chart::HalfPlane => {
                let mut mapped = Vec::with_capacity(self.points.len());
                for &z in &self.points {
                    mapped.push(cayley_to_disc(z)?);
                }
                Ok(PointSequence {
                    points: mapped,
                    chart: Chart::Disc,
                })
            }
        }
    }
}

/// Cayley map w = (z - i)/(z + i) from the upper half-plane onto the disc.
///
/// Very large |z| can round onto the unit circle in f64; such points are
/// rejected rather than silently clamped.
pub fn cayley_to_disc(z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::Domain {
            re: z.re,
            im: z.im,
            constraint: "Cayley map needs Im z > 0",
        });
    }
    let w = (z - Complex64::i()) / (z + Complex64::i());
    if !(w.norm() < 1.0) {
        return Err(Error::Domain {
            re: z.re,
            im: z.im,
            constraint: "point maps onto the circle at f64 precision",
        });
    }
    Ok(w)
}

/// Inverse Cayley map z = i (1 + w)/(1 - w) onto the upper half-plane.
pub fn cayley_to_halfplane(w: Complex64) -> Result<Complex64> {
    if !(w.norm() < 1.0) {
        return Err(Error::Domain {
            re: w.re,
            im: w.im,
            constraint: "inverse Cayley map needs |w| < 1",
        });
    }
    let z = Complex64::i() * (Complex64::new(1.0, 0.0) + w)
        / (Complex64::new(1.0, 0.0) - w);
    Ok(z)
}

/// Pseudohyperbolic metric on the unit disc:
/// rho(z, zeta) = |(z - zeta)/(1 - conj(zeta) z)|.
pub fn pseudohyperbolic_distance(z: Complex64, zeta: Complex64) -> Result<f64> {
    for p in [z, zeta] {
        if !(p.norm() < 1.0) {
            return Err(Error::Domain {
                re: p.re,
                im: p.im,
                constraint: "pseudohyperbolic metric is defined on |z| < 1",
            });
        }
    }
    Ok(((z - zeta) / (Complex64::new(1.0, 0.0) - zeta.conj() * z)).norm())
}

/// Infimum of the pairwise pseudohyperbolic distance; the sequence is
/// separated iff the result is strictly positive. Half-plane input is
/// mapped through the Cayley transform first (the disc chart is canonical;
/// the half-plane form |(z_j - z_n)/(z_j - conj z_n)| agrees under the
/// Cayley dictionary).
pub fn separation_constant(seq: &PointSequence) -> Result<f64> {
    if seq.len() < 2 {
        return Err(Error::Degenerate(
            "separation needs at least two points",
        ));
    }
    let disc = seq.to_disc()?;
    let pts = disc.points();
    let mut inf = f64::INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = pseudohyperbolic_distance(pts[i], pts[j])?;
            if d < inf {
                inf = d;
            }
        }
    }
    Ok(inf)
}

/// The hyperbolic lattice {a^j (b k + i)} over finite index ranges.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperbolicLattice {
    pub a: f64,
    pub b: f64,
    pub j_range: (i32, i32),
    pub k_range: (i32, i32),
}

impl HyperbolicLattice {
    pub fn new(a: f64, b: f64, j_range: (i32, i32), k_range: (i32, i32)) -> Result<Self> {
        if !(a.is_finite() && a > 1.0) {
            return Err(Error::Parameter {
                name: "a",
                value: a,
                constraint: "lattice base must satisfy a > 1",
            });
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::Parameter {
                name: "b",
                value: b,
                constraint: "lattice spacing must satisfy b > 0",
            });
        }
        Ok(HyperbolicLattice {
            a,
            b,
            j_range,
            k_range,
        })
    }

    /// Density of the full (untruncated) lattice: 2 pi / (b log a).
    pub fn theoretical_density(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.b * self.a.ln())
    }

    pub fn with_ranges(&self, j_range: (i32, i32), k_range: (i32, i32)) -> Self {
        HyperbolicLattice {
            j_range,
            k_range,
            ..*self
        }
    }

    /// Indexed points in deterministic j-major, k-minor order. Empty
    /// ranges produce an empty vector.
    pub fn indexed_points(&self) -> Vec<(i32, i32, Complex64)> {
        let mut out = Vec::new();
        if self.j_range.0 > self.j_range.1 || self.k_range.0 > self.k_range.1 {
            return out;
        }
        for j in self.j_range.0..=self.j_range.1 {
            let scale = self.a.powi(j);
            for k in self.k_range.0..=self.k_range.1 {
                out.push((
                    j,
                    k,
                    Complex64::new(scale * self.b * k as f64, scale),
                ));
            }
        }
        out
    }
}

/// Lattice points as a half-plane point sequence (j-major, k-minor order).
pub fn generate_lattice(lat: &HyperbolicLattice) -> Result<PointSequence> {
    let points: Vec<Complex64> = lat.indexed_points().into_iter().map(|(_, _, z)| z).collect();
    PointSequence::new(points, Chart::HalfPlane)
}

/// Sufficient-density thresholds for the wavelet system of the given
/// order: the disc-density threshold n + alpha/2 and the lattice threshold
/// 4 pi / (2n + alpha). The lattice bound blows up as 2n + alpha -> 0, so
/// non-positive values report +inf (any lattice admissible).
pub fn density_thresholds(order: &WaveletOrder) -> (f64, f64) {
    let disc = order.n as f64 + 0.5 * order.alpha;
    let denom = 2.0 * order.n as f64 + order.alpha;
    let lattice = if denom > 0.0 {
        4.0 * std::f64::consts::PI / denom
    } else {
        f64::INFINITY
    };
    (disc, lattice)
}

/// Truncated lower Beurling density: the minimum over the evaluation grid
/// of sum_{rho(z_j, z) < r} (1 - rho(z_j, z)) / log(1/(1-r)).
///
/// A necessary coverage condition is enforced per grid point: the sequence
/// must extend beyond the r-ball (some point with rho >= r), otherwise the
/// truncated sum cannot be trusted and a coverage error points at the
/// offending grid point. Certified coverage for lattices comes from
/// [`lattice_density_estimate`], which grows the generation ranges until
/// every grid sum stabilizes.
pub fn lower_density(
    seq: &PointSequence,
    r: f64,
    eval_grid: &[Complex64],
) -> Result<f64> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::Parameter {
            name: "r",
            value: r,
            constraint: "truncation radius must lie in (0, 1)",
        });
    }
    if seq.is_empty() {
        return Ok(0.0);
    }
    let disc = seq.to_disc()?;
    let normalizer = (1.0 / (1.0 - r)).ln();
    let mut min_sum = f64::INFINITY;
    for &z in eval_grid {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain {
                re: z.re,
                im: z.im,
                constraint: "evaluation grid must lie in the unit disc",
            });
        }
        let mut sum = 0.0;
        let mut beyond = false;
        for &p in disc.points() {
            let rho = pseudohyperbolic_distance(p, z)?;
            if rho < r {
                sum += 1.0 - rho;
            } else {
                beyond = true;
            }
        }
        if !beyond {
            return Err(Error::Coverage {
                re: z.re,
                im: z.im,
                detail: "sequence does not extend past the r-ball",
            });
        }
        min_sum = min_sum.min(sum);
    }
    if !min_sum.is_finite() {
        return Err(Error::Degenerate("empty evaluation grid"));
    }
    Ok(min_sum / normalizer)
}

/// Density estimate for a lattice with certified coverage.
#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    pub estimate: f64,
    pub r: f64,
    pub j_range: (i32, i32),
    pub k_range: (i32, i32),
    pub grid_size: usize,
}

/// Finite-r density estimate for the lattice, on the default grid: disc
/// images of the configured (deep interior) lattice points. Coverage of
/// every grid point's r-ball is exact by construction: ball membership is
/// analytic in the lattice indices (a point a^j(bk+i) lies within
/// hyperbolic distance d of a^jg(b kg+i) iff |j-jg| log a <= d and k sits
/// inside an explicit interval), so the generation ranges are the exact
/// bounding box of the union of balls and points beyond it contribute
/// nothing.
pub fn lattice_density_estimate(lat: &HyperbolicLattice, r: f64) -> Result<DensityEstimate> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::Parameter {
            name: "r",
            value: r,
            constraint: "truncation radius must lie in (0, 1)",
        });
    }
    // grid: disc images of the configured (deep interior) lattice points
    let grid_idx = lat.indexed_points();
    let grid: Vec<Complex64> = {
        let mut g = Vec::with_capacity(grid_idx.len());
        for (_, _, z) in &grid_idx {
            g.push(cayley_to_disc(*z)?);
        }
        if g.is_empty() {
            return Ok(DensityEstimate {
                estimate: 0.0,
                r,
                j_range: lat.j_range,
                k_range: lat.k_range,
                grid_size: 0,
            });
        }
        g
    };

    // hyperbolic radius of the pseudohyperbolic r-ball
    let cosh_d = (1.0 + r * r) / (1.0 - r * r);
    let log_a = lat.a.ln();
    let dj = ((2.0 * r / (1.0 - r * r) + cosh_d).ln() / log_a).floor() as i32 + 1;
    let j_lo = lat.j_range.0 - dj;
    let j_hi = lat.j_range.1 + dj;

    let mut sums = vec![0.0; grid.len()];
    let mut k_hull = (i32::MAX, i32::MIN);
    for j in j_lo..=j_hi {
        // union over grid points of the exact k-interval of row j:
        // (k - kg a^{jg-j})^2 <= [2 a^{jg-j}(cosh d - 1) - (1 - a^{jg-j})^2] / b^2
        let mut row_lo = i32::MAX;
        let mut row_hi = i32::MIN;
        for (jg, kg, _) in &grid_idx {
            let ratio = lat.a.powi(jg - j);
            let reach = 2.0 * ratio * (cosh_d - 1.0) - (1.0 - ratio) * (1.0 - ratio);
            if reach < 0.0 {
                continue; // row beyond the ball of this grid point
            }
            let center = *kg as f64 * ratio;
            let half_width = reach.sqrt() / lat.b;
            row_lo = row_lo.min((center - half_width).floor() as i32);
            row_hi = row_hi.max((center + half_width).ceil() as i32);
        }
        if row_lo > row_hi {
            continue;
        }
        k_hull = (k_hull.0.min(row_lo), k_hull.1.max(row_hi));
        let scale = lat.a.powi(j);
        for k in row_lo..=row_hi {
            let z = Complex64::new(scale * lat.b * k as f64, scale);
            let w = cayley_to_disc(z)?;
            for (i, &g) in grid.iter().enumerate() {
                let rho = pseudohyperbolic_distance(w, g)?;
                if rho < r {
                    sums[i] += 1.0 - rho;
                }
            }
        }
    }
    let normalizer = (1.0 / (1.0 - r)).ln();
    let min_sum = sums.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(DensityEstimate {
        estimate: min_sum / normalizer,
        r,
        j_range: (j_lo, j_hi),
        k_range: k_hull,
        grid_size: grid.len(),
    })
}
