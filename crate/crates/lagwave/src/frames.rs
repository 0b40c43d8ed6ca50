//! Frame operators for the discretized wavelet systems: Gram/frame
//! matrices on a truncated basis, extreme eigenvalues, frame-bound
//! reports, the density-threshold sweep, and the sampling-ratio probe on
//! the Bergman side.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    density_thresholds, generate_lattice, lattice_density_estimate, separation_constant,
    HyperbolicLattice, PointSequence,
};
use crate::linalg::hermitian_eigenvalues;
use crate::quadrature::{integrate_strip_2d, RuleCache};
use crate::special::{gamma, WaveletOrder};
use crate::transforms::{bergman_basis, overlap_column, TimeScalePoint};

/// Atom locations for a frame analysis: a lattice (extendable) or a fixed
/// list of time-scale points.
#[derive(Debug, Clone)]
pub enum AtomSequence {
    Lattice(HyperbolicLattice),
    Points(Vec<TimeScalePoint>),
}

/// Configuration of one frame-bounds run.
#[derive(Debug, Clone)]
pub struct FrameAnalysisConfig {
    pub order: WaveletOrder,
    pub atoms: AtomSequence,
    /// Size M of the truncated orthonormal test basis.
    pub basis_size: usize,
    pub basis_alpha: f64,
    /// Extra floor on the quadrature order (the polynomial-degree budget
    /// is always enforced on top of this).
    pub quadrature_order: usize,
    /// Grow lattice ranges until the frame matrix stabilizes.
    pub auto_extend: bool,
}

impl FrameAnalysisConfig {
    /// Test basis defaulting to the wavelet's own parameter.
    pub fn for_lattice(
        order: WaveletOrder,
        lattice: HyperbolicLattice,
        basis_size: usize,
    ) -> Result<Self> {
        if basis_size == 0 {
            return Err(Error::Parameter {
                name: "basis_size",
                value: 0.0,
                constraint: "basis must have at least one element",
            });
        }
        Ok(FrameAnalysisConfig {
            order,
            basis_alpha: order.alpha,
            atoms: AtomSequence::Lattice(lattice),
            basis_size,
            quadrature_order: 0,
            auto_extend: true,
        })
    }
}

/// Dense Hermitian matrix accumulated from rank-one atom contributions.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Adds the rank-one contribution column * column^H.
    pub fn add_rank_one(&mut self, column: &[Complex64]) {
        debug_assert_eq!(column.len(), self.dim);
        for (i, vi) in column.iter().enumerate() {
            for (j, vj) in column.iter().enumerate() {
                self.data[i * self.dim + j] += vi * vj.conj();
            }
        }
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                dev = dev.max(
                    (self.data[i * self.dim + j] - self.data[j * self.dim + i].conj()).norm(),
                );
            }
        }
        dev
    }

    pub(crate) fn raw(&self) -> &[Complex64] {
        &self.data
    }
}

/// Gram matrix of an explicit list of coefficient columns (each column the
/// overlaps of the basis with one atom), accumulated in the given order.
pub fn gram_from_columns<'a>(
    dim: usize,
    columns: impl Iterator<Item = &'a [Complex64]>,
) -> HermitianMatrix {
    let mut m = HermitianMatrix::zeros(dim);
    for c in columns {
        m.add_rank_one(c);
    }
    m
}

/// Smallest and largest eigenvalues of a Hermitian matrix through the
/// in-repo symmetric eigensolver. Rejects matrices that are not Hermitian
/// within 1e-10.
pub fn extreme_eigenvalues(matrix: &HermitianMatrix) -> Result<(f64, f64)> {
    if matrix.dim == 0 {
        return Ok((0.0, 0.0));
    }
    let dev = matrix.hermiticity_deviation();
    let scale = matrix
        .data
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    if dev > 1e-10 * scale {
        return Err(Error::NonHermitian { deviation: dev });
    }
    let eig = hermitian_eigenvalues(matrix.dim, matrix.raw())?;
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok((min, max))
}

/// Truncation metadata carried by every frame report.
#[derive(Debug, Clone, Serialize)]
pub struct FrameRunMetadata {
    pub basis_size: usize,
    pub basis_alpha: f64,
    pub quadrature_order: usize,
    pub j_range: Option<(i32, i32)>,
    pub k_range: Option<(i32, i32)>,
    pub atom_count: usize,
    /// Rows summed over all translations in closed form.
    pub dense_rows: usize,
    pub auto_extended: bool,
    pub density_r: f64,
}

/// Estimated frame bounds plus the geometric context. The lower estimate
/// is computed on the truncated subspace only and is systematically
/// optimistic for the true lower bound; the metadata records the
/// truncations that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub order: WaveletOrder,
    pub a_est: f64,
    pub b_est: f64,
    pub density_estimate: Option<f64>,
    pub disc_threshold: f64,
    /// +inf serializes as null: any lattice is admissible.
    pub lattice_threshold: f64,
    pub atom_norm_sq: f64,
    pub separation: Option<f64>,
    pub metadata: FrameRunMetadata,
}

impl FrameReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Extension caps: scales must stay inside comfortable f64 range and the
/// atom count bounded.
const MAX_ABS_LOG_SCALE: f64 = 600.0;
const MAX_ATOMS: usize = 2_000_000;
const EXTENSION_TOL: f64 = 1e-8;
/// Cap on the per-round k growth: rows near the scale floor contribute an
/// almost flat plateau in k, and a proportionally growing ring width would
/// keep the ring delta above tolerance forever.
const MAX_K_STEP: i32 = 64;

/// Estimated total contribution of lattice row j to the frame matrix if
/// its translation index ranged over all of Z: by the Plancherel identity
/// the full x-sum of |<e~_m, atom(x, s)>|^2 is approximately
/// (2 pi / (a^j b)) integral of e~_m(t)^2 4 s l_n(2 s t)^2 dt.
fn row_mass(cfg: &FrameAnalysisConfig, lat: &HyperbolicLattice, j: i32, cache: &RuleCache) -> Result<f64> {
    let s = lat.a.powi(j);
    let alpha = cfg.order.alpha;
    let beta = cfg.basis_alpha;
    let m_max = cfg.basis_size - 1;
    let rule = cache.rule(
        alpha + beta,
        crate::quadrature::exactness_order(2 * (m_max + cfg.order.n)),
    )?;
    let sigma = 1.0 + 2.0 * s;
    let two_s = 2.0 * s;
    let mut basis = vec![0.0; cfg.basis_size];
    let mut atom = vec![0.0; cfg.order.n + 1];
    let mut acc = 0.0;
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = u / sigma;
        crate::special::laguerre_polynomial_sweep(m_max, beta, t, &mut basis);
        crate::special::laguerre_polynomial_sweep(cfg.order.n, alpha, two_s * t, &mut atom);
        let mut basis_sum = 0.0;
        for (m, &l) in basis.iter().enumerate() {
            let nl = crate::special::laguerre_norm_factor(m, beta) * l;
            basis_sum += nl * nl;
        }
        let la = atom[cfg.order.n];
        acc += w * basis_sum * la * la;
    }
    Ok(8.0 * std::f64::consts::PI / lat.b
        * two_s.powf(alpha)
        * sigma.powf(-(alpha + beta + 1.0))
        * acc)
}

/// Effective upper edge of the spectral support of the truncated basis
/// (the orthonormal Laguerre functions decay super-exponentially past
/// their turning point ~ 4m + 2 beta).
fn spectral_support(cfg: &FrameAnalysisConfig) -> f64 {
    4.0 * (cfg.basis_size - 1) as f64 + 2.0 * cfg.basis_alpha + 60.0
}

/// Largest j whose row is "dense": translation step a^j b small enough
/// that Poisson summation collapses the full row sum onto its zero mode.
/// For such rows the sum over all k of the rank-one contributions equals
///
///   (2 pi / (a^j b)) integral of e~_m(t) e~_m'(t) 4 s l_n(2 s t)^2 dt
///
/// exactly: the Poisson side terms sit at frequencies 2 pi/(a^j b) beyond
/// the correlation support and vanish to machine precision.
fn dense_row_ceiling(cfg: &FrameAnalysisConfig, lat: &HyperbolicLattice) -> i32 {
    let max_step = std::f64::consts::PI / (2.0 * spectral_support(cfg));
    ((max_step / lat.b).ln() / lat.a.ln()).floor() as i32
}

/// Full-row contribution of a dense row: real symmetric M x M matrix.
fn dense_row_matrix(
    cfg: &FrameAnalysisConfig,
    lat: &HyperbolicLattice,
    j: i32,
    cache: &RuleCache,
) -> Result<Vec<f64>> {
    let s = lat.a.powi(j);
    let alpha = cfg.order.alpha;
    let beta = cfg.basis_alpha;
    let m_count = cfg.basis_size;
    let m_max = m_count - 1;
    let rule = cache.rule(
        alpha + beta,
        crate::quadrature::exactness_order(2 * (m_max + cfg.order.n)),
    )?;
    let sigma = 1.0 + 2.0 * s;
    let two_s = 2.0 * s;
    let mut basis = vec![0.0; m_count];
    let mut atom = vec![0.0; cfg.order.n + 1];
    let mut acc = vec![0.0; m_count * m_count];
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = u / sigma;
        crate::special::laguerre_polynomial_sweep(m_max, beta, t, &mut basis);
        crate::special::laguerre_polynomial_sweep(cfg.order.n, alpha, two_s * t, &mut atom);
        let la = atom[cfg.order.n];
        let scale = w * la * la;
        for (m, &lm) in basis.iter().enumerate() {
            for (mp, &lmp) in basis.iter().enumerate() {
                acc[m * m_count + mp] += scale * lm * lmp;
            }
        }
    }
    let prefactor = 2.0 * std::f64::consts::PI / (s * lat.b)
        * 4.0
        * s
        * two_s.powf(alpha)
        * sigma.powf(-(alpha + beta + 1.0));
    for (m, row) in acc.chunks_mut(m_count).enumerate() {
        let nm = crate::special::laguerre_norm_factor(m, beta);
        for (mp, v) in row.iter_mut().enumerate() {
            *v *= prefactor * nm * crate::special::laguerre_norm_factor(mp, beta);
        }
    }
    Ok(acc)
}

struct FrameMatrixOutcome {
    matrix: HermitianMatrix,
    j_range: Option<(i32, i32)>,
    k_range: Option<(i32, i32)>,
    atom_count: usize,
    dense_rows: usize,
}

fn columns_for(
    cfg: &FrameAnalysisConfig,
    points: &[(i32, i32, Complex64)],
    cache: &RuleCache,
) -> Result<Vec<((i32, i32), Vec<Complex64>)>> {
    let results: Vec<Result<((i32, i32), Vec<Complex64>)>> = points
        .par_iter()
        .map(|&(j, k, z)| {
            let p = TimeScalePoint::new(z.re, z.im)?;
            let column = overlap_column(&cfg.order, &p, cfg.basis_alpha, cfg.basis_size, cache)?;
            Ok(((j, k), column))
        })
        .collect();
    results.into_iter().collect()
}

/// Frame matrix of the configured system restricted to the first M basis
/// elements: S[m, m'] = sum over atoms of <e~_m, atom><atom, e~_m'>.
/// Lattice configurations with `auto_extend` grow the index ranges until
/// adding a ring of atoms changes every entry by less than 1e-8. Columns
/// are accumulated in j-major, k-minor order; identical configurations
/// reproduce the matrix bit for bit.
pub fn frame_matrix(cfg: &FrameAnalysisConfig) -> Result<HermitianMatrix> {
    let cache = RuleCache::with_floor(cfg.quadrature_order);
    Ok(frame_matrix_inner(cfg, &cache)?.matrix)
}

fn frame_matrix_inner(
    cfg: &FrameAnalysisConfig,
    cache: &RuleCache,
) -> Result<FrameMatrixOutcome> {
    if cfg.basis_size == 0 {
        return Err(Error::Parameter {
            name: "basis_size",
            value: 0.0,
            constraint: "basis must have at least one element",
        });
    }
    WaveletOrder::new(0, cfg.basis_alpha)?;
    match &cfg.atoms {
        AtomSequence::Points(points) => {
            let mut matrix = HermitianMatrix::zeros(cfg.basis_size);
            for p in points {
                let column =
                    overlap_column(&cfg.order, p, cfg.basis_alpha, cfg.basis_size, cache)?;
                matrix.add_rank_one(&column);
            }
            Ok(FrameMatrixOutcome {
                matrix,
                j_range: None,
                k_range: None,
                atom_count: points.len(),
                dense_rows: 0,
            })
        }
        AtomSequence::Lattice(lattice) => {
            let mut current = lattice.clone();
            let empty = current.j_range.0 > current.j_range.1
                || current.k_range.0 > current.k_range.1;

            // batched rank-one accumulation in the given order: columns
            // are computed in parallel but reduced chunk by chunk, so a
            // fixed configuration reproduces the matrix bit for bit and
            // nothing is retained beyond one batch
            let accumulate = |matrix: &mut HermitianMatrix,
                              points: &[(i32, i32, Complex64)]|
             -> Result<f64> {
                let mut delta = 0.0f64;
                for batch in points.chunks(16 * 1024) {
                    let cols = columns_for(cfg, batch, cache)?;
                    let partials: Vec<(HermitianMatrix, f64)> = cols
                        .par_chunks(1024)
                        .map(|chunk| {
                            let mut m = HermitianMatrix::zeros(cfg.basis_size);
                            let mut d = 0.0f64;
                            for (_, col) in chunk {
                                m.add_rank_one(col);
                                d += col.iter().map(|v| v.norm_sqr()).sum::<f64>();
                            }
                            (m, d)
                        })
                        .collect();
                    for (partial, d) in partials {
                        for (dst, src) in matrix.data.iter_mut().zip(&partial.data) {
                            *dst += src;
                        }
                        delta += d;
                    }
                }
                Ok(delta)
            };

            if empty || !cfg.auto_extend {
                // literal truncation: enumerate the configured rectangle
                let points = current.indexed_points();
                let mut matrix = HermitianMatrix::zeros(cfg.basis_size);
                accumulate(&mut matrix, &points)?;
                return Ok(FrameMatrixOutcome {
                    matrix,
                    j_range: Some(current.j_range),
                    k_range: Some(current.k_range),
                    atom_count: points.len(),
                    dense_rows: 0,
                });
            }

            // phase 1: freeze the scale range. A row is kept while its
            // estimated full-translation mass can still move a matrix
            // entry by the tolerance; the dropped tail changes every entry
            // by less than that regardless of the k extent.
            let j_cap = (MAX_ABS_LOG_SCALE / lattice.a.ln()).floor() as i32;
            let mut j_lo = current.j_range.0;
            let mut j_hi = current.j_range.1;
            while j_lo > -j_cap && row_mass(cfg, lattice, j_lo - 1, cache)? >= EXTENSION_TOL {
                j_lo -= 1;
            }
            while j_hi < j_cap && row_mass(cfg, lattice, j_hi + 1, cache)? >= EXTENSION_TOL {
                j_hi += 1;
            }

            // phase 2: rows whose translation step is fine enough are
            // summed over all k in closed form; the rest are enumerated
            let dense_ceiling = dense_row_ceiling(cfg, lattice).min(j_hi);
            let mut matrix = HermitianMatrix::zeros(cfg.basis_size);
            let mut dense_rows = 0usize;
            for j in j_lo..=j_hi.min(dense_ceiling) {
                let row = dense_row_matrix(cfg, lattice, j, cache)?;
                for (dst, &src) in matrix.data.iter_mut().zip(&row) {
                    *dst += Complex64::new(src, 0.0);
                }
                dense_rows += 1;
            }

            let discrete_lo = j_lo.max(dense_ceiling + 1);
            current = current.with_ranges((discrete_lo, j_hi), current.k_range);
            let mut atom_count = 0usize;
            if discrete_lo <= j_hi {
                let base = current.indexed_points();
                atom_count += base.len();
                accumulate(&mut matrix, &base)?;

                // phase 3: widen the translation range of the enumerated
                // rows until a further ring moves every entry by less than
                // the tolerance
                let mut converged = false;
                for _round in 0..2000 {
                    let dk =
                        ((current.k_range.1 - current.k_range.0) / 4).clamp(4, MAX_K_STEP);
                    let wider_k = (current.k_range.0 - dk, current.k_range.1 + dk);
                    let wider = current.with_ranges(current.j_range, wider_k);
                    let (k0, k1) = current.k_range;
                    let ring: Vec<(i32, i32, Complex64)> = wider
                        .indexed_points()
                        .into_iter()
                        .filter(|(_, k, _)| *k < k0 || *k > k1)
                        .collect();
                    if atom_count + ring.len() > MAX_ATOMS {
                        return Err(Error::Convergence(
                            "frame-matrix extension exceeded the atom budget",
                        ));
                    }
                    atom_count += ring.len();
                    let delta = accumulate(&mut matrix, &ring)?;
                    current = wider;
                    if delta < EXTENSION_TOL {
                        converged = true;
                        break;
                    }
                }
                if !converged {
                    return Err(Error::Convergence(
                        "frame-matrix extension did not stabilize",
                    ));
                }
            }

            Ok(FrameMatrixOutcome {
                matrix,
                j_range: Some((j_lo, j_hi)),
                k_range: Some(current.k_range),
                atom_count,
                dense_rows,
            })
        }
    }
}

/// Radius used for the finite-density estimate inside frame reports.
const REPORT_DENSITY_R: f64 = 0.99;

/// Frame-bound estimation: extreme eigenvalues of the frame matrix plus
/// the geometric context (density estimate, thresholds, separation).
pub fn frame_bounds(cfg: &FrameAnalysisConfig) -> Result<FrameReport> {
    let cache = RuleCache::with_floor(cfg.quadrature_order);
    let outcome = frame_matrix_inner(cfg, &cache)?;
    let (raw_min, raw_max) = extreme_eigenvalues(&outcome.matrix)?;
    if raw_min < -1e-10 * raw_max.max(1.0) {
        return Err(Error::Convergence(
            "frame matrix produced a significantly negative eigenvalue",
        ));
    }
    let a_est = raw_min.max(0.0);
    let b_est = raw_max.max(0.0);

    let (disc_threshold, lattice_threshold) = density_thresholds(&cfg.order);
    let n_f = cfg.order.n as f64;
    let atom_norm_sq = 2.0 * gamma(n_f + cfg.order.alpha + 1.0)? / gamma(n_f + 1.0)?;

    let (density_estimate, separation) = match &cfg.atoms {
        AtomSequence::Lattice(lat) => {
            // density and separation probed on a central sub-block; the
            // lattice is scale-invariant so the deep interior is
            // representative
            let grid_block = lat.with_ranges(
                (lat.j_range.0.max(-1), lat.j_range.1.min(1)),
                (lat.k_range.0.max(-2), lat.k_range.1.min(2)),
            );
            let density = lattice_density_estimate(&grid_block, REPORT_DENSITY_R)
                .ok()
                .map(|d| d.estimate);
            let sep_block = lat.with_ranges(
                (lat.j_range.0.max(-2), lat.j_range.1.min(2)),
                (lat.k_range.0.max(-6), lat.k_range.1.min(6)),
            );
            let separation = generate_lattice(&sep_block)
                .and_then(|seq| separation_constant(&seq))
                .ok();
            (density, separation)
        }
        AtomSequence::Points(_) => (None, None),
    };

    Ok(FrameReport {
        order: cfg.order,
        a_est,
        b_est,
        density_estimate,
        disc_threshold,
        lattice_threshold,
        atom_norm_sq,
        separation,
        metadata: FrameRunMetadata {
            basis_size: cfg.basis_size,
            basis_alpha: cfg.basis_alpha,
            quadrature_order: cfg.quadrature_order,
            j_range: outcome.j_range,
            k_range: outcome.k_range,
            atom_count: outcome.atom_count,
            dense_rows: outcome.dense_rows,
            auto_extended: cfg.auto_extend,
            density_r: REPORT_DENSITY_R,
        },
    })
}

/// One row of a threshold sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub b_log_a: f64,
    pub density_est: f64,
    pub threshold: f64,
    pub inside: bool,
    pub m: usize,
    pub a_est: f64,
    pub b_est: f64,
    pub failed: bool,
}

/// Frame-bound estimates across a list of lattice parameters and a basis
/// size schedule. A failing pair marks its rows failed (NaN estimates) and
/// the sweep continues.
pub fn threshold_sweep(
    order: WaveletOrder,
    lattice_points: &[(f64, f64)],
    m_schedule: &[usize],
    start_j: (i32, i32),
    start_k: (i32, i32),
) -> Vec<SweepRow> {
    let (_, threshold) = density_thresholds(&order);
    let mut rows = Vec::new();
    for &(a, b) in lattice_points {
        for &m in m_schedule {
            let row = sweep_row(order, a, b, m, threshold, start_j, start_k);
            rows.push(row);
        }
    }
    rows
}

#[allow(clippy::too_many_arguments)]
fn sweep_row(
    order: WaveletOrder,
    a: f64,
    b: f64,
    m: usize,
    threshold: f64,
    start_j: (i32, i32),
    start_k: (i32, i32),
) -> SweepRow {
    let b_log_a = if a > 0.0 { b * a.ln() } else { f64::NAN };
    let failed_row = |b_log_a: f64| SweepRow {
        b_log_a,
        density_est: f64::NAN,
        threshold,
        inside: false,
        m,
        a_est: f64::NAN,
        b_est: f64::NAN,
        failed: true,
    };
    let lattice = match HyperbolicLattice::new(a, b, start_j, start_k) {
        Ok(l) => l,
        Err(_) => return failed_row(b_log_a),
    };
    let cfg = match FrameAnalysisConfig::for_lattice(order, lattice, m) {
        Ok(c) => c,
        Err(_) => return failed_row(b_log_a),
    };
    match frame_bounds(&cfg) {
        Ok(report) => SweepRow {
            b_log_a,
            density_est: report.density_estimate.unwrap_or(f64::NAN),
            threshold,
            inside: b_log_a < threshold,
            m,
            a_est: report.a_est,
            b_est: report.b_est,
            failed: false,
        },
        Err(_) => failed_row(b_log_a),
    }
}

/// A finite combination of Bergman-basis functions used as a sampling
/// test function.
#[derive(Debug, Clone)]
pub struct BergmanTestFn {
    pub psi_alpha: f64,
    pub coefficients: Vec<Complex64>,
}

impl BergmanTestFn {
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, d) in self.coefficients.iter().enumerate() {
            acc += d * bergman_basis(m, self.psi_alpha, z)?;
        }
        Ok(acc)
    }
}

/// Truncation of the half-plane used for Bergman-norm quadrature.
#[derive(Debug, Clone, Copy)]
pub struct SamplingQuadrature {
    pub x_half_width: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub nx: usize,
    pub ns: usize,
}

impl Default for SamplingQuadrature {
    fn default() -> Self {
        SamplingQuadrature {
            x_half_width: 60.0,
            s_min: 1e-3,
            s_max: 200.0,
            nx: 801,
            ns: 501,
        }
    }
}

/// Sampling-ratio probe and the truncation diagnostics behind it.
#[derive(Debug, Clone, Serialize)]
pub struct SamplingRatio {
    pub ratio: f64,
    pub point_sum: f64,
    pub norm: f64,
    /// Crude upper bound on the weighted norm mass outside the truncated
    /// rectangle, from |f(z)| <= sum|d_m| |iz - 1/2|^{-psi_alpha-1}.
    pub tail_bound: f64,
}

/// Ratio sum_j |f(z_j)|^2 (Im z_j)^alpha over the truncated Bergman norm
/// of the test function, probing the sampling inequality empirically.
/// Requires alpha > 1 so the test functions have finite weighted norms.
pub fn sampling_ratio(
    seq: &PointSequence,
    bergman_alpha: f64,
    test_fn: &BergmanTestFn,
    quad: &SamplingQuadrature,
) -> Result<SamplingRatio> {
    if !(bergman_alpha > 1.0) {
        return Err(Error::Parameter {
            name: "bergman_alpha",
            value: bergman_alpha,
            constraint: "sampling probe needs alpha > 1",
        });
    }
    let norm = integrate_strip_2d(
        |x, s| {
            let z = Complex64::new(x, s);
            match test_fn.value(z) {
                Ok(v) => v.norm_sqr() * s.powf(bergman_alpha - 2.0),
                Err(_) => 0.0,
            }
        },
        (-quad.x_half_width, quad.x_half_width),
        (quad.s_min, quad.s_max),
        quad.nx,
        quad.ns,
    )?;
    if norm < 1e-12 {
        return Err(Error::Degenerate(
            "test function norm vanishes on the truncation",
        ));
    }
    let mut point_sum = 0.0;
    for &z in seq.points() {
        if !(z.im > 0.0) {
            return Err(Error::Domain {
                re: z.re,
                im: z.im,
                constraint: "sampling points must lie in the upper half-plane",
            });
        }
        point_sum += test_fn.value(z)?.norm_sqr() * z.im.powf(bergman_alpha);
    }

    // crude tail bound: |f|^2 <= C^2 (x^2 + (s+1/2)^2)^{-(psi_alpha+1)}
    let c: f64 = test_fn.coefficients.iter().map(|d| d.norm()).sum();
    let p = test_fn.psi_alpha + 1.0;
    let x_tail = 2.0 * c * c * quad.x_half_width.powf(1.0 - 2.0 * p) / (2.0 * p - 1.0)
        * ((quad.s_max.powf(bergman_alpha - 1.0) - quad.s_min.powf(bergman_alpha - 1.0))
            / (bergman_alpha - 1.0))
            .abs();
    let s_low_tail = if bergman_alpha > 1.0 {
        2.0 * quad.x_half_width * c * c * 0.5f64.powf(-2.0 * p)
            * quad.s_min.powf(bergman_alpha - 1.0)
            / (bergman_alpha - 1.0)
    } else {
        f64::INFINITY
    };
    let s_high_exp = bergman_alpha - 1.0 - 2.0 * p;
    let s_high_tail = if s_high_exp < 0.0 {
        2.0 * quad.x_half_width * c * c * quad.s_max.powf(s_high_exp) / (-s_high_exp)
    } else {
        f64::INFINITY
    };
    let tail_bound = x_tail + s_low_tail + s_high_tail;

    Ok(SamplingRatio {
        ratio: point_sum / norm,
        point_sum,
        norm,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;
    use crate::transforms::{wavelet_coefficient, SpectralSignal};
    use approx::assert_relative_eq;

    fn cache() -> RuleCache {
        RuleCache::new()
    }

    fn unit_column(dim: usize, at: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[at] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn gram_of_basis_columns_is_identity() {
        let cols: Vec<Vec<Complex64>> = (0..4).map(|m| unit_column(4, m)).collect();
        let g = gram_from_columns(4, cols.iter().map(|c| c.as_slice()));
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((g.entry(i, j) - Complex64::new(expected, 0.0)).norm() < 1e-15);
            }
        }
        let (min, max) = extreme_eigenvalues(&g).unwrap();
        assert_relative_eq!(min, 1.0, max_relative = 1e-11);
        assert_relative_eq!(max, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn single_atom_rank_one() {
        // M=1 with the basis element itself: [[1]]
        let g = gram_from_columns(1, std::iter::once(&unit_column(1, 0)[..]));
        assert!((g.entry(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let (min, max) = extreme_eigenvalues(&g).unwrap();
        assert_relative_eq!(min, 1.0, max_relative = 1e-12);
        assert_relative_eq!(max, 1.0, max_relative = 1e-12);

        // M=2 with one basis atom: diag(1, 0)
        let g = gram_from_columns(2, std::iter::once(&unit_column(2, 0)[..]));
        assert!((g.entry(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(g.entry(1, 1).norm() < 1e-15);
        assert!(g.entry(0, 1).norm() < 1e-15);
        let (min, max) = extreme_eigenvalues(&g).unwrap();
        assert!(min.abs() < 1e-11);
        assert_relative_eq!(max, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn extreme_eigenvalue_examples() {
        let mut g = HermitianMatrix::zeros(2);
        g.data[0] = Complex64::new(2.0, 0.0);
        g.data[1] = Complex64::new(1.0, 0.0);
        g.data[2] = Complex64::new(1.0, 0.0);
        g.data[3] = Complex64::new(2.0, 0.0);
        let (min, max) = extreme_eigenvalues(&g).unwrap();
        assert_relative_eq!(min, 1.0, max_relative = 1e-11);
        assert_relative_eq!(max, 3.0, max_relative = 1e-11);

        let mut bad = HermitianMatrix::zeros(2);
        bad.data[1] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            extreme_eigenvalues(&bad),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn empty_lattice_zero_report() {
        let order = WaveletOrder::new(0, 2.0).unwrap();
        let lattice = HyperbolicLattice::new(2.0, 1.0, (1, 0), (0, 3)).unwrap();
        let mut cfg = FrameAnalysisConfig::for_lattice(order, lattice, 3).unwrap();
        cfg.auto_extend = false;
        let report = frame_bounds(&cfg).unwrap();
        assert_eq!(report.a_est, 0.0);
        assert_eq!(report.b_est, 0.0);
        assert_eq!(report.metadata.atom_count, 0);
    }

    #[test]
    fn frame_matrix_psd_and_bessel_bound() {
        let order = WaveletOrder::new(0, 2.0).unwrap();
        let lattice =
            HyperbolicLattice::new((0.5f64 * std::f64::consts::PI).exp(), 1.0, (-2, 2), (-8, 8))
                .unwrap();
        let mut cfg = FrameAnalysisConfig::for_lattice(order, lattice, 6).unwrap();
        cfg.auto_extend = false;
        let report = frame_bounds(&cfg).unwrap();
        assert!(report.a_est >= 0.0);
        assert!(report.b_est >= report.a_est);
        // crude Bessel bound
        assert!(
            report.b_est
                <= report.metadata.atom_count as f64 * report.atom_norm_sq + 1e-9
        );
        assert_relative_eq!(report.atom_norm_sq, 4.0, max_relative = 1e-12);
    }

    #[test]
    fn monotone_in_atoms() {
        let order = WaveletOrder::new(0, 2.0).unwrap();
        let a = (0.5f64 * std::f64::consts::PI).exp();
        let small = HyperbolicLattice::new(a, 1.0, (-1, 1), (-4, 4)).unwrap();
        let large = HyperbolicLattice::new(a, 1.0, (-2, 2), (-8, 8)).unwrap();
        let mut cfg_small = FrameAnalysisConfig::for_lattice(order, small, 5).unwrap();
        cfg_small.auto_extend = false;
        let mut cfg_large = FrameAnalysisConfig::for_lattice(order, large, 5).unwrap();
        cfg_large.auto_extend = false;
        let m_small = frame_matrix(&cfg_small).unwrap();
        let m_large = frame_matrix(&cfg_large).unwrap();
        let (min_small, max_small) = extreme_eigenvalues(&m_small).unwrap();
        let (min_large, max_large) = extreme_eigenvalues(&m_large).unwrap();
        assert!(min_large >= min_small - 1e-10);
        assert!(max_large >= max_small - 1e-10);
        // Bessel sanity: the upper estimate saturates rather than growing
        // with the atom count (27 atoms vs 85 here)
        assert!(max_large <= 1.5 * max_small);
    }

    #[test]
    fn auto_extension_stabilizes_and_is_deterministic() {
        let order = WaveletOrder::new(0, 2.0).unwrap();
        let a = (0.5f64 * std::f64::consts::PI).exp();
        let lattice = HyperbolicLattice::new(a, 1.0, (-2, 2), (-6, 6)).unwrap();
        let cfg = FrameAnalysisConfig::for_lattice(order, lattice, 4).unwrap();
        let r1 = frame_bounds(&cfg).unwrap();
        let r2 = frame_bounds(&cfg).unwrap();
        assert_eq!(r1.a_est.to_bits(), r2.a_est.to_bits());
        assert_eq!(r1.b_est.to_bits(), r2.b_est.to_bits());
        assert_eq!(r1.metadata.j_range, r2.metadata.j_range);
        // extension went beyond the seed ranges
        let (j0, j1) = r1.metadata.j_range.unwrap();
        assert!(j0 < -2 && j1 > 2);
    }

    #[test]
    fn sweep_shapes_and_failure_rows() {
        let order = WaveletOrder::new(0, 2.0).unwrap();
        let a = (0.5f64 * std::f64::consts::PI).exp();
        let rows = threshold_sweep(
            order,
            &[(a, 1.0), (0.5, 1.0), (a, 1.0)],
            &[2, 3],
            (-1, 1),
            (-4, 4),
        );
        assert_eq!(rows.len(), 6);
        assert!(!rows[0].failed);
        assert!(rows[2].failed && rows[3].failed); // a <= 1 is invalid
        assert!(rows[2].a_est.is_nan());
        // duplicate lattice point gives identical rows
        assert_eq!(rows[0].a_est.to_bits(), rows[4].a_est.to_bits());
        assert_eq!(rows[1].b_est.to_bits(), rows[5].b_est.to_bits());
        assert!(rows[0].inside);
    }

    #[test]
    fn sampling_ratio_basics() {
        // empty sequence: zero ratio
        let seq = PointSequence::new(Vec::new(), Chart::HalfPlane).unwrap();
        let f = BergmanTestFn {
            psi_alpha: 2.0,
            coefficients: vec![Complex64::new(1.0, 0.0)],
        };
        let quad = SamplingQuadrature {
            x_half_width: 30.0,
            s_min: 1e-2,
            s_max: 50.0,
            nx: 301,
            ns: 201,
        };
        let r = sampling_ratio(&seq, 3.0, &f, &quad).unwrap();
        assert_eq!(r.ratio, 0.0);
        assert!(r.norm > 0.0);

        // scaling invariance: 2f gives the same ratio
        let lattice = HyperbolicLattice::new(
            (0.5f64 * std::f64::consts::PI).exp(),
            1.0,
            (-2, 2),
            (-10, 10),
        )
        .unwrap();
        let seq = generate_lattice(&lattice).unwrap();
        let f2 = BergmanTestFn {
            psi_alpha: 2.0,
            coefficients: vec![Complex64::new(2.0, 0.0)],
        };
        let r1 = sampling_ratio(&seq, 3.0, &f, &quad).unwrap();
        let r2 = sampling_ratio(&seq, 3.0, &f2, &quad).unwrap();
        assert!(r1.ratio > 0.0);
        assert_relative_eq!(r1.ratio, r2.ratio, max_relative = 1e-12);

        // alpha <= 1 rejected
        assert!(sampling_ratio(&seq, 1.0, &f, &quad).is_err());
    }

    #[test]
    fn sampling_ratio_stable_under_range_growth() {
        let a = (0.5f64 * std::f64::consts::PI).exp();
        let f = BergmanTestFn {
            psi_alpha: 2.0,
            coefficients: vec![Complex64::new(1.0, 0.0)],
        };
        let quad = SamplingQuadrature {
            x_half_width: 40.0,
            s_min: 1e-2,
            s_max: 100.0,
            nx: 401,
            ns: 301,
        };
        let small = generate_lattice(
            &HyperbolicLattice::new(a, 1.0, (-3, 3), (-20, 20)).unwrap(),
        )
        .unwrap();
        let large = generate_lattice(
            &HyperbolicLattice::new(a, 1.0, (-4, 4), (-40, 40)).unwrap(),
        )
        .unwrap();
        let r_small = sampling_ratio(&small, 3.0, &f, &quad).unwrap().ratio;
        let r_large = sampling_ratio(&large, 3.0, &f, &quad).unwrap().ratio;
        assert!(r_small > 0.0);
        assert!((r_large - r_small).abs() <= 0.02 * r_small, "{r_small} vs {r_large}");
    }

    /// The frame sums computed spectrally match the Bergman-side sampling
    /// sums through the analytic conversion constant 8 pi Gamma(alpha)
    /// (for the degree-0 wavelet family, whose atoms are scaled analytic
    /// windows).
    #[test]
    fn frame_sampling_equivalence() {
        let c = cache();
        let alpha = 2.0;
        let order = WaveletOrder::new(0, alpha).unwrap();
        let lattice = HyperbolicLattice::new(
            (0.5f64 * std::f64::consts::PI).exp(),
            1.0,
            (-3, 3),
            (-14, 14),
        )
        .unwrap();
        // frame side with the Laguerre-function signal
        let f = SpectralSignal::from_laguerre_function(&order).unwrap();
        let mut frame_sum = 0.0;
        for (_, _, z) in lattice.indexed_points() {
            let p = TimeScalePoint::new(z.re, z.im).unwrap();
            frame_sum += wavelet_coefficient(&f, &order, &p, &c).unwrap().norm_sqr();
        }
        let frame_side = frame_sum / f.norm_sq();

        // Bergman side with the matching basis function
        let test_fn = BergmanTestFn {
            psi_alpha: alpha,
            coefficients: vec![Complex64::new(1.0, 0.0)],
        };
        let quad = SamplingQuadrature {
            x_half_width: 80.0,
            s_min: 1e-3,
            s_max: 400.0,
            nx: 1201,
            ns: 701,
        };
        let seq = generate_lattice(&lattice).unwrap();
        let sr = sampling_ratio(&seq, alpha + 1.0, &test_fn, &quad).unwrap();

        let conversion = 8.0 * std::f64::consts::PI * gamma(alpha).unwrap();
        let predicted = conversion * sr.ratio;
        assert!(
            (frame_side - predicted).abs() <= 0.05 * predicted,
            "frame {frame_side} vs converted sampling {predicted}"
        );
    }
}
