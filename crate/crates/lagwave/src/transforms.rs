//! The wavelet transform of spectral signals against the rational
//! analyzing wavelets, the Bergman (analytic wavelet) transform, the basis
//! of the weighted Bergman spaces, the disc transplant, and the executable
//! identities tying them together.
//!
//! Spectral dictionary used throughout: a signal is its positive-frequency
//! spectral function `fhat(t) = sum_m c_m e~_m(t)` on (0, inf), expanded in
//! the orthonormal Laguerre basis `e~_m = sqrt(m!/Gamma(m+beta+1)) l_m^beta`.
//! The time-domain function it represents is `f(x) = integral fhat(t) e^{ixt} dt`,
//! and its squared norm is `sum |c_m|^2` (Plancherel identification of the
//! Hardy space with L^2(0, inf)). Inner products are computed on the
//! spectral side; nothing in the crate evaluates time-domain integrals
//! except the test oracles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{exactness_order, integrate_strip_2d, RuleCache};
use crate::special::{
    self, gamma, laguerre_norm_factor, pochhammer, positive_cut_pow, WaveletOrder,
};

/// Point of the translation-dilation half-plane: translation `x`, scale
/// `s > 0`. `z = x + is` is the associated half-plane variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeScalePoint {
    pub x: f64,
    pub s: f64,
}

impl TimeScalePoint {
    pub fn new(x: f64, s: f64) -> Result<Self> {
        if !(x.is_finite() && s.is_finite() && s > 0.0) {
            return Err(Error::Parameter {
                name: "s",
                value: s,
                constraint: "scale must be finite and > 0",
            });
        }
        Ok(TimeScalePoint { x, s })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.s)
    }
}

/// A signal on the spectral side: finite expansion over the orthonormal
/// Laguerre basis with parameter `basis_alpha`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralSignal {
    basis_alpha: f64,
    coefficients: Vec<Complex64>,
}

impl SpectralSignal {
    pub fn new(basis_alpha: f64, coefficients: Vec<Complex64>) -> Result<Self> {
        WaveletOrder::new(0, basis_alpha)?;
        if coefficients
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Degenerate("non-finite signal coefficient"));
        }
        Ok(SpectralSignal {
            basis_alpha,
            coefficients,
        })
    }

    /// The unit basis signal e~_m.
    pub fn basis_element(basis_alpha: f64, m: usize) -> Result<Self> {
        let mut coefficients = vec![Complex64::new(0.0, 0.0); m + 1];
        coefficients[m] = Complex64::new(1.0, 0.0);
        SpectralSignal::new(basis_alpha, coefficients)
    }

    /// The signal whose spectral function is the bare Laguerre function
    /// l_n^alpha (coefficient 1/norm on the n-th basis element).
    pub fn from_laguerre_function(order: &WaveletOrder) -> Result<Self> {
        let mut coefficients = vec![Complex64::new(0.0, 0.0); order.n + 1];
        coefficients[order.n] =
            Complex64::new(1.0 / laguerre_norm_factor(order.n, order.alpha), 0.0);
        SpectralSignal::new(order.alpha, coefficients)
    }

    pub fn basis_alpha(&self) -> f64 {
        self.basis_alpha
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Squared norm: equals the squared Hardy-space norm of the
    /// represented function.
    pub fn norm_sq(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Spectral function value at t (zero on the closed negative axis).
    pub fn spectral_value(&self, t: f64) -> Complex64 {
        if t <= 0.0 || self.coefficients.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let n_max = self.coefficients.len() - 1;
        let mut polys = vec![0.0; n_max + 1];
        special::laguerre_polynomial_sweep(n_max, self.basis_alpha, t, &mut polys);
        let envelope = (-0.5 * t + 0.5 * self.basis_alpha * t.ln()).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.coefficients.iter().enumerate() {
            acc += c * (envelope * laguerre_norm_factor(m, self.basis_alpha) * polys[m]);
        }
        acc
    }
}

/// The analytic (progressive) window (1/(t+i))^{alpha+1}, principal
/// branch; the base never meets the cut since Im(t+i) = 1. Integer
/// exponents take the exact power path.
pub fn paul_wavelet(alpha: f64, t: f64) -> Complex64 {
    let base = Complex64::new(t, 1.0).inv();
    let exponent = alpha + 1.0;
    if exponent.fract() == 0.0 && exponent.abs() <= 64.0 {
        base.powi(exponent as i32)
    } else {
        base.powf(exponent)
    }
}

/// Spectral function of the translated-dilated analyzing wavelet at
/// frequency t: e^{-ixt} s^{1/2} 2 l_n^alpha(2st) for t > 0, zero
/// otherwise.
pub fn spectral_atom(order: &WaveletOrder, p: &TimeScalePoint, t: f64) -> Complex64 {
    if t <= 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let value = match special::laguerre_function(order, 2.0 * p.s * t) {
        Ok(v) => v,
        Err(_) => return Complex64::new(0.0, 0.0),
    };
    Complex64::from_polar(1.0, -p.x * t) * (2.0 * p.s.sqrt() * value)
}

/// Overlaps of the first `count` basis signals with the atom at `p`:
/// v_m = integral of e~_m(t) conj(atom)(t) dt. One Laplace evaluation per
/// node with a shared polynomial sweep; the exponential content
/// e^{-(1/2 + s - ix) t} is handled by the rotated-contour rule, so the
/// order only has to cover the polynomial degree `count - 1 + n`.
pub fn overlap_column(
    order: &WaveletOrder,
    p: &TimeScalePoint,
    basis_alpha: f64,
    count: usize,
    cache: &RuleCache,
) -> Result<Vec<Complex64>> {
    WaveletOrder::new(0, basis_alpha)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let m_max = count - 1;
    let gamma_rule = 0.5 * (order.alpha + basis_alpha);
    let rule = cache.rule(gamma_rule, exactness_order(m_max + order.n))?;
    let sigma = Complex64::new(0.5 + p.s, -p.x);
    let inv = sigma.inv();
    let two_s = 2.0 * p.s;

    let mut acc = vec![Complex64::new(0.0, 0.0); count];
    let mut basis_sweep = vec![Complex64::new(0.0, 0.0); count];
    let mut atom_sweep = vec![Complex64::new(0.0, 0.0); order.n + 1];
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = inv * u;
        special::laguerre_sweep_complex(m_max, basis_alpha, t, &mut basis_sweep);
        special::laguerre_sweep_complex(order.n, order.alpha, two_s * t, &mut atom_sweep);
        let common = atom_sweep[order.n] * w;
        for m in 0..count {
            acc[m] += basis_sweep[m] * common;
        }
    }
    // prefactor: 2 s^{1/2} (2s)^{alpha/2} sigma^{-(gamma+1)} plus the
    // basis normalizations
    let prefactor = (2.0 * p.s.sqrt() * two_s.powf(0.5 * order.alpha))
        * (-(gamma_rule + 1.0) * sigma.ln()).exp();
    for (m, a) in acc.iter_mut().enumerate() {
        *a *= prefactor * laguerre_norm_factor(m, basis_alpha);
    }
    Ok(acc)
}

/// Wavelet coefficient <f, atom at p> of the spectral signal against the
/// analyzing wavelet of the given order, computed on the spectral side.
pub fn wavelet_coefficient(
    f: &SpectralSignal,
    order: &WaveletOrder,
    p: &TimeScalePoint,
    cache: &RuleCache,
) -> Result<Complex64> {
    let column = overlap_column(order, p, f.basis_alpha, f.coefficients.len(), cache)?;
    Ok(f.coefficients
        .iter()
        .zip(&column)
        .map(|(c, v)| c * v)
        .sum())
}

/// Bergman transform of a spectral signal:
/// integral of t^alpha e^{izt} fhat(t) dt for Im z > 0.
pub fn bergman_transform(
    f: &SpectralSignal,
    alpha: f64,
    z: Complex64,
    cache: &RuleCache,
) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::Domain {
            re: z.re,
            im: z.im,
            constraint: "Bergman transform needs Im z > 0",
        });
    }
    if f.coefficients.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let beta = f.basis_alpha;
    let gamma_rule = alpha + 0.5 * beta;
    let m_max = f.coefficients.len() - 1;
    let rule = cache.rule(gamma_rule, exactness_order(m_max))?;
    // e^{izt} e^{-t/2} = e^{-sigma t} with sigma = 1/2 - iz
    let sigma = Complex64::new(0.5, 0.0) - Complex64::i() * z;
    let inv = sigma.inv();
    let mut sweep = vec![Complex64::new(0.0, 0.0); m_max + 1];
    let mut acc = Complex64::new(0.0, 0.0);
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = inv * u;
        special::laguerre_sweep_complex(m_max, beta, t, &mut sweep);
        let mut point = Complex64::new(0.0, 0.0);
        for (m, c) in f.coefficients.iter().enumerate() {
            point += c * (laguerre_norm_factor(m, beta) * sweep[m]);
        }
        acc += point * w;
    }
    Ok(acc * (-(gamma_rule + 1.0) * sigma.ln()).exp())
}

/// Basis function of the weighted Bergman space on the half-plane:
/// ((iz + 1/2)/(iz - 1/2))^n (iz - 1/2)^{-alpha-1}.
///
/// `iz - 1/2` lives in the left half-plane for Im z > 0, so the fractional
/// power takes the branch cut along the positive real axis, keeping the
/// function analytic across the imaginary axis (the principal branch would
/// jump there). Both branches agree for integer exponents.
pub fn bergman_basis(n: usize, alpha: f64, z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::Domain {
            re: z.re,
            im: z.im,
            constraint: "Bergman basis functions live on Im z > 0",
        });
    }
    let iz = Complex64::i() * z;
    let minus = iz - 0.5;
    let plus = iz + 0.5;
    let ratio = (plus / minus).powu(n as u32);
    Ok(ratio * positive_cut_pow(minus, -alpha - 1.0))
}

/// Result of the proportionality check between the Bergman transform of
/// the degree-n analyzing wavelet of parameter 2 alpha and the n-th
/// Bergman basis function of the same parameter.
#[derive(Debug, Clone, Serialize)]
pub struct ProportionalityReport {
    pub ratio_mean: Complex64,
    pub ratio_spread: f64,
    pub skipped: usize,
    pub expected_modulus: f64,
    /// Ratio predicted by this crate's conventions:
    /// -e^{2 pi i alpha} Gamma(2 alpha + n + 1)/n!.
    pub predicted_ratio: Complex64,
    /// The textbook constant (-1)^{alpha+1}(2 alpha + n)!/n!, defined for
    /// integer alpha; kept for the comparison log.
    pub printed_constant: Option<f64>,
}

/// Certify Ber^alpha(S_n^{2 alpha}) = c Psi_n^{2 alpha} by sampling the
/// ratio: returns its mean and maximal relative spread over the samples.
/// Samples where the basis function nearly vanishes are skipped and
/// counted.
pub fn bergman_proportionality_ratio(
    n: usize,
    alpha: f64,
    z_samples: &[Complex64],
    cache: &RuleCache,
) -> Result<ProportionalityReport> {
    if !(alpha > 0.0) {
        return Err(Error::Parameter {
            name: "alpha",
            value: alpha,
            constraint: "the proportionality check needs alpha > 0",
        });
    }
    let order = WaveletOrder::new(n, 2.0 * alpha)?;
    let signal = SpectralSignal::from_laguerre_function(&order)?;
    let mut ratios = Vec::with_capacity(z_samples.len());
    let mut skipped = 0usize;
    for &z in z_samples {
        let denom = bergman_basis(n, 2.0 * alpha, z)?;
        if denom.norm() < 1e-14 {
            skipped += 1;
            continue;
        }
        let numer = bergman_transform(&signal, alpha, z, cache)?;
        ratios.push(numer / denom);
    }
    if ratios.is_empty() {
        return Err(Error::Degenerate("all proportionality samples degenerate"));
    }
    let mean: Complex64 = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let spread = ratios
        .iter()
        .map(|r| (r - mean).norm())
        .fold(0.0f64, f64::max)
        / mean.norm();
    let n_f = n as f64;
    let expected_modulus = gamma(2.0 * alpha + n_f + 1.0)? / gamma(n_f + 1.0)?;
    let predicted_ratio =
        -Complex64::from_polar(expected_modulus, 2.0 * std::f64::consts::PI * alpha);
    let printed_constant = if alpha.fract() == 0.0 {
        let sign = if (alpha as i64 + 1) % 2 == 0 { 1.0 } else { -1.0 };
        Some(sign * expected_modulus)
    } else {
        None
    };
    Ok(ProportionalityReport {
        ratio_mean: mean,
        ratio_spread: spread,
        skipped,
        expected_modulus,
        predicted_ratio,
        printed_constant,
    })
}

/// Which pullback the disc transplant uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pullback {
    /// z = i/2 (w + 1)/(w - 1): sends the disc into the lower half-plane,
    /// where the Bergman machinery is undefined; evaluations fail with a
    /// domain error.
    LowerHalfPlane,
    /// z = i/2 (1 + w)/(1 - w): the inverse of w = (iz+1/2)/(iz-1/2),
    /// landing in the upper half-plane.
    UpperHalfPlane,
}

/// Transplant of a half-plane function onto the disc:
/// (T g)(w) = g(z(w)) (1/(1-w))^{alpha+1} with the chosen pullback.
/// Under the upper-half-plane pullback the transplant of the n-th Bergman
/// basis function is e^{-i pi (alpha+1)} w^n.
pub fn disc_transplant(
    g: impl Fn(Complex64) -> Result<Complex64>,
    alpha: f64,
    w: Complex64,
    pullback: Pullback,
) -> Result<Complex64> {
    if !(w.norm() < 1.0) {
        return Err(Error::Domain {
            re: w.re,
            im: w.im,
            constraint: "disc transplant needs |w| < 1",
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let z = match pullback {
        Pullback::LowerHalfPlane => Complex64::new(0.0, 0.5) * (w + one) / (w - one),
        Pullback::UpperHalfPlane => Complex64::new(0.0, 0.5) * (one + w) / (one - w),
    };
    // Re(1 - w) > 0 on the disc: principal branch is cut-free
    let factor = (one - w).powf(-(alpha + 1.0));
    Ok(g(z)? * factor)
}

/// The decomposition of the degree-n analyzing wavelet (argument halved)
/// into analytic windows:
///
///   S(t/2) = C sum_k a_k (1/(t+i))^{k + alpha/2 + 1},
///
/// C = Gamma(alpha/2+1)(1+alpha)_n/n!,
/// a_k = (2i)^{k+alpha/2+1} (-n)_k (alpha/2+1)_k / (k! (alpha+1)_k),
/// principal branch for the fractional power of 2i. Exact for all
/// alpha > -1: the identity (1/(1/2 - it/2))^g = (2i)^g (t+i)^{-g} never
/// crosses a branch cut for real t.
#[derive(Debug, Clone)]
pub struct PaulDecomposition {
    pub order: WaveletOrder,
    pub constant: f64,
    pub coefficients: Vec<Complex64>,
}

impl PaulDecomposition {
    pub fn new(order: &WaveletOrder) -> Result<Self> {
        let n = order.n;
        let alpha = order.alpha;
        let constant =
            gamma(0.5 * alpha + 1.0)? * pochhammer(1.0 + alpha, n) / gamma(n as f64 + 1.0)?;
        let log_2i = Complex64::new(2.0f64.ln(), 0.5 * std::f64::consts::PI);
        let mut coefficients = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let k_f = k as f64;
            let rho = pochhammer(-(n as f64), k) * pochhammer(0.5 * alpha + 1.0, k)
                / (gamma(k_f + 1.0)? * pochhammer(alpha + 1.0, k));
            let power = ((k_f + 0.5 * alpha + 1.0) * log_2i).exp();
            coefficients.push(power * rho);
        }
        Ok(PaulDecomposition {
            order: *order,
            constant,
            coefficients,
        })
    }

    /// Time-domain value of the right side, C sum a_k psi_{k+alpha/2}(t).
    pub fn time_value(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, a) in self.coefficients.iter().enumerate() {
            acc += a * paul_wavelet(k as f64 + 0.5 * self.order.alpha, t);
        }
        acc * self.constant
    }

    /// Real weights of the same decomposition seen on the spectral side:
    /// b_k = 2^{k+alpha/2+1} rho_k / Gamma(k+alpha/2+1). The phase of a_k
    /// is exactly the phase of the spectral kernel of the analytic window
    /// (whose positive-frequency transform is i^{-g} t^{g-1} e^{-t} /
    /// Gamma(g) at exponent g), so it cancels and the kernel's Gamma
    /// remains.
    pub fn spectral_weights(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let g = k as f64 + 0.5 * self.order.alpha + 1.0;
                let gamma_g = gamma(g).expect("positive argument");
                let spectral =
                    a * (Complex64::new(0.0, -0.5 * std::f64::consts::PI * g)).exp() / gamma_g;
                // real by construction; drop the rounding in the phase
                spectral.re
            })
            .collect()
    }
}

/// Wavelet coefficient evaluated through the analytic-window decomposition
/// and the Bergman transform:
///
///   W f(x, s) = C sum_k b_k s^{k+alpha/2+1/2} Ber^{k+alpha/2} f(x + is).
///
/// Agrees with [`wavelet_coefficient`] at the same time-scale point; the
/// two routes share no special-function content (Laguerre-product kernels
/// on one side, pure power kernels plus the decomposition algebra on the
/// other).
pub fn wavelet_coefficient_via_bergman(
    f: &SpectralSignal,
    order: &WaveletOrder,
    p: &TimeScalePoint,
    cache: &RuleCache,
) -> Result<Complex64> {
    let decomposition = PaulDecomposition::new(order)?;
    let weights = decomposition.spectral_weights();
    let z = p.z();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &b) in weights.iter().enumerate() {
        let g = k as f64 + 0.5 * order.alpha;
        let ber = bergman_transform(f, g, z, cache)?;
        acc += ber * (b * p.s.powf(g + 0.5));
    }
    Ok(acc * decomposition.constant)
}

/// Admissibility constant of the analyzing wavelet of the given order, in
/// the normalization of its L2-normalized dilation:
/// K = 2 integral of e^{-u} u^{alpha-1} L_n^alpha(u)^2 du. Requires
/// alpha > 0 (the scale integral diverges otherwise).
pub fn admissibility_constant(order: &WaveletOrder, cache: &RuleCache) -> Result<f64> {
    order.require_admissible()?;
    let rule = cache.rule(order.alpha - 1.0, exactness_order(2 * order.n))?;
    let value = rule.integrate(|u| {
        let l = special::laguerre_polynomial(order, u);
        l * l
    });
    Ok(2.0 * value)
}

/// Outcome of the truncated isometry check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IsometryCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

/// Truncated isometry of the wavelet transform: compares
///
///   lhs = (1/(4 pi)) * double integral of s^{-2} |W f(x,s)|^2 dx ds
///
/// over the given strip against rhs = K ||f||^2, K the admissibility
/// constant above. The 1/(4 pi) bridges the conventions: 2 pi because the
/// admissibility integral is stated for the angular-frequency transform
/// while coefficients use the plain spectral pairing, and 2 because K is
/// normalized for the L2-normalized dilation while the atoms carry the
/// bare halved argument. For the model case (n=0, alpha=2, f the first
/// basis signal) the full-plane integral is exactly 8 pi = 4 pi K ||f||^2.
pub fn isometry_check(
    f: &SpectralSignal,
    order: &WaveletOrder,
    x_range: (f64, f64),
    s_range: (f64, f64),
    nx: usize,
    ns: usize,
    cache: &RuleCache,
) -> Result<IsometryCheck> {
    let k = admissibility_constant(order, cache)?;
    let rhs = k * f.norm_sq();
    if rhs == 0.0 {
        return Ok(IsometryCheck {
            lhs: 0.0,
            rhs: 0.0,
            rel_err: 0.0,
        });
    }
    let integral = integrate_strip_2d(
        |x, s| {
            let p = TimeScalePoint { x, s };
            match wavelet_coefficient(f, order, &p, cache) {
                Ok(w) => w.norm_sqr() / (s * s),
                Err(_) => 0.0,
            }
        },
        x_range,
        s_range,
        nx,
        ns,
    )?;
    let lhs = integral / (4.0 * std::f64::consts::PI);
    Ok(IsometryCheck {
        lhs,
        rhs,
        rel_err: (lhs - rhs).abs() / rhs,
    })
}

/// Relative residual between the k-th central finite difference of
/// Ber^{alpha/2} f along the real direction at z and
/// i^k Ber^{k+alpha/2} f(z). A two-step Richardson comparison flags steps
/// in the unstable window (halving h must not degrade the quotient).
pub fn bergman_derivative_residual(
    f: &SpectralSignal,
    alpha: f64,
    z: Complex64,
    k: usize,
    h: f64,
    cache: &RuleCache,
) -> Result<f64> {
    if k > 3 {
        return Err(Error::Parameter {
            name: "k",
            value: k as f64,
            constraint: "finite-difference stencils implemented for k <= 3",
        });
    }
    if !(h > 0.0) || !(z.im > k as f64 * h) {
        return Err(Error::Parameter {
            name: "h",
            value: h,
            constraint: "need 0 < k h < Im z",
        });
    }
    if k == 0 {
        return Ok(0.0);
    }
    let half_alpha = 0.5 * alpha;
    let g = |dx: f64| bergman_transform(f, half_alpha, z + Complex64::new(dx, 0.0), cache);
    let stencil = |h: f64| -> Result<Complex64> {
        Ok(match k {
            1 => (g(h)? - g(-h)?) / (2.0 * h),
            2 => (g(h)? - 2.0 * g(0.0)? + g(-h)?) / (h * h),
            _ => (g(2.0 * h)? - 2.0 * g(h)? + 2.0 * g(-h)? - g(-2.0 * h)?)
                / (2.0 * h * h * h),
        })
    };
    let target =
        bergman_transform(f, k as f64 + half_alpha, z, cache)? * Complex64::i().powu(k as u32);
    let scale = target.norm().max(1e-300);
    let res_h = (stencil(h)? - target).norm() / scale;
    let res_half = (stencil(0.5 * h)? - target).norm() / scale;
    if res_half > 2.0 * res_h && res_half > 1e-10 {
        return Err(Error::Convergence(
            "finite-difference step outside the stable window",
        ));
    }
    Ok(res_h)
}
