//! C ABI for the lagwave library.
//!
//! Conventions: every function returns an [`LwfStatus`]; results leave
//! through out-pointers. Heap objects travel as opaque handles with
//! explicit `_new` / `_free` pairs, and nothing panics across the
//! boundary. The build script generates `include/lagwave.h` with cbindgen.
//!
//! Pointer contracts are uniform (valid or null, checked at entry; handles
//! must come from the matching `_new`), so per-function safety sections
//! would repeat the module contract.
#![allow(clippy::missing_safety_doc)]

use std::os::raw::{c_char, c_void};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use lagwave::error::Error;
use lagwave::frames::{frame_bounds, AtomSequence, FrameAnalysisConfig};
use lagwave::geometry::{density_thresholds, lattice_density_estimate, HyperbolicLattice};
use lagwave::quadrature::{gauss_laguerre_rule, QuadratureRule, RuleCache};
use lagwave::special::{
    analyzing_wavelet, analyzing_wavelet_disc_route, circular_jacobi, gamma,
    laguerre_function, laguerre_polynomial, WaveletOrder,
};
use lagwave::transforms::{
    admissibility_constant, bergman_transform, paul_wavelet, wavelet_coefficient,
    SpectralSignal, TimeScalePoint,
};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LwfStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter violated its domain constraint.
    InvalidArgument = 2,
    /// A point lay outside the required region (half-plane, disc, ...).
    DomainError = 3,
    /// An iterative procedure failed to converge or coverage could not be
    /// certified.
    ConvergenceFailure = 4,
    /// The caller-provided buffer is too small; the required size is
    /// reported through the out-parameter.
    BufferTooSmall = 5,
    /// The library panicked; this indicates a bug.
    Internal = 6,
}

fn status_of(err: &Error) -> LwfStatus {
    match err {
        Error::Domain { .. } => LwfStatus::DomainError,
        Error::Coverage { .. } | Error::Convergence(_) => LwfStatus::ConvergenceFailure,
        _ => LwfStatus::InvalidArgument,
    }
}

fn guarded(body: impl FnOnce() -> LwfStatus) -> LwfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => LwfStatus::Internal,
    }
}

macro_rules! check_null {
    ($($ptr:expr),+ $(,)?) => {
        $( if $ptr.is_null() { return LwfStatus::NullPointer; } )+
    };
}

/// Evaluation context: caches quadrature rules across calls.
pub struct LwfContext {
    cache: RuleCache,
}

/// Quadrature rule handle (generalized Gauss-Laguerre).
pub struct LwfRule {
    rule: QuadratureRule,
}

/// Spectral signal handle: finite orthonormal Laguerre expansion.
pub struct LwfSignal {
    signal: SpectralSignal,
}

/// Version string of the library (static storage, do not free).
#[no_mangle]
pub extern "C" fn lwf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates an evaluation context. Free with `lwf_context_free`.
#[no_mangle]
pub unsafe extern "C" fn lwf_context_new(out: *mut *mut LwfContext) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        let ctx = Box::new(LwfContext {
            cache: RuleCache::new(),
        });
        unsafe { *out = Box::into_raw(ctx) };
        LwfStatus::Ok
    })
}

/// Frees a context created by `lwf_context_new`. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn lwf_context_free(ctx: *mut LwfContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// Gamma function on the real line.
#[no_mangle]
pub unsafe extern "C" fn lwf_gamma(x: f64, out: *mut f64) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        match gamma(x) {
            Ok(v) => {
                unsafe { *out = v };
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Generalized Laguerre polynomial L_n^alpha(x).
#[no_mangle]
pub unsafe extern "C" fn lwf_laguerre_polynomial(
    n: u32,
    alpha: f64,
    x: f64,
    out: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        match WaveletOrder::new(n as usize, alpha) {
            Ok(order) => {
                unsafe { *out = laguerre_polynomial(&order, x) };
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Laguerre function l_n^alpha(x).
#[no_mangle]
pub unsafe extern "C" fn lwf_laguerre_function(
    n: u32,
    alpha: f64,
    x: f64,
    out: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        match laguerre_function(&order, x) {
            Ok(v) => {
                unsafe { *out = v };
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Time-domain analyzing wavelet (series route).
#[no_mangle]
pub unsafe extern "C" fn lwf_analyzing_wavelet(
    n: u32,
    alpha: f64,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out_re, out_im);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        match analyzing_wavelet(&order, t) {
            Ok(v) => {
                unsafe {
                    *out_re = v.re;
                    *out_im = v.im;
                }
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Analyzing wavelet through the disc factorization (the independent
/// second route).
#[no_mangle]
pub unsafe extern "C" fn lwf_analyzing_wavelet_disc_route(
    n: u32,
    alpha: f64,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out_re, out_im);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        match analyzing_wavelet_disc_route(&order, t) {
            Ok(v) => {
                unsafe {
                    *out_re = v.re;
                    *out_im = v.im;
                }
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Circular Jacobi polynomial g_n^alpha(z).
#[no_mangle]
pub unsafe extern "C" fn lwf_circular_jacobi(
    n: u32,
    alpha: f64,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out_re, out_im);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        match circular_jacobi(&order, Complex64::new(z_re, z_im)) {
            Ok(v) => {
                unsafe {
                    *out_re = v.re;
                    *out_im = v.im;
                }
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Analytic window (1/(t+i))^{alpha+1}.
#[no_mangle]
pub unsafe extern "C" fn lwf_paul_wavelet(
    alpha: f64,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out_re, out_im);
        let v = paul_wavelet(alpha, t);
        unsafe {
            *out_re = v.re;
            *out_im = v.im;
        }
        LwfStatus::Ok
    })
}

/// Admissibility constant of the analyzing wavelet (requires alpha > 0).
#[no_mangle]
pub unsafe extern "C" fn lwf_admissibility_constant(
    n: u32,
    alpha: f64,
    out: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        match admissibility_constant(&order, &RuleCache::new()) {
            Ok(v) => {
                unsafe { *out = v };
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Sufficient-density thresholds: disc density n + alpha/2 and lattice
/// bound 4 pi / (2n + alpha) (infinity when 2n + alpha <= 0).
#[no_mangle]
pub unsafe extern "C" fn lwf_density_thresholds(
    n: u32,
    alpha: f64,
    out_disc: *mut f64,
    out_lattice: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out_disc, out_lattice);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        let (disc, lattice) = density_thresholds(&order);
        unsafe {
            *out_disc = disc;
            *out_lattice = lattice;
        }
        LwfStatus::Ok
    })
}

/// Finite-radius lower-density estimate of the lattice {a^j (b k + i)},
/// probed on a five-point central grid with auto-extended coverage.
#[no_mangle]
pub unsafe extern "C" fn lwf_lattice_density(
    a: f64,
    b: f64,
    r: f64,
    out: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        let lattice = match HyperbolicLattice::new(a, b, (0, 0), (-2, 2)) {
            Ok(l) => l,
            Err(e) => return status_of(&e),
        };
        match lattice_density_estimate(&lattice, r) {
            Ok(est) => {
                unsafe { *out = est.estimate };
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Builds an m-point generalized Gauss-Laguerre rule for the weight
/// x^beta e^{-x}. Free with `lwf_rule_free`.
#[no_mangle]
pub unsafe extern "C" fn lwf_rule_new(
    order: u32,
    beta: f64,
    out: *mut *mut LwfRule,
) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        match gauss_laguerre_rule(order as usize, beta) {
            Ok(rule) => {
                unsafe { *out = Box::into_raw(Box::new(LwfRule { rule })) };
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a rule handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn lwf_rule_free(rule: *mut LwfRule) {
    if !rule.is_null() {
        drop(unsafe { Box::from_raw(rule) });
    }
}

/// Number of nodes of the rule.
#[no_mangle]
pub unsafe extern "C" fn lwf_rule_order(rule: *const LwfRule, out: *mut u32) -> LwfStatus {
    guarded(|| {
        check_null!(rule, out);
        unsafe { *out = (*rule).rule.order() as u32 };
        LwfStatus::Ok
    })
}

/// Copies nodes and weights into caller buffers of capacity `capacity`.
/// On `BufferTooSmall` the required capacity is left in `written`.
#[no_mangle]
pub unsafe extern "C" fn lwf_rule_nodes_weights(
    rule: *const LwfRule,
    nodes: *mut f64,
    weights: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> LwfStatus {
    guarded(|| {
        check_null!(rule, nodes, weights, written);
        let r = unsafe { &(*rule).rule };
        let needed = r.order();
        unsafe { *written = needed };
        if capacity < needed {
            return LwfStatus::BufferTooSmall;
        }
        unsafe {
            std::ptr::copy_nonoverlapping(r.nodes().as_ptr(), nodes, needed);
            std::ptr::copy_nonoverlapping(r.weights().as_ptr(), weights, needed);
        }
        LwfStatus::Ok
    })
}

/// Integrates `x^beta e^{-x} f(x)` with the rule: `f` receives each node
/// plus the opaque `ctx` pointer.
#[no_mangle]
pub unsafe extern "C" fn lwf_rule_integrate(
    rule: *const LwfRule,
    f: Option<unsafe extern "C" fn(f64, *mut c_void) -> f64>,
    ctx: *mut c_void,
    out: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(rule, out);
        let Some(f) = f else {
            return LwfStatus::NullPointer;
        };
        let r = unsafe { &(*rule).rule };
        let value = r.integrate(|x| unsafe { f(x, ctx) });
        unsafe { *out = value };
        LwfStatus::Ok
    })
}

/// Creates a spectral signal from coefficient arrays of length `len`
/// (imaginary parts may be null for a real signal). Free with
/// `lwf_signal_free`.
#[no_mangle]
pub unsafe extern "C" fn lwf_signal_new(
    basis_alpha: f64,
    coeffs_re: *const f64,
    coeffs_im: *const f64,
    len: usize,
    out: *mut *mut LwfSignal,
) -> LwfStatus {
    guarded(|| {
        check_null!(out);
        if len > 0 && coeffs_re.is_null() {
            return LwfStatus::NullPointer;
        }
        let re = if len > 0 {
            unsafe { std::slice::from_raw_parts(coeffs_re, len) }
        } else {
            &[]
        };
        let im: Option<&[f64]> = if coeffs_im.is_null() {
            None
        } else {
            Some(unsafe { std::slice::from_raw_parts(coeffs_im, len) })
        };
        let coefficients: Vec<Complex64> = (0..len)
            .map(|i| Complex64::new(re[i], im.map_or(0.0, |im| im[i])))
            .collect();
        match SpectralSignal::new(basis_alpha, coefficients) {
            Ok(signal) => {
                unsafe { *out = Box::into_raw(Box::new(LwfSignal { signal })) };
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a signal handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn lwf_signal_free(signal: *mut LwfSignal) {
    if !signal.is_null() {
        drop(unsafe { Box::from_raw(signal) });
    }
}

/// Squared norm of the signal.
#[no_mangle]
pub unsafe extern "C" fn lwf_signal_norm_sq(
    signal: *const LwfSignal,
    out: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(signal, out);
        unsafe { *out = (*signal).signal.norm_sq() };
        LwfStatus::Ok
    })
}

/// Wavelet coefficient of the signal against the analyzing wavelet of
/// order (n, alpha) at translation x, scale s.
#[no_mangle]
pub unsafe extern "C" fn lwf_wavelet_coefficient(
    ctx: *mut LwfContext,
    signal: *const LwfSignal,
    n: u32,
    alpha: f64,
    x: f64,
    s: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(ctx, signal, out_re, out_im);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        let p = match TimeScalePoint::new(x, s) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        let cache = unsafe { &(*ctx).cache };
        match wavelet_coefficient(unsafe { &(*signal).signal }, &order, &p, cache) {
            Ok(v) => {
                unsafe {
                    *out_re = v.re;
                    *out_im = v.im;
                }
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Bergman transform of the signal at z = z_re + i z_im (requires
/// z_im > 0).
#[no_mangle]
pub unsafe extern "C" fn lwf_bergman_transform(
    ctx: *mut LwfContext,
    signal: *const LwfSignal,
    alpha: f64,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LwfStatus {
    guarded(|| {
        check_null!(ctx, signal, out_re, out_im);
        let cache = unsafe { &(*ctx).cache };
        match bergman_transform(
            unsafe { &(*signal).signal },
            alpha,
            Complex64::new(z_re, z_im),
            cache,
        ) {
            Ok(v) => {
                unsafe {
                    *out_re = v.re;
                    *out_im = v.im;
                }
                LwfStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Frame-bound estimation for the lattice {a^j (b k + i)}; the report is
/// written as NUL-terminated JSON into `buf`. On `BufferTooSmall` the
/// required capacity (including the NUL) is left in `written`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn lwf_frame_bounds_json(
    n: u32,
    alpha: f64,
    a: f64,
    b: f64,
    j_min: i32,
    j_max: i32,
    k_min: i32,
    k_max: i32,
    basis_size: u32,
    quadrature_order: u32,
    auto_extend: bool,
    buf: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> LwfStatus {
    guarded(|| {
        check_null!(buf, written);
        let order = match WaveletOrder::new(n as usize, alpha) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        let lattice = match HyperbolicLattice::new(a, b, (j_min, j_max), (k_min, k_max)) {
            Ok(l) => l,
            Err(e) => return status_of(&e),
        };
        let cfg = FrameAnalysisConfig {
            order,
            atoms: AtomSequence::Lattice(lattice),
            basis_size: basis_size as usize,
            basis_alpha: alpha,
            quadrature_order: quadrature_order as usize,
            auto_extend,
        };
        let report = match frame_bounds(&cfg) {
            Ok(r) => r,
            Err(e) => return status_of(&e),
        };
        let json = report.to_json();
        let needed = json.len() + 1;
        unsafe { *written = needed };
        if capacity < needed {
            return LwfStatus::BufferTooSmall;
        }
        unsafe {
            std::ptr::copy_nonoverlapping(json.as_ptr() as *const c_char, buf, json.len());
            *buf.add(json.len()) = 0;
        }
        LwfStatus::Ok
    })
}
