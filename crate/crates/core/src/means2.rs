//! Two-variable weighted geometric mean and the scalar constants that appear
//! in the reverse inequalities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matfun::{jacobi_eigh, SpdMatrix, Symmetric};

/// Spectral bounds `0 < m ≤ M` of a family of operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarBounds {
    m: f64,
    #[serde(rename = "M")]
    big_m: f64,
}

impl ScalarBounds {
    pub fn new(m: f64, big_m: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "m",
                value: m,
                expected: "finite and > 0",
            });
        }
        if !(big_m >= m && big_m.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "M",
                value: big_m,
                expected: "finite and >= m",
            });
        }
        Ok(Self { m, big_m })
    }

    /// Tightest bounds containing the spectra of all `operands`.
    pub fn enclosing<'a>(operands: impl IntoIterator<Item = &'a SpdMatrix>) -> Result<Self> {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for a in operands {
            lo = lo.min(a.min_eigenvalue());
            hi = hi.max(a.max_eigenvalue());
        }
        Self::new(lo, hi)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn big_m(&self) -> f64 {
        self.big_m
    }

    /// Condition ratio `h = M/m`.
    pub fn h(&self) -> f64 {
        self.big_m / self.m
    }

    /// Bounds of `A^q` given bounds of `A`, for `q > 0`.
    pub fn powf(&self, q: f64) -> Result<Self> {
        Self::new(self.m.powf(q), self.big_m.powf(q))
    }
}

/// `A ♯_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` for `t ∈ [0, 1]`.
pub fn geo_mean2(a: &SpdMatrix, b: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            expected: "[0, 1]",
        });
    }
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let inner = jacobi_eigh(&a.whiten(b.matrix()))?;
    let powered = inner.apply(|x| x.powf(t));
    SpdMatrix::from_computed(&a.unwhiten(&powered))
}

/// Kantorovich constant `(m + M)² / (4mM)`.
pub fn kantorovich(b: ScalarBounds) -> f64 {
    let (m, big_m) = (b.m, b.big_m);
    (m + big_m) * (m + big_m) / (4.0 * m * big_m)
}

/// Below this distance from 1 the Specht ratio uses `1 + (h−1)²/8`.
const SPECHT_SERIES_CUTOFF: f64 = 1e-6;

/// Specht ratio `S(h) = (h−1) h^{1/(h−1)} / (e log h)` with `S(1) = 1`.
pub fn specht(h: f64) -> Result<f64> {
    if !(h >= 1.0) || !h.is_finite() {
        return Err(Error::ParameterOutOfRange {
            name: "h",
            value: h,
            expected: "finite and >= 1",
        });
    }
    let x = h - 1.0;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x < SPECHT_SERIES_CUTOFF {
        return Ok(1.0 + x * x / 8.0);
    }
    let log_h = x.ln_1p();
    Ok((x.ln() + log_h / x - 1.0 - log_h.ln()).exp())
}

/// Generalized Kantorovich constant `K(m, M, p)` for `p ≥ 1`.
pub fn gen_kantorovich(b: ScalarBounds, p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            expected: "finite and >= 1",
        });
    }
    let (m, big_m) = (b.m, b.big_m);
    if p == 1.0 || m == big_m {
        return Ok(1.0);
    }
    // Evaluated in logs; every bracket is positive for m < M and p > 1.
    let mp = m.powf(p);
    let big_mp = big_m.powf(p);
    let ln_k = (p - 1.0) * (p - 1.0).ln() - p * p.ln() + p * (big_mp - mp).ln()
        - (big_m - m).ln()
        - (p - 1.0) * (m * big_mp - big_m * mp).ln();
    Ok(ln_k.exp())
}

/// Ky Fan–Furuta bound `(M/m)^{p−1}`, which dominates `K(m, M, p)`.
pub fn furuta_bound(b: ScalarBounds, p: f64) -> f64 {
    b.h().powf(p - 1.0)
}
