//! Coin operators.
//!
//! Every coin is a dense `d × d` unitary acting on the slots of a degree-`d`
//! vertex, plus an optional scalar phase `e^{iφ}` kept apart from the base
//! matrix so that two vertices of the same degree can be checked to carry the
//! same coin by label alone.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::{ComplexMatrix, ONE, ZERO};

/// Scalar phase carried by every degree-four wire vertex.
pub const WIRE_PHASE: f64 = -FRAC_PI_4;

/// Tolerance used by the constructors when validating a coin.
pub const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoinError {
    #[error("bias {0} outside [0, 1]")]
    BiasOutOfRange(f64),
    #[error("coin degree must be at least 1")]
    ZeroDegree,
    #[error("unknown coin label `{0}`")]
    UnknownLabel(String),
    #[error("coin `{label}` is not unitary: max |U†U - I| = {defect:e}")]
    NotUnitary { label: String, defect: f64 },
    #[error("coin `{label}` matrix is {rows}x{cols}, expected square")]
    NotSquare {
        label: String,
        rows: usize,
        cols: usize,
    },
    #[error("tensor construction does not reproduce the printed G8 matrix:\n{0}")]
    ConstructionMismatch(String),
}

/// A coin assigned to a class of vertices.
#[derive(Clone, PartialEq)]
pub struct CoinSpec {
    label: String,
    matrix: ComplexMatrix,
    phase: f64,
}

impl CoinSpec {
    /// Wraps an arbitrary matrix as a coin after checking it is unitary.
    pub fn custom(
        label: impl Into<String>,
        matrix: ComplexMatrix,
        phase: f64,
    ) -> Result<Self, CoinError> {
        let label = label.into();
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(CoinError::NotSquare {
                label,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let coin = Self {
            label,
            matrix,
            phase,
        };
        let defect = coin.effective_matrix().unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(CoinError::NotUnitary {
                label: coin.label,
                defect,
            });
        }
        Ok(coin)
    }

    fn known(label: impl Into<String>, matrix: ComplexMatrix, phase: f64) -> Self {
        Self {
            label: label.into(),
            matrix,
            phase,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.matrix.rows()
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// The base matrix, without the scalar phase.
    pub fn base_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `e^{iφ}` times the base matrix; this is what acts on the walker.
    pub fn effective_matrix(&self) -> ComplexMatrix {
        if self.phase == 0.0 {
            self.matrix.clone()
        } else {
            self.matrix.scale(Complex64::from_polar(1.0, self.phase))
        }
    }

    /// Returns the same base matrix with scalar phase `phi` and a new label.
    pub fn with_phase(&self, label: impl Into<String>, phi: f64) -> Self {
        Self::known(label, self.matrix.clone(), phi)
    }
}

impl fmt::Debug for CoinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoinSpec")
            .field("label", &self.label)
            .field("degree", &self.degree())
            .field("phase", &self.phase)
            .finish()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real_matrix(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect(),
    )
}

/// `(1/√2)[[1, 1], [1, -1]]`.
pub fn hadamard_coin() -> CoinSpec {
    let h = FRAC_1_SQRT_2;
    CoinSpec::known("HAD", real_matrix(&[&[h, h], &[h, -h]]), 0.0)
}

/// `[[√δ, √(1-δ)], [√(1-δ), -√δ]]`.
pub fn biased_coin(delta: f64) -> Result<CoinSpec, CoinError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(CoinError::BiasOutOfRange(delta));
    }
    // keep δ = 1/2 bit-identical to the Hadamard
    let (a, b) = if delta == 0.5 {
        (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    } else {
        (delta.sqrt(), (1.0 - delta).sqrt())
    };
    Ok(CoinSpec::known(
        format!("BIAS:{delta}"),
        real_matrix(&[&[a, b], &[b, -a]]),
        0.0,
    ))
}

/// Biased coin with a relative phase on the second coin state:
/// `diag(1, e^{iθ}) · H_bias(δ)`. Conjugating by the diagonal instead
/// would be a gauge change on a cycle and leave every period unchanged.
pub fn phased_bias_coin(delta: f64, theta: f64) -> Result<CoinSpec, CoinError> {
    let base = biased_coin(delta)?;
    if theta == 0.0 {
        return Ok(base);
    }
    let p = Complex64::from_polar(1.0, theta);
    let d = [ONE, p];
    let m = ComplexMatrix::from_fn(2, 2, |i, j| d[i] * base.matrix[(i, j)]);
    Ok(CoinSpec::known(format!("BIAS:{delta}:{theta}"), m, 0.0))
}

/// The completely biased coin, σ_x.
pub fn pauli_x_coin() -> CoinSpec {
    CoinSpec::known("SX", real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]]), 0.0)
}

/// Grover diffusion coin: every entry `2/d`, minus the identity.
pub fn grover_coin(d: usize) -> Result<CoinSpec, CoinError> {
    phased_grover_coin(d, 0.0)
}

/// `e^{iφ} · G^(d)`.
pub fn phased_grover_coin(d: usize, phi: f64) -> Result<CoinSpec, CoinError> {
    if d == 0 {
        return Err(CoinError::ZeroDegree);
    }
    let off = 2.0 / d as f64;
    let diag = (2.0 - d as f64) / d as f64;
    let m = ComplexMatrix::from_fn(d, d, |i, j| c(if i == j { diag } else { off }, 0.0));
    let label = if phi == 0.0 {
        format!("G{d}")
    } else if d == 4 && phi == WIRE_PHASE {
        "G4_phased".to_string()
    } else {
        format!("G{d}_phase:{phi}")
    };
    Ok(CoinSpec::known(label, m, phi))
}

/// The degree-four wire coin `e^{-iπ/4} G^(4)`.
pub fn wire_coin() -> CoinSpec {
    phased_grover_coin(4, WIRE_PHASE).expect("degree 4 is valid")
}

/// `H_i = (1/√2)[[1, i], [i, 1]]`.
pub fn complex_hadamard_coin() -> CoinSpec {
    let h = FRAC_1_SQRT_2;
    CoinSpec::known(
        "HI",
        ComplexMatrix::from_rows(vec![vec![c(h, 0.0), c(0.0, h)], vec![c(0.0, h), c(h, 0.0)]]),
        0.0,
    )
}

/// The degree-eight mixing coin, entered entry by entry.
///
/// Slots 0–3 are the incoming rails `(|0⟩a, |0⟩b, |1⟩a, |1⟩b)` and slots 4–7
/// the outgoing rails in the same order; both diagonal blocks vanish so
/// nothing is reflected.
pub fn g8_coin() -> CoinSpec {
    let (p, m, i, n) = (c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.5), ZERO);
    let rows = vec![
        vec![n, n, n, n, p, i, i, m],
        vec![n, n, n, n, i, p, m, i],
        vec![n, n, n, n, i, m, p, i],
        vec![n, n, n, n, m, i, i, p],
        vec![i, m, p, i, n, n, n, n],
        vec![m, i, i, p, n, n, n, n],
        vec![p, i, i, m, n, n, n, n],
        vec![i, p, m, i, n, n, n, n],
    ];
    CoinSpec::known("G8", ComplexMatrix::from_rows(rows), 0.0)
}

/// Builds the degree-eight coin from `(H_i ⊗ H_i) ⊗ σ_x`.
///
/// Rearrangement convention, fixed by matching [`g8_coin`]:
/// 1. The Kronecker product `K ⊗ σ_x` (with `K = H_i ⊗ H_i`) indexes rows
///    and columns as `2k + a`, `a` the σ_x index. Rows and columns are
///    both regrouped to `4a + k`, which turns it into the block form
///    `[[0, K], [K, 0]]`.
/// 2. In the lower block (rows 4–7) the top two and bottom two rows of `K`
///    are exchanged, giving `[[0, K], [P K, 0]]` with `P` swapping rows
///    `{0, 1} ↔ {2, 3}`.
pub fn g8_from_tensor() -> Result<CoinSpec, CoinError> {
    let hi = complex_hadamard_coin().matrix;
    let k = hi.kron(&hi);
    let tensor = k.kron(&pauli_x_coin().matrix);

    // grouped index 4a + k  <-  interleaved index 2k + a
    let regroup: Vec<usize> = (0..8).map(|g| 2 * (g % 4) + g / 4).collect();
    let blocked = tensor.permute_rows(&regroup).permute_cols(&regroup);
    let swap_lower: Vec<usize> = vec![0, 1, 2, 3, 6, 7, 4, 5];
    let built = blocked.permute_rows(&swap_lower);

    let printed = g8_coin().matrix;
    let mut report = String::new();
    for r in 0..8 {
        for col in 0..8 {
            let d = (built[(r, col)] - printed[(r, col)]).norm();
            if d > 1e-15 {
                report.push_str(&format!(
                    "  ({r},{col}): built {} vs printed {} (|diff| {d:e})\n",
                    built[(r, col)],
                    printed[(r, col)]
                ));
            }
        }
    }
    if !report.is_empty() {
        return Err(CoinError::ConstructionMismatch(report));
    }
    Ok(CoinSpec::known("G8_tensor", built, 0.0))
}

/// Hadamard expressed in the `[left, right]` slot basis of a flip-flop path.
///
/// With the flip-flop shift, the amplitude that moved left arrives on the
/// right-hand slot, so coin state `|0⟩` lives on slot 1 before the coin and
/// must leave through slot 0. That makes the slot-basis matrix `H · σ_x`;
/// a line built from it reproduces the textbook moving-shift Hadamard walk.
pub fn hadamard_flipflop_coin() -> CoinSpec {
    let h = FRAC_1_SQRT_2;
    CoinSpec::known("HAD_FF", real_matrix(&[&[h, h], &[-h, h]]), 0.0)
}

/// True iff `max |U†U − I| ≤ tol` for the coin including its phase.
pub fn check_unitary(coin: &CoinSpec, tol: f64) -> bool {
    coin.effective_matrix().unitarity_defect() <= tol
}

/// Resolves one of the built-in coin labels.
///
/// Recognised: `HAD`, `HAD_FF`, `HI`, `SX`, `G<d>`, `G4_phased`,
/// `G<d>_phase:<φ>`, `G8`, `G8_phased`, `G8_tensor`, `BIAS:<δ>`,
/// `BIAS:<δ>:<θ>`.
pub fn resolve_label(label: &str) -> Result<CoinSpec, CoinError> {
    let unknown = || CoinError::UnknownLabel(label.to_string());
    match label {
        "HAD" => return Ok(hadamard_coin()),
        "HAD_FF" => return Ok(hadamard_flipflop_coin()),
        "HI" => return Ok(complex_hadamard_coin()),
        "SX" => return Ok(pauli_x_coin()),
        "G8" => return Ok(g8_coin()),
        "G8_phased" => return Ok(g8_coin().with_phase("G8_phased", WIRE_PHASE)),
        "G8_tensor" => return g8_from_tensor(),
        "G4_phased" => return Ok(wire_coin()),
        _ => {}
    }
    if let Some(rest) = label.strip_prefix("BIAS:") {
        let mut parts = rest.split(':');
        let delta: f64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(unknown)?;
        let theta: f64 = match parts.next() {
            Some(s) => s.parse().map_err(|_| unknown())?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(unknown());
        }
        return phased_bias_coin(delta, theta);
    }
    if let Some(rest) = label.strip_prefix('G') {
        let (deg, phi) = match rest.split_once("_phase:") {
            Some((d, p)) => (d, p.parse::<f64>().map_err(|_| unknown())?),
            None => (rest, 0.0),
        };
        let d: usize = deg.parse().map_err(|_| unknown())?;
        return phased_grover_coin(d, phi);
    }
    Err(unknown())
}
