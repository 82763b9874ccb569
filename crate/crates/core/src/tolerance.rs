//! Numerical tolerances shared by every operation in the crate.

/// Tolerance record. Every validation and comparison in the library reads
/// its threshold from here; [`Tolerances::DEFAULT`] holds the stock values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum entrywise |A - A^H| accepted for a density matrix.
    pub hermitian: f64,
    /// Accepted |Tr rho - 1| before renormalization.
    pub trace: f64,
    /// Eigenvalues at or above `-psd_floor` are clipped to zero; below it the
    /// matrix is rejected.
    pub psd_floor: f64,
    /// Negative eigenvalues smaller in magnitude than this are clipped in the
    /// cached spectrum only; the stored matrix is left untouched.
    pub psd_rebuild: f64,
    /// Cached eigenvalues at or below this count as exact zeros in matrix
    /// functions, so eigensolver noise does not leak into square roots.
    pub spectral_floor: f64,
    /// Pure-state normalization.
    pub norm: f64,
    /// Operator identities (unitarity, Kraus completeness, basis orthonormality).
    pub operator: f64,
    /// Largest imaginary part tolerated in a trace that must be real.
    pub imaginary: f64,
    /// Out-of-range excess tolerated before a distance is clamped into [0, 1].
    pub clamp: f64,
    /// Bloch vector length excess.
    pub bloch: f64,
    /// Eigenvalue sum cutoff in the quantum Fisher information.
    pub qfi_cutoff: f64,
    /// Minimum spectral gap of a generator.
    pub spectral_gap: f64,
    /// Marginal eigenvalues closer than this are treated as degenerate.
    pub degeneracy: f64,
    /// Schmidt coefficients at or below this are dropped.
    pub schmidt_cutoff: f64,
    /// Outcomes of a selective channel with lower probability are dropped.
    pub outcome_probability: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        trace: 1e-8,
        psd_floor: 1e-10,
        psd_rebuild: 1e-14,
        spectral_floor: 1e-14,
        norm: 1e-12,
        operator: 1e-10,
        imaginary: 1e-10,
        clamp: 1e-8,
        bloch: 1e-10,
        qfi_cutoff: 1e-12,
        spectral_gap: 1e-8,
        degeneracy: 1e-8,
        schmidt_cutoff: 1e-14,
        outcome_probability: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
