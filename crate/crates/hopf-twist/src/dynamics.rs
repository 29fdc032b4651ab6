//! Classical and quantum Poisson brackets on the deformed phase space,
//! Hamilton equations in bracket and commutator form, and a numeric
//! trajectory integrator for the resulting flows.

use crate::calculus::{self, d_elem, wedge, Partial};
use crate::planck::{comm_mul, commutator, normal_mul, PlanckElem};
use crate::scalar::{ParamScalar, ScalarError};
use num::complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("trajectory left the floating-point range at step {0}")]
    NonFinite(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Calculus(#[from] calculus::CalculusError),
}

/// Bivector data for the quantum bracket: an arbitrary Laurent polynomial
/// `π(g)`; the default `(1/G)(g⁻¹ - 1)` deforms the classical structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonData {
    pub pi_of_g: PlanckElem,
}

impl PoissonData {
    pub fn new(pi_of_g: PlanckElem) -> Result<Self, DynamicsError> {
        if pi_of_g.x_degree() > 0 || pi_of_g.p_degree() > 0 {
            return Err(DynamicsError::BadInput(
                "π(g) must be a Laurent polynomial in g alone".into(),
            ));
        }
        Ok(PoissonData { pi_of_g })
    }
}

impl Default for PoissonData {
    fn default() -> Self {
        // (1/G)(g⁻¹ - 1)
        let mut pi = PlanckElem::zero();
        pi.add_term((0, -1, 0), ParamScalar::g_pow(-1));
        pi.add_term((0, 0, 0), ParamScalar::g_pow(-1).neg());
        PoissonData { pi_of_g: pi }
    }
}

/// Classical Poisson bracket on the commutative coordinate ring:
/// `{a,b} = (g - 1)(∂_x a ∂_p b - ∂_x b ∂_p a)`, with
/// `∂_x = formal x-derivative - (1/G) g∂_g` (reading `g = e^{-x/G}`).
pub fn classical_bracket(a: &PlanckElem, b: &PlanckElem) -> PlanckElem {
    let ax = calculus::x_coordinate_derivative(a);
    let bx = calculus::x_coordinate_derivative(b);
    let ap = calculus::p_formal_derivative(a);
    let bp = calculus::p_formal_derivative(b);
    let inner = comm_mul(&ax, &bp).sub(&comm_mul(&bx, &ap));
    let gm1 = PlanckElem::g(1).sub(&PlanckElem::one());
    comm_mul(&gm1, &inner)
}

/// Quantum Poisson bracket for the bivector with coefficient `π(g)`:
///
/// ```text
/// {a,b} = π(g)(a_ξ b_η - a_η b_ξ
///          + iA(a_η b_η + (a_ξ)_η b_η - (a_η)_ξ b_η)
///          + (iA)² (a_η)_η b_η)
/// ```
///
/// with all products taken left-to-right in the deformed algebra.
pub fn quantum_bracket(
    a: &PlanckElem,
    b: &PlanckElem,
    data: &PoissonData,
) -> Result<PlanckElem, DynamicsError> {
    let a_xi = calculus::partial(a, Partial::Xi)?;
    let a_eta = calculus::partial(a, Partial::Eta)?;
    let b_xi = calculus::partial(b, Partial::Xi)?;
    let b_eta = calculus::partial(b, Partial::Eta)?;
    let a_xi_eta = calculus::partial(&a_xi, Partial::Eta)?;
    let a_eta_xi = calculus::partial(&a_eta, Partial::Xi)?;
    let a_eta_eta = calculus::partial(&a_eta, Partial::Eta)?;
    let ia = ParamScalar::i_a();
    let ia2 = ia.mul(&ia);

    let mut inner = normal_mul(&a_xi, &b_eta);
    inner = inner.sub(&normal_mul(&a_eta, &b_xi));
    let mut order_a = normal_mul(&a_eta, &b_eta);
    order_a = order_a.add(&normal_mul(&a_xi_eta, &b_eta));
    order_a = order_a.sub(&normal_mul(&a_eta_xi, &b_eta));
    inner = inner.add(&order_a.scale(&ia));
    inner = inner.add(&normal_mul(&a_eta_eta, &b_eta).scale(&ia2));
    Ok(normal_mul(&data.pi_of_g, &inner))
}

/// Independent oracle for [`quantum_bracket`]: pair the bivector with
/// `da∧db` directly.  The wedge is computed in left-coefficient canonical
/// form `F ξ∧η` and converted to the right-coefficient symbol `f`
/// (`F = f - iA w_f`, solved by the finite Neumann series in descending
/// `p`-degree), then `{a,b} = π(g)·f`.
pub fn pairing_bracket(
    a: &PlanckElem,
    b: &PlanckElem,
    data: &PoissonData,
) -> Result<PlanckElem, DynamicsError> {
    let w = wedge(&d_elem(a), &d_elem(b))?;
    let f_left = w.f_top;
    // f = F + iA w(F) + (iA)² w(w(F)) + ...,  w(X) = η-part of d(X)
    let ia = ParamScalar::i_a();
    let mut f = PlanckElem::zero();
    let mut term = f_left;
    while !term.is_zero() {
        f = f.add(&term);
        term = d_elem(&term).f_eta.scale(&ia);
    }
    Ok(normal_mul(&data.pi_of_g, &f))
}

/// How the equations of motion are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonMode {
    /// Quantum Poisson bracket with the default bivector.
    Poisson,
    /// `(i/ħ)[·, h]` with the exact commutator.
    Commutator,
}

/// Quantum Hamilton equations `(ẋ, ṗ)` for the Hamiltonian symbol `h`.
pub fn hamilton(
    h: &PlanckElem,
    mode: HamiltonMode,
) -> Result<(PlanckElem, PlanckElem), DynamicsError> {
    match mode {
        HamiltonMode::Poisson => {
            let data = PoissonData::default();
            let xdot = quantum_bracket(&PlanckElem::x(), h, &data)?;
            let pdot = quantum_bracket(&PlanckElem::p(), h, &data)?;
            Ok((xdot, pdot))
        }
        HamiltonMode::Commutator => {
            // (i/ħ) C = -C/(iħ), exact division
            let cx = commutator(&PlanckElem::x(), h);
            let cp = commutator(&PlanckElem::p(), h);
            let xdot = cx.div_by_i_hbar().map_err(DynamicsError::Scalar)?.neg();
            let pdot = cp.div_by_i_hbar().map_err(DynamicsError::Scalar)?.neg();
            Ok((xdot, pdot))
        }
    }
}

/// Comparison of the bracket-mode `ẋ` for `h = p²/2m` against the printed
/// closed form `(1/2m)(e^{-x/G}-1)(2p - iħ/G)`.
///
/// The bracket machinery produces `(g-1)(2p + iA)/2m`; the sign of the
/// `iA` term depends on an ordering convention the source display leaves
/// implicit, so both values are reported and neither is silently chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotionComparison {
    pub computed: PlanckElem,
    pub printed: PlanckElem,
    pub matches_printed: bool,
    /// The exact difference `computed - printed`.
    pub difference: PlanckElem,
}

pub fn motion_comparison(mass_num: i64, mass_den: i64) -> Result<MotionComparison, DynamicsError> {
    let half_over_m = ParamScalar::from_ratio(mass_den, 2 * mass_num);
    let h = PlanckElem::monomial(half_over_m.clone(), 0, 0, 2);
    let (computed, _) = hamilton(&h, HamiltonMode::Poisson)?;
    // (1/2m)(g-1)(2p - iA)
    let gm1 = PlanckElem::g(1).sub(&PlanckElem::one());
    let mut two_p_minus = PlanckElem::monomial(ParamScalar::from_int(2), 0, 0, 1);
    two_p_minus.add_term((0, 0, 0), ParamScalar::i_a().neg());
    let printed = comm_mul(&gm1, &two_p_minus).scale(&half_over_m);
    let difference = computed.sub(&printed);
    Ok(MotionComparison {
        matches_printed: difference.is_zero(),
        computed,
        printed,
        difference,
    })
}

/// How trajectories are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowMode {
    Poisson,
    Commutator,
    Classical,
}

/// Hamiltonian specification for the integrator: `h = p²/2m + V(x)` with
/// polynomial potential coefficients `v[k] x^k`.
#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    pub mass: f64,
    pub potential: Vec<f64>,
}

impl HamiltonianSpec {
    pub fn to_symbol(&self) -> Result<PlanckElem, DynamicsError> {
        if !(self.mass.is_finite() && self.mass != 0.0) {
            return Err(DynamicsError::BadInput("mass must be finite and nonzero".into()));
        }
        let half_over_m = crate::scalar::GaussQ::from_f64(0.5 / self.mass)
            .ok_or_else(|| DynamicsError::BadInput("mass not representable".into()))?;
        let mut h = PlanckElem::monomial(ParamScalar::constant(half_over_m), 0, 0, 2);
        for (k, v) in self.potential.iter().enumerate() {
            if *v == 0.0 {
                continue;
            }
            let c = crate::scalar::GaussQ::from_f64(*v)
                .ok_or_else(|| DynamicsError::BadInput("potential coefficient not finite".into()))?;
            h.add_term((k as u32, 0, 0), ParamScalar::constant(c));
        }
        Ok(h)
    }
}

/// One sample of a complex phase-space trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub step: usize,
    pub t: f64,
    pub x: Complex64,
    pub p: Complex64,
}

/// Classical RK4 integration of the symbol-level flow obtained by
/// substituting numerics into the Hamilton equations.  Deterministic for
/// fixed inputs; complex-valued (the flows contain `iA` terms).
pub fn integrate(
    spec: &HamiltonianSpec,
    mode: FlowMode,
    x0: Complex64,
    p0: Complex64,
    dt: f64,
    steps: usize,
    a_val: Complex64,
    g_val: f64,
) -> Result<Vec<TrajectoryPoint>, DynamicsError> {
    if steps == 0 {
        return Err(DynamicsError::BadInput("steps must be >= 1".into()));
    }
    if !(dt > 0.0) {
        return Err(DynamicsError::BadInput("dt must be > 0".into()));
    }
    let h = spec.to_symbol()?;
    let (xdot_sym, pdot_sym) = match mode {
        FlowMode::Poisson => hamilton(&h, HamiltonMode::Poisson)?,
        FlowMode::Commutator => hamilton(&h, HamiltonMode::Commutator)?,
        FlowMode::Classical => (
            classical_bracket(&PlanckElem::x(), &h),
            classical_bracket(&PlanckElem::p(), &h),
        ),
    };
    let gv = Complex64::new(g_val, 0.0);
    let field = |x: Complex64, p: Complex64| -> Result<(Complex64, Complex64), DynamicsError> {
        let dx = xdot_sym.eval(x, p, a_val, gv).map_err(DynamicsError::Scalar)?;
        let dp = pdot_sym.eval(x, p, a_val, gv).map_err(DynamicsError::Scalar)?;
        Ok((dx, dp))
    };
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = x0;
    let mut p = p0;
    out.push(TrajectoryPoint { step: 0, t: 0.0, x, p });
    for step in 1..=steps {
        let (k1x, k1p) = field(x, p)?;
        let (k2x, k2p) = field(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)?;
        let (k3x, k3p) = field(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)?;
        let (k4x, k4p) = field(x + dt * k3x, p + dt * k3p)?;
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if !(x.is_finite() && p.is_finite()) {
            return Err(DynamicsError::NonFinite(step));
        }
        out.push(TrajectoryPoint { step, t: step as f64 * dt, x, p });
    }
    Ok(out)
}
