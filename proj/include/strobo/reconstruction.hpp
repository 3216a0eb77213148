#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strobo/algebra.hpp"
#include "strobo/observability.hpp"

namespace strobo {

/// Unit-trace positive semidefinite Hermitian operator.
/// Tolerances: |trace - 1| <= 1e-12, eigenvalues >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(HermitianOperator op);

    /// Two-level state (I + x sigma_x + y sigma_y + z sigma_z)/2; requires
    /// x^2 + y^2 + z^2 <= 1.
    static DensityMatrix from_bloch(double x, double y, double z);

    int dim() const { return op_.dim(); }
    const ComplexMatrix& matrix() const { return op_.matrix(); }
    const HermitianOperator& op() const { return op_; }

    /// Expectation values (Tr(sigma_x rho), Tr(sigma_y rho), Tr(sigma_z rho));
    /// two-level states only.
    Eigen::Vector3d bloch() const;

private:
    HermitianOperator op_;
};

/// Mean values m_i(t_j) = Tr(Q_i rho(t_j)), possibly with additive Gaussian
/// noise of width noise_sigma (0 means exact).
struct MeasurementRecord {
    ObservableSet observables;
    std::vector<double> times;
    RealMatrix values; // r x p, row per observable
    double noise_sigma = 0.0;
};

enum class ReconstructionMethod { AlphaPipeline, DirectStacked, DephasingClosedForm };

std::string to_string(ReconstructionMethod method);
ReconstructionMethod method_from_string(const std::string& name);

struct ReconstructionResult {
    DensityMatrix rho0;            // physical estimate
    HermitianOperator raw_estimate; // pre-projection solution
    double residual;                // record-space misfit of the raw estimate
    double condition;               // solver conditioning
    ReconstructionMethod method;
};

/// Forward simulation: rho(t_j) = unvec(exp(L t_j) vec(rho0)), then
/// m_i(t_j) = Tr(Q_i rho(t_j)) plus seeded Gaussian noise.
MeasurementRecord simulate_measurements(const Superoperator& l,
                                        const DensityMatrix& rho0,
                                        const ObservableSet& qs,
                                        const std::vector<double>& times,
                                        double noise_sigma = 0.0,
                                        std::uint64_t seed = 0);

/// Paper-faithful pipeline: per observable, solve [alpha_k(t_j)] c = m_i for
/// the projections c_k = <(L*)^k Q_i | rho(0)>, then assemble rho(0) from all
/// projections plus the unit-trace constraint by least squares. Requires a
/// reconstructible observable set and a valid grid of exactly mu instants.
ReconstructionResult reconstruct_alpha(const Superoperator& l,
                                       const MeasurementRecord& record,
                                       double tol_rank = kRankRelTol,
                                       double tol_det = kDetRelTol);

/// Independent route: every entry m_i(t_j) = <exp(L* t_j) Q_i | rho(0)> is one
/// linear constraint; stack them all (any number of time points) and solve by
/// least squares. Throws MathError when the stacked system is rank deficient.
ReconstructionResult reconstruct_direct(const Superoperator& l,
                                        const MeasurementRecord& record,
                                        double tol_rank = kRankRelTol);

/// Closed-form two-level dephasing reconstruction from measuring sigma_x once
/// and sigma_y + sigma_z twice:
///   s_x = m1(t1) e^{gamma t1}
///   s_y = (m2(t1) - m2(t2)) / (e^{-gamma t1} - e^{-gamma t2})
///   s_z = (m2(t2) e^{-gamma t1} - m2(t1) e^{-gamma t2}) / (e^{-gamma t1} - e^{-gamma t2})
ReconstructionResult dephasing_closed_form(double gamma, double t1, double t2,
                                           double m1_t1, double m2_t1, double m2_t2);

/// Nearest-physical projection: hermitize, clip negative eigenvalues to zero,
/// renormalize the trace. Identity on inputs that already satisfy the
/// DensityMatrix tolerances.
DensityMatrix project_to_physical(const HermitianOperator& raw);

} // namespace strobo
