#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "strobo/algebra.hpp"
#include "strobo/channels.hpp"

namespace strobo {

struct JumpOperator {
    ComplexMatrix op;
    double rate = 0.0; // units 1/time
};

/// GKSL data: dH/dt contribution -i[H, rho] plus dissipators
/// rate * (V rho V^dagger - {V^dagger V, rho}/2). All built-in models have H = 0.
struct GkslComponents {
    HermitianOperator hamiltonian;
    std::vector<JumpOperator> jumps;
};

/// Assemble the generator matrix
///   L = -i (kron(I, H) - kron(H^T, I))
///       + sum_k rate_k (kron(conj(V_k), V_k)
///                       - kron(I, V_k^dagger V_k)/2 - kron((V_k^dagger V_k)^T, I)/2).
Superoperator gksl_generator(const GkslComponents& components);

/// Closed-form generator of a built-in family; matches gksl_generator on the
/// equivalent jump description to machine precision.
Superoperator model_generator(const KrausFamilySpec& spec);

/// Heisenberg-picture generator: the Hilbert-Schmidt adjoint, realized as the
/// conjugate transpose of the matrix.
Superoperator dual_generator(const Superoperator& l);

/// Spectral structure of a generator: eigenvalue clusters, the index of
/// cyclicity eta (largest geometric multiplicity, which is the minimal number
/// of observables needed for reconstruction), and the minimal polynomial
/// degree mu (the number of time instants needed).
struct SpectrumReport {
    std::vector<EigenCluster> clusters;
    int eta = 0;
    int mu = 0;
    bool degenerate = false; // eta > 1
};

SpectrumReport spectrum_report(const Superoperator& l,
                               std::optional<double> tol_cluster = {},
                               double tol_rank = kRankRelTol);

/// Spectrum reports of the one-parametric family across structure parameters.
std::vector<std::pair<double, SpectrumReport>> parameter_sweep(
    double gamma, const std::vector<double>& a_values,
    std::optional<double> tol_cluster = {}, double tol_rank = kRankRelTol);

} // namespace strobo
