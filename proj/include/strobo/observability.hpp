#pragma once

#include <cstdint>
#include <vector>

#include "strobo/algebra.hpp"
#include "strobo/generators.hpp"

namespace strobo {

/// Observables Q_1..Q_r to be measured; the identity Q_0 is always implied.
struct ObservableSet {
    int dim;
    std::vector<HermitianOperator> observables;

    ObservableSet(int dim_, std::vector<HermitianOperator> obs);
};

/// The spanning set {Q, L*Q, (L*)^2 Q, ..., (L*)^{mu-1} Q} of the Krylov
/// subspace generated by Q under the Heisenberg generator. Callers rank-reduce.
std::vector<HermitianOperator> krylov_subspace(const Superoperator& l,
                                               const HermitianOperator& q);

/// Rank of the Krylov spanning set: the number of time instants at which
/// measuring Q yields independent projections.
int krylov_dimension(const Superoperator& l, const HermitianOperator& q,
                     double tol_rank = kRankRelTol);

struct ReconstructibilityReport {
    bool ok;
    int achieved_dim;
    int required_dim; // N^2
};

/// Whether {I} united with all Krylov spanning sets fills the N^2-dimensional
/// space of self-adjoint operators, i.e. whether the record determines the
/// state trajectory uniquely.
ReconstructibilityReport is_reconstructible(const Superoperator& l,
                                            const ObservableSet& qs,
                                            double tol_rank = kRankRelTol);

/// Coefficients alpha_0(t)..alpha_{mu-1}(t) of the semigroup expansion
/// exp(L t) = sum_k alpha_k(t) L^k, computed by Hermite (confluent
/// Vandermonde) interpolation of exp(lambda t) at the minimal-polynomial
/// roots. Always (1, 0, ..., 0) at t = 0.
RealVector alpha_at(const Superoperator& l, double t);

/// alpha vectors tabulated on a time grid; values(j, k) = alpha_k(t_j).
struct AlphaCoefficients {
    int mu;
    std::vector<double> times;
    RealMatrix values;
};

AlphaCoefficients alpha_coefficients(const Superoperator& l,
                                     const std::vector<double>& times);

/// Certificate that a grid of mu time instants supports reconstruction.
/// alpha_matrix row j holds the alpha vector at t_j with the highest power
/// first (classical Vandermonde layout): [alpha_{mu-1}(t_j), ..., alpha_0(t_j)].
/// The grid is valid when |det| exceeds tol_det times the product of row norms.
struct TimeGridCertificate {
    std::vector<double> times;
    RealMatrix alpha_matrix;
    double determinant;
    bool valid;
};

TimeGridCertificate validate_time_grid(const Superoperator& l,
                                       const std::vector<double>& times,
                                       double tol_det = kDetRelTol);

/// A verified reconstructible set of exactly eta observables. Candidates are
/// traceless with unit Hilbert-Schmidt norm, preferring sparse combinations
/// of the orthonormal Hermitian basis, then Hermitian parts of eigenvectors
/// of the Heisenberg generator, then a seeded randomized search.
/// Throws MathError if the bounded search fails.
ObservableSet suggest_observables(const Superoperator& l, std::uint64_t seed = 0,
                                  double tol_rank = kRankRelTol);

} // namespace strobo
