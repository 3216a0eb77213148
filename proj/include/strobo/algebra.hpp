#pragma once

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "strobo/errors.hpp"

namespace strobo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default tolerances. Matrices here are at most 16x16 and benignly
// conditioned, so these are deliberately tight.
inline constexpr double kHermitianTol = 1e-12;       // max-abs asymmetry
inline constexpr double kClusterRelTol = 1e-8;       // x max(1, spectral radius)
inline constexpr double kRankRelTol = 1e-10;         // x largest singular value
inline constexpr double kDetRelTol = 1e-10;          // x product of row norms
inline constexpr double kTracePreservingTol = 1e-10; // max-abs defect

/// Pauli matrix by index: 0 -> identity, 1..3 -> sigma_x, sigma_y, sigma_z.
ComplexMatrix pauli(int i);

/// n x n identity.
ComplexMatrix identity(int n);

/// Self-adjoint N x N operator: an observable or a density-matrix candidate.
/// Construction verifies hermiticity to kHermitianTol (max-abs entry of A - A^dagger).
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix m);

    /// Wrap (m + m^dagger)/2. Absorbs floating-point dust from products that
    /// are Hermitian in exact arithmetic.
    static HermitianOperator hermitized(const ComplexMatrix& m);

    static HermitianOperator zero(int n);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const ComplexMatrix& matrix() const { return mat_; }

private:
    ComplexMatrix mat_;
};

/// N^2 x N^2 matrix acting on column-stacked N x N operators. Carries the
/// evolution generator, its dual, channel superoperators and propagators.
/// Construction only validates shape; trace/hermiticity preservation are
/// checkable predicates because user-supplied generators get reported on,
/// not rejected.
class Superoperator {
public:
    explicit Superoperator(ComplexMatrix m);

    int hilbert_dim() const { return hdim_; }
    const ComplexMatrix& matrix() const { return mat_; }

    /// Max-abs entry of vec(I)^dagger * L; zero iff Tr(L rho) = 0 for all rho.
    double trace_preservation_defect() const;

    /// Max hermiticity defect of unvec(L vec(Q)) over seeded random Hermitian Q.
    double hermiticity_preservation_defect(int probes = 100,
                                           std::uint64_t seed = 0x5eed) const;

private:
    int hdim_;
    ComplexMatrix mat_;
};

/// Hilbert-Schmidt inner product Tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization and its inverse.
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v);

/// The superoperator S = kron(c^T, a) with S vec(B) = vec(a B c) for all B.
Superoperator sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& c);

/// Numerically computed exp(m t). Uses the eigendecomposition when m is
/// diagonalizable with a well-conditioned eigenbasis, otherwise falls back
/// to scaling-and-squaring with a Pade approximant. exp(m * 0) is exactly I.
/// Throws MathError if the result overflows.
ComplexMatrix matrix_exp(const ComplexMatrix& m, double t);

struct EigenCluster {
    Complex eigenvalue; // cluster centroid
    int algebraic;
    int geometric;
};

/// Eigenvalues grouped so that any two members of a cluster differ by at most
/// tol_cluster (complete linkage). Default tolerance is
/// kClusterRelTol * max(1, spectral radius). Clusters are sorted by
/// descending real part, then ascending imaginary part.
std::vector<EigenCluster> eig_clustered(const ComplexMatrix& m,
                                        std::optional<double> tol_cluster = {},
                                        double tol_rank = kRankRelTol);

/// Count of singular values above tol_rank * (largest singular value);
/// zero for all-zero input. Columns of `columns` are the vectors.
int numerical_rank(const ComplexMatrix& columns, double tol_rank = kRankRelTol);
int numerical_rank(const std::vector<ComplexVector>& vectors,
                   double tol_rank = kRankRelTol);

struct MinimalPolynomial {
    int degree;                        // mu
    std::vector<Complex> coefficients; // monic: c[0] + c[1] m + ... + c[mu] m^mu, c[mu] = 1
};

/// Smallest-degree monic polynomial annihilating m, detected by rank growth
/// of the vectorized powers {I, m, m^2, ...}.
MinimalPolynomial minimal_polynomial(const ComplexMatrix& m,
                                     double tol_rank = kRankRelTol);

/// Evaluate a MinimalPolynomial at the matrix; returns max-abs entry of the result.
double polynomial_residual(const MinimalPolynomial& p, const ComplexMatrix& m);

/// Orthonormal basis of the real vector space of Hermitian N x N operators:
/// identity/sqrt(N) first, then generalized Gell-Mann matrices of unit
/// Hilbert-Schmidt norm. For N = 2 this is {I, sigma_x, sigma_y, sigma_z}/sqrt(2).
struct HermitianBasis {
    int dim;
    std::vector<HermitianOperator> elements;
};

HermitianBasis hermitian_basis(int n);

/// Real coordinates of q in the basis; from_coords inverts exactly.
RealVector to_coords(const HermitianOperator& q, const HermitianBasis& basis);
HermitianOperator from_coords(const RealVector& v, const HermitianBasis& basis);

/// Seeded random matrices for property checks and randomized searches.
ComplexMatrix random_hermitian(int n, std::mt19937_64& rng);
/// Normalized random positive semidefinite matrix (Ginibre G G^dagger / trace).
ComplexMatrix random_density(int n, std::mt19937_64& rng);

} // namespace strobo
