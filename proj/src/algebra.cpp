#include "strobo/algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace strobo {

namespace {

const Complex kI(0.0, 1.0);

void require(bool cond, const std::string& msg) {
    if (!cond) throw InvariantError(msg);
}

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

double spectral_radius(const std::vector<Complex>& eigenvalues) {
    double r = 0.0;
    for (const auto& ev : eigenvalues) r = std::max(r, std::abs(ev));
    return r;
}

} // namespace

ComplexMatrix pauli(int i) {
    ComplexMatrix m(2, 2);
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -kI, kI, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw InvariantError("pauli index must be in 0..3");
    }
    return m;
}

ComplexMatrix identity(int n) {
    require(n >= 1, "identity: dimension must be positive");
    return ComplexMatrix::Identity(n, n);
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : mat_(std::move(m)) {
    require(mat_.rows() >= 1 && mat_.rows() == mat_.cols(),
            "HermitianOperator: matrix must be square and nonempty");
    require(all_finite(mat_), "HermitianOperator: entries must be finite");
    const double asym = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol)
        throw InvariantError("HermitianOperator: matrix is not Hermitian (asymmetry " +
                             std::to_string(asym) + ")");
}

HermitianOperator HermitianOperator::hermitized(const ComplexMatrix& m) {
    require(m.rows() == m.cols(), "hermitized: matrix must be square");
    return HermitianOperator(((m + m.adjoint()) / 2.0).eval());
}

HermitianOperator HermitianOperator::zero(int n) {
    return HermitianOperator(ComplexMatrix::Zero(n, n));
}

Superoperator::Superoperator(ComplexMatrix m) : mat_(std::move(m)) {
    require(mat_.rows() >= 1 && mat_.rows() == mat_.cols(),
            "Superoperator: matrix must be square");
    require(all_finite(mat_), "Superoperator: entries must be finite");
    const int n2 = static_cast<int>(mat_.rows());
    hdim_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
    require(hdim_ * hdim_ == n2,
            "Superoperator: side length must be a perfect square (got " +
                std::to_string(n2) + ")");
}

double Superoperator::trace_preservation_defect() const {
    const ComplexVector vec_id = vec(identity(hdim_));
    return (vec_id.adjoint() * mat_).cwiseAbs().maxCoeff();
}

double Superoperator::hermiticity_preservation_defect(int probes,
                                                      std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int p = 0; p < probes; ++p) {
        const ComplexMatrix q = random_hermitian(hdim_, rng);
        const ComplexMatrix out = unvec(mat_ * vec(q));
        worst = std::max(worst, (out - out.adjoint()).cwiseAbs().maxCoeff());
    }
    return worst;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(),
            "hs_inner: dimension mismatch");
    return (a.adjoint() * b).trace();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

ComplexVector vec(const ComplexMatrix& a) {
    ComplexVector v(a.size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) v(k++) = a(i, j);
    return v;
}

ComplexMatrix unvec(const ComplexVector& v) {
    const auto len = v.size();
    const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(len))));
    if (n * n != len)
        throw InvariantError("unvec: length " + std::to_string(len) +
                             " is not a perfect square");
    ComplexMatrix m(n, n);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = v(k++);
    return m;
}

Superoperator sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& c) {
    require(a.rows() == a.cols() && c.rows() == c.cols(),
            "sandwich_superop: factors must be square");
    require(a.rows() == c.rows(), "sandwich_superop: dimension mismatch");
    return Superoperator(kron(c.transpose(), a));
}

ComplexMatrix matrix_exp(const ComplexMatrix& m, double t) {
    require(m.rows() == m.cols(), "matrix_exp: matrix must be square");
    require(all_finite(m), "matrix_exp: entries must be finite");
    require(std::isfinite(t), "matrix_exp: time must be finite");
    const auto n = m.rows();
    if (t == 0.0 || m.cwiseAbs().maxCoeff() == 0.0)
        return ComplexMatrix::Identity(n, n);

    const ComplexMatrix a = m * t;

    // Diagonalizable route: exact for every generator in the built-in models.
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
    if (es.info() == Eigen::Success) {
        const ComplexMatrix& v = es.eigenvectors();
        Eigen::JacobiSVD<ComplexMatrix> svd(v);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        if (smin > 0.0 && smax / smin < 1e6) {
            ComplexVector phases = es.eigenvalues().array().exp();
            ComplexMatrix result = v * phases.asDiagonal() * v.inverse();
            if (all_finite(result)) return result;
            throw MathError("matrix_exp: overflow for t * spectral radius = " +
                            std::to_string(t * es.eigenvalues().cwiseAbs().maxCoeff()));
        }
    }

    // Defective or ill-conditioned eigenbasis: scaling-and-squaring Pade.
    ComplexMatrix result = a.exp();
    if (!all_finite(result))
        throw MathError("matrix_exp: overflow in scaling-and-squaring");
    return result;
}

std::vector<EigenCluster> eig_clustered(const ComplexMatrix& m,
                                        std::optional<double> tol_cluster,
                                        double tol_rank) {
    require(m.rows() == m.cols(), "eig_clustered: matrix must be square");
    const int n = static_cast<int>(m.rows());

    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw MathError("eig_clustered: eigenvalue solver failed to converge");

    std::vector<Complex> evs(es.eigenvalues().data(), es.eigenvalues().data() + n);
    double tol = tol_cluster ? *tol_cluster
                             : kClusterRelTol * std::max(1.0, spectral_radius(evs));
    require(tol > 0.0, "eig_clustered: tol_cluster must be positive");

    // Deterministic order before greedy complete-linkage grouping.
    std::sort(evs.begin(), evs.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });

    std::vector<std::vector<Complex>> groups;
    for (const auto& ev : evs) {
        bool placed = false;
        for (auto& g : groups) {
            bool fits = true;
            for (const auto& member : g)
                if (std::abs(member - ev) > tol) { fits = false; break; }
            if (fits) {
                g.push_back(ev);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({ev});
    }

    std::vector<EigenCluster> clusters;
    clusters.reserve(groups.size());
    for (const auto& g : groups) {
        Complex centroid(0, 0);
        for (const auto& ev : g) centroid += ev;
        centroid /= static_cast<double>(g.size());
        const ComplexMatrix shifted = m - centroid * ComplexMatrix::Identity(n, n);
        const int geo = n - numerical_rank(shifted, tol_rank);
        clusters.push_back({centroid, static_cast<int>(g.size()), geo});
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const EigenCluster& a, const EigenCluster& b) {
                  if (a.eigenvalue.real() != b.eigenvalue.real())
                      return a.eigenvalue.real() > b.eigenvalue.real();
                  return a.eigenvalue.imag() < b.eigenvalue.imag();
              });
    return clusters;
}

int numerical_rank(const ComplexMatrix& columns, double tol_rank) {
    if (columns.size() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(columns);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (smax == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol_rank * smax) ++rank;
    return rank;
}

int numerical_rank(const std::vector<ComplexVector>& vectors, double tol_rank) {
    require(!vectors.empty(), "numerical_rank: empty vector list");
    const auto len = vectors.front().size();
    ComplexMatrix cols(len, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        require(vectors[i].size() == len, "numerical_rank: vectors of unequal length");
        cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return numerical_rank(cols, tol_rank);
}

MinimalPolynomial minimal_polynomial(const ComplexMatrix& m, double tol_rank) {
    require(m.rows() == m.cols(), "minimal_polynomial: matrix must be square");
    const int n = static_cast<int>(m.rows());

    // Vectorized powers I, m, m^2, ... as columns; columns are normalized for
    // the rank test so that large powers cannot mask small ones.
    std::vector<ComplexVector> powers;
    std::vector<double> norms;
    ComplexMatrix pk = ComplexMatrix::Identity(n, n);
    for (int k = 0; k <= n; ++k) {
        powers.push_back(vec(pk));
        norms.push_back(powers.back().norm());
        if (k < n) pk = (pk * m).eval();
    }

    for (int mu = 1; mu <= n; ++mu) {
        ComplexMatrix cols(static_cast<Eigen::Index>(n) * n, mu + 1);
        for (int k = 0; k <= mu; ++k)
            cols.col(k) = norms[k] > 0 ? (powers[k] / norms[k]).eval() : powers[k];
        if (numerical_rank(cols, tol_rank) < mu + 1) {
            // m^mu = -(c_0 I + ... + c_{mu-1} m^{mu-1}), solved by least squares.
            ComplexMatrix a(static_cast<Eigen::Index>(n) * n, mu);
            for (int k = 0; k < mu; ++k) a.col(k) = powers[k];
            ComplexVector c =
                a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-powers[mu]);
            std::vector<Complex> coeffs(mu + 1);
            for (int k = 0; k < mu; ++k) coeffs[k] = c(k);
            coeffs[mu] = Complex(1.0, 0.0);
            return MinimalPolynomial{mu, std::move(coeffs)};
        }
    }
    throw MathError("minimal_polynomial: no annihilating polynomial up to degree n found");
}

double polynomial_residual(const MinimalPolynomial& p, const ComplexMatrix& m) {
    const auto n = m.rows();
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    ComplexMatrix pk = ComplexMatrix::Identity(n, n);
    for (int k = 0; k <= p.degree; ++k) {
        acc += p.coefficients[static_cast<std::size_t>(k)] * pk;
        if (k < p.degree) pk = (pk * m).eval();
    }
    return acc.cwiseAbs().maxCoeff();
}

HermitianBasis hermitian_basis(int n) {
    require(n >= 2, "hermitian_basis: dimension must be at least 2");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<HermitianOperator> elems;
    elems.reserve(static_cast<std::size_t>(n) * n);

    elems.push_back(HermitianOperator(
        (ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n))).eval()));

    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            ComplexMatrix sym = ComplexMatrix::Zero(n, n);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            elems.push_back(HermitianOperator(std::move(sym)));

            ComplexMatrix asym = ComplexMatrix::Zero(n, n);
            asym(j, k) = Complex(0, -inv_sqrt2);
            asym(k, j) = Complex(0, inv_sqrt2);
            elems.push_back(HermitianOperator(std::move(asym)));
        }
    }
    for (int l = 1; l < n; ++l) {
        ComplexMatrix diag = ComplexMatrix::Zero(n, n);
        const double scale = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) diag(j, j) = scale;
        diag(l, l) = -scale * static_cast<double>(l);
        elems.push_back(HermitianOperator(std::move(diag)));
    }
    return HermitianBasis{n, std::move(elems)};
}

RealVector to_coords(const HermitianOperator& q, const HermitianBasis& basis) {
    require(q.dim() == basis.dim, "to_coords: dimension mismatch");
    RealVector v(static_cast<Eigen::Index>(basis.elements.size()));
    for (std::size_t a = 0; a < basis.elements.size(); ++a)
        v(static_cast<Eigen::Index>(a)) =
            hs_inner(basis.elements[a].matrix(), q.matrix()).real();
    return v;
}

HermitianOperator from_coords(const RealVector& v, const HermitianBasis& basis) {
    require(v.size() == static_cast<Eigen::Index>(basis.elements.size()),
            "from_coords: coordinate count mismatch");
    ComplexMatrix acc = ComplexMatrix::Zero(basis.dim, basis.dim);
    for (std::size_t a = 0; a < basis.elements.size(); ++a)
        acc += v(static_cast<Eigen::Index>(a)) * basis.elements[a].matrix();
    return HermitianOperator::hermitized(acc);
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return (g + g.adjoint()) / 2.0;
}

ComplexMatrix random_density(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return (rho + rho.adjoint()) / 2.0;
}

} // namespace strobo
