#include "strobo/observability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace strobo {

namespace {

const Complex kImag(0.0, 1.0);

/// Minimal-polynomial roots with multiplicities (largest Jordan block per
/// cluster), found by rank stabilization of powers of m - lambda I.
struct InterpolationNodes {
    std::vector<Complex> roots;
    std::vector<int> multiplicities;
    int mu = 0;
};

InterpolationNodes minimal_poly_nodes(const ComplexMatrix& m, double tol_rank) {
    const int n = static_cast<int>(m.rows());
    InterpolationNodes nodes;
    for (const auto& cluster : eig_clustered(m, {}, tol_rank)) {
        ComplexMatrix shifted = m - cluster.eigenvalue * ComplexMatrix::Identity(n, n);
        const double scale = shifted.norm();
        if (scale > 0.0) shifted /= scale;
        int index = 1;
        int rank_prev = numerical_rank(shifted, tol_rank);
        ComplexMatrix power = shifted;
        while (index < cluster.algebraic) {
            power = (power * shifted).eval();
            const double pscale = power.norm();
            if (pscale > 0.0) power /= pscale;
            const int rank_next = numerical_rank(power, tol_rank);
            if (rank_next == rank_prev) break;
            rank_prev = rank_next;
            ++index;
        }
        nodes.roots.push_back(cluster.eigenvalue);
        nodes.multiplicities.push_back(index);
        nodes.mu += index;
    }

    const int mu_rank = minimal_polynomial(m, tol_rank).degree;
    if (mu_rank != nodes.mu) {
        std::ostringstream msg;
        msg << "inconsistent spectral structure near the clustering tolerance: "
            << "minimal polynomial degree " << mu_rank << " vs " << nodes.mu
            << " from clustered roots; adjust the cluster tolerance";
        throw MathError(msg.str());
    }
    return nodes;
}

/// Hermite interpolation: find p of degree < mu with p^(j)(lambda_c) matching
/// the j-th derivative of exp(lambda t) for every root, every j below its
/// multiplicity. The coefficient matrix depends only on the roots, so it is
/// factored once and reused across times.
class AlphaSolver {
public:
    AlphaSolver(const Superoperator& l, double tol_rank)
        : nodes_(minimal_poly_nodes(l.matrix(), tol_rank)) {
        const int mu = nodes_.mu;
        ComplexMatrix a(mu, mu);
        int row = 0;
        for (std::size_t c = 0; c < nodes_.roots.size(); ++c) {
            const Complex lambda = nodes_.roots[c];
            for (int j = 0; j < nodes_.multiplicities[c]; ++j, ++row) {
                for (int k = 0; k < mu; ++k) {
                    if (k < j) {
                        a(row, k) = 0.0;
                        continue;
                    }
                    double fall = 1.0;
                    for (int i = 0; i < j; ++i) fall *= static_cast<double>(k - i);
                    a(row, k) = fall * std::pow(lambda, k - j);
                }
            }
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(a);
        const auto& sv = svd.singularValues();
        const double smin = sv(sv.size() - 1);
        condition_ = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
        if (!(condition_ < 1e14)) {
            std::ostringstream msg;
            msg << "alpha coefficients: interpolation system is numerically singular "
                << "(condition estimate " << condition_ << ")";
            throw MathError(msg.str());
        }
        lu_.compute(a);
    }

    int mu() const { return nodes_.mu; }
    double condition() const { return condition_; }

    RealVector solve(double t) const {
        const int mu = nodes_.mu;
        if (t == 0.0) {
            RealVector e0 = RealVector::Zero(mu);
            e0(0) = 1.0;
            return e0;
        }
        ComplexVector rhs(mu);
        int row = 0;
        for (std::size_t c = 0; c < nodes_.roots.size(); ++c) {
            const Complex expval = std::exp(nodes_.roots[c] * t);
            for (int j = 0; j < nodes_.multiplicities[c]; ++j, ++row)
                rhs(row) = std::pow(t, j) * expval;
        }
        const ComplexVector alpha = lu_.solve(rhs);
        // Hermiticity preservation makes the minimal polynomial real, so the
        // imaginary parts are roundoff.
        return alpha.real();
    }

private:
    InterpolationNodes nodes_;
    Eigen::PartialPivLU<ComplexMatrix> lu_;
    double condition_ = 0.0;
};

} // namespace

ObservableSet::ObservableSet(int dim_, std::vector<HermitianOperator> obs)
    : dim(dim_), observables(std::move(obs)) {
    if (observables.empty())
        throw InvariantError("ObservableSet: at least one observable required");
    for (const auto& q : observables)
        if (q.dim() != dim)
            throw InvariantError("ObservableSet: observable dimension mismatch");
}

std::vector<HermitianOperator> krylov_subspace(const Superoperator& l,
                                               const HermitianOperator& q) {
    if (q.dim() != l.hilbert_dim())
        throw InvariantError("krylov_subspace: dimension mismatch");
    const int mu = minimal_polynomial(l.matrix()).degree;
    const ComplexMatrix heisenberg = l.matrix().adjoint();

    std::vector<HermitianOperator> ops;
    ops.reserve(static_cast<std::size_t>(mu));
    ops.push_back(q);
    ComplexVector current = vec(q.matrix());
    for (int k = 1; k < mu; ++k) {
        current = (heisenberg * current).eval();
        ops.push_back(HermitianOperator::hermitized(unvec(current)));
        current = vec(ops.back().matrix());
    }
    return ops;
}

int krylov_dimension(const Superoperator& l, const HermitianOperator& q,
                     double tol_rank) {
    const auto ops = krylov_subspace(l, q);
    std::vector<ComplexVector> vecs;
    vecs.reserve(ops.size());
    for (const auto& op : ops) vecs.push_back(vec(op.matrix()));
    return numerical_rank(vecs, tol_rank);
}

ReconstructibilityReport is_reconstructible(const Superoperator& l,
                                            const ObservableSet& qs,
                                            double tol_rank) {
    const int n = l.hilbert_dim();
    if (qs.dim != n) throw InvariantError("is_reconstructible: dimension mismatch");
    const int n2 = n * n;

    std::vector<ComplexVector> vecs;
    vecs.push_back(vec(identity(n)));
    for (const auto& q : qs.observables)
        for (const auto& op : krylov_subspace(l, q)) vecs.push_back(vec(op.matrix()));

    const int achieved = numerical_rank(vecs, tol_rank);
    return {achieved == n2, achieved, n2};
}

RealVector alpha_at(const Superoperator& l, double t) {
    if (!std::isfinite(t)) throw InvariantError("alpha_at: time must be finite");
    return AlphaSolver(l, kRankRelTol).solve(t);
}

AlphaCoefficients alpha_coefficients(const Superoperator& l,
                                     const std::vector<double>& times) {
    AlphaSolver solver(l, kRankRelTol);
    const int mu = solver.mu();
    RealMatrix values(static_cast<Eigen::Index>(times.size()), mu);
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (!std::isfinite(times[j]))
            throw InvariantError("alpha_coefficients: times must be finite");
        values.row(static_cast<Eigen::Index>(j)) = solver.solve(times[j]).transpose();
    }
    return AlphaCoefficients{mu, times, std::move(values)};
}

TimeGridCertificate validate_time_grid(const Superoperator& l,
                                       const std::vector<double>& times,
                                       double tol_det) {
    AlphaSolver solver(l, kRankRelTol);
    const int mu = solver.mu();
    if (static_cast<int>(times.size()) != mu)
        throw ParseError("validate_time_grid: exactly " + std::to_string(mu) +
                         " time instants required, got " + std::to_string(times.size()));

    RealMatrix am(mu, mu);
    for (int j = 0; j < mu; ++j) {
        if (!std::isfinite(times[static_cast<std::size_t>(j)]))
            throw InvariantError("validate_time_grid: times must be finite");
        const RealVector alpha = solver.solve(times[static_cast<std::size_t>(j)]);
        for (int k = 0; k < mu; ++k) am(j, k) = alpha(mu - 1 - k); // highest power first
    }

    const double det = am.determinant();
    double scale = 1.0;
    for (int j = 0; j < mu; ++j) scale *= am.row(j).norm();
    const bool valid = scale > 0.0 && std::abs(det) > tol_det * scale;
    return TimeGridCertificate{times, std::move(am), det, valid};
}

ObservableSet suggest_observables(const Superoperator& l, std::uint64_t seed,
                                  double tol_rank) {
    const int n = l.hilbert_dim();
    const int n2 = n * n;
    const auto report = spectrum_report(l, {}, tol_rank);
    const int eta = report.eta;
    const int mu = report.mu;
    const auto basis = hermitian_basis(n);
    const ComplexMatrix heisenberg = l.matrix().adjoint();

    auto push_normalized = [&](std::vector<ComplexMatrix>& pool, ComplexMatrix cand) {
        cand -= (cand.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
        const double norm = std::sqrt(hs_inner(cand, cand).real());
        if (norm > 1e-8) pool.push_back(cand / norm);
    };

    // Deterministic candidate pool, sparsest first.
    std::vector<ComplexMatrix> pool;
    for (int a = 1; a < n2; ++a) pool.push_back(basis.elements[a].matrix());
    for (int a = 1; a < n2; ++a)
        for (int b = a + 1; b < n2; ++b)
            push_normalized(pool,
                            basis.elements[a].matrix() + basis.elements[b].matrix());
    {
        ComplexMatrix total = ComplexMatrix::Zero(n, n);
        for (int a = 1; a < n2; ++a) total += basis.elements[a].matrix();
        push_normalized(pool, std::move(total));
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> es(heisenberg);
    if (es.info() == Eigen::Success) {
        for (Eigen::Index c = 0; c < es.eigenvectors().cols(); ++c) {
            const ComplexMatrix h = unvec(es.eigenvectors().col(c));
            push_normalized(pool, (h + h.adjoint()) / 2.0);
            push_normalized(pool, (h - h.adjoint()) / (2.0 * kImag));
        }
    }

    auto krylov_vecs = [&](const ComplexMatrix& q) {
        std::vector<ComplexVector> vecs;
        ComplexVector current = vec(q);
        vecs.push_back(current);
        for (int k = 1; k < mu; ++k) {
            current = (heisenberg * current).eval();
            vecs.push_back(current);
        }
        return vecs;
    };

    // Greedy: each pick maximizes the growth of span{I} + chosen Krylov sets.
    std::vector<ComplexVector> span_vecs{vec(identity(n))};
    std::vector<ComplexMatrix> chosen;
    std::vector<bool> used(pool.size(), false);
    int rank = 1;
    while (static_cast<int>(chosen.size()) < eta) {
        int best_idx = -1;
        int best_rank = rank;
        for (std::size_t idx = 0; idx < pool.size(); ++idx) {
            if (used[idx]) continue;
            std::vector<ComplexVector> trial = span_vecs;
            for (auto& v : krylov_vecs(pool[idx])) trial.push_back(std::move(v));
            const int r = numerical_rank(trial, tol_rank);
            if (r > best_rank) {
                best_rank = r;
                best_idx = static_cast<int>(idx);
            }
            if (best_rank == n2) break;
        }
        if (best_idx < 0) break;
        used[static_cast<std::size_t>(best_idx)] = true;
        chosen.push_back(pool[static_cast<std::size_t>(best_idx)]);
        for (auto& v : krylov_vecs(chosen.back())) span_vecs.push_back(std::move(v));
        rank = best_rank;
        if (rank == n2) break;
    }
    // Span can fill before eta picks only when clustering over-merged the
    // spectrum; pad with unused sparse candidates to keep the contracted size.
    for (std::size_t idx = 0; idx < pool.size() && static_cast<int>(chosen.size()) < eta;
         ++idx) {
        if (!used[idx]) {
            used[idx] = true;
            chosen.push_back(pool[idx]);
        }
    }

    if (rank == n2 && static_cast<int>(chosen.size()) == eta) {
        std::vector<HermitianOperator> ops;
        for (const auto& c : chosen) ops.push_back(HermitianOperator::hermitized(c));
        ObservableSet result(n, std::move(ops));
        if (is_reconstructible(l, result, tol_rank).ok) return result;
    }

    // Randomized fallback, seeded for reproducibility.
    std::mt19937_64 rng(seed != 0 ? seed : 0xD1CEull);
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<HermitianOperator> ops;
        for (int i = 0; i < eta; ++i) {
            ComplexMatrix h = random_hermitian(n, rng);
            h -= (h.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
            const double norm = std::sqrt(hs_inner(h, h).real());
            if (norm <= 1e-12) { --i; continue; }
            ops.push_back(HermitianOperator::hermitized(h / norm));
        }
        ObservableSet candidate(n, std::move(ops));
        if (is_reconstructible(l, candidate, tol_rank).ok) return candidate;
    }
    throw MathError("suggest_observables: no reconstructible set of " +
                    std::to_string(eta) + " observables found after bounded search");
}

} // namespace strobo
