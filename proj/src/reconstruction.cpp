#include "strobo/reconstruction.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace strobo {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;

/// Record-space misfit of an estimate: 2-norm of predicted-minus-measured
/// mean values, with predictions propagated through exp(L t).
double record_misfit(const Superoperator& l, const MeasurementRecord& record,
                     const HermitianOperator& estimate) {
    double sq = 0.0;
    const ComplexVector rho_vec = vec(estimate.matrix());
    for (std::size_t j = 0; j < record.times.size(); ++j) {
        const ComplexMatrix propagator = matrix_exp(l.matrix(), record.times[j]);
        const ComplexMatrix rho_t = unvec(propagator * rho_vec);
        for (std::size_t i = 0; i < record.observables.observables.size(); ++i) {
            const double predicted =
                hs_inner(record.observables.observables[i].matrix(), rho_t).real();
            const double diff =
                predicted - record.values(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j));
            sq += diff * diff;
        }
    }
    return std::sqrt(sq);
}

double condition_of(const RealMatrix& m) {
    Eigen::JacobiSVD<RealMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

void check_record_shape(const Superoperator& l, const MeasurementRecord& record) {
    if (record.observables.dim != l.hilbert_dim())
        throw InvariantError("reconstruct: record dimension does not match the model");
    const auto r = static_cast<Eigen::Index>(record.observables.observables.size());
    const auto p = static_cast<Eigen::Index>(record.times.size());
    if (record.values.rows() != r || record.values.cols() != p)
        throw InvariantError("reconstruct: record value matrix must be " +
                             std::to_string(r) + "x" + std::to_string(p));
    if (!record.values.allFinite())
        throw InvariantError("reconstruct: record values must be finite");
}

ReconstructionResult assemble_result(const Superoperator& l,
                                     const MeasurementRecord& record,
                                     const RealVector& coords,
                                     const HermitianBasis& basis, double condition,
                                     ReconstructionMethod method) {
    HermitianOperator raw = from_coords(coords, basis);
    const double residual = record_misfit(l, record, raw);
    DensityMatrix rho0 = project_to_physical(raw);
    return ReconstructionResult{std::move(rho0), std::move(raw), residual, condition,
                                method};
}

} // namespace

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
    const double trace = op_.matrix().trace().real();
    if (std::abs(trace - 1.0) > kTraceTol)
        throw InvariantError("DensityMatrix: trace " + std::to_string(trace) +
                             " differs from 1 beyond tolerance");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op_.matrix(),
                                                    Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw InvariantError("DensityMatrix: negative eigenvalue " +
                             std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::from_bloch(double x, double y, double z) {
    if (x * x + y * y + z * z > 1.0 + 2.0 * kPsdTol)
        throw InvariantError("from_bloch: Bloch vector lies outside the unit ball");
    ComplexMatrix m =
        0.5 * (pauli(0) + x * pauli(1) + y * pauli(2) + z * pauli(3));
    return DensityMatrix(HermitianOperator(std::move(m)));
}

Eigen::Vector3d DensityMatrix::bloch() const {
    if (dim() != 2)
        throw InvariantError("bloch: defined for two-level states only");
    Eigen::Vector3d s;
    for (int i = 1; i <= 3; ++i)
        s(i - 1) = hs_inner(pauli(i), matrix()).real();
    return s;
}

std::string to_string(ReconstructionMethod method) {
    switch (method) {
        case ReconstructionMethod::AlphaPipeline: return "alpha";
        case ReconstructionMethod::DirectStacked: return "direct";
        case ReconstructionMethod::DephasingClosedForm: return "closed-form";
    }
    throw InvariantError("unknown reconstruction method");
}

ReconstructionMethod method_from_string(const std::string& name) {
    if (name == "alpha") return ReconstructionMethod::AlphaPipeline;
    if (name == "direct") return ReconstructionMethod::DirectStacked;
    if (name == "closed-form" || name == "closed_form")
        return ReconstructionMethod::DephasingClosedForm;
    throw ParseError("unknown method \"" + name +
                     "\"; expected alpha, direct or closed-form");
}

MeasurementRecord simulate_measurements(const Superoperator& l,
                                        const DensityMatrix& rho0,
                                        const ObservableSet& qs,
                                        const std::vector<double>& times,
                                        double noise_sigma, std::uint64_t seed) {
    if (rho0.dim() != l.hilbert_dim() || qs.dim != l.hilbert_dim())
        throw InvariantError("simulate_measurements: dimension mismatch");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw InvariantError("simulate_measurements: noise_sigma must be nonnegative");

    const auto r = static_cast<Eigen::Index>(qs.observables.size());
    const auto p = static_cast<Eigen::Index>(times.size());
    RealMatrix values(r, p);
    const ComplexVector rho_vec = vec(rho0.matrix());
    for (Eigen::Index j = 0; j < p; ++j) {
        const double t = times[static_cast<std::size_t>(j)];
        if (!(t >= 0.0) || !std::isfinite(t))
            throw InvariantError("simulate_measurements: times must be nonnegative");
        const ComplexMatrix rho_t = unvec(matrix_exp(l.matrix(), t) * rho_vec);
        for (Eigen::Index i = 0; i < r; ++i)
            values(i, j) =
                hs_inner(qs.observables[static_cast<std::size_t>(i)].matrix(), rho_t)
                    .real();
    }
    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, noise_sigma);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < p; ++j) values(i, j) += gauss(rng);
    }
    return MeasurementRecord{qs, times, std::move(values), noise_sigma};
}

ReconstructionResult reconstruct_alpha(const Superoperator& l,
                                       const MeasurementRecord& record,
                                       double tol_rank, double tol_det) {
    check_record_shape(l, record);
    const auto& qs = record.observables;

    const auto recon = is_reconstructible(l, qs, tol_rank);
    if (!recon.ok) {
        std::ostringstream msg;
        msg << "observable set is not reconstructible: Krylov subspaces with the "
            << "identity span " << recon.achieved_dim << " of " << recon.required_dim
            << " dimensions";
        throw NotReconstructibleError(msg.str());
    }

    const auto certificate = validate_time_grid(l, record.times, tol_det);
    if (!certificate.valid) {
        std::ostringstream msg;
        msg << "time grid fails the determinant condition: det[alpha_k(t_j)] = "
            << certificate.determinant << " is singular at the working tolerance";
        throw SingularTimeGridError(msg.str());
    }

    const int n = l.hilbert_dim();
    const int n2 = n * n;
    const auto alphas = alpha_coefficients(l, record.times);
    const int mu = alphas.mu;
    const auto r = static_cast<int>(qs.observables.size());

    // Per-observable projections: [alpha_k(t_j)] c_i = m_i row.
    Eigen::JacobiSVD<RealMatrix> alpha_svd(alphas.values,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    RealMatrix projections = alpha_svd.solve(record.values.transpose()); // mu x r
    const double alpha_cond = condition_of(alphas.values);

    // Stack every projection constraint <(L*)^k Q_i | rho(0)> = c_ik plus the
    // unit-trace row for the implicit identity observable.
    const auto basis = hermitian_basis(n);
    RealMatrix stacked(r * mu + 1, n2);
    RealVector rhs(r * mu + 1);
    int row = 0;
    stacked.row(row) = to_coords(HermitianOperator(identity(n)), basis).transpose();
    rhs(row++) = 1.0;
    for (int i = 0; i < r; ++i) {
        const auto krylov = krylov_subspace(l, qs.observables[static_cast<std::size_t>(i)]);
        for (int k = 0; k < mu; ++k) {
            stacked.row(row) = to_coords(krylov[static_cast<std::size_t>(k)], basis)
                                   .transpose();
            rhs(row++) = projections(k, i);
        }
    }

    Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector coords = svd.solve(rhs);
    const double condition = std::max(alpha_cond, condition_of(stacked));
    return assemble_result(l, record, coords, basis, condition,
                           ReconstructionMethod::AlphaPipeline);
}

ReconstructionResult reconstruct_direct(const Superoperator& l,
                                        const MeasurementRecord& record,
                                        double tol_rank) {
    check_record_shape(l, record);
    const auto& qs = record.observables;
    const int n = l.hilbert_dim();
    const int n2 = n * n;
    const auto r = static_cast<int>(qs.observables.size());
    const auto p = static_cast<int>(record.times.size());
    const auto basis = hermitian_basis(n);
    const ComplexMatrix heisenberg = l.matrix().adjoint();

    RealMatrix stacked(r * p + 1, n2);
    RealVector rhs(r * p + 1);
    int row = 0;
    stacked.row(row) = to_coords(HermitianOperator(identity(n)), basis).transpose();
    rhs(row++) = 1.0;
    for (int j = 0; j < p; ++j) {
        const ComplexMatrix heis_prop =
            matrix_exp(heisenberg, record.times[static_cast<std::size_t>(j)]);
        for (int i = 0; i < r; ++i) {
            const ComplexMatrix evolved = unvec(
                heis_prop * vec(qs.observables[static_cast<std::size_t>(i)].matrix()));
            stacked.row(row) =
                to_coords(HermitianOperator::hermitized(evolved), basis).transpose();
            rhs(row++) = record.values(i, j);
        }
    }

    const int rank = numerical_rank(stacked.cast<Complex>().eval(), tol_rank);
    if (rank < n2) {
        std::ostringstream msg;
        msg << "measurement record does not determine the state uniquely (rank "
            << rank << " of " << n2
            << "); the observable set fails the reconstructibility condition or the "
            << "time grid is singular";
        throw MathError(msg.str());
    }

    Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector coords = svd.solve(rhs);
    return assemble_result(l, record, coords, basis, condition_of(stacked),
                           ReconstructionMethod::DirectStacked);
}

ReconstructionResult dephasing_closed_form(double gamma, double t1, double t2,
                                           double m1_t1, double m2_t1, double m2_t2) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw InvariantError("dephasing_closed_form: gamma must be positive");
    if (!(t1 >= 0.0) || !(t2 >= 0.0) || !std::isfinite(t1) || !std::isfinite(t2))
        throw InvariantError("dephasing_closed_form: times must be nonnegative");
    if (t1 == t2)
        throw SingularTimeGridError(
            "dephasing closed form needs two distinct time instants: the "
            "determinant condition fails for t1 = t2");

    const double e1 = std::exp(-gamma * t1);
    const double e2 = std::exp(-gamma * t2);
    const double sx = m1_t1 * std::exp(gamma * t1);
    const double sy = (m2_t1 - m2_t2) / (e1 - e2);
    const double sz = (m2_t2 * e1 - m2_t1 * e2) / (e1 - e2);

    HermitianOperator raw(
        (0.5 * (pauli(0) + sx * pauli(1) + sy * pauli(2) + sz * pauli(3))).eval());

    // Misfit against the three supplied mean values.
    const double r1 = sx * e1 - m1_t1;
    const double r2 = sy * e1 + sz - m2_t1;
    const double r3 = sy * e2 + sz - m2_t2;
    const double residual = std::sqrt(r1 * r1 + r2 * r2 + r3 * r3);

    RealMatrix alpha_matrix(2, 2);
    alpha_matrix << 1.0, (1.0 - e1) / gamma, 1.0, (1.0 - e2) / gamma;

    DensityMatrix rho0 = project_to_physical(raw);
    return ReconstructionResult{std::move(rho0), std::move(raw), residual,
                                condition_of(alpha_matrix),
                                ReconstructionMethod::DephasingClosedForm};
}

DensityMatrix project_to_physical(const HermitianOperator& raw) {
    const double trace = raw.matrix().trace().real();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(raw.matrix());
    if (es.info() != Eigen::Success)
        throw MathError("project_to_physical: eigendecomposition failed");

    if (std::abs(trace - 1.0) <= kTraceTol && es.eigenvalues().minCoeff() >= -kPsdTol)
        return DensityMatrix(raw);

    RealVector clipped = es.eigenvalues().cwiseMax(0.0);
    const double total = clipped.sum();
    if (total <= kTraceTol)
        throw InvariantError(
            "project_to_physical: spectrum entirely nonpositive, zero trace after "
            "clipping");
    clipped /= total;
    ComplexMatrix rho = es.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
    return DensityMatrix(HermitianOperator::hermitized(rho));
}

} // namespace strobo
