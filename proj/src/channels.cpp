#include "strobo/channels.hpp"

#include <cmath>

namespace strobo {

std::string to_string(DecoherenceModel model) {
    switch (model) {
        case DecoherenceModel::Dephasing: return "dephasing";
        case DecoherenceModel::Depolarizing: return "depolarizing";
        case DecoherenceModel::OneParametric: return "one_parametric";
    }
    throw InvariantError("unknown decoherence model");
}

DecoherenceModel model_from_string(const std::string& name) {
    if (name == "dephasing") return DecoherenceModel::Dephasing;
    if (name == "depolarizing") return DecoherenceModel::Depolarizing;
    if (name == "one_parametric") return DecoherenceModel::OneParametric;
    throw ParseError("unknown model \"" + name +
                     "\"; expected dephasing, depolarizing or one_parametric");
}

void KrausFamilySpec::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw InvariantError("decoherence rate gamma must be positive");
    if (model == DecoherenceModel::OneParametric) {
        if (!std::isfinite(a) || a < 0.0 || a > 2.0)
            throw InvariantError("structure parameter a must lie in [0, 2], got " +
                                 std::to_string(a));
    }
}

KrausCollection::KrausCollection(int dim_, std::vector<ComplexMatrix> ops)
    : dim(dim_), operators(std::move(ops)) {
    if (dim < 1) throw InvariantError("KrausCollection: dimension must be positive");
    if (operators.empty())
        throw InvariantError("KrausCollection: at least one operator required");
    for (const auto& op : operators) {
        if (op.rows() != dim || op.cols() != dim)
            throw InvariantError("KrausCollection: every operator must be " +
                                 std::to_string(dim) + "x" + std::to_string(dim));
        if (!op.allFinite())
            throw InvariantError("KrausCollection: operator entries must be finite");
    }
}

KrausCollection kraus_at(const KrausFamilySpec& spec, double t) {
    spec.validate();
    if (!(t >= 0.0) || !std::isfinite(t))
        throw InvariantError("kraus_at: time must be nonnegative and finite");
    const double kappa = std::exp(-spec.gamma * t);

    std::vector<ComplexMatrix> ops;
    switch (spec.model) {
        case DecoherenceModel::Dephasing:
            ops.push_back(std::sqrt((1.0 + kappa) / 2.0) * pauli(0));
            ops.push_back(std::sqrt((1.0 - kappa) / 2.0) * pauli(3));
            break;
        case DecoherenceModel::Depolarizing:
            ops.push_back(std::sqrt((1.0 + 3.0 * kappa) / 4.0) * pauli(0));
            for (int i = 1; i <= 3; ++i)
                ops.push_back(std::sqrt((1.0 - kappa) / 4.0) * pauli(i));
            break;
        case DecoherenceModel::OneParametric:
            ops.push_back(std::sqrt((1.0 + 2.0 * kappa) / 3.0) * pauli(0));
            ops.push_back(std::sqrt(spec.a * (1.0 - kappa) / 3.0) * pauli(1));
            ops.push_back(std::sqrt((2.0 - spec.a) * (1.0 - kappa) / 3.0) * pauli(2));
            break;
    }
    return KrausCollection(2, std::move(ops));
}

HermitianOperator apply_channel(const KrausCollection& k, const HermitianOperator& x) {
    if (x.dim() != k.dim)
        throw InvariantError("apply_channel: dimension mismatch");
    ComplexMatrix acc = ComplexMatrix::Zero(k.dim, k.dim);
    for (const auto& op : k.operators) acc += op * x.matrix() * op.adjoint();
    return HermitianOperator(std::move(acc));
}

TracePreservationCheck check_trace_preserving(const KrausCollection& k) {
    ComplexMatrix acc = ComplexMatrix::Zero(k.dim, k.dim);
    for (const auto& op : k.operators) acc += op.adjoint() * op;
    const double defect =
        (acc - ComplexMatrix::Identity(k.dim, k.dim)).cwiseAbs().maxCoeff();
    return {defect <= kTracePreservingTol, defect};
}

Superoperator channel_superoperator(const KrausCollection& k) {
    const int n2 = k.dim * k.dim;
    ComplexMatrix acc = ComplexMatrix::Zero(n2, n2);
    for (const auto& op : k.operators) acc += kron(op.conjugate(), op);
    return Superoperator(std::move(acc));
}

} // namespace strobo
