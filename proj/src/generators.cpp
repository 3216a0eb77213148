#include "strobo/generators.hpp"

#include <cmath>

namespace strobo {

namespace {

const Complex kI(0.0, 1.0);

} // namespace

Superoperator gksl_generator(const GkslComponents& components) {
    const int n = components.hamiltonian.dim();
    const ComplexMatrix id = identity(n);
    const ComplexMatrix& h = components.hamiltonian.matrix();

    ComplexMatrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& jump : components.jumps) {
        if (jump.op.rows() != n || jump.op.cols() != n)
            throw InvariantError("gksl_generator: jump operator dimension mismatch");
        if (!(jump.rate >= 0.0) || !std::isfinite(jump.rate))
            throw InvariantError("gksl_generator: jump rates must be nonnegative");
        const ComplexMatrix vdv = jump.op.adjoint() * jump.op;
        l += jump.rate * (kron(jump.op.conjugate(), jump.op) -
                          0.5 * kron(id, vdv) - 0.5 * kron(vdv.transpose(), id));
    }
    return Superoperator(std::move(l));
}

Superoperator model_generator(const KrausFamilySpec& spec) {
    spec.validate();
    const ComplexMatrix id4 = identity(4);
    switch (spec.model) {
        case DecoherenceModel::Dephasing: {
            // -gamma diag(0, 1, 1, 0)
            ComplexMatrix l = spec.gamma / 2.0 * (kron(pauli(3), pauli(3)) - id4);
            return Superoperator(std::move(l));
        }
        case DecoherenceModel::Depolarizing: {
            ComplexMatrix l = spec.gamma / 4.0 *
                              (kron(pauli(1), pauli(1)) +
                               kron(pauli(2).transpose(), pauli(2)) +
                               kron(pauli(3), pauli(3)) - 3.0 * id4);
            return Superoperator(std::move(l));
        }
        case DecoherenceModel::OneParametric: {
            ComplexMatrix l =
                spec.gamma / 3.0 *
                (-2.0 * id4 + spec.a * kron(pauli(1), pauli(1)) +
                 (2.0 - spec.a) * kron(pauli(2).transpose(), pauli(2)));
            return Superoperator(std::move(l));
        }
    }
    throw InvariantError("model_generator: unknown model");
}

Superoperator dual_generator(const Superoperator& l) {
    return Superoperator(l.matrix().adjoint());
}

SpectrumReport spectrum_report(const Superoperator& l,
                               std::optional<double> tol_cluster, double tol_rank) {
    SpectrumReport report;
    report.clusters = eig_clustered(l.matrix(), tol_cluster, tol_rank);
    for (const auto& c : report.clusters) report.eta = std::max(report.eta, c.geometric);
    report.mu = minimal_polynomial(l.matrix(), tol_rank).degree;
    report.degenerate = report.eta > 1;
    return report;
}

std::vector<std::pair<double, SpectrumReport>> parameter_sweep(
    double gamma, const std::vector<double>& a_values,
    std::optional<double> tol_cluster, double tol_rank) {
    std::vector<std::pair<double, SpectrumReport>> out;
    out.reserve(a_values.size());
    for (double a : a_values) {
        KrausFamilySpec spec{DecoherenceModel::OneParametric, gamma, a};
        out.emplace_back(a, spectrum_report(model_generator(spec), tol_cluster, tol_rank));
    }
    return out;
}

} // namespace strobo
