#pragma once

#include <string>
#include <vector>

#include "strobo/algebra.hpp"

namespace strobo {

enum class DecoherenceModel { Dephasing, Depolarizing, OneParametric };

std::string to_string(DecoherenceModel model);
DecoherenceModel model_from_string(const std::string& name);

/// Built-in decoherence family: kappa(t) = exp(-gamma t) throughout.
/// `a` is the structure parameter of the one-parametric family and must lie
/// in [0, 2]; the endpoints are accepted (the maps are still channels there)
/// but produce degenerate generator spectra, as does a = 1.
struct KrausFamilySpec {
    DecoherenceModel model;
    double gamma = 1.0;
    double a = 0.0;

    void validate() const; // throws InvariantError
};

/// A concrete set of Kraus operators {K_i}; the map X -> sum K_i X K_i^dagger.
/// Zero-prefactor operators are kept so the collection shape is stable in t.
struct KrausCollection {
    int dim;
    std::vector<ComplexMatrix> operators;

    KrausCollection(int dim_, std::vector<ComplexMatrix> ops);
};

/// Kraus operators of the family at time t >= 0.
KrausCollection kraus_at(const KrausFamilySpec& spec, double t);

/// sum K_i x K_i^dagger. Hermiticity-preserving; trace-preserving when the
/// collection is.
HermitianOperator apply_channel(const KrausCollection& k, const HermitianOperator& x);

struct TracePreservationCheck {
    bool ok;
    double defect; // max-abs entry of sum K_i^dagger K_i - I
};

TracePreservationCheck check_trace_preserving(const KrausCollection& k);

/// The matrix S = sum kron(conj(K_i), K_i), so S vec(X) = vec(sum K_i X K_i^dagger).
Superoperator channel_superoperator(const KrausCollection& k);

} // namespace strobo
