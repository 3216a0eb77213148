#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "strobo/generators.hpp"
#include "strobo/reconstruction.hpp"

namespace strobo::batch {

/// Serial is the reference implementation; Parallel distributes independent
/// work items over OpenMP threads. Both produce bit-identical results: every
/// item owns its slot and its RNG stream, so the schedule cannot leak in.
enum class Execution { Serial, Parallel };

/// Per-a spectrum reports of the one-parametric family.
std::vector<std::pair<double, SpectrumReport>> sweep_spectra(
    double gamma, const std::vector<double>& a_values, Execution exec,
    std::optional<double> tol_cluster = {}, double tol_rank = kRankRelTol);

struct TrialConfig {
    int n_trials = 50;
    double noise_sigma = 0.0;
    std::uint64_t base_seed = 1;
    ReconstructionMethod method = ReconstructionMethod::AlphaPipeline;
    std::vector<double> times;
};

struct TrialOutcome {
    double frobenius_error; // || reconstructed - true ||_F
    double residual;
};

/// Simulate-then-reconstruct round trips over seeded random density matrices.
/// Trial i draws its state and its noise from streams derived from
/// (base_seed, i), independent of execution policy.
std::vector<TrialOutcome> roundtrip_trials(const Superoperator& l,
                                           const ObservableSet& qs,
                                           const TrialConfig& config,
                                           Execution exec);

double median_error(const std::vector<TrialOutcome>& outcomes);

} // namespace strobo::batch
