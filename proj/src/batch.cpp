#include "strobo/batch.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strobo::batch {

namespace {

/// splitmix64 step; decorrelates per-trial seeds derived from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Runs body(i) for i in [0, n), serially or under OpenMP. Exceptions from
/// worker iterations are captured and rethrown on the calling thread.
template <typename Body>
void for_each_index(int n, Execution exec, Body&& body) {
    if (exec == Execution::Serial) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

} // namespace

std::vector<std::pair<double, SpectrumReport>> sweep_spectra(
    double gamma, const std::vector<double>& a_values, Execution exec,
    std::optional<double> tol_cluster, double tol_rank) {
    std::vector<std::pair<double, SpectrumReport>> out(a_values.size());
    for_each_index(static_cast<int>(a_values.size()), exec, [&](int i) {
        const double a = a_values[static_cast<std::size_t>(i)];
        KrausFamilySpec spec{DecoherenceModel::OneParametric, gamma, a};
        out[static_cast<std::size_t>(i)] = {
            a, spectrum_report(model_generator(spec), tol_cluster, tol_rank)};
    });
    return out;
}

std::vector<TrialOutcome> roundtrip_trials(const Superoperator& l,
                                           const ObservableSet& qs,
                                           const TrialConfig& config,
                                           Execution exec) {
    if (config.n_trials < 1)
        throw InvariantError("roundtrip_trials: need at least one trial");
    if (config.times.empty())
        throw InvariantError("roundtrip_trials: empty time grid");

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.n_trials));
    for_each_index(config.n_trials, exec, [&](int i) {
        const std::uint64_t state_seed = mix_seed(config.base_seed, 2 * i);
        const std::uint64_t noise_seed = mix_seed(config.base_seed, 2 * i + 1);
        std::mt19937_64 rng(state_seed);
        const DensityMatrix truth(
            HermitianOperator::hermitized(random_density(l.hilbert_dim(), rng)));

        const MeasurementRecord record = simulate_measurements(
            l, truth, qs, config.times, config.noise_sigma, noise_seed);
        const ReconstructionResult result =
            config.method == ReconstructionMethod::AlphaPipeline
                ? reconstruct_alpha(l, record)
                : reconstruct_direct(l, record);

        const double err = (result.rho0.matrix() - truth.matrix()).norm();
        outcomes[static_cast<std::size_t>(i)] = {err, result.residual};
    });
    return outcomes;
}

double median_error(const std::vector<TrialOutcome>& outcomes) {
    if (outcomes.empty()) throw InvariantError("median_error: empty outcome list");
    std::vector<double> errs;
    errs.reserve(outcomes.size());
    for (const auto& o : outcomes) errs.push_back(o.frobenius_error);
    std::sort(errs.begin(), errs.end());
    const std::size_t n = errs.size();
    return n % 2 == 1 ? errs[n / 2] : 0.5 * (errs[n / 2 - 1] + errs[n / 2]);
}

} // namespace strobo::batch
