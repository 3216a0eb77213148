#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "strobo/channels.hpp"
#include "strobo/generators.hpp"
#include "strobo/observability.hpp"
#include "strobo/reconstruction.hpp"

namespace strobo {

using Json = nlohmann::json;

/// Complex scalars are [re, im] pairs; a bare number is accepted on input as
/// a real shorthand. Matrices are arrays of rows.
Json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j);

/// Model description: exactly one of
///   {"model": "dephasing"|"depolarizing"|"one_parametric", "gamma": g, "a": x}
///   {"gksl": {"hamiltonian": M?, "jumps": [{"operator": M, "rate": r}, ...]}}
///   {"generator": M}   (an N^2 x N^2 matrix applied to column-stacked operators)
struct ModelFile {
    std::optional<KrausFamilySpec> family;
    std::optional<GkslComponents> gksl;
    std::optional<ComplexMatrix> generator;

    Superoperator build_generator() const;
    std::string describe() const;
};

ModelFile model_from_json(const Json& j);
ModelFile load_model_file(const std::string& path);

/// {"observables": [M, ...]}
ObservableSet observables_from_json(const Json& j);
ObservableSet load_observables_file(const std::string& path);
Json observables_to_json(const ObservableSet& qs);

/// {"state": M} or {"bloch": [x, y, z]}
DensityMatrix state_from_json(const Json& j);
DensityMatrix load_state_file(const std::string& path);

/// {"observables": [M, ...], "times": [..], "values": [[..]], "noise_sigma": s}
Json record_to_json(const MeasurementRecord& record);
MeasurementRecord record_from_json(const Json& j);
MeasurementRecord load_record_file(const std::string& path); // "-" reads stdin

Json spectrum_report_to_json(const SpectrumReport& report);
Json certificate_to_json(const TimeGridCertificate& cert);
Json reconstruction_result_to_json(const ReconstructionResult& result);

/// Loads any file as JSON ("-" reads stdin); throws ParseError on failure.
Json load_json(const std::string& path);

} // namespace strobo
