#include "strobo/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace strobo {

namespace {

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ParseError("expected a complex entry as [re, im] (or a bare real), got " +
                     j.dump());
}

Json complex_to_json(const Complex& z) {
    return Json::array({z.real(), z.imag()});
}

double number_field(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ParseError("missing or non-numeric field \"" + key + "\"");
    return j.at(key).get<double>();
}

} // namespace

Json load_json(const std::string& path) {
    try {
        if (path == "-") return Json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open file: " + path);
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

Json complex_matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        throw ParseError("expected a matrix as a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError("ragged matrix: row " + std::to_string(r) +
                             " has a different length");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

Superoperator ModelFile::build_generator() const {
    if (family) return model_generator(*family);
    if (gksl) return gksl_generator(*gksl);
    if (generator) return Superoperator(*generator);
    throw ParseError("empty model description");
}

std::string ModelFile::describe() const {
    if (family) {
        std::ostringstream out;
        out << to_string(family->model) << " (gamma = " << family->gamma;
        if (family->model == DecoherenceModel::OneParametric)
            out << ", a = " << family->a;
        out << ")";
        return out.str();
    }
    if (gksl)
        return "gksl (" + std::to_string(gksl->jumps.size()) + " jump operators)";
    return "explicit generator matrix";
}

ModelFile model_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("model file must be a JSON object");
    const int present = static_cast<int>(j.contains("model")) +
                        static_cast<int>(j.contains("gksl")) +
                        static_cast<int>(j.contains("generator"));
    if (present != 1)
        throw ParseError(
            "model file must contain exactly one of \"model\", \"gksl\", "
            "\"generator\"");

    ModelFile file;
    if (j.contains("model")) {
        if (!j.at("model").is_string())
            throw ParseError("\"model\" must be a string");
        KrausFamilySpec spec;
        spec.model = model_from_string(j.at("model").get<std::string>());
        spec.gamma = number_field(j, "gamma");
        if (spec.model == DecoherenceModel::OneParametric) {
            spec.a = number_field(j, "a");
        } else if (j.contains("a")) {
            throw ParseError("\"a\" is only meaningful for the one_parametric model");
        }
        spec.validate();
        file.family = spec;
    } else if (j.contains("gksl")) {
        const auto& g = j.at("gksl");
        if (!g.is_object() || !g.contains("jumps") || !g.at("jumps").is_array())
            throw ParseError("\"gksl\" must be an object with a \"jumps\" array");
        std::vector<JumpOperator> jumps;
        for (const auto& entry : g.at("jumps")) {
            if (!entry.is_object() || !entry.contains("operator"))
                throw ParseError("each jump needs an \"operator\" matrix and a \"rate\"");
            jumps.push_back(JumpOperator{complex_matrix_from_json(entry.at("operator")),
                                         number_field(entry, "rate")});
        }
        int dim = 0;
        if (!jumps.empty()) dim = static_cast<int>(jumps.front().op.rows());
        ComplexMatrix h;
        if (g.contains("hamiltonian")) {
            h = complex_matrix_from_json(g.at("hamiltonian"));
            if (dim == 0) dim = static_cast<int>(h.rows());
        } else {
            if (dim == 0)
                throw ParseError("gksl model needs a hamiltonian or at least one jump");
            h = ComplexMatrix::Zero(dim, dim);
        }
        file.gksl = GkslComponents{HermitianOperator(std::move(h)), std::move(jumps)};
    } else {
        file.generator = complex_matrix_from_json(j.at("generator"));
    }
    return file;
}

ModelFile load_model_file(const std::string& path) {
    return model_from_json(load_json(path));
}

ObservableSet observables_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("observables") || !j.at("observables").is_array() ||
        j.at("observables").empty())
        throw ParseError("expected {\"observables\": [matrix, ...]} with at least one entry");
    std::vector<HermitianOperator> ops;
    for (const auto& entry : j.at("observables"))
        ops.push_back(HermitianOperator(complex_matrix_from_json(entry)));
    const int dim = ops.front().dim();
    return ObservableSet(dim, std::move(ops));
}

ObservableSet load_observables_file(const std::string& path) {
    return observables_from_json(load_json(path));
}

Json observables_to_json(const ObservableSet& qs) {
    Json arr = Json::array();
    for (const auto& q : qs.observables) arr.push_back(complex_matrix_to_json(q.matrix()));
    return Json{{"observables", std::move(arr)}};
}

DensityMatrix state_from_json(const Json& j) {
    if (j.is_object() && j.contains("state"))
        return DensityMatrix(HermitianOperator(complex_matrix_from_json(j.at("state"))));
    if (j.is_object() && j.contains("bloch")) {
        const auto& b = j.at("bloch");
        if (!b.is_array() || b.size() != 3)
            throw ParseError("\"bloch\" must be an array [x, y, z]");
        return DensityMatrix::from_bloch(b[0].get<double>(), b[1].get<double>(),
                                         b[2].get<double>());
    }
    throw ParseError("state file must contain \"state\" (matrix) or \"bloch\" ([x,y,z])");
}

DensityMatrix load_state_file(const std::string& path) {
    return state_from_json(load_json(path));
}

Json record_to_json(const MeasurementRecord& record) {
    Json obs = Json::array();
    for (const auto& q : record.observables.observables)
        obs.push_back(complex_matrix_to_json(q.matrix()));
    Json values = Json::array();
    for (Eigen::Index i = 0; i < record.values.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < record.values.cols(); ++j)
            row.push_back(record.values(i, j));
        values.push_back(std::move(row));
    }
    return Json{{"observables", std::move(obs)},
                {"times", record.times},
                {"values", std::move(values)},
                {"noise_sigma", record.noise_sigma}};
}

MeasurementRecord record_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("observables") || !j.contains("times") ||
        !j.contains("values"))
        throw ParseError("record needs \"observables\", \"times\" and \"values\"");

    std::vector<HermitianOperator> ops;
    for (const auto& entry : j.at("observables"))
        ops.push_back(HermitianOperator(complex_matrix_from_json(entry)));
    if (ops.empty()) throw ParseError("record has no observables");
    ObservableSet qs(ops.front().dim(), std::move(ops));

    std::vector<double> times;
    for (const auto& t : j.at("times")) {
        if (!t.is_number()) throw ParseError("record times must be numbers");
        times.push_back(t.get<double>());
    }

    const auto& vals = j.at("values");
    const auto r = static_cast<Eigen::Index>(qs.observables.size());
    const auto p = static_cast<Eigen::Index>(times.size());
    if (!vals.is_array() || static_cast<Eigen::Index>(vals.size()) != r)
        throw ParseError("record \"values\" must have one row per observable");
    RealMatrix values(r, p);
    for (Eigen::Index i = 0; i < r; ++i) {
        const auto& row = vals[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != p)
            throw ParseError("record \"values\" row " + std::to_string(i) +
                             " must have one entry per time instant");
        for (Eigen::Index k = 0; k < p; ++k)
            values(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }

    double sigma = 0.0;
    if (j.contains("noise_sigma")) sigma = number_field(j, "noise_sigma");
    if (sigma < 0.0) throw InvariantError("record noise_sigma must be nonnegative");
    return MeasurementRecord{std::move(qs), std::move(times), std::move(values), sigma};
}

MeasurementRecord load_record_file(const std::string& path) {
    return record_from_json(load_json(path));
}

Json spectrum_report_to_json(const SpectrumReport& report) {
    Json clusters = Json::array();
    for (const auto& c : report.clusters)
        clusters.push_back(Json{{"eigenvalue", complex_to_json(c.eigenvalue)},
                                {"algebraic_multiplicity", c.algebraic},
                                {"geometric_multiplicity", c.geometric}});
    return Json{{"clusters", std::move(clusters)},
                {"eta", report.eta},
                {"mu", report.mu},
                {"degenerate", report.degenerate}};
}

Json certificate_to_json(const TimeGridCertificate& cert) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < cert.alpha_matrix.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < cert.alpha_matrix.cols(); ++j)
            row.push_back(cert.alpha_matrix(i, j));
        rows.push_back(std::move(row));
    }
    return Json{{"times", cert.times},
                {"alpha_matrix", std::move(rows)},
                {"column_order", "highest_power_first"},
                {"determinant", cert.determinant},
                {"valid", cert.valid}};
}

Json reconstruction_result_to_json(const ReconstructionResult& result) {
    Json out{{"method", to_string(result.method)},
             {"state", complex_matrix_to_json(result.rho0.matrix())},
             {"raw_estimate", complex_matrix_to_json(result.raw_estimate.matrix())},
             {"residual", result.residual},
             {"condition", result.condition}};
    if (result.rho0.dim() == 2) {
        const auto s = result.rho0.bloch();
        out["bloch"] = Json::array({s(0), s(1), s(2)});
    }
    return out;
}

} // namespace strobo
