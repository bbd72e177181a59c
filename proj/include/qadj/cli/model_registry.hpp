// model_registry.hpp — named models, their parameter schemas, and the γ model file
//
// Model file (JSON):
//   {
//     "schema":    "qadj-model/1",          optional on input
//     "K":         2,
//     "labels":    ["x","y","px","py"],     optional; default x1..xK, p1..pK
//     "gamma_re":  [ 4K² numbers, row-major ]  or  [[row], [row], ...]
//     "gamma_im":  same shape as gamma_re
//     "offset_re": 0.0,                      optional
//     "offset_im": 0.0                       optional
//   }
// Basis order is always coordinates first, then momenta.

#pragma once

#include "qadj/algebra.hpp"
#include "qadj/core.hpp"
#include "qadj/models.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qadj::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kModelSchema = "qadj-model/1";

class usage_error : public error {
public:
    using error::error;
};

struct ModelDescriptor {
    std::string name;                       // registry name, or "file"
    std::map<std::string, double> params;   // resolved parameter values
    std::string source;                     // file path for "file" models
    QuadraticHamiltonian hamiltonian;
    std::optional<models::PUParams> pu;     // set for the Pais–Uhlenbeck family
};

inline const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names{"pu", "pu-pt", "pu-general", "coupled-masses", "single-oscillator"};
    return names;
}

// Parameters each model accepts, with defaults.
inline std::map<std::string, double> model_defaults(const std::string& name) {
    if (name == "pu" || name == "pu-pt" || name == "coupled-masses") return {{"omega1", 2.0}, {"omega2", 1.0}};
    if (name == "pu-general") {
        return {{"omega1", 2.0}, {"omega2", 1.0}, {"a_re", 1.0}, {"a_im", 0.0}, {"b_re", -1.0}, {"b_im", 0.0}};
    }
    if (name == "single-oscillator") return {{"omega", 1.0}};
    throw usage_error("unknown model '" + name + "' (known: pu, pu-pt, pu-general, coupled-masses, single-oscillator)");
}

// `a2b` is accepted by pu-general as a shorthand for a = 1, b = a2b.
inline ModelDescriptor build_model(const std::string& name, const std::map<std::string, double>& overrides) {
    std::map<std::string, double> p = model_defaults(name);
    for (const auto& [key, value] : overrides) {
        if (name == "pu-general" && key == "a2b") {
            p["a_re"] = 1.0;
            p["a_im"] = 0.0;
            p["b_re"] = value;
            p["b_im"] = 0.0;
            continue;
        }
        if (!p.contains(key)) throw usage_error("model '" + name + "' has no parameter '" + key + "'");
        p[key] = value;
    }
    for (const auto& [key, value] : p) {
        if (!std::isfinite(value)) throw invalid_argument("parameter '" + key + "' must be finite");
    }

    if (name == "single-oscillator") {
        return {name, p, {}, models::single_oscillator(p.at("omega")), std::nullopt};
    }
    if (name == "coupled-masses") {
        return {name, p, {}, models::coupled_masses(p.at("omega1"), p.at("omega2")), std::nullopt};
    }
    models::PUParams pu;
    if (name == "pu") pu = models::PUParams::standard(p.at("omega1"), p.at("omega2"));
    if (name == "pu-pt") pu = models::PUParams::pt_variant(p.at("omega1"), p.at("omega2"));
    if (name == "pu-general") {
        pu = {{p.at("a_re"), p.at("a_im")}, {p.at("b_re"), p.at("b_im")}, p.at("omega1"), p.at("omega2")};
    }
    return {name, p, {}, models::pais_uhlenbeck_general(pu), pu};
}

// ------------------------------ γ model file --------------------------------

namespace detail {

inline RealMatrix read_square(const json& doc, const char* field, int dim) {
    if (!doc.contains(field)) throw parse_error(std::string("model file: missing field '") + field + "'");
    const json& v = doc.at(field);
    if (!v.is_array()) throw parse_error(std::string("model file: '") + field + "' must be an array");
    RealMatrix m(dim, dim);
    auto number = [&](const json& x) {
        if (!x.is_number()) throw parse_error(std::string("model file: non-numeric entry in '") + field + "'");
        return x.get<double>();
    };
    const auto n = static_cast<std::size_t>(dim);
    if (v.size() == n * n && (v.empty() || !v.front().is_array())) {
        for (std::size_t i = 0; i < n * n; ++i) m(static_cast<Eigen::Index>(i / n), static_cast<Eigen::Index>(i % n)) = number(v[i]);
        return m;
    }
    if (v.size() == n) {
        for (std::size_t r = 0; r < n; ++r) {
            if (!v[r].is_array() || v[r].size() != n) {
                throw parse_error(std::string("model file: '") + field + "' rows must have length 2K");
            }
            for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(v[r][c]);
        }
        return m;
    }
    throw parse_error(std::string("model file: '") + field + "' must hold (2K)^2 numbers");
}

inline double read_optional(const json& doc, const char* field) {
    if (!doc.contains(field)) return 0.0;
    if (!doc.at(field).is_number()) throw parse_error(std::string("model file: '") + field + "' must be a number");
    return doc.at(field).get<double>();
}

}  // namespace detail

inline QuadraticHamiltonian parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("model file: ") + e.what());
    }
    if (!doc.is_object()) throw parse_error("model file: top level must be an object");
    if (doc.contains("schema") && doc.at("schema") != kModelSchema) {
        throw parse_error("model file: unsupported schema (expected " + std::string(kModelSchema) + ")");
    }
    if (!doc.contains("K") || !doc.at("K").is_number_integer() || doc.at("K").get<long long>() < 1) {
        throw parse_error("model file: 'K' must be a positive integer");
    }
    const long long k_raw = doc.at("K").get<long long>();
    if (k_raw > 64) throw parse_error("model file: K larger than 64 is not supported");
    const int k = static_cast<int>(k_raw);

    OperatorBasis basis(k);
    if (doc.contains("labels")) {
        try {
            basis = OperatorBasis(k, doc.at("labels").get<std::vector<std::string>>());
        } catch (const std::exception& e) {
            throw parse_error(std::string("model file: bad 'labels': ") + e.what());
        }
    }
    const RealMatrix re = detail::read_square(doc, "gamma_re", 2 * k);
    const RealMatrix im = detail::read_square(doc, "gamma_im", 2 * k);
    Matrix gamma(2 * k, 2 * k);
    for (int i = 0; i < 2 * k; ++i) {
        for (int j = 0; j < 2 * k; ++j) gamma(i, j) = complex(re(i, j), im(i, j));
    }
    if (!gamma.allFinite()) throw parse_error("model file: gamma entries must be finite");
    const complex offset(detail::read_optional(doc, "offset_re"), detail::read_optional(doc, "offset_im"));
    return {basis, std::move(gamma), offset};
}

inline QuadraticHamiltonian read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

inline json model_document(const QuadraticHamiltonian& q) {
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < q.dim(); ++i) {
        for (int j = 0; j < q.dim(); ++j) {
            re.push_back(q.gamma()(i, j).real());
            im.push_back(q.gamma()(i, j).imag());
        }
    }
    json doc;
    doc["schema"] = kModelSchema;
    doc["K"] = q.dof();
    doc["labels"] = q.basis().labels();
    doc["gamma_re"] = std::move(re);
    doc["gamma_im"] = std::move(im);
    doc["offset_re"] = q.offset().real();
    doc["offset_im"] = q.offset().imag();
    return doc;
}

inline ModelDescriptor load_model_file(const std::string& path) {
    return {"file", {}, path, read_model_file(path), std::nullopt};
}

}  // namespace qadj::cli
