// reports.hpp — analysis/Jordan report documents, sweep tables, and trace tables
//
// Reports are JSON (schema "qadj-report/1"); complex numbers are always
// {"re": x, "im": y} objects. Tables are comma-separated with a header row and
// numbers printed with 17 significant digits.

#pragma once

#include "qadj/algebra.hpp"
#include "qadj/cli/model_registry.hpp"
#include "qadj/core.hpp"
#include "qadj/dynamics.hpp"
#include "qadj/jordan.hpp"
#include "qadj/models.hpp"
#include "qadj/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace qadj::cli {

inline constexpr const char* kReportSchema = "qadj-report/1";

// ------------------------------ formatting ----------------------------------

// Signed zeros carry no information in a report; print them as 0.
inline double plain_zero(double v) { return v == 0.0 ? 0.0 : v; }

inline std::string format_number(double v) {
    v = plain_zero(v);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json complex_json(complex z) {
    json j;
    j["re"] = plain_zero(z.real());
    j["im"] = plain_zero(z.imag());
    return j;
}

inline json matrix_json(const Matrix& m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rr = json::array();
        json ri = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rr.push_back(plain_zero(m(i, j).real()));
            ri.push_back(plain_zero(m(i, j).imag()));
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    json j;
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

inline json vector_json(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
    return a;
}

inline json complex_list_json(const std::vector<complex>& v) {
    json a = json::array();
    for (complex z : v) a.push_back(complex_json(z));
    return a;
}

inline json tolerance_json(const ToleranceConfig& tol) {
    json j;
    j["eq_tol"] = tol.eq_tol;
    j["rank_tol"] = tol.rank_tol;
    j["coalesce_tol"] = tol.coalesce_tol;
    return j;
}

inline json descriptor_json(const ModelDescriptor& d) {
    json j;
    j["name"] = d.name;
    if (!d.source.empty()) j["source"] = d.source;
    json params = json::object();
    for (const auto& [k, v] : d.params) params[k] = v;
    j["params"] = std::move(params);
    j["K"] = d.hamiltonian.dof();
    j["labels"] = d.hamiltonian.basis().labels();
    return j;
}

// Every JSON number in a report must be finite.
inline void require_finite(const json& j) {
    if (j.is_number_float() && !std::isfinite(j.get<double>())) {
        throw numerical_degeneracy_error("report contains a non-finite number");
    }
    if (j.is_structured()) {
        for (const auto& item : j) require_finite(item);
    }
}

// A Hermitian quadratic Hamiltonian is bounded below iff its (real symmetric)
// canonical γ is positive semidefinite; nullopt when γ is not Hermitian.
inline std::optional<bool> bounded_below(const QuadraticHamiltonian& q, const ToleranceConfig& tol) {
    if (!is_hermitian(q, tol)) return std::nullopt;
    const RealMatrix g = canonicalize(q).gamma().real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
    const double scale = 1.0 + g.cwiseAbs().maxCoeff();
    return es.eigenvalues().minCoeff() >= -tol.eq_tol * scale;
}

inline json defect_json(const DefectReport& r) {
    json clusters = json::array();
    for (const auto& c : r.clusters) {
        json j;
        j["lambda"] = complex_json(c.eigenvalue);
        j["algebraic"] = c.algebraic;
        j["geometric"] = c.geometric;
        clusters.push_back(std::move(j));
    }
    json j;
    j["is_defective"] = r.is_defective;
    j["clusters"] = std::move(clusters);
    return j;
}

inline json blocks_json(const std::vector<JordanBlock>& blocks) {
    json a = json::array();
    for (const auto& b : blocks) {
        json j;
        j["lambda"] = complex_json(b.eigenvalue);
        j["size"] = b.size;
        a.push_back(std::move(j));
    }
    return a;
}

// ------------------------------ analyze -------------------------------------

inline json analysis_report(const ModelDescriptor& d, const ToleranceConfig& tol) {
    tol.validate();
    const QuadraticHamiltonian& q = d.hamiltonian;
    const Matrix h = adjoint_matrix(q);
    if (!check_structure(h, tol)) throw structure_error("adjoint matrix fails the U H^t U = -H structure check");
    const CharPoly poly = characteristic_polynomial(h, tol);
    const FrequencySpectrum spectrum = spectrum_from_charpoly(poly, tol);

    json r;
    r["schema"] = kReportSchema;
    r["command"] = "analyze";
    r["model"] = descriptor_json(d);
    r["tolerances"] = tolerance_json(tol);
    r["gamma"] = matrix_json(q.gamma());
    r["offset"] = complex_json(q.offset());
    r["adjoint_matrix"] = matrix_json(h);
    r["structure_check"] = true;

    json cp;
    cp["coeffs"] = complex_list_json(poly.coeffs);
    cp["even_part"] = complex_list_json(poly.even_part);
    r["characteristic_polynomial"] = std::move(cp);

    json sp;
    sp["classification"] = std::string(to_string(spectrum.classification));
    sp["lambdas"] = complex_list_json(spectrum.lambdas);
    sp["mu_roots"] = complex_list_json(spectrum.mu_roots);
    json pairs = json::array();
    for (const auto& [a, b] : spectrum.pairing) pairs.push_back(json::array({a + 1, b + 1}));
    sp["pairing"] = std::move(pairs);
    r["spectrum"] = std::move(sp);

    if (d.pu) {
        const auto [xp, xm] = models::xi_frequencies(*d.pu);
        json pu;
        pu["a2b"] = complex_json(d.pu->a2b());
        pu["xi_plus"] = complex_json(xp);
        pu["xi_minus"] = complex_json(xm);
        try {
            pu["reality_class"] = std::string(models::to_string(models::reality_class(*d.pu, tol)));
        } catch (const unsupported_parameter_error&) {
            pu["reality_class"] = "unsupported";
        }
        pu["reality_lower_bound"] = models::reality_lower_bound(*d.pu);
        r["pais_uhlenbeck"] = std::move(pu);
    }

    json lad;
    try {
        const SpectralDecomposition dec = ladder_operators(q, spectrum, tol);
        const Reconstruction rec = reconstruct(q, dec, tol);
        lad["status"] = "ok";
        json ops = json::array();
        for (std::size_t i = 0; i < dec.ladders.size(); ++i) {
            json z;
            z["index"] = i + 1;
            z["lambda"] = complex_json(dec.ladders[i].lambda);
            z["coeffs"] = vector_json(dec.ladders[i].form.coeffs());
            ops.push_back(std::move(z));
        }
        lad["operators"] = std::move(ops);
        lad["sigmas"] = complex_list_json(dec.sigmas);
        std::vector<complex> weights;
        for (int j = 0; j < q.dof(); ++j) {
            weights.push_back(-dec.ladders[static_cast<std::size_t>(j)].lambda / dec.sigmas[static_cast<std::size_t>(j)]);
        }
        lad["mode_weights"] = complex_list_json(weights);
        lad["ground_energy"] = complex_json(dec.ground_energy);
        lad["reconstruction_gamma_residual"] = rec.gamma_residual;
    } catch (const degenerate_spectrum_error& e) {
        lad["status"] = "degenerate";
        lad["message"] = e.what();
    } catch (const exceptional_point_error& e) {
        lad["status"] = "exceptional-point";
        lad["message"] = e.what();
    } catch (const defective_error& e) {
        lad["status"] = "defective";
        lad["message"] = e.what();
    }
    lad["pairing_strengths"] = pairing_strengths(h, spectrum, tol);
    r["ladders"] = std::move(lad);

    r["pseudo_hermitian"] = is_pseudo_hermitian(h, tol);
    r["hermitian_gamma"] = is_hermitian(q, tol);
    json au;
    au["coordinate_reflection"] = antiunitary_invariant(q, coordinate_reflection_signs(q.dof()), tol);
    au["momentum_reflection"] = antiunitary_invariant(q, momentum_reflection_signs(q.dof()), tol);
    r["antiunitary"] = std::move(au);

    const auto bounded = bounded_below(q, tol);
    r["bounded_below"] = bounded ? json(*bounded) : json(nullptr);
    json notes = json::array();
    if (bounded && *bounded) notes.push_back("spectrum bounded from below");
    if (bounded && !*bounded) notes.push_back("spectrum unbounded from below");

    const DefectReport defects = multiplicities(h, tol);
    r["defect_report"] = defect_json(defects);
    if (defects.is_defective) notes.push_back("exceptional point: adjoint matrix is defective");
    json jo;
    try {
        const JordanDecomposition jd = jordan_form(h, tol);
        jo["status"] = "ok";
        jo["blocks"] = blocks_json(jd.blocks);
        jo["similarity_residual"] = jd.similarity_residual;
    } catch (const numerical_degeneracy_error& e) {
        jo["status"] = "numerical-degeneracy";
        jo["message"] = e.what();
    }
    r["jordan"] = std::move(jo);
    r["notes"] = std::move(notes);
    require_finite(r);
    return r;
}

// ------------------------------ jordan --------------------------------------

inline json jordan_report(const ModelDescriptor& d, const ToleranceConfig& tol) {
    tol.validate();
    const Matrix h = adjoint_matrix(d.hamiltonian);
    if (!check_structure(h, tol)) throw structure_error("adjoint matrix fails the U H^t U = -H structure check");
    const DefectReport defects = multiplicities(h, tol);
    const JordanDecomposition jd = jordan_form(h, tol);
    const FrequencySpectrum spectrum = natural_frequencies(h, tol);

    json r;
    r["schema"] = kReportSchema;
    r["command"] = "jordan";
    r["model"] = descriptor_json(d);
    r["tolerances"] = tolerance_json(tol);
    r["adjoint_matrix"] = matrix_json(h);
    r["is_exceptional"] = defects.is_defective;
    r["defect_report"] = defect_json(defects);
    r["blocks"] = blocks_json(jd.blocks);
    r["transform"] = matrix_json(jd.transform);
    r["jordan_matrix"] = matrix_json(jd.jordan());
    r["similarity_residual"] = jd.similarity_residual;
    r["chain_residual"] = jd.chain_residual;
    r["pairing_strengths"] = pairing_strengths(h, spectrum, tol);
    require_finite(r);
    return r;
}

// ------------------------------ sweep ---------------------------------------

struct Axis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double value(int i) const {
        if (count == 1) return start;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

// "name=start:stop:count"
inline Axis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw usage_error("axis '" + spec + "' must look like name=start:stop:count");
    Axis a;
    a.name = spec.substr(0, eq);
    const std::string rest = spec.substr(eq + 1);
    std::vector<std::string> parts;
    std::size_t from = 0;
    while (true) {
        const auto colon = rest.find(':', from);
        parts.push_back(rest.substr(from, colon == std::string::npos ? std::string::npos : colon - from));
        if (colon == std::string::npos) break;
        from = colon + 1;
    }
    if (parts.size() != 3) throw usage_error("axis '" + spec + "' must look like name=start:stop:count");
    try {
        std::size_t used = 0;
        a.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("trailing");
        a.stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("trailing");
        const long long c = std::stoll(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("trailing");
        if (c < 0 || c > 1000000) throw std::out_of_range("count");
        a.count = static_cast<int>(c);
    } catch (const std::exception&) {
        throw usage_error("axis '" + spec + "' has a malformed number");
    }
    if (a.count < 1) throw usage_error("axis '" + a.name + "' defines an empty grid");
    return a;
}

struct SweepRow {
    std::vector<double> params;  // one value per axis, in axis order
    std::optional<complex> xi_plus;
    std::optional<complex> xi_minus;
    std::string reality_class;   // PU family only; "n/a" otherwise
    std::string classification;  // from the numerical spectrum
    double min_abs_sigma = 0.0;
    bool is_exceptional = false;
};

inline SweepRow sweep_point(const std::string& model, const std::map<std::string, double>& params,
                            std::vector<double> axis_values, const ToleranceConfig& tol) {
    const ModelDescriptor d = build_model(model, params);
    const Matrix h = adjoint_matrix(d.hamiltonian);
    const FrequencySpectrum spectrum = natural_frequencies(h, tol);

    SweepRow row;
    row.params = std::move(axis_values);
    row.classification = std::string(to_string(spectrum.classification));
    if (d.pu) {
        const auto [xp, xm] = models::xi_frequencies(*d.pu);
        row.xi_plus = xp;
        row.xi_minus = xm;
        try {
            row.reality_class = std::string(models::to_string(models::reality_class(*d.pu, tol)));
        } catch (const unsupported_parameter_error&) {
            row.reality_class = "unsupported";
        }
    } else {
        row.xi_plus = spectrum.mu_roots.front();
        if (spectrum.mu_roots.size() > 1) row.xi_minus = spectrum.mu_roots.back();
        row.reality_class = "n/a";
    }
    const std::vector<double> strengths = pairing_strengths(h, spectrum, tol);
    row.min_abs_sigma = strengths.empty() ? 0.0 : strengths.front();
    row.is_exceptional = is_exceptional(h, tol);
    return row;
}

// Grid points in row-major order over the axes (first axis slowest). Points are
// evaluated on `threads` workers; output order never depends on scheduling.
inline std::vector<SweepRow> run_sweep(const std::string& model, const std::map<std::string, double>& fixed,
                                       const std::vector<Axis>& axes, const ToleranceConfig& tol,
                                       unsigned threads = 0) {
    tol.validate();
    if (axes.empty()) throw usage_error("sweep: at least one axis is required");
    std::size_t total = 1;
    for (const Axis& a : axes) {
        if (a.count < 1) throw usage_error("sweep: axis '" + a.name + "' defines an empty grid");
        total *= static_cast<std::size_t>(a.count);
    }
    // Validate names once up front so errors surface before any work starts.
    {
        std::map<std::string, double> probe = fixed;
        for (const Axis& a : axes) probe[a.name] = a.value(0);
        (void)build_model(model, probe);
    }

    std::vector<std::optional<SweepRow>> rows(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            std::map<std::string, double> p = fixed;
            std::vector<double> values(axes.size());
            std::size_t rem = idx;
            for (std::size_t ax = axes.size(); ax-- > 0;) {
                const auto n = static_cast<std::size_t>(axes[ax].count);
                values[ax] = axes[ax].value(static_cast<int>(rem % n));
                rem /= n;
            }
            for (std::size_t ax = 0; ax < axes.size(); ++ax) p[axes[ax].name] = values[ax];
            try {
                rows[idx] = sweep_point(model, p, values, tol);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<SweepRow> out;
    out.reserve(total);
    for (auto& r : rows) out.push_back(std::move(*r));
    return out;
}

inline std::string sweep_csv(const std::vector<Axis>& axes, const std::vector<SweepRow>& rows) {
    std::string out;
    for (const Axis& a : axes) out += a.name + ",";
    out += "xi_plus_re,xi_plus_im,xi_minus_re,xi_minus_im,reality_class,classification,min_abs_sigma,is_exceptional\n";
    auto opt = [](const std::optional<complex>& z) {
        return z ? format_number(z->real()) + "," + format_number(z->imag()) : std::string(",");
    };
    for (const SweepRow& r : rows) {
        for (double v : r.params) out += format_number(v) + ",";
        out += opt(r.xi_plus) + "," + opt(r.xi_minus) + "," + r.reality_class + "," + r.classification + "," +
               format_number(r.min_abs_sigma) + "," + (r.is_exceptional ? "true" : "false") + "\n";
    }
    return out;
}

// ------------------------------ evolve --------------------------------------

struct EvolveResult {
    EvolutionTrace trace;
    std::optional<OdeCheckReport> ode;  // absent when there are fewer than 2K+1 samples
    double max_norm_ratio_deviation = 0.0;  // max_t | ‖c(t)‖/‖c(0)‖ − 1 |
    std::string observable_name;
};

// A basis label (x, px, x1, ...) or a ladder index Z1..Z2K.
inline LinearForm select_observable(const QuadraticHamiltonian& q, const std::string& selector,
                                    const ToleranceConfig& tol) {
    if (auto idx = q.basis().index_of(selector)) return LinearForm::unit(q.basis(), *idx);
    if (selector.size() > 1 && (selector[0] == 'Z' || selector[0] == 'z')) {
        int j = 0;
        try {
            std::size_t used = 0;
            j = std::stoi(selector.substr(1), &used);
            if (used != selector.size() - 1) j = 0;
        } catch (const std::exception&) {
            j = 0;
        }
        if (j >= 1 && j <= q.dim()) {
            const SpectralDecomposition dec = ladder_operators(q, tol);
            return dec.ladders[static_cast<std::size_t>(j - 1)].form;
        }
    }
    std::string known;
    for (const auto& l : q.basis().labels()) known += l + " ";
    throw usage_error("invalid observable '" + selector + "' (basis labels: " + known + "or Z1..Z" +
                      std::to_string(q.dim()) + ")");
}

inline EvolveResult run_evolve(const ModelDescriptor& d, const std::string& selector, double t_min, double t_max,
                               int samples, const ToleranceConfig& tol) {
    tol.validate();
    if (samples < 1) throw usage_error("evolve: --samples must be >= 1");
    if (samples > 1 && !(t_max > t_min)) throw usage_error("evolve: need t-max > t-min for more than one sample");
    if (samples == 1 && t_max != t_min) throw usage_error("evolve: a single sample needs t-min == t-max");
    const LinearForm obs = select_observable(d.hamiltonian, selector, tol);
    const std::vector<double> times = uniform_times(t_min, t_max, samples);

    EvolveResult out{evolve_observable(obs, d.hamiltonian, times), std::nullopt, 0.0, selector};
    const double n0 = obs.coeffs().norm();
    if (n0 > 0.0) {
        for (const Vector& c : out.trace.coeff_samples) {
            out.max_norm_ratio_deviation = std::max(out.max_norm_ratio_deviation, std::abs(c.norm() / n0 - 1.0));
        }
    }
    if (samples >= d.hamiltonian.dim() + 1) out.ode = ode_check(d.hamiltonian, obs, times, tol);
    return out;
}

inline std::string trace_csv(const EvolveResult& r) {
    const auto& labels = r.trace.observable.basis().labels();
    std::string out = "t";
    for (const auto& l : labels) out += "," + l + "_re," + l + "_im";
    out += "\n";
    for (std::size_t i = 0; i < r.trace.times.size(); ++i) {
        out += format_number(r.trace.times[i]);
        const Vector& c = r.trace.coeff_samples[i];
        for (Eigen::Index k = 0; k < c.size(); ++k) out += "," + format_number(c(k).real()) + "," + format_number(c(k).imag());
        out += "\n";
    }
    out += "# observable=" + r.observable_name + "\n";
    out += "# max_norm_ratio_deviation=" + format_number(r.max_norm_ratio_deviation) + "\n";
    if (r.ode) {
        out += "# ode_order=" + std::to_string(r.ode->order) + "\n";
        out += "# step=" + format_number(r.ode->step) + "\n";
        out += "# cayley_hamilton_residual=" + format_number(r.ode->cayley_hamilton_residual) + "\n";
        out += "# stencil_residual=" + format_number(r.ode->stencil_residual) + "\n";
        out += "# max_sample_norm=" + format_number(r.ode->max_sample_norm) + "\n";
    } else {
        out += "# ode_check=skipped (needs at least 2K+1 samples)\n";
    }
    return out;
}

}  // namespace qadj::cli
