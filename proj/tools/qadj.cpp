// qadj — command-line front end: analyze | sweep | evolve | jordan
//
// Exit codes: 0 success, 2 usage error, 3 input/parse error, 4 numerical degeneracy.

#include "qadj/cli/json_writer.hpp"
#include "qadj/cli/model_registry.hpp"
#include "qadj/cli/reports.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace qadj;
using namespace qadj::cli;

enum ExitCode { kOk = 0, kUsage = 2, kInput = 3, kNumerical = 4 };

struct ModelOptions {
    std::string model;
    std::string file;
    std::optional<double> omega, omega1, omega2, a_re, a_im, b_re, b_im, a2b;

    std::map<std::string, double> overrides() const {
        std::map<std::string, double> p;
        auto put = [&](const char* key, const std::optional<double>& v) {
            if (v) p[key] = *v;
        };
        put("omega", omega);
        put("omega1", omega1);
        put("omega2", omega2);
        put("a_re", a_re);
        put("a_im", a_im);
        put("b_re", b_re);
        put("b_im", b_im);
        put("a2b", a2b);
        return p;
    }
};

struct CommonOptions {
    ToleranceConfig tol;
    std::string out;
};

void add_model_options(CLI::App* cmd, ModelOptions& m, bool allow_file) {
    cmd->add_option("model", m.model, "pu | pu-pt | pu-general | coupled-masses | single-oscillator");
    if (allow_file) cmd->add_option("--file", m.file, "gamma model file (JSON) instead of a named model");
    cmd->add_option("--omega", m.omega, "single-oscillator frequency");
    cmd->add_option("--omega1", m.omega1, "first frequency");
    cmd->add_option("--omega2", m.omega2, "second frequency");
    cmd->add_option("--a-re", m.a_re, "pu-general: Re a");
    cmd->add_option("--a-im", m.a_im, "pu-general: Im a");
    cmd->add_option("--b-re", m.b_re, "pu-general: Re b");
    cmd->add_option("--b-im", m.b_im, "pu-general: Im b");
    cmd->add_option("--a2b", m.a2b, "pu-general: set a = 1, b = a2b");
}

void add_common_options(CLI::App* cmd, CommonOptions& c) {
    cmd->add_option("--eq-tol", c.tol.eq_tol, "matrix/scalar equality tolerance");
    cmd->add_option("--rank-tol", c.tol.rank_tol, "relative singular-value cutoff");
    cmd->add_option("--coalesce-tol", c.tol.coalesce_tol, "relative eigenvalue coalescence threshold");
    cmd->add_option("--out", c.out, "write output to this path instead of stdout");
}

ModelDescriptor resolve_model(const ModelOptions& m) {
    if (!m.file.empty()) {
        if (!m.model.empty()) throw usage_error("give either a model name or --file, not both");
        if (!m.overrides().empty()) throw usage_error("model parameters cannot be combined with --file");
        return load_model_file(m.file);
    }
    if (m.model.empty()) throw usage_error("a model name (or --file) is required");
    return build_model(m.model, m.overrides());
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw parse_error("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic analysis of quadratic Hamiltonians through their adjoint matrix"};
    app.require_subcommand(1);

    ModelOptions model;
    CommonOptions common;

    auto* analyze = app.add_subcommand("analyze", "full analysis report (JSON)");
    add_model_options(analyze, model, true);
    add_common_options(analyze, common);
    std::string dump_gamma;
    analyze->add_option("--dump-gamma", dump_gamma, "also write the model's gamma file to this path");

    auto* jordan = app.add_subcommand("jordan", "exceptional-point and Jordan-form report (JSON)");
    add_model_options(jordan, model, true);
    add_common_options(jordan, common);

    auto* sweep = app.add_subcommand("sweep", "parameter-grid classification table (CSV)");
    add_model_options(sweep, model, false);
    add_common_options(sweep, common);
    std::vector<std::string> axis_specs;
    unsigned threads = 0;
    sweep->add_option("--axis", axis_specs, "name=start:stop:count (repeatable; first axis varies slowest)")
        ->required();
    sweep->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

    auto* evolve = app.add_subcommand("evolve", "Heisenberg trace table (CSV) with ODE residual summary");
    add_model_options(evolve, model, true);
    add_common_options(evolve, common);
    std::string obs;
    double t_min = 0.0;
    double t_max = 0.0;
    int samples = 1;
    evolve->add_option("--obs", obs, "basis label (x, px, x1, ...) or ladder index Z1..Z2K")->required();
    evolve->add_option("--t-min", t_min, "first sample time");
    evolve->add_option("--t-max", t_max, "last sample time");
    evolve->add_option("--samples", samples, "number of evenly spaced samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        common.tol.validate();
        if (analyze->parsed()) {
            const ModelDescriptor d = resolve_model(model);
            const json report = analysis_report(d, common.tol);
            if (!dump_gamma.empty()) emit(dump_json(model_document(d.hamiltonian)) + "\n", dump_gamma);
            emit(dump_json(report) + "\n", common.out);
        } else if (jordan->parsed()) {
            const ModelDescriptor d = resolve_model(model);
            emit(dump_json(jordan_report(d, common.tol)) + "\n", common.out);
        } else if (sweep->parsed()) {
            if (model.model.empty()) throw usage_error("sweep needs a model name");
            std::vector<Axis> axes;
            for (const auto& s : axis_specs) axes.push_back(parse_axis(s));
            const auto rows = run_sweep(model.model, model.overrides(), axes, common.tol, threads);
            emit(sweep_csv(axes, rows), common.out);
        } else if (evolve->parsed()) {
            const ModelDescriptor d = resolve_model(model);
            emit(trace_csv(run_evolve(d, obs, t_min, t_max, samples, common.tol)), common.out);
        }
    } catch (const usage_error& e) {
        std::cerr << "qadj: " << e.what() << "\n";
        return kUsage;
    } catch (const parse_error& e) {
        std::cerr << "qadj: " << e.what() << "\n";
        return kInput;
    } catch (const structure_error& e) {
        std::cerr << "qadj: " << e.what() << "\n";
        return kInput;
    } catch (const qadj::invalid_argument& e) {
        std::cerr << "qadj: " << e.what() << "\n";
        return kInput;
    } catch (const unsupported_parameter_error& e) {
        std::cerr << "qadj: " << e.what() << "\n";
        return kInput;
    } catch (const qadj::error& e) {
        // degenerate/defective/exceptional-point, ill-conditioned transforms, overflow
        std::cerr << "qadj: " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
