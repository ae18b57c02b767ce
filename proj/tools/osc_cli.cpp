#include "osc/cli/request.hpp"
#include "osc/cli/run.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { ok = 0, parse_failure = 2, analysis_failure = 3, internal_failure = 4 };

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("osc");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("OSC_LOG")) {
        auto level = spdlog::level::from_str(env);
        if (level == spdlog::level::off && std::string(env) != "off")
            spdlog::warn("OSC_LOG: unknown level '{}', keeping warn", env);
        else
            spdlog::set_level(level);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw osc::cli::ParseError("/", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const osc::cli::json& doc, const std::string& out) {
    std::string text = doc.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

osc::cli::RunOptions run_options(int jobs, const std::string& plot_dir) {
    osc::cli::RunOptions opt;
    opt.jobs = jobs;
    opt.plot_dir = plot_dir;
    opt.progress = [](const std::string& msg) { spdlog::info("{}", msg); };
    return opt;
}

int analyze(const std::string& path, const std::string& out, const std::string& plot_dir, bool allow_inexact, int jobs) {
    auto req = osc::cli::parse_request(read_file(path), allow_inexact);
    spdlog::debug("parsed request '{}' with {} analyses", req.name, req.analyses.size());
    auto rep = osc::cli::run(req, run_options(jobs, plot_dir));
    emit(osc::cli::report_json(rep), out);
    return rep.all_ok() ? ok : analysis_failure;
}

int verify(const std::string& path, bool allow_inexact) {
    auto req = osc::cli::parse_request(read_file(path), allow_inexact);
    if (!req.solution) throw osc::cli::ParseError("/solution", "verify needs a solution");
    osc::cli::json out;
    bool exact = false;
    std::ostringstream residual;
    if (req.coefficient.exact && req.solution->pi.exact && req.solution->g.exact) {
        auto r = osc::numerics::verify_solution<osc::GaussianRational>(
            {req.solution->pi.to_exact(), req.solution->g.to_exact()}, req.coefficient.to_exact());
        exact = r.exact;
        residual << r.residual;
        out["mode"] = "exact";
    } else {
        auto r = osc::numerics::verify_solution<osc::cdouble>(
            {req.solution->pi.to_complex(), req.solution->g.to_complex()}, req.coefficient.to_complex());
        exact = r.exact;
        residual << r.residual;
        out["mode"] = "inexact, tolerance 1e-12";
    }
    out["name"] = req.name;
    out["exact"] = exact;
    out["residual"] = residual.str();
    emit(out, "");
    return exact ? ok : analysis_failure;
}

int fixtures(bool run, const std::string& write_dir, int jobs) {
    auto reqs = osc::cli::fixture_requests();
    if (!write_dir.empty()) {
        std::filesystem::create_directories(write_dir);
        for (const auto& r : reqs) emit(osc::cli::serialize(r), (std::filesystem::path(write_dir) / (r.name + ".json")).string());
    }
    osc::cli::json out = osc::cli::json::array();
    if (!run) {
        for (const auto& f : osc::fixtures()) out.push_back({{"name", f.name}, {"description", f.description}});
        emit(out, "");
        return ok;
    }
    std::vector<std::function<osc::cli::Report()>> tasks;
    for (const auto& r : reqs)
        tasks.push_back([&r] {
            spdlog::info("fixture {}", r.name);
            return osc::cli::run(r);
        });
    auto reports = osc::cli::detail::run_parallel(std::move(tasks), jobs);
    bool all = true;
    for (const auto& rep : reports) {
        osc::cli::json slots = osc::cli::json::object();
        double total = 0;
        for (const auto& s : rep.analyses) {
            slots[s.name] = s.ok ? "ok" : "error: " + s.error_code + ": " + s.error_message;
            total += s.seconds;
        }
        osc::cli::json entry = {{"name", rep.request.name}, {"analyses", slots}, {"seconds", total}};
        if (auto fx = osc::find_fixture(rep.request.name); fx && fx->solution)
            entry["verified"] = osc::numerics::verify_solution(*fx->solution, fx->a).exact;
        all = all && rep.all_ok();
        out.push_back(entry);
    }
    emit(out, "");
    return all ? ok : analysis_failure;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Oscillation analysis of f'' + A f = 0 for exponential-polynomial coefficients"};
    app.require_subcommand(1);

    std::string request, out, plot_dir, write_dir;
    bool allow_inexact = false, run_fixtures = false;
    int jobs = 1;

    auto* an = app.add_subcommand("analyze", "run the analyses listed in a request");
    an->add_option("request", request, "request JSON file")->required();
    an->add_option("--out", out, "write the report here instead of stdout");
    an->add_option("--plot-data", plot_dir, "directory for CSV plot data");
    an->add_flag("--allow-inexact", allow_inexact, "accept floating-point coefficients");
    an->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));

    auto* fx = app.add_subcommand("fixtures", "list the built-in worked examples");
    fx->add_flag("--run", run_fixtures, "run every fixture end to end");
    fx->add_option("--write", write_dir, "write each fixture request to DIR/<name>.json");
    fx->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));

    auto* vf = app.add_subcommand("verify", "check the solution residual of a request");
    vf->add_option("request", request, "request JSON file")->required();
    vf->add_flag("--allow-inexact", allow_inexact, "accept floating-point coefficients");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : parse_failure;
    }

    try {
        if (an->parsed()) return analyze(request, out, plot_dir, allow_inexact, jobs);
        if (vf->parsed()) return verify(request, allow_inexact);
        return fixtures(run_fixtures, write_dir, jobs);
    } catch (const osc::cli::ParseError& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return parse_failure;
    } catch (const osc::cli::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return internal_failure;
    }
}
