#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "twistlog/session.hpp"

using namespace twistlog;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string spec_path;
    std::string cutoff;
    std::optional<int> zero_cap;
};

Rational parse_rational_arg(const std::string& flag, const std::string& s) {
    try {
        return Rational::parse(s);
    } catch (const std::exception& e) {
        throw SpecError(flag + ": " + e.what());
    }
}

ModuleSpec load(const Common& c) {
    ModuleSpec spec = load_session(c.spec_path);
    if (!c.cutoff.empty()) spec.cutoff = parse_rational_arg("--cutoff", c.cutoff);
    if (c.zero_cap) spec.zero_cap = *c.zero_cap;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
    return spec;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--spec", c.spec_path, "session JSON file")->required()->check(CLI::ExistingFile);
    app->add_option("--cutoff", c.cutoff, "energy cutoff D, overrides the session");
    app->add_option("--zero-cap", c.zero_cap, "zero-mode degree cap Z, overrides the session")->check(CLI::NonNegativeNumber);
}

void write_json(const fs::path& p, const Json& j) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << j.dump(2) << '\n';
}

void emit(const std::string& out_path, const Json& j) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        if (fs::path(out_path).has_parent_path()) fs::create_directories(fs::path(out_path).parent_path());
        write_json(out_path, j);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted logarithmic Heisenberg modules in exact arithmetic"};
    app.require_subcommand(1);

    Common c_build, c_verify, c_spec, c_report;
    std::string out_build, out_verify, out_spec, out_report;
    std::string suite, m_range, levels;
    std::optional<int> n_range;
    int jobs = default_jobs();
    bool fault = false;

    auto* build = app.add_subcommand("build", "enumerate the basis and write mode operators");
    add_common(build, c_build);
    build->add_option("--out", out_build, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "run one identity suite");
    add_common(verify, c_verify);
    verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--m-range", m_range, "bound on |m|, |k| (rational)");
    verify->add_option("--n-range", n_range, "bound on |n|")->check(CLI::NonNegativeNumber);
    verify->add_option("--jobs", jobs, "worker threads (default TWISTLOG_JOBS or 1)")->check(CLI::PositiveNumber);
    verify->add_flag("--inject-fault", fault, "corrupt one operator to exercise the failure path");
    verify->add_option("--out", out_verify, "write the report here instead of stdout");

    auto* spec = app.add_subcommand("spectrum", "vacuum weight and Jordan blocks of L_0");
    add_common(spec, c_spec);
    spec->add_option("--levels", levels, "highest level to report (rational, at most the cutoff)");
    spec->add_option("--out", out_spec, "write JSON here instead of stdout");

    auto* report = app.add_subcommand("report", "run every suite and write a combined report");
    add_common(report, c_report);
    report->add_option("--out", out_report, "output directory")->required();
    report->add_option("--jobs", jobs, "worker threads (default TWISTLOG_JOBS or 1)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*build) {
            ModuleSpec s = load(c_build);
            BuildOutput b = build_module(s);
            fs::create_directories(out_build);
            write_json(fs::path(out_build) / "manifest.json", b.manifest);
            write_json(fs::path(out_build) / "basis.json", b.basis);
            write_json(fs::path(out_build) / "operators.json", b.operators);
            std::cout << "basis " << b.manifest["basis_size"].get<int>() << ", operators "
                      << b.manifest["operator_count"].get<int>() << " -> " << out_build << '\n';
            return 0;
        }
        if (*verify) {
            ModuleSpec s = load(c_verify);
            SweepOptions opt;
            if (!m_range.empty()) opt.m_range = parse_rational_arg("--m-range", m_range);
            if (opt.m_range && *opt.m_range < Rational(0)) throw SpecError("--m-range must be non-negative");
            opt.n_range = n_range;
            opt.jobs = jobs;
            opt.inject_fault = fault;
            Report r = run_suite(suite, s, opt);
            emit(out_verify, r.to_json());
            std::cerr << suite << ": checked " << r.checked << ", passed " << r.passed << ", failed " << r.failed
                      << ", inconclusive " << r.inconclusive << '\n';
            return r.exit_code();
        }
        if (*spec) {
            ModuleSpec s = load(c_spec);
            std::optional<Rational> top;
            if (!levels.empty()) top = parse_rational_arg("--levels", levels);
            emit(out_spec, spectrum(s, top));
            return 0;
        }
        if (*report) {
            ModuleSpec s = load(c_report);
            SweepOptions opt;
            opt.jobs = jobs;
            Json all;
            all["spec"] = session_to_json(s);
            Json suites = Json::array();
            int worst = 0;
            for (const std::string& name : suite_names()) {
                Report r = run_suite(name, s, opt);
                suites.push_back(r.to_json());
                int rc = r.exit_code();
                if (rc == 1 || (rc == 3 && worst == 0)) worst = rc;
                std::cerr << name << ": checked " << r.checked << ", failed " << r.failed << ", inconclusive "
                          << r.inconclusive << '\n';
            }
            all["suites"] = suites;
            all["spectrum"] = spectrum(s, std::nullopt);
            fs::create_directories(out_report);
            write_json(fs::path(out_report) / "report.json", all);
            return worst;
        }
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
