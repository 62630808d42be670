#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "twistlog/basis.hpp"
#include "twistlog/identities.hpp"

namespace twistlog {

using Json = nlohmann::json;

// Malformed or inconsistent session input.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// {"blocks": [{"kind": "even", "ell": 2, "alpha0": "-1/3", "a1": "0"}, ...],
//  "params": [{...}, ...]  (optional, one object per block),
//  "cutoff": "10/3", "zero_cap": 0, "conductor": 12 (optional)}
ModuleSpec parse_session(const Json& j);
ModuleSpec load_session(const std::string& path);
Json session_to_json(const ModuleSpec& spec);

Json rational_json(const Rational& r);
Json vector_json(const Vector& v);

struct SweepOptions {
    std::optional<Rational> m_range;
    std::optional<int> n_range;
    int jobs = 1;
    bool inject_fault = false;
};

struct CheckRecord {
    Outcome outcome = Outcome::Inconclusive;
    Json input;
    Json witness;
    long long order = 0;  // position in the sweep, used to keep failures deterministic
};

struct Report {
    std::string suite;
    Json parameters;
    long checked = 0, passed = 0, failed = 0, inconclusive = 0;
    std::vector<CheckRecord> failures;  // at most kMaxFailures, in sweep order
    Json extra = Json::object();
    long long wall_time_ms = 0;

    static constexpr std::size_t kMaxFailures = 100;

    void add(CheckRecord r);
    void merge(const Report& o);
    // 0 no failure, 1 failure, 3 nothing but inconclusive results
    int exit_code() const;
    Json to_json(bool timing = true) const;
};

const std::vector<std::string>& suite_names();
// Throws SpecError on an unknown suite name.
Report run_suite(const std::string& suite, const ModuleSpec& spec, const SweepOptions& opt);

// Basis enumeration and operator triplets, deterministic for a given spec.
struct BuildOutput {
    Json manifest, basis, operators;
};
BuildOutput build_module(const ModuleSpec& spec);

// Vacuum weight and the Jordan data of L_0 at every level up to max_level.
// Throws SpecError if max_level exceeds the cutoff.
Json spectrum(const ModuleSpec& spec, const std::optional<Rational>& max_level);

int default_jobs();  // TWISTLOG_JOBS or 1

}  // namespace twistlog
