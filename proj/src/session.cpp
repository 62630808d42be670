#include "twistlog/session.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "twistlog/fock.hpp"
#include "twistlog/log_field.hpp"
#include "twistlog/nproduct.hpp"
#include "twistlog/virasoro.hpp"

namespace twistlog {

namespace {

constexpr int kHeisenbergLocality = 2;

Rational get_rational(const Json& j, const std::string& key) {
    const Json& v = j.at(key);
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    throw SpecError("\"" + key + "\" must be a rational string such as \"-1/3\"");
}

std::optional<Rational> opt_rational(const Json& j, const std::string& key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get_rational(j, key);
}

int get_int(const Json& j, const std::string& key) {
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw SpecError("\"" + key + "\" must be an integer");
    return v.get<int>();
}

void read_params(const Json& j, BlockParams& p) {
    if (!j.is_object()) throw SpecError("block parameters must be an object");
    if (auto x = opt_rational(j, "a1")) p.a1 = x;
    if (auto x = opt_rational(j, "a2")) p.a2 = x;
    if (auto x = opt_rational(j, "a")) p.a = x;
}

template <class Fn>
void parallel_for(int count, int jobs, Fn fn) {
    jobs = std::max(1, std::min(jobs, count));
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto work = [&](int w) {
        try {
            for (int i; (i = next++) < count;) fn(w, i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!err) err = std::current_exception();
            next = count;
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> ts;
        for (int w = 0; w < jobs; ++w) ts.emplace_back(work, w);
        for (auto& t : ts) t.join();
    }
    if (err) std::rethrow_exception(err);
}

std::vector<Rational> exponents(const FockModule& M, int g, const Rational& bound) {
    std::vector<Rational> out;
    Rational s = M.twist().coset[static_cast<std::size_t>(g)];
    for (Rational m = s - floor(bound) - Rational(1); m <= bound; m += Rational(1))
        if (abs(m) <= bound) out.push_back(m);
    return out;
}

Outcome outcome_of(const FieldDiff& d) {
    if (!d.ok()) return Outcome::Fail;
    return d.columns > 0 ? Outcome::Pass : Outcome::Inconclusive;
}

Json diff_witness(const FieldDiff& d) {
    Json w;
    w["components"] = d.components;
    w["columns"] = d.columns;
    w["mismatched"] = d.mismatched;
    if (d.first_key) {
        w["first_m"] = rational_json(d.first_key->first);
        w["first_zeta_degree"] = d.first_key->second;
        w["first_column"] = d.first_column;
    }
    return w;
}

std::string mode_name(int g, const Rational& m) { return "v" + std::to_string(g + 1) + " t^" + m.str(); }

// ---- suites ----

Report suite_heisenberg(const FockModule& M, const SweepOptions& opt) {
    Report rep;
    const Rational R = opt.m_range.value_or(M.spec().cutoff);
    rep.parameters["m_range"] = rational_json(R);
    struct Item {
        int a, b;
        Rational m, k;
    };
    std::vector<Item> items;
    for (int a = 0; a < M.dim(); ++a)
        for (int b = 0; b < M.dim(); ++b)
            for (const Rational& m : exponents(M, a, R))
                for (const Rational& k : exponents(M, b, R)) items.push_back({a, b, m, k});
    std::vector<CheckRecord> recs(items.size());
    parallel_for(static_cast<int>(items.size()), opt.jobs, [&](int, int i) {
        const Item& it = items[static_cast<std::size_t>(i)];
        OperatorCheck c = commutator_formula_check(M, it.a, it.m, it.b, it.k);
        CheckRecord& r = recs[static_cast<std::size_t>(i)];
        r.outcome = c.outcome;
        r.order = i;
        r.input = {{"a", it.a + 1}, {"b", it.b + 1}, {"m", rational_json(it.m)}, {"k", rational_json(it.k)}};
        r.witness = {{"compared_columns", c.compared}, {"first_column", c.first_column}};
    });
    for (auto& r : recs) rep.add(std::move(r));
    return rep;
}

Report suite_virasoro(const FockModule& M, const SweepOptions& opt) {
    Report rep;
    const int R = opt.m_range ? static_cast<int>(floor(*opt.m_range).to_int()) : 2;
    if (R < 0) throw SpecError("--m-range must be non-negative");
    rep.parameters["m_range"] = R;
    VirasoroFamily F = virasoro_family(M, std::max(2 * R, 2));
    if (opt.inject_fault) F.modes.at(0) *= Rational(2);
    const Rational c(M.dim());
    std::vector<std::pair<int, int>> pairs;
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) pairs.emplace_back(m, n);
    std::vector<CheckRecord> recs(pairs.size());
    parallel_for(static_cast<int>(pairs.size()), opt.jobs, [&](int, int i) {
        auto [m, n] = pairs[static_cast<std::size_t>(i)];
        RelationCheck rc = virasoro_relation_check(F, m, n, c);
        CheckRecord& r = recs[static_cast<std::size_t>(i)];
        r.outcome = rc.outcome;
        r.order = i;
        r.input = {{"relation", "virasoro"}, {"m", m}, {"n", n}};
        r.witness = {{"compared_columns", rc.compared}, {"mismatched", rc.mismatched}, {"first_column", rc.first_column}};
    });
    for (auto& r : recs) rep.add(std::move(r));

    // the central charge is read off the vacuum, not assumed
    const Operator& l0 = F.modes.at(0);
    std::optional<Rational> found;
    {
        Operator x = commutator(F.modes.at(2), F.modes.at(-2));
        x -= l0 * Rational(4);
        if (x.exact(0) && (x.column(0).empty() || (x.column(0).nnz() == 1 && x.column(0).entries()[0].first == 0)))
            found = x.column(0).at(0) * Rational(2);
    }
    CheckRecord cc;
    cc.order = static_cast<long long>(pairs.size());
    cc.input = {{"relation", "central_charge"}, {"expected", rational_json(c)}};
    cc.outcome = !found ? Outcome::Inconclusive : (*found == c ? Outcome::Pass : Outcome::Fail);
    cc.witness = {{"found", found ? rational_json(*found) : Json()}};
    rep.add(std::move(cc));
    rep.extra["central_charge"] = found ? rational_json(*found) : Json();
    rep.extra["dim_h"] = M.dim();
    if (l0.exact(0)) rep.extra["vacuum_weight"] = rational_json(l0.column(0).at(0));
    return rep;
}

Report suite_borcherds(const FockModule& M, const SweepOptions& opt) {
    Report rep;
    const Rational R = opt.m_range.value_or(Rational(1));
    const int N = opt.n_range.value_or(2);
    rep.parameters["m_range"] = rational_json(R);
    rep.parameters["n_range"] = N;
    struct Item {
        int a, b;
        Rational m, k;
        int n;
    };
    std::vector<Item> items;
    for (int a = 0; a < M.dim(); ++a)
        for (int b = 0; b < M.dim(); ++b)
            for (const Rational& m : exponents(M, a, R))
                for (const Rational& k : exponents(M, b, R))
                    for (int n = -N; n <= N; ++n) items.push_back({a, b, m, k, n});
    const int nv = M.basis()->size();
    const int jobs = std::max(1, std::min(opt.jobs, nv));
    std::vector<std::unique_ptr<BorcherdsChecker>> checkers;
    for (int w = 0; w < jobs; ++w) {
        checkers.push_back(std::make_unique<BorcherdsChecker>(M, kHeisenbergLocality));
        if (opt.inject_fault) {
            Rational m0 = M.twist().coset[0] + Rational(1);
            checkers.back()->override_mode(0, m0, M.mode(0, m0) * Rational(2));
        }
    }
    if (opt.inject_fault) rep.parameters["fault"] = "mode " + mode_name(0, M.twist().coset[0] + Rational(1)) + " scaled by 2";
    std::vector<Report> parts(static_cast<std::size_t>(jobs));
    parallel_for(nv, jobs, [&](int w, int v) {
        BorcherdsChecker& chk = *checkers[static_cast<std::size_t>(w)];
        Report& part = parts[static_cast<std::size_t>(w)];
        for (std::size_t i = 0; i < items.size(); ++i) {
            const Item& it = items[i];
            BorcherdsResult res = chk.check({it.a, it.b, it.m, it.k, it.n, v});
            CheckRecord r;
            r.outcome = res.outcome;
            r.order = static_cast<long long>(v) * static_cast<long long>(items.size()) + static_cast<long long>(i);
            if (res.outcome == Outcome::Fail) {
                r.input = {{"a", it.a + 1}, {"b", it.b + 1}, {"m", rational_json(it.m)}, {"k", rational_json(it.k)},
                           {"n", it.n}, {"v", v}};
                r.witness = {{"lhs", vector_json(res.lhs)}, {"rhs", vector_json(res.rhs)}};
            }
            part.add(std::move(r));
        }
    });
    for (const auto& p : parts) rep.merge(p);
    return rep;
}

Report suite_equivariance(const FockModule& M, const SweepOptions& opt) {
    Report rep;
    std::vector<CheckRecord> recs(static_cast<std::size_t>(M.dim()));
    parallel_for(M.dim(), opt.jobs, [&](int, int a) {
        FieldCheck fc = phi_equivariance_check(M, basis_vector(M.dim(), a));
        CheckRecord& r = recs[static_cast<std::size_t>(a)];
        r.outcome = fc.outcome;
        r.order = a;
        r.input = {{"a", a + 1}};
        r.witness = diff_witness(fc.diff);
    });
    for (auto& r : recs) rep.add(std::move(r));
    return rep;
}

Report suite_translation(const FockModule& M, const SweepOptions& opt) {
    Report rep;
    std::vector<CheckRecord> recs(static_cast<std::size_t>(M.dim()));
    parallel_for(M.dim(), opt.jobs, [&](int, int a) {
        FieldCheck fc = translation_check(M, basis_vector(M.dim(), a));
        CheckRecord& r = recs[static_cast<std::size_t>(a)];
        r.outcome = fc.outcome;
        r.order = a;
        r.input = {{"a", a + 1}};
        r.witness = diff_witness(fc.diff);
    });
    for (auto& r : recs) rep.add(std::move(r));
    return rep;
}

Report suite_locality(const FockModule& M, const SweepOptions& opt) {
    Report rep;
    rep.parameters["order"] = kHeisenbergLocality;
    std::vector<Field> ys;
    for (int a = 0; a < M.dim(); ++a) ys.push_back(field_of(M, basis_vector(M.dim(), a)));
    std::vector<int> all(static_cast<std::size_t>(M.basis()->size()));
    for (int v = 0; v < M.basis()->size(); ++v) all[static_cast<std::size_t>(v)] = v;
    const int d = M.dim();
    std::vector<CheckRecord> recs(static_cast<std::size_t>(d * d));
    parallel_for(d * d, opt.jobs, [&](int, int i) {
        int a = i / d, b = i % d;
        LocalityReport lr = check_locality(ys[static_cast<std::size_t>(a)], ys[static_cast<std::size_t>(b)],
                                           kHeisenbergLocality, all);
        CheckRecord& r = recs[static_cast<std::size_t>(i)];
        r.outcome = lr.mismatched > 0 ? Outcome::Fail : (lr.compared > 0 ? Outcome::Pass : Outcome::Inconclusive);
        r.order = i;
        r.input = {{"a", a + 1}, {"b", b + 1}};
        r.witness = {{"compared", lr.compared}, {"mismatched", lr.mismatched}, {"first_vector", lr.first_vector}};
    });
    for (auto& r : recs) rep.add(std::move(r));
    return rep;
}

Report suite_nproduct(const FockModule& M, const SweepOptions& opt) {
    Report rep;
    const Rational& D = M.spec().cutoff;
    const TwistPair& tp = M.twist();
    const int d = M.dim();
    const Field I = identity_field(M.basis());
    std::vector<Field> ys;
    for (int a = 0; a < d; ++a) ys.push_back(field_of(M, basis_vector(d, a)));

    auto zero_field = [&](const Field& f) {
        FieldDiff diff = compare_fields(f, Field(f.basis(), f.weight()), D);
        return diff;
    };
    // rules with the identity field, one block of six per generator
    std::vector<CheckRecord> unary(static_cast<std::size_t>(d * 6));
    parallel_for(d, opt.jobs, [&](int, int a) {
        const Field& y = ys[static_cast<std::size_t>(a)];
        auto put = [&](int slot, const std::string& rule, const FieldDiff& diff) {
            CheckRecord& r = unary[static_cast<std::size_t>(a * 6 + slot)];
            r.outcome = outcome_of(diff);
            r.order = a * 6 + slot;
            r.input = {{"rule", rule}, {"a", a + 1}};
            r.witness = diff_witness(diff);
        };
        for (int n = 0; n <= 2; ++n)
            put(n, "a_(" + std::to_string(n) + ")I = 0", zero_field(nth_product(y, I, n, std::max(kHeisenbergLocality, n + 1))));
        put(3, "a_(-1)I = a", compare_fields(nth_product(y, I, -1, kHeisenbergLocality), y, D));
        put(4, "a_(-2)I = D_z a", compare_fields(nth_product(y, I, -2, kHeisenbergLocality), d_z(y), D));
        Field dz2 = d_z(d_z(y));
        dz2 *= Rational(1, 2);
        put(5, "a_(-3)I = D_z^(2) a", compare_fields(nth_product(y, I, -3, kHeisenbergLocality), dz2, D));
    });

    // pairs: first product, zeroth product, normally ordered expansion
    const long long base = static_cast<long long>(unary.size());
    std::vector<CheckRecord> binary(static_cast<std::size_t>(d * d * 3));
    parallel_for(d * d, opt.jobs, [&](int, int i) {
        int a = i / d, b = i % d;
        const Field& ya = ys[static_cast<std::size_t>(a)];
        const Field& yb = ys[static_cast<std::size_t>(b)];
        auto put = [&](int slot, const std::string& rule, const FieldDiff& diff) {
            CheckRecord& r = binary[static_cast<std::size_t>(i * 3 + slot)];
            r.outcome = outcome_of(diff);
            r.order = base + i * 3 + slot;
            r.input = {{"rule", rule}, {"a", a + 1}, {"b", b + 1}};
            r.witness = diff_witness(diff);
        };
        Field pairing = I;
        pairing *= tp.gram(a, b);
        put(0, "a_(1)b = (a|b)I", compare_fields(nth_product(ya, yb, 1, kHeisenbergLocality), pairing, D));
        put(1, "a_(0)b = 0", zero_field(nth_product(ya, yb, 0, kHeisenbergLocality)));
        Field rhs = nth_product(ya, yb, -1, kHeisenbergLocality);
        Rational c = form(tp, mul(operator_binom(tp, tp.coset[static_cast<std::size_t>(a)], 2), basis_vector(d, a)),
                          basis_vector(d, b));
        Field corr = z_power(I, Rational(-2));
        corr *= c;
        rhs += corr;
        put(2, ":Y(a)Y(b): expansion", compare_fields(normally_ordered(ya, yb), rhs, D));
    });
    Json rules = Json::object();
    auto tally = [&](const CheckRecord& r) {
        Json& t = rules[r.input.at("rule").get<std::string>()];
        if (t.is_null()) t = {{"passed", 0}, {"failed", 0}, {"inconclusive", 0}};
        const char* key = r.outcome == Outcome::Pass ? "passed" : r.outcome == Outcome::Fail ? "failed" : "inconclusive";
        t[key] = t[key].get<int>() + 1;
    };
    for (const auto& r : unary) tally(r);
    for (const auto& r : binary) tally(r);
    for (auto& r : unary) rep.add(std::move(r));
    for (auto& r : binary) rep.add(std::move(r));
    rep.extra["rules"] = rules;
    return rep;
}

}  // namespace

ModuleSpec parse_session(const Json& j) {
    try {
        if (!j.is_object()) throw SpecError("session must be a JSON object");
        if (!j.contains("blocks") || !j.at("blocks").is_array() || j.at("blocks").empty())
            throw SpecError("session needs a non-empty \"blocks\" array");
        ModuleSpec s;
        int offset = 0;
        for (const Json& b : j.at("blocks")) {
            if (!b.is_object()) throw SpecError("each block must be an object");
            BlockDecl d;
            const std::string kind = b.at("kind").get<std::string>();
            if (kind == "even")
                d.kind = BlockKind::Even;
            else if (kind == "odd")
                d.kind = BlockKind::Odd;
            else
                throw SpecError("block kind must be \"even\" or \"odd\", got \"" + kind + "\"");
            d.ell = get_int(b, "ell");
            d.alpha0 = get_rational(b, "alpha0");
            d.offset = offset;
            offset += d.dim();
            BlockParams p;
            read_params(b, p);
            s.blocks.push_back(d);
            s.params.push_back(p);
        }
        if (j.contains("params")) {
            const Json& ps = j.at("params");
            if (!ps.is_array() || ps.size() != s.blocks.size())
                throw SpecError("\"params\" must list one object per block");
            for (std::size_t i = 0; i < ps.size(); ++i) read_params(ps[i], s.params[i]);
        }
        if (!j.contains("cutoff")) throw SpecError("session needs a \"cutoff\"");
        s.cutoff = get_rational(j, "cutoff");
        s.zero_cap = j.contains("zero_cap") ? get_int(j, "zero_cap") : 0;
        s.conductor = j.contains("conductor") && !j.at("conductor").is_null() ? get_int(j, "conductor") : 0;
        s.validate();
        return s;
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError(e.what());
    }
}

ModuleSpec load_session(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SpecError(path + ": " + e.what());
    }
    return parse_session(j);
}

Json session_to_json(const ModuleSpec& spec) {
    Json j;
    Json blocks = Json::array();
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        const BlockDecl& d = spec.blocks[i];
        Json b = {{"kind", d.kind == BlockKind::Even ? "even" : "odd"}, {"ell", d.ell}, {"alpha0", d.alpha0.str()}};
        const BlockParams& p = spec.params[i];
        if (p.a1) b["a1"] = p.a1->str();
        if (p.a2) b["a2"] = p.a2->str();
        if (p.a) b["a"] = p.a->str();
        blocks.push_back(b);
    }
    j["blocks"] = blocks;
    j["cutoff"] = spec.cutoff.str();
    j["zero_cap"] = spec.zero_cap;
    j["conductor"] = spec.effective_conductor();
    return j;
}

Json rational_json(const Rational& r) { return r.str(); }

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& [i, c] : v.entries()) a.push_back(Json::array({i, c.str()}));
    return a;
}

void Report::add(CheckRecord r) {
    ++checked;
    switch (r.outcome) {
        case Outcome::Pass: ++passed; break;
        case Outcome::Inconclusive: ++inconclusive; break;
        case Outcome::Fail: {
            ++failed;
            auto pos = std::upper_bound(failures.begin(), failures.end(), r.order,
                                        [](long long o, const CheckRecord& x) { return o < x.order; });
            if (static_cast<std::size_t>(pos - failures.begin()) < kMaxFailures) {
                failures.insert(pos, std::move(r));
                if (failures.size() > kMaxFailures) failures.pop_back();
            }
            break;
        }
    }
}

void Report::merge(const Report& o) {
    checked += o.checked;
    passed += o.passed;
    failed += o.failed;
    inconclusive += o.inconclusive;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    std::sort(failures.begin(), failures.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.order < b.order; });
    if (failures.size() > kMaxFailures) failures.resize(kMaxFailures);
}

int Report::exit_code() const {
    if (failed > 0) return 1;
    if (passed == 0 && inconclusive > 0) return 3;
    return 0;
}

Json Report::to_json(bool timing) const {
    Json j;
    j["suite"] = suite;
    j["parameters"] = parameters;
    j["counts"] = {{"checked", checked}, {"passed", passed}, {"failed", failed}, {"inconclusive", inconclusive}};
    Json fs = Json::array();
    for (const auto& f : failures) fs.push_back({{"input", f.input}, {"witness", f.witness}});
    j["failures"] = fs;
    j["failures_truncated"] = static_cast<long>(failures.size()) < failed;
    j["outcome"] = exit_code() == 0 ? "pass" : exit_code() == 1 ? "fail" : "inconclusive";
    for (const auto& [k, v] : extra.items()) j[k] = v;
    if (timing) j["wall_time_ms"] = wall_time_ms;
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"heisenberg", "virasoro",    "borcherds", "equivariance",
                                                "locality",   "nproduct",    "translation"};
    return names;
}

Report run_suite(const std::string& suite, const ModuleSpec& spec, const SweepOptions& opt) {
    if (opt.inject_fault && suite != "borcherds" && suite != "virasoro")
        throw SpecError("--inject-fault is available for the borcherds and virasoro suites");
    const auto t0 = std::chrono::steady_clock::now();
    FockModule M(spec);
    Report rep;
    if (suite == "heisenberg")
        rep = suite_heisenberg(M, opt);
    else if (suite == "virasoro")
        rep = suite_virasoro(M, opt);
    else if (suite == "borcherds")
        rep = suite_borcherds(M, opt);
    else if (suite == "equivariance")
        rep = suite_equivariance(M, opt);
    else if (suite == "locality")
        rep = suite_locality(M, opt);
    else if (suite == "nproduct")
        rep = suite_nproduct(M, opt);
    else if (suite == "translation")
        rep = suite_translation(M, opt);
    else
        throw SpecError("unknown suite \"" + suite + "\"");
    rep.suite = suite;
    rep.parameters["spec"] = session_to_json(spec);
    if (opt.inject_fault) rep.parameters["inject_fault"] = true;
    rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

BuildOutput build_module(const ModuleSpec& spec) {
    FockModule M(spec);
    const FockBasis& B = *M.basis();
    BuildOutput out;

    out.basis = Json::array();
    std::map<Rational, int> per_level;
    for (int i = 0; i < B.size(); ++i) {
        out.basis.push_back({{"index", i}, {"monomial", B.monomial_str(i)}, {"energy", B.energy(i).str()}});
        ++per_level[B.energy(i)];
    }

    auto op_json = [](const std::string& name, const Operator& op) {
        Json t = Json::array();
        Json inexact = Json::array();
        for (int c = 0; c < op.size(); ++c) {
            if (!op.exact(c)) {
                inexact.push_back(c);
                continue;
            }
            for (const auto& [r, x] : op.column(c).entries()) t.push_back(Json::array({r, c, x.str()}));
        }
        return Json{{"name", name}, {"shift", op.shift().str()}, {"inexact_columns", inexact}, {"triplets", t}};
    };
    out.operators = Json::array();
    const Rational reach = spec.cutoff + Rational(1);
    for (int g = 0; g < M.dim(); ++g)
        for (const Rational& m : exponents(M, g, reach)) {
            Json o = op_json(mode_name(g, m), M.mode(g, m));
            o["generator"] = g + 1;
            o["exponent"] = m.str();
            out.operators.push_back(o);
        }
    out.operators.push_back(op_json("L0", l0_mode(M)));

    Json levels = Json::array();
    for (const auto& [e, n] : per_level) levels.push_back({{"energy", e.str()}, {"count", n}});
    out.manifest = {{"format", "twistlog-build/1"},
                    {"spec", session_to_json(spec)},
                    {"dim_h", M.dim()},
                    {"basis_size", B.size()},
                    {"levels", levels},
                    {"operator_count", out.operators.size()},
                    {"files", Json::array({"basis.json", "operators.json"})}};
    return out;
}

Json spectrum(const ModuleSpec& spec, const std::optional<Rational>& max_level) {
    const Rational top = max_level.value_or(spec.cutoff);
    if (top > spec.cutoff) throw SpecError("level " + top.str() + " exceeds the cutoff " + spec.cutoff.str());
    FockModule M(spec);
    Operator l0 = l0_mode(M);
    Json j;
    j["spec"] = session_to_json(spec);
    j["vacuum_weight"] = l0.exact(0) ? Json(l0.column(0).at(0).str()) : Json();
    Json levels = Json::array();
    bool logarithmic = false;
    for (const Rational& lv : M.basis()->levels()) {
        if (lv > top) break;
        Json e{{"level", lv.str()}};
        try {
            JordanData jd = jordan_structure(M, l0, lv);
            e["dim"] = jd.dim;
            e["eigenvalue"] = jd.eigenvalue.str();
            e["partition"] = jd.partition;
            e["exact"] = jd.exact;
            for (int p : jd.partition) logarithmic = logarithmic || p > 1;
        } catch (const std::logic_error& err) {
            e["error"] = err.what();
        }
        levels.push_back(e);
    }
    j["levels"] = levels;
    j["logarithmic"] = logarithmic;
    return j;
}

int default_jobs() {
    if (const char* s = std::getenv("TWISTLOG_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    return 1;
}

}  // namespace twistlog
