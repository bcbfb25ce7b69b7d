#include "ensys_cli/cli.hpp"

#include "ensys/atomic_system.hpp"
#include "ensys/compiler.hpp"
#include "ensys/errors.hpp"
#include "ensys/generators.hpp"
#include "ensys/json_io.hpp"
#include "ensys/normalize.hpp"
#include "ensys/oracles.hpp"
#include "ensys/parser.hpp"
#include "ensys/solver.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace ensys::cli {

namespace {

using nlohmann::ordered_json;

struct Settings {
    // compile
    std::string expression;
    std::string mode = "flatten";
    VarIndex pad = 0;
    unsigned long family_limit = kDefaultFamilyLimit;
    // generate
    std::string family;
    std::uint64_t n = 0;
    VarIndex m = 0;
    std::string psi_path;
    VarIndex x1 = 1;
    VarIndex x2 = 2;
    // count
    std::string system_path;
    std::string domain = "N";
    std::string bound;
    std::vector<VarIndex> bounded;
    VarIndex inputs = 0;
    bool keep = false;
    unsigned threads = 1;
    std::uint64_t budget = SolveOptions{}.node_budget;
    // verify
    std::string suite;
    std::uint64_t max = 0;
    unsigned max_k = 6;
    // shared
    bool json = false;
    std::string output;
};

std::string read_source(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

EnSystem load_system(const std::string& path) {
    const std::string text = read_source(path);
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        auto at = line.find_first_not_of(" \t\r");
        if (at == std::string::npos || line[at] == '#') continue;
        if (line[at] == '{') return system_from_json(text);
        break;
    }
    return from_text(text);
}

std::string box_summary(const Box& box, VarIndex n) {
    std::ostringstream os;
    os << (box.kind == DomainKind::NonNegative ? "N" : "Z") << ", B=" << to_string(box.bound);
    std::vector<VarIndex> bounded;
    for (VarIndex v = 1; v <= n; ++v)
        if (box.range(v).hi) bounded.push_back(v);
    if (bounded.size() != n) {
        os << " on";
        for (std::size_t t = 0; t < bounded.size(); ++t) os << (t ? "," : " ") << 'x' << bounded[t];
        os << "; other variables unbounded";
    }
    return os.str();
}

std::string count_flags(const Box& box, VarIndex n) {
    std::ostringstream os;
    os << "--domain " << (box.kind == DomainKind::NonNegative ? "N" : "Z") << " --bound " << to_string(box.bound);
    std::vector<VarIndex> bounded;
    for (VarIndex v = 1; v <= n; ++v)
        if (box.range(v).hi) bounded.push_back(v);
    if (bounded.size() != n) {
        os << " --bounded ";
        for (std::size_t t = 0; t < bounded.size(); ++t) os << (t ? "," : "") << bounded[t];
    }
    return os.str();
}

ordered_json box_json(const Box& box, VarIndex n) {
    ordered_json bounded = ordered_json::array();
    for (VarIndex v = 1; v <= n; ++v)
        if (box.range(v).hi) bounded.push_back(v);
    return {{"domain", box.kind == DomainKind::NonNegative ? "N" : "Z"},
            {"bound", to_string(box.bound)},
            {"bounded", std::move(bounded)}};
}

void emit(const Settings& cfg, std::ostream& out, const std::string& body) {
    if (cfg.output.empty()) {
        out << body;
        return;
    }
    std::ofstream file(cfg.output);
    if (!file) throw InvalidArgument("cannot write " + cfg.output);
    file << body;
}

ordered_json parsed(const std::string& doc) { return ordered_json::parse(doc); }

// ---------------------------------------------------------------- compile

int cmd_compile(const Settings& cfg, std::ostream& out) {
    if (cfg.mode != "flatten" && cfg.mode != "lemma1")
        throw InvalidArgument("--mode must be flatten or lemma1");
    const Polynomial d = parse_polynomial(cfg.expression);
    const NormalizedPair pair = split_nonneg(d);

    EnSystem system;
    std::vector<std::pair<VarIndex, std::string>> provenance;
    ordered_json detail;
    if (cfg.mode == "flatten") {
        auto result = flatten(pair);
        system = std::move(result.system);
        for (const auto& s : result.plan.subterms) provenance.emplace_back(s.var, s.definition.to_string());
        detail = parsed(to_json(result.plan));
    } else {
        auto result = lemma1_system(pair, cfg.family_limit);
        system = std::move(result.system);
        for (const auto& [v, poly] : result.tau.entries) provenance.emplace_back(v, poly.to_string());
        detail = parsed(to_json(result.tau));
    }
    if (cfg.pad) system = pad_to(system, cfg.pad);

    if (cfg.json) {
        ordered_json doc = {{"command", "compile"},
                            {"mode", cfg.mode},
                            {"expression", cfg.expression},
                            {"lhs", parsed(to_json(pair.lhs))},
                            {"rhs", parsed(to_json(pair.rhs))},
                            {"p", pair.p},
                            {cfg.mode == "flatten" ? "plan" : "tau", std::move(detail)},
                            {"system", parsed(to_json(system))}};
        emit(cfg, out, doc.dump(2) + "\n");
        return kOk;
    }
    std::ostringstream os;
    os << "# ensys compile --mode " << cfg.mode << "\n";
    os << "# expression: " << cfg.expression << "\n";
    os << "# normalized: " << pair.lhs.to_string() << " = " << pair.rhs.to_string() << "\n";
    os << "# original variables: x1..x" << pair.p << "\n";
    for (const auto& [v, text] : provenance) os << "# " << (cfg.mode == "flatten" ? "x" : "tau x") << v << " := " << text << "\n";
    if (pair.p > 0)
        os << "# count with: --inputs " << pair.p << "\n";
    os << to_text(system);
    emit(cfg, out, os.str());
    return kOk;
}

// --------------------------------------------------------------- generate

EnSystem default_psi() {
    EnSystem psi(3);
    psi.add(AtomicEquation::add(3, 3, 3));
    psi.add(AtomicEquation::add(1, 3, 2));
    return psi;
}

int cmd_generate(const Settings& cfg, std::ostream& out) {
    const auto& f = cfg.family;
    auto need_n = [&] {
        if (cfg.n == 0) throw InvalidArgument("generate " + f + " needs --n");
    };
    Generated g;
    std::vector<std::string> notes;
    if (f == "thm2") {
        need_n();
        g = gen_theorem2(cfg.n, cfg.m ? cfg.m : theorem2_min_m(cfg.n));
    } else if (f == "thm3") {
        need_n();
        g = gen_theorem3(cfg.n, cfg.m ? cfg.m : theorem3_min_m(cfg.n));
    } else if (f == "thm4") {
        need_n();
        g = gen_theorem4(cfg.n, cfg.m ? cfg.m : theorem4_min_m(cfg.n));
    } else if (f == "observation") {
        need_n();
        g = gen_observation(static_cast<VarIndex>(cfg.n));
    } else if (f == "fullEn") {
        need_n();
        g = {"fullEn", "n=" + std::to_string(cfg.n), full_En(static_cast<VarIndex>(cfg.n)), std::nullopt};
    } else if (f == "thm1") {
        need_n();
        EnSystem psi = cfg.psi_path.empty() ? default_psi() : load_system(cfg.psi_path);
        g = gen_theorem1(psi, cfg.x1, cfg.x2, static_cast<VarIndex>(cfg.n));
        notes.push_back("psi: " + std::to_string(psi.n()) + " variables, x" + std::to_string(cfg.x1) + " = f(x" +
                        std::to_string(cfg.x2) + ")");
    } else if (f == "thm5") {
        need_n();
        auto t5 = gen_theorem5(cfg.n);
        std::string levels;
        for (unsigned k : t5.levels) levels += (levels.empty() ? "" : ",") + std::to_string(k);
        notes.push_back("binary digits set at k = " + levels);
        notes.push_back("x = x" + std::to_string(t5.x) + ", y = x" + std::to_string(t5.y) + ", W = x" +
                        std::to_string(t5.w));
        g = {"thm5", "n=" + std::to_string(cfg.n), std::move(t5.system), std::nullopt};
    } else {
        throw InvalidArgument("unknown family \"" + f + "\"");
    }
    if (cfg.pad && f != "thm2" && f != "thm3" && f != "thm4") g.system = pad_to(g.system, cfg.pad);

    const VarIndex n = g.system.n();
    if (cfg.json) {
        ordered_json doc = {{"command", "generate"},
                            {"family", g.family},
                            {"parameters", g.parameters},
                            {"recommended_box", g.recommended_box ? box_json(*g.recommended_box, n) : ordered_json()},
                            {"notes", notes},
                            {"system", parsed(to_json(g.system))}};
        emit(cfg, out, doc.dump(2) + "\n");
        return kOk;
    }
    std::ostringstream os;
    os << "# ensys generate " << g.family << "\n";
    os << "# parameters: " << g.parameters << "\n";
    for (const auto& note : notes) os << "# " << note << "\n";
    if (g.recommended_box) {
        os << "# recommended box: " << box_summary(*g.recommended_box, n) << "\n";
        os << "# count with: " << count_flags(*g.recommended_box, n) << "\n";
    }
    os << to_text(g.system);
    emit(cfg, out, os.str());
    return kOk;
}

// ------------------------------------------------------------------ count

int cmd_count(const Settings& cfg, std::ostream& out) {
    EnSystem system = load_system(cfg.system_path);
    auto diagnostics = validate(system);
    if (has_errors(diagnostics)) {
        for (const auto& d : diagnostics)
            if (d.severity == Diagnostic::Severity::Error) throw InvalidArgument(d.message);
    }
    if (cfg.domain != "N" && cfg.domain != "Z") throw InvalidArgument("--domain must be N or Z");
    BigInt bound;
    if (bound.set_str(cfg.bound, 10) != 0 || sgn(bound) < 0)
        throw InvalidArgument("--bound must be a non-negative integer");
    Box box = cfg.domain == "N" ? Box::naturals(bound) : Box::integers(bound);

    std::vector<bool> keep_bounded(system.n() + 1, cfg.bounded.empty() && cfg.inputs == 0);
    for (VarIndex v : cfg.bounded) {
        if (v < 1 || v > system.n()) throw InvalidArgument("--bounded: x" + std::to_string(v) + " is out of range");
        keep_bounded[v] = true;
    }
    for (VarIndex v = 1; v <= std::min(cfg.inputs, system.n()); ++v) keep_bounded[v] = true;
    for (VarIndex v = 1; v <= system.n(); ++v)
        if (!keep_bounded[v]) box.unbounded(v, v);

    SolveOptions options;
    options.keep = cfg.keep;
    options.threads = std::max(1u, cfg.threads);
    options.node_budget = cfg.budget;
    CountReport report = count_solutions(system, box, options);

    if (cfg.json) {
        emit(cfg, out, to_json(report) + "\n");
        return kOk;
    }
    std::ostringstream os;
    os << "count: " << to_string(report.count) << "\n";
    os << "box: " << box_summary(box, system.n()) << "\n";
    os << "exhausted: " << (report.exhausted ? "true" : "false") << "\n";
    os << "bound_flag: " << (report.bound_flag ? "true" : "false") << "\n";
    os << "bound_attained: " << (report.bound_attained ? "true" : "false") << "\n";
    os << "nodes: " << report.stats.nodes << "\n";
    if (report.solutions)
        for (const auto& sol : *report.solutions) {
            os << "(";
            for (std::size_t t = 0; t < sol.size(); ++t) os << (t ? ", " : "") << to_string(sol[t]);
            os << ")\n";
        }
    emit(cfg, out, os.str());
    return report.exhausted ? kOk : kBudget;
}

// ----------------------------------------------------------------- verify

struct Row {
    std::string instance;
    std::string claimed;
    std::string computed;
    bool pass;
};

int report_rows(const Settings& cfg, std::ostream& out, const std::string& suite, const std::vector<Row>& rows) {
    bool all = true;
    for (const auto& r : rows) all = all && r.pass;
    if (cfg.json) {
        ordered_json list = ordered_json::array();
        for (const auto& r : rows)
            list.push_back({{"instance", r.instance}, {"claimed", r.claimed}, {"computed", r.computed}, {"pass", r.pass}});
        ordered_json doc = {{"command", "verify"}, {"suite", suite}, {"rows", std::move(list)}, {"pass", all}};
        emit(cfg, out, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& r : rows)
            os << r.instance << "  claimed " << r.claimed << "  computed " << r.computed << "  "
               << (r.pass ? "PASS" : "FAIL") << "\n";
        os << suite << ": " << rows.size() << " rows, " << (all ? "all PASS" : "FAIL") << "\n";
        emit(cfg, out, os.str());
    }
    return all ? kOk : kVerifyFail;
}

int cmd_verify(const Settings& cfg, std::ostream& out) {
    const auto& s = cfg.suite;
    std::vector<Row> rows;
    if (s == "jacobi") {
        const std::uint64_t max = cfg.max ? cfg.max : 50;
        if (max > 10000) throw CapExceeded("jacobi: --max is capped at 10000");
        for (std::uint64_t k = 1; k <= max; ++k) {
            BigInt claimed = 8 * divisor_sum_s(k);
            BigInt computed = r4_bruteforce(k);
            rows.push_back({"r4(" + std::to_string(k) + ")", to_string(claimed), to_string(computed), claimed == computed});
        }
    } else if (s == "lemma2") {
        for (unsigned k = 0; k <= cfg.max_k; ++k) {
            const Polynomial q = Polynomial::constant(1, {"x"}) - Polynomial::constant(2, {"x"}) * chebyshev_P(k);
            const std::uint64_t computed = sturm_root_count(q, std::nullopt, std::nullopt);
            const std::uint64_t claimed = std::uint64_t{1} << k;
            rows.push_back({"roots(1-2P_" + std::to_string(k) + ")", std::to_string(claimed), std::to_string(computed),
                            claimed == computed});
        }
    } else if (s == "two-squares") {
        const std::uint64_t max = cfg.max ? cfg.max : 3;
        if (max > 12) throw CapExceeded("two-squares: --max is capped at 12");
        for (std::uint64_t n = 1; n <= max; ++n) {
            const std::uint64_t oracle = count_two_squares(static_cast<unsigned>(n));
            rows.push_back({"two-squares n=" + std::to_string(n), std::to_string(n), std::to_string(oracle), oracle == n});
        }
    } else if (s == "thm5") {
        const std::uint64_t max = cfg.max ? cfg.max : 64;
        if (max > 1024) throw CapExceeded("thm5: --max is capped at 1024");
        for (std::uint64_t n = 1; n <= max; ++n) {
            const std::uint64_t zeros = count_Wn_real_zeros(n);
            rows.push_back({"zeros(W_" + std::to_string(n) + ")", std::to_string(n), std::to_string(zeros), zeros == n});
        }
    } else if (s == "conjecture-bound") {
        const VarIndex n = cfg.n ? static_cast<VarIndex>(cfg.n) : 3;
        if (n < 2 || n > 8) throw CapExceeded("conjecture-bound: --n must lie in 2..8");
        Generated g = gen_observation(n);
        SolveOptions options;
        options.keep = true;
        options.node_budget = cfg.budget;
        CountReport report = count_solutions(g.system, *g.recommended_box, options);
        const BigInt limit = two_pow(1ul << (n - 1));
        for (const auto& sol : *report.solutions) {
            BigInt largest = 0;
            VarIndex where = 1;
            for (VarIndex v = 1; v <= n; ++v)
                if (abs(sol[v - 1]) > largest) {
                    largest = abs(sol[v - 1]);
                    where = v;
                }
            std::string tuple;
            for (const auto& x : sol) tuple += (tuple.empty() ? "" : ",") + to_string(x);
            std::string computed = "max |x| = " + to_string(largest);
            if (largest == limit) computed += " at x" + std::to_string(where) + " (equality)";
            rows.push_back({"solution (" + tuple + ")", "|x| <= 2^(2^" + std::to_string(n - 1) + ") = " + to_string(limit),
                            computed, within_conjecture_bound(largest, n)});
        }
        rows.push_back({"solution count", "2", to_string(report.count), report.count == 2});
    } else {
        throw InvalidArgument("unknown suite \"" + s + "\"");
    }
    return report_rows(cfg, out, s, rows);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Settings cfg;
    CLI::App app{"Build, count and check systems of atomic equations x=1, x+y=z, x*y=z.", "ensys"};
    app.require_subcommand(1);

    auto* compile = app.add_subcommand("compile", "Compile a polynomial equation D = 0 into an atomic system");
    compile->add_option("expression", cfg.expression, "Polynomial D, e.g. \"x^2-1\"")->required();
    compile->add_option("--mode", cfg.mode, "flatten or lemma1")->capture_default_str();
    compile->add_option("--pad", cfg.pad, "Pad the result to this many variables");
    compile->add_option("--limit", cfg.family_limit, "Largest family size accepted by lemma1")->capture_default_str();

    auto* generate = app.add_subcommand("generate", "Emit a system from one of the built-in families");
    generate->add_option("family", cfg.family, "thm1 | thm2 | thm3 | thm4 | thm5 | observation | fullEn")->required();
    generate->add_option("--n", cfg.n, "Family parameter n");
    generate->add_option("--m", cfg.m, "Variable count (defaults to the smallest admissible)");
    generate->add_option("--pad", cfg.pad, "Pad the result to this many variables");
    generate->add_option("--psi", cfg.psi_path, "thm1: system file for psi (defaults to the identity function)");
    generate->add_option("--x1", cfg.x1, "thm1: index of the value variable")->capture_default_str();
    generate->add_option("--x2", cfg.x2, "thm1: index of the argument variable")->capture_default_str();

    auto* count = app.add_subcommand("count", "Count the solutions of a system inside a box");
    count->add_option("system", cfg.system_path, "System file (text or JSON), - for stdin")->required();
    count->add_option("--domain", cfg.domain, "N (0..B) or Z (-B..B)")->capture_default_str();
    count->add_option("--bound", cfg.bound, "Per-variable bound B")->required();
    count->add_option("--bounded", cfg.bounded, "Only these variables are bounded (comma list)")->delimiter(',');
    count->add_option("--inputs", cfg.inputs, "Only x1..xP are bounded");
    count->add_flag("--keep", cfg.keep, "List the solutions");
    count->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Check a numeric identity over a range");
    verify->add_option("suite", cfg.suite, "jacobi | lemma2 | two-squares | thm5 | conjecture-bound")->required();
    verify->add_option("--max", cfg.max, "Largest instance");
    verify->add_option("--max-k", cfg.max_k, "lemma2: largest k")->capture_default_str();
    verify->add_option("--n", cfg.n, "conjecture-bound: observation size");

    for (auto* sub : {compile, generate, count, verify}) {
        sub->add_flag("--json", cfg.json, "Machine-readable output");
        sub->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");
    }
    for (auto* sub : {count, verify}) sub->add_option("--budget", cfg.budget, "Search node budget")->capture_default_str();

    std::vector<const char*> argv{"ensys"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (const char* env = std::getenv("ENSYS_BUDGET")) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: ENSYS_BUDGET must be a non-negative integer\n";
            return kUsage;
        }
    }

    try {
        if (compile->parsed()) return cmd_compile(cfg, out);
        if (generate->parsed()) return cmd_generate(cfg, out);
        if (count->parsed()) return cmd_count(cfg, out);
        return cmd_verify(cfg, out);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace ensys::cli
