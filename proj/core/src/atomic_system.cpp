#include "ensys/atomic_system.hpp"

#include "ensys/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

namespace ensys {

AtomicEquation AtomicEquation::commutative_key() const {
    if (kind == EquationKind::Unit) return *this;
    return {kind, std::min(i, j), std::max(i, j), k};
}

VarIndex AtomicEquation::max_index() const { return std::max({i, j, k}); }

std::string AtomicEquation::to_string() const {
    auto x = [](VarIndex v) { return "x" + std::to_string(v); };
    switch (kind) {
        case EquationKind::Unit: return x(i) + " = 1";
        case EquationKind::Add: return x(i) + " + " + x(j) + " = " + x(k);
        case EquationKind::Mul: return x(i) + " * " + x(j) + " = " + x(k);
    }
    return {};
}

bool EnSystem::add(const AtomicEquation& eq) {
    if (!index_.insert(eq).second) return false;
    equations_.push_back(eq);
    return true;
}

VarIndex EnSystem::add_variable(std::string label) {
    ++n_;
    if (!label.empty()) labels_[n_] = std::move(label);
    return n_;
}

void EnSystem::set_label(VarIndex v, std::string label) { labels_[v] = std::move(label); }

bool EnSystem::has_kind(EquationKind kind) const {
    return std::any_of(equations_.begin(), equations_.end(),
                       [kind](const AtomicEquation& e) { return e.kind == kind; });
}

EnSystem full_En(VarIndex n) {
    if (n == 0) throw InvalidArgument("full_En: n must be at least 1");
    EnSystem s(n);
    for (VarIndex i = 1; i <= n; ++i) s.add(AtomicEquation::unit(i));
    for (VarIndex i = 1; i <= n; ++i)
        for (VarIndex j = 1; j <= n; ++j)
            for (VarIndex k = 1; k <= n; ++k) s.add(AtomicEquation::add(i, j, k));
    for (VarIndex i = 1; i <= n; ++i)
        for (VarIndex j = 1; j <= n; ++j)
            for (VarIndex k = 1; k <= n; ++k) s.add(AtomicEquation::mul(i, j, k));
    return s;
}

std::vector<Diagnostic> validate(const EnSystem& system) {
    using Sev = Diagnostic::Severity;
    std::vector<Diagnostic> out;
    std::vector<bool> used(system.n() + 1, false);
    std::set<AtomicEquation> seen;
    for (std::size_t pos = 0; pos < system.equations().size(); ++pos) {
        const auto& eq = system.equations()[pos];
        std::string where = "equation " + std::to_string(pos + 1) + " (" + eq.to_string() + ")";
        std::vector<VarIndex> idx{eq.i};
        if (eq.kind != EquationKind::Unit) idx.insert(idx.end(), {eq.j, eq.k});
        bool in_range = true;
        for (VarIndex v : idx) {
            if (v == 0 || v > system.n()) {
                in_range = false;
            } else {
                used[v] = true;
            }
        }
        if (!in_range)
            out.push_back({Sev::Error, "index-range",
                           where + ": index outside 1.." + std::to_string(system.n())});
        if (eq.kind != EquationKind::Unit && eq.i != eq.j && !seen.insert(eq.commutative_key()).second)
            out.push_back({Sev::Warning, "commutative-duplicate",
                           where + ": operands swapped copy of an earlier equation"});
    }
    for (VarIndex v = 1; v <= system.n(); ++v)
        if (!used[v])
            out.push_back({Sev::Warning, "unused-variable", "x" + std::to_string(v) + " occurs in no equation"});
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

// ---------------------------------------------------------------------------
// text serialization

std::string to_text(const EnSystem& system) {
    std::ostringstream os;
    os << "@vars " << system.n() << "\n";
    for (const auto& [v, label] : system.labels()) os << "@label " << v << " " << label << "\n";
    for (const auto& eq : system.equations()) os << eq.to_string() << "\n";
    return os.str();
}

namespace {

class LineReader {
public:
    LineReader(std::string_view line, std::size_t lineno) : s_(line), line_(lineno) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::uint64_t number() {
        skip_ws();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc() || ptr == s_.data() + pos_) fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }
    VarIndex variable() {
        if (peek() != 'x') fail("expected a variable like x3");
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected digits after 'x'");
        auto v = number();
        if (v == 0 || v > 0xFFFFFFFFull) fail("variable index out of range");
        return static_cast<VarIndex>(v);
    }
    std::string_view rest() {
        skip_ws();
        auto r = s_.substr(pos_);
        while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.remove_suffix(1);
        pos_ = s_.size();
        return r;
    }
    bool consume_word(std::string_view w) {
        skip_ws();
        if (s_.substr(pos_, w.size()) != w) return false;
        pos_ += w.size();
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

private:
    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

EnSystem from_text(std::string_view text) {
    EnSystem system;
    std::optional<VarIndex> declared;
    VarIndex max_index = 0;
    std::size_t max_line = 0;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        LineReader r(line, lineno);
        if (r.at_end()) continue;
        if (r.peek() == '@') {
            if (r.consume_word("@vars")) {
                declared = static_cast<VarIndex>(r.number());
                if (!r.at_end()) r.fail("trailing characters after @vars");
            } else if (r.consume_word("@label")) {
                auto v = static_cast<VarIndex>(r.number());
                system.set_label(v, std::string(r.rest()));
            } else {
                r.fail("unknown directive");
            }
            continue;
        }

        AtomicEquation eq;
        VarIndex first = r.variable();
        char op = r.peek();
        if (op == '=') {
            r.expect('=');
            if (r.number() != 1) r.fail("unit equations must read 'xi = 1'");
            eq = AtomicEquation::unit(first);
        } else if (op == '+' || op == '*') {
            r.expect(op);
            VarIndex second = r.variable();
            r.expect('=');
            VarIndex third = r.variable();
            eq = op == '+' ? AtomicEquation::add(first, second, third)
                           : AtomicEquation::mul(first, second, third);
        } else {
            r.fail("expected '=', '+' or '*'");
        }
        if (!r.at_end()) r.fail("trailing characters");
        if (eq.max_index() > max_index) {
            max_index = eq.max_index();
            max_line = lineno;
        }
        system.add(eq);
    }
    if (declared && max_index > *declared)
        throw ParseError("x" + std::to_string(max_index) + " exceeds @vars " + std::to_string(*declared), max_line, 0);
    system.set_n(declared.value_or(max_index));
    return system;
}

}  // namespace ensys
