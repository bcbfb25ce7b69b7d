#include "ensys/json_io.hpp"

#include "ensys/errors.hpp"

#include "json.hpp"

namespace ensys {

using nlohmann::json;

namespace {

const char* kind_name(EquationKind kind) {
    switch (kind) {
        case EquationKind::Unit: return "unit";
        case EquationKind::Add: return "add";
        case EquationKind::Mul: return "mul";
    }
    return "?";
}

json poly_doc(const Polynomial& poly) {
    json terms = json::array();
    for (const auto& [exps, coeff] : poly.terms())
        terms.push_back({{"exponents", exps}, {"coeff", to_string(coeff)}});
    return {{"variables", poly.variables()}, {"terms", std::move(terms)}};
}

json system_doc(const EnSystem& system) {
    json eqs = json::array();
    for (const auto& eq : system.equations()) {
        json e = {{"kind", kind_name(eq.kind)}, {"i", eq.i}};
        if (eq.kind != EquationKind::Unit) {
            e["j"] = eq.j;
            e["k"] = eq.k;
        }
        eqs.push_back(std::move(e));
    }
    json labels = json::object();
    for (const auto& [v, text] : system.labels()) labels[std::to_string(v)] = text;
    return {{"n", system.n()}, {"equations", std::move(eqs)}, {"labels", std::move(labels)}};
}

json parse_doc(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), 0, e.byte);
    }
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what(), 0, 0);
    } catch (const std::logic_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what(), 0, 0);
    }
}

BigInt decimal(const std::string& text) {
    BigInt v;
    if (text.empty() || v.set_str(text, 10) != 0) throw ParseError("not a decimal integer: \"" + text + "\"", 0, 0);
    return v;
}

}  // namespace

std::string to_json(const Polynomial& poly) { return poly_doc(poly).dump(2); }

std::string to_json(const EnSystem& system) { return system_doc(system).dump(2); }

std::string to_json(const CountReport& report) {
    json doc = {{"n", report.n},
                {"domain", report.kind == DomainKind::NonNegative ? "N" : "Z"},
                {"count", to_string(report.count)},
                {"exhausted", report.exhausted},
                {"bound_flag", report.bound_flag},
                {"bound_attained", report.bound_attained},
                {"nodes", report.stats.nodes}};
    if (report.solutions) {
        json sols = json::array();
        for (const auto& sol : *report.solutions) {
            json row = json::array();
            for (const auto& v : sol) row.push_back(to_string(v));
            sols.push_back(std::move(row));
        }
        doc["solutions"] = std::move(sols);
    }
    return doc.dump(2);
}

std::string to_json(const FlatteningPlan& plan) {
    json subterms = json::array();
    for (const auto& s : plan.subterms)
        subterms.push_back({{"var", s.var}, {"polynomial", s.definition.to_string()}});
    return json{{"p", plan.p}, {"lhs_var", plan.lhs_var}, {"rhs_var", plan.rhs_var}, {"subterms", std::move(subterms)}}
        .dump(2);
}

std::string to_json(const TauMap& tau) {
    json entries = json::array();
    for (const auto& [v, poly] : tau.entries) entries.push_back({{"var", v}, {"polynomial", poly.to_string()}});
    return json{{"p", tau.p}, {"tau", std::move(entries)}}.dump(2);
}

Polynomial polynomial_from_json(std::string_view text) {
    json doc = parse_doc(text);
    return guarded([&] {
        auto vars = doc.at("variables").get<std::vector<std::string>>();
        Polynomial p = Polynomial::constant(0, vars);
        if (p.variables() != vars) throw ParseError("variables must be sorted and distinct", 0, 0);
        for (const auto& term : doc.at("terms")) {
            auto exps = term.at("exponents").get<Polynomial::Exponents>();
            if (exps.size() != vars.size()) throw ParseError("exponent vector length mismatch", 0, 0);
            p.add_term(exps, decimal(term.at("coeff").get<std::string>()));
        }
        return p;
    });
}

EnSystem system_from_json(std::string_view text) {
    json doc = parse_doc(text);
    return guarded([&] {
        EnSystem s(doc.at("n").get<VarIndex>());
        for (const auto& e : doc.at("equations")) {
            const auto kind = e.at("kind").get<std::string>();
            const auto i = e.at("i").get<VarIndex>();
            if (kind == "unit")
                s.add(AtomicEquation::unit(i));
            else if (kind == "add")
                s.add(AtomicEquation::add(i, e.at("j").get<VarIndex>(), e.at("k").get<VarIndex>()));
            else if (kind == "mul")
                s.add(AtomicEquation::mul(i, e.at("j").get<VarIndex>(), e.at("k").get<VarIndex>()));
            else
                throw ParseError("unknown equation kind \"" + kind + "\"", 0, 0);
        }
        if (doc.contains("labels"))
            for (const auto& [key, value] : doc.at("labels").items())
                s.set_label(static_cast<VarIndex>(std::stoul(key)), value.get<std::string>());
        return s;
    });
}

}  // namespace ensys
