#include "ensys/generators.hpp"

#include "ensys/chains.hpp"
#include "ensys/compiler.hpp"
#include "ensys/errors.hpp"
#include "ensys/oracles.hpp"
#include "ensys/parser.hpp"

#include <algorithm>
#include <map>

namespace ensys {

VarIndex theorem1_min_n(VarIndex s) { return 12 + 2 * s; }

VarIndex theorem2_min_m(std::uint64_t n) {
    if (n < 2) throw InvalidArgument("theorem 2 needs n >= 2");
    return 3 + 2 * floor_log2(n - 1);
}

VarIndex theorem3_min_m(std::uint64_t n) {
    if (n < 1) throw InvalidArgument("theorem 3 needs n >= 1");
    return 11 + 2 * floor_log2(2 * n - 1);
}

VarIndex theorem4_min_m(std::uint64_t n) {
    if (n < 4) throw InvalidArgument("theorem 4 needs n >= 4");
    return 8 + 2 * floor_log2(n - 3);
}

namespace {

void require_m(VarIndex m, VarIndex min, const std::string& inequality) {
    if (m < min)
        throw InvalidArgument("m = " + std::to_string(m) + " violates m >= " + inequality + " = " +
                              std::to_string(min));
}

// Emits the chain into s starting from variable `start`; returns the variable
// holding each chain position. Labels show the value reached.
std::vector<VarIndex> emit_chain(EnSystem& s, const Chain& chain, VarIndex start) {
    auto values = chain.replay();
    std::vector<VarIndex> at{start};
    for (std::size_t t = 0; t < chain.steps.size(); ++t) {
        VarIndex v = s.add_variable(to_string(values[t + 1]));
        const auto& step = chain.steps[t];
        s.add(chain.kind == Chain::Kind::Additive ? AtomicEquation::add(at[step.lhs], at[step.rhs], v)
                                                  : AtomicEquation::mul(at[step.lhs], at[step.rhs], v));
        at.push_back(v);
    }
    return at;
}

std::string params(std::uint64_t n, VarIndex m) { return "n=" + std::to_string(n) + " m=" + std::to_string(m); }

}  // namespace

Generated gen_theorem2(std::uint64_t n, VarIndex m) {
    require_m(m, theorem2_min_m(n), "3 + 2[log2(n-1)]");
    EnSystem s;
    VarIndex one = s.add_variable("1");
    VarIndex x = s.add_variable("x");
    VarIndex y = s.add_variable("y");
    s.add(AtomicEquation::unit(one));
    auto chain = emit_chain(s, addition_chain(n - 1), one);
    s.add(AtomicEquation::add(x, y, chain.back()));
    return {"thm2", params(n, m), pad_to(s, m), Box::naturals(n)};
}

Generated gen_theorem3(std::uint64_t n, VarIndex m) {
    require_m(m, theorem3_min_m(n), "11 + 2[log2(2n-1)]");
    EnSystem s;
    VarIndex one = s.add_variable("1");
    VarIndex two = s.add_variable("2");
    VarIndex three = s.add_variable("3");
    VarIndex five = s.add_variable("5");
    VarIndex x = s.add_variable("x");
    VarIndex x_plus_1 = s.add_variable("x+1");
    VarIndex odd = s.add_variable("2x+1");
    VarIndex odd_sq = s.add_variable("(2x+1)^2");
    VarIndex y = s.add_variable("y");
    VarIndex even = s.add_variable("2y");
    VarIndex even_sq = s.add_variable("(2y)^2");
    s.add(AtomicEquation::unit(one));
    s.add(AtomicEquation::add(one, one, two));
    s.add(AtomicEquation::add(two, one, three));
    s.add(AtomicEquation::add(three, two, five));
    s.add(AtomicEquation::add(x, one, x_plus_1));
    s.add(AtomicEquation::add(x, x_plus_1, odd));
    s.add(AtomicEquation::mul(odd, odd, odd_sq));
    s.add(AtomicEquation::add(y, y, even));
    s.add(AtomicEquation::mul(even, even, even_sq));
    auto chain = emit_chain(s, power_chain(5, 2 * n - 1), five);
    s.add(AtomicEquation::add(odd_sq, even_sq, chain.back()));
    return {"thm3", params(n, m), pad_to(s, m), Box::naturals(pow_ui(5, 2 * n - 1))};
}

Generated gen_theorem4(std::uint64_t n, VarIndex m) {
    require_m(m, theorem4_min_m(n), "8 + 2[log2(n-3)]");
    EnSystem s;
    VarIndex one = s.add_variable("1");
    VarIndex two = s.add_variable("2");
    VarIndex x = s.add_variable("x");
    VarIndex y = s.add_variable("y");
    s.add(AtomicEquation::unit(one));
    s.add(AtomicEquation::add(one, one, two));
    const std::uint64_t e = n % 2 == 0 ? (n - 2) / 2 : (n - 3) / 2;
    VarIndex power = emit_chain(s, power_chain(2, e), two).back();
    if (n % 2 == 0) {
        s.add(AtomicEquation::mul(x, y, power));
    } else {
        VarIndex xy = s.add_variable("xy");
        VarIndex diff = s.add_variable("xy-" + to_string(two_pow(e)));
        VarIndex x_sq = s.add_variable("x^2");
        VarIndex y_sq = s.add_variable("y^2");
        VarIndex sum = s.add_variable("x^2+y^2");
        VarIndex prod = s.add_variable("(xy-" + to_string(two_pow(e)) + ")(x^2+y^2)");
        s.add(AtomicEquation::mul(x, y, xy));
        s.add(AtomicEquation::add(diff, power, xy));
        s.add(AtomicEquation::mul(x, x, x_sq));
        s.add(AtomicEquation::mul(y, y, y_sq));
        s.add(AtomicEquation::add(x_sq, y_sq, sum));
        s.add(AtomicEquation::mul(diff, sum, prod));
        s.add(AtomicEquation::add(prod, prod, prod));
    }
    EnSystem padded = pad_to(s, m);
    Box box = Box::integers(two_pow((n - 2) / 2) + 1);
    for (VarIndex v = 1; v <= padded.n(); ++v)
        if (v != x && v != y) box.unbounded(v, v);
    return {"thm4", params(n, m), std::move(padded), box};
}

Generated gen_observation(VarIndex n) {
    if (n < 2) throw InvalidArgument("observation needs n >= 2");
    EnSystem s(n);
    s.add(AtomicEquation::add(1, 1, 2));
    s.add(AtomicEquation::mul(1, 1, 2));
    for (VarIndex i = 2; i < n; ++i) s.add(AtomicEquation::mul(i, i, i + 1));
    std::optional<Box> box;
    if (n <= 24) box = Box::integers(two_pow(1ul << (n - 1)));
    return {"observation", "n=" + std::to_string(n), std::move(s), box};
}

Generated gen_theorem1(const EnSystem& psi, VarIndex x1, VarIndex x2, VarIndex n) {
    const VarIndex s = psi.n();
    if (x1 < 1 || x1 > s || x2 < 1 || x2 > s)
        throw InvalidArgument("theorem 1: roles must index variables of psi (1.." + std::to_string(s) + ")");
    if (has_errors(validate(psi))) throw InvalidArgument("theorem 1: psi is not a valid system");
    if (n < theorem1_min_n(s))
        throw InvalidArgument("n = " + std::to_string(n) + " violates n >= m(f) = 12 + 2s = " +
                              std::to_string(theorem1_min_n(s)));

    EnSystem u = psi;
    const VarIndex half = n / 2;
    const VarIndex fillers = n - half - 6 - s;
    for (VarIndex f = 0; f < fillers; ++f) u.add(AtomicEquation::unit(u.add_variable("z" + std::to_string(f + 1))));

    std::vector<VarIndex> chain;
    for (VarIndex i = 1; i <= half; ++i) chain.push_back(u.add_variable("t" + std::to_string(i)));
    VarIndex w = u.add_variable("w");
    VarIndex y = u.add_variable("y");
    VarIndex t = u.add_variable("t");
    VarIndex z = u.add_variable("z");
    VarIndex uu = u.add_variable("u");
    VarIndex vv = u.add_variable("v");

    u.add(AtomicEquation::unit(chain[0]));
    for (VarIndex i = 0; i + 1 < half; ++i) u.add(AtomicEquation::add(chain[i], chain[0], chain[i + 1]));
    u.add(AtomicEquation::add(chain.back(), chain.back(), w));
    u.add(AtomicEquation::add(w, y, x2));
    if (n % 2 == 0)
        u.add(AtomicEquation::add(y, y, y));
    else
        u.add(AtomicEquation::unit(y));
    u.add(AtomicEquation::unit(t));
    u.add(AtomicEquation::add(z, t, x1));
    u.add(AtomicEquation::add(uu, vv, z));

    if (u.n() != n) throw std::logic_error("theorem 1: variable accounting mismatch");
    return {"thm1", "n=" + std::to_string(n) + " s=" + std::to_string(s), std::move(u), std::nullopt};
}

bool check_single_fold(const EnSystem& psi, VarIndex x1, VarIndex x2, const Box& box) {
    auto report = count_solutions(psi, box, {.keep = true});
    std::map<std::pair<BigInt, BigInt>, int> witnesses;
    for (const auto& sol : *report.solutions)
        if (++witnesses[{sol[x1 - 1], sol[x2 - 1]}] > 1) return false;
    return true;
}

Polynomial chebyshev_P(unsigned k, std::uint64_t degree_limit) {
    if (k >= 63 || (std::uint64_t{1} << k) > degree_limit)
        throw CapExceeded("chebyshev_P: degree 2^" + std::to_string(k) + " exceeds the limit " +
                          std::to_string(degree_limit));
    Polynomial p = Polynomial::variable("x");
    const Polynomial one = Polynomial::constant(1, {"x"});
    const Polynomial four = Polynomial::constant(4, {"x"});
    for (unsigned i = 0; i < k; ++i) p = four * p * (one - p);
    return p;
}

Theorem5System gen_theorem5(std::uint64_t n) {
    if (n < 1) throw InvalidArgument("theorem 5 needs n >= 1");
    Theorem5System out;
    out.n = n;
    for (unsigned k = 0; (n >> k) != 0; ++k)
        if ((n >> k) & 1u) out.levels.push_back(k);
    const unsigned top = out.levels.back();

    Circuit c;
    out.x = c.input("x");
    out.y = c.input("y");
    VarIndex one = c.one();

    std::vector<VarIndex> p{out.x};
    for (unsigned k = 1; k <= top; ++k) {
        VarIndex rest = c.sub(one, p.back());
        VarIndex prod = c.mul(p.back(), rest);
        VarIndex twice = c.add(prod, prod);
        p.push_back(c.add(twice, twice));
        c.set_label(p.back(), "P_" + std::to_string(k));
    }
    std::vector<VarIndex> level_constant{0, one};
    while (level_constant.size() <= top) level_constant.push_back(c.add(level_constant.back(), one));

    VarIndex w = 0;
    for (unsigned k : out.levels) {
        VarIndex twice = c.add(p[k], p[k]);
        VarIndex q = c.sub(one, twice);
        c.set_label(q, "1-2P_" + std::to_string(k));
        VarIndex shift = k == 0 ? out.y : c.sub(out.y, level_constant[k]);
        VarIndex factor = c.add(c.square(q), c.square(shift));
        c.set_label(factor, "factor_" + std::to_string(k));
        w = w == 0 ? factor : c.mul(w, factor);
    }
    c.set_label(w, "W_" + std::to_string(n));
    c.assert_zero(w);
    out.w = w;
    out.steps = c.steps();
    out.system = std::move(c).take_system();
    return out;
}

Polynomial theorem5_polynomial(std::uint64_t n, std::uint64_t degree_limit) {
    if (n < 1) throw InvalidArgument("theorem 5 needs n >= 1");
    const std::vector<std::string> vars{"x", "y"};
    const Polynomial one = Polynomial::constant(1, vars);
    const Polynomial y = Polynomial::variable("y", vars);
    Polynomial w = one;
    for (unsigned k = 0; (n >> k) != 0; ++k) {
        if (((n >> k) & 1u) == 0) continue;
        Polynomial q = (one - Polynomial::constant(2, vars) * chebyshev_P(k, degree_limit)).with_variables(vars);
        Polynomial shift = y - Polynomial::constant(k, vars);
        w *= q * q + shift * shift;
    }
    return w;
}

GalleryReport gallery_count(GalleryEquation which, std::int64_t k, std::optional<std::int64_t> search_bound) {
    if (k > 100000 || k < -100000) throw CapExceeded("gallery_count: |k| must be at most 10^5");
    GalleryReport out;
    out.enumeration.n = 4;
    out.enumeration.kind = DomainKind::Integer;
    out.enumeration.exhausted = true;
    out.enumeration.solutions.emplace();
    auto& sols = *out.enumeration.solutions;

    if (which == GalleryEquation::ExponentialSurrogate) {
        out.closed_form = k >= 1 ? BigInt(k) : BigInt(0);
        const std::int64_t bound = search_bound.value_or(std::max<std::int64_t>(k < 0 ? -k : k, 1));
        // Each square must vanish, so s = 2^u and t = 2^v must be integers:
        // only u, v >= 0 can contribute.
        for (std::int64_t u = -bound; u <= bound; ++u) {
            for (std::int64_t v = -bound; v <= bound; ++v) {
                if (u < 0 || v < 0) continue;
                BigInt s = two_pow(static_cast<unsigned long>(u));
                BigInt t = two_pow(static_cast<unsigned long>(v));
                BigInt a = BigInt(u) + v - k + 1;
                BigInt value = a * a + (two_pow(u) - s) * (two_pow(u) - s) + (two_pow(v) - t) * (two_pow(v) - t);
                if (sgn(value) == 0) sols.push_back({BigInt(u), BigInt(v), s, t});
            }
        }
    } else {
        if (k >= 8 && k % 8 == 0) {
            std::uint64_t rest = static_cast<std::uint64_t>(k / 8 - 1);
            out.closed_form = rest == 0 ? BigInt(1) : BigInt(8 * divisor_sum_s(rest));
        } else {
            out.closed_form = 0;
        }
        const Polynomial d = parse_polynomial("8*(u^2+v^2+s^2+t^2+1) - x");
        const std::int64_t r = k > 0 ? static_cast<std::int64_t>(isqrt(BigInt(k / 8)).get_si()) : 0;
        // variables sort as s, t, u, v, x
        std::vector<BigInt> at(5);
        at[4] = k;
        // The innermost coordinate is read off as +-sqrt of what is left,
        // and each candidate is confirmed against D.
        for (std::int64_t u = -r; u <= r; ++u)
            for (std::int64_t v = -r; v <= r; ++v)
                for (std::int64_t s = -r; s <= r; ++s) {
                    const std::int64_t left = k / 8 - 1 - u * u - v * v - s * s;
                    if (k % 8 != 0 || left < 0 || !is_perfect_square(BigInt(left))) continue;
                    const std::int64_t root = isqrt(BigInt(left)).get_si();
                    const std::vector<std::int64_t> candidates =
                        root == 0 ? std::vector<std::int64_t>{0} : std::vector<std::int64_t>{-root, root};
                    for (std::int64_t t : candidates) {
                        at[0] = s;
                        at[1] = t;
                        at[2] = u;
                        at[3] = v;
                        if (sgn(d.evaluate(at)) == 0) sols.push_back({BigInt(u), BigInt(v), BigInt(s), BigInt(t)});
                    }
                }
        std::sort(sols.begin(), sols.end());
    }
    out.enumeration.count = sols.size();
    return out;
}

}  // namespace ensys
