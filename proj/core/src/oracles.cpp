#include "ensys/oracles.hpp"

#include "ensys/errors.hpp"
#include "ensys/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ensys {

std::uint64_t count_two_squares(unsigned n) {
    if (n < 1 || n > 12) throw CapExceeded("count_two_squares: n must be in 1..12");
    const BigInt target = pow_ui(5, 2 * n - 1);
    std::uint64_t count = 0;
    BigInt odd = 1;  // 2x + 1
    for (; odd * odd <= target; odd += 2) {
        BigInt rest = target - odd * odd;  // must equal (2y)^2
        if (mpz_divisible_ui_p(rest.get_mpz_t(), 4) && is_perfect_square(BigInt(rest / 4))) ++count;
    }
    return count;
}

BigInt divisor_sum_s(std::uint64_t k) {
    if (k < 1) throw InvalidArgument("divisor_sum_s: k must be positive");
    BigInt sum = 0;
    for (std::uint64_t d = 1; d * d <= k; ++d) {
        if (k % d != 0) continue;
        std::uint64_t e = k / d;
        if (d % 4 != 0) sum += d;
        if (e != d && e % 4 != 0) sum += e;
    }
    return sum;
}

std::uint64_t r4_bruteforce(std::uint64_t k) {
    if (k > 10000) throw CapExceeded("r4_bruteforce: k must be at most 10^4");
    const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(k))) + 1;
    std::uint64_t count = 0;
    for (std::int64_t u = -r; u <= r; ++u)
        for (std::int64_t v = -r; v <= r; ++v)
            for (std::int64_t s = -r; s <= r; ++s) {
                const std::int64_t rest = static_cast<std::int64_t>(k) - u * u - v * v - s * s;
                if (rest < 0) continue;
                auto t = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
                if (t * t == rest) count += t == 0 ? 1 : 2;
            }
    return count;
}

RootSet closed_form_roots(unsigned k) {
    if (k > 20) throw CapExceeded("closed_form_roots: k must be at most 20");
    RootSet set{k, {}};
    const std::uint64_t count = std::uint64_t{1} << k;
    const double denom = std::ldexp(1.0, static_cast<int>(k) + 1);
    set.roots.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        set.roots.push_back((1.0 - std::cos(static_cast<double>(4 * i + 1) / denom * std::numbers::pi)) / 2.0);
    std::sort(set.roots.begin(), set.roots.end());
    return set;
}

double trig_residual(unsigned k, double x) {
    return std::abs(std::cos(std::ldexp(1.0, static_cast<int>(k)) * std::acos(1.0 - 2.0 * x)));
}

// ---------------------------------------------------------------------------
// Sturm sequences over Z[x] with positive-content stripping

namespace {

using Dense = std::vector<BigInt>;  // coefficient of x^i at index i

void trim(Dense& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

std::size_t degree(const Dense& p) { return p.size() - 1; }

void make_primitive(Dense& p) {
    BigInt g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

Dense derivative(const Dense& p) {
    Dense d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
    trim(d);
    return d;
}

// r with |lc(b)|^(deg a - deg b + 1) * a = q * b + r.
Dense positive_pseudo_remainder(Dense a, const Dense& b) {
    const std::size_t db = degree(b);
    const BigInt& lead = b.back();
    std::size_t steps = degree(a) - db + 1;
    std::size_t used = 0;
    while (!a.empty() && a.size() > db) {
        const std::size_t shift = degree(a) - db;
        BigInt top = a.back();
        for (auto& c : a) c *= lead;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= top * b[i];
        trim(a);
        ++used;
    }
    BigInt scale = pow_ui(lead, static_cast<unsigned long>(steps - used));
    for (auto& c : a) c *= scale;
    // the accumulated multiplier is lead^steps; flip when it is negative
    if (sgn(lead) < 0 && steps % 2 == 1)
        for (auto& c : a) c = -c;
    return a;
}

std::vector<Dense> sturm_sequence(const Dense& p) {
    std::vector<Dense> seq{p};
    make_primitive(seq[0]);
    Dense d = derivative(p);
    if (d.empty()) return seq;
    make_primitive(d);
    seq.push_back(std::move(d));
    while (true) {
        const Dense& a = seq[seq.size() - 2];
        const Dense& b = seq.back();
        if (degree(b) == 0) break;
        Dense r = positive_pseudo_remainder(a, b);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        make_primitive(r);
        seq.push_back(std::move(r));
    }
    return seq;
}

// Sign of p at num/den with den > 0.
int sign_at(const Dense& p, const BigRational& point) {
    const BigInt& a = point.get_num();
    const BigInt& b = point.get_den();
    BigInt acc = p.back();
    BigInt bpow = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        bpow *= b;
        acc = acc * a + p[i] * bpow;
    }
    return sgn(acc);
}

int sign_at_infinity(const Dense& p, int direction) {
    int s = sgn(p.back());
    if (direction < 0 && degree(p) % 2 == 1) s = -s;
    return s;
}

std::size_t variations(const std::vector<int>& signs) {
    std::size_t v = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

std::size_t variations_at(const std::vector<Dense>& seq, const std::optional<BigRational>& point, int direction) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& p : seq) signs.push_back(point ? sign_at(p, *point) : sign_at_infinity(p, direction));
    return variations(signs);
}

Dense to_dense(const Polynomial& poly, unsigned degree_cap) {
    if (poly.is_zero()) throw InvalidArgument("sturm_root_count: zero polynomial");
    std::size_t used = 0, var = 0;
    for (std::size_t i = 0; i < poly.variable_count(); ++i)
        if (poly.degree_in(i) > 0) {
            ++used;
            var = i;
        }
    if (used > 1) throw InvalidArgument("sturm_root_count: polynomial is not univariate");
    std::uint32_t deg = used == 0 ? 0 : poly.degree_in(var);
    if (deg > degree_cap)
        throw CapExceeded("sturm_root_count: degree " + std::to_string(deg) + " exceeds cap " +
                          std::to_string(degree_cap));
    Dense d(deg + 1, BigInt(0));
    for (const auto& [e, c] : poly.terms()) d[used == 0 ? 0 : e[var]] = c;
    return d;
}

}  // namespace

std::uint64_t sturm_root_count(const Polynomial& poly, const std::optional<BigRational>& lo,
                               const std::optional<BigRational>& hi, unsigned degree_cap) {
    Dense p = to_dense(poly, degree_cap);
    if (lo && hi && !(*lo < *hi)) throw InvalidArgument("sturm_root_count: need lo < hi");
    if (degree(p) == 0) return 0;
    auto seq = sturm_sequence(p);
    std::size_t at_lo = variations_at(seq, lo, -1);
    std::size_t at_hi = variations_at(seq, hi, +1);
    return at_lo - at_hi;
}

BigInt cauchy_root_bound(const Polynomial& poly) {
    Dense p = to_dense(poly, ~0u);
    if (degree(p) == 0) return 1;
    BigRational worst = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        BigRational ratio(abs(p[i]), abs(p.back()));
        ratio.canonicalize();
        worst = std::max(worst, ratio);
    }
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), worst.get_num_mpz_t(), worst.get_den_mpz_t());
    return r + 2;  // strictly above 1 + max|a_i / a_d|
}

std::uint64_t count_Wn_real_zeros(std::uint64_t n, unsigned degree_cap) {
    if (n < 1) throw InvalidArgument("count_Wn_real_zeros: n must be positive");
    if (n > 1024) throw CapExceeded("count_Wn_real_zeros: n must be at most 1024");
    static std::mutex cache_mutex;
    static std::map<std::pair<unsigned, unsigned>, std::uint64_t> cache;

    std::uint64_t total = 0;
    for (unsigned k = 0; (n >> k) != 0; ++k) {
        if (((n >> k) & 1u) == 0) continue;
        {
            std::lock_guard lock(cache_mutex);
            if (auto it = cache.find({k, degree_cap}); it != cache.end()) {
                total += it->second;
                continue;
            }
        }
        if ((std::uint64_t{1} << k) > degree_cap)
            throw CapExceeded("count_Wn_real_zeros: 1 - 2 P_" + std::to_string(k) + " exceeds the Sturm degree cap");
        Polynomial q = Polynomial::constant(1, {"x"}) - Polynomial::constant(2, {"x"}) * chebyshev_P(k);
        BigInt r = cauchy_root_bound(q);
        std::uint64_t c = sturm_root_count(q, BigRational(-r), BigRational(r), degree_cap);
        {
            std::lock_guard lock(cache_mutex);
            cache[{k, degree_cap}] = c;
        }
        total += c;
    }
    return total;
}

}  // namespace ensys
