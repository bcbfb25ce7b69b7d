#include "ensys/solver.hpp"

#include "ensys/errors.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <thread>

namespace ensys {

Box& Box::unbounded(VarIndex first, VarIndex last) {
    for (VarIndex v = first; v <= last && v != 0; ++v) overrides[v] = VarRange{};
    return *this;
}

Box& Box::pin(VarIndex v, const BigInt& value) {
    overrides[v] = VarRange{value, value};
    return *this;
}

VarRange Box::range(VarIndex v) const {
    if (auto it = overrides.find(v); it != overrides.end()) return it->second;
    if (kind == DomainKind::NonNegative) return {BigInt(0), bound};
    return {BigInt(-bound), bound};
}

Domains initial_domains(const EnSystem& system, const Box& box) {
    if (sgn(box.bound) < 0) throw InvalidArgument("box bound must be non-negative");
    Domains d(system.n() + 1);
    for (VarIndex v = 1; v <= system.n(); ++v) {
        VarRange r = box.range(v);
        Interval& iv = d[v];
        iv.lo_inf = !r.lo.has_value();
        iv.hi_inf = !r.hi.has_value();
        if (r.lo) iv.lo = *r.lo;
        if (r.hi) iv.hi = *r.hi;
        if (box.kind == DomainKind::NonNegative && (iv.lo_inf || iv.lo < 0)) {
            iv.lo_inf = false;
            iv.lo = 0;
        }
    }
    return d;
}

bool satisfies(const EnSystem& system, const std::vector<BigInt>& values) {
    if (values.size() != system.n()) return false;
    auto x = [&](VarIndex v) -> const BigInt& { return values.at(v - 1); };
    for (const auto& eq : system.equations()) {
        switch (eq.kind) {
            case EquationKind::Unit:
                if (x(eq.i) != 1) return false;
                break;
            case EquationKind::Add:
                if (x(eq.i) + x(eq.j) != x(eq.k)) return false;
                break;
            case EquationKind::Mul:
                if (x(eq.i) * x(eq.j) != x(eq.k)) return false;
                break;
        }
    }
    return true;
}

bool within_conjecture_bound(const BigInt& v, VarIndex n) {
    if (n == 0) return sgn(v) == 0;
    if (n - 1 >= 48) return true;  // 2^(2^47) bits exceed any representable value
    const std::size_t e = std::size_t{1} << (n - 1);
    const std::size_t bits = bit_length(v);
    if (bits <= e) return true;
    return equals_conjecture_bound(v, n);
}

bool equals_conjecture_bound(const BigInt& v, VarIndex n) {
    if (n == 0 || n - 1 >= 48) return false;
    const std::size_t e = std::size_t{1} << (n - 1);
    BigInt a = abs(v);
    return bit_length(a) == e + 1 && mpz_scan1(a.get_mpz_t(), 0) == e;
}

// ---------------------------------------------------------------------------
// propagation

namespace {

// Extended integer: finite value or +/- infinity.
struct Ext {
    BigInt v;
    int inf = 0;  // -1, 0, +1

    static Ext neg_inf() { return {0, -1}; }
    static Ext pos_inf() { return {0, 1}; }
};

Ext lo_of(const Interval& i) { return i.lo_inf ? Ext::neg_inf() : Ext{i.lo, 0}; }
Ext hi_of(const Interval& i) { return i.hi_inf ? Ext::pos_inf() : Ext{i.hi, 0}; }

bool less(const Ext& a, const Ext& b) {
    if (a.inf != b.inf) return a.inf < b.inf;
    return a.inf == 0 && a.v < b.v;
}

Ext plus(const Ext& a, const Ext& b) {
    if (a.inf != 0) return a;
    if (b.inf != 0) return b;
    return {a.v + b.v, 0};
}

Ext negate(const Ext& a) { return a.inf != 0 ? Ext{0, -a.inf} : Ext{-a.v, 0}; }

int sign(const Ext& a) { return a.inf != 0 ? a.inf : sgn(a.v); }

Ext times(const Ext& a, const Ext& b) {
    if ((a.inf == 0 && sgn(a.v) == 0) || (b.inf == 0 && sgn(b.v) == 0)) return {0, 0};
    if (a.inf != 0 || b.inf != 0) return {0, sign(a) * sign(b)};
    return {a.v * b.v, 0};
}

bool excludes(const Interval& i, long value) {
    return (!i.lo_inf && i.lo > value) || (!i.hi_inf && i.hi < value);
}

BigInt ceil_sqrt(const BigInt& v) {
    BigInt r = isqrt(v);
    if (r * r < v) ++r;
    return r;
}

class Propagator {
public:
    Propagator(const EnSystem& system, const std::vector<std::vector<std::size_t>>& watch, Domains& d)
        : sys_(system), watch_(watch), d_(d), queued_(system.size(), true) {
        for (std::size_t e = 0; e < system.size(); ++e) queue_.push_back(e);
    }

    bool run() {
        const std::size_t cap = 64 * sys_.size() + 1024;
        std::size_t revisions = 0;
        while (!queue_.empty()) {
            std::size_t e = queue_.front();
            queue_.pop_front();
            queued_[e] = false;
            if (++revisions > cap) return true;
            revise(sys_.equations()[e]);
            if (failed_) return false;
        }
        return true;
    }

private:
    // Intersects x_v with [lo, hi].
    void tighten(VarIndex v, const Ext& lo, const Ext& hi) {
        if (failed_) return;
        Interval& iv = d_[v];
        bool changed = false;
        if (lo.inf == 0 && (iv.lo_inf || lo.v > iv.lo)) {
            iv.lo = lo.v;
            iv.lo_inf = false;
            changed = true;
        }
        if (lo.inf > 0) failed_ = true;
        if (hi.inf == 0 && (iv.hi_inf || hi.v < iv.hi)) {
            iv.hi = hi.v;
            iv.hi_inf = false;
            changed = true;
        }
        if (hi.inf < 0) failed_ = true;
        if (iv.empty()) failed_ = true;
        if (changed && !failed_) {
            for (std::size_t e : watch_[v]) {
                if (!queued_[e]) {
                    queued_[e] = true;
                    queue_.push_back(e);
                }
            }
        }
    }

    void fix(VarIndex v, const BigInt& value) { tighten(v, {value, 0}, {value, 0}); }

    void revise(const AtomicEquation& eq) {
        switch (eq.kind) {
            case EquationKind::Unit: fix(eq.i, 1); return;
            case EquationKind::Add: revise_add(eq.i, eq.j, eq.k); return;
            case EquationKind::Mul: revise_mul(eq.i, eq.j, eq.k); return;
        }
    }

    void revise_add(VarIndex i, VarIndex j, VarIndex k) {
        if (i == j && j == k) return fix(i, 0);
        if (i == k) return fix(j, 0);
        if (j == k) return fix(i, 0);
        if (i == j) {
            // 2 x_i = x_k
            const Interval& I = d_[i];
            tighten(k, times(lo_of(I), {2, 0}), times(hi_of(I), {2, 0}));
            const Interval& K = d_[k];
            Ext lo = K.lo_inf ? Ext::neg_inf() : Ext{ceil_div(K.lo, 2), 0};
            Ext hi = K.hi_inf ? Ext::pos_inf() : Ext{floor_div(K.hi, 2), 0};
            return tighten(i, lo, hi);
        }
        tighten(k, plus(lo_of(d_[i]), lo_of(d_[j])), plus(hi_of(d_[i]), hi_of(d_[j])));
        tighten(i, plus(lo_of(d_[k]), negate(hi_of(d_[j]))), plus(hi_of(d_[k]), negate(lo_of(d_[j]))));
        tighten(j, plus(lo_of(d_[k]), negate(hi_of(d_[i]))), plus(hi_of(d_[k]), negate(lo_of(d_[i]))));
    }

    void revise_mul(VarIndex i, VarIndex j, VarIndex k) {
        if (i == j && j == k) return tighten(i, {0, 0}, {1, 0});
        if (i == j) return revise_square(i, k);
        if (i == k || j == k) {
            // x_a * x_b = x_a: x_a = 0 or x_b = 1
            VarIndex a = i == k ? i : j;
            VarIndex b = i == k ? j : i;
            if (excludes(d_[a], 0)) fix(b, 1);
            if (excludes(d_[b], 1)) fix(a, 0);
            return;
        }
        product_bounds(k, d_[i], d_[j]);
        quotient_bounds(i, k, j);
        quotient_bounds(j, k, i);
    }

    void product_bounds(VarIndex k, const Interval& I, const Interval& J) {
        Ext c[4] = {times(lo_of(I), lo_of(J)), times(lo_of(I), hi_of(J)), times(hi_of(I), lo_of(J)),
                    times(hi_of(I), hi_of(J))};
        Ext lo = c[0], hi = c[0];
        for (const auto& x : c) {
            if (less(x, lo)) lo = x;
            if (less(hi, x)) hi = x;
        }
        tighten(k, lo, hi);
    }

    // x_target * x_other = x_k
    void quotient_bounds(VarIndex target, VarIndex k, VarIndex other) {
        const Interval& K = d_[k];
        const Interval& J = d_[other];
        if (!excludes(J, 0)) return;
        if (J.fixed() && K.fixed()) {
            if (!mpz_divisible_p(K.lo.get_mpz_t(), J.lo.get_mpz_t())) {
                failed_ = true;
                return;
            }
            BigInt q = K.lo / J.lo;
            return fix(target, q);
        }
        if (!K.finite()) return;
        BigInt big = std::max(abs(K.lo), abs(K.hi));
        BigInt small = !J.lo_inf && J.lo > 0 ? J.lo : BigInt(-J.hi);
        BigInt q = big / small;
        tighten(target, {-q, 0}, {q, 0});
        if (failed_) return;
        if (sgn(K.lo) >= 0 && !J.lo_inf && sgn(J.lo) > 0) {
            Ext lo = J.hi_inf ? Ext{0, 0} : Ext{ceil_div(K.lo, J.hi), 0};
            tighten(target, lo, {floor_div(K.hi, J.lo), 0});
        }
    }

    // x_i^2 = x_k
    void revise_square(VarIndex i, VarIndex k) {
        const Interval& I = d_[i];
        if (excludes(I, 0) || (!I.lo_inf && sgn(I.lo) >= 0) || (!I.hi_inf && sgn(I.hi) <= 0)) {
            Ext a = times(lo_of(I), lo_of(I)), b = times(hi_of(I), hi_of(I));
            if (less(b, a)) std::swap(a, b);
            tighten(k, a, b);
        } else {
            Ext a = times(lo_of(I), lo_of(I)), b = times(hi_of(I), hi_of(I));
            tighten(k, {0, 0}, less(a, b) ? b : a);
        }
        if (failed_) return;
        const Interval& K = d_[k];
        if (!K.hi_inf) {
            if (sgn(K.hi) < 0) {
                failed_ = true;
                return;
            }
            BigInt r = isqrt(K.hi);
            tighten(i, {-r, 0}, {r, 0});
            if (failed_) return;
        }
        if (!K.lo_inf && sgn(K.lo) > 0) {
            BigInt s = ceil_sqrt(K.lo);
            const Interval& cur = d_[i];
            if (!cur.lo_inf && cur.lo > -s) tighten(i, {s, 0}, Ext::pos_inf());
            if (failed_) return;
            if (!cur.hi_inf && cur.hi < s) tighten(i, Ext::neg_inf(), {-s, 0});
        }
    }

    const EnSystem& sys_;
    const std::vector<std::vector<std::size_t>>& watch_;
    Domains& d_;
    std::deque<std::size_t> queue_;
    std::vector<bool> queued_;
    bool failed_ = false;
};

std::vector<std::vector<std::size_t>> build_watch(const EnSystem& system) {
    std::vector<std::vector<std::size_t>> watch(system.n() + 1);
    for (std::size_t e = 0; e < system.size(); ++e) {
        const auto& eq = system.equations()[e];
        if (eq.max_index() > system.n() || eq.i == 0)
            throw InvalidArgument("equation " + eq.to_string() + " refers to a variable outside 1.." +
                                  std::to_string(system.n()));
        watch[eq.i].push_back(e);
        if (eq.kind != EquationKind::Unit) {
            if (eq.j != eq.i) watch[eq.j].push_back(e);
            if (eq.k != eq.i && eq.k != eq.j) watch[eq.k].push_back(e);
        }
    }
    return watch;
}

bool propagate_with(const EnSystem& system, const std::vector<std::vector<std::size_t>>& watch, Domains& d) {
    for (VarIndex v = 1; v <= system.n(); ++v)
        if (d[v].empty()) return false;
    return Propagator(system, watch, d).run();
}

}  // namespace

bool propagate(const EnSystem& system, Domains& domains, DomainKind kind) {
    if (domains.size() != system.n() + 1) throw InvalidArgument("propagate: domain vector has the wrong size");
    if (kind == DomainKind::NonNegative) {
        for (VarIndex v = 1; v <= system.n(); ++v) {
            if (domains[v].lo_inf || domains[v].lo < 0) {
                domains[v].lo_inf = false;
                domains[v].lo = 0;
            }
        }
    }
    return propagate_with(system, build_watch(system), domains);
}

// ---------------------------------------------------------------------------
// search

namespace {

constexpr unsigned kEnumerateBelow = 16;

struct Partial {
    BigInt count = 0;
    std::vector<std::vector<BigInt>> solutions;
    bool bound_flag = true;
    bool bound_attained = false;
    std::uint64_t nodes = 0;
    std::uint64_t fixpoints = 0;
};

class Search {
public:
    Search(const EnSystem& system, const SolveOptions& options)
        : sys_(system), opt_(options), watch_(build_watch(system)) {}

    enum class Node { Dead, Leaf, Branch };

    // Propagates d in place; on Branch fills children in ascending order.
    Node expand(Domains& d, std::vector<Domains>& children, Partial& out) {
        if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > opt_.node_budget)
            throw BudgetExceeded("node budget of " + std::to_string(opt_.node_budget) + " exhausted");
        ++out.nodes;
        ++out.fixpoints;
        if (!propagate_with(sys_, watch_, d)) return Node::Dead;

        VarIndex best = 0;
        BigInt best_size;
        std::size_t best_score = 0;
        VarIndex unbounded = 0;
        for (VarIndex v = 1; v <= sys_.n(); ++v) {
            const Interval& iv = d[v];
            if (iv.fixed()) continue;
            if (!iv.finite()) {
                if (unbounded == 0) unbounded = v;
                continue;
            }
            BigInt size = iv.hi - iv.lo + 1;
            std::size_t score = 0;
            if (best != 0 && size == best_size) score = fixed_neighbours(d, v);
            if (best == 0 || size < best_size) {
                best = v;
                best_size = size;
                best_score = fixed_neighbours(d, v);
            } else if (size == best_size && score > best_score) {
                best = v;
                best_score = score;
            }
        }
        if (best == 0) {
            if (unbounded != 0)
                throw InvalidArgument("x" + std::to_string(unbounded) +
                                      " is unbounded and not determined by the other variables; "
                                      "give it a finite range");
            return Node::Leaf;
        }

        const Interval& iv = d[best];
        if (best_size <= kEnumerateBelow) {
            for (BigInt value = iv.lo; value <= iv.hi; ++value) {
                children.push_back(d);
                children.back()[best].lo = value;
                children.back()[best].hi = value;
            }
        } else {
            BigInt mid = floor_div(iv.lo + iv.hi, 2);
            children.push_back(d);
            children.back()[best].hi = mid;
            children.push_back(d);
            children.back()[best].lo = mid + 1;
        }
        return Node::Branch;
    }

    void record(const Domains& d, Partial& out) const {
        std::vector<BigInt> values;
        values.reserve(sys_.n());
        for (VarIndex v = 1; v <= sys_.n(); ++v) values.push_back(d[v].lo);
        if (!satisfies(sys_, values)) return;
        ++out.count;
        for (const auto& x : values) {
            if (!within_conjecture_bound(x, sys_.n())) out.bound_flag = false;
            if (equals_conjecture_bound(x, sys_.n())) out.bound_attained = true;
        }
        if (opt_.keep) out.solutions.push_back(std::move(values));
    }

    void dfs(Domains& d, Partial& out) {
        std::vector<Domains> children;
        switch (expand(d, children, out)) {
            case Node::Dead: return;
            case Node::Leaf: record(d, out); return;
            case Node::Branch:
                for (auto& child : children) dfs(child, out);
                return;
        }
    }

private:
    // Equations of v whose other operands are all fixed.
    std::size_t fixed_neighbours(const Domains& d, VarIndex v) const {
        std::size_t score = 0;
        for (std::size_t e : watch_[v]) {
            const auto& eq = sys_.equations()[e];
            bool ok = true;
            for (VarIndex u : {eq.i, eq.j, eq.k})
                if (u != 0 && u != v && !d[u].fixed()) ok = false;
            if (ok) ++score;
        }
        return score;
    }

    const EnSystem& sys_;
    const SolveOptions& opt_;
    std::vector<std::vector<std::size_t>> watch_;
    std::atomic<std::uint64_t> nodes_{0};
};

void merge(Partial& into, Partial&& from) {
    into.count += from.count;
    into.bound_flag = into.bound_flag && from.bound_flag;
    into.bound_attained = into.bound_attained || from.bound_attained;
    into.nodes += from.nodes;
    into.fixpoints += from.fixpoints;
    into.solutions.insert(into.solutions.end(), std::make_move_iterator(from.solutions.begin()),
                          std::make_move_iterator(from.solutions.end()));
}

}  // namespace

CountReport count_solutions(const EnSystem& system, const Box& box, const SolveOptions& options) {
    Search search(system, options);
    Domains root = initial_domains(system, box);
    Partial total;

    if (options.threads <= 1) {
        search.dfs(root, total);
    } else {
        // Breadth-first frontier, then independent subtrees per worker.
        std::deque<Domains> frontier{std::move(root)};
        std::vector<Domains> ready;
        const std::size_t want = 8 * static_cast<std::size_t>(options.threads);
        while (!frontier.empty() && frontier.size() + ready.size() < want) {
            Domains d = std::move(frontier.front());
            frontier.pop_front();
            std::vector<Domains> children;
            switch (search.expand(d, children, total)) {
                case Search::Node::Dead: break;
                case Search::Node::Leaf: search.record(d, total); break;
                case Search::Node::Branch:
                    for (auto& c : children) frontier.push_back(std::move(c));
                    break;
            }
        }
        for (auto& d : frontier) ready.push_back(std::move(d));

        std::vector<Partial> parts(ready.size());
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr error;
        auto worker = [&] {
            for (;;) {
                std::size_t idx = next.fetch_add(1);
                if (idx >= ready.size()) return;
                try {
                    search.dfs(ready[idx], parts[idx]);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(ready.size());
                    return;
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < options.threads; ++t) pool.emplace_back(worker);
        }
        if (error) std::rethrow_exception(error);
        for (auto& part : parts) merge(total, std::move(part));
    }

    CountReport report;
    report.n = system.n();
    report.kind = box.kind;
    report.count = total.count;
    report.exhausted = true;
    report.bound_flag = total.bound_flag;
    report.bound_attained = total.bound_attained;
    report.stats = {total.nodes, total.fixpoints};
    if (options.keep) {
        std::sort(total.solutions.begin(), total.solutions.end());
        report.solutions = std::move(total.solutions);
    }
    return report;
}

bool verify_unique_extension(const EnSystem& system, std::size_t p,
                             const std::vector<std::vector<BigInt>>& solutions) {
    if (p > system.n()) throw InvalidArgument("verify_unique_extension: p exceeds the variable count");
    std::map<std::vector<BigInt>, std::size_t> extensions;
    for (const auto& s : solutions) {
        if (s.size() != system.n()) throw InvalidArgument("verify_unique_extension: solution has wrong length");
        ++extensions[std::vector<BigInt>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(p))];
    }
    return std::all_of(extensions.begin(), extensions.end(), [](const auto& kv) { return kv.second == 1; });
}

}  // namespace ensys
