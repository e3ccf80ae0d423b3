#include "skinrecon/fme.hpp"

#include <algorithm>
#include <cmath>

#include "skinrecon/error.hpp"

namespace skinrecon {

namespace {

// Combined coefficients that cancel up to rounding are set to exactly zero.
double snap(double v, double scale) { return std::abs(v) <= 1e-12 * scale ? 0.0 : v; }
const Rational& snap(const Rational& v, const Rational&) { return v; }

double magnitude(double v) { return std::abs(v); }
Rational magnitude(const Rational& v) { return abs(v); }

template <class T>
bool is_zero(const T& v) {
    return v == T(0);
}

template <class T>
bool trivially_true(const Inequality<T>& r) {
    return std::all_of(r.a.begin(), r.a.end(), is_zero<T>) && r.b <= T(0);
}

// Scales a row so its largest coefficient magnitude is 1 (or |b| = 1 when
// every coefficient is zero), making positive multiples compare equal.
template <class T>
void normalize(Inequality<T>& r) {
    T m(0);
    for (const auto& v : r.a) m = std::max(m, magnitude(v));
    if (is_zero(m)) m = magnitude(r.b);
    if (is_zero(m)) return;
    for (auto& v : r.a) v /= m;
    r.b /= m;
}

template <class T>
bool row_less(const Inequality<T>& x, const Inequality<T>& y) {
    if (x.a != y.a) return std::lexicographical_compare(x.a.begin(), x.a.end(), y.a.begin(), y.a.end());
    return x.b < y.b;
}

template <class T>
bool row_equal(const Inequality<T>& x, const Inequality<T>& y) {
    return x.a == y.a && x.b == y.b;
}

void check_guard(std::size_t variables, std::size_t rows, const char* stage) {
    if (variables > kFmeMaxVariables)
        fail(ErrorCategory::resource_limit, std::string(stage) + ": " + std::to_string(variables) +
                                                " variables exceed the limit of " +
                                                std::to_string(kFmeMaxVariables));
    if (rows > kFmeMaxRows)
        fail(ErrorCategory::resource_limit, std::string(stage) + ": " + std::to_string(rows) +
                                                " inequalities exceed the limit of " + std::to_string(kFmeMaxRows) +
                                                " (each elimination pairs every lower with every upper bound)");
}

}  // namespace

template <class T>
void InequalitySystem<T>::validate() const {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].a.size() != variables)
            fail(ErrorCategory::invalid_argument, "inequality " + std::to_string(i) + " has " +
                                                      std::to_string(rows[i].a.size()) + " coefficients, expected " +
                                                      std::to_string(variables));
}

template <class T>
InequalitySystem<T> fme_eliminate(const InequalitySystem<T>& sys, std::size_t var) {
    sys.validate();
    require(var < sys.variables, "elimination variable " + std::to_string(var) + " out of range");
    check_guard(sys.variables, sys.rows.size(), "input system");

    std::vector<const Inequality<T>*> lower, upper, other;
    for (const auto& r : sys.rows) {
        if (r.a[var] > T(0))
            lower.push_back(&r);
        else if (r.a[var] < T(0))
            upper.push_back(&r);
        else
            other.push_back(&r);
    }
    check_guard(sys.variables - 1, lower.size() * upper.size() + other.size(), "eliminated system");

    InequalitySystem<T> out;
    out.variables = sys.variables - 1;
    out.rows.reserve(lower.size() * upper.size() + other.size());
    auto drop_column = [&](const Inequality<T>& r) {
        Inequality<T> q;
        q.a.reserve(out.variables);
        for (std::size_t j = 0; j < sys.variables; ++j)
            if (j != var) q.a.push_back(r.a[j]);
        q.b = r.b;
        return q;
    };
    for (const auto* r : other) out.rows.push_back(drop_column(*r));
    for (const auto* lo : lower) {
        const T sl = T(1) / lo->a[var];
        for (const auto* up : upper) {
            const T su = T(-1) / up->a[var];
            Inequality<T> q;
            q.a.reserve(out.variables);
            for (std::size_t j = 0; j < sys.variables; ++j) {
                if (j == var) continue;
                const T tl = lo->a[j] * sl, tu = up->a[j] * su;
                q.a.push_back(snap(T(tl + tu), T(magnitude(tl) + magnitude(tu))));
            }
            const T bl = lo->b * sl, bu = up->b * su;
            q.b = snap(T(bl + bu), T(magnitude(bl) + magnitude(bu)));
            out.rows.push_back(std::move(q));
        }
    }

    std::erase_if(out.rows, trivially_true<T>);
    for (auto& r : out.rows) normalize(r);
    std::sort(out.rows.begin(), out.rows.end(), row_less<T>);
    out.rows.erase(std::unique(out.rows.begin(), out.rows.end(), row_equal<T>), out.rows.end());
    return out;
}

template <class T>
bool has_contradiction(const InequalitySystem<T>& sys) {
    return std::any_of(sys.rows.begin(), sys.rows.end(), [](const Inequality<T>& r) {
        return std::all_of(r.a.begin(), r.a.end(), is_zero<T>) && r.b > T(0);
    });
}

template <class T>
FmeTrace fme_feasibility(InequalitySystem<T> sys) {
    FmeTrace t;
    t.row_counts.push_back(sys.rows.size());
    while (sys.variables > 0 && !has_contradiction(sys)) {
        sys = fme_eliminate(sys, sys.variables - 1);
        t.row_counts.push_back(sys.rows.size());
    }
    t.feasible = !has_contradiction(sys);
    return t;
}

template struct InequalitySystem<double>;
template struct InequalitySystem<Rational>;
template InequalitySystem<double> fme_eliminate(const InequalitySystem<double>&, std::size_t);
template InequalitySystem<Rational> fme_eliminate(const InequalitySystem<Rational>&, std::size_t);
template bool has_contradiction(const InequalitySystem<double>&);
template bool has_contradiction(const InequalitySystem<Rational>&);
template FmeTrace fme_feasibility(InequalitySystem<double>);
template FmeTrace fme_feasibility(InequalitySystem<Rational>);

Rational fme_worst_case_count(std::size_t n, std::size_t p) {
    require(n >= 1, "inequality count must be at least 1");
    // No elimination leaves the system as it is; the closed form would give 4.
    if (p == 0) return Rational(BigInt(n));
    const Rational q(BigInt(n), BigInt(4));
    Rational power(1);
    Rational base = q;
    // Binary exponentiation of (n/4)^(2p).
    for (BigInt e = BigInt(2) * p; e > 0; e >>= 1) {
        if ((e & 1) != 0) power *= base;
        base *= base;
    }
    return Rational(4) * power;
}

std::size_t decimal_digits(const BigInt& v) {
    const BigInt m = abs(v);
    if (m == 0) return 1;
    return m.str().size();
}

std::string leading_digits(const BigInt& v, std::size_t count) {
    return BigInt(abs(v)).str().substr(0, count);
}

namespace {

Rational exact(double v) {
    require(std::isfinite(v), "cannot convert a non-finite coefficient to a rational");
    if (v == 0.0) return Rational(0);
    int e = 0;
    const double m = std::frexp(v, &e);  // v = m 2^e, 0.5 <= |m| < 1
    const auto mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    BigInt num(mant), den(1);
    if (e >= 0)
        num <<= e;
    else
        den <<= -e;
    return Rational(num, den);
}

}  // namespace

InequalitySystem<Rational> to_rational(const InequalitySystem<double>& sys) {
    sys.validate();
    InequalitySystem<Rational> out;
    out.variables = sys.variables;
    for (const auto& r : sys.rows) {
        Inequality<Rational> q;
        for (double v : r.a) q.a.push_back(exact(v));
        q.b = exact(r.b);
        out.rows.push_back(std::move(q));
    }
    return out;
}

}  // namespace skinrecon
