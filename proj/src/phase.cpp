#include "gerbecat/phase.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

namespace gerbecat {

namespace {

Rational reduce_mod_one(const Rational& r) {
    long long p = r.numerator();
    long long q = r.denominator();
    long long m = p % q;
    if (m < 0) m += q;
    return Rational(m, q);
}

}  // namespace

Phase::Phase(const Rational& r) : r_(reduce_mod_one(r)) {}

Rational parse_rational(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.empty()) throw Error("empty rational");
    auto to_ll = [&](std::string_view v) {
        v = trim(v);
        std::size_t used = 0;
        long long out = 0;
        try {
            out = std::stoll(std::string(v), &used);
        } catch (const std::exception&) {
            throw Error("malformed rational '" + std::string(s) + "'");
        }
        if (used != v.size()) throw Error("malformed rational '" + std::string(s) + "'");
        return out;
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(to_ll(s));
    long long q = to_ll(s.substr(slash + 1));
    if (q == 0) throw Error("zero denominator in '" + std::string(s) + "'");
    return Rational(to_ll(s.substr(0, slash)), q);
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

cplx unit_circle(const Rational& r) {
    // exact values at quarter turns keep small examples free of round-off
    Rational m = reduce_mod_one(r);
    if (m == Rational(0)) return {1.0, 0.0};
    if (m == Rational(1, 2)) return {-1.0, 0.0};
    if (m == Rational(1, 4)) return {0.0, 1.0};
    if (m == Rational(3, 4)) return {0.0, -1.0};
    double t = 2.0 * std::numbers::pi * static_cast<double>(m.numerator()) /
               static_cast<double>(m.denominator());
    return {std::cos(t), std::sin(t)};
}

long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

Rational snap_to_rational(double x, long long max_den, double* err) {
    x -= std::floor(x);
    Rational best(0);
    double best_err = 2.0;
    for (long long q = 1; q <= max_den; ++q) {
        long long p = std::llround(x * static_cast<double>(q));
        double e = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
        e = std::min(e, 1.0 - e);
        if (e < best_err - 1e-12) {
            best_err = e;
            best = Rational(p, q);
        }
    }
    if (err) *err = best_err;
    return Phase(best).value();
}

}  // namespace gerbecat
