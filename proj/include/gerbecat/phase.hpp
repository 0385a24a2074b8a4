#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gerbecat {

using Rational = boost::rational<long long>;
using cplx = std::complex<double>;

/// Raised for malformed or inconsistent input. `witness` carries the
/// offending indices when there are any.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, std::vector<int> witness = {})
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const std::vector<int>& witness() const { return witness_; }

private:
    std::vector<int> witness_;
};

/// Raised when two independent computations of the same quantity disagree.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& r);

/// exp(2 pi i r)
cplx unit_circle(const Rational& r);

/**
 * An element of U(1), written additively as a rational r in [0,1).
 * The represented complex number is exp(2 pi i r).
 */
class Phase {
public:
    Phase() = default;
    Phase(const Rational& r);  // NOLINT: implicit on purpose
    Phase(long long p, long long q) : Phase(Rational(p, q)) {}

    const Rational& value() const { return r_; }
    long long denominator() const { return r_.denominator(); }
    bool is_zero() const { return r_.numerator() == 0; }
    cplx to_complex() const { return unit_circle(r_); }
    std::string str() const { return to_string(r_); }

    static Phase parse(std::string_view s) { return Phase(parse_rational(s)); }

    Phase operator+(const Phase& o) const { return Phase(r_ + o.r_); }
    Phase operator-(const Phase& o) const { return Phase(r_ - o.r_); }
    Phase operator-() const { return Phase(-r_); }
    Phase& operator+=(const Phase& o) { return *this = *this + o; }
    Phase& operator-=(const Phase& o) { return *this = *this - o; }
    bool operator==(const Phase& o) const { return r_ == o.r_; }
    bool operator!=(const Phase& o) const { return r_ != o.r_; }
    bool operator<(const Phase& o) const { return r_ < o.r_; }

private:
    Rational r_{0};
};

long long lcm_ll(long long a, long long b);

/// Nearest rational p/q with q <= max_den to x, reduced into [0,1).
/// `err` receives |x - p/q| measured on the circle.
Rational snap_to_rational(double x, long long max_den, double* err = nullptr);

}  // namespace gerbecat
