// Copyright 2026 The conefact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefact {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

using IVec = std::vector<int64_t>;
using QVec = std::vector<Rational>;

inline int sign(const Rational &x) { return x.sign(); }
inline int sign(const BigInt &x) { return x.sign(); }

inline Rational rat(int64_t num, int64_t den = 1) { return Rational(num, den); }

inline BigInt numer(const Rational &x) { return boost::multiprecision::numerator(x); }
inline BigInt denom(const Rational &x) { return boost::multiprecision::denominator(x); }

inline double to_double(const Rational &x) { return x.convert_to<double>(); }
inline long double to_ldouble(const Rational &x) { return x.convert_to<long double>(); }

inline std::string to_string(const Rational &x) {
    if (denom(x) == 1) {
        return numer(x).str();
    }
    return numer(x).str() + "/" + denom(x).str();
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string &text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        if (q == 0) {
            throw std::invalid_argument("zero denominator");
        }
        return Rational(p, q);
    } catch (const std::runtime_error &) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

/// Smallest rational k/den with k/den >= x.
inline Rational ceil_to_grid(const Rational &x, int64_t den) {
    BigInt scaled_num = numer(x) * den;
    BigInt d = denom(x);
    BigInt q = scaled_num / d;
    if (q * d < scaled_num) {
        q += 1;
    }
    return Rational(q, BigInt(den));
}

/// Largest rational k/den with k/den <= x.
inline Rational floor_to_grid(const Rational &x, int64_t den) { return -ceil_to_grid(-x, den); }

/// Nearest rational with the given denominator to a double (no exactness claim).
inline Rational from_double(double x, int64_t den) {
    return Rational(BigInt(static_cast<long long>(std::llround(x * static_cast<double>(den)))), BigInt(den));
}

inline QVec to_qvec(const IVec &v) {
    QVec out;
    out.reserve(v.size());
    for (auto x : v) {
        out.emplace_back(x);
    }
    return out;
}

inline Rational dot(const QVec &a, const QVec &b) {
    Rational acc = 0;
    for (size_t i = 0; i < a.size(); i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

inline Rational dot(const QVec &a, const IVec &b) {
    Rational acc = 0;
    for (size_t i = 0; i < a.size(); i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

inline int64_t dot(const IVec &a, const IVec &b) {
    int64_t acc = 0;
    for (size_t i = 0; i < a.size(); i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

inline Rational norm2(const QVec &a) { return dot(a, a); }
inline int64_t norm2(const IVec &a) { return dot(a, a); }

inline QVec sub(const QVec &a, const QVec &b) {
    QVec out(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        out[i] = a[i] - b[i];
    }
    return out;
}

/// a + s*b
inline QVec axpy(const QVec &a, const Rational &s, const IVec &b) {
    QVec out(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        out[i] = a[i] + s * b[i];
    }
    return out;
}

inline int64_t gcd_of(const IVec &v) {
    int64_t g = 0;
    for (auto x : v) {
        g = std::gcd(g, x < 0 ? -x : x);
    }
    return g;
}

inline bool is_zero(const IVec &v) {
    for (auto x : v) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

// Exact sign determination for expressions with square roots of
// non-negative rationals. The radicands never need to be perfect squares.

/// sign(p + q*sqrt(r)), r >= 0.
inline int sign_surd(const Rational &p, const Rational &q, const Rational &r) {
    if (sign(r) < 0) {
        throw std::domain_error("negative radicand");
    }
    int sp = sign(p);
    int sq = sign(r) == 0 ? 0 : sign(q);
    if (sq == 0) {
        return sp;
    }
    if (sp == 0 || sp == sq) {
        return sq;
    }
    int d = sign(p * p - q * q * r);
    return d * sp;
}

/// sign(a + b*sqrt(r1) + c*sqrt(r2) + d*sqrt(r1)*sqrt(r2)), r1, r2 >= 0.
inline int sign_surd2(const Rational &a, const Rational &b, const Rational &r1, const Rational &c, const Rational &d,
                      const Rational &r2) {
    if (sign(r2) < 0) {
        throw std::domain_error("negative radicand");
    }
    // X + Y*sqrt(r2) with X = a + b sqrt(r1), Y = c + d sqrt(r1).
    int sx = sign_surd(a, b, r1);
    int sy = sign(r2) == 0 ? 0 : sign_surd(c, d, r1);
    if (sy == 0) {
        return sx;
    }
    if (sx == 0 || sx == sy) {
        return sy;
    }
    Rational e = a * a + b * b * r1 - r2 * (c * c + d * d * r1);
    Rational f = 2 * a * b - 2 * c * d * r2;
    return sign_surd(e, f, r1) * sx;
}

/// sign(c0 + a*sqrt(r1) + b*sqrt(r2)).
inline int sign_surd3(const Rational &c0, const Rational &a, const Rational &r1, const Rational &b,
                      const Rational &r2) {
    return sign_surd2(c0, a, r1, b, Rational(0), r2);
}

/// A number p + q*sqrt(r) with rational p, q and r >= 0.
struct Surd {
    Rational p = 0;
    Rational q = 0;
    Rational r = 0;

    int sign() const { return sign_surd(p, q, r); }
    double approx() const { return to_double(p) + to_double(q) * std::sqrt(to_double(r)); }

    /// Compares against a rational: sign(this - x).
    int cmp(const Rational &x) const { return sign_surd(p - x, q, r); }
};

}  // namespace conefact
