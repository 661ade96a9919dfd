#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "rpf/errors.hpp"

namespace rpf {

// Arbitrary-precision integers. Natural is used where the value is known
// to be nonnegative; the distinction is a naming convention, the storage
// is the same.
using Natural = mpz_class;
using Integer = mpz_class;

inline std::size_t bit_length(const mpz_class& v) {
    if (sgn(v) == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline Natural natural_from_string(std::string_view s) {
    if (s.empty()) throw Error(errc::domain_error, "empty number");
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), std::string(s).c_str(), 10) != 0 || sgn(v) < 0)
        throw Error(errc::domain_error, "not a natural number: '" + std::string(s) + "'");
    return v;
}

/// Exact reduced fraction. Invariants: den >= 1, gcd(|num|, den) = 1,
/// zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(const Integer& n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(long n) : num_(n), den_(1) {}            // NOLINT

    Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
        if (sgn(den_) == 0) throw Error(errc::domain_error, "zero denominator");
        if (sgn(den_) < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        reduce();
    }

    /// Accepts "num/den" or a plain integer, optional leading '-'.
    /// Decimal notation is deliberately not accepted.
    static Rational parse(std::string_view s) {
        auto bad = [&] { return Error(errc::domain_error, "not a rational: '" + std::string(s) + "'"); };
        if (s.empty()) throw bad();
        std::size_t slash = s.find('/');
        auto parse_int = [&](std::string_view t) {
            if (t.empty() || (t.size() == 1 && t[0] == '-')) throw bad();
            for (std::size_t i = 0; i < t.size(); ++i)
                if (!(std::isdigit(static_cast<unsigned char>(t[i])) || (i == 0 && t[i] == '-'))) throw bad();
            return mpz_class(std::string(t), 10);
        };
        if (slash == std::string_view::npos) return Rational(parse_int(s));
        Integer num = parse_int(s.substr(0, slash));
        std::string_view d = s.substr(slash + 1);
        if (!d.empty() && d[0] == '-') throw bad();  // sign belongs to the numerator
        return Rational(std::move(num), parse_int(d));
    }

    const Integer& num() const { return num_; }
    const Natural& den() const { return den_; }
    int sign() const { return sgn(num_); }
    bool is_zero() const { return sgn(num_) == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    std::string str(bool always_den = false) const {
        std::string out = num_.get_str();
        if (always_den || den_ != 1) {
            out += '/';
            out += den_.get_str();
        }
        return out;
    }

private:
    void reduce() {
        if (sgn(num_) == 0) {
            den_ = 1;
            return;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        if (g != 1) {
            mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    Integer num_;
    Natural den_;
};

}  // namespace rpf
