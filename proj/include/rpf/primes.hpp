#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <vector>

#include "rpf/errors.hpp"
#include "rpf/numeric.hpp"

namespace rpf {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Brent's variant of Pollard rho; n must be composite and odd.
inline std::uint64_t rho_factor_u64(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    std::uint64_t c = 1;
    while (true) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = mulmod_u64(y, y, n) + c;
            if (y >= n) y -= n;
            ++lam;
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

}  // namespace detail

/// Incrementally extended prime sieve shared by all queries. Extension is
/// serialized behind a mutex; lookups return by value, so results are safe
/// to use concurrently.
class PrimeSieve {
public:
    static PrimeSieve& instance() {
        static PrimeSieve sieve;
        return sieve;
    }

    static constexpr std::uint64_t kHardLimit = std::uint64_t(1) << 31;

    std::uint64_t nth(std::size_t i) {
        std::lock_guard<std::mutex> lock(mu_);
        ensure_count_locked(i);
        return primes_[i - 1];
    }

    /// 1-based index of prime p; p must actually be prime.
    std::size_t index_of(std::uint64_t p) {
        std::lock_guard<std::mutex> lock(mu_);
        ensure_limit_locked(p);
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p)
            throw Error(errc::domain_error, "not a prime: " + std::to_string(p));
        return static_cast<std::size_t>(it - primes_.begin()) + 1;
    }

    /// Copy of all sieved primes <= limit (extends the sieve as needed).
    std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
        std::lock_guard<std::mutex> lock(mu_);
        ensure_limit_locked(limit);
        auto it = std::upper_bound(primes_.begin(), primes_.end(), limit);
        return std::vector<std::uint64_t>(primes_.begin(), it);
    }

private:
    PrimeSieve() { rebuild_locked(1 << 10); }

    void ensure_limit_locked(std::uint64_t limit) {
        if (limit > kHardLimit)
            throw Error(errc::domain_error, "prime factor too large to index (sieve limit exceeded)");
        if (limit > limit_) {
            std::uint64_t target = limit_;
            while (target < limit) target *= 2;
            rebuild_locked(target);
        }
    }

    void ensure_count_locked(std::size_t i) {
        if (i == 0) throw Error(errc::domain_error, "prime index must be >= 1");
        while (primes_.size() < i) {
            if (limit_ >= kHardLimit)
                throw Error(errc::domain_error, "prime index out of supported range");
            rebuild_locked(std::min(limit_ * 2, kHardLimit));
        }
    }

    void rebuild_locked(std::uint64_t limit) {
        std::vector<bool> composite(limit + 1, false);
        primes_.clear();
        for (std::uint64_t p = 2; p <= limit; ++p) {
            if (composite[p]) continue;
            primes_.push_back(p);
            for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
        }
        limit_ = limit;
    }

    std::mutex mu_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t limit_ = 0;
};

inline std::uint64_t nth_prime_u64(std::size_t i) { return PrimeSieve::instance().nth(i); }

inline Natural nth_prime(std::size_t i) { return Natural(static_cast<unsigned long>(nth_prime_u64(i))); }

inline std::size_t prime_index(std::uint64_t p) { return PrimeSieve::instance().index_of(p); }

/// Dense exponent sequence (a_1..a_m) over consecutive primes p_1=2,
/// p_2=3, ...; the last exponent is nonzero. Exponents are signed for
/// rational factorizations; sign carries the sign of the whole value.
struct FactorizationVector {
    std::vector<std::int64_t> exponents;
    int sign = +1;

    void trim() {
        while (!exponents.empty() && exponents.back() == 0) exponents.pop_back();
    }
};

namespace detail {

/// Trial division plus Miller-Rabin/rho for 64-bit inputs, as (prime,
/// exponent) pairs sorted by prime. The sieve prefix is cached per thread.
inline std::vector<std::pair<std::uint64_t, std::int64_t>> factor_u64_to_prime_pairs(std::uint64_t n) {
    static constexpr std::uint64_t kTrialLimit = 1u << 16;
    static thread_local std::vector<std::uint64_t> cache;
    if (cache.empty()) cache = PrimeSieve::instance().primes_up_to(kTrialLimit);

    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    std::uint64_t rest = n;
    for (std::uint64_t p : cache) {
        if (p * p > rest) break;
        if (rest % p == 0) {
            std::int64_t e = 0;
            do {
                rest /= p;
                ++e;
            } while (rest % p == 0);
            out.emplace_back(p, e);
        }
    }
    if (rest > 1) {
        if (rest < kTrialLimit * kTrialLimit || is_prime_u64(rest)) {
            // either below the trial horizon (hence prime) or proven prime
            out.emplace_back(rest, 1);
        } else {
            std::vector<std::uint64_t> pending{rest};
            std::vector<std::uint64_t> primes;
            while (!pending.empty()) {
                std::uint64_t m = pending.back();
                pending.pop_back();
                if (is_prime_u64(m)) {
                    primes.push_back(m);
                } else {
                    std::uint64_t d = rho_factor_u64(m);
                    pending.push_back(d);
                    pending.push_back(m / d);
                }
            }
            std::sort(primes.begin(), primes.end());
            for (std::uint64_t p : primes) {
                if (!out.empty() && out.back().first == p)
                    ++out.back().second;
                else
                    out.emplace_back(p, 1);
            }
        }
    }
    return out;
}

/// Index -> exponent map for |n| as a sorted (index, exponent) list.
inline std::vector<std::pair<std::size_t, std::int64_t>> factor_to_pairs(const Natural& n) {
    std::vector<std::pair<std::size_t, std::int64_t>> out;
    if (n == 1) return out;

    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        for (const auto& [p, e] : factor_u64_to_prime_pairs(mpz_get_ui(n.get_mpz_t())))
            out.emplace_back(prime_index(p), e);
        return out;
    }

    Natural rest = n;
    auto divide_out = [&](std::uint64_t p) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) return;
        Natural f(static_cast<unsigned long>(p));
        // mpz_remove strips the whole p-valuation at once; exponents can be
        // in the tens of thousands for tower-shaped words.
        mp_bitcnt_t e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), f.get_mpz_t());
        out.emplace_back(prime_index(p), static_cast<std::int64_t>(e));
    };

    // Trial division over the sieve; enough for everything at desk scale.
    static constexpr std::uint64_t kTrialLimit = 1u << 20;
    for (std::uint64_t limit = 1 << 8;; limit *= 16) {
        limit = std::min(limit, kTrialLimit);
        for (std::uint64_t p : PrimeSieve::instance().primes_up_to(limit)) {
            divide_out(p);
            if (rest == 1) break;
        }
        if (rest == 1) return out;
        Natural p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), static_cast<unsigned long>(limit), 2);
        if (p2 > rest) break;  // rest is prime
        if (limit == kTrialLimit) break;
    }

    if (mpz_fits_ulong_p(rest.get_mpz_t())) {
        // 64-bit cofactor: Miller-Rabin plus rho splitting.
        std::vector<std::uint64_t> pending{rest.get_ui()};
        std::vector<std::pair<std::size_t, std::int64_t>> extra;
        while (!pending.empty()) {
            std::uint64_t m = pending.back();
            pending.pop_back();
            if (m == 1) continue;
            if (detail::is_prime_u64(m)) {
                extra.emplace_back(prime_index(m), 1);
            } else {
                std::uint64_t d = detail::rho_factor_u64(m);
                pending.push_back(d);
                pending.push_back(m / d);
            }
        }
        std::sort(extra.begin(), extra.end());
        for (auto& [idx, e] : extra) {
            if (!out.empty() && out.back().first == idx)
                out.back().second += e;
            else
                out.emplace_back(idx, e);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    if (mpz_probab_prime_p(rest.get_mpz_t(), 30))
        throw Error(errc::domain_error, "prime factor too large to index");
    throw Error(errc::domain_error, "cannot factor beyond 64-bit cofactors");
}

inline std::vector<std::int64_t> pairs_to_dense(const std::vector<std::pair<std::size_t, std::int64_t>>& pairs) {
    std::vector<std::int64_t> dense;
    if (pairs.empty()) return dense;
    dense.resize(pairs.back().first, 0);  // pairs arrive sorted by index
    for (const auto& [idx, e] : pairs) dense[idx - 1] = e;
    return dense;
}

}  // namespace detail

/// Prime factorization of n >= 1 as a dense exponent vector; empty for 1.
inline FactorizationVector factor_natural(const Natural& n) {
    if (sgn(n) <= 0) {
        if (sgn(n) == 0) throw Error(errc::domain_error, "0 has no prime factorization");
        throw Error(errc::domain_error, "negative number passed to factor_natural");
    }
    FactorizationVector fv;
    fv.exponents = detail::pairs_to_dense(detail::factor_to_pairs(n));
    fv.trim();
    return fv;
}

/// Rational prime factorization of q != 0: dense signed exponents with
/// |q| = prod p_i^{a_i}, numerator exponents positive, denominator
/// exponents negative.
inline FactorizationVector factor_rational(const Rational& q) {
    if (q.is_zero()) throw Error(errc::domain_error, "0 has no rational prime factorization");
    Natural num = abs(q.num());
    auto np = detail::factor_to_pairs(num);
    auto dp = detail::factor_to_pairs(q.den());
    FactorizationVector fv;
    fv.sign = q.sign();
    std::vector<std::pair<std::size_t, std::int64_t>> merged = np;
    for (auto& [idx, e] : dp) merged.emplace_back(idx, -e);
    std::sort(merged.begin(), merged.end());
    fv.exponents = detail::pairs_to_dense(merged);
    fv.trim();
    return fv;
}

/// Greatest prime base: p_1 for |q| = 1, otherwise the largest prime whose
/// power must appear in the factorization of q.
inline Natural gpb(const Rational& q) {
    if (q.is_zero()) throw Error(errc::domain_error, "0 has no greatest prime base");
    FactorizationVector fv = factor_rational(q);
    if (fv.exponents.empty()) return Natural(2);
    return nth_prime(fv.exponents.size());
}

}  // namespace rpf
