#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rpf/dyck.hpp"
#include "rpf/errors.hpp"
#include "rpf/natural_interp.hpp"
#include "rpf/numeric.hpp"
#include "rpf/primes.hpp"

namespace rpf {

/// Finitely supported bijection on prime indices: position i of the
/// support holds sigma(i), identity beyond. The support must be a
/// permutation of 1..s, otherwise the identity tail would break
/// injectivity.
class PrimePermutation {
public:
    PrimePermutation() = default;

    explicit PrimePermutation(std::vector<std::uint32_t> support) : map_(std::move(support)) {
        inv_.assign(map_.size(), 0);
        for (std::size_t i = 0; i < map_.size(); ++i) {
            std::uint32_t j = map_[i];
            if (j < 1 || j > map_.size() || inv_[j - 1] != 0)
                throw Error(errc::domain_error, "support is not a permutation of 1..s");
            inv_[j - 1] = static_cast<std::uint32_t>(i + 1);
        }
    }

    /// One line of comma-separated prime indices, e.g. "2,1" for the swap.
    static PrimePermutation parse(std::string_view line) {
        std::vector<std::uint32_t> support;
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == '\n')) ++i;
        };
        skip_ws();
        while (i < line.size()) {
            std::uint64_t v = 0;
            std::size_t start = i;
            while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
                v = v * 10 + static_cast<std::uint64_t>(line[i] - '0');
                if (v > UINT32_MAX) throw Error(errc::domain_error, "prime index out of range");
                ++i;
            }
            if (i == start) throw Error(errc::domain_error, "malformed permutation entry");
            support.push_back(static_cast<std::uint32_t>(v));
            skip_ws();
            if (i < line.size()) {
                if (line[i] != ',') throw Error(errc::domain_error, "malformed permutation entry");
                ++i;
                skip_ws();
            }
        }
        return PrimePermutation(std::move(support));
    }

    std::size_t apply(std::size_t i) const { return i >= 1 && i <= map_.size() ? map_[i - 1] : i; }
    std::size_t inverse(std::size_t j) const { return j >= 1 && j <= inv_.size() ? inv_[j - 1] : j; }
    std::size_t support_size() const { return map_.size(); }

    bool is_identity() const {
        for (std::size_t i = 0; i < map_.size(); ++i)
            if (map_[i] != i + 1) return false;
        return true;
    }

    std::string str() const {
        std::string out{};
        for (std::size_t i = 0; i < map_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(map_[i]);
        }
        return out;
    }

private:
    std::vector<std::uint32_t> map_;
    std::vector<std::uint32_t> inv_;
};

/// sigma-permuted minimal spelling: the factor base is
/// (sigma(p_1), sigma(p_2), ...) and exponents are spelled recursively in
/// the same interpretation.
inline DyckWord spell_nat_perm(const Natural& n, const PrimePermutation& sigma) {
    if (sgn(n) < 0) throw Error(errc::domain_error, "spell_nat_perm takes a natural number");
    if (sgn(n) == 0) return DyckWord();
    if (n == 1) return DyckWord::trusted("()");

    auto permuted_exponents = [&sigma](const Natural& v) {
        std::vector<std::int64_t> standard = factor_natural(v).exponents;
        std::size_t m = 0;
        for (std::size_t j = 1; j <= standard.size(); ++j)
            if (standard[j - 1] != 0) m = std::max(m, sigma.inverse(j));
        if (m == 0) throw Error(errc::no_finite_expansion, "no finite permuted expansion");
        std::vector<std::int64_t> exps(m, 0);
        for (std::size_t i = 1; i <= m; ++i) {
            std::size_t j = sigma.apply(i);
            if (j <= standard.size()) exps[i - 1] = standard[j - 1];
        }
        return exps;
    };

    struct Frame {
        std::vector<std::int64_t> exps;
        std::size_t next = 0;
        std::string out{};
    };

    std::vector<Frame> stack;
    stack.push_back({permuted_exponents(n)});

    std::string result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.exps.size()) {
            std::int64_t e = f.exps[f.next];
            if (e == 0) {
                f.out += "()";
                ++f.next;
            } else if (e == 1) {
                f.out += "(())";
                ++f.next;
            } else {
                stack.push_back({permuted_exponents(Natural(static_cast<long>(e)))});
            }
            continue;
        }
        std::string done = std::move(f.out);
        stack.pop_back();
        if (stack.empty()) {
            result = std::move(done);
        } else {
            Frame& parent = stack.back();
            parent.out += '(';
            parent.out += done;
            parent.out += ')';
            ++parent.next;
        }
    }
    return DyckWord::trusted(std::move(result));
}

inline Natural eval_nat_perm(const DyckWord& w, const PrimePermutation& sigma,
                             const EvalBudget& budget = EvalBudget()) {
    return detail::eval_dyck_natural(w.view(), budget,
                                     [&sigma](std::size_t i) { return nth_prime_u64(sigma.apply(i)); });
}

/// Respell a sigma-minimal word in the tau interpretation; the value is
/// unchanged.
inline DyckWord convert_spelling(const DyckWord& w, const PrimePermutation& sigma,
                                 const PrimePermutation& tau, const EvalBudget& budget = EvalBudget()) {
    // The minimal languages coincide for every permutation (dense exponent
    // vectors always end in a nonzero entry), so the standard pattern scan
    // decides sigma-minimality.
    if (!is_minimal(w)) throw Error(errc::not_minimal, "word is not minimal");
    return spell_nat_perm(eval_nat_perm(w, sigma, budget), tau);
}

/// The number whose tau-spelling equals n's sigma-spelling.
inline Natural convert_evaluation(const Natural& n, const PrimePermutation& sigma,
                                  const PrimePermutation& tau, const EvalBudget& budget = EvalBudget()) {
    return eval_nat_perm(spell_nat_perm(n, sigma), tau, budget);
}

/// Right-descending spelling: exponents of consecutive primes written in
/// descending prime order at every recursion level. The result is the
/// mirror image of the standard spelling.
inline DyckWord reverse_spell(const Natural& n) {
    if (sgn(n) < 0) throw Error(errc::domain_error, "reverse_spell takes a natural number");
    if (sgn(n) == 0) return DyckWord();
    if (n == 1) return DyckWord::trusted("()");

    struct Frame {
        std::vector<std::int64_t> exps;  // reversed: greatest prime first
        std::size_t next = 0;
        std::string out{};
    };

    auto reversed_exponents = [](const Natural& v) {
        std::vector<std::int64_t> exps = factor_natural(v).exponents;
        std::reverse(exps.begin(), exps.end());
        return exps;
    };

    std::vector<Frame> stack;
    stack.push_back({reversed_exponents(n)});

    std::string result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.exps.size()) {
            std::int64_t e = f.exps[f.next];
            if (e == 0) {
                f.out += "()";
                ++f.next;
            } else if (e == 1) {
                f.out += "(())";
                ++f.next;
            } else {
                stack.push_back({reversed_exponents(Natural(static_cast<long>(e)))});
            }
            continue;
        }
        std::string done = std::move(f.out);
        stack.pop_back();
        if (stack.empty()) {
            result = std::move(done);
        } else {
            Frame& parent = stack.back();
            parent.out += '(';
            parent.out += done;
            parent.out += ')';
            ++parent.next;
        }
    }
    return DyckWord::trusted(std::move(result));
}

}  // namespace rpf
