#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rpf/dyck.hpp"
#include "rpf/errors.hpp"
#include "rpf/numeric.hpp"
#include "rpf/primes.hpp"

namespace rpf {

/// Bound on the bit length of any intermediate or final value during
/// evaluation. Guards the double-exponential growth of nested words.
struct EvalBudget {
    std::uint64_t max_bits = 1'000'000;

    EvalBudget() = default;
    explicit EvalBudget(std::uint64_t bits) : max_bits(bits) {
        if (bits < 64) throw Error(errc::domain_error, "evaluation budget must be at least 64 bits");
    }
};

namespace detail {

inline void check_bits(const Natural& v, std::uint64_t max_bits) {
    if (bit_length(v) > max_bits)
        throw Error(errc::budget_exceeded,
                    "intermediate value exceeds " + std::to_string(max_bits) + " bits");
}

/// p^e with a budget on the result's bit length. Exponents larger than the
/// budget are rejected up front (p >= 2 forces at least e+1 bits).
inline Natural pow_capped(std::uint64_t p, const Natural& e, std::uint64_t max_bits) {
    if (sgn(e) == 0) return Natural(1);
    if (mpz_cmp_ui(e.get_mpz_t(), static_cast<unsigned long>(std::min<std::uint64_t>(max_bits, ULONG_MAX))) > 0)
        throw Error(errc::budget_exceeded, "exponent exceeds bit budget");
    std::uint64_t eu = mpz_get_ui(e.get_mpz_t());
    std::uint64_t pbits = 64 - static_cast<std::uint64_t>(__builtin_clzll(p));
    unsigned __int128 upper = static_cast<unsigned __int128>(eu) * pbits + 1;
    unsigned __int128 lower = static_cast<unsigned __int128>(eu) * (pbits - 1) + 1;
    if (lower > max_bits) throw Error(errc::budget_exceeded, "power exceeds bit budget");
    Natural r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(eu));
    if (upper > max_bits) check_bits(r, max_bits);
    return r;
}

/// Smallest nesting depth whose minimum possible evaluation already
/// exceeds max_bits bits. Any word nested at least this deep is certain to
/// blow the budget, so the evaluators can fail fast.
inline std::size_t depth_limit_for_budget(std::uint64_t max_bits) {
    // Minimum bit length of a value containing a depth-d descent:
    // lb(1) = 1, lb(d) = 2^(lb(d-1) - 1) + 1.
    std::uint64_t lb = 1;
    std::size_t d = 1;
    while (lb <= max_bits) {
        if (lb - 1 >= 63) return d + 1;  // next step saturates past any budget
        lb = (std::uint64_t(1) << (lb - 1)) + 1;
        ++d;
    }
    return d;
}

inline std::vector<std::string_view> content_views(std::string_view seq) {
    std::vector<std::string_view> out;
    for_each_chunk(seq, [&](std::size_t b, std::size_t e) { out.push_back(seq.substr(b + 1, e - b - 2)); });
    return out;
}

/// Iterative evaluation of a Dyck word over an arbitrary prime base
/// (index -> prime), shared by the standard and permuted interpreters.
template <typename PrimeAt>
Natural eval_dyck_natural(std::string_view word, const EvalBudget& budget, PrimeAt&& prime_at) {
    if (word.empty()) return Natural(0);
    if (max_nesting_depth(word) >= depth_limit_for_budget(budget.max_bits))
        throw Error(errc::budget_exceeded, "nesting depth alone exceeds the bit budget");

    struct Frame {
        std::string_view seq;
        std::vector<std::string_view> contents;
        std::size_t next = 0;
        Natural acc{1};
    };

    std::unordered_map<std::string_view, Natural> memo;
    std::vector<Frame> stack;
    stack.push_back({word, content_views(word)});

    Natural result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.contents.size()) {
            std::string_view c = f.contents[f.next];
            Natural value;
            if (c.empty()) {
                value = 0;
            } else if (auto it = memo.find(c); it != memo.end()) {
                value = it->second;
            } else {
                stack.push_back({c, content_views(c)});
                continue;
            }
            f.acc *= pow_capped(prime_at(f.next + 1), value, budget.max_bits);
            check_bits(f.acc, budget.max_bits);
            ++f.next;
            continue;
        }
        Natural value = std::move(f.acc);
        memo.emplace(f.seq, value);
        stack.pop_back();
        if (stack.empty()) {
            result = std::move(value);
        } else {
            Frame& parent = stack.back();
            parent.acc *= pow_capped(prime_at(parent.next + 1), value, budget.max_bits);
            check_bits(parent.acc, budget.max_bits);
            ++parent.next;
        }
    }
    return result;
}

inline bool is_minimal_sv(std::string_view w) {
    if (w.find(")())") != std::string_view::npos) return false;
    if (w.size() >= 3 && w.substr(w.size() - 3) == ")()") return false;
    return true;
}

/// Per-level scan state used by the structural dinf/collapse algorithms.
/// A sequence's deletable trailing run is its maximal trailing run of
/// "()" chunks that leaves at least one chunk in place.
inline std::size_t deletable_run(std::size_t chunk_count, std::size_t trailing_empties) {
    if (chunk_count == 0) return 0;
    if (trailing_empties == chunk_count) return chunk_count - 1;
    return trailing_empties;
}

}  // namespace detail

/// Standard minimal spelling: gamma(0) = epsilon, gamma(1) = "()", and for
/// n > 1 each prime exponent of n spelled recursively inside one pair.
inline DyckWord spell_nat(const Natural& n) {
    if (sgn(n) < 0) throw Error(errc::domain_error, "spell_nat takes a natural number");
    if (sgn(n) == 0) return DyckWord();
    if (n == 1) return DyckWord::trusted("()");

    struct Frame {
        std::vector<std::int64_t> exps;
        std::size_t next = 0;
        std::string out{};
    };

    std::vector<Frame> stack;
    stack.push_back({factor_natural(n).exponents});

    std::string result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.exps.size()) {
            std::int64_t e = f.exps[f.next];
            if (e == 0) {
                f.out += "()";
            } else if (e == 1) {
                f.out += "(())";
            } else {
                stack.push_back({factor_natural(Natural(static_cast<long>(e))).exponents});
                continue;
            }
            ++f.next;
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

/// Standard evaluation, total on the Dyck language: alpha(epsilon) = 0,
/// otherwise the product over chunks of p_i raised to the evaluation of
/// the i-th content.
inline Natural eval_nat(const DyckWord& w, const EvalBudget& budget = EvalBudget()) {
    return detail::eval_dyck_natural(w.view(), budget, [](std::size_t i) { return nth_prime_u64(i); });
}

/// Membership in the minimal language: no ")())" substring, no ")()"
/// suffix.
inline bool is_minimal(const DyckWord& w) { return detail::is_minimal_sv(w.view()); }

/// The five-state DFA recognizing the regular language R with
/// D_min = D intersect R. Accepting states: q0, q1, q2.
inline bool dfa_accepts_R(std::string_view s) {
    int q = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c != '(' && c != ')')
            throw Error(errc::illegal_symbol, "illegal symbol '" + std::string(1, c) + "' at position " + std::to_string(i), i);
        bool open = c == '(';
        switch (q) {
            case 0: q = open ? 0 : 1; break;
            case 1: q = open ? 2 : 1; break;
            case 2: q = open ? 0 : 3; break;
            case 3: q = open ? 2 : 4; break;
            case 4: break;  // sink
        }
    }
    return q <= 2;
}

/// Inflationary degree: the longest single run of contiguous empty pairs
/// deletable without changing the evaluation. Computed structurally; no
/// factorization or evaluation involved.
inline std::uint64_t dinf(const DyckWord& w) {
    struct Level {
        std::size_t chunk_count = 0;
        std::size_t trailing_empties = 0;
    };
    std::uint64_t best = 0;
    std::vector<Level> levels(1);
    for (char c : w.view()) {
        if (c == '(') {
            levels.emplace_back();
        } else {
            Level closed = levels.back();
            levels.pop_back();
            best = std::max<std::uint64_t>(best, detail::deletable_run(closed.chunk_count, closed.trailing_empties));
            Level& parent = levels.back();
            ++parent.chunk_count;
            if (closed.chunk_count == 0)
                ++parent.trailing_empties;
            else
                parent.trailing_empties = 0;
        }
    }
    best = std::max<std::uint64_t>(best, detail::deletable_run(levels[0].chunk_count, levels[0].trailing_empties));
    return best;
}

/// Collapse to the unique minimal word with equal evaluation: delete, in
/// every chunk sequence, the trailing empty chunks that follow at least
/// one retained chunk (keeping a single "()" when the whole sequence is
/// empty pairs). Identity on minimal words.
inline DyckWord collapse(const DyckWord& w) {
    struct Level {
        std::vector<std::pair<std::string, bool>> items;  // (chunk text, is "()")
    };
    auto finalize = [](Level& lv) {
        auto& items = lv.items;
        std::size_t keep = items.size();
        while (keep > 0 && items[keep - 1].second) --keep;
        if (keep == 0 && !items.empty()) keep = 1;
        std::string out{};
        for (std::size_t i = 0; i < keep; ++i) out += items[i].first;
        return out;
    };

    std::vector<Level> levels(1);
    for (char c : w.view()) {
        if (c == '(') {
            levels.emplace_back();
        } else {
            std::string inner = finalize(levels.back());
            levels.pop_back();
            bool empty_pair = inner.empty();
            levels.back().items.emplace_back("(" + inner + ")", empty_pair);
        }
    }
    return DyckWord::trusted(finalize(levels[0]));
}

/// Collapse with a cross-check against the evaluation semantics.
inline DyckWord collapse_checked(const DyckWord& w, const EvalBudget& budget) {
    DyckWord out = collapse(w);
    if (eval_nat(out, budget) != eval_nat(w, budget))
        throw Error(errc::domain_error, "collapse verification failed");
    return out;
}

/// Numeric successor: spell(eval(w) + 1). Only defined on minimal words.
inline DyckWord succ(const DyckWord& w, const EvalBudget& budget = EvalBudget()) {
    if (!is_minimal(w)) throw Error(errc::not_minimal, "succ requires a minimal word");
    return spell_nat(eval_nat(w, budget) + 1);
}

}  // namespace rpf
