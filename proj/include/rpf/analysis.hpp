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

/// Depth-first enumeration of all Dyck words of the given semilength in
/// lexicographic order ('(' < ')'); fn receives a view into a shared
/// buffer valid only for the duration of the callback.
template <typename F>
void for_each_dyck(std::size_t semilength, F&& fn) {
    std::string buf;
    buf.reserve(2 * semilength);
    auto rec = [&](auto&& self, std::size_t open, std::size_t close) -> void {
        if (close == semilength) {
            fn(std::string_view(buf));
            return;
        }
        if (open < semilength) {
            buf.push_back('(');
            self(self, open + 1, close);
            buf.pop_back();
        }
        if (close < open) {
            buf.push_back(')');
            self(self, open, close + 1);
            buf.pop_back();
        }
    };
    rec(rec, 0, 0);
}

/// Number of minimal words of length 2*semilength, by exhaustive
/// enumeration filtered with the pattern scan; no evaluation involved.
inline Natural count_minimal(std::size_t semilength, std::size_t cap = 16) {
    if (semilength > cap)
        throw Error(errc::cap_exceeded,
                    "semilength " + std::to_string(semilength) + " exceeds enumeration cap " + std::to_string(cap));
    std::uint64_t count = 0;
    for_each_dyck(semilength, [&](std::string_view w) {
        if (detail::is_minimal_sv(w)) ++count;
    });
    return Natural(static_cast<unsigned long>(count));
}

/// The ascending, complete sequence of naturals whose minimal spelling has
/// length 2k. A budget hit aborts the whole stripe.
struct Stripe {
    std::size_t semilength = 0;
    std::vector<Natural> members;
};

inline Stripe stripe(std::size_t k, const EvalBudget& budget = EvalBudget()) {
    Stripe out;
    out.semilength = k;
    for_each_dyck(k, [&](std::string_view w) {
        if (detail::is_minimal_sv(w))
            out.members.push_back(
                detail::eval_dyck_natural(w, budget, [](std::size_t i) { return nth_prime_u64(i); }));
    });
    std::sort(out.members.begin(), out.members.end());
    return out;
}

/// Analysis result in the shared report shape. Parameter and data values
/// are kept as strings so arbitrarily large members survive both the text
/// and the JSON rendering.
struct Report {
    std::string check;
    std::vector<std::pair<std::string, std::string>> parameters;
    bool pass = true;
    std::vector<std::string> counterexamples;
    std::vector<std::pair<std::string, std::string>> data;
};

inline std::string to_text(const Report& r) {
    std::string out = "check: " + r.check + "\n";
    std::size_t width = 0;
    for (const auto& [k, v] : r.parameters) width = std::max(width, k.size());
    for (const auto& [k, v] : r.data) width = std::max(width, k.size());
    auto row = [&](const std::string& k, const std::string& v) {
        out += "  " + k + std::string(width - k.size() + 2, ' ') + v + "\n";
    };
    for (const auto& [k, v] : r.parameters) row(k, v);
    for (const auto& [k, v] : r.data) row(k, v);
    if (!r.counterexamples.empty()) {
        out += "  counterexamples:\n";
        for (const auto& c : r.counterexamples) out += "    " + c + "\n";
    }
    out += r.pass ? "result: pass\n" : "result: FAIL\n";
    return out;
}

/// 2, 2^2, 2^2^2, ... with the given number of levels.
inline Natural power_tower_of_two(std::size_t height) {
    Natural t = 1;
    for (std::size_t i = 0; i < height; ++i) {
        if (bit_length(t) > 20)
            throw Error(errc::budget_exceeded, "power tower too tall to materialize");
        Natural next;
        mpz_ui_pow_ui(next.get_mpz_t(), 2, static_cast<unsigned long>(mpz_get_ui(t.get_mpz_t())));
        t = std::move(next);
    }
    return t;
}

/// For every nontrivial stripe up to k_max: the first member must be
/// p_(k-1) and the last member the power tower 2^^(k-1).
inline Report check_stripe_patterns(std::size_t k_max, const EvalBudget& budget = EvalBudget()) {
    Report r;
    r.check = "stripe-patterns";
    r.parameters.emplace_back("k_max", std::to_string(k_max));
    for (std::size_t k = 2; k <= k_max; ++k) {
        Stripe s = stripe(k, budget);
        if (s.members.empty()) {
            r.pass = false;
            r.counterexamples.push_back("stripe " + std::to_string(k) + " is empty");
            continue;
        }
        Natural first_expect = nth_prime(k - 1);
        Natural last_expect = power_tower_of_two(k - 1);
        if (s.members.front() != first_expect) {
            r.pass = false;
            r.counterexamples.push_back("stripe " + std::to_string(k) + " first member " +
                                        s.members.front().get_str() + " != " + first_expect.get_str());
        }
        if (s.members.back() != last_expect) {
            r.pass = false;
            r.counterexamples.push_back("stripe " + std::to_string(k) + " last member != 2^^" +
                                        std::to_string(k - 1));
        }
        r.data.emplace_back("stripe " + std::to_string(k) + " size", std::to_string(s.members.size()));
        r.data.emplace_back("stripe " + std::to_string(k) + " first", s.members.front().get_str());
        r.data.emplace_back("stripe " + std::to_string(k) + " last",
                            bit_length(s.members.back()) <= 128
                                ? s.members.back().get_str()
                                : "(" + std::to_string(bit_length(s.members.back())) + "-bit value)");
    }
    return r;
}

/// Chart recognizer (CYK over a binarized form) for the candidate grammar
///   N -> epsilon | () | S
///   S -> SS | ()S | (S) | (())
/// Recognition only; the grammar is ambiguous. Only S needs a chart: the
/// other rules reduce to constant-time lookups per cell, and S -> SS is a
/// bitset intersection over split points.
inline bool grammar_accepts(std::string_view w) {
    const std::size_t n = w.size();
    if (n == 0) return true;
    if (w == "()") return true;
    if (n % 2 != 0 || n < 4) return false;

    const std::size_t words = (n + 1 + 63) / 64;
    std::vector<std::uint64_t> row((n + 1) * words, 0);  // bit j of row i: S => w[i..j)
    std::vector<std::uint64_t> col((n + 1) * words, 0);  // bit i of col j: S => w[i..j)
    auto test_s = [&](std::size_t i, std::size_t j) {
        return (row[i * words + j / 64] >> (j % 64)) & 1;
    };
    auto set_s = [&](std::size_t i, std::size_t j) {
        row[i * words + j / 64] |= std::uint64_t(1) << (j % 64);
        col[j * words + i / 64] |= std::uint64_t(1) << (i % 64);
    };
    auto pair_at = [&](std::size_t i) { return w[i] == '(' && w[i + 1] == ')'; };

    for (std::size_t len = 4; len <= n; len += 2) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            bool s = len == 4 && w[i] == '(' && pair_at(i + 1) && w[i + 3] == ')';            // (())
            if (!s && pair_at(i)) s = test_s(i + 2, j);                                       // ()S
            if (!s && w[i] == '(' && w[j - 1] == ')') s = test_s(i + 1, j - 1);               // (S)
            if (!s) {                                                                         // SS
                const std::uint64_t* a = &row[i * words];
                const std::uint64_t* b = &col[j * words];
                for (std::size_t t = 0; t < words; ++t) {
                    if (a[t] & b[t]) {
                        s = true;
                        break;
                    }
                }
            }
            if (s) set_s(i, j);
        }
    }
    return test_s(0, n);
}

/// Compares grammar membership against the pattern definition on every
/// Dyck word up to the cap, and verifies the grammar generates the
/// minimal spelling of 0..first_n-1.
inline Report grammar_check(std::size_t semilength_cap, std::size_t first_n = 1000) {
    if (semilength_cap > 10)
        throw Error(errc::cap_exceeded, "grammar check capped at semilength 10");
    Report r;
    r.check = "grammar";
    r.parameters.emplace_back("semilength_cap", std::to_string(semilength_cap));
    r.parameters.emplace_back("spellings_checked", std::to_string(first_n));

    std::uint64_t words_checked = 0;
    for (std::size_t k = 0; k <= semilength_cap; ++k) {
        for_each_dyck(k, [&](std::string_view w) {
            ++words_checked;
            bool pattern = detail::is_minimal_sv(w);
            bool grammar = grammar_accepts(w);
            if (pattern != grammar) {
                r.pass = false;
                r.counterexamples.push_back(std::string(w.empty() ? "EPSILON" : w) + ": pattern says " +
                                            (pattern ? "minimal" : "nonminimal") + ", grammar says " +
                                            (grammar ? "accept" : "reject"));
            }
        });
    }
    r.data.emplace_back("dyck words compared", std::to_string(words_checked));

    std::uint64_t spellings_ok = 0;
    for (std::size_t n = 0; n < first_n; ++n) {
        DyckWord w = spell_nat(Natural(static_cast<unsigned long>(n)));
        if (grammar_accepts(w.view())) {
            ++spellings_ok;
        } else {
            r.pass = false;
            r.counterexamples.push_back("spelling of " + std::to_string(n) + " rejected: " + w.str());
        }
    }
    r.data.emplace_back("spellings accepted", std::to_string(spellings_ok));
    return r;
}

/// Computed counts per semilength, compared against the known prefix of
/// OEIS A082582 where available (count of semilength m equals term m+1).
inline Report counts_report(std::size_t max_semilength, std::size_t cap = 16) {
    static const std::uint64_t kA082582Prefix[] = {1, 1, 1, 2, 5, 13, 35, 97, 275, 794, 2327, 6905, 20705, 62642};
    Report r;
    r.check = "counts";
    r.parameters.emplace_back("max_semilength", std::to_string(max_semilength));
    for (std::size_t m = 0; m <= max_semilength; ++m) {
        Natural c = count_minimal(m, cap);
        std::string key = "semilength " + std::to_string(m);
        if (m < sizeof(kA082582Prefix) / sizeof(kA082582Prefix[0])) {
            bool ok = c == Natural(static_cast<unsigned long>(kA082582Prefix[m]));
            if (!ok) {
                r.pass = false;
                r.counterexamples.push_back(key + ": counted " + c.get_str() + ", A082582 gives " +
                                            std::to_string(kA082582Prefix[m]));
            }
            r.data.emplace_back(key, c.get_str() + (ok ? "  (= A082582)" : ""));
        } else {
            r.data.emplace_back(key, c.get_str());
        }
    }
    return r;
}

/// The six-state DFA recognizing minimal words that evaluate to a prime
/// (equivalently the regex (10)*1100 under the binary alias).
inline bool is_prime_word(const DyckWord& w) {
    int q = 0;
    for (char c : w.view()) {
        bool open = c == '(';
        switch (q) {
            case 0: q = open ? 1 : 5; break;
            case 1: q = open ? 2 : 0; break;
            case 2: q = open ? 5 : 3; break;
            case 3: q = open ? 5 : 4; break;
            case 4: q = 5; break;
            default: q = 5; break;
        }
    }
    return q == 4;
}

/// Regex (10)*1100(10)*1100 under the binary alias: words evaluating to
/// squarefree semiprimes.
inline bool is_semiprime_word(const DyckWord& w) {
    std::string_view s = w.view();
    std::size_t i = 0;
    auto eat_block = [&]() -> bool {
        while (i + 1 < s.size() && s[i] == '(' && s[i + 1] == ')') i += 2;
        if (i + 3 < s.size() && s.substr(i, 4) == "(())") {
            i += 4;
            return true;
        }
        return false;
    };
    return eat_block() && eat_block() && i == s.size();
}

}  // namespace rpf
