// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus timing.
// Exit code is the number of failed criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rpf/analysis.hpp"
#include "rpf/compress.hpp"
#include "rpf/factorize.hpp"
#include "rpf/natural_interp.hpp"
#include "rpf/permuted.hpp"
#include "rpf/rational_interp.hpp"

using namespace rpf;

namespace {

struct Criterion {
    std::string name;
    std::function<void(std::vector<std::string>&)> body;  // appends failure details
};

void expect(std::vector<std::string>& fails, bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
}

const char* const kFirstTwenty[20] = {
    "",       "()",         "(())",       "()(())",         "((()))",         "()()(())",
    "(())(())", "()()()(())", "(()(()))", "()((()))",       "(())()(())",     "()()()()(())",
    "((()))(())", "()()()()()(())", "(())()()(())", "()(())(())", "(((())))", "()()()()()()(())",
    "(())((()))", "()()()()()()()(())"};

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"1 first-twenty spellings reproduced and inverted", [](auto& fails) {
        for (unsigned n = 0; n < 20; ++n) {
            DyckWord w = spell_nat(Natural(n));
            expect(fails, w.str() == kFirstTwenty[n], "spelling of " + std::to_string(n));
            expect(fails, eval_nat(w) == Natural(n), "decode of spelling " + std::to_string(n));
        }
    }});

    criteria.push_back({"2 worked natural examples are exact", [](auto& fails) {
        expect(fails, spell_nat(Natural(520)).str() == "(()(()))()(())()()(())", "encode 520");
        expect(fails, spell_nat(Natural(2646)).str() == "(())(()(()))()((()))", "encode 2646");
        expect(fails, eval_nat(validate("()(()(()))")) == 27, "decode to 27");
        expect(fails,
               eval_nat(validate("()(()(((()))))")).get_str() ==
                   "443426488243037769948249630619149892803",
               "decode of the long example");
    }});

    criteria.push_back({"3 rational examples are exact", [](auto& fails) {
        expect(fails, spell_rat(Rational::parse("-2/9")).str() == "(())((())())()", "encode -2/9");
        expect(fails, eval_rat(validate("(())((())())()")) == Rational::parse("-2/9"), "decode back to -2/9");
        expect(fails, spell_rat(Rational::parse("-1/3")).str() == "()(()())()", "encode -1/3");
    }});

    criteria.push_back({"4 linear factorization, plain and compressed", [](auto& fails) {
        DyckWord w = validate("(())()()(()(()))((()))");
        std::string expr = factorize_dyck(w);
        expect(fails, expr == "[(())^()][()()()(())^()(())][()()()()(())^(())]", "bracketed output");
        Natural product(1);
        std::size_t i = 0;
        while (i < expr.size() && expr[i] == '[') {
            std::size_t caret = expr.find('^', i);
            std::size_t close = expr.find(']', caret);
            Natural base = eval_nat(validate(expr.substr(i + 1, caret - i - 1)));
            Natural exp = eval_nat(validate(expr.substr(caret + 1, close - caret - 1)));
            Natural term;
            mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), mpz_get_ui(exp.get_mpz_t()));
            product *= term;
            i = close + 1;
        }
        expect(fails, product == 83006, "factor product is 83006");
        expect(fails, product == Natural(2) * 343 * 121, "83006 = 2 * 7^3 * 11^2");
        expect(fails, eval_nat(w) == 83006, "word evaluates to 83006");
        expect(fails,
               factorize_compressed(CompressedWord::parse("(())9(()(()))")) ==
                   "[(())^()][A(())^()(())]",
               "compressed path output");
    }});

    criteria.push_back({"5 minimal-word counts match the A082582 prefix", [](auto& fails) {
        const std::uint64_t prefix[] = {1, 1, 1, 2, 5, 13, 35, 97, 275, 794, 2327, 6905, 20705, 62642};
        for (std::size_t m = 0; m <= 13; ++m)
            expect(fails, count_minimal(m) == Natural(static_cast<unsigned long>(prefix[m])),
                   "count at semilength " + std::to_string(m));
    }});

    criteria.push_back({"6 stripes 2..5 match the published sequence and their patterns hold", [](auto& fails) {
        std::vector<std::vector<unsigned long>> expected = {
            {2}, {3, 4}, {5, 6, 8, 9, 16}, {7, 10, 12, 15, 18, 25, 27, 32, 64, 81, 256, 512, 65536}};
        for (std::size_t k = 2; k <= 5; ++k) {
            Stripe s = stripe(k);
            std::vector<Natural> want;
            for (unsigned long v : expected[k - 2]) want.emplace_back(v);
            expect(fails, s.members == want, "stripe " + std::to_string(k));
        }
        Report r = check_stripe_patterns(5);
        expect(fails, r.pass, "stripe pattern checks");
    }});

    criteria.push_back({"7 candidate grammar agrees with the pattern membership", [](auto& fails) {
        Report r = grammar_check(8, 1000);
        expect(fails, r.pass, "grammar report passes");
        for (const std::string& c : r.counterexamples) expect(fails, false, "counterexample: " + c);
    }});

    criteria.push_back({"8 automata: minimal-language DFA to semilength 9, prime DFA", [](auto& fails) {
        for (std::size_t k = 0; k <= 9; ++k) {
            for_each_dyck(k, [&](std::string_view w) {
                if (dfa_accepts_R(w) != detail::is_minimal_sv(w))
                    expect(fails, false, "DFA/pattern mismatch on " + std::string(w));
            });
        }
        // over arbitrary strings: acceptance of the DFA plus balance equals membership
        std::mt19937_64 rng(0xacce97);
        for (int i = 0; i < 20'000; ++i) {
            std::size_t len = rng() % 18;
            std::string s(len, ' ');
            for (auto& c : s) c = (rng() & 1) ? '(' : ')';
            bool balanced = oracle::brute_balanced(s);
            bool member = balanced && detail::is_minimal_sv(s);
            if ((dfa_accepts_R(s) && balanced) != member)
                expect(fails, false, "DFA intersection mismatch on " + s);
        }
        for (std::size_t k = 0; k <= 8; ++k) {
            for_each_dyck(k, [&](std::string_view wv) {
                DyckWord w = DyckWord::parse(wv);
                if (!is_minimal(w)) return;
                try {
                    Natural v = eval_nat(w);
                    bool prime = mpz_probab_prime_p(v.get_mpz_t(), 40) != 0;
                    if (is_prime_word(w) != prime)
                        expect(fails, false, "prime DFA mismatch on " + w.str());
                } catch (const Error&) {
                    // tower-valued word beyond the budget: a perfect power
                    if (is_prime_word(w)) expect(fails, false, "prime DFA accepts tower " + w.str());
                }
            });
        }
        for (std::size_t k = 1; k <= 1000; ++k)
            if (!is_prime_word(spell_nat(nth_prime(k))))
                expect(fails, false, "prime DFA rejects prime #" + std::to_string(k));
    }});

    criteria.push_back({"9 property suites: inverses, dinf, collapse, quasiminimal, permutations", [](auto& fails) {
        for (unsigned n = 0; n <= 100'000; ++n) {
            if (eval_nat(spell_nat(Natural(n))) != Natural(n)) {
                expect(fails, false, "eval(spell(" + std::to_string(n) + "))");
                break;
            }
        }
        std::size_t respelled = 0, over_budget = 0;
        for (std::size_t k = 0; k <= 10; ++k) {
            for_each_dyck(k, [&](std::string_view wv) {
                if (!detail::is_minimal_sv(wv)) return;
                DyckWord w = DyckWord::parse(wv);
                try {
                    if (spell_nat(eval_nat(w)) != w) expect(fails, false, "spell(eval) on " + w.str());
                    ++respelled;
                } catch (const Error& e) {
                    if (e.code() != errc::budget_exceeded)
                        expect(fails, false, "unexpected error on " + w.str());
                    ++over_budget;
                }
            });
        }
        // stratification frozen from the enumeration: 3551 minimal words,
        // towers beyond the million-bit budget excluded
        expect(fails, respelled == 2286 && over_budget == 1265, "minimal roundtrip stratification");
        for (std::size_t k = 0; k <= 6; ++k) {
            for_each_dyck(k, [&](std::string_view wv) {
                if (dinf(DyckWord::parse(wv)) != oracle::brute_dinf(wv))
                    expect(fails, false, "dinf mismatch on " + std::string(wv));
            });
        }
        EvalBudget small(4096);
        for (std::size_t k = 0; k <= 8; ++k) {
            for_each_dyck(k, [&](std::string_view wv) {
                DyckWord w = DyckWord::parse(wv);
                DyckWord flat = collapse(w);
                if (!is_minimal(flat)) expect(fails, false, "collapse not minimal on " + w.str());
                try {
                    if (eval_nat(flat, small) != eval_nat(w, small))
                        expect(fails, false, "collapse value on " + w.str());
                } catch (const Error& e) {
                    if (e.code() != errc::budget_exceeded)
                        expect(fails, false, "unexpected error on " + w.str());
                    bool flat_over = false;
                    try {
                        eval_nat(flat, small);
                    } catch (const Error&) {
                        flat_over = true;
                    }
                    if (!flat_over) expect(fails, false, "collapse changed budget class on " + w.str());
                }
            });
        }
        for (std::size_t k = 0; k <= 7; ++k) {
            for_each_dyck(k, [&](std::string_view wv) {
                DyckWord w = DyckWord::parse(wv);
                if (is_quasiminimal(w) != (dinf(w) <= 1))
                    expect(fails, false, "quasiminimal pattern on " + w.str());
            });
        }
        std::mt19937_64 rng(0x20250808);
        for (int p = 0; p < 20; ++p) {
            std::vector<std::uint32_t> support(2 + rng() % 7);
            std::iota(support.begin(), support.end(), 1u);
            std::shuffle(support.begin(), support.end(), rng);
            PrimePermutation sigma(support);
            std::shuffle(support.begin(), support.end(), rng);
            PrimePermutation tau(support);
            for (unsigned n = 0; n <= 10'000; ++n) {
                Natural value(static_cast<unsigned long>(n));
                DyckWord w = spell_nat_perm(value, sigma);
                if (eval_nat_perm(w, sigma) != value) {
                    expect(fails, false, "permuted roundtrip at n=" + std::to_string(n));
                    break;
                }
                DyckWord there = convert_spelling(w, sigma, tau);
                if (convert_spelling(there, tau, sigma) != w) {
                    expect(fails, false, "conversion roundtrip at n=" + std::to_string(n));
                    break;
                }
            }
        }
    }});

    int failures = 0;
    for (auto& c : criteria) {
        std::vector<std::string> fails;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(fails);
        } catch (const std::exception& e) {
            fails.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (fails.empty()) {
            std::printf("[PASS] %s  (%.2fs)\n", c.name.c_str(), secs);
        } else {
            ++failures;
            std::printf("[FAIL] %s  (%.2fs)\n", c.name.c_str(), secs);
            std::size_t shown = 0;
            for (const auto& f : fails) {
                if (++shown > 5) {
                    std::printf("       ... and %zu more\n", fails.size() - 5);
                    break;
                }
                std::printf("       %s\n", f.c_str());
            }
        }
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return failures;
}
