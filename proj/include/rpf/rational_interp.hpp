#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rpf/dyck.hpp"
#include "rpf/errors.hpp"
#include "rpf/natural_interp.hpp"
#include "rpf/numeric.hpp"
#include "rpf/primes.hpp"

namespace rpf {

/// Standard rational spelling: gamma(0) = epsilon, gamma(1) = "()",
/// gamma(q) = gamma(|q|) followed by "()" for q < 0, otherwise the signed
/// exponents of the rational prime factorization spelled recursively.
/// Output is always quasiminimal.
inline DyckWord spell_rat(const Rational& q) {
    struct Frame {
        std::vector<std::int64_t> exps;
        bool negative = false;
        std::size_t next = 0;
        std::string out;
    };

    auto make_frame = [](const Rational& v) {
        // v is nonzero with |v| != 1.
        Frame f;
        f.negative = v.sign() < 0;
        FactorizationVector fv = factor_rational(v);
        f.exps = std::move(fv.exponents);
        return f;
    };

    auto direct = [](const Rational& v, std::string* out) {
        // Handles 0 and |v| = 1 without a frame; returns false otherwise.
        if (v.is_zero()) return true;
        if (v.is_integer() && abs(v.num()) == 1) {
            out->append(v.sign() < 0 ? "()()" : "()");
            return true;
        }
        return false;
    };

    std::string trivial;
    if (direct(q, &trivial)) return DyckWord::trusted(std::move(trivial));

    std::vector<Frame> stack;
    stack.push_back(make_frame(q));

    std::string result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.exps.size()) {
            Rational e{Integer(static_cast<long>(f.exps[f.next]))};
            std::string small;
            if (direct(e, &small)) {
                f.out += '(';
                f.out += small;
                f.out += ')';
                ++f.next;
            } else {
                stack.push_back(make_frame(e));
            }
            continue;
        }
        std::string done = std::move(f.out);
        if (f.negative) done += "()";
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

/// Standard rational evaluation, defined on every Dyck word whose
/// recursive exponents stay integral: split w into w' and the longest
/// all-empty-pair suffix z leaving w' nonempty, the parity of dim(z)
/// giving the sign. Throws NonIntegerExponent if an exponent evaluates to
/// a non-integer rational.
inline Rational eval_rat(const DyckWord& w, const EvalBudget& budget = EvalBudget()) {
    if (w.empty()) return Rational();
    if (detail::max_nesting_depth(w.view()) >= detail::depth_limit_for_budget(budget.max_bits))
        throw Error(errc::budget_exceeded, "nesting depth alone exceeds the bit budget");

    struct Frame {
        std::string_view seq;
        std::vector<std::string_view> contents;  // contents of w' chunks only
        bool negative = false;
        std::size_t next = 0;
        Natural num{1};
        Natural den{1};
    };

    auto make_frame = [](std::string_view seq) {
        Frame f;
        f.seq = seq;
        std::vector<std::pair<std::size_t, std::size_t>> bounds;
        detail::for_each_chunk(seq, [&](std::size_t b, std::size_t e) { bounds.emplace_back(b, e); });
        std::size_t trailing = 0;
        while (trailing < bounds.size() && bounds[bounds.size() - 1 - trailing].second - bounds[bounds.size() - 1 - trailing].first == 2)
            ++trailing;
        if (trailing == bounds.size()) trailing = bounds.size() - 1;  // keep w' nonempty
        f.negative = trailing % 2 == 1;
        for (std::size_t i = 0; i + trailing < bounds.size(); ++i)
            f.contents.push_back(seq.substr(bounds[i].first + 1, bounds[i].second - bounds[i].first - 2));
        return f;
    };

    std::unordered_map<std::string_view, Rational> memo;
    std::vector<Frame> stack;
    stack.push_back(make_frame(w.view()));

    auto apply = [&budget](Frame& f, const Rational& value) {
        if (!value.is_integer())
            throw Error(errc::non_integer_exponent,
                        "exponent evaluates to non-integer " + value.str());
        Natural mag = abs(value.num());
        Natural& side = sgn(value.num()) < 0 ? f.den : f.num;
        side *= detail::pow_capped(nth_prime_u64(f.next + 1), mag, budget.max_bits);
        detail::check_bits(side, budget.max_bits);
        ++f.next;
    };

    Rational result;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.contents.size()) {
            std::string_view c = f.contents[f.next];
            if (c.empty()) {
                apply(f, Rational());
            } else if (auto it = memo.find(c); it != memo.end()) {
                apply(f, it->second);
            } else {
                stack.push_back(make_frame(c));
            }
            continue;
        }
        Rational value(f.negative ? Integer(-f.num) : f.num, f.den);
        memo.emplace(f.seq, value);
        stack.pop_back();
        if (stack.empty()) {
            result = std::move(value);
        } else {
            apply(stack.back(), value);
        }
    }
    return result;
}

/// Membership in the quasiminimal language (inflationary degree <= 1):
/// no ")()())" substring, no ")()()" suffix.
inline bool is_quasiminimal(const DyckWord& w) {
    std::string_view s = w.view();
    if (s.find(")()())") != std::string_view::npos) return false;
    if (s.size() >= 5 && s.substr(s.size() - 5) == ")()()") return false;
    return true;
}

}  // namespace rpf
