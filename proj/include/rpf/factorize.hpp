#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rpf/compress.hpp"
#include "rpf/dyck.hpp"
#include "rpf/errors.hpp"
#include "rpf/natural_interp.hpp"

namespace rpf {

struct FactorizeStats {
    std::uint64_t steps = 0;  // input tokens touched by the scan
};

/// Linear-time prime factorization of a minimal word: one left-to-right
/// pass emitting "[base^content]" for every non-empty chunk, where the
/// base starts as the word for 2 and gains one "()" per chunk. The empty
/// word and "()" (0 has no factorization, 1 an empty one) produce no
/// output.
inline std::string factorize_dyck(const DyckWord& w, FactorizeStats* stats = nullptr) {
    if (!is_minimal(w)) throw Error(errc::not_minimal, "word is not minimal");

    std::string_view s = w.view();
    std::string out;
    long depth = 0;
    std::size_t left = 0;
    std::size_t base_pairs = 0;  // base = "()" x base_pairs + "(())"
    bool trivial_chunk = true;
    std::uint64_t steps = 0;

    for (std::size_t i = 0; i < s.size(); ++i) {
        ++steps;
        if (s[i] == '(') {
            if (++depth > 1) trivial_chunk = false;
        } else {
            if (--depth == 0) {
                if (!trivial_chunk) {
                    out += '[';
                    for (std::size_t k = 0; k < base_pairs; ++k) out += "()";
                    out += "(())^";
                    out.append(s.substr(left + 1, i - left - 1));
                    out += ']';
                    trivial_chunk = true;
                }
                left = i + 1;
                ++base_pairs;
            }
        }
    }
    if (stats) stats->steps = steps;
    return out;
}

namespace detail {

/// The pattern DFA advanced by one "()" pair; converges after at most
/// three applications, so runs are processed in O(1).
inline int dfa_R_pair_step(int q) {
    switch (q) {
        case 0: return 1;  // q0 -( q0 -) q1
        case 1: return 3;  // q1 -( q2 -) q3
        case 2: return 1;  // q2 -( q0 -) q1
        case 3: return 3;  // q3 -( q2 -) q3
        default: return 4;
    }
}

inline int dfa_R_char_step(int q, bool open) {
    switch (q) {
        case 0: return open ? 0 : 1;
        case 1: return open ? 2 : 1;
        case 2: return open ? 0 : 3;
        case 3: return open ? 2 : 4;
        default: return 4;
    }
}

/// Minimality of the underlying word straight from the token stream
/// (balance plus the DFA for R), without expanding runs.
inline bool compressed_is_minimal(const CompressedWord& cw) {
    long depth = 0;
    int q = 0;
    for (const Token& t : cw.tokens()) {
        switch (t.kind) {
            case Token::Kind::lparen:
                ++depth;
                q = dfa_R_char_step(q, true);
                break;
            case Token::Kind::rparen:
                if (--depth < 0) return false;
                q = dfa_R_char_step(q, false);
                break;
            case Token::Kind::run:
                for (std::uint64_t k = 0; k < t.count && k < 3; ++k) q = dfa_R_pair_step(q);
                break;
        }
    }
    return depth == 0 && q <= 2;
}

inline std::string render_tokens(const std::vector<Token>& toks, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        switch (toks[i].kind) {
            case Token::Kind::lparen: out += '('; break;
            case Token::Kind::rparen: out += ')'; break;
            case Token::Kind::run: out += hex_upper(toks[i].count); break;
        }
    }
    return out;
}

}  // namespace detail

/// Same algorithm operating directly on the compressed token stream: a run
/// advances the base counter by its full length without expansion, and
/// bases and exponents in the output stay compressed.
inline std::string factorize_compressed(const CompressedWord& cw, FactorizeStats* stats = nullptr) {
    if (!detail::compressed_is_minimal(cw))
        throw Error(errc::not_minimal, "underlying word is not minimal");

    const auto& toks = cw.tokens();
    std::string out;
    long depth = 0;
    std::size_t left = 0;
    std::uint64_t base_pairs = 0;
    bool trivial_chunk = true;
    std::uint64_t steps = 0;

    auto emit_base = [&out](std::uint64_t pairs) {
        if (pairs == 1)
            out += "()";
        else if (pairs >= 2)
            out += detail::hex_upper(pairs);
        out += "(())";
    };

    for (std::size_t i = 0; i < toks.size(); ++i) {
        ++steps;
        switch (toks[i].kind) {
            case Token::Kind::lparen:
                if (++depth > 1) trivial_chunk = false;
                break;
            case Token::Kind::rparen:
                if (--depth == 0) {
                    if (!trivial_chunk) {
                        out += '[';
                        emit_base(base_pairs);
                        out += '^';
                        out += detail::render_tokens(toks, left + 1, i);
                        out += ']';
                        trivial_chunk = true;
                    }
                    left = i + 1;
                    ++base_pairs;
                }
                break;
            case Token::Kind::run:
                if (depth == 0) {
                    base_pairs += toks[i].count;  // whole chunks, all "()"
                    left = i + 1;
                } else {
                    trivial_chunk = false;  // empty pairs inside a chunk
                }
                break;
        }
    }
    if (stats) stats->steps = steps;
    return out;
}

}  // namespace rpf
