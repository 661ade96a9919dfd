#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rpf/dyck.hpp"
#include "rpf/errors.hpp"

namespace rpf {

namespace detail {

inline std::string hex_upper(std::uint64_t v) {
    static const char digits[] = "0123456789ABCDEF";
    std::string out;
    do {
        out.insert(out.begin(), digits[v & 0xF]);
        v >>= 4;
    } while (v != 0);
    return out;
}

/// Lexical run compression over an arbitrary string: every maximal run of
/// k >= 2 consecutive "()" substrings becomes an uppercase hex numeral,
/// everything else is copied verbatim. Works on factorization expressions
/// as well as plain words.
inline std::string compress_runs(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '(' && i + 1 < s.size() && s[i + 1] == ')') {
            std::uint64_t k = 0;
            while (i + 1 < s.size() && s[i] == '(' && s[i + 1] == ')') {
                ++k;
                i += 2;
            }
            if (k >= 2)
                out += hex_upper(k);
            else
                out += "()";
        } else {
            out.push_back(s[i++]);
        }
    }
    return out;
}

}  // namespace detail

struct Token {
    enum class Kind { lparen, rparen, run };
    Kind kind;
    std::uint64_t count = 0;  // run length, only for Kind::run

    bool operator==(const Token& o) const { return kind == o.kind && count == o.count; }
};

/// Token stream of parentheses and hex run-length numerals; bijective with
/// DyckWord via compress/decompress. Runs are always >= 2 and never
/// adjacent (maximal munch makes adjacency unrepresentable in text form).
class CompressedWord {
public:
    CompressedWord() = default;

    explicit CompressedWord(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
        const Token* prev = nullptr;
        for (const Token& t : tokens_) {
            if (t.kind == Token::Kind::run) {
                if (t.count < 2) throw Error(errc::bad_hex_token, "run length must be >= 2");
                if (prev && prev->kind == Token::Kind::run)
                    throw Error(errc::bad_hex_token, "adjacent run tokens");
            }
            prev = &t;
        }
    }

    /// Lexical scan of the text form. Hex numerals are uppercase with no
    /// leading zeros, parsed maximal-munch.
    static CompressedWord parse(std::string_view s) {
        std::vector<Token> toks;
        std::size_t i = 0;
        auto is_hex = [](char c) { return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'); };
        while (i < s.size()) {
            char c = s[i];
            if (c == '(') {
                toks.push_back({Token::Kind::lparen});
                ++i;
            } else if (c == ')') {
                toks.push_back({Token::Kind::rparen});
                ++i;
            } else if (is_hex(c)) {
                if (c == '0')
                    throw Error(errc::bad_hex_token, "leading zero in run numeral at position " + std::to_string(i), i);
                std::uint64_t v = 0;
                std::size_t start = i;
                while (i < s.size() && is_hex(s[i])) {
                    if (v > (UINT64_MAX >> 4))
                        throw Error(errc::bad_hex_token, "run numeral too large at position " + std::to_string(start), start);
                    v = (v << 4) | static_cast<std::uint64_t>(s[i] <= '9' ? s[i] - '0' : s[i] - 'A' + 10);
                    ++i;
                }
                if (v < 2)
                    throw Error(errc::bad_hex_token, "run length must be >= 2 at position " + std::to_string(start), start);
                toks.push_back({Token::Kind::run, v});
            } else {
                throw Error(errc::bad_hex_token, "unexpected symbol '" + std::string(1, c) + "' at position " + std::to_string(i), i);
            }
        }
        return CompressedWord(std::move(toks));
    }

    const std::vector<Token>& tokens() const { return tokens_; }
    bool empty() const { return tokens_.empty(); }

    std::string str() const {
        std::string out;
        for (const Token& t : tokens_) {
            switch (t.kind) {
                case Token::Kind::lparen: out.push_back('('); break;
                case Token::Kind::rparen: out.push_back(')'); break;
                case Token::Kind::run: out += detail::hex_upper(t.count); break;
            }
        }
        return out;
    }

    bool operator==(const CompressedWord& o) const { return tokens_ == o.tokens_; }
    bool operator!=(const CompressedWord& o) const { return !(*this == o); }

private:
    std::vector<Token> tokens_;
};

/// Canonical (maximal-munch) run-length compression of a Dyck word.
inline CompressedWord compress(const DyckWord& w) {
    std::string_view s = w.view();
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '(' && i + 1 < s.size() && s[i + 1] == ')') {
            std::uint64_t k = 0;
            while (i + 1 < s.size() && s[i] == '(' && s[i + 1] == ')') {
                ++k;
                i += 2;
            }
            if (k >= 2) {
                toks.push_back({Token::Kind::run, k});
            } else {
                toks.push_back({Token::Kind::lparen});
                toks.push_back({Token::Kind::rparen});
            }
        } else if (s[i] == '(') {
            toks.push_back({Token::Kind::lparen});
            ++i;
        } else {
            toks.push_back({Token::Kind::rparen});
            ++i;
        }
    }
    return CompressedWord(std::move(toks));
}

/// Exact inverse of compress on its image: RUN(k) expands to k copies of
/// "()". Throws ResultNotDyck if the expansion is not well-balanced.
inline DyckWord decompress(const CompressedWord& cw) {
    static constexpr std::uint64_t kMaxExpansion = std::uint64_t(1) << 28;
    std::uint64_t total = 0;
    for (const Token& t : cw.tokens())
        total += t.kind == Token::Kind::run ? 2 * t.count : 1;
    if (total > kMaxExpansion)
        throw Error(errc::cap_exceeded, "decompressed length exceeds limit");

    std::string out;
    out.reserve(static_cast<std::size_t>(total));
    for (const Token& t : cw.tokens()) {
        switch (t.kind) {
            case Token::Kind::lparen: out.push_back('('); break;
            case Token::Kind::rparen: out.push_back(')'); break;
            case Token::Kind::run:
                for (std::uint64_t k = 0; k < t.count; ++k) out += "()";
                break;
        }
    }
    if (!detail::is_dyck(out)) throw Error(errc::result_not_dyck, "decompressed string is not a Dyck word");
    return DyckWord::trusted(std::move(out));
}

}  // namespace rpf
