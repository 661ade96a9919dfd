#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpf {

enum class errc {
    not_dyck,
    illegal_symbol,
    bad_hex_token,
    result_not_dyck,
    domain_error,
    not_minimal,
    budget_exceeded,
    cap_exceeded,
    non_integer_exponent,
    no_finite_expansion,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_dyck: return "NotDyck";
        case errc::illegal_symbol: return "IllegalSymbol";
        case errc::bad_hex_token: return "BadHexToken";
        case errc::result_not_dyck: return "ResultNotDyck";
        case errc::domain_error: return "DomainError";
        case errc::not_minimal: return "NotMinimal";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::non_integer_exponent: return "NonIntegerExponent";
        case errc::no_finite_expansion: return "NoFiniteExpansion";
    }
    return "Error";
}

/// Library-wide exception. `position()` is meaningful for the lexical
/// errors (NotDyck, IllegalSymbol, BadHexToken) and npos otherwise.
class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(errc code, std::string message, std::size_t position = npos)
        : std::runtime_error(std::move(message)), code_(code), position_(position) {}

    errc code() const noexcept { return code_; }
    std::size_t position() const noexcept { return position_; }

private:
    errc code_;
    std::size_t position_;
};

}  // namespace rpf
