#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "pcog/error.hpp"

namespace pcog {

/// Exact arbitrary-precision rational. Expression templates are off so that
/// `auto` and lambdas behave like ordinary value types.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" with gcd-reduced positive q, or a plain integer when q == 1.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Accepts "[-]digits" or "[-]digits/digits" with a nonzero denominator.
inline Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const bool ok = slash == std::string_view::npos
                        ? digits(body)
                        : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
    if (!ok) throw ParseError("not an exact rational: '" + std::string(text) + "'");
    if (slash != std::string_view::npos) {
        const auto den = body.substr(slash + 1);
        if (den.find_first_not_of('0') == std::string_view::npos)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(std::string(text));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace pcog
