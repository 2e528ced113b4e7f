#include "gcl/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "gcl/error.hpp"

namespace gcl {

namespace {

bool is_signed_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    if (!is_signed_integer_token(num))
        throw InputError("rational: malformed numerator in '" + text + "'");
    if (slash == std::string::npos) return Rational(Integer(num));
    const std::string den = text.substr(slash + 1);
    if (!is_signed_integer_token(den) || den[0] == '-' || den[0] == '+')
        throw InputError("rational: malformed denominator in '" + text + "'");
    Integer d(den);
    if (d == 0) throw InputError("rational: zero denominator in '" + text + "'");
    return Rational(Integer(num), d);
}

std::string to_fraction(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_plain(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return to_fraction(r);
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw InputError("rational: non-finite double");
    return Rational(x);
}

bool is_integral(const Rational& r) { return denominator(r) == 1; }

long long to_int64(const Rational& r) {
    if (!is_integral(r)) throw InternalError("to_int64: non-integral rational " + to_fraction(r));
    const Integer n = numerator(r);
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        throw InternalError("to_int64: out of range");
    return static_cast<long long>(n);
}

}  // namespace gcl
