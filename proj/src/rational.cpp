#include "rlam/rational.hpp"
#include "rlam/errors.hpp"

#include <cctype>

namespace rlam {

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw UsageError("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        bool neg = s[0] == '-';
        std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
        dot = body.find('.');
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        std::size_t frac = body.size() - dot - 1;
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw UsageError("bad rational literal '" + text + "'");
        BigInt num(digits.empty() ? "0" : digits), den = 1;
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
        Rational r(neg ? BigInt(-num) : num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (s[0] == '+') s = s.substr(1);
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw UsageError("bad rational literal '" + text + "'");
    r.canonicalize();
    return r;
}

} // namespace rlam
