#include "rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crn {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational out;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        Integer d{std::string(den), 10};
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        out = Rational(Integer(std::string(num), 10), d);
    } else if (dot != std::string_view::npos) {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
            (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        Integer den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        std::string digits = std::string(ip) + std::string(fp);
        if (digits.empty()) digits = "0";
        out = Rational(Integer(digits, 10), den);
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        out = Rational(Integer(std::string(s), 10));
    }
    out.canonicalize();
    if (negative) out = -out;
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace crn
