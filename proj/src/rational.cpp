#include "hannerlab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hannerlab {

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string s = text.substr(b, e - b);
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t slash = s.find('/');
    auto valid_int = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("malformed rational: '" + text + "'");
    if (num[0] == '+') num = num.substr(1);
    Int d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rat r{Int(num), d};
    r.canonicalize();
    return r;
}

double to_double(const Rat& r) { return r.get_d(); }

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

} // namespace hannerlab
