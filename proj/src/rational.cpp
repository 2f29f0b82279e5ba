#include "bnalg/rational.hpp"

#include "bnalg/errors.hpp"

namespace bnalg {

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) {
        throw ParseError("empty rational literal");
    }
    // mpq_class(string) accepts "p" and "p/q" but tolerates whitespace and
    // leading '+' inconsistently across GMP versions; validate up front.
    std::size_t i = 0;
    auto digits = [&](bool sign_ok) {
        if (sign_ok && i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        return i > start;
    };
    bool ok = digits(true);
    if (ok && i < text.size()) {
        ok = text[i] == '/' && (++i, digits(false)) && i == text.size();
    }
    if (!ok) {
        throw ParseError("bad rational literal: \"" + text + "\"");
    }

    Rational value;
    if (value.set_str(text, 10) != 0) {
        throw ParseError("bad rational literal: \"" + text + "\"");
    }
    if (value.get_den() == 0) {
        throw ParseError("zero denominator in rational literal: \"" + text + "\"");
    }
    value.canonicalize();
    return value;
}

}  // namespace bnalg
