#include "qforms/rational.hpp"

#include "qforms/errors.hpp"

namespace qforms {

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    for (char ch : text)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
            throw ParseError("malformed rational literal: " + text);
    try {
        Rat r(text);
        if (r.get_den() == 0) throw ParseError("zero denominator in: " + text);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal: " + text);
    }
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

} // namespace qforms
