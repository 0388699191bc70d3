#include "feynpoly/rational.hpp"

#include <ostream>
#include <sstream>

namespace feynpoly {

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            size_t pos = 0;
            std::int64_t n = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return Rational(n);
        }
        size_t pos = 0;
        std::int64_t n = std::stoll(s.substr(0, slash), &pos);
        if (pos != slash) throw std::invalid_argument(s);
        std::int64_t d = std::stoll(s.substr(slash + 1), &pos);
        if (pos != s.size() - slash - 1) throw std::invalid_argument(s);
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("rational out of range '" + s + "'");
    }
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num_;
    if (den_ != 1) os << '/' << den_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace feynpoly
