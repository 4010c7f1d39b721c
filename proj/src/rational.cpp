#include "sniep/rational.hpp"

#include "sniep/errors.hpp"

#include <functional>
#include <ostream>

namespace sniep {

Rational::Rational(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t' && ch != '+') s.push_back(ch);
    if (s.empty()) throw InputError("empty rational");

    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-')
            throw InputError("malformed rational '" + std::string(text) + "'");
        mpz_class d(den);
        if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        return Rational(mpq_class(mpz_class(num), d));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (neg) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (frac.empty() || !valid_int(whole) || !valid_int(frac) || frac[0] == '-')
            throw InputError("malformed decimal '" + std::string(text) + "'");
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        mpz_class num = mpz_class(whole) * den + mpz_class(frac);
        if (neg) num = -num;
        return Rational(mpq_class(num, den));
    }
    if (!valid_int(s)) throw InputError("malformed rational '" + std::string(text) + "'");
    return Rational(mpq_class(mpz_class(s)));
}

std::string Rational::str() const { return q_.get_str(); }

std::size_t Rational::hash() const {
    return std::hash<std::string>{}(q_.get_str(16));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational sum(const std::vector<Rational>& v) {
    Rational s;
    for (const auto& x : v) s += x;
    return s;
}

std::string join(const std::vector<Rational>& v, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i].str();
    }
    return out;
}

}  // namespace sniep
