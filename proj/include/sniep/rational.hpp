#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sniep {

// Exact rational, always canonical (lowest terms, positive denominator).
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT: implicit from integers is intended
    Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p", "p/q", "-p/q" and finite decimals such as "0.125".
    static Rational parse(std::string_view text);

    std::string str() const;
    double to_double() const { return q_.get_d(); }
    const mpq_class& raw() const { return q_; }

    std::string numerator() const { return q_.get_num().get_str(); }
    std::string denominator() const { return q_.get_den().get_str(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::size_t hash() const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational sum(const std::vector<Rational>& v);

struct RationalHash {
    std::size_t operator()(const Rational& r) const { return r.hash(); }
};

std::string join(const std::vector<Rational>& v, std::string_view sep = ",");

}  // namespace sniep
