#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aahull {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when two operands live in different ambient dimensions.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto valid_int = [](std::string_view part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
    if (num[0] == '+') num.erase(0, 1);
    Rational q{Integer(num), Integer(den)};
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    q.canonicalize();
    return q;
}

/// Reduced fraction a/b (mpq_class's two-argument constructor does not reduce).
inline Rational frac(long a, long b) {
    if (b == 0) throw std::invalid_argument("zero denominator");
    Rational q(a, b);
    q.canonicalize();
    return q;
}

inline int compare(const Rational& a, const Rational& b) { return cmp(a, b); }

/// Exact rational vector in Q^m.
class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t dim) : entries_(dim) {}
    QVector(std::initializer_list<Rational> values) : entries_(values) {}
    explicit QVector(std::vector<Rational> values) : entries_(std::move(values)) {}

    static QVector zero(std::size_t dim) { return QVector(dim); }
    static QVector unit(std::size_t dim, std::size_t axis) {
        QVector v(dim);
        v[axis] = 1;
        return v;
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    Rational& operator[](std::size_t i) { return entries_[i]; }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }

    auto begin() { return entries_.begin(); }
    auto end() { return entries_.end(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    const std::vector<Rational>& entries() const { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return sgn(q) == 0; });
    }

    bool is_integral() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q.get_den() == 1; });
    }

    QVector& operator+=(const QVector& other) {
        check_same(other);
        for (std::size_t i = 0; i < size(); ++i) entries_[i] += other.entries_[i];
        return *this;
    }
    QVector& operator-=(const QVector& other) {
        check_same(other);
        for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other.entries_[i];
        return *this;
    }
    QVector& operator*=(const Rational& c) {
        for (auto& e : entries_) e *= c;
        return *this;
    }

    friend QVector operator+(QVector a, const QVector& b) { return a += b; }
    friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
    friend QVector operator*(QVector a, const Rational& c) { return a *= c; }
    friend QVector operator*(const Rational& c, QVector a) { return a *= c; }
    friend QVector operator-(QVector a) {
        for (auto& e : a.entries_) e = -e;
        return a;
    }

    friend bool operator==(const QVector& a, const QVector& b) { return a.entries_ == b.entries_; }

    /// Lexicographic order; shorter vectors first.
    friend std::strong_ordering operator<=>(const QVector& a, const QVector& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = cmp(a.entries_[i], b.entries_[i]);
            if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const QVector& v) {
        os << '(';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ", ";
            os << to_string(v[i]);
        }
        return os << ')';
    }

private:
    void check_same(const QVector& other) const {
        if (other.size() != size()) {
            throw DimensionError("vector dimension mismatch: " + std::to_string(size()) + " vs " +
                                 std::to_string(other.size()));
        }
    }

    std::vector<Rational> entries_;
};

inline Rational dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionError("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::string to_string(const QVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += to_string(v[i]);
    }
    return out;
}

/// Positive multiple of `v` with coprime integer entries. Zero stays zero.
inline QVector primitive_direction(const QVector& v) {
    Integer den_lcm = 1;
    for (const auto& e : v) den_lcm = lcm(den_lcm, Integer(e.get_den()));
    Integer g = 0;
    std::vector<Integer> ints;
    ints.reserve(v.size());
    for (const auto& e : v) {
        Integer z = e.get_num() * (den_lcm / e.get_den());
        g = gcd(g, z);
        ints.push_back(std::move(z));
    }
    QVector out(v.size());
    if (g == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
    return out;
}

}  // namespace aahull
