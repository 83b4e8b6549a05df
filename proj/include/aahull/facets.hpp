#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "aahull/polyhedron.hpp"
#include "aahull/rational.hpp"

namespace aahull {

class EmptyPolyhedronError : public std::invalid_argument {
public:
    EmptyPolyhedronError() : std::invalid_argument("facets of the empty polyhedron are undefined") {}
};

/// a . x + b <= 0 (or = 0 when listed as an equality), with coprime integer
/// coefficients and a != 0.
struct HConstraint {
    std::vector<Integer> normal;
    Integer bound;

    Rational evaluate(const QVector& x) const {
        if (x.size() != normal.size()) throw DimensionError("constraint evaluated on wrong dimension");
        Rational s = Rational(bound);
        for (std::size_t i = 0; i < normal.size(); ++i) s += Rational(normal[i]) * x[i];
        return s;
    }

    friend bool operator==(const HConstraint&, const HConstraint&) = default;
    friend bool operator<(const HConstraint& a, const HConstraint& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.bound < b.bound;
    }
};

inline std::string to_string(const HConstraint& c, const char* rel = "<=") {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < c.normal.size(); ++i) {
        const Integer& a = c.normal[i];
        if (sgn(a) == 0) continue;
        Integer mag = abs(a);
        if (first) {
            if (sgn(a) < 0) out += "-";
        } else {
            out += sgn(a) < 0 ? " - " : " + ";
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += "x" + std::to_string(i + 1);
        first = false;
    }
    if (sgn(c.bound) != 0) {
        out += sgn(c.bound) < 0 ? " - " : " + ";
        out += Integer(abs(c.bound)).get_str();
    }
    out += std::string(" ") + rel + " 0";
    return out;
}

struct HRepresentation {
    std::vector<HConstraint> inequalities;
    std::vector<HConstraint> equalities;

    bool satisfied_by(const QVector& x) const {
        for (const auto& c : equalities) {
            if (sgn(c.evaluate(x)) != 0) return false;
        }
        for (const auto& c : inequalities) {
            if (sgn(c.evaluate(x)) > 0) return false;
        }
        return true;
    }
};

namespace detail {

using IntVector = std::vector<Integer>;

inline Integer idot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void make_primitive(IntVector& v) {
    Integer g = 0;
    for (const auto& e : v) g = gcd(g, e);
    if (g > 1) {
        for (auto& e : v) e /= g;
    }
}

inline IntVector to_integer_row(const Rational& lead, const QVector& rest) {
    Integer den = lead.get_den();
    for (const auto& e : rest) den = lcm(den, Integer(e.get_den()));
    IntVector row;
    row.reserve(rest.size() + 1);
    row.push_back(lead.get_num() * (den / lead.get_den()));
    for (const auto& e : rest) row.push_back(e.get_num() * (den / e.get_den()));
    make_primitive(row);
    return row;
}

/// Double description of the cone {y | g . y >= 0 for every row g}.
/// Produces a lineality basis and extreme rays modulo that lineality.
class DoubleDescription {
public:
    explicit DoubleDescription(std::size_t dim) : dim_(dim) {
        for (std::size_t i = 0; i < dim; ++i) {
            IntVector e(dim, 0);
            e[i] = 1;
            lines_.push_back(std::move(e));
        }
    }

    void add_constraint(const IntVector& h) {
        const std::size_t k = processed_++;
        for (std::size_t li = 0; li < lines_.size(); ++li) {
            Integer hl = idot(h, lines_[li]);
            if (sgn(hl) == 0) continue;
            IntVector pivot = lines_[li];
            if (sgn(hl) < 0) {
                for (auto& e : pivot) e = -e;
                hl = -hl;
            }
            lines_.erase(lines_.begin() + static_cast<std::ptrdiff_t>(li));
            for (auto& l : lines_) combine_in_place(l, hl, pivot, idot(h, l));
            for (auto& r : rays_) {
                combine_in_place(r.dir, hl, pivot, idot(h, r.dir));
                r.zero.push_back(true);
            }
            Ray fresh{pivot, std::vector<bool>(k, true)};
            fresh.zero.push_back(false);
            rays_.push_back(std::move(fresh));
            return;
        }

        std::vector<Ray> pos, zero, neg;
        std::vector<Integer> pos_val, neg_val;
        for (auto& r : rays_) {
            Integer v = idot(h, r.dir);
            int s = sgn(v);
            if (s > 0) {
                pos.push_back(r);
                pos_val.push_back(v);
            } else if (s == 0) {
                zero.push_back(r);
            } else {
                neg.push_back(r);
                neg_val.push_back(v);
            }
        }
        std::vector<Ray> next;
        for (auto& r : pos) {
            r.zero.push_back(false);
            next.push_back(r);
        }
        for (auto& r : zero) {
            r.zero.push_back(true);
            next.push_back(r);
        }
        const std::size_t pointed_dim = dim_ - lines_.size();
        for (std::size_t i = 0; i < pos.size(); ++i) {
            for (std::size_t j = 0; j < neg.size(); ++j) {
                std::vector<bool> common(k, false);
                std::size_t count = 0;
                for (std::size_t c = 0; c < k; ++c) {
                    common[c] = pos[i].zero[c] && neg[j].zero[c];
                    count += common[c] ? 1 : 0;
                }
                if (pointed_dim >= 2 && count + 2 < pointed_dim) continue;
                if (!adjacent(common, pos[i], neg[j])) continue;
                IntVector dir(dim_);
                Integer a = pos_val[i];
                Integer b = -neg_val[j];
                for (std::size_t c = 0; c < dim_; ++c) dir[c] = a * neg[j].dir[c] + b * pos[i].dir[c];
                make_primitive(dir);
                common.push_back(true);
                next.push_back(Ray{std::move(dir), std::move(common)});
            }
        }
        rays_ = std::move(next);
    }

    const std::vector<IntVector>& lines() const { return lines_; }
    std::vector<IntVector> rays() const {
        std::vector<IntVector> out;
        for (const auto& r : rays_) out.push_back(r.dir);
        return out;
    }

private:
    struct Ray {
        IntVector dir;
        std::vector<bool> zero;  // tight constraints among those processed
    };

    static void combine_in_place(IntVector& v, const Integer& hl, const IntVector& pivot, const Integer& hv) {
        if (sgn(hv) == 0) return;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = hl * v[c] - hv * pivot[c];
        make_primitive(v);
    }

    bool adjacent(const std::vector<bool>& common, const Ray& p, const Ray& n) const {
        for (const auto& r : rays_) {
            if (r.dir == p.dir || r.dir == n.dir) continue;
            bool covers = true;
            for (std::size_t c = 0; c < common.size(); ++c) {
                if (common[c] && !r.zero[c]) {
                    covers = false;
                    break;
                }
            }
            if (covers) return false;
        }
        return true;
    }

    std::size_t dim_;
    std::size_t processed_ = 0;
    std::vector<IntVector> lines_;
    std::vector<Ray> rays_;
};

/// Reduced row echelon basis (integer, primitive, leading entry positive).
inline std::vector<IntVector> echelon_basis(const std::vector<IntVector>& rows, std::size_t width) {
    std::vector<std::vector<Rational>> m;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (const auto& e : r) row.emplace_back(e);
        m.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        Rational p = m[rank][col];
        for (auto& e : m[rank]) e /= p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || sgn(m[i][col]) == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = 0; j < width; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    m.resize(rank);
    std::vector<IntVector> out;
    for (const auto& row : m) {
        QVector rest(width - 1);
        for (std::size_t j = 1; j < width; ++j) rest[j - 1] = row[j];
        out.push_back(to_integer_row(row[0], rest));
    }
    return out;
}

/// Orthogonal projection of v onto the complement of span(basis).
inline IntVector project_out(const IntVector& v, const std::vector<IntVector>& basis) {
    if (basis.empty()) return v;
    // Gram-Schmidt over the rationals.
    std::vector<std::vector<Rational>> ortho;
    for (const auto& b : basis) {
        std::vector<Rational> u(b.begin(), b.end());
        for (const auto& o : ortho) {
            Rational num = 0, den = 0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                num += u[i] * o[i];
                den += o[i] * o[i];
            }
            Rational f = num / den;
            for (std::size_t i = 0; i < u.size(); ++i) u[i] -= f * o[i];
        }
        ortho.push_back(std::move(u));
    }
    std::vector<Rational> w(v.begin(), v.end());
    for (const auto& o : ortho) {
        Rational num = 0, den = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            num += w[i] * o[i];
            den += o[i] * o[i];
        }
        Rational f = num / den;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * o[i];
    }
    QVector rest(w.size() - 1);
    for (std::size_t i = 1; i < w.size(); ++i) rest[i - 1] = w[i];
    return to_integer_row(w[0], rest);
}

}  // namespace detail

/// Constraint description of a nonempty V-polyhedron.
///
/// The generators are homogenized as (1, p) and (0, r); the extreme rays
/// (y0, y) of the dual cone give inequalities y0 + y . x >= 0 and its
/// lineality space gives the implicit equalities. Inequalities are reduced
/// modulo the equalities by orthogonal projection so the output does not
/// depend on the order generators were supplied in.
inline HRepresentation facets(const VPolyhedron& p) {
    if (p.is_empty()) throw EmptyPolyhedronError();
    const std::size_t m = p.dim();
    const std::size_t width = m + 1;

    detail::DoubleDescription dd(width);
    for (const auto& x : p.points()) dd.add_constraint(detail::to_integer_row(Rational(1), x));
    for (const auto& r : p.rays()) dd.add_constraint(detail::to_integer_row(Rational(0), r));

    HRepresentation out;
    // Equalities: echelonize over (a_1..a_m, b) so pivots land on the normal.
    std::vector<detail::IntVector> rotated;
    for (const auto& l : dd.lines()) {
        detail::IntVector row(l.begin() + 1, l.end());
        row.push_back(l[0]);
        rotated.push_back(std::move(row));
    }
    for (const auto& row : detail::echelon_basis(rotated, width)) {
        HConstraint c;
        c.normal.assign(row.begin(), row.end() - 1);
        c.bound = row.back();
        out.equalities.push_back(std::move(c));
    }

    const detail::IntVector trivial = detail::project_out(
        [&] {
            detail::IntVector e(width, 0);
            e[0] = 1;
            return e;
        }(),
        dd.lines());
    for (const auto& ray : dd.rays()) {
        detail::IntVector y = detail::project_out(ray, dd.lines());
        if (y == trivial) continue;
        bool zero_normal = std::all_of(y.begin() + 1, y.end(), [](const Integer& e) { return sgn(e) == 0; });
        if (zero_normal) continue;
        HConstraint c;
        for (std::size_t i = 1; i < width; ++i) c.normal.push_back(-y[i]);
        c.bound = -y[0];
        out.inequalities.push_back(std::move(c));
    }
    std::sort(out.inequalities.begin(), out.inequalities.end());
    out.inequalities.erase(std::unique(out.inequalities.begin(), out.inequalities.end()), out.inequalities.end());
    return out;
}

}  // namespace aahull
