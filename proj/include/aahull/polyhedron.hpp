#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "aahull/affine_map.hpp"
#include "aahull/detail/simplex.hpp"
#include "aahull/rational.hpp"

namespace aahull {

/// Closed convex set conv(points) + cone(rays) in Q^m.
///
/// The empty set has no points and no rays. A line is a pair of opposite
/// rays. Values built through `from_generators` or any lattice operation
/// are canonical: no generator is redundant, rays are primitive integer
/// directions and both generator lists are sorted lexicographically.
class VPolyhedron {
public:
    VPolyhedron() = default;
    explicit VPolyhedron(std::size_t dim) : dim_(dim) {}

    static VPolyhedron empty(std::size_t dim) { return VPolyhedron(dim); }

    static VPolyhedron point(QVector p) {
        VPolyhedron out(p.size());
        out.points_.push_back(std::move(p));
        return out;
    }

    static VPolyhedron from_generators(std::size_t dim, std::vector<QVector> points, std::vector<QVector> rays = {});

    /// Stores the generators as given (rays still primitive, zero rays dropped).
    static VPolyhedron raw(std::size_t dim, std::vector<QVector> points, std::vector<QVector> rays = {});

    std::size_t dim() const { return dim_; }
    bool is_empty() const { return points_.empty(); }
    bool is_bounded() const { return rays_.empty(); }
    const std::vector<QVector>& points() const { return points_; }
    const std::vector<QVector>& rays() const { return rays_; }

    /// Generator-wise equality of canonical forms. Use `equal_sets` for set equality.
    friend bool operator==(const VPolyhedron&, const VPolyhedron&) = default;

    friend std::ostream& operator<<(std::ostream& os, const VPolyhedron& p) {
        if (p.is_empty()) return os << "{}";
        os << "{points:";
        for (const auto& v : p.points_) os << ' ' << v;
        os << "; rays:";
        for (const auto& v : p.rays_) os << ' ' << v;
        return os << '}';
    }

private:
    std::size_t dim_ = 0;
    std::vector<QVector> points_;
    std::vector<QVector> rays_;
};

namespace detail {

inline void check_dim(std::size_t expected, std::size_t actual, const char* where) {
    if (expected != actual) {
        throw DimensionError(std::string(where) + ": dimension mismatch (" + std::to_string(expected) + " vs " +
                             std::to_string(actual) + ")");
    }
}

inline bool in_cone(const std::vector<QVector>& rays, const QVector& direction) {
    if (direction.is_zero()) return true;
    return FeasibilityLp::solve(rays, direction, 0, false);
}

inline bool in_hull(const std::vector<QVector>& points, const std::vector<QVector>& rays, const QVector& x) {
    if (points.empty()) return false;
    if (rays.empty() && points.size() == 1) return points.front() == x;
    std::vector<QVector> columns;
    columns.reserve(points.size() + rays.size());
    columns.insert(columns.end(), points.begin(), points.end());
    columns.insert(columns.end(), rays.begin(), rays.end());
    return FeasibilityLp::solve(columns, x, points.size(), true);
}

inline void sort_unique(std::vector<QVector>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

inline VPolyhedron VPolyhedron::raw(std::size_t dim, std::vector<QVector> points, std::vector<QVector> rays) {
    VPolyhedron out(dim);
    for (const auto& p : points) detail::check_dim(dim, p.size(), "polyhedron point");
    for (const auto& r : rays) detail::check_dim(dim, r.size(), "polyhedron ray");
    out.points_ = std::move(points);
    if (out.points_.empty()) return out;
    for (auto& r : rays) {
        if (!r.is_zero()) out.rays_.push_back(primitive_direction(r));
    }
    return out;
}

/// Minimal generator set with deterministic lexicographic order.
inline VPolyhedron canonicalize(const VPolyhedron& p) {
    std::vector<QVector> points = p.points();
    std::vector<QVector> rays = p.rays();
    detail::sort_unique(points);
    detail::sort_unique(rays);
    if (points.empty()) return VPolyhedron::empty(p.dim());

    // Rays first: their redundancy depends only on the recession cone.
    for (std::size_t i = 0; i < rays.size();) {
        std::vector<QVector> others;
        others.reserve(rays.size() - 1);
        for (std::size_t j = 0; j < rays.size(); ++j) {
            if (j != i) others.push_back(rays[j]);
        }
        if (detail::in_cone(others, rays[i])) {
            rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    for (std::size_t i = 0; i < points.size() && points.size() > 1;) {
        std::vector<QVector> others;
        others.reserve(points.size() - 1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i) others.push_back(points[j]);
        }
        if (detail::in_hull(others, rays, points[i])) {
            points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return VPolyhedron::raw(p.dim(), std::move(points), std::move(rays));
}

inline VPolyhedron VPolyhedron::from_generators(std::size_t dim, std::vector<QVector> points,
                                                std::vector<QVector> rays) {
    return canonicalize(raw(dim, std::move(points), std::move(rays)));
}

inline bool member(const VPolyhedron& p, const QVector& x) {
    detail::check_dim(p.dim(), x.size(), "member");
    return detail::in_hull(p.points(), p.rays(), x);
}

/// Direction d lies in the recession cone of a nonempty P.
inline bool recedes(const VPolyhedron& p, const QVector& direction) {
    detail::check_dim(p.dim(), direction.size(), "recedes");
    return detail::in_cone(p.rays(), direction);
}

/// Q is a subset of P.
inline bool contains(const VPolyhedron& p, const VPolyhedron& q) {
    detail::check_dim(p.dim(), q.dim(), "contains");
    if (q.is_empty()) return true;
    if (p.is_empty()) return false;
    for (const auto& r : q.rays()) {
        if (!detail::in_cone(p.rays(), r)) return false;
    }
    for (const auto& x : q.points()) {
        if (!detail::in_hull(p.points(), p.rays(), x)) return false;
    }
    return true;
}

inline bool equal_sets(const VPolyhedron& p, const VPolyhedron& q) { return contains(p, q) && contains(q, p); }

inline VPolyhedron join(const VPolyhedron& p, const VPolyhedron& q) {
    detail::check_dim(p.dim(), q.dim(), "join");
    if (p.is_empty()) return canonicalize(q);
    if (q.is_empty()) return canonicalize(p);
    std::vector<QVector> points = p.points();
    points.insert(points.end(), q.points().begin(), q.points().end());
    std::vector<QVector> rays = p.rays();
    rays.insert(rays.end(), q.rays().begin(), q.rays().end());
    return VPolyhedron::from_generators(p.dim(), std::move(points), std::move(rays));
}

/// {x - y | x in P, y in Q}
inline VPolyhedron minkowski_diff_of_hulls(const VPolyhedron& p, const VPolyhedron& q) {
    detail::check_dim(p.dim(), q.dim(), "minkowski_diff_of_hulls");
    if (p.is_empty() || q.is_empty()) return VPolyhedron::empty(p.dim());
    std::vector<QVector> points;
    points.reserve(p.points().size() * q.points().size());
    for (const auto& x : p.points()) {
        for (const auto& y : q.points()) points.push_back(x - y);
    }
    std::vector<QVector> rays = p.rays();
    for (const auto& r : q.rays()) rays.push_back(-r);
    return VPolyhedron::from_generators(p.dim(), std::move(points), std::move(rays));
}

inline VPolyhedron scale(const VPolyhedron& p, const Rational& c) {
    if (p.is_empty()) return p;
    if (sgn(c) == 0) return VPolyhedron::point(QVector(p.dim()));
    std::vector<QVector> points;
    for (const auto& x : p.points()) points.push_back(x * c);
    std::vector<QVector> rays;
    for (const auto& r : p.rays()) rays.push_back(sgn(c) < 0 ? -r : r);
    return VPolyhedron::from_generators(p.dim(), std::move(points), std::move(rays));
}

/// Image generators without the redundancy pass.
inline VPolyhedron affine_image_raw(const VPolyhedron& p, const AffineMap& f) {
    detail::check_dim(p.dim(), f.dim(), "affine_image");
    if (p.is_empty()) return p;
    std::vector<QVector> points;
    points.reserve(p.points().size());
    for (const auto& x : p.points()) points.push_back(f.apply(x));
    std::vector<QVector> rays;
    rays.reserve(p.rays().size());
    for (const auto& r : p.rays()) rays.push_back(f.apply_linear(r));
    return VPolyhedron::raw(p.dim(), std::move(points), std::move(rays));
}

inline VPolyhedron affine_image(const VPolyhedron& p, const AffineMap& f) {
    return canonicalize(affine_image_raw(p, f));
}

/// P + R_+(P - D): every point of P pushed away from D without bound.
inline VPolyhedron ray_extend(const VPolyhedron& p, const VPolyhedron& d) {
    detail::check_dim(p.dim(), d.dim(), "ray_extend");
    if (p.is_empty() || d.is_empty()) return p;
    std::vector<QVector> rays = p.rays();
    for (const auto& x : p.points()) {
        for (const auto& y : d.points()) rays.push_back(x - y);
    }
    for (const auto& r : d.rays()) rays.push_back(-r);
    return VPolyhedron::from_generators(p.dim(), p.points(), std::move(rays));
}

}  // namespace aahull
