#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aahull/rational.hpp"

namespace aahull {

/// x -> M x + v over Q^m. The matrix alone is the map's uniform form.
class AffineMap {
public:
    AffineMap() = default;
    AffineMap(std::vector<QVector> rows, QVector offset) : rows_(std::move(rows)), offset_(std::move(offset)) {
        if (rows_.size() != offset_.size()) throw DimensionError("affine map: matrix/offset size mismatch");
        for (const auto& row : rows_) {
            if (row.size() != offset_.size()) throw DimensionError("affine map: matrix is not square");
        }
    }

    static AffineMap identity(std::size_t dim) {
        std::vector<QVector> rows;
        for (std::size_t i = 0; i < dim; ++i) rows.push_back(QVector::unit(dim, i));
        return {std::move(rows), QVector(dim)};
    }

    std::size_t dim() const { return offset_.size(); }
    const std::vector<QVector>& matrix() const { return rows_; }
    const Rational& coefficient(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const QVector& offset() const { return offset_; }

    QVector apply(const QVector& x) const {
        QVector y = apply_linear(x);
        y += offset_;
        return y;
    }

    /// Applies the uniform form only (used on rays).
    QVector apply_linear(const QVector& x) const {
        if (x.size() != dim()) throw DimensionError("affine map applied to vector of wrong dimension");
        QVector y(dim());
        for (std::size_t i = 0; i < dim(); ++i) y[i] = dot(rows_[i], x);
        return y;
    }

    /// (*this) o inner
    AffineMap after(const AffineMap& inner) const {
        if (inner.dim() != dim()) throw DimensionError("affine map composition: dimension mismatch");
        std::vector<QVector> rows(dim(), QVector(dim()));
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = 0; j < dim(); ++j) {
                Rational s = 0;
                for (std::size_t k = 0; k < dim(); ++k) s += rows_[i][k] * inner.rows_[k][j];
                rows[i][j] = s;
            }
        }
        return {std::move(rows), apply(inner.offset_)};
    }

    bool is_identity() const { return *this == identity(dim()); }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;

private:
    std::vector<QVector> rows_;
    QVector offset_;
};

inline std::string to_string(const AffineMap& f) {
    std::string out;
    for (std::size_t i = 0; i < f.dim(); ++i) {
        if (i) out += "; ";
        out += "[" + to_string(f.matrix()[i]) + " | " + to_string(f.offset()[i]) + "]";
    }
    return out;
}

}  // namespace aahull
