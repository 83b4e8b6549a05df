#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aahull/affine_map.hpp"
#include "aahull/rational.hpp"

namespace aahull {

/// Digits, most significant first, exactly as read by an automaton.
using DigitWord = std::vector<int>;

/// Basis r >= 2 and dimension m >= 1. Digits are 0..r-1, sign digits 0 and r-1.
class DigitContext {
public:
    DigitContext(int basis, int dim) : basis_(basis), dim_(dim) {
        if (basis < 2) throw std::invalid_argument("basis must be at least 2");
        if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
    }

    int basis() const { return basis_; }
    int dim() const { return dim_; }
    std::size_t m() const { return static_cast<std::size_t>(dim_); }

    bool is_digit(int a) const { return a >= 0 && a < basis_; }
    bool is_sign_digit(int a) const { return a == 0 || a == basis_ - 1; }

    void require_digit(int a) const {
        if (!is_digit(a)) {
            throw std::invalid_argument("digit " + std::to_string(a) + " outside 0.." + std::to_string(basis_ - 1));
        }
    }

    friend bool operator==(const DigitContext&, const DigitContext&) = default;

private:
    int basis_;
    int dim_;
};

/// Parses a word of single-character digits ("0101"); bases up to 10 only.
inline DigitWord digits(std::string_view text) {
    DigitWord w;
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("digit word must contain decimal digits only");
        w.push_back(c - '0');
    }
    return w;
}

inline std::string to_string(const DigitWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 10) {
            out += static_cast<char>('0' + w[i]);
        } else {
            out += "[" + std::to_string(w[i]) + "]";
        }
    }
    return out;
}

/// x -> ((x[m] - a)/r, x[1], ..., x[m-1])
inline AffineMap lambda_digit(const DigitContext& ctx, int a) {
    ctx.require_digit(a);
    const std::size_t m = ctx.m();
    std::vector<QVector> rows(m, QVector(m));
    QVector offset(m);
    rows[0][m - 1] = frac(1, ctx.basis());
    offset[0] = frac(-a, ctx.basis());
    for (std::size_t i = 1; i < m; ++i) rows[i][i - 1] = 1;
    return {std::move(rows), std::move(offset)};
}

/// x -> (x[2], ..., x[m], r x[1] + a); inverse of lambda_digit.
inline AffineMap gamma_digit(const DigitContext& ctx, int a) {
    ctx.require_digit(a);
    const std::size_t m = ctx.m();
    std::vector<QVector> rows(m, QVector(m));
    QVector offset(m);
    for (std::size_t i = 0; i + 1 < m; ++i) rows[i][i + 1] = 1;
    rows[m - 1][0] = ctx.basis();
    offset[m - 1] = a;
    return {std::move(rows), std::move(offset)};
}

/// Lambda of a1...ak = Lambda_a1 o ... o Lambda_ak.
inline AffineMap lambda_word(const DigitContext& ctx, const DigitWord& word) {
    AffineMap f = AffineMap::identity(ctx.m());
    for (auto it = word.rbegin(); it != word.rend(); ++it) f = lambda_digit(ctx, *it).after(f);
    return f;
}

/// Gamma of a1...ak = Gamma_ak o ... o Gamma_a1 (a1 is applied first).
inline AffineMap gamma_word(const DigitContext& ctx, const DigitWord& word) {
    AffineMap f = AffineMap::identity(ctx.m());
    for (int a : word) f = gamma_digit(ctx, a).after(f);
    return f;
}

inline Rational basis_power(const DigitContext& ctx, std::size_t exponent) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(ctx.basis()), exponent);
    return Rational(p);
}

/// Decimal vector of the infinite word sigma^omega: the unique fixpoint of
/// lambda_word(sigma). Requires m to divide |sigma|, in which case the
/// uniform part is r^(-|sigma|/m) times the identity.
inline QVector lambda_omega(const DigitContext& ctx, const DigitWord& sigma) {
    if (sigma.empty() || sigma.size() % ctx.m() != 0) {
        throw std::invalid_argument("lambda_omega needs a nonempty word whose length is a multiple of the dimension");
    }
    const AffineMap f = lambda_word(ctx, sigma);
    const Rational shrink = 1 / basis_power(ctx, sigma.size() / ctx.m());
    for (std::size_t i = 0; i < ctx.m(); ++i) {
        for (std::size_t j = 0; j < ctx.m(); ++j) {
            if (f.coefficient(i, j) != (i == j ? shrink : Rational(0))) {
                throw std::logic_error("lambda_omega: uniform part is not a scalar matrix");
            }
        }
    }
    return f.offset() * (1 / (1 - shrink));
}

/// gamma(s, sigma) = Gamma_sigma(s / (1 - r)); an integer vector.
inline QVector gamma_of_decomposition(const DigitContext& ctx, const DigitWord& sign, const DigitWord& sigma) {
    if (sign.size() != ctx.m()) throw std::invalid_argument("sign word must have exactly m digits");
    for (int s : sign) {
        if (!ctx.is_sign_digit(s)) throw std::invalid_argument("invalid sign digit " + std::to_string(s));
    }
    if (sigma.size() % ctx.m() != 0) throw std::invalid_argument("integer word length must be a multiple of m");
    QVector start(ctx.m());
    for (std::size_t i = 0; i < ctx.m(); ++i) start[i] = frac(sign[i], 1 - ctx.basis());
    return gamma_word(ctx, sigma).apply(start);
}

/// Partial sum of the decimal series over the first k blocks of w.
inline QVector lambda_truncated(const DigitContext& ctx, const DigitWord& w, std::size_t blocks) {
    if (w.size() < blocks * ctx.m()) throw std::invalid_argument("word too short for the requested block count");
    QVector out(ctx.m());
    Rational weight = frac(1, ctx.basis());
    for (std::size_t j = 0; j < blocks; ++j) {
        for (std::size_t i = 0; i < ctx.m(); ++i) {
            int a = w[j * ctx.m() + i];
            ctx.require_digit(a);
            out[i] -= weight * a;
        }
        weight /= ctx.basis();
    }
    return out;
}

}  // namespace aahull
