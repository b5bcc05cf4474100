#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qstar {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Truncated power series with complex coefficients c0..cN.
///
/// A Series is immutable after construction. Binary operations on
/// mismatched orders truncate to the smaller order and set the
/// mixed_order flag; the strict_* variants throw instead.
class Series {
public:
    explicit Series(int order)
        : order_(check_order(order)), c_(static_cast<size_t>(order) + 1) {}

    Series(int order, std::vector<Complex> coeffs)
        : order_(check_order(order)), c_(std::move(coeffs)) {
        if (c_.size() != static_cast<size_t>(order_) + 1)
            throw std::invalid_argument("series: coefficient count must be order+1");
        for (const auto& z : c_)
            if (!is_finite(z)) throw std::invalid_argument("series: non-finite coefficient");
    }

    static Series constant(int order, Complex c0) {
        std::vector<Complex> v(static_cast<size_t>(order) + 1);
        v[0] = c0;
        return Series(order, std::move(v));
    }

    /// c * z^k truncated at `order`.
    static Series monomial(int order, int k, Complex c = 1.0) {
        std::vector<Complex> v(static_cast<size_t>(order) + 1);
        if (k >= 0 && k <= order) v[static_cast<size_t>(k)] = c;
        return Series(order, std::move(v));
    }

    int order() const { return order_; }

    /// Coefficient of z^n; zero beyond the truncation order.
    Complex coeff(int n) const {
        if (n < 0 || n > order_) return {};
        return c_[static_cast<size_t>(n)];
    }

    const std::vector<Complex>& coeffs() const { return c_; }

    /// Set when a binary operation combined operands of unequal order.
    bool mixed_order() const { return mixed_; }

    friend Series mark_mixed(Series s, bool flag) {
        s.mixed_ = s.mixed_ || flag;
        return s;
    }

private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("series: order must be >= 0");
        return order;
    }

    int order_;
    std::vector<Complex> c_;
    bool mixed_ = false;
};

namespace detail {

inline std::pair<int, bool> common_order(const Series& a, const Series& b) {
    const int n = std::min(a.order(), b.order());
    return {n, a.order() != b.order()};
}

} // namespace detail

inline void require_same_order(const Series& a, const Series& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("series: order mismatch");
}

inline Series operator+(const Series& a, const Series& b) {
    auto [n, mix] = detail::common_order(a, b);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
    return mark_mixed(Series(n, std::move(v)), mix || a.mixed_order() || b.mixed_order());
}

inline Series operator-(const Series& a, const Series& b) {
    auto [n, mix] = detail::common_order(a, b);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<size_t>(k)] = a.coeff(k) - b.coeff(k);
    return mark_mixed(Series(n, std::move(v)), mix || a.mixed_order() || b.mixed_order());
}

inline Series operator-(const Series& a) {
    std::vector<Complex> v(static_cast<size_t>(a.order()) + 1);
    for (int k = 0; k <= a.order(); ++k) v[static_cast<size_t>(k)] = -a.coeff(k);
    return mark_mixed(Series(a.order(), std::move(v)), a.mixed_order());
}

inline Series operator*(const Series& a, Complex s) {
    std::vector<Complex> v(static_cast<size_t>(a.order()) + 1);
    for (int k = 0; k <= a.order(); ++k) v[static_cast<size_t>(k)] = a.coeff(k) * s;
    return mark_mixed(Series(a.order(), std::move(v)), a.mixed_order());
}

inline Series operator*(Complex s, const Series& a) { return a * s; }

/// Cauchy product truncated at the common order.
inline Series operator*(const Series& a, const Series& b) {
    auto [n, mix] = detail::common_order(a, b);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        Complex s{};
        for (int j = 0; j <= k; ++j) s += a.coeff(j) * b.coeff(k - j);
        v[static_cast<size_t>(k)] = s;
    }
    return mark_mixed(Series(n, std::move(v)), mix || a.mixed_order() || b.mixed_order());
}

/// Coefficientwise product a_n * b_n.
inline Series hadamard(const Series& a, const Series& b) {
    auto [n, mix] = detail::common_order(a, b);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<size_t>(k)] = a.coeff(k) * b.coeff(k);
    return mark_mixed(Series(n, std::move(v)), mix || a.mixed_order() || b.mixed_order());
}

/// Long division; requires b(0) != 0. The quotient q satisfies q*b = a
/// through the common truncation order.
inline Series operator/(const Series& a, const Series& b) {
    if (std::abs(b.coeff(0)) == 0.0)
        throw std::domain_error("series: division by series with zero constant term");
    auto [n, mix] = detail::common_order(a, b);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        Complex s = a.coeff(k);
        for (int j = 1; j <= k; ++j) s -= b.coeff(j) * v[static_cast<size_t>(k - j)];
        v[static_cast<size_t>(k)] = s / b.coeff(0);
    }
    return mark_mixed(Series(n, std::move(v)), mix || a.mixed_order() || b.mixed_order());
}

namespace strict {

inline Series add(const Series& a, const Series& b) { require_same_order(a, b); return a + b; }
inline Series sub(const Series& a, const Series& b) { require_same_order(a, b); return a - b; }
inline Series mul(const Series& a, const Series& b) { require_same_order(a, b); return a * b; }
inline Series div(const Series& a, const Series& b) { require_same_order(a, b); return a / b; }
inline Series hadamard(const Series& a, const Series& b) {
    require_same_order(a, b);
    return qstar::hadamard(a, b);
}

} // namespace strict

/// Composition f(w(z)); requires w(0) = 0 so the truncation is exact
/// in every retained coefficient.
inline Series compose(const Series& f, const Series& w) {
    if (std::abs(w.coeff(0)) > 1e-14)
        throw std::domain_error("series: composition requires w(0) = 0");
    const int n = std::min(f.order(), w.order());
    Series acc = Series::constant(n, f.coeff(0));
    Series wn = Series::constant(n, 1.0);
    Series wt(n, std::vector<Complex>(w.coeffs().begin(), w.coeffs().begin() + n + 1));
    for (int k = 1; k <= n; ++k) {
        wn = wn * wt;
        acc = acc + wn * f.coeff(k);
    }
    return mark_mixed(acc, f.order() != w.order() || f.mixed_order() || w.mixed_order());
}

/// Formal derivative (order drops by one).
inline Series derivative(const Series& a) {
    const int n = std::max(a.order() - 1, 0);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= a.order(); ++k)
        if (k - 1 <= n) v[static_cast<size_t>(k - 1)] = double(k) * a.coeff(k);
    return mark_mixed(Series(n, std::move(v)), a.mixed_order());
}

/// exp of a series via the recurrence g' = a' g. A nonzero constant
/// term is folded out as the scalar factor exp(a0).
inline Series exp(const Series& a) {
    const int n = a.order();
    std::vector<Complex> g(static_cast<size_t>(n) + 1);
    g[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        Complex s{};
        for (int j = 1; j <= k; ++j) s += double(j) * a.coeff(j) * g[static_cast<size_t>(k - j)];
        g[static_cast<size_t>(k)] = s / double(k);
    }
    const Complex scale = std::exp(a.coeff(0));
    for (auto& c : g) c *= scale;
    return mark_mixed(Series(n, std::move(g)), a.mixed_order());
}

/// Horner evaluation of the truncated polynomial.
inline Complex eval(const Series& a, Complex z) {
    Complex acc{};
    for (int k = a.order(); k >= 0; --k) acc = acc * z + a.coeff(k);
    return acc;
}

} // namespace qstar
