#pragma once

#include <cmath>
#include <stdexcept>

#include "qstarlab/series.hpp"

namespace qstar {

/// Deformation parameter. Q mode carries q in the open interval (0,1);
/// classical mode means every q-formula is replaced by its q->1 limit,
/// never emulated by q = 1-eps.
class QContext {
public:
    static QContext classical() { return QContext(1.0, true); }

    static QContext with_q(double q) {
        if (!(q > 0.0 && q < 1.0) || !std::isfinite(q))
            throw std::invalid_argument("q must lie strictly inside (0,1)");
        return QContext(q, false);
    }

    bool is_classical() const { return classical_; }

    double q() const {
        if (classical_) throw std::logic_error("q() undefined in classical mode");
        return q_;
    }

    bool operator==(const QContext& o) const {
        return classical_ == o.classical_ && (classical_ || q_ == o.q_);
    }

private:
    QContext(double q, bool classical) : q_(q), classical_(classical) {}
    double q_;
    bool classical_;
};

/// [n]_q = (1-q^n)/(1-q); n itself in classical mode.
inline double q_number(int n, const QContext& ctx) {
    if (n < 1) throw std::invalid_argument("q_number requires n >= 1");
    if (ctx.is_classical()) return double(n);
    const double q = ctx.q();
    return (1.0 - std::pow(q, n)) / (1.0 - q);
}

/// ln(q)/(q-1); limit value 1 in classical mode.
inline double lambda_q(const QContext& ctx) {
    if (ctx.is_classical()) return 1.0;
    const double q = ctx.q();
    return std::log(q) / (q - 1.0);
}

/// Jackson derivative: coefficient n maps to [n]_q a_n at position n-1.
inline Series q_derivative(const Series& f, const QContext& ctx) {
    const int n = std::max(f.order() - 1, 0);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= f.order(); ++k)
        if (k - 1 <= n) v[static_cast<size_t>(k - 1)] = q_number(k, ctx) * f.coeff(k);
    return mark_mixed(Series(n, std::move(v)), f.mixed_order());
}

/// Generalized derivative parameter, |eta| <= 1.
class Eta {
public:
    explicit Eta(Complex value) : v_(value) {
        if (std::abs(value) > 1.0 + 1e-12)
            throw std::invalid_argument("eta must satisfy |eta| <= 1");
    }
    Complex value() const { return v_; }

private:
    Complex v_;
};

/// d_eta f: coefficient a_n picks up the multiplier 1 + eta + ... + eta^{n-1}.
/// eta = 1 gives f', real eta = q gives the Jackson derivative.
inline Series d_eta(const Series& f, Eta eta) {
    const Complex e = eta.value();
    const int n = std::max(f.order() - 1, 0);
    std::vector<Complex> v(static_cast<size_t>(n) + 1);
    const bool unit = std::abs(e - Complex(1.0, 0.0)) < 1e-14;
    for (int k = 1; k <= f.order(); ++k) {
        if (k - 1 > n) continue;
        const Complex mult = unit ? Complex(double(k), 0.0)
                                  : (1.0 - std::pow(e, k)) / (1.0 - e);
        v[static_cast<size_t>(k - 1)] = mult * f.coeff(k);
    }
    return mark_mixed(Series(n, std::move(v)), f.mixed_order());
}

/// Integral of (g(t) - g(0))/t against d_q t: coefficient k of the result
/// is g_k/[k]_q for k >= 1, with zero constant term.
inline Series jackson_log_integral(const Series& g, const QContext& ctx) {
    std::vector<Complex> v(static_cast<size_t>(g.order()) + 1);
    for (int k = 1; k <= g.order(); ++k)
        v[static_cast<size_t>(k)] = g.coeff(k) / q_number(k, ctx);
    return mark_mixed(Series(g.order(), std::move(v)), g.mixed_order());
}

/// Series of sin(s*z) truncated at `order`.
inline Series sin_series(int order, double s = 1.0) {
    std::vector<Complex> v(static_cast<size_t>(order) + 1);
    double term = s; // s^(2m+1)/(2m+1)! with alternating sign
    for (int k = 1; k <= order; k += 2) {
        v[static_cast<size_t>(k)] = term;
        term *= -s * s / (double(k + 1) * double(k + 2));
    }
    return Series(order, std::move(v));
}

/// Generator series: 1 + sin(qz)/(q(1-qz)) in Q mode, 1 + sin(z)/(1-z)
/// in classical mode, built as (sine series) * (geometric series).
inline Series xi_series(const QContext& ctx, int order) {
    if (order < 1) throw std::invalid_argument("xi_series requires order >= 1");
    const double q = ctx.is_classical() ? 1.0 : ctx.q();
    // sin(qz)/q
    Series sine = sin_series(order, q) * Complex(1.0 / q, 0.0);
    // 1/(1-qz)
    std::vector<Complex> geo(static_cast<size_t>(order) + 1);
    double p = 1.0;
    for (int k = 0; k <= order; ++k) { geo[static_cast<size_t>(k)] = p; p *= q; }
    Series tail = sine * Series(order, std::move(geo));
    std::vector<Complex> v(tail.coeffs());
    v[0] = 1.0;
    return Series(order, std::move(v));
}

/// Closed-form evaluation of the generator; rejects the singular point
/// z = 1/q (z = 1 classically).
inline Complex xi_value(const QContext& ctx, Complex z) {
    const double q = ctx.is_classical() ? 1.0 : ctx.q();
    const Complex den = 1.0 - q * z;
    if (std::abs(den) < 1e-13)
        throw std::domain_error("xi_value: evaluation at the boundary singularity");
    return 1.0 + std::sin(q * z) / (q * den);
}

} // namespace qstar
