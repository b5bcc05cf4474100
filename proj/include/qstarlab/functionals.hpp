#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstarlab/coeff_maps.hpp"

namespace qstar {

/// The coefficient functionals the bound table covers. FeketeSzego
/// carries its mu parameter; every other tag is parameter-free.
struct FunctionalId {
    enum class Tag {
        A2, A3, A4,
        FeketeSzego,
        H21, H22,
        T21, T22, T23, T31, T32,
        Kruskal41,
        Zalcman23,
    };

    Tag tag;
    Complex mu{1.0, 0.0};

    static FunctionalId fekete_szego(Complex mu) { return {Tag::FeketeSzego, mu}; }
};

inline const char* functional_name(FunctionalId::Tag t) {
    switch (t) {
        case FunctionalId::Tag::A2: return "a2";
        case FunctionalId::Tag::A3: return "a3";
        case FunctionalId::Tag::A4: return "a4";
        case FunctionalId::Tag::FeketeSzego: return "fs";
        case FunctionalId::Tag::H21: return "h21";
        case FunctionalId::Tag::H22: return "h22";
        case FunctionalId::Tag::T21: return "t21";
        case FunctionalId::Tag::T22: return "t22";
        case FunctionalId::Tag::T23: return "t23";
        case FunctionalId::Tag::T31: return "t31";
        case FunctionalId::Tag::T32: return "t32";
        case FunctionalId::Tag::Kruskal41: return "kruskal";
        case FunctionalId::Tag::Zalcman23: return "zalcman";
    }
    return "?";
}

inline const std::array<FunctionalId::Tag, 13>& all_functional_tags() {
    static const std::array<FunctionalId::Tag, 13> tags = {
        FunctionalId::Tag::A2,  FunctionalId::Tag::A3,  FunctionalId::Tag::A4,
        FunctionalId::Tag::FeketeSzego,
        FunctionalId::Tag::H21, FunctionalId::Tag::H22,
        FunctionalId::Tag::T21, FunctionalId::Tag::T22, FunctionalId::Tag::T23,
        FunctionalId::Tag::T31, FunctionalId::Tag::T32,
        FunctionalId::Tag::Kruskal41, FunctionalId::Tag::Zalcman23,
    };
    return tags;
}

namespace detail {

/// Cofactor-expansion determinant for the small matrices used here.
inline Complex det_small(const std::vector<Complex>& m, int n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    Complex acc{};
    double sign = 1.0;
    std::vector<Complex> minor((n - 1) * (n - 1));
    for (int c = 0; c < n; ++c) {
        for (int i = 1; i < n; ++i) {
            int k = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                minor[(i - 1) * (n - 1) + k++] = m[i * n + j];
            }
        }
        acc += sign * m[c] * det_small(minor, n - 1);
        sign = -sign;
    }
    return acc;
}

} // namespace detail

/// Hankel determinant H_{s,n}: entry (i,j) = a_{n+i+j}. The sequence
/// spans a_1, a_2, ... with a[0] interpreted as a_1 (= 1 for the
/// normalized class).
inline Complex hankel_det(std::span<const Complex> a, int s, int n) {
    if (s < 1 || n < 1) throw std::invalid_argument("hankel_det: s, n must be >= 1");
    const int needed = n + 2 * (s - 1);
    if (static_cast<int>(a.size()) < needed)
        throw std::invalid_argument("hankel_det: insufficient coefficients");
    std::vector<Complex> m(static_cast<size_t>(s) * s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            m[static_cast<size_t>(i) * s + j] = a[static_cast<size_t>(n + i + j - 1)];
    return detail::det_small(m, s);
}

/// Symmetric Toeplitz determinant T_{s,n}: entry (i,j) = a_{n+|i-j|}.
inline Complex toeplitz_det(std::span<const Complex> a, int s, int n) {
    if (s < 1 || n < 1) throw std::invalid_argument("toeplitz_det: s, n must be >= 1");
    const int needed = n + s - 1;
    if (static_cast<int>(a.size()) < needed)
        throw std::invalid_argument("toeplitz_det: insufficient coefficients");
    std::vector<Complex> m(static_cast<size_t>(s) * s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            m[static_cast<size_t>(i) * s + j] = a[static_cast<size_t>(n + std::abs(i - j) - 1)];
    return detail::det_small(m, s);
}

/// |functional| at a coefficient jet, with a1 = 1. Hankel and Toeplitz
/// tags go through the determinant routines.
inline double evaluate_functional(const FunctionalId& id, const CoeffJet& c) {
    const std::array<Complex, 4> seq = {Complex(1.0, 0.0), c.a2, c.a3, c.a4};
    const std::span<const Complex> a(seq.data(), seq.size());
    using Tag = FunctionalId::Tag;
    switch (id.tag) {
        case Tag::A2: return std::abs(c.a2);
        case Tag::A3: return std::abs(c.a3);
        case Tag::A4: return std::abs(c.a4);
        case Tag::FeketeSzego: return std::abs(c.a3 - id.mu * c.a2 * c.a2);
        case Tag::H21: return std::abs(hankel_det(a, 2, 1));
        case Tag::H22: return std::abs(hankel_det(a, 2, 2));
        case Tag::T21: return std::abs(toeplitz_det(a, 2, 1));
        case Tag::T22: return std::abs(toeplitz_det(a, 2, 2));
        case Tag::T23: return std::abs(toeplitz_det(a, 2, 3));
        case Tag::T31: return std::abs(toeplitz_det(a, 3, 1));
        case Tag::T32: return std::abs(toeplitz_det(a, 3, 2));
        case Tag::Kruskal41: return std::abs(c.a4 - c.a2 * c.a2 * c.a2);
        case Tag::Zalcman23: return std::abs(c.a2 * c.a3 - c.a4);
    }
    throw std::invalid_argument("evaluate_functional: unknown tag");
}

/// One entry of the closed-form bound table. `printed` keeps the signed
/// value of the tabulated expression; `value` is the nonnegative
/// interpretation actually usable as a bound. A nonempty caveat records
/// any reinterpretation.
struct BoundValue {
    double value = 0.0;
    double printed = 0.0;
    std::string source;
    std::string caveat;
};

namespace detail {

inline BoundValue make_bound(double printed, std::string source, std::string caveat = {}) {
    BoundValue b;
    b.printed = printed;
    b.value = std::abs(printed);
    b.source = std::move(source);
    if (printed < 0.0 && caveat.empty())
        caveat = "printed expression negative; absolute value reported";
    b.caveat = std::move(caveat);
    return b;
}

} // namespace detail

/// Closed-form sharp-bound table for every functional, both modes.
/// Expressions are stored exactly as tabulated; negative printed values
/// and the classical zero entries carry caveats instead of being
/// silently reconciled.
inline BoundValue sharp_bound(const FunctionalId& id, const QContext& ctx) {
    using Tag = FunctionalId::Tag;
    const std::string mode = ctx.is_classical() ? "classical" : "q";
    const std::string src = std::string("bounds.") + mode + "." + functional_name(id.tag);

    if (ctx.is_classical()) {
        switch (id.tag) {
            case Tag::A2: return detail::make_bound(1.0, src);
            case Tag::A3: return detail::make_bound(1.0, src);
            case Tag::A4: return detail::make_bound(17.0 / 18.0, src);
            case Tag::FeketeSzego:
                return detail::make_bound(
                    0.5 * std::max(1.0, std::abs(2.0 * id.mu - 3.0) / 2.0), src);
            case Tag::H21: return detail::make_bound(0.5, src);
            case Tag::H22: return detail::make_bound(0.25, src);
            case Tag::T21:
            case Tag::T22:
            case Tag::T31:
                return detail::make_bound(0.0, src,
                    "limit of q-formula; contradicted by oracle");
            case Tag::T23: return detail::make_bound(0.25, src);
            case Tag::T32: return detail::make_bound(1.0 / 324.0, src);
            case Tag::Kruskal41: return detail::make_bound(1.0 / 18.0, src);
            case Tag::Zalcman23: return detail::make_bound(1.0 / 18.0, src);
        }
    } else {
        const double q = ctx.q();
        const double q2 = q * q, q3 = q2 * q, q4 = q3 * q;
        const auto t = TauTable::at(q);
        switch (id.tag) {
            case Tag::A2: return detail::make_bound(1.0 / q, src);
            case Tag::A3: return detail::make_bound((1.0 + q2) / (q2 * (1.0 + q)), src);
            case Tag::A4:
                return detail::make_bound(
                    t.tau3 / (6.0 * q3 * (1.0 + q) * (1.0 + q + q2)), src);
            case Tag::FeketeSzego:
                return detail::make_bound(
                    1.0 / (q * (1.0 + q))
                        * std::max(1.0,
                                   std::abs(id.mu * (1.0 + q) - (1.0 + q + q2)) / (2.0 * q)),
                    src);
            case Tag::H21: return detail::make_bound(1.0 / (q * (1.0 + q)), src);
            case Tag::H22:
                return detail::make_bound(1.0 / (q2 * (1.0 + q) * (1.0 + q)), src);
            case Tag::T21: return detail::make_bound(1.0 - 1.0 / q2, src);
            case Tag::T22:
                return detail::make_bound(
                    (1.0 + q2 - 2.0 * q3) / (q4 * (1.0 + q) * (1.0 + q)), src);
            case Tag::T23:
                return detail::make_bound(1.0 / (q2 * (1.0 + q) * (1.0 + q)), src);
            case Tag::T31:
                return detail::make_bound(
                    std::pow(1.0 - q, 4) * (1.0 + 4.0 * q + 5.0 * q2 + 4.0 * q3 + q4)
                        / (q2 * (1.0 + q) * (1.0 + q)),
                    src);
            case Tag::T32: {
                const double quintic =
                    6.0 + 6.0 * q2 - 6.0 * q3 - 7.0 * q4 - q4 * q;
                const double denom = 36.0 * std::pow(q, 9) * std::pow(1.0 + q, 4)
                                     * std::pow(1.0 + q + q2, 2);
                return detail::make_bound(t.M1 * quintic / denom, src);
            }
            case Tag::Kruskal41:
                return detail::make_bound(
                    (12.0 - 5.0 * q3 - 5.0 * q4) / (6.0 * q2 * (1.0 + q + q2)), src);
            case Tag::Zalcman23:
                return detail::make_bound(
                    (6.0 - 6.0 * q + 6.0 * q2 - 5.0 * q3) / (6.0 * q2 * (1.0 + q + q2)), src);
        }
    }
    throw std::invalid_argument("sharp_bound: unknown tag");
}

/// Numerical q->1 limit check of the tabulated q-expression against the
/// classical entry. T32 is compared in magnitude because the printed
/// q-expression changes sign on the way to the limit.
struct LimitReport {
    FunctionalId id;
    std::vector<double> q_values;
    std::vector<double> samples;   // printed q-bound at each q
    double extrapolated = 0.0;
    double classical_value = 0.0;  // printed classical entry
    double gap = 0.0;
    bool match = false;
    bool compare_magnitude = false;
};

inline LimitReport classical_limit_report(const FunctionalId& id) {
    LimitReport r;
    r.id = id;
    r.compare_magnitude = id.tag == FunctionalId::Tag::T32;
    for (int k = 2; k <= 6; ++k) {
        const double q = 1.0 - std::pow(10.0, -k);
        r.q_values.push_back(q);
        r.samples.push_back(sharp_bound(id, QContext::with_q(q)).printed);
    }
    // first-order Richardson on the two finest samples:
    // f(1-eps) = L + c*eps + O(eps^2) with eps shrinking 10x per step
    const double f5 = r.samples[3], f6 = r.samples[4];
    r.extrapolated = f6 + (f6 - f5) / 9.0;
    r.classical_value = sharp_bound(id, QContext::classical()).printed;
    r.gap = r.compare_magnitude
                ? std::abs(std::abs(r.extrapolated) - std::abs(r.classical_value))
                : std::abs(r.extrapolated - r.classical_value);
    r.match = r.gap <= 1e-4 * std::max(1.0, std::abs(r.classical_value));
    return r;
}

} // namespace qstar
