#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qstarlab/qcalc.hpp"

namespace qstar {

/// Admissible first three coefficients of a bounded function vanishing
/// at the origin, through the (b1, alpha, beta) parameterization:
///   b2 = alpha (1 - b1^2)
///   b3 = (1 - b1^2) [ (1 - |alpha|^2) beta - b1 alpha^2 ]
/// with b1 in [0,1] and |alpha|, |beta| <= 1.
struct SchwarzJet {
    double b1;
    Complex alpha;
    Complex beta;
    Complex b2;
    Complex b3;
};

inline SchwarzJet schwarz_jet(double b1, Complex alpha, Complex beta) {
    constexpr double slack = 1e-12;
    if (!(b1 >= -slack && b1 <= 1.0 + slack) || !std::isfinite(b1))
        throw std::invalid_argument("schwarz_jet: b1 must lie in [0,1]");
    if (std::abs(alpha) > 1.0 + slack)
        throw std::invalid_argument("schwarz_jet: |alpha| must be <= 1");
    if (std::abs(beta) > 1.0 + slack)
        throw std::invalid_argument("schwarz_jet: |beta| must be <= 1");
    b1 = std::clamp(b1, 0.0, 1.0);
    if (std::abs(alpha) > 1.0) alpha /= std::abs(alpha);
    if (std::abs(beta) > 1.0) beta /= std::abs(beta);

    const double t = 1.0 - b1 * b1;
    SchwarzJet j;
    j.b1 = b1;
    j.alpha = alpha;
    j.beta = beta;
    j.b2 = alpha * t;
    j.b3 = t * ((1.0 - std::norm(alpha)) * beta - b1 * alpha * alpha);
    return j;
}

/// First two coefficients of a positive-real-part function, |c_i| <= 2.
struct CaratheodoryJet {
    Complex c1;
    Complex c2;
    CaratheodoryJet(Complex c1_, Complex c2_) : c1(c1_), c2(c2_) {
        if (std::abs(c1) > 2.0 + 1e-12 || std::abs(c2) > 2.0 + 1e-12)
            throw std::invalid_argument("caratheodory jet: |c_i| must be <= 2");
    }
};

/// Bridge identities 2 b1 = c1 and 4 b2 = 2 c2 - c1^2.
inline std::pair<Complex, Complex> caratheodory_to_schwarz(const CaratheodoryJet& c) {
    return {c.c1 / 2.0, (2.0 * c.c2 - c.c1 * c.c1) / 4.0};
}

/// Initial coefficients a2, a3, a4 produced by the class maps.
struct CoeffJet {
    Complex a2;
    Complex a3;
    Complex a4;
};

/// Named constants of the q-mode coefficient maps and bound table.
/// All are cheap polynomials in q and computed fresh per call.
/// The kruskal/zalcman groups reuse the same slot numbers with
/// different defining polynomials, so both are spelled out.
struct TauTable {
    double q;
    double tau1, tau2, tau3;
    double tau4, tau5, tau6, tau7;
    double tau8, tau9, tau10, tau11;
    double tau13;
    double tau14, tau15, tau16;
    double tau17_kruskal, tau18_kruskal;
    double tau17_zalcman, tau18_zalcman;
    double tau19, tau20;
    double M, M1;

    static TauTable at(double q) {
        TauTable t{};
        t.q = q;
        const double q2 = q * q, q3 = q2 * q, q4 = q3 * q, q5 = q4 * q;
        const double q6 = q5 * q, q7 = q6 * q, q8 = q7 * q, q9 = q8 * q;
        t.tau1 = 6.0 * q2 * (1.0 + q);
        t.tau2 = 6.0 * q * (2.0 + q + 2.0 * q2 + 2.0 * q3);
        t.tau3 = 6.0 + 12.0 * q2 + 6.0 * q3 + 5.0 * q4 + 5.0 * q5;
        t.tau4 = 6.0 * (1.0 + q) * (1.0 + q);
        t.tau5 = 6.0 * (1.0 + q + q2);
        t.tau6 = 6.0 * (1.0 - q + 2.0 * q2);
        t.tau7 = 6.0 - 6.0 * q + 7.0 * q2 - 4.0 * q3 + q4;
        t.tau8 = 1.0 + q;
        t.tau9 = 6.0 * (2.0 + q * (1.0 + 2.0 * q * (1.0 + q)));
        t.tau10 = 6.0 + q2 * (12.0 + q * (6.0 + 5.0 * q * (1.0 + q)));
        t.tau11 = 1.0 + q + q2;
        t.tau13 = 1.0 + 2.0 * q + 2.0 * q3 - q4;
        t.tau14 = 6.0 * q * (1.0 + q);
        t.tau15 = 6.0 * (2.0 + q2 + 2.0 * q3);
        t.tau16 = 6.0 * (2.0 + 2.0 * q + 3.0 * q2 + 2.0 * q3);
        t.tau17_kruskal = 24.0 + 12.0 * q + 18.0 * q2 + 7.0 * q3 - 5.0 * q4;
        t.tau18_kruskal = 24.0 + 6.0 * q + 12.0 * q2 + 7.0 * q3 - 5.0 * q4;
        t.tau17_zalcman = 12.0 - 12.0 * q + 18.0 * q2 - 5.0 * q3;
        t.tau18_zalcman = 12.0 - 6.0 * q + 18.0 * q2 - 5.0 * q3;
        t.tau19 = 6.0 * (1.0 - 2.0 * q + 2.0 * q2);
        t.tau20 = 6.0 * (1.0 + 2.0 * q2);
        t.M = 36.0 - 36.0 * q + 144.0 * q2 - 144.0 * q3 + 168.0 * q4 - 180.0 * q5
              + 48.0 * q6 - 84.0 * q7 - 11.0 * q8 - 11.0 * q9;
        t.M1 = 12.0 + 12.0 * q + 42.0 * q2 + 24.0 * q3 + 48.0 * q4 - 18.0 * q5
               - 23.0 * q6 - 51.0 * q7 - 27.0 * q8 - 11.0 * q9;
        return t;
    }

    // two-variable constant from the t23 interior analysis
    double tau12(double x) const {
        const double q2 = q * q, q3 = q2 * q, q4 = q3 * q, q5 = q4 * q;
        const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
        return 6.0 * x3 * (1.0 + x) + 5.0 * q5 * x3 * (1.0 + x)
               - 12.0 * q * (x - 1.0) * x * (1.0 + x) * (1.0 + x)
               + q4 * x * (12.0 + 12.0 * x - 7.0 * x2 - 7.0 * x3)
               + 6.0 * q2 * (1.0 + 2.0 * x + x4)
               - 6.0 * q3 * (-1.0 - 3.0 * x - x2 + 2.0 * x3 + x4);
    }
};

inline CoeffJet coeffs_classical(const SchwarzJet& j) {
    const Complex b1 = j.b1;
    CoeffJet c;
    c.a2 = b1;
    c.a3 = b1 * b1 + j.b2 / 2.0;
    c.a4 = (17.0 * b1 * b1 * b1 + 21.0 * b1 * j.b2 + 6.0 * j.b3) / 18.0;
    return c;
}

inline CoeffJet coeffs_q(const QContext& ctx, const SchwarzJet& j) {
    if (ctx.is_classical()) return coeffs_classical(j);
    const double q = ctx.q();
    const auto t = TauTable::at(q);
    const Complex b1 = j.b1;
    CoeffJet c;
    c.a2 = b1 / q;
    c.a3 = (j.b2 * q + b1 * b1 * (1.0 + q * q)) / (q * q * (1.0 + q));
    c.a4 = (j.b3 * t.tau1 + b1 * j.b2 * t.tau2 + b1 * b1 * b1 * t.tau3)
           / (6.0 * q * q * q * (1.0 + q) * (1.0 + q + q * q));
    return c;
}

} // namespace qstar
