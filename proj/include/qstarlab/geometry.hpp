#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "qstarlab/qcalc.hpp"
#include "qstarlab/series.hpp"

namespace qstar {

/// Extremal-function construction: the class member whose subordination
/// ratio equals the generator composed with w(z) = z or w(z) = z^2.
struct ExtremalSpec {
    enum class Generator { XiOfZ, XiOfZSquared };

    QContext ctx = QContext::classical();
    Generator generator = Generator::XiOfZ;
    int order = 16;
};

namespace detail {

/// Generator coefficients c_1.. for the chosen substitution; the
/// squared generator keeps only even slots.
inline Series generator_series(const ExtremalSpec& spec) {
    const Series base = xi_series(spec.ctx, std::max(spec.order, 1));
    if (spec.generator == ExtremalSpec::Generator::XiOfZ) return base;
    std::vector<Complex> v(static_cast<size_t>(spec.order) + 1);
    for (int n = 0; n <= spec.order; n += 2) v[static_cast<size_t>(n)] = base.coeff(n / 2);
    v[0] = 1.0;
    return Series(spec.order, std::move(v));
}

inline double simpson_rule(const std::function<double(double)>& f, double a, double b,
                           double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_rule(f, a, m, fa, flm, fm);
    const double right = simpson_rule(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
           + adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson_rule(f, a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace detail

/// Coefficients of the extremal function via the convolution recurrence
///   a_n = (sum_{k=1}^{n-1} c_k a_{n-k}) / ([n]_q - 1),  a_1 = 1,
/// where c_k are the generator's coefficients.
inline Series extremal_coeffs(const ExtremalSpec& spec) {
    if (spec.order < 2) throw std::invalid_argument("extremal_coeffs: order >= 2");
    const Series gen = detail::generator_series(spec);
    std::vector<Complex> a(static_cast<size_t>(spec.order) + 1);
    a[1] = 1.0;
    for (int n = 2; n <= spec.order; ++n) {
        Complex s{};
        for (int k = 1; k < n; ++k) s += gen.coeff(k) * a[static_cast<size_t>(n - k)];
        a[static_cast<size_t>(n)] = s / (q_number(n, spec.ctx) - 1.0);
    }
    return Series(spec.order, std::move(a));
}

/// Value of the extremal function at real z in (-1,1).
///
/// Classical mode integrates the closed-form integrand by adaptive
/// quadrature (the removable singularity at t = 0 patched by its limit
/// value). Q mode exponentiates the coefficientwise Jackson integral of
/// the generator; note this q-construction is a formal object that does
/// not reproduce the convolution recurrence (its slope at 0 is 1, not
/// 1/q), so cross-checks against extremal_coeffs are classical-only.
inline double extremal_eval_integral(const ExtremalSpec& spec, double z) {
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("extremal_eval_integral: |z| < 1");
    if (z == 0.0) return 0.0;
    if (spec.ctx.is_classical()) {
        std::function<double(double)> integrand;
        if (spec.generator == ExtremalSpec::Generator::XiOfZ) {
            integrand = [](double t) {
                if (t == 0.0) return 1.0;
                return std::sin(t) / (t * (1.0 - t));
            };
        } else {
            integrand = [](double t) {
                if (t == 0.0) return 0.0;
                return std::sin(t * t) / (t * (1.0 - t * t));
            };
        }
        return z * std::exp(detail::integrate(integrand, 0.0, z));
    }
    const Series gen = detail::generator_series(spec);
    const Series h = jackson_log_integral(gen, spec.ctx);
    return z * std::exp(eval(h, Complex(z, 0.0)).real());
}

/// One boundary sample of the generator on the unit circle.
struct CurveSample {
    double theta = 0.0;
    Complex point;
};

/// Uniform boundary samples of xi(e^{i theta}) on (eps, 2pi - eps).
/// The sample lattice is aligned with the quarter-circle angles, so
/// pi/2, pi and 3pi/2 are hit exactly whenever they lie in range.
inline std::vector<CurveSample> boundary_curve(const QContext& ctx, int samples, double eps) {
    if (samples < 16) throw std::invalid_argument("boundary_curve: samples >= 16");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("boundary_curve: eps in (0,1)");
    const double pi = std::numbers::pi;
    const double span = 2.0 * pi - 2.0 * eps;
    long m = static_cast<long>(std::ceil(pi * double(samples + 1) / (2.0 * span)));
    double h = pi / (2.0 * double(m));
    long kmin = static_cast<long>(std::floor(eps / h)) + 1;
    long kmax = static_cast<long>(std::ceil((2.0 * pi - eps) / h)) - 1;
    while (kmax - kmin + 1 < samples) {
        ++m;
        h = pi / (2.0 * double(m));
        kmin = static_cast<long>(std::floor(eps / h)) + 1;
        kmax = static_cast<long>(std::ceil((2.0 * pi - eps) / h)) - 1;
    }
    const long start = kmin + (kmax - kmin + 1 - samples) / 2;
    std::vector<CurveSample> out;
    out.reserve(static_cast<size_t>(samples));
    for (long k = start; k < start + samples; ++k) {
        const double theta = double(k) * h;
        out.push_back({theta, xi_value(ctx, std::polar(1.0, theta))});
    }
    return out;
}

/// Generator geometry checks: Schwarz-reflection symmetry, monotone
/// argument about 1 (starlikeness of the image), positive slope at 0.
struct MaMindaReport {
    double symmetry_error = 0.0;
    double min_arg_step = 0.0;
    double total_arg = 0.0;
    double slope_at_zero = 0.0;
    bool symmetric = false;
    bool monotone = false;
    bool positive_slope = false;
    bool pass = false;
};

inline MaMindaReport maminda_checks(const QContext& ctx,
                                    const std::vector<CurveSample>& curve) {
    MaMindaReport r;
    if (curve.size() < 2) throw std::invalid_argument("maminda_checks: curve too short");
    for (const auto& s : curve) {
        const Complex mirrored = std::conj(xi_value(ctx, std::polar(1.0, -s.theta)));
        r.symmetry_error = std::max(r.symmetry_error, std::abs(mirrored - s.point));
    }
    r.symmetric = r.symmetry_error <= 1e-9;

    const double two_pi = 2.0 * std::numbers::pi;
    double prev = std::arg(curve.front().point - 1.0);
    double unwrapped = prev;
    r.min_arg_step = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < curve.size(); ++i) {
        double a = std::arg(curve[i].point - 1.0);
        double d = a - prev;
        while (d > std::numbers::pi) d -= two_pi;
        while (d < -std::numbers::pi) d += two_pi;
        r.min_arg_step = std::min(r.min_arg_step, d);
        unwrapped += d;
        prev = a;
    }
    r.total_arg = unwrapped - std::arg(curve.front().point - 1.0);
    r.monotone = r.min_arg_step >= -1e-9;

    r.slope_at_zero = xi_series(ctx, 2).coeff(1).real();
    r.positive_slope = r.slope_at_zero > 0.0;
    r.pass = r.symmetric && r.monotone && r.positive_slope;
    return r;
}

enum class Membership { MEMBER, NON_MEMBER, INCONCLUSIVE };

inline const char* membership_name(Membership m) {
    switch (m) {
        case Membership::MEMBER: return "MEMBER";
        case Membership::NON_MEMBER: return "NON_MEMBER";
        case Membership::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

/// Verdict of the subordination sampling test. margin is the signed
/// distance of the worst ratio point to the sampled boundary polygon
/// (negative when some point escapes).
struct MembershipVerdict {
    Membership status = Membership::INCONCLUSIVE;
    double worst_r = 0.0;
    double worst_theta = 0.0;
    double margin = 0.0;
    double largest_reliable_r = 0.0;
};

namespace detail {

struct BoundaryPolygon {
    std::vector<Complex> pts; // closed loop, pts.back() connects to pts.front()
    size_t arc_count = 0;     // prefix of pts that samples the true boundary
    double synthetic_tol = 0.0;

    bool contains(Complex p) const {
        bool inside = false;
        const size_t n = pts.size();
        for (size_t i = 0, j = n - 1; i < n; j = i++) {
            const Complex& a = pts[i];
            const Complex& b = pts[j];
            if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
                const double xcross = (b.real() - a.real()) * (p.imag() - a.imag())
                                          / (b.imag() - a.imag())
                                      + a.real();
                if (p.real() < xcross) inside = !inside;
            }
        }
        return inside;
    }

    static double seg_dist(Complex p, Complex a, Complex b) {
        const Complex ab = b - a;
        const double len2 = std::norm(ab);
        if (len2 == 0.0) return std::abs(p - a);
        double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag())
                   / len2;
        t = std::clamp(t, 0.0, 1.0);
        return std::abs(p - (a + t * ab));
    }

    // distance to the sampled arc and to the synthetic closure separately
    std::pair<double, double> distances(Complex p) const {
        double d_arc = std::numeric_limits<double>::infinity();
        double d_syn = std::numeric_limits<double>::infinity();
        const size_t n = pts.size();
        for (size_t i = 0; i < n; ++i) {
            const size_t j = (i + 1) % n;
            const double d = seg_dist(p, pts[i], pts[j]);
            if (j != 0 && j < arc_count) d_arc = std::min(d_arc, d);
            else d_syn = std::min(d_syn, d);
        }
        return {d_arc, d_syn};
    }
};

/// Close the sampled arc into a polygon. The classical image is
/// unbounded to the right (the generator blows up at z = 1), so the arc
/// is extended by a far-right box; the q image is bounded and a direct
/// chord across the small excluded arc suffices.
inline BoundaryPolygon close_boundary(const std::vector<CurveSample>& curve, bool classical) {
    BoundaryPolygon poly;
    poly.pts.reserve(curve.size() + 2);
    for (const auto& s : curve) poly.pts.push_back(s.point);
    poly.arc_count = poly.pts.size();
    const Complex first = poly.pts.front();
    const Complex last = poly.pts.back();
    const double local_gap =
        3.0 * std::max(std::abs(poly.pts[1] - first),
                       std::abs(poly.pts[poly.arc_count - 2] - last));
    if (classical) {
        const double far_x = 1e6;
        poly.pts.push_back(Complex(far_x, last.imag()));
        poly.pts.push_back(Complex(far_x, first.imag()));
        poly.synthetic_tol = local_gap;
    } else {
        poly.synthetic_tol = std::max(local_gap, 2.0 * std::abs(first - last));
    }
    return poly;
}

} // namespace detail

/// Sample z d_q f / f on circles |z| = r and test each value for
/// containment in the sampled generator image. Points whose nearest
/// boundary feature is the synthetic closure (the eps-excluded arc)
/// are inconclusive rather than guessed.
inline MembershipVerdict membership_test(const Series& f, const QContext& ctx,
                                         const std::vector<double>& r_grid = {0.5, 0.7, 0.9},
                                         int theta_samples = 256, double eps = 1e-2) {
    if (std::abs(f.coeff(0)) > 1e-14 || std::abs(f.coeff(1) - 1.0) > 1e-12)
        throw std::invalid_argument("membership_test: series must be normalized (a0=0, a1=1)");
    const auto curve = boundary_curve(ctx, 2048, eps);
    const auto poly = detail::close_boundary(curve, ctx.is_classical());

    // z d_q f as a polynomial in z: coefficient n is [n]_q a_n
    std::vector<Complex> num(static_cast<size_t>(f.order()) + 1);
    for (int n = 1; n <= f.order(); ++n)
        num[static_cast<size_t>(n)] = q_number(n, ctx) * f.coeff(n);
    const Series znum(f.order(), std::move(num));

    MembershipVerdict v;
    v.margin = std::numeric_limits<double>::infinity();
    bool any_outside = false, any_inconclusive = false;
    double worst_metric = std::numeric_limits<double>::infinity();

    std::vector<double> rs(r_grid);
    std::sort(rs.begin(), rs.end());
    const double two_pi = 2.0 * std::numbers::pi;
    for (double r : rs) {
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("membership_test: radii must lie in (0,1)");
        // tail indicator: when the top retained coefficients still carry
        // weight at |z| = r, the truncated ratio is not trustworthy there
        const int N = f.order();
        const double tail =
            std::max(std::abs(f.coeff(N)) * std::pow(r, N),
                     N >= 1 ? std::abs(f.coeff(N - 1)) * std::pow(r, N - 1) : 0.0);
        if (tail > 1e-5) {
            any_inconclusive = true;
            if (0.0 < worst_metric) {
                // record the unreliable circle as the worst point
                worst_metric = 0.0;
                v.worst_r = r;
                v.worst_theta = 0.0;
                v.margin = 0.0;
            }
            continue;
        }
        bool circle_ok = true;
        for (int j = 0; j < theta_samples; ++j) {
            const double th = two_pi * double(j) / double(theta_samples);
            const Complex z = std::polar(r, th);
            const Complex den = eval(f, z);
            const Complex ratio = eval(znum, z) / den;
            double signed_margin;
            bool inconclusive = false;
            if (!is_finite(ratio) || std::abs(den) < 1e-280) {
                signed_margin = -1e30;
            } else {
                const bool inside = poly.contains(ratio);
                const auto [d_arc, d_syn] = poly.distances(ratio);
                if (inside && d_syn < poly.synthetic_tol && d_syn < d_arc)
                    inconclusive = true;
                signed_margin = inside ? d_arc : -d_arc;
            }
            if (inconclusive) {
                any_inconclusive = true;
                circle_ok = false;
            } else if (signed_margin <= 0.0) {
                any_outside = true;
                circle_ok = false;
            }
            if (signed_margin < worst_metric) {
                worst_metric = signed_margin;
                v.worst_r = r;
                v.worst_theta = th;
                v.margin = signed_margin;
            }
        }
        if (circle_ok && !any_outside && !any_inconclusive)
            v.largest_reliable_r = std::max(v.largest_reliable_r, r);
    }
    if (any_outside) v.status = Membership::NON_MEMBER;
    else if (any_inconclusive) v.status = Membership::INCONCLUSIVE;
    else v.status = Membership::MEMBER;
    return v;
}

/// Growth envelope (-F(-r), F(r)) from the extremal function.
inline std::pair<double, double> growth_bounds(double r,
                                               const QContext& ctx = QContext::classical()) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("growth_bounds: r in (0,1)");
    if (ctx.is_classical()) {
        const ExtremalSpec spec{ctx, ExtremalSpec::Generator::XiOfZ, 16};
        return {-extremal_eval_integral(spec, -r), extremal_eval_integral(spec, r)};
    }
    const ExtremalSpec spec{ctx, ExtremalSpec::Generator::XiOfZ, 96};
    const Series a = extremal_coeffs(spec);
    return {-eval(a, Complex(-r, 0.0)).real(), eval(a, Complex(r, 0.0)).real()};
}

namespace detail {

template <typename Fn>
double circle_max(const Fn& f, int samples) {
    double best = -std::numeric_limits<double>::infinity();
    double best_th = 0.0;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < samples; ++j) {
        const double th = two_pi * double(j) / double(samples);
        const double v = f(th);
        if (v > best) { best = v; best_th = th; }
    }
    // golden-section polish around the best sample
    double lo = best_th - two_pi / double(samples);
    double hi = best_th + two_pi / double(samples);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) { lo = c; c = d; fc = fd; d = lo + gr * (hi - lo); fd = f(d); }
        else { hi = d; d = c; fd = fc; c = hi - gr * (hi - lo); fc = f(c); }
    }
    return std::max(best, std::max(fc, fd));
}

} // namespace detail

/// max over |z| = r of |sin(z)/(1-z)| by dense circle sampling.
inline double distortion_scale(double r, int samples = 4096) {
    return detail::circle_max(
        [r](double th) {
            const Complex z = std::polar(r, th);
            return std::abs(std::sin(z) / (1.0 - z));
        },
        samples);
}

/// Distortion envelope |1 -+ M(r)| * (-+F(-+r)) / r  (classical).
inline std::pair<double, double> distortion_bounds(double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("distortion_bounds: r in (0,1)");
    const double M = distortion_scale(r);
    const auto [lo_growth, hi_growth] = growth_bounds(r);
    return {std::abs(1.0 - M) * lo_growth / r, std::abs(1.0 + M) * hi_growth / r};
}

/// Radius of the disk the image of every class member covers:
/// exp of the integral of the extremal integrand over [-1, 0].
inline double covering_radius(double tol = 1e-10) {
    const double G = detail::integrate(
        [](double t) {
            if (t == 0.0) return 1.0;
            return std::sin(t) / (t * (1.0 - t));
        },
        0.0, -1.0, tol);
    return std::exp(G);
}

/// max over |z| = r of |arg(F(z)/z)| with F evaluated by series.
inline double rotation_bound(double r, int order = 16) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("rotation_bound: r in (0,1)");
    const ExtremalSpec spec{QContext::classical(), ExtremalSpec::Generator::XiOfZ, order};
    const Series a = extremal_coeffs(spec);
    return detail::circle_max(
        [&](double th) {
            const Complex z = std::polar(r, th);
            return std::abs(std::arg(eval(a, z) / z));
        },
        4096);
}

} // namespace qstar
