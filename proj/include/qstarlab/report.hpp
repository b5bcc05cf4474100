#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "qstarlab/geometry.hpp"
#include "qstarlab/json_writer.hpp"
#include "qstarlab/oracle.hpp"
#include "qstarlab/version.hpp"

namespace qstar {

struct ReportOptions {
    std::vector<double> qs = {0.5, 0.8};
    OracleConfig oracle;
};

/// Full verification sweep: every functional in every mode adjudicated
/// by the oracle, limit checks, the mu scan that catches the
/// parameter-dependent discrepancies, the lemma suite, extremal
/// attainment checks and the boundary-surface values.
struct VerificationReport {
    struct FsScanEntry {
        bool classical = true;
        double q = 0.0;
        double mu = 0.0;
        double printed = 0.0;
        double oracle_max = 0.0;
        bool discrepant = false;
    };

    struct ExtremalCheck {
        FunctionalId id;
        bool classical = true;
        double q = 0.0;
        double witness_value = 0.0;
        double printed = 0.0;
        bool attains = false;
    };

    struct YAgreement {
        int instances = 0;
        double max_gap = 0.0;
        bool pass = false;
    };

    struct JetBounds {
        int samples = 0;
        int violations = 0;
    };

    struct SurfaceChecks {
        double gamma_case_corner = 0.0;  // value at (1, 0)
        double gamma_edge_x0_max = 0.0;  // max over (0, y)
        double gamma_edge_y0_max = 0.0;  // max over (x, 0)
        bool gamma_edge_y0_exceeds_case = false;
        double gamma2_edge_x0_max = 0.0;
        double phi1_min = 0.0;
        double phi2_min = 0.0;
    };

    ReportOptions options;
    std::vector<BoundReport> bounds;
    std::vector<LimitReport> limits;
    std::vector<FsScanEntry> fs_scan;
    YAgreement y_agreement;
    std::vector<Lemma4Report> lemma4;
    JetBounds jet_bounds;
    std::vector<ExtremalCheck> extremal_checks;
    SurfaceChecks surfaces;
    int n_confirmed = 0;
    int n_discrepant = 0;
    int n_unverified = 0;
};

namespace detail {

inline std::vector<QContext> report_modes(const std::vector<double>& qs) {
    std::vector<QContext> modes;
    modes.push_back(QContext::classical());
    std::vector<double> sorted(qs);
    std::sort(sorted.begin(), sorted.end());
    for (double q : sorted) modes.push_back(QContext::with_q(q));
    return modes;
}

} // namespace detail

inline VerificationReport run_verification(const ReportOptions& opt) {
    VerificationReport rep;
    rep.options = opt;
    const auto modes = detail::report_modes(opt.qs);

    // bound reports: functional-major, classical first then ascending q
    for (auto tag : all_functional_tags()) {
        const FunctionalId id{tag};
        for (const auto& ctx : modes) {
            rep.bounds.push_back(maximize_functional(id, ctx, opt.oracle));
            switch (rep.bounds.back().status) {
                case Verdict::CONFIRMED: ++rep.n_confirmed; break;
                case Verdict::DISCREPANT: ++rep.n_discrepant; break;
                case Verdict::UNVERIFIED: ++rep.n_unverified; break;
            }
        }
        rep.limits.push_back(classical_limit_report(id));
    }

    // fekete-szego scan over off-center mu values
    for (double mu : {-0.5, 0.0, 0.5, 2.0}) {
        for (const auto& ctx : modes) {
            const auto r = maximize_functional(FunctionalId::fekete_szego(mu), ctx, opt.oracle);
            VerificationReport::FsScanEntry e;
            e.classical = ctx.is_classical();
            e.q = ctx.is_classical() ? 1.0 : ctx.q();
            e.mu = mu;
            e.printed = r.closed_form.printed;
            e.oracle_max = r.oracle_max;
            e.discrepant = r.status == Verdict::DISCREPANT;
            rep.fs_scan.push_back(e);
        }
    }

    // disk-maximum closed form against its brute-force twin
    {
        std::mt19937 rng(static_cast<unsigned>(opt.oracle.seed ^ 0xabcdefULL));
        std::uniform_real_distribution<double> uA(-2.0, 2.0), uB(-3.0, 3.0), uC(-1.5, 1.5);
        OracleConfig ycfg = opt.oracle;
        ycfg.grid_disk_radial = std::max(ycfg.grid_disk_radial, 17);
        rep.y_agreement.instances = 100;
        for (int i = 0; i < rep.y_agreement.instances; ++i) {
            double A = uA(rng), B = uB(rng), C = uC(rng);
            if (A * C < 0.0) C = -C;
            const double gap = std::abs(Y_brute(A, B, C, ycfg) - Y_closed(A, B, C));
            rep.y_agreement.max_gap = std::max(rep.y_agreement.max_gap, gap);
        }
        rep.y_agreement.pass = rep.y_agreement.max_gap <= 1e-4;
    }

    // cubic-coefficient sharp estimate at representative points
    {
        OracleConfig lcfg = opt.oracle;
        lcfg.grid_b1 = std::min(lcfg.grid_b1, 33);
        lcfg.grid_disk_radial = std::min(lcfg.grid_disk_radial, 9);
        lcfg.grid_disk_angular = std::min(lcfg.grid_disk_angular, 24);
        rep.lemma4.push_back(lemma4_verify(3.5, 17.0 / 6.0, lcfg));
        rep.lemma4.push_back(lemma4_verify(2.0, -3.0, lcfg));
    }

    // coefficient-body inequalities on random jets
    {
        std::mt19937 rng(static_cast<unsigned>(opt.oracle.seed ^ 0x5e11edULL));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
        rep.jet_bounds.samples = 100000;
        for (int i = 0; i < rep.jet_bounds.samples; ++i) {
            const auto j = schwarz_jet(u01(rng), std::polar(u01(rng), ang(rng)),
                                       std::polar(u01(rng), ang(rng)));
            const bool ok =
                j.b1 <= 1.0 + 1e-12
                && std::abs(j.b2) <= 1.0 - j.b1 * j.b1 + 1e-12
                && std::abs(j.b3) <= 1.0 - j.b1 * j.b1 - std::norm(j.b2) / (1.0 + j.b1) + 1e-12;
            if (!ok) ++rep.jet_bounds.violations;
        }
    }

    // attainment at the jets the extremal functions induce
    {
        const SchwarzJet jet_z = schwarz_jet(1.0, 0.0, 0.0);
        const SchwarzJet jet_z2 = schwarz_jet(0.0, 1.0, 0.0);
        for (auto tag : all_functional_tags()) {
            const FunctionalId id{tag};
            for (const auto& ctx : modes) {
                const auto c1 = coeffs_q(ctx, jet_z);
                const auto c2 = coeffs_q(ctx, jet_z2);
                VerificationReport::ExtremalCheck e;
                e.id = id;
                e.classical = ctx.is_classical();
                e.q = ctx.is_classical() ? 1.0 : ctx.q();
                e.witness_value =
                    std::max(evaluate_functional(id, c1), evaluate_functional(id, c2));
                e.printed = sharp_bound(id, ctx).printed;
                e.attains = std::abs(e.witness_value - e.printed)
                            <= 1e-9 * std::max(1.0, std::abs(e.printed));
                rep.extremal_checks.push_back(e);
            }
        }
    }

    // boundary-surface values
    {
        auto& s = rep.surfaces;
        s.gamma_case_corner = surface_value(Surface::GammaT23C, 1.0, 0.0);
        for (int i = 0; i <= 4000; ++i) {
            const double t = double(i) / 4000.0;
            s.gamma_edge_x0_max =
                std::max(s.gamma_edge_x0_max, surface_value(Surface::GammaT23C, 0.0, t));
            s.gamma_edge_y0_max =
                std::max(s.gamma_edge_y0_max, surface_value(Surface::GammaT23C, t, 0.0));
            s.gamma2_edge_x0_max =
                std::max(s.gamma2_edge_x0_max, surface_value(Surface::Gamma2T32C, 0.0, t));
        }
        s.gamma_edge_y0_exceeds_case = s.gamma_edge_y0_max > s.gamma_case_corner + 1e-9;
        s.phi1_min = s.phi2_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
            for (int j = 0; j < 100; ++j) {
                const double b1 = (i + 1) / 101.0, q = (j + 1) / 101.0;
                s.phi1_min = std::min(s.phi1_min, surface_value(Surface::Phi1, b1, q));
                s.phi2_min = std::min(s.phi2_min, surface_value(Surface::Phi2, b1, q));
            }
        }
    }
    return rep;
}

namespace detail {

inline Json complex_json(Complex z) {
    return Json::array().push_back(z.real()).push_back(z.imag());
}

inline Json bound_value_json(const BoundValue& b) {
    Json j = Json::object();
    j.set("value", b.value);
    j.set("printed", b.printed);
    j.set("source", b.source);
    if (!b.caveat.empty()) j.set("caveat", b.caveat);
    return j;
}

inline Json bound_report_json(const BoundReport& r) {
    Json j = Json::object();
    j.set("functional", functional_name(r.id.tag));
    if (r.id.tag == FunctionalId::Tag::FeketeSzego) j.set("mu", complex_json(r.id.mu));
    j.set("mode", r.classical ? "classical" : "q");
    if (!r.classical) j.set("q", r.q);
    j.set("closed_form", bound_value_json(r.closed_form));
    j.set("oracle_max", r.oracle_max);
    j.set("witness", Json::object()
                         .set("b1", r.witness.b1)
                         .set("alpha", complex_json(r.witness.alpha))
                         .set("beta", complex_json(r.witness.beta)));
    j.set("abs_gap", r.abs_gap);
    j.set("status", verdict_name(r.status));
    return j;
}

inline Json limit_report_json(const LimitReport& r) {
    Json samples = Json::array();
    for (double s : r.samples) samples.push_back(s);
    Json j = Json::object();
    j.set("functional", functional_name(r.id.tag));
    j.set("samples", std::move(samples));
    j.set("extrapolated", r.extrapolated);
    j.set("classical_value", r.classical_value);
    j.set("gap", r.gap);
    if (r.compare_magnitude) j.set("compare_magnitude", true);
    j.set("status", r.match ? "MATCH" : "MISMATCH");
    return j;
}

} // namespace detail

/// Deterministic run envelope. The timestamp honors SOURCE_DATE_EPOCH
/// when present and stays empty otherwise, so identical flags and seed
/// reproduce identical bytes.
inline Json run_record(const std::string& command, Json parameters, std::uint64_t seed) {
    Json j = Json::object();
    j.set("command", command);
    j.set("parameters", std::move(parameters));
    j.set("seed", static_cast<std::int64_t>(seed));
    j.set("version", kVersion);
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    j.set("timestamp", epoch ? std::string(epoch) : std::string());
    return j;
}

inline Json report_json(const VerificationReport& rep, Json run) {
    Json root = Json::object();
    root.set("run", std::move(run));

    Json bounds = Json::array();
    for (const auto& b : rep.bounds) bounds.push_back(detail::bound_report_json(b));
    root.set("bound_reports", std::move(bounds));

    Json limits = Json::array();
    for (const auto& l : rep.limits) limits.push_back(detail::limit_report_json(l));
    root.set("limit_reports", std::move(limits));

    Json scan = Json::array();
    for (const auto& e : rep.fs_scan) {
        Json j = Json::object();
        j.set("mode", e.classical ? "classical" : "q");
        if (!e.classical) j.set("q", e.q);
        j.set("mu", e.mu);
        j.set("printed", e.printed);
        j.set("oracle_max", e.oracle_max);
        j.set("discrepant", e.discrepant);
        scan.push_back(std::move(j));
    }
    root.set("fs_scan", std::move(scan));

    Json lemmas = Json::object();
    lemmas.set("y_agreement", Json::object()
                                  .set("instances", rep.y_agreement.instances)
                                  .set("max_gap", rep.y_agreement.max_gap)
                                  .set("pass", rep.y_agreement.pass));
    Json l4 = Json::array();
    for (const auto& r : rep.lemma4) {
        l4.push_back(Json::object()
                         .set("sigma", r.sigma)
                         .set("nu", r.nu)
                         .set("oracle_max", r.oracle_max)
                         .set("expected", r.expected)
                         .set("gap", r.gap)
                         .set("pass", r.pass));
    }
    lemmas.set("cubic_estimate", std::move(l4));
    lemmas.set("jet_bounds", Json::object()
                                 .set("samples", rep.jet_bounds.samples)
                                 .set("violations", rep.jet_bounds.violations));
    root.set("lemma_checks", std::move(lemmas));

    Json extremal = Json::array();
    for (const auto& e : rep.extremal_checks) {
        Json j = Json::object();
        j.set("functional", functional_name(e.id.tag));
        j.set("mode", e.classical ? "classical" : "q");
        if (!e.classical) j.set("q", e.q);
        j.set("witness_value", e.witness_value);
        j.set("printed", e.printed);
        j.set("attains", e.attains);
        extremal.push_back(std::move(j));
    }
    root.set("extremal_checks", std::move(extremal));

    root.set("surface_checks",
             Json::object()
                 .set("gamma_case_corner", rep.surfaces.gamma_case_corner)
                 .set("gamma_edge_x0_max", rep.surfaces.gamma_edge_x0_max)
                 .set("gamma_edge_y0_max", rep.surfaces.gamma_edge_y0_max)
                 .set("gamma_edge_y0_exceeds_case", rep.surfaces.gamma_edge_y0_exceeds_case)
                 .set("gamma2_edge_x0_max", rep.surfaces.gamma2_edge_x0_max)
                 .set("phi1_min", rep.surfaces.phi1_min)
                 .set("phi2_min", rep.surfaces.phi2_min));

    Json discrepant = Json::array();
    for (const auto& b : rep.bounds)
        if (b.status == Verdict::DISCREPANT)
            discrepant.push_back(b.closed_form.source);
    root.set("summary", Json::object()
                            .set("confirmed", rep.n_confirmed)
                            .set("discrepant", rep.n_discrepant)
                            .set("unverified", rep.n_unverified)
                            .set("discrepant_sources", std::move(discrepant))
                            .set("lemmas_pass",
                                 rep.y_agreement.pass && rep.jet_bounds.violations == 0));
    return root;
}

} // namespace qstar
