// Acceptance suite: one pass/fail line per criterion item, grouped into
// the eight criteria the project must satisfy. Items that a brute-force
// search refutes are still asserted at their tabulated values, so the
// corresponding lines fail and point at the discrepancy ledger.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "qstarlab/geometry.hpp"
#include "qstarlab/report.hpp"

using namespace qstar;

namespace {

int g_pass = 0;
int g_fail = 0;

void check(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
        ++g_pass;
        std::printf("PASS  %s\n", name.c_str());
    } else {
        ++g_fail;
        std::printf("FAIL  %s%s%s\n", name.c_str(), detail.empty() ? "" : " -- ",
                    detail.c_str());
    }
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& bin, const std::string& args) {
    const std::string cmd = bin + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CmdResult r;
    if (!pipe) return r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int rc = pclose(pipe);
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

const BoundReport& find_bound(const VerificationReport& rep, FunctionalId::Tag tag,
                              bool classical, double q) {
    for (const auto& b : rep.bounds)
        if (b.id.tag == tag && b.classical == classical
            && (classical || std::abs(b.q - q) < 1e-12))
            return b;
    throw std::logic_error("bound entry missing");
}

const LimitReport& find_limit(const VerificationReport& rep, FunctionalId::Tag tag) {
    for (const auto& l : rep.limits)
        if (l.id.tag == tag) return l;
    throw std::logic_error("limit entry missing");
}

void criterion_1() {
    for (double q : {0.3, 0.5, 0.8}) {
        const Series c = xi_series(QContext::with_q(q), 6);
        const bool ok = near(c.coeff(2).real(), q, 1e-12)
                        && near(c.coeff(3).real(), 5.0 * q * q / 6.0, 1e-12)
                        && near(c.coeff(5).real(), 101.0 * std::pow(q, 4) / 120.0, 1e-12)
                        && std::abs(c.coeff(2).imag()) < 1e-15;
        check("1: generator series coefficients at q=" + fmt(q), ok);
    }
}

void criterion_2() {
    const Series cl = extremal_coeffs({QContext::classical(), ExtremalSpec::Generator::XiOfZ, 8});
    check("2: classical extremal (a2,a3,a4) = (1, 1, 17/18)",
          near(cl.coeff(2).real(), 1.0, 1e-12) && near(cl.coeff(3).real(), 1.0, 1e-12)
              && near(cl.coeff(4).real(), 17.0 / 18.0, 1e-12));

    for (double q : {0.5, 0.8}) {
        const Series s = extremal_coeffs({QContext::with_q(q), ExtremalSpec::Generator::XiOfZ, 8});
        check("2: q extremal a2 = 1/q, a3 = (1+q^2)/(q^2(1+q)) at q=" + fmt(q),
              near(s.coeff(2).real(), 1.0 / q, 1e-12)
                  && near(s.coeff(3).real(), (1.0 + q * q) / (q * q * (1.0 + q)), 1e-12));
    }

    auto convolution_gap = [](const QContext& ctx) {
        const Series f = extremal_coeffs({ctx, ExtremalSpec::Generator::XiOfZ, 12});
        std::vector<Complex> kern(13);
        for (int n = 1; n <= 12; ++n)
            kern[static_cast<size_t>(n)] = q_number(n, ctx);
        const Series lhs = hadamard(f, Series(12, std::move(kern)));
        const Series rhs = f * xi_series(ctx, 12);
        double worst = 0.0;
        for (int n = 0; n <= 12; ++n)
            worst = std::max(worst, std::abs(lhs.coeff(n) - rhs.coeff(n)));
        return worst;
    };
    for (double q : {0.5, 0.8}) {
        const double gap = convolution_gap(QContext::with_q(q));
        check("2: convolution identity through order 12 at q=" + fmt(q), gap < 1e-10,
              "gap " + fmt(gap));
    }
    const double gap = convolution_gap(QContext::classical());
    check("2: convolution identity through order 12 (classical)", gap < 1e-10,
          "gap " + fmt(gap));
}

void criterion_3(const VerificationReport& rep) {
    struct Item {
        FunctionalId::Tag tag;
        bool classical;
        double q;
        double bound;
    };
    const auto t5 = TauTable::at(0.5);
    const auto t8 = TauTable::at(0.8);
    const double a4q5 = t5.tau3 / (6.0 * 0.125 * 1.5 * 1.75);
    const double a4q8 = t8.tau3 / (6.0 * 0.512 * 1.8 * 2.44);
    const std::vector<Item> items = {
        {FunctionalId::Tag::A2, true, 0, 1.0},
        {FunctionalId::Tag::A3, true, 0, 1.0},
        {FunctionalId::Tag::A4, true, 0, 17.0 / 18.0},
        {FunctionalId::Tag::FeketeSzego, true, 0, 0.5},
        {FunctionalId::Tag::H22, true, 0, 0.25},
        {FunctionalId::Tag::T23, true, 0, 0.25},
        {FunctionalId::Tag::T32, true, 0, 1.0 / 324.0},
        {FunctionalId::Tag::Kruskal41, true, 0, 1.0 / 18.0},
        {FunctionalId::Tag::Zalcman23, true, 0, 1.0 / 18.0},
        {FunctionalId::Tag::A2, false, 0.5, 2.0},
        {FunctionalId::Tag::A3, false, 0.5, 1.25 / 0.375},
        {FunctionalId::Tag::A4, false, 0.5, a4q5},
        {FunctionalId::Tag::FeketeSzego, false, 0.5, 1.0 / 0.75},
        {FunctionalId::Tag::H22, false, 0.5, 1.0 / 0.5625},
        {FunctionalId::Tag::T23, false, 0.5, 1.0 / 0.5625},
        {FunctionalId::Tag::Zalcman23, false, 0.5, 3.875 / 2.625},
        {FunctionalId::Tag::A2, false, 0.8, 1.25},
        {FunctionalId::Tag::A3, false, 0.8, 1.64 / 1.152},
        {FunctionalId::Tag::A4, false, 0.8, a4q8},
        {FunctionalId::Tag::FeketeSzego, false, 0.8, 1.0 / 1.44},
        {FunctionalId::Tag::H22, false, 0.8, 1.0 / 2.0736},
        {FunctionalId::Tag::T23, false, 0.8, 1.0 / 2.0736},
        {FunctionalId::Tag::Zalcman23, false, 0.8, 2.48 / 9.3696},
    };
    for (const auto& item : items) {
        const auto& b = find_bound(rep, item.tag, item.classical, item.q);
        const auto ctx = item.classical ? QContext::classical() : QContext::with_q(item.q);
        const SchwarzJet wjet = schwarz_jet(b.witness.b1, b.witness.alpha, b.witness.beta);
        const double witness_value = evaluate_functional(b.id, coeffs_q(ctx, wjet));
        const double scale = std::max(1.0, item.bound);
        const bool table_ok = near(b.closed_form.value, item.bound, 1e-9 * scale);
        const bool confirmed = b.status == Verdict::CONFIRMED
                               && std::abs(b.oracle_max - item.bound) <= 1e-3 * scale;
        const bool witness_ok = std::abs(witness_value - b.oracle_max) <= 1e-9;
        const std::string name =
            std::string("3: confirmed sharp bound ") + functional_name(item.tag)
            + (item.classical ? " classical" : " q=" + fmt(item.q));
        check(name, table_ok && confirmed && witness_ok,
              "table " + fmt(item.bound) + ", oracle " + fmt(b.oracle_max) + " ("
                  + verdict_name(b.status) + ")");
    }
}

void criterion_4(const VerificationReport& rep) {
    const std::vector<FunctionalId::Tag> matches = {
        FunctionalId::Tag::A2,  FunctionalId::Tag::A3,  FunctionalId::Tag::A4,
        FunctionalId::Tag::FeketeSzego, FunctionalId::Tag::H22,
        FunctionalId::Tag::T23, FunctionalId::Tag::T32, FunctionalId::Tag::Zalcman23,
    };
    for (auto tag : matches) {
        const auto& l = find_limit(rep, tag);
        check(std::string("4: limit MATCH for ") + functional_name(tag), l.match,
              "extrapolated " + fmt(l.extrapolated) + " vs classical "
                  + fmt(l.classical_value));
    }
    // formula-level check of the parameterized bound at off-center mu
    bool fs_all = true;
    for (double mu : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})
        fs_all = fs_all && classical_limit_report(FunctionalId::fekete_szego(mu)).match;
    check("4: parameterized bound matches at sampled mu", fs_all);

    const auto& kr = find_limit(rep, FunctionalId::Tag::Kruskal41);
    check("4: limit MISMATCH for kruskal (1/9 vs 1/18)",
          !kr.match && near(kr.extrapolated, 1.0 / 9.0, 1e-5)
              && near(kr.classical_value, 1.0 / 18.0, 1e-12),
          "extrapolated " + fmt(kr.extrapolated));
}

void criterion_5(const VerificationReport& rep) {
    for (double q : {0.5, 0.8}) {
        const auto& b = find_bound(rep, FunctionalId::Tag::T21, false, q);
        const double expect = std::max(1.0, 1.0 / (q * q) - 1.0);
        check("5: t21 q-bound flagged (negative expression) at q=" + fmt(q),
              b.status == Verdict::DISCREPANT && b.closed_form.printed < 0.0
                  && near(b.oracle_max, expect, 1e-3),
              "oracle " + fmt(b.oracle_max) + ", printed " + fmt(b.closed_form.printed));
    }
    {
        const auto& b = find_bound(rep, FunctionalId::Tag::T22, false, 0.8);
        check("5: t22 q-bound exceeded at q=0.8 (witness b1=0, b2=1)",
              b.status == Verdict::DISCREPANT && b.oracle_max >= 0.4822 - 1e-3
                  && near(b.closed_form.printed, 0.464175, 1e-5),
              "oracle " + fmt(b.oracle_max) + " vs printed " + fmt(b.closed_form.printed));
    }
    {
        bool found = false, ok = false;
        double oracle = 0.0;
        for (const auto& e : rep.fs_scan)
            if (e.classical && e.mu == 0.0) {
                found = true;
                oracle = e.oracle_max;
                ok = e.discrepant && near(e.oracle_max, 1.0, 1e-3)
                     && near(e.printed, 0.75, 1e-12);
            }
        check("5: fekete-szego classical at mu=0 flagged (oracle 1.0 vs 0.75)",
              found && ok, "oracle " + fmt(oracle));
    }
    {
        const auto& t21 = find_bound(rep, FunctionalId::Tag::T21, true, 0);
        const auto& t22 = find_bound(rep, FunctionalId::Tag::T22, true, 0);
        const auto& t31 = find_bound(rep, FunctionalId::Tag::T31, true, 0);
        check("5: classical zero entries contradicted by nonzero maxima",
              t21.status == Verdict::DISCREPANT && near(t21.oracle_max, 1.0, 1e-3)
                  && t22.status == Verdict::DISCREPANT
                  && near(t22.oracle_max, 4.0 / 9.0, 2e-3)
                  && t31.status == Verdict::DISCREPANT
                  && near(t31.oracle_max, 1.25, 2e-3),
              "t21 " + fmt(t21.oracle_max) + ", t22 " + fmt(t22.oracle_max) + ", t31 "
                  + fmt(t31.oracle_max));
    }
}

void criterion_6(const VerificationReport& rep) {
    check("6: disk-maximum closed form vs brute force on 100 instances",
          rep.y_agreement.pass && rep.y_agreement.instances == 100,
          "max gap " + fmt(rep.y_agreement.max_gap));
    const bool l4 = !rep.lemma4.empty() && rep.lemma4[0].pass
                    && near(rep.lemma4[0].oracle_max, 17.0 / 6.0, 1e-4);
    check("6: cubic-coefficient estimate at (7/2, 17/6) returns 17/6", l4,
          rep.lemma4.empty() ? "missing" : "oracle " + fmt(rep.lemma4[0].oracle_max));
    check("6: coefficient-body inequalities on 1e5 random jets",
          rep.jet_bounds.samples == 100000 && rep.jet_bounds.violations == 0,
          "violations " + fmt(rep.jet_bounds.violations));
}

void criterion_7() {
    for (const auto& ctx :
         {QContext::classical(), QContext::with_q(0.5), QContext::with_q(0.8)}) {
        const auto curve = boundary_curve(ctx, 2048, 0.01);
        const auto rep = maminda_checks(ctx, curve);
        const std::string mode = ctx.is_classical() ? "classical" : "q=" + fmt(ctx.q());
        check("7: generator geometry checks (" + mode + ")",
              rep.pass && rep.symmetry_error <= 1e-9 && rep.min_arg_step >= -1e-9,
              "sym " + fmt(rep.symmetry_error) + ", min arg step " + fmt(rep.min_arg_step));
    }

    for (auto gen : {ExtremalSpec::Generator::XiOfZ, ExtremalSpec::Generator::XiOfZSquared}) {
        for (const auto& ctx : {QContext::classical(), QContext::with_q(0.8)}) {
            const Series f = extremal_coeffs({ctx, gen, 192});
            const auto v = membership_test(f, ctx);
            const std::string name =
                std::string("7: extremal membership r<=0.9 (")
                + (gen == ExtremalSpec::Generator::XiOfZ ? "xi" : "xi2") + ", "
                + (ctx.is_classical() ? "classical" : "q=0.8") + ")";
            check(name, v.status == Membership::MEMBER && v.largest_reliable_r >= 0.9 - 1e-12,
                  std::string("status ") + membership_name(v.status) + ", margin "
                      + fmt(v.margin));
        }
    }
    {
        std::vector<Complex> c(17);
        c[1] = 1.0;
        c[2] = 2.0;
        const Series f(16, std::move(c));
        const auto vc = membership_test(f, QContext::classical());
        const auto vq = membership_test(f, QContext::with_q(0.8));
        check("7: z + 2z^2 rejected",
              vc.status == Membership::NON_MEMBER && vq.status == Membership::NON_MEMBER);
    }
    {
        const double corner = surface_value(Surface::GammaT23C, 1.0, 0.0);
        double edge = 0.0;
        for (int i = 0; i <= 100000; ++i)
            edge = std::max(edge, surface_value(Surface::GammaT23C, 0.0, i / 100000.0));
        check("7: gamma surface case values 35/324 and 1/4",
              near(corner, 35.0 / 324.0, 1e-6) && near(edge, 0.25, 1e-6),
              "corner " + fmt(corner) + ", edge max " + fmt(edge));
    }
    {
        double worst = 1e9;
        for (int i = 0; i < 100; ++i)
            for (int j = 0; j < 100; ++j) {
                const double b1 = (i + 1) / 101.0, q = (j + 1) / 101.0;
                worst = std::min(worst, std::min(surface_value(Surface::Phi1, b1, q),
                                                 surface_value(Surface::Phi2, b1, q)));
            }
        check("7: phi surfaces nonnegative on a 100x100 grid", worst >= -1e-12,
              "min " + fmt(worst));
    }
}

void criterion_8(const std::string& bin) {
    using clock = std::chrono::steady_clock;
    {
        const auto t0 = clock::now();
        const auto ok = run_cli(bin, "verify --functional h22 --mode classical");
        const double dt = std::chrono::duration<double>(clock::now() - t0).count();
        check("8: exit 0 on a confirmed bound", ok.code == 0, "code " + fmt(ok.code));
        check("8: default verify completes within 10 s", dt < 10.0, fmt(dt) + " s");
    }
    check("8: exit 1 on a discrepant bound",
          run_cli(bin, "verify --functional t21 --mode q --q 0.5").code == 1);
    check("8: exit 2 on a usage error",
          run_cli(bin, "coeffs --mode q --q 1.0 --generator xi").code == 2
              && run_cli(bin, "verify --functional nope --mode classical").code == 2);

    {
        const std::string cmd = "curve --mode q --q 0.8 --samples 2048 --eps 0.01";
        const auto a = run_cli(bin, cmd);
        const auto b = run_cli(bin, cmd);
        check("8: byte-identical curve replay", a.code == 0 && a.out == b.out);

        int rows = 0;
        bool pi_ok = false;
        size_t start = 0;
        while (start < a.out.size()) {
            size_t end = a.out.find('\n', start);
            if (end == std::string::npos) end = a.out.size();
            const std::string line = a.out.substr(start, end - start);
            start = end + 1;
            double theta, re, im;
            if (sscanf(line.c_str(), "%lf,%lf,%lf", &theta, &re, &im) == 3) {
                ++rows;
                if (std::abs(theta - std::numbers::pi) < 1e-9)
                    pi_ok = near(re, 0.501836047986, 1e-5) && near(im, 0.0, 1e-9);
            }
        }
        check("8: curve row count 2048", rows == 2048, "rows " + fmt(rows));
        check("8: curve value at theta = pi (q = 0.8)", pi_ok);

        const auto c = run_cli(bin, "curve --mode classical --samples 2048 --eps 0.01");
        bool half_pi_ok = false;
        start = 0;
        while (start < c.out.size()) {
            size_t end = c.out.find('\n', start);
            if (end == std::string::npos) end = c.out.size();
            const std::string line = c.out.substr(start, end - start);
            start = end + 1;
            double theta, re, im;
            if (sscanf(line.c_str(), "%lf,%lf,%lf", &theta, &re, &im) == 3
                && std::abs(theta - std::numbers::pi / 2.0) < 1e-9)
                half_pi_ok = near(re, 0.41240, 1e-5) && near(im, 0.58760, 1e-5);
        }
        check("8: curve value at theta = pi/2 (classical)", half_pi_ok);
    }
    {
        const std::string cmd = "report --q 0.5 --q 0.8 --grid 12 --refine 60 --seed 11";
        const auto a = run_cli(bin, cmd);
        const auto b = run_cli(bin, cmd);
        check("8: byte-identical report replay under a fixed seed",
              a.code == 1 && a.out == b.out && !a.out.empty());
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-qstar-binary>\n");
        return 2;
    }
    const std::string bin = argv[1];

    criterion_1();
    criterion_2();

    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const VerificationReport rep = run_verification(ReportOptions{});
    const double report_seconds = std::chrono::duration<double>(clock::now() - t0).count();

    criterion_3(rep);
    criterion_4(rep);
    criterion_5(rep);
    check("5: full default-configuration sweep within 5 minutes", report_seconds < 300.0,
          fmt(report_seconds) + " s");
    criterion_6(rep);
    criterion_7();
    criterion_8(bin);

    std::printf("----\n%d passed, %d failed\n", g_pass, g_fail);
    if (g_fail > 0)
        std::printf("failing lines correspond to table entries the search refutes;\n"
                    "the report ledger carries the witnesses.\n");
    return g_fail == 0 ? 0 : 1;
}
