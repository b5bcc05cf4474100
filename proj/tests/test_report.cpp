#include <catch2/catch_amalgamated.hpp>

#include "qstarlab/report.hpp"

using namespace qstar;
using Catch::Approx;

namespace {

ReportOptions fast_options() {
    ReportOptions opt;
    opt.oracle.grid_b1 = 17;
    opt.oracle.grid_disk_radial = 7;
    opt.oracle.grid_disk_angular = 16;
    opt.oracle.refine_iters = 80;
    opt.oracle.random_restarts = 2;
    return opt;
}

const VerificationReport& fast_report() {
    static const VerificationReport rep = run_verification(fast_options());
    return rep;
}

} // namespace

TEST_CASE("report cardinality and ordering") {
    const auto& rep = fast_report();
    CHECK(rep.bounds.size() == 39); // 13 functionals x {classical, 0.5, 0.8}
    CHECK(rep.limits.size() == 13);
    // functional-major, classical before ascending q
    CHECK(rep.bounds[0].classical);
    CHECK_FALSE(rep.bounds[1].classical);
    CHECK(rep.bounds[1].q == 0.5);
    CHECK(rep.bounds[2].q == 0.8);
    CHECK(rep.n_confirmed + rep.n_discrepant + rep.n_unverified == 39);
}

TEST_CASE("report flags the non-reproducible table entries") {
    const auto& rep = fast_report();
    auto find = [&](FunctionalId::Tag tag, bool classical, double q) -> const BoundReport& {
        for (const auto& b : rep.bounds)
            if (b.id.tag == tag && b.classical == classical
                && (classical || std::abs(b.q - q) < 1e-12))
                return b;
        FAIL("entry missing");
        return rep.bounds[0];
    };
    // the adjudications the ledger must contain
    CHECK(find(FunctionalId::Tag::T21, false, 0.5).status == Verdict::DISCREPANT);
    CHECK(find(FunctionalId::Tag::T21, false, 0.8).status == Verdict::DISCREPANT);
    CHECK(find(FunctionalId::Tag::T22, false, 0.8).status == Verdict::DISCREPANT);
    CHECK(find(FunctionalId::Tag::T21, true, 0.0).status == Verdict::DISCREPANT);
    CHECK(find(FunctionalId::Tag::T22, true, 0.0).status == Verdict::DISCREPANT);
    CHECK(find(FunctionalId::Tag::T31, true, 0.0).status == Verdict::DISCREPANT);
    // and the confirmations
    CHECK(find(FunctionalId::Tag::A2, true, 0.0).status == Verdict::CONFIRMED);
    CHECK(find(FunctionalId::Tag::H22, true, 0.0).status == Verdict::CONFIRMED);
    CHECK(find(FunctionalId::Tag::H22, false, 0.5).status == Verdict::CONFIRMED);
    CHECK(find(FunctionalId::Tag::T22, false, 0.5).status == Verdict::CONFIRMED);
}

TEST_CASE("report limit section") {
    const auto& rep = fast_report();
    int mismatches = 0;
    for (const auto& l : rep.limits) {
        if (!l.match) {
            ++mismatches;
            CHECK(l.id.tag == FunctionalId::Tag::Kruskal41);
        }
    }
    CHECK(mismatches == 1);
}

TEST_CASE("report mu scan catches the off-center discrepancy") {
    const auto& rep = fast_report();
    bool found_mu0_classical = false;
    for (const auto& e : rep.fs_scan) {
        if (e.classical && e.mu == 0.0) {
            found_mu0_classical = true;
            CHECK(e.printed == Approx(0.75).margin(1e-12));
            CHECK(e.oracle_max == Approx(1.0).margin(1e-3));
            CHECK(e.discrepant);
        }
        if (e.classical && e.mu == -0.5) CHECK(e.discrepant); // boundary counterexample
    }
    CHECK(found_mu0_classical);
}

TEST_CASE("report lemma and jet sections") {
    const auto& rep = fast_report();
    CHECK(rep.y_agreement.instances == 100);
    CHECK(rep.y_agreement.pass);
    REQUIRE(rep.lemma4.size() == 2);
    CHECK(rep.lemma4[0].pass);
    CHECK(rep.lemma4[1].pass);
    CHECK(rep.jet_bounds.samples == 100000);
    CHECK(rep.jet_bounds.violations == 0);
}

TEST_CASE("report extremal attainment") {
    const auto& rep = fast_report();
    auto attains = [&](FunctionalId::Tag tag, bool classical, double q) {
        for (const auto& e : rep.extremal_checks)
            if (e.id.tag == tag && e.classical == classical
                && (classical || std::abs(e.q - q) < 1e-12))
                return e.attains;
        return false;
    };
    CHECK(attains(FunctionalId::Tag::A4, true, 0.0));
    CHECK(attains(FunctionalId::Tag::H22, true, 0.0));
    CHECK(attains(FunctionalId::Tag::T23, true, 0.0));
    CHECK(attains(FunctionalId::Tag::T32, true, 0.0));
    CHECK(attains(FunctionalId::Tag::Zalcman23, true, 0.0));
    CHECK(attains(FunctionalId::Tag::A4, false, 0.5));
    CHECK(attains(FunctionalId::Tag::H22, false, 0.8));
    CHECK(attains(FunctionalId::Tag::Zalcman23, false, 0.5));
    // the kruskal table value sits a factor above its extremal value
    CHECK_FALSE(attains(FunctionalId::Tag::Kruskal41, false, 0.5));
}

TEST_CASE("report surface section") {
    const auto& s = fast_report().surfaces;
    CHECK(s.gamma_case_corner == Approx(35.0 / 324.0).margin(1e-12));
    CHECK(s.gamma_edge_x0_max == Approx(0.25).margin(1e-8));
    CHECK(s.gamma_edge_y0_max == Approx(5.0 / 36.0).margin(1e-8));
    CHECK(s.gamma_edge_y0_exceeds_case);
    CHECK(s.gamma2_edge_x0_max == Approx(0.0).margin(1e-12));
    CHECK(s.phi1_min >= -1e-12);
    CHECK(s.phi2_min >= -1e-12);
}

TEST_CASE("report serialization is deterministic") {
    const auto opt = fast_options();
    const auto r1 = run_verification(opt);
    const auto r2 = run_verification(opt);
    const std::string d1 = report_json(r1, run_record("report", Json::object(), 0)).dump(2);
    const std::string d2 = report_json(r2, run_record("report", Json::object(), 0)).dump(2);
    CHECK(d1 == d2);
    CHECK(d1.find("\"bound_reports\"") != std::string::npos);
    CHECK(d1.find("\"limit_reports\"") != std::string::npos);
    CHECK(d1.find("\"summary\"") != std::string::npos);
}

TEST_CASE("json writer formatting") {
    Json j = Json::object();
    j.set("a", 0.25);
    j.set("b", 1.0 / 3.0);
    j.set("c", Json::array().push_back(1).push_back(true).push_back("x\"y"));
    j.set("d", -0.0);
    const std::string s = j.dump();
    CHECK(s == R"({"a":0.25,"b":0.333333333333,"c":[1,true,"x\"y"],"d":0})");
}
