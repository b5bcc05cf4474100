// Command-line front end: coefficient dumps, single-bound verification,
// the full verification report, boundary-curve export and membership
// tests. Every command is replayable: flags plus seed determine the
// output bytes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qstarlab/geometry.hpp"
#include "qstarlab/report.hpp"

namespace {

using namespace qstar;

constexpr int kExitOk = 0;
constexpr int kExitDiscrepancy = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QSTAR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("QSTAR_SEED", "QSTAR_SEED must be an integer");
        }
    }
    return 0;
}

// plain decimal only; scientific notation is rejected so the reports
// stay readable and replay commands stay copy-pasteable
double parse_q(const std::string& text) {
    static const std::regex decimal(R"(^[0-9]*\.?[0-9]+$)");
    if (!std::regex_match(text, decimal))
        throw CLI::ValidationError("--q", "q must be a plain decimal in (0,1)");
    return std::strtod(text.c_str(), nullptr);
}

QContext make_context(const std::string& mode, const std::optional<std::string>& q_text) {
    if (mode == "classical") {
        if (q_text)
            throw CLI::ValidationError("--q", "--q is only meaningful with --mode q");
        return QContext::classical();
    }
    if (!q_text) throw CLI::ValidationError("--q", "--mode q requires --q");
    return QContext::with_q(parse_q(*q_text));
}

Complex parse_mu(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
    return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
}

FunctionalId parse_functional(const std::string& name, const std::optional<std::string>& mu) {
    for (auto tag : all_functional_tags()) {
        if (name == functional_name(tag)) {
            FunctionalId id{tag};
            if (tag == FunctionalId::Tag::FeketeSzego) {
                if (!mu) throw CLI::ValidationError("--mu", "functional fs requires --mu");
                id.mu = parse_mu(*mu);
            } else if (mu) {
                throw CLI::ValidationError("--mu", "--mu only applies to functional fs");
            }
            return id;
        }
    }
    throw CLI::ValidationError("--functional", "unknown functional: " + name);
}

void emit(const std::string& payload, const std::optional<std::string>& out_path) {
    if (!out_path) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + *out_path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

Json mode_params(const std::string& mode, const std::optional<std::string>& q_text) {
    Json p = Json::object();
    p.set("mode", mode);
    if (q_text) p.set("q", *q_text);
    return p;
}

struct OracleFlags {
    std::optional<int> grid;
    std::optional<int> refine;

    OracleConfig config(std::uint64_t seed) const {
        OracleConfig cfg;
        cfg.seed = seed;
        if (grid) {
            cfg.grid_b1 = *grid;
            cfg.grid_disk_radial = std::max(2, *grid / 2);
            cfg.grid_disk_angular = *grid;
        }
        if (refine) cfg.refine_iters = *refine;
        return cfg;
    }

    void annotate(Json& params) const {
        if (grid) params.set("grid", *grid);
        if (refine) params.set("refine", *refine);
    }
};

int cmd_coeffs(const std::string& mode, const std::optional<std::string>& q_text,
               const std::string& generator, int order,
               const std::optional<std::string>& out, std::uint64_t seed) {
    const QContext ctx = make_context(mode, q_text);
    ExtremalSpec spec;
    spec.ctx = ctx;
    spec.order = order;
    if (generator == "xi") spec.generator = ExtremalSpec::Generator::XiOfZ;
    else if (generator == "xi2") spec.generator = ExtremalSpec::Generator::XiOfZSquared;
    else throw CLI::ValidationError("--generator", "generator must be xi or xi2");

    const Series a = extremal_coeffs(spec);
    Json coeffs = Json::array();
    for (int n = 1; n <= order; ++n) coeffs.push_back(a.coeff(n).real());

    Json params = mode_params(mode, q_text);
    params.set("generator", generator);
    params.set("order", order);
    Json root = Json::object();
    root.set("run", run_record("coeffs", std::move(params), seed));
    root.set("coefficients", std::move(coeffs));
    emit(root.dump(2), out);
    return kExitOk;
}

int cmd_verify(const std::string& functional, const std::optional<std::string>& mu,
               const std::string& mode, const std::optional<std::string>& q_text,
               const OracleFlags& oracle, const std::optional<std::string>& out,
               std::uint64_t seed) {
    const FunctionalId id = parse_functional(functional, mu);
    const QContext ctx = make_context(mode, q_text);
    const BoundReport rep = maximize_functional(id, ctx, oracle.config(seed));

    Json params = mode_params(mode, q_text);
    params.set("functional", functional);
    if (mu) params.set("mu", *mu);
    oracle.annotate(params);
    Json root = Json::object();
    root.set("run", run_record("verify", std::move(params), seed));
    root.set("report", detail::bound_report_json(rep));
    emit(root.dump(2), out);
    return rep.status == Verdict::CONFIRMED ? kExitOk : kExitDiscrepancy;
}

int cmd_report(const std::vector<std::string>& q_texts, const OracleFlags& oracle,
               const std::optional<std::string>& out, std::uint64_t seed) {
    ReportOptions opt;
    opt.oracle = oracle.config(seed);
    if (!q_texts.empty()) {
        opt.qs.clear();
        for (const auto& t : q_texts) opt.qs.push_back(parse_q(t));
    }
    for (double q : opt.qs)
        if (!(q > 0.0 && q < 1.0))
            throw CLI::ValidationError("--q", "report q values must lie in (0,1)");

    const VerificationReport rep = run_verification(opt);

    Json params = Json::object();
    Json qs = Json::array();
    for (const auto& t : (q_texts.empty() ? std::vector<std::string>{"0.5", "0.8"} : q_texts))
        qs.push_back(t);
    params.set("q_list", std::move(qs));
    oracle.annotate(params);
    Json root = report_json(rep, run_record("report", std::move(params), seed));
    emit(root.dump(2), out);
    return rep.n_discrepant > 0 ? kExitDiscrepancy : kExitOk;
}

int cmd_curve(const std::string& mode, const std::optional<std::string>& q_text, int samples,
              double eps, const std::string& format, const std::optional<std::string>& out,
              std::uint64_t seed) {
    const QContext ctx = make_context(mode, q_text);
    const auto curve = boundary_curve(ctx, samples, eps);
    if (format == "csv") {
        std::string payload = "theta,re,im\n";
        char buf[128];
        for (const auto& s : curve) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", s.theta, s.point.real(),
                          s.point.imag());
            payload += buf;
        }
        emit(payload, out);
        return kExitOk;
    }
    if (format != "json")
        throw CLI::ValidationError("--format", "format must be json or csv");
    Json rows = Json::array();
    for (const auto& s : curve)
        rows.push_back(Json::array().push_back(s.theta).push_back(s.point.real()).push_back(
            s.point.imag()));
    Json params = mode_params(mode, q_text);
    params.set("samples", samples);
    params.set("eps", eps);
    Json root = Json::object();
    root.set("run", run_record("curve", std::move(params), seed));
    root.set("samples", std::move(rows));
    emit(root.dump(2), out);
    return kExitOk;
}

int cmd_membership(const std::string& path, const std::string& mode,
                   const std::optional<std::string>& q_text,
                   const std::optional<std::string>& out, std::uint64_t seed) {
    const QContext ctx = make_context(mode, q_text);

    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("file", "cannot open coefficient file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("file", std::string("malformed coefficient file: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw CLI::ValidationError("file", "coefficient file must be a nonempty array");
    std::vector<Complex> coeffs(doc.size() + 1);
    for (size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_number())
            throw CLI::ValidationError("file", "coefficients must be numbers");
        coeffs[i + 1] = doc[i].get<double>();
    }
    if (std::abs(coeffs[1] - Complex(1.0, 0.0)) > 1e-12)
        throw CLI::ValidationError("file", "leading coefficient a1 must equal 1");
    const int order = std::max<int>(16, static_cast<int>(doc.size()));
    coeffs.resize(static_cast<size_t>(order) + 1);
    const Series f(order, std::move(coeffs));

    const auto verdict = membership_test(f, ctx);
    Json params = mode_params(mode, q_text);
    params.set("file", path);
    Json root = Json::object();
    root.set("run", run_record("membership", std::move(params), seed));
    root.set("verdict", Json::object()
                            .set("status", membership_name(verdict.status))
                            .set("worst_r", verdict.worst_r)
                            .set("worst_theta", verdict.worst_theta)
                            .set("margin", verdict.margin)
                            .set("largest_reliable_r", verdict.largest_reliable_r));
    emit(root.dump(2), out);
    return verdict.status == Membership::MEMBER ? kExitOk : kExitDiscrepancy;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for two starlike function classes"};
    app.require_subcommand(1);

    std::string mode = "classical";
    std::optional<std::string> q_text;
    std::optional<std::string> mu_text;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed_flag;
    OracleFlags oracle;

    auto add_common = [&](CLI::App* cmd, bool with_oracle) {
        cmd->add_option("--mode", mode, "classical or q")->check(CLI::IsMember({"classical", "q"}));
        cmd->add_option("--q", q_text, "deformation parameter, plain decimal in (0,1)");
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
        cmd->add_option("--seed", seed_flag, "search seed (default: QSTAR_SEED or 0)");
        if (with_oracle) {
            oracle.grid.reset();
            oracle.refine.reset();
            cmd->add_option("--grid", oracle.grid, "grid resolution override")
                ->check(CLI::Range(2, 4096));
            cmd->add_option("--refine", oracle.refine, "refinement iteration override")
                ->check(CLI::Range(1, 100000));
        }
    };

    auto* coeffs = app.add_subcommand("coeffs", "extremal-function coefficients");
    std::string generator = "xi";
    int order = 16;
    coeffs->add_option("--generator", generator, "xi or xi2");
    coeffs->add_option("--order", order, "truncation order")->check(CLI::Range(2, 4096));
    add_common(coeffs, false);

    auto* verify = app.add_subcommand("verify", "verify one closed-form bound");
    std::string functional;
    verify->add_option("--functional", functional, "functional id")->required();
    verify->add_option("--mu", mu_text, "fekete-szego parameter re[,im]");
    add_common(verify, true);

    auto* report = app.add_subcommand("report", "full verification sweep");
    std::vector<std::string> q_list;
    report->add_option("--q", q_list, "q values for the sweep (repeatable)");
    report->add_option("--out", out_path, "write output to a file instead of stdout");
    report->add_option("--seed", seed_flag, "search seed (default: QSTAR_SEED or 0)");
    report->add_option("--grid", oracle.grid, "grid resolution override")
        ->check(CLI::Range(2, 4096));
    report->add_option("--refine", oracle.refine, "refinement iteration override")
        ->check(CLI::Range(1, 100000));

    auto* curve = app.add_subcommand("curve", "boundary-curve samples of the generator");
    int samples = 2048;
    double eps = 0.01;
    std::string format = "csv";
    curve->add_option("--samples", samples, "sample count")->check(CLI::Range(16, 1 << 22));
    curve->add_option("--eps", eps, "excluded arc half-width");
    curve->add_option("--format", format, "csv or json");
    add_common(curve, false);

    auto* membership = app.add_subcommand("membership", "class membership of a coefficient file");
    std::string coeff_file;
    membership->add_option("file", coeff_file, "JSON array [a1, a2, ...] with a1 = 1")
        ->required();
    add_common(membership, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
        if (coeffs->parsed())
            return cmd_coeffs(mode, q_text, generator, order, out_path, seed);
        if (verify->parsed())
            return cmd_verify(functional, mu_text, mode, q_text, oracle, out_path, seed);
        if (report->parsed()) return cmd_report(q_list, oracle, out_path, seed);
        if (curve->parsed())
            return cmd_curve(mode, q_text, samples, eps, format, out_path, seed);
        if (membership->parsed())
            return cmd_membership(coeff_file, mode, q_text, out_path, seed);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
