// Acceptance run: one PASS/FAIL line per criterion, n = 2, default plan, seed 42.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "otreg/a3w.hpp"
#include "otreg/cli.hpp"
#include "otreg/cost_spec.hpp"
#include "otreg/diff.hpp"
#include "otreg/errors.hpp"
#include "otreg/manifold.hpp"

using namespace otreg;
using cli::json;

namespace {

constexpr int kDim = 2;
constexpr int kSamples = 100;

struct CliRun {
    int code;
    std::string out;
    json report() const { return json::parse(out); }
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (!err.str().empty()) std::cerr << err.str();
    return {code, out.str()};
}

std::string stable(json j) {
    j["stats"].erase("wall_time_s");
    return j.dump();
}

Frame frame_for(const std::string& spec) {
    const auto [x0, y0] = cli::default_base_pair(spec, kDim);
    return make_frame(make_cost(spec), x0, y0);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome quadratic_exactness() {
    const Frame f = frame_for("quadratic");
    const SamplePlan plan;
    const DomainBox box = DomainBox::cube(Vec(kDim), plan.q_scale);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i), 0xA1);
        const Vec q = box.uniform(rng), p = box.uniform(rng);
        worst = std::max(worst, std::abs(f.c_bar(q, p) + dot(q, p)));
    }
    const CrossValidation cv = cross_validate(f, plan, CheckBoxes::defaults(f, plan));
    const bool pass = worst <= 1e-8 && cv.midpoint.status == Status::pass && cv.implication.status == Status::pass &&
                      cv.midpoint.max_measured <= 1e-7 && cv.implication.max_measured <= 1e-7;
    return {pass, fmt("max|cbar+q.p| = %.2e (<= 1e-8); midpoint max %.2e, implication max %.2e (<= 1e-7)", worst,
                      cv.midpoint.max_measured, cv.implication.max_measured)};
}

Outcome theorem_equivalence() {
    const CliRun r = run_cli({"equiv"});
    const json j = r.report();
    std::string table;
    for (const auto& v : j["verdicts"])
        if (v["check"] == "cross_validate")
            table += " " + v["cost"].get<std::string>() + "=" + v["midpoint"].get<std::string>() + "/" +
                     v["implication"].get<std::string>();
    return {r.code == cli::kExitPass && j["stats"]["agreeing"] == cli::default_suite().size(),
            "equiv exit " + std::to_string(r.code) + ";" + table};
}

Outcome curvature_sign() {
    const std::string path = (std::filesystem::temp_directory_path() / "otreg_acceptance_hyperbolic.json").string();
    const CliRun h = run_cli({"check", "--cost", "riemannian(manifold=hyperbolic)", "--dim", "2", "--out", path});
    std::ifstream in(path);
    const json hj = json::parse(in);
    const CliRun replay = run_cli({"replay", path});
    const json rj = replay.report()["verdicts"][0];
    std::remove(path.c_str());
    const CliRun s = run_cli({"check", "--cost", "riemannian(manifold=sphere)", "--dim", "2", "--radius", "0.4"});
    const json sj = s.report()["verdicts"];
    const bool h_fail = hj["verdicts"][0]["status"] == "FAIL" && hj["verdicts"][1]["status"] == "FAIL";
    const bool replayed = replay.code == cli::kExitPass && rj["replayed"].get<long>() >= 1 && rj["mismatches"] == 0;
    const bool s_pass = s.code == cli::kExitPass && sj[0]["status"] == "PASS" && sj[1]["status"] == "PASS";
    return {h_fail && replayed && s_pass,
            "hyperbolic " + hj["verdicts"][0]["status"].get<std::string>() + "/" +
                hj["verdicts"][1]["status"].get<std::string>() + ", " + std::to_string(rj["replayed"].get<long>()) +
                " counterexamples replayed (max diff " + fmt("%.1e", rj["max_difference"].get<double>()) +
                "); sphere r=0.4 " + sj[0]["status"].get<std::string>() + "/" + sj[1]["status"].get<std::string>()};
}

Outcome curvature_recovery() {
    bool pass = true;
    std::string detail;
    for (const auto& [id, kappa, tol] : {std::tuple{"euclidean", 0.0, 1e-6}, std::tuple{"sphere", 1.0, 0.05},
                                         std::tuple{"hyperbolic", -1.0, 0.05}}) {
        const json v = run_cli({"curvature", "--manifold", id}).report()["verdicts"][0];
        const double lo = v["kappa_min"].get<double>(), hi = v["kappa_max"].get<double>();
        pass &= lo >= kappa - tol && hi <= kappa + tol && v["per_pair"].size() == 20;
        detail += std::string(id) + fmt(" [%.3g, %.3g] ", lo, hi);
    }
    return {pass, "kappa over 20 pairs: " + detail};
}

Outcome orthogonal_inequality() {
    const double t = 0.3;
    const Manifold e = Manifold::euclidean(), s = Manifold::sphere(), h = Manifold::hyperbolic();
    double e_gap = 0.0, s_gap = -1e300, h_gap = 1e300;
    bool s_holds = true, h_fails = true;
    for (int i = 0; i < 20; ++i) {
        for (const Manifold* m : {&e, &s, &h}) {
            // Same seeded pairs as the curvature command.
            Rng rng = Rng::stream(42, static_cast<std::uint64_t>(i), 0xC0);
            const OrthogonalInequality r = orthogonal_inequality_check(*m, random_tangent_pair(*m, kDim, rng), t);
            const double gap = r.lhs - r.rhs;
            if (m == &e) e_gap = std::max(e_gap, std::abs(gap));
            if (m == &s) {
                s_gap = std::max(s_gap, gap);
                s_holds &= r.holds && gap < 0.0;
            }
            if (m == &h) {
                h_gap = std::min(h_gap, gap);
                h_fails &= !r.holds;
            }
        }
    }
    const bool cli_exit = run_cli({"curvature", "--manifold", "euclidean"}).code == cli::kExitPass &&
                          run_cli({"curvature", "--manifold", "sphere"}).code == cli::kExitPass &&
                          run_cli({"curvature", "--manifold", "hyperbolic"}).code == cli::kExitViolation;
    return {e_gap <= 1e-9 && s_holds && h_fails && cli_exit,
            fmt("t=0.3, 20 pairs: euclidean max|lhs-rhs| %.1e; sphere max(lhs-rhs) %.3e < 0; hyperbolic min(lhs-rhs) "
                "%.3e > 0",
                e_gap, s_gap, h_gap)};
}

Outcome proof_identities() {
    double centering = 0.0, grad_err = 0.0, hess_err = 0.0, bilinear_residual = 0.0;
    double ratio_lo = 1e300, ratio_hi = -1e300;
    long evaluated = 0;
    bool pass = true;
    const SamplePlan plan;
    for (const auto& spec : cli::default_suite()) {
        const Frame f = frame_for(spec);
        const DomainBox box = DomainBox::cube(Vec(kDim), plan.q_scale);
        const bool bilinear = spec == "quadratic" || spec == "bilinear";
        int ok = 0;
        for (std::uint64_t i = 0; ok < kSamples && i < 10 * kSamples; ++i) {
            Rng rng = Rng::stream(plan.seed, i, 0xB6);
            const Vec q = box.uniform(rng), p = box.uniform(rng);
            const Vec dir_q = rng.unit_vector(kDim), dir_p = rng.unit_vector(kDim);
            try {
                const double c1 = std::abs(f.c_bar(q, Vec(kDim))), c2 = std::abs(f.c_bar(Vec(kDim), p));
                const double g = (f.c_bar_grad_q(Vec(kDim), p) + p).max_abs();
                const double hq = f.c_bar_hess_q(q, Vec(kDim)).max_abs();
                // Taylor residual along q -> 0 from |q| = 0.003 with |p| = 0.3.
                const Vec q0 = dir_q * 0.003, p0 = dir_p * 0.3;
                std::vector<double> r;
                for (int k = 0; k <= 3; ++k) {
                    const Vec qk = q0 / std::pow(2.0, k);
                    r.push_back(std::abs(f.c_bar(qk, p0) + dot(qk, p0)));
                }
                centering = std::max({centering, c1, c2});
                grad_err = std::max(grad_err, g);
                hess_err = std::max(hess_err, hq);
                if (bilinear) {
                    bilinear_residual = std::max(bilinear_residual, *std::max_element(r.begin(), r.end()));
                } else {
                    for (int k = 0; k < 3; ++k) {
                        ratio_lo = std::min(ratio_lo, r[k] / r[k + 1]);
                        ratio_hi = std::max(ratio_hi, r[k] / r[k + 1]);
                    }
                }
                ++ok;
            } catch (const Error&) {
            }
        }
        evaluated += ok;
        pass &= ok == kSamples;
    }
    pass &= centering <= 1e-10 && grad_err <= 1e-6 && hess_err <= 1e-6 && ratio_lo >= 3.2 && ratio_hi <= 4.8 &&
            bilinear_residual <= 1e-12;
    return {pass, fmt("%g samples; |cbar(q,0)|,|cbar(0,p)| <= %.1e; |grad+p| <= %.1e; |hess(q,0)| <= %.1e; ", evaluated,
                      centering, grad_err, hess_err) +
                      fmt("decay ratio in [%.3f, %.3f]; bilinear-cbar residual %.1e", ratio_lo, ratio_hi,
                          bilinear_residual)};
}

Outcome round_trips() {
    double q_err = 0.0, p_err = 0.0, y_err = 0.0;
    long evaluated = 0, skipped = 0;
    const SamplePlan plan;
    for (const auto& spec : cli::default_suite()) {
        const Frame f = frame_for(spec);
        const CheckBoxes boxes = CheckBoxes::defaults(f, plan);
        for (std::uint64_t i = 0; i < kSamples; ++i) {
            Rng rng = Rng::stream(plan.seed, i, 0xC7);
            try {
                const Vec q = boxes.q.uniform(rng), p = boxes.p.uniform(rng);
                q_err = std::max(q_err, (f.q_coord(f.x_of_q(q)) - q).max_abs());
                p_err = std::max(p_err, (f.p_coord(f.y_of_p(p)) - p).max_abs());
                // The three points of a midpoint sample.
                const Vec x = boxes.x.uniform(rng);
                const Vec pm = f.base_gradient(x) - boxes.p_offset.uniform(rng);
                const Vec eta = rng.unit_vector(kDim) * plan.eta_scale;
                for (const Vec& target : {pm - eta, pm, pm + eta}) {
                    const Vec y = f.y_map(x, target);
                    y_err = std::max(y_err, (cost_grad_x(f.normalized_cost(), x, y) - target).norm());
                }
                ++evaluated;
            } catch (const Error&) {
                ++skipped;
            }
        }
    }
    return {q_err <= 1e-10 && p_err <= 1e-10 && y_err <= 1e-12 && skipped * 5 <= evaluated,
            fmt("%g samples (%g skipped); q round trip %.1e, p round trip %.1e (<= 1e-10); ", evaluated, skipped, q_err,
                p_err) +
                fmt("y_map residual %.1e (<= 1e-12)", y_err)};
}

Outcome determinism() {
    const std::string path = (std::filesystem::temp_directory_path() / "otreg_acceptance_det.json").string();
    run_cli({"check", "--cost", "power(p=-1)", "--out", path});
    const std::vector<std::vector<std::string>> commands{
        {"check", "--cost", "riemannian(manifold=hyperbolic)"},
        {"check", "--cost", "sqrt_plus", "--format", "json"},
        {"equiv"},
        {"curvature", "--manifold", "sphere"},
        {"replay", path}};
    bool pass = true;
    int compared = 0;
    for (const auto& args : commands) {
        const std::string a = stable(run_cli(args).report()), b = stable(run_cli(args).report());
        pass &= a == b;
        ++compared;
    }
    std::remove(path.c_str());
    return {pass, std::to_string(compared) + " commands run twice, json identical modulo wall time"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"quadratic exactness", quadratic_exactness},
        {"midpoint/implication equivalence over the suite", theorem_equivalence},
        {"hyperbolic fails, sphere passes at radius 0.4", curvature_sign},
        {"curvature recovery", curvature_recovery},
        {"orthogonal-geodesic inequality", orthogonal_inequality},
        {"frame identities", proof_identities},
        {"transform round trips", round_trips},
        {"determinism", determinism},
    };
    int failed = 0, index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o{false, ""};
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << name << ": " << o.detail << std::endl;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
              << criteria.size() << std::endl;
    return failed ? 1 : 0;
}
