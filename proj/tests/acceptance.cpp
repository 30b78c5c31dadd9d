// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "relmass/graph.hpp"
#include "relmass/heat_kernel.hpp"
#include "relmass/hypercube.hpp"
#include "relmass/lamplighter.hpp"
#include "relmass/monotonicity.hpp"
#include "relmass/monte_carlo.hpp"

using namespace relmass;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Outcome return_probability() {
    double worst = 0.0;
    for (unsigned d = 1; d <= 8; ++d) {
        const auto dec = spectral_decompose(build_hypercube(d));
        for (double t : {0.1, 1.0, 5.0, 25.0})
            worst = std::max(worst, std::abs(hypercube::return_prob(d, t) - transition_prob(dec, 0, 0, t)));
    }
    return {worst <= 1e-10, "max error " + fmt("%.3g", worst) + " (tol 1e-10)"};
}

Outcome c_d_cross_validation() {
    double worst = 0.0;
    for (unsigned d = 1; d <= 30; ++d) {
        const double sd = std::sqrt(static_cast<double>(d));
        for (double t : {0.5, sd, static_cast<double>(d), 4.0 * d}) {
            const double q = hypercube::c_d_quadrature(d, t);
            worst = std::max(worst, std::abs(hypercube::c_d_closed(d, t) - q) / std::max(1.0, q));
        }
    }
    return {worst <= 1e-8, "max relative error " + fmt("%.3g", worst) + " (tol 1e-8)"};
}

Outcome figure1_witnesses() {
    const auto grid = hypercube::default_grid();
    bool ok = true;
    std::string detail;
    for (unsigned d : {5u, 6u, 7u}) {
        const auto w = hypercube::find_witness(d, grid, 1e-3);
        ok = ok && w && w->margin() >= 1e-3;
        detail += "d=" + std::to_string(d) + (w ? " margin " + fmt("%.4f", w->margin()) : " none") + "; ";
    }
    const bool four = !hypercube::find_witness(4, grid, 1e-3).has_value();
    detail += four ? "d=4 none" : "d=4 UNEXPECTED witness";
    return {ok && four, detail};
}

Outcome lemma_bounds() {
    bool ok = true;
    double tightest_upper = 0.0;
    for (unsigned d : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
        const auto r = hypercube::lemma_bounds_check(d);
        ok = ok && r.lower_holds && r.upper_holds && r.upper_sharp_holds;
        tightest_upper = std::max(tightest_upper, r.c_at_d);
    }
    const double sharp = 2.0 / hypercube::lemma_constant();
    ok = ok && std::abs(sharp - 5.6827) <= 1e-4;
    return {ok, "max C_d(d) " + fmt("%.4f", tightest_upper) + ", 2/c = " + fmt("%.6f", sharp)};
}

Outcome claim_exact() {
    bool ok = true;
    double worst_ratio = 0.0, lowest = INFINITY;
    for (unsigned d : {2u, 3u})
        for (double eps : {1e-2, 1e-3}) {
            const lamplighter::ExplicitLamplighter model({d, eps});
            for (double t : {0.5, 1.0, 2.0, 4.0}) {
                const auto r = model.verify_claim(t);
                for (double res : {r.residual_uu, r.residual_uv}) {
                    ok = ok && res >= -1e-12 && res <= eps * eps * t * t;
                    worst_ratio = std::max(worst_ratio, res / (eps * eps * t * t));
                    lowest = std::min(lowest, res);
                }
            }
        }
    return {ok, "max residual / (eps t)^2 = " + fmt("%.4f", worst_ratio) + ", min residual " + fmt("%.3g", lowest)};
}

Outcome theorem_demo() {
    const auto w = hypercube::find_witness(5, hypercube::default_grid(), 1e-3);
    if (!w) return {false, "no d=5 witness"};
    const auto r = mc::theorem_demo(5, 1e-3, w->t1, w->t2, {4000000, 1, 64, 0});
    const bool ok = r.c_t1.mean > r.c_t2.mean && r.supported && r.t1_agrees && r.t2_agrees;
    return {ok, r.verdict() + "; C(t1) " + fmt("%.5f", r.c_t1.mean) + " vs " + fmt("%.5f", r.quad_t1) +
                    ", C(t2) " + fmt("%.5f", r.c_t2.mean) + " vs " + fmt("%.5f", r.quad_t2) +
                    (r.t1_agrees && r.t2_agrees ? " (both within 3 se)" : " (DISAGREE)")};
}

Outcome appendix() {
    using namespace pyramid_cube;
    const auto g = build_pyramid_cube();
    const auto dec = spectral_decompose(g);
    const double lambda2 = dec.eigenvalue(1);
    const double c = 3.0 - (7.0 - std::sqrt(17.0)) / 2.0;
    const std::vector<double> stated{c, 1, 1, 1, 1, -1, -1, -1, -1, -c};
    const double proj = lab::eigenspace_projection_norm(dec, 1, stated);
    const auto hit = lab::find_r_exceeds_one(dec, top_face, apex_top, lab::default_scan_grid());
    const double peak = hit ? relative_mass(dec, top_face, apex_top, hit->peak_time) : 0.0;
    const double late = relative_mass(dec, top_face, apex_top, 20.0 / lambda2);
    const bool ok = std::abs(lambda2 - (7.0 - std::sqrt(17.0)) / 8.0) <= 1e-10 &&
                    dec.eigenvalue(2) - lambda2 >= 1e-3 && proj >= 1.0 - 1e-8 && hit && peak > 1.0 + 1e-6 &&
                    std::abs(late - 1.0) <= 1e-6;
    return {ok, "lambda2 " + fmt("%.10f", lambda2) + ", projection " + fmt("%.12f", proj) + ", max r " +
                    fmt("%.6f", peak) + ", |r(20/lambda2) - 1| " + fmt("%.3g", std::abs(late - 1.0))};
}

Outcome heat_kernel_invariants() {
    struct Case {
        WeightedGraph g;
        bool transitive;
    };
    std::vector<Case> cases{{build_hypercube(3), true},
                            {build_cycle(6), true},
                            {build_pyramid_cube(), false},
                            {lamplighter::build_lamplighter({2, 1e-3}), true}};
    double stoch = 0.0, semigroup = 0.0, neg = 0.0, excess = 0.0;
    bool symmetric = true;
    for (const auto& c : cases) {
        const auto dec = spectral_decompose(c.g);
        const std::size_t n = c.g.vertex_count();
        for (double t : {0.1, 1.0, 10.0}) {
            for (Vertex u = 0; u < n; ++u) {
                double row = 0.0;
                for (Vertex v = 0; v < n; ++v) {
                    const double p = transition_prob(dec, u, v, t);
                    row += p;
                    symmetric = symmetric && p == transition_prob(dec, v, u, t);
                    neg = std::min(neg, p);
                    if (c.transitive) excess = std::max(excess, p - transition_prob(dec, u, u, t));
                }
                stoch = std::max(stoch, std::abs(row - 1.0));
            }
        }
        for (auto [s, t] : {std::pair{0.3, 0.7}, std::pair{1.0, 2.0}})
            semigroup = std::max(semigroup, max_abs_diff(dec.heat_matrix(s + t),
                                                         multiply(dec.heat_matrix(s), dec.heat_matrix(t))));
        if (c.transitive)
            for (double t : linear_grid(0.01, 40.0, 100))
                for (Vertex v = 0; v < n; ++v) excess = std::max(excess, relative_mass(dec, 0, v, t) - 1.0);
    }
    const bool ok = stoch <= 1e-10 && symmetric && semigroup <= 1e-10 && neg > -1e-12 && excess <= 1e-12;
    return {ok, "stochasticity " + fmt("%.2g", stoch) + ", semigroup " + fmt("%.2g", semigroup) + ", min p " +
                    fmt("%.2g", neg) + ", transitive excess " + fmt("%.2g", excess) +
                    (symmetric ? ", symmetric" : ", ASYMMETRIC")};
}

Outcome blowup() {
    const WeightedGeneratorSet gens{{1, 2.0}, {5, 2.0}, {2, 1.0}, {4, 1.0}};
    const std::vector<std::size_t> sizes{16, 32, 64};
    const auto rows = lab::blowup_convergence(GroupTable::cyclic(6), gens, 0, 1, sizes, linear_grid(0.0, 5.0, 101));
    bool ok = rows.size() == 3;
    std::string detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ok = ok && rows[i].degree == rows[i].clique_size + 5 && rows[i].regular;
        if (i > 0) ok = ok && rows[i].sup_r_dev < rows[i - 1].sup_r_dev && rows[i].sup_p_dev < rows[i - 1].sup_p_dev;
        detail += "N=" + std::to_string(rows[i].clique_size) + " deg " + std::to_string(rows[i].degree) + " r " +
                  fmt("%.4f", rows[i].sup_r_dev) + " p " + fmt("%.5f", rows[i].sup_p_dev) + "; ";
    }
    return {ok, detail};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome reproducibility() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "relmass_acceptance";
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> runs{
        {"mc c-d --d 5 --t 6.4 --samples 200000 --chunks 32 --seed 7", "mc_c_d.csv"},
        {"mc theorem --d 5 --samples 200000 --chunks 16 --seed 3", "mc_theorem.csv"},
        {"mc puv --d 3 --eps 0.01 --t 2 --samples 200000 --chunks 8 --seed 11", "mc_puv.csv"}};
    bool ok = true;
    int compared = 0;
    for (const auto& [args, file] : runs) {
        std::string bytes[2];
        for (int k = 0; k < 2; ++k) {
            fs::remove(dir / file);
            // Exit 2 (no support) still counts as a completed run.
            const std::string cmd = "cd '" + dir.string() + "' && '" RELMASS_CLI "' " + args +
                                    (k ? " --threads 1" : "") + " > /dev/null 2>&1";
            const int status = std::system(cmd.c_str());
            if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) == 1) ok = false;
            bytes[k] = slurp(dir / file);
        }
        // The header records --threads; compare the first line against the invocation and the rest byte for byte.
        const auto body = [](const std::string& s) { return s.substr(std::min(s.size(), s.find('\n'))); };
        ok = ok && !bytes[0].empty() && bytes[0].rfind("# relmass " + args + "\n", 0) == 0 &&
             body(bytes[0]) == body(bytes[1]);
        fs::remove(dir / file);
        const std::string rerun = "cd '" + dir.string() + "' && '" RELMASS_CLI "' " + args + " > /dev/null 2>&1";
        ok = ok && std::system(rerun.c_str()) != -1 && slurp(dir / file) == bytes[0];
        ++compared;
    }
    return {ok, std::to_string(compared) + " mc commands re-run; identical bytes across reruns and thread counts"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
        double budget_s;
    };
    const std::vector<Criterion> criteria{
        {1, "hypercube return probability", return_probability, 10.0},
        {2, "C_d closed form vs quadrature", c_d_cross_validation, 0.0},
        {3, "non-monotonicity witnesses d = 5, 6, 7; none at d = 4", figure1_witnesses, 30.0},
        {4, "lemma bounds", lemma_bounds, 0.0},
        {5, "exact lamplighter expansion residuals", claim_exact, 300.0},
        {6, "Monte Carlo demonstration at d = 5", theorem_demo, 600.0},
        {7, "pyramid-cube counterexample", appendix, 0.0},
        {8, "heat-kernel invariants", heat_kernel_invariants, 0.0},
        {9, "clique blowup convergence", blowup, 0.0},
        {10, "Monte Carlo reproducibility", reproducibility, 0.0},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += " [over time budget " + fmt("%.0f", c.budget_s) + " s]";
        }
        failed += !o.pass;
        std::printf("%s %2d  %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
