#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relmass/csv.hpp"
#include "relmass/error.hpp"
#include "relmass/graph.hpp"
#include "relmass/heat_kernel.hpp"
#include "relmass/hypercube.hpp"
#include "relmass/lamplighter.hpp"
#include "relmass/monotonicity.hpp"
#include "relmass/monte_carlo.hpp"

using namespace relmass;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitError = 1;
constexpr int kExitNone = 2;

std::string g_invocation;

std::string quote(const std::string& arg) {
    if (!arg.empty() && arg.find_first_of(" \t\"'\\$") == std::string::npos) return arg;
    std::string out = "'";
    for (char ch : arg) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
    return out + "'";
}

std::string invocation(int argc, char** argv) {
    std::string s = "relmass";
    for (int i = 1; i < argc; ++i) s += " " + quote(argv[i]);
    return s;
}

// Opens out_dir/name in binary mode (LF endings) and writes the header.
std::ofstream open_csv(const std::string& out_dir, const std::string& name, const std::string& extra = {}) {
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    csv::write_comment(out, g_invocation);
    if (!extra.empty()) csv::write_comment(out, extra);
    return out;
}

void close_csv(std::ofstream& out, const std::string& out_dir, const std::string& name) {
    out.close();
    if (!out) throw std::runtime_error("write failed: " + (fs::path(out_dir) / name).string());
    std::cout << "wrote " << (fs::path(out_dir) / name).string() << "\n";
}

std::string f(double x) { return csv::format(x); }

std::vector<double> grid_from(double t_max, double step) {
    if (!(t_max > 0.0) || !(step > 0.0) || step > t_max)
        throw ValidationError("grid: need 0 < step <= t-max");
    return stepped_grid(0.0, t_max, step);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
    return parts;
}

unsigned to_unsigned(const std::string& s) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw ValidationError("not an integer: " + s);
    return static_cast<unsigned>(v);
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError("not a number: " + s);
    return v;
}

// "g:w,g:w,..." over Z_n.
WeightedGeneratorSet parse_generators(const std::string& spec) {
    WeightedGeneratorSet gens;
    for (const auto& item : split(spec, ',')) {
        const auto kv = split(item, ':');
        if (kv.size() != 2) throw ValidationError("generator must be element:weight, got '" + item + "'");
        gens.push_back({to_unsigned(kv[0]), to_double(kv[1])});
    }
    return gens;
}

// hypercube:D | cycle:N | complete:N | pyramid | lamplighter:D:EPS |
// cayley:N:g:w,g:w,... | file:PATH
WeightedGraph parse_graph(const std::string& spec) {
    const auto head = spec.substr(0, spec.find(':'));
    const std::string rest = spec.find(':') == std::string::npos ? "" : spec.substr(spec.find(':') + 1);
    if (head == "hypercube") return build_hypercube(to_unsigned(rest));
    if (head == "cycle") return build_cycle(to_unsigned(rest));
    if (head == "complete") return build_complete(to_unsigned(rest));
    if (head == "pyramid") return build_pyramid_cube();
    if (head == "lamplighter") {
        const auto p = split(rest, ':');
        if (p.size() != 2) throw ValidationError("lamplighter spec is lamplighter:D:EPS");
        return lamplighter::build_lamplighter({to_unsigned(p[0]), to_double(p[1])});
    }
    if (head == "cayley") {
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw ValidationError("cayley spec is cayley:N:g:w,...");
        return build_cayley(GroupTable::cyclic(to_unsigned(rest.substr(0, colon))),
                            parse_generators(rest.substr(colon + 1)));
    }
    if (head == "file") {
        std::ifstream in(rest);
        if (!in) throw std::runtime_error("cannot open " + rest);
        return read_edge_list(in);
    }
    throw ValidationError("unknown graph spec '" + spec + "'");
}

// ---------------------------------------------------------------------------

struct Figure1Opts {
    std::vector<unsigned> dims{4, 5, 6, 7};
    double t_max = 30.0;
    double step = 0.05;
    std::string out_dir = ".";
};

int cmd_figure1(const Figure1Opts& o) {
    if (o.dims.empty()) throw ValidationError("figure1: no dimensions");
    for (unsigned d : o.dims)
        if (d < 1 || d > hypercube::kClosedFormMaxDim) throw ValidationError("figure1: d must lie in [1, 40]");
    const auto grid = grid_from(o.t_max, o.step);
    auto out = open_csv(o.out_dir, "figure1.csv");
    std::vector<std::string> header{"t"};
    for (unsigned d : o.dims) header.push_back("c" + std::to_string(d));
    csv::write_row(out, header);
    for (double t : grid) {
        std::vector<std::string> row{f(t)};
        for (unsigned d : o.dims) row.push_back(f(hypercube::c_d(d, t)));
        csv::write_row(out, row);
    }
    close_csv(out, o.out_dir, "figure1.csv");
    return kExitFound;
}

struct WitnessOpts {
    unsigned d = 5;
    double margin = 1e-3;
};

int cmd_witness(const WitnessOpts& o) {
    const auto w = hypercube::find_witness(o.d, hypercube::default_grid(), o.margin);
    if (!w) {
        std::cout << "d=" << o.d << ": no witness with margin " << f(o.margin) << " on [0, 30]\n";
        return kExitNone;
    }
    std::cout << "d=" << o.d << "\n"
              << "t1=" << f(w->t1) << " C(t1)=" << f(w->c_t1) << "\n"
              << "t2=" << f(w->t2) << " C(t2)=" << f(w->c_t2) << "\n"
              << "margin=" << f(w->margin()) << "\n";
    return kExitFound;
}

struct AppendixOpts {
    double t_max = 40.0;
    double step = 0.05;
    std::string out_dir = ".";
};

int cmd_appendix(const AppendixOpts& o) {
    using namespace pyramid_cube;
    const auto g = build_pyramid_cube();
    const auto dec = spectral_decompose(g);
    const auto rep = lab::proposition_check(g, dec, top_face, apex_top);
    const double c = rep.f2[apex_top] / rep.f2[top_face];
    const double c_exact = 3.0 - (7.0 - std::sqrt(17.0)) / 2.0;
    const std::vector<double> stated{c_exact, 1, 1, 1, 1, -1, -1, -1, -1, -c_exact};

    std::cout << "lambda2=" << f(rep.lambda2) << " expected (7-sqrt(17))/8=" << f((7.0 - std::sqrt(17.0)) / 8.0)
              << "\n"
              << "lambda3=" << f(rep.lambda3) << " simple=" << (rep.simple ? "yes" : "no") << "\n"
              << "c=f2(apex)/f2(face)=" << f(c) << " expected 3-(7-sqrt(17))/2=" << f(c_exact) << "\n"
              << "projection of stated vector onto lambda2 eigenspace=" << f(lab::eigenspace_projection_norm(dec, 1, stated))
              << "\n"
              << "hypotheses " << (rep.hypotheses_hold ? "hold" : "fail") << " for u=" << g.label(top_face)
              << " v=" << g.label(apex_top) << "\n";

    const auto hit = lab::find_r_exceeds_one(dec, top_face, apex_top, lab::default_scan_grid());
    if (hit)
        std::cout << "r > 1 from t=" << f(hit->crossing) << "; peak r=" << f(hit->peak_value)
                  << " at t=" << f(hit->peak_time) << "\n";
    else
        std::cout << "r never exceeds 1 on the scan grid\n";
    std::cout << "r(20/lambda2)=" << f(relative_mass(dec, top_face, apex_top, 20.0 / rep.lambda2)) << "\n";

    const auto grid = grid_from(o.t_max, o.step);
    auto out = open_csv(o.out_dir, "appendix_r.csv", "r_{u,v}(t), u=" + g.label(top_face) + ", v=" + g.label(apex_top));
    write_curve_csv(out, sample_curve(dec, top_face, apex_top, grid));
    close_csv(out, o.out_dir, "appendix_r.csv");
    return hit ? kExitFound : kExitNone;
}

struct ClaimOpts {
    unsigned d = 2;
    double epsilon = 1e-3;
    std::vector<double> times{0.5, 1.0, 2.0, 4.0};
    std::string out_dir = ".";
};

int cmd_verify_claim(const ClaimOpts& o) {
    if (o.times.empty()) throw ValidationError("verify-claim: no times");
    for (double t : o.times)
        if (!(t > 0.0)) throw DomainError("verify-claim: times must be positive");
    lamplighter::ExplicitLamplighter model({o.d, o.epsilon});
    auto out = open_csv(o.out_dir, "verify_claim.csv");
    csv::write_row(out, {"d", "epsilon", "t", "puu", "puv", "residual_uu", "residual_uv", "bound"});
    bool all = true;
    for (double t : o.times) {
        const auto r = model.verify_claim(t);
        all = all && r.uu_holds && r.uv_holds;
        csv::write_row(out, {std::to_string(r.d), f(r.epsilon), f(r.t), f(r.puu), f(r.puv), f(r.residual_uu),
                             f(r.residual_uv), f(r.bound)});
        std::cout << "t=" << f(t) << " residual_uu=" << f(r.residual_uu) << " residual_uv=" << f(r.residual_uv)
                  << " bound=" << f(r.bound) << (r.uu_holds && r.uv_holds ? " ok" : " VIOLATED") << "\n";
    }
    close_csv(out, o.out_dir, "verify_claim.csv");
    return all ? kExitFound : kExitNone;
}

struct McOpts {
    unsigned d = 5;
    double epsilon = 1e-3;
    double t = 1.0;
    double t1 = 0.0, t2 = 0.0;
    mc::McConfig config;
    std::string out_dir = ".";
};

void write_mc_header(std::ostream& out) {
    csv::write_row(out, {"quantity", "d", "epsilon", "t", "estimate", "stderr", "n", "n_conditioned", "seed", "chunks"});
}

void write_mc_row(std::ostream& out, const std::string& quantity, unsigned d, const std::string& epsilon, double t,
                  const mc::McEstimate& e) {
    csv::write_row(out, {quantity, std::to_string(d), epsilon, f(t), f(e.mean), f(e.std_error), std::to_string(e.n),
                         std::to_string(e.n_conditioned), std::to_string(e.seed), std::to_string(e.chunks)});
}

void warn_yield(unsigned d, double t, const mc::McConfig& c) {
    if (hypercube::return_prob(d, t) * static_cast<double>(c.samples) < 100.0)
        std::cerr << "warning: expected conditioned samples below 100 at t=" << f(t) << "\n";
}

int cmd_mc_c_d(const McOpts& o) {
    mc::validate(o.config);
    warn_yield(o.d, o.t, o.config);
    const auto e = mc::estimate_c_d(o.d, o.t, o.config);
    auto out = open_csv(o.out_dir, "mc_c_d.csv");
    write_mc_header(out);
    write_mc_row(out, "c_d", o.d, "", o.t, e);
    std::cout << "C_" << o.d << "(" << f(o.t) << ") = " << f(e.mean) << " +- " << f(e.std_error)
              << " (quadrature " << f(hypercube::c_d(o.d, o.t)) << ")\n";
    close_csv(out, o.out_dir, "mc_c_d.csv");
    return kExitFound;
}

int cmd_mc_theorem(const McOpts& o) {
    mc::validate(o.config);
    double t1 = o.t1, t2 = o.t2;
    if (t1 == 0.0 && t2 == 0.0) {
        const auto w = hypercube::find_witness(o.d, hypercube::default_grid(), 1e-3);
        if (!w) {
            std::cout << "d=" << o.d << ": no witness on the default grid; pass --t1 and --t2\n";
            return kExitNone;
        }
        t1 = w->t1;
        t2 = w->t2;
    }
    warn_yield(o.d, t1, o.config);
    warn_yield(o.d, t2, o.config);
    const auto r = mc::theorem_demo(o.d, o.epsilon, t1, t2, o.config);
    auto out = open_csv(o.out_dir, "mc_theorem.csv");
    write_mc_header(out);
    write_mc_row(out, "c_d", o.d, f(o.epsilon), t1, r.c_t1);
    write_mc_row(out, "c_d", o.d, f(o.epsilon), t2, r.c_t2);
    std::cout << "t1=" << f(t1) << " C=" << f(r.c_t1.mean) << " +- " << f(r.c_t1.std_error) << " quadrature "
              << f(r.quad_t1) << (r.t1_agrees ? " (agrees)" : " (DISAGREES)") << "\n"
              << "t2=" << f(t2) << " C=" << f(r.c_t2.mean) << " +- " << f(r.c_t2.std_error) << " quadrature "
              << f(r.quad_t2) << (r.t2_agrees ? " (agrees)" : " (DISAGREES)") << "\n"
              << "eps*C(t1) - eps*C(t2) = " << f(r.gap) << " +- " << f(r.gap_std_error) << "\n"
              << r.verdict() << "\n";
    close_csv(out, o.out_dir, "mc_theorem.csv");
    return r.supported ? kExitFound : kExitNone;
}

int cmd_mc_puv(const McOpts& o) {
    mc::validate(o.config);
    std::cerr << "note: p_uv is O(eps); direct estimation needs many samples for a useful relative error\n";
    const auto e = mc::estimate_lamplighter_prob(o.d, o.epsilon, o.t, {0, {0}}, o.config);
    auto out = open_csv(o.out_dir, "mc_puv.csv");
    write_mc_header(out);
    write_mc_row(out, "puv", o.d, f(o.epsilon), o.t, e);
    std::cout << "p_uv(" << f(o.t) << ") = " << f(e.mean) << " +- " << f(e.std_error) << "\n";
    close_csv(out, o.out_dir, "mc_puv.csv");
    return kExitFound;
}

struct BlowupOpts {
    unsigned order = 6;
    std::string gens = "1:2,5:2,2:1,4:1";
    unsigned u = 0, v = 1;
    std::vector<std::size_t> sizes{16, 32, 64};
    double t_max = 5.0;
    double step = 0.05;
    std::string out_dir = ".";
};

int cmd_blowup(const BlowupOpts& o) {
    const auto grid = grid_from(o.t_max, o.step);
    const auto rows =
        lab::blowup_convergence(GroupTable::cyclic(o.order), parse_generators(o.gens), o.u, o.v, o.sizes, grid);
    auto out = open_csv(o.out_dir, "blowup.csv");
    csv::write_row(out, {"N", "deg", "sup_r_dev", "sup_p_dev"});
    for (const auto& r : rows) {
        if (!r.regular) throw NumericalError("blowup: H is not regular");
        csv::write_row(out, {std::to_string(r.clique_size), std::to_string(r.degree), f(r.sup_r_dev), f(r.sup_p_dev)});
        std::cout << "N=" << r.clique_size << " deg=" << r.degree << " sup_r_dev=" << f(r.sup_r_dev)
                  << " sup_p_dev=" << f(r.sup_p_dev) << "\n";
    }
    close_csv(out, o.out_dir, "blowup.csv");
    return kExitFound;
}

struct ScanOpts {
    std::string graph;
    unsigned u = 0, v = 1;
    double margin = 1e-6;
    std::string out_dir = ".";
};

int cmd_scan(const ScanOpts& o) {
    const auto g = parse_graph(o.graph);
    if (o.u >= g.vertex_count() || o.v >= g.vertex_count()) throw ValidationError("scan: vertex out of range");
    const auto dec = spectral_decompose(g);
    const auto grid = lab::default_scan_grid();
    auto out = open_csv(o.out_dir, "scan.csv", "graph " + g.provenance());
    write_curve_csv(out, sample_curve(dec, o.u, o.v, grid));
    close_csv(out, o.out_dir, "scan.csv");

    if (const auto hit = lab::find_r_exceeds_one(dec, o.u, o.v, grid))
        std::cout << "r exceeds 1: peak " << f(hit->peak_value) << " at t=" << f(hit->peak_time) << "\n";
    const auto w = lab::monotonicity_scan(dec, o.u, o.v, grid, o.margin);
    if (!w) {
        std::cout << "no decreasing pair with margin " << f(o.margin) << " on (0, 200]\n";
        return kExitNone;
    }
    std::cout << "t1=" << f(w->t1) << " r=" << f(w->r1) << "\n"
              << "t2=" << f(w->t2) << " r=" << f(w->r2) << "\n"
              << "margin=" << f(w->margin()) << "\n";
    return kExitFound;
}

void add_mc_flags(CLI::App* sub, McOpts& o) {
    sub->add_option("--seed", o.config.seed, "base seed")->capture_default_str();
    sub->add_option("--samples", o.config.samples, "paths per estimate")->capture_default_str();
    sub->add_option("--chunks", o.config.chunks, "independent RNG chunks")->capture_default_str();
    sub->add_option("--threads", o.config.threads, "worker threads, 0 for all cores")->capture_default_str();
    sub->add_option("--out-dir", o.out_dir)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    g_invocation = invocation(argc, argv);

    CLI::App app{"relative mass of continuous-time random walks"};
    app.require_subcommand(1);
    int rc = kExitError;

    Figure1Opts fig;
    auto* s_fig = app.add_subcommand("figure1", "C_d(t) curves to figure1.csv");
    s_fig->add_option("--d", fig.dims, "dimensions")->delimiter(',')->capture_default_str();
    s_fig->add_option("--t-max", fig.t_max)->capture_default_str();
    s_fig->add_option("--step", fig.step)->capture_default_str();
    s_fig->add_option("--out-dir", fig.out_dir)->capture_default_str();
    s_fig->callback([&] { rc = cmd_figure1(fig); });

    WitnessOpts wit;
    auto* s_wit = app.add_subcommand("witness", "search for t1 < t2 with C_d(t1) > C_d(t2)");
    s_wit->add_option("--d", wit.d)->capture_default_str();
    s_wit->add_option("--margin", wit.margin)->capture_default_str();
    s_wit->callback([&] { rc = cmd_witness(wit); });

    AppendixOpts app_o;
    auto* s_app = app.add_subcommand("appendix", "pyramid-cube counterexample report and r curve");
    s_app->add_option("--t-max", app_o.t_max)->capture_default_str();
    s_app->add_option("--step", app_o.step)->capture_default_str();
    s_app->add_option("--out-dir", app_o.out_dir)->capture_default_str();
    s_app->callback([&] { rc = cmd_appendix(app_o); });

    ClaimOpts claim;
    auto* s_claim = app.add_subcommand("verify-claim", "exact lamplighter p_uu, p_uv against the expansion");
    s_claim->add_option("--d", claim.d)->capture_default_str();
    s_claim->add_option("--eps", claim.epsilon)->capture_default_str();
    s_claim->add_option("--t", claim.times)->delimiter(',')->capture_default_str();
    s_claim->add_option("--out-dir", claim.out_dir)->capture_default_str();
    s_claim->callback([&] { rc = cmd_verify_claim(claim); });

    McOpts mco;
    auto* s_mc = app.add_subcommand("mc", "Monte Carlo estimates");
    s_mc->require_subcommand(1);
    auto* s_cd = s_mc->add_subcommand("c-d", "C_d(t) by conditioned simulation");
    s_cd->add_option("--d", mco.d)->capture_default_str();
    s_cd->add_option("--t", mco.t)->capture_default_str();
    add_mc_flags(s_cd, mco);
    s_cd->callback([&] { rc = cmd_mc_c_d(mco); });
    auto* s_th = s_mc->add_subcommand("theorem", "eps*C_d(t1) > eps*C_d(t2) with standard errors");
    s_th->add_option("--d", mco.d)->capture_default_str();
    s_th->add_option("--eps", mco.epsilon)->capture_default_str();
    s_th->add_option("--t1", mco.t1, "defaults to the witness search");
    s_th->add_option("--t2", mco.t2, "defaults to the witness search");
    add_mc_flags(s_th, mco);
    s_th->callback([&] { rc = cmd_mc_theorem(mco); });
    auto* s_puv = s_mc->add_subcommand("puv", "lamplighter p_uv(t) by direct simulation");
    s_puv->add_option("--d", mco.d)->capture_default_str();
    s_puv->add_option("--eps", mco.epsilon)->capture_default_str();
    s_puv->add_option("--t", mco.t)->capture_default_str();
    add_mc_flags(s_puv, mco);
    s_puv->callback([&] { rc = cmd_mc_puv(mco); });

    BlowupOpts blow;
    auto* s_blow = app.add_subcommand("blowup", "clique blowup of a Cayley graph of Z_n");
    s_blow->add_option("--order", blow.order, "n in Z_n")->capture_default_str();
    s_blow->add_option("--gens", blow.gens, "element:weight,...")->capture_default_str();
    s_blow->add_option("--u", blow.u)->capture_default_str();
    s_blow->add_option("--v", blow.v)->capture_default_str();
    s_blow->add_option("--sizes", blow.sizes, "clique sizes N")->delimiter(',')->capture_default_str();
    s_blow->add_option("--t-max", blow.t_max)->capture_default_str();
    s_blow->add_option("--step", blow.step)->capture_default_str();
    s_blow->add_option("--out-dir", blow.out_dir)->capture_default_str();
    s_blow->callback([&] { rc = cmd_blowup(blow); });

    ScanOpts scan;
    auto* s_scan = app.add_subcommand("scan", "monotonicity scan of r_{u,v} on a graph");
    s_scan->add_option("--graph", scan.graph,
                       "hypercube:D | cycle:N | complete:N | pyramid | lamplighter:D:EPS | cayley:N:g:w,... | file:PATH")
        ->required();
    s_scan->add_option("--u", scan.u)->capture_default_str();
    s_scan->add_option("--v", scan.v)->capture_default_str();
    s_scan->add_option("--margin", scan.margin)->capture_default_str();
    s_scan->add_option("--out-dir", scan.out_dir)->capture_default_str();
    s_scan->callback([&] { rc = cmd_scan(scan); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return rc;
}
