// lab: batch front-end for the exact-arithmetic check suites.
//
// Usage: lab <suite> [--spec f.json] [--p P] [--n N] [--d D] [--e E]
//                    [--gamma G] [--delta D] [--N depth] [--budget B]
//                    [--seed S] [--out dir/]
// Suites: orthogonality | arcs | singular-series | local-density | jets |
//         lattice | shrink | approx | weyl | mor-lines | hodge | all-desk.
// Exit codes: 0 all checks pass, 1 identity failure, 2 invalid input,
//             3 budget refusal.  LAB_THREADS controls within-suite
//             parallelism; report bytes are independent of it.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lab/approx.hpp"
#include "lab/circle.hpp"
#include "lab/hodge.hpp"
#include "lab/io.hpp"
#include "lab/jets.hpp"
#include "lab/lattice.hpp"
#include "lab/report.hpp"
#include "lab/sampling.hpp"

namespace {

using lab::HypersurfaceSpec;
using nlohmann::ordered_json;

struct Options {
    std::string suite;
    std::string spec_path;
    int p = 3, n = 2, d = 2;
    int e = 1;
    int gamma = -1, delta = -1;
    int depth = 3;  // N / Nmax knob
    long long budget = lab::kDefaultBudget;
    unsigned seed = 12345;
    std::string out_dir;
};

HypersurfaceSpec make_spec(const Options& opt) {
    if (!opt.spec_path.empty()) return lab::load_hypersurface(opt.spec_path);
    // default desk instance: diagonal degree-d form with unit coefficients
    return HypersurfaceSpec::diagonal(opt.p, opt.n, opt.d,
                                      std::vector<int>(static_cast<size_t>(opt.n), 1));
}

ordered_json base_params(const Options& opt, const HypersurfaceSpec& f) {
    ordered_json j;
    j["p"] = f.p();
    j["n"] = f.n();
    j["d"] = f.d();
    j["e"] = opt.e;
    return j;
}

void suite_orthogonality(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    auto [lhs, rhs] = lab::orthogonality_check(f, opt.e, opt.budget);
    sink.add("orthogonality", base_params(opt, f), lhs, rhs, lhs == rhs);
}

void suite_arcs(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    int gamma = opt.gamma >= 0 ? opt.gamma : lab::default_gamma(opt.e);
    int delta = opt.delta >= 0 ? opt.delta : lab::default_delta(opt.e);
    lab::MajorMinorReport rep = lab::major_minor_check(f, opt.e, gamma, delta, opt.budget);
    ordered_json params = base_params(opt, f);
    params["gamma"] = gamma;
    params["delta"] = delta;
    for (const auto& [label, card] : rep.cardinalities) params["card " + label] = card;
    ordered_json strata = ordered_json::array();
    for (const auto& [m, ok] : rep.strata) strata.push_back({{"m", m}, {"pass", ok}});
    params["strata"] = strata;
    params["v_count_ok"] = rep.v_count_ok;
    sink.add("arc-reassembly", params, rep.total_lhs, rep.total_rhs, rep.pass);
}

void suite_singular(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    int p = f.p(), n = f.n();
    long long pn1 = 1;
    for (int i = 0; i < n + 1; ++i) pn1 *= p;
    long long s1 = lab::singular_Sm(f, 1, opt.budget);
    long long expect = f.count_affine() * p * p - pn1;
    sink.add("singular-s1", base_params(opt, f), s1, expect, s1 == expect);

    // T-multiplicativity on all coprime monic linear pairs (deg sum 2)
    long long tried = 0, good = 0;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
            lab::FpPoly l1 = lab::FpPoly::monomial(p, 1);
            l1.set_coeff(0, a);
            lab::FpPoly l2 = lab::FpPoly::monomial(p, 1);
            l2.set_coeff(0, b);
            if (!lab::poly_coprime(l1, l2)) continue;
            ++tried;
            if (lab::crt_mult_check(f, l1, l2, opt.budget)) ++good;
        }
    sink.add("singular-t-multiplicative", base_params(opt, f), tried, good, tried == good);

    bool euler = lab::euler_coeff_check(f, 2, opt.budget);
    sink.add("singular-euler-regrouping", base_params(opt, f), 2, euler ? 2 : 0, euler);
}

void suite_density(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    lab::DensityReport rep = lab::density_check(f, opt.depth, opt.budget);
    ordered_json params = base_params(opt, f);
    params["Nmax"] = opt.depth;
    ordered_json lhs = ordered_json::array();
    for (const auto& r : rep.r) lhs.push_back(r.str());
    ordered_json rhs = rep.limit ? ordered_json(rep.limit->str()) : ordered_json(nullptr);
    bool pass = rep.recursion_ok && rep.stabilization_ok && rep.resummation_ok;
    sink.add("local-density", params, lhs, rhs, pass);
}

void suite_jets(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    int depth = std::min(opt.depth, 2);
    bool rec = lab::jet_recursion_check(f, depth, opt.budget);
    ordered_json params = base_params(opt, f);
    params["Nmax"] = depth;
    sink.add("jet-recursion", params, rec, true, rec);
    int gamma = opt.gamma >= 0 ? opt.gamma : lab::default_gamma(opt.e);
    bool vl = lab::V_lambda_check(f, opt.e, gamma, opt.budget);
    ordered_json params2 = base_params(opt, f);
    params2["gamma"] = gamma;
    sink.add("jet-v-lambda", params2, vl, true, vl);
}

void suite_lattice(const Options& opt, const HypersurfaceSpec&, lab::ReportSink& sink) {
    std::mt19937 rng(opt.seed);
    long long tried = 0, good = 0;
    for (int i = 0; i < 5; ++i) {
        int p = i % 2 == 0 ? 3 : 5;
        int n = 1 + i % 3;
        lab::TLattice lat = lab::rand_lattice(p, n, rng);
        lab::ReducedBasis red = lab::reduce(lat);
        ++tried;
        bool ok = true;
        int sigsum = 0;
        for (int s : red.sigma) sigsum += s;
        if (lab::det_deg(lat) != sigsum) ok = false;  // det = 2^{sum sigma}
        int cap = std::max(0, 0 - red.sigma.front()) + 1;
        if (lab::state_count(p, static_cast<long long>(n) * (cap + 1)) <=
            static_cast<double>(opt.budget)) {
            if (lab::nu(red.sigma, 0) != lab::nu_bruteforce(lat, 0, cap, opt.budget)) ok = false;
        }
        std::vector<int> ds = lab::minima(lab::dual(lat));
        for (int k = 0; k < n; ++k)
            if (red.sigma[static_cast<size_t>(k)] != -ds[static_cast<size_t>(n - 1 - k)]) ok = false;
        if (ok) ++good;
    }
    ordered_json params;
    params["instances"] = tried;
    params["seed"] = opt.seed;
    sink.add("lattice-nu-det-dual", params, tried, good, tried == good);
}

void suite_shrink(const Options& opt, const HypersurfaceSpec&, lab::ReportSink& sink) {
    std::mt19937 rng(opt.seed);
    long long tried = 0, good = 0;
    // worked equality case first
    lab::ShrinkInstance worked;
    worked.p = 3;
    worked.n = 1;
    worked.U.assign(1, std::vector<lab::LEntry>(1));
    worked.a = 4;
    worked.b = 1;
    lab::ShrinkResult wr = lab::shrink_check(worked, 1);
    ++tried;
    if (wr.holds && wr.lhs == 4 && wr.rhs == 4) ++good;
    for (int i = 0; i < 10; ++i) {
        lab::ShrinkInstance inst = lab::rand_shrink(rng);
        // literal bound on its reliable region: s <= floor((a-b)/2), a-b even
        int smax = (inst.a - inst.b) % 2 == 0 ? std::max((inst.a - inst.b) / 2, 0) : 0;
        for (int s = 0; s <= smax; ++s) {
            ++tried;
            if (lab::shrink_check(inst, s).holds && lab::shrink_self_dual(inst)) ++good;
        }
        // sound bound everywhere
        for (int s = 0; s <= 2; ++s) {
            ++tried;
            if (lab::shrink_check_sound(inst, s).holds) ++good;
        }
    }
    ordered_json params;
    params["seed"] = opt.seed;
    sink.add("shrink-inequality", params, tried, good, tried == good);
}

void suite_approx(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    std::mt19937 rng(opt.seed);
    int p = f.p();
    long long tried = 0, good = 0;
    for (int i = 0; i < 100; ++i) {
        int m = 1 + i % 6;
        std::vector<int> b = lab::rand_digits(2 * m, p, rng);
        lab::TruncLaurent alpha = lab::TruncLaurent::from_b_coeffs(p, b);
        ++tried;
        auto got = lab::pade(alpha, m, m);
        if (!got) continue;
        // re-verify the contract ord(alpha h2 - h1) < -m
        lab::TruncLaurent diff = alpha * lab::TruncLaurent::from_poly(got->h2) -
                                 lab::TruncLaurent::from_poly(got->h1);
        bool ok = diff.ord_at_most(-m - 1) && lab::poly_coprime(got->h1, got->h2);
        // A_m chain is monotone and full at the Dirichlet threshold
        int mfull = (static_cast<int>(b.size()) + 1) / 2;
        for (int mm = lab::min_Am(b, p); mm <= mfull && ok; ++mm)
            ok = lab::in_Am(b, mm, p);
        if (ok) ++good;
    }
    ordered_json params;
    params["p"] = p;
    params["seed"] = opt.seed;
    sink.add("approx-pade", params, tried, good, tried == good);
}

void suite_weyl(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    int p = f.p(), d = f.d();
    if (p <= d)
        throw lab::InvalidInput("weyl suite: requires p > d (multilinear forms need 1/d!)");
    std::mt19937 rng(opt.seed);
    int E = std::min(opt.depth, 2);
    std::vector<int> b = lab::rand_digits(d * opt.e + 1, p, rng);
    bool mem = lab::weyl_id_check(f, E, b, opt.budget);
    ordered_json params = base_params(opt, f);
    params["E"] = E;
    sink.add("weyl-membership", params, mem, true, mem);
    long long diag = lab::diag_vanish_count(f, E, opt.budget);
    sink.add("weyl-diagonal", params, diag, 1, diag == 1);
    lab::FpPoly h1 = lab::FpPoly::constant(p, 1);
    lab::FpPoly h2 = lab::FpPoly::monomial(p, 1);
    bool shrunk = lab::weyl_vanish_check(f, 2, 1, h1, h2, nullptr, opt.budget);
    sink.add("weyl-shrunk-vanishing", params, shrunk, true, shrunk);
}

void suite_mor_lines(const Options& opt, const HypersurfaceSpec& f, lab::ReportSink& sink) {
    lab::MorLinesReport rep = lab::mor_lines_check(f, opt.e, opt.budget);
    ordered_json params = base_params(opt, f);
    if (rep.lines) params["lines"] = *rep.lines;
    sink.add("mor-lines", params, rep.mor_lhs, rep.mor_rhs, rep.pass);
}

void suite_hodge(const Options& opt, const HypersurfaceSpec&, lab::ReportSink& sink) {
    bool gs = lab::gs_pen_consistency(17) && lab::gs_pen_consistency(20) &&
              lab::gs_pen_consistency(25) && !lab::gs_pen_consistency(17, true);
    ordered_json params;
    params["n"] = {17, 20, 25};
    sink.add("hodge-consistency", params, gs, true, gs);
    auto diag = lab::f1_hodge(25, 3, 42, 42);
    auto off = lab::f1_hodge(25, 3, 43, 42);
    bool f1 = diag && *diag == 1 && off && *off == 0;
    bool bounds = true;
    for (int n = 9; n <= 12 && bounds; ++n)
        for (int e = 1; e <= 3 && bounds; ++e) bounds = lab::bounds_check(n, 2, e);
    for (int n = 33; n <= 34 && bounds; ++n)
        for (int e = 1; e <= 2 && bounds; ++e) bounds = lab::bounds_check(n, 3, e);
    ordered_json params2;
    params2["window"] = "f1_hodge(25,3) + exponent grids";
    sink.add("hodge-lines-window", params2, f1 && bounds, true, f1 && bounds);
}

void run_suite(const std::string& name, const Options& opt, const HypersurfaceSpec& f,
               lab::ReportSink& sink) {
    if (name == "orthogonality") suite_orthogonality(opt, f, sink);
    else if (name == "arcs") suite_arcs(opt, f, sink);
    else if (name == "singular-series") suite_singular(opt, f, sink);
    else if (name == "local-density") suite_density(opt, f, sink);
    else if (name == "jets") suite_jets(opt, f, sink);
    else if (name == "lattice") suite_lattice(opt, f, sink);
    else if (name == "shrink") suite_shrink(opt, f, sink);
    else if (name == "approx") suite_approx(opt, f, sink);
    else if (name == "weyl") suite_weyl(opt, f, sink);
    else if (name == "mor-lines") suite_mor_lines(opt, f, sink);
    else if (name == "hodge") suite_hodge(opt, f, sink);
    else throw lab::InvalidInput("unknown suite: " + name);
}

const std::vector<std::string> kAllSuites = {
    "orthogonality", "arcs", "singular-series", "local-density", "jets", "lattice",
    "shrink", "approx", "weyl", "mor-lines", "hodge"};

int run(const Options& opt) {
    HypersurfaceSpec f = make_spec(opt);
    ordered_json config;
    config["suite"] = opt.suite;
    config["spec"] = lab::hypersurface_to_json(f);
    config["e"] = opt.e;
    config["gamma"] = opt.gamma;
    config["delta"] = opt.delta;
    config["depth"] = opt.depth;
    config["budget"] = opt.budget;
    config["seed"] = opt.seed;
    lab::ReportSink sink(config);
    if (opt.suite == "all-desk") {
        for (const auto& s : kAllSuites) run_suite(s, opt, f, sink);
    } else {
        run_suite(opt.suite, opt, f, sink);
    }
    std::string json_text = sink.json_string(), csv_text = sink.csv_string();
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        std::filesystem::path dir(opt.out_dir);
        std::ofstream((dir / (opt.suite + ".json")).string(), std::ios::binary) << json_text;
        std::ofstream((dir / (opt.suite + ".csv")).string(), std::ios::binary) << csv_text;
    } else {
        std::cout << json_text;
    }
    std::cerr << (sink.all_pass() ? "all checks passed" : "CHECK FAILURES present")
              << " (" << sink.size() << " reports, config " << sink.config_hash() << ")\n";
    return sink.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic laboratory for point-counting identities"};
    app.require_subcommand(1);
    Options opt;
    std::vector<std::string> suites = kAllSuites;
    suites.push_back("all-desk");
    for (const auto& name : suites) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--spec", opt.spec_path, "hypersurface spec JSON file");
        sub->add_option("--p", opt.p, "prime (default diagonal spec only)");
        sub->add_option("--n", opt.n, "number of variables (default spec only)");
        sub->add_option("--d", opt.d, "degree (default spec only)");
        sub->add_option("--e", opt.e, "map degree e");
        sub->add_option("--gamma", opt.gamma, "major-arc depth gamma");
        sub->add_option("--delta", opt.delta, "major-arc start Delta");
        sub->add_option("--N", opt.depth, "depth N / Nmax for density and jets");
        sub->add_option("--budget", opt.budget, "enumeration state budget");
        sub->add_option("--seed", opt.seed, "sampler seed");
        sub->add_option("--out", opt.out_dir, "report output directory");
        sub->callback([&opt, name]() { opt.suite = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        return run(opt);
    } catch (const lab::BudgetExceeded& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const lab::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const lab::IdentityFailure& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
}
