// gfc: command-line front end for the exact Gelfand-Fuks cohomology engine.
// Every command prints one JSON document {command, params, payload, meta};
// --pretty switches to a plain-text rendering. Exit codes: 0 success,
// 1 verification failure, 2 invalid input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gf/betti.hpp>
#include <gf/circle.hpp>
#include <gf/cohomology.hpp>
#include <gf/error.hpp>
#include <gf/invariants.hpp>
#include <gf/koszul.hpp>
#include <gf/spectral_sequence.hpp>
#include <gf/version.hpp>

namespace {

using nlohmann::json;

json betti_to_json(const gf::BettiTable& betti, bool keep_zeros = false) {
    json out = json::object();
    for (const auto& [k, d] : (keep_zeros ? betti : betti.nonzero()).dims)
        out[std::to_string(k)] = d;
    return out;
}

json grid_to_json(const gf::E2Grid& grid) {
    json out = json::array();
    for (const auto& [key, dim] : grid.entries)
        if (dim != 0) out.push_back({{"p", key.first}, {"q", key.second}, {"dim", dim}});
    return out;
}

struct CommandResult {
    json payload;
    bool verified = true; // false -> exit 1
};

void render_betti_pretty(std::ostream& os, const std::string& title, const json& betti) {
    os << title << "\n  degree | dim\n";
    for (const auto& [k, v] : betti.items()) os << "  " << k << " | " << v << "\n";
}

void require_range(int value, int lo, int hi, const std::string& name) {
    if (value < lo || value > hi)
        throw gf::InvalidInputError(name + " must lie in [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
}

// brute-force degree reachable in seconds; the full nontrivial range for
// n <= 2, conservative beyond (W_3 degree 5 and W_4 degree 4 already reach
// five-digit monomial counts)
int default_brute_kmax(int n) {
    switch (n) {
        case 1: return 4;
        case 2: return 8;
        case 3: return 4;
        default: return 2;
    }
}

CommandResult cmd_wn_betti(int n) {
    require_range(n, 1, 4, "--n");
    CommandResult result;
    result.payload["betti"] = betti_to_json(gf::wn_betti(n));
    json poly = json::array();
    for (auto c : gf::poincare_polynomial(n)) poly.push_back(c);
    result.payload["poincare"] = poly;
    return result;
}

CommandResult cmd_brute(int n, int kmax, int weight, bool parallel) {
    require_range(n, 1, 4, "--n");
    require_range(kmax, 0, 10, "--kmax");
    require_range(weight, -6, 6, "--weight");
    CommandResult result;
    result.payload["betti"] =
        betti_to_json(gf::wn_weight_cohomology(n, weight, kmax, parallel), true);
    return result;
}

CommandResult cmd_crosscheck(int n, int kmax, bool parallel) {
    require_range(n, 1, 4, "--n");
    require_range(kmax, 0, 10, "--kmax");
    gf::BettiTable ss = gf::wn_betti(n);
    gf::BettiTable brute = gf::wn_weight_cohomology(n, 0, kmax, parallel);
    json diff = json::array();
    for (int k = 0; k <= kmax; ++k)
        if (ss.at(k) != brute.at(k))
            diff.push_back({{"degree", k}, {"spectral", ss.at(k)}, {"brute", brute.at(k)}});
    CommandResult result;
    result.payload["spectral"] = betti_to_json(ss);
    result.payload["brute"] = betti_to_json(brute, true);
    result.payload["diff"] = diff;
    result.verified = diff.empty();
    return result;
}

CommandResult cmd_koszul(int n, int kmax) {
    require_range(n, 1, 2, "--n");
    require_range(kmax, 1, 10, "--kmax");
    gf::KoszulReport report = gf::koszul_check(n, kmax);
    json slots = json::array();
    for (const auto& s : report.slots)
        slots.push_back({{"degree", s.degree},
                         {"position", s.position},
                         {"dim", s.dim},
                         {"image_rank", s.image_rank},
                         {"kernel_dim", s.kernel_dim},
                         {"exact", s.exact}});
    CommandResult result;
    result.payload["exact"] = report.exact;
    result.payload["subcomplex_ok"] = report.subcomplex_ok;
    result.payload["quotient_surjective"] = report.quotient_surjective;
    result.payload["slots"] = slots;
    result.verified = report.exact && report.subcomplex_ok;
    return result;
}

CommandResult cmd_invariants(int n, int rmax) {
    require_range(n, 1, 3, "--n");
    require_range(rmax, 1, 4, "--r");
    CommandResult result;
    json dims = json::object();
    for (int r = 1; r <= rmax; ++r) {
        auto spec = std::vector<gf::ModuleFactor>{gf::ModuleFactor::lambda_g(-1, r),
                                                  gf::ModuleFactor::lambda_g(1, r)};
        dims[std::to_string(r)] = gf::invariant_dim(n, spec);
    }
    result.payload["invariant_dims"] = dims;
    result.payload["trace_module_dim"] =
        gf::invariant_dim(n, {gf::ModuleFactor::v(), gf::ModuleFactor::v_dual()});

    bool product_law = true;
    json checks = json::array();
    for (int r = 1; r <= rmax; ++r)
        for (int l = 1; r + l <= rmax; ++l)
            for (const auto& sigma : gf::all_permutations(r))
                for (const auto& tau : gf::all_permutations(l)) {
                    auto res = gf::check_product_scaled(n, sigma, tau);
                    if (!res.holds) product_law = false;
                    checks.push_back({{"r", r},
                                      {"l", l},
                                      {"holds", res.holds},
                                      {"both_zero", res.both_zero},
                                      {"scale", res.both_zero ? "0" : gf::to_string(res.scale)}});
                }
    result.payload["product_law_holds"] = product_law;
    result.payload["product_checks"] = checks;
    result.verified = product_law;
    return result;
}

CommandResult cmd_s1(int kmax, int mode_bound, std::optional<int> only_k) {
    require_range(kmax, 1, 6, "--kmax");
    require_range(mode_bound, 4, 16, "--mode-bound");
    if (only_k) require_range(*only_k, 1, 6, "--k");
    const int kfirst = only_k ? *only_k : 1;
    const int klast = only_k ? *only_k : kmax;
    CommandResult result;
    json grids = json::object();
    json diag = json::object();
    bool all_collapsed = true;
    for (int k = kfirst; k <= klast; ++k) {
        grids[std::to_string(k)] = grid_to_json(gf::assemble_e2_s1(k));
        auto res = gf::diagonal_betti_s1(k);
        if (res.collapsed) {
            diag[std::to_string(k)] = betti_to_json(res.betti);
        } else {
            all_collapsed = false;
            json report = json::array();
            for (const auto& [from, to] : res.possible_differentials)
                report.push_back({{"from", {from.first, from.second}},
                                  {"to", {to.first, to.second}}});
            diag[std::to_string(k)] = {{"possible_differentials", report}};
        }
    }
    result.payload["e2_grids"] = grids;
    result.payload["diagonal_betti"] = diag;
    result.payload["stabilized_betti"] =
        betti_to_json(gf::stabilized_circle_betti(klast - 1), true);

    const bool c2_ok = gf::verify_cocycle(gf::CircleCocycle::c2, mode_bound);
    const bool c3_ok = gf::verify_cocycle(gf::CircleCocycle::c3, mode_bound);
    result.payload["c2_cocycle"] = c2_ok;
    result.payload["c3_cocycle"] = c3_ok;

    auto outcome = gf::coboundary_test_c2(mode_bound);
    json cert = json::object();
    cert["feasible"] = outcome.feasible;
    if (!outcome.feasible) {
        json combo = json::array();
        for (const auto& [pair, mult] : outcome.certificate)
            combo.push_back({{"pair", {pair.first, pair.second}}, {"multiplier", gf::to_string(mult)}});
        cert["combination"] = combo;
        cert["contradiction"] = gf::to_string(outcome.contradiction);
    }
    result.payload["c2_coboundary_test"] = cert;

    result.verified = all_collapsed && c2_ok && c3_ok && !outcome.feasible;
    return result;
}

void render_pretty(const json& doc) {
    const std::string command = doc["command"];
    const json& payload = doc["payload"];
    std::cout << "gfc " << command << "\n";
    if (payload.contains("betti")) render_betti_pretty(std::cout, "Betti table", payload["betti"]);
    if (payload.contains("spectral")) {
        render_betti_pretty(std::cout, "spectral sequence", payload["spectral"]);
        render_betti_pretty(std::cout, "brute force", payload["brute"]);
        std::cout << "diff entries: " << payload["diff"].size() << "\n";
    }
    if (payload.contains("exact"))
        std::cout << "exact: " << payload["exact"] << ", subcomplex: " << payload["subcomplex_ok"]
                  << "\n";
    if (payload.contains("invariant_dims")) {
        std::cout << "invariant dims by r:\n";
        for (const auto& [r, d] : payload["invariant_dims"].items())
            std::cout << "  r=" << r << ": " << d << "\n";
        std::cout << "product law: " << payload["product_law_holds"] << "\n";
    }
    if (payload.contains("e2_grids")) {
        for (const auto& [k, grid] : payload["e2_grids"].items()) {
            std::cout << "k=" << k << " grid:";
            for (const auto& cell : grid)
                std::cout << " (" << cell["p"] << "," << cell["q"] << ")=" << cell["dim"];
            std::cout << "\n";
        }
        std::cout << "c2 cocycle: " << payload["c2_cocycle"]
                  << ", c3 cocycle: " << payload["c3_cocycle"] << ", c2 coboundary feasible: "
                  << payload["c2_coboundary_test"]["feasible"] << "\n";
        render_betti_pretty(std::cout, "stabilized Betti", payload["stabilized_betti"]);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Gelfand-Fuks cohomology computations"};
    app.require_subcommand(1);
    app.fallthrough();

    int n = 1, kmax = 4, weight = 0, k = 2, mode_bound = 8, rmax = 2;
    bool pretty = false, parallel = false;
    std::string out_file;

    app.add_flag("--pretty", pretty, "human-readable tables instead of JSON");
    app.add_flag("--parallel", parallel, "compute independent blocks concurrently");
    app.add_option("--out", out_file, "also write the JSON document to FILE");

    auto* wn = app.add_subcommand("wn-betti", "Betti table of W_n via the spectral sequence");
    wn->add_option("--n", n, "order of the formal vector fields")->required();

    auto* brute = app.add_subcommand("brute", "brute-force weight-graded cohomology of W_n");
    brute->add_option("--n", n)->required();
    brute->add_option("--kmax", kmax, "top cohomological degree");
    brute->add_option("--weight", weight, "weight of the cochain complex slice");

    auto* cross = app.add_subcommand("crosscheck", "diff the two engines at weight 0");
    cross->add_option("--n", n)->required();
    cross->add_option("--kmax", kmax);

    auto* koszul = app.add_subcommand("koszul", "exactness of the Koszul sequence");
    koszul->add_option("--n", n)->required();
    koszul->add_option("--kmax", kmax);

    auto* invariants = app.add_subcommand("invariants", "gl_n invariant dimensions and product law");
    invariants->add_option("--n", n)->required();
    invariants->add_option("--r", rmax, "largest tensor rank");

    auto* s1 = app.add_subcommand("s1", "circle diagonal grids, Betti tables and cocycles");
    s1->add_option("--kmax", kmax, "largest diagonal index");
    s1->add_option("--k", k, "restrict the grids to a single diagonal index");
    s1->add_option("--mode-bound", mode_bound, "Fourier mode bound for cocycle checks");

    for (auto* sub : {wn, brute, cross, koszul, invariants, s1}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    json params = json::object();
    CommandResult result;
    std::string command;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (wn->parsed()) {
            command = "wn-betti";
            params["n"] = n;
            result = cmd_wn_betti(n);
        } else if (brute->parsed()) {
            command = "brute";
            if (!brute->count("--kmax")) kmax = default_brute_kmax(n);
            params = {{"n", n}, {"kmax", kmax}, {"weight", weight}};
            result = cmd_brute(n, kmax, weight, parallel);
        } else if (cross->parsed()) {
            command = "crosscheck";
            if (!cross->count("--kmax")) kmax = default_brute_kmax(n);
            params = {{"n", n}, {"kmax", kmax}};
            result = cmd_crosscheck(n, kmax, parallel);
        } else if (koszul->parsed()) {
            command = "koszul";
            if (!koszul->count("--kmax")) kmax = (n == 1) ? 4 : 3;
            params = {{"n", n}, {"kmax", kmax}};
            result = cmd_koszul(n, kmax);
        } else if (invariants->parsed()) {
            command = "invariants";
            params = {{"n", n}, {"r", rmax}};
            result = cmd_invariants(n, rmax);
        } else {
            command = "s1";
            if (!s1->count("--kmax")) kmax = 3;
            std::optional<int> only_k;
            if (s1->count("--k")) only_k = k;
            params = {{"kmax", kmax}, {"mode_bound", mode_bound}};
            if (only_k) params["k"] = *only_k;
            result = cmd_s1(kmax, mode_bound, only_k);
        }
    } catch (const gf::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const gf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;

    json doc;
    doc["command"] = command;
    doc["params"] = params;
    doc["payload"] = result.payload;
    doc["meta"] = {
        {"engine", "gfc"},
        {"version", gf::engine_version},
        {"timing_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};

    if (pretty)
        render_pretty(doc);
    else
        std::cout << doc.dump(2) << "\n";
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) {
            std::cerr << "cannot write " << out_file << "\n";
            return 2;
        }
        out << doc.dump(2) << "\n";
    }
    return result.verified ? 0 : 1;
}
