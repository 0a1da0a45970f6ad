// Command-line driver: recognize, verify, gen, bench, stingray-demo.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slrec/io.hpp"
#include "slrec/recognize.hpp"
#include "slrec/stingray.hpp"

using namespace slrec;
using nlohmann::json;

namespace {

Budgets parse_budgets(const std::string& s, int d) {
    if (s.empty()) return default_budgets(d);
    Budgets b;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> b.n1 >> c1 >> b.n2 >> c2 >> b.n3) || c1 != ',' || c2 != ',' || b.n1 < 0 || b.n2 < 0 || b.n3 < 0)
        throw CLI::ValidationError("--budget", "expected N1,N2,N3");
    return b;
}

json budgets_json(const Budgets& b) { return {{"n1", b.n1}, {"n2", b.n2}, {"n3", b.n3}}; }

std::vector<std::pair<int, std::uint64_t>> parse_grid(const std::string& s) {
    std::vector<std::pair<int, std::uint64_t>> grid;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--grid", "expected d:q pairs");
        grid.emplace_back(std::stoi(item.substr(0, colon)), std::stoull(item.substr(colon + 1)));
    }
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructive recognition of SL(d,q) in its natural representation"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string budget_str;

    // recognize
    auto* rec = app.add_subcommand("recognize", "Find a base change and a program for the standard generators");
    std::string in_path, out_dir = ".", strategy = "naming";
    bool no_verify = false;
    int attempts = 3;
    rec->add_option("input", in_path, "Matrix file with the generators")->required();
    rec->add_option("--seed", seed, "Random seed");
    rec->add_option("--budget", budget_str, "Draw budgets N1,N2,N3 for descent, base case, ascent");
    rec->add_option("--strategy", strategy, "Descent step check")->check(CLI::IsMember({"naming", "restart"}));
    rec->add_option("--out-dir", out_dir, "Directory for L.mat, prog.mslp and report.json");
    rec->add_option("--attempts", attempts, "Pipeline attempts sharing the budgets")->check(CLI::PositiveNumber);
    rec->add_flag("--no-verify", no_verify, "Skip the final evaluation check");

    // verify
    auto* ver = app.add_subcommand("verify", "Re-evaluate a result bundle against the generators");
    std::string ver_in, ver_dir = ".", ver_L, ver_prog;
    ver->add_option("input", ver_in, "Matrix file with the generators")->required();
    ver->add_option("--dir", ver_dir, "Directory holding L.mat and prog.mslp");
    ver->add_option("--L", ver_L, "Base change file (default <dir>/L.mat)");
    ver->add_option("--prog", ver_prog, "Program file (default <dir>/prog.mslp)");

    // gen
    auto* gen = app.add_subcommand("gen", "Write a disguised generating set of SL(d,q)");
    int gen_d = 0;
    std::uint64_t gen_q = 0;
    std::string disguise = "conjugate", gen_out;
    gen->add_option("--d", gen_d, "Degree")->required()->check(CLI::Range(2, 100000));
    gen->add_option("--q", gen_q, "Field order")->required();
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--disguise", disguise, "identity, conjugate or products")
        ->check(CLI::IsMember({"identity", "conjugate", "products"}));
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    // bench
    auto* ben = app.add_subcommand("bench", "Time recognition over a grid of (d, q); CSV on stdout");
    std::string grid_str;
    int repeats = 10;
    bool bench_no_verify = false;
    ben->add_option("--grid", grid_str, "Comma-separated d:q pairs, e.g. 100:4,50:5");
    ben->add_option("--repeats", repeats, "Runs per pair")->check(CLI::NonNegativeNumber);
    ben->add_option("--budget", budget_str, "Draw budgets N1,N2,N3 (default per d)");
    ben->add_option("--seed", seed, "First seed");
    ben->add_flag("--no-verify", bench_no_verify, "Skip the final evaluation check");

    // stingray-demo
    auto* demo = app.add_subcommand("stingray-demo", "Print stingray certificates drawn in SL(d,q)");
    int demo_d = 20, demo_count = 5;
    std::uint64_t demo_q = 5;
    long long demo_budget = 1000;
    demo->add_option("--d", demo_d, "Degree")->check(CLI::Range(4, 100000));
    demo->add_option("--q", demo_q, "Field order");
    demo->add_option("--seed", seed, "Random seed");
    demo->add_option("--budget", demo_budget, "Draw budget");
    demo->add_option("--count", demo_count, "Certificates to print")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*rec) {
            const MatrixFile X = parse_matrices(read_text_file(in_path));
            if (X.matrices.empty()) throw ParseError("no generators in " + in_path);
            const int d = X.matrices.front().rows();
            RecognitionOptions opts;
            opts.budgets = parse_budgets(budget_str, d);
            opts.seed = seed;
            opts.strategy = strategy == "restart" ? Strategy::Restart : Strategy::Naming;
            opts.verify = !no_verify;
            opts.attempts = attempts;
            const auto t0 = std::chrono::steady_clock::now();
            const RecognitionResult res = recognize(X.matrices, opts);
            const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::filesystem::create_directories(out_dir);
            const std::filesystem::path dir(out_dir);
            if (res.ok) {
                write_text_file((dir / "L.mat").string(), format_matrices({res.L}));
                write_text_file((dir / "prog.mslp").string(), res.slp.serialize());
            }
            json report = {
                {"ok", res.ok},
                {"verified", res.verified},
                {"failed_stage", res.failed_stage.empty() ? json(nullptr) : json(res.failed_stage)},
                {"d", d},
                {"q", X.field->q()},
                {"seed", seed},
                {"strategy", strategy},
                {"budgets", budgets_json(opts.budgets)},
                {"draws", budgets_json(res.used)},
                {"attempts", res.attempts},
                {"descent_restarts", res.descent_restarts},
                {"chain_degrees", res.chain_degrees},
                {"ascent", {{"steps", res.ascent.steps},
                            {"weak_rejections", res.ascent.weak_rejections},
                            {"strong_rejections", res.ascent.strong_rejections}}},
                {"seconds", {{"descent", res.seconds.descent},
                             {"basecase", res.seconds.basecase},
                             {"ascent", res.seconds.ascent},
                             {"compose", res.seconds.compose},
                             {"verify", res.seconds.verify},
                             {"total", total}}},
                {"program", {{"length", res.slp.length()}, {"quota", res.slp.quota()}}},
            };
            write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
            std::cout << (res.ok ? "ok" : "fail at " + res.failed_stage) << " (draws " << res.used.n1 << ','
                      << res.used.n2 << ',' << res.used.n3 << ")\n";
            return res.ok ? 0 : 1;
        }
        if (*ver) {
            const std::filesystem::path dir(ver_dir);
            const MatrixFile X = parse_matrices(read_text_file(ver_in));
            const MatrixFile L = parse_matrices(read_text_file(ver_L.empty() ? (dir / "L.mat").string() : ver_L));
            const Mslp prog = Mslp::parse(read_text_file(ver_prog.empty() ? (dir / "prog.mslp").string() : ver_prog));
            if (L.matrices.size() != 1) throw ParseError("base change file must hold one matrix");
            bool good = false;
            if (L.field->p() == X.field->p() && L.field->modulus() == X.field->modulus()) {
                // Re-read the base change over the generators' field object.
                Matrix Lx(X.field, L.matrices[0].rows(), L.matrices[0].cols());
                for (int i = 0; i < Lx.rows(); ++i)
                    for (int j = 0; j < Lx.cols(); ++j) Lx(i, j) = L.matrices[0](i, j);
                good = verify_result(X.matrices, Lx, prog);
            }
            std::cout << (good ? "true" : "false") << '\n';
            return good ? 0 : 1;
        }
        if (*gen) {
            const FieldPtr F = field_of_order(gen_q);
            const Disguise how = disguise == "identity"    ? Disguise::Identity
                                 : disguise == "products" ? Disguise::Products
                                                          : Disguise::Conjugate;
            const std::string text = format_matrices(gen_instance(F, gen_d, seed, how));
            if (gen_out.empty())
                std::cout << text;
            else
                write_text_file(gen_out, text);
            return 0;
        }
        if (*ben) {
            const auto grid = parse_grid(grid_str);
            Budgets b;
            if (!budget_str.empty()) b = parse_budgets(budget_str, 4);
            std::cout << bench_csv(bench(grid, repeats, b, seed, !bench_no_verify));
            return 0;
        }
        if (*demo) {
            const FieldPtr F = field_of_order(demo_q);
            const auto X = gen_instance(F, demo_d, seed, Disguise::Conjugate);
            WordGraph g;
            std::vector<Tracked> Xt;
            for (const auto& x : X) Xt.push_back({x, g.input()});
            PrSource src(g, Xt, seed);
            Budget budget(demo_budget);
            const auto [lo, hi] = stingray_degree_bounds(demo_d);
            std::cout << "SL(" << demo_d << ',' << demo_q << "), body dimension in [" << lo << ',' << hi << "]\n";
            for (int k = 0; k < demo_count; ++k) {
                auto c = find_stingray_element(src, budget, lo, hi);
                if (!c) {
                    std::cout << "budget exhausted after " << budget.used() << " draws\n";
                    return 1;
                }
                const FactorProfile prof = poly_factor(*F, charpoly(c->s.m));
                std::cout << "m=" << c->m << " factor_degree=" << poly::deg(c->factor)
                          << " ppd=" << (c->ppd_certified ? "yes" : "no") << " B=" << c->exponent
                          << " holds=" << (certificate_holds(*c) ? "yes" : "no") << " charpoly_of_power_degrees=";
                for (std::size_t i = 0; i < prof.factors.size(); ++i)
                    std::cout << (i ? "," : "") << poly::deg(prof.factors[i].first) << '^'
                              << prof.factors[i].second;
                std::cout << '\n';
            }
            std::cout << "draws used " << budget.used() << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
