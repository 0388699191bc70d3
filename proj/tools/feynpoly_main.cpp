// feynpoly: Feynman polytopes, sector decompositions, convergence domains and
// epsilon expansions of dimensionally regularized integrals.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "feynpoly/io.hpp"

using namespace feynpoly;
using nlohmann::ordered_json;

namespace {

constexpr int EXIT_PARSE = 2;
constexpr int EXIT_DOMAIN = 3;
constexpr int EXIT_BUDGET = 4;

std::vector<Rational> parse_lambda_list(const std::string& csv, std::size_t n) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    if (out.size() != n)
        throw parse_error("--lambda needs " + std::to_string(n) + " comma-separated entries");
    return out;
}

void emit(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << j.dump(2) << "\n";
    }
}

RegulatorPoint make_reg(const GraphFile& gf, const std::string& lambda_csv, const Rational& D0) {
    RegulatorPoint reg = RegulatorPoint::unit(gf.graph, D0);
    if (!lambda_csv.empty()) reg.lambda0 = parse_lambda_list(lambda_csv, gf.graph.num_edges());
    return reg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feynman polytopes, sector decomposition and dimensional regularization"};
    app.require_subcommand(1);

    std::string file, out_path, strategy = "smirnov", method = "sector", action = "check";
    std::string lambda_csv, dim_str = "4", dim0_str = "4";
    int order = 2, threads = 1;
    double tol = 1e-8, eps_value = 0.0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "input JSON file")->required();
        cmd->add_option("-o,--output", out_path, "write the report to a file");
    };

    auto* c_poly = app.add_subcommand("polytope", "Feynman polytope, facets and irreducibility");
    add_common(c_poly);

    auto* c_sectors = app.add_subcommand("sectors", "sector decomposition data");
    add_common(c_sectors);
    c_sectors->add_option("--strategy", strategy, "hepp|smirnov|motic")->capture_default_str();

    auto* c_conv = app.add_subcommand("converge", "convergence-domain membership");
    add_common(c_conv);
    c_conv->add_option("--lambda", lambda_csv, "comma-separated rational powers");
    c_conv->add_option("--dim", dim_str, "spacetime dimension (rational)")->capture_default_str();

    auto* c_expand = app.add_subcommand("expand", "epsilon expansion around D0");
    add_common(c_expand);
    c_expand->add_option("--method", method, "sector|ibp")->capture_default_str();
    c_expand->add_option("--dim0", dim0_str, "expansion point D0")->capture_default_str();
    c_expand->add_option("--order", order, "series order in eps")
        ->capture_default_str()
        ->check(CLI::Range(0, 8));
    c_expand->add_option("--strategy", strategy, "hepp|smirnov|motic")->capture_default_str();
    c_expand->add_option("--lambda", lambda_csv, "comma-separated integer powers");
    c_expand->add_option("--tol", tol, "per-sector relative tolerance")->capture_default_str();
    c_expand->add_option("--threads", threads, "worker threads")->capture_default_str();
    c_expand->add_option("--seed", seed, "seed for sampling checks")->capture_default_str();

    auto* c_mellin = app.add_subcommand("mellin", "general Mellin transform engine");
    add_common(c_mellin);
    c_mellin->add_option("--action", action, "check|value|continue")->capture_default_str();
    c_mellin->add_option("--eps", eps_value, "regulator value for check/value")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    set_sampling_seed(seed);

    try {
        if (c_poly->parsed()) {
            emit(polytope_report(load_graph(file).graph), out_path);
        } else if (c_sectors->parsed()) {
            GraphFile gf = load_graph(file);
            bool fell_back = false;
            auto rep = sectors_report(gf.graph, gf.kinematics, parse_strategy(strategy), &fell_back);
            if (fell_back) {
                rep["warning"] = "strategy needs an s-irreducible graph; fell back to hepp";
                std::cerr << "warning: " << rep["warning"].get<std::string>() << "\n";
            }
            emit(rep, out_path);
        } else if (c_conv->parsed()) {
            GraphFile gf = load_graph(file);
            auto dom = feynman_convergence_domain(gf.graph);
            auto rep = domain_report(gf.graph, dom);
            if (!lambda_csv.empty()) {
                auto lambda = parse_lambda_list(lambda_csv, gf.graph.num_edges());
                rep["contains"] = domain_contains(gf.graph, dom, lambda, Rational::parse(dim_str));
            }
            emit(rep, out_path);
        } else if (c_expand->parsed()) {
            GraphFile gf = load_graph(file);
            if (!gf.kinematics.generic_euclidean())
                throw domain_error_code(
                    "kinematics are not generic euclidean: need Re(q_I^2) > 0 and "
                    "Re(q_I^2) + Re(m_e^2) > 0");
            RegulatorPoint reg = make_reg(gf, lambda_csv, Rational::parse(dim0_str));
            AmplitudeOptions opt;
            opt.rel_tol = tol;
            opt.abs_tol = tol * 1e-2;
            opt.threads = threads;
            auto t0 = std::chrono::steady_clock::now();
            EpsSeries series;
            std::size_t sector_count = 0;
            if (!gf.graph.s_irreducible())
                std::cerr << "warning: graph is not s-irreducible; the dimensionally regularized "
                             "series is exactly zero\n";
            if (method == "sector") {
                Fan fan = gf.graph.s_irreducible() ? sector_fan(gf.graph, parse_strategy(strategy))
                                                   : hepp_fan(gf.graph.num_edges());
                sector_count = fan.maximal_cones().size();
                series = eps_expand_sector(gf.graph, fan, reg, gf.kinematics, order, opt);
            } else if (method == "ibp") {
                sector_count = gf.graph.s_irreducible()
                                   ? sector_fan(gf.graph, parse_strategy(strategy)).maximal_cones().size()
                                   : 0;
                series =
                    eps_expand_ibp(gf.graph, reg, gf.kinematics, order, parse_strategy(strategy), opt);
            } else {
                throw parse_error("--method must be sector or ibp");
            }
            double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            emit(series_report(series, sector_count, ms), out_path);
        } else if (c_mellin->parsed()) {
            MellinProblem p = load_mellin(file);
            ordered_json rep;
            if (action == "check") {
                auto r = convergence_check(p, eps_value);
                rep["degenerate"] = r.degenerate;
                rep["convergent"] = r.convergent;
                rep["violated_rays"] = ordered_json::array();
                for (const auto& u : r.violated_rays) rep["violated_rays"].push_back(u);
                if (r.degenerate) rep["note"] = "degenerate Newton polytope: never converges";
            } else if (action == "value") {
                Fan fan = default_fan(p);
                cplx v = evaluate_numeric(p, fan, eps_value);
                rep["re"] = v.real();
                rep["im"] = v.imag();
            } else if (action == "continue") {
                auto sum = continue_to(p);
                rep["steps"] = sum.steps;
                rep["terms"] = sum.terms.size();
                rep["poles"] = ordered_json::array();
                for (const auto& [ray, off] : sum.poles()) {
                    ordered_json pj;
                    pj["ray"] = sum.rays[ray];
                    pj["offset"] = off;
                    rep["poles"].push_back(std::move(pj));
                }
            } else {
                throw parse_error("--action must be check, value or continue");
            }
            emit(rep, out_path);
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return EXIT_BUDGET;
    } catch (const domain_error_code& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return EXIT_DOMAIN;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return EXIT_DOMAIN;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
