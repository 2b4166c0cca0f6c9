#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zigzag/io.hpp"
#include "zigzag/oracle.hpp"
#include "zigzag/svg.hpp"

using namespace zigzag;

namespace {

int run(int argc, char** argv) {
    CLI::App app{"exact piecewise-linear interval map algebra: contour factorization, "
                 "bridging lifts, inverse-system rewiring"};
    app.require_subcommand(1);

    // ---- contour ----------------------------------------------------------
    std::string contour_in;
    auto* sc_contour = app.add_subcommand("contour", "contour points of a pointed map");
    sc_contour->add_option("map", contour_in, "plmap file")->required();

    // ---- compose ----------------------------------------------------------
    std::vector<std::string> compose_in;
    std::string compose_out;
    auto* sc_compose = app.add_subcommand("compose", "compose maps left to right (f o g)");
    sc_compose->add_option("maps", compose_in, "plmap files, outermost first")
        ->expected(2, -1);
    sc_compose->add_option("-o,--out", compose_out, "output file (default stdout)");

    // ---- lift -------------------------------------------------------------
    std::string lift_in, lift_out, lift_factor_out;
    auto* sc_lift = app.add_subcommand(
        "lift", "radial contour factor t and minimal meandering lift s with f = t o s");
    sc_lift->add_option("map", lift_in, "plmap file")->required();
    sc_lift->add_option("-o,--out", lift_out, "write s here (default stdout)");
    sc_lift->add_option("--factor-out", lift_factor_out, "also write t here");

    // ---- check ------------------------------------------------------------
    std::vector<std::string> check_in;
    std::string check_json;
    auto* sc_check = app.add_subcommand("check", "zig-zag-free certificate per map");
    sc_check->add_option("maps", check_in, "plmap files")->required();
    sc_check->add_option("--json", check_json, "write the certificate JSON here");

    // ---- bridge -----------------------------------------------------------
    std::vector<std::string> bridge_in;
    std::string bridge_out, bridge_prov;
    auto* sc_bridge =
        app.add_subcommand("bridge", "bridged factor s~ for a three-map chain");
    sc_bridge->add_option("maps", bridge_in, "f1.plmap f2.plmap f3.plmap")->expected(3);
    sc_bridge->add_option("-o,--out", bridge_out, "write s~ here (default s_tilde.plmap)");
    sc_bridge->add_option("--provenance", bridge_prov, "write the JSON sidecar here");

    // ---- rewire -----------------------------------------------------------
    std::string rewire_in, rewire_out, rewire_cert;
    auto* sc_rewire = app.add_subcommand("rewire", "rewire a system prefix (odd levels)");
    sc_rewire->add_option("system", rewire_in, "system file")->required();
    sc_rewire->add_option("-o,--out", rewire_out, "write the rewired system here");
    sc_rewire->add_option("--certificate", rewire_cert, "write the certificate JSON here");

    // ---- simplicial -------------------------------------------------------
    std::string simp_in, simp_thread, simp_phase = "pipeline", simp_out;
    std::size_t simp_budget = 8;
    auto* sc_simp = app.add_subcommand("simplicial", "simplicial-system pipeline");
    sc_simp->add_option("file", simp_in, "simplicial file")->required();
    sc_simp->add_option("--thread", simp_thread,
                        "comma-separated coordinates, or a single value repeated")
        ->required();
    sc_simp->add_option("--budget", simp_budget, "pigeonhole depth budget");
    sc_simp->add_option("--phase", simp_phase, "check | normalize | schedule | pipeline");
    sc_simp->add_option("-o,--out", simp_out, "write the rewired system here");

    // ---- oracle -----------------------------------------------------------
    std::string oracle_in;
    long oracle_grid = 16;
    auto* sc_oracle =
        app.add_subcommand("oracle", "re-validate a frozen golden file by brute force");
    sc_oracle->add_option("golden", oracle_in, "golden JSON file")->required();
    sc_oracle->add_option("--grid", oracle_grid, "grid resolution");

    // ---- plot -------------------------------------------------------------
    std::vector<std::string> plot_base, plot_overlay;
    std::string plot_out = "plot.svg";
    auto* sc_plot = app.add_subcommand("plot", "deterministic SVG of curves");
    sc_plot->add_option("maps", plot_base, "base plmap files");
    sc_plot->add_option("--overlay", plot_overlay, "overlay plmap files (drawn in red)");
    sc_plot->add_option("-o,--out", plot_out, "output SVG");

    CLI11_PARSE(app, argc, argv);

    if (*sc_contour) {
        PLMap m = load_plmap(contour_in);
        std::cout << contour_report(contour_points(PointedPLMap{m}));
        return 0;
    }

    if (*sc_compose) {
        PLMap acc = load_plmap(compose_in.front());
        for (std::size_t i = 1; i < compose_in.size(); ++i)
            acc = compose(acc, load_plmap(compose_in[i]));
        std::string text = serialize_plmap(acc);
        if (compose_out.empty())
            std::cout << text;
        else
            save_text(compose_out, text);
        return 0;
    }

    if (*sc_lift) {
        PointedPLMap f{load_plmap(lift_in)};
        PLMap t = radial_contour_factor(f);
        PLMap s = meandering_lift(f);
        if (!(compose(t, s) == f.map())) {
            std::cerr << "lift: factorization check failed\n";
            return 5;
        }
        if (!lift_factor_out.empty()) save_text(lift_factor_out, serialize_plmap(t));
        if (lift_out.empty())
            std::cout << serialize_plmap(s);
        else
            save_text(lift_out, serialize_plmap(s));
        return 0;
    }

    if (*sc_check) {
        std::vector<PLMap> maps;
        for (const auto& p : check_in) maps.push_back(load_plmap(p));
        ZigzagFreeReport rep = check_zigzag_free(maps);
        for (std::size_t i = 0; i < rep.per_map.size(); ++i)
            std::cout << check_in[i] << ": " << rep.per_map[i].verdict() << "\n";
        if (!check_json.empty()) save_text(check_json, zigzag_certificate_json(rep));
        return rep.certificate ? 0 : 1;
    }

    if (*sc_bridge) {
        PointedPLMap f1{load_plmap(bridge_in[0])};
        PointedPLMap f2{load_plmap(bridge_in[1])};
        PointedPLMap f3{load_plmap(bridge_in[2])};
        BridgedFactor bf = build_bridged_s(f1, f2, f3);
        save_text(bridge_out.empty() ? "s_tilde.plmap" : bridge_out,
                  serialize_plmap(bf.s_tilde));
        if (!bridge_prov.empty()) save_text(bridge_prov, provenance_json(bf));
        for (const auto& c : bf.report.checks)
            std::cout << (c.pass ? "pass" : "FAIL") << ": " << c.name
                      << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        return bf.report.all_pass() ? 0 : 1;
    }

    if (*sc_rewire) {
        SystemPrefix p = load_system(rewire_in);
        RewireResult r = rewire(p);
        SystemPrefix rew;
        for (const auto& m : r.rewired) rew.maps.emplace_back(m);
        if (!rewire_out.empty()) save_text(rewire_out, serialize_system(rew));
        if (!rewire_cert.empty()) save_text(rewire_cert, rewire_certificate_json(r));
        for (std::size_t i = 0; i < r.certificates.per_map.size(); ++i)
            std::cout << "rewired map " << (i + 1) << ": "
                      << r.certificates.per_map[i].verdict() << "\n";
        if (!r.trailing_levels.empty()) {
            std::cout << "trailing levels:";
            for (auto n : r.trailing_levels) std::cout << " " << n;
            std::cout << "\n";
        }
        return r.certificates.certificate ? 0 : 1;
    }

    if (*sc_simp) {
        SimplicialSystem sys = load_simplicial(simp_in);
        std::vector<Rat> thread;
        if (simp_thread.find(',') == std::string::npos) {
            thread.assign(sys.S.size(), Rat::parse(simp_thread));
        } else {
            std::istringstream ts(simp_thread);
            std::string tok;
            while (std::getline(ts, tok, ',')) thread.push_back(Rat::parse(tok));
        }
        if (simp_phase == "check") {
            auto chk = check_simplicial(sys);
            for (const auto& fail : chk.failures) std::cout << fail << "\n";
            std::cout << (chk.ok ? "simplicial" : "NOT simplicial") << "\n";
            return chk.ok ? 0 : 1;
        }
        if (simp_phase == "normalize") {
            auto nr = normalize_point(sys, thread);
            if (nr.verdict) {
                std::cout << "verdict: " << to_string(*nr.verdict) << "\n";
                return 0;
            }
            std::cout << serialize_simplicial(nr.normalized->sys);
            return 0;
        }
        if (simp_phase == "schedule") {
            auto nr = normalize_point(sys, thread);
            if (nr.verdict) {
                std::cout << "verdict: " << to_string(*nr.verdict) << "\n";
                return 0;
            }
            Schedule sched = find_schedule(nr.normalized->sys, simp_budget);
            std::cout << "schedule:";
            for (auto n : sched.indices) std::cout << " " << n;
            std::cout << "\n";
            return 0;
        }
        if (simp_phase != "pipeline") {
            std::cerr << "unknown phase " << simp_phase << "\n";
            return 3;
        }
        PipelineOutcome out = pipeline(sys, thread, simp_budget);
        if (out.verdict) {
            std::cout << "verdict: " << to_string(*out.verdict) << "\n";
            return 0;
        }
        std::cout << "schedule:";
        for (auto n : out.schedule->indices) std::cout << " " << n;
        std::cout << "\n";
        for (std::size_t i = 0; i < out.rewired->certificates.per_map.size(); ++i)
            std::cout << "rewired map " << (i + 1) << ": "
                      << out.rewired->certificates.per_map[i].verdict() << "\n";
        if (!simp_out.empty()) {
            SystemPrefix rew;
            for (const auto& m : out.rewired->rewired) rew.maps.emplace_back(m);
            save_text(simp_out, serialize_system(rew));
        }
        return out.rewired->certificates.certificate ? 0 : 1;
    }

    if (*sc_oracle) {
        std::ifstream in(oracle_in);
        if (!in) throw ParseError("cannot open " + oracle_in, 0);
        nlohmann::json g = nlohmann::json::parse(in);
        std::string map_path = g.at("map").get<std::string>();
        // resolve relative to the golden file
        auto slash = oracle_in.find_last_of('/');
        if (slash != std::string::npos && !map_path.empty() && map_path[0] != '/')
            map_path = oracle_in.substr(0, slash + 1) + map_path;
        PointedPLMap f{load_plmap(map_path)};

        bool ok = true;
        GridSpec grid{oracle_grid};
        ContourData cd = oracle_contour_points(f, grid);
        auto check_points = [&](const char* key, const std::vector<ContourPoint>& got) {
            if (!g.contains(key)) return;
            const auto& want = g.at(key);
            if (want.size() != got.size() - 1) {
                std::cout << key << ": expected " << want.size() << " points, oracle found "
                          << got.size() - 1 << "\n";
                ok = false;
                return;
            }
            for (std::size_t i = 1; i < got.size(); ++i) {
                Rat p = Rat::parse(want[i - 1][0].get<std::string>());
                Rat v = Rat::parse(want[i - 1][1].get<std::string>());
                if (got[i].point != p || got[i].value != v) {
                    std::cout << key << "[" << i << "]: golden (" << p << "," << v
                              << ") vs oracle (" << got[i].point << "," << got[i].value
                              << ")\n";
                    ok = false;
                }
            }
        };
        check_points("contour_right", cd.right);
        check_points("contour_left", cd.left);
        if (g.contains("positive_witness") || g.contains("negative_witness")) {
            auto ws = oracle_radial_departures(f, grid);
            bool pos = false, neg = false;
            for (const auto& w : ws) {
                pos = pos || w.orient == Orientation::positive;
                neg = neg || w.orient == Orientation::negative;
            }
            if (g.contains("positive_witness") && g["positive_witness"] != pos) {
                std::cout << "positive witness: golden " << g["positive_witness"]
                          << " vs oracle " << pos << "\n";
                ok = false;
            }
            if (g.contains("negative_witness") && g["negative_witness"] != neg) {
                std::cout << "negative witness: golden " << g["negative_witness"]
                          << " vs oracle " << neg << "\n";
                ok = false;
            }
        }
        std::cout << (ok ? "golden validated" : "golden DISAGREES with oracle") << "\n";
        return ok ? 0 : 1;
    }

    if (*sc_plot) {
        std::vector<std::pair<PLMap, PlotRole>> maps;
        for (const auto& p : plot_base) maps.emplace_back(load_plmap(p), PlotRole::base);
        for (const auto& p : plot_overlay)
            maps.emplace_back(load_plmap(p), PlotRole::overlay);
        save_text(plot_out, plot_svg(maps));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error" << (e.line ? " (line " + std::to_string(e.line) + ")" : "")
                  << ": " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << e.what() << "\n";
        return 6;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return 4;
    } catch (const InvariantViolation& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}
