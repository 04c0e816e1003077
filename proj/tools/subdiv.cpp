#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subdiv/conformal.hpp"
#include "subdiv/io.hpp"
#include "subdiv/manifest.hpp"
#include "subdiv/modulus.hpp"
#include "subdiv/packing.hpp"
#include "subdiv/rules.hpp"
#include "subdiv/shapes.hpp"
#include "subdiv/verify.hpp"

using namespace subdiv;

namespace {

int exit_code(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::validation: return 2;
    case ErrorCategory::solver: return 3;
    case ErrorCategory::io: return 4;
    }
    return 2;
}

std::uint64_t env_seed() {
    const char* s = std::getenv("SUBDIV_SEED");
    if (!s || !*s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        fail(ErrorKind::InvalidArgument, std::string("SUBDIV_SEED is not a number: ") + s);
    }
}

bool is_file(const std::string& s) { return std::find(builtin_rule_names().begin(), builtin_rule_names().end(), s) == builtin_rule_names().end(); }

// Collects everything a run reads and writes, for the manifest.
struct Run {
    RunManifest manifest;
    std::string output;

    void input(const std::string& path) { manifest.input_hashes[path] = sha256_file(path); }
    void rule_input(const std::string& name) {
        if (is_file(name)) input(name);
    }
    void write(const std::string& path, const std::string& text) {
        write_file(path, text);
        manifest.output_hashes[path] = sha256_hex(text);
    }
    void emit(const nlohmann::json& j) {
        const auto text = dump_json(j) + "\n";
        if (output.empty()) {
            std::cout << text;
            manifest.output_hashes["stdout"] = sha256_hex(text);
        } else {
            write(output, text);
        }
    }
};

ComplexDocument load_input(Run& run, const std::string& path) {
    run.input(path);
    return load_document(path);
}

Complex2D seed_or_default(Run& run, const std::string& path) {
    if (path.empty()) return shapes::vertex_star(6);
    return load_input(run, path).complex;
}

nlohmann::json growth_to_json(const GrowthClass& g) {
    nlohmann::json j{{"kind", to_string(g.kind)}, {"valences", g.valences}};
    if (g.kind == GrowthKind::exponential) j["multiplier"] = g.multiplier;
    if (g.kind == GrowthKind::linear) j["addend"] = g.addend;
    return j;
}

nlohmann::json packing_to_json(const Packing& p) {
    nlohmann::json circles = nlohmann::json::array();
    for (VertexId v = 0; v < p.complex.num_vertices(); ++v)
        circles.push_back({{"vertex", v}, {"x", p.centers[v].real()}, {"y", p.centers[v].imag()}, {"r", p.radii[v]}});
    return {{"circles", circles},
            {"sweeps", p.sweeps},
            {"angle_residual", max_angle_residual(p)},
            {"tangency", tangency_discrepancy(p)},
            {"boundary", boundary_discrepancy(p)}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite subdivision rules, combinatorial moduli and circle packings"};
    app.require_subcommand(1);
    int threads = 1;
    std::string manifest_path, output;
    app.add_option("--threads", threads, "Worker threads for independent solves")->check(CLI::PositiveNumber);
    app.add_option("--manifest", manifest_path, "Write a run manifest (JSON) to this path");

    Run run;
    std::optional<int> failed_checks;
    std::function<void()> action;

    // rules
    auto* rules = app.add_subcommand("rules", "Inspect subdivision rules");
    rules->require_subcommand(1);
    rules->add_subcommand("list", "List built-in rules")->callback([&] {
        action = [&] {
            for (const auto& n : builtin_rule_names()) std::cout << n << "\n";
        };
    });
    std::string show_rule;
    auto* show = rules->add_subcommand("show", "Print a rule as JSON");
    show->add_option("rule", show_rule, "Built-in name or rule file")->required();
    show->add_option("--output", output);
    show->callback([&] {
        action = [&] {
            run.rule_input(show_rule);
            run.emit(rule_to_json(resolve_rule(show_rule)));
        };
    });
    std::string g_rule, g_input;
    std::uint32_t g_vertex = 0;
    int g_stages = 4;
    auto* growth = rules->add_subcommand("growth", "Classify valence growth of a vertex");
    growth->add_option("--rule", g_rule)->required();
    growth->add_option("--input", g_input, "Seed complex (default: valence-6 vertex star)");
    growth->add_option("--vertex", g_vertex);
    growth->add_option("--stages", g_stages);
    growth->add_option("--output", output);
    growth->callback([&] {
        action = [&] {
            run.rule_input(g_rule);
            const auto r = resolve_rule(g_rule);
            run.emit(growth_to_json(classify_growth(r, seed_or_default(run, g_input), g_vertex, g_stages)));
        };
    });

    // subdivide
    std::string s_rule, s_input;
    int s_levels = 1;
    auto* sub = app.add_subcommand("subdivide", "Subdivide a complex");
    sub->add_option("--rule", s_rule)->required();
    sub->add_option("--input", s_input)->required();
    sub->add_option("--levels", s_levels)->check(CLI::NonNegativeNumber);
    sub->add_option("--output", output);
    sub->callback([&] {
        action = [&] {
            run.rule_input(s_rule);
            const auto r = resolve_rule(s_rule);
            const auto d = subdivide_document(load_input(run, s_input), r, s_levels);
            run.emit(document_to_json(d.complex, d.marking));
        };
    });

    // modulus
    std::string m_input, m_marking, m_mode = "vertex", m_which = "sup";
    double m_tol = 1e-7;
    bool m_oracle = false;
    auto* mod = app.add_subcommand("modulus", "Compute M_sup or m_inf of a marked complex");
    mod->add_option("--input", m_input)->required();
    mod->add_option("--marking", m_marking)->check(CLI::IsMember({"ring", "quad"}));
    mod->add_option("--mode", m_mode)->check(CLI::IsMember({"vertex", "fat", "skinny", "tile-fat", "tile-skinny"}));
    mod->add_option("--which", m_which)->check(CLI::IsMember({"sup", "inf"}));
    mod->add_option("--tol", m_tol)->check(CLI::PositiveNumber);
    mod->add_flag("--oracle", m_oracle, "Use the brute-force QP instead of the cutting plane");
    mod->add_option("--output", output);
    mod->callback([&] {
        action = [&] {
            const auto d = load_input(run, m_input);
            const Mode mode = parse_mode(m_mode);
            const Which which = m_which == "sup" ? Which::sup : Which::inf;
            SolverOptions opt;
            opt.tol = m_tol;
            run.manifest.tolerances["tol"] = m_tol;
            const auto* ring = std::get_if<RingMarking>(&d.marking);
            const auto* quad = std::get_if<QuadMarking>(&d.marking);
            if (!ring && !quad) fail(ErrorKind::InvalidMarking, m_input + " has no marking");
            if (m_marking == "ring" && !ring) fail(ErrorKind::InvalidMarking, "marking is not a ring");
            if (m_marking == "quad" && !quad) fail(ErrorKind::InvalidMarking, "marking is not a quad");
            ModulusResult res;
            if (ring) {
                if (m_oracle) res = brute_force_modulus(*ring, mode, which, opt);
                else res = which == Which::sup ? modulus_sup(*ring, mode, opt) : modulus_inf(*ring, mode, opt);
            } else {
                if (which == Which::inf) fail(ErrorKind::NotARing, "m_inf needs a ring marking");
                res = m_oracle ? brute_force_modulus(*quad, mode, which, opt) : modulus_sup(*quad, mode, opt);
            }
            run.emit(result_to_json(res));
        };
    });

    // criterion
    std::string c_rule, c_mode = "vertex";
    int c_levels = 1;
    auto* crit = app.add_subcommand("criterion", "Minimum modulus of the rule's test quadrilaterals");
    crit->add_option("--rule", c_rule)->required();
    crit->add_option("--levels", c_levels)->check(CLI::PositiveNumber);
    crit->add_option("--mode", c_mode)->check(CLI::IsMember({"vertex", "fat", "skinny", "tile-fat", "tile-skinny"}));
    crit->add_option("--output", output);
    crit->callback([&] {
        action = [&] {
            run.rule_input(c_rule);
            run.emit(report_to_json(criterion_123(resolve_rule(c_rule), c_levels, parse_mode(c_mode))));
        };
    });

    // layers
    std::string l_rule, l_input, l_mode = "vertex";
    std::uint32_t l_vertex = 0;
    int l_stages = 3;
    auto* lay = app.add_subcommand("layers", "Layer bound from the rings around a vertex at successive stages");
    lay->add_option("--rule", l_rule)->required();
    lay->add_option("--input", l_input, "Seed complex (default: valence-6 vertex star)");
    lay->add_option("--vertex", l_vertex);
    lay->add_option("--stages", l_stages)->check(CLI::PositiveNumber);
    lay->add_option("--mode", l_mode)->check(CLI::IsMember({"vertex", "fat", "skinny", "tile-fat", "tile-skinny"}));
    lay->add_option("--output", output);
    lay->callback([&] {
        action = [&] {
            run.rule_input(l_rule);
            const auto r = resolve_rule(l_rule);
            const auto tower = make_tower(seed_or_default(run, l_input), r, l_stages);
            std::vector<Layer> layers;
            for (int s = 1; s <= l_stages; ++s) {
                auto ring = vertex_ring(tower.stages[static_cast<std::size_t>(s)], l_vertex);
                const double m = modulus_sup(ring, parse_mode(l_mode)).value;
                layers.push_back({std::move(ring), s, m});
            }
            run.emit(report_to_json(layer_bound(tower, layers, l_vertex)));
        };
    });

    // axiom
    std::string a_rule, a_input, a_mode = "vertex";
    int a_which = 1, a_stages = 3;
    std::optional<std::uint32_t> a_vertex;
    double a_threshold = 1.0;
    auto* ax = app.add_subcommand("axiom", "Empirical probe of Axiom 0, 1 or 2");
    ax->add_option("--which", a_which)->check(CLI::IsMember({0, 1, 2}))->required();
    ax->add_option("--rule", a_rule)->required();
    ax->add_option("--input", a_input, "Seed complex; a ring marking is probed when --vertex is absent");
    ax->add_option("--vertex", a_vertex);
    ax->add_option("--stages", a_stages)->check(CLI::PositiveNumber);
    ax->add_option("--mode", a_mode)->check(CLI::IsMember({"vertex", "fat", "skinny", "tile-fat", "tile-skinny"}));
    ax->add_option("--threshold", a_threshold);
    ax->add_option("--output", output);
    ax->callback([&] {
        action = [&] {
            run.rule_input(a_rule);
            const auto r = resolve_rule(a_rule);
            const Mode mode = parse_mode(a_mode);
            if (!a_vertex && !a_input.empty()) {
                const auto d = load_input(run, a_input);
                const auto* ring = std::get_if<RingMarking>(&d.marking);
                if (!ring) fail(ErrorKind::InvalidMarking, "axiom probe without --vertex needs a ring marking");
                run.emit(report_to_json(axiom_probe_ring(a_which, r, *ring, a_stages, mode, a_threshold)));
                return;
            }
            const auto c = seed_or_default(run, a_input);
            run.emit(report_to_json(axiom_probe_vertex(a_which, r, c, a_vertex.value_or(0), a_stages, mode, a_threshold)));
        };
    });

    // pack
    std::string p_input, p_svg, p_color = "none", p_rule;
    double p_tol = 1e-10;
    int p_levels = 0;
    auto* pk = app.add_subcommand("pack", "Maximal circle packing of a triangulated disk");
    pk->add_option("--input", p_input)->required();
    pk->add_option("--tol", p_tol)->check(CLI::PositiveNumber);
    pk->add_option("--svg", p_svg);
    pk->add_option("--color-by", p_color)->check(CLI::IsMember({"none", "type", "stage"}));
    pk->add_option("--rule", p_rule, "Subdivide the input first");
    pk->add_option("--levels", p_levels)->check(CLI::NonNegativeNumber);
    pk->add_option("--output", output);
    pk->callback([&] {
        action = [&] {
            auto c = load_input(run, p_input).complex;
            std::vector<std::size_t> stage_sizes{c.num_vertices()};
            if (!p_rule.empty()) {
                run.rule_input(p_rule);
                const auto r = resolve_rule(p_rule);
                for (int i = 0; i < p_levels; ++i) {
                    c = subdivide(c, r);
                    stage_sizes.push_back(c.num_vertices());
                }
            }
            run.manifest.tolerances["tol"] = p_tol;
            const auto p = pack(c, p_tol);
            if (!p_svg.empty()) run.write(p_svg, svg(p, parse_color_by(p_color), stage_sizes));
            run.emit(packing_to_json(p));
        };
    });

    // verify
    std::string v_suite = "paper";
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("--suite", v_suite)->check(CLI::IsMember({"paper", "oracle", "packing", "all"}));
    ver->add_option("--output", output);
    ver->callback([&] {
        action = [&] {
            VerifyOptions opt;
            opt.seed = env_seed();
            opt.threads = threads;
            const auto results = verify_suite(v_suite, opt);
            int failed = 0;
            for (const auto& r : results) {
                std::cerr << summary_line(r) << "\n";
                failed += r.passed ? 0 : 1;
            }
            run.emit({{"suite", v_suite}, {"seed", opt.seed}, {"results", report_to_json(results)}});
            failed_checks = failed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    run.output = output;
    run.manifest.command_line.assign(argv, argv + argc);
    try {
        if (action) action();
        if (!manifest_path.empty()) {
            run.manifest.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_file(manifest_path, dump_json(manifest_to_json(run.manifest)) + "\n");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (failed_checks && *failed_checks > 0) return 3;
    return 0;
}
