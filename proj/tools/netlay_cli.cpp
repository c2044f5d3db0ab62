// netlay command line: community extraction, N-body layout, SVG rendering and
// synthetic graph generation for undirected edge lists.
//
// Exit codes: 0 success, 2 input/config error, 3 numerical divergence.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netlay/community.hpp"
#include "netlay/error.hpp"
#include "netlay/gen.hpp"
#include "netlay/graph.hpp"
#include "netlay/io.hpp"
#include "netlay/layout.hpp"
#include "netlay/mds.hpp"
#include "netlay/svg.hpp"

namespace {

using namespace netlay;

struct CommunitiesCfg {
    std::string input;
    std::string out = "communities.tsv";
    std::string q_trace = "qtrace.csv";
    std::uint32_t threshold = kDefaultRefineThreshold;
};

struct LayoutCfg {
    std::string input;
    std::string out = "layout.tsv";
    std::string energy_out;
    int dim = 3;
    std::string init = "random";
    double box = 1.0;
    double spacing = 0.0; // 0 = derive from the force balance
    double penalty = 0.0; // community-aware MDS distance penalty
    std::uint32_t landmarks = 100;
    SimParams params;
    bool v_stop_set = false;
};

struct RenderCfg {
    std::string layout_file;
    std::string communities_file;
    std::string graph_file;
    std::string out = "layout.svg";
    RenderOptions options;
};

struct GenCfg {
    std::string kind;
    std::string out = "graph.txt";
    std::string labels_out;
    std::uint64_t seed = 1;
    std::uint32_t blocks = 4;
    std::uint32_t block_size = 32;
    double p_in = 0.3;
    double p_out = 0.01;
    std::uint32_t ring = 100;
    std::uint32_t trees = 0;
    std::uint32_t n = 1000;
    std::uint32_t m_attach = 2;
};

ParseResult load_graph(const std::string& path) {
    auto parsed = parse_edge_list(read_text_file(path));
    const auto& rep = parsed.report;
    if (rep.self_loops_dropped || rep.duplicates_merged)
        std::cerr << "note: dropped " << rep.self_loops_dropped << " self-loop(s), merged "
                  << rep.duplicates_merged << " duplicate line(s)\n";
    return parsed;
}

int run_communities(const CommunitiesCfg& cfg) {
    Graph g = largest_connected_component(load_graph(cfg.input).graph);
    GreedyResult res = greedy_modularity(g);
    Dendrogram dendro = refine_recursive(g, res.partition, cfg.threshold);
    write_text_file(cfg.out, format_community_tsv(g, dendro));
    write_text_file(cfg.q_trace, format_q_trace_csv(res.q_trace));
    std::printf("N=%u M=%zu C=%u Q=%s\n", g.node_count(), g.edge_count(), res.partition.count,
                format_double(res.best_q).c_str());
    return 0;
}

// Equilibrium pair separation of one spring against one Coulomb pair,
// K(d - l) = C q^2 / d^2; used as the default MDS edge-length target.
double equilibrium_spacing(const SimParams& p) {
    if (p.spring_k <= 0.0 || p.coulomb * p.charge <= 0.0) return 1.0;
    return std::cbrt(p.coulomb * p.charge * p.charge / p.spring_k) + p.rest_length;
}

template <int D>
std::vector<Vec<D>> initial_positions(const Graph& g, const LayoutCfg& cfg) {
    if (cfg.init == "random") return random_init<D>(g.node_count(), cfg.box, cfg.params.seed);
    if (cfg.init == "mds") {
        auto landmarks = choose_landmarks(g, cfg.landmarks, cfg.params.seed);
        auto ld = bfs_distances(g, std::move(landmarks));
        if (cfg.penalty > 0.0) {
            GreedyResult comm = greedy_modularity(g);
            add_community_penalty(ld, comm.partition, cfg.penalty);
        }
        MdsResult mds = landmark_mds(ld, D);
        if (mds.dims_used < D)
            std::cerr << "warning: degenerate distance spectrum, embedded in " << mds.dims_used
                      << " of " << D << " dimensions\n";
        double target = cfg.spacing > 0.0 ? cfg.spacing : equilibrium_spacing(cfg.params);
        scale_to_mean_edge(mds, g, target);
        std::vector<Vec<D>> x(g.node_count());
        for (std::uint32_t i = 0; i < g.node_count(); ++i)
            for (int k = 0; k < D; ++k) x[i][k] = mds.coord(i, static_cast<std::uint32_t>(k));
        return x;
    }
    if (cfg.init.rfind("file:", 0) == 0) {
        std::string path = cfg.init.substr(5);
        LayoutTable table = parse_layout_tsv(read_text_file(path));
        if (table.dim != D)
            throw ConfigError("initial layout file is " + std::to_string(table.dim) +
                              "D, run requested " + std::to_string(D) + "D");
        std::unordered_map<std::string, std::size_t> row_of;
        for (std::size_t r = 0; r < table.labels.size(); ++r) row_of.emplace(table.labels[r], r);
        std::vector<Vec<D>> x(g.node_count());
        for (std::uint32_t i = 0; i < g.node_count(); ++i) {
            auto it = row_of.find(g.labels[i]);
            if (it == row_of.end())
                throw ConfigError("initial layout file is missing node '" + g.labels[i] + "'");
            for (int k = 0; k < D; ++k) x[i][k] = table.pos[it->second][static_cast<std::size_t>(k)];
        }
        return x;
    }
    throw ConfigError("--init must be random, mds, or file:PATH");
}

template <int D>
int run_layout_dim(const Graph& g, const LayoutCfg& cfg) {
    SimParams params = cfg.params;
    auto init = initial_positions<D>(g, cfg);
    params.softening = resolved_softening<D>(params, init);

    std::vector<EnergyRow> energy_rows;
    std::function<void(std::uint32_t, const BodyState<D>&)> observer;
    if (!cfg.energy_out.empty()) {
        observer = [&](std::uint32_t step, const BodyState<D>& s) {
            Energies e = energies(s, g, params);
            energy_rows.push_back({step, e.kinetic, e.spring, e.coulomb});
        };
    }

    RelaxResult<D> res = relax<D>(g, std::move(init), params, observer);
    write_text_file(cfg.out, format_layout_tsv<D>(g.labels, res.state.x));
    if (!cfg.energy_out.empty()) write_text_file(cfg.energy_out, format_energy_csv(energy_rows));
    std::printf("N=%u M=%zu steps=%u final_max_speed=%s converged=%s\n", g.node_count(),
                g.edge_count(), res.steps, format_double(res.final_max_speed).c_str(),
                res.converged ? "yes" : "no");
    return 0;
}

int run_layout(LayoutCfg& cfg) {
    // v_stop tracks the initial box size unless set explicitly.
    if (!cfg.v_stop_set) cfg.params.v_stop = 1e-4 * cfg.box;
    cfg.params.validate();
    Graph g = largest_connected_component(load_graph(cfg.input).graph);
    if (cfg.dim == 2) return run_layout_dim<2>(g, cfg);
    if (cfg.dim == 3) return run_layout_dim<3>(g, cfg);
    throw ConfigError("--dim must be 2 or 3");
}

int run_render(const RenderCfg& cfg) {
    LayoutTable layout = parse_layout_tsv(read_text_file(cfg.layout_file));
    CommunityTable communities = parse_community_tsv(read_text_file(cfg.communities_file));
    std::vector<std::pair<std::string, std::string>> edge_labels;
    if (cfg.options.draw_edges) {
        if (cfg.graph_file.empty())
            throw ConfigError("--edges requires --graph with the edge-list file");
        Graph g = load_graph(cfg.graph_file).graph;
        edge_labels.reserve(g.edge_count());
        for (const auto& [u, v] : g.edges) edge_labels.emplace_back(g.labels[u], g.labels[v]);
    }
    write_text_file(cfg.out, render_svg(layout, communities, cfg.options,
                                        cfg.options.draw_edges ? &edge_labels : nullptr));
    return 0;
}

int run_gen(const GenCfg& cfg) {
    GeneratedGraph gen;
    if (cfg.kind == "planted-partition")
        gen = gen_planted_partition(cfg.blocks, cfg.block_size, cfg.p_in, cfg.p_out, cfg.seed);
    else if (cfg.kind == "ring-with-trees")
        gen = gen_ring_with_trees(cfg.ring, cfg.trees, cfg.seed);
    else if (cfg.kind == "scale-free")
        gen = gen_scale_free(cfg.n, cfg.m_attach, cfg.seed);
    else
        throw ConfigError("--kind must be planted-partition, ring-with-trees, or scale-free");

    Graph g = gen.to_graph();
    write_text_file(cfg.out, serialize_edge_list(g));
    if (!gen.block.empty()) {
        std::string labels_path = cfg.labels_out.empty() ? cfg.out + ".labels" : cfg.labels_out;
        std::string text;
        for (std::uint32_t i = 0; i < gen.n; ++i) {
            text += g.labels[i];
            text += '\t';
            text += std::to_string(gen.block[i]);
            text += '\n';
        }
        write_text_file(labels_path, text);
    }
    std::printf("N=%u M=%zu\n", g.node_count(), g.edge_count());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community detection and N-body graph layout for undirected edge lists"};
    app.require_subcommand(1);

    CommunitiesCfg comm_cfg;
    auto* comm = app.add_subcommand("communities", "Extract hierarchical communities");
    comm->set_config("--config", "", "Flat key=value config file; command-line flags win");
    comm->add_option("input", comm_cfg.input, "Edge-list file")->required();
    comm->add_option("--out", comm_cfg.out, "Community TSV output");
    comm->add_option("--qtrace", comm_cfg.q_trace, "Q trace CSV output");
    comm->add_option("--threshold", comm_cfg.threshold,
                     "Re-optimize communities larger than this size");

    LayoutCfg lay_cfg;
    auto* lay = app.add_subcommand("layout", "Relax an N-body layout");
    lay->set_config("--config", "", "Flat key=value config file; command-line flags win");
    lay->add_option("input", lay_cfg.input, "Edge-list file")->required();
    lay->add_option("--dim", lay_cfg.dim, "Layout dimension (2 or 3)");
    lay->add_option("--out", lay_cfg.out, "Layout TSV output");
    lay->add_option("--energy-out", lay_cfg.energy_out,
                    "Per-step energy CSV (exact Coulomb potential; O(N^2) per step)");
    lay->add_option("--init", lay_cfg.init, "Initial configuration: random, mds, or file:PATH");
    lay->add_option("--box", lay_cfg.box, "Side length of the random-init cube");
    lay->add_option("--spacing", lay_cfg.spacing, "Target mean edge length for mds init");
    lay->add_option("--mds-penalty", lay_cfg.penalty,
                    "Add this to MDS distances across communities (0 = off)");
    lay->add_option("--landmarks", lay_cfg.landmarks, "Landmark count for mds init");
    lay->add_option("--seed", lay_cfg.params.seed, "RNG seed");
    lay->add_option("--theta", lay_cfg.params.theta, "Barnes-Hut opening angle");
    lay->add_option("--dt", lay_cfg.params.dt, "Integration timestep");
    lay->add_option("--steps", lay_cfg.params.max_steps, "Maximum integration steps");
    lay->add_option("--coulomb", lay_cfg.params.coulomb, "Coulomb constant C");
    lay->add_option("--charge", lay_cfg.params.charge, "Per-node charge q");
    lay->add_option("--mass", lay_cfg.params.mass, "Per-node mass m");
    lay->add_option("--spring-k", lay_cfg.params.spring_k, "Spring constant K");
    lay->add_option("--rest-length", lay_cfg.params.rest_length, "Spring natural length");
    lay->add_option("--friction", lay_cfg.params.friction, "Friction coefficient gamma");
    lay->add_option("--softening", lay_cfg.params.softening,
                    "Coulomb softening length (0 = auto)");
    lay->add_option("--vstop", lay_cfg.params.v_stop, "Convergence speed threshold")
        ->each([&](const std::string&) { lay_cfg.v_stop_set = true; });

    RenderCfg ren_cfg;
    auto* ren = app.add_subcommand("render", "Render a layout + communities to SVG");
    ren->set_config("--config", "", "Flat key=value config file; command-line flags win");
    ren->add_option("layout", ren_cfg.layout_file, "Layout TSV file")->required();
    ren->add_option("--communities", ren_cfg.communities_file, "Community TSV file")->required();
    ren->add_option("--out", ren_cfg.out, "SVG output");
    ren->add_option("--plane", ren_cfg.options.plane, "Projection plane for 3D layouts");
    ren->add_option("--highlight", ren_cfg.options.highlight, "Community path to draw in black");
    ren->add_flag("--edges", ren_cfg.options.draw_edges, "Draw edges (needs --graph)");
    ren->add_option("--graph", ren_cfg.graph_file, "Edge-list file, required with --edges");
    ren->add_option("--dot-size", ren_cfg.options.dot_size,
                    "Node radius in layout units (0 = auto)");

    GenCfg gen_cfg;
    auto* gen = app.add_subcommand("gen", "Generate synthetic test graphs");
    gen->set_config("--config", "", "Flat key=value config file; command-line flags win");
    gen->add_option("--kind", gen_cfg.kind,
                    "planted-partition | ring-with-trees | scale-free")
        ->required();
    gen->add_option("--out", gen_cfg.out, "Edge-list output");
    gen->add_option("--labels", gen_cfg.labels_out,
                    "Ground-truth block file (planted-partition; default OUT.labels)");
    gen->add_option("--seed", gen_cfg.seed, "RNG seed");
    gen->add_option("--blocks", gen_cfg.blocks, "planted-partition: number of blocks");
    gen->add_option("--block-size", gen_cfg.block_size, "planted-partition: nodes per block");
    gen->add_option("--p-in", gen_cfg.p_in, "planted-partition: intra-block edge probability");
    gen->add_option("--p-out", gen_cfg.p_out, "planted-partition: inter-block edge probability");
    gen->add_option("--ring", gen_cfg.ring, "ring-with-trees: cycle length");
    gen->add_option("--trees", gen_cfg.trees, "ring-with-trees: extra tree nodes");
    gen->add_option("--n", gen_cfg.n, "scale-free: node count");
    gen->add_option("--m-attach", gen_cfg.m_attach, "scale-free: links per new node");

    try {
        app.parse(argc, argv);
        if (comm->parsed()) return run_communities(comm_cfg);
        if (lay->parsed()) return run_layout(lay_cfg);
        if (ren->parsed()) return run_render(ren_cfg);
        if (gen->parsed()) return run_gen(gen_cfg);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
