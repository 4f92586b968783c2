#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arboreal/dimer.hpp"
#include "arboreal/entropy.hpp"
#include "arboreal/error.hpp"
#include "arboreal/finite.hpp"
#include "arboreal/green.hpp"
#include "arboreal/lattice.hpp"
#include "arboreal/limits.hpp"
#include "arboreal/marginals.hpp"
#include "arboreal/spectral.hpp"

namespace arboreal::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

class Csv {
public:
    explicit Csv(std::vector<std::string> header) { row(header); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << quote(cells[i]);
        text_ << "\n";
    }
    std::string str() const { return text_.str(); }

private:
    std::ostringstream text_;
};

struct Globals {
    std::string out;
    std::uint64_t seed = 1;
    int threads = 1;
    int grid = 256;
    double tol = 1e-6;
};

QuadratureSpec quadrature(const Globals& g) {
    QuadratureSpec q;
    q.base_resolution = g.grid;
    q.target_tol = g.tol;
    q.threads = g.threads;
    return q;
}

bool is_square_lattice(const PeriodicLattice& lat) {
    return lat.dim() == 2 && lat.classes() == 1 && lat.families() == lattices::square().families();
}

LatticeEdge lattice_edge(const PeriodicLattice& lat, const std::string& text) {
    const auto e = parse_edge(text, lat.dim());
    if (e.tail.cls < 0 || e.tail.cls >= lat.classes() || e.head.cls < 0 || e.head.cls >= lat.classes())
        throw ValidationError("edge " + text + ": class out of range");
    if (!lat.adjacent(e.tail, e.head)) throw ValidationError("edge " + text + " is not a lattice edge");
    return e;
}

std::vector<LatticeEdge> lattice_edges(const PeriodicLattice& lat, const std::vector<std::string>& texts) {
    std::vector<LatticeEdge> out;
    for (const auto& t : texts) {
        if (t == "all-origin-edges") {
            const LatticeVertex origin{IntVec(static_cast<std::size_t>(lat.dim()), 0), 0};
            for (const auto& e : lat.incident_edges(origin)) out.push_back(e);
        } else {
            out.push_back(lattice_edge(lat, t));
        }
    }
    return out;
}

// Finite-graph edges: "id" or "id~" for the reversed orientation.
std::vector<EdgeRef> graph_edges(const FiniteGraph& g, const std::vector<std::string>& texts) {
    std::vector<EdgeRef> out;
    for (const auto& t : texts) {
        EdgeRef r;
        std::string body = t;
        if (!body.empty() && body.back() == '~') {
            r.flip = true;
            body.pop_back();
        }
        try {
            std::size_t used = 0;
            r.id = std::stoi(body, &used);
            if (used != body.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw ValidationError("bad edge id: " + t);
        }
        if (r.id < 0 || r.id >= g.edge_count()) throw ValidationError("edge id out of range: " + t);
        if (g.edge(r.id).is_loop()) throw ValidationError("edge " + t + " is a self-loop");
        out.push_back(r);
    }
    return out;
}

EdgeEvent split_event(std::size_t n_include, std::size_t n_exclude) {
    EdgeEvent ev;
    for (std::size_t i = 0; i < n_include; ++i) ev.include.push_back(i);
    for (std::size_t i = 0; i < n_exclude; ++i) ev.exclude.push_back(n_include + i);
    return ev;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("not a number: " + item);
        }
    }
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_reals(text)) {
        if (v != std::floor(v)) throw ValidationError("not an integer: " + num(v));
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<RootedTree> load_panel(const std::string& path) {
    if (path.empty()) return tree_panel();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("tree panel JSON: ") + e.what());
    }
    if (!j.is_array()) throw ValidationError("tree panel: expected an array of parent lists");
    std::vector<RootedTree> panel;
    for (const auto& t : j) {
        if (!t.is_array()) throw ValidationError("tree panel: each tree is a parent list");
        std::vector<int> parents;
        for (const auto& p : t) {
            if (!p.is_number_integer()) throw ValidationError("tree panel: parents must be integers");
            parents.push_back(p.get<int>());
        }
        panel.emplace_back(std::move(parents));
    }
    return panel;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"Local statistics of uniform spanning trees and forests on periodic lattices", "arboreal"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out, "Write CSV here instead of standard output");
    app.add_option("--seed", g.seed, "Seed for Monte Carlo routes");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--grid", g.grid, "Quadrature base resolution per torus dimension")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "Quadrature target tolerance")->check(CLI::PositiveNumber);

    nlohmann::json params = nlohmann::json::object();
    std::string csv;

    // lattice validate
    auto* lattice_cmd = app.add_subcommand("lattice", "Lattice utilities");
    lattice_cmd->require_subcommand(1);
    auto* validate_cmd = lattice_cmd->add_subcommand("validate", "Validate a lattice file");
    std::string validate_path;
    validate_cmd->add_option("file", validate_path, "Lattice JSON")->required();
    validate_cmd->callback([&] {
        params["file"] = validate_path;
        const auto lat = load_lattice(validate_path);
        Csv c({"quantity", "value", "error_estimate"});
        c.row({"d", std::to_string(lat.dim()), "0"});
        c.row({"k", std::to_string(lat.classes()), "0"});
        c.row({"D", std::to_string(lat.degree()), "0"});
        for (int i = 0; i < lat.classes(); ++i)
            c.row({"self_loops_class_" + std::to_string(i + 1),
                   std::to_string(lat.self_loops()[static_cast<std::size_t>(i)]), "0"});
        csv = c.str();
    });

    // spectral
    auto* spectral_cmd = app.add_subcommand("spectral", "Eigenvalues of Q(alpha) and det(I - Q(alpha))");
    std::string lattice_path, alpha_text;
    spectral_cmd->add_option("--lattice", lattice_path, "Lattice JSON")->required();
    spectral_cmd->add_option("--alpha", alpha_text, "Torus point a1,...,ad")->required();
    spectral_cmd->callback([&] {
        params["lattice"] = lattice_path;
        params["alpha"] = alpha_text;
        const auto lat = load_lattice(lattice_path);
        const auto alpha = parse_reals(alpha_text);
        if (static_cast<int>(alpha.size()) != lat.dim()) throw ValidationError("alpha needs d components");
        const auto eig = eigh(q_matrix(lat, alpha).matrix);
        Csv c({"quantity", "value", "error_estimate"});
        for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i)
            c.row({"eigenvalue_" + std::to_string(i + 1), num(eig.eigenvalues[i]), "0"});
        c.row({"det_I_minus_Q", num(char_at_one(lat, alpha)), "0"});
        csv = c.str();
    });

    // impedance
    auto* impedance_cmd = app.add_subcommand("impedance", "Transfer impedance M(e,f)");
    std::string edge_text, edge2_text;
    bool exact_z2 = false;
    impedance_cmd->add_option("--lattice", lattice_path, "Lattice JSON")->required();
    impedance_cmd->add_option("--edge", edge_text, "Edge x,i:y,j (1-based classes)")->required();
    impedance_cmd->add_option("--edge2", edge2_text, "Second edge (defaults to the first)");
    impedance_cmd->add_flag("--exact-z2", exact_z2, "Use the exact square-lattice potential kernel");
    impedance_cmd->callback([&] {
        params["lattice"] = lattice_path;
        params["edge"] = edge_text;
        params["edge2"] = edge2_text;
        params["exact_z2"] = exact_z2;
        const auto lat = load_lattice(lattice_path);
        const auto e = lattice_edge(lat, edge_text);
        const auto f = edge2_text.empty() ? e : lattice_edge(lat, edge2_text);
        double value = 0.0, error = 0.0;
        if (exact_z2) {
            if (!is_square_lattice(lat)) throw ValidationError("--exact-z2 needs the nearest-neighbour square lattice");
            value = z2_impedance(e, f);
        } else {
            const auto r = transfer_impedance(lat, e, f, quadrature(g));
            if (!r.converged) throw ConvergenceError("impedance quadrature did not reach tolerance", r.error_estimate);
            value = r.value;
            error = r.error_estimate;
        }
        Csv c({"edge", "edge2", "value", "error_estimate"});
        c.row({format_edge(e), format_edge(f), num(value), num(error)});
        csv = c.str();
    });

    // prob
    auto* prob_cmd = app.add_subcommand("prob", "Probability of an edge cylinder event");
    std::string graph_path;
    std::vector<std::string> include, exclude;
    prob_cmd->add_option("--lattice", lattice_path, "Lattice JSON");
    prob_cmd->add_option("--graph", graph_path, "Finite graph JSON (edges given by id, '~' reverses)");
    prob_cmd->add_option("--include", include, "Edges in the tree (repeatable, comma separated for ids)")
        ->delimiter(';');
    prob_cmd->add_option("--exclude", exclude, "Edges not in the tree")->delimiter(';');
    prob_cmd->add_flag("--exact-z2", exact_z2, "Use the exact square-lattice potential kernel");
    prob_cmd->callback([&] {
        params["lattice"] = lattice_path;
        params["graph"] = graph_path;
        params["include"] = include;
        params["exclude"] = exclude;
        params["exact_z2"] = exact_z2;
        if (lattice_path.empty() == graph_path.empty()) throw ValidationError("give exactly one of --lattice, --graph");
        if (include.empty() && exclude.empty()) throw ValidationError("empty event");
        TransferMatrix tm;
        if (!lattice_path.empty()) {
            const auto lat = load_lattice(lattice_path);
            auto edges = lattice_edges(lat, include);
            const std::size_t n_in = edges.size();
            for (const auto& e : lattice_edges(lat, exclude)) edges.push_back(e);
            if (exact_z2) {
                if (!is_square_lattice(lat)) throw ValidationError("--exact-z2 needs the nearest-neighbour square lattice");
                tm = build_matrix_z2(edges);
            } else {
                tm = build_matrix(lat, edges, quadrature(g));
            }
            const auto p = event_probability(tm, split_event(n_in, edges.size() - n_in));
            // Entry errors propagate through the determinant roughly linearly.
            const double err = tm.error_estimate * static_cast<double>(edges.size());
            Csv c({"quantity", "value", "error_estimate"});
            c.row({"probability", num(p.clipped), num(err)});
            c.row({"raw_determinant", num(p.raw), num(err)});
            csv = c.str();
        } else {
            const auto graph = load_graph(graph_path);
            auto edges = graph_edges(graph, include);
            const std::size_t n_in = edges.size();
            for (const auto& e : graph_edges(graph, exclude)) edges.push_back(e);
            const auto p = event_probability(build_matrix(graph, edges), split_event(n_in, edges.size() - n_in));
            Csv c({"quantity", "value", "error_estimate"});
            c.row({"probability", num(p.clipped), "0"});
            c.row({"raw_determinant", num(p.raw), "0"});
            csv = c.str();
        }
    });

    // degree
    auto* degree_cmd = app.add_subcommand("degree", "Degree distribution of a vertex");
    std::string vertex_text;
    degree_cmd->add_option("--lattice", lattice_path, "Lattice JSON");
    degree_cmd->add_option("--graph", graph_path, "Finite graph JSON");
    degree_cmd->add_option("--vertex", vertex_text, "Lattice vertex x1,...,xd,i or graph vertex id")->required();
    degree_cmd->add_flag("--exact-z2", exact_z2, "Use the exact square-lattice potential kernel");
    degree_cmd->callback([&] {
        params["lattice"] = lattice_path;
        params["graph"] = graph_path;
        params["vertex"] = vertex_text;
        params["exact_z2"] = exact_z2;
        if (lattice_path.empty() == graph_path.empty()) throw ValidationError("give exactly one of --lattice, --graph");
        DegreeDistribution dist;
        if (!lattice_path.empty()) {
            const auto lat = load_lattice(lattice_path);
            const auto v = parse_vertex(vertex_text, lat.dim());
            if (v.cls < 0 || v.cls >= lat.classes()) throw ValidationError("vertex class out of range");
            if (exact_z2) {
                if (!is_square_lattice(lat)) throw ValidationError("--exact-z2 needs the nearest-neighbour square lattice");
                dist = degree_distribution_z2(v);
            } else {
                dist = degree_distribution(lat, v, quadrature(g));
            }
        } else {
            const auto graph = load_graph(graph_path);
            const auto ids = parse_ints(vertex_text);
            if (ids.size() != 1 || ids[0] < 0 || ids[0] >= graph.vertex_count())
                throw ValidationError("graph vertex out of range");
            dist = degree_distribution(graph, ids[0]);
        }
        Csv c({"degree", "probability", "error_estimate"});
        for (std::size_t s = 0; s < dist.p.size(); ++s)
            c.row({std::to_string(s), num(dist.p[s]), num(dist.error_estimate)});
        csv = c.str();
    });

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "Topological entropy of the spanning forest process");
    bool bits = false;
    std::string dimer_text;
    entropy_cmd->add_option("--lattice", lattice_path, "Lattice JSON")->required();
    entropy_cmd->add_flag("--bits", bits, "Report in bits instead of nats");
    entropy_cmd->add_option("--dimer", dimer_text, "Edges and faces per fundamental domain, e,f");
    entropy_cmd->callback([&] {
        params["lattice"] = lattice_path;
        params["bits"] = bits;
        params["dimer"] = dimer_text;
        const auto lat = load_lattice(lattice_path);
        const auto r = topological_entropy(lat, quadrature(g));
        if (!r.converged) throw ConvergenceError("entropy quadrature did not reach tolerance", r.error_estimate);
        const double unit = bits ? 1.0 / std::log(2.0) : 1.0;
        Csv c({"quantity", "value", "error_estimate", "grid"});
        c.row({"topological_entropy", num(r.value * unit), num(r.error_estimate * unit), std::to_string(r.resolution)});
        if (!dimer_text.empty()) {
            const auto ef = parse_ints(dimer_text);
            if (ef.size() != 2) throw ValidationError("--dimer expects e,f");
            const double scale = dimer_entropy(1.0, lat.classes(), ef[0], ef[1]);
            c.row({"dimer_entropy", num(scale * r.value * unit), num(scale * r.error_estimate * unit),
                   std::to_string(r.resolution)});
        }
        csv = c.str();
    });

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo frequency of an edge event (Wilson's algorithm)");
    std::string torus_text;
    std::size_t samples = 100000;
    sample_cmd->add_option("--graph", graph_path, "Finite graph JSON (edges by id)");
    sample_cmd->add_option("--torus", torus_text, "lattice.json,n: the n-torus of a lattice (edges x,i:y,j)");
    sample_cmd->add_option("--include", include, "Edges in the tree")->delimiter(';');
    sample_cmd->add_option("--exclude", exclude, "Edges not in the tree")->delimiter(';');
    sample_cmd->add_option("-N,--samples", samples, "Number of trees")->check(CLI::PositiveNumber);
    sample_cmd->callback([&] {
        params["graph"] = graph_path;
        params["torus"] = torus_text;
        params["include"] = include;
        params["exclude"] = exclude;
        params["samples"] = samples;
        if (graph_path.empty() == torus_text.empty()) throw ValidationError("give exactly one of --graph, --torus");
        FiniteGraph graph;
        std::vector<EdgeRef> edges;
        std::size_t n_in = 0;
        if (!graph_path.empty()) {
            graph = load_graph(graph_path);
            edges = graph_edges(graph, include);
            n_in = edges.size();
            for (const auto& e : graph_edges(graph, exclude)) edges.push_back(e);
        } else {
            const auto comma = torus_text.rfind(',');
            if (comma == std::string::npos) throw ValidationError("--torus expects lattice.json,n");
            const auto lat = load_lattice(torus_text.substr(0, comma));
            const auto n = parse_ints(torus_text.substr(comma + 1));
            if (n.size() != 1) throw ValidationError("--torus expects lattice.json,n");
            graph = torus_graph(lat, n[0]);
            auto add = [&](const std::vector<std::string>& texts) {
                for (const auto& e : lattice_edges(lat, texts)) {
                    const int id = torus_edge_id(lat, n[0], e);
                    edges.push_back({id, graph.edge(id).u != torus_vertex_id(lat, n[0], e.tail)});
                }
            };
            add(include);
            n_in = edges.size();
            add(exclude);
        }
        const auto r = estimate_event(graph, edges, split_event(n_in, edges.size() - n_in), samples, g.seed,
                                      g.threads);
        Csv c({"estimate", "standard_error", "samples", "seed"});
        c.row({num(r.estimate), num(r.standard_error), std::to_string(r.samples), std::to_string(r.seed)});
        csv = c.str();
    });

    // dimer
    auto* dimer_cmd = app.add_subcommand("dimer", "Domino events and Temperley window counts");
    std::string event_id, window_text, mc_id;
    int mc_window = 96, mc_margin = 32;
    std::size_t mc_samples = 200;
    dimer_cmd->add_option("--event", event_id, "Catalogued event id");
    dimer_cmd->add_option("--count-window", window_text, "Grid window WxH: matching and tree counts");
    dimer_cmd->add_option("--mc", mc_id, "Monte Carlo frequency of a catalogued pattern");
    dimer_cmd->add_option("--window", mc_window, "Monte Carlo window size")->check(CLI::PositiveNumber);
    dimer_cmd->add_option("--margin", mc_margin, "Distance of counted sites from the boundary");
    dimer_cmd->add_option("-N,--samples", mc_samples, "Monte Carlo trees")->check(CLI::PositiveNumber);
    dimer_cmd->callback([&] {
        params["event"] = event_id;
        params["count_window"] = window_text;
        params["mc"] = mc_id;
        params["window"] = mc_window;
        params["margin"] = mc_margin;
        params["samples"] = mc_samples;
        const int chosen = !event_id.empty() + !window_text.empty() + !mc_id.empty();
        if (chosen != 1) throw ValidationError("give exactly one of --event, --count-window, --mc");
        if (!event_id.empty()) {
            const auto v = domino_event_probability(event_id);
            Csv c({"event", "value", "error_estimate"});
            c.row({v.id, num(v.value), "0"});
            csv = c.str();
        } else if (!window_text.empty()) {
            const auto x = window_text.find('x');
            if (x == std::string::npos) throw ValidationError("--count-window expects WxH");
            const auto w = parse_ints(window_text.substr(0, x));
            const auto h = parse_ints(window_text.substr(x + 1));
            if (w.size() != 1 || h.size() != 1) throw ValidationError("--count-window expects WxH");
            const TemperleyGraph tg(grid_window(w[0], h[0]), 0);
            const auto matchings = enumerate_matchings(tg).size();
            const auto trees = spanning_tree_count(tg.map().graph());
            Csv c({"quantity", "value", "error_estimate"});
            c.row({"matchings", std::to_string(matchings), "0"});
            c.row({"spanning_trees", trees.get_str(), "0"});
            csv = c.str();
        } else {
            const auto r = domino_pattern_frequency(mc_id, mc_window, mc_margin, mc_samples, g.seed, g.threads);
            Csv c({"event", "estimate", "standard_error", "samples", "sites", "seed"});
            c.row({mc_id, num(r.estimate), num(r.standard_error), std::to_string(r.samples), std::to_string(r.sites),
                   std::to_string(r.seed)});
            csv = c.str();
        }
    });

    // limits
    auto* limits_cmd = app.add_subcommand("limits", "Poisson and tree-map moment diagnostics");
    std::string family = "complete", ns_text = "25,50,100", trees_path;
    int smax = 3;
    std::size_t limit_samples = 0;
    limits_cmd->add_option("--family", family, "Graph family")->check(CLI::IsMember({"complete"}));
    limits_cmd->add_option("--n", ns_text, "Comma separated sizes");
    limits_cmd->add_option("--smax", smax, "Largest factorial moment")->check(CLI::PositiveNumber);
    limits_cmd->add_option("--trees", trees_path, "JSON array of parent lists (default: built-in panel)");
    limits_cmd->add_option("-N,--samples", limit_samples, "Monte Carlo trees for E N(T; t) (0 skips)");
    limits_cmd->callback([&] {
        params["family"] = family;
        params["n"] = ns_text;
        params["smax"] = smax;
        params["trees"] = trees_path;
        params["samples"] = limit_samples;
        const auto ns = parse_ints(ns_text);
        const auto panel = load_panel(trees_path);
        const auto rows = poisson_limit_report(ns, smax, panel, limit_samples, g.seed, g.threads);
        Csv c({"n", "kind", "key", "value", "target", "error_estimate"});
        for (const auto& row : rows) {
            const auto& m = row.moments;
            for (std::size_t i = 0; i < m.s.size(); ++i)
                c.row({std::to_string(m.n), "factorial_moment", std::to_string(m.s[i]), num(m.moments[i]),
                       num(m.targets[i]), "0"});
            for (const auto& t : row.trees)
                c.row({std::to_string(m.n), "tree_moment", t.tree, num(t.estimate), std::to_string(t.size),
                       num(t.standard_error)});
        }
        csv = c.str();
    });

    int code = 0;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (achieved " << num(e.achieved()) << ")\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::string command;
    for (const auto* sub : app.get_subcommands()) {
        command = sub->get_name();
        for (const auto* inner : sub->get_subcommands()) command += " " + inner->get_name();
    }
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["argv"] = std::vector<std::string>(argv + 1, argv + argc);
    manifest["inputs"] = params;
    manifest["seed"] = g.seed;
    manifest["threads"] = g.threads;
    manifest["grid"] = g.grid;
    manifest["tol"] = g.tol;
    manifest["version"] = kVersion;
    manifest["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (g.out.empty()) {
        out << csv;
        err << manifest.dump() << "\n";
    } else {
        std::ofstream f(g.out, std::ios::binary);
        std::ofstream m(g.out + ".manifest.json");
        if (!f || !m) {
            err << "error: cannot write " << g.out << "\n";
            return 1;
        }
        f << csv;
        m << manifest.dump(2) << "\n";
    }
    return code;
}

}  // namespace arboreal::cli
