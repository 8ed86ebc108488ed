#include "dsr.hpp"

#include "errors.hpp"

#include <algorithm>
#include <sstream>

namespace crn {

DsrGraph build_dsr(const Network& net, const InfluenceSpec& i) {
    check_shape(i, net);
    DsrGraph g;
    g.n = net.n();
    g.m = net.m();
    g.species_names = net.species;
    for (const auto& r : net.reactions) g.reaction_labels.push_back(r.label);
    const RatMatrix A = build_stoich(net);
    for (int u = 0; u < g.m; ++u)
        for (int j = 0; j < g.n; ++j)
            if (i.at(u, j) != 0) g.species_edges.push_back({j, u, i.at(u, j)});
    for (int u = 0; u < g.m; ++u)
        for (int j = 0; j < g.n; ++j)
            if (A[j][u] != 0) g.reaction_edges.push_back({u, j, A[j][u]});
    return g;
}

namespace {

struct Arc {
    int to;
    SignedPolynomial label;
};

std::vector<std::vector<Arc>> adjacency(const DsrGraph& g) {
    std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(g.node_count()));
    for (const auto& e : g.species_edges)
        adj[e.species].push_back({g.n + e.reaction, SignedPolynomial::variable(z_var(e.reaction, e.species, g.m), e.sign)});
    for (const auto& e : g.reaction_edges)
        adj[g.n + e.reaction].push_back({e.species, SignedPolynomial::constant(e.a)});
    for (auto& list : adj)
        std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    return adj;
}

// Simple-cycle search rooted at each species, restricted to nodes above the
// root among species. Every circuit alternates, so its minimum node is a species.
struct CircuitSearch {
    const DsrGraph& g;
    const CircuitOptions& opt;
    std::vector<std::vector<Arc>> adj;
    std::vector<char> on_path;
    std::vector<int> path;
    std::vector<const SignedPolynomial*> labels;
    std::vector<DsrCircuit> out;
    int root = 0;
    int species_on_path = 0;

    void emit(const SignedPolynomial& closing) {
        if (static_cast<long long>(out.size()) >= opt.max_circuits)
            throw CapExceeded("circuit enumeration exceeded the cap of " + std::to_string(opt.max_circuits),
                              static_cast<long long>(out.size()));
        DsrCircuit c;
        c.nodes = path;
        c.species_count = species_on_path;
        c.sign = species_on_path % 2 == 0 ? -1 : 1;
        SignedPolynomial lab = SignedPolynomial::constant(c.sign);
        for (const auto* l : labels) lab = lab * *l;
        c.label = lab * closing;
        out.push_back(std::move(c));
    }

    void dfs(int v) {
        for (const Arc& a : adj[v]) {
            if (a.to == root) {
                emit(a.label);
                continue;
            }
            if (on_path[a.to]) continue;
            bool species = a.to < g.n;
            if (species && a.to < root) continue;
            if (species && opt.max_species >= 0 && species_on_path + 1 > opt.max_species) continue;
            on_path[a.to] = 1;
            path.push_back(a.to);
            labels.push_back(&a.label);
            if (species) ++species_on_path;
            dfs(a.to);
            if (species) --species_on_path;
            labels.pop_back();
            path.pop_back();
            on_path[a.to] = 0;
        }
    }
};

}  // namespace

std::vector<DsrCircuit> enumerate_circuits(const DsrGraph& g, const CircuitOptions& opt) {
    CircuitSearch cs{g, opt, adjacency(g), {}, {}, {}, {}, 0, 0};
    cs.on_path.assign(static_cast<std::size_t>(g.node_count()), 0);
    for (int r = 0; r < g.n; ++r) {
        if (opt.max_species == 0) break;
        cs.root = r;
        cs.on_path[r] = 1;
        cs.path = {r};
        cs.species_on_path = 1;
        cs.dfs(r);
        cs.on_path[r] = 0;
    }
    return std::move(cs.out);
}

namespace {

struct NucleusSearch {
    const std::vector<DsrCircuit>& circuits;
    int s;
    std::vector<char> used;
    SignedPolynomial total;

    void go(std::size_t from, int species, const SignedPolynomial& acc) {
        if (species == s) {
            total += acc;
            return;
        }
        for (std::size_t k = from; k < circuits.size(); ++k) {
            const DsrCircuit& c = circuits[k];
            if (species + c.species_count > s) continue;
            bool clash = std::any_of(c.nodes.begin(), c.nodes.end(), [&](int v) { return used[v]; });
            if (clash) continue;
            for (int v : c.nodes) used[v] = 1;
            go(k + 1, species + c.species_count, acc * c.label);
            for (int v : c.nodes) used[v] = 0;
        }
    }
};

}  // namespace

SignedPolynomial nucleus_determinant(const DsrGraph& g, int s, long long max_circuits) {
    if (s == 0) return SignedPolynomial::constant(1);
    CircuitOptions opt;
    opt.max_species = s;
    opt.max_circuits = max_circuits;
    auto circuits = enumerate_circuits(g, opt);
    NucleusSearch ns{circuits, s, std::vector<char>(static_cast<std::size_t>(g.node_count()), 0), {}};
    ns.go(0, 0, SignedPolynomial::constant(1));
    return ns.total;
}

std::string export_dot(const DsrGraph& g) {
    auto sname = [&](int j) {
        return j < static_cast<int>(g.species_names.size()) ? g.species_names[j] : "S" + std::to_string(j + 1);
    };
    auto rname = [&](int u) {
        return u < static_cast<int>(g.reaction_labels.size()) ? g.reaction_labels[u] : "r" + std::to_string(u + 1);
    };
    std::ostringstream os;
    os << "digraph dsr {\n";
    for (int j = 0; j < g.n; ++j) os << "  \"S" << j + 1 << "\" [shape=ellipse, label=\"" << sname(j) << "\"];\n";
    for (int u = 0; u < g.m; ++u) os << "  \"r" << u + 1 << "\" [shape=box, label=\"" << rname(u) << "\"];\n";
    for (const auto& e : g.species_edges) {
        os << "  \"S" << e.species + 1 << "\" -> \"r" << e.reaction + 1 << "\" [label=\"" << (e.sign < 0 ? "-" : "")
           << "z(" << rname(e.reaction) << "," << sname(e.species) << ")\"";
        if (e.sign < 0) os << ", style=dashed";
        os << "];\n";
    }
    for (const auto& e : g.reaction_edges)
        os << "  \"r" << e.reaction + 1 << "\" -> \"S" << e.species + 1 << "\" [label=\"" << e.a.get_str() << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace crn
