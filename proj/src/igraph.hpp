#pragma once

#include "influence.hpp"
#include "network.hpp"
#include "sympoly.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace crn {

// g[j][i] is the label of the edge j -> i, in {-1, 0, +1}.
struct InteractionGraph {
    std::vector<std::vector<int8_t>> g;

    InteractionGraph() = default;
    explicit InteractionGraph(int n) : g(static_cast<std::size_t>(n), std::vector<int8_t>(static_cast<std::size_t>(n), 0)) {}
    int n() const { return static_cast<int>(g.size()); }
    int at(int j, int i) const { return g[j][i]; }
    bool operator==(const InteractionGraph& o) const { return g == o.g; }
};

// side[i][j] is 1 (H1) or 2 (H2) for j in H(i); entries for j outside H(i)
// must stay 0. An empty Partition means H1 = H everywhere.
struct Partition {
    std::vector<std::vector<int8_t>> side;

    static Partition all_h1(const InteractionGraph& g);
    int at(int i, int j) const { return side.empty() ? 1 : side[i][j]; }
};

// Nodes with at least one incoming edge.
std::vector<int> incoming_nodes(const InteractionGraph& g);

// Reactions are (0 -> S_i, S_i -> 0) for each i with an incoming edge, in
// ascending i. Throws PreconditionError when no node has an incoming edge
// and DimensionError when the partition marks a j outside H(i).
std::pair<Network, InfluenceSpec> network_from_graph(const InteractionGraph& g, const Partition& p = {},
                                                     const std::vector<std::string>& names = {});

enum class NucleiKind { Coherent, Mixed, None };
const char* to_string(NucleiKind k);

struct NucleiVerdict {
    NucleiKind kind = NucleiKind::None;
    int sign = 0;  // common nucleus sign when Coherent
    int s = 0;
    long long positive = 0;
    long long negative = 0;
};

// Nucleus sign is (-1)^{p+1}, p the number of positive circuits; the circuit
// sign is the product of its edge labels.
NucleiVerdict nuclei_verdict(const InteractionGraph& g, long long max_nuclei = 10000000);

// Symbolic determinant of (g[j][i] z_{j,i}); variable id j*n + i.
SignedPolynomial sign_matrix_determinant(const InteractionGraph& g);
bool msns_check(const InteractionGraph& g);

// Entrywise signs of A*Z, transposed into the edge convention. Throws
// PreconditionError listing every entry whose linear form mixes signs.
InteractionGraph interaction_sign_matrix(const Network& net, const InfluenceSpec& i);

}  // namespace crn
