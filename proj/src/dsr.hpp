#pragma once

#include "influence.hpp"
#include "network.hpp"
#include "sympoly.hpp"

#include <string>
#include <vector>

namespace crn {

// Nodes 0..n-1 are species, n..n+m-1 reactions.
struct DsrGraph {
    struct SpeciesEdge {  // S_i -> r_u, label sign * z(u,i)
        int species;
        int reaction;
        int sign;
    };
    struct ReactionEdge {  // r_u -> S_i, label a_{i,u}
        int reaction;
        int species;
        Rational a;
    };

    int n = 0;
    int m = 0;
    std::vector<SpeciesEdge> species_edges;
    std::vector<ReactionEdge> reaction_edges;
    std::vector<std::string> species_names;
    std::vector<std::string> reaction_labels;

    int node_count() const { return n + m; }
};

DsrGraph build_dsr(const Network& net, const InfluenceSpec& i);

// Circuit with the species-parity sign already folded into the label: a
// circuit with an even number of species nodes is negated.
struct DsrCircuit {
    std::vector<int> nodes;  // starts at its smallest species node
    int species_count = 0;
    int sign = 1;
    SignedPolynomial label;  // sign * product of edge labels
};

struct CircuitOptions {
    int max_species = -1;           // prune circuits with more species nodes; -1 = no bound
    long long max_circuits = 1000000;
};

// Throws CapExceeded (partial = circuits found so far) when the cap is hit.
std::vector<DsrCircuit> enumerate_circuits(const DsrGraph& g, const CircuitOptions& opt = {});

// Sum over all node-disjoint circuit collections covering exactly s species.
SignedPolynomial nucleus_determinant(const DsrGraph& g, int s, long long max_circuits = 1000000);

std::string export_dot(const DsrGraph& g);

}  // namespace crn
