#pragma once

#include "linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace crn {

// Species index (0-based) to non-negative coefficient. Zero entries are never stored.
struct Complex {
    std::map<int, Rational> coeff;

    bool is_zero() const { return coeff.empty(); }
    Rational at(int species) const;
    void add(int species, const Rational& c);
    bool operator==(const Complex& o) const { return coeff == o.coeff; }
    bool operator<(const Complex& o) const { return coeff < o.coeff; }
};

struct Reaction {
    std::string label;
    Complex reactant;
    Complex product;
};

struct Network {
    std::vector<std::string> species;
    std::vector<Reaction> reactions;

    int n() const { return static_cast<int>(species.size()); }
    int m() const { return static_cast<int>(reactions.size()); }
    int species_index(const std::string& name) const;  // -1 when absent
    int reaction_index(const std::string& label) const;
    std::vector<Complex> complexes() const;             // distinct, in order of appearance

    // Throws DimensionError or PreconditionError when a structural rule is broken.
    void validate() const;
    bool operator==(const Network& o) const;
};

struct StoichInfo {
    RatMatrix A;                     // n x m, original species order
    int s = 0;
    int d = 0;
    std::vector<int> species_order;  // position -> original species index
    RatMatrix reduced_basis;         // d rows, coordinates in species_order

    // Basis row k expressed in the original species coordinates.
    std::vector<Rational> basis_vector(int k) const;
};

RatMatrix build_stoich(const Network& net);

// priority lists species in the order they should be preferred as pivots;
// empty means 0..n-1.
StoichInfo conservation_analysis(const RatMatrix& A, const std::vector<int>& priority = {});

// R holds 0-based reaction indices; kept in the given order.
Network restrict_network(const Network& net, const std::vector<int>& R);

// Same network with species relabelled: new species k is old species perm[k].
Network permute_species(const Network& net, const std::vector<int>& perm);
Network permute_reactions(const Network& net, const std::vector<int>& perm);

}  // namespace crn
