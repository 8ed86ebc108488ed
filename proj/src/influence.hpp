#pragma once

#include "network.hpp"

#include <cstdint>
#include <vector>

namespace crn {

// signs[u][j] = influence of species j on reaction u, in {-1, 0, +1}.
struct InfluenceSpec {
    std::vector<std::vector<int8_t>> signs;

    InfluenceSpec() = default;
    InfluenceSpec(int m, int n);

    int m() const { return static_cast<int>(signs.size()); }
    int n() const { return signs.empty() ? 0 : static_cast<int>(signs[0].size()); }
    int at(int u, int j) const { return signs[u][j]; }
    void set(int u, int j, int v) { signs[u][j] = static_cast<int8_t>(v); }
    bool operator==(const InfluenceSpec& o) const { return signs == o.signs; }
};

// v[u][j] = kinetic order of species j in reaction u.
struct KineticOrder {
    std::vector<std::vector<Rational>> v;

    int m() const { return static_cast<int>(v.size()); }
    int n() const { return v.empty() ? 0 : static_cast<int>(v[0].size()); }
};

InfluenceSpec zero_influence(const Network& net);
InfluenceSpec complex_influence(const Network& net);
InfluenceSpec reaction_influence(const Network& net);

// Every non-zero entry of a equals the matching entry of b.
bool influence_leq(const InfluenceSpec& a, const InfluenceSpec& b);

// Keeps only the entries on the reactant support of each reaction.
InfluenceSpec reactant_restricted(const InfluenceSpec& i, const Network& net);

// Reactions whose reactant species include a zero-influence entry; these are
// the lint warnings emitted for the "typical" positivity condition.
std::vector<int> reactant_sign_gaps(const InfluenceSpec& i, const Network& net);

InfluenceSpec influence_of(const KineticOrder& v);
KineticOrder unit_order(const InfluenceSpec& i);      // the all-ones magnitudes
KineticOrder mass_action_order(const Network& net);   // v = reactant complex

// Variable id of z_{u,j}; species-major so that monomial order is
// colexicographic over (species, reaction).
inline unsigned z_var(int u, int j, int m) { return static_cast<unsigned>(j * m + u); }
inline int z_reaction(unsigned id, int m) { return static_cast<int>(id % static_cast<unsigned>(m)); }
inline int z_species(unsigned id, int m) { return static_cast<int>(id / static_cast<unsigned>(m)); }

void check_shape(const InfluenceSpec& i, const Network& net);
void check_shape(const KineticOrder& v, const Network& net);

}  // namespace crn
