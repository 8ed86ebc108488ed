#include "influence.hpp"

#include "errors.hpp"

namespace crn {

InfluenceSpec::InfluenceSpec(int m, int n)
    : signs(static_cast<std::size_t>(m), std::vector<int8_t>(static_cast<std::size_t>(n), 0)) {}

void check_shape(const InfluenceSpec& i, const Network& net) {
    if (i.m() != net.m() || (net.m() > 0 && i.n() != net.n()))
        throw DimensionError("influence specification does not match the network dimensions");
}

void check_shape(const KineticOrder& v, const Network& net) {
    if (v.m() != net.m() || (net.m() > 0 && v.n() != net.n()))
        throw DimensionError("kinetic order does not match the network dimensions");
}

InfluenceSpec zero_influence(const Network& net) { return InfluenceSpec(net.m(), net.n()); }

InfluenceSpec complex_influence(const Network& net) {
    InfluenceSpec out(net.m(), net.n());
    for (int u = 0; u < net.m(); ++u)
        for (const auto& [j, q] : net.reactions[u].reactant.coeff)
            if (q > 0) out.set(u, j, 1);
    return out;
}

InfluenceSpec reaction_influence(const Network& net) {
    InfluenceSpec out(net.m(), net.n());
    for (int u = 0; u < net.m(); ++u) {
        const auto& r = net.reactions[u];
        for (int j = 0; j < net.n(); ++j) out.set(u, j, sgn(r.reactant.at(j) - r.product.at(j)));
    }
    return out;
}

bool influence_leq(const InfluenceSpec& a, const InfluenceSpec& b) {
    if (a.m() != b.m() || a.n() != b.n()) throw DimensionError("influence specifications differ in shape");
    for (int u = 0; u < a.m(); ++u)
        for (int j = 0; j < a.n(); ++j)
            if (a.at(u, j) != 0 && a.at(u, j) != b.at(u, j)) return false;
    return true;
}

InfluenceSpec reactant_restricted(const InfluenceSpec& i, const Network& net) {
    check_shape(i, net);
    InfluenceSpec out(i.m(), i.n());
    for (int u = 0; u < i.m(); ++u)
        for (const auto& [j, q] : net.reactions[u].reactant.coeff)
            if (q > 0) out.set(u, j, i.at(u, j));
    return out;
}

std::vector<int> reactant_sign_gaps(const InfluenceSpec& i, const Network& net) {
    check_shape(i, net);
    std::vector<int> out;
    for (int u = 0; u < i.m(); ++u)
        for (const auto& [j, q] : net.reactions[u].reactant.coeff)
            if (q > 0 && i.at(u, j) == 0) {
                out.push_back(u);
                break;
            }
    return out;
}

InfluenceSpec influence_of(const KineticOrder& v) {
    InfluenceSpec out(v.m(), v.n());
    for (int u = 0; u < v.m(); ++u)
        for (int j = 0; j < v.n(); ++j) out.set(u, j, sgn(v.v[u][j]));
    return out;
}

KineticOrder unit_order(const InfluenceSpec& i) {
    KineticOrder out;
    out.v.assign(static_cast<std::size_t>(i.m()), std::vector<Rational>(static_cast<std::size_t>(i.n())));
    for (int u = 0; u < i.m(); ++u)
        for (int j = 0; j < i.n(); ++j) out.v[u][j] = i.at(u, j);
    return out;
}

KineticOrder mass_action_order(const Network& net) {
    KineticOrder out;
    out.v.assign(static_cast<std::size_t>(net.m()), std::vector<Rational>(static_cast<std::size_t>(net.n())));
    for (int u = 0; u < net.m(); ++u)
        for (const auto& [j, q] : net.reactions[u].reactant.coeff) out.v[u][j] = q;
    return out;
}

}  // namespace crn
