#include "igraph.hpp"

#include "errors.hpp"

#include <functional>

namespace crn {

Partition Partition::all_h1(const InteractionGraph& g) {
    Partition p;
    p.side.assign(static_cast<std::size_t>(g.n()), std::vector<int8_t>(static_cast<std::size_t>(g.n()), 0));
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.at(j, i) != 0) p.side[i][j] = 1;
    return p;
}

const char* to_string(NucleiKind k) {
    switch (k) {
        case NucleiKind::Coherent: return "Coherent";
        case NucleiKind::Mixed: return "Mixed";
        case NucleiKind::None: return "None";
    }
    return "?";
}

std::vector<int> incoming_nodes(const InteractionGraph& g) {
    std::vector<int> J;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.at(j, i) != 0) {
                J.push_back(i);
                break;
            }
    return J;
}

std::pair<Network, InfluenceSpec> network_from_graph(const InteractionGraph& g, const Partition& p,
                                                     const std::vector<std::string>& names) {
    const int n = g.n();
    for (const auto& row : g.g)
        if (static_cast<int>(row.size()) != n) throw DimensionError("interaction matrix is not square");
    if (!p.side.empty()) {
        if (static_cast<int>(p.side.size()) != n) throw DimensionError("partition does not match the graph");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int s = p.side[i][j];
                if (s != 0 && g.at(j, i) == 0)
                    throw DimensionError("partition places node " + std::to_string(j + 1) + " in H(" +
                                         std::to_string(i + 1) + ") but there is no edge");
                if (s < 0 || s > 2) throw DimensionError("partition side must be 1 or 2");
            }
    }
    std::vector<int> J = incoming_nodes(g);
    if (J.empty()) throw PreconditionError("no reactions: the graph has no edges");

    Network net;
    for (int i = 0; i < n; ++i)
        net.species.push_back(i < static_cast<int>(names.size()) ? names[i] : "S" + std::to_string(i + 1));
    for (int i : J) {
        Reaction in{"in_" + net.species[i], {}, {}};
        in.product.add(i, 1);
        Reaction out{"out_" + net.species[i], {}, {}};
        out.reactant.add(i, 1);
        net.reactions.push_back(std::move(in));
        net.reactions.push_back(std::move(out));
    }
    InfluenceSpec inf(net.m(), n);
    for (std::size_t k = 0; k < J.size(); ++k) {
        int i = J[k];
        for (int j = 0; j < n; ++j) {
            if (g.at(j, i) == 0) continue;
            int side = p.side.empty() ? 1 : p.side[i][j];
            if (side == 0) side = 1;
            if (side == 1)
                inf.set(static_cast<int>(2 * k), j, g.at(j, i));
            else
                inf.set(static_cast<int>(2 * k + 1), j, -g.at(j, i));
        }
    }
    return {std::move(net), std::move(inf)};
}

NucleiVerdict nuclei_verdict(const InteractionGraph& g, long long max_nuclei) {
    NucleiVerdict out;
    std::vector<int> J = incoming_nodes(g);
    out.s = static_cast<int>(J.size());
    const int n = g.n();
    std::vector<char> inJ(static_cast<std::size_t>(n), 0);
    for (int i : J) inJ[i] = 1;

    // A nucleus covering J gives every node of J exactly one predecessor in J.
    std::vector<int> pred(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    long long count = 0;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == J.size()) {
            if (++count > max_nuclei) throw CapExceeded("nucleus enumeration exceeded its cap", count - 1);
            std::vector<char> seen(static_cast<std::size_t>(n), 0);
            int positive_circuits = 0;
            for (int start : J) {
                if (seen[start]) continue;
                int label = 1;
                int v = start;
                do {
                    seen[v] = 1;
                    label *= g.at(pred[v], v);
                    v = pred[v];
                } while (v != start);
                if (label > 0) ++positive_circuits;
            }
            int sign = (positive_circuits + 1) % 2 == 0 ? 1 : -1;
            if (sign > 0)
                ++out.positive;
            else
                ++out.negative;
            return;
        }
        int i = J[k];
        for (int j = 0; j < n; ++j) {
            if (!inJ[j] || used[j] || g.at(j, i) == 0) continue;
            used[j] = 1;
            pred[i] = j;
            go(k + 1);
            used[j] = 0;
        }
        pred[i] = -1;
    };
    go(0);
    if (out.positive == 0 && out.negative == 0) {
        out.kind = NucleiKind::None;
    } else if (out.positive > 0 && out.negative > 0) {
        out.kind = NucleiKind::Mixed;
    } else {
        out.kind = NucleiKind::Coherent;
        out.sign = out.positive > 0 ? 1 : -1;
    }
    return out;
}

SignedPolynomial sign_matrix_determinant(const InteractionGraph& g) {
    const int n = g.n();
    SymMatrix M(static_cast<std::size_t>(n), std::vector<SignedPolynomial>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(g.g[j].size()) != n) throw DimensionError("sign matrix is not square");
        for (int i = 0; i < n; ++i)
            if (g.at(j, i) != 0)
                M[j][i] = SignedPolynomial::variable(static_cast<unsigned>(j * n + i), Rational(g.at(j, i)));
    }
    return det_symbolic(M);
}

bool msns_check(const InteractionGraph& g) { return sign_classify(sign_matrix_determinant(g)).uniform(); }

InteractionGraph interaction_sign_matrix(const Network& net, const InfluenceSpec& i) {
    check_shape(i, net);
    const int n = net.n();
    const int m = net.m();
    const RatMatrix A = build_stoich(net);
    InteractionGraph out(n);
    std::string ambiguous;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            bool pos = false, neg = false;
            for (int u = 0; u < m; ++u) {
                int sg = sgn(A[k][u]) * i.at(u, j);
                pos |= sg > 0;
                neg |= sg < 0;
            }
            if (pos && neg) {
                if (!ambiguous.empty()) ambiguous += ", ";
                ambiguous += "(" + net.species[k] + "," + net.species[j] + ")";
            } else {
                out.g[j][k] = static_cast<int8_t>(pos ? 1 : neg ? -1 : 0);
            }
        }
    if (!ambiguous.empty()) throw PreconditionError("sign-indeterminate entries of A*Z: " + ambiguous);
    return out;
}

}  // namespace crn
