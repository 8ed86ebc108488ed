#pragma once

#include "influence.hpp"
#include "network.hpp"
#include "parse.hpp"
#include "rational.hpp"
#include "sympoly.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace crntest {

using namespace crn;

inline std::string data_path(const std::string& name) { return std::string(CRNINJECT_DATA_DIR) + "/" + name; }

inline Network load_net(const std::string& name) { return parse_network(read_file(data_path(name))); }

inline InfluenceSpec load_inf(const Network& net, const std::string& name) {
    return parse_influence(read_file(data_path(name)), net);
}

// Species named S1..Sn, reactions r1..rm with coefficients in 0..max_coeff.
// Retries until no reaction has reactant == product.
inline Network random_network(std::mt19937_64& rng, int n, int m, int max_coeff = 2, double density = 0.4) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> coeff(1, max_coeff);
    Network net;
    for (int j = 0; j < n; ++j) net.species.push_back("S" + std::to_string(j + 1));
    for (int r = 0; r < m; ++r) {
        Reaction rx;
        rx.label = "r" + std::to_string(r + 1);
        do {
            rx.reactant = {};
            rx.product = {};
            for (int j = 0; j < n; ++j) {
                if (u(rng) < density) rx.reactant.add(j, coeff(rng));
                if (u(rng) < density) rx.product.add(j, coeff(rng));
            }
        } while (rx.reactant == rx.product);
        net.reactions.push_back(rx);
    }
    return net;
}

// Random influence: each entry +1/-1/0; reactant species get a non-zero sign
// with probability p_support.
inline InfluenceSpec random_influence(std::mt19937_64& rng, const Network& net, double p_nonzero = 0.35) {
    std::uniform_real_distribution<double> u(0, 1);
    InfluenceSpec i(net.m(), net.n());
    for (int r = 0; r < net.m(); ++r)
        for (int j = 0; j < net.n(); ++j) {
            double x = u(rng);
            bool reactant = net.reactions[r].reactant.at(j) != 0;
            double p = reactant ? 0.9 : p_nonzero;
            if (x < p) i.set(r, j, u(rng) < (reactant ? 0.8 : 0.5) ? 1 : -1);
        }
    return i;
}

// Exact determinant by plain Gaussian elimination over Q; independent of the
// library's Bareiss code.
inline Rational gauss_det(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

inline std::vector<std::vector<Rational>> evaluate(const SymMatrix& M, const std::map<unsigned, Rational>& x) {
    std::vector<std::vector<Rational>> out(M.size());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (const auto& e : M[i]) {
            Rational v = 0;
            for (const auto& [vars, c] : e.terms()) {
                Rational t = c;
                for (unsigned id : vars.ids()) t *= x.at(id);
                v += t;
            }
            out[i].push_back(v);
        }
    return out;
}

inline std::map<unsigned, Rational> random_point(std::mt19937_64& rng, const std::vector<unsigned>& ids) {
    std::uniform_int_distribution<long> num(1, 97), den(1, 13);
    std::map<unsigned, Rational> x;
    for (unsigned id : ids) x[id] = make_rational(num(rng), den(rng));
    return x;
}

// Builds a polynomial from (coefficient, variable ids) pairs.
inline SignedPolynomial poly(std::initializer_list<std::pair<long, std::vector<unsigned>>> terms) {
    SignedPolynomial p;
    for (const auto& [c, ids] : terms) {
        VarSet v;
        for (unsigned id : ids) v.insert(id);
        p.add_term(v, Rational(c));
    }
    return p;
}

}  // namespace crntest
