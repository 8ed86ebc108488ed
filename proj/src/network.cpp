#include "network.hpp"

#include "errors.hpp"

#include <algorithm>
#include <set>

namespace crn {

Rational Complex::at(int species) const {
    auto it = coeff.find(species);
    return it == coeff.end() ? Rational(0) : it->second;
}

void Complex::add(int species, const Rational& c) {
    Rational v = at(species) + c;
    if (v == 0)
        coeff.erase(species);
    else
        coeff[species] = v;
}

int Network::species_index(const std::string& name) const {
    for (int i = 0; i < n(); ++i)
        if (species[i] == name) return i;
    return -1;
}

int Network::reaction_index(const std::string& label) const {
    for (int i = 0; i < m(); ++i)
        if (reactions[i].label == label) return i;
    return -1;
}

std::vector<Complex> Network::complexes() const {
    std::vector<Complex> out;
    auto push = [&](const Complex& c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    };
    for (const auto& r : reactions) {
        push(r.reactant);
        push(r.product);
    }
    return out;
}

void Network::validate() const {
    std::set<std::string> names;
    for (const auto& s : species) {
        if (s.empty()) throw DimensionError("empty species name");
        if (!names.insert(s).second) throw DimensionError("duplicate species name '" + s + "'");
    }
    std::set<std::string> labels;
    for (const auto& r : reactions) {
        if (!labels.insert(r.label).second)
            throw DimensionError("duplicate reaction label '" + r.label + "'");
        for (const Complex* c : {&r.reactant, &r.product})
            for (const auto& [j, q] : c->coeff) {
                if (j < 0 || j >= n())
                    throw DimensionError("reaction '" + r.label + "' references an unknown species index");
                if (q < 0)
                    throw DimensionError("reaction '" + r.label + "' has a negative coefficient");
            }
        if (r.reactant == r.product)
            throw PreconditionError("reaction '" + r.label + "': (y,y) not allowed, reactant equals product");
    }
}

bool Network::operator==(const Network& o) const {
    if (species != o.species || reactions.size() != o.reactions.size()) return false;
    for (std::size_t i = 0; i < reactions.size(); ++i) {
        const auto& a = reactions[i];
        const auto& b = o.reactions[i];
        if (a.label != b.label || !(a.reactant == b.reactant) || !(a.product == b.product)) return false;
    }
    return true;
}

std::vector<Rational> StoichInfo::basis_vector(int k) const {
    std::vector<Rational> v(species_order.size());
    for (std::size_t p = 0; p < species_order.size(); ++p) v[species_order[p]] = reduced_basis[k][p];
    return v;
}

RatMatrix build_stoich(const Network& net) {
    RatMatrix A = zeros(net.n(), net.m());
    for (int u = 0; u < net.m(); ++u) {
        const auto& r = net.reactions[u];
        for (const auto& [j, q] : r.product.coeff) A[j][u] += q;
        for (const auto& [j, q] : r.reactant.coeff) A[j][u] -= q;
    }
    return A;
}

StoichInfo conservation_analysis(const RatMatrix& A, const std::vector<int>& priority) {
    StoichInfo info;
    info.A = A;
    const int n = static_cast<int>(A.size());
    const int m = num_cols(A);
    info.s = rank(A);
    info.d = n - info.s;

    std::vector<int> pi = priority;
    if (pi.empty()) {
        pi.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pi[i] = i;
    }
    if (static_cast<int>(pi.size()) != n) throw DimensionError("species priority has the wrong length");

    if (info.d == 0) {
        info.species_order.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) info.species_order[i] = i;
        return info;
    }

    RatMatrix basis;
    if (m == 0) {
        basis = zeros(n, n);
        for (int i = 0; i < n; ++i) basis[i][i] = 1;
    } else {
        basis = null_space(transpose(A));
    }
    RatMatrix permuted = zeros(info.d, n);
    for (int k = 0; k < info.d; ++k)
        for (int q = 0; q < n; ++q) permuted[k][q] = basis[k][pi[q]];
    Rref e = rref(permuted);

    std::vector<int> pos_of(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) pos_of[pi[q]] = q;
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (int p : e.pivots) {
        info.species_order.push_back(pi[p]);
        taken[p] = true;
    }
    for (int q = 0; q < n; ++q)
        if (!taken[q]) info.species_order.push_back(pi[q]);

    info.reduced_basis = zeros(info.d, n);
    for (int k = 0; k < info.d; ++k)
        for (int t = 0; t < n; ++t) info.reduced_basis[k][t] = e.rows[k][pos_of[info.species_order[t]]];
    return info;
}

Network restrict_network(const Network& net, const std::vector<int>& R) {
    if (R.empty()) throw PreconditionError("empty restriction");
    Network out;
    out.species = net.species;
    for (int u : R) {
        if (u < 0 || u >= net.m()) throw DimensionError("restriction references an unknown reaction");
        out.reactions.push_back(net.reactions[u]);
    }
    return out;
}

Network permute_species(const Network& net, const std::vector<int>& perm) {
    const int n = net.n();
    if (static_cast<int>(perm.size()) != n) throw DimensionError("species permutation has the wrong length");
    std::vector<int> new_of(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) new_of[perm[k]] = k;
    Network out;
    for (int k = 0; k < n; ++k) out.species.push_back(net.species[perm[k]]);
    for (const auto& r : net.reactions) {
        Reaction nr;
        nr.label = r.label;
        for (const auto& [j, q] : r.reactant.coeff) nr.reactant.coeff[new_of[j]] = q;
        for (const auto& [j, q] : r.product.coeff) nr.product.coeff[new_of[j]] = q;
        out.reactions.push_back(std::move(nr));
    }
    return out;
}

Network permute_reactions(const Network& net, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != net.m()) throw DimensionError("reaction permutation has the wrong length");
    Network out;
    out.species = net.species;
    for (int u : perm) out.reactions.push_back(net.reactions[u]);
    return out;
}

}  // namespace crn
