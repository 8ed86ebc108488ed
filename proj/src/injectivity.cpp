#include "injectivity.hpp"

#include "combinatorics.hpp"
#include "errors.hpp"
#include "parallel.hpp"

#include <numeric>

namespace crn {

const char* to_string(VerdictResult r) {
    switch (r) {
        case VerdictResult::Injective: return "Injective";
        case VerdictResult::NotInjective: return "NotInjective";
        case VerdictResult::AllSteadyStatesDegenerate: return "AllSteadyStatesDegenerate";
    }
    return "?";
}

const char* to_string(RestrictionStatus s) {
    switch (s) {
        case RestrictionStatus::Injective: return "Injective";
        case RestrictionStatus::OnlyDegenerate: return "OnlyDegenerate";
        case RestrictionStatus::NotInjective: return "NotInjective";
        case RestrictionStatus::Skipped: return "Skipped";
    }
    return "?";
}

VerdictResult verdict_of(const SignClass& sc) {
    if (sc.uniform()) return VerdictResult::Injective;
    if (sc.tag == SignTag::Zero) return VerdictResult::AllSteadyStatesDegenerate;
    return VerdictResult::NotInjective;
}

VarNamer kinetic_namer(const Network& net) {
    const int m = net.m();
    std::vector<std::string> species = net.species;
    std::vector<std::string> labels;
    for (const auto& r : net.reactions) labels.push_back(r.label);
    return [m, species, labels](unsigned id) {
        if (static_cast<int>(id) < m) return "k(" + labels.at(id) + ")";
        return "c(" + species.at(id - static_cast<unsigned>(m)) + ")";
    };
}

namespace {

StoichInfo stoich_of(const Network& net) { return conservation_analysis(build_stoich(net)); }

std::vector<int> iota_vec(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

FixedOrderResult check_fixed_order(const Network& net, const KineticOrder& v) {
    check_shape(v, net);
    const int n = net.n();
    const int m = net.m();
    const StoichInfo st = stoich_of(net);
    const int s = st.s;

    FixedOrderResult out;
    SignedPolynomial poly;
    for_each_subset(m, s, [&](const std::vector<int>& C) {
        if (rank(submatrix(st.A, iota_vec(n), C)) < s) return true;
        for_each_subset(n, s, [&](const std::vector<int>& J) {
            Rational dA = determinant(submatrix(st.A, J, C));
            if (dA == 0) return true;
            RatMatrix zs = zeros(s, s);
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b) zs[a][b] = v.v[C[a]][J[b]];
            Rational dZ = determinant(zs);
            if (dZ == 0) return true;
            FixedOrderTerm t;
            t.J = J;
            t.C = C;
            t.coeff = dA * dZ;
            t.c_exponent.assign(static_cast<std::size_t>(n), Rational(-1));
            for (int l : C)
                for (int j = 0; j < n; ++j) t.c_exponent[j] += v.v[l][j];
            VarSet mono;
            for (int l : C) mono.insert(k_var(l));
            std::vector<bool> inJ(static_cast<std::size_t>(n), false);
            for (int j : J) inJ[j] = true;
            for (int j = 0; j < n; ++j)
                if (!inJ[j]) {
                    mono.insert(c_var(j, m));
                    t.c_exponent[j] += 1;
                }
            poly.add_term(mono, t.coeff);
            out.terms.push_back(std::move(t));
            return true;
        });
        return true;
    });

    Verdict& vd = out.verdict;
    vd.kinetics_class = "K_g(N)[v]";
    vd.theorem = "fixed-order-determinant";
    vd.vars = PolyVars::Kinetic;
    vd.witness = sign_classify(poly);
    vd.result = verdict_of(vd.witness);
    vd.polynomial = std::move(poly);
    if (s == 0) vd.notes.push_back("stoichiometric dimension is zero");
    return out;
}

SignedPolynomial influence_determinant(const Network& net, const InfluenceSpec& i) {
    check_shape(i, net);
    const StoichInfo st = stoich_of(net);
    return det_symbolic(modified_matrix(st, sign_pattern(i)));
}

Verdict check_sns(const Network& net, const InfluenceSpec& i) {
    Verdict vd;
    vd.polynomial = influence_determinant(net, i);
    vd.witness = sign_classify(vd.polynomial);
    vd.result = verdict_of(vd.witness);
    vd.kinetics_class = "K_g(N,I)";
    vd.theorem = "sns-determinant";
    if (vd.result == VerdictResult::Injective)
        vd.notes.push_back("sign-nonsingular influence; the verdict extends to K(N,I) and K_d(N,I)");
    else if (vd.result == VerdictResult::NotInjective)
        vd.notes.push_back("determinant has monomials of both signs");
    else
        vd.notes.push_back("determinant vanishes identically; every steady state is degenerate");
    return vd;
}

SignedDeterminant has_signed_determinant(const Network& net, const InfluenceSpec& i) {
    SignClass sc = sign_classify(influence_determinant(net, i));
    return {sc.tag != SignTag::Mixed, sc.sign()};
}

Verdict check_bounded_union(const Network& net, const InfluenceSpec& i1, const InfluenceSpec& i2) {
    check_shape(i1, net);
    check_shape(i2, net);
    if (!influence_leq(i1, i2)) throw PreconditionError("lower influence is not below the upper influence");
    Verdict upper = check_sns(net, i2);
    Verdict out;
    out.kinetics_class = "union of K_g(N,I) for I1 <= I <= I2";
    out.theorem = "bounded-union";
    if (upper.result != VerdictResult::Injective) {
        out.result = upper.result;
        out.polynomial = std::move(upper.polynomial);
        out.witness = std::move(upper.witness);
        out.notes.push_back(upper.result == VerdictResult::NotInjective
                                ? "upper influence has no signed determinant"
                                : "upper influence has an identically zero determinant");
        return out;
    }
    Verdict lower = check_sns(net, i1);
    if (lower.result != VerdictResult::Injective) {
        out.result = lower.result;
        out.polynomial = std::move(lower.polynomial);
        out.witness = std::move(lower.witness);
        out.notes.push_back("determinant vanishes at the lower influence; the union is not injective");
        return out;
    }
    out.result = VerdictResult::Injective;
    out.polynomial = std::move(upper.polynomial);
    out.witness = std::move(upper.witness);
    out.notes.push_back("both endpoints are sign-nonsingular with the same sign");
    return out;
}

Verdict check_weakly_monotonic(const Network& net, const InfluenceSpec& i) {
    auto gaps = reactant_sign_gaps(i, net);
    if (!gaps.empty())
        throw PreconditionError("reaction " + net.reactions[gaps.front()].label +
                                " has a reactant species with zero influence");
    Verdict v = check_bounded_union(net, reactant_restricted(i, net), i);
    v.kinetics_class = "K_w(N,I)";
    v.theorem = "weakly-monotonic-interval";
    return v;
}

RestrictionReport analyze_restrictions(const Network& net, const InfluenceSpec& i, const RestrictionOptions& opt) {
    check_shape(i, net);
    RestrictionReport rep;
    const StoichInfo st = stoich_of(net);
    rep.s = st.s;
    rep.full = check_sns(net, i);
    rep.hypothesis_met = rep.full.result == VerdictResult::Injective;
    if (opt.require_hypothesis && !rep.hypothesis_met) throw PreconditionError("theorem hypothesis not met");

    const int n = net.n();
    std::vector<std::vector<int>> subsets;
    long long total = binomial(net.m(), st.s);
    if (total > opt.max_subsets)
        throw CapExceeded("restriction sweep needs " + std::to_string(total) + " subsets, cap is " +
                              std::to_string(opt.max_subsets),
                          0);
    for_each_subset(net.m(), st.s, [&](const std::vector<int>& R) {
        subsets.push_back(R);
        return true;
    });

    rep.entries.resize(subsets.size());
    parallel_for(subsets.size(), [&](std::size_t k) {
        RestrictionEntry& e = rep.entries[k];
        e.reactions = subsets[k];
        if (rank(submatrix(st.A, iota_vec(n), e.reactions)) < st.s) {
            e.status = RestrictionStatus::Skipped;
            return;
        }
        Network sub = restrict_network(net, e.reactions);
        InfluenceSpec si(static_cast<int>(e.reactions.size()), n);
        for (std::size_t a = 0; a < e.reactions.size(); ++a) si.signs[a] = i.signs[e.reactions[a]];
        e.determinant = influence_determinant(sub, si);
        SignClass sc = sign_classify(e.determinant);
        e.status = sc.uniform() ? RestrictionStatus::Injective
                   : sc.tag == SignTag::Zero ? RestrictionStatus::OnlyDegenerate
                                             : RestrictionStatus::NotInjective;
    });
    return rep;
}

SignedPolynomial star_product(const Network& net, const InfluenceSpec& i, const std::vector<int>& J,
                              const std::vector<int>& C) {
    check_shape(i, net);
    if (J.size() != C.size()) throw DimensionError("J and C differ in size");
    const RatMatrix A = build_stoich(net);
    Rational dA = determinant(submatrix(A, J, C));
    if (dA == 0) return {};
    SignPattern z = sign_pattern(i);
    SymMatrix zs(J.size(), std::vector<SignedPolynomial>(J.size()));
    for (std::size_t a = 0; a < C.size(); ++a)
        for (std::size_t b = 0; b < J.size(); ++b) zs[a][b] = z.entry(C[a], J[b]);
    return det_leibniz(zs).scaled(dA);
}

namespace {

PMatrixReport finish(PMatrixReport& rep) {
    rep.consistent = rep.p_matrix_for_all_orders == (rep.sns.result == VerdictResult::Injective);
    return std::move(rep);
}

}  // namespace

PMatrixReport check_p_matrix(const Network& net, const InfluenceSpec& i, bool require_hypothesis) {
    check_shape(i, net);
    PMatrixReport rep;
    rep.hypothesis_met = influence_leq(i, reaction_influence(net));
    if (require_hypothesis && !rep.hypothesis_met) throw PreconditionError("influence is not below the reaction influence");
    rep.sns = check_sns(net, i);
    const int n = net.n();
    const int m = net.m();

    // Condition (*): every (-1)^{|J|} det(A_{J,C}) det(Z_{C,J}) must be >= 0.
    const int kmax = std::min({n, m, 10});
    const RatMatrix A = build_stoich(net);
    const SignPattern z = sign_pattern(i);
    for (int k = 1; k <= kmax; ++k) {
        for_each_subset(n, k, [&](const std::vector<int>& J) {
            for_each_subset(m, k, [&](const std::vector<int>& C) {
                Rational dA = determinant(submatrix(A, J, C));
                if (dA == 0) return true;
                SymMatrix zs(static_cast<std::size_t>(k), std::vector<SignedPolynomial>(static_cast<std::size_t>(k)));
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) zs[a][b] = z.entry(C[a], J[b]);
                SignedPolynomial prod = det_leibniz(zs).scaled(dA);
                if (prod.is_zero()) return true;
                SignTag tag = sign_classify(k % 2 ? -prod : prod).tag;
                if (tag == SignTag::AllNegative || tag == SignTag::Mixed) {
                    rep.condition_star = false;
                    rep.star_violations.push_back({J, C, std::move(prod), tag});
                }
                return true;
            });
            return true;
        });
    }

    if (!rep.hypothesis_met) {
        rep.sns.notes.push_back("influence is not below the reaction influence; P-matrix test skipped");
        return rep;
    }

    std::vector<bool> has_influence(static_cast<std::size_t>(n), false);
    for (int u = 0; u < m; ++u)
        for (int j = 0; j < n; ++j)
            if (i.at(u, j) != 0) has_influence[j] = true;
    std::vector<int> silent, loud;
    for (int j = 0; j < n; ++j) (has_influence[j] ? loud : silent).push_back(j);

    const int d = n - rank(A);
    if (static_cast<int>(silent.size()) > d) return finish(rep);
    if (n > 20) throw CapExceeded("principal minor sweep limited to 20 species", 0);
    const int extra = d - static_cast<int>(silent.size());
    if (binomial(static_cast<int>(loud.size()), extra) > 4096)
        throw CapExceeded("too many pivot choices for the P-matrix search", 4096);

    // Only the split into the top d pivots and the rest matters: reordering
    // inside either block permutes rows and columns together.
    for_each_subset(static_cast<int>(loud.size()), extra, [&](const std::vector<int>& pick) {
        std::vector<int> priority = silent;
        std::vector<bool> top(static_cast<std::size_t>(n), false);
        for (int j : silent) top[j] = true;
        for (int x : pick) {
            priority.push_back(loud[x]);
            top[loud[x]] = true;
        }
        for (int j : loud)
            if (!top[j]) priority.push_back(j);
        const StoichInfo st = conservation_analysis(A, priority);
        for (int p = 0; p < st.d; ++p)
            if (!top[st.species_order[p]]) return true;  // no reduced basis on this pivot set

        const bool first = !rep.order_exists;
        rep.order_exists = true;
        SymMatrix M = modified_matrix(st, z);
        for (int p = st.d; p < n; ++p)
            for (auto& e : M[p]) e = -e;
        std::optional<std::vector<int>> bad;
        for (uint32_t mask = 1; mask < (uint32_t{1} << n) && !bad; ++mask) {
            std::vector<int> K;
            for (int q = 0; q < n; ++q)
                if (mask & (uint32_t{1} << q)) K.push_back(q);
            SymMatrix sub(K.size(), std::vector<SignedPolynomial>(K.size()));
            for (std::size_t a = 0; a < K.size(); ++a)
                for (std::size_t b = 0; b < K.size(); ++b) sub[a][b] = M[K[a]][K[b]];
            if (sign_classify(det_symbolic(sub)).tag != SignTag::AllPositive) bad = K;
        }
        if (first || !bad) {
            rep.species_order = st.species_order;
            rep.failing_minor = bad;
        }
        rep.p_matrix_for_all_orders = !bad;
        return static_cast<bool>(bad);
    });
    return finish(rep);
}

}  // namespace crn
