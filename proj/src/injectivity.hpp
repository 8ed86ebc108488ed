#pragma once

#include "influence.hpp"
#include "network.hpp"
#include "sympoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crn {

enum class VerdictResult { Injective, NotInjective, AllSteadyStatesDegenerate };
const char* to_string(VerdictResult r);

// Variable kind used by a verdict's polynomial.
enum class PolyVars { Z, Kinetic };

struct Verdict {
    VerdictResult result = VerdictResult::NotInjective;
    std::string kinetics_class;  // e.g. "K_g(N,I)", "K_g(N)[v]"
    std::string theorem;         // descriptive tag of the criterion applied
    SignedPolynomial polynomial; // the classified determinant
    PolyVars vars = PolyVars::Z;
    SignClass witness;
    std::vector<std::string> notes;
};

VerdictResult verdict_of(const SignClass& sc);

// Kinetic variables of a fixed-order expansion: k_u has id u, c_j has id m + j.
inline unsigned k_var(int u) { return static_cast<unsigned>(u); }
inline unsigned c_var(int j, int m) { return static_cast<unsigned>(m + j); }
VarNamer kinetic_namer(const Network& net);

struct FixedOrderTerm {
    std::vector<int> J;                // species
    std::vector<int> C;                // reactions
    Rational coeff;                    // det(A_{J,C}) det(Z(v)_{C,J})
    std::vector<Rational> c_exponent;  // of c^{-1 + sum_{l in C} v_l} prod_{j not in J} c_j
};

struct FixedOrderResult {
    Verdict verdict;
    std::vector<FixedOrderTerm> terms;
};

// Sign test over all rate constants and concentrations for one kinetic order.
FixedOrderResult check_fixed_order(const Network& net, const KineticOrder& v);

// Symbolic determinant p_I of the modified matrix.
SignedPolynomial influence_determinant(const Network& net, const InfluenceSpec& i);

Verdict check_sns(const Network& net, const InfluenceSpec& i);

struct SignedDeterminant {
    bool signed_ = false;
    int delta = 0;
};
SignedDeterminant has_signed_determinant(const Network& net, const InfluenceSpec& i);

// Throws PreconditionError unless i1 <= i2.
Verdict check_bounded_union(const Network& net, const InfluenceSpec& i1, const InfluenceSpec& i2);

// Throws PreconditionError naming the first reaction whose reactant species
// carry a zero influence.
Verdict check_weakly_monotonic(const Network& net, const InfluenceSpec& i);

enum class RestrictionStatus { Injective, OnlyDegenerate, NotInjective, Skipped };
const char* to_string(RestrictionStatus s);

struct RestrictionEntry {
    std::vector<int> reactions;
    RestrictionStatus status = RestrictionStatus::Skipped;
    SignedPolynomial determinant;
};

struct RestrictionOptions {
    long long max_subsets = 100000;
    bool require_hypothesis = false;
};

struct RestrictionReport {
    int s = 0;
    bool hypothesis_met = false;  // full network SNS
    Verdict full;
    std::vector<RestrictionEntry> entries;
};

RestrictionReport analyze_restrictions(const Network& net, const InfluenceSpec& i,
                                       const RestrictionOptions& opt = {});

struct StarTerm {
    std::vector<int> J;
    std::vector<int> C;
    SignedPolynomial product;  // det(A_{J,C}) det(Z_{C,J}), without the sign factor
    SignTag signed_tag;        // classification after the (-1)^{|J|} factor
};

struct PMatrixReport {
    Verdict sns;
    bool hypothesis_met = false;          // I <= I_R
    bool order_exists = false;            // species beyond position d all have influence
    bool p_matrix_for_all_orders = false;
    bool consistent = true;               // p-matrix property agrees with the sns verdict
    std::vector<int> species_order;
    std::optional<std::vector<int>> failing_minor;  // positions in species_order
    bool condition_star = true;
    std::vector<StarTerm> star_violations;
};

// require_hypothesis turns a failed I <= I_R into a PreconditionError.
PMatrixReport check_p_matrix(const Network& net, const InfluenceSpec& i, bool require_hypothesis = false);

// det(A_{J,C}) det(Z_{C,J}) for species J and reactions C; the (-1)^{|J|}
// factor of condition (*) is not applied.
SignedPolynomial star_product(const Network& net, const InfluenceSpec& i, const std::vector<int>& J,
                              const std::vector<int>& C);

}  // namespace crn
