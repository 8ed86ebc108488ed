#pragma once

#include "influence.hpp"
#include "network.hpp"
#include "sympoly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crn {

using RealMatrix = std::vector<std::vector<double>>;

struct PowerLawKinetics {
    std::vector<double> kappa;  // > 0
    RealMatrix v;               // m x n kinetic order
};

struct HillKinetics {
    std::vector<double> kappa;  // > 0
    RealMatrix delta;           // m x n, >= 0, same support as v
    RealMatrix v;
};

PowerLawKinetics power_law(const std::vector<double>& kappa, const KineticOrder& v);
RealMatrix to_real(const KineticOrder& v);

// Per-reaction rates. With boundary = true zero concentrations are allowed
// where the exponent is non-negative (0^0 = 1); otherwise c must be positive.
std::vector<double> reaction_rates(const PowerLawKinetics& k, const std::vector<double>& c, bool boundary = false);
std::vector<double> reaction_rates(const HillKinetics& k, const std::vector<double>& c);

std::vector<double> eval_rate_function(const Network& net, const PowerLawKinetics& k, const std::vector<double>& c,
                                       bool boundary = false);
std::vector<double> eval_rate_function(const Network& net, const HillKinetics& k, const std::vector<double>& c);

// det of the Jacobian of the extended rate function: reduced-basis rows on
// top, rows of A V below, in the species order of the conservation analysis.
// Evaluated in MPFR at a precision picked from the dynamic range of the entries.
double eval_jacobian_det(const Network& net, const PowerLawKinetics& k, const std::vector<double>& c);

// Same value through the monomial expansion: sum over (J, C) of
// det(A_{J,C}) det(Z(v)_{C,J}) prod_{l in C} k_l c^{v_l} prod_{j in J} 1/c_j.
double eval_jacobian_det_expansion(const Network& net, const PowerLawKinetics& k, const std::vector<double>& c);

struct AgreementOptions {
    int samples = 1000;
    uint64_t seed = 1;
    double rel_tol = 1e-9;
    double conservation_tol = 1e-12;
    double log10_min = -2;  // magnitudes of kappa, c, |v| are 10^U(min, max)
    double log10_max = 2;
};

struct AgreementReport {
    int samples = 0;
    uint64_t seed = 0;
    SignTag symbolic_tag = SignTag::Zero;
    int mismatches = 0;
    int positive = 0;
    int negative = 0;
    int zero = 0;
    double max_rel_diff = 0;            // numeric vs symbolic evaluation
    double max_conservation = 0;        // relative |omega . f|
    int conservation_violations = 0;
    std::vector<int> mismatch_samples;
};

// Draws (v with I(v) = i, kappa, c) and compares the sign of the numeric
// modified-Jacobian determinant with p_I evaluated at the matching magnitudes.
// When p_I is Mixed the first samples are steered by its witness monomials.
AgreementReport symbolic_numeric_agreement(const Network& net, const InfluenceSpec& i, const AgreementOptions& opt = {});

struct HillTransfer {
    HillKinetics hill;
    double residual_a = 0;  // max-norm of f_hill - f_pl, relative to the rate scale
    double residual_b = 0;
};

// Two-point transfer power-law -> Hill with identical f at a and b.
HillTransfer hill_transfer(const Network& net, const PowerLawKinetics& pl, const std::vector<double>& a,
                           const std::vector<double>& b);

// Reverse direction: a power law matching a Hill kinetics at a and b.
PowerLawKinetics power_law_transfer(const Network& net, const HillKinetics& hill, const std::vector<double>& a,
                                    const std::vector<double>& b);

struct CounterexampleOptions {
    int trials = 64;
    uint64_t seed = 1;
    double residual_tol = 1e-8;
};

struct Counterexample {
    std::vector<double> kappa;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;    // singular point used in the construction
    std::vector<double> eta;
    double residual = 0;      // |f(a) - f(b)| relative to the rate scale
    double gamma_residual = 0;  // max |omega . (a - b)|
};

// Searches kappa and a != b, a - b in the stoichiometric subspace, with
// f(a) = f(b). Returns nothing for injective orders or when no sign change
// of the Jacobian determinant is found within the trial budget.
std::optional<Counterexample> counterexample_search(const Network& net, const KineticOrder& v,
                                                    const CounterexampleOptions& opt = {});

}  // namespace crn
