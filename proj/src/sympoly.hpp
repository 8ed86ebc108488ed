#pragma once

#include "influence.hpp"
#include "rational.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#ifndef CRNINJECT_MAX_VARS
#define CRNINJECT_MAX_VARS 4096
#endif

namespace crn {

inline constexpr unsigned kMaxVars = CRNINJECT_MAX_VARS;

// Set of variable ids as a trimmed bitset. Ordering is the numeric order of
// the bitset read as an unsigned integer, which is colexicographic on ids.
class VarSet {
public:
    VarSet() = default;
    explicit VarSet(std::initializer_list<unsigned> ids);

    void insert(unsigned id);
    bool contains(unsigned id) const;
    bool intersects(const VarSet& o) const;
    VarSet united(const VarSet& o) const;
    std::size_t size() const;
    bool empty() const { return w_.empty(); }
    std::vector<unsigned> ids() const;  // ascending

    bool operator==(const VarSet& o) const { return w_ == o.w_; }
    bool operator<(const VarSet& o) const;

private:
    void trim();
    boost::container::small_vector<uint64_t, 2> w_;
};

using VarNamer = std::function<std::string(unsigned)>;

// Exact sparse multilinear polynomial; no stored zero coefficients.
class SignedPolynomial {
public:
    using Terms = std::map<VarSet, Rational>;

    SignedPolynomial() = default;
    static SignedPolynomial constant(const Rational& c);
    static SignedPolynomial variable(unsigned id, const Rational& coeff = 1);
    static SignedPolynomial monomial(const VarSet& vars, const Rational& coeff);

    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    const Terms& terms() const { return t_; }
    Rational coefficient(const VarSet& vars) const;
    bool is_homogeneous(std::size_t degree) const;
    std::vector<unsigned> variables() const;

    SignedPolynomial& operator+=(const SignedPolynomial& o);
    SignedPolynomial& operator-=(const SignedPolynomial& o);
    SignedPolynomial operator+(const SignedPolynomial& o) const;
    SignedPolynomial operator-(const SignedPolynomial& o) const;
    SignedPolynomial operator-() const;
    // Throws DomainError if some product monomial would repeat a variable.
    SignedPolynomial operator*(const SignedPolynomial& o) const;
    SignedPolynomial scaled(const Rational& c) const;
    // this += sign * a * b, the hot path of the Laplace expansion.
    void add_product(const SignedPolynomial& a, const SignedPolynomial& b, int sign);
    void add_term(const VarSet& vars, const Rational& coeff);

    // Drops every monomial containing a variable for which drop(id) is true.
    SignedPolynomial without(const std::function<bool(unsigned)>& drop) const;

    bool operator==(const SignedPolynomial& o) const { return t_ == o.t_; }
    bool operator!=(const SignedPolynomial& o) const { return !(*this == o); }

    std::string to_string(const VarNamer& namer) const;

private:
    Terms t_;
};

enum class SignTag { Zero, AllPositive, AllNegative, Mixed };
const char* to_string(SignTag t);

struct Witness {
    VarSet vars;
    Rational coeff;
};

struct SignClass {
    SignTag tag = SignTag::Zero;
    // One monomial for a uniform sign; for Mixed the first positive then the
    // first negative monomial in canonical order.
    std::vector<Witness> witnesses;

    bool uniform() const { return tag == SignTag::AllPositive || tag == SignTag::AllNegative; }
    int sign() const { return tag == SignTag::AllPositive ? 1 : tag == SignTag::AllNegative ? -1 : 0; }
};

SignClass sign_classify(const SignedPolynomial& p);

// assignment must cover every variable of p with a non-negative value.
Rational specialize(const SignedPolynomial& p, const std::map<unsigned, Rational>& assignment);

using SymMatrix = std::vector<std::vector<SignedPolynomial>>;

struct SignPattern {
    InfluenceSpec signs;
    int m() const { return signs.m(); }
    int n() const { return signs.n(); }
    // sign * z_{u,j}, or zero.
    SignedPolynomial entry(int u, int j) const;
};

SignPattern sign_pattern(const InfluenceSpec& i);

struct StoichInfo;

// Rows 0..d-1 hold the reduced basis, rows d..n-1 the matching rows of A*Z,
// all in the permuted species order of stoich.
SymMatrix modified_matrix(const StoichInfo& stoich, const SignPattern& z);

// Matrix with rational entries (a fixed kinetic order) instead of variables.
SymMatrix constant_matrix(const std::vector<std::vector<Rational>>& a);

struct DetOptions {
    int max_dim = 22;
};

// Memoised Laplace expansion over column subsets, rows taken sparsest first.
SignedPolynomial det_symbolic(const SymMatrix& M, const DetOptions& opt = {});

// Plain permutation expansion; independent reference for small matrices.
SignedPolynomial det_leibniz(const SymMatrix& M);

struct CauchyBinetTerm {
    std::vector<int> J;  // species (original indices)
    std::vector<int> C;  // reactions
    Rational det_A;
    SignedPolynomial det_Z;
    SignedPolynomial product;
};

// Non-zero det(A_{J,C}) det(Z_{C,J}) for |J| = |C| = s.
std::vector<CauchyBinetTerm> cauchy_binet_terms(const StoichInfo& stoich, const SignPattern& z);
SignedPolynomial sum_terms(const std::vector<CauchyBinetTerm>& terms);

// Names z variables as z(r<label>,<species>) using network labels.
VarNamer z_namer(const Network& net);

}  // namespace crn
