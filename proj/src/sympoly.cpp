#include "sympoly.hpp"

#include "combinatorics.hpp"
#include "errors.hpp"
#include "network.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace crn {

// ---- VarSet ---------------------------------------------------------------

VarSet::VarSet(std::initializer_list<unsigned> ids) {
    for (unsigned id : ids) insert(id);
}

void VarSet::trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

void VarSet::insert(unsigned id) {
    if (id >= kMaxVars)
        throw CapExceeded("variable id " + std::to_string(id) + " exceeds the cap of " +
                              std::to_string(kMaxVars) + " variables",
                          static_cast<long long>(id));
    std::size_t word = id / 64;
    if (w_.size() <= word) w_.resize(word + 1, 0);
    w_[word] |= uint64_t{1} << (id % 64);
}

bool VarSet::contains(unsigned id) const {
    std::size_t word = id / 64;
    return word < w_.size() && ((w_[word] >> (id % 64)) & 1U);
}

bool VarSet::intersects(const VarSet& o) const {
    std::size_t k = std::min(w_.size(), o.w_.size());
    for (std::size_t i = 0; i < k; ++i)
        if (w_[i] & o.w_[i]) return true;
    return false;
}

VarSet VarSet::united(const VarSet& o) const {
    VarSet r = w_.size() >= o.w_.size() ? *this : o;
    const VarSet& other = w_.size() >= o.w_.size() ? o : *this;
    for (std::size_t i = 0; i < other.w_.size(); ++i) r.w_[i] |= other.w_[i];
    return r;
}

std::size_t VarSet::size() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::vector<unsigned> VarSet::ids() const {
    std::vector<unsigned> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        uint64_t w = w_[i];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(static_cast<unsigned>(i * 64 + static_cast<std::size_t>(b)));
            w &= w - 1;
        }
    }
    return out;
}

bool VarSet::operator<(const VarSet& o) const {
    if (w_.size() != o.w_.size()) return w_.size() < o.w_.size();
    for (std::size_t i = w_.size(); i-- > 0;)
        if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
}

// ---- SignedPolynomial -----------------------------------------------------

SignedPolynomial SignedPolynomial::constant(const Rational& c) {
    SignedPolynomial p;
    if (c != 0) p.t_.emplace(VarSet{}, c);
    return p;
}

SignedPolynomial SignedPolynomial::variable(unsigned id, const Rational& coeff) {
    SignedPolynomial p;
    if (coeff != 0) p.t_.emplace(VarSet{id}, coeff);
    return p;
}

SignedPolynomial SignedPolynomial::monomial(const VarSet& vars, const Rational& coeff) {
    SignedPolynomial p;
    if (coeff != 0) p.t_.emplace(vars, coeff);
    return p;
}

Rational SignedPolynomial::coefficient(const VarSet& vars) const {
    auto it = t_.find(vars);
    return it == t_.end() ? Rational(0) : it->second;
}

bool SignedPolynomial::is_homogeneous(std::size_t degree) const {
    return std::all_of(t_.begin(), t_.end(), [&](const auto& kv) { return kv.first.size() == degree; });
}

std::vector<unsigned> SignedPolynomial::variables() const {
    VarSet all;
    for (const auto& [v, c] : t_) all = all.united(v);
    return all.ids();
}

void SignedPolynomial::add_term(const VarSet& vars, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = t_.try_emplace(vars, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) t_.erase(it);
    }
}

SignedPolynomial& SignedPolynomial::operator+=(const SignedPolynomial& o) {
    for (const auto& [v, c] : o.t_) add_term(v, c);
    return *this;
}

SignedPolynomial& SignedPolynomial::operator-=(const SignedPolynomial& o) {
    for (const auto& [v, c] : o.t_) add_term(v, -c);
    return *this;
}

SignedPolynomial SignedPolynomial::operator+(const SignedPolynomial& o) const {
    SignedPolynomial r = *this;
    r += o;
    return r;
}

SignedPolynomial SignedPolynomial::operator-(const SignedPolynomial& o) const {
    SignedPolynomial r = *this;
    r -= o;
    return r;
}

SignedPolynomial SignedPolynomial::operator-() const { return scaled(Rational(-1)); }

SignedPolynomial SignedPolynomial::scaled(const Rational& c) const {
    SignedPolynomial r;
    if (c == 0) return r;
    for (const auto& [v, k] : t_) r.t_.emplace_hint(r.t_.end(), v, k * c);
    return r;
}

void SignedPolynomial::add_product(const SignedPolynomial& a, const SignedPolynomial& b, int sign) {
    for (const auto& [va, ca] : a.t_)
        for (const auto& [vb, cb] : b.t_) {
            if (va.intersects(vb)) throw DomainError("product is not multilinear");
            Rational c = ca * cb;
            if (sign < 0) c = -c;
            add_term(va.united(vb), c);
        }
}

SignedPolynomial SignedPolynomial::operator*(const SignedPolynomial& o) const {
    SignedPolynomial r;
    r.add_product(*this, o, 1);
    return r;
}

SignedPolynomial SignedPolynomial::without(const std::function<bool(unsigned)>& drop) const {
    SignedPolynomial r;
    for (const auto& [v, c] : t_) {
        auto ids = v.ids();
        if (std::none_of(ids.begin(), ids.end(), drop)) r.t_.emplace_hint(r.t_.end(), v, c);
    }
    return r;
}

std::string SignedPolynomial::to_string(const VarNamer& namer) const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [v, c] : t_) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        auto ids = v.ids();
        bool unit = mag == 1 && !ids.empty();
        if (!unit) out += mag.get_str();
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i > 0 || !unit) out += "*";
            out += namer(ids[i]);
        }
    }
    return out;
}

// ---- classification and evaluation -----------------------------------------

const char* to_string(SignTag t) {
    switch (t) {
        case SignTag::Zero: return "Zero";
        case SignTag::AllPositive: return "AllPositive";
        case SignTag::AllNegative: return "AllNegative";
        case SignTag::Mixed: return "Mixed";
    }
    return "?";
}

SignClass sign_classify(const SignedPolynomial& p) {
    SignClass sc;
    const Witness* pos = nullptr;
    const Witness* neg = nullptr;
    Witness wp, wn;
    for (const auto& [v, c] : p.terms()) {
        if (c > 0 && !pos) {
            wp = {v, c};
            pos = &wp;
        } else if (c < 0 && !neg) {
            wn = {v, c};
            neg = &wn;
        }
        if (pos && neg) break;
    }
    if (pos && neg) {
        sc.tag = SignTag::Mixed;
        sc.witnesses = {wp, wn};
    } else if (pos) {
        sc.tag = SignTag::AllPositive;
        sc.witnesses = {wp};
    } else if (neg) {
        sc.tag = SignTag::AllNegative;
        sc.witnesses = {wn};
    }
    return sc;
}

Rational specialize(const SignedPolynomial& p, const std::map<unsigned, Rational>& assignment) {
    for (const auto& [id, val] : assignment)
        if (val < 0) throw DomainError("negative value assigned to variable " + std::to_string(id));
    Rational total = 0;
    for (const auto& [v, c] : p.terms()) {
        Rational term = c;
        for (unsigned id : v.ids()) {
            auto it = assignment.find(id);
            if (it == assignment.end())
                throw DimensionError("assignment misses variable " + std::to_string(id));
            term *= it->second;
        }
        total += term;
    }
    return total;
}

// ---- matrices ---------------------------------------------------------------

SignedPolynomial SignPattern::entry(int u, int j) const {
    int s = signs.at(u, j);
    if (s == 0) return {};
    return SignedPolynomial::variable(z_var(u, j, m()), Rational(s));
}

SignPattern sign_pattern(const InfluenceSpec& i) { return SignPattern{i}; }

SymMatrix modified_matrix(const StoichInfo& stoich, const SignPattern& z) {
    const int n = static_cast<int>(stoich.A.size());
    const int m = num_cols(stoich.A);
    if (z.m() != m || (m > 0 && z.n() != n)) throw DimensionError("sign pattern does not match the stoichiometric matrix");
    SymMatrix M(static_cast<std::size_t>(n), std::vector<SignedPolynomial>(static_cast<std::size_t>(n)));
    for (int p = 0; p < stoich.d; ++p)
        for (int q = 0; q < n; ++q) M[p][q] = SignedPolynomial::constant(stoich.reduced_basis[p][q]);
    for (int p = stoich.d; p < n; ++p) {
        int i = stoich.species_order[p];
        for (int q = 0; q < n; ++q) {
            int j = stoich.species_order[q];
            SignedPolynomial e;
            for (int u = 0; u < m; ++u) {
                if (stoich.A[i][u] == 0 || z.signs.at(u, j) == 0) continue;
                e.add_term(VarSet{z_var(u, j, m)}, stoich.A[i][u] * z.signs.at(u, j));
            }
            M[p][q] = std::move(e);
        }
    }
    return M;
}

SymMatrix constant_matrix(const std::vector<std::vector<Rational>>& a) {
    SymMatrix M;
    for (const auto& row : a) {
        std::vector<SignedPolynomial> r;
        for (const auto& x : row) r.push_back(SignedPolynomial::constant(x));
        M.push_back(std::move(r));
    }
    return M;
}

namespace {

struct Laplace {
    int n;
    std::vector<const std::vector<SignedPolynomial>*> rows;
    std::vector<uint32_t> nz;
    std::unordered_map<uint32_t, SignedPolynomial> memo;
    SignedPolynomial one = SignedPolynomial::constant(1);
    SignedPolynomial zero;

    const SignedPolynomial& minor(uint32_t mask) {
        if (mask == 0) return one;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        const int k = std::popcount(mask);
        const int r = n - k;
        for (int rr = r; rr < n; ++rr)
            if ((nz[rr] & mask) == 0) return memo.emplace(mask, SignedPolynomial{}).first->second;
        SignedPolynomial acc;
        uint32_t cols = nz[r] & mask;
        while (cols) {
            int j = std::countr_zero(cols);
            cols &= cols - 1;
            uint32_t below = mask & ((uint32_t{1} << j) - 1);
            int sign = (std::popcount(below) % 2) ? -1 : 1;
            const SignedPolynomial& sub = minor(mask & ~(uint32_t{1} << j));
            if (sub.is_zero()) continue;
            acc.add_product((*rows[r])[j], sub, sign);
        }
        return memo.emplace(mask, std::move(acc)).first->second;
    }
};

}  // namespace

SignedPolynomial det_symbolic(const SymMatrix& M, const DetOptions& opt) {
    const int n = static_cast<int>(M.size());
    if (n == 0) return SignedPolynomial::constant(1);
    if (n > opt.max_dim || n > 31)
        throw CapExceeded("determinant dimension " + std::to_string(n) + " exceeds the cap of " +
                              std::to_string(opt.max_dim),
                          n);
    for (const auto& row : M)
        if (static_cast<int>(row.size()) != n) throw DimensionError("determinant of a non-square matrix");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!M[i][j].is_zero()) ++count[i];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return count[a] < count[b]; });

    Laplace L;
    L.n = n;
    for (int r = 0; r < n; ++r) {
        L.rows.push_back(&M[order[r]]);
        uint32_t mask = 0;
        for (int j = 0; j < n; ++j)
            if (!M[order[r]][j].is_zero()) mask |= uint32_t{1} << j;
        L.nz.push_back(mask);
    }
    uint32_t full = n == 32 ? ~uint32_t{0} : ((uint32_t{1} << n) - 1);
    SignedPolynomial d = L.minor(full);
    if (permutation_sign(order) < 0) d = -d;
    return d;
}

SignedPolynomial det_leibniz(const SymMatrix& M) {
    const int n = static_cast<int>(M.size());
    if (n == 0) return SignedPolynomial::constant(1);
    if (n > 10) throw CapExceeded("permutation expansion limited to 10x10", n);
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    SignedPolynomial total;
    do {
        SignedPolynomial term = SignedPolynomial::constant(1);
        bool zero = false;
        for (int i = 0; i < n && !zero; ++i) {
            if (M[i][p[i]].is_zero()) {
                zero = true;
                break;
            }
            term = term * M[i][p[i]];
        }
        if (zero) continue;
        if (permutation_sign(p) < 0)
            total -= term;
        else
            total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

std::vector<CauchyBinetTerm> cauchy_binet_terms(const StoichInfo& stoich, const SignPattern& z) {
    const int n = static_cast<int>(stoich.A.size());
    const int m = num_cols(stoich.A);
    const int s = stoich.s;
    std::vector<CauchyBinetTerm> out;
    if (s > n) throw DimensionError("stoichiometric dimension larger than species count");
    for_each_subset(m, s, [&](const std::vector<int>& C) {
        std::vector<int> all_species(static_cast<std::size_t>(n));
        std::iota(all_species.begin(), all_species.end(), 0);
        if (rank(submatrix(stoich.A, all_species, C)) < s) return true;
        for_each_subset(n, s, [&](const std::vector<int>& J) {
            Rational dA = determinant(submatrix(stoich.A, J, C));
            if (dA == 0) return true;
            SymMatrix Zs(static_cast<std::size_t>(s), std::vector<SignedPolynomial>(static_cast<std::size_t>(s)));
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b) Zs[a][b] = z.entry(C[a], J[b]);
            SignedPolynomial dZ = det_leibniz(Zs);
            if (dZ.is_zero()) return true;
            CauchyBinetTerm t{J, C, dA, dZ, dZ.scaled(dA)};
            out.push_back(std::move(t));
            return true;
        });
        return true;
    });
    return out;
}

SignedPolynomial sum_terms(const std::vector<CauchyBinetTerm>& terms) {
    SignedPolynomial p;
    for (const auto& t : terms) p += t.product;
    return p;
}

VarNamer z_namer(const Network& net) {
    const int m = net.m();
    std::vector<std::string> species = net.species;
    std::vector<std::string> labels;
    for (const auto& r : net.reactions) labels.push_back(r.label);
    return [m, species, labels](unsigned id) {
        int u = z_reaction(id, m);
        int j = z_species(id, m);
        return "z(" + labels.at(static_cast<std::size_t>(u)) + "," + species.at(static_cast<std::size_t>(j)) + ")";
    };
}

}  // namespace crn
