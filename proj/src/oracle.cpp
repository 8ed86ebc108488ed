#include "oracle.hpp"

#include "bigfloat.hpp"
#include "errors.hpp"
#include "injectivity.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace crn {

namespace {

constexpr mpfr_prec_t kBasePrec = 128;
constexpr mpfr_prec_t kMaxPrec = 1 << 16;

void check_positive(const std::vector<double>& c, int n, const char* what) {
    if (static_cast<int>(c.size()) != n) throw DimensionError(std::string(what) + " has the wrong length");
    for (double x : c)
        if (!(x > 0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be strictly positive");
}

void check_kinetics(const Network& net, const std::vector<double>& kappa, const RealMatrix& v) {
    if (static_cast<int>(kappa.size()) != net.m() || static_cast<int>(v.size()) != net.m())
        throw DimensionError("kinetics do not match the number of reactions");
    for (const auto& row : v)
        if (static_cast<int>(row.size()) != net.n()) throw DimensionError("kinetic order does not match the species");
    for (double k : kappa)
        if (!(k > 0)) throw DomainError("rate constants must be positive");
}

std::vector<double> combine(const Network& net, const std::vector<double>& rates) {
    const RatMatrix A = build_stoich(net);
    std::vector<double> f(static_cast<std::size_t>(net.n()), 0.0);
    for (int i = 0; i < net.n(); ++i)
        for (int u = 0; u < net.m(); ++u)
            if (A[i][u] != 0) f[i] += A[i][u].get_d() * rates[u];
    return f;
}

// Sum of |A_iu| K_u over i and u, the natural scale of f.
double rate_scale(const RatMatrix& A, const std::vector<double>& rates) {
    double s = 0;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t u = 0; u < rates.size(); ++u) s += std::abs(A[i][u].get_d()) * rates[u];
    return s;
}

BigFloat big(double x, mpfr_prec_t p) { return BigFloat(x, p); }

// Determinant by Gaussian elimination with partial pivoting.
BigFloat lu_det(std::vector<std::vector<BigFloat>> M, mpfr_prec_t p) {
    const std::size_t n = M.size();
    BigFloat det(1.0, p);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (abs(M[r][col]) > abs(M[piv][col])) piv = r;
        if (M[piv][col].is_zero()) return BigFloat(0.0, p);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (M[r][col].is_zero()) continue;
            BigFloat f = M[r][col] / M[col][col];
            for (std::size_t q = col; q < n; ++q) M[r][q] -= f * M[col][q];
        }
    }
    return det;
}

struct Evaluation {
    BigFloat numeric;
    BigFloat symbolic;
    BigFloat abs_sum;  // sum of |terms| of the expansion
    std::vector<double> rates;
};

// log K_u = log kappa_u + sum_j v_uj log c_j, at precision p.
std::vector<BigFloat> log_rates(const PowerLawKinetics& k, const std::vector<double>& c, mpfr_prec_t p) {
    std::vector<BigFloat> out;
    for (std::size_t u = 0; u < k.kappa.size(); ++u) {
        BigFloat acc = log(big(k.kappa[u], p));
        for (std::size_t j = 0; j < c.size(); ++j)
            if (k.v[u][j] != 0) acc += big(k.v[u][j], p) * log(big(c[j], p));
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<std::vector<BigFloat>> modified_jacobian(const StoichInfo& st, const PowerLawKinetics& k,
                                                     const std::vector<double>& c, mpfr_prec_t p) {
    const int n = static_cast<int>(st.A.size());
    const int m = num_cols(st.A);
    auto logK = log_rates(k, c, p);
    std::vector<BigFloat> K;
    for (auto& l : logK) K.push_back(exp(l));
    std::vector<std::vector<BigFloat>> M(static_cast<std::size_t>(n), std::vector<BigFloat>(static_cast<std::size_t>(n), BigFloat(p)));
    for (int q = 0; q < st.d; ++q)
        for (int r = 0; r < n; ++r) M[q][r] = BigFloat(st.reduced_basis[q][r], p);
    for (int q = st.d; q < n; ++q) {
        int i = st.species_order[q];
        for (int r = 0; r < n; ++r) {
            int j = st.species_order[r];
            BigFloat e(p);
            for (int u = 0; u < m; ++u) {
                if (st.A[i][u] == 0 || k.v[u][j] == 0) continue;
                e += BigFloat(st.A[i][u], p) * K[u] * big(k.v[u][j], p) / big(c[j], p);
            }
            M[q][r] = std::move(e);
        }
    }
    return M;
}

// Runs f at p and 2p bits, doubling p until both agree to ~100 bits. A
// summand absorbed by rounding at p is kept at 2p, so agreement is not a
// coincidence of both runs dropping the same small terms.
template <class F>
BigFloat converged(F&& f, mpfr_prec_t p) {
    BigFloat lo = f(p);
    for (;;) {
        mpfr_prec_t q = std::min<mpfr_prec_t>(2 * p, kMaxPrec);
        BigFloat hi = f(q);
        BigFloat diff = lo - hi;
        if (hi.is_zero() ? lo.is_zero() : diff.is_zero() || diff.log2_abs() - hi.log2_abs() < -100) return hi;
        if (q >= kMaxPrec) throw DomainError("determinant did not converge below " + std::to_string(kMaxPrec) + " bits");
        p = q;
        lo = std::move(hi);
    }
}

BigFloat numeric_det(const StoichInfo& st, const PowerLawKinetics& k, const std::vector<double>& c, mpfr_prec_t p) {
    return converged([&](mpfr_prec_t q) { return lu_det(modified_jacobian(st, k, c, q), q); }, p);
}

Evaluation evaluate(const StoichInfo& st, const SignedPolynomial& pI, const PowerLawKinetics& k,
                    const std::vector<double>& c, mpfr_prec_t p, bool numeric = true) {
    const int m = num_cols(st.A);
    const int n = static_cast<int>(st.A.size());
    auto logK = log_rates(k, c, p);
    // z~_{u,j} = |v_uj| K_u / c_j
    std::map<unsigned, BigFloat> zt;
    for (int u = 0; u < m; ++u)
        for (int j = 0; j < n; ++j)
            if (k.v[u][j] != 0)
                zt.emplace(z_var(u, j, m), exp(logK[u]) * big(std::abs(k.v[u][j]), p) / big(c[j], p));
    Evaluation ev{BigFloat(p), BigFloat(p), BigFloat(p), {}};
    for (const auto& [vars, coeff] : pI.terms()) {
        BigFloat t(coeff, p);
        for (unsigned id : vars.ids()) {
            auto it = zt.find(id);
            if (it == zt.end()) throw DimensionError("kinetic order misses a variable of the determinant");
            t *= it->second;
        }
        ev.symbolic += t;
        ev.abs_sum += abs(t);
    }
    if (numeric) ev.numeric = numeric_det(st, k, c, p);
    for (auto& l : logK) ev.rates.push_back(exp(l).to_double());
    return ev;
}

// Bits so that the elimination keeps ~96 significant bits of the result:
// the entries' dynamic range plus the cancellation against the true value.
mpfr_prec_t choose_precision(const StoichInfo& st, const SignedPolynomial& pI, const PowerLawKinetics& k,
                             const std::vector<double>& c) {
    const std::size_t n = st.A.size();
    Evaluation probe = evaluate(st, pI, k, c, kBasePrec, false);
    auto M = modified_jacobian(st, k, c, kBasePrec);
    double range = 0;
    for (const auto& row : M) {
        double mx = -1e300;
        for (const auto& e : row) mx = std::max(mx, e.log2_abs());
        if (mx > -1e299) range += mx;
    }
    // Spread of the summands inside one entry: below it small rates vanish
    // from the sums entirely.
    auto logK = log_rates(k, c, kBasePrec);
    double spread = 0;
    for (int q = st.d; q < static_cast<int>(n); ++q) {
        int i = st.species_order[q];
        for (int j = 0; j < static_cast<int>(n); ++j) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t u = 0; u < logK.size(); ++u) {
                if (st.A[i][u] == 0 || k.v[u][j] == 0) continue;
                double t = logK[u].to_double() / std::log(2.0) + std::log2(std::abs(st.A[i][u].get_d() * k.v[u][j]));
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
            if (hi >= lo) spread = std::max(spread, hi - lo);
        }
    }
    double lg_fact = std::lgamma(static_cast<double>(n) + 1) / std::log(2.0);
    double target = probe.abs_sum.is_zero() ? 0.0 : probe.abs_sum.log2_abs();
    double bits = 96 + std::max({0.0, range - target, spread}) + lg_fact + 2 * static_cast<double>(n);
    return static_cast<mpfr_prec_t>(std::clamp(bits, static_cast<double>(kBasePrec), static_cast<double>(kMaxPrec)));
}

uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RealMatrix to_real(const KineticOrder& v) {
    RealMatrix out;
    for (const auto& row : v.v) {
        std::vector<double> r;
        for (const auto& q : row) r.push_back(q.get_d());
        out.push_back(std::move(r));
    }
    return out;
}

PowerLawKinetics power_law(const std::vector<double>& kappa, const KineticOrder& v) { return {kappa, to_real(v)}; }

std::vector<double> reaction_rates(const PowerLawKinetics& k, const std::vector<double>& c, bool boundary) {
    std::vector<double> out;
    for (std::size_t u = 0; u < k.kappa.size(); ++u) {
        double r = k.kappa[u];
        for (std::size_t j = 0; j < c.size(); ++j) {
            double e = k.v[u][j];
            if (c[j] > 0) {
                if (e != 0) r *= std::pow(c[j], e);
            } else if (c[j] == 0 && boundary && e >= 0) {
                if (e > 0) r = 0;  // 0^0 = 1 otherwise
            } else {
                throw DomainError("concentration " + std::to_string(j + 1) + " must be positive here");
            }
        }
        out.push_back(r);
    }
    return out;
}

std::vector<double> reaction_rates(const HillKinetics& k, const std::vector<double>& c) {
    std::vector<double> out;
    for (std::size_t u = 0; u < k.kappa.size(); ++u) {
        double r = k.kappa[u];
        for (std::size_t j = 0; j < c.size(); ++j) {
            double e = k.v[u][j];
            if (e == 0) continue;
            if (!(c[j] > 0)) throw DomainError("Hill rates are evaluated at positive concentrations only");
            double ce = std::pow(c[j], e);
            r *= ce / (k.delta[u][j] + ce);
        }
        out.push_back(r);
    }
    return out;
}

std::vector<double> eval_rate_function(const Network& net, const PowerLawKinetics& k, const std::vector<double>& c,
                                       bool boundary) {
    check_kinetics(net, k.kappa, k.v);
    if (static_cast<int>(c.size()) != net.n()) throw DimensionError("concentration vector has the wrong length");
    return combine(net, reaction_rates(k, c, boundary));
}

std::vector<double> eval_rate_function(const Network& net, const HillKinetics& k, const std::vector<double>& c) {
    check_kinetics(net, k.kappa, k.v);
    check_positive(c, net.n(), "concentration");
    return combine(net, reaction_rates(k, c));
}

double eval_jacobian_det(const Network& net, const PowerLawKinetics& k, const std::vector<double>& c) {
    check_kinetics(net, k.kappa, k.v);
    check_positive(c, net.n(), "concentration");
    StoichInfo st = conservation_analysis(build_stoich(net));
    InfluenceSpec inf(net.m(), net.n());
    for (int u = 0; u < net.m(); ++u)
        for (int j = 0; j < net.n(); ++j) inf.set(u, j, (k.v[u][j] > 0) - (k.v[u][j] < 0));
    SignedPolynomial pI = det_symbolic(modified_matrix(st, sign_pattern(inf)));
    return numeric_det(st, k, c, choose_precision(st, pI, k, c)).to_double();
}

double eval_jacobian_det_expansion(const Network& net, const PowerLawKinetics& k, const std::vector<double>& c) {
    check_kinetics(net, k.kappa, k.v);
    check_positive(c, net.n(), "concentration");
    StoichInfo st = conservation_analysis(build_stoich(net));
    InfluenceSpec inf(net.m(), net.n());
    for (int u = 0; u < net.m(); ++u)
        for (int j = 0; j < net.n(); ++j) inf.set(u, j, (k.v[u][j] > 0) - (k.v[u][j] < 0));
    SignedPolynomial pI = sum_terms(cauchy_binet_terms(st, sign_pattern(inf)));
    return evaluate(st, pI, k, c, 256).symbolic.to_double();
}

AgreementReport symbolic_numeric_agreement(const Network& net, const InfluenceSpec& inf, const AgreementOptions& opt) {
    check_shape(inf, net);
    const int n = net.n();
    const int m = net.m();
    const StoichInfo st = conservation_analysis(build_stoich(net));
    const SignedPolynomial pI = det_symbolic(modified_matrix(st, sign_pattern(inf)));
    const SignClass sc = sign_classify(pI);

    AgreementReport rep;
    rep.samples = opt.samples;
    rep.seed = opt.seed;
    rep.symbolic_tag = sc.tag;

    std::vector<std::vector<double>> omegas;
    for (int k = 0; k < st.d; ++k) {
        std::vector<double> w;
        for (const auto& q : st.basis_vector(k)) w.push_back(q.get_d());
        omegas.push_back(std::move(w));
    }

    struct Outcome {
        int sign = 0;
        bool mismatch = false;
        double rel_diff = 0;
        double conservation = 0;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(std::max(opt.samples, 0)));

    parallel_for(outcomes.size(), [&](std::size_t s) {
        std::mt19937_64 rng(mix(opt.seed ^ mix(static_cast<uint64_t>(s))));
        std::uniform_real_distribution<double> U(opt.log10_min, opt.log10_max);
        auto draw = [&] { return std::pow(10.0, U(rng)); };
        PowerLawKinetics k;
        k.v.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n), 0.0));
        std::vector<double> c(static_cast<std::size_t>(n));
        // Witness-steered draws first: the chosen monomial's variables large,
        // every other variable small, kappa = c = 1.
        const Witness* steer = nullptr;
        if (sc.tag == SignTag::Mixed && s < sc.witnesses.size()) steer = &sc.witnesses[s];
        for (int u = 0; u < m; ++u) {
            k.kappa.push_back(steer ? 1.0 : draw());
            for (int j = 0; j < n; ++j) {
                int sg = inf.at(u, j);
                if (sg == 0) continue;
                double mag = steer ? (steer->vars.contains(z_var(u, j, m)) ? std::pow(10.0, opt.log10_max)
                                                                           : std::pow(10.0, opt.log10_min))
                                   : draw();
                k.v[u][j] = sg * mag;
            }
        }
        for (int j = 0; j < n; ++j) c[j] = steer ? 1.0 : draw();

        mpfr_prec_t p = choose_precision(st, pI, k, c);
        Evaluation ev = evaluate(st, pI, k, c, p);
        Outcome& o = outcomes[s];
        double scale = ev.abs_sum.is_zero() ? 0.0 : ev.abs_sum.log2_abs();
        BigFloat diff = abs(ev.numeric - ev.symbolic);
        if (ev.abs_sum.is_zero()) {
            o.rel_diff = ev.numeric.is_zero() ? 0.0 : 1.0;
            o.mismatch = !ev.numeric.is_zero();
            o.sign = 0;
        } else {
            o.rel_diff = diff.is_zero() ? 0.0 : std::exp2(diff.log2_abs() - scale);
            bool sym_small = ev.symbolic.is_zero() || ev.symbolic.log2_abs() - scale < std::log2(opt.rel_tol);
            o.sign = sym_small ? 0 : ev.symbolic.sign();
            if (!sym_small && ev.numeric.sign() != ev.symbolic.sign()) o.mismatch = true;
            if (sc.uniform() && ev.symbolic.sign() != sc.sign()) o.mismatch = true;
            if (o.rel_diff > opt.rel_tol) o.mismatch = true;
        }
        auto f = combine(net, ev.rates);
        for (const auto& w : omegas) {
            double dot = 0, bound = 0;
            for (int i = 0; i < n; ++i) {
                dot += w[i] * f[i];
                double row = 0;
                for (int u = 0; u < m; ++u) row += std::abs(st.A[i][u].get_d()) * ev.rates[u];
                bound += std::abs(w[i]) * row;
            }
            double rel = bound > 0 ? std::abs(dot) / bound : std::abs(dot);
            o.conservation = std::max(o.conservation, rel);
        }
    });

    for (std::size_t s = 0; s < outcomes.size(); ++s) {
        const Outcome& o = outcomes[s];
        if (o.sign > 0) ++rep.positive;
        else if (o.sign < 0) ++rep.negative;
        else ++rep.zero;
        if (o.mismatch) {
            ++rep.mismatches;
            if (rep.mismatch_samples.size() < 16) rep.mismatch_samples.push_back(static_cast<int>(s));
        }
        rep.max_rel_diff = std::max(rep.max_rel_diff, o.rel_diff);
        rep.max_conservation = std::max(rep.max_conservation, o.conservation);
        if (o.conservation > opt.conservation_tol) ++rep.conservation_violations;
    }
    return rep;
}

HillTransfer hill_transfer(const Network& net, const PowerLawKinetics& pl, const std::vector<double>& a,
                           const std::vector<double>& b) {
    check_kinetics(net, pl.kappa, pl.v);
    check_positive(a, net.n(), "a");
    check_positive(b, net.n(), "b");
    const int n = net.n();
    const int m = net.m();
    const mpfr_prec_t p = 256;
    HillTransfer out;
    HillKinetics& h = out.hill;
    h.kappa.assign(static_cast<std::size_t>(m), 0.0);
    h.delta.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    h.v = h.delta;
    const BigFloat one(1.0, p);
    for (int u = 0; u < m; ++u) {
        std::vector<int> supp;
        for (int j = 0; j < n; ++j)
            if (pl.v[u][j] != 0) supp.push_back(j);
        // One scaling per reaction keeps every factor M x^w below 1/2.
        BigFloat mx(0.0, p);
        for (int j : supp) {
            BigFloat w(pl.v[u][j], p);
            BigFloat xa = pow(BigFloat(a[j], p), w), xb = pow(BigFloat(b[j], p), w);
            if (xa > mx) mx = xa;
            if (xb > mx) mx = xb;
        }
        BigFloat M = supp.empty() ? one : BigFloat(0.5, p) / mx;
        BigFloat kappa(pl.kappa[u], p);
        for (int j : supp) {
            BigFloat w(pl.v[u][j], p);
            BigFloat A(a[j], p), B(b[j], p);
            BigFloat alpha = M * pow(A, w), beta = M * pow(B, w);
            BigFloat v = w;
            if (a[j] != b[j]) v = log(alpha * (one - beta) / (beta * (one - alpha))) / log(A / B);
            if (v.sign() != (pl.v[u][j] > 0 ? 1 : -1))
                throw DomainError("Hill transfer lost the sign of reaction " + net.reactions[u].label + ", species " +
                                  net.species[j]);
            BigFloat delta = pow(A, v) * (one - alpha) / alpha;
            h.v[u][j] = v.to_double();
            h.delta[u][j] = delta.to_double();
            kappa /= M;
        }
        h.kappa[u] = kappa.to_double();
    }
    const RatMatrix Amat = build_stoich(net);
    auto residual = [&](const std::vector<double>& x) {
        auto r_pl = reaction_rates(pl, x);
        auto f_pl = combine(net, r_pl);
        auto f_h = combine(net, reaction_rates(h, x));
        double scale = rate_scale(Amat, r_pl), worst = 0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(f_pl[i] - f_h[i]));
        return scale > 0 ? worst / scale : worst;
    };
    out.residual_a = residual(a);
    out.residual_b = residual(b);
    return out;
}

PowerLawKinetics power_law_transfer(const Network& net, const HillKinetics& hill, const std::vector<double>& a,
                                    const std::vector<double>& b) {
    check_kinetics(net, hill.kappa, hill.v);
    check_positive(a, net.n(), "a");
    check_positive(b, net.n(), "b");
    const int n = net.n();
    const int m = net.m();
    const mpfr_prec_t p = 256;
    PowerLawKinetics out;
    out.v.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    const BigFloat one(1.0, p);
    for (int u = 0; u < m; ++u) {
        BigFloat lambda(hill.kappa[u], p);
        for (int j = 0; j < n; ++j) {
            if (hill.v[u][j] == 0) continue;
            BigFloat v(hill.v[u][j], p), d(hill.delta[u][j], p), A(a[j], p), B(b[j], p);
            BigFloat ha = pow(A, v) / (d + pow(A, v)), hb = pow(B, v) / (d + pow(B, v));
            BigFloat w = v;
            if (a[j] != b[j]) w = log(ha / hb) / log(A / B);
            lambda *= ha / pow(A, w);
            out.v[u][j] = w.to_double();
        }
        out.kappa.push_back(lambda.to_double());
    }
    return out;
}

namespace {

struct Term {
    Rational coeff;
    std::vector<double> x;  // exponents over (log eta_1..m, log c_1..n)
};

BigFloat eval_terms(const std::vector<Term>& terms, const std::vector<BigFloat>& point, mpfr_prec_t p) {
    BigFloat total(p);
    for (const auto& t : terms) {
        BigFloat e(p);
        for (std::size_t q = 0; q < t.x.size(); ++q)
            if (t.x[q] != 0) e += BigFloat(t.x[q], p) * point[q];
        total += BigFloat(t.coeff, p) * exp(e);
    }
    return total;
}

// Null vector of a (nearly) singular matrix via full pivoting.
std::vector<BigFloat> null_vector(std::vector<std::vector<BigFloat>> M, mpfr_prec_t p) {
    const std::size_t n = M.size();
    std::vector<std::size_t> colperm(n);
    std::iota(colperm.begin(), colperm.end(), 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pr = k, pc = k;
        for (std::size_t r = k; r < n; ++r)
            for (std::size_t c = k; c < n; ++c)
                if (abs(M[r][c]) > abs(M[pr][pc])) {
                    pr = r;
                    pc = c;
                }
        std::swap(M[pr], M[k]);
        if (pc != k) {
            for (auto& row : M) std::swap(row[pc], row[k]);
            std::swap(colperm[pc], colperm[k]);
        }
        if (M[k][k].is_zero()) break;
        for (std::size_t r = k + 1; r < n; ++r) {
            BigFloat f = M[r][k] / M[k][k];
            for (std::size_t c = k; c < n; ++c) M[r][c] -= f * M[k][c];
        }
    }
    // Treat the trailing pivot as zero; free pivots found earlier stay free.
    std::vector<BigFloat> y(n, BigFloat(p));
    y[n - 1] = BigFloat(1.0, p);
    for (std::size_t k = n - 1; k-- > 0;) {
        if (M[k][k].is_zero()) {
            y[k] = BigFloat(0.0, p);
            continue;
        }
        BigFloat acc(p);
        for (std::size_t c = k + 1; c < n; ++c) acc += M[k][c] * y[c];
        y[k] = -acc / M[k][k];
    }
    std::vector<BigFloat> x(n, BigFloat(p));
    for (std::size_t q = 0; q < n; ++q) x[colperm[q]] = y[q];
    return x;
}

}  // namespace

std::optional<Counterexample> counterexample_search(const Network& net, const KineticOrder& vord,
                                                    const CounterexampleOptions& opt) {
    check_shape(vord, net);
    FixedOrderResult fo = check_fixed_order(net, vord);
    if (fo.verdict.result == VerdictResult::Injective) return std::nullopt;
    const int n = net.n();
    const int m = net.m();
    const mpfr_prec_t p = 320;
    const StoichInfo st = conservation_analysis(build_stoich(net));
    const RealMatrix v = to_real(vord);

    std::vector<Term> terms;
    for (const auto& t : fo.terms) {
        Term T{t.coeff, std::vector<double>(static_cast<std::size_t>(m + n), 0.0)};
        for (int l : t.C) T.x[l] = 1;
        for (int j = 0; j < n; ++j) T.x[m + j] = t.c_exponent[j].get_d();
        terms.push_back(std::move(T));
    }
    const std::size_t dim = static_cast<std::size_t>(m + n);
    auto to_big = [&](const std::vector<double>& x) {
        std::vector<BigFloat> out;
        for (double d : x) out.emplace_back(d, p);
        return out;
    };

    // Candidate search directions: each term's exponent against the centroid,
    // then random directions.
    std::vector<double> centroid(dim, 0.0);
    for (const auto& t : terms)
        for (std::size_t q = 0; q < dim; ++q) centroid[q] += t.x[q] / static_cast<double>(std::max<std::size_t>(terms.size(), 1));
    std::vector<std::vector<double>> directions;
    for (const auto& t : terms) {
        std::vector<double> d(dim);
        for (std::size_t q = 0; q < dim; ++q) d[q] = t.x[q] - centroid[q];
        directions.push_back(std::move(d));
    }
    std::mt19937_64 rng(mix(opt.seed));
    std::normal_distribution<double> N(0.0, 1.0);
    for (int t = 0; t < opt.trials; ++t) {
        std::vector<double> d(dim);
        for (auto& x : d) x = N(rng);
        directions.push_back(std::move(d));
    }

    std::optional<std::vector<double>> plus, minus;
    const bool degenerate = fo.verdict.witness.tag == SignTag::Zero;
    if (!degenerate) {
        for (const auto& d : directions) {
            for (double tau : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
                std::vector<double> x(dim);
                for (std::size_t q = 0; q < dim; ++q) x[q] = tau * d[q];
                int sg = eval_terms(terms, to_big(x), p).sign();
                if (sg > 0 && !plus) plus = x;
                if (sg < 0 && !minus) minus = x;
            }
            if (plus && minus) break;
        }
        if (!plus || !minus) return std::nullopt;
    }

    std::vector<BigFloat> point;
    if (degenerate) {
        point = to_big(std::vector<double>(dim, 0.0));
    } else {
        std::vector<BigFloat> xp = to_big(*plus), xm = to_big(*minus);
        BigFloat lo(0.0, p), hi(1.0, p), half(0.5, p);
        auto at = [&](const BigFloat& lam) {
            std::vector<BigFloat> x;
            for (std::size_t q = 0; q < dim; ++q) x.push_back(xp[q] + lam * (xm[q] - xp[q]));
            return x;
        };
        for (int it = 0; it < 280; ++it) {
            BigFloat mid = (lo + hi) * half;
            int sg = eval_terms(terms, at(mid), p).sign();
            if (sg == 0) {
                lo = hi = mid;
                break;
            }
            if (sg > 0) lo = mid;
            else hi = mid;
        }
        point = at((lo + hi) * half);
    }

    std::vector<BigFloat> eta, c;
    for (int u = 0; u < m; ++u) eta.push_back(exp(point[u]));
    for (int j = 0; j < n; ++j) c.push_back(exp(point[m + j]));

    // Modified Jacobian at (eta, c) in the permuted order; its kernel lies in Gamma.
    std::vector<std::vector<BigFloat>> M(static_cast<std::size_t>(n), std::vector<BigFloat>(static_cast<std::size_t>(n), BigFloat(p)));
    std::vector<BigFloat> K;
    for (int u = 0; u < m; ++u) {
        BigFloat lk = log(eta[u]);
        for (int j = 0; j < n; ++j)
            if (v[u][j] != 0) lk += BigFloat(v[u][j], p) * log(c[j]);
        K.push_back(exp(lk));
    }
    for (int q = 0; q < st.d; ++q)
        for (int r = 0; r < n; ++r) M[q][r] = BigFloat(st.reduced_basis[q][r], p);
    for (int q = st.d; q < n; ++q) {
        int i = st.species_order[q];
        for (int r = 0; r < n; ++r) {
            int j = st.species_order[r];
            BigFloat e(p);
            for (int u = 0; u < m; ++u)
                if (st.A[i][u] != 0 && v[u][j] != 0) e += BigFloat(st.A[i][u], p) * K[u] * BigFloat(v[u][j], p) / c[j];
            M[q][r] = std::move(e);
        }
    }
    std::vector<BigFloat> xperm = null_vector(M, p);
    std::vector<BigFloat> gamma(static_cast<std::size_t>(n), BigFloat(p));
    for (int q = 0; q < n; ++q) gamma[st.species_order[q]] = xperm[q];

    // Project onto Gamma: subtract the component along the conservation laws.
    if (st.d > 0) {
        std::vector<std::vector<BigFloat>> W;
        for (int k = 0; k < st.d; ++k) {
            std::vector<BigFloat> w;
            for (const auto& q : st.basis_vector(k)) w.emplace_back(q, p);
            W.push_back(std::move(w));
        }
        // Solve (W W^T) y = W gamma, then gamma -= W^T y.
        const int d = st.d;
        std::vector<std::vector<BigFloat>> G(static_cast<std::size_t>(d), std::vector<BigFloat>(static_cast<std::size_t>(d + 1), BigFloat(p)));
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b)
                for (int i = 0; i < n; ++i) G[a][b] += W[a][i] * W[b][i];
            for (int i = 0; i < n; ++i) G[a][d] += W[a][i] * gamma[i];
        }
        for (int col = 0; col < d; ++col) {
            int piv = col;
            for (int r = col + 1; r < d; ++r)
                if (abs(G[r][col]) > abs(G[piv][col])) piv = r;
            std::swap(G[piv], G[col]);
            for (int r = 0; r < d; ++r) {
                if (r == col) continue;
                BigFloat f = G[r][col] / G[col][col];
                for (int q = col; q <= d; ++q) G[r][q] -= f * G[col][q];
            }
        }
        for (int a = 0; a < d; ++a) {
            BigFloat y = G[a][d] / G[a][a];
            for (int i = 0; i < n; ++i) gamma[i] -= W[a][i] * y;
        }
    }

    // Scale so that the largest |gamma_i / c_i| is 1.
    BigFloat big_ratio(0.0, p);
    for (int i = 0; i < n; ++i) {
        BigFloat r = abs(gamma[i] / c[i]);
        if (r > big_ratio) big_ratio = r;
    }
    if (big_ratio.is_zero()) return std::nullopt;
    for (auto& g : gamma) g /= big_ratio;

    std::vector<BigFloat> a, b;
    for (int i = 0; i < n; ++i) {
        if (gamma[i].is_zero()) {
            a.emplace_back(1.0, p);
            b.emplace_back(1.0, p);
            continue;
        }
        BigFloat t = gamma[i] / c[i];
        BigFloat bi = gamma[i] / expm1(t);
        a.push_back(bi * exp(t));
        b.push_back(std::move(bi));
    }
    Counterexample ce;
    for (int u = 0; u < m; ++u) {
        BigFloat dot(p);  // v_u *_c gamma
        BigFloat logb(p), logc(p);
        for (int j = 0; j < n; ++j) {
            if (v[u][j] == 0) continue;
            BigFloat vj(v[u][j], p);
            dot += vj * gamma[j] / c[j];
            logb += vj * log(b[j]);
            logc += vj * log(c[j]);
        }
        // a^v - b^v = b^v (e^{v *_c gamma} - 1); gamma_j = 0 coordinates cancel.
        BigFloat diff = exp(logb) * expm1(dot);
        BigFloat k = diff.is_zero() ? BigFloat(1.0, p) : eta[u] * exp(logc) * dot / diff;
        ce.kappa.push_back(k.to_double());
    }
    for (int i = 0; i < n; ++i) {
        ce.a.push_back(a[i].to_double());
        ce.b.push_back(b[i].to_double());
        ce.c.push_back(c[i].to_double());
    }
    for (int u = 0; u < m; ++u) ce.eta.push_back(eta[u].to_double());
    for (double k : ce.kappa)
        if (!(k > 0) || !std::isfinite(k)) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (!(ce.a[i] > 0) || !(ce.b[i] > 0) || !std::isfinite(ce.a[i]) || !std::isfinite(ce.b[i])) return std::nullopt;

    PowerLawKinetics pl{ce.kappa, v};
    auto ra = reaction_rates(pl, ce.a), rb = reaction_rates(pl, ce.b);
    auto fa = combine(net, ra), fb = combine(net, rb);
    const RatMatrix A = build_stoich(net);
    double scale = rate_scale(A, ra) + rate_scale(A, rb), worst = 0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(fa[i] - fb[i]));
    ce.residual = scale > 0 ? worst / scale : worst;
    double gnorm = 0;
    for (int i = 0; i < n; ++i) gnorm = std::max(gnorm, std::abs(ce.a[i] - ce.b[i]));
    for (int k = 0; k < st.d; ++k) {
        double dot = 0;
        auto w = st.basis_vector(k);
        for (int i = 0; i < n; ++i) dot += w[i].get_d() * (ce.a[i] - ce.b[i]);
        ce.gamma_residual = std::max(ce.gamma_residual, gnorm > 0 ? std::abs(dot) / gnorm : std::abs(dot));
    }
    if (!(ce.residual <= opt.residual_tol)) return std::nullopt;
    return ce;
}

}  // namespace crn
