#include "report.hpp"

#include "dsr.hpp"
#include "errors.hpp"
#include "injectivity.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace crn {

namespace {

std::string complex_text(const Complex& c, const Network& net) {
    if (c.is_zero()) return "0";
    std::string out;
    for (const auto& [j, q] : c.coeff) {
        if (!out.empty()) out += " + ";
        if (q != 1) out += to_string(q) + " ";
        out += net.species[j];
    }
    return out;
}

Json poly_json(const SignedPolynomial& p, const VarNamer& namer) {
    SignClass sc = sign_classify(p);
    Json j;
    j["text"] = p.is_zero() ? "0" : p.to_string(namer);
    j["terms"] = p.size();
    j["sign"] = to_string(sc.tag);
    return j;
}

Json witness_json(const SignClass& sc, const VarNamer& namer) {
    Json arr = Json::array();
    for (const auto& w : sc.witnesses) {
        Json e;
        e["monomial"] = SignedPolynomial::monomial(w.vars, w.coeff).to_string(namer);
        e["coefficient"] = to_string(w.coeff);
        arr.push_back(e);
    }
    return arr;
}

Json verdict_json(const std::string& op, const Verdict& v, const Network& net) {
    VarNamer namer = v.vars == PolyVars::Z ? z_namer(net) : kinetic_namer(net);
    Json j;
    j["operation"] = op;
    j["result"] = to_string(v.result);
    j["kinetics_class"] = v.kinetics_class;
    j["theorem"] = v.theorem;
    j["determinant"] = poly_json(v.polynomial, namer);
    j["witnesses"] = witness_json(v.witness, namer);
    j["notes"] = v.notes;
    return j;
}

Json base(const std::string& command) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    return j;
}

std::vector<std::string> names(const std::vector<int>& idx, const std::vector<std::string>& all) {
    std::vector<std::string> out;
    for (int k : idx) out.push_back(all[k]);
    return out;
}

std::vector<std::string> reaction_names(const Network& net, const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (int u : idx) out.push_back(net.reactions[u].label);
    return out;
}

// k(r1)*k(r3)*c(S1)*c(S2)^(-1/2): the monomial with its real exponents.
std::string fixed_monomial(const FixedOrderTerm& t, const Network& net) {
    std::string out;
    for (int u : t.C) out += (out.empty() ? "" : "*") + std::string("k(") + net.reactions[u].label + ")";
    for (int j = 0; j < net.n(); ++j) {
        const Rational& e = t.c_exponent[j];
        if (e == 0) continue;
        out += "*c(" + net.species[j] + ")";
        if (e != 1) out += "^(" + to_string(e) + ")";
    }
    return out;
}

std::string fixed_expression(const std::vector<FixedOrderTerm>& terms, const Network& net) {
    std::string out;
    for (const auto& t : terms) {
        Rational a = abs(t.coeff);
        if (out.empty())
            out += t.coeff < 0 ? "-" : "";
        else
            out += t.coeff < 0 ? " - " : " + ";
        if (a != 1) out += to_string(a) + "*";
        out += fixed_monomial(t, net);
    }
    return out.empty() ? "0" : out;
}

// sympoly and the DSR nucleus engine should produce the same polynomial.
Json engine_agreement(const Network& net, const InfluenceSpec& i, const SignedPolynomial& p) {
    Json j;
    try {
        StoichInfo st = conservation_analysis(build_stoich(net));
        SignedPolynomial nuc = nucleus_determinant(build_dsr(net, i), st.s);
        j["sympoly_vs_dsr"] = nuc == p;
    } catch (const CapExceeded& e) {
        j["sympoly_vs_dsr"] = nullptr;
        j["skipped"] = e.what();
    }
    return j;
}

}  // namespace

Json network_summary(const Network& net) {
    StoichInfo st = conservation_analysis(build_stoich(net));
    Json j;
    j["n"] = net.n();
    j["m"] = net.m();
    j["s"] = st.s;
    j["d"] = st.d;
    j["species"] = net.species;
    Json rs = Json::array();
    for (const auto& r : net.reactions)
        rs.push_back(r.label + ": " + complex_text(r.reactant, net) + " -> " + complex_text(r.product, net));
    j["reactions"] = rs;
    Json laws = Json::array();
    for (int k = 0; k < st.d; ++k) {
        Json law = Json::object();
        auto w = st.basis_vector(k);
        for (int s = 0; s < net.n(); ++s)
            if (w[s] != 0) law[net.species[s]] = to_string(w[s]);
        laws.push_back(law);
    }
    j["conservation_laws"] = laws;
    return j;
}

Json analyze_report(const Network& net, const AnalyzeRequest& req) {
    Json out = base("analyze");
    out["network"] = network_summary(net);
    Json verdicts = Json::array();
    auto need = [](const auto& opt, const char* what) -> const auto& {
        if (!opt) throw PreconditionError(std::string("missing ") + what);
        return *opt;
    };
    switch (req.cls) {
        case AnalysisClass::Fixed: {
            const KineticOrder& v = need(req.order, "kinetic order (--order)");
            FixedOrderResult fo = check_fixed_order(net, v);
            Json vj = verdict_json("check_fixed_order", fo.verdict, net);
            vj["determinant"]["text"] = fixed_expression(fo.terms, net);
            // Witnesses as (J, C) terms; the c-part of a kinetic monomial is
            // the complement of J, which pins the term down.
            Json wit = Json::array();
            for (const auto& w : fo.verdict.witness.witnesses)
                for (const auto& t : fo.terms) {
                    VarSet vs;
                    for (int u : t.C) vs.insert(k_var(u));
                    for (int j = 0; j < net.n(); ++j)
                        if (!std::binary_search(t.J.begin(), t.J.end(), j)) vs.insert(c_var(j, net.m()));
                    if (!(vs == w.vars)) continue;
                    Json e;
                    Rational c = t.coeff;
                    e["monomial"] = (c < 0 ? "-" : "") + (abs(c) == 1 ? "" : to_string(abs(c)) + "*") + fixed_monomial(t, net);
                    e["coefficient"] = to_string(t.coeff);
                    e["J"] = names(t.J, net.species);
                    e["C"] = reaction_names(net, t.C);
                    wit.push_back(e);
                }
            vj["witnesses"] = wit;
            Json terms = Json::array();
            for (const auto& t : fo.terms) {
                Json tj;
                tj["J"] = names(t.J, net.species);
                tj["C"] = reaction_names(net, t.C);
                tj["coefficient"] = to_string(t.coeff);
                std::vector<std::string> ex;
                for (const auto& q : t.c_exponent) ex.push_back(to_string(q));
                tj["c_exponent"] = ex;
                terms.push_back(tj);
            }
            vj["terms"] = terms;
            if (fo.verdict.result != VerdictResult::Injective) {
                CounterexampleOptions co;
                co.seed = req.seed;
                auto ce = counterexample_search(net, v, co);
                if (ce) {
                    Json cj;
                    cj["kappa"] = ce->kappa;
                    cj["a"] = ce->a;
                    cj["b"] = ce->b;
                    cj["residual"] = ce->residual;
                    cj["gamma_residual"] = ce->gamma_residual;
                    vj["counterexample"] = cj;
                } else {
                    vj["counterexample"] = nullptr;
                }
            }
            verdicts.push_back(vj);
            break;
        }
        case AnalysisClass::Sns: {
            const InfluenceSpec& i = need(req.influence, "influence");
            Verdict v = check_sns(net, i);
            Json vj = verdict_json("check_sns", v, net);
            SignedDeterminant sd = has_signed_determinant(net, i);
            vj["signed_determinant"] = sd.signed_;
            vj["delta"] = sd.delta;
            out["engines"] = engine_agreement(net, i, v.polynomial);
            verdicts.push_back(vj);
            break;
        }
        case AnalysisClass::Union: {
            const InfluenceSpec& lo = need(req.lower, "lower influence (--i1)");
            const InfluenceSpec& hi = need(req.upper, "upper influence (--i2)");
            verdicts.push_back(verdict_json("check_bounded_union", check_bounded_union(net, lo, hi), net));
            break;
        }
        case AnalysisClass::Weak: {
            const InfluenceSpec& i = need(req.influence, "influence");
            verdicts.push_back(verdict_json("check_weakly_monotonic", check_weakly_monotonic(net, i), net));
            break;
        }
    }
    out["verdicts"] = verdicts;
    return out;
}

Json restrict_report(const Network& net, const InfluenceSpec& i, bool strict) {
    RestrictionOptions opt;
    opt.require_hypothesis = strict;
    RestrictionReport rep = analyze_restrictions(net, i, opt);
    Json out = base("restrict");
    out["network"] = network_summary(net);
    out["hypothesis_met"] = rep.hypothesis_met;
    out["verdicts"] = Json::array({verdict_json("check_sns", rep.full, net)});
    Json entries = Json::array();
    std::map<std::string, int> counts;
    for (const auto& e : rep.entries) {
        // restricted determinants index reactions within the subset
        VarNamer namer = z_namer(restrict_network(net, e.reactions));
        Json ej;
        ej["reactions"] = reaction_names(net, e.reactions);
        ej["status"] = to_string(e.status);
        ej["determinant"] = e.determinant.is_zero() ? "0" : e.determinant.to_string(namer);
        entries.push_back(ej);
        ++counts[to_string(e.status)];
    }
    out["restrictions"] = entries;
    Json cj = Json::object();
    for (const char* k : {"Injective", "OnlyDegenerate", "NotInjective", "Skipped"}) cj[k] = counts[k];
    out["restriction_counts"] = cj;
    return out;
}

Json pmatrix_report(const Network& net, const InfluenceSpec& i, bool strict) {
    PMatrixReport rep = check_p_matrix(net, i, strict);
    Json out = base("pmatrix");
    out["network"] = network_summary(net);
    out["verdicts"] = Json::array({verdict_json("check_sns", rep.sns, net)});
    Json p;
    p["hypothesis_met"] = rep.hypothesis_met;
    p["order_exists"] = rep.order_exists;
    p["p_matrix_for_all_orders"] = rep.p_matrix_for_all_orders;
    p["consistent"] = rep.consistent;
    p["species_order"] = names(rep.species_order, net.species);
    if (rep.failing_minor) {
        std::vector<int> orig;
        for (int q : *rep.failing_minor) orig.push_back(rep.species_order[q]);
        p["failing_minor"] = names(orig, net.species);
    } else {
        p["failing_minor"] = nullptr;
    }
    p["condition_star"] = rep.condition_star;
    Json viol = Json::array();
    VarNamer namer = z_namer(net);
    for (const auto& t : rep.star_violations) {
        Json tj;
        tj["J"] = names(t.J, net.species);
        tj["C"] = reaction_names(net, t.C);
        tj["product"] = t.product.is_zero() ? "0" : t.product.to_string(namer);
        tj["signed_sign"] = to_string(t.signed_tag);
        viol.push_back(tj);
    }
    p["star_violations"] = viol;
    out["p_matrix"] = p;
    return out;
}

Json dsr_report(const Network& net, const InfluenceSpec& i) {
    check_shape(i, net);
    DsrGraph g = build_dsr(net, i);
    StoichInfo st = conservation_analysis(build_stoich(net));
    Json out = base("dsr");
    out["network"] = network_summary(net);
    Json gj;
    gj["species_edges"] = g.species_edges.size();
    int neg = 0;
    for (const auto& e : g.species_edges) neg += e.sign < 0;
    gj["negative_species_edges"] = neg;
    gj["reaction_edges"] = g.reaction_edges.size();
    out["graph"] = gj;
    VarNamer namer = z_namer(net);
    CircuitOptions co;
    co.max_species = st.s;
    Json circuits = Json::array();
    std::map<int, int> by_species;
    for (const auto& c : enumerate_circuits(g, co)) {
        Json cj;
        std::vector<std::string> nodes;
        for (int v : c.nodes) nodes.push_back(v < g.n ? net.species[v] : net.reactions[v - g.n].label);
        cj["nodes"] = nodes;
        cj["species_count"] = c.species_count;
        cj["label"] = c.label.to_string(namer);
        circuits.push_back(cj);
        ++by_species[c.species_count];
    }
    out["circuits"] = circuits;
    Json bs = Json::object();
    for (const auto& [k, cnt] : by_species) bs[std::to_string(k)] = cnt;
    out["circuits_by_species"] = bs;
    SignedPolynomial nuc = nucleus_determinant(g, st.s);
    out["nucleus_determinant"] = poly_json(nuc, namer);
    Json eng;
    eng["sympoly_vs_dsr"] = nuc == influence_determinant(net, i);
    eng["cauchy_binet_vs_dsr"] = nuc == sum_terms(cauchy_binet_terms(st, sign_pattern(i)));
    out["engines"] = eng;
    return out;
}

Json igraph_report(const InteractionGraph& g, const Partition* p) {
    Json out = base("igraph");
    Json mat = Json::array();
    for (const auto& row : g.g) {
        std::string r;
        for (auto v : row) r += std::string(r.empty() ? "" : " ") + (v > 0 ? "+" : v < 0 ? "-" : "0");
        mat.push_back(r);
    }
    out["matrix"] = mat;
    std::vector<int> J = incoming_nodes(g);
    std::vector<int> J1;
    for (int j : J) J1.push_back(j + 1);
    out["incoming_nodes"] = J1;
    bool msns = msns_check(g);
    Json mj;
    mj["msns"] = msns;
    mj["determinant"] = poly_json(sign_matrix_determinant(g), [n = g.n()](unsigned id) {
        return "z(" + std::to_string(id / static_cast<unsigned>(n) + 1) + "," + std::to_string(id % static_cast<unsigned>(n) + 1) + ")";
    });
    mj["message"] = msns ? "mSNS; multistationarity precluded" : "not mSNS; multistationarity not precluded by this criterion";
    out["msns"] = mj;
    NucleiVerdict nv = nuclei_verdict(g);
    Json nj;
    nj["kind"] = to_string(nv.kind);
    nj["sign"] = nv.sign;
    nj["s"] = nv.s;
    nj["positive"] = nv.positive;
    nj["negative"] = nv.negative;
    out["nuclei"] = nj;
    if (!J.empty()) {
        auto [net, inf] = network_from_graph(g, p ? *p : Partition{});
        out["network"] = network_summary(net);
        Json vj = verdict_json("check_sns", check_sns(net, inf), net);
        out["verdicts"] = Json::array({vj});
        out["nuclei_agree_with_sns"] =
            (nv.kind == NucleiKind::Coherent) == (vj["result"] == "Injective");
    }
    return out;
}

Json oracle_report(const Network& net, const InfluenceSpec& i, int samples, uint64_t seed) {
    AgreementOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    AgreementReport rep = symbolic_numeric_agreement(net, i, opt);
    Json out = base("oracle");
    out["network"] = network_summary(net);
    Json o;
    o["samples"] = rep.samples;
    o["seed"] = rep.seed;
    o["symbolic_sign"] = to_string(rep.symbolic_tag);
    o["mismatches"] = rep.mismatches;
    o["positive"] = rep.positive;
    o["negative"] = rep.negative;
    o["zero"] = rep.zero;
    o["max_rel_diff"] = rep.max_rel_diff;
    o["max_conservation"] = rep.max_conservation;
    o["conservation_violations"] = rep.conservation_violations;
    o["mismatch_samples"] = rep.mismatch_samples;
    o["agree"] = rep.mismatches == 0 && rep.conservation_violations == 0;
    out["oracle"] = o;
    return out;
}

namespace {

std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render_value(std::ostringstream& os, const std::string& key, const Json& v, int indent) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        os << pad << key << ":\n";
        for (auto it = v.begin(); it != v.end(); ++it) render_value(os, it.key(), it.value(), indent + 2);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
        os << pad << key << ": " << v.size() << "\n";
        for (const auto& e : v) {
            if (e.is_object()) {
                std::string line;
                for (auto it = e.begin(); it != e.end(); ++it) {
                    if (!line.empty()) line += "  ";
                    line += it.key() + "=" + (it.value().is_array() ? it.value().dump() : scalar(it.value()));
                }
                os << pad << "  - " << line << "\n";
            } else {
                os << pad << "  - " << e.dump() << "\n";
            }
        }
    } else if (v.is_array()) {
        std::string line;
        for (const auto& e : v) line += (line.empty() ? "" : ", ") + scalar(e);
        os << pad << key << ": " << line << "\n";
    } else {
        os << pad << key << ": " << scalar(v) << "\n";
    }
}

}  // namespace

std::string render_text(const Json& r) {
    std::ostringstream os;
    os << r.value("command", std::string("report")) << " (" << r.value("schema", std::string()) << ")\n";
    if (r.contains("network")) {
        const Json& n = r["network"];
        os << "network: n=" << n["n"] << " m=" << n["m"] << " s=" << n["s"] << " d=" << n["d"] << "\n";
        for (const auto& law : n["conservation_laws"]) {
            std::string line;
            for (auto it = law.begin(); it != law.end(); ++it) {
                std::string c = it.value().get<std::string>();
                line += (line.empty() ? "" : " + ") + (c == "1" ? "" : c + "*") + it.key();
            }
            os << "  conserved: " << line << "\n";
        }
    }
    if (r.contains("verdicts")) {
        for (const auto& v : r["verdicts"]) {
            os << v["operation"].get<std::string>() << ": " << v["result"].get<std::string>() << "  ["
               << v["kinetics_class"].get<std::string>() << "; " << v["theorem"].get<std::string>() << "]\n";
            os << "  determinant (" << v["determinant"]["sign"].get<std::string>()
               << "): " << v["determinant"]["text"].get<std::string>() << "\n";
            for (const auto& w : v["witnesses"]) os << "  witness: " << w["monomial"].get<std::string>() << "\n";
            for (const auto& note : v["notes"]) os << "  note: " << note.get<std::string>() << "\n";
            for (auto it = v.begin(); it != v.end(); ++it) {
                static const std::set<std::string> shown{"operation", "result", "kinetics_class", "theorem",
                                                         "determinant", "witnesses", "notes"};
                if (!shown.count(it.key())) render_value(os, it.key(), it.value(), 2);
            }
        }
    }
    for (auto it = r.begin(); it != r.end(); ++it) {
        if (it.key() == "schema" || it.key() == "command" || it.key() == "network" || it.key() == "verdicts") continue;
        render_value(os, it.key(), it.value(), 0);
    }
    return os.str();
}

}  // namespace crn
