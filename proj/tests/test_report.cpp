#include <doctest.h>

#include "support.hpp"

#include "errors.hpp"
#include "report.hpp"

using namespace crntest;

namespace {

AnalyzeRequest sns(const InfluenceSpec& i) {
    AnalyzeRequest r;
    r.cls = AnalysisClass::Sns;
    r.influence = i;
    return r;
}

}  // namespace

TEST_CASE("network summary") {
    Network net = load_net("futile.net");
    Json j = network_summary(net);
    CHECK(j["n"] == 6);
    CHECK(j["m"] == 6);
    CHECK(j["s"] == 3);
    CHECK(j["d"] == 3);
    CHECK(j["species"].size() == 6);
    CHECK(j["conservation_laws"].size() == 3);
    // Each law's coefficients are rationals printed as strings.
    for (const auto& law : j["conservation_laws"])
        for (const auto& [name, q] : law.items()) {
            CHECK(net.species_index(name) >= 0);
            CHECK(parse_rational(q.get<std::string>()) != 0);
        }
}

TEST_CASE("analyze report for the futile cycle") {
    Network net = load_net("futile.net");
    Json j = analyze_report(net, sns(reaction_influence(net)));
    CHECK(j["schema"] == kSchema);
    CHECK(j["command"] == "analyze");
    REQUIRE(j["verdicts"].size() == 1);
    const Json& v = j["verdicts"][0];
    CHECK(v["result"] == "Injective");
    CHECK(v["kinetics_class"] == "K_g(N,I)");
    CHECK(v["determinant"]["sign"] == "AllNegative");
    CHECK(v["signed_determinant"] == true);
    CHECK(v["delta"] == -1);
    CHECK(j["engines"]["sympoly_vs_dsr"] == true);

    Json mixed = analyze_report(net, sns(load_inf(net, "futile_s2_inhibition.inf")));
    const Json& mv = mixed["verdicts"][0];
    CHECK(mv["result"] == "NotInjective");
    REQUIRE(mv["witnesses"].size() == 2);
    CHECK(parse_rational(mv["witnesses"][0]["coefficient"].get<std::string>()) > 0);
    CHECK(parse_rational(mv["witnesses"][1]["coefficient"].get<std::string>()) < 0);
}

TEST_CASE("fixed-order report lists terms and a counterexample") {
    Network net = load_net("futile.net");
    AnalyzeRequest r;
    r.cls = AnalysisClass::Fixed;
    r.order = parse_order(read_file(data_path("futile_v_neg.ord")), net);
    Json j = analyze_report(net, r);
    const Json& v = j["verdicts"][0];
    CHECK(v["result"] == "NotInjective");
    CHECK(v["kinetics_class"] == "K_g(N)[v]");
    CHECK(v["terms"].size() > 0);
    for (const auto& w : v["witnesses"]) {
        CHECK(w["J"].size() == 3);
        CHECK(w["C"].size() == 3);
        CHECK(w["monomial"].get<std::string>().find("k(") != std::string::npos);
    }
    REQUIRE(v["counterexample"].is_object());
    CHECK(v["counterexample"]["residual"].get<double>() < 1e-8);

    r.order = mass_action_order(net);
    Json ma = analyze_report(net, r);
    CHECK(ma["verdicts"][0]["result"] == "Injective");
    CHECK(ma["verdicts"][0]["counterexample"].is_null());
}

TEST_CASE("restriction, P-matrix, DSR, graph and oracle reports") {
    Network pop = load_net("population.net");
    Json rr = restrict_report(pop, complex_influence(pop), false);
    CHECK(rr["command"] == "restrict");
    CHECK(rr["hypothesis_met"] == false);
    CHECK(rr["restriction_counts"]["Injective"] == 2);
    CHECK_THROWS_AS(restrict_report(pop, complex_influence(pop), true), PreconditionError);

    Network ce = load_net("counterexample.net");
    Json pm = pmatrix_report(ce, complex_influence(ce));
    CHECK(pm["verdicts"][0]["result"] == "Injective");
    CHECK(pm["p_matrix"]["condition_star"] == false);
    CHECK(pm["p_matrix"]["star_violations"].size() > 0);

    Network dsr = load_net("dsr.net");
    Json dj = dsr_report(dsr, complex_influence(dsr));
    CHECK(dj["graph"]["species_edges"] == 6);
    CHECK(dj["graph"]["reaction_edges"] == 6);
    CHECK(dj["circuits_by_species"]["1"] == 3);
    CHECK(dj["circuits_by_species"]["2"] == 4);
    CHECK(dj["nucleus_determinant"]["terms"] == 3);
    CHECK(dj["engines"]["sympoly_vs_dsr"] == true);

    InteractionGraph g = parse_sign_matrix(read_file(data_path("soule2.txt")));
    Json ig = igraph_report(g, nullptr);
    CHECK(ig["msns"]["msns"] == false);
    CHECK(ig["msns"]["message"] == "not mSNS; multistationarity not precluded by this criterion");
    CHECK(ig["nuclei"]["kind"] == "Mixed");
    CHECK(ig["nuclei_agree_with_sns"] == true);

    Network fut = load_net("futile.net");
    Json oj = oracle_report(fut, complex_influence(fut), 25, 4);
    CHECK(oj["oracle"]["samples"] == 25);
    CHECK(oj["oracle"]["seed"] == 4);
    CHECK(oj["oracle"]["mismatches"] == 0);
    CHECK(oj["oracle"]["agree"] == true);
}

TEST_CASE("reports are deterministic") {
    Network net = load_net("futile.net");
    InfluenceSpec inh = load_inf(net, "futile_s2_inhibition.inf");
    CHECK(analyze_report(net, sns(inh)).dump() == analyze_report(net, sns(inh)).dump());
    CHECK(oracle_report(net, inh, 30, 9).dump() == oracle_report(net, inh, 30, 9).dump());
    CHECK(oracle_report(net, inh, 30, 9).dump() != oracle_report(net, inh, 30, 10).dump());
    AnalyzeRequest r;
    r.cls = AnalysisClass::Fixed;
    r.order = parse_order(read_file(data_path("futile_v_neg.ord")), net);
    r.seed = 5;
    CHECK(analyze_report(net, r).dump() == analyze_report(net, r).dump());
}

TEST_CASE("text rendering") {
    Network net = load_net("futile.net");
    std::string t = render_text(analyze_report(net, sns(complex_influence(net))));
    CHECK(t.rfind("analyze (crn-inject/1)", 0) == 0);
    CHECK(t.find("Injective") != std::string::npos);
    CHECK(t.find("network: n=6 m=6 s=3 d=3") != std::string::npos);
    InteractionGraph g = parse_sign_matrix(read_file(data_path("soule2.txt")));
    CHECK(render_text(igraph_report(g, nullptr)).find("not mSNS; multistationarity not precluded by this criterion") !=
          std::string::npos);
}
