#include <doctest.h>

#include "support.hpp"

#include "errors.hpp"

using namespace crntest;

namespace {

// Line and column of the ParseError thrown by f, or {-1, -1}.
template <class F>
std::pair<int, int> where(F&& f, std::string* msg = nullptr) {
    try {
        f();
    } catch (const ParseError& e) {
        if (msg) *msg = e.what();
        return {e.line(), e.column()};
    }
    return {-1, -1};
}

}  // namespace

TEST_CASE("reaction grammar") {
    Network net = parse_network("# comment\nr1: 2 S1 + B -> D\n\nr2: D → 0   # trailing\nr3: 0 -> S1\n");
    CHECK(net.species == std::vector<std::string>{"S1", "B", "D"});
    REQUIRE(net.m() == 3);
    CHECK(net.reactions[0].reactant.at(0) == 2);
    CHECK(net.reactions[0].reactant.at(1) == 1);
    CHECK(net.reactions[0].product.at(2) == 1);
    CHECK(net.reactions[1].product.coeff.empty());
    CHECK(net.reactions[2].reactant.coeff.empty());
    Network declared = parse_network("@species D B S1\nr1: 2 S1 + B -> D\n");
    CHECK(declared.species == std::vector<std::string>{"D", "B", "S1"});
    // Repeated species in one complex add up.
    CHECK(parse_network("r1: A + A -> B\n").reactions[0].reactant.at(0) == 2);
}

TEST_CASE("network errors carry positions") {
    std::string msg;
    auto p = where([] { parse_network("r1: A -> B\nr2: A + B -> B + A\n"); }, &msg);
    CHECK(p.first == 2);
    CHECK(msg.find("(y,y) not allowed") != std::string::npos);
    CHECK(msg.rfind("line 2, column ", 0) == 0);

    p = where([] { parse_network("r1: A -> B\nr1: B -> A\n"); }, &msg);
    CHECK(p.first == 2);
    CHECK(msg.find("duplicate reaction label") != std::string::npos);

    p = where([] { parse_network("r1: A B\n"); }, &msg);
    CHECK(p == std::pair<int, int>{1, 8});
    CHECK(msg.find("expected '->'") != std::string::npos);

    p = where([] { parse_network("r1: A -> B -> C\n"); });
    CHECK(p == std::pair<int, int>{1, 12});

    // Unlabeled reactions get their position as label.
    CHECK(parse_network("A -> B\n").reactions[0].label == "r1");

    p = where([] { parse_network("r1: x A -> B\n"); }, &msg);
    CHECK(p == std::pair<int, int>{1, 7});
    CHECK(msg.find("expected '+'") != std::string::npos);

    p = where([] { parse_network("r1: -2 A -> B\n"); });
    CHECK(p.first == 1);

    p = where([] { parse_network("@species A A\nr1: A -> 0\n"); }, &msg);
    CHECK(p.first == 1);
    CHECK(msg.find("declared twice") != std::string::npos);

    p = where([] { parse_network("@bogus\n"); });
    CHECK(p.first == 1);

    p = where([] { parse_network("# nothing\n"); }, &msg);
    CHECK(msg.find("no reactions") != std::string::npos);
}

TEST_CASE("influence grammar") {
    Network net = load_net("futile.net");
    InfluenceSpec base = parse_influence("@complex\n", net);
    CHECK(base.signs == complex_influence(net).signs);
    CHECK(parse_influence("@reaction", net).signs == reaction_influence(net).signs);
    CHECK(parse_influence("@zero", net).signs == zero_influence(net).signs);
    const std::string r1 = net.reactions[0].label, s2 = net.species[1];
    InfluenceSpec over = parse_influence("@complex\n" + r1 + ": " + s2 + ":-\n", net);
    CHECK(over.at(0, 1) == -1);
    // No base: everything else is zero.
    InfluenceSpec bare = parse_influence(r1 + ": " + s2 + ":+\n", net);
    int nonzero = 0;
    for (const auto& row : bare.signs)
        for (int x : row) nonzero += x != 0;
    CHECK(nonzero == 1);
    CHECK(parse_influence(print_influence(over, net), net).signs == over.signs);
}

TEST_CASE("influence errors") {
    Network net = parse_network("r1: A -> B\nr2: B -> A\n");
    std::string msg;
    auto p = where([&] { parse_influence("r1: A:+\nr9: A:+\n", net); }, &msg);
    CHECK(p.first == 2);
    CHECK(msg.find("unknown reaction 'r9'") != std::string::npos);
    p = where([&] { parse_influence("r1: A:+ Q:-\n", net); }, &msg);
    CHECK(p == std::pair<int, int>{1, 9});
    CHECK(msg.find("unknown species 'Q'") != std::string::npos);
    p = where([&] { parse_influence("r1: A:+\nr1: A:-\n", net); }, &msg);
    CHECK(p.first == 2);
    CHECK(msg.find("conflicting assignment") != std::string::npos);
    // Re-stating the same sign is fine.
    CHECK_NOTHROW(parse_influence("r1: A:+\nr1: A:+\n", net));
    p = where([&] { parse_influence("r1: A:x\n", net); });
    CHECK(p.first == 1);
    p = where([&] { parse_influence("@complex\n@zero\n", net); }, &msg);
    CHECK(msg.find("more than one base") != std::string::npos);
    p = where([&] { parse_influence("@frobnicate\n", net); });
    CHECK(p.first == 1);
}

TEST_CASE("kinetic orders") {
    Network net = load_net("futile.net");
    KineticOrder neg = parse_order(read_file(data_path("futile_v_neg.ord")), net);
    KineticOrder ma = mass_action_order(net);
    const int s2 = net.species_index("S2");
    for (int u = 0; u < net.m(); ++u)
        for (int j = 0; j < net.n(); ++j) CHECK(neg.v[u][j] == (u == 0 && j == s2 ? make_rational(-1, 2) : ma.v[u][j]));
    // Sign check against an influence.
    CHECK_NOTHROW(parse_order(read_file(data_path("futile_v_neg.ord")), net, load_inf(net, "futile_s2_inhibition.inf")));
    CHECK_THROWS_AS(parse_order(read_file(data_path("futile_v_neg.ord")), net, complex_influence(net)), PreconditionError);
    std::string msg;
    auto p = where([&] { parse_order("r1: S1=abc\n", net); }, &msg);
    CHECK(p.first == 1);
    CHECK(msg.find("bad number") != std::string::npos);
    p = where([&] { parse_order("r1: S1=1\nr1: S1=2\n", net); });
    CHECK(p.first == 2);
    CHECK(parse_order("r1: S1=0.5\n", net).v[0][0] == make_rational(1, 2));
}

TEST_CASE("sign matrices and partitions") {
    InteractionGraph g = parse_sign_matrix("# c\n- +\n1 0\n");
    CHECK(g.at(0, 0) == -1);
    CHECK(g.at(0, 1) == 1);
    CHECK(g.at(1, 0) == 1);
    CHECK(g.at(1, 1) == 0);
    CHECK(parse_sign_matrix("-1 1\n+ 0\n") == g);
    auto p = where([] { parse_sign_matrix("- +\n0\n"); });
    CHECK(p.first == 2);
    std::string msg;
    where([] { parse_sign_matrix("- + 0\n0 0 0\n"); }, &msg);
    CHECK(msg.find("not square") != std::string::npos);
    where([] { parse_sign_matrix("- ?\n0 0\n"); }, &msg);
    CHECK(msg.find("'?'") != std::string::npos);

    Partition part = parse_partition("1: 1:2\n2: 1:1\n", g);
    CHECK(part.at(0, 0) == 2);
    CHECK(part.at(1, 0) == 1);
    // Edges not listed default to H1.
    CHECK(part.at(0, 1) == 1);
    CHECK(parse_partition("", g).at(1, 0) == 1);
    CHECK(part.at(1, 1) == 0);
    where([&] { parse_partition("2: 2:1\n", g); }, &msg);
    CHECK(msg.find("no edge 2 -> 2") != std::string::npos);
    where([&] { parse_partition("3: 1:1\n", g); }, &msg);
    CHECK(msg.find("1..2") != std::string::npos);
    where([&] { parse_partition("1: 1:3\n", g); }, &msg);
    CHECK(msg.find("side must be 1 or 2") != std::string::npos);
}

TEST_CASE("fixtures parse") {
    for (const char* f : {"futile.net", "lotka.net", "population.net", "dsr.net", "counterexample.net", "soule.net", "gene.net"}) {
        Network net = load_net(f);
        CHECK(net.m() > 0);
        CHECK(parse_network(print_network(net)) == net);
    }
    CHECK_THROWS(read_file(data_path("missing.net")));
    Network futile = load_net("futile.net");
    CHECK(influence_argument("@reaction", futile).signs == reaction_influence(futile).signs);
    CHECK(influence_argument(data_path("futile_s2_inhibition.inf"), futile).signs ==
          load_inf(futile, "futile_s2_inhibition.inf").signs);
}

TEST_CASE("property: printing and parsing round-trip random networks") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 300; ++t) {
        int n = 1 + static_cast<int>(rng() % 6), m = 1 + static_cast<int>(rng() % 6);
        Network net = random_network(rng, n, m, 3);
        std::string text = print_network(net);
        Network back = parse_network(text);
        CHECK(back == net);
        CHECK(print_network(back) == text);
        InfluenceSpec inf = random_influence(rng, net);
        CHECK(parse_influence(print_influence(inf, net), net).signs == inf.signs);
    }
}
