#include "crninject.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

// Exit codes: 0 analysis completed, 2 parse error, 3 precondition violated, 1 anything else.
int exit_code(crn_status s) {
    switch (s) {
        case CRN_OK: return 0;
        case CRN_ERR_PARSE: return 2;
        case CRN_ERR_PRECONDITION: return 3;
        default: return 1;
    }
}

struct Failure {
    crn_status status;
};

void check(crn_status s, const std::string& context) {
    if (s == CRN_OK) return;
    std::cerr << "crninject: " << context << ": " << crn_last_error() << "\n";
    throw Failure{s};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using NetPtr = std::unique_ptr<crn_network, Deleter<crn_network, crn_network_free>>;
using InfPtr = std::unique_ptr<crn_influence, Deleter<crn_influence, crn_influence_free>>;
using OrderPtr = std::unique_ptr<crn_order, Deleter<crn_order, crn_order_free>>;
using GraphPtr = std::unique_ptr<crn_sign_graph, Deleter<crn_sign_graph, crn_sign_graph_free>>;
using PartPtr = std::unique_ptr<crn_partition, Deleter<crn_partition, crn_partition_free>>;
using StrPtr = std::unique_ptr<char, Deleter<char, crn_string_free>>;

NetPtr load_network(const std::string& path) {
    crn_network* n = nullptr;
    check(crn_network_load(path.c_str(), &n), path);
    return NetPtr(n);
}

InfPtr load_influence(const crn_network* net, const std::string& arg) {
    crn_influence* i = nullptr;
    check(crn_influence_load(net, arg.c_str(), &i), arg);
    return InfPtr(i);
}

struct Options {
    std::string network;
    std::string format = "text";
    bool timing = false;
    int threads = 0;
    std::string influence = "@complex";
    std::string cls = "sns";
    std::string order;
    std::string i1 = "@complex";
    std::string i2 = "@reaction";
    uint64_t seed = 1;
    bool strict = false;
    std::string dot;
    std::string matrix;
    std::string partition;
    int samples = 1000;
};

crn_format format_of(const Options& o) { return o.format == "json" ? CRN_FORMAT_JSON : CRN_FORMAT_TEXT; }

void print_report(char* raw, const Options& o, double ms) {
    StrPtr out(raw);
    std::string text = out.get();
    if (o.timing) {
        if (o.format == "json") {
            auto j = nlohmann::ordered_json::parse(text);
            j["timing"] = {{"wall_ms", ms}};
            text = j.dump(2) + "\n";
        } else {
            text += "timing: " + std::to_string(ms) + " ms\n";
        }
    }
    std::cout << text;
}

template <class F>
void timed(const Options& o, const std::string& what, F&& call) {
    char* out = nullptr;
    auto t0 = std::chrono::steady_clock::now();
    crn_status s = call(&out);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    check(s, what);
    print_report(out, o, ms);
}

void run_analyze(const Options& o) {
    NetPtr net = load_network(o.network);
    InfPtr i, i2;
    OrderPtr v;
    crn_class cls;
    if (o.cls == "fixed") {
        cls = CRN_CLASS_FIXED;
        if (o.order.empty()) {
            std::cerr << "crninject: --class fixed needs --order FILE\n";
            throw Failure{CRN_ERR_ARGUMENT};
        }
        crn_order* raw = nullptr;
        check(crn_order_load(net.get(), o.order.c_str(), nullptr, &raw), o.order);
        v.reset(raw);
    } else if (o.cls == "union") {
        cls = CRN_CLASS_UNION;
        i = load_influence(net.get(), o.i1);
        i2 = load_influence(net.get(), o.i2);
    } else {
        cls = o.cls == "weak" ? CRN_CLASS_WEAK : CRN_CLASS_SNS;
        i = load_influence(net.get(), o.influence);
    }
    timed(o, "analyze", [&](char** out) {
        return crn_report_analyze(net.get(), cls, i.get(), i2.get(), v.get(), o.seed, format_of(o), out);
    });
}

void run_restrict(const Options& o) {
    NetPtr net = load_network(o.network);
    InfPtr i = load_influence(net.get(), o.influence);
    timed(o, "restrict", [&](char** out) { return crn_report_restrict(net.get(), i.get(), o.strict, format_of(o), out); });
}

void run_pmatrix(const Options& o) {
    NetPtr net = load_network(o.network);
    InfPtr i = load_influence(net.get(), o.influence);
    timed(o, "pmatrix", [&](char** out) { return crn_report_pmatrix(net.get(), i.get(), o.strict, format_of(o), out); });
}

void run_dsr(const Options& o) {
    NetPtr net = load_network(o.network);
    InfPtr i = load_influence(net.get(), o.influence);
    char* dot = nullptr;
    timed(o, "dsr", [&](char** out) {
        return crn_report_dsr(net.get(), i.get(), format_of(o), out, o.dot.empty() ? nullptr : &dot);
    });
    if (dot) {
        StrPtr d(dot);
        if (o.dot == "-") {
            std::cout << d.get();
        } else {
            std::ofstream f(o.dot);
            f << d.get();
            if (!f) {
                std::cerr << "crninject: cannot write " << o.dot << "\n";
                throw Failure{CRN_ERR_IO};
            }
        }
    }
}

void run_igraph(const Options& o) {
    crn_sign_graph* g = nullptr;
    check(crn_sign_graph_load(o.matrix.c_str(), &g), o.matrix);
    GraphPtr graph(g);
    PartPtr part;
    if (!o.partition.empty()) {
        crn_partition* p = nullptr;
        check(crn_partition_load(graph.get(), o.partition.c_str(), &p), o.partition);
        part.reset(p);
    }
    timed(o, "igraph", [&](char** out) { return crn_report_igraph(graph.get(), part.get(), format_of(o), out); });
}

void run_oracle(const Options& o) {
    NetPtr net = load_network(o.network);
    InfPtr i = load_influence(net.get(), o.influence);
    timed(o, "oracle", [&](char** out) {
        return crn_report_oracle(net.get(), i.get(), o.samples, o.seed, format_of(o), out);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Injectivity analysis of interaction networks"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", o.timing, "Append wall-clock time to the report");
    app.add_option("--threads", o.threads, "Worker threads (overrides CRNINJECT_THREADS)")->check(CLI::PositiveNumber);
    app.set_version_flag("--version", crn_version());

    auto influence_opt = [&](CLI::App* sub) {
        sub->add_option("-i,--influence", o.influence, "Influence file or @complex/@reaction/@zero")
            ->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "Injectivity verdict for a kinetics class");
    analyze->add_option("network", o.network, "Network file")->required();
    analyze->add_option("--class", o.cls, "fixed, sns, union or weak")
        ->check(CLI::IsMember({"fixed", "sns", "union", "weak"}))
        ->capture_default_str();
    analyze->add_option("--order", o.order, "Kinetic-order file (--class fixed)");
    analyze->add_option("--i1", o.i1, "Lower influence (--class union)")->capture_default_str();
    analyze->add_option("--i2", o.i2, "Upper influence (--class union)")->capture_default_str();
    analyze->add_option("--seed", o.seed, "Seed of the counterexample search")->capture_default_str();
    influence_opt(analyze);

    auto* restrict_ = app.add_subcommand("restrict", "Verdicts of all rank-s restrictions");
    restrict_->add_option("network", o.network, "Network file")->required();
    restrict_->add_flag("--strict", o.strict, "Fail unless the full network is sign-nonsingular");
    influence_opt(restrict_);

    auto* pmatrix = app.add_subcommand("pmatrix", "P-matrix test and condition (*)");
    pmatrix->add_option("network", o.network, "Network file")->required();
    pmatrix->add_flag("--strict", o.strict, "Fail unless the influence is below the reaction influence");
    influence_opt(pmatrix);

    auto* dsr = app.add_subcommand("dsr", "DSR graph, circuits and nucleus determinant");
    dsr->add_option("network", o.network, "Network file")->required();
    dsr->add_option("--dot", o.dot, "Write the graph in DOT format ('-' for stdout)");
    influence_opt(dsr);

    auto* igraph = app.add_subcommand("igraph", "Interaction-graph criteria for a sign matrix");
    igraph->add_option("--matrix", o.matrix, "Sign matrix file")->required();
    igraph->add_option("--partition", o.partition, "H1/H2 partition file");

    auto* oracle = app.add_subcommand("oracle", "Numeric check of the symbolic determinant");
    oracle->add_option("network", o.network, "Network file")->required();
    oracle->add_option("--samples", o.samples, "Number of samples")->check(CLI::NonNegativeNumber)->capture_default_str();
    oracle->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
    influence_opt(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (o.threads > 0) setenv("CRNINJECT_THREADS", std::to_string(o.threads).c_str(), 1);

    try {
        if (*analyze) run_analyze(o);
        else if (*restrict_) run_restrict(o);
        else if (*pmatrix) run_pmatrix(o);
        else if (*dsr) run_dsr(o);
        else if (*igraph) run_igraph(o);
        else if (*oracle) run_oracle(o);
    } catch (const Failure& f) {
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "crninject: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
