#include "crninject.h"

#include "dsr.hpp"
#include "errors.hpp"
#include "injectivity.hpp"
#include "parse.hpp"
#include "report.hpp"

#include <cstdlib>
#include <cstring>
#include <ios>
#include <optional>
#include <new>
#include <string>

struct crn_network {
    crn::Network net;
};
struct crn_influence {
    crn::InfluenceSpec spec;
};
struct crn_order {
    crn::KineticOrder v;
};
struct crn_sign_graph {
    crn::InteractionGraph g;
};
struct crn_partition {
    crn::Partition p;
};

namespace {

struct LastError {
    std::string message;
    int line = 0;
    int column = 0;
};
thread_local LastError last_error;

crn_status fail(crn_status s, const std::string& msg, int line = 0, int column = 0) {
    last_error = {msg, line, column};
    return s;
}

class BadArgument : public std::exception {
public:
    explicit BadArgument(const char* what) : what_(what) {}
    const char* what() const noexcept override { return what_; }

private:
    const char* what_;
};

template <class T>
const T& deref(const T* p, const char* what) {
    if (!p) throw BadArgument(what);
    return *p;
}

const char* cstr(const char* p, const char* what) {
    if (!p) throw BadArgument(what);
    return p;
}

template <class F>
crn_status guard(F&& f) noexcept {
    try {
        last_error = {};
        f();
        return CRN_OK;
    } catch (const crn::ParseError& e) {
        return fail(CRN_ERR_PARSE, e.what(), e.line(), e.column());
    } catch (const crn::PreconditionError& e) {
        return fail(CRN_ERR_PRECONDITION, e.what());
    } catch (const crn::DimensionError& e) {
        return fail(CRN_ERR_DIMENSION, e.what());
    } catch (const crn::CapExceeded& e) {
        return fail(CRN_ERR_CAP, std::string(e.what()) + " (partial " + std::to_string(e.partial()) + ")");
    } catch (const crn::DomainError& e) {
        return fail(CRN_ERR_DOMAIN, e.what());
    } catch (const BadArgument& e) {
        return fail(CRN_ERR_ARGUMENT, std::string("invalid argument: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(CRN_ERR_INTERNAL, "out of memory");
    } catch (const std::ios_base::failure& e) {
        return fail(CRN_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(CRN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CRN_ERR_INTERNAL, "unknown error");
    }
}

std::string read_or_io_error(const char* path) {
    if (!path) throw BadArgument("path");
    try {
        return crn::read_file(path);
    } catch (const std::runtime_error& e) {
        throw std::ios_base::failure(e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(const crn::Json& report, crn_format fmt, char** out) {
    if (!out) throw BadArgument("out");
    if (fmt == CRN_FORMAT_JSON)
        *out = dup_string(report.dump(2) + "\n");
    else if (fmt == CRN_FORMAT_TEXT)
        *out = dup_string(crn::render_text(report));
    else
        throw BadArgument("format");
}

crn_verdict to_c(crn::VerdictResult r) {
    switch (r) {
        case crn::VerdictResult::Injective: return CRN_INJECTIVE;
        case crn::VerdictResult::NotInjective: return CRN_NOT_INJECTIVE;
        case crn::VerdictResult::AllSteadyStatesDegenerate: return CRN_ALL_DEGENERATE;
    }
    return CRN_NOT_INJECTIVE;
}

template <class T, class Make>
crn_status make_handle(T** out, Make&& make) {
    return guard([&] {
        if (!out) throw BadArgument("out");
        *out = nullptr;
        *out = new T{make()};
    });
}

}  // namespace

extern "C" {

const char* crn_version(void) { return "1.0.0"; }

const char* crn_status_name(crn_status s) {
    switch (s) {
        case CRN_OK: return "ok";
        case CRN_ERR_PARSE: return "parse error";
        case CRN_ERR_PRECONDITION: return "precondition violated";
        case CRN_ERR_DIMENSION: return "dimension mismatch";
        case CRN_ERR_CAP: return "cap exceeded";
        case CRN_ERR_DOMAIN: return "domain error";
        case CRN_ERR_ARGUMENT: return "invalid argument";
        case CRN_ERR_IO: return "i/o error";
        case CRN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* crn_last_error(void) { return last_error.message.c_str(); }
int crn_last_error_line(void) { return last_error.line; }
int crn_last_error_column(void) { return last_error.column; }

void crn_string_free(char* s) { std::free(s); }

crn_status crn_network_parse(const char* text, crn_network** out) {
    return make_handle(out, [&] { return crn::parse_network(cstr(text, "text")); });
}

crn_status crn_network_load(const char* path, crn_network** out) {
    return make_handle(out, [&] { return crn::parse_network(read_or_io_error(path)); });
}

void crn_network_free(crn_network* net) { delete net; }

int crn_network_species_count(const crn_network* net) { return net ? net->net.n() : -1; }
int crn_network_reaction_count(const crn_network* net) { return net ? net->net.m() : -1; }

crn_status crn_network_print(const crn_network* net, char** out) {
    return guard([&] {
        if (!out) throw BadArgument("out");
        *out = dup_string(crn::print_network(deref(net, "network").net));
    });
}

crn_status crn_influence_parse(const crn_network* net, const char* text, crn_influence** out) {
    return make_handle(out, [&] { return crn::parse_influence(cstr(text, "text"), deref(net, "network").net); });
}

crn_status crn_influence_load(const crn_network* net, const char* arg, crn_influence** out) {
    return make_handle(out, [&] {
        const auto& n = deref(net, "network").net;
        std::string a = cstr(arg, "arg");
        if (!a.empty() && a[0] == '@') return crn::parse_influence(a, n);
        return crn::parse_influence(read_or_io_error(arg), n);
    });
}

void crn_influence_free(crn_influence* i) { delete i; }

namespace {
std::optional<crn::InfluenceSpec> maybe(const crn_influence* i) {
    if (!i) return std::nullopt;
    return i->spec;
}
}  // namespace

crn_status crn_order_parse(const crn_network* net, const char* text, const crn_influence* check, crn_order** out) {
    return make_handle(out, [&] { return crn::parse_order(cstr(text, "text"), deref(net, "network").net, maybe(check)); });
}

crn_status crn_order_load(const crn_network* net, const char* path, const crn_influence* check, crn_order** out) {
    return make_handle(out, [&] { return crn::parse_order(read_or_io_error(path), deref(net, "network").net, maybe(check)); });
}

void crn_order_free(crn_order* v) { delete v; }

crn_status crn_sign_graph_parse(const char* text, crn_sign_graph** out) {
    return make_handle(out, [&] { return crn::parse_sign_matrix(cstr(text, "text")); });
}

crn_status crn_sign_graph_load(const char* path, crn_sign_graph** out) {
    return make_handle(out, [&] { return crn::parse_sign_matrix(read_or_io_error(path)); });
}

void crn_sign_graph_free(crn_sign_graph* g) { delete g; }

crn_status crn_partition_parse(const crn_sign_graph* g, const char* text, crn_partition** out) {
    return make_handle(out, [&] { return crn::parse_partition(cstr(text, "text"), deref(g, "graph").g); });
}

crn_status crn_partition_load(const crn_sign_graph* g, const char* path, crn_partition** out) {
    return make_handle(out, [&] { return crn::parse_partition(read_or_io_error(path), deref(g, "graph").g); });
}

void crn_partition_free(crn_partition* p) { delete p; }

crn_status crn_check_sns(const crn_network* net, const crn_influence* i, crn_verdict* out) {
    return guard([&] {
        if (!out) throw BadArgument("out");
        *out = to_c(crn::check_sns(deref(net, "network").net, deref(i, "influence").spec).result);
    });
}

crn_status crn_check_fixed_order(const crn_network* net, const crn_order* v, crn_verdict* out) {
    return guard([&] {
        if (!out) throw BadArgument("out");
        *out = to_c(crn::check_fixed_order(deref(net, "network").net, deref(v, "order").v).verdict.result);
    });
}

crn_status crn_check_bounded_union(const crn_network* net, const crn_influence* lower, const crn_influence* upper,
                                   crn_verdict* out) {
    return guard([&] {
        if (!out) throw BadArgument("out");
        *out = to_c(crn::check_bounded_union(deref(net, "network").net, deref(lower, "lower").spec,
                                             deref(upper, "upper").spec)
                        .result);
    });
}

crn_status crn_check_weakly_monotonic(const crn_network* net, const crn_influence* i, crn_verdict* out) {
    return guard([&] {
        if (!out) throw BadArgument("out");
        *out = to_c(crn::check_weakly_monotonic(deref(net, "network").net, deref(i, "influence").spec).result);
    });
}

crn_status crn_report_analyze(const crn_network* net, crn_class cls, const crn_influence* i, const crn_influence* i2,
                              const crn_order* v, uint64_t seed, crn_format fmt, char** out) {
    return guard([&] {
        crn::AnalyzeRequest req;
        req.seed = seed;
        switch (cls) {
            case CRN_CLASS_FIXED: req.cls = crn::AnalysisClass::Fixed; break;
            case CRN_CLASS_SNS: req.cls = crn::AnalysisClass::Sns; break;
            case CRN_CLASS_UNION: req.cls = crn::AnalysisClass::Union; break;
            case CRN_CLASS_WEAK: req.cls = crn::AnalysisClass::Weak; break;
            default: throw BadArgument("class");
        }
        // Missing required handles are caller bugs, not analysis preconditions.
        if (cls == CRN_CLASS_FIXED && !v) throw BadArgument("order is null");
        if (cls == CRN_CLASS_UNION && (!i || !i2)) throw BadArgument("union needs both influences");
        if (cls == CRN_CLASS_UNION) {
            req.lower = maybe(i);
            req.upper = maybe(i2);
        } else {
            req.influence = maybe(i);
        }
        if (v) req.order = v->v;
        emit(crn::analyze_report(deref(net, "network").net, req), fmt, out);
    });
}

crn_status crn_report_restrict(const crn_network* net, const crn_influence* i, int strict, crn_format fmt, char** out) {
    return guard([&] {
        emit(crn::restrict_report(deref(net, "network").net, deref(i, "influence").spec, strict != 0), fmt, out);
    });
}

crn_status crn_report_pmatrix(const crn_network* net, const crn_influence* i, int strict, crn_format fmt, char** out) {
    return guard([&] {
        emit(crn::pmatrix_report(deref(net, "network").net, deref(i, "influence").spec, strict != 0), fmt, out);
    });
}

crn_status crn_report_dsr(const crn_network* net, const crn_influence* i, crn_format fmt, char** out, char** dot) {
    return guard([&] {
        const auto& n = deref(net, "network").net;
        const auto& spec = deref(i, "influence").spec;
        crn::Json rep = crn::dsr_report(n, spec);
        std::string dot_text = dot ? crn::export_dot(crn::build_dsr(n, spec)) : std::string();
        emit(rep, fmt, out);
        if (dot) {
            try {
                *dot = dup_string(dot_text);
            } catch (...) {
                crn_string_free(*out);
                *out = nullptr;
                throw;
            }
        }
    });
}

crn_status crn_report_igraph(const crn_sign_graph* g, const crn_partition* p, crn_format fmt, char** out) {
    return guard([&] { emit(crn::igraph_report(deref(g, "graph").g, p ? &p->p : nullptr), fmt, out); });
}

crn_status crn_report_oracle(const crn_network* net, const crn_influence* i, int samples, uint64_t seed,
                             crn_format fmt, char** out) {
    return guard([&] {
        if (samples < 0) throw BadArgument("samples must be non-negative");
        emit(crn::oracle_report(deref(net, "network").net, deref(i, "influence").spec, samples, seed), fmt, out);
    });
}

}  // extern "C"
