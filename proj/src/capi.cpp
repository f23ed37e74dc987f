#include "cycalc/cycalc.h"

#include "cycalc/abelianization.hpp"
#include "cycalc/error.hpp"
#include "cycalc/pfops.hpp"
#include "cycalc/qconn.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>

struct cycalc_series {
    cycalc::IScalarSeries value;
};

struct cycalc_operator {
    cycalc::OreOperator value;
};

namespace {

using cycalc::ErrorCode;
using cycalc::fail;
using json = nlohmann::ordered_json;

thread_local std::string last_error;

template <class F>
cycalc_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return CYCALC_OK;
    } catch (const cycalc::Error& e) {
        last_error = e.what();
        return static_cast<cycalc_status>(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return CYCALC_ERR_INTERNAL;
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorCode::invalid_argument, std::string("null ") + what);
}

std::string label_of(int number) { return "no" + std::to_string(number); }

struct Job {
    const cycalc::CatalogEntry* entry = nullptr;  // null for inline specs
    const cycalc::CatalogEntry* compute = nullptr;
    cycalc::TargetSpec spec;
    std::string pipeline;
    std::string label;
};

Job resolve(const char* target, const char* pipeline) {
    need(target, "target");
    Job j;
    std::string t = target;
    std::string p = pipeline && *pipeline ? pipeline : "auto";
    if (!t.empty() && t.front() == '{') {
        j.spec = cycalc::spec_from_json(t);
        cycalc::validate(j.spec);
        j.label = j.spec.label.empty() ? "inline" : j.spec.label;
    } else {
        j.entry = &cycalc::catalog_lookup(t);
        j.compute = j.entry->alias_of ? &cycalc::catalog_lookup(std::to_string(j.entry->alias_of)) : j.entry;
        j.spec = j.compute->spec;
        j.label = label_of(j.compute->number);
    }
    int number = j.compute ? j.compute->number : 0;
    if (p == "auto") p = number == 18 ? "pdelta" : number == 25 ? "qconn" : "abelianization";
    if (p == "abelianization") {
        if (cycalc::is_mixed(j.spec))
            fail(ErrorCode::pipeline_mismatch,
                 "mixed S*/Q target: not dualizable; use qconn or P_Δ pipeline (abelianization needs S*/O or Q/O summands)");
    } else if (p == "pdelta") {
        if (number != 18) fail(ErrorCode::pipeline_mismatch, "the P_Δ pipeline only models No. 18");
    } else if (p == "qconn") {
        if (number != 25) fail(ErrorCode::pipeline_mismatch, "the qconn pipeline ships seed data for No. 25 only");
    } else {
        fail(ErrorCode::invalid_argument, "unknown pipeline " + p);
    }
    j.pipeline = p;
    return j;
}

json resolve_json(const Job& j) {
    json out;
    out["target"] = j.entry ? label_of(j.entry->number) : j.label;
    out["compute"] = j.label;
    out["pipeline"] = j.pipeline;
    out["conjectural"] = j.pipeline == "pdelta";
    if (j.entry && j.entry->alias_of) {
        out["alias_of"] = j.entry->alias_of;
        out["note"] = j.entry->alias_note;
    }
    out["spec"] = json::parse(cycalc::spec_to_json(j.spec));
    return out;
}

json entry_json(const cycalc::CatalogEntry& e) {
    json r;
    r["number"] = e.number;
    r["grassmannian"] = {e.spec.k, e.spec.n};
    r["bundle"] = e.bundle;
    r["H3"] = e.invariants.h3.get_str();
    r["c2H"] = e.invariants.c2h.get_str();
    r["c3"] = e.invariants.c3.get_str();
    r["kuchle"] = e.kuchle;
    r["database"] = e.database;
    std::string pipe = e.alias_of ? "alias of No. " + std::to_string(e.alias_of)
                       : e.number == 18 ? "pdelta"
                       : e.number == 25 ? "qconn"
                       : cycalc::is_mixed(e.spec) ? "none"
                                                  : "abelianization";
    r["pipeline"] = pipe;
    return r;
}

}  // namespace

extern "C" {

const char* cycalc_last_error(void) { return last_error.c_str(); }
const char* cycalc_version(void) { return "1.0.0"; }
const char* cycalc_data_dir(void) { return CYCALC_DATA_DIR; }
void cycalc_free_string(char* s) { std::free(s); }

cycalc_status cycalc_catalog(int k, int n, char** json_out) {
    return guarded([&] {
        need(json_out, "output");
        json arr = json::array();
        if (k == 0 && n == 0) {
            for (const auto& e : cycalc::catalog()) arr.push_back(entry_json(e));
        } else {
            for (const auto* e : cycalc::catalog_filter(k, n)) arr.push_back(entry_json(*e));
        }
        *json_out = dup(arr.dump());
    });
}

cycalc_status cycalc_resolve(const char* target, const char* pipeline, char** json_out) {
    return guarded([&] {
        need(json_out, "output");
        *json_out = dup(resolve_json(resolve(target, pipeline)).dump());
    });
}

cycalc_status cycalc_invariants(const char* target, char** json_out) {
    if (!json_out) {
        last_error = "null output";
        return CYCALC_ERR_INVALID;
    }
    *json_out = nullptr;
    json out;
    cycalc_status st = guarded([&] {
        need(target, "target");
        std::string t = target;
        cycalc::TargetSpec spec;
        const cycalc::CatalogEntry* e = nullptr;
        if (!t.empty() && t.front() == '{') {
            spec = cycalc::spec_from_json(t);
            out["target"] = spec.label.empty() ? "inline" : spec.label;
        } else {
            e = &cycalc::catalog_lookup(t);
            spec = e->spec;
            out["target"] = label_of(e->number);
        }
        auto inv = cycalc::topological_invariants(spec);
        out["computed"] = {inv.h3.get_str(), inv.c2h.get_str(), inv.c3.get_str()};
        if (e) {
            out["printed"] = {e->invariants.h3.get_str(), e->invariants.c2h.get_str(), e->invariants.c3.get_str()};
            out["match"] = inv == e->invariants;
        }
    });
    if (st == CYCALC_OK && out.contains("match") && !out["match"].get<bool>()) {
        last_error = "invariants differ from the catalog";
        st = CYCALC_ERR_INVARIANT;
    }
    if (st != CYCALC_OK) out["error"] = last_error;
    if (!out.is_null()) *json_out = dup(out.dump());
    return st;
}

cycalc_status cycalc_series_compute(const char* target, const char* pipeline, int order, cycalc_series** out) {
    return guarded([&] {
        need(out, "output");
        *out = nullptr;
        if (order < 1) fail(ErrorCode::invalid_argument, "order must be at least 1");
        Job j = resolve(target, pipeline);
        auto s = std::make_unique<cycalc_series>();
        if (j.pipeline == "pdelta") {
            s->value = cycalc::pdelta_series(order);
        } else if (j.pipeline == "qconn") {
            auto r = cycalc::run_no25(order);
            s->value.order = order;
            s->value.I0 = r.i0;
        } else {
            s->value = cycalc::i_series(j.spec, order);
        }
        s->value.target = j.label;
        *out = s.release();
    });
}

cycalc_status cycalc_series_from_json(const char* text, cycalc_series** out) {
    return guarded([&] {
        need(text, "json");
        need(out, "output");
        *out = new cycalc_series{cycalc::series_from_json(text)};
    });
}

cycalc_status cycalc_series_to_json(const cycalc_series* s, char** json_out) {
    return guarded([&] {
        need(s, "series");
        need(json_out, "output");
        *json_out = dup(cycalc::series_to_json(s->value));
    });
}

int cycalc_series_order(const cycalc_series* s) { return s ? s->value.order : -1; }
void cycalc_series_free(cycalc_series* s) { delete s; }

cycalc_status cycalc_pf_search(const cycalc_series* s, int theta_order, int max_qdegree, cycalc_operator** out) {
    return guarded([&] {
        need(s, "series");
        need(out, "output");
        *out = nullptr;
        auto op = cycalc::annihilator_search(s->value.I0, theta_order, max_qdegree);
        if (!op)
            fail(ErrorCode::underdetermined, "no operator of theta-order " + std::to_string(theta_order) + " and q-degree <= " +
                                                 std::to_string(max_qdegree) + "; increase series length");
        *out = new cycalc_operator{cycalc::normalize(*op)};
    });
}

cycalc_status cycalc_operator_parse(const char* text, cycalc_operator** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "output");
        *out = new cycalc_operator{cycalc::parse_operator(text)};
    });
}

cycalc_status cycalc_operator_from_json(const char* text, cycalc_operator** out) {
    return guarded([&] {
        need(text, "json");
        need(out, "output");
        *out = new cycalc_operator{cycalc::operator_from_json(text)};
    });
}

cycalc_status cycalc_operator_to_json(const cycalc_operator* op, char** json_out) {
    return guarded([&] {
        need(op, "operator");
        need(json_out, "output");
        *json_out = dup(cycalc::operator_to_json(op->value));
    });
}

cycalc_status cycalc_operator_pretty(const cycalc_operator* op, char** text_out) {
    return guarded([&] {
        need(op, "operator");
        need(text_out, "output");
        *text_out = dup(cycalc::pretty(op->value));
    });
}

cycalc_status cycalc_operator_equal(const cycalc_operator* a, const cycalc_operator* b, int* equal) {
    return guarded([&] {
        need(a, "operator");
        need(b, "operator");
        need(equal, "output");
        *equal = cycalc::normalize(a->value) == cycalc::normalize(b->value);
    });
}

cycalc_status cycalc_operator_verify(const cycalc_operator* op, const cycalc_series* s, int* vanishing, int* length) {
    return guarded([&] {
        need(op, "operator");
        need(s, "series");
        need(vanishing, "output");
        need(length, "output");
        auto r = cycalc::apply_operator(op->value, s->value.I0);
        int v = 0;
        while (v < static_cast<int>(r.size()) && r[static_cast<std::size_t>(v)] == 0) ++v;
        *vanishing = v;
        *length = static_cast<int>(r.size());
    });
}

void cycalc_operator_free(cycalc_operator* op) { delete op; }

cycalc_status cycalc_golden(const char* name, cycalc_operator** out) {
    return guarded([&] {
        need(name, "name");
        need(out, "output");
        *out = new cycalc_operator{cycalc::golden_operator(name)};
    });
}

cycalc_status cycalc_qconn_report(int order, char** json_out) {
    return guarded([&] {
        need(json_out, "output");
        if (order < 1) fail(ErrorCode::invalid_argument, "order must be at least 1");
        auto r = cycalc::run_no25(order);
        json out;
        out["target"] = "no25";
        out["order"] = order;
        out["connection_matrix"] = json::parse(cycalc::matrix_to_json(r.matrix));
        out["qde"] = json::parse(cycalc::operator_to_json(r.qde));
        out["qde_pretty"] = cycalc::pretty(r.qde);
        json i0 = json::array();
        for (const auto& x : r.i0) i0.push_back(cycalc::to_string(x));
        out["I0"] = i0;
        if (r.picard_fuchs) {
            out["operator"] = json::parse(cycalc::operator_to_json(*r.picard_fuchs));
            out["operator_pretty"] = cycalc::pretty(*r.picard_fuchs);
            auto f = cycalc::check_factorization(r.qde, cycalc::no25_lines(), *r.picard_fuchs,
                                                 cycalc::golden_operator("no25_r").coeff(0),
                                                 cycalc::golden_operator("no25_r4"));
            out["factorization"] = {{"right_divisible", f.divisible}, {"printed_identity", f.identity}};
        } else {
            out["operator"] = nullptr;
        }
        *json_out = dup(out.dump());
    });
}

}  // extern "C"
