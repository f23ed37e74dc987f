#include "cycalc/cycalc.h"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Failure {
    cycalc_status status;
    std::string message;
};

void check(cycalc_status st) {
    if (st != CYCALC_OK) throw Failure{st, cycalc_last_error()};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    cycalc_free_string(s);
    return out;
}

struct SeriesDel {
    void operator()(cycalc_series* s) const { cycalc_series_free(s); }
};
struct OpDel {
    void operator()(cycalc_operator* o) const { cycalc_operator_free(o); }
};
using Series = std::unique_ptr<cycalc_series, SeriesDel>;
using Operator = std::unique_ptr<cycalc_operator, OpDel>;

int exit_code(cycalc_status st) {
    switch (st) {
        case CYCALC_OK: return 0;
        case CYCALC_ERR_PIPELINE: return 2;
        case CYCALC_ERR_UNDERDETERMINED: return 3;
        case CYCALC_ERR_INVARIANT: return 4;
        default: return 1;
    }
}

std::string sha256(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

void write_atomic(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        out << text;
        if (!out) throw Failure{CYCALC_ERR_INTERNAL, "cannot write " + tmp.string()};
    }
    fs::rename(tmp, path);
}

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string target;
    std::string pipeline = "auto";
    int order = 0;
    int max_qdegree = 12;
    std::string cache_dir;
    std::string out;
    bool golden = false;
    std::string grassmann;
};

std::optional<fs::path> cache_root(const Options& o) {
    if (const char* env = std::getenv("CYCALC_CACHE"); env && *env) return fs::path(env);
    if (!o.cache_dir.empty()) return fs::path(o.cache_dir);
    return std::nullopt;
}

json resolve(const Options& o) {
    char* s = nullptr;
    check(cycalc_resolve(o.target.c_str(), o.pipeline.c_str(), &s));
    return json::parse(take(s));
}

// Series for the resolved job, through the content-addressed cache when one is configured.
Series series_for(const Options& o, const json& job, int order) {
    json key = {{"compute", job["compute"]}, {"pipeline", job["pipeline"]}, {"spec", job["spec"]},
                {"order", order}, {"version", cycalc_version()}};
    std::optional<fs::path> file;
    if (auto root = cache_root(o)) file = *root / (sha256(key.dump()) + ".json");
    if (file) {
        if (auto text = read_file(*file)) {
            cycalc_series* s = nullptr;
            if (cycalc_series_from_json(text->c_str(), &s) == CYCALC_OK) return Series(s);
        }
    }
    cycalc_series* s = nullptr;
    check(cycalc_series_compute(o.target.c_str(), job["pipeline"].get<std::string>().c_str(), order, &s));
    Series out(s);
    if (file) {
        char* text = nullptr;
        check(cycalc_series_to_json(out.get(), &text));
        write_atomic(*file, take(text));
    }
    return out;
}

void note_alias(const json& job) {
    if (job.contains("alias_of"))
        std::cerr << "note: " << job["target"].get<std::string>() << " uses the No. " << job["alias_of"].get<int>()
                  << " computation (" << job["note"].get<std::string>() << ")\n";
    if (job["conjectural"].get<bool>())
        std::cerr << "note: the P_Δ I-function relies on a conjectural abelian/nonabelian correspondence\n";
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text << "\n";
    } else {
        write_atomic(o.out, text + "\n");
    }
}

int cmd_catalog(const Options& o) {
    int k = 0, n = 0;
    bool valid = true;
    if (!o.grassmann.empty()) {
        valid = std::sscanf(o.grassmann.c_str(), "%d,%d", &k, &n) == 2 && k > 0 && n > 0;
    }
    json rows = json::array();
    if (valid) {
        char* s = nullptr;
        check(cycalc_catalog(k, n, &s));
        rows = json::parse(take(s));
    }
    if (!o.out.empty()) {
        write_atomic(o.out, rows.dump(1) + "\n");
        return 0;
    }
    std::printf("%-4s %-8s %-36s %6s %6s %6s  %s\n", "No.", "G(k,n)", "bundle", "H^3", "c2.H", "c3", "pipeline");
    for (const auto& r : rows) {
        std::string g = "G(" + std::to_string(r["grassmannian"][0].get<int>()) + "," +
                        std::to_string(r["grassmannian"][1].get<int>()) + ")";
        std::printf("%-4d %-8s %-36s %6s %6s %6s  %s\n", r["number"].get<int>(), g.c_str(),
                    r["bundle"].get<std::string>().c_str(), r["H3"].get<std::string>().c_str(),
                    r["c2H"].get<std::string>().c_str(), r["c3"].get<std::string>().c_str(),
                    r["pipeline"].get<std::string>().c_str());
    }
    std::printf("%zu rows\n", rows.size());
    return 0;
}

int cmd_ifun(const Options& o) {
    json job = resolve(o);
    note_alias(job);
    Series s = series_for(o, job, o.order > 0 ? o.order : 10);
    char* text = nullptr;
    check(cycalc_series_to_json(s.get(), &text));
    emit(o, take(text));
    return 0;
}

std::string golden_name(const json& job) { return job["compute"].get<std::string>(); }

int cmd_pf(const Options& o) {
    json job = resolve(o);
    note_alias(job);
    const int r = 4;
    Series s;
    Operator op;
    if (o.order > 0) {
        s = series_for(o, job, o.order);
        cycalc_operator* p = nullptr;
        check(cycalc_pf_search(s.get(), r, o.max_qdegree, &p));
        op.reset(p);
    } else {
        // Grow the series until an operator appears; N = 5 (D + 1) + 11 leaves the full guard band at q-degree D.
        std::vector<int> caps;
        for (int d : {4, 6, 9})
            if (d < o.max_qdegree) caps.push_back(d);
        caps.push_back(o.max_qdegree);
        for (int dcap : caps) {
            s = series_for(o, job, (r + 1) * (dcap + 1) + 11);
            cycalc_operator* p = nullptr;
            cycalc_status st = cycalc_pf_search(s.get(), r, dcap, &p);
            if (st == CYCALC_OK) {
                op.reset(p);
                break;
            }
            if (st != CYCALC_ERR_UNDERDETERMINED) check(st);
        }
        if (!op) throw Failure{CYCALC_ERR_UNDERDETERMINED, "no operator found; increase series length"};
    }

    char* pretty = nullptr;
    check(cycalc_operator_pretty(op.get(), &pretty));
    std::cout << "operator: " << take(pretty) << "\n";
    int vanishing = 0, length = 0;
    check(cycalc_operator_verify(op.get(), s.get(), &vanishing, &length));
    std::cout << "verify: L(I0) vanishes on all " << vanishing << " of " << length << " computed coefficients\n";
    if (vanishing != length) throw Failure{CYCALC_ERR_INTERNAL, "operator does not annihilate the series"};

    int status = 0;
    if (job["pipeline"] == "qconn") {
        char* rep = nullptr;
        check(cycalc_qconn_report(cycalc_series_order(s.get()), &rep));
        json report = json::parse(take(rep));
        std::cout << "qde: " << report["qde_pretty"].get<std::string>() << "\n";
        if (report.contains("factorization")) {
            std::cout << "factorization: S_4 right-divides P: " << (report["factorization"]["right_divisible"].get<bool>() ? "yes" : "no")
                      << "; P = theta^2 (theta-1)^2 (1/r) R_4 S_4: "
                      << (report["factorization"]["printed_identity"].get<bool>() ? "yes" : "no") << "\n";
        }
    }
    if (o.golden) {
        cycalc_operator* g = nullptr;
        check(cycalc_golden(golden_name(job).c_str(), &g));
        Operator golden(g);
        int equal = 0;
        check(cycalc_operator_equal(op.get(), golden.get(), &equal));
        std::cout << "golden " << golden_name(job) << ": " << (equal ? "match" : "MISMATCH") << "\n";
        if (!equal) status = 4;
    }
    if (!o.out.empty()) {
        char* text = nullptr;
        check(cycalc_operator_to_json(op.get(), &text));
        write_atomic(o.out, take(text) + "\n");
    }
    return status;
}

int cmd_qconn(const Options& o) {
    char* rep = nullptr;
    check(cycalc_qconn_report(o.order > 0 ? o.order : 60, &rep));
    std::string text = take(rep);
    emit(o, json::parse(text).dump(1));
    return 0;
}

int cmd_invariants(const Options& o) {
    std::vector<std::string> targets;
    if (!o.target.empty()) {
        targets.push_back(o.target);
    } else {
        char* s = nullptr;
        check(cycalc_catalog(0, 0, &s));
        for (const auto& r : json::parse(take(s))) targets.push_back("no" + std::to_string(r["number"].get<int>()));
    }
    int mismatches = 0;
    cycalc_status worst = CYCALC_OK;
    std::printf("%-10s %-24s %-24s %s\n", "target", "computed (H3,c2H,c3)", "printed", "status");
    for (const auto& t : targets) {
        char* s = nullptr;
        cycalc_status st = cycalc_invariants(t.c_str(), &s);
        std::string text = take(s);
        if (text.empty()) check(st);
        json r = json::parse(text);
        auto triple = [&](const char* key) {
            if (!r.contains(key)) return std::string("-");
            return r[key][0].get<std::string>() + "," + r[key][1].get<std::string>() + "," + r[key][2].get<std::string>();
        };
        std::string status = st == CYCALC_OK ? "ok" : r.value("error", std::string("error"));
        std::printf("%-10s %-24s %-24s %s\n", r.value("target", t).c_str(), triple("computed").c_str(), triple("printed").c_str(),
                    status.c_str());
        if (st != CYCALC_OK) {
            ++mismatches;
            if (worst == CYCALC_OK || st == CYCALC_ERR_INVARIANT) worst = st;
        }
    }
    std::printf("%d mismatches\n", mismatches);
    return exit_code(worst);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted I-functions and Picard-Fuchs operators of Calabi-Yau 3-folds in Grassmannians"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--target", o.target, "catalog label (no7, 7) or inline spec JSON");
        c->add_option("--pipeline", o.pipeline, "auto | abelianization | pdelta | qconn");
        c->add_option("--order", o.order, "series order N");
        c->add_option("--cache-dir", o.cache_dir, "series cache directory (CYCALC_CACHE overrides)");
        c->add_option("--out", o.out, "output file");
    };

    auto* catalog = app.add_subcommand("catalog", "list the target catalog");
    catalog->add_option("--grassmann", o.grassmann, "filter by k,n");
    catalog->add_option("--out", o.out, "write the rows as JSON");

    auto* ifun = app.add_subcommand("ifun", "compute the scalar I-series");
    add_common(ifun);
    ifun->get_option("--target")->required();

    auto* pf = app.add_subcommand("pf", "find the Picard-Fuchs operator");
    add_common(pf);
    pf->get_option("--target")->required();
    pf->add_option("--max-qdegree", o.max_qdegree, "largest q-degree searched");
    pf->add_flag("--golden", o.golden, "compare with the shipped golden operator");

    auto* qconn = app.add_subcommand("qconn", "quantum connection pipeline for No. 25");
    qconn->add_option("--order", o.order, "series order N");
    qconn->add_option("--out", o.out, "output file");

    auto* inv = app.add_subcommand("invariants", "check (H^3, c2.H, c3) against the catalog");
    inv->add_option("--target", o.target, "one catalog label or inline spec JSON; all rows by default");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*catalog) return cmd_catalog(o);
        if (*ifun) return cmd_ifun(o);
        if (*pf) return cmd_pf(o);
        if (*qconn) return cmd_qconn(o);
        if (*inv) return cmd_invariants(o);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
