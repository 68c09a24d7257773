#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grssd/grssd.h"

namespace {

struct FieldDel {
    void operator()(grssd_field* f) const { grssd_field_destroy(f); }
};
struct CodeDel {
    void operator()(grssd_code* c) const { grssd_code_destroy(c); }
};
struct CensusDel {
    void operator()(grssd_census* c) const { grssd_census_destroy(c); }
};
struct StrDel {
    void operator()(char* s) const { grssd_string_free(s); }
};
using FieldPtr = std::unique_ptr<grssd_field, FieldDel>;
using CodePtr = std::unique_ptr<grssd_code, CodeDel>;
using CensusPtr = std::unique_ptr<grssd_census, CensusDel>;
using StrPtr = std::unique_ptr<char, StrDel>;

enum Exit { kOk = 0, kMalformed = 1, kValidation = 2, kVerification = 3, kSelfTest = 4, kInternal = 5 };

int exit_code(grssd_status s) {
    switch (s) {
        case GRSSD_OK: return kOk;
        case GRSSD_E_MALFORMED:
        case GRSSD_E_IO: return kMalformed;
        case GRSSD_E_INVALID_ARGUMENT:
        case GRSSD_E_VALIDATION: return kValidation;
        case GRSSD_E_VERIFICATION: return kVerification;
        case GRSSD_E_SELFTEST: return kSelfTest;
        case GRSSD_E_INTERNAL: return kInternal;
    }
    return kInternal;
}

int report_error(grssd_status s) {
    std::cout << "status=" << grssd_status_name(s) << "\n";
    std::cerr << "error: " << grssd_last_error() << "\n";
    return exit_code(s);
}

void print(char* s) {
    StrPtr hold(s);
    if (s) std::cout << s;
}

struct Common {
    unsigned threads = 0;
    uint64_t seed = 1;
    uint64_t samples = 0;
    uint64_t q_cap = 0;
    std::string out_dir = ".";
};

std::string resolve(const Common& c, const std::string& path) {
    std::filesystem::path p(path);
    if (!p.is_absolute() && !c.out_dir.empty() && c.out_dir != ".") p = std::filesystem::path(c.out_dir) / p;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    return p.string();
}

struct BuildArgs {
    std::string tag;
    uint64_t r = 0;
    std::map<std::string, uint64_t> values;
    std::string params;
    std::string emit = "summary";
    std::string out;
    std::string characters;
    bool allow_size_mismatch = false;
    bool mds = false;
    std::string matrix_method = "auto";
};

int cmd_field_info(const Common& c, uint64_t p, uint64_t m) {
    grssd_field* f = nullptr;
    grssd_status s = grssd_field_create_ex(p, m, c.q_cap, &f);
    if (s != GRSSD_OK) return report_error(s);
    FieldPtr field(f);
    char* info = nullptr;
    s = grssd_field_info(field.get(), &info);
    if (s != GRSSD_OK) return report_error(s);
    print(info);
    return kOk;
}

int cmd_build(const Common& c, const BuildArgs& a) {
    std::string params = a.params;
    for (const auto& [k, v] : a.values) params += (params.empty() ? "" : ",") + k + "=" + std::to_string(v);
    grssd_field* f = nullptr;
    grssd_status s = grssd_field_create_r(a.r, c.q_cap, &f);
    if (s != GRSSD_OK) return report_error(s);
    FieldPtr field(f);
    grssd_build_options o;
    grssd_build_options_init(&o);
    o.allow_size_mismatch = a.allow_size_mismatch ? 1 : 0;
    o.mds = a.mds ? 1 : -1;
    o.matrix_method = a.matrix_method == "on" ? 1 : a.matrix_method == "off" ? 0 : -1;
    o.samples = c.samples;
    o.seed = c.seed;
    o.threads = c.threads;
    grssd_code* raw = nullptr;
    s = grssd_build(field.get(), a.tag.c_str(), params.c_str(), &o, &raw);
    if (!raw) return report_error(s);
    CodePtr code(raw);
    char* summary = nullptr;
    if (grssd_code_summary(code.get(), &summary) != GRSSD_OK) return report_error(GRSSD_E_INTERNAL);
    StrPtr hold(summary);
    std::cout << summary;
    if (!a.characters.empty()) {
        grssd_status w = grssd_code_write_characters(code.get(), resolve(c, a.characters).c_str());
        if (w != GRSSD_OK) return report_error(w);
    }
    if (s != GRSSD_OK) {
        std::cout << "status=" << grssd_status_name(s) << "\n";
        std::cerr << "error: " << grssd_last_error() << "\n";
        if (a.emit == "set" && !a.out.empty()) grssd_code_write_set(code.get(), resolve(c, a.out).c_str());
        return exit_code(s);
    }
    if (!a.out.empty()) {
        const std::string path = resolve(c, a.out);
        grssd_status w = GRSSD_OK;
        if (a.emit == "set") w = grssd_code_write_set(code.get(), path.c_str());
        else if (a.emit == "matrix") w = grssd_code_write_matrix(code.get(), path.c_str());
        else {
            std::ofstream os(path);
            os << summary;
            if (!os) w = GRSSD_E_IO;
        }
        if (w != GRSSD_OK) return report_error(w);
        std::cout << "written=" << path << "\n";
    } else if (a.emit != "summary") {
        std::cerr << "error: --emit " << a.emit << " needs --out\n";
        return kValidation;
    }
    std::cout << "status=ok\n";
    return kOk;
}

int cmd_verify(const Common& c, const std::string& path, bool mds, const std::string& matrix_method) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return kMalformed;
    }
    std::string first;
    std::getline(in, first);
    char* report = nullptr;
    grssd_status s;
    if (first.rfind("q=", 0) == 0) {
        s = grssd_check_set_file(path.c_str(), &report);
    } else {
        grssd_verify_options o;
        grssd_verify_options_init(&o);
        o.mds = mds ? 1 : 0;
        o.matrix_method = matrix_method == "on" ? 1 : matrix_method == "off" ? 0 : -1;
        o.samples = c.samples;
        o.seed = c.seed;
        o.threads = c.threads;
        s = grssd_verify_matrix_file(path.c_str(), &o, &report);
    }
    print(report);
    if (s != GRSSD_OK) return report_error(s);
    std::cout << "status=ok\n";
    return kOk;
}

struct CensusArgs {
    uint64_t r = 0;
    std::vector<int> classes{1, 2, 3, 4, 5, 6, 7, 8};
    bool constructive = false;
    bool class5_table = false;
    std::string out;
    std::string summary;
    uint64_t spot = 0;
    uint64_t budget = 1'000'000'000ULL;
};

void progress(const char* m, void*) { std::cerr << "progress " << m << "\n"; }

grssd_status run_census(const Common& c, const CensusArgs& a, bool constructive, bool table, bool verbose,
                        CensusPtr& out) {
    grssd_census_options o;
    grssd_census_options_init(&o);
    o.class_mask = 0;
    for (int cls : a.classes) {
        if (cls < 1 || cls > 8) {
            std::cerr << "error: class ids must be in 1..8\n";
            return GRSSD_E_INVALID_ARGUMENT;
        }
        o.class_mask |= 1u << (cls - 1);
    }
    o.threads = c.threads;
    o.class2_constructive = constructive ? 1 : 0;
    o.class5_table_variant = table ? 1 : 0;
    o.budget = a.budget;
    if (verbose) o.progress = progress;
    grssd_census* raw = nullptr;
    grssd_status s = grssd_census_run(a.r, &o, &raw);
    out.reset(raw);
    return s;
}

std::string pct(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", ratio * 100.0);
    return buf;
}

int cmd_enumerate(const Common& c, const CensusArgs& a) {
    CensusPtr census;
    grssd_status s = run_census(c, a, a.constructive, a.class5_table, true, census);
    if (s != GRSSD_OK) return report_error(s);
    std::cout << "r=" << a.r << "\nN=" << grssd_census_count(census.get()) << "\nratio=" << pct(grssd_census_ratio(census.get()))
              << "\n";
    for (int cls : a.classes) std::cout << "class" << cls << "=" << grssd_census_class_count(census.get(), cls) << "\n";
    if (!a.out.empty()) {
        const std::string path = resolve(c, a.out);
        s = grssd_census_write_csv(census.get(), path.c_str());
        if (s != GRSSD_OK) return report_error(s);
        std::cout << "written=" << path << "\n";
    }
    if (!a.summary.empty()) {
        char* json = nullptr;
        s = grssd_census_summary_json(census.get(), &json);
        if (s != GRSSD_OK) return report_error(s);
        StrPtr hold(json);
        std::ofstream os(resolve(c, a.summary));
        os << json << "\n";
        if (!os) return report_error(GRSSD_E_IO);
    }
    if (a.spot > 0) {
        uint64_t passed = 0, total = 0;
        char* report = nullptr;
        s = grssd_census_spot_verify(census.get(), a.spot, c.seed, c.threads, &passed, &total, &report);
        print(report);
        if (s != GRSSD_OK) return report_error(s);
    }
    std::cout << "status=ok\n";
    return kOk;
}

int cmd_ratio(const Common& c, const CensusArgs& a) {
    CensusPtr stated, constructive, table;
    grssd_status s = run_census(c, a, false, false, true, stated);
    if (s != GRSSD_OK) return report_error(s);
    s = run_census(c, a, true, false, false, constructive);
    if (s != GRSSD_OK) return report_error(s);
    s = run_census(c, a, false, true, false, table);
    if (s != GRSSD_OK) return report_error(s);
    char* json = nullptr;
    s = grssd_census_summary_json(stated.get(), &json);
    if (s != GRSSD_OK) return report_error(s);
    StrPtr hold(json);
    std::cout << "r=" << a.r << "\nq=" << a.r * a.r << "\nN=" << grssd_census_count(stated.get())
              << "\nratio=" << pct(grssd_census_ratio(stated.get()))
              << "\nuniverse=even code lengths 2..q+1 from the selected classes, divided by q/2"
              << "\nconstructive_N=" << grssd_census_count(constructive.get())
              << "\nconstructive_ratio=" << pct(grssd_census_ratio(constructive.get()))
              << "\nclass5_theorem=" << grssd_census_class_count(stated.get(), 5)
              << "\nclass5_table=" << grssd_census_class_count(table.get(), 5)
              << "\nclass5_table_ratio=" << pct(grssd_census_ratio(table.get())) << "\nsummary=" << json << "\n";
    return kOk;
}

int cmd_self_test(const Common& c, bool inject) {
    char* report = nullptr;
    grssd_status s = grssd_self_test(c.seed, inject ? 1 : 0, &report);
    print(report);
    if (s != GRSSD_OK) return report_error(s);
    return kOk;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Self-dual MDS codes from (extended) GRS codes over GF(r^2)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value file with default options");
    Common common;
    app.add_option("--threads", common.threads, "worker threads (0 = all cores)")->envname("GRSSD_THREADS");
    app.add_option("--seed", common.seed, "seed for randomized checks");
    app.add_option("--samples", common.samples, "randomized codeword-pair checks");
    app.add_option("--q-cap", common.q_cap, "largest field size accepted (0 = default)");
    app.add_option("--out-dir", common.out_dir, "directory for relative output paths");

    uint64_t fp = 0, fm = 0;
    auto* info = app.add_subcommand("field-info", "print field parameters and the modulus");
    info->fallthrough();
    info->add_option("p", fp, "prime")->required();
    info->add_option("m", fm, "r = p^m")->required();

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "construct, verify and emit a self-dual code");
    build->fallthrough();
    build->add_option("construction", ba.tag, "thm2 thm3 thm4 cor1 thm5 thm6 cor2 cor3")
        ->required()
        ->check(CLI::IsMember({"thm2", "thm3", "thm4", "cor1", "thm5", "thm6", "cor2", "cor3"}));
    build->add_option("--r", ba.r, "r with q = r^2")->required();
    std::map<std::string, std::optional<uint64_t>> raw_values;
    for (const char* key : {"l", "s", "l1", "l2", "u", "v", "w", "t", "f"})
        build->add_option(std::string("--") + key, raw_values[key]);
    build->add_option("--s-prime", raw_values["s_prime"]);
    build->add_option("--params", ba.params, "parameters as k=v,k=v");
    build->add_option("--emit", ba.emit)->check(CLI::IsMember({"set", "matrix", "summary"}));
    build->add_option("--out", ba.out, "output path for the emitted artifact");
    build->add_option("--characters", ba.characters, "write the character report as JSON lines");
    build->add_flag("--allow-size-mismatch", ba.allow_size_mismatch, "continue when the set size differs from the stated n");
    build->add_flag("--mds-bruteforce", ba.mds, "check every k-minor (n <= 16)");
    build->add_option("--matrix-method", ba.matrix_method)->check(CLI::IsMember({"auto", "on", "off"}));

    std::string vpath, vmatrix = "auto";
    bool vmds = false;
    auto* verify = app.add_subcommand("verify", "re-verify a matrix file or re-derive a set file");
    verify->fallthrough();
    verify->add_option("file", vpath)->required();
    verify->add_flag("--mds-bruteforce", vmds);
    verify->add_option("--matrix-method", vmatrix)->check(CLI::IsMember({"auto", "on", "off"}));

    CensusArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "census of achievable lengths");
    enumerate->fallthrough();
    enumerate->add_option("--r", ea.r)->required();
    enumerate->add_option("--classes", ea.classes)->delimiter(',');
    enumerate->add_option("--out", ea.out, "CSV output");
    enumerate->add_option("--summary", ea.summary, "JSON summary output");
    enumerate->add_flag("--constructive-class2", ea.constructive, "class 2 restricted to verifiable instances");
    enumerate->add_flag("--class5-table", ea.class5_table, "class 5 with the table's extra condition");
    enumerate->add_option("--spot", ea.spot, "verify this many sampled lengths end to end");
    enumerate->add_option("--budget", ea.budget, "iteration cap");

    CensusArgs ra;
    auto* ratio = app.add_subcommand("ratio", "fraction of even lengths reached");
    ratio->fallthrough();
    ratio->add_option("--r", ra.r)->required();
    ratio->add_option("--classes", ra.classes)->delimiter(',');
    ratio->add_option("--budget", ra.budget, "iteration cap");

    bool inject = false;
    auto* self = app.add_subcommand("self-test", "property suites on GF(49) and GF(361)");
    self->fallthrough();
    self->add_flag("--inject-sign-error", inject, "fault fixture: negate the factored delta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }
    for (const auto& [k, v] : raw_values)
        if (v) ba.values[k] = *v;

    try {
        if (*info) return cmd_field_info(common, fp, fm);
        if (*build) return cmd_build(common, ba);
        if (*verify) return cmd_verify(common, vpath, vmds, vmatrix);
        if (*enumerate) return cmd_enumerate(common, ea);
        if (*ratio) return cmd_ratio(common, ra);
        if (*self) return cmd_self_test(common, inject);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kValidation;
}
