#include "grssd/grssd.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "grssd/census.hpp"
#include "grssd/error.hpp"
#include "grssd/pipeline.hpp"
#include "grssd/selftest.hpp"

struct grssd_field {
    std::shared_ptr<const grssd::Field> F;
};

struct grssd_code {
    std::shared_ptr<const grssd::Field> F;
    grssd::PipelineResult result;
};

struct grssd_census {
    grssd::LengthCensus census;
};

namespace {

thread_local std::string last_error;

grssd_status status_of(grssd::ErrorKind k) {
    switch (k) {
        case grssd::ErrorKind::InvalidArgument: return GRSSD_E_INVALID_ARGUMENT;
        case grssd::ErrorKind::Validation: return GRSSD_E_VALIDATION;
        case grssd::ErrorKind::Verification: return GRSSD_E_VERIFICATION;
        case grssd::ErrorKind::Malformed: return GRSSD_E_MALFORMED;
        case grssd::ErrorKind::Io: return GRSSD_E_IO;
        case grssd::ErrorKind::Internal: return GRSSD_E_INTERNAL;
    }
    return GRSSD_E_INTERNAL;
}

template <class Fn>
grssd_status guard(Fn&& fn) {
    try {
        last_error.clear();
        return fn();
    } catch (const grssd::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return GRSSD_E_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return GRSSD_E_INTERNAL;
    }
}

grssd_status fail_with(grssd_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

void write_verify(std::ostream& os, const grssd::VerifyReport& v) {
    os << "power_sums=" << pass_fail(v.power_sum_ok) << "\n";
    os << "matrix_method=" << (v.matrix_ok ? pass_fail(*v.matrix_ok) : "skipped") << "\n";
    os << "randomized=" << (v.randomized_ok ? pass_fail(*v.randomized_ok) : "skipped") << "\n";
    os << "rank=" << pass_fail(v.rank_ok) << "\n";
    os << "rank_method=" << v.rank_method << "\n";
    os << "mds=" << grssd::mds_name(v.mds) << "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) grssd::fail(grssd::ErrorKind::Io, "cannot open " + path + " for writing");
    out << text;
    if (!out) grssd::fail(grssd::ErrorKind::Io, "write to " + path + " failed");
}

}

extern "C" {

const char* grssd_last_error(void) { return last_error.c_str(); }

const char* grssd_status_name(grssd_status s) {
    switch (s) {
        case GRSSD_OK: return "ok";
        case GRSSD_E_INVALID_ARGUMENT: return "invalid-argument";
        case GRSSD_E_VALIDATION: return "validation";
        case GRSSD_E_VERIFICATION: return "verification";
        case GRSSD_E_MALFORMED: return "malformed";
        case GRSSD_E_IO: return "io";
        case GRSSD_E_SELFTEST: return "self-test";
        case GRSSD_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* grssd_version(void) { return "1.0.0"; }

void grssd_string_free(char* s) { std::free(s); }

grssd_status grssd_field_create(uint64_t p, uint64_t m, grssd_field** out) { return grssd_field_create_ex(p, m, 0, out); }

grssd_status grssd_field_create_ex(uint64_t p, uint64_t m, uint64_t q_cap, grssd_field** out) {
    if (!out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guard([&] {
        auto F = std::make_shared<const grssd::Field>(grssd::FieldParams{p, m}, q_cap == 0 ? grssd::Field::kQCap : q_cap);
        *out = new grssd_field{std::move(F)};
        return GRSSD_OK;
    });
}

grssd_status grssd_field_create_r(uint64_t r, uint64_t q_cap, grssd_field** out) {
    if (!out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    auto pm = grssd::prime_power(r);
    if (!pm) return fail_with(GRSSD_E_INVALID_ARGUMENT, "r=" + std::to_string(r) + " is not a prime power");
    return grssd_field_create_ex(pm->first, pm->second, q_cap, out);
}

void grssd_field_destroy(grssd_field* f) { delete f; }

uint64_t grssd_field_q(const grssd_field* f) { return f ? f->F->q() : 0; }
uint64_t grssd_field_r(const grssd_field* f) { return f ? f->F->r() : 0; }

grssd_status grssd_field_info(const grssd_field* f, char** out) {
    if (!f || !out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        const auto& F = *f->F;
        std::ostringstream os;
        os << "p=" << F.p() << "\nm=" << F.m() << "\nr=" << F.r() << "\nq=" << F.q() << "\nmodulus=" << F.modulus_string()
           << "\ngenerator=x\ngenerator_order=" << F.order() << "\norder_factors=";
        bool first = true, certified = true;
        for (auto pf : grssd::prime_factors(F.order())) {
            os << (first ? "" : ",") << pf;
            first = false;
            certified = certified && F.exp(F.order() / pf) != 1;
        }
        os << "\nprimitive_certified=" << (certified ? "yes" : "no") << "\neta_minus_one=" << F.eta(F.minus_one())
           << "\n";
        *out = dup_string(os.str());
        return GRSSD_OK;
    });
}

void grssd_build_options_init(grssd_build_options* o) {
    if (!o) return;
    o->allow_size_mismatch = 0;
    o->matrix_method = -1;
    o->mds = -1;
    o->samples = 0;
    o->seed = 1;
    o->threads = 0;
}

grssd_status grssd_build(const grssd_field* f, const char* tag, const char* params, const grssd_build_options* o,
                         grssd_code** out) {
    if (!f || !tag || !params || !out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    grssd_build_options defaults;
    grssd_build_options_init(&defaults);
    if (!o) o = &defaults;
    return guard([&] {
        auto fam = grssd::family_from_tag(tag);
        if (!fam) grssd::fail(grssd::ErrorKind::InvalidArgument, std::string("unknown construction ") + tag);
        auto p = grssd::ConstructionParams::parse(*fam, params);
        grssd::PipelineOptions po;
        po.build.allow_size_mismatch = o->allow_size_mismatch != 0;
        po.chars.seed = o->seed;
        po.chars.threads = o->threads;
        if (o->matrix_method >= 0) po.verify.matrix_method = o->matrix_method != 0;
        po.verify.mds = o->mds > 0;
        po.verify.samples = o->samples;
        po.verify.seed = o->seed;
        po.verify.threads = o->threads;
        auto code = std::make_unique<grssd_code>();
        code->F = f->F;
        code->result = grssd::run_construction(*f->F, p, po);
        if (o->mds == 0 && code->result.verify) code->result.verify->mds = grssd::MdsStatus::Skipped;
        const bool ok = code->result.ok;
        if (!ok) last_error = code->result.failure;
        *out = code.release();
        return ok ? GRSSD_OK : GRSSD_E_VERIFICATION;
    });
}

void grssd_code_destroy(grssd_code* c) { delete c; }

int grssd_code_verified(const grssd_code* c) { return c && c->result.ok ? 1 : 0; }

uint64_t grssd_code_length(const grssd_code* c) { return c && c->result.code ? c->result.code->n : 0; }

uint64_t grssd_code_set_size(const grssd_code* c) { return c ? c->result.set.elements.size() : 0; }

grssd_status grssd_code_summary(const grssd_code* c, char** out) {
    if (!c || !out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        const auto& r = c->result;
        const auto& F = *c->F;
        std::ostringstream os;
        os << "construction=" << grssd::family_tag(r.params.family) << "\nparams=" << r.params.to_string()
           << "\nr=" << F.r() << "\nq=" << F.q() << "\nmodulus=" << F.modulus_string() << "\nn=" << r.shape.n
           << "\nstated_length=" << r.shape.code_length << "\nset_size=" << r.set.elements.size();
        if (r.code) {
            os << "\ncode_length=" << r.code->n << "\nk=" << r.code->k << "\nextended=" << (r.code->extended ? 1 : 0);
        }
        if (r.chars) {
            os << "\ndelta_method=" << (r.chars->method == grssd::DeltaMethod::Factored ? "factored" : "brute")
               << "\nbrute_checked=" << r.chars->brute_checked << "\neta_uniform=" << (r.chars->uniform ? 1 : 0)
               << "\neta_common=" << r.chars->common << "\neta_plus=" << r.chars->plus_count
               << "\neta_minus=" << r.chars->minus_count;
        }
        if (r.scaling) os << "\nscaling_constant=" << r.scaling->constant_name;
        os << "\n";
        if (r.verify) write_verify(os, *r.verify);
        os << "verified=" << (r.ok ? 1 : 0) << "\n";
        for (const auto& note : r.notes) os << "note=" << note << "\n";
        if (!r.failure.empty()) os << "failure=" << r.failure << "\n";
        os << "seconds=" << r.seconds << "\n";
        *out = dup_string(os.str());
        return GRSSD_OK;
    });
}

grssd_status grssd_code_write_set(const grssd_code* c, const char* path) {
    if (!c || !path) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        std::ostringstream os;
        grssd::write_evalset(*c->F, c->result.set, os);
        write_file(path, os.str());
        return GRSSD_OK;
    });
}

grssd_status grssd_code_write_matrix(const grssd_code* c, const char* path) {
    if (!c || !path) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    if (!c->result.code) return fail_with(GRSSD_E_VERIFICATION, "no code was produced");
    return guard([&] {
        const auto& spec = *c->result.code;
        grssd::write_matrix(*c->F, spec, grssd::generator_matrix(*c->F, spec), path);
        return GRSSD_OK;
    });
}

grssd_status grssd_code_write_characters(const grssd_code* c, const char* path) {
    if (!c || !path) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    if (!c->result.chars) return fail_with(GRSSD_E_VERIFICATION, "no character report was produced");
    return guard([&] {
        std::ostringstream os;
        grssd::write_character_jsonl(*c->result.chars, os);
        write_file(path, os.str());
        return GRSSD_OK;
    });
}

void grssd_verify_options_init(grssd_verify_options* o) {
    if (!o) return;
    o->matrix_method = -1;
    o->mds = 0;
    o->samples = 0;
    o->seed = 1;
    o->threads = 0;
}

grssd_status grssd_verify_matrix_file(const char* path, const grssd_verify_options* o, char** report) {
    if (!path) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null path");
    if (report) *report = nullptr;
    grssd_verify_options defaults;
    grssd_verify_options_init(&defaults);
    if (!o) o = &defaults;
    return guard([&] {
        auto mf = grssd::read_matrix(path);
        grssd::Field F(mf.params);
        if (F.modulus() != mf.modulus) grssd::fail(grssd::ErrorKind::Malformed, "modulus differs from the canonical one");
        grssd::check_code_spec(mf.spec);
        grssd::VerifyOptions vo;
        if (o->matrix_method >= 0) vo.matrix_method = o->matrix_method != 0;
        vo.mds = o->mds != 0;
        vo.samples = o->samples;
        vo.seed = o->seed;
        vo.threads = o->threads;
        auto v = grssd::verify_self_dual(F, mf.spec, vo, &mf.G);
        const bool consistent = grssd::generator_matrix(F, mf.spec) == mf.G;
        const bool ok = v.passed() && consistent;
        std::ostringstream os;
        os << "q=" << F.q() << "\nn=" << mf.spec.n << "\nk=" << mf.spec.k << "\nextended=" << (mf.spec.extended ? 1 : 0)
           << "\nchecksum=pass\nmatrix_consistent=" << pass_fail(consistent) << "\n";
        write_verify(os, v);
        os << "verified=" << (ok ? 1 : 0) << "\n";
        if (report) *report = dup_string(os.str());
        if (!ok) last_error = "verification failed";
        return ok ? GRSSD_OK : GRSSD_E_VERIFICATION;
    });
}

grssd_status grssd_check_set_file(const char* path, char** report) {
    if (!path) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null path");
    if (report) *report = nullptr;
    return guard([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) grssd::fail(grssd::ErrorKind::Io, std::string("cannot open ") + path);
        std::string header;
        std::getline(in, header);
        uint64_t q = 0;
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok)
            if (tok.rfind("q=", 0) == 0) q = std::strtoull(tok.c_str() + 2, nullptr, 10);
        uint64_t r = 1;
        while ((r + 1) * (r + 1) <= q) ++r;
        if (q == 0 || r * r != q) grssd::fail(grssd::ErrorKind::Malformed, "set file header lacks q=r^2");
        auto pm = grssd::prime_power(r);
        if (!pm) grssd::fail(grssd::ErrorKind::Malformed, "q is not an even prime power");
        grssd::Field F(pm->first, pm->second);
        in.clear();
        in.seekg(0);
        auto S = grssd::read_evalset(F, in);
        std::ostringstream os;
        os << "q=" << q << "\nconstruction=" << S.tag() << "\nset_size=" << S.elements.size() << "\nrederived=pass\n";
        if (report) *report = dup_string(os.str());
        return GRSSD_OK;
    });
}

void grssd_census_options_init(grssd_census_options* o) {
    if (!o) return;
    o->class_mask = 0xff;
    o->threads = 0;
    o->class2_constructive = 0;
    o->class5_table_variant = 0;
    o->budget = 1'000'000'000ULL;
    o->progress = nullptr;
    o->user = nullptr;
}

grssd_status grssd_census_run(uint64_t r, const grssd_census_options* o, grssd_census** out) {
    if (!out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    grssd_census_options defaults;
    grssd_census_options_init(&defaults);
    if (!o) o = &defaults;
    return guard([&] {
        grssd::CensusOptions co;
        co.classes.clear();
        for (int c = 1; c <= 8; ++c)
            if (o->class_mask >> (c - 1) & 1) co.classes.push_back(c);
        if (co.classes.empty()) grssd::fail(grssd::ErrorKind::InvalidArgument, "no classes selected");
        co.threads = o->threads;
        co.class2_as_stated = o->class2_constructive == 0;
        co.class5_table_variant = o->class5_table_variant != 0;
        co.budget = o->budget;
        if (o->progress) {
            auto fn = o->progress;
            void* user = o->user;
            co.progress = [fn, user](const std::string& m) { fn(m.c_str(), user); };
        }
        *out = new grssd_census{grssd::run_census(r, co)};
        return GRSSD_OK;
    });
}

grssd_status grssd_census_import(const char* path, grssd_census** out) {
    if (!path || !out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guard([&] {
        *out = new grssd_census{grssd::import_census(path)};
        return GRSSD_OK;
    });
}

void grssd_census_destroy(grssd_census* c) { delete c; }

uint64_t grssd_census_count(const grssd_census* c) { return c ? c->census.count() : 0; }

double grssd_census_ratio(const grssd_census* c) { return c ? c->census.ratio() : 0.0; }

uint64_t grssd_census_class_count(const grssd_census* c, int class_id) {
    if (!c || class_id < 1 || class_id > 8) return 0;
    return c->census.per_class()[class_id - 1];
}

int grssd_census_has_length(const grssd_census* c, uint64_t length) {
    return c && length < c->census.mask.size() && c->census.mask[length] != 0 ? 1 : 0;
}

grssd_status grssd_census_csv(const grssd_census* c, char** out) {
    if (!c || !out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = dup_string(grssd::census_csv(c->census));
        return GRSSD_OK;
    });
}

grssd_status grssd_census_write_csv(const grssd_census* c, const char* path) {
    if (!c || !path) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        grssd::export_census(c->census, path);
        return GRSSD_OK;
    });
}

grssd_status grssd_census_summary_json(const grssd_census* c, char** out) {
    if (!c || !out) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = dup_string(grssd::census_summary_json(c->census));
        return GRSSD_OK;
    });
}

grssd_status grssd_census_spot_verify(const grssd_census* c, uint64_t samples, uint64_t seed, uint32_t threads,
                                      uint64_t* passed, uint64_t* total, char** report) {
    if (!c) return fail_with(GRSSD_E_INVALID_ARGUMENT, "null census");
    if (report) *report = nullptr;
    return guard([&] {
        auto pm = grssd::prime_power(c->census.r);
        if (!pm) grssd::fail(grssd::ErrorKind::InvalidArgument, "census r is not a prime power");
        grssd::Field F(pm->first, pm->second);
        auto res = grssd::spot_verify(F, c->census, samples, seed, threads);
        uint64_t ok = 0;
        std::ostringstream os;
        for (const auto& s : res) {
            ok += s.ok ? 1 : 0;
            os << "length=" << s.length << " result=" << pass_fail(s.ok) << " witness=" << s.witness;
            if (!s.ok) os << " detail=" << s.detail;
            os << "\n";
        }
        os << "passed=" << ok << "\ntotal=" << res.size() << "\n";
        if (passed) *passed = ok;
        if (total) *total = res.size();
        if (report) *report = dup_string(os.str());
        if (ok != res.size()) last_error = std::to_string(res.size() - ok) + " sampled lengths failed verification";
        return ok == res.size() ? GRSSD_OK : GRSSD_E_VERIFICATION;
    });
}

grssd_status grssd_self_test(uint64_t seed, int inject_sign_error, char** report) {
    if (report) *report = nullptr;
    return guard([&] {
        grssd::SelfTestOptions so;
        so.seed = seed;
        so.inject_sign_error = inject_sign_error != 0;
        auto results = grssd::run_self_test(so);
        std::ostringstream os;
        std::string first_failure;
        for (const auto& r : results) {
            os << "property=\"" << r.name << "\" result="
               << (r.informational ? (r.ok ? "info-pass" : "info-fail") : pass_fail(r.ok)) << " checked=" << r.checked
               << " failed=" << r.failed;
            if (!r.detail.empty()) os << " detail=\"" << r.detail << "\"";
            os << "\n";
            if (!r.ok && !r.informational && first_failure.empty()) first_failure = r.name;
        }
        os << "self_test=" << (first_failure.empty() ? "pass" : "fail") << "\n";
        if (!first_failure.empty()) os << "first_failure=\"" << first_failure << "\"\n";
        if (report) *report = dup_string(os.str());
        if (!first_failure.empty()) {
            last_error = "property failed: " + first_failure;
            return GRSSD_E_SELFTEST;
        }
        return GRSSD_OK;
    });
}

}
