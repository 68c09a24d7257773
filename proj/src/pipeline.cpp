#include "grssd/pipeline.hpp"

#include <chrono>

#include "grssd/error.hpp"

namespace grssd {

PipelineResult run_construction(const Field& F, const ConstructionParams& p, const PipelineOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    PipelineResult res;
    res.params = p;
    auto finish = [&](PipelineResult& r) -> PipelineResult& {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };
    auto rep = validate(F.r(), p);
    if (!rep.ok())
        fail(ErrorKind::Validation, std::string(family_tag(p.family)) + " hypotheses fail: " + rep.failures());
    res.shape = stated_shape(F.r(), p);
    try {
        res.set = build(F, p, opts.build);
        res.notes = res.set.notes;
        if (res.set.elements.empty()) fail(ErrorKind::Verification, "empty evaluation set");
        const bool extended = res.set.elements.size() % 2 == 1;
        const u64 length = res.set.elements.size() + (extended ? 1 : 0);
        if (!opts.build.allow_size_mismatch &&
            (extended != res.shape.extended || static_cast<i64>(length) != res.shape.code_length))
            fail(ErrorKind::Internal, "code shape disagrees with the stated length");
        res.chars = character_report(F, res.set, opts.chars);
        res.scaling = solve_scaling(F, res.set, *res.chars, extended);
        res.code = code_from_scaling(res.set, *res.scaling, extended);
        check_code_spec(*res.code);
        VerifyOptions vo = opts.verify;
        if (res.code->n <= kMdsBruteMax) vo.mds = true;
        res.verify = verify_self_dual(F, *res.code, vo);
        res.ok = res.verify->passed();
        if (!res.ok) res.failure = "verification failed";
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Validation) throw;
        res.ok = false;
        res.failure = e.what();
    }
    return finish(res);
}

}
