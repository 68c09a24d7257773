#pragma once

#include <string>
#include <vector>

#include "grssd/chartool.hpp"

namespace grssd {

struct PropertyResult {
    std::string name;
    bool ok = true;
    u64 checked = 0;
    u64 failed = 0;
    std::string detail;  // first counterexample
    bool informational = false;
};

enum class Lemma8Mode { AsStated, Corrected };

PropertyResult check_lemma1(const Field& F, u64 random_families, u64 seed, bool inject_sign_error = false);
PropertyResult check_lemma7(const Field& F);
PropertyResult check_lemma4(u64 families, u64 seed);
PropertyResult check_lemma5(const Field& F);
PropertyResult check_lemma6(const Field& F);
PropertyResult check_lemma8(const Field& F, Lemma8Mode mode);
PropertyResult check_lemma9(const Field& F, u64 s, u64 t);
PropertyResult check_lemma10(const Field& F, u64 triples, u64 seed);
PropertyResult check_theorem1_built(const Field& F);
PropertyResult check_theorem1_random(const Field& F, u64 wanted, u64 seed);
PropertyResult check_eta_minus_one(const std::vector<FieldParams>& fields);

struct SelfTestOptions {
    std::vector<FieldParams> fields{{7, 1}, {19, 1}};
    u64 seed = 1;
    bool inject_sign_error = false;
};

// corrected Lemma 8 gates; the as-stated form is reported as informational
std::vector<PropertyResult> run_self_test(const SelfTestOptions& opts);

}
