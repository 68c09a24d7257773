#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grssd/evalsets.hpp"

namespace grssd {

Elem pi_brute(const Field& F, const std::vector<Elem>& S, Elem x);
Elem delta_brute(const Field& F, const std::vector<Elem>& S, Elem e);

// delta_S from the coset structure of S's family via signed inclusion-exclusion over
// the intersections A_J; reduces to the disjoint-pieces product when the A_i are disjoint
class FactoredDelta {
public:
    FactoredDelta(const Field& F, const SubsetFamily& family);
    Elem delta(Elem e) const;
    void inject_sign_error(bool on) { sign_error_ = on; }

private:
    struct Term {
        u64 mask;
        i64 weight;
        CosetUnion set;
    };
    u64 membership(Elem e) const;
    const Field* F_;
    std::vector<CosetUnion> sets_;
    std::vector<Term> terms_;
    bool sign_error_ = false;
};

// aligned coset structure with pairwise disjoint pieces in every subset
bool has_structure(const SubsetFamily& family);
Elem delta_factored(const Field& F, const EvalSet& S, Elem e);

enum class DeltaMethod { Brute, Factored };

struct CharacterOptions {
    u64 brute_sample = 32;
    u64 seed = 1;
    unsigned threads = 0;
    bool inject_sign_error = false;
};

struct CharacterReport {
    std::vector<Elem> elements;
    std::vector<Elem> delta;
    std::vector<int> eta;
    DeltaMethod method = DeltaMethod::Brute;
    bool uniform = false;
    int common = 0;  // +1, -1, or 0 when not uniform
    bool negated_uniform = false;
    u64 brute_checked = 0;
    u64 plus_count = 0, minus_count = 0;
};

CharacterReport character_report(const Field& F, const EvalSet& S, const CharacterOptions& opts = {});
void write_character_jsonl(const CharacterReport& rep, std::ostream& os);

struct Theorem1Result {
    bool hypothesis = false;
    bool conclusion = false;
    std::vector<Elem> witnesses;  // elements where the hypothesis fails (first few)
};

Theorem1Result theorem1_check(const Field& F, const SubsetFamily& family, int c);

}
