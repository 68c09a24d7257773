#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grssd/cosets.hpp"
#include "grssd/gf.hpp"

namespace grssd {

enum class Family { Thm2, Thm3, Thm4, Cor1, Thm5, Thm6, Cor2, Cor3 };

const char* family_tag(Family f);
std::optional<Family> family_from_tag(const std::string& tag);
int class_id(Family f);
Family family_of_class(int id);

struct ConstructionParams {
    Family family = Family::Thm2;
    u64 l = 0, s = 0, l1 = 0, l2 = 0;
    u64 u = 0, v = 0, w = 0, s_prime = 0, t = 0, f = 0;

    // "l=18,s=0,l1=8,l2=6"; sep lets csv use ';'
    std::string to_string(char sep = ',') const;
    static ConstructionParams parse(Family fam, const std::string& kv);
    bool operator==(const ConstructionParams& o) const;
};

struct Hypothesis {
    std::string name;
    bool holds = false;
};

struct ValidationReport {
    std::vector<Hypothesis> items;
    bool ok() const;
    std::string failures() const;
};

// closed forms from the theorem statements
struct Shape {
    i64 n = 0;            // the theorem's n
    i64 set_size = 0;     // |S| the proof claims
    i64 code_length = 0;  // stated length
    bool extended = false;
};

ValidationReport validate(u64 r, const ConstructionParams& p);
Shape stated_shape(u64 r, const ConstructionParams& p);
// size of the combined set actually produced by the Thm3 family
i64 thm3_combined_size(u64 r, const ConstructionParams& p);

struct SubsetFamily {
    std::vector<std::vector<Elem>> subsets;  // each sorted, no duplicates
    std::vector<CosetUnion> structure;       // empty, or aligned with subsets
};

struct Region {
    u64 mask = 0;
    std::vector<Elem> elements;
};

struct EvalSet {
    std::vector<Elem> elements;                // sorted
    std::optional<ConstructionParams> params;  // provenance
    std::vector<Region> pieces;                // odd-popcount regions, ascending mask
    SubsetFamily family;
    std::vector<std::string> notes;

    std::string tag() const;
};

EvalSet combine(const SubsetFamily& family);
bool multiset_identity_check(const SubsetFamily& family);

SubsetFamily construction_family(const Field& F, const ConstructionParams& p);

struct BuildOptions {
    bool allow_size_mismatch = false;
};

EvalSet build(const Field& F, const ConstructionParams& p, const BuildOptions& opts = {});

void write_evalset(const Field& F, const EvalSet& S, std::ostream& os);
EvalSet read_evalset(const Field& F, std::istream& is);

}
