#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grssd/evalsets.hpp"

namespace grssd {

struct CensusOptions {
    std::vector<int> classes{1, 2, 3, 4, 5, 6, 7, 8};
    unsigned threads = 0;
    // false: class 2 limited to l1 = 0 with the size of the combined set
    bool class2_as_stated = true;
    // true: class 5 with the table's extra "4 does not divide v" and only the n+1 form
    bool class5_table_variant = false;
    u64 budget = 1'000'000'000;
    std::function<void(const std::string&)> progress;
};

struct LengthCensus {
    u64 r = 0, q = 0;
    std::string modulus;
    std::vector<int> classes;
    bool class2_as_stated = true;
    bool class5_table_variant = false;
    std::vector<std::uint8_t> mask;  // indexed by code length, bit c-1 for class c
    std::vector<std::array<std::optional<ConstructionParams>, 8>> witnesses;
    u64 iterations = 0;
    u64 odd_lengths = 0;
    u64 out_of_range = 0;

    u64 count() const;
    std::vector<u64> lengths() const;
    int attributed_class(u64 length) const;
    std::array<u64, 8> per_class() const;
    double ratio() const;  // N / (q/2)
};

LengthCensus run_census(u64 r, const CensusOptions& opts = {});

std::string census_csv(const LengthCensus& c);
void export_census(const LengthCensus& c, const std::string& path);
LengthCensus parse_census_csv(const std::string& text);
LengthCensus import_census(const std::string& path);
std::string census_summary_json(const LengthCensus& c);
std::string census_definition();

struct SpotResult {
    u64 length = 0;
    bool ok = false;
    std::string witness;  // the verified witness, or the last one tried
    std::string detail;
};

std::vector<SpotResult> spot_verify(const Field& F, const LengthCensus& c, u64 samples, u64 seed, unsigned threads = 0);

}
