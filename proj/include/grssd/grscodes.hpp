#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grssd/chartool.hpp"

namespace grssd {

struct CodeSpec {
    u64 n = 0;
    u64 k = 0;
    bool extended = false;
    std::vector<Elem> points;   // n, or n-1 when extended
    std::vector<Elem> scaling;  // aligned with points
};

void check_code_spec(const CodeSpec& spec);

struct ScalingResult {
    std::vector<Elem> scaling;
    Elem constant = 1;          // v_a^2 = (constant * delta_S(a))^-1
    std::string constant_name;  // "1", "-1", "mu", "-mu"
    int attempts = 0;
};

// picks the scaling from the character report and confirms it with the power-sum verifier
ScalingResult solve_scaling(const Field& F, const EvalSet& S, const CharacterReport& rep, bool extended);
CodeSpec code_from_scaling(const EvalSet& S, const ScalingResult& sc, bool extended);

struct GeneratorMatrix {
    u64 k = 0, n = 0;
    std::vector<Elem> data;  // row-major
    Elem at(u64 i, u64 j) const { return data[i * n + j]; }
    bool operator==(const GeneratorMatrix& o) const { return k == o.k && n == o.n && data == o.data; }
};

GeneratorMatrix generator_matrix(const Field& F, const CodeSpec& spec);

std::vector<Elem> power_sums(const Field& F, const CodeSpec& spec, unsigned threads = 0);
bool power_sum_self_orthogonal(const Field& F, const CodeSpec& spec, unsigned threads = 0);
bool matrix_self_orthogonal(const Field& F, const GeneratorMatrix& G, unsigned threads = 0);
bool randomized_self_orthogonal(const Field& F, const CodeSpec& spec, u64 samples, u64 seed);
u64 matrix_rank(const Field& F, const GeneratorMatrix& G);
// exact: the leading k x k block is a scaled Vandermonde matrix
bool leading_minor_nonzero(const Field& F, const CodeSpec& spec);

enum class MdsStatus { Pass, Fail, Skipped };
constexpr u64 kMdsBruteMax = 16;
constexpr u64 kMatrixMethodMax = 512;

MdsStatus verify_mds(const Field& F, const CodeSpec& spec);
const char* mds_name(MdsStatus s);

struct VerifyOptions {
    std::optional<bool> matrix_method;  // default: n <= 512
    u64 samples = 0;
    u64 seed = 1;
    bool mds = false;
    unsigned threads = 0;
};

struct VerifyReport {
    bool power_sum_ok = false;
    std::optional<bool> matrix_ok;
    std::optional<bool> randomized_ok;
    bool rank_ok = false;
    std::string rank_method;
    MdsStatus mds = MdsStatus::Skipped;
    bool self_orthogonal() const;
    bool passed() const;  // all requested checks
};

VerifyReport verify_self_dual(const Field& F, const CodeSpec& spec, const VerifyOptions& opts = {},
                              const GeneratorMatrix* G = nullptr);

struct MatrixFile {
    FieldParams params;
    std::vector<u64> modulus;
    CodeSpec spec;
    GeneratorMatrix G;
};

std::string format_matrix(const Field& F, const CodeSpec& spec, const GeneratorMatrix& G);
void write_matrix(const Field& F, const CodeSpec& spec, const GeneratorMatrix& G, const std::string& path);
MatrixFile parse_matrix(const std::string& text);
MatrixFile read_matrix(const std::string& path);
std::string sha256_hex(const std::string& bytes);

}
