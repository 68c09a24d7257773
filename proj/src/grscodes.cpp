#include "grssd/grscodes.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <openssl/evp.h>

#include "grssd/error.hpp"
#include "grssd/parallel.hpp"

namespace grssd {

namespace {

void accumulate_digits(std::vector<u64>& acc, Elem e, u64 p) {
    for (size_t d = 0; e != 0 && d < acc.size(); ++d) {
        acc[d] += e % p;
        e /= static_cast<Elem>(p);
    }
}

Elem reduce_digits(const Field& F, const std::vector<u64>& acc) {
    std::vector<u64> d(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) d[i] = acc[i] % F.p();
    return F.from_digits(d);
}

Elem horner(const Field& F, const std::vector<Elem>& coeffs, Elem x) {
    Elem acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs[i]);
    return acc;
}

Elem determinant(const Field& F, std::vector<Elem> m, size_t k) {
    Elem det = 1;
    for (size_t c = 0; c < k; ++c) {
        size_t piv = c;
        while (piv < k && m[piv * k + c] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != c) {
            for (size_t j = 0; j < k; ++j) std::swap(m[piv * k + j], m[c * k + j]);
            det = F.neg(det);
        }
        Elem pv = m[c * k + c];
        det = F.mul(det, pv);
        Elem pinv = F.inv(pv);
        for (size_t r = c + 1; r < k; ++r) {
            Elem factor = F.mul(m[r * k + c], pinv);
            if (factor == 0) continue;
            for (size_t j = c; j < k; ++j) m[r * k + j] = F.sub(m[r * k + j], F.mul(factor, m[c * k + j]));
        }
    }
    return det;
}

}

void check_code_spec(const CodeSpec& spec) {
    if (spec.n == 0 || spec.n % 2 != 0) fail(ErrorKind::InvalidArgument, "code length must be even and positive");
    if (spec.k * 2 != spec.n) fail(ErrorKind::InvalidArgument, "dimension must be n/2");
    const u64 npts = spec.extended ? spec.n - 1 : spec.n;
    if (spec.points.size() != npts || spec.scaling.size() != npts)
        fail(ErrorKind::InvalidArgument, "points and scaling must have one entry per evaluated coordinate");
    if (std::find(spec.scaling.begin(), spec.scaling.end(), Elem{0}) != spec.scaling.end())
        fail(ErrorKind::InvalidArgument, "scaling entries must be nonzero");
    auto sorted = spec.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(ErrorKind::InvalidArgument, "evaluation points must be distinct");
}

CodeSpec code_from_scaling(const EvalSet& S, const ScalingResult& sc, bool extended) {
    CodeSpec spec;
    spec.extended = extended;
    spec.n = S.elements.size() + (extended ? 1 : 0);
    spec.k = spec.n / 2;
    spec.points = S.elements;
    spec.scaling = sc.scaling;
    return spec;
}

ScalingResult solve_scaling(const Field& F, const EvalSet& S, const CharacterReport& rep, bool extended) {
    const size_t n = S.elements.size();
    if (rep.elements != S.elements) fail(ErrorKind::InvalidArgument, "character report belongs to another set");
    if (extended) {
        if (n % 2 == 0) fail(ErrorKind::Verification, "extended construction needs an odd evaluation set");
        if (!rep.negated_uniform)
            fail(ErrorKind::Verification, "character condition unmet: eta(-delta_S(a)) = 1 fails for " +
                                              std::to_string(rep.minus_count) +
                                              " of " + std::to_string(n) + " elements");
    } else {
        if (n % 2 != 0) fail(ErrorKind::Verification, "plain construction needs an even evaluation set");
        if (!rep.uniform)
            fail(ErrorKind::Verification, "character condition unmet: eta(delta_S(a)) is not uniform (" +
                                              std::to_string(rep.plus_count) + " plus, " +
                                              std::to_string(rep.minus_count) + " minus)");
    }
    const Elem mu = (!extended && rep.common == -1) ? F.exp(1) : Elem{1};
    std::vector<std::pair<Elem, std::string>> all = {
        {1, "1"}, {F.minus_one(), "-1"}, {mu, "mu"}, {F.neg(mu), "-mu"}};
    std::vector<std::pair<Elem, std::string>> cands;
    cands.push_back(extended ? all[1] : all[2]);
    for (const auto& c : all)
        if (std::none_of(cands.begin(), cands.end(), [&](const auto& x) { return x.first == c.first; }))
            cands.push_back(c);

    ScalingResult res;
    for (const auto& [lambda, name] : cands) {
        ++res.attempts;
        std::vector<Elem> v(n);
        bool squares = true;
        for (size_t i = 0; i < n && squares; ++i) {
            auto root = F.sqrt(F.inv(F.mul(lambda, rep.delta[i])));
            if (!root) squares = false;
            else v[i] = root->first;
        }
        if (!squares) continue;
        ScalingResult cand{v, lambda, name, res.attempts};
        if (power_sum_self_orthogonal(F, code_from_scaling(S, cand, extended))) return cand;
    }
    fail(ErrorKind::Verification, "no candidate constant in {1, -1, mu, -mu} yields a self-orthogonal code");
}

GeneratorMatrix generator_matrix(const Field& F, const CodeSpec& spec) {
    GeneratorMatrix G;
    G.k = spec.k;
    G.n = spec.n;
    G.data.assign(G.k * G.n, 0);
    for (u64 j = 0; j < spec.points.size(); ++j) {
        Elem x = spec.scaling[j];
        for (u64 i = 0; i < G.k; ++i) {
            G.data[i * G.n + j] = x;
            x = F.mul(x, spec.points[j]);
        }
    }
    if (spec.extended && G.k > 0) G.data[(G.k - 1) * G.n + (G.n - 1)] = 1;
    return G;
}

std::vector<Elem> power_sums(const Field& F, const CodeSpec& spec, unsigned threads) {
    const u64 T = 2 * spec.k - 1;
    const u64 order = F.order();
    const size_t m = spec.points.size();
    std::vector<u64> lw(m), la(m);
    std::vector<bool> zero(m);
    for (size_t j = 0; j < m; ++j) {
        lw[j] = 2 * F.log(spec.scaling[j]) % order;
        zero[j] = spec.points[j] == 0;
        la[j] = zero[j] ? 0 : F.log(spec.points[j]);
    }
    std::vector<Elem> P(T, 0);
    parallel_chunks(T, threads, [&](size_t b, size_t e, unsigned) {
        std::vector<u64> cur(m);
        for (size_t j = 0; j < m; ++j) cur[j] = (lw[j] + mul_mod(la[j], b, order)) % order;
        std::vector<u64> acc(F.degree());
        for (size_t t = b; t < e; ++t) {
            std::fill(acc.begin(), acc.end(), 0);
            for (size_t j = 0; j < m; ++j) {
                if (zero[j]) {
                    if (t == 0) accumulate_digits(acc, F.exp(lw[j]), F.p());
                    continue;
                }
                accumulate_digits(acc, F.exp(cur[j]), F.p());
                cur[j] += la[j];
                if (cur[j] >= order) cur[j] -= order;
            }
            P[t] = reduce_digits(F, acc);
        }
    });
    return P;
}

bool power_sum_self_orthogonal(const Field& F, const CodeSpec& spec, unsigned threads) {
    auto P = power_sums(F, spec, threads);
    const size_t T = P.size();
    for (size_t t = 0; t + 1 < T; ++t)
        if (P[t] != 0) return false;
    Elem last = P[T - 1];
    return spec.extended ? F.add(last, 1) == 0 : last == 0;
}

bool matrix_self_orthogonal(const Field& F, const GeneratorMatrix& G, unsigned threads) {
    const u64 order = F.order();
    constexpr u64 kZero = ~u64{0};
    std::vector<u64> lg(G.data.size());
    for (size_t i = 0; i < G.data.size(); ++i) lg[i] = G.data[i] == 0 ? kZero : F.log(G.data[i]);
    std::vector<char> ok(G.k, 1);
    parallel_chunks(G.k, threads, [&](size_t b, size_t e, unsigned) {
        std::vector<u64> acc(F.degree());
        for (size_t i = b; i < e; ++i) {
            for (size_t i2 = i; i2 < G.k && ok[i]; ++i2) {
                std::fill(acc.begin(), acc.end(), 0);
                for (size_t j = 0; j < G.n; ++j) {
                    u64 x = lg[i * G.n + j], y = lg[i2 * G.n + j];
                    if (x == kZero || y == kZero) continue;
                    u64 s = x + y;
                    if (s >= order) s -= order;
                    accumulate_digits(acc, F.exp(s), F.p());
                }
                if (reduce_digits(F, acc) != 0) ok[i] = 0;
            }
        }
    });
    return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

bool randomized_self_orthogonal(const Field& F, const CodeSpec& spec, u64 samples, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> pick(0, F.q() - 1);
    auto codeword = [&](const std::vector<Elem>& f) {
        std::vector<Elem> c(spec.n);
        for (size_t j = 0; j < spec.points.size(); ++j) c[j] = F.mul(spec.scaling[j], horner(F, f, spec.points[j]));
        if (spec.extended) c[spec.n - 1] = f[spec.k - 1];
        return c;
    };
    for (u64 s = 0; s < samples; ++s) {
        std::vector<Elem> f(spec.k), g(spec.k);
        for (auto& x : f) x = static_cast<Elem>(pick(rng));
        for (auto& x : g) x = static_cast<Elem>(pick(rng));
        auto cf = codeword(f), cg = codeword(g);
        Elem dot = 0;
        for (size_t j = 0; j < spec.n; ++j) dot = F.add(dot, F.mul(cf[j], cg[j]));
        if (dot != 0) return false;
    }
    return true;
}

u64 matrix_rank(const Field& F, const GeneratorMatrix& G) {
    auto m = G.data;
    const u64 rows = G.k, cols = G.n;
    u64 rank = 0;
    for (u64 c = 0; c < cols && rank < rows; ++c) {
        u64 piv = rank;
        while (piv < rows && m[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (u64 j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
        Elem pinv = F.inv(m[rank * cols + c]);
        for (u64 r = rank + 1; r < rows; ++r) {
            Elem factor = F.mul(m[r * cols + c], pinv);
            if (factor == 0) continue;
            for (u64 j = c; j < cols; ++j) m[r * cols + j] = F.sub(m[r * cols + j], F.mul(factor, m[rank * cols + j]));
        }
        ++rank;
    }
    return rank;
}

bool leading_minor_nonzero(const Field& F, const CodeSpec& spec) {
    if (spec.k > spec.points.size()) return false;
    Elem det = 1;
    for (u64 j = 0; j < spec.k; ++j) {
        det = F.mul(det, spec.scaling[j]);
        for (u64 i = 0; i < j; ++i) det = F.mul(det, F.sub(spec.points[j], spec.points[i]));
        if (det == 0) return false;
    }
    return true;
}

MdsStatus verify_mds(const Field& F, const CodeSpec& spec) {
    if (spec.n > kMdsBruteMax) return MdsStatus::Skipped;
    const GeneratorMatrix G = generator_matrix(F, spec);
    const size_t k = G.k, n = G.n;
    std::vector<size_t> cols(k);
    for (size_t i = 0; i < k; ++i) cols[i] = i;
    std::vector<Elem> m(k * k);
    while (true) {
        for (size_t r = 0; r < k; ++r)
            for (size_t c = 0; c < k; ++c) m[r * k + c] = G.at(r, cols[c]);
        if (determinant(F, m, k) == 0) return MdsStatus::Fail;
        size_t i = k;
        while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cols[i - 1];
        for (size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return MdsStatus::Pass;
}

const char* mds_name(MdsStatus s) {
    switch (s) {
    case MdsStatus::Pass: return "pass";
    case MdsStatus::Fail: return "fail";
    default: return "skipped";
    }
}

bool VerifyReport::self_orthogonal() const {
    return power_sum_ok && matrix_ok.value_or(true) && randomized_ok.value_or(true);
}

bool VerifyReport::passed() const { return self_orthogonal() && rank_ok && mds != MdsStatus::Fail; }

VerifyReport verify_self_dual(const Field& F, const CodeSpec& spec, const VerifyOptions& opts, const GeneratorMatrix* G) {
    VerifyReport rep;
    rep.power_sum_ok = power_sum_self_orthogonal(F, spec, opts.threads);
    const bool use_matrix = opts.matrix_method.value_or(spec.n <= kMatrixMethodMax);
    GeneratorMatrix local;
    if (use_matrix || spec.n <= kMatrixMethodMax) {
        if (!G) {
            local = generator_matrix(F, spec);
            G = &local;
        }
    }
    if (use_matrix) rep.matrix_ok = matrix_self_orthogonal(F, *G, opts.threads);
    if (opts.samples > 0) rep.randomized_ok = randomized_self_orthogonal(F, spec, opts.samples, opts.seed);

    auto pts = spec.points;
    std::sort(pts.begin(), pts.end());
    const bool structural = std::adjacent_find(pts.begin(), pts.end()) == pts.end() &&
                            std::find(spec.scaling.begin(), spec.scaling.end(), Elem{0}) == spec.scaling.end();
    if (spec.n <= kMatrixMethodMax) {
        rep.rank_method = "row-reduction";
        rep.rank_ok = structural && matrix_rank(F, *G) == spec.k;
    } else {
        rep.rank_method = "vandermonde-minor";
        rep.rank_ok = structural && leading_minor_nonzero(F, spec);
    }
    if (opts.mds) rep.mds = verify_mds(F, spec);
    return rep;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorKind::Internal, "sha256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::string format_matrix(const Field& F, const CodeSpec& spec, const GeneratorMatrix& G) {
    std::ostringstream os;
    auto join = [&](const std::vector<Elem>& v) {
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    os << "GRSSD v1\n";
    os << "p=" << F.p() << " deg=" << F.degree() << " modulus=" << F.modulus_string() << "\n";
    os << "n=" << spec.n << " k=" << spec.k << " extended=" << (spec.extended ? 1 : 0) << "\n";
    os << "points=";
    join(spec.points);
    os << "\nscaling=";
    join(spec.scaling);
    os << "\n";
    for (u64 i = 0; i < G.k; ++i) {
        for (u64 j = 0; j < G.n; ++j) os << (j ? " " : "") << G.at(i, j);
        os << "\n";
    }
    std::string body = os.str();
    return body + "sha256=" + sha256_hex(body) + "\n";
}

void write_matrix(const Field& F, const CodeSpec& spec, const GeneratorMatrix& G, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
    out << format_matrix(F, spec, G);
    if (!out) fail(ErrorKind::Io, "write to " + path + " failed");
}

namespace {

std::vector<u64> parse_list(const std::string& s, const std::string& what) {
    std::vector<u64> out;
    if (s.empty()) return out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorKind::Malformed, "bad entry in " + what + ": '" + item + "'");
        out.push_back(std::stoull(item));
    }
    return out;
}

std::string expect_prefix(const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) fail(ErrorKind::Malformed, "expected " + key + "=, got '" + tok + "'");
    return tok.substr(key.size() + 1);
}

u64 parse_u64(const std::string& s, const std::string& what) {
    auto v = parse_list(s, what);
    if (v.size() != 1) fail(ErrorKind::Malformed, "bad value for " + what);
    return v[0];
}

}

MatrixFile parse_matrix(const std::string& text) {
    if (text.empty() || text.back() != '\n') fail(ErrorKind::Malformed, "matrix file must end with a newline");
    size_t last = text.rfind('\n', text.size() - 2);
    size_t start = last == std::string::npos ? 0 : last + 1;
    std::string tail = text.substr(start, text.size() - start - 1);
    std::string body = text.substr(0, start);
    if (tail.rfind("sha256=", 0) != 0) fail(ErrorKind::Malformed, "missing sha256 line");
    if (tail.substr(7) != sha256_hex(body)) fail(ErrorKind::Malformed, "checksum mismatch");

    std::istringstream is(body);
    std::string line;
    auto next = [&](const char* what) {
        if (!std::getline(is, line)) fail(ErrorKind::Malformed, std::string("missing ") + what);
        return line;
    };
    if (next("magic") != "GRSSD v1") fail(ErrorKind::Malformed, "bad magic line");
    MatrixFile mf;
    {
        std::istringstream ls(next("field line"));
        std::string a, b, c;
        ls >> a >> b >> c;
        mf.params.p = parse_u64(expect_prefix(a, "p"), "p");
        u64 deg = parse_u64(expect_prefix(b, "deg"), "deg");
        if (deg == 0 || deg % 2 != 0) fail(ErrorKind::Malformed, "degree must be even");
        mf.params.m = deg / 2;
        mf.modulus = parse_list(expect_prefix(c, "modulus"), "modulus");
        if (mf.modulus.size() != deg + 1) fail(ErrorKind::Malformed, "modulus length does not match degree");
    }
    {
        std::istringstream ls(next("shape line"));
        std::string a, b, c;
        ls >> a >> b >> c;
        mf.spec.n = parse_u64(expect_prefix(a, "n"), "n");
        mf.spec.k = parse_u64(expect_prefix(b, "k"), "k");
        u64 ext = parse_u64(expect_prefix(c, "extended"), "extended");
        if (ext > 1) fail(ErrorKind::Malformed, "extended must be 0 or 1");
        mf.spec.extended = ext == 1;
    }
    auto to_elems = [](const std::vector<u64>& v) { return std::vector<Elem>(v.begin(), v.end()); };
    mf.spec.points = to_elems(parse_list(expect_prefix(next("points"), "points"), "points"));
    mf.spec.scaling = to_elems(parse_list(expect_prefix(next("scaling"), "scaling"), "scaling"));
    const u64 npts = mf.spec.extended ? mf.spec.n - 1 : mf.spec.n;
    if (mf.spec.points.size() != npts || mf.spec.scaling.size() != npts)
        fail(ErrorKind::Malformed, "points/scaling length does not match n");
    mf.G.k = mf.spec.k;
    mf.G.n = mf.spec.n;
    mf.G.data.reserve(mf.G.k * mf.G.n);
    for (u64 i = 0; i < mf.G.k; ++i) {
        std::istringstream ls(next("matrix row"));
        std::string tok;
        u64 cnt = 0;
        while (ls >> tok) {
            mf.G.data.push_back(static_cast<Elem>(parse_u64(tok, "matrix entry")));
            ++cnt;
        }
        if (cnt != mf.G.n) fail(ErrorKind::Malformed, "matrix row " + std::to_string(i) + " has wrong length");
    }
    if (std::getline(is, line)) fail(ErrorKind::Malformed, "trailing data before checksum");
    return mf;
}

MatrixFile read_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str());
}

}
