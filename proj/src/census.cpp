#include "grssd/census.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "json.hpp"

#include "grssd/error.hpp"
#include "grssd/parallel.hpp"
#include "grssd/pipeline.hpp"

namespace grssd {

namespace {

struct Item {
    int cls;
    u64 outer;
};

struct ItemResult {
    std::vector<std::pair<u64, ConstructionParams>> found;
    u64 iterations = 0, odd = 0, out_of_range = 0;
};

class Enumerator {
public:
    Enumerator(u64 r, const CensusOptions& opts, std::atomic<u64>& total)
        : r_(r), q_(r * r), order_(r * r - 1), opts_(opts), total_(total), divs_(divisors(order_)) {}

    ItemResult run(const Item& it) {
        ItemResult res;
        seen_.assign(q_ + 2, 0);
        out_ = &res;
        if (it.cls <= 2) norm_classes(it.cls, it.outer);
        else if (it.cls <= 5) two_subgroup_classes(it.cls, it.outer);
        else three_subgroup_classes(it.cls, it.outer);
        charge(0, true);
        return res;
    }

private:
    void charge(u64 n, bool flush = false) {
        pending_ += n;
        out_->iterations += n;
        if (pending_ >= (1u << 20) || flush) {
            u64 t = total_.fetch_add(pending_) + pending_;
            pending_ = 0;
            if (t > opts_.budget)
                fail(ErrorKind::InvalidArgument, "census budget of " + std::to_string(opts_.budget) + " iterations exceeded");
        }
    }

    void emit(i64 len, const ConstructionParams& p) {
        if (len < 2 || len > static_cast<i64>(q_ + 1)) {
            ++out_->out_of_range;
            return;
        }
        if (len % 2 != 0) {
            ++out_->odd;
            return;
        }
        if (!seen_[len]) {
            seen_[len] = 1;
            out_->found.emplace_back(static_cast<u64>(len), p);
        }
    }

    void norm_classes(int cls, u64 l) {
        ConstructionParams p;
        p.family = family_of_class(cls);
        p.l = l;
        const i64 R = static_cast<i64>(r_);
        for (u64 s = 0; s + 1 <= (r_ - 1) / l; s += 2) {
            for (u64 l1 = 0; l1 <= l / 2; ++l1) {
                for (u64 l2 = 0; l2 <= l / 2; ++l2) {
                    charge(1);
                    p.s = s;
                    p.l1 = l1;
                    p.l2 = l2;
                    const i64 S = static_cast<i64>(s), L = static_cast<i64>(l);
                    const i64 L1 = static_cast<i64>(l1), L2 = static_cast<i64>(l2);
                    if (cls == 1) {
                        emit(S * L + (L1 + L2) * (R + 1) + 2, p);
                    } else if (opts_.class2_as_stated) {
                        emit((S + 1) * L + (L1 + L2) * (R + 1) - 2 * L2 + 2, p);
                    } else if (l1 == 0) {
                        emit((S + 1) * L + L2 * (R + 1) + 1 - 4 * L2 + 1, p);
                    }
                }
            }
        }
    }

    void two_subgroup_classes(int cls, u64 u) {
        ConstructionParams p;
        p.family = family_of_class(cls);
        p.u = u;
        const u64 r = r_;
        for (u64 v : divs_) {
            if (v == u || v % 2 != 0) continue;
            if (!divides(2 * u, (r + 1) * v) || !divides(v, (r - 1) * u)) continue;
            const u64 h = (r + 1) * v / (2 * u);
            if (cls == 3 || cls == 4) {
                if (u % 2 != 0 || v % 4 == 0) continue;
                if (cls == 3 && h % 2 == 0) continue;
            } else {
                const u64 l = two_adic(v);
                if (l < 2 || !divides(u64{1} << l, u)) continue;
                if (opts_.class5_table_variant && v % 4 == 0) continue;
            }
            p.v = v;
            const u64 g = std::gcd(u, v);
            const i64 X = static_cast<i64>(order_ / u), Y = static_cast<i64>(order_ / v);
            const i64 Z = static_cast<i64>(order_ / std::lcm(u, v));
            for (u64 s = 0; s <= u / g; ++s) {
                for (u64 sp = 0; sp <= u / g; ++sp) {
                    if (cls == 3 && (s + sp) % 2 == 0) continue;
                    if (cls != 3 && !((s % 2 == 0 && sp % 2 == 0) || h % 2 == 0)) continue;
                    charge(v / g + 1);
                    p.s = s;
                    p.s_prime = sp;
                    for (u64 t = 0; t <= v / g; ++t) {
                        p.t = t;
                        const i64 n = static_cast<i64>(s + sp) * X + static_cast<i64>(t) * Y -
                                      2 * Z * static_cast<i64>(s) * static_cast<i64>(t);
                        if (cls == 3) emit(n, p);
                        else if (cls == 4) emit(n + 2, p);
                        else if (n % 2 != 0) emit(n + 1, p);
                        else if (!opts_.class5_table_variant) emit(n + 2, p);
                    }
                }
            }
        }
    }

    void three_subgroup_classes(int cls, u64 u) {
        if (u % 2 != 0) return;
        ConstructionParams p;
        p.family = family_of_class(cls);
        p.u = u;
        const u64 r = r_;
        for (u64 v : divs_) {
            if (v % 2 != 0 || !divides(u, (r + 1) * v) || !divides(v, (r - 1) * u)) continue;
            for (u64 w : divs_) {
                if (w % 2 != 0 || !divides(u, (r + 1) * w) || !divides(v, (r - 1) * w) ||
                    !divides(w, (r - 1) * u) || !divides(w, (r - 1) * v))
                    continue;
                p.v = v;
                p.w = w;
                const u64 hv = (r + 1) * v / u, hw = (r + 1) * w / u;
                const u64 g3 = gcd3(u, v, w);
                const u64 guv = std::gcd(u, v), gvw = std::gcd(v, w), gwu = std::gcd(w, u);
                const i64 X = static_cast<i64>(order_ / u), Y = static_cast<i64>(order_ / v),
                          W = static_cast<i64>(order_ / w);
                const i64 Luv = static_cast<i64>(order_ / std::lcm(u, v)), Lvw = static_cast<i64>(order_ / std::lcm(v, w)),
                          Lwu = static_cast<i64>(order_ / std::lcm(w, u)), L3 = static_cast<i64>(order_ / lcm3(u, v, w));
                auto prime = [g3](u64 x, u64 d) -> i64 { return x == 0 ? 0 : static_cast<i64>((x - 1) * g3 / d + 1); };
                for (u64 s = 0; s <= u / guv; ++s) {
                    if ((hv * s) % 2 != 0 || (hw * s) % 2 != 0) continue;
                    if (cls != 6) {
                        const u64 half = s == 0 ? 0 : s * (s - 1) / 2;
                        if ((hv * half) % 2 != 0) continue;
                    }
                    p.s = s;
                    const i64 S = static_cast<i64>(s), sp = prime(s, gwu);
                    for (u64 t = 0; t <= v / gvw; ++t) {
                        charge(w / gwu + 1);
                        p.t = t;
                        const i64 T = static_cast<i64>(t), tp = prime(t, guv);
                        for (u64 f = 0; f <= w / gwu; ++f) {
                            p.f = f;
                            const i64 Fv = static_cast<i64>(f), fp = prime(f, gvw);
                            const i64 n = S * X + T * Y + Fv * W - 2 * Luv * S * tp - 2 * Lvw * T * fp -
                                          2 * Lwu * Fv * sp + 4 * L3 * sp * tp * fp;
                            if (cls == 6 && n % 2 == 0) emit(n, p);
                            else if (cls == 7 && n % 2 != 0) emit(n + 1, p);
                            else if (cls == 8 && n % 2 == 0) emit(n + 2, p);
                        }
                    }
                }
            }
        }
    }

    u64 r_, q_, order_;
    const CensusOptions& opts_;
    std::atomic<u64>& total_;
    std::vector<u64> divs_;
    std::vector<std::uint8_t> seen_;
    ItemResult* out_ = nullptr;
    u64 pending_ = 0;
};

std::string witness_string(const ConstructionParams& p) {
    return std::string(family_tag(p.family)) + ":" + p.to_string(';');
}

ConstructionParams parse_witness(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Malformed, "bad witness: " + s);
    auto fam = family_from_tag(s.substr(0, colon));
    if (!fam) fail(ErrorKind::Malformed, "unknown witness family: " + s);
    try {
        return ConstructionParams::parse(*fam, s.substr(colon + 1));
    } catch (const Error& e) {
        fail(ErrorKind::Malformed, e.what());
    }
}

}

u64 LengthCensus::count() const {
    return static_cast<u64>(std::count_if(mask.begin(), mask.end(), [](std::uint8_t m) { return m != 0; }));
}

std::vector<u64> LengthCensus::lengths() const {
    std::vector<u64> out;
    for (u64 i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(i);
    return out;
}

int LengthCensus::attributed_class(u64 length) const {
    if (length >= mask.size() || mask[length] == 0) return 0;
    for (int c = 1; c <= 8; ++c)
        if (mask[length] >> (c - 1) & 1) return c;
    return 0;
}

std::array<u64, 8> LengthCensus::per_class() const {
    std::array<u64, 8> out{};
    for (u64 i = 0; i < mask.size(); ++i)
        if (int c = attributed_class(i)) ++out[c - 1];
    return out;
}

double LengthCensus::ratio() const { return q == 0 ? 0.0 : static_cast<double>(count()) / (static_cast<double>(q) / 2.0); }

LengthCensus run_census(u64 r, const CensusOptions& opts) {
    if (!prime_power(r) || r % 2 == 0) fail(ErrorKind::InvalidArgument, "r must be an odd prime power");
    if (r % 4 != 3) fail(ErrorKind::InvalidArgument, "r must be 3 mod 4, got " + std::to_string(r));
    LengthCensus c;
    c.r = r;
    c.q = r * r;
    {
        auto pm = prime_power(r);
        c.modulus = Field(pm->first, pm->second).modulus_string();
    }
    c.classes = opts.classes;
    std::sort(c.classes.begin(), c.classes.end());
    c.classes.erase(std::unique(c.classes.begin(), c.classes.end()), c.classes.end());
    for (int cls : c.classes)
        if (cls < 1 || cls > 8) fail(ErrorKind::InvalidArgument, "class ids must be in 1..8");
    c.class2_as_stated = opts.class2_as_stated;
    c.class5_table_variant = opts.class5_table_variant;
    c.mask.assign(c.q + 2, 0);
    c.witnesses.assign(c.q + 2, {});

    std::vector<Item> items;
    for (int cls : c.classes) {
        if (cls <= 2) {
            for (u64 l : divisors(r - 1))
                if (l % 2 == 0) items.push_back({cls, l});
        } else {
            for (u64 u : divisors(c.q - 1)) items.push_back({cls, u});
        }
    }
    std::vector<ItemResult> results(items.size());
    std::atomic<u64> total{0};
    std::atomic<size_t> done{0};
    std::mutex mu;
    unsigned threads = opts.threads == 0 ? default_threads() : opts.threads;
    // interleaved assignment keeps the expensive divisors spread across workers
    std::vector<std::vector<size_t>> lanes(std::max<size_t>(1, std::min<size_t>(threads, items.size())));
    for (size_t i = 0; i < items.size(); ++i) lanes[i % lanes.size()].push_back(i);
    parallel_chunks(lanes.size(), static_cast<unsigned>(lanes.size()), [&](size_t b, size_t e, unsigned) {
        for (size_t lane = b; lane < e; ++lane) {
            Enumerator en(r, opts, total);
            for (size_t i : lanes[lane]) {
                results[i] = en.run(items[i]);
                size_t k = ++done;
                if (opts.progress) {
                    std::lock_guard<std::mutex> lock(mu);
                    opts.progress("class=" + std::to_string(items[i].cls) + " outer=" + std::to_string(items[i].outer) +
                                  " block=" + std::to_string(k) + "/" + std::to_string(items.size()));
                }
            }
        }
    });
    for (size_t i = 0; i < items.size(); ++i) {
        const int cls = items[i].cls;
        for (const auto& [len, p] : results[i].found) {
            c.mask[len] |= static_cast<std::uint8_t>(1u << (cls - 1));
            auto& slot = c.witnesses[len][cls - 1];
            if (!slot) slot = p;
        }
        c.iterations += results[i].iterations;
        c.odd_lengths += results[i].odd;
        c.out_of_range += results[i].out_of_range;
    }
    return c;
}

std::string census_definition() {
    return "even code lengths n with 2 <= n <= q+1 produced by the selected classes; ratio = N/(q/2)";
}

std::string census_csv(const LengthCensus& c) {
    std::ostringstream os;
    os << "# r=" << c.r << " q=" << c.q << " modulus=" << c.modulus << " classes=";
    for (size_t i = 0; i < c.classes.size(); ++i) os << (i ? "," : "") << c.classes[i];
    os << " class2=" << (c.class2_as_stated ? "as-stated" : "constructive")
       << " class5=" << (c.class5_table_variant ? "table" : "theorem") << "\n";
    os << "length,classId,witnessParams\n";
    for (u64 len : c.lengths()) {
        int cls = c.attributed_class(len);
        const auto& w = c.witnesses[len][cls - 1];
        os << len << "," << cls << "," << (w ? witness_string(*w) : std::string()) << "\n";
    }
    return os.str();
}

void export_census(const LengthCensus& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
    out << census_csv(c);
    if (!out) fail(ErrorKind::Io, "write to " + path + " failed");
}

LengthCensus parse_census_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) fail(ErrorKind::Malformed, "missing census header comment");
    LengthCensus c;
    {
        std::istringstream hs(line.substr(2));
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) fail(ErrorKind::Malformed, "bad header token " + tok);
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            try {
                if (key == "r") c.r = std::stoull(val);
                else if (key == "q") c.q = std::stoull(val);
                else if (key == "modulus") c.modulus = val;
                else if (key == "class2") c.class2_as_stated = val == "as-stated";
                else if (key == "class5") c.class5_table_variant = val == "table";
                else if (key == "classes") {
                    std::istringstream cs(val);
                    std::string item;
                    while (std::getline(cs, item, ',')) c.classes.push_back(std::stoi(item));
                }
            } catch (const std::exception&) {
                fail(ErrorKind::Malformed, "bad header value " + tok);
            }
        }
    }
    if (c.r == 0 || c.q != c.r * c.r) fail(ErrorKind::Malformed, "census header lacks a consistent r and q");
    if (!std::getline(is, line) || line != "length,classId,witnessParams") fail(ErrorKind::Malformed, "missing CSV header");
    c.mask.assign(c.q + 2, 0);
    c.witnesses.assign(c.q + 2, {});
    u64 prev = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto a = line.find(','), b = line.find(',', a == std::string::npos ? a : a + 1);
        if (a == std::string::npos || b == std::string::npos) fail(ErrorKind::Malformed, "bad census row: " + line);
        u64 len = 0;
        int cls = 0;
        try {
            len = std::stoull(line.substr(0, a));
            cls = std::stoi(line.substr(a + 1, b - a - 1));
        } catch (const std::exception&) {
            fail(ErrorKind::Malformed, "bad census row: " + line);
        }
        if (len <= prev || len > c.q + 1 || len % 2 != 0) fail(ErrorKind::Malformed, "bad or unsorted length " + std::to_string(len));
        if (cls < 1 || cls > 8) fail(ErrorKind::Malformed, "bad class id in row: " + line);
        prev = len;
        auto p = parse_witness(line.substr(b + 1));
        if (class_id(p.family) != cls) fail(ErrorKind::Malformed, "witness family disagrees with class: " + line);
        if (!validate(c.r, p).ok()) fail(ErrorKind::Malformed, "witness fails validation: " + line);
        bool as_stated_len = stated_shape(c.r, p).code_length == static_cast<i64>(len);
        bool constructive_len = p.family == Family::Thm3 && !c.class2_as_stated &&
                                thm3_combined_size(c.r, p) + 1 == static_cast<i64>(len);
        if (!as_stated_len && !constructive_len) fail(ErrorKind::Malformed, "witness does not give its length: " + line);
        c.mask[len] = static_cast<std::uint8_t>(1u << (cls - 1));
        c.witnesses[len][cls - 1] = p;
    }
    return c;
}

LengthCensus import_census(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_census_csv(ss.str());
}

std::string census_summary_json(const LengthCensus& c) {
    nlohmann::ordered_json j;
    j["r"] = c.r;
    j["q"] = c.q;
    j["N"] = c.count();
    j["ratio"] = c.ratio();
    nlohmann::ordered_json per;
    auto pc = c.per_class();
    for (int cls : c.classes) per[std::to_string(cls)] = pc[cls - 1];
    j["perClass"] = per;
    j["universe"] = census_definition();
    j["class2"] = c.class2_as_stated ? "as-stated" : "constructive";
    j["class5"] = c.class5_table_variant ? "table" : "theorem";
    j["modulus"] = c.modulus;
    return j.dump();
}

std::vector<SpotResult> spot_verify(const Field& F, const LengthCensus& c, u64 samples, u64 seed, unsigned threads) {
    if (F.r() != c.r) fail(ErrorKind::InvalidArgument, "census and field disagree on r");
    auto lens = c.lengths();
    std::mt19937_64 rng(seed);
    std::shuffle(lens.begin(), lens.end(), rng);
    lens.resize(std::min<size_t>(lens.size(), samples));
    std::sort(lens.begin(), lens.end());
    std::vector<SpotResult> out(lens.size());
    parallel_chunks(lens.size(), threads, [&](size_t b, size_t e, unsigned) {
        for (size_t i = b; i < e; ++i) {
            SpotResult& res = out[i];
            res.length = lens[i];
            PipelineOptions po;
            po.chars.threads = 1;
            po.verify.threads = 1;
            for (int cls = 1; cls <= 8 && !res.ok; ++cls) {
                const auto& w = c.witnesses[lens[i]][cls - 1];
                if (!w) continue;
                res.witness = witness_string(*w);
                try {
                    auto pr = run_construction(F, *w, po);
                    res.ok = pr.ok && pr.code && pr.code->n == lens[i];
                    if (!res.ok)
                        res.detail += (res.detail.empty() ? "" : " | ") + res.witness + ": " +
                                      (pr.ok ? "length " + std::to_string(pr.code->n) : pr.failure);
                } catch (const Error& e) {
                    res.detail += (res.detail.empty() ? "" : " | ") + res.witness + ": " + e.what();
                }
            }
        }
    });
    return out;
}

}
