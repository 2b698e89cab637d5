#include "lextent/spectrum.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lextent/count.hpp"
#include "lextent/errors.hpp"
#include "lextent/family.hpp"

namespace lextent {

namespace {

constexpr std::size_t kHardCap = 8;

// Dense representation during enumeration: below[k] is the bitmask of
// elements strictly below k. Natural labeling keeps every mask within the
// elements 0..k-1.
struct MaskPoset {
    std::uint32_t n = 0;
    std::array<std::uint16_t, kHardCap> below{};
};

bool is_ideal(const MaskPoset& p, std::uint16_t D) {
    for (std::uint16_t rest = D; rest;) {
        int x = __builtin_ctz(rest);
        rest &= static_cast<std::uint16_t>(rest - 1);
        if (p.below[x] & ~D) return false;
    }
    return true;
}

// Recursively attach elements cur.n .. n-1; each new element's down-set must
// be an order ideal, which makes the produced posets exactly the
// naturally-labeled ones, each once.
template <class F>
void extend_to(MaskPoset& cur, std::uint32_t n, F&& emit) {
    if (cur.n == n) {
        emit(cur);
        return;
    }
    std::uint32_t k = cur.n;
    std::uint16_t universe = static_cast<std::uint16_t>((1u << k) - 1);
    for (std::uint16_t D = 0;; ++D) {
        if (is_ideal(cur, D)) {
            cur.below[k] = D;
            cur.n = k + 1;
            extend_to(cur, n, emit);
            cur.n = k;
        }
        if (D == universe) break;
    }
}

// Extension count by dynamic programming over down-set masks; only ideals
// accumulate nonzero weight, so no explicit ideal test is needed.
std::uint64_t ext_of(const MaskPoset& p, std::vector<std::uint64_t>& f) {
    std::uint32_t full = (1u << p.n) - 1;
    f.assign(full + 1, 0);
    f[0] = 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint64_t acc = 0;
        for (std::uint32_t rest = mask; rest;) {
            int x = __builtin_ctz(rest);
            rest &= rest - 1;
            if ((p.below[x] & ~mask) == 0) acc += f[mask ^ (1u << x)];
        }
        f[mask] = acc;
    }
    return f[full];
}

Poset poset_from_masks(const MaskPoset& p) {
    std::vector<CoverPair> pairs;
    for (std::uint32_t k = 0; k < p.n; ++k)
        for (std::uint16_t rest = p.below[k]; rest;) {
            int x = __builtin_ctz(rest);
            rest &= static_cast<std::uint16_t>(rest - 1);
            pairs.push_back({static_cast<ElementId>(x), static_cast<ElementId>(k)});
        }
    return Poset::from_cover_relations(p.n, pairs);
}

std::size_t effective_bound(const SpectrumLimits& limits) {
    std::size_t bound = limits.allow_large ? std::max<std::size_t>(limits.max_n, kHardCap)
                                           : limits.max_n;
    return std::min(bound, kHardCap);
}

void check_bound(std::size_t n, const SpectrumLimits& limits) {
    if (n == 0) throw DomainError("enumeration needs n >= 1");
    if (n > kHardCap) throw TooLargeError("enumeration beyond n = 8 is out of reach");
    if (n > effective_bound(limits))
        throw TooLargeError("n = " + std::to_string(n) + " exceeds the configured bound (" +
                            std::to_string(effective_bound(limits)) +
                            "); n = 8 needs the allow-large flag");
}

std::string cache_path(const std::string& dir, std::size_t n) {
    return dir + "/spectrum-" + std::to_string(n) + ".json";
}

std::string cache_json(const Spectrum& s) {
    std::ostringstream out;
    out << "{\"n\":" << s.n << ",\"generator_version\":\"" << s.generator_version
        << "\",\"poset_count\":" << s.poset_count << ",\"values\":[";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out << (i ? "," : "") << '"' << s.values[i].get_str() << '"';
    out << "]}";
    return out.str();
}

bool load_cache(const std::string& dir, std::size_t n, Spectrum& s) {
    std::ifstream in(cache_path(dir, n));
    if (!in) return false;
    try {
        nlohmann::json doc = nlohmann::json::parse(in);
        if (doc.at("n").get<std::size_t>() != n) return false;
        if (doc.at("generator_version").get<std::string>() != spectrum_generator_version)
            return false;
        s.n = n;
        s.generator_version = spectrum_generator_version;
        s.poset_count = doc.at("poset_count").get<std::uint64_t>();
        s.values.clear();
        for (const auto& v : doc.at("values")) s.values.emplace_back(v.get<std::string>(), 10);
        return true;
    } catch (const std::exception&) {
        return false;  // stale or corrupt cache: recompute
    }
}

void store_cache(const std::string& dir, const Spectrum& s) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    std::ofstream out(cache_path(dir, s.n), std::ios::trunc);
    if (out) out << cache_json(s) << '\n';
}

// Fixed-depth prefixes give workers independent subtrees; the merge is a set
// union, so any worker count yields the same spectrum.
std::vector<MaskPoset> prefixes_of_depth(std::size_t depth) {
    std::vector<MaskPoset> out;
    MaskPoset root;
    extend_to(root, static_cast<std::uint32_t>(depth), [&](const MaskPoset& p) { out.push_back(p); });
    return out;
}

}  // namespace

void enumerate_natural_posets(std::size_t n, const std::function<void(const Poset&)>& yield,
                              const SpectrumLimits& limits) {
    check_bound(n, limits);
    MaskPoset root;
    extend_to(root, static_cast<std::uint32_t>(n), [&](const MaskPoset& p) { yield(poset_from_masks(p)); });
}

Spectrum spectrum(std::size_t n, const SpectrumOptions& opts) {
    check_bound(n, opts.limits);
    Spectrum result;
    if (!opts.cache_dir.empty() && load_cache(opts.cache_dir, n, result)) return result;

    result.n = n;
    result.generator_version = spectrum_generator_version;

    unsigned workers = std::max(1u, opts.workers);
    std::size_t depth = std::min<std::size_t>(n, 5);
    std::vector<MaskPoset> seeds = prefixes_of_depth(depth);

    std::vector<std::set<std::uint64_t>> value_sets(workers);
    std::vector<std::uint64_t> counts(workers, 0);
    std::atomic<std::size_t> cursor{0};

    auto run = [&](unsigned w) {
        std::vector<std::uint64_t> f;
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= seeds.size()) break;
            MaskPoset p = seeds[i];
            extend_to(p, static_cast<std::uint32_t>(n), [&](const MaskPoset& q) {
                value_sets[w].insert(ext_of(q, f));
                ++counts[w];
            });
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    std::set<std::uint64_t> merged;
    for (unsigned w = 0; w < workers; ++w) {
        merged.insert(value_sets[w].begin(), value_sets[w].end());
        result.poset_count += counts[w];
    }
    for (std::uint64_t v : merged) result.values.emplace_back(static_cast<unsigned long>(v));

    if (!opts.cache_dir.empty()) store_cache(opts.cache_dir, result);
    return result;
}

Spectrum spectrum_width2(std::size_t n, const SpectrumOptions& opts) {
    check_bound(n, opts.limits);
    Spectrum result;
    result.n = n;
    result.generator_version = std::string("width2-") + spectrum_generator_version;
    std::set<std::uint64_t> values;
    std::vector<std::uint64_t> f;
    MaskPoset root;
    extend_to(root, static_cast<std::uint32_t>(n), [&](const MaskPoset& p) {
        if (poset_from_masks(p).width() > 2) return;
        values.insert(ext_of(p, f));
        ++result.poset_count;
    });
    for (std::uint64_t v : values) result.values.emplace_back(static_cast<unsigned long>(v));
    return result;
}

BigCount smallest_missing(const Spectrum& s) {
    BigCount g = 1;
    for (const BigCount& v : s.values) {
        if (v == g) ++g;
        else if (v > g) break;
    }
    return g;
}

std::uint64_t top_interval_count(const Spectrum& s) {
    BigCount lo = factorial(s.n == 0 ? 0 : s.n - 1);
    BigCount hi = factorial(s.n);
    std::uint64_t count = 0;
    for (const BigCount& v : s.values)
        if (v > lo && v <= hi) ++count;
    return count;
}

CheckReport verify_theorem63(const Spectrum& sn, const Spectrum& sr) {
    std::size_t n = sn.n, r = sr.n;
    CheckReport report;
    report.name = "top-slice equality n=" + std::to_string(n) + " r=" + std::to_string(r);
    if (r >= n) {
        report.ok = false;
        report.detail = "needs r < n";
        return report;
    }
    BigCount nf = factorial(n), rf = factorial(r);
    BigCount scale = nf / rf;
    std::set<BigCount> actual, expected;
    for (const BigCount& v : sn.values)
        if (v * (r + 1) > nf) actual.insert(v);
    for (const BigCount& l : sr.values)
        if (l * (r + 1) > rf) expected.insert(scale * l);
    if (actual == expected) {
        report.detail = std::to_string(actual.size()) + " values agree";
    } else {
        report.ok = false;
        std::ostringstream os;
        os << "mismatch:";
        for (const BigCount& v : actual)
            if (!expected.count(v)) os << " +" << v.get_str();
        for (const BigCount& v : expected)
            if (!actual.count(v)) os << " -" << v.get_str();
        report.detail = os.str();
    }
    return report;
}

namespace {

// Union-find over element labels; comparability edges only ever point from a
// lower label into below[higher].
struct Dsu {
    std::array<std::uint8_t, kHardCap> parent{};
    void init(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint8_t>(i);
    }
    std::uint8_t find(std::uint8_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint8_t a, std::uint8_t b) { parent[find(a)] = find(b); }
};

std::array<std::uint8_t, kHardCap> component_sizes(const MaskPoset& p, std::size_t& comp_count) {
    Dsu dsu;
    dsu.init(p.n);
    for (std::uint32_t k = 0; k < p.n; ++k)
        for (std::uint16_t rest = p.below[k]; rest;) {
            int x = __builtin_ctz(rest);
            rest &= static_cast<std::uint16_t>(rest - 1);
            dsu.unite(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(k));
        }
    std::array<std::uint8_t, kHardCap> size_of_root{};
    for (std::uint32_t i = 0; i < p.n; ++i) ++size_of_root[dsu.find(static_cast<std::uint8_t>(i))];
    comp_count = 0;
    std::array<std::uint8_t, kHardCap> sizes{};
    for (std::uint32_t i = 0; i < p.n; ++i)
        if (size_of_root[i]) sizes[comp_count++] = size_of_root[i];
    return sizes;
}

}  // namespace

CheckReport verify_lemma61(std::size_t n) {
    CheckReport report;
    report.name = "connected bound n=" + std::to_string(n);
    check_bound(n, SpectrumLimits{kHardCap, true});
    BigCount bound = factorial(n - 1);
    std::vector<std::uint64_t> f;
    std::vector<MaskPoset> equality_cases;
    std::uint64_t connected = 0;
    bool bound_ok = true;
    MaskPoset root;
    extend_to(root, static_cast<std::uint32_t>(n), [&](const MaskPoset& p) {
        std::size_t comps = 0;
        component_sizes(p, comps);
        if (comps != 1) return;
        ++connected;
        std::uint64_t e = ext_of(p, f);
        if (BigCount(static_cast<unsigned long>(e)) > bound) bound_ok = false;
        if (BigCount(static_cast<unsigned long>(e)) == bound) equality_cases.push_back(p);
    });

    // The labeled equality cases: one element below all others must be element
    // 0, one element above all others must be element n-1.
    std::vector<MaskPoset> expected;
    {
        MaskPoset bottom;
        bottom.n = static_cast<std::uint32_t>(n);
        for (std::uint32_t v = 1; v < n; ++v) bottom.below[v] = 1;
        expected.push_back(bottom);
        MaskPoset top;
        top.n = static_cast<std::uint32_t>(n);
        top.below[n - 1] = static_cast<std::uint16_t>((1u << (n - 1)) - 1);
        if (n >= 3) expected.push_back(top);  // coincides with bottom for n <= 2
    }
    auto same = [](const MaskPoset& a, const MaskPoset& b) {
        if (a.n != b.n) return false;
        for (std::uint32_t i = 0; i < a.n; ++i)
            if (a.below[i] != b.below[i]) return false;
        return true;
    };
    bool equality_ok = equality_cases.size() == expected.size();
    if (equality_ok)
        for (const MaskPoset& e : expected) {
            bool found = false;
            for (const MaskPoset& g : equality_cases) found = found || same(e, g);
            equality_ok = equality_ok && found;
        }

    report.ok = bound_ok && equality_ok;
    std::ostringstream os;
    os << connected << " connected posets, " << equality_cases.size() << " at the bound";
    if (!bound_ok) os << "; BOUND EXCEEDED";
    if (!equality_ok) os << "; equality cases differ from the two expected posets";
    report.detail = os.str();
    return report;
}

CheckReport verify_lemma62(std::size_t n) {
    CheckReport report;
    report.name = "component bound n=" + std::to_string(n);
    check_bound(n, SpectrumLimits{kHardCap, true});
    BigCount nf = factorial(n);
    std::vector<std::uint64_t> f;
    bool ok = true;
    std::uint64_t checked = 0;
    MaskPoset root;
    extend_to(root, static_cast<std::uint32_t>(n), [&](const MaskPoset& p) {
        std::size_t comps = 0;
        auto sizes = component_sizes(p, comps);
        std::uint8_t largest = *std::max_element(sizes.begin(), sizes.begin() + comps);
        std::size_t singles = 0;
        for (std::size_t i = 0; i < comps; ++i)
            if (sizes[i] == 1) ++singles;
        // m must not depend on which largest component is designated.
        std::size_t m = singles - (largest == 1 ? 1 : 0);
        for (std::size_t i = 0; i < comps; ++i)
            if (sizes[i] == largest && singles - (sizes[i] == 1 ? 1 : 0) != m) ok = false;
        std::uint64_t e = ext_of(p, f);
        if (BigCount(static_cast<unsigned long>(e)) * (n - m) > nf) ok = false;
        ++checked;
    });
    report.ok = ok;
    report.detail = std::to_string(checked) + " posets checked";
    return report;
}

std::string spectrum_to_json(const Spectrum& s) {
    std::ostringstream out;
    out << "{\"n\":" << s.n << ",\"values\":[";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out << (i ? "," : "") << '"' << s.values[i].get_str() << '"';
    out << "],\"poset_count\":" << s.poset_count << ",\"missing\":[";
    BigCount half = factorial(s.n) / 2;
    bool first = true;
    std::size_t idx = 0;
    for (BigCount g = 1; g <= half; ++g) {
        while (idx < s.values.size() && s.values[idx] < g) ++idx;
        if (idx < s.values.size() && s.values[idx] == g) continue;
        out << (first ? "" : ",") << '"' << g.get_str() << '"';
        first = false;
    }
    out << "]}";
    return out.str();
}

std::vector<CheckReport> verify_paper_suite(std::size_t max_n, const SpectrumOptions& opts,
                                            std::size_t family_depth) {
    if (max_n < 2) throw DomainError("suite needs max_n >= 2");
    check_bound(max_n, opts.limits);
    std::vector<CheckReport> reports;

    {
        CheckReport r;
        r.name = "family layers (depth " + std::to_string(family_depth) + ")";
        LayerReport lr = verify_family_layer(family_depth);
        r.ok = lr.ok;
        r.detail = lr.ok ? std::to_string(lr.paths_checked) + " paths verified" : lr.first_failure;
        reports.push_back(std::move(r));
    }

    std::vector<Spectrum> spectra(max_n + 1);
    for (std::size_t n = 1; n <= max_n; ++n) spectra[n] = spectrum(n, opts);

    if (max_n >= 3) {
        CheckReport r;
        r.name = "enumeration count n=3";
        r.ok = spectra[3].poset_count == 7;
        r.detail = "7 naturally-labeled posets expected";
        reports.push_back(std::move(r));

        CheckReport x;
        x.name = "exact spectrum n=3";
        std::vector<BigCount> want{1, 2, 3, 6};
        x.ok = spectra[3].values == want;
        x.detail = "{1,2,3,6}";
        reports.push_back(std::move(x));
    }

    for (std::size_t n = 1; n <= max_n; ++n) {
        const Spectrum& s = spectra[n];
        CheckReport r;
        r.name = "spectrum facts n=" + std::to_string(n);
        BigCount nf = factorial(n);
        bool ok = !s.values.empty() && s.values.front() == 1 && s.values.back() == nf;
        for (std::size_t k = 1; ok && k <= n; ++k)
            ok = std::binary_search(s.values.begin(), s.values.end(), BigCount(static_cast<unsigned long>(k)));
        if (n >= 2) {
            ok = ok && std::binary_search(s.values.begin(), s.values.end(), nf / 2);
            for (const BigCount& v : s.values)
                if (v * 2 > nf && v < nf) ok = false;  // nothing strictly inside (n!/2, n!)
        }
        BigCount missing = smallest_missing(s);
        ok = ok && missing > BigCount(static_cast<unsigned long>(n));
        if (n >= 2) {
            bool contained = std::includes(s.values.begin(), s.values.end(),
                                           spectra[n - 1].values.begin(), spectra[n - 1].values.end());
            ok = ok && contained;
        }
        r.ok = ok;
        r.detail = std::to_string(s.values.size()) + " values, first missing " + missing.get_str();
        reports.push_back(std::move(r));
    }

    for (std::size_t n = 2; n <= max_n; ++n)
        for (std::size_t r = 1; r < n; ++r)
            reports.push_back(verify_theorem63(spectra[n], spectra[r]));

    for (std::size_t n = 1; n <= max_n; ++n) reports.push_back(verify_lemma61(n));
    for (std::size_t n = 1; n <= max_n; ++n) reports.push_back(verify_lemma62(n));

    {
        CheckReport r;
        r.name = "top-interval counts";
        static const std::uint64_t bounds[] = {0, 0, 1, 2, 3, 5, 9, 27};
        bool ok = true;
        std::ostringstream os;
        for (std::size_t n = 2; n <= max_n && n <= 7; ++n) {
            std::uint64_t exact = top_interval_count(spectra[n]);
            if (n == 2)
                ok = ok && exact == 1;
            else
                ok = ok && exact <= bounds[n];
            os << (n > 2 ? ", " : "") << "N(" << n << ")=" << exact;
        }
        r.ok = ok;
        r.detail = os.str();
        reports.push_back(std::move(r));
    }

    return reports;
}

}  // namespace lextent
