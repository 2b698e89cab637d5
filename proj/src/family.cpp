#include "lextent/family.hpp"

#include <map>
#include <sstream>

#include "lextent/errors.hpp"

namespace lextent {

DyadicPath DyadicPath::parse(std::string_view text) {
    DyadicPath p;
    p.bits.reserve(text.size());
    for (char c : text) {
        if (c == '0')
            p.bits.push_back(0);
        else if (c == '1')
            p.bits.push_back(1);
        else
            throw DomainError("path digit must be 0 or 1");
    }
    if (!p.canonical()) throw DomainError("path must be empty or end in 1");
    return p;
}

std::string DyadicPath::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

static void require_canonical(const DyadicPath& path) {
    if (!path.canonical()) throw DomainError("path must be empty or end in 1");
}

FamilyPoset build_family_poset(const DyadicPath& path) {
    require_canonical(path);
    FamilyPoset fp;
    fp.poset = Poset::antichain(1);
    fp.right_chain = {0};
    fp.R = 0;
    if (path.bits.empty()) return fp;

    auto shift_state = [&fp] {
        // Every step inserts the new element in front, so existing ids move up
        // by one.
        for (auto& e : fp.left_chain) ++e;
        for (auto& e : fp.right_chain) ++e;
        if (fp.L) ++*fp.L;
        ++fp.R;
    };
    const Poset unit = Poset::antichain(1);

    // Stage 2 base case: a two-chain L < R.
    fp.poset = unit.direct_sum(fp.poset);
    shift_state();
    fp.left_chain = {0};
    fp.L = 0;

    // The final 1 only terminates the expansion; the moves are the bits before
    // it.
    for (std::size_t i = 0; i + 1 < path.bits.size(); ++i) {
        if (path.bits[i] == 0) {
            // Left move: x below everything except L, extending the right
            // chain downward.
            fp.poset = unit.pinned_direct_sum(0, fp.poset, *fp.L);
            shift_state();
            fp.right_chain.insert(fp.right_chain.begin(), 0);
            fp.R = 0;
        } else if (fp.poset.is_minimal(fp.R)) {
            // Right move: x below everything except R, extending the left
            // chain downward.
            fp.poset = unit.pinned_direct_sum(0, fp.poset, fp.R);
            shift_state();
            fp.left_chain.insert(fp.left_chain.begin(), 0);
            fp.L = 0;
        } else {
            // R already has something under it (the all-right-moves chains),
            // so exempting it would duplicate an existing poset; x goes below
            // everything.
            fp.poset = unit.direct_sum(fp.poset);
            shift_state();
            fp.left_chain.insert(fp.left_chain.begin(), 0);
            fp.L = 0;
        }
    }
    return fp;
}

Fraction stern_brocot_entry(const DyadicPath& path) {
    require_canonical(path);
    if (path.bits.empty()) return {0, 1};
    Fraction low{0, 1};
    Fraction high{1, 1};
    Fraction cur{1, 2};
    for (std::size_t i = 0; i + 1 < path.bits.size(); ++i) {
        if (path.bits[i] == 0) {
            high = cur;
            cur = {low.s + high.s, low.t + high.t};
        } else {
            low = cur;
            cur = {low.s + high.s, low.t + high.t};
        }
    }
    return cur;
}

BigCount tree_ext(const DyadicPath& path) {
    Fraction f = stern_brocot_entry(path);
    return f.t - f.s;
}

std::pair<DyadicPath, DyadicPath> children(const DyadicPath& path) {
    require_canonical(path);
    if (path.bits.empty()) throw NoChildrenError("stage-1 path has a single successor, not two");
    DyadicPath minus = path;
    minus.bits.back() = 0;
    minus.bits.push_back(1);
    DyadicPath plus = path;
    plus.bits.push_back(1);
    return {minus, plus};
}

BigCount count_family_poset(const FamilyPoset& fp) {
    return count_extensions_width2(fp.poset, {fp.left_chain, fp.right_chain});
}

namespace detail {

DyadicPath recursion_neighbor_below(const DyadicPath& path) {
    if (path.bits.empty()) throw DomainError("the stage-1 path has no neighbors");
    // b - 2^(1-stage): remove the final 1, then drop trailing zeros.
    DyadicPath out = path;
    out.bits.pop_back();
    while (!out.bits.empty() && out.bits.back() == 0) out.bits.pop_back();
    return out;
}

std::optional<DyadicPath> recursion_neighbor_above(const DyadicPath& path) {
    // b + 2^(1-stage): binary increment at the last position; all-ones
    // overflows to b = 1.
    DyadicPath out = path;
    std::size_t i = out.bits.size();
    while (i > 0 && out.bits[i - 1] == 1) {
        out.bits[i - 1] = 0;
        --i;
    }
    if (i == 0) return std::nullopt;
    out.bits[i - 1] = 1;
    while (!out.bits.empty() && out.bits.back() == 0) out.bits.pop_back();
    return out;
}

LayerReport verify_family_layer_impl(std::size_t depth, const FamilyMutator& mutate) {
    if (depth < 2) throw DomainError("layer verification needs depth >= 2");
    if (depth > 26) throw TooLargeError("layer verification enumerates 2^(depth-1) paths; depth capped at 26");
    LayerReport report;
    std::map<std::vector<std::uint8_t>, BigCount> counted;

    auto fail = [&report](const DyadicPath& path, const std::string& what) {
        report.ok = false;
        if (report.first_failure.empty())
            report.first_failure = "path " + (path.bits.empty() ? std::string("(empty)") : path.to_string()) + ": " + what;
    };

    auto check_one = [&](const DyadicPath& path) {
        FamilyPoset fp = build_family_poset(path);
        if (mutate) mutate(path, fp);
        BigCount ext = count_family_poset(fp);
        counted[path.bits] = ext;
        ++report.paths_checked;

        if (path.stage() >= 2) {
            BigCount below = counted.at(recursion_neighbor_below(path).bits);
            BigCount above = 0;
            if (auto up = recursion_neighbor_above(path)) above = counted.at(up->bits);
            if (ext != below + above)
                fail(path, "recursion mismatch: " + ext.get_str() + " != " + below.get_str() + " + " + above.get_str());
        }
        BigCount expect = tree_ext(path);
        if (ext != expect)
            fail(path, "tree entry mismatch: counted " + ext.get_str() + ", tree " + expect.get_str());
        if (fp.poset.width() > 2) fail(path, "width exceeds 2");
    };

    check_one(DyadicPath{});
    // Stage n has the 2^(n-2) canonical paths of length n-1; lexicographic
    // enumeration visits every neighbor of a stage before the stage itself
    // needs it, because both neighbors live at strictly earlier stages.
    for (std::size_t stage = 2; stage <= depth; ++stage) {
        std::size_t vary = stage - 2;  // free bits before the final 1
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << vary); ++code) {
            DyadicPath path;
            path.bits.resize(vary + 1, 0);
            for (std::size_t j = 0; j < vary; ++j)
                path.bits[j] = static_cast<std::uint8_t>((code >> (vary - 1 - j)) & 1);
            path.bits[vary] = 1;
            check_one(path);
        }
    }
    return report;
}

}  // namespace detail

LayerReport verify_family_layer(std::size_t depth) {
    return detail::verify_family_layer_impl(depth, nullptr);
}

}  // namespace lextent
