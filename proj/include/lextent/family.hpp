#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lextent/bigcount.hpp"
#include "lextent/count.hpp"
#include "lextent/poset.hpp"

namespace lextent {

// Binary path b = 0.b2 b3 ... bn addressing one poset of the recursive
// width-2 family. The empty path is b = 0; a nonempty canonical path ends in
// a 1 bit (terminating expansion). stage(path) = length + 1 = |P_b|. The bits
// before the final 1 are the descent moves from the stage-2 base poset:
// 0 steps to b - 2^-n (left), 1 steps to b + 2^-n (right).
struct DyadicPath {
    std::vector<std::uint8_t> bits;

    static DyadicPath parse(std::string_view text);  // e.g. "011"; DomainError on junk

    bool canonical() const { return bits.empty() || bits.back() == 1; }
    std::size_t stage() const { return bits.size() + 1; }
    std::string to_string() const;

    bool operator==(const DyadicPath&) const = default;
    bool operator<(const DyadicPath& o) const { return bits < o.bits; }
};

// Reduced fraction from the left half of the mediant tree; 0 <= s <= t.
struct Fraction {
    BigCount s;
    BigCount t;
    std::string to_string() const { return s.get_str() + "/" + t.get_str(); }
    bool operator==(const Fraction&) const = default;
};

// A family poset with its two covering chains, each listed bottom to top.
// L and R are the minimal elements of the left and right chains; L is absent
// at stage 1 where only the right chain exists.
struct FamilyPoset {
    Poset poset;
    std::vector<ElementId> left_chain;
    std::vector<ElementId> right_chain;
    std::optional<ElementId> L;
    ElementId R = 0;
};

// Builds P_b by the recursive construction: stage 1 is a single element, stage
// 2 puts L below R, and each descent move adds a new global-minimum-like
// element x. A left move makes x smaller than everything except L (x becomes
// the new R); a right move makes x smaller than everything except R (x becomes
// the new L). When R is not minimal (exactly the all-ones chain posets) the
// right move instead puts x below everything. Throws DomainError on a
// non-canonical path.
FamilyPoset build_family_poset(const DyadicPath& path);

// The tree entry s_b/t_b by mediant navigation, O(stage) big-integer steps.
// Boundary conventions: entry(b=0) = 0/1 and entry(b=1) = 1/1, pinned so that
// t - s matches ext at both ends of each layer.
Fraction stern_brocot_entry(const DyadicPath& path);

// t_b - s_b; equals the extension count of build_family_poset(path).
BigCount tree_ext(const DyadicPath& path);

// The two stage-(n+1) successors (b - 2^-n, b + 2^-n) of a stage-n path.
// Throws NoChildrenError at stage 1: the lone stage-1 poset has a single
// successor, the stage-2 base case.
std::pair<DyadicPath, DyadicPath> children(const DyadicPath& path);

// Counts the extensions of a constructed family poset through the width-2
// engine using its own chain pair.
BigCount count_family_poset(const FamilyPoset& fp);

struct LayerReport {
    bool ok = true;
    std::size_t paths_checked = 0;
    std::string first_failure;  // empty when ok
};

// For every canonical path of stage <= depth, checks that (i) the counted
// extension number satisfies the parent-sum recursion (with the b = 1
// convention contributing 0), (ii) the counted value equals tree_ext, and
// (iii) the poset has width <= 2.
LayerReport verify_family_layer(std::size_t depth);

namespace detail {
// Testing seam: the mutator may corrupt a constructed poset before the layer
// checks run, so negative controls can prove the checks reject bad builds.
using FamilyMutator = std::function<void(const DyadicPath&, FamilyPoset&)>;
LayerReport verify_family_layer_impl(std::size_t depth, const FamilyMutator& mutate);

// Neighbor paths used by the recursion check: b -/+ 2^(1-stage), i.e. binary
// decrement/increment of the bit string. Increment returns nullopt at b = 1.
DyadicPath recursion_neighbor_below(const DyadicPath& path);
std::optional<DyadicPath> recursion_neighbor_above(const DyadicPath& path);
}  // namespace detail

}  // namespace lextent
