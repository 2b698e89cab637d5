#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lextent/bigcount.hpp"
#include "lextent/poset.hpp"

namespace lextent {

// Enumeration works over naturally-labeled posets (identity is a linear
// extension): every isomorphism class on {0..n-1} appears, each labeled poset
// exactly once, which is all a set of extension counts needs.
inline constexpr const char* spectrum_generator_version = "ideal-extension-v1";

struct SpectrumLimits {
    std::size_t max_n = 7;
    bool allow_large = false;  // lifts the bound to n = 8 (minutes, not hours)
};

struct Spectrum {
    std::size_t n = 0;
    std::vector<BigCount> values;  // sorted ascending
    std::string generator_version;
    std::uint64_t poset_count = 0;
};

struct SpectrumOptions {
    SpectrumLimits limits;
    unsigned workers = 1;
    std::string cache_dir;  // empty disables the on-disk cache
};

// Yields every naturally-labeled n-element poset exactly once, built by
// adding element k with an arbitrary order ideal of the current poset as its
// down-set. Counts: 1, 2, 7, 40, 357, 4824, 96428 for n = 1..7.
void enumerate_natural_posets(std::size_t n,
                              const std::function<void(const Poset&)>& yield,
                              const SpectrumLimits& limits = {});

// The exact set of achievable extension counts over all n-element posets.
// Cached to disk when cache_dir is set, keyed by n and generator version.
// Workers partition on a fixed enumeration prefix and merge by set union, so
// the result is identical for any worker count.
Spectrum spectrum(std::size_t n, const SpectrumOptions& opts = {});

// Restriction of the spectrum to posets of width <= 2 (exploratory only).
Spectrum spectrum_width2(std::size_t n, const SpectrumOptions& opts = {});

// Least positive integer absent from the spectrum.
BigCount smallest_missing(const Spectrum& s);

// Number of spectrum values in ((n-1)!, n!].
std::uint64_t top_interval_count(const Spectrum& s);

struct CheckReport {
    std::string name;
    bool ok = true;
    std::string detail;
};

// Set equality between the top slice of the n-spectrum and the scaled top
// slice of the r-spectrum: values above n!/(r+1) are exactly (n!/r!) times the
// r-values above r!/(r+1).
CheckReport verify_theorem63(const Spectrum& sn, const Spectrum& sr);

// Every connected n-poset has at most (n-1)! extensions, with equality exactly
// at the one-below-all and one-above-all posets.
CheckReport verify_lemma61(std::size_t n);

// Component-count bound: with m the number of singleton components other than
// a largest component, ext <= n!/(n-m); the choice of largest component is
// re-verified to be immaterial.
CheckReport verify_lemma62(std::size_t n);

// CLI JSON: {"n":..., "values":[...], "poset_count":..., "missing":[...]},
// decimal strings throughout; missing lists the gaps up to n!/2.
std::string spectrum_to_json(const Spectrum& s);

// The umbrella suite: family-layer checks plus every spectrum-level fact at
// desk scale (containments, gap structure, top-slice equalities, the two
// lemmas, and the top-interval count chain).
std::vector<CheckReport> verify_paper_suite(std::size_t max_n,
                                            const SpectrumOptions& opts = {},
                                            std::size_t family_depth = 12);

}  // namespace lextent
