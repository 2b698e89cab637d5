#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lextent/construct.hpp"
#include "lextent/count.hpp"
#include "lextent/errors.hpp"
#include "lextent/euclid.hpp"
#include "lextent/family.hpp"
#include "lextent/poset_io.hpp"
#include "lextent/spectrum.hpp"

namespace {

// Exit codes: 0 ok, 1 usage/input error, 2 too large, 3 infeasible size,
// 4 verification failure.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kTooLarge = 2;
constexpr int kInfeasible = 3;
constexpr int kVerifyFail = 4;

lextent::BigCount parse_big(const std::string& text) {
    if (text.empty()) throw lextent::DomainError("empty number");
    for (char c : text)
        if (c < '0' || c > '9') throw lextent::DomainError("not a decimal number: " + text);
    return lextent::BigCount(text, 10);
}

std::string path_display(const lextent::DyadicPath& path) {
    return path.bits.empty() ? std::string("0") : "0." + path.to_string();
}

int run_count(const std::string& file, const std::string& engine, std::size_t max_elements,
              std::size_t max_ideals) {
    lextent::Poset p = lextent::read_poset_file(file);
    lextent::BigCount result;
    if (engine == "brute") {
        result = lextent::count_extensions_bruteforce(p);
    } else if (engine == "width2") {
        result = lextent::count_extensions_width2(p, lextent::width2_chain_cover(p));
    } else {
        lextent::CountLimits limits;
        limits.max_elements = max_elements;
        limits.max_ideals = max_ideals;
        result = lextent::count_extensions(p, limits);
    }
    std::cout << result.get_str() << "\n";
    return kOk;
}

int run_family(const std::string& path_str, std::size_t verify_depth) {
    if (!path_str.empty()) {
        lextent::DyadicPath path = lextent::DyadicPath::parse(path_str);
        lextent::FamilyPoset fp = lextent::build_family_poset(path);
        lextent::Fraction entry = lextent::stern_brocot_entry(path);
        std::cout << "path " << path_display(path) << "\n"
                  << "size " << fp.poset.size() << "\n"
                  << "entry " << entry.to_string() << "\n"
                  << "tree ext " << lextent::tree_ext(path).get_str() << "\n"
                  << "counted ext " << lextent::count_family_poset(fp).get_str() << "\n";
    }
    if (verify_depth > 0) {
        lextent::LayerReport report = lextent::verify_family_layer(verify_depth);
        std::cout << "layers through stage " << verify_depth << ": " << report.paths_checked
                  << " paths checked\n";
        if (!report.ok) {
            std::cout << "FAIL " << report.first_failure << "\n";
            return kVerifyFail;
        }
        std::cout << "tree entries, recursion, and width invariants all hold\n";
    }
    return kOk;
}

int run_euclid(std::uint64_t n, bool report12, std::uint64_t max_n, const std::string& out,
               bool report51, const std::vector<std::uint64_t>& Ms, unsigned workers) {
    if (report12) {
        lextent::QuotientSumReport report = lextent::theorem12_report(max_n, workers);
        if (!out.empty()) {
            std::ofstream os(out, std::ios::trunc);
            if (!os) throw lextent::Error("cannot write " + out);
            lextent::write_quotient_sum_csv(report, os);
        }
        std::printf("rows 3..%llu (n,d,s_min,normalizer,ratio,log_ratio)\n",
                    static_cast<unsigned long long>(max_n));
        std::printf("max ratio %.6f at n=%llu\n", report.max_ratio,
                    static_cast<unsigned long long>(report.argmax_n));
        std::printf("max s_min/log n %.6f at n=%llu\n", report.max_log_ratio,
                    static_cast<unsigned long long>(report.argmax_log_n));
        return kOk;
    }
    if (report51) {
        lextent::TailRatioReport report = lextent::lemma_M_bound_report(n, Ms);
        std::cout << "n " << report.n << " (M, tail, tail*M/(n log n))\n";
        for (const auto& row : report.rows)
            std::printf("M=%llu tail=%llu ratio=%.6f\n", static_cast<unsigned long long>(row.M),
                        static_cast<unsigned long long>(row.tail), row.ratio);
        std::printf("max ratio %.6f\n", report.max_ratio);
        return kOk;
    }
    lextent::BestQuotientSum best = lextent::best_quotient_sum(n);
    auto rem = lextent::euclidean_sequence(n, best.d);
    auto quo = lextent::quotient_sequence(n, best.d);
    std::cout << "n " << n << "\nphi " << lextent::totient(n) << "\nbest d " << best.d
              << "\ns_min " << best.s << "\nremainders";
    for (auto v : rem) std::cout << ' ' << v;
    std::cout << "\nquotients";
    for (auto v : quo) std::cout << ' ' << v;
    std::cout << "\n";
    return kOk;
}

int run_construct(const std::string& target_str, std::size_t exact_size, bool has_exact,
                  const std::string& out) {
    lextent::BigCount target = parse_big(target_str);
    lextent::ConstructOptions opts;
    if (has_exact) opts.exact_size = exact_size;
    lextent::ConstructionResult result = lextent::poset_for_target(target, opts);

    if (!out.empty()) {
        lextent::write_poset_file(out, result.poset);
    } else {
        lextent::write_poset(std::cout, result.poset);
        std::cout << "\n";
    }
    std::cout << "target " << result.target.get_str() << "\nsize " << result.size << "\n";
    if (result.used_small_gadget) std::cout << "recipe chain-plus-pendant gadget\n";
    for (const auto& block : result.blocks)
        std::cout << "recipe block p=" << block.p.get_str() << " d=" << block.d << " path "
                  << path_display(block.path) << " size " << block.size << "\n";
    if (result.padding > 0) std::cout << "padding " << result.padding << "\n";
    std::cout << "verified ext = " << result.target.get_str() << "\n";
    return kOk;
}

int run_spectrum(std::size_t n, const std::string& cache_dir, const std::string& json_out,
                 unsigned workers, bool allow_large, bool width2) {
    lextent::SpectrumOptions opts;
    opts.workers = workers;
    opts.cache_dir = cache_dir;
    opts.limits.allow_large = allow_large;
    lextent::Spectrum s = width2 ? lextent::spectrum_width2(n, opts) : lextent::spectrum(n, opts);

    if (!json_out.empty()) {
        std::string doc = lextent::spectrum_to_json(s);
        if (json_out == "-") {
            std::cout << doc << "\n";
        } else {
            std::ofstream os(json_out, std::ios::trunc);
            if (!os) throw lextent::Error("cannot write " + json_out);
            os << doc << "\n";
        }
        return kOk;
    }
    std::cout << "n " << s.n << "\nposet count " << s.poset_count << "\nvalues ("
              << s.values.size() << ")";
    for (const auto& v : s.values) std::cout << ' ' << v.get_str();
    std::cout << "\nsmallest missing " << lextent::smallest_missing(s).get_str()
              << "\ntop interval count " << lextent::top_interval_count(s) << "\n";
    return kOk;
}

int run_verify(std::size_t max_n, std::size_t family_depth, const std::string& cache_dir,
               unsigned workers, bool allow_large) {
    lextent::SpectrumOptions opts;
    opts.workers = workers;
    opts.cache_dir = cache_dir;
    opts.limits.allow_large = allow_large;
    auto reports = lextent::verify_paper_suite(max_n, opts, family_depth);
    std::size_t passed = 0;
    for (const auto& r : reports) {
        std::cout << (r.ok ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        if (r.ok) ++passed;
    }
    std::cout << "summary: " << passed << "/" << reports.size() << " checks passed\n";
    return passed == reports.size() ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact linear-extension counting, construction, and spectrum toolkit"};
    app.require_subcommand(1);

    auto* count_cmd = app.add_subcommand("count", "count linear extensions of a poset file");
    std::string count_file;
    std::string engine = "general";
    std::size_t max_elements = lextent::CountLimits{}.max_elements;
    std::size_t max_ideals = lextent::CountLimits{}.max_ideals;
    count_cmd->add_option("file", count_file, "poset v1 file")->required();
    count_cmd->add_option("--engine", engine, "general|width2|brute")
        ->check(CLI::IsMember({"general", "width2", "brute"}));
    count_cmd->add_option("--max-elements", max_elements, "general engine element cap");
    count_cmd->add_option("--max-ideals", max_ideals, "general engine ideal budget");

    auto* family_cmd = app.add_subcommand("family", "width-2 family posets indexed by tree paths");
    std::string path_str;
    std::size_t verify_depth = 0;
    family_cmd->add_option("--path", path_str, "path bits after '0.' (e.g. 011)");
    family_cmd->add_option("--verify-depth", verify_depth, "check every layer through this stage");

    auto* euclid_cmd = app.add_subcommand("euclid", "quotient-sum statistics and reports");
    std::uint64_t euclid_n = 0;
    bool report12 = false, report51 = false;
    std::uint64_t report_max_n = 100000;
    std::string report_out;
    std::vector<std::uint64_t> Ms{1, 10, 100};
    unsigned workers = 1;
    euclid_cmd->add_option("--n", euclid_n, "single-n detail, or the n for --report-lemma51");
    euclid_cmd->add_flag("--report-theorem12", report12, "s_min sweep with normalized ratios");
    euclid_cmd->add_option("--max-n", report_max_n, "sweep bound for --report-theorem12");
    euclid_cmd->add_option("--out", report_out, "CSV output path");
    euclid_cmd->add_flag("--report-lemma51", report51, "quotient histogram tail ratios");
    euclid_cmd->add_option("--M", Ms, "tail cutoffs for --report-lemma51")->delimiter(',');
    euclid_cmd->add_option("--workers", workers, "worker threads");

    auto* construct_cmd = app.add_subcommand("construct", "build a poset with a target count");
    std::string target_str;
    std::size_t exact_size = 0;
    std::string construct_out;
    construct_cmd->add_option("--target", target_str, "decimal target count")->required();
    auto* exact_opt = construct_cmd->add_option("--exact-size", exact_size,
                                                "pad with global minima to exactly this size");
    construct_cmd->add_option("--out", construct_out, "poset v1 output path (default: stdout)");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "achievable extension counts at size n");
    std::size_t spectrum_n = 0;
    std::string cache_dir, json_out;
    unsigned spectrum_workers = 1;
    bool allow_large = false, width2 = false;
    spectrum_cmd->add_option("--n", spectrum_n, "poset size")->required();
    spectrum_cmd->add_option("--cache-dir", cache_dir, "spectrum cache directory")
        ->envname("LEXTENT_CACHE_DIR");
    spectrum_cmd->add_option("--json", json_out, "write JSON here ('-' for stdout)");
    spectrum_cmd->add_option("--workers", spectrum_workers, "worker threads");
    spectrum_cmd->add_flag("--allow-large", allow_large, "permit n = 8 (minutes of work)");
    spectrum_cmd->add_flag("--width2", width2, "restrict to width <= 2 posets (exploratory)");

    auto* verify_cmd = app.add_subcommand("verify", "run the desk-scale verification suite");
    std::string suite = "paper";
    std::size_t verify_max_n = 6, family_depth = 12;
    std::string verify_cache;
    unsigned verify_workers = 1;
    bool verify_allow_large = false;
    verify_cmd->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"paper"}));
    verify_cmd->add_option("--max-n", verify_max_n, "largest spectrum size to check");
    verify_cmd->add_option("--family-depth", family_depth, "family layer depth");
    verify_cmd->add_option("--cache-dir", verify_cache, "spectrum cache directory")
        ->envname("LEXTENT_CACHE_DIR");
    verify_cmd->add_option("--workers", verify_workers, "worker threads");
    verify_cmd->add_flag("--allow-large", verify_allow_large, "permit n = 8 spectra");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (count_cmd->parsed()) return run_count(count_file, engine, max_elements, max_ideals);
        if (family_cmd->parsed()) {
            if (path_str.empty() && verify_depth == 0) {
                std::cerr << "family: need --path or --verify-depth\n";
                return kUsage;
            }
            return run_family(path_str, verify_depth);
        }
        if (euclid_cmd->parsed()) {
            if (!report12 && !report51 && euclid_n == 0) {
                std::cerr << "euclid: need --n or a --report-* flag\n";
                return kUsage;
            }
            return run_euclid(euclid_n, report12, report_max_n, report_out, report51, Ms, workers);
        }
        if (construct_cmd->parsed())
            return run_construct(target_str, exact_size, exact_opt->count() > 0, construct_out);
        if (spectrum_cmd->parsed())
            return run_spectrum(spectrum_n, cache_dir, json_out, spectrum_workers, allow_large,
                                width2);
        if (verify_cmd->parsed())
            return run_verify(verify_max_n, family_depth, verify_cache, verify_workers,
                              verify_allow_large);
        std::cerr << "no subcommand\n";
        return kUsage;
    } catch (const lextent::TooLargeError& e) {
        std::cerr << "too large: " << e.what() << "\n";
        return kTooLarge;
    } catch (const lextent::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const lextent::InternalSearchFailureError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const lextent::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
