#pragma once

/**
 * @file cli.hpp
 * @brief The closure_lab command line. `run_cli` is the whole program minus
 * main(), so tests can drive it with string streams.
 *
 * Exit codes: 0 success, 1 usage / parse / cap error, 2 property false or
 * theorem failed.
 */

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "closure.hpp"
#include "harness.hpp"
#include "report.hpp"
#include "vnr.hpp"

namespace closure_lab {

namespace detail {

struct Range {
    unsigned lo = 1;
    unsigned hi = 1;
};

/// "3" or "2..5".
inline Range parse_range(const std::string& text, const char* what) {
    auto dots = text.find("..");
    Range r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = static_cast<unsigned>(parse_uint(text, 0));
        } else {
            r.lo = static_cast<unsigned>(parse_uint(std::string_view(text).substr(0, dots), 0));
            r.hi = static_cast<unsigned>(parse_uint(std::string_view(text).substr(dots + 2), dots + 2));
        }
    } catch (const ParseError& e) {
        throw ParseError(std::string("bad ") + what + " range '" + text + "'", e.position());
    }
    if (r.lo < 1 || r.hi < r.lo) throw SpecError(std::string(what) + " range must satisfy 1 <= lo <= hi");
    return r;
}

inline unsigned resolve_workers(std::optional<unsigned> flag) {
    if (flag) return std::max(1u, *flag);
    if (const char* env = std::getenv("CLOSURE_LAB_WORKERS")) {
        try {
            return std::max<unsigned>(1, static_cast<unsigned>(parse_uint(env, 0)));
        } catch (const ParseError&) {
            throw SpecError(std::string("CLOSURE_LAB_WORKERS must be a positive integer, got '") + env + "'");
        }
    }
    return default_workers();
}

inline void caret(std::ostream& err, const std::string& input, std::size_t pos) {
    err << "  " << input << "\n  " << std::string(std::min(pos, input.size()), ' ') << "^\n";
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite commutative rings: (m,n)-closed ideals, (m,n)-vnr profiles and theorem checks",
                 "closure_lab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<unsigned> workers;
    std::string format = "text";
    std::uint64_t max_order = BuildOptions{}.max_order;
    app.add_option("--workers", workers, "worker threads (default: $CLOSURE_LAB_WORKERS, else all cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--max-order", max_order, "largest ring order to build")->check(CLI::PositiveNumber);

    std::string ring, ideal, element, m_text, n_text, theorems = "all", family = "default", predicate;
    unsigned m = 1, n = 1;

    auto* check = app.add_subcommand("check", "classify one ideal for one (m,n)");
    check->add_option("--ring", ring, "ring spec, e.g. \"Z8 x Z4\"")->required();
    check->add_option("--ideal", ideal, "generators, comma separated")->required();
    check->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    check->add_option("--n", n)->required()->check(CLI::PositiveNumber);

    auto* classify_cmd = app.add_subcommand("classify", "classify ideals over ranges of m and n");
    classify_cmd->add_option("--ring", ring)->required();
    classify_cmd->add_option("--ideal", ideal, "generators (default: every proper ideal)");
    classify_cmd->add_option("--m", m_text, "value or range lo..hi")->required();
    classify_cmd->add_option("--n", n_text, "value or range lo..hi")->required();

    auto* profile = app.add_subcommand("profile", "(m,n)-vnr profile of a ring or an element");
    profile->add_option("--ring", ring)->required();
    profile->add_option("--element", element);

    auto* verify = app.add_subcommand("verify", "run the theorem suite");
    verify->add_option("--theorems", theorems, "\"all\" or comma separated ids");
    verify->add_option("--family", family, "\"default\" or a family config path");

    auto* search = app.add_subcommand("search", "search for witnesses of a non-theorem");
    search->add_option("--predicate", predicate)
        ->required()
        ->check(CLI::IsMember(search_predicates()));
    search->add_option("--family", family, "\"default\" or a family config path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const bool machine = format == "machine";
    std::string current_input;
    try {
        BuildOptions build{max_order};
        auto build_named = [&](const std::string& text) {
            current_input = text;
            auto r = build_ring(text, build);
            current_input.clear();
            return r;
        };
        auto ideal_of = [&](const RingPtr& r, const std::string& gens) {
            current_input = gens;
            auto i = ideal_from_literals(r, parse_element_literals(gens));
            current_input.clear();
            return i;
        };

        if (*check) {
            auto r = build_named(ring);
            auto I = ideal_of(r, ideal);
            auto rep = classify(I, m, n);
            out << (machine ? check_record(rep).dump() : check_text(rep)) << "\n";
            return rep.status == ClosureStatus::not_weakly ? 2 : 0;
        }

        if (*classify_cmd) {
            auto mr = detail::parse_range(m_text, "m");
            auto nr = detail::parse_range(n_text, "n");
            auto r = build_named(ring);
            std::vector<Ideal> ideals;
            if (!ideal.empty()) {
                ideals.push_back(ideal_of(r, ideal));
            } else {
                auto en = enumerate_ideals(r);
                if (!en.complete) err << "warning: ideal enumeration is incomplete for " << r->spec_string() << "\n";
                for (auto& i : en.ideals)
                    if (i.is_proper()) ideals.push_back(std::move(i));
            }
            for (const Ideal& I : ideals)
                for (unsigned a = mr.lo; a <= mr.hi; ++a)
                    for (unsigned b = nr.lo; b <= nr.hi; ++b) {
                        auto rep = classify(I, a, b);
                        out << (machine ? check_record(rep).dump() : check_text(rep)) << "\n";
                    }
            return 0;
        }

        if (*profile) {
            auto r = build_named(ring);
            if (!element.empty()) {
                current_input = element;
                Element x = r->parse_element(element);
                current_input.clear();
                auto p = vnr_profile_element(*r, x);
                out << (machine ? element_profile_record(*r, x, p).dump() : element_profile_text(*r, x, p)) << "\n";
            } else {
                auto rep = regularity_report(*r);
                out << (machine ? ring_profile_record(*r, rep).dump() : ring_profile_text(*r, rep)) << "\n";
            }
            return 0;
        }

        if (*verify) {
            InstanceFamily fam = load_family(family);
            fam.max_order = std::min(fam.max_order, max_order);
            const unsigned w = detail::resolve_workers(workers);
            SuiteSummary summary;
            for (const auto& id : resolve_theorem_ids(theorems)) {
                auto v = verify_theorem(id, fam, w);
                summary.add(v);
                out << (machine ? verdict_record(v).dump() : verdict_text(v)) << std::endl;
            }
            out << (machine ? summary_record(summary).dump() : summary_text(summary)) << "\n";
            return summary.all_pass() ? 0 : 2;
        }

        if (*search) {
            InstanceFamily fam = load_family(family);
            fam.max_order = std::min(fam.max_order, max_order);
            auto found = search_counterexamples(predicate, fam, detail::resolve_workers(workers));
            for (const auto& w : found) out << (machine ? search_record(w).dump() : search_text(w)) << "\n";
            if (!machine) out << found.size() << " witnesses\n";
            return found.empty() ? 2 : 0;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        if (!current_input.empty()) detail::caret(err, current_input, e.position());
        return 1;
    } catch (const CapExceeded& e) {
        err << "order cap exceeded: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace closure_lab
