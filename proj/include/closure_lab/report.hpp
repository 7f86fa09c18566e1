#pragma once

/**
 * @file report.hpp
 * @brief Text and line-delimited JSON renderings of reports and verdicts.
 */

#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "closure.hpp"
#include "harness.hpp"
#include "vnr.hpp"

namespace closure_lab {

using Record = nlohmann::ordered_json;

enum class OutputFormat { text, machine };

inline Record check_record(const ClosednessReport& rep) {
    const FiniteRing& r = rep.ideal.ring();
    Record j;
    j["ring_spec"] = r.spec_string();
    j["ideal_gens"] = to_string(rep.ideal.generator_literals());
    j["ideal"] = rep.ideal.to_string();
    j["m"] = rep.m;
    j["n"] = rep.n;
    j["status"] = std::string(to_string(rep.status));
    if (rep.witness) j["witness"] = r.to_string(*rep.witness);
    return j;
}

inline std::string check_text(const ClosednessReport& rep) {
    const FiniteRing& r = rep.ideal.ring();
    std::string s = r.spec_string() + "  I = (" + to_string(rep.ideal.generator_literals()) + ") = " +
                    rep.ideal.to_string() + "  (m,n) = " + detail::pair_str(rep.m, rep.n) + "  " +
                    std::string(to_string(rep.status));
    if (rep.witness) s += "  witness " + r.to_string(*rep.witness);
    return s;
}

inline Record ring_profile_record(const FiniteRing& ring, const RegularityReport& rep) {
    Record j;
    j["ring_spec"] = rep.ring_spec;
    j["profile"] = rep.profile.to_string();
    j["strongly_pi_regular"] = rep.strongly_pi_regular;
    j["witness"] = ring.to_string(rep.per_element_max_witness);
    return j;
}

inline std::string ring_profile_text(const FiniteRing& ring, const RegularityReport& rep) {
    std::string s = rep.ring_spec + "  V(R) = " + rep.profile.to_string();
    if (auto k = rep.profile.k()) s += "  (" + std::to_string(*k) + "-regular)";
    s += "  strongly pi-regular: ";
    s += rep.strongly_pi_regular ? "yes" : "no";
    s += "  witness " + ring.to_string(rep.per_element_max_witness);
    return s;
}

inline Record element_profile_record(const FiniteRing& ring, Element x, const VnrProfile& p) {
    Record j;
    j["ring_spec"] = ring.spec_string();
    j["element"] = ring.to_string(x);
    j["profile"] = p.to_string();
    return j;
}

inline std::string element_profile_text(const FiniteRing& ring, Element x, const VnrProfile& p) {
    return ring.spec_string() + "  V(R," + ring.to_string(x) + ") = " + p.to_string();
}

inline Record counterexample_record(const Counterexample& ce) {
    Record j;
    j["ring_spec"] = ce.ring;
    j["ideals"] = ce.ideals;
    if (ce.element) j["element"] = *ce.element;
    if (ce.m) {
        j["m"] = ce.m;
        j["n"] = ce.n;
    }
    if (!ce.params.empty()) j["params"] = ce.params;
    j["detail"] = ce.detail;
    return j;
}

inline Record verdict_record(const TheoremVerdict& v) {
    Record j;
    j["theorem_id"] = v.theorem_id;
    j["instances_checked"] = v.instances_checked;
    j["vacuous_count"] = v.vacuous_count;
    j["skipped_count"] = v.skipped_count;
    j["status"] = std::string(to_string(v.status));
    if (v.counterexample) {
        j["counterexample"] = counterexample_record(*v.counterexample);
        j["replay_confirmed"] = v.replay_confirmed;
    }
    return j;
}

inline std::string verdict_text(const TheoremVerdict& v) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-15s %-7s checked %9llu  substantive %9llu  vacuous %9llu  skipped %6llu",
                  v.theorem_id.c_str(), std::string(to_string(v.status)).c_str(),
                  static_cast<unsigned long long>(v.instances_checked),
                  static_cast<unsigned long long>(v.substantive_count()),
                  static_cast<unsigned long long>(v.vacuous_count),
                  static_cast<unsigned long long>(v.skipped_count));
    std::string s = buf;
    if (const auto& ce = v.counterexample) {
        s += "\n    counterexample: " + ce->ring;
        for (const auto& g : ce->ideals) s += "  ideal (" + g + ")";
        if (ce->element) s += "  x = " + *ce->element;
        if (ce->m) s += "  (m,n) = " + detail::pair_str(ce->m, ce->n);
        if (!ce->params.empty()) {
            s += "  params";
            for (auto p : ce->params) s += " " + std::to_string(p);
        }
        s += "\n    " + ce->detail;
        s += v.replay_confirmed ? "  [replay confirmed]" : "  [replay did NOT reproduce]";
    }
    return s;
}

struct SuiteSummary {
    std::size_t theorems = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;

    void add(const TheoremVerdict& v) {
        ++theorems;
        switch (v.status) {
            case VerdictStatus::pass: ++passed; break;
            case VerdictStatus::fail: ++failed; break;
            case VerdictStatus::skipped: ++skipped; break;
        }
    }
    bool all_pass() const noexcept { return failed == 0 && skipped == 0; }
};

inline Record summary_record(const SuiteSummary& s) {
    Record j;
    j["summary"] = {{"theorems", s.theorems}, {"pass", s.passed}, {"fail", s.failed}, {"skipped", s.skipped}};
    return j;
}

inline std::string summary_text(const SuiteSummary& s) {
    return std::to_string(s.theorems) + " theorems: " + std::to_string(s.passed) + " pass, " +
           std::to_string(s.failed) + " fail, " + std::to_string(s.skipped) + " skipped";
}

inline Record search_record(const SearchWitness& w) {
    Record j;
    j["predicate"] = w.predicate;
    j["ring_spec"] = w.ring;
    j["ideal_gens"] = w.ideal_gens;
    j["ideal"] = w.ideal;
    j["m"] = w.m;
    j["n"] = w.n;
    j["detail"] = w.detail;
    return j;
}

inline std::string search_text(const SearchWitness& w) {
    return w.ring + "  " + w.ideal + "  (m,n) = " + detail::pair_str(w.m, w.n) + "  " + w.detail;
}

}  // namespace closure_lab
