#pragma once

/**
 * @file vnr.hpp
 * @brief (m,n)-von Neumann regular elements and rings, and B_k profiles.
 *
 * x is (m,n)-vnr when x^m r = x^n for some r. The set of such pairs for
 * one element (or for all elements at once) always has the shape
 *
 *     B_k = { (m,n) : m <= n or n >= k },   B_omega = { (m,n) : m <= n }.
 *
 * Finite rings never produce B_omega: every element has a finite k.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "closure.hpp"
#include "error.hpp"
#include "ideal.hpp"

namespace closure_lab {

/// B_k for a positive integer k, or B_omega when `k` is empty.
class VnrProfile {
public:
    static VnrProfile bounded(unsigned k) {
        if (k < 1) throw PreconditionError("profile index must be positive");
        return VnrProfile(k);
    }
    static VnrProfile omega() { return VnrProfile(std::nullopt); }

    bool is_omega() const noexcept { return !k_; }
    std::optional<unsigned> k() const noexcept { return k_; }

    /// Membership of (m,n) in the pair set.
    bool contains(unsigned m, unsigned n) const noexcept { return m <= n || (k_ && n >= *k_); }

    /// "B(3)" or "B(omega)".
    std::string to_string() const {
        return k_ ? "B(" + std::to_string(*k_) + ")" : std::string("B(omega)");
    }

    static VnrProfile parse(std::string_view text) {
        if (text == "B(omega)") return omega();
        if (text.size() > 3 && text.substr(0, 2) == "B(" && text.back() == ')') {
            auto digits = text.substr(2, text.size() - 3);
            unsigned k = 0;
            for (char c : digits) {
                if (c < '0' || c > '9') throw ParseError("bad profile '" + std::string(text) + "'", 2);
                k = k * 10 + static_cast<unsigned>(c - '0');
            }
            return bounded(k);
        }
        throw ParseError("bad profile '" + std::string(text) + "'", 0);
    }

    friend bool operator==(const VnrProfile&, const VnrProfile&) = default;

private:
    explicit VnrProfile(std::optional<unsigned> k) : k_(k) {}
    std::optional<unsigned> k_;
};

/// Searches r with x^m r = x^n; the witness is the first such r.
inline Decision is_mn_vnr(const FiniteRing& ring, Element x, unsigned m, unsigned n) {
    if (!ring.contains(x)) throw ForeignElement();
    if (m < 1 || n < 1) throw PreconditionError("m and n must be positive");
    const std::uint32_t xm = ring.power_index(x.index(), m);
    const std::uint32_t xn = ring.power_index(x.index(), n);
    for (std::uint32_t r = 0; r < ring.order(); ++r)
        if (ring.mul_index(xm, r) == xn) return {true, ring.element(r)};
    return {false, std::nullopt};
}

/// B_k with k the smallest n such that x is (n+1, n)-vnr.
inline VnrProfile vnr_profile_element(const FiniteRing& ring, Element x) {
    for (unsigned n = 1; n <= ring.order() + 1; ++n)
        if (is_mn_vnr(ring, x, n + 1, n)) return VnrProfile::bounded(n);
    throw std::logic_error("power sequence failed to stabilise in a finite ring");
}

/// Every element is (m,n)-vnr. The witness is the first element that is not.
inline Decision is_mn_regular_ring(const FiniteRing& ring, unsigned m, unsigned n) {
    for (Element x : ring.elements())
        if (!is_mn_vnr(ring, x, m, n)) return {false, x};
    return {};
}

struct RegularityReport {
    std::string ring_spec;
    VnrProfile profile = VnrProfile::bounded(1);
    bool strongly_pi_regular = true;
    /// First element whose own profile index equals the ring's.
    Element per_element_max_witness;
};

inline RegularityReport regularity_report(const FiniteRing& ring) {
    unsigned best = 0;
    Element witness = ring.zero();
    for (Element x : ring.elements()) {
        unsigned k = *vnr_profile_element(ring, x).k();
        if (k > best) {
            best = k;
            witness = x;
        }
    }
    return {ring.spec_string(), VnrProfile::bounded(best), true, witness};
}

/// V(R): the intersection of the element profiles, i.e. B_max(k_x).
inline VnrProfile vnr_profile_ring(const FiniteRing& ring) { return regularity_report(ring).profile; }

struct StronglyPiRegular {
    bool holds = false;
    unsigned n = 0;
};

/// Smallest n with every x satisfying x^{2n} r = x^n, found by search.
inline StronglyPiRegular is_strongly_pi_regular(const FiniteRing& ring) {
    for (unsigned n = 1; n <= ring.order(); ++n)
        if (is_mn_regular_ring(ring, 2 * n, n)) return {true, n};
    return {false, 0};
}

/// Every enumerated proper ideal is (m,n)-closed; empty when the
/// enumeration is incomplete.
inline std::optional<bool> all_proper_ideals_closed(const IdealEnumeration& en, unsigned m,
                                                    unsigned n) {
    if (!en.complete) return std::nullopt;
    for (const Ideal& i : en.ideals)
        if (i.is_proper() && !is_mn_closed(i, m, n)) return false;
    return true;
}

inline std::optional<bool> all_proper_ideals_weakly_closed_direct(const IdealEnumeration& en,
                                                                  unsigned m, unsigned n) {
    if (!en.complete) return std::nullopt;
    for (const Ideal& i : en.ideals)
        if (i.is_proper() && !is_weakly_mn_closed(i, m, n)) return false;
    return true;
}

/// w^e = 0 for every nilpotent w.
inline bool nil_exponent_bounded(const FiniteRing& ring, unsigned e) {
    for (Element w : ring.nilradical())
        if (ring.power(w, e) != ring.zero()) return false;
    return true;
}

/// Every non-nilpotent element is (m,n)-vnr and w^m = 0 on Nil(R).
inline bool weak_closure_characterization(const FiniteRing& ring, unsigned m, unsigned n) {
    if (!nil_exponent_bounded(ring, m)) return false;
    for (Element x : ring.elements())
        if (!ring.is_nilpotent(x) && !is_mn_vnr(ring, x, m, n)) return false;
    return true;
}

struct WeakClosureVerdict {
    /// Direct check over the ideal enumeration, when it is complete.
    std::optional<bool> via_ideals;
    bool via_characterization = false;

    bool value() const noexcept { return via_characterization; }
    bool agree() const noexcept { return !via_ideals || *via_ideals == via_characterization; }
};

/// "Every proper ideal is weakly (m,n)-closed", for m > n, decided both
/// directly and through the element characterization.
inline WeakClosureVerdict all_proper_ideals_weakly_closed(const RingPtr& ring, unsigned m,
                                                          unsigned n,
                                                          const EnumerationOptions& opts = {}) {
    if (m <= n) throw PreconditionError("requires m > n");
    WeakClosureVerdict v;
    v.via_ideals = all_proper_ideals_weakly_closed_direct(enumerate_ideals(ring, opts), m, n);
    v.via_characterization = weak_closure_characterization(*ring, m, n);
    return v;
}

}  // namespace closure_lab
