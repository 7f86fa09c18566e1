#pragma once

/**
 * @file closure.hpp
 * @brief Deciders for (m,n)-closed, weakly (m,n)-closed, weakly prime,
 * weakly radical and (weakly) n-absorbing ideals.
 *
 * Every decider is exhaustive over the ring and reports the first failing
 * element (or tuple) in canonical order. "Zero" always means the zero of
 * the realized ring, so in R/J it is the coset J itself.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "ideal.hpp"

namespace closure_lab {

struct Decision {
    bool holds = true;
    std::optional<Element> witness;

    explicit operator bool() const noexcept { return holds; }
};

enum class ClosureStatus { closed, weakly_only, not_weakly };

inline std::string_view to_string(ClosureStatus s) {
    switch (s) {
        case ClosureStatus::closed: return "closed";
        case ClosureStatus::weakly_only: return "weakly_only";
        case ClosureStatus::not_weakly: return "not_weakly";
    }
    return "?";
}

namespace detail {

inline void require_proper(const Ideal& ideal) {
    if (!ideal.is_proper()) throw PreconditionError("ideal must be proper");
}

inline void require_positive(unsigned m, unsigned n) {
    if (m < 1 || n < 1) throw PreconditionError("m and n must be positive");
}

}  // namespace detail

/// x^m in I implies x^n in I, for every x.
inline Decision is_mn_closed(const Ideal& ideal, unsigned m, unsigned n) {
    detail::require_proper(ideal);
    detail::require_positive(m, n);
    const FiniteRing& r = ideal.ring();
    for (std::uint32_t x = 0; x < r.order(); ++x)
        if (ideal.contains_index(r.power_index(x, m)) && !ideal.contains_index(r.power_index(x, n)))
            return {false, r.element(x)};
    return {};
}

/// 0 != x^m in I implies x^n in I, for every x.
inline Decision is_weakly_mn_closed(const Ideal& ideal, unsigned m, unsigned n) {
    detail::require_proper(ideal);
    detail::require_positive(m, n);
    const FiniteRing& r = ideal.ring();
    for (std::uint32_t x = 0; x < r.order(); ++x) {
        std::uint32_t xm = r.power_index(x, m);
        if (xm != 0 && ideal.contains_index(xm) && !ideal.contains_index(r.power_index(x, n)))
            return {false, r.element(x)};
    }
    return {};
}

/// Elements a with a^m = 0 and a^n not in I.
inline std::vector<Element> unbreakable_zero_elements(const Ideal& ideal, unsigned m, unsigned n) {
    detail::require_proper(ideal);
    detail::require_positive(m, n);
    const FiniteRing& r = ideal.ring();
    std::vector<Element> out;
    for (std::uint32_t a = 0; a < r.order(); ++a)
        if (r.power_index(a, m) == 0 && !ideal.contains_index(r.power_index(a, n)))
            out.push_back(r.element(a));
    return out;
}

/// Three-way classification. The witness is an unbreakable-zero element
/// for weakly_only, and an x with 0 != x^m in I, x^n not in I for
/// not_weakly.
struct ClosednessReport {
    Ideal ideal;
    unsigned m = 1;
    unsigned n = 1;
    ClosureStatus status = ClosureStatus::closed;
    std::optional<Element> witness;
};

inline ClosednessReport classify(const Ideal& ideal, unsigned m, unsigned n) {
    ClosednessReport rep{ideal, m, n, ClosureStatus::closed, std::nullopt};
    if (auto weak = is_weakly_mn_closed(ideal, m, n); !weak) {
        rep.status = ClosureStatus::not_weakly;
        rep.witness = weak.witness;
    } else if (auto strong = is_mn_closed(ideal, m, n); !strong) {
        // A closedness failure that survives the weak test has x^m = 0.
        rep.status = ClosureStatus::weakly_only;
        rep.witness = strong.witness;
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct PrimeDecision {
    bool holds = true;
    std::optional<std::pair<Element, Element>> witness;
    explicit operator bool() const noexcept { return holds; }
};

/// 0 != xy in I implies x in I or y in I.
inline PrimeDecision is_weakly_prime(const Ideal& ideal) {
    detail::require_proper(ideal);
    const FiniteRing& r = ideal.ring();
    for (std::uint32_t x = 0; x < r.order(); ++x) {
        if (ideal.contains_index(x)) continue;
        for (std::uint32_t y = x; y < r.order(); ++y) {
            if (ideal.contains_index(y)) continue;
            std::uint32_t p = r.mul_index(x, y);
            if (p != 0 && ideal.contains_index(p)) return {false, std::pair{r.element(x), r.element(y)}};
        }
    }
    return {};
}

struct RadicalDecision {
    bool holds = true;
    std::optional<Element> witness;
    std::uint64_t exponent = 0;
    explicit operator bool() const noexcept { return holds; }
};

/// 0 != x^t in I implies x in I, for t <= |R|. The witness is the first x
/// with its smallest offending t.
inline RadicalDecision is_weakly_radical(const Ideal& ideal) {
    detail::require_proper(ideal);
    const FiniteRing& r = ideal.ring();
    for (std::uint32_t x = 0; x < r.order(); ++x) {
        if (ideal.contains_index(x)) continue;
        std::uint32_t p = x;
        for (std::uint64_t t = 1; t <= r.order() && p != 0; ++t) {
            if (ideal.contains_index(p)) return {false, r.element(x), t};
            p = r.mul_index(p, x);
        }
    }
    return {};
}

struct AbsorbingDecision {
    bool holds = true;
    std::vector<Element> witness;
    explicit operator bool() const noexcept { return holds; }
};

inline constexpr std::uint64_t kDefaultAbsorbingBudget = std::uint64_t{1} << 24;

/**
 * (Weakly) n-absorbing: whenever x_1 ... x_{n+1} lies in I (and, for the
 * weak variant, is nonzero) some product of n of the factors lies in I.
 *
 * Throws BudgetExceeded when |R|^{n+1} > budget. Only nondecreasing tuples
 * are visited since the property is symmetric; the witness is the first
 * failing one.
 */
inline AbsorbingDecision is_n_absorbing(const Ideal& ideal, unsigned n, bool weak,
                                        std::uint64_t budget = kDefaultAbsorbingBudget) {
    detail::require_proper(ideal);
    if (n < 1) throw PreconditionError("n must be positive");
    const FiniteRing& r = ideal.ring();
    const std::uint32_t order = r.order();
    std::uint64_t tuples = 1;
    for (unsigned i = 0; i <= n; ++i) {
        tuples = detail::checked_mul(tuples, order, budget);
        if (tuples > budget)
            throw BudgetExceeded("n-absorbing search needs |R|^" + std::to_string(n + 1) +
                                 " tuples, budget " + std::to_string(budget));
    }

    const unsigned len = n + 1;
    std::vector<std::uint32_t> t(len, 0);
    std::vector<std::uint32_t> prefix(len + 1), suffix(len + 1);
    const std::uint32_t one = r.one_index();
    while (true) {
        prefix[0] = one;
        for (unsigned i = 0; i < len; ++i) prefix[i + 1] = r.mul_index(prefix[i], t[i]);
        std::uint32_t product = prefix[len];
        if (ideal.contains_index(product) && !(weak && product == 0)) {
            suffix[len] = one;
            for (unsigned i = len; i-- > 0;) suffix[i] = r.mul_index(suffix[i + 1], t[i]);
            bool absorbed = false;
            for (unsigned skip = 0; skip < len && !absorbed; ++skip)
                absorbed = ideal.contains_index(r.mul_index(prefix[skip], suffix[skip + 1]));
            if (!absorbed) {
                AbsorbingDecision d{false, {}};
                for (std::uint32_t v : t) d.witness.push_back(r.element(v));
                return d;
            }
        }
        // Next nondecreasing tuple.
        int i = static_cast<int>(len) - 1;
        while (i >= 0 && t[i] == order - 1) --i;
        if (i < 0) break;
        ++t[i];
        for (unsigned j = i + 1; j < len; ++j) t[j] = t[i];
    }
    return {};
}

}  // namespace closure_lab
