#pragma once

/**
 * @file ideal.hpp
 * @brief Ideals as explicit element sets, ideal enumeration, quotients.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "finite_ring.hpp"

namespace closure_lab {

/// An ideal stored as its full element set (membership flags plus the
/// sorted element list) together with the generators it was built from.
class Ideal {
public:
    Ideal(RingPtr ring, std::vector<std::uint8_t> membership, std::vector<Element> generators)
        : ring_(std::move(ring)),
          membership_(std::move(membership)),
          generators_(std::move(generators)) {
        for (std::uint32_t i = 0; i < ring_->order(); ++i)
            if (membership_[i]) elements_.push_back(ring_->element(i));
    }

    const FiniteRing& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }

    bool contains(Element x) const {
        if (!ring_->contains(x)) throw ForeignElement();
        return membership_[x.index()] != 0;
    }
    bool contains_index(std::uint32_t i) const noexcept { return membership_[i] != 0; }

    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<Element>& elements() const noexcept { return elements_; }
    const std::vector<Element>& generators() const noexcept { return generators_; }
    const std::vector<std::uint8_t>& membership() const noexcept { return membership_; }

    bool is_proper() const noexcept { return !membership_[ring_->one_index()]; }
    bool is_zero() const noexcept { return elements_.size() == 1; }

    bool is_subset_of(const Ideal& other) const {
        if (other.ring_->tag() != ring_->tag()) throw ForeignElement();
        for (Element x : elements_)
            if (!other.membership_[x.index()]) return false;
        return true;
    }

    /// "{0, 4}"
    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (i) out += ", ";
            out += ring_->to_string(elements_[i]);
        }
        return out + "}";
    }

    /// Generator literals, e.g. {"4"}; the zero ideal yields {"0"}.
    std::vector<ElementLiteral> generator_literals() const {
        std::vector<ElementLiteral> out;
        for (Element g : generators_) out.push_back(ring_->to_literal(g));
        if (out.empty()) out.push_back(ElementLiteral::integer(0));
        return out;
    }

    friend bool operator==(const Ideal& a, const Ideal& b) {
        return a.ring_->tag() == b.ring_->tag() && a.membership_ == b.membership_;
    }

private:
    RingPtr ring_;
    std::vector<std::uint8_t> membership_;
    std::vector<Element> generators_;
    std::vector<Element> elements_;
};

/// Smallest ideal containing `gens` (the zero ideal when `gens` is empty).
inline Ideal ideal_from_generators(const RingPtr& ring, std::vector<Element> gens) {
    std::vector<std::uint32_t> idx;
    for (Element g : gens) {
        if (!ring->contains(g)) throw ForeignElement();
        idx.push_back(g.index());
    }
    return Ideal(ring, detail::ideal_closure(*ring, idx), std::move(gens));
}

inline Ideal ideal_from_literals(const RingPtr& ring, const std::vector<ElementLiteral>& lits) {
    std::vector<Element> gens;
    for (const auto& lit : lits) gens.push_back(ring->parse_element(lit));
    return ideal_from_generators(ring, std::move(gens));
}

inline Ideal zero_ideal(const RingPtr& ring) { return ideal_from_generators(ring, {}); }

namespace detail {

/// Generators picked greedily in canonical order until the closure matches.
inline std::vector<Element> greedy_generators(const RingPtr& ring,
                                              const std::vector<std::uint8_t>& membership) {
    std::vector<std::uint32_t> gens;
    std::vector<std::uint8_t> have(ring->order(), 0);
    have[0] = 1;
    for (std::uint32_t i = 0; i < ring->order(); ++i) {
        if (!membership[i] || have[i]) continue;
        gens.push_back(i);
        have = ideal_closure(*ring, gens);
    }
    std::vector<Element> out;
    for (std::uint32_t g : gens) out.push_back(ring->element(g));
    return out;
}

inline std::vector<std::uint8_t> sum_membership(const FiniteRing& ring,
                                                const std::vector<std::uint8_t>& a,
                                                const std::vector<std::uint32_t>& b_members) {
    std::vector<std::uint8_t> out(a.size(), 0);
    for (std::uint32_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::uint32_t j : b_members) out[ring.add_index(i, j)] = 1;
    }
    return out;
}

inline bool ideal_less(const Ideal& a, const Ideal& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
}

}  // namespace detail

inline Ideal intersection(const Ideal& a, const Ideal& b) {
    if (a.ring().tag() != b.ring().tag()) throw ForeignElement();
    std::vector<std::uint8_t> m(a.ring().order(), 0);
    for (std::uint32_t i = 0; i < m.size(); ++i)
        m[i] = a.contains_index(i) && b.contains_index(i);
    auto gens = detail::greedy_generators(a.ring_ptr(), m);
    return Ideal(a.ring_ptr(), std::move(m), std::move(gens));
}

struct EnumerationOptions {
    unsigned max_generators = 2;
    /// Rings up to this order get an exhaustive join sweep (complete result).
    std::uint32_t sweep_limit = 256;
    /// Cap on (closures attempted) x (ring order) for the bounded search.
    std::uint64_t work_budget = std::uint64_t{1} << 30;
};

struct IdealEnumeration {
    std::vector<Ideal> ideals;
    bool complete = false;

    std::optional<std::size_t> find(const Ideal& ideal) const {
        for (std::size_t i = 0; i < ideals.size(); ++i)
            if (ideals[i] == ideal) return i;
        return std::nullopt;
    }
};

namespace detail {

inline IdealEnumeration enumerate_by_joins(const RingPtr& ring, const EnumerationOptions& opts) {
    const std::uint32_t n = ring->order();
    const bool exhaustive = n <= opts.sweep_limit;

    // Distinct principal ideals with their first generator.
    std::map<std::vector<std::uint8_t>, std::uint32_t> principal_map;
    for (std::uint32_t x = 1; x < n; ++x) {
        if (std::uint64_t{x} * n > opts.work_budget)
            throw CapExceeded("ideal enumeration work budget exceeded");
        principal_map.emplace(ideal_closure(*ring, {x}), x);
    }
    std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> principals;
    for (const auto& [m, g] : principal_map) {
        std::vector<std::uint32_t> members;
        for (std::uint32_t i = 0; i < n; ++i)
            if (m[i]) members.push_back(i);
        principals.emplace_back(std::move(members), g);
    }

    std::map<std::vector<std::uint8_t>, std::vector<std::uint32_t>> found;
    std::vector<std::uint8_t> zero(n, 0);
    zero[0] = 1;
    found.emplace(zero, std::vector<std::uint32_t>{});
    std::vector<std::vector<std::uint8_t>> frontier{zero};
    std::uint64_t work = 0;
    for (unsigned depth = 0; !frontier.empty(); ++depth) {
        if (!exhaustive && depth >= opts.max_generators) break;
        std::vector<std::vector<std::uint8_t>> next;
        for (const auto& cur : frontier) {
            const auto gens = found.at(cur);
            for (const auto& [members, g] : principals) {
                if (cur[g]) continue;
                work += n;
                if (!exhaustive && work > opts.work_budget)
                    throw CapExceeded("ideal enumeration work budget exceeded");
                auto joined = sum_membership(*ring, cur, members);
                if (found.count(joined)) continue;
                auto jg = gens;
                jg.push_back(g);
                found.emplace(joined, jg);
                next.push_back(std::move(joined));
            }
        }
        frontier = std::move(next);
    }

    IdealEnumeration out;
    out.complete = exhaustive;
    for (auto& [m, gens] : found) {
        std::vector<Element> ge;
        for (std::uint32_t g : gens) ge.push_back(ring->element(g));
        out.ideals.emplace_back(ring, m, std::move(ge));
    }
    std::sort(out.ideals.begin(), out.ideals.end(), ideal_less);
    return out;
}

}  // namespace detail

/**
 * All ideals of `ring` (including the zero ideal and the ring itself), in
 * (size, elements) order.
 *
 * Z_n is enumerated through the divisors of n and products through the
 * factor enumerations; both are complete by construction. Other rings use
 * joins of principal ideals: exhaustive (complete) up to `sweep_limit`,
 * otherwise only sums of at most `max_generators` principal ideals.
 */
inline IdealEnumeration enumerate_ideals(const RingPtr& ring, const EnumerationOptions& opts = {}) {
    if (opts.max_generators < 1) throw PreconditionError("max_generators must be >= 1");
    if (const auto* c = std::get_if<CyclicStructure>(&ring->structure())) {
        IdealEnumeration out;
        out.complete = true;
        for (std::uint32_t d = 1; d <= c->modulus; ++d) {
            if (c->modulus % d != 0) continue;
            std::vector<Element> gens;
            if (d != c->modulus) gens.push_back(ring->element(d));
            out.ideals.push_back(ideal_from_generators(ring, std::move(gens)));
        }
        std::sort(out.ideals.begin(), out.ideals.end(), detail::ideal_less);
        return out;
    }
    if (const auto* p = std::get_if<ProductStructure>(&ring->structure())) {
        auto left = enumerate_ideals(p->left, opts);
        auto right = enumerate_ideals(p->right, opts);
        IdealEnumeration out;
        out.complete = left.complete && right.complete;
        const std::uint32_t rn = p->right->order();
        for (const Ideal& a : left.ideals)
            for (const Ideal& b : right.ideals) {
                std::vector<std::uint8_t> m(ring->order(), 0);
                for (Element x : a.elements())
                    for (Element y : b.elements()) m[x.index() * rn + y.index()] = 1;
                std::vector<Element> gens;
                for (Element g : a.generators()) gens.push_back(ring->make_pair(g, p->right->zero()));
                for (Element h : b.generators()) gens.push_back(ring->make_pair(p->left->zero(), h));
                out.ideals.emplace_back(ring, std::move(m), std::move(gens));
            }
        std::sort(out.ideals.begin(), out.ideals.end(), detail::ideal_less);
        return out;
    }
    return detail::enumerate_by_joins(ring, opts);
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// R / J for a proper ideal J.
inline RingPtr quotient_ring(const Ideal& ideal, const BuildOptions& opts = {}) {
    if (!ideal.is_proper()) throw SpecError("improper quotient ideal");
    RingSpec spec = RingSpec::quotient(ideal.ring().spec(), ideal.generator_literals());
    return FiniteRing::make_quotient(ideal.ring_ptr(), ideal.membership(), std::move(spec), opts);
}

/// Natural projection R -> R/J.
class Projection {
public:
    explicit Projection(RingPtr quotient) : quotient_(std::move(quotient)) {
        if (!std::holds_alternative<QuotientStructure>(quotient_->structure()))
            throw PreconditionError("projection needs a quotient ring");
    }

    const FiniteRing& base() const { return *structure().base; }
    const FiniteRing& quotient() const { return *quotient_; }

    Element operator()(Element x) const {
        if (!base().contains(x)) throw ForeignElement();
        return quotient_->element(structure().class_of[x.index()]);
    }

    /// Image of an ideal of the base ring (an ideal, since the map is onto).
    Ideal image(const Ideal& ideal) const {
        if (ideal.ring().tag() != base().tag()) throw ForeignElement();
        std::vector<std::uint8_t> m(quotient_->order(), 0);
        for (Element x : ideal.elements()) m[structure().class_of[x.index()]] = 1;
        std::vector<Element> gens;
        for (Element g : ideal.generators()) gens.push_back((*this)(g));
        return Ideal(quotient_, std::move(m), std::move(gens));
    }

private:
    RingPtr quotient_;
    const QuotientStructure& structure() const {
        return std::get<QuotientStructure>(quotient_->structure());
    }
};

// ---------------------------------------------------------------------------
// Primes and dimension
// ---------------------------------------------------------------------------

/// Elementwise test: proper and xy in I forces x in I or y in I.
inline bool is_prime_ideal(const Ideal& ideal) {
    if (!ideal.is_proper()) return false;
    const FiniteRing& r = ideal.ring();
    // xy in P depends only on the cosets x+P, y+P: test one representative each.
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < r.order(); ++i)
        if (ideal.contains_index(i)) members.push_back(i);
    std::vector<std::uint8_t> seen(r.order(), 0);
    std::vector<std::uint32_t> outside;
    for (std::uint32_t i = 0; i < r.order(); ++i) {
        if (seen[i]) continue;
        for (std::uint32_t p : members) seen[r.add_index(i, p)] = 1;
        if (!ideal.contains_index(i)) outside.push_back(i);
    }
    for (std::size_t a = 0; a < outside.size(); ++a)
        for (std::size_t b = a; b < outside.size(); ++b)
            if (ideal.contains_index(r.mul_index(outside[a], outside[b]))) return false;
    return true;
}

struct KrullDimension {
    int value = 0;
    /// Set when the ideal enumeration was incomplete.
    bool lower_bound = false;
};

/// Longest strict chain of enumerated primes, minus one.
inline KrullDimension krull_dim(const RingPtr& ring, const EnumerationOptions& opts = {}) {
    auto en = enumerate_ideals(ring, opts);
    std::vector<const Ideal*> primes;
    for (const Ideal& i : en.ideals)
        if (is_prime_ideal(i)) primes.push_back(&i);
    // Ideals come sorted by size, so chains only grow to the right.
    std::vector<int> longest(primes.size(), 0);
    int best = 0;
    for (std::size_t j = 0; j < primes.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i)
            if (primes[i]->size() < primes[j]->size() && primes[i]->is_subset_of(*primes[j]))
                longest[j] = std::max(longest[j], longest[i] + 1);
        best = std::max(best, longest[j]);
    }
    return {best, !en.complete};
}

}  // namespace closure_lab
