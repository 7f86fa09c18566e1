#pragma once

/**
 * @file finite_ring.hpp
 * @brief Realized finite commutative rings.
 *
 * Every element of a ring of order N is encoded by an index in [0, N):
 *
 *  - Z_n:          the residue r
 *  - A x B:        a * |B| + b  (lexicographic pair order)
 *  - Z_n (+) Z_d:  r * d + m
 *  - R / J:        rank of the minimal coset member among all minimal
 *                  coset members (so the quotient keeps R's element order)
 *
 * Index 0 is always the zero element. Rings are immutable once built and
 * shared through RingPtr; any number of threads may read them.
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"
#include "ring_spec.hpp"

namespace closure_lab {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// Handle to a ring element: canonical index plus the owning ring's tag.
class Element {
public:
    Element() = default;

    std::uint32_t index() const noexcept { return index_; }
    std::uint32_t ring_tag() const noexcept { return tag_; }

    friend bool operator==(Element, Element) = default;
    friend auto operator<=>(Element, Element) = default;

private:
    friend class FiniteRing;
    Element(std::uint32_t index, std::uint32_t tag) : index_(index), tag_(tag) {}

    std::uint32_t index_ = 0;
    std::uint32_t tag_ = 0;
};

struct BuildOptions {
    std::uint64_t max_order = std::uint64_t{1} << 20;
};

inline constexpr std::uint64_t kTableOrderLimit = 256;
inline constexpr std::uint64_t kEagerOrderLimit = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kExhaustiveUnitLimit = 4096;
inline constexpr std::uint32_t kPowerTableExponents = 8;

struct CyclicStructure {
    std::uint32_t modulus;
};

struct ProductStructure {
    RingPtr left;
    RingPtr right;
};

/// Z_n (+) Z_d; `base` is the realized Z_n.
struct IdealizationStructure {
    RingPtr base;
    std::uint32_t module_modulus;
};

struct QuotientStructure {
    RingPtr base;
    std::vector<std::uint32_t> class_of;        // base index -> quotient index
    std::vector<std::uint32_t> representative;  // quotient index -> base index
};

using RingStructure =
    std::variant<CyclicStructure, ProductStructure, IdealizationStructure, QuotientStructure>;

namespace detail {

inline std::uint32_t next_ring_tag() {
    static std::atomic<std::uint32_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    if (a != 0 && b > cap / a) return cap + 1;
    return a * b;
}

}  // namespace detail

class FiniteRing {
    struct Passkey {};

public:
    FiniteRing(Passkey, RingSpec spec, RingStructure structure, std::uint64_t order)
        : spec_(std::move(spec)),
          structure_(std::move(structure)),
          order_(static_cast<std::uint32_t>(order)),
          tag_(detail::next_ring_tag()) {}

    FiniteRing(const FiniteRing&) = delete;
    FiniteRing& operator=(const FiniteRing&) = delete;

    // -- factories -----------------------------------------------------------

    static RingPtr make_cyclic(std::uint64_t n, const BuildOptions& opts = {}) {
        if (n < 2) throw SpecError("modulus < 2");
        check_cap(n, opts);
        return finish(std::make_shared<FiniteRing>(
            Passkey{}, RingSpec::cyclic(n), CyclicStructure{static_cast<std::uint32_t>(n)}, n));
    }

    static RingPtr make_product(RingPtr left, RingPtr right, const BuildOptions& opts = {}) {
        std::uint64_t order = detail::checked_mul(left->order(), right->order(), opts.max_order);
        check_cap(order, opts);
        RingSpec spec = RingSpec::product(left->spec(), right->spec());
        return finish(std::make_shared<FiniteRing>(
            Passkey{}, std::move(spec), ProductStructure{std::move(left), std::move(right)},
            order));
    }

    static RingPtr make_idealization(std::uint64_t n, std::uint64_t d,
                                     const BuildOptions& opts = {}) {
        if (n < 2) throw SpecError("modulus < 2");
        if (d < 1 || n % d != 0)
            throw SpecError(std::to_string(d) + " does not divide " + std::to_string(n) +
                            " (d must divide n)");
        std::uint64_t order = detail::checked_mul(n, d, opts.max_order);
        check_cap(order, opts);
        auto base = make_cyclic(n, opts);
        return finish(std::make_shared<FiniteRing>(
            Passkey{}, RingSpec::idealization(n, d),
            IdealizationStructure{std::move(base), static_cast<std::uint32_t>(d)}, order));
    }

    /// R / J where `membership[i]` marks the base indices lying in J. J must
    /// be a proper ideal of `base`; `spec` is recorded verbatim.
    static RingPtr make_quotient(RingPtr base, const std::vector<std::uint8_t>& membership,
                                 RingSpec spec, const BuildOptions& opts = {}) {
        const std::uint32_t n = base->order();
        if (membership.size() != n) throw PreconditionError("membership size mismatch");
        if (membership[base->one_index()]) throw SpecError("improper quotient ideal");
        std::vector<std::uint32_t> members;
        for (std::uint32_t i = 0; i < n; ++i)
            if (membership[i]) members.push_back(i);
        constexpr std::uint32_t unset = 0xFFFFFFFFu;
        std::vector<std::uint32_t> class_of(n, unset);
        std::vector<std::uint32_t> reps;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (class_of[i] != unset) continue;
            auto cls = static_cast<std::uint32_t>(reps.size());
            reps.push_back(i);
            for (std::uint32_t j : members) class_of[base->add_index(i, j)] = cls;
        }
        check_cap(reps.size(), opts);
        std::uint64_t order = reps.size();
        return finish(std::make_shared<FiniteRing>(
            Passkey{}, std::move(spec),
            QuotientStructure{std::move(base), std::move(class_of), std::move(reps)}, order));
    }

    // -- basic accessors ------------------------------------------------------

    std::uint32_t order() const noexcept { return order_; }
    std::uint32_t tag() const noexcept { return tag_; }
    const RingSpec& spec() const noexcept { return spec_; }
    std::string spec_string() const { return closure_lab::to_string(spec_); }
    const RingStructure& structure() const noexcept { return structure_; }

    Element zero() const { return Element(0, tag_); }
    Element one() const { return Element(one_index(), tag_); }

    Element element(std::uint32_t index) const {
        if (index >= order_) throw PreconditionError("element index out of range");
        return Element(index, tag_);
    }

    bool contains(Element x) const noexcept { return x.ring_tag() == tag_ && x.index() < order_; }

    /// All elements in canonical order.
    auto elements() const {
        const std::uint32_t tag = tag_;
        return std::views::iota(std::uint32_t{0}, order_) |
               std::views::transform([tag](std::uint32_t i) { return Element(i, tag); });
    }

    // -- element arithmetic --------------------------------------------------

    Element add(Element x, Element y) const {
        check(x);
        check(y);
        return Element(add_index(x.index(), y.index()), tag_);
    }
    Element mul(Element x, Element y) const {
        check(x);
        check(y);
        return Element(mul_index(x.index(), y.index()), tag_);
    }
    Element neg(Element x) const {
        check(x);
        return Element(neg_index(x.index()), tag_);
    }
    Element sub(Element x, Element y) const { return add(x, neg(y)); }

    /// x^t by repeated squaring; x^0 = 1.
    Element power(Element x, std::uint64_t t) const {
        check(x);
        return Element(power_index(x.index(), t), tag_);
    }

    // -- element literals ----------------------------------------------------

    std::string to_string(Element x) const {
        check(x);
        return index_to_string(x.index());
    }

    Element parse_element(const ElementLiteral& lit) const {
        return Element(literal_to_index(lit), tag_);
    }

    Element parse_element(std::string_view text) const {
        auto lits = parse_element_literals(text);
        if (lits.size() != 1) throw ParseError("expected exactly one element literal", 0);
        return parse_element(lits.front());
    }

    /// Literal that parses back to `x` in this ring.
    ElementLiteral to_literal(Element x) const {
        check(x);
        return index_to_literal(x.index());
    }

    // -- product / idealization helpers ---------------------------------------

    std::pair<Element, Element> components(Element x) const {
        check(x);
        const auto* p = std::get_if<ProductStructure>(&structure_);
        if (!p) throw PreconditionError("components() needs a product ring");
        std::uint32_t rn = p->right->order();
        return {p->left->element(x.index() / rn), p->right->element(x.index() % rn)};
    }

    Element make_pair(Element a, Element b) const {
        const auto* p = std::get_if<ProductStructure>(&structure_);
        if (!p) throw PreconditionError("make_pair() needs a product ring");
        if (!p->left->contains(a) || !p->right->contains(b)) throw ForeignElement();
        return Element(a.index() * p->right->order() + b.index(), tag_);
    }

    /// Idealization element (r, m) with r in the base ring and m in [0, d).
    Element make_idealization_element(Element r, std::uint32_t m) const {
        const auto* s = std::get_if<IdealizationStructure>(&structure_);
        if (!s) throw PreconditionError("needs an idealization ring");
        if (!s->base->contains(r)) throw ForeignElement();
        if (m >= s->module_modulus) throw PreconditionError("module element out of range");
        return Element(r.index() * s->module_modulus + m, tag_);
    }

    std::pair<Element, std::uint32_t> idealization_parts(Element x) const {
        check(x);
        const auto* s = std::get_if<IdealizationStructure>(&structure_);
        if (!s) throw PreconditionError("needs an idealization ring");
        return {s->base->element(x.index() / s->module_modulus), x.index() % s->module_modulus};
    }

    // -- structural sets -----------------------------------------------------

    bool is_nilpotent(Element x) const {
        check(x);
        return sets().nil[x.index()] != 0;
    }
    bool is_unit(Element x) const {
        check(x);
        return sets().unit[x.index()] != 0;
    }
    bool is_zero_divisor(Element x) const {
        check(x);
        return sets().zero_divisor[x.index()] != 0;
    }

    std::vector<Element> nilradical() const { return collect(sets().nil); }
    std::vector<Element> units() const { return collect(sets().unit); }
    std::vector<Element> zero_divisors() const { return collect(sets().zero_divisor); }

    bool is_reduced() const {
        const auto& nil = sets().nil;
        return std::count(nil.begin(), nil.end(), std::uint8_t{1}) == 1;
    }

    /// Smallest k with x^k = 0 (index(0) = 1), or nullopt when x is not nilpotent.
    std::optional<std::uint32_t> nilpotency_index(Element x) const {
        check(x);
        if (!sets().nil[x.index()]) return std::nullopt;
        std::uint32_t p = x.index();
        std::uint32_t k = 1;
        while (p != 0) {
            p = mul_index(p, x.index());
            ++k;
        }
        return k;
    }

    /// Additive order of 1.
    std::uint64_t characteristic() const { return sets().characteristic; }

    // -- unchecked index arithmetic (no tag checks) ----------------------------

    std::uint32_t one_index() const {
        struct V {
            std::uint32_t operator()(const CyclicStructure&) const { return 1; }
            std::uint32_t operator()(const ProductStructure& p) const {
                return p.left->one_index() * p.right->order() + p.right->one_index();
            }
            std::uint32_t operator()(const IdealizationStructure& s) const {
                return s.module_modulus;
            }
            std::uint32_t operator()(const QuotientStructure& q) const {
                return q.class_of[q.base->one_index()];
            }
        };
        return std::visit(V{}, structure_);
    }

    std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const {
        if (!add_table_.empty()) return add_table_[a * order_ + b];
        return compute_add(a, b);
    }

    std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const {
        if (!mul_table_.empty()) return mul_table_[a * order_ + b];
        return compute_mul(a, b);
    }

    std::uint32_t neg_index(std::uint32_t a) const {
        struct V {
            std::uint32_t a;
            std::uint32_t operator()(const CyclicStructure& c) const {
                return a == 0 ? 0 : c.modulus - a;
            }
            std::uint32_t operator()(const ProductStructure& p) const {
                std::uint32_t rn = p.right->order();
                return p.left->neg_index(a / rn) * rn + p.right->neg_index(a % rn);
            }
            std::uint32_t operator()(const IdealizationStructure& s) const {
                std::uint32_t d = s.module_modulus;
                std::uint32_t m = a % d;
                return s.base->neg_index(a / d) * d + (m == 0 ? 0 : d - m);
            }
            std::uint32_t operator()(const QuotientStructure& q) const {
                return q.class_of[q.base->neg_index(q.representative[a])];
            }
        };
        return std::visit(V{a}, structure_);
    }

    std::uint32_t power_index(std::uint32_t a, std::uint64_t t) const {
        if (t <= kPowerTableExponents && !power_table_.empty())
            return power_table_[a * (kPowerTableExponents + 1) + t];
        std::uint32_t result = one_index();
        std::uint32_t base = a;
        while (t > 0) {
            if (t & 1) result = mul_index(result, base);
            t >>= 1;
            if (t) base = mul_index(base, base);
        }
        return result;
    }

private:
    RingSpec spec_;
    RingStructure structure_;
    std::uint32_t order_;
    std::uint32_t tag_;
    std::vector<std::uint8_t> add_table_;
    std::vector<std::uint8_t> mul_table_;
    std::vector<std::uint32_t> power_table_;

    struct StructuralSets {
        std::vector<std::uint8_t> nil;
        std::vector<std::uint8_t> unit;
        std::vector<std::uint8_t> zero_divisor;
        std::uint64_t characteristic = 0;
    };
    mutable std::once_flag sets_once_;
    mutable StructuralSets sets_;

    static void check_cap(std::uint64_t order, const BuildOptions& opts) {
        if (order > opts.max_order)
            throw CapExceeded("ring order " + std::to_string(order) + " exceeds cap " +
                              std::to_string(opts.max_order));
    }

    void check(Element x) const {
        if (!contains(x)) throw ForeignElement();
    }

    std::vector<Element> collect(const std::vector<std::uint8_t>& flags) const {
        std::vector<Element> out;
        for (std::uint32_t i = 0; i < order_; ++i)
            if (flags[i]) out.push_back(Element(i, tag_));
        return out;
    }

    static RingPtr finish(std::shared_ptr<FiniteRing> ring) {
        ring->build_tables();
        if (ring->order_ <= kEagerOrderLimit) ring->sets();
        return ring;
    }

    void build_tables() {
        const std::uint32_t n = order_;
        if (n <= kTableOrderLimit) {
            add_table_.resize(std::size_t{n} * n);
            mul_table_.resize(std::size_t{n} * n);
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = 0; b < n; ++b) {
                    add_table_[a * n + b] = static_cast<std::uint8_t>(compute_add(a, b));
                    mul_table_[a * n + b] = static_cast<std::uint8_t>(compute_mul(a, b));
                }
        }
        if (n <= kEagerOrderLimit) {
            constexpr std::uint32_t w = kPowerTableExponents + 1;
            std::vector<std::uint32_t> table(std::size_t{n} * w);
            const std::uint32_t one = one_index();
            for (std::uint32_t a = 0; a < n; ++a) {
                std::uint32_t p = one;
                for (std::uint32_t t = 0; t < w; ++t) {
                    table[a * w + t] = p;
                    p = mul_index(p, a);
                }
            }
            power_table_ = std::move(table);
        }
    }

    std::uint32_t compute_add(std::uint32_t a, std::uint32_t b) const {
        struct V {
            std::uint32_t a, b;
            std::uint32_t operator()(const CyclicStructure& c) const {
                std::uint64_t s = std::uint64_t{a} + b;
                return static_cast<std::uint32_t>(s >= c.modulus ? s - c.modulus : s);
            }
            std::uint32_t operator()(const ProductStructure& p) const {
                std::uint32_t rn = p.right->order();
                return p.left->add_index(a / rn, b / rn) * rn + p.right->add_index(a % rn, b % rn);
            }
            std::uint32_t operator()(const IdealizationStructure& s) const {
                std::uint32_t d = s.module_modulus;
                return s.base->add_index(a / d, b / d) * d + (a % d + b % d) % d;
            }
            std::uint32_t operator()(const QuotientStructure& q) const {
                return q.class_of[q.base->add_index(q.representative[a], q.representative[b])];
            }
        };
        return std::visit(V{a, b}, structure_);
    }

    std::uint32_t compute_mul(std::uint32_t a, std::uint32_t b) const {
        struct V {
            std::uint32_t a, b;
            std::uint32_t operator()(const CyclicStructure& c) const {
                return static_cast<std::uint32_t>(std::uint64_t{a} * b % c.modulus);
            }
            std::uint32_t operator()(const ProductStructure& p) const {
                std::uint32_t rn = p.right->order();
                return p.left->mul_index(a / rn, b / rn) * rn + p.right->mul_index(a % rn, b % rn);
            }
            std::uint32_t operator()(const IdealizationStructure& s) const {
                // (r, m)(s, k) = (rs, rk + sm), with Z_n acting on Z_d through r mod d.
                std::uint64_t d = s.module_modulus;
                std::uint64_t r1 = a / d, m1 = a % d, r2 = b / d, m2 = b % d;
                std::uint64_t m = ((r1 % d) * m2 + (r2 % d) * m1) % d;
                return s.base->mul_index(static_cast<std::uint32_t>(r1),
                                         static_cast<std::uint32_t>(r2)) *
                           static_cast<std::uint32_t>(d) +
                       static_cast<std::uint32_t>(m);
            }
            std::uint32_t operator()(const QuotientStructure& q) const {
                return q.class_of[q.base->mul_index(q.representative[a], q.representative[b])];
            }
        };
        return std::visit(V{a, b}, structure_);
    }

    std::string index_to_string(std::uint32_t a) const { return closure_lab::to_string(index_to_literal(a)); }

    ElementLiteral index_to_literal(std::uint32_t a) const {
        struct V {
            std::uint32_t a;
            ElementLiteral operator()(const CyclicStructure&) const {
                return ElementLiteral::integer(a);
            }
            ElementLiteral operator()(const ProductStructure& p) const {
                std::uint32_t rn = p.right->order();
                return ElementLiteral::tuple(
                    {p.left->index_to_literal(a / rn), p.right->index_to_literal(a % rn)});
            }
            ElementLiteral operator()(const IdealizationStructure& s) const {
                return ElementLiteral::tuple({ElementLiteral::integer(a / s.module_modulus),
                                              ElementLiteral::integer(a % s.module_modulus)});
            }
            ElementLiteral operator()(const QuotientStructure& q) const {
                return q.base->index_to_literal(q.representative[a]);
            }
        };
        return std::visit(V{a}, structure_);
    }

    // k·1 computed without building k by repeated addition.
    std::uint32_t integer_index(std::uint64_t k) const {
        struct V {
            std::uint64_t k;
            std::uint32_t operator()(const CyclicStructure& c) const {
                return static_cast<std::uint32_t>(k % c.modulus);
            }
            std::uint32_t operator()(const ProductStructure& p) const {
                return p.left->integer_index(k) * p.right->order() + p.right->integer_index(k);
            }
            std::uint32_t operator()(const IdealizationStructure& s) const {
                return s.base->integer_index(k) * s.module_modulus;
            }
            std::uint32_t operator()(const QuotientStructure& q) const {
                return q.class_of[q.base->integer_index(k)];
            }
        };
        return std::visit(V{k}, structure_);
    }

    std::uint32_t literal_to_index(const ElementLiteral& lit) const {
        if (!lit.is_tuple) return integer_index(lit.value);
        struct V {
            const ElementLiteral& lit;
            std::uint32_t operator()(const CyclicStructure&) const {
                throw SpecError("tuple literal " + closure_lab::to_string(lit) +
                                " used for a cyclic ring");
            }
            std::uint32_t operator()(const ProductStructure& p) const {
                if (lit.parts.size() != 2)
                    throw SpecError("product element needs 2 components: " +
                                    closure_lab::to_string(lit));
                return p.left->literal_to_index(lit.parts[0]) * p.right->order() +
                       p.right->literal_to_index(lit.parts[1]);
            }
            std::uint32_t operator()(const IdealizationStructure& s) const {
                if (lit.parts.size() != 2 || lit.parts[0].is_tuple || lit.parts[1].is_tuple)
                    throw SpecError("idealization element must be (r,m): " +
                                    closure_lab::to_string(lit));
                std::uint64_t r = lit.parts[0].value, m = lit.parts[1].value;
                if (r >= s.base->order() || m >= s.module_modulus)
                    throw SpecError("idealization component out of range: " +
                                    closure_lab::to_string(lit));
                return static_cast<std::uint32_t>(r * s.module_modulus + m);
            }
            std::uint32_t operator()(const QuotientStructure& q) const {
                return q.class_of[q.base->literal_to_index(lit)];
            }
        };
        return std::visit(V{lit}, structure_);
    }

    const StructuralSets& sets() const {
        std::call_once(sets_once_, [this] { compute_sets(); });
        return sets_;
    }

    bool structural_is_unit(std::uint32_t a) const;

    void compute_sets() const {
        const std::uint32_t n = order_;
        const std::uint32_t one = one_index();
        StructuralSets s;
        s.nil.assign(n, 0);
        s.unit.assign(n, 0);
        s.zero_divisor.assign(n, 0);
        // A nilpotent x has distinct nonzero powers x, ..., x^{k-1}, so k <= |R|.
        for (std::uint32_t a = 0; a < n; ++a) s.nil[a] = power_index(a, n) == 0;
        if (n <= kExhaustiveUnitLimit) {
            for (std::uint32_t a = 0; a < n; ++a) {
                for (std::uint32_t b = 0; b < n; ++b) {
                    std::uint32_t p = mul_index(a, b);
                    if (p == one) s.unit[a] = 1;
                    if (a != 0 && b != 0 && p == 0) s.zero_divisor[a] = 1;
                }
            }
        } else {
            // Finite commutative rings split as units | zero-divisors | {0}.
            for (std::uint32_t a = 0; a < n; ++a) {
                s.unit[a] = structural_is_unit(a);
                s.zero_divisor[a] = a != 0 && !s.unit[a];
            }
        }
        std::uint64_t c = 1;
        for (std::uint32_t x = one; x != 0; x = add_index(x, one)) ++c;
        s.characteristic = c;
        sets_ = std::move(s);
    }

public:
    /// Unit test by ring structure (gcd for Z_n, componentwise for products,
    /// base unit for idealizations, power cycle for quotients). Exposed so
    /// tests can compare it with the exhaustive definition.
    bool unit_by_structure(Element x) const {
        check(x);
        return structural_is_unit(x.index());
    }
};

inline bool FiniteRing::structural_is_unit(std::uint32_t a) const {
    struct V {
        const FiniteRing& self;
        std::uint32_t a;
        bool operator()(const CyclicStructure& c) const { return std::gcd(a, c.modulus) == 1; }
        bool operator()(const ProductStructure& p) const {
            std::uint32_t rn = p.right->order();
            return p.left->structural_is_unit(a / rn) && p.right->structural_is_unit(a % rn);
        }
        bool operator()(const IdealizationStructure& s) const {
            return s.base->structural_is_unit(a / s.module_modulus);
        }
        bool operator()(const QuotientStructure&) const {
            // A unit's multiplicative order is below |R|; non-units never reach 1.
            const std::uint32_t one = self.one_index();
            std::uint32_t x = a;
            for (std::uint32_t t = 1; t <= self.order(); ++t) {
                if (x == one) return true;
                x = self.mul_index(x, a);
            }
            return false;
        }
    };
    return std::visit(V{*this, a}, structure_);
}

// ---------------------------------------------------------------------------

namespace detail {

/// Membership flags of the ideal generated by `gens` (base indices): the sum
/// of the principal ideals R·g.
inline std::vector<std::uint8_t> ideal_closure(const FiniteRing& ring,
                                               const std::vector<std::uint32_t>& gens) {
    const std::uint32_t n = ring.order();
    std::vector<std::uint8_t> in(n, 0);
    std::vector<std::uint32_t> members{0};
    in[0] = 1;
    std::vector<std::uint8_t> seen(n, 0);
    for (std::uint32_t g : gens) {
        if (in[g]) continue;
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<std::uint32_t> principal;
        for (std::uint32_t r = 0; r < n; ++r) {
            std::uint32_t p = ring.mul_index(r, g);
            if (!seen[p]) {
                seen[p] = 1;
                principal.push_back(p);
            }
        }
        std::vector<std::uint32_t> fresh;
        for (std::uint32_t s : members)
            for (std::uint32_t p : principal) {
                std::uint32_t v = ring.add_index(s, p);
                if (!in[v]) {
                    in[v] = 1;
                    fresh.push_back(v);
                }
            }
        members.insert(members.end(), fresh.begin(), fresh.end());
    }
    return in;
}

inline std::uint64_t spec_order(const RingSpec& spec, std::uint64_t cap) {
    struct V {
        std::uint64_t cap;
        std::uint64_t operator()(const CyclicSpec& c) const { return c.modulus; }
        std::uint64_t operator()(const ProductSpec& p) const {
            return checked_mul(spec_order(*p.left, cap), spec_order(*p.right, cap), cap);
        }
        std::uint64_t operator()(const IdealizationSpec& i) const {
            return checked_mul(i.base_modulus, i.module_modulus, cap);
        }
        std::uint64_t operator()(const QuotientSpec& q) const { return spec_order(*q.base, cap); }
    };
    return std::visit(V{cap}, spec.node);
}

}  // namespace detail

/// Realizes a spec. Throws CapExceeded above `opts.max_order` and SpecError
/// for invalid parameters or an improper quotient ideal.
inline RingPtr build_ring(const RingSpec& spec, const BuildOptions& opts = {}) {
    std::uint64_t order = detail::spec_order(spec, opts.max_order);
    if (order > opts.max_order)
        throw CapExceeded("ring order exceeds cap " + std::to_string(opts.max_order));
    struct V {
        const BuildOptions& opts;
        const RingSpec& spec;
        RingPtr operator()(const CyclicSpec& c) const {
            return FiniteRing::make_cyclic(c.modulus, opts);
        }
        RingPtr operator()(const ProductSpec& p) const {
            return FiniteRing::make_product(build_ring(*p.left, opts), build_ring(*p.right, opts),
                                            opts);
        }
        RingPtr operator()(const IdealizationSpec& i) const {
            return FiniteRing::make_idealization(i.base_modulus, i.module_modulus, opts);
        }
        RingPtr operator()(const QuotientSpec& q) const {
            RingPtr base = build_ring(*q.base, opts);
            std::vector<std::uint32_t> gens;
            for (const auto& lit : q.generators) gens.push_back(base->parse_element(lit).index());
            auto membership = detail::ideal_closure(*base, gens);
            return FiniteRing::make_quotient(std::move(base), membership, spec, opts);
        }
    };
    return std::visit(V{opts, spec}, spec.node);
}

inline RingPtr build_ring(std::string_view text, const BuildOptions& opts = {}) {
    return build_ring(parse_ring_spec(text), opts);
}

}  // namespace closure_lab
