#pragma once

/**
 * @file harness.hpp
 * @brief Exhaustive theorem verification over instance families, and
 * counterexample search for statements that are known to be false.
 *
 * A theorem is a pair (instances, check). `instances` lists the work for one
 * ring; `check` evaluates one instance and tallies the outcome. Instances
 * refer to ideals through ids interned in a RingContext, so a failing
 * instance can be written out as strings and rebuilt from scratch (replay).
 */

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "closure.hpp"
#include "error.hpp"
#include "ideal.hpp"
#include "vnr.hpp"

namespace closure_lab {

// ---------------------------------------------------------------------------
// Instance families
// ---------------------------------------------------------------------------

struct MnPair {
    unsigned m = 1;
    unsigned n = 1;
    friend auto operator<=>(const MnPair&, const MnPair&) = default;
};

/// The ring/pair grid a theorem is checked on. A default-constructed family
/// is the default family.
struct InstanceFamily {
    std::string name = "default";
    /// Extra ring specs, checked alongside the generated ones.
    std::vector<std::string> rings;
    /// Z_n for 2 <= n <= cyclic_max (0 disables).
    std::uint64_t cyclic_max = 64;
    /// Z_a x Z_b for every ordered pair a, b from this list.
    std::vector<std::uint64_t> product_factors{2, 3, 4, 8, 9, 16};
    /// Z_n (+) Z_d for 2 <= n <= idealization_max and 1 < d | n.
    std::uint64_t idealization_max = 16;
    /// Z_{p^c} for p in the list and 1 <= c <= prime_power_max_exponent,
    /// with principal ideals p^k.
    std::vector<std::uint64_t> prime_power_primes{2, 3};
    unsigned prime_power_max_exponent = 13;

    /// Sweep 1 <= n < m <= m_max, plus a few m <= n pairs when spot_checks.
    unsigned m_max = 6;
    bool spot_checks = true;
    /// When non-empty, replaces the sweep.
    std::vector<MnPair> pairs;

    std::uint64_t max_order = std::uint64_t{1} << 20;
    EnumerationOptions ideals;
    /// Per-instance tuple budget for n-absorbing checks.
    std::uint64_t absorbing_budget = kDefaultAbsorbingBudget;
    /// Quotient checks only run on rings up to this order.
    std::uint64_t quotient_max_order = 64;
    /// Ring-profile checks on prime powers only run up to this order.
    std::uint64_t profile_max_order = 256;

    void validate() const {
        if (m_max < 1) throw SpecError("m_max must be >= 1");
        for (const auto& p : pairs)
            if (p.m < 1 || p.n < 1) throw SpecError("(m,n) pairs need m, n >= 1");
        if (ideals.max_generators < 1) throw SpecError("max_generators must be >= 1");
    }

    std::vector<MnPair> mn_pairs() const {
        if (!pairs.empty()) return pairs;
        std::vector<MnPair> out;
        for (unsigned m = 2; m <= m_max; ++m)
            for (unsigned n = 1; n < m; ++n) out.push_back({m, n});
        if (spot_checks)
            for (MnPair p : {MnPair{1, 1}, MnPair{1, 3}, MnPair{2, 2}, MnPair{2, 4}, MnPair{3, 3}})
                if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        return out;
    }

    std::vector<MnPair> strict_pairs() const {
        std::vector<MnPair> out;
        for (MnPair p : mn_pairs())
            if (p.m > p.n) out.push_back(p);
        return out;
    }

    /// Canonical specs of the generated rings plus `rings`, deduplicated,
    /// within the order cap.
    std::vector<std::string> general_rings() const {
        std::vector<RingSpec> specs;
        for (std::uint64_t n = 2; n <= cyclic_max; ++n) specs.push_back(RingSpec::cyclic(n));
        for (std::uint64_t a : product_factors)
            for (std::uint64_t b : product_factors)
                specs.push_back(RingSpec::product(RingSpec::cyclic(a), RingSpec::cyclic(b)));
        for (std::uint64_t n = 2; n <= idealization_max; ++n)
            for (std::uint64_t d = 2; d <= n; ++d)
                if (n % d == 0) specs.push_back(RingSpec::idealization(n, d));
        for (const auto& text : rings) specs.push_back(parse_ring_spec(text));
        return capped(specs);
    }

    std::vector<std::string> prime_power_rings() const {
        std::vector<RingSpec> specs;
        for (std::uint64_t p : prime_power_primes) {
            std::uint64_t q = 1;
            for (unsigned c = 1; c <= prime_power_max_exponent; ++c) {
                if (q > max_order / p) break;
                q *= p;
                specs.push_back(RingSpec::cyclic(q));
            }
        }
        return capped(specs);
    }

private:
    std::vector<std::string> capped(const std::vector<RingSpec>& specs) const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (const auto& s : specs) {
            if (detail::spec_order(s, max_order) > max_order) continue;
            std::string text = to_string(s);
            if (seen.insert(text).second) out.push_back(std::move(text));
        }
        return out;
    }
};

inline InstanceFamily default_family() { return {}; }

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::uint64_t parse_uint(std::string_view s, std::size_t pos) {
    s = trim(s);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw ParseError("expected an unsigned integer, got '" + std::string(s) + "'", pos);
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    if (trim(s).empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = s.find(sep, start);
        out.push_back(trim(s.substr(start, at == std::string_view::npos ? s.npos : at - start)));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

inline std::vector<MnPair> parse_pairs(std::string_view s, std::size_t pos) {
    std::vector<MnPair> out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    };
    skip();
    while (i < s.size()) {
        if (s[i] != '(') throw ParseError("expected '(' in pair list", pos + i);
        std::size_t close = s.find(')', i);
        if (close == s.npos) throw ParseError("unterminated pair", pos + i);
        auto parts = split(s.substr(i + 1, close - i - 1), ',');
        if (parts.size() != 2) throw ParseError("a pair needs exactly two entries", pos + i);
        out.push_back({static_cast<unsigned>(parse_uint(parts[0], pos + i)),
                       static_cast<unsigned>(parse_uint(parts[1], pos + i))});
        i = close + 1;
        skip();
    }
    return out;
}

}  // namespace detail

/**
 * Parses a family config. One `key = value` per line, `#` starts a comment.
 * Integer lists are comma separated, `rings` is separated by ';' (specs can
 * contain commas) and `pairs` is a list like `(3,1), (5,3)`. Keys not given
 * keep their default-family values. ParseError positions are byte offsets
 * into `text`.
 */
inline InstanceFamily parse_family(std::string_view text) {
    InstanceFamily f;
    f.name = "custom";
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t eol = text.find('\n', line_start);
        if (eol == text.npos) eol = text.size();
        std::string_view line = text.substr(line_start, eol - line_start);
        if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
        const std::size_t pos = line_start;
        line_start = eol + 1;
        if (detail::trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == line.npos) throw ParseError("expected 'key = value'", pos);
        std::string key(detail::trim(line.substr(0, eq)));
        std::string_view value = detail::trim(line.substr(eq + 1));
        const std::size_t vpos = pos + eq + 1;
        auto uint_list = [&] {
            std::vector<std::uint64_t> out;
            for (auto part : detail::split(value, ',')) out.push_back(detail::parse_uint(part, vpos));
            return out;
        };
        auto boolean = [&] {
            if (value == "true") return true;
            if (value == "false") return false;
            throw ParseError("expected true or false", vpos);
        };
        if (key == "name") f.name = std::string(value);
        else if (key == "rings") {
            f.rings.clear();
            for (auto part : detail::split(value, ';')) {
                if (part.empty()) continue;
                try {
                    f.rings.push_back(to_string(parse_ring_spec(part)));
                } catch (const ParseError& e) {
                    throw ParseError("invalid ring spec '" + std::string(part) + "'",
                                     vpos + static_cast<std::size_t>(part.data() - value.data()) +
                                         e.position());
                }
            }
        } else if (key == "cyclic_max") f.cyclic_max = detail::parse_uint(value, vpos);
        else if (key == "product_factors") f.product_factors = uint_list();
        else if (key == "idealization_max") f.idealization_max = detail::parse_uint(value, vpos);
        else if (key == "prime_power_primes") f.prime_power_primes = uint_list();
        else if (key == "prime_power_max_exponent")
            f.prime_power_max_exponent = static_cast<unsigned>(detail::parse_uint(value, vpos));
        else if (key == "m_max") f.m_max = static_cast<unsigned>(detail::parse_uint(value, vpos));
        else if (key == "spot_checks") f.spot_checks = boolean();
        else if (key == "pairs") f.pairs = detail::parse_pairs(value, vpos);
        else if (key == "max_order") f.max_order = detail::parse_uint(value, vpos);
        else if (key == "max_generators")
            f.ideals.max_generators = static_cast<unsigned>(detail::parse_uint(value, vpos));
        else if (key == "sweep_limit")
            f.ideals.sweep_limit = static_cast<std::uint32_t>(detail::parse_uint(value, vpos));
        else if (key == "work_budget") f.ideals.work_budget = detail::parse_uint(value, vpos);
        else if (key == "absorbing_budget") f.absorbing_budget = detail::parse_uint(value, vpos);
        else if (key == "quotient_max_order") f.quotient_max_order = detail::parse_uint(value, vpos);
        else if (key == "profile_max_order") f.profile_max_order = detail::parse_uint(value, vpos);
        else throw ParseError("unknown key '" + key + "'", pos);
    }
    f.validate();
    return f;
}

/// "default" names the built-in family; anything else is a config path.
inline InstanceFamily load_family(const std::string& name_or_path) {
    if (name_or_path == "default") return default_family();
    std::ifstream in(name_or_path);
    if (!in) throw Error("cannot open family config '" + name_or_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
}

// ---------------------------------------------------------------------------
// Per-ring cache
// ---------------------------------------------------------------------------

/// Ring plus lazily computed ideals, closure statuses and vnr grid. Not
/// thread-safe; every worker owns its contexts.
class RingContext {
public:
    static constexpr unsigned kVnrGrid = 16;

    explicit RingContext(RingPtr ring, EnumerationOptions opts = {})
        : ring_(std::move(ring)), opts_(opts) {}

    const FiniteRing& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }
    const EnumerationOptions& options() const noexcept { return opts_; }

    const IdealEnumeration& enumeration() {
        if (!enumeration_) {
            enumeration_ = enumerate_ideals(ring_, opts_);
            for (const Ideal& i : enumeration_->ideals) {
                std::uint32_t id = intern(i);
                if (i.is_proper()) proper_ids_.push_back(id);
            }
        }
        return *enumeration_;
    }
    bool complete() { return enumeration().complete; }
    const std::vector<std::uint32_t>& proper_ids() {
        enumeration();
        return proper_ids_;
    }

    std::uint32_t intern(const Ideal& ideal) {
        if (ideal.ring().tag() != ring_->tag()) throw ForeignElement();
        auto [it, fresh] = index_.try_emplace(ideal.membership(), static_cast<std::uint32_t>(pool_.size()));
        if (fresh) pool_.push_back(ideal);
        return it->second;
    }
    const Ideal& ideal(std::uint32_t id) const { return pool_.at(id); }

    ClosureStatus status(std::uint32_t id, unsigned m, unsigned n) {
        auto key = std::tuple{id, m, n};
        if (auto it = status_.find(key); it != status_.end()) return it->second;
        ClosureStatus s = classify(pool_.at(id), m, n).status;
        status_.emplace(key, s);
        return s;
    }
    bool weakly(std::uint32_t id, unsigned m, unsigned n) {
        return status(id, m, n) != ClosureStatus::not_weakly;
    }
    bool closed(std::uint32_t id, unsigned m, unsigned n) {
        return status(id, m, n) == ClosureStatus::closed;
    }

    bool vnr(std::uint32_t x, unsigned m, unsigned n) {
        if (m > kVnrGrid || n > kVnrGrid) return is_mn_vnr(*ring_, ring_->element(x), m, n).holds;
        constexpr std::size_t cells = kVnrGrid * kVnrGrid;
        if (vnr_.empty()) vnr_.assign(std::size_t{ring_->order()} * cells, -1);
        auto& c = vnr_[x * cells + (m - 1) * kVnrGrid + (n - 1)];
        if (c < 0) c = is_mn_vnr(*ring_, ring_->element(x), m, n).holds ? 1 : 0;
        return c == 1;
    }

    /// Every element is (m,n)-vnr.
    bool regular(unsigned m, unsigned n) {
        for (std::uint32_t x = 0; x < ring_->order(); ++x)
            if (!vnr(x, m, n)) return false;
        return true;
    }

    const KrullDimension& dim() {
        if (!dim_) dim_ = krull_dim(ring_, opts_);
        return *dim_;
    }

    /// R/J for the interned ideal `id`.
    const RingPtr& quotient(std::uint32_t id) {
        auto it = quotients_.find(id);
        if (it == quotients_.end()) it = quotients_.emplace(id, quotient_ring(pool_.at(id))).first;
        return it->second;
    }

    /// Factor contexts of a product, or the base Z_n of an idealization.
    RingContext& left() { return child(0, std::get<ProductStructure>(ring_->structure()).left); }
    RingContext& right() { return child(1, std::get<ProductStructure>(ring_->structure()).right); }
    RingContext& base() { return child(0, std::get<IdealizationStructure>(ring_->structure()).base); }

private:
    RingContext& child(int slot, const RingPtr& r) {
        if (!children_[slot]) children_[slot] = std::make_unique<RingContext>(r, opts_);
        return *children_[slot];
    }

    RingPtr ring_;
    EnumerationOptions opts_;
    std::optional<IdealEnumeration> enumeration_;
    std::vector<std::uint32_t> proper_ids_;
    std::deque<Ideal> pool_;
    std::map<std::vector<std::uint8_t>, std::uint32_t> index_;
    std::map<std::tuple<std::uint32_t, unsigned, unsigned>, ClosureStatus> status_;
    std::vector<std::int8_t> vnr_;
    std::optional<KrullDimension> dim_;
    std::map<std::uint32_t, RingPtr> quotients_;
    std::unique_ptr<RingContext> children_[2];
};

// ---------------------------------------------------------------------------
// Instances, tallies, verdicts
// ---------------------------------------------------------------------------

struct Instance {
    std::vector<std::uint32_t> ideals;
    std::optional<std::uint32_t> element;
    unsigned m = 0;
    unsigned n = 0;
    std::vector<std::uint64_t> params;
};

/// A failing instance written out in terms of specs and literals.
struct Counterexample {
    std::string theorem_id;
    std::string ring;
    /// Generator lists, one per ideal ("0" for the zero ideal).
    std::vector<std::string> ideals;
    std::optional<std::string> element;
    unsigned m = 0;
    unsigned n = 0;
    std::vector<std::uint64_t> params;
    std::string detail;
};

class Tally {
public:
    explicit Tally(std::string theorem_id = {}) : theorem_id_(std::move(theorem_id)) {}

    void vacuous() {
        ++checked_;
        ++vacuous_;
    }
    void substantive() { ++checked_; }
    void skip(std::uint64_t k = 1) { skipped_ += k; }

    void fail(RingContext& ctx, const Instance& inst, std::string detail) {
        ++checked_;
        if (failure_) return;
        Counterexample ce;
        ce.theorem_id = theorem_id_;
        ce.ring = ctx.ring().spec_string();
        for (std::uint32_t id : inst.ideals) ce.ideals.push_back(to_string(ctx.ideal(id).generator_literals()));
        if (inst.element) ce.element = ctx.ring().to_string(ctx.ring().element(*inst.element));
        ce.m = inst.m;
        ce.n = inst.n;
        ce.params = inst.params;
        ce.detail = std::move(detail);
        failure_ = std::move(ce);
    }

    /// hypothesis => conclusion.
    void implication(bool hypothesis, bool conclusion, RingContext& ctx, const Instance& inst,
                     std::string_view what) {
        if (!hypothesis) vacuous();
        else if (conclusion) substantive();
        else fail(ctx, inst, std::string(what));
    }

    /// Both directions of lhs <=> rhs; vacuous when both sides are false.
    void equivalence(bool lhs, bool rhs, RingContext& ctx, const Instance& inst,
                     std::string_view lhs_name, std::string_view rhs_name) {
        if (lhs == rhs) {
            lhs ? substantive() : vacuous();
            return;
        }
        std::string d = lhs ? "forward direction fails: " : "reverse direction fails: ";
        d += std::string(lhs ? lhs_name : rhs_name) + " holds but " +
             std::string(lhs ? rhs_name : lhs_name) + " does not";
        fail(ctx, inst, std::move(d));
    }

    /// Several statements that must all agree.
    void all_equal(const std::vector<std::pair<std::string_view, bool>>& parts, RingContext& ctx,
                   const Instance& inst) {
        bool first = parts.front().second;
        bool same = std::all_of(parts.begin(), parts.end(), [&](auto& p) { return p.second == first; });
        if (same) {
            first ? substantive() : vacuous();
            return;
        }
        std::string d = "statements disagree:";
        for (const auto& [name, v] : parts) d += " " + std::string(name) + "=" + (v ? "true" : "false");
        fail(ctx, inst, std::move(d));
    }

    void merge(const Tally& o) {
        checked_ += o.checked_;
        vacuous_ += o.vacuous_;
        skipped_ += o.skipped_;
        if (!failure_ && o.failure_) failure_ = o.failure_;
    }

    std::uint64_t checked() const noexcept { return checked_; }
    std::uint64_t vacuous_count() const noexcept { return vacuous_; }
    std::uint64_t skipped() const noexcept { return skipped_; }
    const std::optional<Counterexample>& failure() const noexcept { return failure_; }

private:
    std::string theorem_id_;
    std::uint64_t checked_ = 0;
    std::uint64_t vacuous_ = 0;
    std::uint64_t skipped_ = 0;
    std::optional<Counterexample> failure_;
};

enum class VerdictStatus { pass, fail, skipped };

inline std::string_view to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::pass: return "pass";
        case VerdictStatus::fail: return "fail";
        case VerdictStatus::skipped: return "skipped";
    }
    return "?";
}

struct TheoremVerdict {
    std::string theorem_id;
    std::uint64_t instances_checked = 0;
    std::uint64_t vacuous_count = 0;
    /// Instances not evaluated (search budget or order cap).
    std::uint64_t skipped_count = 0;
    VerdictStatus status = VerdictStatus::pass;
    std::optional<Counterexample> counterexample;
    /// Set on failure: the counterexample was rebuilt from its strings and
    /// failed again.
    bool replay_confirmed = false;

    std::uint64_t substantive_count() const noexcept { return instances_checked - vacuous_count; }
};

using RingListFn = std::function<std::vector<std::string>(const InstanceFamily&)>;
using InstancesFn = std::function<std::vector<Instance>(RingContext&, const InstanceFamily&)>;
using CheckFn = std::function<void(RingContext&, const Instance&, const InstanceFamily&, Tally&)>;

struct TheoremDef {
    std::string id;
    std::string statement;
    RingListFn rings;
    InstancesFn instances;
    CheckFn check;
};

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Conditions under which p^k R / p^c R is weakly (m,n)-closed but not
/// (m,n)-closed in R / p^c R, for n < m < k < c.
inline bool principal_quotient_conditions(unsigned k, unsigned c, unsigned m, unsigned n) {
    unsigned q = k / m, r = k % m;
    return r != 0 && k + 1 <= c && c <= m * (q + 1) && n * (q + 1) < k;
}

namespace detail {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// (p, c) when n = p^c with p prime.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (n % p != 0) ++p;
    unsigned c = 0;
    while (n % p == 0) {
        n /= p;
        ++c;
    }
    if (n != 1) return std::nullopt;
    return std::pair{p, c};
}

inline std::vector<std::string> filter_rings(const std::vector<std::string>& specs,
                                             const std::function<bool(const RingSpec&)>& keep) {
    std::vector<std::string> out;
    for (const auto& s : specs)
        if (keep(parse_ring_spec(s))) out.push_back(s);
    return out;
}

inline std::vector<std::string> general(const InstanceFamily& f) { return f.general_rings(); }

inline std::vector<std::string> products(const InstanceFamily& f) {
    return filter_rings(f.general_rings(), [](const RingSpec& s) { return s.is_product(); });
}

inline std::vector<std::string> idealizations(const InstanceFamily& f) {
    return filter_rings(f.general_rings(), [](const RingSpec& s) { return s.is_idealization(); });
}

inline std::vector<std::string> small_rings(const InstanceFamily& f) {
    return filter_rings(f.general_rings(), [&](const RingSpec& s) {
        return spec_order(s, f.max_order) <= f.quotient_max_order;
    });
}

inline std::vector<std::string> prime_powers(const InstanceFamily& f) { return f.prime_power_rings(); }

inline std::vector<std::string> profile_prime_powers(const InstanceFamily& f) {
    std::vector<std::string> all = f.general_rings();
    for (auto& s : f.prime_power_rings()) all.push_back(s);
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& s : filter_rings(all, [&](const RingSpec& spec) {
             if (!spec.is_cyclic()) return false;
             auto n = std::get<CyclicSpec>(spec.node).modulus;
             return n <= f.profile_max_order && prime_power(n).has_value();
         }))
        if (seen.insert(s).second) out.push_back(s);
    return out;
}

inline std::vector<Instance> once(RingContext&, const InstanceFamily&) { return {Instance{}}; }

inline std::vector<Instance> per_pair(const std::vector<MnPair>& pairs) {
    std::vector<Instance> out;
    for (MnPair p : pairs) out.push_back({{}, std::nullopt, p.m, p.n, {}});
    return out;
}

inline std::vector<Instance> per_ideal_pair(RingContext& ctx, const std::vector<MnPair>& pairs) {
    std::vector<Instance> out;
    for (std::uint32_t id : ctx.proper_ids())
        for (MnPair p : pairs) out.push_back({{id}, std::nullopt, p.m, p.n, {}});
    return out;
}

inline bool subset_of_nil(const RingContext& ctx, const Ideal& ideal) {
    for (Element x : ideal.elements())
        if (!ctx.ring().is_nilpotent(x)) return false;
    return true;
}

/// Component ideals of an ideal of a product ring.
inline std::pair<std::uint32_t, std::uint32_t> split_product_ideal(RingContext& ctx, std::uint32_t id) {
    const Ideal& j = ctx.ideal(id);
    RingContext& l = ctx.left();
    RingContext& r = ctx.right();
    std::vector<std::uint8_t> ml(l.ring().order(), 0), mr(r.ring().order(), 0);
    for (Element x : j.elements()) {
        auto [a, b] = ctx.ring().components(x);
        ml[a.index()] = 1;
        mr[b.index()] = 1;
    }
    std::vector<Element> gl, gr;
    for (Element g : j.generators()) {
        auto [a, b] = ctx.ring().components(g);
        gl.push_back(a);
        gr.push_back(b);
    }
    return {l.intern(Ideal(l.ring_ptr(), std::move(ml), std::move(gl))),
            r.intern(Ideal(r.ring_ptr(), std::move(mr), std::move(gr)))};
}

/// I = {r : (r, 0) in J} for an ideal J of an idealization ring.
inline std::uint32_t idealization_base_ideal(RingContext& ctx, std::uint32_t id) {
    const Ideal& j = ctx.ideal(id);
    RingContext& b = ctx.base();
    std::vector<std::uint8_t> mb(b.ring().order(), 0);
    for (Element x : j.elements()) {
        auto [r, m] = ctx.ring().idealization_parts(x);
        if (m == 0) mb[r.index()] = 1;
    }
    return b.intern(Ideal(b.ring_ptr(), mb, detail::greedy_generators(b.ring_ptr(), mb)));
}

inline std::string pair_str(unsigned m, unsigned n) {
    return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

/// Smallest k with x (i,k)-vnr for some k < i <= 2k + slack.
inline std::optional<unsigned> defining_index(RingContext& ctx, std::uint32_t x, unsigned slack) {
    for (unsigned k = 1; k <= ctx.ring().order(); ++k)
        for (unsigned i = k + 1; i <= 2 * k + slack; ++i)
            if (ctx.vnr(x, i, k)) return k;
    return std::nullopt;
}

inline std::vector<TheoremDef> build_catalog() {
    std::vector<TheoremDef> c;

    auto absorbing_instances = [](RingContext& ctx, const InstanceFamily& f) {
        std::vector<Instance> out;
        for (std::uint32_t id : ctx.proper_ids())
            for (unsigned n = 1; n < std::max(f.m_max, 2u); ++n) out.push_back({{id}, std::nullopt, n + 1, n, {}});
        return out;
    };

    c.push_back({"T-BASIC-1", "weakly n-absorbing implies weakly (n+1,n)-closed", general,
                 absorbing_instances,
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     bool hyp = is_n_absorbing(ctx.ideal(in.ideals[0]), in.n, true, f.absorbing_budget).holds;
                     t.implication(hyp, hyp && ctx.weakly(in.ideals[0], in.n + 1, in.n), ctx, in,
                                   "weakly n-absorbing ideal is not weakly (n+1,n)-closed");
                 }});

    c.push_back({"T-BASIC-2", "weakly (m,n)-closed implies weakly (m,n')-closed for n' >= n", general,
                 [](RingContext& ctx, const InstanceFamily& f) { return per_ideal_pair(ctx, f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     const auto id = in.ideals[0];
                     if (!ctx.weakly(id, in.m, in.n)) return t.vacuous();
                     for (unsigned n2 = in.n; n2 <= std::max(f.m_max, in.n) + 1; ++n2)
                         if (!ctx.weakly(id, in.m, n2))
                             return t.fail(ctx, in, "not weakly closed for n'=" + std::to_string(n2));
                     t.substantive();
                 }});

    c.push_back({"T-BASIC-3", "weakly n-absorbing implies weakly (m,n)-closed for every m", general,
                 absorbing_instances,
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     const auto id = in.ideals[0];
                     if (!is_n_absorbing(ctx.ideal(id), in.n, true, f.absorbing_budget)) return t.vacuous();
                     for (unsigned m = 1; m <= f.m_max; ++m)
                         if (!ctx.weakly(id, m, in.n))
                             return t.fail(ctx, in, "not weakly closed for m=" + std::to_string(m));
                     t.substantive();
                 }});

    c.push_back({"T-BASIC-4", "an intersection of weakly (m,n)-closed ideals is weakly (m,n)-closed",
                 general,
                 [](RingContext& ctx, const InstanceFamily& f) {
                     std::vector<Instance> out;
                     const auto& ids = ctx.proper_ids();
                     for (std::size_t a = 0; a < ids.size(); ++a)
                         for (std::size_t b = a + 1; b < ids.size(); ++b)
                             for (MnPair p : f.mn_pairs()) out.push_back({{ids[a], ids[b]}, std::nullopt, p.m, p.n, {}});
                     return out;
                 },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     auto a = in.ideals[0], b = in.ideals[1];
                     bool hyp = ctx.weakly(a, in.m, in.n) && ctx.weakly(b, in.m, in.n);
                     if (!hyp) return t.vacuous();
                     auto meet = ctx.intern(intersection(ctx.ideal(a), ctx.ideal(b)));
                     t.implication(true, ctx.weakly(meet, in.m, in.n), ctx, in,
                                   "intersection is not weakly closed");
                 }});

    c.push_back({"T-SHIFT", "(a+i)^m = 0 for an unbreakable-zero element a and every i in I", general,
                 [](RingContext& ctx, const InstanceFamily& f) { return per_ideal_pair(ctx, f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     const auto id = in.ideals[0];
                     const Ideal& I = ctx.ideal(id);
                     if (!ctx.weakly(id, in.m, in.n)) return t.vacuous();
                     auto ubz = unbreakable_zero_elements(I, in.m, in.n);
                     if (ubz.empty()) return t.vacuous();
                     const FiniteRing& r = ctx.ring();
                     for (Element a : ubz)
                         for (Element i : I.elements())
                             if (r.power(r.add(a, i), in.m) != r.zero())
                                 return t.fail(ctx, in, "a=" + r.to_string(a) + ", i=" + r.to_string(i) +
                                                            ": (a+i)^m != 0");
                     t.substantive();
                 }});

    c.push_back({"T-NIL", "weakly (m,n)-closed but not (m,n)-closed implies I is nil", general,
                 [](RingContext& ctx, const InstanceFamily& f) { return per_ideal_pair(ctx, f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     const auto id = in.ideals[0];
                     bool hyp = ctx.status(id, in.m, in.n) == ClosureStatus::weakly_only;
                     t.implication(hyp, hyp && subset_of_nil(ctx, ctx.ideal(id)), ctx, in,
                                   "weakly_only ideal has a non-nilpotent element");
                 }});

    c.push_back({"T-NIL-CHAR", "weakly_only and char(R) = m prime implies i^m = 0 on I", general,
                 [](RingContext& ctx, const InstanceFamily& f) { return per_ideal_pair(ctx, f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     const auto id = in.ideals[0];
                     const FiniteRing& r = ctx.ring();
                     bool hyp = r.characteristic() == in.m && is_prime(in.m) &&
                                ctx.status(id, in.m, in.n) == ClosureStatus::weakly_only;
                     if (!hyp) return t.vacuous();
                     for (Element i : ctx.ideal(id).elements())
                         if (r.power(i, in.m) != r.zero())
                             return t.fail(ctx, in, "i=" + r.to_string(i) + " has i^m != 0");
                     t.substantive();
                 }});

    c.push_back({"T-QUOT", "I weakly (m,n)-closed and J inside I implies I/J weakly closed in R/J",
                 small_rings,
                 [](RingContext& ctx, const InstanceFamily& f) {
                     std::vector<Instance> out;
                     for (auto i : ctx.proper_ids())
                         for (auto j : ctx.proper_ids())
                             if (ctx.ideal(j).is_subset_of(ctx.ideal(i)))
                                 for (MnPair p : f.mn_pairs()) out.push_back({{i, j}, std::nullopt, p.m, p.n, {}});
                     return out;
                 },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     auto i = in.ideals[0], j = in.ideals[1];
                     if (!ctx.ideal(j).is_subset_of(ctx.ideal(i))) return t.vacuous();
                     if (!ctx.weakly(i, in.m, in.n)) return t.vacuous();
                     Projection pi(ctx.quotient(j));
                     t.implication(true, is_weakly_mn_closed(pi.image(ctx.ideal(i)), in.m, in.n).holds, ctx, in,
                                   "image in the quotient is not weakly closed");
                 }});

    c.push_back({"T-PROD-CLOSED",
                 "J of R1 x R2 is (m,n)-closed iff J = I1 x R2, R1 x I2 or I1 x I2 with closed factors",
                 products,
                 [](RingContext& ctx, const InstanceFamily& f) { return per_ideal_pair(ctx, f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     auto [i1, i2] = split_product_ideal(ctx, in.ideals[0]);
                     RingContext& l = ctx.left();
                     RingContext& r = ctx.right();
                     bool p1 = l.ideal(i1).is_proper(), p2 = r.ideal(i2).is_proper();
                     bool c1 = p1 && l.closed(i1, in.m, in.n), c2 = p2 && r.closed(i2, in.m, in.n);
                     bool rhs = (c1 && !p2) || (!p1 && c2) || (c1 && c2);
                     t.equivalence(ctx.closed(in.ideals[0], in.m, in.n), rhs, ctx, in, "J closed",
                                   "factor condition");
                 }});

    c.push_back({"T-PROD-FACTOR",
                 "I1 x R2 weakly closed iff I1 closed iff I1 x R2 closed (and symmetrically)", products,
                 [](RingContext& ctx, const InstanceFamily& f) {
                     std::vector<Instance> out;
                     for (auto id : ctx.proper_ids()) {
                         auto [i1, i2] = split_product_ideal(ctx, id);
                         bool full1 = !ctx.left().ideal(i1).is_proper();
                         bool full2 = !ctx.right().ideal(i2).is_proper();
                         if (full1 == full2) continue;
                         for (MnPair p : f.mn_pairs()) out.push_back({{id}, std::nullopt, p.m, p.n, {}});
                     }
                     return out;
                 },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     const auto id = in.ideals[0];
                     auto [i1, i2] = split_product_ideal(ctx, id);
                     bool factor = ctx.left().ideal(i1).is_proper() ? ctx.left().closed(i1, in.m, in.n)
                                                                   : ctx.right().closed(i2, in.m, in.n);
                     t.all_equal({{"J weakly closed", ctx.weakly(id, in.m, in.n)},
                                  {"factor closed", factor},
                                  {"J closed", ctx.closed(id, in.m, in.n)}},
                                 ctx, in);
                 }});

    c.push_back({"T-PROD-WEAK",
                 "J of R1 x R2 is weakly_only iff J = I1 x I2 with condition (a) or (b)", products,
                 [](RingContext& ctx, const InstanceFamily& f) { return per_ideal_pair(ctx, f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     const unsigned m = in.m, n = in.n;
                     auto [i1, i2] = split_product_ideal(ctx, in.ideals[0]);
                     RingContext& l = ctx.left();
                     RingContext& r = ctx.right();
                     // (a) with the roles (x, y) = (this, other).
                     auto cond = [m, n](RingContext& a, std::uint32_t ia, RingContext& b, std::uint32_t ib) {
                         if (a.status(ia, m, n) != ClosureStatus::weakly_only) return false;
                         const FiniteRing& rb = b.ring();
                         for (std::uint32_t y = 0; y < rb.order(); ++y) {
                             std::uint32_t ym = rb.power_index(y, m);
                             if (b.ideal(ib).contains_index(ym) && ym != 0) return false;
                         }
                         const FiniteRing& ra = a.ring();
                         bool nonzero_power = false;
                         for (std::uint32_t x = 0; x < ra.order() && !nonzero_power; ++x) {
                             std::uint32_t xm = ra.power_index(x, m);
                             nonzero_power = xm != 0 && a.ideal(ia).contains_index(xm);
                         }
                         return !nonzero_power || b.closed(ib, m, n);
                     };
                     bool proper = l.ideal(i1).is_proper() && r.ideal(i2).is_proper();
                     bool rhs = proper && (cond(l, i1, r, i2) || cond(r, i2, l, i1));
                     t.equivalence(ctx.status(in.ideals[0], m, n) == ClosureStatus::weakly_only, rhs, ctx, in,
                                   "J weakly_only", "condition (a) or (b)");
                 }});

    c.push_back({"T-IDEALIZATION",
                 "I(+)M is weakly_only iff I is weakly_only and m a^{m-1} M = 0 for unbreakable-zero a",
                 idealizations,
                 [](RingContext& ctx, const InstanceFamily& f) {
                     std::vector<Instance> out;
                     const auto& s = std::get<IdealizationStructure>(ctx.ring().structure());
                     Element module_gen = ctx.ring().make_idealization_element(s.base->zero(),
                                                                               s.module_modulus > 1 ? 1 : 0);
                     for (auto id : ctx.proper_ids())
                         if (ctx.ideal(id).contains(module_gen))
                             for (MnPair p : f.mn_pairs()) out.push_back({{id}, std::nullopt, p.m, p.n, {}});
                     return out;
                 },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     const unsigned m = in.m, n = in.n;
                     const auto& s = std::get<IdealizationStructure>(ctx.ring().structure());
                     const std::uint64_t d = s.module_modulus;
                     auto ib = idealization_base_ideal(ctx, in.ideals[0]);
                     RingContext& b = ctx.base();
                     bool rhs = b.status(ib, m, n) == ClosureStatus::weakly_only;
                     if (rhs) {
                         for (Element a : unbreakable_zero_elements(b.ideal(ib), m, n)) {
                             std::uint64_t am1 = b.ring().power_index(a.index(), m - 1);
                             for (std::uint64_t x = 0; x < d && rhs; ++x) rhs = (m * am1 % d) * x % d == 0;
                         }
                     }
                     t.equivalence(ctx.status(in.ideals[0], m, n) == ClosureStatus::weakly_only, rhs, ctx, in,
                                   "I(+)M weakly_only", "base criterion");
                 }});

    c.push_back({"T-PRINCIPAL",
                 "p^k R/p^c R weakly_only iff r != 0, k+1 <= c <= m(q+1) and n(q+1) < k (k = mq + r)",
                 prime_powers,
                 [](RingContext& ctx, const InstanceFamily& f) {
                     std::vector<Instance> out;
                     const auto modulus = std::get<CyclicStructure>(ctx.ring().structure()).modulus;
                     auto pp = prime_power(modulus);
                     if (!pp) return out;
                     auto [p, c] = *pp;
                     std::uint64_t pk = 1;
                     for (unsigned k = 1; k < c; ++k) {
                         pk *= p;
                         std::optional<std::uint32_t> id;
                         for (MnPair pr : f.mn_pairs()) {
                             if (!(pr.n < pr.m && pr.m < k)) continue;
                             if (!id) id = ctx.intern(ideal_from_generators(
                                           ctx.ring_ptr(), {ctx.ring().element(static_cast<std::uint32_t>(pk))}));
                             out.push_back({{*id}, std::nullopt, pr.m, pr.n, {p, k, c}});
                         }
                     }
                     return out;
                 },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     auto k = static_cast<unsigned>(in.params.at(1));
                     auto c = static_cast<unsigned>(in.params.at(2));
                     t.equivalence(ctx.status(in.ideals[0], in.m, in.n) == ClosureStatus::weakly_only,
                                   principal_quotient_conditions(k, c, in.m, in.n), ctx, in, "direct weakly_only",
                                   "conditions");
                 }});

    c.push_back({"T-NILIDEAL",
                 "m > n: every ideal inside Nil(R) is weakly (m,n)-closed iff w^m = 0 on Nil(R)", general,
                 [](RingContext&, const InstanceFamily& f) { return per_pair(f.strict_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     if (!ctx.complete()) return t.skip();
                     bool lhs = true;
                     for (auto id : ctx.proper_ids())
                         if (subset_of_nil(ctx, ctx.ideal(id)) && !ctx.weakly(id, in.m, in.n)) lhs = false;
                     t.equivalence(lhs, nil_exponent_bounded(ctx.ring(), in.m), ctx, in,
                                   "nil ideals weakly closed", "w^m = 0 on Nil(R)");
                 }});

    // Element-level facts over the grid 1 <= m, n <= m_max.
    auto grid_fact = [](std::string id, std::string statement,
                        std::function<void(RingContext&, const Instance&, std::uint32_t, unsigned, unsigned,
                                           unsigned, Tally&)> fact) {
        return TheoremDef{std::move(id), std::move(statement), general, once,
                          [fact](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                              for (std::uint32_t x = 0; x < ctx.ring().order(); ++x)
                                  for (unsigned m = 1; m <= f.m_max; ++m)
                                      for (unsigned n = 1; n <= f.m_max; ++n) fact(ctx, in, x, m, n, f.m_max, t);
                          }};
    };
    auto at = [](RingContext& ctx, std::uint32_t x, unsigned m, unsigned n) {
        return "x=" + ctx.ring().to_string(ctx.ring().element(x)) + " " + pair_str(m, n);
    };

    c.push_back(grid_fact("T-VNRFACTS-1", "x is (m,n)-vnr when m <= n",
                          [at](RingContext& ctx, const Instance& in, std::uint32_t x, unsigned m, unsigned n,
                               unsigned, Tally& t) {
                              t.implication(m <= n, ctx.vnr(x, m, n), ctx, in, at(ctx, x, m, n) + ": not vnr");
                          }));
    c.push_back(grid_fact("T-VNRFACTS-2", "(m,n)-vnr implies (m',n')-vnr for m' <= m, n' >= n",
                          [at](RingContext& ctx, const Instance& in, std::uint32_t x, unsigned m, unsigned n,
                               unsigned g, Tally& t) {
                              if (!ctx.vnr(x, m, n)) return t.vacuous();
                              for (unsigned m2 = 1; m2 <= m; ++m2)
                                  for (unsigned n2 = n; n2 <= g; ++n2)
                                      if (!ctx.vnr(x, m2, n2))
                                          return t.fail(ctx, in, at(ctx, x, m, n) + ": not vnr at " + pair_str(m2, n2));
                              t.substantive();
                          }));
    c.push_back(grid_fact("T-VNRFACTS-3", "units and 0 are (m,n)-vnr for all m, n",
                          [at](RingContext& ctx, const Instance& in, std::uint32_t x, unsigned m, unsigned n,
                               unsigned, Tally& t) {
                              Element e = ctx.ring().element(x);
                              t.implication(x == 0 || ctx.ring().is_unit(e), ctx.vnr(x, m, n), ctx, in,
                                            at(ctx, x, m, n) + ": not vnr");
                          }));
    c.push_back(grid_fact("T-VNRFACTS-4", "x outside Z(R), U(R) and 0 is (m,n)-vnr iff m <= n",
                          [at](RingContext& ctx, const Instance& in, std::uint32_t x, unsigned m, unsigned n,
                               unsigned, Tally& t) {
                              Element e = ctx.ring().element(x);
                              bool hyp = x != 0 && !ctx.ring().is_unit(e) && !ctx.ring().is_zero_divisor(e);
                              if (!hyp) return t.vacuous();
                              bool lhs = ctx.vnr(x, m, n);
                              if (lhs == (m <= n)) return t.substantive();
                              t.fail(ctx, in, at(ctx, x, m, n) + ": vnr does not match m <= n");
                          }));
    c.push_back(grid_fact("T-VNRFACTS-5", "x^n = 0 implies (m,n)-vnr for every m",
                          [at](RingContext& ctx, const Instance& in, std::uint32_t x, unsigned m, unsigned n,
                               unsigned, Tally& t) {
                              t.implication(ctx.ring().power_index(x, n) == 0, ctx.vnr(x, m, n), ctx, in,
                                            at(ctx, x, m, n) + ": not vnr");
                          }));
    c.push_back(grid_fact("T-VNRFACTS-6", "nilpotency index k >= 2: (m,n)-vnr iff m <= n or n >= k",
                          [at](RingContext& ctx, const Instance& in, std::uint32_t x, unsigned m, unsigned n,
                               unsigned, Tally& t) {
                              auto k = ctx.ring().nilpotency_index(ctx.ring().element(x));
                              if (!k || *k < 2) return t.vacuous();
                              if (ctx.vnr(x, m, n) == (m <= n || n >= *k)) return t.substantive();
                              t.fail(ctx, in, at(ctx, x, m, n) + ": vnr does not match m <= n or n >= " +
                                                  std::to_string(*k));
                          }));
    c.push_back(grid_fact("T-VNRFACTS-7",
                          "(m,n)-vnr with m > n implies (m+1,n)-vnr and (m',n')-vnr for all m', n' >= n",
                          [at](RingContext& ctx, const Instance& in, std::uint32_t x, unsigned m, unsigned n,
                               unsigned g, Tally& t) {
                              if (m <= n || !ctx.vnr(x, m, n)) return t.vacuous();
                              if (!ctx.vnr(x, m + 1, n))
                                  return t.fail(ctx, in, at(ctx, x, m, n) + ": not (m+1,n)-vnr");
                              for (unsigned m2 = 1; m2 <= g + 1; ++m2)
                                  for (unsigned n2 = n; n2 <= g; ++n2)
                                      if (!ctx.vnr(x, m2, n2))
                                          return t.fail(ctx, in, at(ctx, x, m, n) + ": not vnr at " + pair_str(m2, n2));
                              t.substantive();
                          }));

    c.push_back({"T-STRONG",
                 "m > n: R (m,n)-regular iff (m',n')-regular for all m', n' >= n; then strongly "
                 "pi-regular and dim 0",
                 general, [](RingContext&, const InstanceFamily& f) { return per_pair(f.strict_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     bool lhs = ctx.regular(in.m, in.n);
                     bool rhs = true;
                     for (unsigned m2 = 1; m2 <= f.m_max + 1 && rhs; ++m2)
                         for (unsigned n2 = in.n; n2 <= f.m_max && rhs; ++n2) rhs = ctx.regular(m2, n2);
                     if (lhs != rhs)
                         return t.equivalence(lhs, rhs, ctx, in, "(m,n)-regular", "regular on the grid");
                     if (!lhs) return t.vacuous();
                     if (!is_strongly_pi_regular(ctx.ring()).holds)
                         return t.fail(ctx, in, "regular but not strongly pi-regular");
                     const auto& d = ctx.dim();
                     if (d.lower_bound) return t.skip();
                     if (d.value != 0) return t.fail(ctx, in, "regular but dim != 0");
                     t.substantive();
                 }});

    c.push_back({"T-ALLWEAK",
                 "m > n: every proper ideal weakly (m,n)-closed iff non-nilpotents are (m,n)-vnr and "
                 "w^m = 0 on Nil(R)",
                 general, [](RingContext&, const InstanceFamily& f) { return per_pair(f.strict_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     if (!ctx.complete()) return t.skip();
                     bool lhs = true;
                     for (auto id : ctx.proper_ids()) lhs = lhs && ctx.weakly(id, in.m, in.n);
                     bool rhs = nil_exponent_bounded(ctx.ring(), in.m);
                     for (std::uint32_t x = 0; x < ctx.ring().order() && rhs; ++x)
                         if (!ctx.ring().is_nilpotent(ctx.ring().element(x))) rhs = ctx.vnr(x, in.m, in.n);
                     t.equivalence(lhs, rhs, ctx, in, "all proper ideals weakly closed", "element criterion");
                 }});

    c.push_back({"T-ALLCLOSED", "every proper ideal (m,n)-closed iff R is (m,n)-regular", general,
                 [](RingContext&, const InstanceFamily& f) { return per_pair(f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     if (!ctx.complete()) return t.skip();
                     bool lhs = true;
                     for (auto id : ctx.proper_ids()) lhs = lhs && ctx.closed(id, in.m, in.n);
                     t.equivalence(lhs, ctx.regular(in.m, in.n), ctx, in, "all proper ideals closed",
                                   "(m,n)-regular");
                 }});

    c.push_back({"T-DIM0",
                 "m > n: all proper ideals (m,n)-closed, R (m,n)-regular, and dim 0 with w^n = 0 on "
                 "Nil(R) agree",
                 general, [](RingContext&, const InstanceFamily& f) { return per_pair(f.strict_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     if (!ctx.complete()) return t.skip();
                     bool all_closed = true;
                     for (auto id : ctx.proper_ids()) all_closed = all_closed && ctx.closed(id, in.m, in.n);
                     bool dim0 = ctx.dim().value == 0 && nil_exponent_bounded(ctx.ring(), in.n);
                     t.all_equal({{"all proper closed", all_closed},
                                  {"(m,n)-regular", ctx.regular(in.m, in.n)},
                                  {"dim 0 and w^n = 0", dim0}},
                                 ctx, in);
                 }});

    c.push_back({"T-REDUCED",
                 "R reduced: all proper weakly (m,n)-closed, all proper (m,n)-closed and (m,n)-regular agree",
                 general, [](RingContext&, const InstanceFamily& f) { return per_pair(f.mn_pairs()); },
                 [](RingContext& ctx, const Instance& in, const InstanceFamily&, Tally& t) {
                     if (!ctx.ring().is_reduced()) return t.vacuous();
                     if (!ctx.complete()) return t.skip();
                     bool weak = true, closed = true;
                     for (auto id : ctx.proper_ids()) {
                         weak = weak && ctx.weakly(id, in.m, in.n);
                         closed = closed && ctx.closed(id, in.m, in.n);
                     }
                     bool regular = ctx.regular(in.m, in.n);
                     if (weak == closed && closed == regular) return t.substantive();
                     t.all_equal({{"all weakly closed", weak}, {"all closed", closed}, {"regular", regular}}, ctx, in);
                 }});

    c.push_back({"T-SPR", "strongly pi-regular, some (m,n)-regular with m > n, some n for every m, and "
                          "dim 0 with bounded nil exponent agree",
                 general, once,
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     const FiniteRing& r = ctx.ring();
                     const unsigned bound = r.order();
                     bool spr = is_strongly_pi_regular(r).holds;
                     bool some_pair = false;
                     for (unsigned n = 1; n <= bound && !some_pair; ++n)
                         for (unsigned m = n + 1; m <= n + f.m_max && !some_pair; ++m) some_pair = ctx.regular(m, n);
                     bool every_m = false;
                     for (unsigned n = 1; n <= bound && !every_m; ++n) {
                         bool all = true;
                         for (unsigned m = 1; m <= std::max(f.m_max, 2 * n) + 1 && all; ++m) all = ctx.regular(m, n);
                         every_m = all;
                     }
                     const auto& d = ctx.dim();
                     if (d.lower_bound) return t.skip();
                     bool nil_bounded = false;
                     for (unsigned n = 1; n <= bound && !nil_bounded; ++n) nil_bounded = nil_exponent_bounded(r, n);
                     t.all_equal({{"strongly pi-regular", spr},
                                  {"(m,n)-regular for some m > n", some_pair},
                                  {"(m,n)-regular for all m", every_m},
                                  {"dim 0 and nil bounded", d.value == 0 && nil_bounded}},
                                 ctx, in);
                 }});

    c.push_back({"T-BK", "V(R,x) = B_k with k the smallest index such that (i,k) is in V(R,x) for "
                         "some i > k; likewise V(R)",
                 general, once,
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     const FiniteRing& r = ctx.ring();
                     const unsigned g = f.m_max;
                     std::vector<unsigned> ks(r.order());
                     for (std::uint32_t x = 0; x < r.order(); ++x) {
                         auto k = defining_index(ctx, x, g);
                         if (!k) return t.fail(ctx, in, "no defining index for x=" + r.to_string(r.element(x)));
                         ks[x] = *k;
                         auto shape = VnrProfile::bounded(*k);
                         if (vnr_profile_element(r, r.element(x)) != shape)
                             return t.fail(ctx, in, "x=" + r.to_string(r.element(x)) + ": profile disagrees with B_" +
                                                        std::to_string(*k));
                         for (unsigned m = 1; m <= g; ++m)
                             for (unsigned n = 1; n <= g; ++n) {
                                 if (ctx.vnr(x, m, n) != shape.contains(m, n))
                                     return t.fail(ctx, in, "x=" + r.to_string(r.element(x)) + " " + pair_str(m, n) +
                                                                ": V(R,x) differs from B_" + std::to_string(*k));
                                 // Units and zero are B_1, trivially.
                                 (*k == 1 && x != 0 && m <= n) ? t.vacuous() : t.substantive();
                             }
                     }
                     // Ring level: smallest k such that every x has some (i,k) with i > k.
                     unsigned big_k = 0;
                     for (unsigned k = 1; k <= r.order() && big_k == 0; ++k) {
                         bool all = true;
                         for (std::uint32_t x = 0; x < r.order() && all; ++x) {
                             bool some = false;
                             for (unsigned i = k + 1; i <= 2 * k + g && !some; ++i) some = ctx.vnr(x, i, k);
                             all = some;
                         }
                         if (all) big_k = k;
                     }
                     if (big_k == 0) return t.fail(ctx, in, "no defining index for V(R)");
                     auto shape = VnrProfile::bounded(big_k);
                     if (vnr_profile_ring(r) != shape)
                         return t.fail(ctx, in, "ring profile disagrees with B_" + std::to_string(big_k));
                     for (unsigned m = 1; m <= g; ++m)
                         for (unsigned n = 1; n <= g; ++n) {
                             if (ctx.regular(m, n) != shape.contains(m, n))
                                 return t.fail(ctx, in, pair_str(m, n) + ": V(R) differs from B_" + std::to_string(big_k));
                             t.substantive();
                         }
                 }});

    c.push_back({"T-ZPK", "Z_{p^k} is k-regular", profile_prime_powers, once,
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     auto [p, k] = *prime_power(std::get<CyclicStructure>(ctx.ring().structure()).modulus);
                     auto shape = VnrProfile::bounded(k);
                     if (vnr_profile_ring(ctx.ring()) != shape)
                         return t.fail(ctx, in, "profile is not B_" + std::to_string(k));
                     for (unsigned m = 1; m <= f.m_max; ++m)
                         for (unsigned n = 1; n <= f.m_max; ++n) {
                             if (ctx.regular(m, n) != shape.contains(m, n))
                                 return t.fail(ctx, in, pair_str(m, n) + ": V(R) differs from B_" + std::to_string(k));
                             t.substantive();
                         }
                 }});

    c.push_back({"T-PRODMAX",
                 "(x1,x2) is (m,n)-vnr iff both components are; V(R1 x R2) = B_max(k1,k2)", products, once,
                 [](RingContext& ctx, const Instance& in, const InstanceFamily& f, Tally& t) {
                     const FiniteRing& r = ctx.ring();
                     RingContext& l = ctx.left();
                     RingContext& rt = ctx.right();
                     for (std::uint32_t x = 0; x < r.order(); ++x) {
                         auto [a, b] = r.components(r.element(x));
                         for (unsigned m = 1; m <= f.m_max; ++m)
                             for (unsigned n = 1; n <= f.m_max; ++n) {
                                 bool both = l.vnr(a.index(), m, n) && rt.vnr(b.index(), m, n);
                                 if (ctx.vnr(x, m, n) != both)
                                     return t.fail(ctx, in, "x=" + r.to_string(r.element(x)) + " " + pair_str(m, n) +
                                                                ": componentwise vnr disagrees");
                                 t.substantive();
                             }
                     }
                     unsigned k = std::max(*vnr_profile_ring(l.ring()).k(), *vnr_profile_ring(rt.ring()).k());
                     if (vnr_profile_ring(r) != VnrProfile::bounded(k))
                         return t.fail(ctx, in, "ring profile is not B_" + std::to_string(k));
                     t.substantive();
                 }});

    return c;
}

}  // namespace detail

inline const std::vector<TheoremDef>& theorem_catalog() {
    static const std::vector<TheoremDef> catalog = detail::build_catalog();
    return catalog;
}

inline const TheoremDef& find_theorem(std::string_view id) {
    for (const auto& t : theorem_catalog())
        if (t.id == id) return t;
    throw SpecError("unknown theorem id '" + std::string(id) + "'");
}

/// "all" or a comma separated list of catalog ids.
inline std::vector<std::string> resolve_theorem_ids(std::string_view text) {
    std::vector<std::string> out;
    if (detail::trim(text) == "all") {
        for (const auto& t : theorem_catalog()) out.push_back(t.id);
        return out;
    }
    for (auto part : detail::split(text, ',')) out.push_back(find_theorem(part).id);
    if (out.empty()) throw SpecError("no theorem ids given");
    return out;
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

/// Runs `job(i)` for i in [0, count) on up to `workers` threads.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

inline Tally check_ring(const TheoremDef& def, const std::string& spec, const InstanceFamily& family) {
    Tally tally(def.id);
    RingPtr ring;
    try {
        ring = build_ring(spec, BuildOptions{family.max_order});
    } catch (const CapExceeded&) {
        tally.skip();
        return tally;
    }
    RingContext ctx(ring, family.ideals);
    std::vector<Instance> instances;
    try {
        instances = def.instances(ctx, family);
    } catch (const CapExceeded&) {
        tally.skip();
        return tally;
    }
    for (const Instance& in : instances) {
        try {
            def.check(ctx, in, family, tally);
        } catch (const BudgetExceeded&) {
            tally.skip();
        } catch (const CapExceeded&) {
            tally.skip();
        }
    }
    return tally;
}

}  // namespace detail

/// Rebuilds the counterexample from its strings and re-runs the check.
/// True when the failure reproduces.
inline bool replay(const TheoremDef& def, const Counterexample& ce, const InstanceFamily& family) {
    RingPtr ring = build_ring(ce.ring, BuildOptions{family.max_order});
    RingContext ctx(ring, family.ideals);
    Instance in;
    for (const auto& gens : ce.ideals)
        in.ideals.push_back(ctx.intern(ideal_from_literals(ring, parse_element_literals(gens))));
    if (ce.element) in.element = ring->parse_element(*ce.element).index();
    in.m = ce.m;
    in.n = ce.n;
    in.params = ce.params;
    Tally tally(def.id);
    def.check(ctx, in, family, tally);
    return tally.failure().has_value();
}

inline bool replay(const Counterexample& ce, const InstanceFamily& family) {
    return replay(find_theorem(ce.theorem_id), ce, family);
}

/**
 * Checks `def` on every ring of the family. Rings are distributed over
 * `workers` threads; tallies are merged in ring order, so the verdict and
 * its counterexample do not depend on the worker count.
 */
inline TheoremVerdict verify_theorem(const TheoremDef& def, const InstanceFamily& family,
                                     unsigned workers = default_workers()) {
    family.validate();
    const auto specs = def.rings(family);
    std::vector<Tally> tallies(specs.size());
    detail::parallel_for(specs.size(), workers,
                         [&](std::size_t i) { tallies[i] = detail::check_ring(def, specs[i], family); });
    Tally total(def.id);
    for (const auto& t : tallies) total.merge(t);

    TheoremVerdict v;
    v.theorem_id = def.id;
    v.instances_checked = total.checked();
    v.vacuous_count = total.vacuous_count();
    v.skipped_count = total.skipped();
    if (total.failure()) {
        v.status = VerdictStatus::fail;
        v.counterexample = total.failure();
        v.replay_confirmed = replay(def, *v.counterexample, family);
    } else if (v.instances_checked == 0) {
        v.status = VerdictStatus::skipped;
    }
    return v;
}

inline TheoremVerdict verify_theorem(std::string_view id, const InstanceFamily& family,
                                     unsigned workers = default_workers()) {
    return verify_theorem(find_theorem(id), family, workers);
}

// ---------------------------------------------------------------------------
// Counterexample search for non-theorems
// ---------------------------------------------------------------------------

struct SearchWitness {
    std::string predicate;
    std::string ring;
    std::string ideal;       // element set, e.g. "{0, 4}"
    std::string ideal_gens;  // generator list
    unsigned m = 0;
    unsigned n = 0;
    std::string detail;
};

inline const std::vector<std::string>& search_predicates() {
    static const std::vector<std::string> ids{"weak-not-closed-exists", "weak-not-monotone-in-m",
                                              "weakly-closed-not-weakly-radical"};
    return ids;
}

/**
 * All (ring, ideal, m, n) in the family's general rings that witness the
 * predicate:
 *  - weak-not-closed-exists: weakly (m,n)-closed, not (m,n)-closed;
 *  - weak-not-monotone-in-m: weakly (m,n)-closed, not weakly (m',n) for
 *    some m' < m (the smallest such m' is reported);
 *  - weakly-closed-not-weakly-radical: weakly (m,n)-closed, not weakly radical.
 */
inline std::vector<SearchWitness> search_counterexamples(std::string_view predicate,
                                                         const InstanceFamily& family,
                                                         unsigned workers = default_workers()) {
    family.validate();
    const auto& ids = search_predicates();
    if (std::find(ids.begin(), ids.end(), predicate) == ids.end())
        throw SpecError("unknown predicate '" + std::string(predicate) + "'");
    const auto specs = family.general_rings();
    std::vector<std::vector<SearchWitness>> found(specs.size());
    detail::parallel_for(specs.size(), workers, [&](std::size_t s) {
        RingPtr ring = build_ring(specs[s], BuildOptions{family.max_order});
        RingContext ctx(ring, family.ideals);
        const FiniteRing& r = *ring;
        std::map<std::uint32_t, std::optional<RadicalDecision>> radical;
        for (auto id : ctx.proper_ids())
            for (MnPair p : family.mn_pairs()) {
                const Ideal& I = ctx.ideal(id);
                auto status = ctx.status(id, p.m, p.n);
                if (status == ClosureStatus::not_weakly) continue;
                SearchWitness w{std::string(predicate), specs[s], I.to_string(),
                                to_string(I.generator_literals()), p.m, p.n, {}};
                if (predicate == "weak-not-closed-exists") {
                    if (status != ClosureStatus::weakly_only) continue;
                    w.detail = "unbreakable-zero element " + r.to_string(*classify(I, p.m, p.n).witness);
                } else if (predicate == "weak-not-monotone-in-m") {
                    unsigned lower = 0;
                    for (unsigned m2 = 1; m2 < p.m && lower == 0; ++m2)
                        if (!ctx.weakly(id, m2, p.n)) lower = m2;
                    if (lower == 0) continue;
                    w.detail = "not weakly " + detail::pair_str(lower, p.n) + "-closed";
                } else {
                    auto& rad = radical[id];
                    if (!rad) rad = is_weakly_radical(I);
                    if (rad->holds) continue;
                    w.detail = "x=" + r.to_string(*rad->witness) + ", t=" + std::to_string(rad->exponent);
                }
                found[s].push_back(std::move(w));
            }
    });
    std::vector<SearchWitness> out;
    for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace closure_lab
