#pragma once

/**
 * @file ring_spec.hpp
 * @brief Symbolic descriptions of finite commutative rings.
 *
 * Grammar (ASCII, whitespace insignificant):
 *
 *     spec    := term | term "x" spec
 *     term    := primary | primary "/" "(" literals ")"
 *     primary := "Z" int | "Z" int "(+)" "Z" int | "(" spec ")"
 *     literals:= literal { "," literal }
 *     literal := int | "(" literal { "," literal } ")"
 *
 * "x" is right associative. "/" may follow a bare "Z" int or a
 * parenthesised spec, never a bare idealization. An integer literal k
 * denotes k·1 in the ring it is interpreted in; a tuple literal names the
 * components of a product or idealization element.
 */

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"

namespace closure_lab {

/// Integer `k` (meaning k·1) or a tuple of component literals.
struct ElementLiteral {
    bool is_tuple = false;
    std::uint64_t value = 0;
    std::vector<ElementLiteral> parts;

    static ElementLiteral integer(std::uint64_t v) { return {false, v, {}}; }
    static ElementLiteral tuple(std::vector<ElementLiteral> ps) {
        return {true, 0, std::move(ps)};
    }

    friend bool operator==(const ElementLiteral&, const ElementLiteral&) = default;
};

struct RingSpec;
using RingSpecPtr = std::shared_ptr<const RingSpec>;

struct CyclicSpec {
    std::uint64_t modulus;
};

struct ProductSpec {
    RingSpecPtr left;
    RingSpecPtr right;
};

/// Z_n (+) Z_d with d | n.
struct IdealizationSpec {
    std::uint64_t base_modulus;
    std::uint64_t module_modulus;
};

struct QuotientSpec {
    RingSpecPtr base;
    std::vector<ElementLiteral> generators;
};

struct RingSpec {
    std::variant<CyclicSpec, ProductSpec, IdealizationSpec, QuotientSpec> node;

    static RingSpec cyclic(std::uint64_t n) { return {CyclicSpec{n}}; }
    static RingSpec product(RingSpec l, RingSpec r) {
        return {ProductSpec{std::make_shared<const RingSpec>(std::move(l)),
                            std::make_shared<const RingSpec>(std::move(r))}};
    }
    static RingSpec idealization(std::uint64_t n, std::uint64_t d) {
        return {IdealizationSpec{n, d}};
    }
    static RingSpec quotient(RingSpec base, std::vector<ElementLiteral> gens) {
        return {QuotientSpec{std::make_shared<const RingSpec>(std::move(base)),
                             std::move(gens)}};
    }

    bool is_cyclic() const { return std::holds_alternative<CyclicSpec>(node); }
    bool is_product() const { return std::holds_alternative<ProductSpec>(node); }
    bool is_idealization() const { return std::holds_alternative<IdealizationSpec>(node); }
    bool is_quotient() const { return std::holds_alternative<QuotientSpec>(node); }
};

inline bool operator==(const RingSpec& a, const RingSpec& b) {
    if (a.node.index() != b.node.index()) return false;
    if (auto* c = std::get_if<CyclicSpec>(&a.node))
        return c->modulus == std::get<CyclicSpec>(b.node).modulus;
    if (auto* p = std::get_if<ProductSpec>(&a.node)) {
        const auto& q = std::get<ProductSpec>(b.node);
        return *p->left == *q.left && *p->right == *q.right;
    }
    if (auto* i = std::get_if<IdealizationSpec>(&a.node)) {
        const auto& j = std::get<IdealizationSpec>(b.node);
        return i->base_modulus == j.base_modulus && i->module_modulus == j.module_modulus;
    }
    const auto& q = std::get<QuotientSpec>(a.node);
    const auto& r = std::get<QuotientSpec>(b.node);
    return *q.base == *r.base && q.generators == r.generators;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

inline std::string to_string(const ElementLiteral& lit) {
    if (!lit.is_tuple) return std::to_string(lit.value);
    std::string out = "(";
    for (std::size_t i = 0; i < lit.parts.size(); ++i) {
        if (i) out += ",";
        out += to_string(lit.parts[i]);
    }
    return out + ")";
}

inline std::string to_string(const std::vector<ElementLiteral>& lits) {
    std::string out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i) out += ", ";
        out += to_string(lits[i]);
    }
    return out;
}

/// Canonical printer; its output re-parses to an equal spec.
inline std::string to_string(const RingSpec& spec) {
    struct Printer {
        std::string operator()(const CyclicSpec& c) const {
            return "Z" + std::to_string(c.modulus);
        }
        std::string operator()(const IdealizationSpec& i) const {
            return "Z" + std::to_string(i.base_modulus) + " (+) Z" +
                   std::to_string(i.module_modulus);
        }
        std::string operator()(const ProductSpec& p) const {
            std::string left = to_string(*p.left);
            if (p.left->is_product()) left = "(" + left + ")";
            return left + " x " + to_string(*p.right);
        }
        std::string operator()(const QuotientSpec& q) const {
            std::string base = to_string(*q.base);
            if (!q.base->is_cyclic()) base = "(" + base + ")";
            return base + "/(" + to_string(q.generators) + ")";
        }
    };
    return std::visit(Printer{}, spec.node);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    RingSpec parse_spec_eof() {
        RingSpec s = parse_spec();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return s;
    }

    std::vector<ElementLiteral> parse_literals_eof() {
        skip_ws();
        if (pos_ == text_.size()) return {};
        auto lits = parse_literals();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return lits;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    // "(+)" with arbitrary inner whitespace.
    bool peek_oplus() {
        skip_ws();
        std::size_t p = pos_;
        auto next = [&]() -> char {
            while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
            return p < text_.size() ? text_[p++] : '\0';
        };
        return next() == '(' && next() == '+' && next() == ')' ? (end_oplus_ = p, true) : false;
    }
    std::size_t end_oplus_ = 0;

    std::uint64_t parse_int() {
        skip_ws();
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > 0xFFFFFFFFull) {
                pos_ = start;
                fail("integer too large");
            }
            ++pos_;
        }
        if (pos_ == start) fail("expected integer");
        return v;
    }

    std::uint64_t parse_modulus() {
        std::size_t at = (skip_ws(), pos_);
        std::uint64_t n = parse_int();
        if (n < 2) throw ParseError("modulus < 2", at);
        return n;
    }

    RingSpec parse_spec() {
        RingSpec left = parse_term();
        if (peek('x')) {
            ++pos_;
            RingSpec right = parse_spec();
            return RingSpec::product(std::move(left), std::move(right));
        }
        return left;
    }

    RingSpec parse_term() {
        skip_ws();
        bool quotientable = false;
        RingSpec base;
        if (peek('(')) {
            ++pos_;
            base = parse_spec();
            expect(')');
            quotientable = true;
        } else if (peek('Z')) {
            ++pos_;
            std::uint64_t n = parse_modulus();
            if (peek_oplus()) {
                std::size_t at = pos_;
                pos_ = end_oplus_;
                expect('Z');
                std::size_t dat = (skip_ws(), pos_);
                std::uint64_t d = parse_int();
                if (d < 1) throw ParseError("module modulus < 1", dat);
                if (n % d != 0)
                    throw ParseError(std::to_string(d) + " does not divide " + std::to_string(n) +
                                         " (d must divide n)",
                                     at);
                base = RingSpec::idealization(n, d);
            } else {
                base = RingSpec::cyclic(n);
                quotientable = true;
            }
        } else {
            fail("expected 'Z' or '('");
        }
        if (peek('/')) {
            if (!quotientable) fail("'/' must follow a cyclic or parenthesised term");
            ++pos_;
            expect('(');
            auto gens = parse_literals();
            expect(')');
            return RingSpec::quotient(std::move(base), std::move(gens));
        }
        return base;
    }

    std::vector<ElementLiteral> parse_literals() {
        std::vector<ElementLiteral> out;
        out.push_back(parse_literal());
        while (peek(',')) {
            ++pos_;
            out.push_back(parse_literal());
        }
        return out;
    }

    ElementLiteral parse_literal() {
        if (peek('(')) {
            ++pos_;
            auto parts = parse_literals();
            expect(')');
            return ElementLiteral::tuple(std::move(parts));
        }
        return ElementLiteral::integer(parse_int());
    }
};

}  // namespace detail

/// Parses a ring spec. Throws ParseError with the offending position.
inline RingSpec parse_ring_spec(std::string_view text) {
    return detail::SpecParser(text).parse_spec_eof();
}

/// Parses a comma separated element literal list such as "4, 6" or
/// "(2,0), (0,1)". The empty string yields an empty list.
inline std::vector<ElementLiteral> parse_element_literals(std::string_view text) {
    return detail::SpecParser(text).parse_literals_eof();
}

}  // namespace closure_lab
