#pragma once

// Tiny filter-expression language for the CLI and tests.
//
//   expr   := atom+                      (juxtaposition composes; the
//                                         LEFTMOST atom is applied LAST)
//   atom   := 'L' n | 'U' n | 'M' n | 'C' n | 'F' n | 'R' n ',' k
//           | 'max' '{' offsets '}' | 'min' '{' offsets '}'
//   offset := int | '[' int ',' int ']'
//
// Whitespace is insignificant. "L1 U1" is L_1 composed with U_1 (U_1 runs
// first); "R2,3" is the rank filter with window 5 selecting the 3rd smallest.

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lulu/cascade.hpp"
#include "lulu/errors.hpp"
#include "lulu/filter.hpp"
#include "lulu/pbf.hpp"

namespace lulu {

struct BasicAtom {
    char kind;  // L U M C F R
    int n = 0;
    int k = 0;  // rank only

    friend bool operator==(const BasicAtom&, const BasicAtom&) = default;
};

struct ElementAtom {
    StageKind kind;
    std::vector<Offset> offsets;

    friend bool operator==(const ElementAtom&, const ElementAtom&) = default;
};

using Atom = std::variant<BasicAtom, ElementAtom>;

struct FilterExpr {
    std::vector<Atom> atoms;

    friend bool operator==(const FilterExpr&, const FilterExpr&) = default;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    FilterExpr parse() {
        FilterExpr e;
        skip_ws();
        while (pos_ < s_.size()) {
            e.atoms.push_back(atom());
            skip_ws();
        }
        if (e.atoms.empty()) throw parse_error("empty filter expression", 0);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) throw parse_error(std::string("expected '") + c + "' " + what, pos_);
    }

    int integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = eat('-');
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw parse_error("expected an integer", pos_);
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) throw parse_error("integer out of range", start);
            ++pos_;
        }
        return static_cast<int>(neg ? -v : v);
    }

    Offset offset() {
        skip_ws();
        if (eat('[')) {
            int a = integer();
            skip_ws();
            expect(',', "between offset coordinates");
            int b = integer();
            skip_ws();
            expect(']', "after 2D offset");
            return {a, b};
        }
        return {integer(), 0};
    }

    Atom atom() {
        skip_ws();
        std::size_t start = pos_;
        if (s_.compare(pos_, 3, "max") == 0 || s_.compare(pos_, 3, "min") == 0) {
            StageKind kind = s_[pos_] == 'm' && s_[pos_ + 1] == 'a' ? StageKind::Dilation
                                                                    : StageKind::Erosion;
            pos_ += 3;
            skip_ws();
            expect('{', "after max/min");
            std::vector<Offset> offs;
            do {
                offs.push_back(offset());
                skip_ws();
            } while (eat(','));
            expect('}', "after offset list");
            if (offs.empty()) throw parse_error("empty structural element", start);
            return ElementAtom{kind, std::move(offs)};
        }
        char c = peek();
        if (c == 'L' || c == 'U' || c == 'M' || c == 'C' || c == 'F' || c == 'R') {
            ++pos_;
            skip_ws();
            int n = integer();
            if (n < 1) throw parse_error("filter order must be >= 1", start);
            BasicAtom a{c, n, 0};
            if (c == 'R') {
                skip_ws();
                expect(',', "between rank parameters");
                a.k = integer();
                if (a.k < 1 || a.k > 2 * n + 1)
                    throw parse_error("rank k must satisfy 1 <= k <= 2n+1", start);
            }
            return a;
        }
        throw parse_error("unknown atom", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline FilterExpr parse_filter(std::string_view text) { return detail::ExprParser(text).parse(); }

inline std::string to_string(const FilterExpr& e) {
    std::string out;
    for (const auto& atom : e.atoms) {
        if (!out.empty()) out += " ";
        if (const auto* b = std::get_if<BasicAtom>(&atom)) {
            out += b->kind;
            out += std::to_string(b->n);
            if (b->kind == 'R') out += "," + std::to_string(b->k);
        } else {
            const auto& el = std::get<ElementAtom>(atom);
            out += el.kind == StageKind::Dilation ? "max{" : "min{";
            bool first = true;
            bool two_d = false;
            for (auto o : el.offsets)
                if (o.y != 0) two_d = true;
            for (auto o : el.offsets) {
                if (!first) out += ",";
                if (two_d)
                    out += "[" + std::to_string(o.x) + "," + std::to_string(o.y) + "]";
                else
                    out += std::to_string(o.x);
                first = false;
            }
            out += "}";
        }
    }
    return out;
}

// Builds the runnable filter. Cascade atoms compose in cascade form; a rank
// or median atom anywhere turns the product into a PBF composition.
inline Filter build(const FilterExpr& e, std::size_t term_cap = kDefaultTermCap) {
    Filter acc;
    bool have = false;
    for (const auto& atom : e.atoms) {
        Filter cur;
        if (const auto* b = std::get_if<BasicAtom>(&atom)) {
            switch (b->kind) {
            case 'L': cur = L(b->n); break;
            case 'U': cur = U(b->n); break;
            case 'C': cur = C(b->n); break;
            case 'F': cur = F(b->n); break;
            case 'M': cur = median_pbf(b->n); break;
            case 'R': cur = pbf_of_rank(2 * b->n + 1, b->k, term_cap); break;
            default: throw parse_error("unknown atom kind", 0);
            }
        } else {
            const auto& el = std::get<ElementAtom>(atom);
            bool two_d = false;
            for (auto o : el.offsets)
                if (o.y != 0) two_d = true;
            cur = Cascade(two_d ? 2 : 1, {Stage{el.kind, StructuralElement(el.offsets)}});
        }
        if (!have) {
            acc = std::move(cur);
            have = true;
        } else {
            if (dimension(acc) != dimension(cur))
                throw parse_error("mixed 1D and 2D atoms in one expression", 0);
            acc = compose(acc, cur, term_cap);
        }
    }
    return acc;
}

} // namespace lulu
