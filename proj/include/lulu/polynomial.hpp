#pragma once

// Exact univariate polynomials in p, the workhorse behind every output
// distribution computed here. Coefficients are exact rationals (they come out
// integral for every distribution transfer polynomial, but rank-probability
// combinations are rational along the way). Formulas stated in q = 1 - p are
// converted to the p basis on construction; q is never stored.

#include <cstddef>
#include <string>
#include <vector>

#include "lulu/exact.hpp"

namespace lulu {

class Poly {
public:
    Poly() = default;

    // coeffs[k] is the coefficient of p^k
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(1); }
    static Poly constant(Rat v) { return Poly({std::move(v)}); }
    static Poly identity() { return monomial(1, 1); }  // p

    static Poly monomial(Rat coeff, std::size_t power) {
        std::vector<Rat> c(power + 1);
        c[power] = std::move(coeff);
        return Poly(std::move(c));
    }

    static Poly from_integers(std::initializer_list<long long> coeffs) {
        std::vector<Rat> c;
        c.reserve(coeffs.size());
        for (auto v : coeffs) c.emplace_back(v);
        return Poly(std::move(c));
    }

    // sum of coeffs[k] * q^k with q = 1 - p
    static Poly from_q_basis(const std::vector<Rat>& coeffs) {
        Poly q = one() - identity();
        Poly r, qk = one();
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (!coeffs[k].is_zero()) r += qk * constant(coeffs[k]);
            if (k + 1 < coeffs.size()) qk = qk * q;
        }
        return r;
    }

    // coeff * p^i * (1-p)^j, the building block of a-vector expansions
    static Poly pq_term(const Rat& coeff, int i, int j) {
        std::vector<Rat> c(static_cast<std::size_t>(i) + j + 1);
        for (int m = 0; m <= j; ++m) {
            Rat term = coeff * Rat(binomial(j, m));
            if (m & 1) term = -term;
            c[static_cast<std::size_t>(i) + m] = term;
        }
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

    bool integral() const {
        for (const auto& v : c_)
            if (!v.is_integer()) return false;
        return true;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Rat& s) {
        std::vector<Rat> c = a.c_;
        for (auto& v : c) v = v * s;
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a) { return a * Rat(-1); }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Rat operator()(const Rat& p) const {
        Rat r(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * p + c_[i];
        return r;
    }

    double eval(double p) const {
        double r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * p + c_[i].to_double();
        return r;
    }

    // this(inner(p)), used for the (intentionally wrong) naive chaining test
    Poly substitute(const Poly& inner) const {
        Poly r;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * inner + constant(c_[i]);
        return r;
    }

    // phi(1 - p); with 1 - result this gives the dual transfer polynomial
    Poly reflect() const { return substitute(one() - identity()); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rat> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long long>(i));
        return Poly(std::move(c));
    }

    // exact division by (1 - p); requires p = 1 to be a root
    Poly divide_by_one_minus_p() const {
        if (is_zero()) return Poly();
        // write this = (1-p) * g; g_k determined from the top down
        std::vector<Rat> g(c_.size() - 1);
        Rat carry(0);  // -g_{k} contribution cascading downward
        for (std::size_t k = c_.size(); k-- > 1;) {
            Rat gk = carry - c_[k];
            g[k - 1] = gk;
            carry = gk;
        }
        if (!(carry == c_[0])) throw std::invalid_argument("Poly: 1 is not a root");
        return Poly(std::move(g));
    }

    // index of the lowest nonzero coefficient (degree+1 convention unused;
    // calling this on the zero polynomial is an error)
    std::size_t order_at_zero() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return i;
        throw std::invalid_argument("Poly: zero polynomial has no root order");
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            Rat v = c_[k];
            bool neg = v.sign() < 0;
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            if (neg) v = -v;
            bool unit = v.is_integer() && v.num().is_one();
            if (!unit || k == 0) out += v.is_integer() ? v.to_string() : "(" + v.to_string() + ")";
            if (k >= 1) {
                out += "p";
                if (k >= 2) out += "^" + std::to_string(k);
            }
            first = false;
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rat> c_;
};

// Certifies phi nondecreasing on [0,1] from exact coefficients: strip the
// endpoint roots of phi', then look for a nonnegative Bernstein form of the
// cofactor, elevating the degree until one appears (degree elevation preserves
// nonnegativity, and a polynomial positive on [0,1] certifies eventually).
inline bool is_nondecreasing_on_01(const Poly& phi, int max_elevation = 80) {
    Poly d = phi.derivative();
    if (d.is_zero()) return true;
    // factor p^a
    std::size_t a = d.order_at_zero();
    std::vector<Rat> shifted(d.coeffs().begin() + static_cast<std::ptrdiff_t>(a), d.coeffs().end());
    Poly g{std::vector<Rat>(shifted)};
    // factor (1-p)^b
    while (g(Rat(1)).is_zero()) g = g.divide_by_one_minus_p();
    if (g(Rat(1)).sign() < 0 || g(Rat(0)).sign() < 0) return false;
    std::size_t n = g.degree();
    for (int lift = 0; lift <= max_elevation; ++lift) {
        std::size_t m = n + static_cast<std::size_t>(lift);
        bool ok = true;
        for (std::size_t k = 0; k <= m && ok; ++k) {
            // Bernstein coefficient b_k = sum_j g_j C(k,j)/C(m,j)
            Rat b(0);
            for (std::size_t j = 0; j <= std::min(k, g.degree()); ++j)
                b += g.coeff(j) * Rat(binomial(static_cast<int>(k), static_cast<int>(j)),
                                      binomial(static_cast<int>(m), static_cast<int>(j)));
            if (b.sign() < 0) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

} // namespace lulu
