#pragma once

// Arbitrary-precision signed integers and exact rationals. Magnitudes are
// little-endian base-2^32 limb vectors; division is binary shift-subtract,
// which is plenty for the coefficient sizes that occur here.

#include <algorithm>
#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lulu {

class Int {
public:
    Int() = default;

    Int(long long v) {
        if (v < 0) {
            neg_ = true;
            // avoid overflow on LLONG_MIN
            unsigned long long u = static_cast<unsigned long long>(-(v + 1)) + 1ull;
            set_u64(u);
        } else {
            set_u64(static_cast<unsigned long long>(v));
        }
    }

    Int(int v) : Int(static_cast<long long>(v)) {}
    Int(unsigned long long v) { set_u64(v); }

    static Int from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Int: empty string");
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("Int: no digits");
        Int r;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9') throw std::invalid_argument("Int: bad digit");
            r.mul_small(10);
            r.add_small(static_cast<std::uint32_t>(c - '0'));
        }
        r.neg_ = neg && !r.is_zero();
        return r;
    }

    bool is_zero() const { return mag_.empty(); }
    bool is_one() const { return !neg_ && mag_.size() == 1 && mag_[0] == 1; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    bool is_even() const { return mag_.empty() || (mag_[0] & 1u) == 0; }

    // Fits in long long? (conservative: up to 2 limbs and below 2^63)
    bool fits_i64() const {
        if (mag_.size() > 2) return false;
        unsigned long long u = u64_lo();
        return u <= 0x7fffffffffffffffull || (neg_ && u == 0x8000000000000000ull);
    }

    long long to_i64() const {
        unsigned long long u = u64_lo();
        return neg_ ? -static_cast<long long>(u) : static_cast<long long>(u);
    }

    double to_double() const {
        double r = 0.0;
        for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
        return neg_ ? -r : r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> m = mag_;
        std::string out;
        while (!m.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = m.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<std::uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            std::string grp = std::to_string(rem);
            if (!m.empty()) grp.insert(0, 9 - grp.size(), '0');
            out.insert(0, grp);
        }
        if (neg_) out.insert(0, 1, '-');
        return out;
    }

    friend Int operator-(const Int& a) {
        Int r = a;
        if (!r.is_zero()) r.neg_ = !r.neg_;
        return r;
    }

    friend Int operator+(const Int& a, const Int& b) {
        if (a.neg_ == b.neg_) {
            Int r;
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.neg_ = a.neg_ && !r.mag_.empty();
            return r;
        }
        int c = cmp_mag(a.mag_, b.mag_);
        if (c == 0) return Int();
        Int r;
        if (c > 0) {
            r.mag_ = sub_mag(a.mag_, b.mag_);
            r.neg_ = a.neg_;
        } else {
            r.mag_ = sub_mag(b.mag_, a.mag_);
            r.neg_ = b.neg_;
        }
        return r;
    }

    friend Int operator-(const Int& a, const Int& b) { return a + (-b); }

    friend Int operator*(const Int& a, const Int& b) {
        if (a.is_zero() || b.is_zero()) return Int();
        Int r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (std::size_t i = 0; i < a.mag_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.mag_.size(); ++j) {
                std::uint64_t cur = r.mag_[i + j] +
                                    static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] + carry;
                r.mag_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r.mag_[i + b.mag_.size()] += static_cast<std::uint32_t>(carry);
        }
        r.trim();
        r.neg_ = a.neg_ != b.neg_;
        return r;
    }

    // Truncating division; remainder takes the sign of the dividend.
    friend Int operator/(const Int& a, const Int& b) { return divmod(a, b).first; }
    friend Int operator%(const Int& a, const Int& b) { return divmod(a, b).second; }

    static std::pair<Int, Int> divmod(const Int& a, const Int& b) {
        if (b.is_zero()) throw std::domain_error("Int: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) return {Int(), a};
        Int q, r;
        r.mag_ = a.mag_;
        int shift = static_cast<int>(bit_length(a.mag_) - bit_length(b.mag_));
        q.mag_.assign((static_cast<std::size_t>(shift) >> 5) + 1, 0);
        for (int s = shift; s >= 0; --s) {
            std::vector<std::uint32_t> t = shl_mag(b.mag_, s);
            if (cmp_mag(r.mag_, t) >= 0) {
                r.mag_ = sub_mag(r.mag_, t);
                q.mag_[static_cast<std::size_t>(s) >> 5] |= 1u << (s & 31);
            }
        }
        q.trim();
        r.trim();
        q.neg_ = !q.is_zero() && (a.neg_ != b.neg_);
        r.neg_ = !r.is_zero() && a.neg_;
        return {q, r};
    }

    static Int gcd(Int a, Int b) {
        a.neg_ = false;
        b.neg_ = false;
        while (!b.is_zero()) {
            Int r = a % b;
            a = b;
            b = r;
        }
        return a;
    }

    static Int abs(Int a) {
        a.neg_ = false;
        return a;
    }

    static Int pow(const Int& base, unsigned e) {
        Int r = 1, b = base;
        for (; e; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    friend bool operator==(const Int& a, const Int& b) {
        return a.neg_ == b.neg_ && a.mag_ == b.mag_;
    }

    friend std::strong_ordering operator<=>(const Int& a, const Int& b) {
        if (a.neg_ != b.neg_) return a.neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.neg_) c = -c;
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    Int& operator+=(const Int& o) { return *this = *this + o; }
    Int& operator-=(const Int& o) { return *this = *this - o; }
    Int& operator*=(const Int& o) { return *this = *this * o; }

private:
    void set_u64(unsigned long long u) {
        mag_.clear();
        while (u) {
            mag_.push_back(static_cast<std::uint32_t>(u));
            u >>= 32;
        }
    }

    unsigned long long u64_lo() const {
        unsigned long long u = 0;
        if (mag_.size() > 1) u = static_cast<unsigned long long>(mag_[1]) << 32;
        if (!mag_.empty()) u |= mag_[0];
        return u;
    }

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) neg_ = false;
    }

    void mul_small(std::uint32_t f) {
        std::uint64_t carry = 0;
        for (auto& limb : mag_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
    }

    void add_small(std::uint32_t v) {
        std::uint64_t carry = v;
        for (std::size_t i = 0; carry && i < mag_.size(); ++i) {
            std::uint64_t cur = mag_[i] + carry;
            mag_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r = big;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(r[i]) + carry +
                                (i < small.size() ? small[i] : 0u);
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            if (!carry && i >= small.size()) break;
        }
        if (carry) r.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // requires a >= b
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                               (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            borrow = cur < 0;
            if (cur < 0) cur += 1ll << 32;
            r[i] = static_cast<std::uint32_t>(cur);
            if (!borrow && i >= b.size()) break;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::size_t bit_length(const std::vector<std::uint32_t>& m) {
        if (m.empty()) return 0;
        std::uint32_t top = m.back();
        std::size_t bits = (m.size() - 1) * 32;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    static std::vector<std::uint32_t> shl_mag(const std::vector<std::uint32_t>& m, int bits) {
        if (m.empty() || bits == 0) return m;
        int words = bits >> 5, rem = bits & 31;
        std::vector<std::uint32_t> r(m.size() + words + 1, 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(m[i]) << rem;
            r[i + words] |= static_cast<std::uint32_t>(cur);
            r[i + words + 1] |= static_cast<std::uint32_t>(cur >> 32);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    bool neg_ = false;
    std::vector<std::uint32_t> mag_;
};

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * Int(n - k + i) / Int(i);
    return r;
}

// Exact rational: reduced, denominator > 0.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(Int n) : num_(std::move(n)), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(int n) : num_(n), den_(1) {}

    Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend Rat operator-(const Rat& a) { return Rat(-a.num_, a.den_); }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        Int g = Int::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    Int num_, den_;
};

} // namespace lulu
