#pragma once

// Erosion-dilation cascades on finite 1D sequences and 2D grids.
//
// A cascade is an ordered stage list with composition notation semantics: the
// LAST stage in the list is applied to the input first, so the list reads the
// same way as the operator product (e.g. max{0,1} min{-2..0} max{0..3} means
// the max over {0..3} runs first). Signals are finite and carry an anchor
// index so that ValidOnly outputs stay aligned with the bi-infinite picture.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace lulu {

struct Offset {
    int x = 0;  // the only coordinate in 1D
    int y = 0;  // second coordinate in 2D, always 0 in 1D

    friend constexpr auto operator<=>(const Offset&, const Offset&) = default;
    friend constexpr Offset operator+(Offset a, Offset b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Offset operator-(Offset a) { return {-a.x, -a.y}; }
};

inline std::vector<Offset> sorted_unique(std::vector<Offset> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline std::vector<Offset> range_element(int lo, int hi) {
    std::vector<Offset> v;
    for (int i = lo; i <= hi; ++i) v.push_back({i, 0});
    return v;
}

class StructuralElement {
public:
    explicit StructuralElement(std::vector<Offset> offsets) : offsets_(sorted_unique(std::move(offsets))) {
        if (offsets_.empty()) throw std::invalid_argument("structural element must be nonempty");
    }

    const std::vector<Offset>& offsets() const { return offsets_; }
    std::size_t size() const { return offsets_.size(); }

    Offset min_corner() const {
        Offset m = offsets_.front();
        for (auto o : offsets_) {
            m.x = std::min(m.x, o.x);
            m.y = std::min(m.y, o.y);
        }
        return m;
    }

    Offset max_corner() const {
        Offset m = offsets_.front();
        for (auto o : offsets_) {
            m.x = std::max(m.x, o.x);
            m.y = std::max(m.y, o.y);
        }
        return m;
    }

    friend bool operator==(const StructuralElement&, const StructuralElement&) = default;

private:
    std::vector<Offset> offsets_;
};

enum class StageKind { Erosion, Dilation };

struct Stage {
    StageKind kind;
    StructuralElement element;

    friend bool operator==(const Stage&, const Stage&) = default;
};

class Cascade {
public:
    explicit Cascade(int dim = 1) : dim_(dim) { check_dim(dim); }

    Cascade(int dim, std::vector<Stage> stages) : dim_(dim), stages_(std::move(stages)) {
        check_dim(dim);
        for (const auto& s : stages_)
            if (dim_ == 1)
                for (auto o : s.element.offsets())
                    if (o.y != 0) throw std::invalid_argument("1D cascade with 2D structural element");
    }

    static Cascade identity(int dim = 1) { return Cascade(dim); }

    int dim() const { return dim_; }
    bool empty() const { return stages_.empty(); }
    const std::vector<Stage>& stages() const { return stages_; }

    // Minkowski sum of all stage elements: every input offset the output at
    // index 0 can possibly read. The offsets the filter actually depends on
    // are a subset of this; see support() in pbf.hpp.
    std::vector<Offset> support_cone() const {
        std::vector<Offset> cone = {Offset{0, 0}};
        for (const auto& s : stages_) {
            std::vector<Offset> next;
            next.reserve(cone.size() * s.element.size());
            for (auto a : cone)
                for (auto b : s.element.offsets()) next.push_back(a + b);
            cone = sorted_unique(std::move(next));
        }
        return cone;
    }

    friend bool operator==(const Cascade&, const Cascade&) = default;

private:
    static void check_dim(int d) {
        if (d != 1 && d != 2) throw std::invalid_argument("dimension must be 1 or 2");
    }

    int dim_;
    std::vector<Stage> stages_;
};

// --- construction -----------------------------------------------------------

inline Cascade dilation_1d(int n) {
    if (n < 0) throw std::invalid_argument("dilation width must be >= 0");
    return Cascade(1, {Stage{StageKind::Dilation, StructuralElement(range_element(0, n))}});
}

inline Cascade erosion_1d(int n) {
    if (n < 0) throw std::invalid_argument("erosion width must be >= 0");
    return Cascade(1, {Stage{StageKind::Erosion, StructuralElement(range_element(-n, 0))}});
}

// Plain concatenation, no stage fusion. Kept separate so fusion soundness is
// independently testable.
inline Cascade concat(const Cascade& outer, const Cascade& inner) {
    if (outer.dim() != inner.dim()) throw std::invalid_argument("cascade dimension mismatch");
    std::vector<Stage> stages = outer.stages();
    stages.insert(stages.end(), inner.stages().begin(), inner.stages().end());
    return Cascade(outer.dim(), std::move(stages));
}

// Concatenation with adjacent same-kind stages merged by Minkowski sum of
// their elements (max of maxes over A and B = max over A+B, dually for min).
inline Cascade compose(const Cascade& outer, const Cascade& inner) {
    if (outer.dim() != inner.dim()) throw std::invalid_argument("cascade dimension mismatch");
    std::vector<Stage> stages;
    auto push = [&](const Stage& s) {
        if (!stages.empty() && stages.back().kind == s.kind) {
            std::vector<Offset> sum;
            sum.reserve(stages.back().element.size() * s.element.size());
            for (auto a : stages.back().element.offsets())
                for (auto b : s.element.offsets()) sum.push_back(a + b);
            stages.back().element = StructuralElement(std::move(sum));
        } else {
            stages.push_back(s);
        }
    };
    for (const auto& s : outer.stages()) push(s);
    for (const auto& s : inner.stages()) push(s);
    return Cascade(outer.dim(), std::move(stages));
}

// L_n = dilation of erosions (removes peaks), U_n the dual (removes pits).
inline Cascade L(int n) {
    if (n < 1) throw std::invalid_argument("L_n requires n >= 1");
    return compose(dilation_1d(n), erosion_1d(n));
}

inline Cascade U(int n) {
    if (n < 1) throw std::invalid_argument("U_n requires n >= 1");
    return compose(erosion_1d(n), dilation_1d(n));
}

inline Cascade LU(int n) {
    if (n < 1) throw std::invalid_argument("L_nU_n requires n >= 1");
    return compose(L(n), U(n));
}

inline Cascade UL(int n) {
    if (n < 1) throw std::invalid_argument("U_nL_n requires n >= 1");
    return compose(U(n), L(n));
}

// C_n = L_nU_n L_{n-1}U_{n-1} ... L_1U_1 (C_0 = identity), F_n its dual.
inline Cascade C(int n) {
    if (n < 0) throw std::invalid_argument("C_n requires n >= 0");
    Cascade c = Cascade::identity(1);
    for (int k = n; k >= 1; --k) c = compose(c, LU(k));
    return c;
}

inline Cascade F(int n) {
    if (n < 0) throw std::invalid_argument("F_n requires n >= 0");
    Cascade c = Cascade::identity(1);
    for (int k = n; k >= 1; --k) c = compose(c, UL(k));
    return c;
}

// --- signals and application ------------------------------------------------

enum class Boundary { Extend, Reflect, ValidOnly };

// 1D signal anchored at index `start` (sample i of v is value at start + i).
struct Series {
    long start = 0;
    std::vector<double> v;

    friend bool operator==(const Series&, const Series&) = default;
};

// Rectangular 2D grid; sample (i, j) of v is the value at (row0 + i, col0 + j),
// stored row-major.
struct Grid {
    long row0 = 0, col0 = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<double> v;

    double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

namespace detail {

inline long reflect_index(long i, long n) {
    // symmetric reflection: ..., x1, x0 | x0, x1, ...
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

inline Series apply_stage(const Stage& st, const Series& in, Boundary b) {
    const long n = static_cast<long>(in.v.size());
    if (n == 0) throw std::invalid_argument("empty signal");
    const bool dil = st.kind == StageKind::Dilation;
    const auto& el = st.element.offsets();
    const long umin = st.element.min_corner().x;
    const long umax = st.element.max_corner().x;

    Series out;
    if (b == Boundary::ValidOnly) {
        const long len = n - (umax - umin);
        if (len <= 0)
            throw std::invalid_argument("signal too short for ValidOnly application");
        out.start = in.start - umin;
        out.v.resize(static_cast<std::size_t>(len));
        for (long i = 0; i < len; ++i) {
            double acc = in.v[static_cast<std::size_t>(i + el[0].x - umin)];
            for (std::size_t k = 1; k < el.size(); ++k) {
                double val = in.v[static_cast<std::size_t>(i + el[k].x - umin)];
                acc = dil ? std::max(acc, val) : std::min(acc, val);
            }
            out.v[static_cast<std::size_t>(i)] = acc;
        }
    } else {
        out.start = in.start;
        out.v.resize(in.v.size());
        for (long i = 0; i < n; ++i) {
            double acc = 0;
            bool first = true;
            for (auto o : el) {
                long j = i + o.x;
                j = b == Boundary::Extend ? std::clamp(j, 0l, n - 1) : reflect_index(j, n);
                double val = in.v[static_cast<std::size_t>(j)];
                acc = first ? val : (dil ? std::max(acc, val) : std::min(acc, val));
                first = false;
            }
            out.v[static_cast<std::size_t>(i)] = acc;
        }
    }
    return out;
}

inline Grid apply_stage(const Stage& st, const Grid& in, Boundary b) {
    const long nr = static_cast<long>(in.rows), nc = static_cast<long>(in.cols);
    if (nr == 0 || nc == 0) throw std::invalid_argument("empty signal");
    const bool dil = st.kind == StageKind::Dilation;
    const auto& el = st.element.offsets();
    const Offset lo = st.element.min_corner(), hi = st.element.max_corner();

    Grid out;
    if (b == Boundary::ValidOnly) {
        const long rr = nr - (hi.x - lo.x), cc = nc - (hi.y - lo.y);
        if (rr <= 0 || cc <= 0)
            throw std::invalid_argument("grid too small for ValidOnly application");
        out.row0 = in.row0 - lo.x;
        out.col0 = in.col0 - lo.y;
        out.rows = static_cast<std::size_t>(rr);
        out.cols = static_cast<std::size_t>(cc);
        out.v.resize(out.rows * out.cols);
        for (long i = 0; i < rr; ++i)
            for (long j = 0; j < cc; ++j) {
                double acc = 0;
                bool first = true;
                for (auto o : el) {
                    double val = in.at(static_cast<std::size_t>(i + o.x - lo.x),
                                       static_cast<std::size_t>(j + o.y - lo.y));
                    acc = first ? val : (dil ? std::max(acc, val) : std::min(acc, val));
                    first = false;
                }
                out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
            }
    } else {
        out = in;
        for (long i = 0; i < nr; ++i)
            for (long j = 0; j < nc; ++j) {
                double acc = 0;
                bool first = true;
                for (auto o : el) {
                    long r = i + o.x, c = j + o.y;
                    if (b == Boundary::Extend) {
                        r = std::clamp(r, 0l, nr - 1);
                        c = std::clamp(c, 0l, nc - 1);
                    } else {
                        r = reflect_index(r, nr);
                        c = reflect_index(c, nc);
                    }
                    double val = in.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
                    acc = first ? val : (dil ? std::max(acc, val) : std::min(acc, val));
                    first = false;
                }
                out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
            }
    }
    return out;
}

} // namespace detail

template <class Signal>
Signal apply(const Cascade& c, const Signal& x, Boundary b) {
    constexpr bool is_grid = std::is_same_v<Signal, Grid>;
    if constexpr (is_grid) {
        if (c.dim() != 2) throw std::invalid_argument("1D cascade applied to grid");
    } else {
        if (c.dim() != 1) throw std::invalid_argument("2D cascade applied to series");
    }
    Signal cur = x;
    for (std::size_t i = c.stages().size(); i-- > 0;)  // last stage runs first
        cur = detail::apply_stage(c.stages()[i], cur, b);
    return cur;
}

// --- simple sequence diagnostics --------------------------------------------

inline bool is_n_monotone(std::span<const double> x, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const std::size_t win = static_cast<std::size_t>(n) + 1;
    if (x.size() < win) return true;
    for (std::size_t i = 0; i + win <= x.size(); ++i) {
        bool up = true, down = true;
        for (std::size_t j = 0; j + 1 < win; ++j) {
            if (x[i + j] > x[i + j + 1]) up = false;
            if (x[i + j] < x[i + j + 1]) down = false;
        }
        if (!up && !down) return false;
    }
    return true;
}

inline double total_variation(std::span<const double> x) {
    double tv = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) tv += std::abs(x[i] - x[i + 1]);
    return tv;
}

} // namespace lulu
