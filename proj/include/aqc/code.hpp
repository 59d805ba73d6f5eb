#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <climits>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphabet.hpp"

namespace aqc {

inline constexpr int kInfinity = INT_MAX;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Subgroup of a packed group whose Z4 digits are marked by `z4lo` (low bit of each
// Z4 digit); all other bits add by XOR. rep[b] is the stored element whose lowest set
// bit is b. Inserting v also inserts 2v, which keeps every element reducible to 0.
class PivotSystem {
public:
    PivotSystem() = default;
    explicit PivotSystem(Word z4lo) : z4lo_(z4lo) {}

    Word z4lo() const { return z4lo_; }
    Word add(Word a, Word b) const { return a ^ b ^ ((a & b & z4lo_) << 1); }
    Word neg(Word a) const { return a ^ ((a & z4lo_) << 1); }
    Word sub(Word a, Word b) const { return add(a, neg(b)); }
    Word dbl(Word a) const { return (a & z4lo_) << 1; }

    Word reduce(Word v) const {
        Word todo = piv_;
        while (todo) {
            const int b = std::countr_zero(todo);
            todo &= todo - 1;
            if ((v >> b) & 1) v = sub(v, rep_[b]);
        }
        return v;
    }

    bool insert(Word v) {
        bool grew = false;
        while (true) {
            v = reduce(v);
            if (v == 0) return grew;
            const int b = std::countr_zero(v);
            rep_[b] = v;
            piv_ |= Word(1) << b;
            grew = true;
            v = dbl(v);
        }
    }

    bool contains(Word v) const { return reduce(v) == 0; }
    int rank() const { return std::popcount(piv_); }
    Word pivots() const { return piv_; }
    Word rep(int b) const { return rep_[b]; }

    // Element with lowest bit b and zero at every other pivot bit.
    Word reduced_rep(int b) const {
        Word v = rep_[b];
        Word todo = piv_ & ~((Word(2) << b) - 1);
        while (todo) {
            const int c = std::countr_zero(todo);
            todo &= todo - 1;
            if ((v >> c) & 1) v = sub(v, rep_[c]);
        }
        return v;
    }

    std::vector<Word> basis() const {
        std::vector<Word> out;
        Word todo = piv_;
        while (todo) {
            const int b = std::countr_zero(todo);
            todo &= todo - 1;
            out.push_back(reduced_rep(b));
        }
        return out;
    }

    // Reps whose pivot is at bit >= b; they generate the elements vanishing below b.
    std::vector<Word> reps_from(int b) const {
        std::vector<Word> out;
        Word todo = b >= 64 ? 0 : piv_ & ~((Word(1) << b) - 1);
        while (todo) {
            const int c = std::countr_zero(todo);
            todo &= todo - 1;
            out.push_back(rep_[c]);
        }
        return out;
    }

private:
    Word z4lo_ = 0;
    Word piv_ = 0;
    std::array<Word, 64> rep_{};
};

// Binary row reduction helpers (XOR vectors, pivot = lowest set bit).
namespace gf2 {

// Reduced row echelon form of the span; rows sorted by pivot.
inline std::vector<Word> rref(std::vector<Word> rows) {
    std::vector<Word> out;
    for (Word r : rows) {
        for (Word b : out)
            if ((r >> std::countr_zero(b)) & 1) r ^= b;
        if (!r) continue;
        const int p = std::countr_zero(r);
        for (Word& b : out)
            if ((b >> p) & 1) b ^= r;
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](Word a, Word b) { return std::countr_zero(a) < std::countr_zero(b); });
    return out;
}

// Basis of {y in F2^nbits : parity(row & y) = 0 for all rows}.
inline std::vector<Word> nullspace(const std::vector<Word>& rows, int nbits) {
    const auto R = rref(rows);
    Word pivmask = 0;
    for (Word r : R) pivmask |= Word(1) << std::countr_zero(r);
    std::vector<Word> out;
    for (int f = 0; f < nbits; ++f) {
        if ((pivmask >> f) & 1) continue;
        Word y = Word(1) << f;
        for (Word r : R)
            if ((r >> f) & 1) y |= Word(1) << std::countr_zero(r);
        out.push_back(y);
    }
    return out;
}

} // namespace gf2

struct GroupType {
    int delta = 0; // Z4 rank
    int gamma = 0; // Z2 rank
    auto operator<=>(const GroupType&) const = default;
};

using WeightDistribution = std::vector<std::uint64_t>;

enum class Form { TraceHermitian, Doob };

class Code {
public:
    explicit Code(const Space& sp) : sp_(&sp), ps_(sp.z4_lo()) {}
    explicit Code(Shape s) : Code(Space::get(s)) {}

    static Code span(const Space& sp, const std::vector<Word>& gens) {
        Code c(sp);
        for (Word g : gens) c.add(g);
        return c;
    }
    static Code span(Shape s, const std::vector<Word>& gens) { return span(Space::get(s), gens); }
    static Code ambient(const Space& sp) {
        Code c(sp);
        for (int b = 0; b < sp.bits(); ++b) c.add(Word(1) << b);
        return c;
    }

    const Space& space() const { return *sp_; }
    const Shape& shape() const { return sp_->shape(); }

    bool add(Word v) {
        if (v & ~sp_->full()) throw std::invalid_argument("word outside ambient");
        return ps_.insert(v);
    }
    Word reduce(Word v) const { return ps_.reduce(v); }
    bool contains(Word v) const { return ps_.contains(v); }
    int log2_size() const { return ps_.rank(); }
    std::uint64_t size() const { return std::uint64_t(1) << ps_.rank(); }
    bool trivial() const { return ps_.rank() == 0; }
    const PivotSystem& pivots() const { return ps_; }

    // Unique per code: fully reduced pivot elements in pivot order.
    std::vector<Word> basis() const { return ps_.basis(); }

    std::vector<Word> generators() const {
        std::vector<Word> g;
        Word todo = ps_.pivots();
        while (todo) {
            const int b = std::countr_zero(todo);
            todo &= todo - 1;
            g.push_back(ps_.rep(b));
        }
        return g;
    }

    bool operator==(const Code& o) const { return sp_ == o.sp_ && basis() == o.basis(); }

    std::size_t hash() const {
        std::size_t h = std::hash<int>()(shape().m * 1000 + shape().n1 * 31 + shape().n2);
        for (Word w : basis()) h = h * 0x9E3779B97F4A7C15ULL + std::hash<Word>()(w);
        return h;
    }

    template <class F>
    void for_each(F&& f) const {
        const auto g = generators();
        const int k = int(g.size());
        Word x = 0;
        f(x);
        const std::uint64_t n = std::uint64_t(1) << k;
        for (std::uint64_t i = 1; i < n; ++i) {
            const int j = std::countr_zero(i);
            const std::uint64_t gray = i ^ (i >> 1);
            x = ((gray >> j) & 1) ? sp_->add(x, g[j]) : sp_->sub(x, g[j]);
            f(x);
        }
    }

    std::vector<Word> elements(std::uint64_t budget = std::uint64_t(1) << 20) const {
        if (size() > budget) throw BudgetExceeded("code too large to enumerate: 2^" + std::to_string(log2_size()));
        std::vector<Word> out;
        out.reserve(size());
        for_each([&](Word x) { out.push_back(x); });
        return out;
    }

    WeightDistribution weight_distribution(Metric metric = Metric::Doob) const {
        WeightDistribution wd(std::size_t(metric == Metric::Doob ? sp_->digits() : sp_->length()) + 1, 0);
        for_each([&](Word x) { ++wd[sp_->weight(x, metric)]; });
        return wd;
    }

    int min_distance(Metric metric = Metric::Doob) const {
        int d = kInfinity;
        for_each([&](Word x) {
            if (x) d = std::min(d, sp_->weight(x, metric));
        });
        return d;
    }

    GroupType type() const {
        std::vector<Word> twice;
        for (Word g : generators()) twice.push_back(sp_->dbl(g));
        const int delta = int(gf2::rref(twice).size());
        return {delta, log2_size() - 2 * delta};
    }

    struct Presentation {
        std::vector<Word> gens4, gens2;
    };

    // gens4 of order 4 and gens2 of order 2 with C = <gens4> (+) <gens2> and
    // {2 gens4, gens2} independent.
    Presentation presentation() const {
        const auto r = basis();
        const int k = int(r.size());
        auto phi = [&](Word lambda) {
            Word x = 0;
            for (int i = 0; i < k; ++i)
                if ((lambda >> i) & 1) x = sp_->add(x, r[i]);
            return x;
        };
        // eliminate 2r_i, tracking combinations
        std::vector<std::pair<Word, Word>> rows; // (vector, lambda)
        std::vector<Word> kernel;
        for (int i = 0; i < k; ++i) {
            Word v = sp_->dbl(r[i]), lam = Word(1) << i;
            for (auto& [b, l] : rows)
                if ((v >> std::countr_zero(b)) & 1) {
                    v ^= b;
                    lam ^= l;
                }
            if (v) {
                const int p = std::countr_zero(v);
                for (auto& [b, l] : rows)
                    if ((b >> p) & 1) {
                        b ^= v;
                        l ^= lam;
                    }
                rows.push_back({v, lam});
            } else {
                kernel.push_back(lam);
            }
        }
        std::sort(rows.begin(), rows.end(),
                  [](auto& a, auto& b) { return std::countr_zero(a.first) < std::countr_zero(b.first); });
        std::vector<Word> twoC;
        for (auto& [b, l] : rows) twoC.push_back(b);
        // complement of 2C inside C[2]
        std::vector<Word> ext = twoC;
        for (Word lam : kernel) ext.push_back(phi(lam));
        auto all = gf2::rref(ext);
        Word twoPiv = 0;
        for (Word b : twoC) twoPiv |= Word(1) << std::countr_zero(b);
        Presentation pr;
        std::vector<Word> c2;
        for (Word b : all) {
            if ((twoPiv >> std::countr_zero(b)) & 1) continue;
            // clear 2C pivot positions
            Word v = b;
            for (Word t : twoC)
                if ((v >> std::countr_zero(t)) & 1) v ^= t;
            c2.push_back(v);
        }
        pr.gens2 = gf2::rref(c2);
        Word k2Piv = 0;
        for (Word b : pr.gens2) k2Piv |= Word(1) << std::countr_zero(b);
        for (auto& [b, lam] : rows) {
            Word u = phi(lam);
            for (Word g : pr.gens2)
                if ((u >> std::countr_zero(g)) & 1) u ^= g;
            pr.gens4.push_back(u);
        }
        return pr;
    }

private:
    const Space* sp_;
    PivotSystem ps_;
};

struct CodeHash {
    std::size_t operator()(const Code& c) const { return c.hash(); }
};

// ---- coordinate transport --------------------------------------------------

// Move word x of space a into space b; coordinate i goes to dest[i] (-1 drops it).
inline Word transport(const Space& a, Word x, const Space& b, const std::vector<int>& dest) {
    Word y = 0;
    for (int i = 0; i < a.length(); ++i) {
        if (dest[i] < 0) continue;
        y = b.with_symbol(y, dest[i], a.symbol(x, i));
    }
    return y;
}

inline Code transport(const Code& c, const Space& b, const std::vector<int>& dest) {
    for (int i = 0; i < c.space().length(); ++i)
        if (dest[i] >= 0 && c.space().kind(i) != b.kind(dest[i]))
            throw std::invalid_argument("transport: coordinate kind mismatch");
    Code out(b);
    for (Word g : c.generators()) out.add(transport(c.space(), g, b, dest));
    return out;
}

inline Shape shape_without(Shape s, int coord) {
    switch (s.kind(coord)) {
    case Kind::Quad: --s.m; break;
    case Kind::Bi: --s.n1; break;
    default: --s.n2; break;
    }
    return s;
}

inline void check_coord(const Code& c, int coord) {
    if (coord < 0 || coord >= c.space().length()) throw std::out_of_range("coordinate index out of range");
}

inline std::vector<int> drop_map(int n, int coord) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) d[i] = i < coord ? i : (i == coord ? -1 : i - 1);
    return d;
}

inline Code puncture(const Code& c, int coord) {
    check_coord(c, coord);
    const Space& b = Space::get(shape_without(c.shape(), coord));
    return transport(c, b, drop_map(c.space().length(), coord));
}

// Subgroup of codewords vanishing on the coordinates in `mask` (a union of coordinate masks).
inline Code zero_subcode(const Code& c, Word mask) {
    const Space& sp = c.space();
    // Rotate so the masked bits become the lowest ones; then they are cleared by the
    // pivot elements with pivot at or above popcount(mask).
    std::vector<int> perm(64, -1);
    int next = 0;
    for (int b = 0; b < sp.bits(); ++b)
        if ((mask >> b) & 1) perm[b] = next++;
    const int w = next;
    for (int b = 0; b < sp.bits(); ++b)
        if (!((mask >> b) & 1)) perm[b] = next++;
    auto fwd = [&](Word x) {
        Word y = 0;
        for (int b = 0; b < sp.bits(); ++b)
            if ((x >> b) & 1) y |= Word(1) << perm[b];
        return y;
    };
    std::vector<int> inv(64, -1);
    for (int b = 0; b < sp.bits(); ++b) inv[perm[b]] = b;
    auto back = [&](Word y) {
        Word x = 0;
        for (int b = 0; b < sp.bits(); ++b)
            if ((y >> b) & 1) x |= Word(1) << inv[b];
        return x;
    };
    PivotSystem ps(fwd(sp.z4_lo()));
    for (Word g : c.generators()) ps.insert(fwd(g));
    Code out(sp);
    for (Word r : ps.reps_from(w)) out.add(back(r));
    return out;
}

inline Code shorten(const Code& c, int coord) {
    check_coord(c, coord);
    return puncture(zero_subcode(c, c.space().coord_mask(coord)), coord);
}

// Adds an all-zero coordinate of the given kind; a Quad goes to the front of the Quad
// block, Bi and Single coordinates to the end of their blocks.
inline Code append_zero_coordinate(const Code& c, Kind kind) {
    Shape s = c.shape();
    int pos = 0;
    switch (kind) {
    case Kind::Quad: ++s.m; pos = 0; break;
    case Kind::Bi: ++s.n1; pos = s.m + s.n1 - 1; break;
    default: ++s.n2; pos = s.length() - 1; break;
    }
    const int n = c.space().length();
    std::vector<int> dest(n);
    for (int i = 0; i < n; ++i) dest[i] = i < pos ? i : i + 1;
    return transport(c, Space::get(s), dest);
}

inline std::vector<int> cyclic_shift_map(int n) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) d[i] = (i + 1) % n;
    return d;
}

inline bool single_block(Shape s) {
    return (s.m == 0 && s.n1 == 0) || (s.m == 0 && s.n2 == 0) || (s.n1 == 0 && s.n2 == 0);
}

inline Word cyclic_shift(const Space& sp, Word x) { return transport(sp, x, sp, cyclic_shift_map(sp.length())); }

inline bool is_cyclic(const Code& c) {
    if (!single_block(c.shape())) throw std::invalid_argument("is_cyclic: mixed shape");
    for (Word g : c.generators())
        if (!c.contains(cyclic_shift(c.space(), g))) return false;
    return true;
}

inline void require_gf4(const Code& c, const char* what) {
    if (!c.shape().is_gf4()) throw std::invalid_argument(std::string(what) + ": requires a GF(4) shape");
}

inline Word gf4_scale(const Space& sp, std::uint8_t a, Word x) {
    Word y = 0;
    for (int i = 0; i < sp.length(); ++i) y |= Word(gf4::mul(a, std::uint8_t(sp.symbol(x, i)))) << (2 * i);
    return y;
}

inline bool is_f4_linear(const Code& c) {
    require_gf4(c, "is_f4_linear");
    for (Word g : c.generators())
        if (!c.contains(gf4_scale(c.space(), gf4::kOmega, g))) return false;
    return true;
}

inline unsigned form_value(const Space& sp, Form f, Word x, Word y) {
    return f == Form::Doob ? sp.doob_ip(x, y) : sp.symplectic(x, y);
}

inline void check_form(const Code& c, Form f) {
    if (f == Form::TraceHermitian) require_gf4(c, "trace-Hermitian form");
}

inline bool is_self_orthogonal(const Code& c, Form f) {
    check_form(c, f);
    const auto g = c.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j)
            if (form_value(c.space(), f, g[i], g[j])) return false;
    return true;
}

inline bool is_self_dual(const Code& c, Form f) {
    return is_self_orthogonal(c, f) && 2 * c.log2_size() == c.space().bits();
}

// Even-weight codewords; throws when they do not form a subgroup.
inline Code even_subcode(const Code& c) {
    require_gf4(c, "even_subcode");
    Code e(c.space());
    std::uint64_t count = 0;
    c.for_each([&](Word x) {
        if (c.space().weight(x, Metric::Hamming) % 2 == 0) {
            e.add(x);
            ++count;
        }
    });
    if (e.size() != count) throw std::domain_error("even-weight codewords do not form a subgroup");
    return e;
}

// ---- duals ------------------------------------------------------------------

namespace detail {

// Kernel generators of A z = 0 over Z4 (A: rows x cols).
inline std::vector<std::vector<unsigned>> z4_kernel(std::vector<std::vector<unsigned>> A, int cols) {
    const int rows = int(A.size());
    std::vector<std::vector<unsigned>> Q(cols, std::vector<unsigned>(cols, 0));
    for (int i = 0; i < cols; ++i) Q[i][i] = 1;
    auto colop = [&](int dst, int src, unsigned k) { // col dst -= k * col src
        for (int r = 0; r < rows; ++r) A[r][dst] = (A[r][dst] + 4 * 4 - k * A[r][src]) & 3;
        for (int r = 0; r < cols; ++r) Q[r][dst] = (Q[r][dst] + 4 * 4 - k * Q[r][src]) & 3;
    };
    auto swapcol = [&](int a, int b) {
        for (int r = 0; r < rows; ++r) std::swap(A[r][a], A[r][b]);
        for (int r = 0; r < cols; ++r) std::swap(Q[r][a], Q[r][b]);
    };
    std::vector<unsigned> diag;
    int t = 0;
    for (unsigned want : {1u, 2u}) {
        while (t < std::min(rows, cols)) {
            int pr = -1, pc = -1;
            for (int r = t; r < rows && pr < 0; ++r)
                for (int c = t; c < cols; ++c)
                    if (want == 1 ? (A[r][c] & 1) : A[r][c] == 2) {
                        pr = r;
                        pc = c;
                        break;
                    }
            if (pr < 0) break;
            std::swap(A[pr], A[t]);
            swapcol(pc, t);
            if (want == 1) {
                // scale pivot to 1 (units of Z4 are self-inverse)
                const unsigned u = A[t][t];
                for (int r = 0; r < rows; ++r) A[r][t] = (A[r][t] * u) & 3;
                for (int r = 0; r < cols; ++r) Q[r][t] = (Q[r][t] * u) & 3;
                for (int c = t + 1; c < cols; ++c)
                    if (A[t][c]) colop(c, t, A[t][c]);
                for (int r = t + 1; r < rows; ++r)
                    if (A[r][t]) {
                        const unsigned k = A[r][t];
                        for (int c = 0; c < cols; ++c) A[r][c] = (A[r][c] + 16 - k * A[t][c]) & 3;
                    }
            } else {
                for (int c = t + 1; c < cols; ++c)
                    if (A[t][c]) colop(c, t, A[t][c] / 2);
                for (int r = t + 1; r < rows; ++r)
                    if (A[r][t]) {
                        const unsigned k = A[r][t] / 2;
                        for (int c = 0; c < cols; ++c) A[r][c] = (A[r][c] + 16 - k * A[t][c]) & 3;
                    }
            }
            diag.push_back(want);
            ++t;
        }
    }
    std::vector<std::vector<unsigned>> ker;
    for (int c = 0; c < cols; ++c) {
        unsigned k = c < int(diag.size()) ? (diag[c] == 1 ? 0u : 2u) : 1u;
        if (!k) continue;
        std::vector<unsigned> v(cols);
        for (int r = 0; r < cols; ++r) v[r] = (Q[r][c] * k) & 3;
        ker.push_back(v);
    }
    return ker;
}

} // namespace detail

inline Code dual(const Code& c, Form f) {
    check_form(c, f);
    const Space& sp = c.space();
    Code out(sp);
    const auto gens = c.generators();
    if (f == Form::TraceHermitian) {
        std::vector<Word> rows;
        for (Word g : gens) rows.push_back(((g & 0x5555555555555555ULL) << 1) | ((g >> 1) & 0x5555555555555555ULL));
        for (Word y : gf2::nullspace(rows, sp.bits())) out.add(y);
    } else {
        // unknowns: one per Z4 digit, two per Bi digit (bit values, coefficient 2 * bit)
        const Shape& s = sp.shape();
        std::vector<int> varDigit, varBit; // digit index; -1 for Z4 digit, else bit 0/1
        for (int p = 0; p < sp.digits(); ++p) {
            const bool bi = p >= 2 * s.m && p < 2 * s.m + s.n1;
            if (bi) {
                varDigit.push_back(p), varBit.push_back(0);
                varDigit.push_back(p), varBit.push_back(1);
            } else {
                varDigit.push_back(p), varBit.push_back(-1);
            }
        }
        const int N = int(varDigit.size());
        std::vector<std::vector<unsigned>> A;
        for (Word g : gens) {
            std::vector<unsigned> row(N);
            for (int v = 0; v < N; ++v) {
                const int p = varDigit[v];
                const unsigned gd = sp.digit(g, p);
                if (varBit[v] >= 0) {
                    row[v] = 2 * ((gd >> varBit[v]) & 1);
                } else {
                    const bool minus = p < 2 * s.m && (p % 2 == 1);
                    row[v] = minus ? (4 - gd) & 3 : gd;
                }
            }
            A.push_back(row);
        }
        for (const auto& z : detail::z4_kernel(A, N)) {
            Word y = 0;
            for (int v = 0; v < N; ++v) {
                const int p = varDigit[v];
                if (varBit[v] >= 0)
                    y |= Word(z[v] & 1) << (2 * p + varBit[v]);
                else
                    y |= Word(z[v]) << (2 * p);
            }
            out.add(y);
        }
    }
    if (c.log2_size() + out.log2_size() != sp.bits()) throw std::logic_error("dual: size identity violated");
    return out;
}

// ---- GF(4) specific maps -------------------------------------------------------

// Quaternary symbols to binary triples 0->000, 1->011, w->101, w^2->110 (coordinate i -> bits 3i..3i+2,
// first listed bit lowest). Returns the binary basis.
inline std::vector<Word> concatenate_to_binary(const Code& c) {
    require_gf4(c, "concatenate_to_binary");
    static constexpr unsigned triple[4] = {0b000, 0b110, 0b101, 0b011};
    std::vector<Word> rows;
    for (Word g : c.generators()) {
        Word b = 0;
        for (int i = 0; i < c.space().length(); ++i) b |= Word(triple[c.space().symbol(g, i)]) << (3 * i);
        rows.push_back(b);
    }
    return gf2::rref(rows);
}

inline Word bits_to_2z4(const Space& from, const Space& to, Word x) {
    Word y = 0;
    for (int i = 0; i < from.length(); ++i) {
        const unsigned v = from.symbol(x, i);
        const unsigned hi = v >> 1, lo = v & 1;
        y = to.with_symbol(y, i, (2 * hi) | ((2 * lo) << 2));
    }
    return y;
}

// GF(4)^n -> D(n,0+0), (hi,lo) -> Quad (2hi, 2lo).
inline Code bits_to_2z4(const Code& c) {
    require_gf4(c, "bits_to_2z4");
    const Space& to = Space::get({c.space().length(), 0, 0});
    Code out(to);
    for (Word g : c.generators()) out.add(bits_to_2z4(c.space(), to, g));
    return out;
}

} // namespace aqc
