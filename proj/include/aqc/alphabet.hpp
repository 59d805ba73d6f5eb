#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqc {

using Word = std::uint64_t;

enum class Kind : std::uint8_t { Quad, Bi, Single };

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Quad: return "quad";
    case Kind::Bi: return "bi";
    default: return "single";
    }
}

// m Quad (Z4^2) coordinates, n1 Bi (Z2^2) coordinates, n2 Single (Z4) coordinates.
struct Shape {
    int m = 0;
    int n1 = 0;
    int n2 = 0;

    static Shape gf4(int n) { return {0, n, 0}; }

    int length() const { return m + n1 + n2; }
    int digits() const { return 2 * m + n1 + n2; }
    int diameter() const { return digits(); }
    bool is_gf4() const { return m == 0 && n2 == 0; }

    Kind kind(int coord) const {
        if (coord < m) return Kind::Quad;
        return coord < m + n1 ? Kind::Bi : Kind::Single;
    }

    std::string str() const {
        return "D(" + std::to_string(m) + "," + std::to_string(n1) + "+" + std::to_string(n2) + ")";
    }

    auto operator<=>(const Shape&) const = default;
};

// GF(4) element hi*w + lo encoded as the integer 2*hi + lo: 0, 1, w=2, w^2=3.
namespace gf4 {

inline constexpr std::uint8_t kOmega = 2;
inline constexpr std::uint8_t kOmega2 = 3;

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    static constexpr std::uint8_t log_[4] = {0, 0, 1, 2};
    static constexpr std::uint8_t exp_[3] = {1, 2, 3};
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % 3];
}

inline std::uint8_t conj(std::uint8_t a) { return mul(a, a); }

inline std::uint8_t trace(std::uint8_t z) { return add(z, mul(z, z)); }

inline std::uint8_t hermitian(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("hermitian: length mismatch");
    std::uint8_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = add(s, mul(x[i], conj(y[i])));
    return s;
}

inline std::uint8_t trace_hermitian(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
    return trace(hermitian(x, y));
}

inline char symbol_char(std::uint8_t v) { return "01wv"[v & 3]; }

} // namespace gf4

inline int quad_weight(unsigned a, unsigned b) {
    a &= 3;
    b &= 3;
    if (a == 0 && b == 0) return 0;
    if ((a == 0 && (b == 1 || b == 3)) || (b == 0 && (a == 1 || a == 3)) || (a == b && (a == 1 || a == 3)))
        return 1;
    return 2;
}

enum class Metric { Doob, Hamming };

// Packed vectors. Digit p occupies bits [2p, 2p+2). Quad i uses digits 2i (first
// component) and 2i+1 (second), Bi j uses digit 2m+j with value 2*hi+lo, Single k
// uses digit 2m+n1+k. Z4 digits keep the low-order bit at 2p.
class Space {
public:
    static const Space& get(Shape s) {
        static std::mutex mu;
        static std::map<Shape, std::unique_ptr<Space>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[s];
        if (!slot) slot.reset(new Space(s));
        return *slot;
    }

    const Shape& shape() const { return shape_; }
    int length() const { return shape_.length(); }
    int digits() const { return shape_.digits(); }
    int bits() const { return 2 * digits(); }
    Word full() const { return full_; }
    Word z4_lo() const { return z4lo_; }
    Word bi_mask() const { return bimask_; }
    std::uint64_t size() const { return std::uint64_t(1) << bits(); }
    double log2_size() const { return bits(); }

    Kind kind(int coord) const { return shape_.kind(coord); }
    int coord_shift(int coord) const { return shift_[coord]; }
    int coord_bits(int coord) const { return kind(coord) == Kind::Quad ? 4 : 2; }
    Word coord_mask(int coord) const { return ((Word(1) << coord_bits(coord)) - 1) << coord_shift(coord); }
    int coord_of_digit(int p) const { return p < 2 * shape_.m ? p / 2 : p - shape_.m; }

    unsigned symbol(Word x, int coord) const {
        return unsigned((x >> coord_shift(coord)) & ((Word(1) << coord_bits(coord)) - 1));
    }
    Word with_symbol(Word x, int coord, unsigned v) const {
        return (x & ~coord_mask(coord)) | (Word(v) << coord_shift(coord));
    }
    unsigned digit(Word x, int p) const { return unsigned((x >> (2 * p)) & 3); }

    Word add(Word a, Word b) const { return a ^ b ^ ((a & b & z4lo_) << 1); }
    Word neg(Word a) const { return a ^ ((a & z4lo_) << 1); }
    Word sub(Word a, Word b) const { return add(a, neg(b)); }
    Word dbl(Word a) const { return (a & z4lo_) << 1; }
    Word scale(unsigned k, Word a) const {
        switch (k & 3) {
        case 0: return 0;
        case 1: return a;
        case 2: return dbl(a);
        default: return neg(a);
        }
    }
    int order(Word a) const {
        if (a == 0) return 1;
        return (a & z4lo_) ? 4 : 2;
    }

    int weight(Word x, Metric metric = Metric::Doob) const {
        int w = std::popcount((x | (x >> 1)) & bslo_);
        const Word q = x & quadmask_;
        if (q == 0) return w;
        if (metric == Metric::Doob) {
            for (int i = 0; i < shape_.m; ++i) w += quadw_[(q >> (4 * i)) & 15];
        } else {
            for (int i = 0; i < shape_.m; ++i) w += ((q >> (4 * i)) & 15) != 0;
        }
        return w;
    }
    int distance(Word x, Word y, Metric metric = Metric::Doob) const { return weight(sub(y, x), metric); }

    // Number of nonzero coordinates.
    int support_size(Word x) const { return weight(x, Metric::Hamming); }

    // Inner product of eq. form: quad (x1 y1 - x2 y2), 2 * bits of Bi, single x y; mod 4.
    unsigned doob_ip(Word x, Word y) const {
        const Word x0 = x & lo_, x1 = (x >> 1) & lo_;
        const Word y0 = y & lo_, y1 = (y >> 1) & lo_;
        const int plus = std::popcount(x0 & y0 & plus_) +
                         2 * (std::popcount(x1 & y0 & plus_) + std::popcount(x0 & y1 & plus_));
        const int minus = std::popcount(x0 & y0 & minus_) +
                          2 * (std::popcount(x1 & y0 & minus_) + std::popcount(x0 & y1 & minus_));
        const int bi = 2 * std::popcount(x & y & bimask_);
        return unsigned(plus - minus + bi) & 3;
    }

    // Symplectic form sum(x_hi y_lo + x_lo y_hi); equals the trace-Hermitian product on GF(4)^n.
    unsigned symplectic(Word x, Word y) const {
        const Word sx = ((x & kLo) << 1) | ((x >> 1) & kLo);
        return unsigned(std::popcount(sx & y) & 1);
    }

    const std::vector<Word>& weight_one(Metric metric = Metric::Doob) const {
        return metric == Metric::Doob ? unit_doob_ : unit_hamming_;
    }

    Word from_digits(const std::vector<unsigned>& d) const {
        if (int(d.size()) != digits()) throw std::invalid_argument("digit count mismatch");
        Word x = 0;
        for (int p = 0; p < digits(); ++p) x |= Word(d[p] & 3) << (2 * p);
        return x;
    }

    // GF(4) vector <-> packed word (Bi-only shapes).
    Word from_gf4(const std::vector<std::uint8_t>& v) const {
        if (!shape_.is_gf4() || int(v.size()) != length()) throw std::invalid_argument("from_gf4: shape mismatch");
        Word x = 0;
        for (int i = 0; i < length(); ++i) x |= Word(v[i] & 3) << (2 * i);
        return x;
    }
    std::vector<std::uint8_t> to_gf4(Word x) const {
        std::vector<std::uint8_t> v(length());
        for (int i = 0; i < length(); ++i) v[i] = std::uint8_t((x >> (2 * i)) & 3);
        return v;
    }

    std::string symbol_text(unsigned v, Kind k) const {
        switch (k) {
        case Kind::Quad: return std::string{char('0' + (v & 3)), char('0' + (v >> 2))};
        case Kind::Bi: return std::string{char('0' + (v >> 1)), char('0' + (v & 1))};
        default: return std::string(1, char('0' + v));
        }
    }

    std::string str(Word x) const {
        std::string s;
        for (int i = 0; i < length(); ++i) {
            if (i) s += (kind(i) != kind(i - 1)) ? " | " : " ";
            if (shape_.is_gf4())
                s += gf4::symbol_char(symbol(x, i));
            else
                s += symbol_text(symbol(x, i), kind(i));
        }
        return s;
    }

private:
    static constexpr Word kLo = 0x5555555555555555ULL;

    explicit Space(Shape s) : shape_(s) {
        if (s.m < 0 || s.n1 < 0 || s.n2 < 0 || s.digits() > 31)
            throw std::invalid_argument("unsupported shape " + s.str());
        const int D = s.digits();
        full_ = D == 32 ? ~Word(0) : (Word(1) << (2 * D)) - 1;
        lo_ = full_ & kLo;
        for (int p = 0; p < D; ++p) {
            const Word bit = Word(1) << (2 * p);
            if (p < 2 * s.m) {
                z4lo_ |= bit;
                quadmask_ |= Word(3) << (2 * p);
                (p % 2 == 0 ? plus_ : minus_) |= bit;
            } else if (p < 2 * s.m + s.n1) {
                bimask_ |= Word(3) << (2 * p);
                bslo_ |= bit;
            } else {
                z4lo_ |= bit;
                plus_ |= bit;
                bslo_ |= bit;
            }
        }
        for (unsigned v = 0; v < 16; ++v) quadw_[v] = std::uint8_t(quad_weight(v & 3, v >> 2));
        int shift = 0;
        for (int i = 0; i < s.length(); ++i) {
            shift_.push_back(shift);
            shift += coord_bits(i);
        }
        for (int i = 0; i < s.length(); ++i) {
            const unsigned nsym = 1u << coord_bits(i);
            for (unsigned v = 1; v < nsym; ++v) {
                const Word x = with_symbol(0, i, v);
                unit_hamming_.push_back(x);
                if (weight(x) == 1) unit_doob_.push_back(x);
            }
        }
    }

    Shape shape_;
    Word full_ = 0, lo_ = 0, z4lo_ = 0, bimask_ = 0, bslo_ = 0, quadmask_ = 0, plus_ = 0, minus_ = 0;
    std::array<std::uint8_t, 16> quadw_{};
    std::vector<int> shift_;
    std::vector<Word> unit_doob_, unit_hamming_;
};

} // namespace aqc
