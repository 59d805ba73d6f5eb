#pragma once

// Search for a cyclic trace-Hermitian self-dual (12, 2^12, 6)_4 code, and the completion of
// an even self-orthogonal code by one odd word.

#include <aqc/code.hpp>

#include <optional>

namespace aqc {

struct DodecacodeSearch {
    std::uint64_t stage1_budget = 100000;   // seed orbits
    std::uint64_t stage2_budget = 10000000; // orbit pairs
};

struct DodecacodeResult {
    std::optional<Code> code;
    int stage = 0;
    std::uint64_t seeds = 0, orthogonal_seeds = 0, pairs = 0;
    Word seed = 0;
};

namespace detail {

// GF(4)^n words with 2 bits per coordinate, coordinate i at bits 2i, 2i+1.
struct CyclicWords {
    int n;
    Word mask;
    explicit CyclicWords(int n_) : n(n_), mask((Word(1) << (2 * n_)) - 1) {}
    Word rotate(Word x) const { return ((x << 2) | (x >> (2 * n - 2))) & mask; }
    // Multiplication by omega on every coordinate: (hi, lo) -> (hi ^ lo, hi).
    Word times_omega(Word x) const {
        const Word lo = x & (mask / 3), hi = (x >> 1) & (mask / 3);
        return ((hi ^ lo) << 1) | hi;
    }
    bool orbit_min(Word x) const {
        Word y = x;
        for (int s = 0; s < 3; ++s) {
            Word z = y;
            for (int r = 0; r < n; ++r) {
                if (z < x) return false;
                z = rotate(z);
            }
            y = times_omega(y);
        }
        return true;
    }
};

inline Code cyclic_closure(const Space& sp, const CyclicWords& cw, const std::vector<Word>& seeds) {
    Code c(sp);
    for (Word s : seeds)
        for (int r = 0; r < cw.n; ++r, s = cw.rotate(s)) c.add(s);
    return c;
}

inline bool cyclically_orthogonal(const Space& sp, const CyclicWords& cw, Word a, Word b) {
    for (int r = 0; r < cw.n; ++r, b = cw.rotate(b))
        if (sp.symplectic(a, b)) return false;
    return true;
}

} // namespace detail

// Stage 1: one weight-6 seed whose cyclic shifts span the code. Stage 2: two seed orbits.
inline DodecacodeResult search_dodecacode(const DodecacodeSearch& cfg = {}) {
    constexpr int n = 12, wt = 6, d = 6;
    const Space& sp = Space::get(Shape::gf4(n));
    const detail::CyclicWords cw(n);
    DodecacodeResult res;
    auto accept = [&](const Code& c) {
        return c.log2_size() == n && is_self_dual(c, Form::TraceHermitian) && c.min_distance(Metric::Hamming) == d;
    };
    std::vector<Word> orthogonal;
    for (unsigned support = 0; support < (1u << n); ++support) {
        if (std::popcount(support) != wt) continue;
        std::vector<int> pos;
        for (int i = 0; i < n; ++i)
            if ((support >> i) & 1) pos.push_back(i);
        for (unsigned vals = 0; vals < 729; ++vals) {
            Word x = 0;
            unsigned v = vals;
            for (int p : pos) {
                x |= Word(1 + v % 3) << (2 * p);
                v /= 3;
            }
            if (!cw.orbit_min(x)) continue;
            if (++res.seeds > cfg.stage1_budget) return res;
            if (!detail::cyclically_orthogonal(sp, cw, x, x)) continue;
            ++res.orthogonal_seeds;
            orthogonal.push_back(x);
            const Code c = detail::cyclic_closure(sp, cw, {x});
            if (accept(c)) {
                res.code = c;
                res.stage = 1;
                res.seed = x;
                return res;
            }
        }
    }
    for (std::size_t i = 0; i < orthogonal.size(); ++i)
        for (std::size_t j = i + 1; j < orthogonal.size(); ++j) {
            if (++res.pairs > cfg.stage2_budget) return res;
            if (!detail::cyclically_orthogonal(sp, cw, orthogonal[i], orthogonal[j])) continue;
            const Code c = detail::cyclic_closure(sp, cw, {orthogonal[i], orthogonal[j]});
            if (accept(c)) {
                res.code = c;
                res.stage = 2;
                res.seed = orthogonal[i];
                return res;
            }
        }
    return res;
}

// N = D + <x> for an even trace-Hermitian self-orthogonal D and a word x orthogonal to D
// outside it; checks that N is self-dual and that D is its even part.
inline Code verify_unique_completion(const Code& dcode, Word x) {
    require_gf4(dcode, "verify_unique_completion");
    const Space& sp = dcode.space();
    if (!is_self_orthogonal(dcode, Form::TraceHermitian)) throw std::invalid_argument("completion: D is not self-orthogonal");
    bool even = true;
    dcode.for_each([&](Word y) { even = even && sp.weight(y, Metric::Hamming) % 2 == 0; });
    if (!even) throw std::invalid_argument("completion: D is not even");
    if (dcode.contains(x)) throw std::invalid_argument("completion: x lies in D");
    for (Word g : dcode.generators())
        if (sp.symplectic(g, x)) throw std::invalid_argument("completion: x is not orthogonal to D");
    Code nc = dcode;
    nc.add(x);
    if (nc.log2_size() != dcode.log2_size() + 1) throw std::logic_error("completion: size did not double");
    if (!is_self_dual(nc, Form::TraceHermitian)) throw std::domain_error("completion: union is not self-dual");
    if (!(even_subcode(nc) == dcode)) throw std::logic_error("completion: D is not the even part");
    return nc;
}

} // namespace aqc
