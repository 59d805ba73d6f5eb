#pragma once

// Equivalence of additive codes under block-respecting coordinate permutations combined with
// weight-preserving automorphisms of each coordinate group.
//
// Canonical forms come from canonical labeling of a colored graph: one vertex per codeword,
// joined to a symbol gadget per coordinate. The gadgets are the Shrikhande graph on Z4^2
// (Quad), K4 (Bi) and K4 with 2 colored apart (Single); with the zero symbol colored apart
// their automorphism groups are exactly the cell groups below.

#include <aqc/code.hpp>
#include <aqc/graph.hpp>

#include <array>
#include <map>
#include <random>

namespace aqc {

using CellMap = std::array<std::uint8_t, 16>; // symbol -> symbol; only the first symbol_count entries matter

inline int symbol_count(Kind k) { return k == Kind::Quad ? 16 : 4; }

namespace detail {

struct CellGroup {
    std::vector<CellMap> maps;
    std::vector<std::vector<std::uint8_t>> mul; // mul[a][b] = index of maps[a] o maps[b]
    std::vector<std::uint8_t> inv;
    std::array<std::uint8_t, 16> orbit{};       // smallest symbol in the orbit
};

inline CellGroup make_cell_group(Kind k) {
    CellGroup g;
    const int q = symbol_count(k);
    if (k == Kind::Quad) {
        for (unsigned al = 0; al < 4; ++al)
            for (unsigned be = 0; be < 4; ++be)
                for (unsigned ga = 0; ga < 4; ++ga)
                    for (unsigned de = 0; de < 4; ++de) {
                        CellMap t{};
                        unsigned seen = 0;
                        bool ok = true;
                        for (unsigned s = 0; s < 16 && ok; ++s) {
                            const unsigned a = s & 3, b = s >> 2;
                            const unsigned x = (al * a + be * b) & 3, y = (ga * a + de * b) & 3;
                            t[s] = std::uint8_t(x | (y << 2));
                            ok = !((seen >> t[s]) & 1) && quad_weight(a, b) == quad_weight(x, y);
                            seen |= 1u << t[s];
                        }
                        if (ok) g.maps.push_back(t);
                    }
    } else if (k == Kind::Bi) {
        std::array<std::uint8_t, 3> p{1, 2, 3};
        do {
            CellMap t{};
            t[1] = p[0];
            t[2] = p[1];
            t[3] = p[2];
            g.maps.push_back(t);
        } while (std::next_permutation(p.begin(), p.end()));
    } else {
        g.maps.push_back(CellMap{0, 1, 2, 3});
        g.maps.push_back(CellMap{0, 3, 2, 1});
    }
    std::sort(g.maps.begin(), g.maps.end());
    const int n = int(g.maps.size());
    std::map<CellMap, std::uint8_t> index;
    for (int i = 0; i < n; ++i) index[g.maps[i]] = std::uint8_t(i);
    g.mul.assign(n, std::vector<std::uint8_t>(n));
    g.inv.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            CellMap t{};
            for (int s = 0; s < q; ++s) t[s] = g.maps[a][g.maps[b][s]];
            g.mul[a][b] = index.at(t);
            if (g.mul[a][b] == 0) g.inv[a] = std::uint8_t(b);
        }
    for (int s = 0; s < q; ++s) {
        std::uint8_t lo = std::uint8_t(s);
        for (const auto& t : g.maps) lo = std::min(lo, t[s]);
        g.orbit[s] = lo;
    }
    return g;
}

inline const CellGroup& cell_group_data(Kind k) {
    static const CellGroup quad = make_cell_group(Kind::Quad), bi = make_cell_group(Kind::Bi),
                           single = make_cell_group(Kind::Single);
    return k == Kind::Quad ? quad : k == Kind::Bi ? bi : single;
}

} // namespace detail

// Weight-preserving automorphisms of a coordinate group; index 0 is the identity.
inline const std::vector<CellMap>& cell_group(Kind k) { return detail::cell_group_data(k).maps; }

// Coordinate i goes to perm[i] (same kind) and its symbol s becomes cell_group(kind)[cell[i]][s].
struct MonomialMap {
    Shape shape;
    std::vector<int> perm;
    std::vector<std::uint8_t> cell;

    static MonomialMap identity(Shape s) {
        MonomialMap g{s, std::vector<int>(s.length()), std::vector<std::uint8_t>(s.length(), 0)};
        std::iota(g.perm.begin(), g.perm.end(), 0);
        return g;
    }

    static MonomialMap random(Shape s, std::mt19937_64& rng) {
        MonomialMap g = identity(s);
        auto shuffle_block = [&](int lo, int hi) { std::shuffle(g.perm.begin() + lo, g.perm.begin() + hi, rng); };
        shuffle_block(0, s.m);
        shuffle_block(s.m, s.m + s.n1);
        shuffle_block(s.m + s.n1, s.length());
        for (int i = 0; i < s.length(); ++i) g.cell[i] = std::uint8_t(rng() % cell_group(s.kind(i)).size());
        return g;
    }

    void validate() const {
        if (int(perm.size()) != shape.length() || int(cell.size()) != shape.length())
            throw std::invalid_argument("MonomialMap: size mismatch");
        std::vector<char> hit(perm.size(), 0);
        for (int i = 0; i < shape.length(); ++i) {
            if (perm[i] < 0 || perm[i] >= shape.length() || hit[perm[i]]++)
                throw std::invalid_argument("MonomialMap: not a permutation");
            if (shape.kind(i) != shape.kind(perm[i])) throw std::invalid_argument("MonomialMap: mixes coordinate kinds");
            if (cell[i] >= cell_group(shape.kind(i)).size()) throw std::invalid_argument("MonomialMap: bad cell map");
        }
    }

    Word apply(const Space& sp, Word x) const {
        Word y = 0;
        for (int i = 0; i < shape.length(); ++i)
            y = sp.with_symbol(y, perm[i], cell_group(shape.kind(i))[cell[i]][sp.symbol(x, i)]);
        return y;
    }

    Code apply(const Code& c) const {
        if (c.shape() != shape) throw std::invalid_argument("MonomialMap: shape mismatch");
        Code out(c.space());
        for (Word g : c.generators()) out.add(apply(c.space(), g));
        return out;
    }

    // (*this) o other: apply other first.
    MonomialMap compose(const MonomialMap& other) const {
        if (other.shape != shape) throw std::invalid_argument("MonomialMap: shape mismatch");
        MonomialMap r{shape, std::vector<int>(perm.size()), std::vector<std::uint8_t>(perm.size())};
        for (int i = 0; i < shape.length(); ++i) {
            const int j = other.perm[i];
            r.perm[i] = perm[j];
            r.cell[i] = detail::cell_group_data(shape.kind(i)).mul[cell[j]][other.cell[i]];
        }
        return r;
    }

    MonomialMap inverse() const {
        MonomialMap r{shape, std::vector<int>(perm.size()), std::vector<std::uint8_t>(perm.size())};
        for (int i = 0; i < shape.length(); ++i) {
            r.perm[perm[i]] = i;
            r.cell[perm[i]] = detail::cell_group_data(shape.kind(i)).inv[cell[i]];
        }
        return r;
    }

    bool is_identity() const {
        for (int i = 0; i < shape.length(); ++i)
            if (perm[i] != i || cell[i] != 0) return false;
        return true;
    }

    bool operator==(const MonomialMap&) const = default;
};

inline MonomialMap compose(const MonomialMap& a, const MonomialMap& b) { return a.compose(b); }
inline Code apply(const MonomialMap& g, const Code& c) { return g.apply(c); }

// Hashable prefilter: shape, group type, weight distribution, and the sorted per-coordinate
// histograms of (symbol orbit, weight) over minimum-weight codewords.
struct InvariantKey {
    std::vector<std::uint64_t> data;
    bool operator==(const InvariantKey&) const = default;
    auto operator<=>(const InvariantKey&) const = default;
    std::size_t hash() const {
        std::size_t h = 0;
        for (auto x : data) h = h * 0x9E3779B97F4A7C15ULL + x;
        return h;
    }
};

inline InvariantKey invariant_key(const Code& c) {
    const Space& sp = c.space();
    const Shape& s = c.shape();
    InvariantKey key;
    key.data = {std::uint64_t(s.m), std::uint64_t(s.n1), std::uint64_t(s.n2)};
    const auto t = c.type();
    key.data.push_back(std::uint64_t(t.delta));
    key.data.push_back(std::uint64_t(t.gamma));
    const auto wd = c.weight_distribution();
    key.data.insert(key.data.end(), wd.begin(), wd.end());
    int dmin = 0;
    for (int w = 1; w < int(wd.size()); ++w)
        if (wd[w]) {
            dmin = w;
            break;
        }
    if (dmin == 0) return key;
    std::vector<std::vector<std::uint64_t>> spectra(s.length(), std::vector<std::uint64_t>(16, 0));
    c.for_each([&](Word x) {
        if (x == 0 || sp.weight(x) != dmin) return;
        for (int i = 0; i < s.length(); ++i)
            ++spectra[i][detail::cell_group_data(s.kind(i)).orbit[sp.symbol(x, i)]];
    });
    auto block = [&](int lo, int hi) {
        std::vector<std::vector<std::uint64_t>> b(spectra.begin() + lo, spectra.begin() + hi);
        std::sort(b.begin(), b.end());
        for (auto& v : b) key.data.insert(key.data.end(), v.begin(), v.end());
    };
    block(0, s.m);
    block(s.m, s.m + s.n1);
    block(s.m + s.n1, s.length());
    return key;
}

struct Certificate {
    Shape shape;
    std::vector<Word> canonical;             // basis of the canonical representative
    MonomialMap witness;                     // witness.apply(code) is the canonical representative
    std::vector<MonomialMap> automorphisms;  // generators of the code's automorphism group
    std::uint64_t search_nodes = 0;

    bool same_class(const Certificate& o) const { return shape == o.shape && canonical == o.canonical; }
    Code representative() const { return Code::span(shape, canonical); }

    std::string bytes() const {
        std::string b = shape.str();
        for (Word w : canonical) {
            b.push_back(':');
            for (int i = 0; i < 8; ++i) b.push_back(char((w >> (8 * i)) & 0xFF));
        }
        return b;
    }
};

namespace detail {

struct CodeGraph {
    Graph graph;
    std::vector<int> base;       // first gadget vertex of each coordinate
    std::vector<int> coord_of;   // gadget vertex -> coordinate, -1 for codeword vertices
};

inline CodeGraph code_graph(const Code& c, std::uint64_t budget) {
    const Space& sp = c.space();
    const Shape& s = c.shape();
    const int n = s.length();
    CodeGraph cg;
    int gadget_vertices = 0;
    for (int i = 0; i < n; ++i) {
        cg.base.push_back(gadget_vertices);
        gadget_vertices += symbol_count(s.kind(i));
    }
    const auto words = c.elements(budget);
    cg.graph = Graph(gadget_vertices + int(words.size()));
    cg.coord_of.assign(cg.graph.order(), -1);
    for (int i = 0; i < n; ++i) {
        const Kind k = s.kind(i);
        const int q = symbol_count(k), b = cg.base[i];
        for (int x = 0; x < q; ++x) {
            cg.coord_of[b + x] = i;
            std::uint32_t color;
            switch (k) {
            case Kind::Quad: color = x == 0 ? 0 : 1; break;
            case Kind::Bi: color = x == 0 ? 2 : 3; break;
            default: color = x == 0 ? 4 : x == 2 ? 5 : 6; break;
            }
            cg.graph.set_color(b + x, color);
            for (int y = x + 1; y < q; ++y) {
                if (k == Kind::Quad) {
                    const unsigned d = unsigned(((y & 3) - (x & 3)) & 3) | (unsigned((((y >> 2) - (x >> 2)) & 3)) << 2);
                    if (quad_weight(d & 3, d >> 2) != 1) continue;
                }
                cg.graph.add_edge(b + x, b + y);
            }
        }
    }
    for (int w = 0; w < int(words.size()); ++w) {
        const int v = gadget_vertices + w;
        cg.graph.set_color(v, 7);
        for (int i = 0; i < n; ++i) cg.graph.add_edge(v, cg.base[i] + int(sp.symbol(words[w], i)));
    }
    cg.graph.normalize();
    return cg;
}

} // namespace detail

inline Certificate canonical_form(const Code& c, std::uint64_t budget = std::uint64_t(1) << 16) {
    const Shape& s = c.shape();
    const int n = s.length();
    const auto cg = detail::code_graph(c, budget);
    const auto cl = canonical_labeling(cg.graph);

    Certificate cert{s, {}, MonomialMap::identity(s), {}, cl.nodes};
    auto place_block = [&](int lo, int hi) {
        std::vector<int> coords;
        for (int i = lo; i < hi; ++i) coords.push_back(i);
        std::sort(coords.begin(), coords.end(),
                  [&](int a, int b) { return cl.label[cg.base[a]] < cl.label[cg.base[b]]; });
        for (int r = 0; r < int(coords.size()); ++r) cert.witness.perm[coords[r]] = lo + r;
    };
    place_block(0, s.m);
    place_block(s.m, s.m + s.n1);
    place_block(s.m + s.n1, n);

    for (int i = 0; i < n; ++i) {
        const Kind k = s.kind(i);
        const int q = symbol_count(k);
        std::vector<int> by_label(q);
        std::iota(by_label.begin(), by_label.end(), 0);
        std::sort(by_label.begin(), by_label.end(),
                  [&](int a, int b) { return cl.label[cg.base[i] + a] < cl.label[cg.base[i] + b]; });
        const auto& maps = cell_group(k);
        int best = 0;
        for (int t = 1; t < int(maps.size()); ++t) {
            for (int j = 0; j < q; ++j) {
                const auto x = maps[t][by_label[j]], y = maps[best][by_label[j]];
                if (x != y) {
                    if (x < y) best = t;
                    break;
                }
            }
        }
        cert.witness.cell[i] = std::uint8_t(best);
    }
    cert.canonical = cert.witness.apply(c).basis();

    for (const auto& gamma : cl.automorphisms) {
        MonomialMap g = MonomialMap::identity(s);
        for (int i = 0; i < n; ++i) {
            const int j = cg.coord_of[gamma[cg.base[i]]];
            if (j < 0) throw std::logic_error("canonical_form: automorphism leaves the gadgets");
            g.perm[i] = j;
            CellMap t{};
            for (int x = 0; x < symbol_count(s.kind(i)); ++x) t[x] = std::uint8_t(gamma[cg.base[i] + x] - cg.base[j]);
            const auto& maps = cell_group(s.kind(i));
            auto it = std::find(maps.begin(), maps.end(), t);
            if (it == maps.end()) throw std::logic_error("canonical_form: gadget automorphism outside the cell group");
            g.cell[i] = std::uint8_t(it - maps.begin());
        }
        cert.automorphisms.push_back(std::move(g));
    }
    return cert;
}

inline bool equivalent(const Code& a, const Code& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("equivalent: shape mismatch");
    if (a.log2_size() != b.log2_size()) return false;
    if (a == b) return true;
    if (invariant_key(a) != invariant_key(b)) return false;
    return canonical_form(a).same_class(canonical_form(b));
}

} // namespace aqc
