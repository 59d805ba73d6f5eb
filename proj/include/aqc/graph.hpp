#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqc {

// Simple undirected vertex-colored graph.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n), color_(n, 0) {}

    int order() const { return int(adj_.size()); }
    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("Graph: loops are not allowed");
        adj_[u].push_back(std::uint32_t(v));
        adj_[v].push_back(std::uint32_t(u));
    }
    void set_color(int v, std::uint32_t c) { color_[v] = c; }
    std::uint32_t color(int v) const { return color_[v]; }
    const std::vector<std::uint32_t>& neighbors(int v) const { return adj_[v]; }
    const std::vector<std::uint32_t>& colors() const { return color_; }

    // Sorts neighbor lists and drops parallel edges.
    void normalize() {
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }
    std::size_t edge_count() const {
        std::size_t s = 0;
        for (auto& a : adj_) s += a.size();
        return s / 2;
    }
    bool adjacent(int u, int v) const {
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), std::uint32_t(v));
    }

    Graph relabeled(const std::vector<int>& perm) const {
        Graph g(order());
        for (int v = 0; v < order(); ++v) {
            g.color_[perm[v]] = color_[v];
            for (auto u : adj_[v]) g.adj_[perm[v]].push_back(std::uint32_t(perm[u]));
        }
        g.normalize();
        return g;
    }

    // One line per vertex: "index: n1 n2 ...".
    std::string adjacency_text() const {
        std::string out;
        for (int v = 0; v < order(); ++v) {
            out += std::to_string(v) + ":";
            std::vector<std::uint32_t> a = adj_[v];
            std::sort(a.begin(), a.end());
            for (auto u : a) out += " " + std::to_string(u);
            out += "\n";
        }
        return out;
    }

private:
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::uint32_t> color_;
};

struct SrgParams {
    int v = 0, k = 0, lambda = 0, mu = 0;
    bool feasible() const { return k * (k - lambda - 1) == (v - k - 1) * mu; }
    std::string str() const {
        return "(" + std::to_string(v) + "," + std::to_string(k) + "," + std::to_string(lambda) + "," +
               std::to_string(mu) + ")";
    }
    auto operator<=>(const SrgParams&) const = default;
};

// Complete and edgeless graphs are rejected: one of lambda, mu is undefined there.
inline std::optional<SrgParams> srg_params(const Graph& g) {
    const int n = g.order();
    if (n < 2) return std::nullopt;
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(std::size_t(n) * words, 0);
    for (int v = 0; v < n; ++v)
        for (auto u : g.neighbors(v)) rows[std::size_t(v) * words + u / 64] |= 1ull << (u % 64);
    auto common = [&](int a, int b) {
        int c = 0;
        for (int w = 0; w < words; ++w)
            c += __builtin_popcountll(rows[std::size_t(a) * words + w] & rows[std::size_t(b) * words + w]);
        return c;
    };
    const int k = int(g.neighbors(0).size());
    for (int v = 0; v < n; ++v)
        if (int(g.neighbors(v).size()) != k) return std::nullopt;
    if (k == 0 || k == n - 1) return std::nullopt;
    int lambda = -1, mu = -1;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const bool adj = (rows[std::size_t(a) * words + b / 64] >> (b % 64)) & 1;
            int& slot = adj ? lambda : mu;
            const int c = common(a, b);
            if (slot < 0)
                slot = c;
            else if (slot != c)
                return std::nullopt;
        }
    return SrgParams{n, k, lambda, mu};
}

// Canonical labeling by individualization-refinement.
//
// The search tree is explored depth first. Leaves are ordered by the sequence of refinement
// traces along the path, then by the relabeled graph; the least leaf is the canonical one.
// Automorphisms discovered from equal leaves prune siblings in the same orbit of the
// pointwise stabilizer of the current prefix.
struct CanonicalLabeling {
    std::vector<int> label;                     // vertex -> canonical index
    std::vector<std::uint32_t> certificate;     // canonical graph serialization
    std::vector<std::vector<int>> automorphisms; // generators of (a subgroup containing the orbit data of) Aut(g)
    std::uint64_t nodes = 0;
};

namespace detail {

class Partition {
public:
    explicit Partition(const Graph& g) : n_(g.order()), elems_(n_), pos_(n_), cell_(n_), len_(n_, 0) {
        std::iota(elems_.begin(), elems_.end(), 0);
        std::stable_sort(elems_.begin(), elems_.end(), [&](int a, int b) { return g.color(a) < g.color(b); });
        for (int i = 0; i < n_;) {
            int j = i;
            while (j < n_ && g.color(elems_[j]) == g.color(elems_[i])) ++j;
            len_[i] = j - i;
            for (int t = i; t < j; ++t) cell_[elems_[t]] = i;
            i = j;
        }
        for (int i = 0; i < n_; ++i) pos_[elems_[i]] = i;
    }

    int size() const { return n_; }
    int cell_of(int v) const { return cell_[v]; }
    int cell_len(int start) const { return len_[start]; }
    int at(int i) const { return elems_[i]; }
    int pos(int v) const { return pos_[v]; }
    bool discrete() const {
        for (int i = 0; i < n_; i += len_[i])
            if (len_[i] != 1) return false;
        return true;
    }
    std::vector<int> cell_starts() const {
        std::vector<int> s;
        for (int i = 0; i < n_; i += len_[i]) s.push_back(i);
        return s;
    }
    int target_cell() const {
        int best = -1;
        for (int i = 0; i < n_; i += len_[i])
            if (len_[i] > 1 && (best < 0 || len_[i] < len_[best])) best = i;
        return best;
    }

    // Moves v to the front of its cell and splits it off.
    int individualize(int v) {
        const int s = cell_[v], L = len_[s];
        const int p = pos_[v], u = elems_[s];
        std::swap(elems_[s], elems_[p]);
        pos_[u] = p;
        pos_[v] = s;
        len_[s] = 1;
        len_[s + 1] = L - 1;
        for (int i = s + 1; i < s + L; ++i) cell_[elems_[i]] = s + 1;
        return s;
    }

    // Equitable refinement. Appends a label-invariant description of every split to trace.
    void refine(const Graph& g, std::vector<int> queue, std::vector<std::uint32_t>& trace) {
        std::vector<char> queued(n_, 0);
        for (int s : queue) queued[s] = 1;
        std::vector<int> count(n_, 0);
        std::vector<int> touched, touched_cells, members;
        std::size_t head = 0;
        while (head < queue.size()) {
            const int w = queue[head++];
            queued[w] = 0;
            members.assign(elems_.begin() + w, elems_.begin() + w + len_[w]);
            touched.clear();
            for (int u : members)
                for (auto x : g.neighbors(u)) {
                    if (count[x]++ == 0) touched.push_back(int(x));
                }
            touched_cells.clear();
            for (int x : touched) touched_cells.push_back(cell_[x]);
            std::sort(touched_cells.begin(), touched_cells.end());
            touched_cells.erase(std::unique(touched_cells.begin(), touched_cells.end()), touched_cells.end());
            for (int c : touched_cells) {
                const int L = len_[c];
                if (L == 1) {
                    trace.push_back(std::uint32_t(w));
                    trace.push_back(std::uint32_t(c));
                    trace.push_back(std::uint32_t(count[elems_[c]]));
                    continue;
                }
                auto first = elems_.begin() + c, last = first + L;
                std::sort(first, last, [&](int a, int b) { return count[a] < count[b]; });
                for (int t = c; t < c + L; ++t) pos_[elems_[t]] = t;
                if (count[elems_[c]] == count[elems_[c + L - 1]]) {
                    trace.push_back(std::uint32_t(w));
                    trace.push_back(std::uint32_t(c));
                    trace.push_back(std::uint32_t(count[elems_[c]]));
                    continue;
                }
                trace.push_back(std::uint32_t(w));
                trace.push_back(std::uint32_t(c));
                trace.push_back(0xFFFFFFFFu);
                int i = c;
                while (i < c + L) {
                    int j = i;
                    while (j < c + L && count[elems_[j]] == count[elems_[i]]) ++j;
                    len_[i] = j - i;
                    for (int t = i; t < j; ++t) {
                        cell_[elems_[t]] = i;
                        pos_[elems_[t]] = t;
                    }
                    trace.push_back(std::uint32_t(count[elems_[i]]));
                    trace.push_back(std::uint32_t(j - i));
                    if (!queued[i]) {
                        queued[i] = 1;
                        queue.push_back(i);
                    }
                    i = j;
                }
            }
            for (int x : touched) count[x] = 0;
        }
    }

private:
    int n_;
    std::vector<int> elems_, pos_, cell_, len_;
};

class Canonizer {
public:
    explicit Canonizer(const Graph& g) : g_(g), n_(g.order()) {}

    CanonicalLabeling run() {
        Partition p(g_);
        std::vector<std::uint32_t> trace;
        p.refine(g_, p.cell_starts(), trace);
        path_traces_.push_back(trace);
        search(p, 0, Cmp::Equal);
        CanonicalLabeling out;
        out.label = best_label_;
        out.certificate = best_cert_;
        out.automorphisms = gens_;
        out.nodes = nodes_;
        return out;
    }

private:
    enum class Cmp { Less, Equal };
    static constexpr int kNoJump = -1;

    std::vector<std::uint32_t> certificate_of(const Partition& p) const {
        std::vector<std::uint32_t> cert;
        cert.reserve(std::size_t(n_) + 2 * g_.edge_count() + n_);
        for (int i = 0; i < n_; ++i) cert.push_back(g_.color(p.at(i)));
        std::vector<std::uint32_t> nb;
        for (int i = 0; i < n_; ++i) {
            const int v = p.at(i);
            nb.clear();
            for (auto u : g_.neighbors(v)) nb.push_back(std::uint32_t(p.pos(int(u))));
            std::sort(nb.begin(), nb.end());
            cert.push_back(std::uint32_t(nb.size()));
            cert.insert(cert.end(), nb.begin(), nb.end());
        }
        return cert;
    }

    static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
        int i = 0;
        while (i < int(a.size()) && i < int(b.size()) && a[i] == b[i]) ++i;
        return i;
    }

    void add_automorphism(const std::vector<int>& from_label, const std::vector<int>& to_label) {
        std::vector<int> inv(n_), gamma(n_);
        for (int v = 0; v < n_; ++v) inv[to_label[v]] = v;
        bool identity = true;
        for (int v = 0; v < n_; ++v) {
            gamma[v] = inv[from_label[v]];
            identity &= gamma[v] == v;
        }
        if (!identity) gens_.push_back(std::move(gamma));
    }

    int find(std::vector<int>& uf, int x) const {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    }

    // Orbits of the subgroup generated by known generators fixing every prefix vertex.
    std::vector<int> stabilizer_orbits() {
        std::vector<int> uf(n_);
        std::iota(uf.begin(), uf.end(), 0);
        for (const auto& gm : gens_) {
            bool fixes = true;
            for (int v : prefix_) fixes &= gm[v] == v;
            if (!fixes) continue;
            for (int v = 0; v < n_; ++v) {
                const int a = find(uf, v), b = find(uf, gm[v]);
                if (a != b) uf[std::max(a, b)] = std::min(a, b);
            }
        }
        return uf;
    }

    // Returns the depth to unwind to after an automorphism-based jump, or kNoJump.
    int search(const Partition& p, int depth, Cmp cmp) {
        ++nodes_;
        if (p.discrete()) return leaf(p, cmp);
        const int t = p.target_cell();
        std::vector<int> children;
        for (int i = t; i < t + p.cell_len(t); ++i) children.push_back(p.at(i));
        std::sort(children.begin(), children.end());
        std::vector<int> explored;
        std::size_t seen_gens = std::size_t(-1);
        std::vector<int> orbits;
        for (int v : children) {
            if (!explored.empty()) {
                if (seen_gens != gens_.size()) {
                    orbits = stabilizer_orbits();
                    seen_gens = gens_.size();
                }
                std::vector<int>& uf = orbits;
                const int r = find(uf, v);
                bool skip = false;
                for (int u : explored) skip |= find(uf, u) == r;
                if (skip) continue;
            }
            explored.push_back(v);
            Partition q = p;
            std::vector<std::uint32_t> trace;
            const int s = q.individualize(v);
            q.refine(g_, {s}, trace);
            Cmp child = cmp;
            if (have_best_ && cmp == Cmp::Equal) {
                const auto& ref = best_traces_[depth + 1];
                if (trace > ref) continue;
                if (trace < ref) child = Cmp::Less;
            }
            prefix_.push_back(v);
            path_traces_.resize(depth + 1);
            path_traces_.push_back(std::move(trace));
            const std::uint64_t version = best_version_;
            const int jump = search(q, depth + 1, child);
            prefix_.pop_back();
            if (best_version_ != version) cmp = Cmp::Equal;
            if (jump != kNoJump && jump < depth) return jump;
        }
        return kNoJump;
    }

    int leaf(const Partition& p, Cmp cmp) {
        std::vector<int> label(n_);
        for (int v = 0; v < n_; ++v) label[v] = p.pos(v);
        auto cert = certificate_of(p);
        if (!have_first_) {
            have_first_ = have_best_ = true;
            first_label_ = best_label_ = label;
            first_cert_ = cert;
            best_cert_ = std::move(cert);
            first_prefix_ = best_prefix_ = prefix_;
            first_traces_ = best_traces_ = path_traces_;
            ++best_version_;
            return kNoJump;
        }
        if (cert == first_cert_) {
            add_automorphism(label, first_label_);
            if (path_traces_ == first_traces_) return common_prefix(prefix_, first_prefix_);
        }
        if (cmp == Cmp::Less || (cmp == Cmp::Equal && cert < best_cert_)) {
            best_label_ = std::move(label);
            best_cert_ = std::move(cert);
            best_prefix_ = prefix_;
            best_traces_ = path_traces_;
            ++best_version_;
            return kNoJump;
        }
        if (cmp == Cmp::Equal && cert == best_cert_) {
            add_automorphism(label, best_label_);
            return common_prefix(prefix_, best_prefix_);
        }
        return kNoJump;
    }

    const Graph& g_;
    int n_;
    std::vector<int> prefix_;
    std::vector<std::vector<std::uint32_t>> path_traces_;
    bool have_first_ = false, have_best_ = false;
    std::vector<int> first_label_, best_label_, first_prefix_, best_prefix_;
    std::vector<std::uint32_t> first_cert_, best_cert_;
    std::vector<std::vector<std::uint32_t>> first_traces_, best_traces_;
    std::vector<std::vector<int>> gens_;
    std::uint64_t nodes_ = 0, best_version_ = 0;
};

} // namespace detail

inline CanonicalLabeling canonical_labeling(const Graph& g) {
    Graph h = g;
    h.normalize();
    return detail::Canonizer(h).run();
}

// Serialization of the canonical form; equal iff the graphs are isomorphic (colors respected).
inline std::vector<std::uint32_t> canonical_graph(const Graph& g) {
    auto cl = canonical_labeling(g);
    std::vector<std::uint32_t> out{std::uint32_t(g.order())};
    out.insert(out.end(), cl.certificate.begin(), cl.certificate.end());
    return out;
}

// Groups graphs by canonical form; classes ordered by first occurrence, members by index.
inline std::vector<std::vector<int>> classify_isomorphism(const std::vector<Graph>& graphs) {
    std::vector<std::vector<std::uint32_t>> keys;
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < int(graphs.size()); ++i) {
        auto key = canonical_graph(graphs[i]);
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) {
            keys.push_back(std::move(key));
            classes.push_back({i});
        } else {
            classes[it - keys.begin()].push_back(i);
        }
    }
    return classes;
}

} // namespace aqc
