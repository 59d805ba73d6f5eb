#pragma once

#include <aqc/code.hpp>
#include <aqc/graph.hpp>

#include <unordered_map>

namespace aqc {

inline constexpr std::uint64_t kDefaultCosetBudget = std::uint64_t(1) << 16;

// Syndrome of x against fixed generators of dual(c) under the Doob form: two bits per
// generator, so distinct cosets of c get distinct syndromes.
class Syndrome {
public:
    explicit Syndrome(const Code& c) : sp_(&c.space()), checks_(dual(c, Form::Doob).generators()) {
        if (2 * checks_.size() > 64) throw std::invalid_argument("Syndrome: too many checks");
    }
    std::uint64_t operator()(Word x) const {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < checks_.size(); ++j) s |= std::uint64_t(sp_->doob_ip(x, checks_[j])) << (2 * j);
        return s;
    }

private:
    const Space* sp_;
    std::vector<Word> checks_;
};

// Vertices are the cosets of c; two cosets are adjacent when they differ by a weight-one word.
// Vertex 0 is the code itself; the others are numbered in breadth-first order.
inline Graph coset_graph(const Code& c, Metric metric = Metric::Doob, std::uint64_t budget = kDefaultCosetBudget) {
    const Space& sp = c.space();
    const int index_log = sp.bits() - c.log2_size();
    if (index_log > 62 || (std::uint64_t(1) << index_log) > budget)
        throw BudgetExceeded("coset graph index 2^" + std::to_string(index_log) + " exceeds budget");
    const std::uint64_t order = std::uint64_t(1) << index_log;
    const Syndrome syn(c);
    const auto& ones = sp.weight_one(metric);
    std::unordered_map<std::uint64_t, int> id;
    std::vector<Word> rep{0};
    id.emplace(0, 0);
    std::vector<std::vector<int>> nbrs;
    for (std::size_t head = 0; head < rep.size(); ++head) {
        nbrs.emplace_back();
        for (Word e : ones) {
            const Word y = sp.add(rep[head], e);
            const auto s = syn(y);
            auto [it, fresh] = id.emplace(s, int(rep.size()));
            if (fresh) rep.push_back(y);
            if (it->second != int(head)) nbrs.back().push_back(it->second);
        }
    }
    if (rep.size() != order) throw std::logic_error("coset_graph: coset count mismatch");
    Graph g{int(order)};
    for (int v = 0; v < int(order); ++v)
        for (int u : nbrs[v])
            if (u > v) g.add_edge(v, u);
    g.normalize();
    return g;
}

} // namespace aqc
