#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "code.hpp"

namespace aqc {

inline constexpr std::uint64_t kDefaultAmbientBudget = std::uint64_t(1) << 20; // 4^10

// Distance from every ambient vertex to the code (multi-source BFS over the Cayley graph).
inline std::vector<std::uint8_t> distance_to_code(const Code& c, Metric metric = Metric::Doob,
                                                  std::uint64_t budget = kDefaultAmbientBudget) {
    const Space& sp = c.space();
    if (sp.bits() > 62 || sp.size() > budget)
        throw BudgetExceeded("ambient of " + sp.shape().str() + " exceeds the BFS budget");
    std::vector<std::uint8_t> dist(sp.size(), 0xFF);
    std::vector<Word> frontier, next;
    c.for_each([&](Word x) {
        dist[x] = 0;
        frontier.push_back(x);
    });
    const auto& units = sp.weight_one(metric);
    std::uint8_t d = 0;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        for (Word x : frontier)
            for (Word u : units) {
                const Word y = sp.add(x, u);
                if (dist[y] == 0xFF) {
                    dist[y] = d;
                    next.push_back(y);
                }
            }
        frontier.swap(next);
    }
    return dist;
}

inline int covering_radius(const Code& c, Metric metric = Metric::Doob, std::uint64_t budget = kDefaultAmbientBudget) {
    int r = 0;
    for (auto d : distance_to_code(c, metric, budget)) r = std::max<int>(r, d);
    return r;
}

struct IntersectionArray {
    std::vector<int> b; // b_0..b_{rho-1}
    std::vector<int> c; // c_1..c_rho
    int rho() const { return int(c.size()); }
    bool operator==(const IntersectionArray&) const = default;

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
        s += ";";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + "}";
    }
};

struct CompleteRegularity {
    bool regular = false;
    IntersectionArray array;            // valid when regular
    std::vector<std::uint64_t> classes; // |C^(i)|
    Word violator = 0;                  // first vertex breaking uniformity
    int level = -1;
    std::string reason;
};

inline CompleteRegularity intersection_array(const Code& c, Metric metric = Metric::Doob,
                                             std::uint64_t budget = kDefaultAmbientBudget) {
    const Space& sp = c.space();
    const auto dist = distance_to_code(c, metric, budget);
    int rho = 0;
    for (auto d : dist) rho = std::max<int>(rho, d);
    CompleteRegularity res;
    res.classes.assign(rho + 1, 0);
    std::vector<int> b(rho + 1, -1), cc(rho + 1, -1);
    const auto& units = sp.weight_one(metric);
    for (Word x = 0; x < sp.size(); ++x) {
        const int i = dist[x];
        ++res.classes[i];
        int up = 0, down = 0;
        for (Word u : units) {
            const int j = dist[sp.add(x, u)];
            up += j == i + 1;
            down += j == i - 1;
        }
        if (b[i] < 0) {
            b[i] = up;
            cc[i] = down;
        } else if (b[i] != up || cc[i] != down) {
            res.violator = x;
            res.level = i;
            res.reason = "vertex " + sp.str(x) + " at distance " + std::to_string(i) + " has b=" + std::to_string(up) +
                         ", c=" + std::to_string(down) + " (expected " + std::to_string(b[i]) + ", " +
                         std::to_string(cc[i]) + ")";
            return res;
        }
    }
    res.regular = true;
    for (int i = 0; i < rho; ++i) res.array.b.push_back(b[i]);
    for (int i = 1; i <= rho; ++i) res.array.c.push_back(cc[i]);
    return res;
}

} // namespace aqc
