#pragma once

// Classification of additive (n, 2^k, >= d)_4 codes, zero coordinates included.

#include <aqc/classify/extend.hpp>

#include <optional>
#include <sstream>

namespace aqc {

struct TableCell {
    std::uint64_t count = 0;
    bool lower_bound = false;
    bool computed = false;
};

// N(n, k, d) by length and binary dimension.
struct ClassTable {
    int d = 0;
    std::map<int, std::vector<TableCell>> rows;

    std::optional<TableCell> cell(int n, int k) const {
        auto it = rows.find(n);
        if (it == rows.end() || k >= int(it->second.size())) return std::nullopt;
        return it->second[k];
    }

    std::string text(bool csv = false) const {
        int width = 0;
        for (auto& [n, r] : rows) width = std::max(width, int(r.size()));
        std::ostringstream out;
        auto cell_text = [](const TableCell& c) {
            if (!c.computed) return std::string();
            if (c.lower_bound) return c.count ? ">=" + std::to_string(c.count) : std::string("-");
            return std::to_string(c.count);
        };
        if (csv) {
            out << "n";
            for (int k = 0; k < width; ++k) out << ",k" << k;
            out << "\n";
            for (auto& [n, r] : rows) {
                out << n;
                for (int k = 0; k < width; ++k) out << "," << (k < int(r.size()) ? cell_text(r[k]) : "");
                out << "\n";
            }
            return out.str();
        }
        std::vector<std::vector<std::string>> grid;
        grid.push_back({"n\\k"});
        for (int k = 0; k < width; ++k) grid[0].push_back(std::to_string(k));
        for (auto& [n, r] : rows) {
            grid.push_back({std::to_string(n)});
            for (auto& c : r) grid.back().push_back(cell_text(c));
        }
        std::vector<std::size_t> w(width + 1, 0);
        for (auto& row : grid)
            for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].size());
        for (auto& row : grid) {
            std::string line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::string s = row[i];
                line += std::string(w[i] - s.size() + (i ? 2 : 0), ' ') + s;
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << "\n";
        }
        return out.str();
    }
};

struct HammingConfig {
    int d = 3;
    int n_min = 0; // 0: start at d
    int n_max = 6;
    // With a target (N, K), codes with k + 2(N - n) < K are not lengthened; cells they could
    // feed become lower bounds.
    std::optional<std::pair<int, int>> target;
    int threads = 1;
    bool reverse_seeds = false;
    std::function<void(int n, int k, std::size_t classes)> progress;
};

struct HammingResult {
    ClassTable table;
    std::map<std::pair<int, int>, std::vector<CodeClass>> classes; // (n, k) -> classes
};

inline HammingResult classify_hamming(const HammingConfig& cfg) {
    if (cfg.d < 1) throw std::invalid_argument("classify_hamming: d must be positive");
    const int n0 = cfg.n_min > 0 ? cfg.n_min : cfg.d;
    if (cfg.n_max < n0 || 2 * cfg.n_max > 62) throw std::invalid_argument("classify_hamming: bad length range");
    const auto pred = CosetPredicate::min_distance(cfg.d, Metric::Hamming);
    ExtendOptions opt;
    opt.threads = cfg.threads;
    opt.reverse_seeds = cfg.reverse_seeds;
    HammingResult res;
    res.table.d = cfg.d;
    auto cut = [&](int n, int k) { return cfg.target && k + 2 * (cfg.target->first - n) < cfg.target->second; };

    for (int n = n0; n <= cfg.n_max; ++n) {
        const Shape shape = Shape::gf4(n);
        std::map<int, std::vector<Code>> seeds;
        if (!cfg.target || n == n0) {
            seeds[0].push_back(Code(shape));
        } else {
            for (auto& [nk, list] : res.classes) {
                if (nk.first != n - 1 || cut(n - 1, nk.second)) continue;
                for (auto& cls : list) seeds[nk.second].push_back(append_zero_coordinate(cls.code, Kind::Bi));
            }
        }
        auto& row = res.table.rows[n];
        std::vector<CodeClass> level;
        for (int k = 0;; ++k) {
            ClassSet set;
            for (auto& cls : extend_level(level, pred, opt)) set.insert(std::move(cls));
            if (auto it = seeds.find(k); it != seeds.end())
                for (auto& c : it->second) set.insert(CodeClass::of(c));
            level = set.take();
            const bool more_seeds = !seeds.empty() && seeds.rbegin()->first > k;
            const bool partial = n != n0 && cut(n, k);
            row.push_back({level.size(), partial, true});
            if (cfg.progress) cfg.progress(n, k, level.size());
            res.classes[{n, k}] = level;
            if (level.empty() && !more_seeds) break;
        }
    }
    return res;
}

} // namespace aqc
