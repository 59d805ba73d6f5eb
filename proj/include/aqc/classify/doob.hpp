#pragma once

// Weight-constrained codes in Doob graphs: the diameter-9 two-weight classification and the
// diameter-11 lengthening of its size-64 codes.

#include <aqc/classify/extend.hpp>

#include <set>

namespace aqc {

// Shapes of diameter 9 that can hold a weight-{6,8} code with an element of order 4
// (2m + n'' >= 6), plus H(9,4) = D(0, 9+0).
inline std::vector<Shape> diameter9_ambients() {
    std::vector<Shape> out;
    for (int m = 0; 2 * m <= 9; ++m)
        for (int n2 = 0; 2 * m + n2 <= 9; ++n2) {
            const int n1 = 9 - 2 * m - n2;
            if (2 * m + n2 >= 6 || (m == 0 && n2 == 0)) out.push_back({m, n1, n2});
        }
    return out;
}

struct LevelReport {
    int log2_size = 0;
    std::vector<CodeClass> classes;

    // Classes grouped by group type (delta, gamma).
    std::map<std::pair<int, int>, std::vector<const CodeClass*>> by_type() const {
        std::map<std::pair<int, int>, std::vector<const CodeClass*>> out;
        for (auto& c : classes) {
            const auto t = c.code.type();
            out[{t.delta, t.gamma}].push_back(&c);
        }
        return out;
    }
};

struct TwoWeightConfig {
    std::vector<int> weights{6, 8};
    int max_log2_size = 6; // 0: run to exhaustion
    int threads = 1;
    bool reverse_seeds = false;
    std::function<void(const Shape&, int log2_size, std::size_t classes)> progress;
};

// Breadth-first closure from the trivial code; level i holds the classes of size 2^i.
inline std::vector<LevelReport> classify_doob_two_weight(Shape shape, const TwoWeightConfig& cfg = {}) {
    const auto pred = CosetPredicate::weight_set(cfg.weights);
    ExtendOptions opt;
    opt.threads = cfg.threads;
    opt.reverse_seeds = cfg.reverse_seeds;
    std::vector<LevelReport> levels;
    levels.push_back({0, {CodeClass::of(Code(shape))}});
    if (cfg.progress) cfg.progress(shape, 0, 1);
    while (cfg.max_log2_size == 0 || levels.back().log2_size < cfg.max_log2_size) {
        auto next = extend_level(levels.back().classes, pred, opt);
        if (next.empty()) break;
        levels.push_back({levels.back().log2_size + 1, std::move(next)});
        if (cfg.progress) cfg.progress(shape, levels.back().log2_size, levels.back().classes.size());
    }
    return levels;
}

// Diameter-11 shapes with m > 0 whose every admissible shortening (one Quad coordinate, or two
// of the remaining ones) lands in a shape from `with_size64`.
inline std::vector<Shape> diameter11_candidates(const std::set<Shape>& with_size64) {
    std::vector<Shape> out;
    for (int m = 1; 2 * m <= 11; ++m)
        for (int n2 = 0; 2 * m + n2 <= 11; ++n2) {
            const int n1 = 11 - 2 * m - n2;
            std::vector<Shape> shortened{{m - 1, n1, n2}};
            if (n1 >= 2) shortened.push_back({m, n1 - 2, n2});
            if (n1 >= 1 && n2 >= 1) shortened.push_back({m, n1 - 1, n2 - 1});
            if (n2 >= 2) shortened.push_back({m, n1, n2 - 2});
            bool all = true;
            for (auto& s : shortened) all &= with_size64.count(s) != 0;
            if (all) out.push_back({m, n1, n2});
        }
    return out;
}

struct LengtheningReport {
    int seed_log2_size = 0;
    std::vector<CodeClass> seeds;
    std::map<int, std::vector<CodeClass>> by_log2_size; // classes strictly larger than the seeds
    int max_log2_size() const { return by_log2_size.empty() ? seed_log2_size : by_log2_size.rbegin()->first; }
};

// Prepends a zero Quad coordinate to each seed (all of one size) and extends with nonzero
// weights in `weights` until no new class appears.
inline LengtheningReport lengthen_with_quad(const std::vector<Code>& seeds, const std::vector<int>& weights,
                                            int threads = 1) {
    if (seeds.empty()) throw std::invalid_argument("lengthen_with_quad: no seeds");
    LengtheningReport rep;
    rep.seed_log2_size = seeds.front().log2_size();
    std::vector<Code> lengthened;
    for (auto& s : seeds) {
        if (s.log2_size() != rep.seed_log2_size) throw std::invalid_argument("lengthen_with_quad: seeds differ in size");
        lengthened.push_back(append_zero_coordinate(s, Kind::Quad));
    }
    rep.seeds = dedupe(lengthened);
    const auto pred = CosetPredicate::weight_set(weights);
    ExtendOptions opt;
    opt.threads = threads;
    std::vector<CodeClass> frontier = rep.seeds;
    for (int k = rep.seed_log2_size + 1;; ++k) {
        frontier = extend_level(frontier, pred, opt);
        if (frontier.empty()) break;
        rep.by_log2_size[k] = frontier;
    }
    return rep;
}

// Diameter 11: the candidate ambients for a size-1024 weight-{6,8,10} code, and the
// lengthening of the D(4,1+0) size-64 classes into D(5,1+0).
struct Diameter11Report {
    std::vector<Shape> candidates;
    LengtheningReport lengthening;
    // No code of size 2^k in any candidate ambient.
    bool excludes(int log2_size) const { return lengthening.max_log2_size() < log2_size; }
};

inline Diameter11Report lengthen_diameter11(const std::vector<Code>& d41_size64, const std::set<Shape>& with_size64,
                                            int threads = 1) {
    Diameter11Report rep;
    rep.candidates = diameter11_candidates(with_size64);
    for (auto& s : rep.candidates)
        if (!(s == Shape{5, 1, 0})) throw std::logic_error("lengthen_diameter11: unexpected candidate " + s.str());
    for (auto& c : d41_size64)
        if (!(c.shape() == Shape{4, 1, 0}) || c.log2_size() != 6)
            throw std::invalid_argument("lengthen_diameter11: seeds must be size-64 codes in D(4,1+0)");
    if (!rep.candidates.empty()) rep.lengthening = lengthen_with_quad(d41_size64, {6, 8, 10}, threads);
    return rep;
}

} // namespace aqc
