#pragma once

// Isomorph-free extension by one index-2 step: C -> C + <v> with 2v in C.
//
// Every finite abelian 2-group has a subgroup of index 2, so any code with a hereditary
// property (all nonzero weights in a set, minimum distance at least d) is reached from the
// trivial code by such steps through codes that keep the property.

#include <aqc/equiv.hpp>

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace aqc {

// Condition on the new coset v + C; must be invariant under code automorphisms.
struct CosetPredicate {
    enum class Kind { MinDistance, WeightSet } kind = Kind::MinDistance;
    int d = 1;                 // MinDistance
    std::uint64_t weights = 0; // WeightSet: bit w set when weight w is allowed
    Metric metric = Metric::Doob;

    static CosetPredicate min_distance(int d, Metric m = Metric::Doob) { return {Kind::MinDistance, d, 0, m}; }
    static CosetPredicate weight_set(const std::vector<int>& ws, Metric m = Metric::Doob) {
        CosetPredicate p{Kind::WeightSet, 0, 0, m};
        for (int w : ws) p.weights |= std::uint64_t(1) << w;
        return p;
    }
    bool ok(int w) const { return kind == Kind::MinDistance ? w >= d : ((weights >> w) & 1); }
    bool holds(const Code& c) const {
        bool good = true;
        c.for_each([&](Word x) { good = good && (x == 0 || ok(c.space().weight(x, metric))); });
        return good;
    }
};

// A class: its canonical representative with automorphism generators of that representative.
struct CodeClass {
    Code code;
    std::vector<MonomialMap> automorphisms;
    std::string key; // canonical bytes

    static CodeClass of(const Code& c) {
        const auto cert = canonical_form(c);
        const auto winv = cert.witness.inverse();
        CodeClass cls{cert.representative(), {}, cert.bytes()};
        for (const auto& a : cert.automorphisms) cls.automorphisms.push_back(cert.witness.compose(a).compose(winv));
        return cls;
    }
};

inline bool operator<(const CodeClass& a, const CodeClass& b) { return a.key < b.key; }

struct ExtendOptions {
    int threads = 1;
    bool reverse_seeds = false; // process a level from its last class; output is unchanged
    // Optional extra filter on candidate words, built once per class; must be invariant
    // under the class's automorphisms.
    std::function<std::function<bool(Word)>(const Code&)> accept_for;
};

// Reduced coset representatives v (zero on pivot bits) with 2v in C, v not in C, v + C
// passing the predicate; one per orbit of the automorphism group.
inline std::vector<Word> extension_candidates(const CodeClass& cls, const CosetPredicate& pred,
                                              const ExtendOptions& opt = {}) {
    const Code& c = cls.code;
    const Space& sp = c.space();
    const Word free = sp.full() & ~c.pivots().pivots();
    const auto elems = c.elements();
    const auto accept = opt.accept_for ? opt.accept_for(c) : std::function<bool(Word)>();
    std::vector<Word> pass;
    for (Word v = free; v; v = (v - 1) & free) {
        if (!c.contains(sp.dbl(v))) continue;
        if (accept && !accept(v)) continue;
        bool good = true;
        for (Word x : elems)
            if (!pred.ok(sp.weight(sp.add(v, x), pred.metric))) {
                good = false;
                break;
            }
        if (good) pass.push_back(v);
    }
    std::sort(pass.begin(), pass.end());
    std::vector<int> uf(pass.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (const auto& g : cls.automorphisms)
        for (int i = 0; i < int(pass.size()); ++i) {
            const Word u = c.reduce(g.apply(sp, pass[i]));
            auto it = std::lower_bound(pass.begin(), pass.end(), u);
            if (it == pass.end() || *it != u) throw std::logic_error("extension_candidates: automorphism broke the candidate set");
            const int a = find(i), b = find(int(it - pass.begin()));
            if (a != b) uf[std::max(a, b)] = std::min(a, b);
        }
    std::vector<Word> reps;
    for (int i = 0; i < int(pass.size()); ++i)
        if (find(i) == i) reps.push_back(pass[i]);
    return reps;
}

// Keeps one class per canonical key; output sorted by key.
class ClassSet {
public:
    bool insert(CodeClass cls) {
        std::lock_guard<std::mutex> lock(mu_);
        return map_.emplace(cls.key, std::move(cls)).second;
    }
    bool contains(const std::string& key) const {
        std::lock_guard<std::mutex> lock(mu_);
        return map_.count(key) != 0;
    }
    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return map_.size();
    }
    std::vector<CodeClass> take() {
        std::lock_guard<std::mutex> lock(mu_);
        std::vector<CodeClass> out;
        out.reserve(map_.size());
        for (auto& [k, v] : map_) out.push_back(std::move(v));
        map_.clear();
        return out;
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, CodeClass> map_;
};

// All classes C + <v> for C in level, deduplicated.
inline std::vector<CodeClass> extend_level(const std::vector<CodeClass>& level, const CosetPredicate& pred,
                                           const ExtendOptions& opt = {}) {
    ClassSet out;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < level.size();) {
            const auto& cls = level[opt.reverse_seeds ? level.size() - 1 - i : i];
            for (Word v : extension_candidates(cls, pred, opt)) {
                Code d = cls.code;
                d.add(v);
                out.insert(CodeClass::of(d));
            }
        }
    };
    const int t = std::max(1, opt.threads);
    if (t == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < t; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return out.take();
}

inline std::vector<CodeClass> dedupe(const std::vector<Code>& codes) {
    ClassSet s;
    for (const auto& c : codes) s.insert(CodeClass::of(c));
    return s.take();
}

} // namespace aqc
