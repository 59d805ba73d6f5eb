#pragma once

// Lifting order-2 codes in D(n, 0) to codes with elements of order 4.
//
// A codeword b of an order-2 code C0 is liftable when some c with 2c = b gives a code
// C0 + <c> whose nonzero weights stay in the whitelist. Since 2c lies in C0, the only new
// words are the coset c + C0 and its negative.

#include <aqc/classify/extend.hpp>

#include <optional>
#include <set>

namespace aqc {

inline const std::vector<int>& lift_weights12() {
    static const std::vector<int> w{6, 8, 10, 12};
    return w;
}

// Some c with 2c = b and c + C0 inside the whitelist, or nothing.
inline std::optional<Word> find_lift(const Code& c0, Word b, const CosetPredicate& pred) {
    const Space& sp = c0.space();
    if (sp.shape().n1 || sp.shape().n2) throw std::invalid_argument("find_lift: needs a Quad-only shape");
    if (sp.dbl(b)) throw std::invalid_argument("find_lift: b must have order <= 2");
    if (!c0.contains(b)) throw std::invalid_argument("find_lift: b not in the code");
    // Half of b in each digit, then the free choice of adding 2 there.
    Word half = 0;
    for (int p = 0; p < sp.digits(); ++p)
        if (sp.digit(b, p) == 2) half |= Word(1) << (2 * p);
    const auto elems = c0.elements();
    const Word twos = sp.dbl(sp.full());
    for (Word extra = twos;; extra = (extra - 1) & twos) {
        const Word c = sp.add(half, extra);
        bool good = true;
        for (Word x : elems)
            if (!pred.ok(sp.weight(sp.add(c, x)))) {
                good = false;
                break;
            }
        if (good) return c;
        if (extra == 0) break;
    }
    return std::nullopt;
}

inline bool liftable(const Code& c0, Word b, const CosetPredicate& pred) { return find_lift(c0, b, pred).has_value(); }

struct LiftSummary {
    int rows = 0, liftable_rows = 0;       // over the reduced basis of C0
    int codewords = 0, liftable_words = 0; // over the nonzero codewords
};

inline LiftSummary lift_summary(const Code& c0, const CosetPredicate& pred) {
    LiftSummary s;
    for (Word b : c0.basis()) {
        ++s.rows;
        s.liftable_rows += liftable(c0, b, pred);
    }
    c0.for_each([&](Word b) {
        if (!b) return;
        ++s.codewords;
        s.liftable_words += liftable(c0, b, pred);
    });
    return s;
}

// Joint lifting: classes of codes D = C0 + <c_1, ..., c_j> with 2c_i independent modulo
// 2D, so D keeps C0 as its order-2 part and has type Z4^j Z2^(k-j). Entry j lists the classes
// for j lifted rows; the vector stops at the first empty level.
inline std::vector<std::vector<CodeClass>> joint_lifts(const Code& c0, const CosetPredicate& pred, int max_rows,
                                                       int threads = 1) {
    ExtendOptions opt;
    opt.threads = threads;
    opt.accept_for = [](const Code& d) -> std::function<bool(Word)> {
        const Space& sp = d.space();
        Code twice(sp);
        for (Word g : d.generators()) twice.add(sp.dbl(g));
        return [&sp, twice](Word v) {
            const Word b = sp.dbl(v);
            return b && !twice.contains(b);
        };
    };
    std::vector<std::vector<CodeClass>> levels{{CodeClass::of(c0)}};
    while (int(levels.size()) <= max_rows) {
        auto next = extend_level(levels.back(), pred, opt);
        if (next.empty()) break;
        levels.push_back(std::move(next));
    }
    return levels;
}

// Row-by-row lifting of specific rows b_1, ..., b_r of C0: the distinct codes
// C0 + <c_1, ..., c_i> with 2c_j = b_j and all weights in the whitelist, for i = 0..r.
// Stops after the first empty stage.
inline std::vector<std::vector<Code>> lift_rows(const Code& c0, const std::vector<Word>& rows,
                                                const CosetPredicate& pred) {
    const Space& sp = c0.space();
    std::vector<std::vector<Code>> stages{{c0}};
    for (Word b : rows) {
        if (!c0.contains(b) || sp.dbl(b)) throw std::invalid_argument("lift_rows: row must be an order-2 word of C0");
        Word half = 0;
        for (int p = 0; p < sp.digits(); ++p)
            if (sp.digit(b, p) == 2) half |= Word(1) << (2 * p);
        const Word twos = sp.dbl(sp.full());
        std::vector<Code> next;
        std::set<std::vector<Word>> seen;
        for (const Code& d : stages.back()) {
            const auto elems = d.elements();
            for (Word extra = twos;; extra = (extra - 1) & twos) {
                const Word c = sp.add(half, extra);
                bool good = !d.contains(c);
                for (std::size_t i = 0; good && i < elems.size(); ++i) good = pred.ok(sp.weight(sp.add(c, elems[i])));
                if (good) {
                    Code e = d;
                    e.add(c);
                    if (seen.insert(e.basis()).second) next.push_back(std::move(e));
                }
                if (extra == 0) break;
            }
        }
        const bool empty = next.empty();
        stages.push_back(std::move(next));
        if (empty) break;
    }
    return stages;
}

struct Diameter12Report {
    std::vector<std::size_t> all_rows_liftable; // indices of dimension-6 codes
    std::vector<int> min_distance;              // Hamming distance of those codes
    std::vector<std::vector<std::size_t>> first_rows_stages; // per printed matrix
    std::vector<int> liftable_counts;           // per dimension-7 code
    static constexpr int threshold = 31;        // 2^5 - 1

    bool joint_lifting_fails() const {
        for (auto& s : first_rows_stages)
            if (s.empty() || s.back() != 0) return false;
        return true;
    }
    bool counts_below_threshold() const {
        for (int c : liftable_counts)
            if (c >= threshold) return false;
        return true;
    }
};

// codes6 / codes7: additive (6, 2^k, 3)_4 classes for k = 6, 7. printed: generator rows of the
// matrices whose first three rows are lifted jointly. Every reduced basis of a code spans its
// codewords, so "every generator row liftable" is read as "every nonzero codeword liftable".
inline Diameter12Report lift_diameter12(const std::vector<Code>& codes6, const std::vector<Code>& codes7,
                                        const std::vector<std::vector<Word>>& printed, int first_rows = 3) {
    const auto pred = CosetPredicate::weight_set(lift_weights12());
    Diameter12Report rep;
    for (std::size_t i = 0; i < codes6.size(); ++i) {
        const Code c0 = bits_to_2z4(codes6[i]);
        const auto s = lift_summary(c0, pred);
        if (s.liftable_words == s.codewords) {
            rep.all_rows_liftable.push_back(i);
            rep.min_distance.push_back(codes6[i].min_distance(Metric::Hamming));
        }
    }
    const Space& from = Space::get(Shape::gf4(6));
    for (auto& rows : printed) {
        Code c(from);
        for (Word w : rows) c.add(w);
        const Code c0 = bits_to_2z4(c);
        std::vector<Word> lifted;
        for (int i = 0; i < first_rows && i < int(rows.size()); ++i) lifted.push_back(bits_to_2z4(from, c0.space(), rows[i]));
        std::vector<std::size_t> sizes;
        for (auto& stage : lift_rows(c0, lifted, pred)) sizes.push_back(stage.size());
        rep.first_rows_stages.push_back(sizes);
    }
    for (auto& c : codes7) rep.liftable_counts.push_back(lift_summary(bits_to_2z4(c), pred).liftable_words);
    return rep;
}

} // namespace aqc
