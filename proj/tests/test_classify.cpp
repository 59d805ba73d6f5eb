#include <aqc/bfs.hpp>
#include <aqc/classify.hpp>
#include <aqc/io.hpp>
#include <aqc/macwilliams.hpp>
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracle.hpp"

using namespace aqc;

namespace {

const std::string kData = AQC_DATA_DIR;

Code load(const std::string& name) { return load_code(kData + "/codes/" + name); }

std::vector<std::uint64_t> row(const ClassTable& t, int n) {
    std::vector<std::uint64_t> out;
    for (auto& c : t.rows.at(n)) out.push_back(c.count);
    return out;
}

// All subgroups of a small ambient whose nonzero Doob weights lie in `ws`, grown one
// element at a time with unpacked arithmetic, and their classes under the brute-force
// monomial group. Returns class counts by log2 size.
std::map<int, std::size_t> brute_force_classes(Shape shape, const std::vector<int>& ws) {
    const Space& sp = Space::get(shape);
    const std::set<int> allowed(ws.begin(), ws.end());
    auto add = [&](Word x, Word y) { return oracle::pack(sp, oracle::add(oracle::unpack(sp, x), oracle::unpack(sp, y))); };
    auto good = [&](Word x) { return x == 0 || allowed.count(oracle::doob_weight(oracle::unpack(sp, x))); };

    std::set<std::vector<Word>> all, frontier{{0}};
    while (!frontier.empty()) {
        all.insert(frontier.begin(), frontier.end());
        std::set<std::vector<Word>> next;
        for (auto& s : frontier) {
            const std::set<Word> in(s.begin(), s.end());
            for (Word x = 0; x < sp.size(); ++x) {
                if (in.count(x)) continue;
                std::set<Word> grown(in);
                for (Word m = x; m != 0; m = add(m, x))
                    for (Word y : s) grown.insert(add(y, m));
                std::vector<Word> g(grown.begin(), grown.end());
                if (std::all_of(g.begin(), g.end(), good) && !all.count(g)) next.insert(g);
            }
        }
        frontier = std::move(next);
    }

    // Every monomial map: coordinate permutations within kinds times per-coordinate symbol maps.
    const int n = shape.length();
    std::vector<std::vector<std::vector<int>>> groups;
    for (int i = 0; i < n; ++i) groups.push_back(oracle::cell_group(shape.kind(i)));
    std::vector<std::function<Word(Word)>> maps;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool respects = true;
        for (int i = 0; i < n; ++i) respects &= shape.kind(i) == shape.kind(perm[i]);
        if (!respects) continue;
        std::vector<std::size_t> choice(n, 0);
        while (true) {
            maps.push_back([&sp, &groups, perm, choice, n](Word x) {
                Word y = 0;
                for (int i = 0; i < n; ++i) y = sp.with_symbol(y, perm[i], unsigned(groups[i][choice[i]][sp.symbol(x, i)]));
                return y;
            });
            int i = 0;
            while (i < n && ++choice[i] == groups[i].size()) choice[i++] = 0;
            if (i == n) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::map<int, std::set<std::vector<Word>>> reps;
    for (auto& s : all) {
        std::vector<Word> best;
        for (auto& f : maps) {
            std::vector<Word> img;
            for (Word x : s) img.push_back(f(x));
            std::sort(img.begin(), img.end());
            if (best.empty() || img < best) best = img;
        }
        reps[std::countr_zero(s.size())].insert(best);
    }
    std::map<int, std::size_t> out;
    for (auto& [k, r] : reps) out[k] = r.size();
    return out;
}

std::map<int, std::size_t> engine_classes(Shape shape, const std::vector<int>& ws) {
    TwoWeightConfig cfg;
    cfg.weights = ws;
    cfg.max_log2_size = 0;
    std::map<int, std::size_t> out;
    for (auto& lvl : classify_doob_two_weight(shape, cfg)) out[lvl.log2_size] = lvl.classes.size();
    return out;
}

} // namespace

TEST(ClassifyHamming, DistanceThreeRowsUpToFive) {
    HammingConfig cfg;
    cfg.d = 3;
    cfg.n_max = 5;
    const auto res = classify_hamming(cfg);
    EXPECT_EQ(row(res.table, 3), (std::vector<std::uint64_t>{1, 1, 1, 0}));
    EXPECT_EQ(row(res.table, 4), (std::vector<std::uint64_t>{1, 2, 5, 3, 1, 0}));
    EXPECT_EQ(row(res.table, 5), (std::vector<std::uint64_t>{1, 3, 14, 32, 40, 9, 1, 0}));
}

TEST(ClassifyHamming, DistanceFiveRowsAndTheCyclicCode) {
    HammingConfig cfg;
    cfg.d = 5;
    cfg.n_max = 7;
    const auto res = classify_hamming(cfg);
    EXPECT_EQ(row(res.table, 5), (std::vector<std::uint64_t>{1, 1, 1, 0}));
    EXPECT_EQ(row(res.table, 6), (std::vector<std::uint64_t>{1, 2, 5, 1, 0}));
    EXPECT_EQ(row(res.table, 7), (std::vector<std::uint64_t>{1, 3, 15, 32, 43, 1, 0}));
    const auto& top = res.classes.at({7, 5});
    ASSERT_EQ(top.size(), 1u);
    EXPECT_TRUE(equivalent(top[0].code, load("cyclic7.code")));
    EXPECT_EQ(format_distribution(top[0].code.weight_distribution(Metric::Hamming)), "0:1 5:21 6:7 7:3");
}

TEST(ClassifyHamming, ClassesAreCanonicalDistinctAndKeepTheDistance) {
    HammingConfig cfg;
    cfg.d = 3;
    cfg.n_max = 5;
    const auto res = classify_hamming(cfg);
    for (auto& [nk, list] : res.classes) {
        std::set<std::string> keys;
        for (auto& cls : list) {
            EXPECT_GE(cls.code.min_distance(Metric::Hamming), 3);
            EXPECT_EQ(cls.code.log2_size(), nk.second);
            EXPECT_TRUE(canonical_form(cls.code).representative() == cls.code);
            EXPECT_TRUE(keys.insert(cls.key).second);
            for (auto& g : cls.automorphisms) EXPECT_TRUE(g.apply(cls.code) == cls.code);
        }
    }
}

TEST(ClassifyHamming, DeterministicAcrossThreadsAndSeedOrder) {
    HammingConfig cfg;
    cfg.d = 3;
    cfg.n_max = 5;
    const auto a = classify_hamming(cfg);
    cfg.threads = 3;
    const auto b = classify_hamming(cfg);
    cfg.threads = 1;
    cfg.reverse_seeds = true;
    const auto c = classify_hamming(cfg);
    EXPECT_EQ(a.table.text(), b.table.text());
    EXPECT_EQ(a.table.text(), c.table.text());
    for (auto& [nk, list] : a.classes) {
        ASSERT_EQ(list.size(), b.classes.at(nk).size());
        ASSERT_EQ(list.size(), c.classes.at(nk).size());
        for (std::size_t i = 0; i < list.size(); ++i) {
            EXPECT_EQ(list[i].key, b.classes.at(nk)[i].key);
            EXPECT_EQ(list[i].key, c.classes.at(nk)[i].key);
        }
    }
}

TEST(ClassifyHamming, TargetCutMarksLowerBounds) {
    HammingConfig cfg;
    cfg.d = 3;
    cfg.n_max = 5;
    cfg.target = std::make_pair(5, 6);
    const auto res = classify_hamming(cfg);
    // Exact cells reachable toward (5, 6) agree with the unpruned run.
    EXPECT_EQ(res.table.cell(5, 6)->count, 1u);
    EXPECT_FALSE(res.table.cell(5, 6)->lower_bound);
    EXPECT_TRUE(res.table.cell(5, 1)->lower_bound);
    EXPECT_NE(res.table.text().find(">="), std::string::npos);
}

TEST(ClassTable, Rendering) {
    ClassTable t;
    EXPECT_EQ(t.text(), "n\\k\n");
    t.rows[4] = {{1, false, true}, {7, true, true}, {0, true, true}};
    EXPECT_EQ(t.text(), "n\\k  0    1  2\n  4  1  >=7  -\n");
    EXPECT_EQ(t.text(true), "n,k0,k1,k2\n4,1,>=7,-\n");
}

TEST(ClassifyDoob, MatchesBruteForceOnTinyAmbients) {
    struct Case {
        Shape shape;
        std::vector<int> ws;
    };
    for (const Case& c : {Case{{0, 3, 0}, {2, 3}}, Case{{1, 0, 2}, {2, 4}}, Case{{1, 1, 1}, {2, 4}}, Case{{1, 0, 1}, {2, 3}}}) {
        SCOPED_TRACE(c.shape.str());
        EXPECT_EQ(engine_classes(c.shape, c.ws), brute_force_classes(c.shape, c.ws));
    }
}

TEST(ClassifyDoob, DiameterNineSmallBuckets) {
    TwoWeightConfig cfg;
    cfg.max_log2_size = 4;
    const auto lv = classify_doob_two_weight({4, 1, 0}, cfg);
    EXPECT_EQ(lv.back().by_type().at({2, 0}).size(), 44u);
    const auto lv3 = classify_doob_two_weight({3, 0, 3}, cfg);
    EXPECT_EQ(lv3.back().by_type().at({1, 2}).size(), 14u);
}

TEST(ClassifyDoob, ShortenedLengthenedCodesKeepWeights) {
    std::vector<Code> b;
    for (int i = 1; i <= 6; ++i) b.push_back(load("b" + std::to_string(i) + ".code"));
    for (const char* f : {"lengthened_32.codes", "lengthened_42.codes"})
        for (auto& rec : load_codes(kData + "/codes/" + f)) {
            const Code c = rec.code();
            ASSERT_EQ(c.shape(), (Shape{5, 1, 0}));
            EXPECT_TRUE(CosetPredicate::weight_set({6, 8, 10}).holds(c));
            for (int i = 0; i < 5; ++i) {
                const Code s = shorten(c, i);
                EXPECT_TRUE(CosetPredicate::weight_set({6, 8}).holds(s)) << rec.name << " coordinate " << i;
                EXPECT_GE(s.log2_size(), c.log2_size() - 4);
                if (s.log2_size() == 6) {
                    bool listed = false;
                    for (auto& x : b) listed = listed || equivalent(s, x);
                    EXPECT_TRUE(listed) << rec.name;
                }
            }
        }
}

TEST(ClassifyDoob, DiameterElevenCandidates) {
    const std::set<Shape> with64{{4, 1, 0}, {3, 0, 3}, {0, 9, 0}};
    EXPECT_EQ(diameter11_candidates(with64), (std::vector<Shape>{{5, 1, 0}}));
    EXPECT_TRUE(diameter11_candidates({{3, 0, 3}}).empty());
}

TEST(Lift, FindLiftHalvesTheWord) {
    const Code c0 = bits_to_2z4(load("hexacode.code"));
    const Space& sp = c0.space();
    const auto pred = CosetPredicate::weight_set(lift_weights12());
    int lifted = 0;
    c0.for_each([&](Word b) {
        if (!b) return;
        if (auto c = find_lift(c0, b, pred)) {
            ++lifted;
            EXPECT_EQ(sp.dbl(*c), b);
            Code d = c0;
            d.add(*c);
            EXPECT_TRUE(pred.holds(d));
        }
    });
    EXPECT_EQ(lifted, 63);
    EXPECT_THROW(find_lift(c0, sp.full() & ~sp.dbl(sp.full()), pred), std::invalid_argument);
    EXPECT_THROW(find_lift(load("b1.code"), 0, pred), std::invalid_argument);
}

TEST(Lift, PrintedLiftsRealizeTheStatedType) {
    const auto pred = CosetPredicate::weight_set(lift_weights12());
    int two = 0, one = 0;
    for (auto& rec : load_codes(kData + "/corpus/appendix_b/dim7.codes")) {
        const Code c = rec.code(), c0 = bits_to_2z4(c);
        const Space& sp = c0.space();
        const int rows = std::stoi(*rec.get("lift-rows"));
        Code d = c0;
        // Marks are 0-based Z4 item positions to raise by 2 in the halved row.
        for (auto& mk : rec.get_all("lift-marks")) {
            const auto t = detail::split_ws(mk);
            const Word b = bits_to_2z4(c.space(), sp, rec.rows2[std::stoi(t[0])]);
            Word half = 0;
            for (int p = 0; p < sp.digits(); ++p)
                if (sp.digit(b, p) == 2) half |= Word(1) << (2 * p);
            if (t[1] != "-") {
                std::stringstream items(t[1]);
                for (std::string it; std::getline(items, it, ',');) half = sp.add(half, Word(2) << (2 * std::stoi(it)));
            }
            d.add(half);
        }
        EXPECT_TRUE(pred.holds(d)) << rec.name;
        EXPECT_EQ(d.type().delta, rows) << rec.name;
        const int count = lift_summary(c0, pred).liftable_words;
        EXPECT_EQ(count, rows == 2 ? 7 : 1) << rec.name;
        (rows == 2 ? two : one)++;
    }
    EXPECT_EQ(two, 4);
    EXPECT_EQ(one, 10);
}

TEST(Lift, JointLiftingOfPrintedRowsDiesAtThree) {
    const auto rep = lift_diameter12({load("hexacode.code"), load("liftable6-a.code")}, {},
                                     {parse_code(read_file(kData + "/codes/hexacode.code")).rows2,
                                      parse_code(read_file(kData + "/codes/liftable6-a.code")).rows2});
    EXPECT_EQ(rep.all_rows_liftable, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(rep.min_distance, (std::vector<int>{4, 3}));
    EXPECT_EQ(rep.first_rows_stages[0], (std::vector<std::size_t>{1, 32, 288, 0}));
    EXPECT_EQ(rep.first_rows_stages[1], (std::vector<std::size_t>{1, 20, 128, 0}));
    EXPECT_TRUE(rep.joint_lifting_fails());
}

TEST(Lift, LiftRowsRejectsForeignRows) {
    const Code c0 = bits_to_2z4(load("hexacode.code"));
    const auto pred = CosetPredicate::weight_set(lift_weights12());
    EXPECT_THROW(lift_rows(c0, {Word(1)}, pred), std::invalid_argument);
}

TEST(Dodecacode, SearchAndPuncturing) {
    const auto res = search_dodecacode();
    ASSERT_TRUE(res.code.has_value());
    const Code& c = *res.code;
    EXPECT_EQ(c.log2_size(), 12);
    EXPECT_TRUE(is_cyclic(c));
    EXPECT_TRUE(is_self_dual(c, Form::TraceHermitian));
    EXPECT_EQ(c.min_distance(Metric::Hamming), 6);
    const Code p = puncture(c, 0);
    EXPECT_EQ(p.log2_size(), 12);
    EXPECT_EQ(p.min_distance(Metric::Hamming), 5);
    EXPECT_FALSE(is_f4_linear(p));
    const Code pd = dual(p, Form::TraceHermitian);
    EXPECT_EQ(pd.weight_distribution(Metric::Hamming), (WeightDistribution{1, 0, 0, 0, 0, 0, 198, 0, 495, 0, 330, 0}));
    // MacWilliams back to the punctured code.
    EXPECT_EQ(macwilliams(pd.weight_distribution(Metric::Hamming), 11, pd.size()), p.weight_distribution(Metric::Hamming));
}

TEST(Dodecacode, UniqueCompletion) {
    const Code p = puncture(*search_dodecacode().code, 0);
    const Code dcode = dual(p, Form::TraceHermitian);
    Word x = 0;
    p.for_each([&](Word y) {
        if (!x && p.space().weight(y, Metric::Hamming) == 5) x = y;
    });
    ASSERT_NE(x, 0u);
    const Code nc = verify_unique_completion(dcode, x);
    EXPECT_EQ(nc.log2_size(), 11);
    EXPECT_EQ(nc.min_distance(Metric::Hamming), 5);
    EXPECT_TRUE(is_self_dual(nc, Form::TraceHermitian));

    const Code zero(dcode.space());
    EXPECT_THROW(verify_unique_completion(zero, x), std::domain_error);
    EXPECT_THROW(verify_unique_completion(dcode, 0), std::invalid_argument);
    EXPECT_THROW(verify_unique_completion(p, x), std::invalid_argument);
}

TEST(CompleteRegularity, CoveringRadiusTwoIffDualHasTwoWeights) {
    std::mt19937_64 rng(7);
    int positive = 0, negative = 0;
    auto check = [&](const Code& c) {
        if (c.min_distance() < 3) return;
        const auto cr = intersection_array(c);
        int weights = 0;
        const auto wd = dual(c, Form::Doob).weight_distribution();
        for (std::size_t i = 1; i < wd.size(); ++i) weights += wd[i] != 0;
        const bool cr2 = cr.regular && cr.array.rho() == 2;
        EXPECT_EQ(cr2, weights == 2) << render_code(c);
        (cr2 ? positive : negative)++;
    };
    for (const char* f : {"b1", "b4", "c2", "c6", "d1", "d8"}) {
        const Code c = load(std::string(f) + ".code");
        check(dual(c, Form::Doob));
        // Subcodes keep at most two weights.
        const auto elems = c.elements();
        for (int t = 0; t < 6; ++t) {
            Code sub(c.space());
            for (int i = 0; i < 4; ++i) sub.add(elems[rng() % elems.size()]);
            check(dual(sub, Form::Doob));
        }
    }
    for (Shape s : {Shape{1, 2, 1}, Shape{0, 5, 0}, Shape{2, 1, 0}, Shape{0, 0, 6}, Shape{1, 0, 4}})
        for (int t = 0; t < 60; ++t) {
            const Space& sp = Space::get(s);
            Code c(sp);
            const int gens = 1 + int(rng() % 4);
            for (int i = 0; i < gens; ++i) c.add(oracle::random_word(sp, rng));
            check(dual(c, Form::Doob));
        }
    EXPECT_GT(positive, 12);
    EXPECT_GT(negative, 20);
}
