#include <aqc/bfs.hpp>
#include <aqc/code.hpp>
#include <aqc/io.hpp>
#include <aqc/macwilliams.hpp>
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracle.hpp"

using namespace aqc;

namespace {

const std::string kData = AQC_DATA_DIR;

Code named(const std::string& file) { return load_code(kData + "/codes/" + file); }

// Closure under addition computed by repeated sums; the independent span oracle.
std::set<Word> closure(const Space& sp, const std::vector<Word>& gens) {
    std::set<Word> s = {0};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Word> cur(s.begin(), s.end());
        for (Word a : cur)
            for (Word g : gens) {
                const Word b = oracle::pack(sp, oracle::add(oracle::unpack(sp, a), oracle::unpack(sp, g)));
                if (s.insert(b).second) grew = true;
            }
    }
    return s;
}

Code random_code(const Space& sp, std::mt19937_64& rng, int gens) {
    Code c(sp);
    for (int i = 0; i < gens; ++i) c.add(rng() & sp.full());
    return c;
}

TEST(Span, TrivialAndSingleGenerator) {
    const Space& sp = Space::get({1, 1, 1});
    Code c(sp);
    EXPECT_EQ(c.elements(), std::vector<Word>{0});
    const Word g = sp.with_symbol(0, 1, 3);
    c.add(g);
    auto e = c.elements();
    std::sort(e.begin(), e.end());
    EXPECT_EQ(e, (std::vector<Word>{0, g}));
}

TEST(Span, MatchesClosureOracle) {
    std::mt19937_64 rng(1);
    for (Shape s : {Shape{1, 0, 1}, Shape{0, 2, 1}, Shape{2, 0, 0}, Shape{1, 1, 1}, Shape{0, 0, 4}}) {
        const Space& sp = Space::get(s);
        for (int t = 0; t < 40; ++t) {
            std::vector<Word> gens;
            for (int i = 0; i < 1 + t % 3; ++i) gens.push_back(rng() & sp.full());
            const Code c = Code::span(sp, gens);
            const auto ref = closure(sp, gens);
            auto e = c.elements();
            ASSERT_EQ(e.size(), ref.size());
            ASSERT_EQ(std::set<Word>(e.begin(), e.end()), ref);
            for (Word x : ref) ASSERT_TRUE(c.contains(x));
        }
    }
}

TEST(Span, B1HasSixtyFourCodewordsOfTypeZ4sqZ2sq) {
    const Code b1 = named("b1.code");
    EXPECT_EQ(b1.size(), 64u);
    EXPECT_EQ(b1.type(), (GroupType{2, 2}));
    EXPECT_EQ(named("b3.code").type(), (GroupType{3, 0}));
    EXPECT_EQ(Code(Space::get({2, 0, 0})).type(), (GroupType{0, 0}));
}

TEST(Presentation, OrdersAndIndependence) {
    std::mt19937_64 rng(2);
    for (Shape s : {Shape{2, 1, 1}, Shape{3, 0, 3}, Shape{0, 4, 0}, Shape{0, 0, 5}}) {
        const Space& sp = Space::get(s);
        for (int t = 0; t < 100; ++t) {
            const Code c = random_code(sp, rng, 1 + t % 4);
            const auto pr = c.presentation();
            const auto ty = c.type();
            ASSERT_EQ(int(pr.gens4.size()), ty.delta);
            ASSERT_EQ(int(pr.gens2.size()), ty.gamma);
            for (Word w : pr.gens4) ASSERT_EQ(sp.order(w), 4);
            for (Word w : pr.gens2) ASSERT_EQ(sp.order(w), 2);
            std::vector<Word> all = pr.gens4;
            all.insert(all.end(), pr.gens2.begin(), pr.gens2.end());
            ASSERT_EQ(Code::span(sp, all), c);
        }
    }
}

TEST(WeightDistribution, B1AndCyclicCode) {
    EXPECT_EQ(format_distribution(named("b1.code").weight_distribution()), "0:1 6:36 8:27");
    const Code cyc = named("cyclic7.code");
    EXPECT_EQ(format_distribution(cyc.weight_distribution(Metric::Hamming)), "0:1 5:21 6:7 7:3");
    EXPECT_EQ(cyc.min_distance(Metric::Hamming), 5);
    EXPECT_EQ(named("b1.code").min_distance(), 6);
    EXPECT_EQ(Code(Space::get(Shape::gf4(3))).min_distance(), kInfinity);
    EXPECT_EQ(format_distribution(Code(Space::get(Shape::gf4(3))).weight_distribution()), "0:1");
}

TEST(Dual, SmallExamples) {
    const Space& g1 = Space::get(Shape::gf4(1));
    const Code c = Code::span(g1, {1});
    const Code d = dual(c, Form::TraceHermitian);
    EXPECT_EQ(d, c);
    EXPECT_TRUE(is_self_dual(c, Form::TraceHermitian));
    const Space& sp = Space::get({1, 1, 1});
    EXPECT_TRUE(dual(Code::ambient(sp), Form::Doob).trivial());
    EXPECT_THROW(dual(Code(sp), Form::TraceHermitian), std::invalid_argument);
    EXPECT_EQ(dual(named("b1.code"), Form::Doob).size(), 4096u);
}

std::set<Word> brute_dual(const Code& c, Form f) {
    const Space& sp = c.space();
    const auto elems = c.elements();
    std::set<Word> out;
    for (Word y = 0; y < sp.size(); ++y) {
        bool ok = true;
        for (Word x : elems) {
            const int v = f == Form::Doob ? oracle::doob_ip(oracle::unpack(sp, x), oracle::unpack(sp, y))
                                          : gf4::trace_hermitian(sp.to_gf4(x), sp.to_gf4(y));
            if (v) {
                ok = false;
                break;
            }
        }
        if (ok) out.insert(y);
    }
    return out;
}

TEST(Dual, MatchesBruteForceOracle) {
    std::mt19937_64 rng(3);
    for (Shape s : {Shape{1, 0, 1}, Shape{0, 2, 1}, Shape{1, 1, 0}, Shape{0, 0, 3}, Shape{0, 3, 0}}) {
        const Space& sp = Space::get(s);
        for (int t = 0; t < 25; ++t) {
            const Code c = random_code(sp, rng, t % 3 + 1);
            for (Form f : {Form::Doob, Form::TraceHermitian}) {
                if (f == Form::TraceHermitian && !s.is_gf4()) continue;
                const auto e = dual(c, f).elements();
                ASSERT_EQ(std::set<Word>(e.begin(), e.end()), brute_dual(c, f));
            }
        }
    }
}

TEST(Dual, InvolutionAndSizeIdentity) {
    std::mt19937_64 rng(4);
    for (Shape s : {Shape{4, 1, 0}, Shape{3, 0, 3}, Shape{0, 9, 0}, Shape{2, 3, 2}, Shape{1, 2, 5}}) {
        const Space& sp = Space::get(s);
        for (int t = 0; t < 30; ++t) {
            const Code c = random_code(sp, rng, 1 + t % 6);
            for (Form f : {Form::Doob, Form::TraceHermitian}) {
                if (f == Form::TraceHermitian && !s.is_gf4()) continue;
                const Code d = dual(c, f);
                ASSERT_EQ(c.log2_size() + d.log2_size(), sp.bits());
                ASSERT_EQ(dual(d, f), c);
            }
        }
    }
}

TEST(Dual, MacWilliamsConsistency) {
    std::mt19937_64 rng(5);
    for (Shape s : {Shape{0, 6, 0}, Shape{0, 4, 0}, Shape{1, 2, 3}, Shape{3, 1, 0}, Shape{2, 0, 3}, Shape{0, 3, 4}}) {
        const Space& sp = Space::get(s);
        for (int t = 0; t < 20; ++t) {
            const Code c = random_code(sp, rng, 1 + t % 5);
            const auto wd = c.weight_distribution();
            ASSERT_EQ(macwilliams(wd, sp.digits(), c.size()), dual(c, Form::Doob).weight_distribution());
            if (s.is_gf4()) {
                ASSERT_EQ(macwilliams(wd, sp.digits(), c.size()), dual(c, Form::TraceHermitian).weight_distribution());
            }
        }
    }
}

TEST(Structure, PunctureShortenAppend) {
    const Space& g5 = Space::get(Shape::gf4(5));
    EXPECT_EQ(puncture(Code(g5), 2).shape(), Shape::gf4(4));
    const Code full1 = Code::ambient(Space::get(Shape::gf4(1)));
    const Code sh = shorten(full1, 0);
    EXPECT_EQ(sh.shape(), Shape::gf4(0));
    EXPECT_TRUE(sh.trivial());
    EXPECT_EQ(append_zero_coordinate(Code(g5), Kind::Bi).shape(), Shape::gf4(6));
    const Code b3 = named("b3.code");
    const Code b3x = append_zero_coordinate(b3, Kind::Quad);
    EXPECT_EQ(b3x.shape(), (Shape{5, 1, 0}));
    EXPECT_EQ(b3x.size(), 64u);
    auto wd = b3.weight_distribution();
    wd.push_back(0);
    wd.push_back(0);
    EXPECT_EQ(b3x.weight_distribution(), wd);
    EXPECT_THROW(puncture(b3, 7), std::out_of_range);
}

TEST(Structure, ShortenMatchesFilteredEnumeration) {
    std::mt19937_64 rng(6);
    for (Shape s : {Shape{2, 1, 1}, Shape{0, 5, 0}, Shape{1, 0, 3}}) {
        const Space& sp = Space::get(s);
        for (int t = 0; t < 30; ++t) {
            const Code c = random_code(sp, rng, 1 + t % 5);
            for (int i = 0; i < sp.length(); ++i) {
                const Code sh = shorten(c, i);
                std::set<Word> expect;
                const Space& to = sh.space();
                const auto dm = drop_map(sp.length(), i);
                c.for_each([&](Word x) {
                    if (sp.symbol(x, i) == 0) expect.insert(transport(sp, x, to, dm));
                });
                auto e = sh.elements();
                ASSERT_EQ(std::set<Word>(e.begin(), e.end()), expect);
                ASSERT_TRUE(sh.size() == c.size() || 2 * sh.size() == c.size() || 4 * sh.size() == c.size() ||
                            (sp.kind(i) == Kind::Quad && 16 * sh.size() >= c.size()));
                if (sp.kind(i) != Kind::Quad) {
                    ASSERT_LE(c.log2_size() - sh.log2_size(), 2);
                }
            }
        }
    }
}

TEST(Structure, Gf4Predicates) {
    const Space& g2 = Space::get(Shape::gf4(2));
    const Word ones = g2.from_gf4({1, 1});
    EXPECT_FALSE(is_f4_linear(Code::span(g2, {ones})));
    EXPECT_TRUE(is_f4_linear(Code::span(g2, {ones, gf4_scale(g2, gf4::kOmega, ones)})));
    EXPECT_TRUE(is_cyclic(Code::span(g2, {ones})));
    EXPECT_FALSE(is_cyclic(Code::span(g2, {g2.from_gf4({1, 0})})));
    EXPECT_TRUE(is_cyclic(named("cyclic7.code")));
    EXPECT_THROW(is_cyclic(Code(Space::get({1, 1, 0}))), std::invalid_argument);
    EXPECT_TRUE(is_self_orthogonal(Code(g2), Form::TraceHermitian));
    EXPECT_FALSE(is_self_dual(Code(g2), Form::TraceHermitian));
}

TEST(Structure, EvenSubcode) {
    const Space& g1 = Space::get(Shape::gf4(1));
    EXPECT_TRUE(even_subcode(Code::span(g1, {1})).trivial());
    const Space& g3 = Space::get(Shape::gf4(3));
    const Code even = Code::span(g3, {g3.from_gf4({1, 1, 0}), g3.from_gf4({0, 1, 1})});
    EXPECT_EQ(even_subcode(even), even);
    // span{(1,1),(w,0)}: even words are 0, (1,1), (w^2,1), which is not a subgroup
    const Space& g2 = Space::get(Shape::gf4(2));
    EXPECT_THROW(even_subcode(Code::span(g2, {g2.from_gf4({1, 1}), g2.from_gf4({2, 0})})), std::domain_error);
}

// Every even code is trace-Hermitian self-orthogonal.
TEST(Structure, EvenCodesAreSelfOrthogonal) {
    std::mt19937_64 rng(7);
    const Space& sp = Space::get(Shape::gf4(8));
    int checked = 0;
    for (int t = 0; t < 10000; ++t) {
        // random even code: span of random words kept only while the span stays even
        Code c(sp);
        for (int i = 0; i < 6; ++i) {
            Word x = rng() & sp.full();
            if (sp.weight(x) % 2) x = sp.with_symbol(x, 7, sp.symbol(x, 7) ? 0 : 1);
            Code d = c;
            d.add(x);
            bool even = true;
            d.for_each([&](Word y) { even &= sp.weight(y) % 2 == 0; });
            if (even) c = d;
        }
        bool even = true;
        c.for_each([&](Word y) { even &= sp.weight(y) % 2 == 0; });
        ASSERT_TRUE(even);
        ASSERT_TRUE(is_self_orthogonal(c, Form::TraceHermitian));
        ++checked;
    }
    EXPECT_EQ(checked, 10000);
}

TEST(Structure, ConcatenationAndLift) {
    const Space& g6 = Space::get(Shape::gf4(6));
    const Word x = g6.from_gf4({1, 2, 0, 0, 0, 0});
    const auto bin = concatenate_to_binary(Code::span(g6, {x}));
    ASSERT_EQ(bin.size(), 1u);
    EXPECT_EQ(bin[0], 0b101110u);
    EXPECT_EQ(std::popcount(bin[0]), 4);
    EXPECT_TRUE(concatenate_to_binary(Code(g6)).empty());
    const Code hex = named("hexacode.code");
    const Code lifted = bits_to_2z4(hex);
    EXPECT_EQ(lifted.shape(), (Shape{6, 0, 0}));
    EXPECT_EQ(lifted.type(), (GroupType{0, 6}));
    EXPECT_GE(lifted.min_distance(), 8);
    EXPECT_EQ(lifted.min_distance(), 2 * hex.min_distance(Metric::Hamming));
    EXPECT_TRUE(bits_to_2z4(Code(g6)).trivial());
}

TEST(CoveringRadius, SmallCases) {
    EXPECT_EQ(covering_radius(Code(Space::get(Shape::gf4(3)))), 3);
    EXPECT_EQ(covering_radius(Code::ambient(Space::get({1, 1, 1}))), 0);
}

TEST(IntersectionArray, SingletonInK4) {
    const auto r = intersection_array(Code(Space::get(Shape::gf4(1))));
    ASSERT_TRUE(r.regular);
    EXPECT_EQ(r.array.str(), "{3;1}");
}

TEST(IntersectionArray, DualOfB1) {
    const Code d = dual(named("b1.code"), Form::Doob);
    EXPECT_EQ(covering_radius(d), 2);
    const auto r = intersection_array(d);
    ASSERT_TRUE(r.regular);
    EXPECT_EQ(r.array.str(), "{27,16;1,12}");
}

TEST(IntersectionArray, RejectsGenericCode) {
    const Space& sp = Space::get(Shape::gf4(4));
    const auto r = intersection_array(Code::span(sp, {sp.from_gf4({1, 0, 0, 0}), sp.from_gf4({0, 1, 1, 0})}));
    EXPECT_FALSE(r.regular);
    EXPECT_FALSE(r.reason.empty());
}

} // namespace
