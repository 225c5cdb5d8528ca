#include <gtest/gtest.h>

#include "tight/traversal.hpp"

using namespace tight;

namespace {
SeifertDescriptor M(Int e0, Int b, Int a) { return {e0, Rational(b, a)}; }
RInvariants eta(std::vector<Int> v) { return {std::move(v), {2, 0}}; }
}  // namespace

TEST(Traversal, InfiniteGraphShape) {
    auto g = InfiniteSlopeGraph::get(3);
    EXPECT_EQ(g->minimal.size(), 2u);
    for (int c : g->minimal) EXPECT_TRUE(g->down[c].empty());
    for (std::size_t c = 0; c < g->configs.size(); ++c) {
        if (g->configs[c].bottom > 2) {
            EXPECT_FALSE(g->down[c].empty()) << c;
        }
        for (int t : g->down[c]) EXPECT_EQ(g->configs[t].bottom + 2, g->configs[c].bottom);
    }
}

TEST(Traversal, MinimalStateOnlyMovesUp) {
    auto sd = M(3, 2, 5);
    TraversalOptions opt;
    auto s = initial_state(sd, 2, eta({0, 0}), opt);
    for (const auto& t : transitions(s, sd, opt)) {
        if (auto* inf = std::get_if<InfiniteSlope>(&t.where)) {
            EXPECT_EQ(inf->gamma.bottom, 4);
        } else {
            EXPECT_EQ(std::get<FiniteSlope>(t.where), (FiniteSlope{1, 1}));
        }
    }
}

TEST(Traversal, UnitBoundGivesIntegerWalls) {
    auto sd = M(2, 2, 5);
    TraversalOptions opt{1, 2};
    auto v = traverse(sd, initial_state(sd, 2, eta({0, 0}), opt), opt);
    ASSERT_TRUE(v.tight);
    for (const auto& s : v.visited)
        if (auto* f = std::get_if<FiniteSlope>(&s.where)) {
            EXPECT_EQ(f->q, 1);
        }
}

TEST(Traversal, Verdicts) {
    auto three = M(3, 2, 5);
    EXPECT_TRUE(traverse(three, initial_state(three, 2, eta({0, 0}))).tight);

    auto one = M(1, 2, 5);
    auto bad = traverse(one, initial_state(one, 2, eta({0, 0})));
    ASSERT_FALSE(bad.tight);
    EXPECT_EQ(std::get<FiniteSlope>(bad.witness.back().where), (FiniteSlope{1, 1}));
    EXPECT_FALSE(state_tight(bad.witness.back(), one));
    EXPECT_TRUE(traverse(one, initial_state(one, 2, eta({2, 0}))).tight);
    EXPECT_THROW(initial_state(one, 3, eta({2, 0})), DomainError);
    EXPECT_THROW(initial_state(M(0, 2, 5), 2, eta({2, 0})), DomainError);
}

TEST(Traversal, Isotopy) {
    auto sd = M(2, 2, 5);
    EXPECT_TRUE(isotopic(sd, {2, eta({0, 0})}, {-2, eta({2, 0})}));
    EXPECT_FALSE(isotopic(sd, {2, eta({2, 0})}, {-2, eta({-2, 0})}));
    auto one = M(1, 2, 5);
    EXPECT_THROW(isotopic(one, {2, eta({0, 0})}, {2, eta({2, 0})}), DomainError);
}

TEST(Traversal, EdgesAreInvolutive) {
    for (auto sd : {M(1, 2, 5), M(2, 3, 7), M(3, 1, 3)}) {
        TraversalOptions opt{6, 2};
        for (Int l : {-2, 2})
            for (const auto& e : exceptional_etas(sd)) {
                auto v = traverse(sd, initial_state(sd, l, e, opt), opt);
                if (!v.tight) continue;
                for (const auto& s : v.visited)
                    for (const auto& edge : transition_edges(s, sd, opt)) {
                        ASSERT_EQ(edge.transform.apply(s.euler), edge.target.euler);
                        bool back = false;
                        for (const auto& rev : transition_edges(edge.target, sd, opt))
                            if (rev.target == s) {
                                back = true;
                                EXPECT_EQ(rev.transform.apply(edge.transform.apply({7, -3})), (std::pair<Int, Int>{7, -3}));
                            }
                        ASSERT_TRUE(back);
                        auto* a = std::get_if<FiniteSlope>(&s.where);
                        auto* b = std::get_if<FiniteSlope>(&edge.target.where);
                        if (a && b && edge.transform.sign == 1) {
                            auto lv = layer_vector(sd.e0, *a, *b);
                            Int sg = s.labels.front().l > 0 ? 1 : -1;
                            EXPECT_EQ(edge.transform.shift, (std::pair<Int, Int>{sg * lv.first, sg * lv.second}));
                        }
                    }
            }
    }
}

TEST(Traversal, InfiniteSignatureMatchesLabel) {
    auto g = InfiniteSlopeGraph::get(2);
    for (const auto& m : g->configs) {
        std::set<Int> sigs;
        for (Sign s : {Sign::positive, Sign::negative}) {
            auto c = m;
            c.sign = s;
            sigs.insert(euler_signature(close_annulus(c)));
        }
        EXPECT_EQ(sigs, (std::set<Int>{-2, 2}));
    }
}

TEST(Traversal, ClassesMatchCensus) {
    for (Int e0 = 1; e0 <= 3; ++e0)
        for (auto [b, a] : std::vector<std::pair<Int, Int>>{{1, 2}, {1, 3}, {2, 5}, {3, 7}, {4, 11}}) {
            auto sd = M(e0, b, a);
            TraversalOptions opt{8, 2};
            auto c = traversal_census(sd, opt);
            EXPECT_EQ(c.classes, exceptional_count(sd)) << e0 << " " << sd.r.str();
            auto wide = traversal_census(sd, {16, 2});
            EXPECT_EQ(wide.classes, c.classes);
            EXPECT_EQ(wide.overtwisted_inputs, c.overtwisted_inputs);
        }
}
