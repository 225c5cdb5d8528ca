#include <gtest/gtest.h>

#include <random>

#include "multicurve_oracle.hpp"
#include "tight/dividing_sets.hpp"

using namespace tight;

namespace {
Endpoint B(Int i) { return {Side::bottom, i}; }
Endpoint T(Int i) { return {Side::top, i}; }

AnnulusMulticurve annulus(Int b, Int t, std::vector<Arc> arcs, std::optional<Sign> s = std::nullopt) {
    AnnulusMulticurve m{b, t, std::move(arcs), 0, 0, s};
    return sorted(m);
}

// The stored sign belongs to the annular region, so the disc is positive.
AnnulusMulticurve short_short() { return annulus(2, 2, {{B(0), B(1), 0}, {T(0), T(1), 0}}, Sign::negative); }
}  // namespace

TEST(DividingSets, TorusSetTightness) {
    EXPECT_TRUE(is_tight(TorusDividingSet{Slope{1, 0}, 1, 0}));
    EXPECT_FALSE(is_tight(TorusDividingSet{Slope{1, 0}, 1, 1}));
}

TEST(DividingSets, Validation) {
    EXPECT_NO_THROW(validate(short_short()));
    // Crossing through arcs.
    EXPECT_THROW(validate(annulus(2, 2, {{B(0), T(1), 0}, {B(1), T(0), 0}})), DomainError);
    EXPECT_NO_THROW(validate(annulus(2, 2, {{B(0), T(1), 0}, {B(1), T(0), 1}})));
    // Through arc starting under a boundary-parallel arc.
    EXPECT_THROW(validate(annulus(3, 1, {{B(0), B(2), 0}, {B(1), T(0), 0}})), DomainError);
    EXPECT_NO_THROW(validate(annulus(3, 1, {{B(0), B(2), -1}, {B(1), T(0), 0}})));
    // Crossing boundary-parallel arcs.
    EXPECT_THROW(validate(annulus(4, 0, {{B(0), B(2), 0}, {B(1), B(3), 0}})), DomainError);
    EXPECT_THROW(validate(annulus(2, 2, {{B(0), B(0), 0}, {T(0), T(1), 0}})), DomainError);
    EXPECT_THROW(validate(annulus(2, 2, {{B(0), B(1), 0}})), DomainError);
    AnnulusMulticurve cores = annulus(1, 1, {{B(0), T(0), 0}});
    cores.cores = 1;
    EXPECT_THROW(validate(cores), DomainError);
}

TEST(DividingSets, CloseAnnulusExamples) {
    auto vertical = close_annulus(annulus(2, 2, {{B(0), T(0), 0}, {B(1), T(1), 0}}));
    ASSERT_TRUE(vertical.dividing_set());
    EXPECT_EQ(*vertical.dividing_set(), (TorusDividingSet{Slope::infinity(), 1, 0}));

    auto disc = close_annulus(short_short());
    EXPECT_EQ(disc.essential, 0);
    EXPECT_EQ(disc.contractible, 1);
    EXPECT_FALSE(is_tight(disc));

    auto around = close_annulus(annulus(2, 2, {{B(0), B(1), 0}, {T(0), T(1), -1}}));
    EXPECT_EQ(around.essential, 1);
    EXPECT_EQ(around.contractible, 0);
    EXPECT_EQ(*around.slope, (Slope{1, 0}));

    EXPECT_THROW(close_annulus(annulus(2, 0, {{B(0), B(1), 0}})), DomainError);
}

TEST(DividingSets, EulerSignatureExamples) {
    auto disc = close_annulus(short_short());
    EXPECT_EQ(euler_signature(disc), 2);
    EXPECT_EQ(euler_signature(close_annulus(swap_signs(short_short()))), -2);
    EXPECT_EQ(euler_signature(TorusMulticurve::standard(std::nullopt, 0, 1, Sign::positive)), -2);
    EXPECT_EQ(euler_signature(TorusMulticurve::standard(std::nullopt, 0, 1, Sign::negative)), 2);
    EXPECT_EQ(euler_signature(TorusMulticurve::standard(Slope{1, 0}, 2, 0, Sign::positive)), 0);
    auto vertical = annulus(2, 2, {{B(0), T(0), 0}, {B(1), T(1), 0}}, Sign::positive);
    EXPECT_EQ(euler_signature(close_annulus(vertical)), 0);
    // One through arc cannot be signed.
    auto odd = annulus(1, 1, {{B(0), T(0), 0}}, Sign::positive);
    EXPECT_THROW(euler_signature(odd), DomainError);
    EXPECT_THROW(euler_signature(close_annulus(odd)), DomainError);
}

TEST(DividingSets, Hat) {
    AnnulusMulticurve m = annulus(0, 0, {});
    m.cores = 2;
    EXPECT_EQ(hat(m).cores, 0);
    m.cores = 3;
    EXPECT_EQ(hat(m).cores, 1);
    auto arcs = short_short();
    EXPECT_EQ(hat(arcs), arcs);
    PuncturedTorusMulticurve p{2, {{0, 1, 1, 0}}, {{Slope{1, 0}, 4}}, 0, std::nullopt};
    EXPECT_EQ(hat(p).closed[0].second, 0);
    for (Int k = 0; k < 6; ++k) {
        m.cores = k;
        EXPECT_EQ(hat(hat(m)), hat(m));
        p.closed[0].second = k;
        EXPECT_EQ(hat(hat(p)), hat(p));
    }
}

TEST(DividingSets, PuncturedTorus) {
    PuncturedTorusMulticurve bp{2, {{0, 1, 0, 0}}, {}, 1, std::nullopt};
    EXPECT_FALSE(is_tight(bp));
    auto c = complete_punctured_torus(PuncturedTorusMulticurve{2, {{0, 1, 0, 0}}, {}, 0, std::nullopt});
    EXPECT_EQ(c.contractible, 1);
    EXPECT_EQ(c.essential, 0);

    auto one = complete_punctured_torus(PuncturedTorusMulticurve{2, {{0, 1, 2, 3}}, {}, 0, std::nullopt});
    EXPECT_EQ(one.essential, 1);
    EXPECT_EQ(*one.slope, (Slope{2, 3}));

    auto three = complete_punctured_torus(PuncturedTorusMulticurve{2, {{0, 1, 1, 0}}, {{Slope{1, 0}, 2}}, 0, std::nullopt});
    EXPECT_EQ(three.essential, 3);
    EXPECT_EQ(*three.slope, (Slope{1, 0}));

    EXPECT_THROW(complete_punctured_torus(PuncturedTorusMulticurve{4, {{0, 1, 1, 0}, {2, 3, 1, 0}}, {}, 0, std::nullopt}),
                 DomainError);
    EXPECT_THROW(validate(PuncturedTorusMulticurve{2, {{0, 1, 1, 0}}, {{Slope{1, 1}, 1}}, 0, std::nullopt}),
                 DomainError);
}

TEST(DividingSets, IntersectionConsistency) {
    for (Int a = -4; a <= 4; ++a)
        for (Int b = -4; b <= 4; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (Int k = 1; k <= 5; k += 2) {
                PuncturedTorusMulticurve p{2, {{0, 1, a, b}}, {{reduce_slope(a, b), k}}, 0, std::nullopt};
                auto g = complete_punctured_torus(p).dividing_set();
                ASSERT_TRUE(g);
                for (Int x = 0; x <= 10; ++x)
                    for (Int y = -20; y <= 20; ++y) {
                        if (std::gcd(x, y) != 1) continue;
                        Slope gamma = reduce_slope(x, y);
                        Int count = std::llabs(det(gamma.x, gamma.y, a, b)) * (1 + k);
                        ASSERT_EQ(intersection_number(gamma, *g), count);
                    }
            }
        }
}

TEST(DividingSets, Pants) {
    // bottom -> hole -> top joins into one through arc.
    PantsMulticurve p{1, 1, 2, {{B(0), {Side::hole, 0}, 0}, {{Side::hole, 1}, T(0), 0}}, 0, 0, 0, 0, std::nullopt};
    auto a = fill_hole(p);
    ASSERT_EQ(a.arcs.size(), 1u);
    EXPECT_EQ(a.arcs[0], (Arc{B(0), T(0), 0}));
    PantsMulticurve loop{0, 0, 2, {{{Side::hole, 0}, {Side::hole, 1}, 0}}, 0, 0, 0, 0, std::nullopt};
    EXPECT_EQ(fill_hole(loop).contractible, 1);
    loop.arcs[0].winding = 1;
    EXPECT_EQ(fill_hole(loop).cores, 1);
    EXPECT_THROW(fill_hole(PantsMulticurve{2, 0, 0, {{B(0), B(1), 0}}, 0, 0, 0, 0, std::nullopt}), DomainError);
    PantsMulticurve hp{0, 0, 0, {}, 0, 0, 3, 0, std::nullopt};
    EXPECT_EQ(hat(hp).hole_parallel, 1);
}

TEST(DividingSets, EnumerationCounts) {
    EXPECT_EQ(enumerate_annulus_multicurves(0, 0).size(), 1u);
    EXPECT_EQ(enumerate_annulus_multicurves(1, 1).size(), 1u);
    EXPECT_EQ(enumerate_annulus_multicurves(2, 2).size(), 6u);
    EXPECT_EQ(enumerate_annulus_multicurves(2, 0).size(), 2u);
    EXPECT_EQ(enumerate_annulus_multicurves(1, 2).size(), 0u);
    for (Int b = 0; b <= 5; ++b)
        for (Int t = 0; t <= 5; ++t) {
            auto all = enumerate_annulus_multicurves(b, t);
            std::set<AnnulusMulticurve> unique(all.begin(), all.end());
            ASSERT_EQ(unique.size(), all.size());
            for (const auto& m : all) {
                ASSERT_NO_THROW(validate(m));
                ASSERT_EQ(normalize_twist(m), m);
            }
        }
}

TEST(DividingSets, ClosureMatchesPermutationCycles) {
    std::mt19937 rng(11);
    for (Int n = 0; n <= 6; ++n)
        for (auto m : enumerate_annulus_multicurves(n, n)) {
            std::uniform_int_distribution<Int> twist(-3, 3), extra(0, 2);
            Int k = twist(rng);
            for (auto& a : m.arcs)
                if (is_through(a)) a.winding += a.a.side == Side::bottom ? k : -k;
            if (m.arcs.empty() || !std::any_of(m.arcs.begin(), m.arcs.end(), is_through)) m.cores = extra(rng);
            m.contractible = extra(rng);
            auto c = close_annulus(m);
            ASSERT_EQ(c.essential + c.contractible, oracle::closure_components(m));
        }
}

TEST(DividingSets, RegionEulerCharacteristics) {
    for (Int n = 0; n <= 5; ++n)
        for (auto m : enumerate_annulus_multicurves(n, n)) {
            m.sign = Sign::positive;
            auto r = annulus_regions(m);
            Int chi = 0;
            for (const auto& reg : r.regions) chi += reg.chi;
            ASSERT_EQ(chi, static_cast<Int>(m.arcs.size()));
            auto c = close_annulus(m);
            Int total = 0;
            for (const auto& reg : c.regions) total += reg.chi;
            ASSERT_EQ(total, 0);
        }
}

TEST(DividingSets, SignatureInvariance) {
    for (Int n = 1; n <= 5; ++n)
        for (auto m : enumerate_annulus_multicurves(n, n)) {
            m.sign = Sign::negative;
            if (!annulus_regions(m).colorable) {
                EXPECT_THROW(euler_signature(m), DomainError);
                continue;
            }
            Int s = euler_signature(m);
            ASSERT_EQ(euler_signature(swap_signs(m)), -s);
            auto moved = m;
            for (Int k = 0; k < n; ++k) {
                moved = rotate_signed(moved);
                ASSERT_EQ(euler_signature(moved), s);
                auto c = close_annulus(moved);
                if (c.signs_consistent) {
                    ASSERT_EQ(euler_signature(c), euler_signature(close_annulus(m)));
                }
            }
            ASSERT_EQ(moved, m);
        }
}

TEST(DividingSets, TemplateCases) {
    // (b) matching boundary-parallel arc.
    auto b = annulus(2, 2, {{B(0), B(1), 0}, {T(0), T(1), 0}});
    EXPECT_TRUE(attach_template(b, Side::bottom, {0, 1}, 1).overtwisted);
    EXPECT_FALSE(attach_template(b, Side::bottom, {1, 0}, 1).overtwisted);
    EXPECT_TRUE(attach_template(b, Side::top, {1, 0}, 1).overtwisted == false);

    // (a) two through arcs merge into one arc on the far side.
    auto a = annulus(2, 2, {{B(0), T(0), 0}, {B(1), T(1), 0}});
    auto va = attach_template(a, Side::bottom, {0, 1}, 1);
    ASSERT_FALSE(va.overtwisted);
    EXPECT_EQ(va.result->bottom, 0);
    ASSERT_EQ(va.result->arcs.size(), 1u);
    EXPECT_EQ(va.result->arcs[0], (Arc{T(0), T(1), 0}));

    // (c) a neighbouring boundary-parallel arc slides.
    auto c = annulus(4, 0, {{B(1), B(2), 0}, {B(0), B(3), -1}});
    auto vc = attach_template(c, Side::bottom, {0, 1}, 2);
    ASSERT_FALSE(vc.overtwisted);
    EXPECT_EQ(vc.result->bottom, 2);
    ASSERT_EQ(vc.result->arcs.size(), 1u);
    EXPECT_FALSE(is_through(vc.result->arcs[0]));

    EXPECT_THROW(attach_template(c, Side::bottom, {0, 2}, 2), DomainError);
    EXPECT_THROW(attach_template(c, Side::bottom, {0, 1}, 1), DomainError);
}

TEST(DividingSets, TemplateOracleSmall) {
    for (Int nb = 0; nb <= 4; ++nb)
        for (Int nt = 0; nt <= 4; ++nt)
            for (const auto& m : enumerate_annulus_multicurves(nb, nt))
                for (Side side : {Side::bottom, Side::top}) {
                    Int n = side == Side::bottom ? nb : nt;
                    if (n == 0 || n % 2) continue;
                    for (Int i = 0; i < n; ++i) {
                        auto v = attach_template(m, side, {i, (i + 1) % n}, n / 2);
                        ASSERT_EQ(v.overtwisted, oracle::template_closes_disc(m, side, i));
                        if (!v.overtwisted) {
                            ASSERT_NO_THROW(validate(*v.result));
                        }
                    }
                }
}
