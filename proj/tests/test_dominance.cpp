#include <gtest/gtest.h>

#include "rsdps/dominance.hpp"
#include "rsdps/mechanisms.hpp"
#include "test_util.hpp"

namespace rsdps {
namespace {

using testing::matrix;
using testing::obj;
using testing::pref;
using testing::R;
using testing::row;
using V = DominanceVerdict;

const Profile kExample1 = Profile::from_strings({"abcd", "abcd", "badc", "badc"});
const Profile kExample2 = Profile::from_strings({"acb", "abc", "bac"});
const Profile kExample3 = Profile::from_strings({"cabd", "acdb", "cbda", "acbd"});

TEST(Surplus, UpperContourSums) {
    EXPECT_EQ(surplus(pref("acdb"), obj('c'), row({"11/24", "0", "1/12", "11/24"})), R("13/24"));
    EXPECT_EQ(surplus(pref("acdb"), obj('c'), row({"1/2", "0", "0", "1/2"})), R("1/2"));
    EXPECT_EQ(surplus(pref("acdb"), obj('b'), row({"1/4", "1/4", "1/4", "1/4"})), R("1"));
    EXPECT_THROW((void)surplus(pref("abc"), obj('a'), row({"1", "0"})), DimensionError);
}

TEST(Surplus, MonotoneAlongRankingAndEndsAtRowSum) {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const Profile p = sample_profile(1 + uniform_below(rng, 5), 1 + uniform_below(rng, 6), rng);
        const AssignmentMatrix a = rsd(p);
        for (std::size_t i = 0; i < p.n(); ++i) {
            Rational prev;
            for (auto o : p.pref(i).ranking()) {
                const Rational s = surplus(p.pref(i), o, a.row(i));
                ASSERT_GE(s, prev);
                prev = s;
            }
            ASSERT_EQ(prev, Rational(static_cast<std::int64_t>(p.m()), static_cast<std::int64_t>(p.n())));
        }
    }
}

TEST(SdCompare, Examples) {
    EXPECT_EQ(sd_compare(pref("abc"), row({"1/2", "1/4", "1/4"}), row({"1/2", "1/6", "1/3"})), V::FirstDominates);
    EXPECT_EQ(sd_compare(pref("bac"), row({"0", "3/4", "1/4"}), row({"0", "5/6", "1/6"})), V::SecondDominates);
    EXPECT_EQ(sd_compare(pref("abc"), row({"1/3", "1/3", "1/3"}), row({"1/3", "1/3", "1/3"})), V::Equal);
    EXPECT_EQ(sd_compare(pref("abcd"), row({"1", "0", "1/2", "1/2"}), row({"1", "1/2", "0", "1/2"})),
              V::SecondDominates);
    // Example 3, agent 2: PS wins at a, RSD wins at c.
    EXPECT_EQ(sd_compare(pref("acdb"), row({"1/2", "0", "0", "1/2"}), row({"11/24", "0", "1/12", "11/24"})),
              V::Incomparable);
    EXPECT_THROW((void)sd_compare(pref("ab"), row({"1", "0"}), row({"1", "0", "0"})), DimensionError);
}

TEST(LdCompare, Examples) {
    EXPECT_EQ(ld_compare(pref("acdb"), row({"1/2", "0", "0", "1/2"}), row({"11/24", "0", "1/12", "11/24"})),
              V::FirstDominates);
    EXPECT_EQ(ld_compare(pref("abc"), row({"1/6", "5/6", "0"}), row({"4/6", "1/6", "1/6"})), V::SecondDominates);
    EXPECT_EQ(ld_compare(pref("cba"), row({"0", "1", "1"}), row({"0", "1", "1"})), V::Equal);
    EXPECT_THROW((void)ld_compare(pref("ab"), row({"1"}), row({"1"})), DimensionError);
}

std::vector<Rational> random_row(Rng& rng, std::size_t m) {
    std::vector<Rational> out;
    for (std::size_t j = 0; j < m; ++j) {
        out.emplace_back(static_cast<std::int64_t>(uniform_below(rng, 4)), 3);
    }
    return out;
}

V flip(V v) {
    if (v == V::FirstDominates) return V::SecondDominates;
    if (v == V::SecondDominates) return V::FirstDominates;
    return v;
}

TEST(DominanceFuzz, SdImpliesLdAndLdIsATotalOrder) {
    Rng rng(11);
    for (int t = 0; t < 5000; ++t) {
        const std::size_t m = 1 + uniform_below(rng, 5);
        const PreferenceOrder p = sample_preference(m, rng);
        const auto a = random_row(rng, m);
        const auto b = random_row(rng, m);
        const auto c = random_row(rng, m);
        const V sd = sd_compare(p, a, b);
        const V ld = ld_compare(p, a, b);
        if (sd == V::FirstDominates || sd == V::SecondDominates) {
            ASSERT_EQ(ld, sd);
        }
        ASSERT_NE(ld, V::Incomparable);
        ASSERT_EQ(ld == V::Equal, a == b);
        ASSERT_EQ(sd == V::Equal, a == b);
        ASSERT_EQ(ld_compare(p, b, a), flip(ld));
        ASSERT_EQ(sd_compare(p, b, a), flip(sd));
        if (ld == V::FirstDominates && ld_compare(p, b, c) == V::FirstDominates) {
            ASSERT_EQ(ld_compare(p, a, c), V::FirstDominates);
        }
    }
}

TEST(ProfileDominance, Examples) {
    EXPECT_EQ(profile_dominance(ps(kExample1), rsd(kExample1), kExample1, DominanceMode::Stochastic),
              V::FirstDominates);
    EXPECT_TRUE(strictly_sd_dominates(ps(kExample1), rsd(kExample1), kExample1));
    EXPECT_EQ(profile_dominance(ps(kExample2), rsd(kExample2), kExample2, DominanceMode::Stochastic), V::Incomparable);
    EXPECT_EQ(profile_dominance(ps(kExample3), rsd(kExample3), kExample3, DominanceMode::Lexicographic),
              V::FirstDominates);
    EXPECT_EQ(profile_dominance(ps(kExample3), rsd(kExample3), kExample3, DominanceMode::Stochastic), V::Incomparable);
    EXPECT_EQ(profile_dominance(rsd(kExample3), ps(kExample3), kExample3, DominanceMode::Lexicographic),
              V::SecondDominates);
    EXPECT_EQ(profile_dominance(ps(kExample2), ps(kExample2), kExample2, DominanceMode::Lexicographic), V::Equal);
    EXPECT_THROW((void)profile_dominance(ps(kExample2), ps(kExample1), kExample2, DominanceMode::Stochastic),
                 DimensionError);
}

TEST(ProfileDominance, WeakButNotStrict) {
    // Agents with the same ranking as their neighbour gain nothing.
    const Profile p = Profile::from_strings({"abc", "abc", "bac"});
    const auto a = matrix({{"1/2", "0", "1/2"}, {"1/2", "0", "1/2"}, {"0", "1", "0"}});
    const auto b = matrix({{"1/2", "0", "1/2"}, {"1/2", "1/4", "1/4"}, {"0", "3/4", "1/4"}});
    EXPECT_EQ(profile_dominance(a, b, p, DominanceMode::Stochastic), V::Incomparable);
    const auto c = matrix({{"1/2", "0", "1/2"}, {"1/2", "0", "1/2"}, {"0", "3/4", "1/4"}});
    const auto d = matrix({{"1/2", "1/4", "1/4"}, {"1/2", "0", "1/2"}, {"0", "3/4", "1/4"}});
    EXPECT_EQ(profile_dominance(d, c, p, DominanceMode::Stochastic), V::FirstDominates);
    EXPECT_FALSE(strictly_sd_dominates(d, c, p));
}

TEST(Envy, Example2Rsd) {
    const EnvyReport r = envy_report(rsd(kExample2), kExample2);
    ASSERT_EQ(r.agents.size(), 3u);
    EXPECT_FALSE(r.agents[0].weakly_envious);
    EXPECT_TRUE(r.agents[1].weakly_envious);
    EXPECT_EQ(r.agents[1].weak_target, AgentId(2));
    EXPECT_FALSE(r.agents[1].sd_envyfree);
    EXPECT_EQ(r.ld_envious_count(), 0u);
    EXPECT_EQ(r.weakly_envious_count(), 1u);
    EXPECT_EQ(r.envy_fraction, R("1/3"));
}

TEST(Envy, LdEnvyBetweenSameRankings) {
    const Profile p = Profile::from_strings({"abc", "abc"});
    const auto a = matrix({{"1/6", "5/6", "0"}, {"4/6", "1/6", "1/6"}});
    const EnvyReport r = envy_report(a, p);
    EXPECT_TRUE(r.agents[0].ld_envious);
    EXPECT_EQ(r.agents[0].ld_target, AgentId(1));
    EXPECT_TRUE(r.agents[0].weakly_envious);
    EXPECT_FALSE(r.agents[1].ld_envious);
}

TEST(Envy, IdenticalRowsAreEnvyFree) {
    const EnvyReport r = envy_report(ps(Profile::from_strings({"abc", "abc", "abc"})),
                                     Profile::from_strings({"abc", "abc", "abc"}));
    for (const auto& a : r.agents) EXPECT_TRUE(a.sd_envyfree);
    EXPECT_TRUE(r.envy_fraction.is_zero());
}

TEST(Envy, LdEnvyImpliesWeakEnvyOnArbitraryMatrices) {
    Rng rng(19);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 2 + uniform_below(rng, 3);
        const std::size_t m = 1 + uniform_below(rng, 4);
        const Profile p = sample_profile(n, m, rng);
        AssignmentMatrix a(n, m);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = random_row(rng, m);
            std::copy(r.begin(), r.end(), a.row(i).begin());
        }
        for (const auto& agent : envy_report(a, p).agents) {
            if (agent.ld_envious) {
                ASSERT_TRUE(agent.weakly_envious);
            }
            ASSERT_EQ(agent.sd_envyfree, !agent.weakly_envious);
        }
    }
}

TEST(PartialSymmetry, Examples) {
    EXPECT_TRUE(dps_check(rsd(kExample1), kExample1));
    EXPECT_TRUE(ups_check(ps(kExample3), kExample3));
    EXPECT_TRUE(dps_check(ps(kExample3), kExample3));
    // Agents 1 and 4 share the suffix (b d) yet receive different RSD probabilities on it.
    EXPECT_FALSE(ups_check(rsd(kExample3), kExample3));
    EXPECT_TRUE(dps_check(rsd(kExample3), kExample3));

    const Profile same = Profile::from_strings({"abc", "abc"});
    EXPECT_FALSE(dps_check(matrix({{"1", "0", "1/2"}, {"0", "1", "1/2"}}), same));
    EXPECT_TRUE(ups_check(matrix({{"1/2", "1/2", "1/2"}, {"1/2", "1/2", "1/2"}}), same));
}

class ExhaustiveCells : public ::testing::TestWithParam<std::pair<std::size_t, std::size_t>> {};

TEST_P(ExhaustiveCells, EfficiencyAndEnvyProperties) {
    const auto [n, m] = GetParam();
    for (const Profile& p : enumerate_profiles(n, m)) {
        const AssignmentMatrix r = rsd(p);
        const AssignmentMatrix s = ps(p);
        ASSERT_NE(profile_dominance(r, s, p, DominanceMode::Stochastic), V::FirstDominates);
        ASSERT_NE(profile_dominance(r, s, p, DominanceMode::Lexicographic), V::FirstDominates);
        ASSERT_EQ(envy_report(r, p).ld_envious_count(), 0u);
        ASSERT_EQ(envy_report(s, p).weakly_envious_count(), 0u);
    }
}

INSTANTIATE_TEST_SUITE_P(Small, ExhaustiveCells,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 2},
                                           std::pair{3, 3}, std::pair{4, 2}, std::pair{4, 3}, std::pair{6, 2}),
                         [](const auto& info) {
                             return "n" + std::to_string(info.param.first) + "m" + std::to_string(info.param.second);
                         });

TEST(DpsConverse, HoldsForRsdOnSmallSquareCells) {
    for (std::size_t n : {2u, 3u}) {
        for (const Profile& p : enumerate_profiles(n, n)) ASSERT_TRUE(dps_converse_check(rsd(p), p));
    }
}

TEST(DpsConverse, FailsForRsdAtFourAgentsFourObjects) {
    // Agents 3 and 4 differ in their third choice but receive identical
    // probabilities on all of agent 3's top three objects.
    const Profile p = Profile::from_strings({"abcd", "abcd", "bcad", "bcda"});
    const AssignmentMatrix r = rsd(p);
    EXPECT_TRUE(std::ranges::equal(r.row(2), r.row(3)));
    EXPECT_TRUE(dps_check(r, p));
    EXPECT_FALSE(dps_converse_check(r, p));
}

TEST(DpsConverse, FailsForRsdWhenObjectsOutnumberAgents) {
    const Profile p = Profile::from_strings({"abc", "bac"});
    EXPECT_FALSE(dps_converse_check(rsd(p), p));
}

}  // namespace
}  // namespace rsdps
