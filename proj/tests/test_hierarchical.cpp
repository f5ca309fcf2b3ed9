#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "bandopt/hierarchical.hpp"
#include "bandopt/oracle.hpp"
#include "bandopt/synthetic.hpp"

using namespace bandopt;

TEST_CASE("pair_sample draws coordinate-wise squared differences") {
    const DenseMatrix data(2, 2, {0.0, 0.0, 3.0, 4.0});
    const std::vector<std::int64_t> a{0};
    const std::vector<std::int64_t> b{1};
    Rng rng(1);
    double sum = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double s = pair_sample(data, a, b, rng);
        REQUIRE((s == 9.0 || s == 16.0));
        sum += s;
    }
    REQUIRE(sum / 400.0 == Catch::Approx(12.5).margin(1.0));
    REQUIRE(exact_mean(data.row(0), data.row(1)) == 12.5);
    REQUIRE_THROWS_AS(pair_sample(data, {}, b, rng), std::invalid_argument);
}

TEST_CASE("pair_sample on identical points is always zero") {
    const DenseMatrix data(4, 3, std::vector<double>(12, 1.0));
    const std::vector<std::int64_t> a{0, 1};
    const std::vector<std::int64_t> b{2, 3};
    Rng rng(2);
    for (int i = 0; i < 100; ++i) REQUIRE(pair_sample(data, a, b, rng) == 0.0);
}

TEST_CASE("cluster on the 3-point line produces exact merges") {
    const DenseMatrix line(3, 1, {0.0, 1.0, 10.0});
    BanditConfig cfg;
    cfg.seed = 4;
    const HierResult res = cluster(line, cfg);
    REQUIRE(res.tree.merges.size() == 2);
    REQUIRE(res.tree.merges[0].a == 0);
    REQUIRE(res.tree.merges[0].b == 1);
    REQUIRE(res.tree.merges[0].value == 1.0);
    REQUIRE(res.tree.merges[0].exact);  // d = 1 forces the fallback
    REQUIRE(res.tree.merges[1].value == 90.5);
    REQUIRE_THROWS_AS(cluster(DenseMatrix(1, 1, {0.0}), cfg), std::invalid_argument);
}

TEST_CASE("two tight pairs merge first, the third merge joins them") {
    // points: (0,0), (0.1,0), (10,10), (10.1,10)
    const DenseMatrix data(4, 2, {0.0, 0.0, 0.1, 0.0, 10.0, 10.0, 10.1, 10.0});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        BanditConfig cfg;
        cfg.seed = seed;
        const HierResult res = cluster(data, cfg);
        std::set<std::set<std::int64_t>> first_two{
            {res.tree.merges[0].a, res.tree.merges[0].b},
            {res.tree.merges[1].a, res.tree.merges[1].b}};
        const std::set<std::set<std::int64_t>> expected{{0, 1}, {2, 3}};
        REQUIRE(first_two == expected);
        REQUIRE(res.tree.merges[2].new_id == 6);
    }
}

TEST_CASE("identical points yield a valid all-zero tree") {
    const DenseMatrix data(5, 2, std::vector<double>(10, 0.5));
    BanditConfig cfg;
    cfg.seed = 6;
    const HierResult res = cluster(data, cfg);
    res.tree.validate();
    for (const Merge& m : res.tree.merges) REQUIRE(m.value == 0.0);
}

TEST_CASE("arm_set_update follows the deletion and addition counts") {
    // n = 4 clusters, all 6 pair arms active, winner (0,1)
    std::vector<ClusterPair> arms;
    for (std::int64_t i = 0; i < 4; ++i)
        for (std::int64_t j = i + 1; j < 4; ++j) arms.push_back({i, j});
    const ArmSetDelta d4 = arm_set_update(arms, {0, 1}, 4);
    REQUIRE(d4.deleted.size() == 5);  // 2(n-t) - 1 with n = 4, t = 1
    REQUIRE(d4.added.size() == 2);    // n - t - 1
    REQUIRE(d4.added == std::vector<ClusterPair>{{2, 4}, {3, 4}});

    std::vector<ClusterPair> arms3{{0, 1}, {0, 2}, {1, 2}};
    const ArmSetDelta d3 = arm_set_update(arms3, {1, 2}, 3);
    REQUIRE(d3.deleted.size() == 3);
    REQUIRE(d3.added.size() == 1);

    const std::vector<ClusterPair> last{{4, 5}};
    const ArmSetDelta df = arm_set_update(last, {4, 5}, 6);
    REQUIRE(df.deleted.size() == 1);
    REQUIRE(df.added.empty());

    REQUIRE_THROWS_AS(arm_set_update(arms3, {0, 3}, 9), std::logic_error);
}

TEST_CASE("total unique arms over a run is C(n,2) + C(n-1,2)") {
    for (const std::int64_t n : {3, 4, 7, 12}) {
        auto fx = synth::gen_blobs(n, 6, 2, 2.0, 0.5, static_cast<std::uint64_t>(n));
        BanditConfig cfg;
        cfg.seed = 1;
        const HierResult res = cluster(fx.data, cfg);
        const std::int64_t expected = n * (n - 1) / 2 + (n - 1) * (n - 2) / 2;
        REQUIRE(res.ledger.pairs == expected);
    }
}

TEST_CASE("exact linkage of a merged cluster is the convex combination of its parents") {
    auto fx = synth::gen_blobs(12, 5, 2, 2.0, 0.8, 31);
    const auto linkage = [&](const std::vector<std::int64_t>& ca,
                             const std::vector<std::int64_t>& cb) {
        double sum = 0.0;
        for (const std::int64_t x : ca)
            for (const std::int64_t y : cb) sum += exact_mean(fx.data.row(x), fx.data.row(y));
        return sum / static_cast<double>(ca.size() * cb.size());
    };
    const std::vector<std::int64_t> c{0, 1, 2};
    const std::vector<std::int64_t> cp{3, 4};
    const std::vector<std::int64_t> d{5, 6, 7, 8};
    std::vector<std::int64_t> merged = c;
    merged.insert(merged.end(), cp.begin(), cp.end());
    const double direct = linkage(merged, d);
    const double convex = (3.0 * linkage(c, d) + 2.0 * linkage(cp, d)) / 5.0;
    REQUIRE(direct == Catch::Approx(convex).margin(1e-9));
}

TEST_CASE("adaptive tree scores >= 0.9 against the exact tree on blob data") {
    auto fx = synth::gen_blobs(40, 150, 4, 2.0, 0.6, 13);
    const Dendrogram exact = oracle::brute_hier(fx.data);
    BanditConfig cfg;
    cfg.seed = 2;
    const HierResult res = cluster(fx.data, cfg);
    REQUIRE(oracle::tree_accuracy(exact, res.tree, 32, 5) >= 0.9);
}

TEST_CASE("pooled initialization produces a valid, comparable tree") {
    auto fx = synth::gen_blobs(24, 80, 3, 2.0, 0.6, 19);
    const Dendrogram exact = oracle::brute_hier(fx.data);
    BanditConfig cfg;
    cfg.seed = 3;
    const HierResult res = cluster(fx.data, cfg, HierOptions{true});
    res.tree.validate();
    REQUIRE(oracle::tree_accuracy(exact, res.tree, 32, 5) >= 0.85);
}

TEST_CASE("clustering is reproducible under the same seed") {
    auto fx = synth::gen_blobs(16, 30, 3, 2.0, 0.7, 23);
    BanditConfig cfg;
    cfg.seed = 9;
    const HierResult a = cluster(fx.data, cfg);
    const HierResult b = cluster(fx.data, cfg);
    REQUIRE(a.tree.merges.size() == b.tree.merges.size());
    for (std::size_t i = 0; i < a.tree.merges.size(); ++i) {
        REQUIRE(a.tree.merges[i].a == b.tree.merges[i].a);
        REQUIRE(a.tree.merges[i].b == b.tree.merges[i].b);
        REQUIRE(a.tree.merges[i].value == b.tree.merges[i].value);
    }
    REQUIRE(a.ledger.coord_touches == b.ledger.coord_touches);
}
