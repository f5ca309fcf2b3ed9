#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bandopt/dendrogram.hpp"
#include "bandopt/oracle.hpp"
#include "bandopt/synthetic.hpp"

using namespace bandopt;

namespace {

DenseMatrix line3() {
    return DenseMatrix(3, 1, {0.0, 1.0, 10.0});
}

}  // namespace

TEST_CASE("brute_knn on the 3-point line") {
    const auto nn = oracle::brute_knn(line3(), 1);
    REQUIRE(nn[0] == std::vector<std::int64_t>{1});
    REQUIRE(nn[1] == std::vector<std::int64_t>{0});
    REQUIRE(nn[2] == std::vector<std::int64_t>{1});
    REQUIRE_THROWS_AS(oracle::brute_knn(line3(), 3), std::invalid_argument);
}

TEST_CASE("brute_medoid on the 3-point line is the middle point") {
    // l1 averages: {11/2, 10/2, 19/2}
    REQUIRE(oracle::brute_medoid(line3(), oracle::MedoidMetric::l1) == 1);
    REQUIRE(oracle::brute_medoid(line3(), oracle::MedoidMetric::l2sq) == 1);
}

TEST_CASE("brute_mmi picks a feature equal to the target") {
    auto fx = synth::gen_mmi_planted(150, 4, 1, 0.0, 3);
    const auto res = oracle::brute_mmi(fx.x, fx.target);
    REQUIRE(res.feature == 1);
}

TEST_CASE("brute_hier on the 3-point line") {
    const Dendrogram tree = oracle::brute_hier(line3());
    REQUIRE(tree.merges.size() == 2);
    REQUIRE(tree.merges[0].a == 0);
    REQUIRE(tree.merges[0].b == 1);
    REQUIRE(tree.merges[0].value == 1.0);
    // average linkage of {0,1} to {10}: (100 + 81)/2
    REQUIRE(tree.merges[1].value == 90.5);
    REQUIRE(tree.merges[1].a == 2);
    REQUIRE(tree.merges[1].b == 3);
}

TEST_CASE("brute_hier merge values are zero on identical points") {
    const DenseMatrix data(4, 2, std::vector<double>(8, 3.25));
    const Dendrogram tree = oracle::brute_hier(data);
    for (const Merge& m : tree.merges) REQUIRE(m.value == 0.0);
}

TEST_CASE("brute_hier merge values are monotone nondecreasing") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto fx = synth::gen_blobs(24, 6, 3, 2.0, 0.7, seed);
        const Dendrogram tree = oracle::brute_hier(fx.data);
        for (std::size_t t = 1; t < tree.merges.size(); ++t)
            REQUIRE(tree.merges[t].value >= tree.merges[t - 1].value - 1e-12);
    }
}

TEST_CASE("brute functions are deterministic") {
    auto fx = synth::gen_blobs(16, 4, 2, 2.0, 0.5, 8);
    const auto a = oracle::brute_knn(fx.data, 3);
    const auto b = oracle::brute_knn(fx.data, 3);
    REQUIRE(a == b);
    const Dendrogram ta = oracle::brute_hier(fx.data);
    const Dendrogram tb = oracle::brute_hier(fx.data);
    for (std::size_t i = 0; i < ta.merges.size(); ++i) {
        REQUIRE(ta.merges[i].a == tb.merges[i].a);
        REQUIRE(ta.merges[i].value == tb.merges[i].value);
    }
}

TEST_CASE("knn_accuracy counts exact set matches") {
    const std::vector<std::vector<std::int64_t>> exact{{1, 2}, {0, 2}, {0, 1}, {0, 1}};
    REQUIRE(oracle::knn_accuracy(exact, exact) == 1.0);
    const std::vector<std::vector<std::int64_t>> swapped{{2, 1}, {2, 0}, {1, 0}, {1, 0}};
    REQUIRE(oracle::knn_accuracy(exact, swapped) == 1.0);  // order-insensitive
    const std::vector<std::vector<std::int64_t>> disjoint{{3, 2}, {3, 1}, {3, 2}, {2, 3}};
    REQUIRE(oracle::knn_accuracy(exact, disjoint) == 0.0);
    const std::vector<std::vector<std::int64_t>> half{{1, 2}, {0, 2}, {3, 1}, {3, 1}};
    REQUIRE(oracle::knn_accuracy(exact, half) == 0.5);
}

TEST_CASE("kmeans and mmi accuracies") {
    REQUIRE(oracle::kmeans_accuracy({0, 1, 1, 0}, {0, 1, 1, 0}) == 1.0);
    REQUIRE(oracle::kmeans_accuracy({0, 1, 1, 0}, {1, 0, 0, 1}) == 0.0);
    REQUIRE(oracle::kmeans_accuracy({0, 1, 1, 0}, {0, 1, 0, 1}) == 0.5);
    REQUIRE(oracle::mmi_accuracy(3, 3) == 1.0);
    REQUIRE(oracle::mmi_accuracy(3, 4) == 0.0);
}

TEST_CASE("tree_accuracy is 1 on itself and penalizes a swapped merge") {
    auto fx = synth::gen_blobs(12, 4, 3, 3.0, 0.3, 4);
    const Dendrogram exact = oracle::brute_hier(fx.data);
    REQUIRE(oracle::tree_accuracy(exact, exact, 32, 1) == 1.0);

    // 3 leaves, first merge swapped: distances {2,3,3} vs {3,2,3}
    Dendrogram t_exact;
    t_exact.n_leaves = 3;
    t_exact.merges = {{0, 1, 3, 0.0, true}, {2, 3, 4, 0.0, true}};
    Dendrogram t_swap;
    t_swap.n_leaves = 3;
    t_swap.merges = {{0, 2, 3, 0.0, true}, {1, 3, 4, 0.0, true}};
    const double score = oracle::tree_accuracy(t_exact, t_swap, 64, 2);
    REQUIRE(score < 0.3);  // worse than random pairing of 3 leaves

    Dendrogram other;
    other.n_leaves = 4;
    REQUIRE_THROWS_AS(oracle::tree_accuracy(t_exact, other), std::invalid_argument);
}

TEST_CASE("a random tree scores near zero against an informative one") {
    auto fx = synth::gen_blobs(24, 6, 4, 4.0, 0.2, 6);
    const Dendrogram exact = oracle::brute_hier(fx.data);
    Rng rng(123);
    double total = 0.0;
    for (int i = 0; i < 8; ++i)
        total += oracle::tree_accuracy(exact, random_tree(24, rng), 32, 7);
    REQUIRE(std::abs(total / 8.0) < 0.35);
}

TEST_CASE("leaf path distances match hand counts") {
    Dendrogram tree;
    tree.n_leaves = 3;
    tree.merges = {{0, 1, 3, 0.0, true}, {2, 3, 4, 0.0, true}};
    const auto dist = leaf_distances(tree);
    REQUIRE(dist[pair_index(0, 1)] == 2);
    REQUIRE(dist[pair_index(0, 2)] == 3);
    REQUIRE(dist[pair_index(1, 2)] == 3);
}

TEST_CASE("brute_lloyd inertia is nonincreasing in the iteration budget") {
    auto fx = synth::gen_blobs(60, 8, 3, 2.0, 1.0, 15);
    DenseMatrix init(3, 8);
    for (std::int64_t c = 0; c < 3; ++c)
        for (std::int64_t j = 0; j < 8; ++j) init(c, j) = fx.data(c, j);
    double prev = std::numeric_limits<double>::infinity();
    for (int iters = 0; iters <= 6; ++iters) {
        const auto res = oracle::brute_lloyd(fx.data, init, iters);
        REQUIRE(res.inertia <= prev + 1e-9);
        prev = res.inertia;
    }
}
