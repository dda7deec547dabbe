#include <random>
#include <vector>

#include "doctest.h"
#include "multirank/count_matrix.hpp"

namespace multirank {
namespace {

TEST_CASE("counts ignore order and type") {
  const CountMatrix a(MakeIndexedDataset(3, 2, {{0, 1, 0}, {1, 0, 1}, {0, 2, 0}}));
  CHECK(a.is_dense());
  CHECK(a(0, 1) == 2);
  CHECK(a(1, 0) == 2);
  CHECK(a(0, 2) == 1);
  CHECK(a(1, 2) == 0);
  CHECK(a(0, 0) == 0);
  CHECK(a.Total() == 6);
  CHECK(a.num_pairs() == 2);
  const Eigen::VectorXi rows = a.RowSums();
  CHECK(rows[0] == 3);
  CHECK(rows[1] == 2);
  CHECK(rows[2] == 1);
}

TEST_CASE("empty dataset") {
  const CountMatrix a(MakeIndexedDataset(4, 1, {}));
  CHECK(a.size() == 4);
  CHECK(a.Total() == 0);
  CHECK(a.num_pairs() == 0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(a(i, j) == 0);
  }
}

TEST_CASE("symmetry, totals and row sums on random data") {
  std::mt19937_64 gen(11);
  const int n = 30;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<InteractionRecord> records;
  std::vector<int> per_individual(n, 0);
  for (int r = 0; r < 500; ++r) {
    const int u = pick(gen);
    int v = pick(gen);
    while (v == u) v = pick(gen);
    records.push_back({u, v, 0});
    ++per_individual[u];
    ++per_individual[v];
  }
  const CountMatrix a(MakeIndexedDataset(n, 1, records));
  long total = 0;
  for (int i = 0; i < n; ++i) {
    CHECK(a(i, i) == 0);
    for (int j = 0; j < n; ++j) {
      CHECK(a(i, j) == a(j, i));
      total += a(i, j);
    }
  }
  CHECK(total == 1000);
  CHECK(a.Total() == 1000);
  const Eigen::VectorXi rows = a.RowSums();
  for (int i = 0; i < n; ++i) CHECK(rows[i] == per_individual[i]);
  for (Eigen::Index k = 0; k < a.num_pairs(); ++k) {
    CHECK(a.pair_first()[k] < a.pair_second()[k]);
    CHECK(a(a.pair_first()[k], a.pair_second()[k]) == a.pair_counts()[k]);
  }
}

TEST_CASE("sparse storage above the dense limit") {
  const int n = CountMatrix::kDenseLimit + 10;
  const CountMatrix a(MakeIndexedDataset(
      n, 1, {{0, n - 1, 0}, {n - 1, 0, 0}, {5, 7, 0}}));
  CHECK_FALSE(a.is_dense());
  CHECK(a(0, n - 1) == 2);
  CHECK(a(n - 1, 0) == 2);
  CHECK(a(7, 5) == 1);
  CHECK(a(1, 2) == 0);
  CHECK(a.Total() == 6);
  CHECK(a.RowSums()[n - 1] == 2);
}

}  // namespace
}  // namespace multirank
