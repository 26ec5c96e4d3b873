#include <functional>

#include "doctest.h"
#include "mzv/compositions.hpp"
#include "mzv/errors.hpp"

using namespace mzv;

namespace {

std::vector<std::vector<int>> listed(int k, int n, int last_min) {
  std::vector<std::vector<int>> out;
  for (const auto& c : all_compositions(k, n, last_min)) out.push_back(c.parts());
  return out;
}

/// Every n-tuple of positive integers summing to k with last part >= last_min, in
/// lexicographic order.
std::vector<std::vector<int>> brute(int k, int n, int last_min) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 1);
  std::function<void(int, int)> rec = [&](int i, int sum) {
    if (i == n) {
      if (sum == k && cur.back() >= last_min) out.push_back(cur);
      return;
    }
    for (int v = 1; sum + v <= k; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1, sum + v);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

TEST_CASE("composition examples") {
  CHECK(listed(3, 2, 1) == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
  CHECK(listed(4, 2, 2) == std::vector<std::vector<int>>{{1, 3}, {2, 2}});
  CHECK(listed(5, 3, 2) == std::vector<std::vector<int>>{{1, 1, 3}, {1, 2, 2}, {2, 1, 2}});
  CHECK(count_compositions(3, 2, 1) == 2);
  CHECK(count_compositions(4, 2, 2) == 2);
  CHECK(count_compositions(8, 4, 2) == 20);
  CHECK(brute(8, 4, 2).size() == 20);
}

TEST_CASE("empty domains yield nothing") {
  CHECK(listed(2, 3, 1).empty());
  CHECK(listed(3, 3, 2).empty());
  CHECK(count_compositions(3, 3, 2) == 0);
  auto stream = enumerate_compositions(1, 2, 1);
  CHECK_FALSE(stream.next().has_value());
  CHECK_FALSE(stream.next().has_value());
}

TEST_CASE("enumeration matches brute force and the count formula") {
  for (int k = 1; k <= 12; ++k)
    for (int n = 1; n <= k; ++n)
      for (int last_min = 1; last_min <= 2; ++last_min) {
        const auto got = listed(k, n, last_min);
        CHECK(got == brute(k, n, last_min));
        CHECK(got.size() == count_compositions(k, n, last_min));
      }
}

TEST_CASE("stream is strictly increasing") {
  for (int k = 2; k <= 12; ++k)
    for (int n = 1; n <= k; ++n) {
      auto stream = enumerate_compositions(k, n, 2);
      std::optional<Composition> prev;
      while (auto c = stream.next()) {
        CHECK(c->weight() == k);
        CHECK(c->depth() == n);
        CHECK(c->back() >= 2);
        if (prev) CHECK(*prev < *c);
        prev = c;
      }
    }
}

TEST_CASE("composition validation and parsing") {
  CHECK_THROWS_AS(Composition({}), DomainError);
  CHECK_THROWS_AS(Composition({1, 0, 2}), DomainError);
  CHECK_THROWS_AS(Composition({2, 1}, 2), DomainError);
  CHECK(Composition::parse("1,2,3").parts() == std::vector<int>{1, 2, 3});
  CHECK(Composition::parse("4").to_string() == "4");
  CHECK(Composition({1, 1, 2}).to_string() == "1,1,2");
  CHECK_THROWS_AS(Composition::parse("1,x"), DomainError);
  CHECK_THROWS_AS(Composition::parse("1,,2"), DomainError);
  CHECK_THROWS_AS(enumerate_compositions(4, 0, 1), DomainError);
  CHECK_THROWS_AS(enumerate_compositions(4, 2, 3), DomainError);
}
