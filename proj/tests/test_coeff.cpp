#include <doctest.h>

#include "greedylb/coeff.hpp"
#include "greedylb/quad.hpp"

#include <random>

using namespace greedylb;

namespace {

CoeffVector vec(std::initializer_list<std::pair<Index, int>> entries) {
  std::vector<std::pair<Index, Rat>> e;
  for (auto [n, a] : entries) e.emplace_back(n, Rat(a));
  return CoeffVector::from_entries(std::move(e));
}

CoeffVector random_vec(std::mt19937_64& rng, int window, int span) {
  std::vector<std::pair<Index, Rat>> e;
  for (Index n = 1; n <= window; ++n) {
    long v = static_cast<long>(rng() % (2 * span + 1)) - span;
    if (v != 0) e.emplace_back(n, Rat(v));
  }
  return CoeffVector::from_entries(std::move(e));
}

IndexSet random_set(std::mt19937_64& rng, int window) {
  std::vector<Index> idx;
  for (Index n = 1; n <= window; ++n)
    if (rng() % 2) idx.push_back(n);
  return IndexSet(idx);
}

}  // namespace

TEST_CASE("support") {
  CHECK(support(vec({{1, 3}, {3, 2}})) == IndexSet{1, 3});
  CHECK(support(CoeffVector{}) == IndexSet{});
  CHECK(support(vec({{2, -1}})) == IndexSet{2});
}

TEST_CASE("project") {
  auto v = vec({{1, 3}, {2, 1}, {3, 2}, {4, 2}});
  CHECK(project(v, IndexSet{1, 3}) == vec({{1, 3}, {3, 2}}));
  CHECK(project(v, IndexSet{}) == CoeffVector{});
  CHECK(project(v, IndexSet{5}) == CoeffVector{});
}

TEST_CASE("initial_projection") {
  auto v = vec({{1, 3}, {2, 1}, {3, 2}, {4, 2}});
  CHECK(initial_projection(v, 2) == vec({{1, 3}, {2, 1}}));
  CHECK(initial_projection(v, 0) == CoeffVector{});
  CHECK(initial_projection(vec({{5, 7}}), 4) == CoeffVector{});
}

TEST_CASE("indicator") {
  IndexSet A{1, 2};
  auto eps = SignPattern(A, {1, -1});
  CHECK(indicator(A, eps) == vec({{1, 1}, {2, -1}}));
  CHECK(indicator(IndexSet{}) == CoeffVector{});
  CHECK(indicator(IndexSet{2, 4}) == vec({{2, 1}, {4, 1}}));
  CHECK(support(indicator(A, eps)) == A);
  CHECK_THROWS(indicator(IndexSet{1, 3}, eps));  // domain mismatch
}

TEST_CASE("projection composition and splitting") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    auto v = random_vec(rng, 8, 3);
    auto A = random_set(rng, 8), B = random_set(rng, 8);
    CHECK(project(project(v, A), B) == project(v, A.set_intersect(B)));
    CHECK(project(v, A) + project(v, support(v).set_minus(A)) == v);
  }
}

TEST_CASE("text round-trip") {
  auto v = vec({{1, 3}, {4, -2}});
  CHECK(v.str() == "1:3 4:-2");
  CHECK(CoeffVector::parse("1:3 4:-2") == v);
  CHECK(CoeffVector::parse("1:1/2 2:-0.25").value().at(2) == Rat(-1, 4));
  CHECK(!CoeffVector::parse("4:1 2:1"));  // indices must increase
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    auto v2 = random_vec(rng, 10, 5);
    CHECK(CoeffVector::parse(v2.str()) == v2);
  }
}

TEST_CASE("quad arithmetic and exact signs") {
  Quad r2 = Quad::sqrt_int_checked(2), r3 = Quad::sqrt_int_checked(3);
  CHECK(r2 * r2 == Quad(2));
  CHECK(r3 * r3 == Quad(3));
  CHECK(r2 * r3 == Quad::sqrt_int_checked(6));
  CHECK(Quad::sqrt_int_checked(8) == Quad(2) * r2);
  CHECK(Quad::sqrt_int_checked(4) == Quad(2));
  CHECK(!Quad::sqrt_int(5));
  // 1/(r2 - 1) = r2 + 1
  CHECK(Quad(1) / (r2 - Quad(1)) == r2 + Quad(1));
  // sqrt2 + sqrt3 > sqrt6 - 1 etc.
  CHECK(r2 + r3 > Quad::sqrt_int_checked(6) - Quad(1));
  CHECK(r2 < r3);
  CHECK((r3 - r2).sign() == 1);
  CHECK((Quad(99, -70, 0, 0)).sign() == 1);   // 99 - 70 sqrt2 > 0
  CHECK((Quad(-99, 70, 0, 0)).sign() == -1);  // symmetric
  CHECK((r2 * r3 - Quad::sqrt_int_checked(6)).sign() == 0);
  CHECK(abs(Quad(1) - r2) == r2 - Quad(1));
}
