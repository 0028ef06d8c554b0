#include <doctest.h>

#include "coarsebox/boxspace.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"

using namespace coarsebox;

namespace {

Relation one_component(Index n, std::vector<Pair> pairs) {
  return Relation(make_space({n}), {std::move(pairs)});
}

}  // namespace

TEST_CASE("box space rejects empty components and checks labels") {
  CHECK_THROWS_AS(BoxSpace({3, 0}), Error);
  CHECK_THROWS_AS(BoxSpace({2}, {{"a"}}), Error);
  const BoxSpace s({2, 3}, {{"a", "b"}, {"c", "d", "e"}});
  CHECK(s.total_points() == 5);
  CHECK(s.contains({1, 2}));
  CHECK_FALSE(s.contains({1, 3}));
  CHECK_FALSE(s.contains({2, 0}));
  CHECK(s == BoxSpace({2, 3}));
}

TEST_CASE("relations are canonical and range checked") {
  auto space = make_space({3});
  const Relation a(space, {{{2, 1}, {0, 0}, {2, 1}}});
  const Relation b(space, {{{0, 0}, {2, 1}}});
  CHECK(a == b);
  CHECK(a.size() == 2);
  CHECK_THROWS_AS(Relation(space, {{{3, 0}}}), Error);
  CHECK_THROWS_AS(Relation(space, {}), Error);
  CHECK(Relation::empty(space).is_empty());
  CHECK(Relation::full(space).size() == 9);
}

TEST_CASE("inverse") {
  auto space = make_space({4, 2});
  CHECK(inverse(Relation::diagonal(space)) == Relation::diagonal(space));
  CHECK(inverse(one_component(3, {{1, 0}, {2, 1}})) == one_component(3, {{0, 1}, {1, 2}}));

  fuzz::Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    auto sp = fuzz::random_space(rng, 3, 8);
    const Relation r = fuzz::random_relation(rng, sp, 0.3);
    CHECK(inverse(inverse(r)) == r);
    CHECK(inverse(r) == oracle::inverse(r));
  }
}

TEST_CASE("compose") {
  auto c6 = make_space({6});
  const Relation t = oracle::cycle_band(c6, 1);
  CHECK(compose(Relation::diagonal(c6), t) == t);
  const Relation t2 = compose(t, t);
  CHECK(t2 == oracle::cycle_band(c6, 2));
  for (Index x = 0; x < 6; ++x) CHECK(ball(t2, 0, std::vector<Index>{x}).size() == 5);

  CHECK_THROWS_AS(compose(t, Relation::diagonal(make_space({5}))), MismatchedSpaceError);
  // Structurally equal spaces are interchangeable.
  CHECK(compose(t, Relation::diagonal(make_space({6}))) == t);

  fuzz::Rng rng(202);
  for (int i = 0; i < 100; ++i) {
    auto sp = fuzz::random_space(rng, 3, 9);
    const Relation a = fuzz::random_relation(rng, sp, 0.25);
    const Relation b = fuzz::random_relation(rng, sp, 0.25);
    CHECK(compose(a, b) == oracle::compose(a, b));
    CHECK(inverse(compose(a, b)) == compose(inverse(b), inverse(a)));
  }
}

TEST_CASE("power") {
  auto c8 = make_space({8});
  const Relation t = oracle::cycle_band(c8, 1);
  CHECK(power(Relation::diagonal(c8), 5) == Relation::diagonal(c8));
  CHECK(power(t, 1) == t);
  CHECK(power(t, 3) == oracle::cycle_band(c8, 3));
  CHECK_THROWS_AS(power(t, 0), Error);

  fuzz::Rng rng(303);
  for (int i = 0; i < 50; ++i) {
    auto sp = fuzz::random_space(rng, 2, 8);
    const Relation r = fuzz::random_relation(rng, sp, 0.2);
    CHECK(power(r, 2) == compose(r, r));
    CHECK(power(r, 3) == compose(r, compose(r, r)));
  }
}

TEST_CASE("set operations") {
  auto sp = make_space({3});
  const Relation a(sp, {{{0, 1}, {1, 1}}});
  const Relation b(sp, {{{1, 1}, {2, 0}}});
  CHECK(relation_union(a, b) == Relation(sp, {{{0, 1}, {1, 1}, {2, 0}}}));
  CHECK(relation_intersection(a, b) == Relation(sp, {{{1, 1}}}));
  CHECK(relation_difference(a, b) == Relation(sp, {{{0, 1}}}));
  CHECK(a.is_subset_of(relation_union(a, b)));
  CHECK_FALSE(relation_union(a, b).is_subset_of(a));
}

TEST_CASE("ball") {
  auto c6 = make_space({6});
  const Relation t = oracle::cycle_band(c6, 1);
  const PointSet y{1, 4};
  CHECK(ball(Relation::diagonal(c6), 0, y) == y);
  CHECK(ball(t, 0, std::vector<Index>{2}) == PointSet{1, 2, 3});
  CHECK(ball(t, 0, std::vector<Index>{1, 3}) == PointSet{0, 1, 2, 3, 4});
  CHECK(ball(t, 0, PointSet{}).empty());

  const Relation shift(c6, {{{1, 0}}});
  CHECK(ball(shift, 0, std::vector<Index>{0}) == PointSet{1});
  CHECK(balls(shift, 0)[0] == PointSet{1});
  CHECK(balls(shift, 0)[1].empty());

  fuzz::Rng rng(404);
  for (int i = 0; i < 100; ++i) {
    auto sp = fuzz::random_space(rng, 2, 10);
    const Relation a = fuzz::random_relation(rng, sp, 0.2);
    const Relation b = fuzz::random_relation(rng, sp, 0.2);
    for (std::size_t c = 0; c < sp->num_components(); ++c) {
      const PointSet ys = fuzz::random_subset(rng, sp->size(c), 0.3);
      CHECK(ball(compose(a, b), c, ys) == ball(a, c, ball(b, c, ys)));
    }
  }
}

TEST_CASE("is_bounded") {
  auto c8 = make_space({8});
  const Relation f = oracle::cycle_band(c8, 1);
  CHECK(is_bounded(f, 0, std::vector<Index>{5}));
  CHECK(is_bounded(f, 0, std::vector<Index>{0, 1, 2}));
  CHECK_FALSE(is_bounded(f, 0, std::vector<Index>{0, 3}));
  CHECK(is_bounded(f, 0, std::vector<Index>{7, 0, 1}));
  // Orientation: Y within {z : (z, x) in R}.
  const Relation star(c8, {{{1, 0}, {2, 0}}});
  CHECK(is_bounded(star, 0, std::vector<Index>{1, 2}));
  CHECK_FALSE(is_bounded(inverse(star), 0, std::vector<Index>{1, 2}));
}

TEST_CASE("widen") {
  auto c10 = make_space({10});
  std::vector<Pair> fwd;
  for (Index x = 0; x < 10; ++x) fwd.push_back({(x + 1) % 10, x});
  const Relation shift(c10, {fwd});
  CHECK(widen(shift, 2) == oracle::cycle_band(c10, 2));
  CHECK(widen(Relation::diagonal(c10), 3) == Relation::diagonal(c10));
  CHECK_THROWS_AS(widen(shift, 0), Error);

  fuzz::Rng rng(505);
  for (int i = 0; i < 60; ++i) {
    auto sp = fuzz::random_space(rng, 2, 9);
    const Relation r = fuzz::random_relation(rng, sp, 0.1);
    for (unsigned n = 1; n <= 4; ++n) {
      const Relation w = widen(r, n);
      CHECK(w == oracle::reachability(r, n));
      CHECK(w == inverse(w));
      CHECK(w.contains_diagonal());
      CHECK(w.is_subset_of(widen(r, n + 1)));
    }
  }
}

TEST_CASE("max_degree") {
  auto sp = make_space({6});
  CHECK(max_degree(Relation::diagonal(make_space({4, 7}))) == 1);
  CHECK(max_degree(oracle::cycle_band(sp, 1)) == 3);
  CHECK(max_degree(Relation::empty(sp)) == 0);
  auto s5 = make_space({5});
  std::vector<Pair> star;
  for (Index i = 0; i < 5; ++i) star.push_back({i, i});
  for (Index leaf = 1; leaf < 5; ++leaf) {
    star.push_back({0, leaf});
    star.push_back({leaf, 0});
  }
  CHECK(max_degree(Relation(s5, {star})) == 5);
  // Row and column counts are both considered.
  CHECK(max_degree(Relation(s5, {{{0, 1}, {0, 2}, {0, 3}}})) == 3);
  CHECK(max_degree(Relation(s5, {{{1, 0}, {2, 0}}})) == 2);
}

TEST_CASE("weighted components") {
  CHECK_THROWS_AS(WeightedComponent(0, {0.5, 0.6}), Error);
  CHECK_THROWS_AS(WeightedComponent(0, {1.0, 0.0}), Error);
  const WeightedComponent u = WeightedComponent::uniform(2, 4);
  CHECK(u.component() == 2);
  CHECK(u[3] == doctest::Approx(0.25));
  const WeightedComponent w = WeightedComponent::normalized(0, {1.0, 3.0});
  CHECK(w[1] == doctest::Approx(0.75));
  CHECK(w.measure(std::vector<Index>{0, 1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(WeightedComponent::normalized(0, {1.0, -1.0}), Error);
}

TEST_CASE("box subspaces renumber points and drop empty components") {
  auto sp = make_space({4, 3, 5});
  const Relation r = Relation::full(sp);
  const BoxSubspace sub = box_subspace(r, {PointSet{1, 3}, PointSet{}, PointSet{0, 2, 4}});
  REQUIRE(sub.space->num_components() == 2);
  CHECK(sub.space->size(0) == 2);
  CHECK(sub.space->size(1) == 3);
  CHECK(sub.origin_component == std::vector<Index>{0, 2});
  CHECK(sub.origin_points[1] == PointSet{0, 2, 4});
  CHECK(sub.relation == Relation::full(sub.space));

  const Relation band = oracle::cycle_band(make_space({6}), 1);
  const BoxSubspace s2 = box_subspace(band, {PointSet{0, 1, 3}});
  CHECK(s2.relation == Relation(s2.space, {{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}}}));
}

TEST_CASE("no operation creates cross-component pairs") {
  fuzz::Rng rng(606);
  for (int i = 0; i < 50; ++i) {
    auto sp = fuzz::random_space(rng, 4, 7);
    const Relation a = fuzz::random_relation(rng, sp, 0.3);
    const Relation b = fuzz::random_relation(rng, sp, 0.3);
    for (const Relation& r : {compose(a, b), inverse(a), widen(a, 2), relation_union(a, b)}) {
      for (std::size_t c = 0; c < sp->num_components(); ++c) {
        for (const Pair& p : r.pairs(c)) {
          CHECK(p.x < sp->size(c));
          CHECK(p.y < sp->size(c));
        }
      }
    }
  }
}
