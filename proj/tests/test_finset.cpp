#include <catch_amalgamated.hpp>

#include "ecgw/finset.hpp"
#include "ecgw/random.hpp"
#include "support.hpp"

using namespace ecgw;
using testing::fn;
using testing::incl;

TEST_CASE("objects are sorted and reject duplicate tokens") {
  FinSetObj s{"c", "a", "b"};
  CHECK(testing::tokens(s) == std::vector<std::string>{"a", "b", "c"});
  CHECK_THROWS_AS(FinSetObj({"a", "a"}), Error);
}

TEST_CASE("compose") {
  FinSetObj a{"a"}, x{"x"}, pq{"p", "q"};
  auto f = fn(a, x, {{"a", "x"}});
  auto g = fn(x, pq, {{"x", "p"}});
  CHECK(compose(identity(x), f) == f);
  CHECK(compose(g, f) == fn(a, pq, {{"a", "p"}}));
  try {
    compose(f, g);
    FAIL("mismatched maps composed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotComposable);
  }
}

TEST_CASE("composite of injections is injective") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(mix(11, t));
    auto n = static_cast<std::size_t>(rng.uniform(0, 6));
    auto inject = [&](std::size_t from, std::size_t to) {
      std::vector<std::size_t> idx(to);
      for (std::size_t i = 0; i < to; ++i) idx[i] = i;
      rng.shuffle(idx);
      idx.resize(from);
      return idx;
    };
    auto names = [](std::size_t k, const char* p) {
      std::vector<Elem> v;
      for (std::size_t i = 0; i < k; ++i) v.push_back(p + std::to_string(i));
      return FinSetObj(v);
    };
    auto m = n + static_cast<std::size_t>(rng.uniform(0, 2));
    auto k = m + static_cast<std::size_t>(rng.uniform(0, 2));
    SetFun f(names(n, "a"), names(m, "b"), inject(n, m));
    SetFun g(names(m, "b"), names(k, "c"), inject(m, k));
    auto h = compose(g, f);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) CHECK(h.at(i) != h.at(j));
    CHECK(h.injective());
  }
}

TEST_CASE("coproducts") {
  FinSetObj empty, b{"p", "q"};
  auto c = set_coproduct(empty, b);
  CHECK(c.obj.size() == 2);
  CHECK(c.inr.bijective());

  auto aa = set_coproduct(FinSetObj{"a"}, FinSetObj{"a"});
  CHECK(aa.obj.size() == 2);
  CHECK(aa.inl.at(0) != aa.inr.at(0));

  auto big = set_coproduct(FinSetObj{"1", "2", "3"}, FinSetObj{"1", "2", "3", "4"});
  CHECK(big.obj.size() == 7);
  CHECK(set_pullback(big.inl, big.inr).obj.empty());
}

TEST_CASE("coproduct naming does not depend on the input names") {
  auto x = set_coproduct(FinSetObj{"a", "b"}, FinSetObj{"c"});
  auto y = set_coproduct(FinSetObj{"u", "v"}, FinSetObj{"w"});
  CHECK(x.obj == y.obj);
  for (std::size_t i = 0; i < 2; ++i) CHECK(x.inl.at(i) == y.inl.at(i));
  CHECK(x.inr.at(0) == y.inr.at(0));
}

TEST_CASE("pullbacks") {
  FinSetObj c{"1", "2", "3"};
  auto diag = set_pullback(identity(c), identity(c));
  CHECK(diag.obj.size() == 3);
  CHECK(diag.p1.bijective());
  CHECK(diag.p2.bijective());

  auto l = incl(FinSetObj{"1", "2"}, c), r = incl(FinSetObj{"2", "3"}, c);
  auto p = set_pullback(l, r);
  REQUIRE(p.obj.size() == 1);
  CHECK(compose(l, p.p1).image() == FinSetObj{"2"});
  CHECK_THROWS_AS(set_pullback(l, incl(FinSetObj{"1"}, FinSetObj{"1"})), Error);
}

TEST_CASE("pullback universal property against every cone from a two-point set") {
  FinSetObj w{"s", "t"};
  auto all_maps = [&](const FinSetObj& cod) {
    std::vector<SetFun> out;
    for (std::size_t i = 0; i < cod.size(); ++i)
      for (std::size_t j = 0; j < cod.size(); ++j) out.emplace_back(w, cod, std::vector<std::size_t>{i, j});
    return out;
  };
  for (std::uint64_t t = 0; t < 60; ++t) {
    Rng rng(mix(12, t));
    auto set = [&](const char* p, int lo) {
      std::vector<Elem> v;
      for (int i = 0, n = rng.uniform(lo, 3); i < n; ++i) v.push_back(p + std::to_string(i));
      return FinSetObj(v);
    };
    auto c = set("c", 1), a = set("a", 0), b = set("b", 0);
    auto any = [&](const FinSetObj& d) {
      std::vector<std::size_t> m(d.size());
      for (auto& x : m) x = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(c.size()) - 1));
      return SetFun(d, c, m);
    };
    auto f = any(a), g = any(b);
    auto p = set_pullback(f, g);
    CHECK(compose(f, p.p1) == compose(g, p.p2));
    for (const auto& u : all_maps(a))
      for (const auto& v : all_maps(b)) {
        if (compose(f, u) != compose(g, v)) continue;
        int through = 0;
        for (const auto& h : all_maps(p.obj))
          if (compose(p.p1, h) == u && compose(p.p2, h) == v) ++through;
        CHECK(through == 1);
      }
  }
}

TEST_CASE("from_assignment rejects partial and foreign assignments") {
  FinSetObj a{"a", "b"}, x{"x"};
  CHECK_THROWS_AS(fn(a, x, {{"a", "x"}}), Error);
  CHECK_THROWS_AS(fn(a, x, {{"a", "x"}, {"b", "y"}}), Error);
  CHECK_THROWS_AS(fn(a, x, {{"a", "x"}, {"b", "x"}, {"c", "x"}}), Error);
}
