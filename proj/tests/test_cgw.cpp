#include <catch_amalgamated.hpp>

#include "ecgw/cgw.hpp"
#include "ecgw/gen.hpp"
#include "support.hpp"

using namespace ecgw;
using testing::incl;

namespace {

FinSetInstance fs;

Square<FinSetInstance> inclusions(const FinSetObj& a, const FinSetObj& b, const FinSetObj& c, const FinSetObj& d) {
  return {incl(a, b), incl(a, c), incl(b, d), incl(c, d)};
}

// Every injection dom -> cod.
std::vector<SetFun> injections(const FinSetObj& dom, const FinSetObj& cod) {
  std::vector<SetFun> out;
  std::vector<std::size_t> m(dom.size());
  std::vector<bool> used(cod.size(), false);
  auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == m.size()) {
      out.emplace_back(dom, cod, m);
      return;
    }
    for (std::size_t j = 0; j < cod.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      m[i] = j;
      self(self, i + 1);
      used[j] = false;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST_CASE("kernels and cokernels are complements") {
  FinSetObj b{"1", "2", "3"};
  auto k = kernel(fs, incl(FinSetObj{"1"}, b));
  CHECK(k.map.dom() == FinSetObj{"2", "3"});
  CHECK(classify(fs, k.square).distinguished);
  CHECK(kernel(fs, identity(b)).map.dom().empty());
  CHECK(kernel(fs, fs.from_initial(b)).map.bijective());
  auto c = cokernel(fs, incl(FinSetObj{"1", "3"}, b));
  CHECK(c.map.dom() == FinSetObj{"2"});
  CHECK(classify(fs, c.square).distinguished);
}

TEST_CASE("distinguished completion of an m-e composite") {
  FinSetObj a{"1"}, b{"1", "2"}, c{"1", "2", "3"};
  auto sq = complete_distinguished(fs, incl(a, b), incl(b, c));
  CHECK(sq.bottom.dom() == FinSetObj{"1", "3"});
  CHECK(classify(fs, sq).distinguished);

  auto id_row = complete_distinguished(fs, identity(b), incl(b, c));
  CHECK(fs.is_iso(id_row.bottom));
  auto id_col = complete_distinguished(fs, incl(a, b), identity(b));
  CHECK(id_col.bottom.dom().size() == a.size());
}

TEST_CASE("distinguished completion is the only pullback-and-cover square up to iso") {
  FinSetObj a{"1"}, b{"1", "2"}, c{"1", "2", "3"};
  auto f = incl(a, b), g = incl(b, c);
  std::vector<std::vector<std::string>> corners;
  for (std::size_t n = 0; n <= c.size(); ++n)
    for (const auto& bottom : injections(FinSetObj(std::vector<Elem>(c.begin(), c.begin() + static_cast<long>(n))), c))
      for (const auto& left : injections(a, bottom.dom())) {
        Square<FinSetInstance> sq{f, left, g, bottom};
        if (classify(fs, sq).distinguished) corners.push_back(testing::tokens(bottom.image()));
      }
  REQUIRE_FALSE(corners.empty());
  for (const auto& k : corners) CHECK(k == std::vector<std::string>{"1", "3"});
}

TEST_CASE("classify") {
  FinSetObj x{"1", "2"};
  auto id = inclusions(x, x, x, x);
  auto cls = classify(fs, id);
  CHECK(cls.commutes);
  CHECK(cls.pullback);
  CHECK(cls.distinguished);

  auto split = inclusions(FinSetObj{"a"}, FinSetObj{"a", "b"}, FinSetObj{"a", "c"}, FinSetObj{"a", "b", "c"});
  CHECK(classify(fs, split).distinguished);

  auto gap = inclusions(FinSetObj{}, FinSetObj{"2"}, FinSetObj{"1"}, FinSetObj{"1", "2", "3"});
  CHECK(classify(fs, gap).pullback);
  CHECK_FALSE(classify(fs, gap).distinguished);

  auto overlap = inclusions(FinSetObj{}, FinSetObj{"1", "2"}, FinSetObj{"2", "3"}, FinSetObj{"1", "2", "3"});
  CHECK(classify(fs, overlap).commutes);
  CHECK_FALSE(classify(fs, overlap).pullback);

  Square<FinSetInstance> bent{incl(FinSetObj{"1"}, x), incl(FinSetObj{"1"}, x), identity(x),
                              SetFun(x, x, {1, 0})};
  CHECK_FALSE(classify(fs, bent).commutes);
  CHECK_THROWS_AS(classify(fs, Square<FinSetInstance>{incl(FinSetObj{"1"}, x), identity(x), identity(x), identity(x)}),
                  Error);
}

TEST_CASE("kernel square of identity e-legs has an empty row") {
  auto f = incl(FinSetObj{"1"}, FinSetObj{"1", "2"});
  Square<FinSetInstance> sq{f, identity(f.dom()), identity(f.cod()), f};
  auto k = k_square(fs, sq);
  CHECK(k.top.dom().empty());
  CHECK(k.top.cod().empty());
}

TEST_CASE("transporting a pullback square twice returns it") {
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng(mix(31, t));
    auto sq = gen::random_square(fs, rng, 6, gen::SquareKind::Pullback);
    auto kk = k_square(fs, k_square(fs, sq));
    CHECK(same_subobject(fs, kk.left, sq.left));
    CHECK(same_subobject(fs, kk.right, sq.right));
    auto cc = c_square(fs, c_square(fs, sq));
    CHECK(same_subobject(fs, cc.top, sq.top));
    CHECK(same_subobject(fs, cc.bottom, sq.bottom));
    bool d = classify(fs, sq).distinguished;
    CHECK(kernel_map_iso(fs, sq) == d);
    CHECK(cokernel_map_iso(fs, sq) == d);
  }
}

TEST_CASE("star pushout of m-spans") {
  FinSetObj a{"a"}, b{"a", "b"}, c{"a", "c"};
  auto p = star_m(fs, incl(a, b), incl(a, c));
  CHECK(p.obj.size() == 3);
  CHECK(classify(fs, p.square).pullback);

  auto unit = star_m(fs, identity(b), incl(FinSetObj{"a", "b"}, FinSetObj{"a", "b", "z"}));
  CHECK(fs.is_iso(unit.obj, FinSetObj{"a", "b", "z"}));
  CHECK(unit.inC.bijective());
}

TEST_CASE("star pushout of e-spans is the union inside the witness") {
  FinSetObj a{"2"}, b{"1", "2"}, c{"2", "3"}, d{"1", "2", "3", "4"};
  auto w = inclusions(a, b, c, d);
  auto p = star_e(fs, w.top, w.left, w);
  CHECK(image_union(fs, w.right, w.bottom).image() == FinSetObj{"1", "2", "3"});
  CHECK(p.obj.size() == 3);

  auto other = inclusions(a, b, c, FinSetObj{"1", "2", "3", "5", "6"});
  auto q = star_e(fs, other.top, other.left, other);
  CHECK(fs.is_iso(p.obj, q.obj));

  auto unit = inclusions(a, a, c, d);
  CHECK(star_e(fs, unit.top, unit.left, unit).obj.size() == c.size());
  CHECK_THROWS_AS(star_e(fs, w.left, w.top, w), Error);
}

TEST_CASE("good squares under a span have exactly one mediating map") {
  int seen = 0;
  for (std::uint64_t t = 0; t < 150; ++t) {
    Rng rng(mix(32, t));
    auto sq = gen::random_square(fs, rng, 4, gen::SquareKind::Pullback);
    auto p = star_m(fs, sq.top, sq.left);
    int count = 0;
    for (const auto& u : injections(p.obj, sq.right.cod()))
      if (compose(u, p.inB) == sq.right && compose(u, p.inC) == sq.bottom) ++count;
    auto m = mediating(fs, p, sq.right, sq.bottom);
    CHECK(count == 1);
    REQUIRE(m);
    CHECK(compose(*m, p.inB) == sq.right);
    seen += count;
  }
  CHECK(seen == 150);
}

TEST_CASE("southern square of the identity cube is an identity") {
  FinSetObj x{"1", "2"};
  Cube<FinSetInstance> c;
  for (auto& o : c.obj) o = x;
  for (int k = 0; k < 3; ++k)
    for (int v = 0; v < 8; ++v)
      if (!(v & (1 << k))) c.edge[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] = identity(x);
  auto s = southern(fs, c);
  CHECK(s.good);
  CHECK(s.square.top.bijective());
  CHECK(s.square.left.bijective());
  CHECK(s.square.right.bijective());
  CHECK(s.square.bottom.bijective());
}
