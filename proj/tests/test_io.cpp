#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "ecgw/chain_gen.hpp"
#include "ecgw/io.hpp"
#include "oracles.hpp"

using namespace ecgw;

namespace {

std::string data(const std::string& name) { return std::string(ECGW_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Degree and image-part footprints of a chain map, both in the target degree's tokens.
std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> footprint(const ChainMap<FinSetInstance>& m) {
  std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> out;
  for (int i = m.lo(); i <= m.hi(); ++i)
    out.emplace_back(m.at(i).image().elems(), compose(m.dst.inc(i), m.bar(i)).image().elems());
  return out;
}

}  // namespace

TEST_CASE("empty document") {
  auto doc = io::parse("{}");
  CHECK(doc.sets.empty());
  auto r = io::resolve(FinSetInstance{}, doc);
  CHECK(r.complexes.empty());
  CHECK(io::parse(io::dump(doc)) == doc);
}

TEST_CASE("canonical dump is a fixed point and matches the golden file") {
  auto golden = slurp(data("complexes.canonical.json"));
  REQUIRE_FALSE(golden.empty());
  CHECK(io::dump(io::load(data("complexes.json"))) == golden);
  CHECK(io::dump(io::parse(golden)) == golden);
  CHECK(io::load(data("complexes.json")) == io::parse(golden));
}

TEST_CASE("fixture complexes resolve") {
  auto r = io::resolve(FinSetInstance{}, io::load(data("complexes.json")));
  CHECK(r.complexes.size() == 3);
  CHECK(r.chain_maps.at("a").kind == MapKind::M);
  CHECK(r.complexes.at("X").X(0).size() == 2);
}

TEST_CASE("chain condition violation names its degree") {
  try {
    io::resolve(FinSetInstance{}, io::load(data("chain_violation.json")));
    FAIL("violation accepted");
  } catch (const Error& e) {
    REQUIRE(e.index());
    CHECK(*e.index() == 0);
    CHECK(std::string(e.what()).find("complex 'X'") != std::string::npos);
  }
}

TEST_CASE("unknown keys and bad values are parse errors") {
  auto kind_of = [](const std::string& text) {
    try {
      io::parse(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ValidationError;
  };
  CHECK(kind_of(slurp(data("malformed.json"))) == ErrorKind::ParseError);
  CHECK(kind_of("{\"sets\": {\"A\": [1]}}") == ErrorKind::ParseError);
  CHECK(kind_of("{\"version\": \"2\"}") == ErrorKind::ParseError);
  CHECK(kind_of("{\"complexes\": {\"X\": {\"window\": [0]}}}") == ErrorKind::ParseError);
  CHECK(kind_of("{\"complexes\": {\"X\": {\"window\": [0, 1], \"degrees\": {\"one\": \"A\"}}}}") ==
        ErrorKind::ParseError);
  CHECK(kind_of("{\"maps\": {\"f\": {\"dom\": \"A\", \"cod\": \"B\", \"via\": {}}}}") == ErrorKind::ParseError);
  CHECK(kind_of("[1, 2") == ErrorKind::ParseError);
  CHECK_THROWS_AS(io::load(data("missing.json")), Error);
}

TEST_CASE("unresolvable references are validation errors") {
  auto doc = io::parse(R"({"sets": {"A": ["a"]}, "maps": {"f": {"dom": "A", "cod": "B", "assign": {"a": "b"}}}})");
  try {
    io::resolve(FinSetInstance{}, doc);
    FAIL("unknown set accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
  }
}

TEST_CASE("written chain maps read back as the same subcomplex") {
  FinSetInstance fs;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(mix(61, t));
    auto kind = t % 2 ? MapKind::M : MapKind::E;
    auto f = oracle::random_chain_map(fs, rng, kind);
    io::Document doc;
    io::put_chain_map(fs, doc, "f", f, "S", "T");
    auto text = io::dump(doc);
    auto back = io::resolve(fs, io::parse(text)).chain_maps.at("f");
    CHECK(back.kind == kind);
    CHECK(chain_isomorphic(fs, back.src, f.src));
    CHECK(chain_isomorphic(fs, back.dst, f.dst));
    CHECK(footprint(back) == footprint(f));
    CHECK(io::dump(io::parse(text)) == text);
  }
}

TEST_CASE("m-set actions survive a round trip") {
  MSetInstance ms(io::load_monoid(data("idempotent.json")));
  auto r = io::resolve(ms, io::load(data("mset.json")));
  const auto& p = r.complexes.at("P");
  io::Document doc;
  io::put_complex(ms, doc, "P", p);
  auto again = io::resolve(ms, io::parse(io::dump(doc))).complexes.at("P");
  CHECK(chain_isomorphic(ms, again, p));
  CHECK(doc.actions.count("P.X0") == 1);
}

TEST_CASE("non-equivariant maps and stray actions are rejected") {
  MSetInstance ms(Monoid::idempotent_pair());
  auto doc = io::parse(R"({"sets": {"XY": ["x", "y"], "U": ["u"]},
                           "actions": {"XY": {"1": {"x": "y", "y": "y"}}},
                           "maps": {"f": {"dom": "U", "cod": "XY", "assign": {"u": "x"}}}})");
  CHECK_THROWS_AS(io::resolve(ms, doc), Error);
  CHECK_THROWS_AS(io::resolve(FinSetInstance{}, doc), Error);
  doc.actions.clear();
  CHECK_NOTHROW(io::resolve(FinSetInstance{}, doc));
}
