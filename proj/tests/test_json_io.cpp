#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "latfm/error.hpp"
#include "latfm/json_io.hpp"

using namespace latfm;

TEST_CASE("integers and rationals") {
  CHECK(integer_to_json(Integer(-7)) == Json(-7));
  const Integer huge("123456789012345678901234567890");
  CHECK(integer_to_json(huge) == Json("123456789012345678901234567890"));
  CHECK(integer_from_json(integer_to_json(huge)) == huge);
  CHECK(integer_from_json(Json("42")) == 42);
  CHECK_THROWS_AS(integer_from_json(Json("4x")), Error);
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), Error);
  CHECK(rational_to_string(Rational(16, 9)) == "16/9");
  CHECK(rational_to_string(Rational(0)) == "0/1");
  CHECK(rational_from_string("-4/6") == Rational(-2, 3));
  CHECK(rational_from_string("5") == Rational(5));
  CHECK_THROWS_AS(rational_from_string("1/0"), Error);
  CHECK_THROWS_AS(rational_from_string(""), Error);
}

TEST_CASE("lattice round trip") {
  const Lattice l(IntMatrix{{2, 3}, {3, 0}});
  const Json j = lattice_to_json(l);
  CHECK(j.dump() == R"({"rank":2,"gram":[[2,3],[3,0]]})");
  CHECK(lattice_from_json(j) == l);
  CHECK(lattice_from_json(lattice_to_json(k3_lattice())) == k3_lattice());
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"rank":3,"gram":[[2,3],[3,0]]})")), Error);
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"gram":[[1,2],[3,4]]})")), Error);
}

TEST_CASE("module round trip") {
  for (const Lattice& l : {Lattice(IntMatrix{{2, 3}, {3, 0}}), Lattice(IntMatrix{{2, 0}, {0, 6}}), hyperbolic_plane(),
                           rank_one(12)}) {
    const auto m = discriminant_module(l);
    const Json j = module_to_json(m);
    CHECK(module_from_json(j) == m);
  }
  const Json j = module_to_json(discriminant_module(Lattice(IntMatrix{{2, 3}, {3, 0}})));
  CHECK(j["factors"] == Json::parse("[9]"));
  CHECK(j["q"][0].get<std::string>().find('/') != std::string::npos);
  const auto odd = discriminant_bilinear_module(rank_one(3));
  CHECK_FALSE(module_to_json(odd).contains("q"));
  CHECK(module_from_json(module_to_json(odd)) == odd);
  CHECK(module_from_json(Json::parse(R"({"factors":["9"],"q":["16/9"],"b":[["7/9"]]})")).order() == 9);
  CHECK_THROWS_AS(module_from_json(Json::parse(R"({"factors":[9],"q":["1/2"],"b":[["1/2"]]})")), Error);
}

TEST_CASE("gram parsing") {
  CHECK(parse_gram("[[2,1],[1,0]]") == IntMatrix{{2, 1}, {1, 0}});
  CHECK(parse_gram("2,1;1,0") == IntMatrix{{2, 1}, {1, 0}});
  CHECK(parse_gram(" 2, 1 ; 1, 0 ") == IntMatrix{{2, 1}, {1, 0}});
  CHECK(parse_gram(R"({"rank":1,"gram":[[4]]})") == IntMatrix{{4}});
  CHECK_THROWS_AS(parse_gram("2,1;1"), Error);
  CHECK_THROWS_AS(parse_gram("a,b"), Error);
  CHECK_THROWS_AS(parse_gram("[[1,2]"), Error);
}

TEST_CASE("family bundle") {
  const Json j = family_to_json(build_family(2, 1, Ambient::K3));
  CHECK(j["n"] == 17);
  CHECK(j["members"].size() == 2);
  CHECK(j["members"][1]["d"] == 4);
  CHECK(j["witnesses"][0]["alpha"] == 2);
  CHECK(j["certificates"].size() == 1);
  CHECK(j["attestations"][0]["rank"] == 20);
  CHECK(j["attestations"][0]["signature"] == Json::parse("[2,18]"));
  CHECK(j["has_degree_polarization"] == true);
  CHECK(lattice_from_json(j["members"][0]["lattice"]).determinant() == -289);
}
