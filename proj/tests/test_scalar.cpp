#include <doctest.h>

#include "erpg2/scalar.hpp"

#include <random>

using namespace erpg2;

namespace {

std::mt19937_64 rng(20240811);

Exact random_exact(int spread = 9, int maxden = 12) {
  std::uniform_int_distribution<int> num(-spread, spread);
  std::uniform_int_distribution<int> den(1, maxden);
  std::array<Rat, 8> c;
  for (auto& q : c) q = Rat(num(rng), den(rng));
  return Exact(c);
}

} // namespace

TEST_CASE("surd parsing of the catalog literal shapes") {
  Exact a = parse_surd("-1/6");
  CHECK(a.coord(0) == Rat(-1, 6));
  for (int i = 1; i < 8; ++i) CHECK(a.coord(i) == 0);

  CHECK(parse_surd("0").is_zero());

  Exact c = parse_surd("(-10-sqrt(30))/60");
  CHECK(c.coord(0) == Rat(-1, 6));
  CHECK(c.coord(7) == Rat(-1, 60));
  for (int i = 1; i < 7; ++i) CHECK(c.coord(i) == 0);

  CHECK(parse_surd("sqrt(2)/6") == parse_surd("1/6*sqrt(2)"));
  CHECK(parse_surd("2sqrt(3)") == parse_surd("2*sqrt(3)"));
  CHECK(parse_surd("sqrt(8)") == parse_surd("2*sqrt(2)")); // square part extracted
  CHECK(parse_surd("sqrt(9)") == Exact(3));
  CHECK(parse_surd("1+sqrt(6)-sqrt(6)") == Exact(1));
}

TEST_CASE("surd parser rejects bad input with position info") {
  CHECK_THROWS_AS(parse_surd("sqrt(7)"), ScalarError);  // square-free part 7
  CHECK_THROWS_AS(parse_surd("sqrt(14)"), ScalarError);
  CHECK_THROWS_AS(parse_surd("1/0"), ScalarError);
  CHECK_THROWS_AS(parse_surd("1+"), ScalarError);
  CHECK_THROWS_AS(parse_surd("(1+2"), ScalarError);
  CHECK_THROWS_AS(parse_surd("1 2"), ScalarError);
  CHECK_THROWS_AS(parse_surd(""), ScalarError);
  try {
    parse_surd("1+sqrt(7)");
  } catch (const ScalarError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("basis products close in the field") {
  Exact s2 = parse_surd("sqrt(2)"), s3 = parse_surd("sqrt(3)"), s6 = parse_surd("sqrt(6)");
  CHECK(s2 * s3 == s6);
  CHECK(parse_surd("sqrt(6)") * parse_surd("sqrt(10)") == parse_surd("2*sqrt(15)"));
  CHECK(parse_surd("sqrt(30)") * parse_surd("sqrt(30)") == Exact(30));
  Exact one(1);
  CHECK((one + s2) * (one - s2) == Exact(-1));
}

TEST_CASE("division solves the multiplication system") {
  // hand oracle: (5 - sqrt(30))(5 + sqrt(30)) = -5
  Exact lhs = Exact(1) / (Exact(5) - parse_surd("sqrt(30)"));
  Exact expect = -(Exact(5) + parse_surd("sqrt(30)")) / Exact(5);
  CHECK(lhs == expect);
  CHECK_THROWS_AS(Exact(1) / Exact(0), ScalarError);
}

TEST_CASE("field axioms on random triples") {
  for (int it = 0; it < 300; ++it) {
    Exact x = random_exact(), y = random_exact(), z = random_exact();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    if (!x.is_zero()) {
      CHECK(x * (Exact(1) / x) == Exact(1));
      CHECK((y / x) * x == y);
    }
  }
}

TEST_CASE("to_double is accurate under cancellation") {
  CHECK(Exact::rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // high precision reference: sqrt(30)/30 = 0.18257418583505537...
  CHECK(parse_surd("sqrt(30)/30").to_double() ==
        doctest::Approx(0.18257418583505537).epsilon(1e-15));
  CHECK(Exact(0).to_double() == 0.0);
  // 1 - (99/70) sqrt(2)/sqrt(2)... cancellation: 99/70 - sqrt(2) ~ 7.2e-5
  double v = (Exact::rational(99, 70) - parse_surd("sqrt(2)")).to_double();
  CHECK(v == doctest::Approx(99.0 / 70.0 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("to_double is a ring homomorphism up to 1e-12 relative") {
  for (int it = 0; it < 300; ++it) {
    Exact x = random_exact(), y = random_exact();
    double xs = x.to_double(), ys = y.to_double();
    double sum = (x + y).to_double(), prod = (x * y).to_double();
    CHECK(std::fabs(sum - (xs + ys)) <= 1e-12 * (1 + std::fabs(sum)));
    CHECK(std::fabs(prod - xs * ys) <= 1e-12 * (1 + std::fabs(prod)));
  }
}

TEST_CASE("printing round-trips bit-exactly") {
  for (int it = 0; it < 300; ++it) {
    Exact x = random_exact();
    CHECK(parse_surd(x.str()) == x);
  }
  CHECK(parse_surd(Exact(0).str()) == Exact(0));
  CHECK(Exact(0).str() == "0");
}

TEST_CASE("exact sign separates tiny values") {
  CHECK(Exact(0).sign() == 0);
  CHECK(parse_surd("sqrt(2)-1").sign() == 1);
  // 99/70 > sqrt(2), margin ~7e-5
  CHECK((Exact::rational(99, 70) - parse_surd("sqrt(2)")).sign() == 1);
  // 1393/985 < sqrt(2), margin ~3.6e-7
  CHECK((Exact::rational(1393, 985) - parse_surd("sqrt(2)")).sign() == -1);
  CHECK((parse_surd("sqrt(6)") - parse_surd("sqrt(2)") * parse_surd("sqrt(3)")).sign() == 0);
}
