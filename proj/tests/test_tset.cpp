#include <cmath>
#include <stdexcept>

#include "arclab/json_io.hpp"
#include "arclab/t_set.hpp"
#include "arclab/trig_poly.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace arclab;

namespace {

TrigPoly four_arc_u() { return TrigPoly({-2.0 / 7.0, 0.0, 10.0 / 7.0}, {}); }

}  // namespace

TEST_SUITE("tset") {

TEST_CASE("cos 4t fills the whole circle") {
  const TSet t = TSet::build(TrigPoly({0.0, 0.0, 0.0, 0.0, 1.0}, {}));
  CHECK(t.order() == 4);
  CHECK(t.support().is_full_circle());
  CHECK(t.branches().size() == 8);
  CHECK(t.inner_extremals().size() == 8);  // u' = 0 with |u| = 1 at every k pi/4
  for (double x : {0.3, 1.1, 2.9, 4.0, 5.8})
    CHECK(t.density(x) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-12));
}

TEST_CASE("2 cos t - 1 carves out the arc |t| <= pi/2") {
  const TSet t = TSet::build(TrigPoly({-1.0, 2.0}, {}));
  CHECK(t.order() == 1);
  REQUIRE(t.support().size() == 1);
  CHECK(t.support().contains(0.0));
  CHECK(t.support().contains(kPi / 2 - 1e-9));
  CHECK(!t.support().contains(kPi / 2 + 1e-6));
  CHECK(t.branches().size() == 2);
  REQUIRE(t.inner_extremals().size() == 1);  // u hits +1 at t = 0 with u' = 0
  CHECK(t.inner_extremals()[0] == doctest::Approx(0.0).epsilon(1e-12));
  // same set as the degree-1 closed form
  const TSet arc = TSet::single_arc(kPi / 2);
  for (double x : {0.3, 1.2, -1.2})
    CHECK(t.density(wrap_angle(x)) == doctest::Approx(arc.density(wrap_angle(x))).epsilon(1e-11));
}

TEST_CASE("four arcs from a degree-2 generator") {
  const TSet t = TSet::build(four_arc_u());
  CHECK(t.order() == 2);
  CHECK(t.support().size() == 4);
  CHECK(t.branches().size() == 4);
  CHECK(t.inner_extremals().empty());  // both critical values fall outside [-1, 1]
  double len = 0.0;
  for (const Arc& a : t.support().arcs()) len += a.length();
  CHECK(len == doctest::Approx(t.support().total_length()));
}

TEST_CASE("generators that do not produce an inverse-image set are rejected") {
  // critical value -0.7 strictly inside (-1, 1)
  CHECK_THROWS_AS(TSet::build(TrigPoly({0.3, 1.0}, {})), std::invalid_argument);
  // never reaches modulus 1
  CHECK_THROWS_AS(TSet::build(TrigPoly({0.0, 0.5}, {})), std::invalid_argument);
  // touches the level +1 in a single point
  CHECK_THROWS_AS(TSet::build(TrigPoly({3.0, -2.0}, {})), std::invalid_argument);
  // beta outside (0, pi)
  CHECK_THROWS_AS(TSet::single_arc(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TSet::single_arc(kPi), std::invalid_argument);
}

TEST_CASE("single-arc density closed form") {
  // midpoint density of the arc |t| <= beta is 1 / (2 pi sin(beta/2))
  for (double beta : {kPi / 2, 2 * kPi / 3, 0.8}) {
    const TSet t = TSet::single_arc(beta);
    CHECK(t.density(0.0) == doctest::Approx(1.0 / (kTwoPi * std::sin(beta / 2))).epsilon(1e-12));
    CHECK(density_closed_form(t, 0.3 * beta) == doctest::Approx(t.density(0.3 * beta)));
    // symmetric about the midpoint
    CHECK(t.density(wrap_angle(-0.4 * beta)) ==
          doctest::Approx(t.density(0.4 * beta)).epsilon(1e-12));
  }
}

TEST_CASE("density blows up at endpoints and rejects outside angles") {
  const TSet t = TSet::single_arc(kPi / 2);
  CHECK_THROWS_AS(t.density(kPi), std::invalid_argument);   // outside the support
  CHECK_THROWS_AS(t.density(kPi / 2), std::domain_error);   // exactly at an endpoint
  CHECK(t.density(kPi / 2 - 1e-6) > 100.0);                 // large but finite nearby
}

TEST_CASE("density crosses the near-extremal series boundary smoothly") {
  // For u = 2 cos t - 1 the density is cos(t/2) / (pi sqrt(2 cos t)); the
  // series takes over within 0.05 of the extremal point t = 0.
  const TSet t = TSet::build(TrigPoly({-1.0, 2.0}, {}));
  for (double d : {1e-8, 1e-4, 0.01, 0.049, 0.051, 0.2}) {
    const double oracle = std::cos(d / 2) / (kPi * std::sqrt(2.0 * std::cos(d)));
    CHECK(t.density(d) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(t.density(wrap_angle(-d)) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("branch inverses invert and land in their branch") {
  const TSet t = TSet::build(four_arc_u());
  for (std::size_t h = 0; h < t.branches().size(); ++h) {
    double prev = t.branch_inverse(h, -0.999);
    bool increasing = true, decreasing = true;
    for (int j = 0; j <= 40; ++j) {
      const double y = -0.999 + 1.998 * j / 40.0;
      const double x = t.branch_inverse(h, y);
      CHECK(std::abs(t.u()(x) - y) <= 1e-10);
      CHECK(t.branch_index(wrap_angle(x)) == h);
      if (j > 0) {
        increasing = increasing && x >= prev;
        decreasing = decreasing && x <= prev;
        prev = x;
      }
    }
    CHECK((increasing || decreasing));  // u is monotone per branch
  }
}

TEST_CASE("preimages mirror on a symmetric arc") {
  const TSet t = TSet::single_arc(kPi / 2);
  for (double y : {-0.9, -0.2, 0.5, 0.95}) {
    const double a = t.branch_inverse(0, y);
    const double b = t.branch_inverse(1, y);
    CHECK(circle_distance(wrap_angle(a + b), 0.0) <= 1e-9);
  }
}

TEST_CASE("jacobian quotient is one between branches") {
  const TSet t = TSet::build(four_arc_u());
  const Arc b0 = t.branches()[0];
  const double mid = b0.midpoint();
  for (std::size_t h = 1; h < 4; ++h)
    CHECK(branch_jacobian_identity(t, mid, h) == doctest::Approx(1.0).epsilon(1e-10));
  // too close to a branch endpoint is rejected
  CHECK_THROWS_AS(branch_jacobian_identity(t, b0.lo + 1e-10, 1), std::domain_error);
}

TEST_CASE("composition values through the angle variable") {
  const TSet t = TSet::build(four_arc_u());
  SUBCASE("matches the expanded form while that form is still accurate") {
    for (int k : {1, 2, 4, 6}) {
      const TrigPoly tk = cheb_compose(k, t.u());
      const TrigPoly dtk = tk.derivative();
      for (const Arc& a : t.support().arcs())
        for (int j = 1; j < 8; ++j) {
          const double x = a.lo + a.length() * j / 8.0;
          CHECK(chebyshev_value(t, k, x) == doctest::Approx(tk(x)).epsilon(1e-9));
          CHECK(chebyshev_derivative(t, k, x) == doctest::Approx(dtk(x)).epsilon(1e-8));
        }
    }
  }
  SUBCASE("stays bounded by one at degrees where the expanded form is useless") {
    for (const Arc& a : t.support().arcs())
      for (int j = 0; j <= 50; ++j) {
        const double x = a.lo + a.length() * j / 50.0;
        CHECK(std::abs(chebyshev_value(t, 40, x)) <= 1.0 + 1e-12);
      }
  }
  SUBCASE("derivative agrees with a difference quotient") {
    for (int k : {5, 17, 40})
      for (const Arc& a : t.support().arcs()) {
        const double x = a.lo + 0.37 * a.length();
        const double h = 1e-7;
        const double fd = (chebyshev_value(t, k, x + h) - chebyshev_value(t, k, x - h)) / (2 * h);
        CHECK(chebyshev_derivative(t, k, x) == doctest::Approx(fd).epsilon(1e-5));
      }
  }
  SUBCASE("rejects angles off the support and negative indices") {
    const TSet arc = TSet::single_arc(kPi / 2);
    CHECK_THROWS_AS(chebyshev_value(arc, 5, kPi), std::domain_error);
    CHECK_THROWS_AS(chebyshev_derivative(arc, 5, kPi), std::domain_error);
    CHECK_THROWS_AS(chebyshev_value(arc, -1, 0.0), std::invalid_argument);
  }
}

TEST_CASE("json description carries the derived structure") {
  const TSet t = TSet::build(four_arc_u());
  const nlohmann::json j = nlohmann::json::parse(t_set_to_json(t));
  CHECK(j.at("N").get<int>() == 2);
  CHECK(j.at("support").size() == 4);
  CHECK(j.at("branches").size() == 4);
  CHECK(j.at("cos").size() == 3);
  CHECK(j.at("extremals").empty());
}

}  // TEST_SUITE
