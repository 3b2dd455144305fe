#include <cmath>
#include <stdexcept>

#include "arclab/arc_set.hpp"
#include "arclab/equilibrium.hpp"
#include "arclab/harness.hpp"
#include "arclab/json_io.hpp"
#include "arclab/t_set.hpp"
#include "doctest.h"

using namespace arclab;

TEST_SUITE("arcsets") {

TEST_CASE("angle helpers") {
  CHECK(wrap_angle(kTwoPi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-kPi / 4) == doctest::Approx(7 * kPi / 4));
  CHECK(wrap_angle(5 * kPi) == doctest::Approx(kPi));
  CHECK(circle_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(circle_distance(1.0, 1.0 + kPi) == doctest::Approx(kPi));
  CHECK(circle_distance(2.0, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("an interval crossing zero is stored as one wrapped arc") {
  const ArcSet x = ArcSet::interval(-0.5, 0.5);
  REQUIRE(x.size() == 1);
  const Arc a = x.arcs().front();
  CHECK(a.lo == doctest::Approx(kTwoPi - 0.5));
  CHECK(a.hi == doctest::Approx(kTwoPi + 0.5));
  CHECK(x.contains(0.0));
  CHECK(x.contains(0.4));
  CHECK(x.contains(kTwoPi - 0.4));
  CHECK(!x.contains(0.6));
  CHECK(!x.contains(kPi));
  CHECK(x.endpoint_distance(0.0) == doctest::Approx(0.5));
  CHECK(x.arc_index(0.2) == 0);
  CHECK(x.arc_index(1.0) == ArcSet::npos);
}

TEST_CASE("full circle") {
  const ArcSet c = ArcSet::full_circle();
  CHECK(c.is_full_circle());
  CHECK(c.total_length() == doctest::Approx(kTwoPi));
  CHECK(c.contains(0.0));
  CHECK(c.contains(3.7));
  CHECK(c.endpoints().empty());
  CHECK(c.endpoint_distance(1.0) > 1e9);
}

TEST_CASE("covers distinguishes subsets from overhangs") {
  const ArcSet x = ArcSet::interval(1.0, 2.0);
  CHECK(x.covers(Arc{1.2, 1.8}));
  CHECK(x.covers(Arc{1.0, 2.0}));
  CHECK(!x.covers(Arc{0.9, 1.5}));
  CHECK(!x.covers(Arc{1.5, 2.5}));
  CHECK(ArcSet::full_circle().covers(Arc{0.0, 6.0}));
}

TEST_CASE("arcs are sorted and must stay disjoint") {
  const ArcSet x({Arc{3.0, 4.0}, Arc{0.5, 1.5}});
  CHECK(x.arcs().front().lo == doctest::Approx(0.5));
  CHECK(x.arcs().back().lo == doctest::Approx(3.0));
  CHECK_THROWS_AS(ArcSet({Arc{0.0, 2.0}, Arc{1.0, 3.0}}), std::invalid_argument);
}

TEST_CASE("exponent bundle validation") {
  ParamSet ps = ParamSet::defaults(0.5);
  CHECK_NOTHROW(ps.validate());
  CHECK(ps.theta < 0.5);
  CHECK(ps.theta > 4 * ps.kappa);
  CHECK(ps.gamma < ps.kappa / 2);

  ParamSet bad = ps;
  bad.theta = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ps;
  bad.kappa = bad.theta / 4 + 0.01;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ps;
  bad.gamma = bad.kappa;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  // the coupling (1 - 2 theta) p >= gamma, tight up to rounding
  ParamSet tight = ParamSet::defaults(0.5);
  tight.theta = 0.45;
  tight.kappa = 0.11;
  tight.gamma = 0.05;
  CHECK_NOTHROW(tight.validate());  // (1 - 0.9) * 0.5 == 0.05 exactly, modulo one ulp
  tight.p = 0.4;
  CHECK_THROWS_AS(tight.validate(), std::invalid_argument);  // 0.04 < 0.05
}

TEST_CASE("partition into small cells") {
  SUBCASE("full circle, default kappa") {
    const SmallPartition part = partition_small(ArcSet::full_circle(), 32, 1.0 / 32.0);
    CHECK(part.cells.size() == 8);  // ceil(2 pi * 32^{1/32}) = 8
    const double nk = std::pow(32.0, 1.0 / 32.0);
    for (const Arc& c : part.cells) {
      CHECK(c.length() >= 1.0 / (2.0 * nk) - 1e-12);
      CHECK(c.length() <= 1.0 / nk + 1e-12);
    }
    CHECK(part.component_size.size() == 1);
    CHECK(part.component_size[0] == 8);
  }
  SUBCASE("four components get cells of their own") {
    const TSet t = TSet::build(TrigPoly({-2.0 / 7.0, 0.0, 10.0 / 7.0}, {}));
    const SmallPartition part = partition_small(t.support(), 32, 0.11);
    CHECK(part.component_size.size() == 4);
    for (std::size_t comp : part.component_of) CHECK(comp < 4);
    std::size_t total = 0;
    for (std::size_t s : part.component_size) total += s;
    CHECK(total == part.cells.size());
  }
  SUBCASE("components shorter than one cell are rejected") {
    CHECK_THROWS_AS(partition_small(ArcSet::interval(0.0, 0.5), 32, 1.0 / 32.0),
                    std::invalid_argument);
  }
}

TEST_CASE("blocks carry their bordering cells") {
  SUBCASE("interior cell of the circle has two borders") {
    const SmallPartition part = partition_small(ArcSet::full_circle(), 32, 1.0 / 32.0);
    const Block blk = make_block(part, 2, 1);
    CHECK(blk.cell_indices.size() == 1);
    CHECK(blk.border.size() == 2);
    CHECK(blk.h.length() == doctest::Approx(part.cells[2].length()));
  }
  SUBCASE("the circle wraps cyclically") {
    const SmallPartition part = partition_small(ArcSet::full_circle(), 32, 1.0 / 32.0);
    const Block blk = make_block(part, 0, 1);
    CHECK(blk.border.size() == 2);  // cell 7 wraps around to border cell 0
  }
  SUBCASE("a component edge loses one border") {
    const TSet t = TSet::build(TrigPoly({-2.0 / 7.0, 0.0, 10.0 / 7.0}, {}));
    const SmallPartition part = partition_small(t.support(), 32, 0.11);
    REQUIRE(part.component_size[0] == 2);
    CHECK(make_block(part, 0, 1).border.size() == 1);
    CHECK(make_block(part, 1, 1).border.size() == 1);
    CHECK(make_block(part, 0, 2).border.empty());  // the whole component
  }
  SUBCASE("runs must stay inside one component") {
    const TSet t = TSet::build(TrigPoly({-2.0 / 7.0, 0.0, 10.0 / 7.0}, {}));
    const SmallPartition part = partition_small(t.support(), 32, 0.11);
    CHECK_THROWS_AS(make_block(part, 1, 2), std::invalid_argument);
  }
}

TEST_CASE("block properties of a random polynomial") {
  const TSet t = TSet::build(TrigPoly({-2.0 / 7.0, 0.0, 10.0 / 7.0}, {}));
  ParamSet ps = ParamSet::defaults(0.5);
  ps.theta = 0.45;
  ps.kappa = 0.11;
  ps.gamma = 0.05;
  const DensityModel dens = DensityModel::closed_form(t);
  const SmallPartition part = partition_small(t.support(), 32, ps.kappa);
  const Block blk = make_block(part, 0, 1);
  const TrigPoly tn = random_trigpoly(32, 17);
  const BlockProperties props = block_properties(t, tn, blk, ps, dens);
  CHECK(props.inside_branch);
  CHECK(props.a_border >= 0.0);
  CHECK(props.b_border >= 0.0);
  const double bound = 4.0 * std::pow(32.0, ps.gamma - ps.kappa);
  CHECK(props.h_short == (blk.h.length() <= bound));
  CHECK(props.a_small == (props.a_border <= std::pow(32.0, -ps.gamma)));
  CHECK(props.b_small == (props.b_border <= std::pow(32.0, -ps.gamma)));
}

TEST_CASE("json round trip, wrapped arc included") {
  const ArcSet x({Arc{5.9, kTwoPi + 0.7}, Arc{1.0, 2.0}});
  const ArcSet back = arc_set_from_json(arc_set_to_json(x));
  REQUIRE(back.size() == 2);
  CHECK(back.arcs()[0].lo == doctest::Approx(1.0));
  CHECK(back.arcs()[1].lo == doctest::Approx(5.9));
  CHECK(back.arcs()[1].hi == doctest::Approx(kTwoPi + 0.7));
  CHECK(arc_set_from_json(arc_set_to_json(ArcSet::full_circle())).is_full_circle());
}

}  // TEST_SUITE
