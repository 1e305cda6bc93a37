#include <doctest.h>

#include "lpalg/io.hpp"

using namespace lpalg;

TEST_CASE("group and weight spec parsing") {
    CHECK(parse_group("Z").kind() == GroupKind::IntegerLattice);
    CHECK(parse_group("Z2").dim() == 2);
    CHECK(parse_group("heis").kind() == GroupKind::DiscreteHeisenberg);
    CHECK(parse_group("cyclic:16").cyclic_order() == 16);
    CHECK(parse_group("mesh:0.1").haar_mass() == doctest::Approx(0.1));
    CHECK_THROWS_AS(parse_group("nope"), std::invalid_argument);

    auto z = GroupModel::integer_lattice(1);
    CHECK(parse_weight("poly:K=1,D=2").eval(z, GroupElement{3}) == doctest::Approx(16.0));
    CHECK(parse_weight("subexp:C=1,gamma=0.5").kind() == WeightKind::SubExponential);
    CHECK(parse_weight("exp:C=2").kind() == WeightKind::Exponential);
    auto prod = parse_weight("prod:exp:C=1|poly:K=1,D=2");
    CHECK(prod.kind() == WeightKind::Product);
    CHECK(prod.eval(z, GroupElement{1}) == doctest::Approx(std::exp(1.0) * 4.0));
    CHECK_THROWS_AS(parse_weight("huh:x=1"), std::invalid_argument);
}

TEST_CASE("descriptor JSON shapes") {
    auto j = group_to_json(GroupModel::cyclic(5));
    CHECK(j["kind"] == "cyclic");
    CHECK(j["params"]["cyclic_order"] == 5);
    CHECK(j["generator_list"].size() == 3);  // e, 1, -1

    auto wj = weight_to_json(Weight::sub_exponential(1.0, 0.5));
    CHECK(wj["envelope"]["exact"] == true);
    CHECK(wj["descriptor"] == "subexp:C=1,gamma=0.5");
}

TEST_CASE("CSV output is deterministic") {
    CsvWriter a({"x", "y"});
    a.add_row({1.0 / 3.0, 2.0});
    CsvWriter b({"x", "y"});
    b.add_row({1.0 / 3.0, 2.0});
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 4) == "x,y\n");

    auto z = GroupModel::integer_lattice(1);
    GroupFunction f(z, {{GroupElement{1}, Complex(0.5, -0.25)}});
    auto csv = function_to_csv(f);
    CHECK(csv == "c0,re,im\n1,0.5,-0.25\n");

    auto ball_csv = ball_to_csv(z, 1);
    CHECK(ball_csv == "c0,word_length\n-1,1\n0,1\n1,1\n");
}
