#include <doctest.h>

#include "lyorad/validation.h"

using namespace lyorad;

TEST_CASE("criteria catalogue") {
    const auto all = validation_criteria();
    REQUIRE(all.size() == 13);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].id == static_cast<int>(i) + 1);
}

TEST_CASE("filter selects by id or name") {
    ValidationOptions o;
    o.filter = "1";
    auto r = run_validation_suite(o);
    REQUIRE(r.size() == 1);
    CHECK(r[0].name == "analytical_view_factors");
    CHECK(r[0].pass());
    o.filter = "no_radiation";
    r = run_validation_suite(o);
    REQUIRE(r.size() == 1);
    CHECK(r[0].id == 3);
    o.filter = "nothing_matches";
    CHECK(run_validation_suite(o).empty());
}

TEST_CASE("a 10% larger latent heat breaks the drying-time criteria") {
    ValidationOptions o;
    o.filter = "3";
    o.material.dh_sub *= 1.1;
    const auto r = run_validation_suite(o);
    REQUIRE(r.size() == 1);
    CHECK_FALSE(r[0].pass());
    CHECK_FALSE(r[0].checks[0].pass);
}

TEST_CASE("Monte Carlo criterion holds for another seed") {
    ValidationOptions o;
    o.filter = "2";
    o.seed = 987654321;
    const auto r = run_validation_suite(o);
    REQUIRE(r.size() == 1);
    CHECK(r[0].pass());
}
