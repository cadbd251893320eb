#include "minsurf/checks.hpp"
#include "minsurf/catalog.hpp"

#include <doctest.h>

using namespace minsurf;

TEST_CASE("report bookkeeping")
{
    CheckReport r;
    r.add("a", 1.0, 2.0);
    r.add("b", 3.0, 2.0);
    CHECK_FALSE(r.passed());
    CHECK(r.first_failure() == std::optional<std::string>("b"));
    REQUIRE(r.find("a") != nullptr);
    CHECK(r.find("a")->pass);
    CHECK(r.find("missing") == nullptr);

    CheckReport other;
    other.require("c", true);
    r.merge(other, "x: ");
    CHECK(r.find("x: c") != nullptr);
    CHECK(r.to_json().at("checks").size() == 3);
}

TEST_CASE("convergence pairs checks by name")
{
    CheckReport coarse, fine;
    coarse.add("first order", 0.1, 1.0, true);
    fine.add("first order", 0.05, 1.0, true);
    coarse.add("second order", 0.1, 1.0, true);
    fine.add("second order", 0.025, 1.0, true);
    coarse.add("exact", 0.0, 1.0);
    fine.add("exact", 0.0, 1.0);
    const CheckReport c = with_convergence(coarse, fine, 3.0);
    REQUIRE(c.convergence.size() == 3);
    CHECK_FALSE(c.convergence[0].pass);
    CHECK(c.convergence[1].pass);
    CHECK(c.convergence[1].ratio == doctest::Approx(4.0));
    CHECK(c.convergence[2].pass);
    CHECK(c.find("h/2: exact") != nullptr);
    CHECK_FALSE(c.passed());
}

TEST_CASE("run configuration validation")
{
    RunConfig cfg;
    cfg.validate();
    cfg.order = 3;
    CHECK_THROWS_AS(cfg.validate(), GeometryError);
    cfg = RunConfig{};
    cfg.C = -1.0;
    CHECK_THROWS_AS(cfg.validate(), GeometryError);
}

TEST_CASE("documents of catalog surfaces pass their checks")
{
    RunConfig cfg;
    cfg.grid = 48;
    const S3Surface s = conformalize_lawson(2, 1, 48, 48);
    const CheckReport r3 = check_document(s3_to_json(s), cfg);
    CHECK(r3.passed());
    const CheckReport r6 = check_document(surface_to_json(adapted_bipolar(s)), cfg);
    CHECK(r6.passed());
}

TEST_CASE("a corrupted surface fails its checks")
{
    RunConfig cfg;
    SampledSurface f = adapted_bipolar(conformalize_lawson(2, 1, 48, 48));
    f.values[100] *= 1.01;
    const CheckReport r = check_document(surface_to_json(f), cfg);
    CHECK_FALSE(r.passed());
    f.values[100].normalize();
    f.values[100] = -f.values[100];
    const CheckReport flipped = check_document(surface_to_json(f), cfg);
    CHECK_FALSE(flipped.passed());
    CHECK(flipped.details.contains("frame_error"));
}

TEST_CASE("frame reconstruction of the Lawson bipolar")
{
    RunConfig cfg;
    const CheckReport r = reconstruction_suite(adapted_bipolar(conformalize_lawson(2, 1, 64, 64)), cfg);
    CHECK(r.passed());
}
