#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "tscmon/eval.hpp"
#include "tscmon/trace_io.hpp"
#include "tscmon/world.hpp"

using namespace tscmon;

namespace {

ObjectState obj(std::string role, double x, double y, double yaw, double v, double length, double width) {
    return ObjectState{std::move(role), x, y, yaw, v, length, width};
}

ObjectState random_obj(std::mt19937_64& rng, std::string role) {
    std::uniform_real_distribution<double> pos(-500.0, 500.0);
    std::uniform_real_distribution<double> small(0.1, 20.0);
    return obj(std::move(role), pos(rng), pos(rng) / 50.0, pos(rng) / 200.0, small(rng), small(rng), small(rng));
}

const RoadGeometry kRoad{2, 3.5, 500.0};

} // namespace

TEST_CASE("lon_gap matches the bumper-to-bumper definition") {
    ObjectState a = obj("a", 0.0, 0.0, 0.0, 0.0, 4.0, 2.0);
    ObjectState b = obj("b", 10.0, 0.0, 0.0, 0.0, 2.0, 2.0);
    CHECK(lon_gap(a, b) == 7.0); // (10 - 1) - (0 + 2)

    ObjectState c = obj("c", 3.0, 0.0, 0.0, 0.0, 4.0, 2.0);
    CHECK(lon_gap(a, c) == -1.0); // overlap

    CHECK(lon_gap(a, a) == -4.0); // degenerate: -length
}

TEST_CASE("lon_gap antisymmetry identity") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        ObjectState a = random_obj(rng, "a");
        ObjectState b = random_obj(rng, "b");
        CHECK(lon_gap(a, b) + lon_gap(b, a) == doctest::Approx(-(a.length + b.length)).epsilon(1e-12));
    }
}

TEST_CASE("lane_index by object center") {
    ObjectState o = obj("car", 0.0, 1.75, 0.0, 0.0, 4.0, 2.0);
    CHECK(lane_index(o, kRoad) == 0.0);

    o.y = 5.0;
    CHECK(lane_index(o, kRoad) == 1.0);

    o.y = -0.1;
    CHECK(!lane_index(o, kRoad).has_value());

    o.y = 7.0; // boundary: lane interval is half-open
    CHECK(!lane_index(o, kRoad).has_value());

    o.y = 3.5;
    CHECK(lane_index(o, kRoad) == 1.0);

    o.y = 0.0;
    CHECK(lane_index(o, kRoad) == 0.0);
}

TEST_CASE("lane_index ignores x, yaw and v") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lat(-1.0, 8.0);
    for (int i = 0; i < 500; ++i) {
        ObjectState o = random_obj(rng, "car");
        o.y = lat(rng);
        auto base = lane_index(o, kRoad);
        ObjectState moved = o;
        moved.x += 123.0;
        moved.yaw = 1.0;
        moved.v = 33.0;
        CHECK(lane_index(moved, kRoad) == base);
    }
}

TEST_CASE("eval_expr arithmetic and builtins") {
    WorldSample sample;
    sample.t = 1.0;
    sample.objects.push_back(obj("car", 0.0, 1.75, 0.1, 10.0, 4.5, 2.0));
    sample.objects.push_back(obj("obstacle", 30.0, 1.75, 0.0, 0.0, 1.0, 1.0));

    Expr safe = Expr::binary(ExprKind::Mul, Expr::num(2.0), Expr::attr("car", "v"));
    auto r = eval_expr(safe, sample, kRoad);
    REQUIRE(r.status == EvalStatus::Ok);
    CHECK(r.value == 20.0);

    Expr absneg = Expr::call("abs", {Expr::neg(Expr::num(3.0))});
    r = eval_expr(absneg, sample, kRoad);
    REQUIRE(r.status == EvalStatus::Ok);
    CHECK(r.value == 3.0);

    Expr div0 = Expr::binary(ExprKind::Div, Expr::attr("car", "v"), Expr::num(0.0));
    CHECK(eval_expr(div0, sample, kRoad).status == EvalStatus::DivisionByZero);

    Expr missing = Expr::attr("truck", "v");
    CHECK(eval_expr(missing, sample, kRoad).status == EvalStatus::UnknownRole);

    Expr gap = Expr::call("lon_gap", {Expr::role_ref("car"), Expr::role_ref("obstacle")});
    r = eval_expr(gap, sample, kRoad);
    REQUIRE(r.status == EvalStatus::Ok);
    CHECK(r.value == 27.25); // (30 - 0.5) - (0 + 2.25)

    Expr lane = Expr::call("lane_index", {Expr::role_ref("car")});
    r = eval_expr(lane, sample, kRoad);
    REQUIRE(r.status == EvalStatus::Ok);
    CHECK(r.value == 0.0);

    Expr lat = Expr::call("lat_pos", {Expr::role_ref("car")});
    CHECK(eval_expr(lat, sample, kRoad).value == 1.75);

    // off-road marker propagates as a soft failure
    sample.objects[0].y = -2.0;
    CHECK(eval_expr(lane, sample, kRoad).status == EvalStatus::OffRoad);

    // overflow surfaces as NonFinite
    Expr huge = Expr::binary(ExprKind::Mul, Expr::num(1e308), Expr::num(1e308));
    CHECK(eval_expr(huge, sample, kRoad).status == EvalStatus::NonFinite);
}

TEST_CASE("eval_constraint truth and soft semantics") {
    WorldSample sample;
    sample.objects.push_back(obj("car", 0.0, 1.75, 0.0, 10.0, 4.5, 2.0));

    Constraint c;
    c.lhs = Expr::attr("car", "v");
    c.op = RelOp::Gt;
    c.rhs = Expr::num(5.0);
    auto r = eval_constraint(c, sample, kRoad);
    CHECK(r.status == EvalStatus::Ok);
    CHECK(r.satisfied);

    c.rhs = Expr::num(10.0); // strict comparison, no epsilon
    r = eval_constraint(c, sample, kRoad);
    CHECK(r.status == EvalStatus::Ok);
    CHECK(!r.satisfied);

    c.op = RelOp::Ge;
    CHECK(eval_constraint(c, sample, kRoad).satisfied);

    c.lhs = Expr::attr("ghost", "v");
    CHECK(eval_constraint(c, sample, kRoad).status == EvalStatus::UnknownRole);
}

TEST_CASE("trace reader accepts well-formed streams") {
    std::istringstream in(
        "{\"road\": {\"lanes\": 2, \"lane_width\": 3.5, \"length\": 500.0}}\n"
        "{\"t\": 0.0, \"objects\": [{\"role\": \"car\", \"x\": 1.0, \"y\": 1.75, \"yaw\": 0.0, \"v\": 10.0, \"length\": 4.5, \"width\": 2.0}]}\n"
        "\n"
        "{\"t\": 0.1, \"objects\": []}\n");
    TraceReader reader(in);
    CHECK(reader.road().lane_count == 2);
    CHECK(reader.road().lane_width == 3.5);

    auto s0 = reader.next();
    REQUIRE(s0.has_value());
    CHECK(s0->t == 0.0);
    REQUIRE(s0->objects.size() == 1);
    CHECK(s0->objects[0].role == "car");
    CHECK(s0->objects[0].v == 10.0);

    auto s1 = reader.next();
    REQUIRE(s1.has_value());
    CHECK(s1->t == 0.1);
    CHECK(s1->objects.empty());

    CHECK(!reader.next().has_value());
}

namespace {

std::string header_line = "{\"road\": {\"lanes\": 2, \"lane_width\": 3.5, \"length\": 500.0}}\n";

std::string sample_line(const std::string& t, const std::string& v = "10.0") {
    return "{\"t\": " + t +
           ", \"objects\": [{\"role\": \"car\", \"x\": 1.0, \"y\": 1.75, \"yaw\": 0.0, \"v\": " + v +
           ", \"length\": 4.5, \"width\": 2.0}]}\n";
}

void expect_ingest_error(const std::string& text, const std::string& fragment) {
    std::istringstream in(text);
    bool threw = false;
    try {
        TraceReader reader(in);
        while (reader.next()) {
        }
    } catch (const IngestError& e) {
        threw = true;
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
    CHECK(threw);
}

} // namespace

TEST_CASE("trace reader rejects malformed streams") {
    expect_ingest_error(sample_line("0.0"), "missing road header");
    expect_ingest_error(header_line + sample_line("0.0") + sample_line("0.0"), "non-increasing timestamp");
    expect_ingest_error(header_line + sample_line("0.0") + sample_line("-1.0"), "non-increasing timestamp");
    expect_ingest_error(header_line + sample_line("0.0", "NaN"), "non-finite");
    expect_ingest_error(header_line + sample_line("0.0", "-1.0"), "negative speed");
    expect_ingest_error(header_line + "{\"t\": 0.0}\n", "incomplete sample record");
    expect_ingest_error(header_line + "{\"t\": 0.0, \"objects\": [{\"role\": \"car\"}]}\n",
                        "incomplete object record");
    expect_ingest_error(header_line + "{\"t\": 0.0, \"objects\": [}\n", "expected");
    expect_ingest_error("{\"road\": {\"lanes\": 0, \"lane_width\": 3.5, \"length\": 1.0}}\n",
                        "'lanes' must be a positive integer");

    // duplicate role within one sample
    std::string dup = header_line +
                      "{\"t\": 0.0, \"objects\": ["
                      "{\"role\": \"car\", \"x\": 0, \"y\": 0, \"yaw\": 0, \"v\": 0, \"length\": 1, \"width\": 1},"
                      "{\"role\": \"car\", \"x\": 5, \"y\": 0, \"yaw\": 0, \"v\": 0, \"length\": 1, \"width\": 1}]}\n";
    expect_ingest_error(dup, "duplicate role");
}

TEST_CASE("field order does not matter") {
    std::string text = "{\"road\": {\"length\": 500.0, \"lanes\": 2, \"lane_width\": 3.5}}\n"
                       "{\"objects\": [{\"width\": 2.0, \"v\": 10.0, \"role\": \"car\", \"length\": 4.5, "
                       "\"yaw\": 0.0, \"x\": 1.0, \"y\": 1.75}], \"t\": 0.25}\n";
    std::istringstream in(text);
    TraceReader reader(in);
    CHECK(reader.road().lane_count == 2);
    auto s = reader.next();
    REQUIRE(s.has_value());
    CHECK(s->t == 0.25);
    CHECK(s->objects[0].role == "car");
    CHECK(s->objects[0].length == 4.5);
}

TEST_CASE("strict mode rejects unknown fields, lenient skips them") {
    std::string text = header_line +
                       "{\"t\": 0.0, \"objects\": [{\"role\": \"car\", \"x\": 1.0, \"y\": 1.75, "
                       "\"yaw\": 0.0, \"v\": 10.0, \"length\": 4.5, \"width\": 2.0, "
                       "\"color\": \"red\"}]}\n";
    expect_ingest_error(text, "unknown field 'color'");

    std::istringstream in(text);
    TraceReader lenient(in, /*strict=*/false);
    auto s = lenient.next();
    REQUIRE(s.has_value());
    CHECK(s->objects[0].v == 10.0);
}

TEST_CASE("ingest error reports the offending line") {
    std::istringstream in(header_line + sample_line("0.0") + "garbage\n");
    TraceReader reader(in);
    reader.next();
    try {
        reader.next();
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("write/read round-trip preserves samples exactly") {
    std::mt19937_64 rng(99);
    RoadGeometry road{3, 3.25, 750.0};
    std::vector<WorldSample> samples;
    double t = 0.0;
    std::uniform_real_distribution<double> step(0.01, 2.0);
    for (int k = 0; k < 50; ++k) {
        t += step(rng);
        WorldSample s;
        s.t = t;
        s.objects.push_back(random_obj(rng, "car"));
        if (k % 3 == 0) s.objects.push_back(random_obj(rng, "obstacle"));
        samples.push_back(std::move(s));
    }

    std::ostringstream out;
    write_trace(out, road, samples);
    std::istringstream in(out.str());
    TraceReader reader(in);
    CHECK(reader.road().lane_count == road.lane_count);
    CHECK(reader.road().lane_width == road.lane_width);
    CHECK(reader.road().length == road.length);

    for (const auto& expected : samples) {
        auto got = reader.next();
        REQUIRE(got.has_value());
        CHECK(got->t == expected.t);
        REQUIRE(got->objects.size() == expected.objects.size());
        for (std::size_t i = 0; i < expected.objects.size(); ++i) {
            CHECK(got->objects[i].role == expected.objects[i].role);
            CHECK(got->objects[i].x == expected.objects[i].x);
            CHECK(got->objects[i].y == expected.objects[i].y);
            CHECK(got->objects[i].yaw == expected.objects[i].yaw);
            CHECK(got->objects[i].v == expected.objects[i].v);
            CHECK(got->objects[i].length == expected.objects[i].length);
            CHECK(got->objects[i].width == expected.objects[i].width);
        }
    }
    CHECK(!reader.next().has_value());
}

TEST_CASE("escaped role strings survive the round trip") {
    RoadGeometry road;
    WorldSample s;
    s.t = 0.5;
    s.objects.push_back(obj("we\"ird\\role", 1.0, 1.0, 0.0, 1.0, 1.0, 1.0));
    std::ostringstream out;
    write_trace(out, road, {&s, 1});
    std::istringstream in(out.str());
    TraceReader reader(in);
    auto got = reader.next();
    REQUIRE(got.has_value());
    CHECK(got->objects[0].role == "we\"ird\\role");
}
