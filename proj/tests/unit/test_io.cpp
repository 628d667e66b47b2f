#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wlpdisc/io.hpp"

using namespace wlpdisc;

TEST(PointSetFormat, RoundTripIsBitExact) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(60);
  for (auto& v : x) v = u(gen);
  const PointSet pts(3, x);
  EXPECT_EQ(parse_point_set(write_point_set(pts)), pts);
}

TEST(PointSetFormat, Examples) {
  EXPECT_EQ(parse_point_set("1 1\n0.5\n"), PointSet(1, {0.5}));
  EXPECT_EQ(parse_point_set("2 0\n"), PointSet::empty(2));
  EXPECT_EQ(write_point_set(PointSet(2, {0.25, 0.5})), "2 1\n0.25 0.5\n");
}

TEST(PointSetFormat, Malformed) {
  EXPECT_THROW((void)parse_point_set(""), ParseError);
  EXPECT_THROW((void)parse_point_set("1\n0.5\n"), ParseError);
  EXPECT_THROW((void)parse_point_set("1 2\n0.5\n"), ParseError);
  EXPECT_THROW((void)parse_point_set("2 1\n0.5\n"), ParseError);
  EXPECT_THROW((void)parse_point_set("1 1\nabc\n"), ParseError);
  EXPECT_THROW((void)parse_point_set("2 1\n0.5  0.5\n"), ParseError);
  EXPECT_THROW((void)parse_point_set("1 1\n1.0\n"), DomainError);
}

TEST(WeightSpec, Parse) {
  const auto e = parse_weight_spec(R"({"type":"explicit","values":[1.0, 0.5]})");
  EXPECT_EQ(e.materialize(2), (std::vector<double>{1.0, 0.5}));
  const auto f = parse_weight_spec(R"({"type":"family","name":"polynomial","a":2.0})");
  EXPECT_DOUBLE_EQ(f.materialize(2)[1], 0.25);
  EXPECT_DOUBLE_EQ(parse_weight_spec(R"({"type":"family","name":"inverse-sqrt-log","c_hat":0.5})").raw(1),
                   0.5 / std::sqrt(std::log(2.0)));
  EXPECT_THROW((void)parse_weight_spec(R"({"type":"family","name":"polynomial","theta":2.0})"), ParseError);
  EXPECT_THROW((void)parse_weight_spec(R"({"type":"family","name":"cubic","a":2.0})"), ParseError);
  EXPECT_THROW((void)parse_weight_spec(R"({"type":"explicit"})"), ParseError);
  EXPECT_THROW((void)parse_weight_spec(R"({"type":)"), ParseError);
  EXPECT_THROW((void)parse_weight_spec("/nonexistent/weights.json"), ParseError);
}

TEST(WeightSpec, JsonRoundTrip) {
  for (const auto& w : {WeightSequence::geometric(0.3), WeightSequence::explicit_values({0.1, 0.2})}) {
    const auto back = weights_from_json(Json::parse(dump(to_json(w))));
    EXPECT_EQ(back.is_explicit(), w.is_explicit());
    EXPECT_EQ(back.materialize(2), w.materialize(2));
  }
}

TEST(Json, SeventeenDigits) {
  Json j;
  j["x"] = 0.1;
  j["inf"] = kInfinity;
  j["n"] = 3;
  EXPECT_EQ(dump(j, 0), "{\"x\":0.10000000000000001,\"inf\":\"inf\",\"n\":3}\n");
}

TEST(Json, DiscrepancyResultRoundTrip) {
  DiscrepancyResult r;
  r.value = 1.0 / 3.0;
  r.method = DiscrepancyMethod::MonteCarlo;
  r.std_error = std::sqrt(2.0) * 1e-5;
  r.p = 2.5;
  r.d = 7;
  r.n = 11;
  r.power = std::pow(r.value, 2.5);
  r.power_std_error = 1e-6 / 3.0;
  const auto back = discrepancy_result_from_json(Json::parse(dump(to_json(r))));
  EXPECT_EQ(back.value, r.value);
  EXPECT_EQ(back.method, r.method);
  EXPECT_EQ(back.std_error, r.std_error);
  EXPECT_EQ(back.p, r.p);
  EXPECT_EQ(back.d, r.d);
  EXPECT_EQ(back.n, r.n);
  EXPECT_EQ(back.power, r.power);
  EXPECT_EQ(back.power_std_error, r.power_std_error);
}

TEST(Json, BracketWithOpenUpper) {
  InverseBracket b;
  b.eps = 0.1;
  const auto j = Json::parse(dump(to_json(b)));
  EXPECT_EQ(j["upper_estimate"], "inf");
  EXPECT_TRUE(j["witness"].is_null());
}
