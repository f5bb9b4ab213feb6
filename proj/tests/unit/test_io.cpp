#include <gtest/gtest.h>

#include "graded_fixtures.hpp"
#include "helpers.hpp"

using namespace galg;
using io::json;

TEST(Io, FieldRoundTrip) {
  for (Field f : {Field::prime(7), Field::extension(3, 2), Field::extension(2, 5)})
    EXPECT_EQ(io::field_from_json(io::to_json(f)), f);
  EXPECT_THROW(io::field_from_json(json{{"deg", 1}}), InvalidInput);
}

TEST(Io, BimapRoundTrip) {
  Rng rng(71);
  for (Field f : {Field::prime(3), Field::extension(2, 3)}) {
    Bimap u = testing_helpers::random_bimap(f, 2, 3, 2, rng);
    EXPECT_EQ(io::bimap_from_json(io::to_json(u)), u);
    EXPECT_EQ(io::bimap_from_json(json::parse(io::to_json(u).dump())), u);
  }
}

TEST(Io, PrimeFieldEntriesAreReduced) {
  json j = json::parse(R"({"field":{"char":3,"deg":1},"dims":[1,2,1],"slices":[[[4,-1]]]})");
  Bimap u = io::bimap_from_json(j);
  EXPECT_EQ(u.slice(0)(0, 0), 1u);
  EXPECT_EQ(u.slice(0)(0, 1), 2u);
}

TEST(Io, RejectsMalformedBimaps) {
  EXPECT_THROW(io::bimap_from_json(json::parse(R"({"field":{"char":3},"dims":[1,1],"slices":[]})")), InvalidInput);
  EXPECT_THROW(io::bimap_from_json(json::parse(R"({"field":{"char":3},"dims":[1,1,2],"slices":[[[1]]]})")),
               InvalidInput);
  EXPECT_THROW(io::bimap_from_json(json::parse(R"({"field":{"char":3},"dims":[1,2,1],"slices":[[[1]]]})")),
               InvalidInput);
  EXPECT_THROW(
      io::bimap_from_json(json::parse(R"({"field":{"char":2,"deg":2},"dims":[1,1,1],"slices":[[[4]]]})")),
      InvalidInput);
}

TEST(Io, GradedRoundTrip) {
  Field f = Field::prime(3);
  for (const GradedAlgebra& a : {graded_fixtures::heisenberg_graded(f), graded_fixtures::bigraded(f),
                                 dense_lie({1, 2, 1}, f).algebra}) {
    EXPECT_EQ(io::graded_from_json(io::to_json(a)), a);
  }
}

TEST(Io, GradedValidationOnLoad) {
  json j = io::to_json(graded_fixtures::heisenberg_graded(Field::prime(3)));
  j["products"] = json::object();
  EXPECT_THROW(io::graded_from_json(j), NotGenerated);
  EXPECT_NO_THROW(io::graded_from_json(j, false));
  j["products"]["[1]"] = json::object();
  EXPECT_THROW(io::graded_from_json(j), InvalidInput);
}

TEST(Io, SamplesLoad) {
  Bimap d = testing_helpers::sample("D.json");
  EXPECT_EQ(d.a(), 4u);
  EXPECT_EQ(d.c(), 3u);
  EXPECT_TRUE(d.is_alternating());
  EXPECT_TRUE(testing_helpers::sample("E.json").is_alternating());
}
