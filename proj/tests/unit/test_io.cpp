#include <gtest/gtest.h>

#include <random>
#include <string>

#include <json.hpp>

#include "dieudonne/errors.hpp"
#include "dieudonne/io.hpp"
#include "dieudonne/random.hpp"
#include "dieudonne/sslocus.hpp"

using namespace dieudonne;

namespace {

DieudonneModule sample(int p, int m, const NewtonPolygon& beta, std::mt19937_64& rng) {
  RingPtr R = make_witt_ring(p, m, default_precision(p, beta.height()));
  return random_frame(random_submodule(standard_module(beta, R), 2, rng), rng);
}

NewtonPolygon polygon(std::initializer_list<NewtonPart> parts) {
  NewtonPolygon beta;
  beta.parts = parts;
  return beta;
}

}  // namespace

TEST(ModuleIo, DigitFormRoundTrip) {
  std::mt19937_64 rng(11);
  const NewtonPolygon shapes[] = {polygon({{1, 1, 2}}), polygon({{2, 1, 1}}), polygon({{1, 0, 1}, {1, 1, 1}, {0, 1, 1}})};
  for (int p : {2, 3}) {
    for (const auto& beta : shapes) {
      const DieudonneModule M = sample(p, 2, beta, rng);
      const std::string text = save_module(M);
      const DieudonneModule back = load_module(text);
      EXPECT_TRUE(back == M);
      EXPECT_EQ(save_module(back), text);
    }
  }
}

TEST(ModuleIo, DigitsRoundTrip) {
  RingPtr R = make_witt_ring(5, 3, 20);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Elem a = R->random(rng);
    EXPECT_TRUE(R->equal_mod(element_from_digits(*R, element_digits(*R, a, 20)), a, 20));
  }
  EXPECT_THROW(element_from_digits(*R, {{5}}), FormatError);
  EXPECT_THROW(element_from_digits(*R, {{0}, {0}, {0}, {1}}), FormatError);
}

TEST(ModuleIo, SmallIntegerFormIsPrecisionFree) {
  for (int N : {24, 40}) {
    RingPtr R = make_witt_ring(2, 4, N);
    const SuperspecialBase base = superspecial_base(R);
    const FamilyPoint x = point_module(base, R->one(), R->generator());
    SaveOptions opt;
    opt.small_integers = true;
    const std::string text = save_module(x.module, opt);
    EXPECT_TRUE(load_module(text) == x.module);

    // Reading at more digits gives the module built at that precision.
    RingPtr high = make_witt_ring(2, 4, N + 4);
    const FamilyPoint y = point_module(superspecial_base(high), high->one(), high->generator());
    EXPECT_TRUE(load_module(text, {N + 4}) == y.module);

    const nlohmann::json doc = nlohmann::json::parse(text);
    EXPECT_EQ(doc.at("F").at(0).at(1), -2);
  }
}

TEST(ModuleIo, EntryForms) {
  const std::string text = R"({"p": 3, "m": 2, "N": 12, "h": 2,
    "F": [[0, {"digits": [[0, 1]], "shift": 0}], [[1, 0], {"coefficients": 0, "shift": 2}]]})";
  const DieudonneModule M = load_module(text);
  const std::string plain = R"({"p": 3, "m": 2, "N": 12, "h": 2, "F": [[0, 3], [1, 0]]})";
  EXPECT_TRUE(load_module(plain) == M);
}

TEST(ModuleIo, FPrecisionIsCappedNotRaised) {
  const std::string text = R"({"p": 3, "m": 2, "N": 20, "h": 2, "F_precision": 16, "F": [[0, 3], [1, 0]]})";
  EXPECT_EQ(load_module(text).ambient()->frobenius_matrix().prec(), 16);
  EXPECT_EQ(load_module(text, {12}).ambient()->frobenius_matrix().prec(), 12);
  EXPECT_EQ(load_module(text, {24}).ambient()->frobenius_matrix().prec(), 16);
}

TEST(ModuleIo, Rejects) {
  EXPECT_THROW(load_module("not json"), FormatError);
  EXPECT_THROW(load_module("[1, 2]"), FormatError);
  EXPECT_THROW(load_module(R"({"p": 3, "m": 2, "h": 2, "F": [[0, 3], [1, 0]]})"), FormatError);
  EXPECT_THROW(load_module(R"({"p": 3, "m": 2, "N": 12, "h": 2, "F": [[0, 3]]})"), FormatError);
  EXPECT_THROW(load_module(R"({"p": 3, "m": 2, "N": 12, "h": 2, "F": [[0, 3], [1, "x"]]})"), FormatError);
  EXPECT_THROW(load_module(R"({"p": 3, "m": 2, "N": 12, "h": 2, "F": [[0, [1, 2, 3]], [1, 0]]})"), FormatError);
  EXPECT_THROW(load_module(R"({"p": 3, "m": 2, "N": 12, "h": 2, "F": [[0, {"digits": [[3]]}], [1, 0]]})"),
               FormatError);
  EXPECT_THROW(load_module_file("/nonexistent/module.json"), FormatError);
  // <e1, 3 e2> is not F-stable: F e1 = e2.
  EXPECT_THROW(load_module(R"({"p": 3, "m": 2, "N": 12, "h": 2, "F": [[0, 3], [1, 0]], "basis": [[1, 0], [0, 3]]})"),
               ArgumentError);
}
