#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "su2k/anyonmodel.hpp"
#include "su2k/braidword.hpp"

using namespace su2k;

TEST_CASE("letter codes cover the alphabet in lexicographic order") {
  CHECK(letter_from_code(0, 2) == BraidLetter{1, +1});
  CHECK(letter_from_code(1, 2) == BraidLetter{2, +1});
  CHECK(letter_from_code(2, 2) == BraidLetter{1, -1});
  CHECK(letter_from_code(3, 2) == BraidLetter{2, -1});
  for (int n : {2, 5})
    for (int c = 0; c < 2 * n; ++c) {
      CHECK(code_from_letter(letter_from_code(c, n), n) == c);
      CHECK(inverse_code(inverse_code(c, n), n) == c);
    }
}

TEST_CASE("parse ignores whitespace and round-trips") {
  const Braidword w = parse_braidword("AB CD\tA", 2);
  CHECK(w.size() == 5);
  CHECK(to_string(w, 2) == "ABCDA");
  CHECK_THROWS_AS(parse_braidword("ABZ", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_braidword("F", 2), std::invalid_argument);  // beyond 2-generator alphabet
  CHECK(parse_braidword("F", 5).letters[0] == BraidLetter{1, -1});
}

TEST_CASE("random words round-trip through text") {
  std::mt19937_64 rng(5);
  for (int n : {2, 5}) {
    for (int trial = 0; trial < 50; ++trial) {
      Braidword w;
      const int len = 1 + int(rng() % 40);
      for (int i = 0; i < len; ++i)
        w.letters.push_back(letter_from_code(int(rng() % std::uint64_t(2 * n)), n));
      CHECK(parse_braidword(to_string(w, n), n) == w);
    }
  }
}

TEST_CASE("inverse word evaluates to the dagger") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Braidword w;
    for (int i = 0; i < 12; ++i) w.letters.push_back(letter_from_code(int(rng() % 4), 2));
    const Mat2 u = evaluate_braidword(w, gens);
    const Mat2 inv = evaluate_braidword(w.inverse(), gens);
    CHECK(inv.max_abs_diff(u.dagger()) < 1e-12);
    CHECK((u * inv).max_abs_diff(Mat2::identity()) < 1e-12);
  }
}

TEST_CASE("append concatenates programs") {
  Braidword a = parse_braidword("AB", 2);
  const Braidword b = parse_braidword("CD", 2);
  a.append(b);
  CHECK(to_string(a, 2) == "ABCD");
}
