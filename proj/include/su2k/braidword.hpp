#pragma once

// Braidwords: sequences of signed braid-generator letters, the compiler's
// program representation. Canonical text form follows the usual compact
// alphabet: with n generators, 'A'..'A'+n-1 are s1..sn and the next n
// letters are their inverses (one qubit: A/B/C/D = s1/s2/s1^-1/s2^-1;
// two qubits: A..E = s1..s5 and F..J their inverses).

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace su2k {

struct BraidLetter {
  int index = 1;  // generator index, 1-based
  int power = 1;  // +1 or -1

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

/// Letter code <-> letter mapping. Codes run 0..2n-1: first the n positive
/// generators, then the n inverses; this is also the lexicographic order of
/// the text alphabet.
inline int code_from_letter(const BraidLetter& l, int n_generators) {
  return (l.power > 0) ? (l.index - 1) : (n_generators + l.index - 1);
}

inline BraidLetter letter_from_code(int code, int n_generators) {
  if (code < n_generators) return {code + 1, +1};
  return {code - n_generators + 1, -1};
}

inline int inverse_code(int code, int n_generators) {
  return (code < n_generators) ? code + n_generators : code - n_generators;
}

struct Braidword {
  std::vector<BraidLetter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  /// Group inverse: letters reversed with every power flipped.
  Braidword inverse() const {
    Braidword w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back({it->index, -it->power});
    return w;
  }

  Braidword& append(const Braidword& o) {
    letters.insert(letters.end(), o.letters.begin(), o.letters.end());
    return *this;
  }

  friend bool operator==(const Braidword&, const Braidword&) = default;
};

/// Parses the canonical text form. Whitespace is ignored (printed tables
/// occasionally wrap words). Throws on letters outside the alphabet of the
/// given generator count.
inline Braidword parse_braidword(const std::string& text, int n_generators) {
  Braidword w;
  w.letters.reserve(text.size());
  for (const char raw : text) {
    if (std::isspace(static_cast<unsigned char>(raw))) continue;
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
    const int code = c - 'A';
    if (code < 0 || code >= 2 * n_generators)
      throw std::invalid_argument(std::string("parse_braidword: letter '") + raw +
                                  "' outside alphabet for " + std::to_string(n_generators) +
                                  " generators");
    w.letters.push_back(letter_from_code(code, n_generators));
  }
  return w;
}

inline std::string to_string(const Braidword& w, int n_generators) {
  std::string s;
  s.reserve(w.size());
  for (const BraidLetter& l : w.letters) {
    if (l.index < 1 || l.index > n_generators)
      throw std::out_of_range("to_string: generator index outside alphabet");
    s.push_back(static_cast<char>('A' + code_from_letter(l, n_generators)));
  }
  return s;
}

}  // namespace su2k
