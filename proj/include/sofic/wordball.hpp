#ifndef SOFIC_WORDBALL_HPP_
#define SOFIC_WORDBALL_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sofic/rational.hpp"

namespace sofic {

using Letter = std::int32_t;
using Word = std::vector<Letter>;

class UnknownGenerator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A group presented by a normal-form reducer. tau(w) = 1 iff w reduces to
// the empty word.
class GeneratingSystem {
 public:
  virtual ~GeneratingSystem() = default;

  virtual std::string descriptor() const = 0;
  virtual std::vector<Letter> generators() const = 0;
  virtual bool is_letter(Letter l) const = 0;
  virtual Letter inverse(Letter l) const = 0;
  // Canonical word; throws UnknownGenerator on a foreign letter.
  virtual Word reduce(const Word &w) const = 0;
  virtual std::string letter_name(Letter l) const = 0;

  std::string format(const Word &w) const;
  // Space-separated letter names, or concatenated single-character names.
  Word parse_word(std::string_view text) const;
  Rational tau(const Word &w) const { return reduce(w).empty() ? Rational(1) : Rational(0); }

 protected:
  void check_letters(const Word &w) const;
};

using SystemPtr = std::shared_ptr<const GeneratingSystem>;

// Free product of cyclic factors; order 0 means Z. Generator i (1-based) is
// the letter i, its inverse -i. Canonical words are alternating syllables,
// each syllable a run of one letter (positive exponents in [1, m) for finite
// factors). Covers zmod(m), z and freeprod(...).
SystemPtr free_product_system(std::vector<std::size_t> orders);
// Cayley table, element 0 the identity; letters are element ids >= 1 and the
// canonical word of g != e is [g].
SystemPtr table_system(std::vector<std::vector<std::size_t>> table, std::vector<Letter> generators,
                       std::string descriptor = "table");
// User-supplied reducer.
SystemPtr custom_system(std::string descriptor, std::vector<Letter> generators,
                        std::function<Letter(Letter)> inverse, std::function<Word(const Word &)> reduce);

// zmod(m) | z | freeprod(X, Y) with X, Y in {zmod(m), z} | table(<file>)
SystemPtr parse_system(std::string_view descriptor);
// Cayley file: "order N", "generators i j ...", then N lines "row ...".
SystemPtr load_table_system(const std::string &path);

Word reduce_product(const GeneratingSystem &sys, const Word &u, const Word &v);

// F^n_pm: every product of at most n letters from F, their inverses and e.
struct Ball {
  SystemPtr system;
  std::vector<Letter> generating_set;
  std::size_t radius = 0;
  std::vector<Word> elements;   // canonical words, identity first, then BFS order
  std::vector<Word> witnesses;  // a shortest word reaching each element
  std::vector<std::size_t> word_length;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> index_of(const Word &canonical) const;
  // index of u_i u_j, or nullopt when it falls outside the ball.
  std::optional<std::size_t> product(std::size_t i, std::size_t j) const;

  std::map<Word, std::size_t> lookup;
};

Ball ball(const SystemPtr &sys, const std::vector<Letter> &F, std::size_t n, std::size_t cap = 100000);

} // namespace sofic

#endif // SOFIC_WORDBALL_HPP_
