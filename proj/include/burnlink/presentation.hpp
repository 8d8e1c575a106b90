#pragma once
// Finitely presented groups: core group of a diagram, Wada reduction and
// length-bounded Tietze simplification.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "burnlink/diagram.hpp"

namespace burnlink {

/// Signed 1-based generator indices; -g is the inverse of generator g.
using Word = std::vector<int>;

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(generator_names.size()); }
  bool operator==(const Presentation&) const = default;
};

Word word_eval_free(const Word& w);
/// Free reduction followed by cancelling inverse letters at the two ends.
Word cyclic_reduce(const Word& w);
Word word_inverse(const Word& w);
/// Exponent sum of generator g (1-based) in w.
int exponent_sum(const Word& w, int g);
/// Canonical representative of w up to cyclic permutation and inversion.
Word cyclic_canonical(const Word& w);

/// Tokens `name` or `name^k` separated by whitespace.
Word parse_word(std::string_view text, const std::vector<std::string>& names);
std::string word_to_string(const Word& w, const std::vector<std::string>& names);

/// JSON object {"generators": [names], "relators": [word strings]}.
Presentation parse_presentation(std::string_view text);
std::string print_presentation(const Presentation& p);

/// One generator y<i> per arc and per crossingless component, one relator
/// y_over y_in^-1 y_over y_out^-1 per crossing.
Presentation core_presentation(const LinkDiagram& d);
/// Removes the last relator.
Presentation drop_redundant_relator(const Presentation& p);
/// Sets generator `kill` (1-based) to the identity.
Presentation wada_reduce(const Presentation& p, int kill);
/// Kills the highest-numbered generator.
Presentation wada_reduce(const Presentation& p);

struct TietzeOptions {
  std::size_t max_substitution_length = 64;
};

/// Generator-eliminating Tietze moves plus free/cyclic reduction and removal
/// of empty and repeated relators.  Eliminations that express a generator in
/// lower-numbered ones are done first, highest generator first; afterwards
/// any remaining elimination is taken, shortest relator first.
Presentation tietze_simplify(const Presentation& p, const TietzeOptions& opt = {});

}  // namespace burnlink
