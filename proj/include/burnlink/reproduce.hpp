#pragma once
// Named reproduction targets: expected-vs-computed tables.

#include <string>
#include <vector>

#include "burnlink/obstruct.hpp"

namespace burnlink {

struct ReproRow {
  std::string quantity;
  std::string expected;
  std::string computed;
  bool ok = false;
};

struct ReproTable {
  std::string target;
  std::vector<ReproRow> rows;

  bool pass() const;
  std::string render() const;
};

const std::vector<std::string>& reproduce_targets();
ReproTable reproduce(const std::string& target, const Config& cfg = {});

/// Q_i x_i^-1 for i = 1..5 on generators x1..x5, with
/// Q_i = U x_i V, U = x1 x2^-1 x3 x4^-1 x5 x1^-1 x2 x3^-1 x4 x5^-1 and
/// V the letters of U in reverse order.
std::vector<Word> q_relators();
/// Whether p has 5 generators and, after some relabelling of generators and
/// possibly inverting all of them, its relators are cyclic conjugates or
/// inverses of the q_relators().
bool matches_q_pattern(const Presentation& p);

/// The half 2-cabling of the Whitehead link as a two-generator presentation.
Presentation whitehead_half_cabling();

}  // namespace burnlink
