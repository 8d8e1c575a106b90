#pragma once
// Link diagrams, braid words and rational tangles.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace burnlink {

// ---------------------------------------------------------------- braids

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // i > 0: sigma_i, i < 0: sigma_{-i}^{-1}

  bool operator==(const BraidWord&) const = default;
};

/// Parse `s1 s2^-1 ...` with an optional leading `strands=<n>` header.
/// The strand count is, in order of priority: `strands` argument, header,
/// max generator index + 1.  Conflicting explicit counts are an error.
BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt);
/// Canonical text form, always with a `strands=` header.
std::string print_braid(const BraidWord& b);
/// Image of the braid in the symmetric group: perm[i] is the bottom position
/// reached by the strand starting at top position i (0-based).
std::vector<int> braid_permutation(const BraidWord& b);

// ---------------------------------------------------------------- diagrams

struct Crossing {
  int over = 0;
  int under_in = 0;
  int under_out = 0;

  bool operator==(const Crossing&) const = default;
};

enum class SiteOrientation { Parallel, Antiparallel };

/// Two strand positions bounding a crossing-free disk.  A position is an arc
/// (or free component id) plus a segment offset: the number of over-passes
/// of that arc preceding the position, in traversal order.
struct MoveSite {
  int arc_a = 0;
  int segment_a = 0;
  int arc_b = 0;
  int segment_b = 0;
  SiteOrientation orientation = SiteOrientation::Parallel;

  bool operator==(const MoveSite&) const = default;
};

class LinkDiagram {
 public:
  /// One entry of the cyclic sequence describing a link component.
  struct Item {
    enum class Kind : std::uint8_t { Over, Under, Mark };
    Kind kind;
    int index;  // crossing index, or marked-site index for marks
    int side;   // marks only: 0 = strand a, 1 = strand b

    bool operator==(const Item&) const = default;
  };
  using Component = std::vector<Item>;

  LinkDiagram() = default;
  /// Build from component sequences.  Every crossing index in
  /// [0, crossing_count) must occur once as Over and once as Under, every
  /// site index in [0, orientations.size()) once with each side.
  LinkDiagram(std::vector<Component> components, int crossing_count,
              std::vector<SiteOrientation> orientations);

  /// PD-style description; see parse_pd for the file form.
  /// `over_order` gives, for arcs whose over-passes are not met in
  /// crossing-index order, the 0-based crossing indices in traversal order.
  /// `mark_ranks` (empty, or one entry per site) orders marks sharing a
  /// segment; by default they follow site order.
  static LinkDiagram from_pd(int arc_count, const std::vector<Crossing>& crossings,
                             int free_components, const std::vector<MoveSite>& sites = {},
                             const std::map<int, std::vector<int>>& over_order = {},
                             const std::vector<std::array<int, 2>>& mark_ranks = {});

  int arc_count() const { return arc_count_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int free_component_count() const { return free_components_; }
  /// arc_count + free components; one core-group generator each.
  int generator_count() const { return arc_count_ + free_components_; }
  int component_count() const { return static_cast<int>(components_.size()); }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<MoveSite>& marked_sites() const { return sites_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<SiteOrientation>& site_orientations() const { return orientations_; }

  /// Position of each site's two marks among the marks on the same segment.
  std::vector<std::array<int, 2>> mark_ranks() const;
  /// Arcs whose over-passes along the strand are not in crossing-index order.
  std::map<int, std::vector<int>> over_order() const;
  /// Number of distinct segment offsets available on a generator.
  int segment_count(int generator) const;
  /// Every combinatorially admissible site (distinct positions, both
  /// orientations), in a fixed order.
  std::vector<MoveSite> candidate_sites() const;
  bool site_valid(const MoveSite& s) const;

  /// Copy of this diagram with an extra marked site.
  LinkDiagram with_site(const MoveSite& s) const;

 private:
  struct Position {
    int component;
    int offset;  // insert before components_[component][offset]
  };
  Position locate(int generator, int segment) const;
  void derive();

  friend LinkDiagram apply_pq_move(const LinkDiagram&, const MoveSite&, long long, long long);

  std::vector<Component> components_;
  std::vector<SiteOrientation> orientations_;
  // derived
  int arc_count_ = 0;
  int free_components_ = 0;
  std::vector<Crossing> crossings_;
  std::vector<MoveSite> sites_;
  // per generator: component index and offset of its first item
  std::vector<int> gen_component_;
  std::vector<int> gen_start_;
  std::vector<int> gen_overs_;
  std::vector<bool> gen_loop_;
};

/// Marks a parallel site between each pair of adjacent top positions, and
/// with `mark_every_level` also below every letter.
LinkDiagram braid_closure(const BraidWord& b, bool mark_every_level = false);
int component_count(const LinkDiagram& d);

/// JSON object with fields arc_count, crossings ([[over, under_in, under_out], ...]),
/// free_components, marked_sites ([{"arcs":[a,b],"segments":[i,j],
/// "orientation":"parallel"|"antiparallel", optional "ranks":[i,j]}, ...]) and optionally over_order
/// ([[arc, [crossing, ...]], ...], crossings 1-based).  Unknown fields are rejected.
LinkDiagram parse_pd(std::string_view text);
std::string print_pd(const LinkDiagram& d);

// ---------------------------------------------------------------- tangles

struct RationalTangleSpec {
  std::vector<long long> coeffs;  // a_1 .. a_n

  bool operator==(const RationalTangleSpec&) const = default;
};

struct Slope {
  long long p = 0;
  long long q = 1;  // 0 encodes infinity (then p = 1)

  bool infinite() const { return q == 0; }
  bool operator==(const Slope&) const = default;
  static Slope infinity() { return {1, 0}; }
  /// Normalized p/q; (1, 0) style input gives infinity.
  static Slope make(long long p, long long q);
};

std::string to_string(const Slope& s);
std::string to_string(const RationalTangleSpec& t);

/// a_n + 1/(a_{n-1} + ... + 1/a_1), evaluated projectively.
Slope conway_slope(const RationalTangleSpec& t);
bool tangles_equivalent(const RationalTangleSpec& a, const RationalTangleSpec& b);
/// Euclidean expansion with floor quotients; infinity gives T(0,0).
RationalTangleSpec pq_tangle_from_slope(long long p, long long q);

/// Replace the identity tangle at `site` by the rational tangle of slope p/q.
/// The site stays marked in the result, adjacent to the inserted tangle, so
/// repeated application stacks tangles.
LinkDiagram apply_pq_move(const LinkDiagram& d, const MoveSite& site, long long p, long long q);

}  // namespace burnlink
