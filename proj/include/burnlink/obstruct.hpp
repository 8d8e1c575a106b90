#pragma once
// Reducibility obstructions for links under rational n/q-moves.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "burnlink/abelian.hpp"
#include "burnlink/diagram.hpp"
#include "burnlink/pcgroup.hpp"
#include "burnlink/presentation.hpp"

namespace burnlink {

inline constexpr const char* kReportSchema = "burnlink.report/1";

enum class Verdict { Obstructed, ConsistentWithReducible, MethodInapplicable, Inconclusive };
std::string to_string(Verdict v);

struct TrivialLinkProfile {
  int components = 1;
  long n = 2;
  std::optional<std::uint64_t> order;  // |B(k-1, n)| when known
  AbelianType abelianization;          // (Z_n)^(k-1)
};
std::vector<TrivialLinkProfile> trivial_profiles(long n, int max_components);

struct Config {
  std::uint64_t element_budget = std::uint64_t{1} << 25;
  int lie_class = 4;
  TietzeOptions tietze{};
};

/// A link given either by a diagram or by an already Wada-reduced presentation.
struct LinkInput {
  std::string id;
  std::optional<LinkDiagram> diagram;
  Presentation presentation;  // used when diagram is empty

  static LinkInput from_diagram(std::string id, LinkDiagram d);
  static LinkInput from_presentation(std::string id, Presentation p);
};

/// Format override for load_link; Auto picks by file extension.
enum class InputFormat { Auto, Braid, Pd, Presentation };
LinkInput load_link(const std::string& path, InputFormat fmt = InputFormat::Auto);

/// core -> Tietze -> Wada (highest generator) -> Tietze.
Presentation reduced_presentation(const LinkDiagram& d, const TietzeOptions& opt = {});
Presentation reduced_presentation(const LinkInput& in, const TietzeOptions& opt = {});

/// Images of the presentation generators in a pc group: seeds go to the
/// free generators, the rest are solved from relators in which they occur once.
struct SeedPlan {
  std::vector<int> seeds;                              // 1-based generators
  std::vector<std::pair<int, std::size_t>> solved;     // (generator, relator index), in order
};
SeedPlan plan_seeds(const Presentation& p);
Assignment assign_images(const PcPresentation& g, const Presentation& p, const SeedPlan& plan);

/// The reduced presentation if it needs at most two seeds, else the first
/// unsimplified Wada reduction of the core presentation (killing generators
/// from the highest down) that does; falls back to the reduced one.
Presentation engine_presentation(const LinkInput& in, const Presentation& reduced);

struct EngineResult {
  std::string engine;
  int seeds = 0;
  std::uint64_t order = 0;
  AbelianType abelianization;
  std::vector<PcElement> kernel_generators;
};
/// B_L(n) for n in {2, 3, 4}; throws EngineTooSmall when no engine fits.
EngineResult burnside_quotient(const Presentation& reduced, long n, const Config& cfg = {});

struct Evidence {
  std::string check;
  std::string computed;
  std::string expected;
  bool holds = false;
};

struct ObstructionReport {
  std::string link;
  long n = 0;
  long q = 1;
  Verdict verdict = Verdict::Inconclusive;
  nlohmann::ordered_json invariants = nlohmann::ordered_json::object();
  std::vector<Evidence> evidence;

  nlohmann::ordered_json to_json() const;
};

ObstructionReport verdict(const LinkInput& link, long n, long q = 1, const Config& cfg = {});
/// Recomputes every quantity cited by an OBSTRUCTED report from the reduced
/// presentation stored in it, by routes independent of the ones used.
/// False unless the report is OBSTRUCTED and every cited quantity matches.
bool revalidate(const ObstructionReport& r, const Config& cfg = {});

enum class Comparison { Distinguished, NotDistinguished, Inconclusive };
std::string to_string(Comparison c);

struct ComparisonReport {
  std::string a, b;
  long n = 0;
  Comparison result = Comparison::Inconclusive;
  nlohmann::ordered_json invariants = nlohmann::ordered_json::object();
  std::vector<Evidence> evidence;

  nlohmann::ordered_json to_json() const;
};
ComparisonReport compare_links(const LinkInput& a, const LinkInput& b, long n, const Config& cfg = {});

struct AuditTrial {
  MoveSite site;
  long long q = 1;
  int crossings = 0;
  std::uint64_t order = 0;
  AbelianType abelianization;
  bool ok = false;
};
struct AuditResult {
  bool pass = false;
  std::uint64_t order = 0;
  AbelianType abelianization;
  std::vector<AuditTrial> trials;
};
/// Each trial moves at a random marked site (any candidate site when none
/// is marked).  Integer moves extend the chain; the others are checked and
/// then discarded.
AuditResult invariance_audit(const LinkDiagram& d, long n, int trials, std::uint64_t seed, const Config& cfg = {});

}  // namespace burnlink
