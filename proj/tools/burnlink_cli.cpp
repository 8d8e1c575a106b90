#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "burnlink/error.hpp"
#include "burnlink/obstruct.hpp"
#include "burnlink/reproduce.hpp"

using namespace burnlink;

namespace {

struct Options {
  std::string out;
  std::string format = "auto";
  std::uint64_t budget = std::uint64_t{1} << 25;
  int lie_class = 4;
  std::size_t tietze_cap = 64;
  std::uint64_t seed = 1;
};

Config make_config(const Options& o) {
  if (o.budget == 0) throw InvalidArgument("--budget must be positive");
  if (o.lie_class < 1) throw InvalidArgument("--lie-class must be positive");
  Config c;
  c.element_budget = o.budget;
  c.lie_class = o.lie_class;
  c.tietze.max_substitution_length = o.tietze_cap;
  return c;
}

InputFormat parse_format(const std::string& f) {
  static const std::map<std::string, InputFormat> m{
      {"auto", InputFormat::Auto}, {"braid", InputFormat::Braid}, {"pd", InputFormat::Pd},
      {"pres", InputFormat::Presentation}};
  return m.at(f);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Exponents with a finite engine or a Lie certificate pathway.
void require_supported(long n) {
  if (n == 2 || n == 3 || n == 4 || is_prime(n)) return;
  throw InvalidArgument("no engine or certificate pathway for exponent " + std::to_string(n));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + o.out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Burnside-group obstructions to rational moves on links"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "Write the report here instead of stdout");
  app.add_option("--format", o.format, "Input format override")
      ->check(CLI::IsMember({"auto", "braid", "pd", "pres"}));
  app.add_option("--budget", o.budget, "Element cap for subgroup enumeration");
  app.add_option("--lie-class", o.lie_class, "Class bound for Lie certificates");
  app.add_option("--tietze-cap", o.tietze_cap, "Longest substitution used by Tietze moves");
  app.add_option("--seed", o.seed, "Seed for randomized audits");

  long n = 0, q = 1;
  std::string file_a, file_b, target;
  int trials = 20;

  auto* inv = app.add_subcommand("invariant", "Burnside invariants and verdict for one link");
  inv->add_option("file", file_a)->required();
  inv->add_option("--exponent,-n", n)->required();
  inv->add_option("--q", q);

  auto* cmp = app.add_subcommand("compare", "Compare two links");
  cmp->add_option("a", file_a)->required();
  cmp->add_option("b", file_b)->required();
  cmp->add_option("--exponent,-n", n)->required();

  auto* aud = app.add_subcommand("audit", "Random n/q-move invariance audit");
  aud->add_option("file", file_a)->required();
  aud->add_option("--exponent,-n", n)->required();
  aud->add_option("--trials", trials);

  auto* rep = app.add_subcommand("reproduce", "Reproduce a named result");
  rep->add_option("--target", target)->required()->check(CLI::IsMember(reproduce_targets()));

  CLI11_PARSE(app, argc, argv);

  try {
    const Config cfg = make_config(o);
    const InputFormat fmt = parse_format(o.format);
    if (*inv || *cmp || *aud) require_supported(n);
    if (*inv) {
      const ObstructionReport r = verdict(load_link(file_a, fmt), n, q, cfg);
      emit(o, r.to_json().dump(2) + "\n");
    } else if (*cmp) {
      const ComparisonReport r = compare_links(load_link(file_a, fmt), load_link(file_b, fmt), n, cfg);
      emit(o, r.to_json().dump(2) + "\n");
    } else if (*aud) {
      const LinkInput in = load_link(file_a, fmt);
      if (!in.diagram) throw InvalidArgument("audit needs a braid or PD input");
      const AuditResult a = invariance_audit(*in.diagram, n, trials, o.seed, cfg);
      nlohmann::ordered_json j;
      j["schema"] = kReportSchema;
      j["link"] = in.id;
      j["move"] = {{"family", "n/q"}, {"n", n}};
      j["seed"] = o.seed;
      j["order"] = a.order;
      j["abelianization"] = a.abelianization.to_string();
      nlohmann::ordered_json ts = nlohmann::ordered_json::array();
      for (const auto& t : a.trials)
        ts.push_back({{"arcs", {t.site.arc_a, t.site.arc_b}},
                      {"segments", {t.site.segment_a, t.site.segment_b}},
                      {"orientation", t.site.orientation == SiteOrientation::Parallel ? "parallel" : "antiparallel"},
                      {"q", t.q},
                      {"crossings", t.crossings},
                      {"order", t.order},
                      {"abelianization", t.abelianization.to_string()},
                      {"ok", t.ok}});
      j["trials"] = ts;
      j["pass"] = a.pass;
      emit(o, j.dump(2) + "\n");
      return a.pass ? 0 : 3;
    } else if (*rep) {
      const ReproTable t = reproduce(target, cfg);
      emit(o, t.render());
      return t.pass() ? 0 : 3;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
