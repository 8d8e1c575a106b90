#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BURNLINK_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& f) { return std::string(BURNLINK_DATA) + "/" + f; }

nlohmann::json report(const std::string& args) {
  const Run r = run(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("invariant reports") {
  const auto w = report("invariant " + data("whitehead_half_cabling.pres") + " --exponent 4");
  CHECK(w["verdict"] == "OBSTRUCTED");
  CHECK(w["invariants"]["burnside_order"] == 1024);
  CHECK(w["invariants"]["quotient_abelianization"] == "Z4+Z4");
  CHECK(w["schema"] == "burnlink.report/1");

  const auto u = report("invariant " + data("unknot.pd") + " --exponent 3");
  CHECK(u["verdict"] == "METHOD_INAPPLICABLE");
  CHECK(u["invariants"]["h1_mod_n"] == "0");

  const auto d = report("invariant " + data("delta54.braid") + " -n 3");
  CHECK(d["verdict"] == "OBSTRUCTED");

  const auto b = report("--format braid invariant " + data("trefoil.braid") + " -n 3");
  CHECK(b["verdict"] == "METHOD_INAPPLICABLE");
}

TEST_CASE("compare reports") {
  CHECK(report("compare " + data("whitehead_half_cabling.pres") + " " + data("borromean.pd") + " -n 4")["result"] ==
        "DISTINGUISHED");
  CHECK(report("compare " + data("borromean.pd") + " " + data("borromean.pd") + " -n 4")["result"] ==
        "NOT_DISTINGUISHED");
  CHECK(report("compare " + data("delta54.braid") + " " + data("twenty.braid") + " -n 3")["result"] ==
        "NOT_DISTINGUISHED");
}

TEST_CASE("reproduce targets") {
  for (const char* t : {"montesinos-nakanishi", "kawauchi", "borromean", "slopes", "engine-selftest"}) {
    CAPTURE(t);
    const Run r = run(std::string("reproduce --target ") + t);
    CHECK(r.code == 0);
    CHECK_FALSE(r.out.empty());
  }
  const Run k = run("reproduce --target kawauchi");
  CHECK(k.out.find("2^10") != std::string::npos);
  CHECK(k.out.find("Z4+Z4") != std::string::npos);
  CHECK(run("reproduce --target nope").code != 0);
}

TEST_CASE("output is byte-stable") {
  for (const std::string& args :
       {"invariant " + data("borromean.pd") + " -n 4", "compare " + data("trefoil.pd") + " " + data("figure8.pd") + " -n 3",
        "--seed 7 audit " + data("trefoil.pd") + " -n 3 --trials 5", std::string("reproduce --target borromean")}) {
    CAPTURE(args);
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  const Run s1 = run("--seed 1 audit " + data("borromean.pd") + " -n 4 --trials 4");
  const Run s2 = run("--seed 2 audit " + data("borromean.pd") + " -n 4 --trials 4");
  CHECK(s1.code == 0);
  CHECK(s2.code == 0);
  CHECK(nlohmann::json::parse(s1.out)["pass"] == true);
  CHECK(nlohmann::json::parse(s1.out)["order"] == 32);

  const auto path = std::filesystem::temp_directory_path() / "burnlink_cli_out.json";
  const Run o = run("--out " + path.string() + " invariant " + data("borromean.pd") + " -n 4");
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run("invariant " + data("borromean.pd") + " -n 4").out);
  std::filesystem::remove(path);
}

TEST_CASE("errors give nonzero exit codes") {
  CHECK(run("invariant /nonexistent/file.pd -n 3").code == 1);
  CHECK(run("invariant " + data("b23.pcp") + " -n 3").code == 1);
  CHECK(run("invariant " + data("trefoil.pd") + " -n 6").code == 1);
  CHECK(run("invariant " + data("trefoil.pd") + " -n 4 --q 2").code == 1);
  CHECK(run("--format pres invariant " + data("trefoil.braid") + " -n 3").code == 1);
  CHECK(run("--budget 0 invariant " + data("trefoil.pd") + " -n 3").code == 1);
  CHECK(run("invariant " + data("trefoil.pd")).code != 0);
  CHECK(run("").code != 0);
  CHECK(run("audit " + data("whitehead_half_cabling.pres") + " -n 4").code == 1);
}
