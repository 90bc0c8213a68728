// Drives the installed binary through popen and checks output shapes, exit
// codes, round-tripping and byte-level determinism. SYMCHAR_CLI is injected
// by the build; the cache variable is pinned per invocation so an ambient
// cache directory cannot leak into the expectations.

#include <catch2/catch_amalgamated.hpp>

#include <symchar/audits.hpp>
#include <symchar/growth.hpp>
#include <symchar/io.hpp>
#include <symchar/statistics.hpp>
#include <symchar/walks.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace symchar;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& cache_dir = "") {
  std::string cmd = "SYMCHAR_CACHE_DIR='" + cache_dir + "' '" + SYMCHAR_CLI + "' " + args +
                    " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("walk --n 3").code == 2);                        // missing required
  CHECK(run_cli("walk --n 4 --class 2,2,1 --k 2").code == 2);    // not a partition of n
  CHECK(run_cli("walk --n 4 --class 1,1,1,1 --k 2").code == 2);  // identity step
  CHECK(run_cli("growth --preset 'triangle(2,3,7)' --n-max 5").code == 2);  // bad grammar
  CHECK(run_cli("growth --preset 'fuchsian(r=3;a=2,3)' --n-max 5").code == 2);  // r mismatch
  CHECK(run_cli("chartable --n 4 --classes regular:3").code == 2);
  CHECK(run_cli("audit --suite no-such-suite").code == 2);
}

TEST_CASE("resource ceilings exit 3") {
  CHECK(run_cli("growth --preset 'fuchsian(r=3;a=2,3,7;s=0;t=0)' --n-max 50").code == 3);
  CHECK(run_cli("growth --preset 'demuskin(q=5;d=2)' --n-max 30").code == 3);
}

TEST_CASE("homcount lines match the engine") {
  auto r = run_cli("homcount --q 3 --n-max 8");
  REQUIRE(r.code == 0);
  auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 8);
  for (int n = 1; n <= 8; ++n) {
    auto j = ordered_json::parse(rows[n - 1]);
    CHECK(j["command"] == "homcount");
    CHECK(j["version"] == version_string);
    CHECK(j["q"] == 3);
    CHECK(j["n"] == n);
    CHECK(parse_int(j["count"].get<std::string>()) == hom_count_cyclic(3, n));
  }
}

TEST_CASE("chartable emits the full exact table") {
  int n = 5;
  auto r = run_cli("chartable --n 5");
  REQUIRE(r.code == 0);
  auto rows = lines_of(r.out);
  const auto& parts = partitions_of(n);
  REQUIRE(rows.size() == 2 + parts.size() * parts.size());
  CHECK(rows[0].rfind("# command=chartable", 0) == 0);
  CHECK(rows[1] == "partition,class,value");

  CharacterEngine eng;
  size_t at = 2;
  for (const auto& lam : parts)
    for (const auto& rho : parts) {
      std::string expect =
          partition_plus(lam) + "," + partition_plus(rho) + "," + int_str(eng.value(lam, rho));
      CHECK(rows[at++] == expect);
    }

  auto filtered = run_cli("chartable --n 5 --classes q-regular:2");
  auto frows = lines_of(filtered.out);
  size_t odd_classes = 0;  // partitions of 5 into odd parts
  for (const auto& rho : parts) {
    bool ok = true;
    for (int p : rho.parts()) ok = ok && p % 2;
    odd_classes += ok;
  }
  CHECK(frows.size() == 2 + parts.size() * odd_classes);
}

TEST_CASE("moments record matches cycle_moment_sum") {
  auto r = run_cli("moments --q 4 --e 1:1,2:2 --n 7 --alternating");
  REQUIRE(r.code == 0);
  auto j = ordered_json::parse(r.out);
  MomentSpec spec(4, {{1, 1}, {2, 2}}, true);
  CHECK(j["alternating"] == true);
  CHECK(parse_int(j["value"].get<std::string>()) == cycle_moment_sum(spec, 7));
}

TEST_CASE("rootmult rows match the multiplicity table") {
  auto r = run_cli("rootmult --n 6 --q 3");
  REQUIRE(r.code == 0);
  auto rows = lines_of(r.out);
  const auto& parts = partitions_of(6);
  auto mult = multiplicity_table(6, 3);
  REQUIRE(rows.size() == 2 + parts.size());
  for (size_t i = 0; i < parts.size(); ++i) {
    std::string expect = partition_plus(parts[i]) + ",3," + int_str(mult[i]) + "," +
                         rat_str(demuskin_coeff(parts[i], 3));
    CHECK(rows[2 + i] == expect);
  }

  auto filtered = run_cli("rootmult --n 6 --q 3 --mu 1,1");
  auto frows = lines_of(filtered.out);
  REQUIRE(frows.size() == 3);  // only lambda = (4,1,1)
  CHECK(frows[2].rfind("4+1+1,", 0) == 0);
}

TEST_CASE("growth output agrees with the library and round-trips") {
  auto r = run_cli("growth --preset 'onerel(e=3,3)' --n-max 8");
  REQUIRE(r.code == 0);
  auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 8);
  GrowthSeries gs = growth_series(OneRelatorPresentation{{3, 3}}, 8);
  for (int k = 1; k <= 8; ++k) {
    auto j = ordered_json::parse(rows[k - 1]);
    CHECK(j["preset"] == "onerel(e=3,3)");
    CHECK(j["n"] == k);
    CHECK(parse_rat(j["h"].get<std::string>()) == gs.h[k - 1]);
    CHECK(parse_int(j["s"].get<std::string>()) == gs.s[k - 1]);
    CHECK(parse_rat(j["d"].get<std::string>()) == gs.d[k]);
    // serialized form is canonical: parsing and re-serializing is the identity
    CHECK(rat_str(parse_rat(j["h"].get<std::string>())) == j["h"].get<std::string>());
    CHECK(rat_str(parse_rat(j["d"].get<std::string>())) == j["d"].get<std::string>());
  }

  auto csv = run_cli("growth --preset 'onerel(e=3,3)' --n-max 8 --emit csv");
  auto crows = lines_of(csv.out);
  REQUIRE(crows.size() == 10);
  CHECK(crows[1] == "n,h,s,d");
  CHECK(crows[2] == "1," + rat_str(gs.h[0]) + "," + int_str(gs.s[0]) + "," + rat_str(gs.d[1]));
}

TEST_CASE("growth cache reuse is byte-identical") {
  auto dir = std::filesystem::temp_directory_path() / "symchar-cli-cache-test";
  std::filesystem::remove_all(dir);
  std::string preset = "'fuchsian(r=2;a=2,3;s=0;t=0)' --n-max 9";
  auto cold = run_cli("growth --preset " + preset, dir.string());
  REQUIRE(cold.code == 0);
  REQUIRE(std::filesystem::exists(dir));
  auto warm = run_cli("growth --preset " + preset, dir.string());
  CHECK(warm.out == cold.out);
  // shorter request served from the same cache
  auto prefix = run_cli("growth --preset 'fuchsian(r=2;a=2,3;s=0;t=0)' --n-max 5", dir.string());
  auto plain = run_cli("growth --preset 'fuchsian(r=2;a=2,3;s=0;t=0)' --n-max 5");
  CHECK(prefix.out == plain.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("walk record is exact and thread-count independent") {
  auto r = run_cli("walk --n 5 --class 3,1,1 --k 4");
  REQUIRE(r.code == 0);
  auto j = ordered_json::parse(r.out);
  WalkSpec spec(CycleType{Partition({3, 1, 1})});
  CHECK(parse_rat(j["exact_l2_sq"].get<std::string>()) == l2_distance_sq(spec, 4));
  CHECK(j["t_c"] == mixing_time_combinatorial(spec.cls));
  CHECK(j["t_s"] == mixing_time_statistical(spec));

  Rat total(0);
  auto dist = step_distribution(spec, 4);
  for (const auto& rho : partitions_of(5)) {
    Rat mass = parse_rat(j["distribution"][partition_plus(rho)].get<std::string>());
    CHECK(mass == dist.mass_of(CycleType{rho}));
    total += mass;
  }
  CHECK(total == 1);

  auto s1 = run_cli("walk --n 5 --class 3,1,1 --k 4 --trials 5000 --seed 11 --threads 1");
  auto s6 = run_cli("walk --n 5 --class 3,1,1 --k 4 --trials 5000 --seed 11 --threads 6");
  REQUIRE(s1.code == 0);
  CHECK(s1.out == s6.out);
  auto je = ordered_json::parse(s1.out);
  Rat emp_total(0);
  for (auto& [key, val] : je["empirical"]["classes"].items())
    emp_total += parse_rat(val.get<std::string>());
  CHECK(emp_total == 1);
}

TEST_CASE("audit reports are byte-identical across thread counts") {
  auto t1 = run_cli("audit --suite stat-bounds --n 6 --threads 1");
  auto t4 = run_cli("audit --suite stat-bounds --n 6 --threads 4");
  REQUIRE(t1.code == 0);
  CHECK(t1.out == t4.out);
  auto j = ordered_json::parse(t1.out);
  CHECK(j["suite"] == "stat-bounds");
  CHECK(audit_hard_failures(j) == 0);
}

TEST_CASE("main-term record carries invariants at the stated precision") {
  auto r = run_cli("main-term --preset 'fuchsian(r=3;a=2,3,7;s=0;t=0)' --n 40 --precision 25");
  REQUIRE(r.code == 0);
  auto j = ordered_json::parse(r.out);
  CHECK(j["precision"] == 25);
  CHECK(j["mu"] == "1/42");
  CHECK(j["alpha"] == "1/42");
  CHECK(j["period"] == "42");
  double logged = std::stod(j["log_value"].get<std::string>());
  double expect = (double)main_term_log(FuchsianPresentation({2, 3, 7}, {}, 0), 40, 40);
  CHECK(logged == Catch::Approx(expect).epsilon(1e-12));
}
