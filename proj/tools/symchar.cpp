// Command line front end. Every record is self-describing (command,
// parameters, version) and byte-identical across runs and thread counts;
// exact values are serialized as decimal / "p/q" strings, floats appear only
// in main-term records with their stated precision.

#include <symchar/audits.hpp>
#include <symchar/character.hpp>
#include <symchar/growth.hpp>
#include <symchar/io.hpp>
#include <symchar/rootnum.hpp>
#include <symchar/statistics.hpp>
#include <symchar/walks.hpp>

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

using namespace symchar;

namespace {

struct GlobalOpts {
  int threads = 1;
  std::uint64_t seed = 1729;
  int precision = 30;
};

ordered_json record(const char* command) {
  ordered_json j;
  j["command"] = command;
  j["version"] = version_string;
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

// ---------------------------------------------------------------------------

void run_chartable(int n, const std::string& classes) {
  int q_filter = 0;
  if (!classes.empty()) {
    const std::string prefix = "q-regular:";
    if (classes.rfind(prefix, 0) != 0)
      throw std::invalid_argument("--classes expects the form q-regular:Q");
    q_filter = std::stoi(classes.substr(prefix.size()));
    if (q_filter < 2) throw std::invalid_argument("--classes q-regular:Q needs Q >= 2");
  }

  const auto& parts = partitions_of(n);
  std::vector<const Partition*> cols;
  for (const auto& rho : parts) {
    bool keep = true;
    if (q_filter)
      for (int p : rho.parts())
        if (p % q_filter == 0) keep = false;
    if (keep) cols.push_back(&rho);
  }

  std::cout << "# command=chartable version=" << version_string << " n=" << n
            << " classes=" << (classes.empty() ? "all" : classes) << "\n";
  std::cout << "partition,class,value\n";
  CharacterEngine eng;
  for (const auto& lam : parts)
    for (const auto* rho : cols)
      std::cout << partition_plus(lam) << "," << partition_plus(*rho) << ","
                << int_str(eng.value(lam, *rho)) << "\n";
}

void run_homcount(int q, int n_max) {
  const auto& seq = hom_sequence(q, n_max);
  for (int n = 1; n <= n_max; ++n) {
    ordered_json j = record("homcount");
    j["q"] = q;
    j["n"] = n;
    j["count"] = int_str(seq[n]);
    emit(j);
  }
}

void run_moments(int q, const std::string& e_text, int n, bool alternating) {
  MomentSpec spec(q, parse_exponents(e_text), alternating);
  ordered_json j = record("moments");
  j["q"] = q;
  j["e"] = e_text;
  j["n"] = n;
  j["alternating"] = alternating;
  j["value"] = int_str(cycle_moment_sum(spec, n));
  emit(j);
}

void run_rootmult(int n, int q, const std::string& mu_text) {
  std::optional<Partition> mu;
  if (!mu_text.empty()) mu = parse_partition(mu_text);

  std::cout << "# command=rootmult version=" << version_string << " n=" << n << " q=" << q
            << (mu ? " mu=" + mu_text : std::string()) << "\n";
  std::cout << "lambda,q,m,l\n";
  const auto& parts = partitions_of(n);
  auto mult = multiplicity_table(n, q);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (mu) {
      std::vector<int> rest(parts[i].parts().begin() + 1, parts[i].parts().end());
      if (parts[i].norm() == 0 || Partition(rest) != *mu) continue;
    }
    std::cout << partition_plus(parts[i]) << "," << q << "," << int_str(mult[i]) << ","
              << rat_str(demuskin_coeff(parts[i], q)) << "\n";
  }
}

void run_growth(const GlobalOpts& g, const std::string& preset, int n_max,
                const std::string& emit_fmt) {
  Presentation p = parse_preset(preset);
  std::string key = canonical_preset(p);

  std::vector<Rat> h = load_h_cache(key, n_max);
  if ((int)h.size() < n_max) {
    h.clear();
    for (int k = 1; k <= n_max; ++k) h.push_back(make_rat(hom_count(p, k, g.threads), factorial(k)));
    store_h_cache(key, h);
  }
  GrowthSeries gs = subgroup_counts(h);

  if (emit_fmt == "csv") {
    std::cout << "# command=growth version=" << version_string << " preset=" << key
              << " n-max=" << n_max << "\n";
    std::cout << "n,h,s,d\n";
    for (int k = 1; k <= n_max; ++k)
      std::cout << k << "," << rat_str(gs.h[k - 1]) << "," << int_str(gs.s[k - 1]) << ","
                << rat_str(gs.d[k]) << "\n";
    return;
  }
  for (int k = 1; k <= n_max; ++k) {
    ordered_json j = record("growth");
    j["preset"] = key;
    j["n"] = k;
    j["h"] = rat_str(gs.h[k - 1]);
    j["s"] = int_str(gs.s[k - 1]);
    j["d"] = rat_str(gs.d[k]);
    emit(j);
  }
}

void run_walk(const GlobalOpts& g, int n, const std::string& cls_text, int k, long trials) {
  Partition cls_part = parse_partition(cls_text);
  if (cls_part.weight() != n)
    throw std::invalid_argument("--class must be a partition of --n");
  CycleType cls{cls_part};
  WalkSpec spec(cls);

  ordered_json j = record("walk");
  j["n"] = n;
  j["class"] = audit_detail::parts_json(cls_part);
  j["k"] = k;
  j["exact_l2_sq"] = rat_str(l2_distance_sq(spec, k));
  j["t_c"] = mixing_time_combinatorial(cls);
  bool degenerate = walk_degenerate(spec);
  j["degenerate"] = degenerate;
  j["t_s"] = degenerate ? ordered_json(nullptr) : ordered_json(mixing_time_statistical(spec));

  auto dist = step_distribution(spec, k);
  ordered_json dj;
  for (const auto& rho : partitions_of(n))
    dj[partition_plus(rho)] = rat_str(dist.mass_of(CycleType{rho}));
  j["distribution"] = std::move(dj);

  if (trials > 0) {
    auto emp = sample_walk(spec, k, trials, g.seed, g.threads);
    ordered_json ej;
    ej["trials"] = trials;
    ej["seed"] = g.seed;
    Rat tv(0);
    ordered_json cj;
    for (const auto& rho : partitions_of(n)) {
      CycleType c{rho};
      cj[partition_plus(rho)] = rat_str(emp.mass_of(c));
      tv += abs(emp.mass_of(c) - dist.mass_of(c));
    }
    ej["classes"] = std::move(cj);
    ej["total_variation"] = rat_str(Rat(tv / 2));
    j["empirical"] = std::move(ej);
  }
  emit(j);
}

int run_audit_cmd(const GlobalOpts& g, const std::string& suite, int n) {
  AuditOptions opt;
  opt.n = n;
  opt.threads = g.threads;
  opt.seed = g.seed;
  ordered_json j = run_audit(suite, opt);
  std::cout << j.dump(2) << "\n";
  return audit_hard_failures(j) > 0 ? 1 : 0;
}

void run_main_term(const GlobalOpts& g, const std::string& preset, long n) {
  Presentation p = parse_preset(preset);
  GroupInvariants inv = invariants(p);
  Real value = main_term_log(p, n, (unsigned)g.precision + 10);

  std::ostringstream num;
  num << std::setprecision(g.precision) << value;

  ordered_json j = record("main-term");
  j["preset"] = canonical_preset(p);
  j["n"] = n;
  j["precision"] = g.precision;
  j["log_value"] = num.str();
  j["mu"] = rat_str(inv.mu);
  j["alpha"] = rat_str(inv.alpha);
  j["period"] = int_str(inv.period);
  j["delta"] = inv.delta;
  emit(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact character sums, root numbers, subgroup growth and class walks for S_n"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", g.seed, "seed for empirical sampling");
  app.add_option("--precision", g.precision, "significant digits in main-term records")
      ->check(CLI::Range(2, 1000));

  auto* ct = app.add_subcommand("chartable", "exact character table as CSV");
  int ct_n = 0;
  std::string ct_classes;
  ct->add_option("--n", ct_n, "degree")->required()->check(CLI::Range(1, 28));
  ct->add_option("--classes", ct_classes, "restrict classes, e.g. q-regular:3");

  auto* hc = app.add_subcommand("homcount", "|Hom(C_q, S_n)| as JSON lines");
  int hc_q = 0, hc_n = 0;
  hc->add_option("--q", hc_q, "cyclic order")->required()->check(CLI::Range(1, 1 << 20));
  hc->add_option("--n-max", hc_n, "largest degree")->required()->check(CLI::Range(1, 5000));

  auto* mo = app.add_subcommand("moments", "cycle moment sums over q-th roots of 1");
  int mo_q = 0, mo_n = 0;
  std::string mo_e;
  bool mo_alt = false;
  mo->add_option("--q", mo_q, "root order")->required()->check(CLI::Range(1, 1 << 20));
  mo->add_option("--e", mo_e, "exponents t:e_t, e.g. 1:2,2:1")->required();
  mo->add_option("--n", mo_n, "degree")->required()->check(CLI::Range(0, 2000));
  mo->add_flag("--alternating", mo_alt, "weight by parity of the root");

  auto* rm = app.add_subcommand("rootmult", "root-number multiplicities as CSV");
  int rm_n = 0, rm_q = 0;
  std::string rm_mu;
  rm->add_option("--n", rm_n, "degree")->required()->check(CLI::Range(1, 26));
  rm->add_option("--q", rm_q, "root order")->required()->check(CLI::Range(2, 64));
  rm->add_option("--mu", rm_mu, "restrict to lambda with lambda minus its first row = mu");

  auto* gr = app.add_subcommand("growth", "hom counts, subgroup counts and reciprocal series");
  std::string gr_preset, gr_emit = "json";
  int gr_n = 0;
  gr->add_option("--preset", gr_preset, "presentation, e.g. fuchsian(r=3;a=2,3,7;s=0;t=0)")
      ->required();
  gr->add_option("--n-max", gr_n, "largest index")->required()->check(CLI::Range(1, 64));
  gr->add_option("--emit", gr_emit, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* wa = app.add_subcommand("walk", "exact class-walk distribution and mixing data");
  int wa_n = 0, wa_k = 0;
  long wa_trials = 0;
  std::string wa_class;
  wa->add_option("--n", wa_n, "degree")->required()->check(CLI::Range(2, 20));
  wa->add_option("--class", wa_class, "step class as a partition, e.g. 2,1,1")->required();
  wa->add_option("--k", wa_k, "number of steps")->required()->check(CLI::Range(1, 1 << 16));
  wa->add_option("--trials", wa_trials, "empirical sample size")->check(CLI::Range(1L, 100000000L));

  auto* au = app.add_subcommand("audit", "reference-table and bound audits as JSON");
  std::string au_suite = "all";
  int au_n = 8;
  au->add_option("--suite", au_suite, "one of all, char-bounds, stat-bounds, root-est, "
                                      "fuchs-alpha, demuskin-depth2, growth-series, walk-window");
  au->add_option("--n", au_n, "size parameter")->check(CLI::Range(2, 16));

  auto* mt = app.add_subcommand("main-term", "log of the leading growth term");
  std::string mt_preset;
  long mt_n = 0;
  mt->add_option("--preset", mt_preset, "presentation")->required();
  mt->add_option("--n", mt_n, "index")->required()->check(CLI::Range(1L, 1000000000L));

  for (auto* sub : {ct, hc, mo, rm, gr, wa, au, mt}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*ct) run_chartable(ct_n, ct_classes);
    if (*hc) run_homcount(hc_q, hc_n);
    if (*mo) run_moments(mo_q, mo_e, mo_n, mo_alt);
    if (*rm) run_rootmult(rm_n, rm_q, rm_mu);
    if (*gr) run_growth(g, gr_preset, gr_n, gr_emit);
    if (*wa) run_walk(g, wa_n, wa_class, wa_k, wa_trials);
    if (*au) return run_audit_cmd(g, au_suite, au_n);
    if (*mt) run_main_term(g, mt_preset, mt_n);
  } catch (const resource_error& e) {
    std::cerr << "resource ceiling: " << e.what() << "\n";
    return 3;
  } catch (const integrity_error& e) {
    std::cerr << "integrity violation: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
