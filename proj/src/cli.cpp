#include "sofic/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sofic/calculator.hpp"
#include "sofic/crossed.hpp"
#include "sofic/groupoid_io.hpp"
#include "sofic/reports.hpp"
#include "sofic/representation.hpp"
#include "sofic/rng.hpp"
#include "sofic/scaling.hpp"
#include "sofic/sofic.hpp"
#include "sofic/suites.hpp"

namespace sofic::cli {

using reports::Json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string fixed(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

Rational positive_rational(const std::string &text, const char *what) {
  const Rational r = parse_rational(text);
  if (r <= 0) throw UsageError(std::string(what) + " must be positive");
  return r;
}

std::vector<Rational> parse_alphabet(const std::string &text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_rational(item));
  Rational total = 0;
  for (const auto &w : out) total += w;
  if (out.empty() || total != 1) throw UsageError("--alphabet weights must sum to 1");
  return out;
}

struct SourceSpec {
  std::string family;
  std::string file;
  std::size_t n = 1;
  std::size_t sum_bound = 0;  // 0: d
};

// Malformed descriptors and files are input errors, not runtime failures.
SystemPtr parse_family(const std::string &text) {
  try {
    return parse_system(text);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
}

GroupoidPtr read_groupoid(const std::string &path) {
  try {
    return load_groupoid(path);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
}

// Group families use their generators; groupoid files the greedy generating
// family.
SourcePtr make_source(const SourceSpec &s, std::size_t d) {
  if (!s.family.empty() && !s.file.empty()) throw UsageError("give either --family or --source, not both");
  const std::size_t m = s.sum_bound ? s.sum_bound : d;
  if (!s.file.empty()) {
    const GroupoidPtr g = read_groupoid(s.file);
    return SoficSource::from_groupoid(g, greedy_generators(g), s.n, m);
  }
  if (s.family.empty()) throw UsageError("one of --family or --source is required");
  const SystemPtr sys = parse_family(s.family);
  return SoficSource::from_ball(ball(sys, sys->generators(), s.n), m);
}

std::string csv_header(const std::string &command, std::uint64_t seed, const std::string &extra) {
  return "# sofic " + command + " seed=" + std::to_string(seed) + (extra.empty() ? "" : " " + extra) + "\n";
}

Json sigma_json(const SoficSource &source, const SoficCandidate &sigma) {
  Json a = Json::array();
  for (std::size_t b = 0; b < sigma.values.size(); ++b) {
    a.push_back({{"element", source.label(b)}, {"value", sigma.values[b].to_string()}});
  }
  return a;
}

} // namespace

std::vector<std::size_t> parse_degrees(const std::string &text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string &t) -> std::size_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad degree '" + t + "' in '" + text + "'");
    }
    const std::size_t v = std::stoul(t);
    if (v == 0) throw UsageError("degrees must be positive");
    return v;
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
    if (a > b) throw UsageError("empty degree range '" + text + "'");
    for (std::size_t d = a; d <= b; ++d) out.push_back(d);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(number(item));
  if (out.empty()) throw UsageError("empty degree list");
  return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Sofic dimension workbench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed = 1;
  int threads = 0;
  std::string degrees = "2..6", delta_text = "1/10";
  SourceSpec spec;

  // count
  std::string method = "exact", space = "auto";
  std::uint64_t trials = 100000, cap = 100'000'000;
  auto *count = app.add_subcommand("count", "SA counts and restricted statistics over a range of degrees");
  count->add_option("--family", spec.family, "zmod(m) | z | freeprod(..) | table(file)");
  count->add_option("--source", spec.file, "groupoid file");
  count->add_option("--n", spec.n, "radius")->capture_default_str();
  count->add_option("--d", degrees, "degrees: a..b or a,b,c")->capture_default_str();
  count->add_option("--delta", delta_text, "tolerance (a/b or decimal)")->capture_default_str();
  count->add_option("--sum-bound", spec.sum_bound, "max summands in sums (0: d)");
  count->add_option("--method", method, "exact | reference | montecarlo")->capture_default_str();
  count->add_option("--space", space, "candidate space: auto | partial | total")->capture_default_str();
  count->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
  count->add_option("--cap", cap, "search space cap")->capture_default_str();
  count->add_option("--seed", seed)->capture_default_str();
  count->add_option("--threads", threads, "worker threads (0: all)");

  // curve
  std::size_t m = 2;
  auto *curve = app.add_subcommand("curve", "closed-form statistic for Z/m against d");
  curve->add_option("--m", m, "cyclic order")->capture_default_str();
  curve->add_option("--d", degrees)->capture_default_str();
  curve->add_option("--delta", delta_text)->capture_default_str();

  // calc
  std::string expression, base_dir = ".";
  auto *calc_cmd = app.add_subcommand("calc", "evaluate s(G) for a groupoid expression");
  calc_cmd->add_option("expression", expression)->required();
  calc_cmd->add_option("--base-dir", base_dir, "directory for relative groupoid files");

  // verify
  std::string suite = "all", alphabet = "1/2,1/2";
  std::size_t partitions = 100, instances = 50;
  auto *verify = app.add_subcommand("verify", "lemma, HA and scaling certification suites");
  verify->add_option("--suite", suite, "all | c1 | c2 | c3 | ha | sum | scaling")->capture_default_str();
  verify->add_option("--source", spec.file, "groupoid file (default: R_2)");
  verify->add_option("--n", spec.n)->capture_default_str();
  verify->add_option("--d", degrees)->capture_default_str();
  verify->add_option("--delta", delta_text)->capture_default_str();
  verify->add_option("--alphabet", alphabet, "base measure mu0")->capture_default_str();
  verify->add_option("--partitions", partitions, "random partitions per member")->capture_default_str();
  verify->add_option("--instances", instances, "scaling instances")->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--threads", threads);

  // construct
  std::string what = "expand";
  std::size_t degree = 0;
  auto *construct = app.add_subcommand("construct", "sigma_gamma, sigma|_B and phi demos with certificates");
  construct->add_option("--what", what, "expand | restrict | phi")->capture_default_str();
  construct->add_option("--d", degree, "degree (default: 12 expand, 24 restrict, 4 phi)");
  construct->add_option("--delta", delta_text)->capture_default_str();
  construct->add_option("--seed", seed)->capture_default_str();
  construct->add_option("--threads", threads);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << reports::error_json("usage", e.what()).dump(2) << "\n";
    return 2;
  }

  try {
    if (count->parsed()) {
      const Rational delta = positive_rational(delta_text, "--delta");
      const auto ds = parse_degrees(degrees);
      std::string extra = "method=" + method + " space=" + space;
      if (method == "montecarlo") extra += " trials=" + std::to_string(trials);
      std::string body;
      std::string description;
      for (std::size_t d : ds) {
        const SourcePtr source = make_source(spec, d);
        description = source->describe();
        SAParams p = make_params(source, delta, d);
        if (space == "partial") {
          p.space = CandidateSpace::partial;
        } else if (space == "total") {
          p.space = CandidateSpace::total;
        } else if (space != "auto") {
          throw UsageError("unknown --space '" + space + "'");
        }
        const std::string prefix = std::to_string(d) + "," + to_string(delta) + "," + std::to_string(spec.n) + ",";
        EnumerationOptions opt;
        opt.cap = cap;
        opt.threads = threads;
        if (method == "exact" || method == "reference") {
          const EnumerationResult r = method == "exact" ? enumerate_sa(p, opt) : enumerate_sa_reference(p, opt);
          body += prefix + std::to_string(r.count) + "," + std::to_string(r.restricted_count) + "," +
                  fixed(restricted_statistic_value(r.restricted_count, d)) + "\n";
        } else if (method == "montecarlo") {
          const MonteCarloEstimate e = monte_carlo_count(p, trials, seed, threads);
          const double stat = e.estimate > 1 ? std::log(e.estimate) / (d * std::log(double(d))) : 0.0;
          body += prefix + fixed(e.estimate) + "," + fixed(e.standard_error) + "," + fixed(stat) + "\n";
        } else {
          throw UsageError("unknown --method '" + method + "'");
        }
      }
      out << csv_header("count", seed, "source=" + description + " " + extra);
      out << (method == "montecarlo" ? "d,delta,n,estimate,stderr,statistic\n" : "d,delta,n,count,restricted_count,statistic\n") << body;
      return 0;
    }

    if (curve->parsed()) {
      const Rational delta = positive_rational(delta_text, "--delta");
      if (m == 0) throw UsageError("--m must be positive");
      out << csv_header("curve", seed, "m=" + std::to_string(m) + " delta=" + to_string(delta));
      out << "d,count,statistic\n";
      for (std::size_t d : parse_degrees(degrees)) {
        out << d << "," << to_string(closed_form_count(m, d, delta)) << "," << fixed(closed_form_statistic(m, d, delta)) << "\n";
      }
      return 0;
    }

    if (calc_cmd->parsed()) {
      try {
        Json j = reports::to_json(calc::evaluate(std::string_view(expression), base_dir));
        j["expression"] = calc::to_string(*calc::parse(expression));
        out << j.dump(2) << "\n";
        return 0;
      } catch (const calc::ParseError &e) {
        Json j = reports::error_json("parse", e.what());
        j["error"]["position"] = e.position();
        err << j.dump(2) << "\n";
        return 2;
      } catch (const calc::EvaluationError &e) {
        err << reports::error_json("evaluation", e.what()).dump(2) << "\n";
        return 3;
      }
    }

    if (verify->parsed()) {
      const Rational delta = positive_rational(delta_text, "--delta");
      static const std::vector<std::string> known{"all", "c1", "c2", "c3", "ha", "sum", "scaling"};
      if (std::find(known.begin(), known.end(), suite) == known.end()) throw UsageError("unknown --suite '" + suite + "'");
      Json j;
      j["schema"] = reports::kSchema;
      j["command"] = "verify";
      j["suite"] = suite;
      j["seed"] = seed;
      j["delta"] = to_string(delta);
      bool pass = true;
      const bool lemmas = suite != "scaling";
      const bool need_ha = suite == "all" || suite == "ha" || suite == "sum";
      if (lemmas) {
        suites::LemmaSweepConfig cfg;
        cfg.groupoid = spec.file.empty() ? suites::r2() : read_groupoid(spec.file);
        cfg.F = spec.file.empty() ? suites::r2_generators(cfg.groupoid) : greedy_generators(cfg.groupoid);
        cfg.n = spec.n;
        cfg.delta = delta;
        cfg.degrees = parse_degrees(degrees);
        cfg.mu0 = parse_alphabet(alphabet);
        cfg.partitions = partitions;
        cfg.seed = seed;
        cfg.ha = need_ha;
        cfg.threads = threads;
        const suites::LemmaSweepOutcome o = suites::lemma_sweep(cfg);
        j["source"] = spec.file.empty() ? "R_2" : spec.file;
        j["sa_radius"] = o.sa_radius;
        j["members_per_degree"] = o.members_per_degree;
        j["partitions"] = partitions;
        auto bound = [&](const char *name, std::size_t violations, double worst, const std::string &witness,
                         std::size_t checked) {
          j["results"][name] = {{"pass", violations == 0}, {"violations", violations}, {"checked", checked},
                                {"worst_slack_ratio", worst}, {"witness", witness}};
          pass = pass && violations == 0;
        };
        if (suite == "all" || suite == "c1") bound("c1", o.c1_violations, o.c1_worst, o.c1_witness, o.c1.size());
        if (suite == "all" || suite == "c2") bound("c2", o.c2_violations, o.c2_worst, o.c2_witness, o.instances.size());
        if (suite == "all" || suite == "c3") bound("c3", o.c3_violations, o.c3_worst, o.c3_witness, o.instances.size());
        if (suite == "all" || suite == "ha") {
          const std::size_t v = o.phi0_violations + o.v_bound_violations + o.ha_violations + o.errors;
          j["results"]["ha"] = {{"pass", v == 0},
                                {"phi0_violations", o.phi0_violations},
                                {"v_bound_violations", o.v_bound_violations},
                                {"ha_violations", o.ha_violations},
                                {"errors", o.errors},
                                {"checked", o.instances.size()}};
          pass = pass && v == 0;
        }
        if (suite == "all" || suite == "sum") {
          const std::size_t v = o.sum_violations + o.errors;
          j["results"]["sum"] = {{"pass", v == 0}, {"violations", o.sum_violations}, {"checked", o.instances.size()}};
          pass = pass && v == 0;
        }
      }
      if (suite == "all" || suite == "scaling") {
        suites::ScalingSweepConfig cfg;
        cfg.delta = delta;
        cfg.instances = instances;
        cfg.seed = seed;
        cfg.threads = threads;
        const suites::ScalingSweepOutcome o = suites::scaling_sweep(cfg);
        j["results"]["scaling"] = {{"pass", o.pass()},
                                   {"instance", "trivial corner of R_2"},
                                   {"instances", o.instances.size()},
                                   {"expand_violations", o.expand_violations},
                                   {"restrict_violations", o.restrict_violations},
                                   {"roundtrip_violations", o.roundtrip_violations},
                                   {"errors", o.errors},
                                   {"worst_roundtrip_fraction", to_string(o.worst_roundtrip_fraction)}};
        pass = pass && o.pass();
      }
      j["pass"] = pass;
      out << j.dump(2) << "\n";
      return pass ? 0 : 1;
    }

    if (construct->parsed()) {
      const Rational delta = positive_rational(delta_text, "--delta");
      const GroupoidPtr g = suites::r2();
      Json j;
      j["schema"] = reports::kSchema;
      j["command"] = "construct";
      j["what"] = what;
      j["seed"] = seed;
      if (degree == 0) degree = what == "restrict" ? 24 : what == "phi" ? 4 : 12;
      j["degree"] = degree;
      if (what == "expand") {
        const CornerData cd = make_corner_data(g, {0});
        const std::vector<PartialBisection> F{PartialBisection::identity(cd.corner.groupoid)};
        const SourcePtr src = SoficSource::from_groupoid(cd.corner.groupoid, F, 1, 1);
        SoficCandidate sigma{degree, {}};
        for (std::size_t b = 0; b < src->base_count(); ++b) {
          sigma.values.push_back(src->bisection(b).empty() ? PartialPermutation(degree) : PartialPermutation::identity(degree));
        }
        ExpansionOptions opt;
        opt.gamma_seed = seed;
        const ScalingResult r = expand_sigma(src, sigma, cd, 1, delta, opt);
        j["input"] = sigma_json(*src, sigma);
        j["result"] = reports::to_json(r);
        j["sigma"] = sigma_json(*r.source, r.sigma);
        j["pass"] = r.report.is_member;
      } else if (what == "restrict") {
        const CornerData cd = make_corner_data(g, {0});
        const std::vector<PartialBisection> F{PartialBisection::identity(cd.corner.groupoid)};
        const SourcePtr src = SoficSource::from_groupoid(g, ambient_generators(cd, F), 1, 2);
        const Representation rep = regular_representation(g, degree);
        SoficCandidate sigma{degree, {}};
        for (std::size_t b = 0; b < src->base_count(); ++b) sigma.values.push_back(rep(src->bisection(b)));
        const ScalingResult r = restrict_sigma(src, sigma, cd, F, 1, delta);
        j["input"] = sigma_json(*src, sigma);
        j["result"] = reports::to_json(r);
        j["sigma"] = sigma_json(*r.source, r.sigma);
        j["pass"] = r.report.is_member;
      } else if (what == "phi") {
        const auto F = suites::r2_generators(g);
        auto cyl = std::make_shared<const CylinderSystem>(g, F, 1, std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
        const SpanBasis basis = span_basis(*cyl);
        const SourcePtr src = SoficSource::from_groupoid(g, augment_generators(g, F, 1), 4 * cyl->ball_size() + 1, 2);
        EnumerationOptions opt;
        opt.collect_members = true;
        opt.threads = threads;
        const EnumerationResult members = enumerate_sa(make_params(src, delta, degree), opt);
        if (members.members.empty()) throw std::runtime_error("no SA member at this degree and delta");
        const auto sigma = sigma_on_ball(*cyl, *src, members.members.front());
        const auto block_of = random_partition(degree, cyl->mu0(), splitmix64(seed));
        const HASystem ha(cyl, 2);
        const Phi0 phi0 = build_phi0(*cyl, basis, sigma, block_of, delta);
        const PhiResult phi = build_phi(ha, basis, phi0, sigma, delta);
        j["kappa"] = to_string(basis.kappa);
        j["gamma"] = to_string(basis.gamma);
        j["ell"] = basis.ell;
        j["phi0"] = reports::to_json(phi0.report);
        j["v_fraction"] = reports::exact(phi.v_fraction);
        j["v_bound"] = reports::exact(phi.v_bound);
        j["ha"] = reports::to_json(phi.report);
        Json vals = Json::array();
        for (std::size_t i = 0; i < ha.size(); ++i) {
          vals.push_back({{"element", ha.label(i)}, {"value", phi.candidate.phi[i].to_string()}});
        }
        j["phi"] = std::move(vals);
        j["pass"] = phi0.report.pass() && phi.v_bound_ok && phi.report.is_member;
      } else {
        throw UsageError("unknown --what '" + what + "'");
      }
      out << j.dump(2) << "\n";
      return j["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const UsageError &e) {
    err << reports::error_json("usage", e.what()).dump(2) << "\n";
    return 2;
  } catch (const InfeasibleError &e) {
    Json j = reports::error_json("infeasible", e.what());
    j["error"]["space"] = to_string(e.space());
    j["error"]["cap"] = to_string(e.cap());
    err << j.dump(2) << "\n";
    return 4;
  } catch (const std::exception &e) {
    err << reports::error_json("runtime", e.what()).dump(2) << "\n";
    return 3;
  }
  return 0;
}

} // namespace sofic::cli
