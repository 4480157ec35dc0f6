#include "blochkit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "blochkit/bloch.hpp"
#include "blochkit/constants.hpp"
#include "blochkit/mult_operator.hpp"
#include "blochkit/probe.hpp"
#include "blochkit/report.hpp"
#include "blochkit/verify.hpp"

namespace blochkit {

namespace {

constexpr const char* kFooter = R"(Domains: disk, ball:n, polydisk:n, cartan1:m,n (m >= n), cartan2:n, cartan3:n (n >= 2),
cartan4:n (n != 2), exc1, exc2, product(ball:2,polydisk:1). Case-insensitive.

Coordinates are flattened: products concatenate their factors in order;
cartan1:m,n lists Z row-major (m*n entries); cartan2:n lists the upper
triangle i <= j row-major; cartan3:n lists the strict upper triangle i < j
row-major; polydisk:n and ball:n use z1..zn.

Symbols: polynomials in z1..zn with complex literals (2, 0.5i, 1+2i, i),
+ - * ^ and parentheses, plus fw(k, w) = 1/2 Log((1 + conj(w) z_k)/(1 - conj(w) z_k))
with |w| < 1 and h(k, w) = 1/2 Log((|w| + conj(w) z_k)/(|w| - conj(w) z_k)).

Points: comma-separated complex literals, e.g. --point "0.3, 0.1-0.2i".

Exit codes: 0 ok, 1 usage error, 2 numerical-domain error, 3 suite failure.
The default seed can be set with BLOCHKIT_SEED; --config reads key = value lines;
quote values that contain commas, e.g. point = "0.3,0".)";

struct Options {
  std::string domain;
  std::string symbol;
  std::string point;
  int samples = 20000;
  std::uint64_t seed = 42;
  std::string eps_ladder = "0.1,0.01,0.001";
  std::string suite = "all";
  std::string out;
  std::string format = "json";
  int k = 16;
  std::string question;
  int points = 100;
  bool timing = false;
};

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw DomainError("bad --eps-ladder entry '" + item + "'");
    }
  }
  if (v.empty()) throw DomainError("--eps-ladder is empty");
  return v;
}

struct Context {
  const Options& opt;
  SamplingConfig cfg;

  DomainDescriptor domain() const {
    if (opt.domain.empty()) throw DomainError("--domain is required");
    return parse_domain(opt.domain);
  }
  SymbolExpr symbol(const DomainDescriptor& d) const {
    if (opt.symbol.empty()) throw DomainError("--symbol is required");
    return parse_symbol(opt.symbol, d.ambient_dimension());
  }
  Point point(const DomainDescriptor& d) const {
    if (opt.point.empty()) throw DomainError("--point is required");
    Point z = parse_point(opt.point);
    if (z.size() != d.ambient_dimension())
      throw DomainError("--point has " + std::to_string(z.size()) + " coordinates, " + d.to_string() + " needs " +
                        std::to_string(d.ambient_dimension()));
    return z;
  }
};

nlohmann::ordered_json point_json(const Point& z) {
  auto a = nlohmann::ordered_json::array();
  for (int i = 0; i < z.size(); ++i) a.push_back({z[i].real(), z[i].imag()});
  return a;
}

int run_command(const std::string& cmd, const Context& ctx, AnalysisReport& rep) {
  const auto& opt = ctx.opt;
  const auto& cfg = ctx.cfg;

  if (cmd == "domain") {
    const auto d = ctx.domain();
    rep.add(ResultEntry::scalar("ambient_dimension", d.ambient_dimension(), "domain descriptor"));
    rep.verdicts["canonical"] = d.to_string();
    rep.verdicts["metric_supported"] = metric_supported(d);
    if (!opt.point.empty()) {
      const Point z = ctx.point(d);
      const bool inside = contains(d, z);
      rep.verdicts["contains"] = inside;
      if (inside) rep.add(ResultEntry::scalar("gauge", gauge(d, z), "domain gauge"));
    }
  } else if (cmd == "qf") {
    const auto d = ctx.domain();
    const auto f = ctx.symbol(d);
    const Point z = ctx.point(d);
    rep.add(ResultEntry::scalar("Q_f", q_value(d, f, z), "Q_f = sup_u |grad f . u| / H_z(u,u)^(1/2)"));
  } else if (cmd == "beta") {
    const auto d = ctx.domain();
    const auto f = ctx.symbol(d);
    const auto cert = certified_beta_upper(d, f);
    const auto beta = beta_estimate(d, f, cfg, cert);
    rep.add(ResultEntry::from("beta_f", beta, "beta_f = sup_z Q_f(z)"));
    rep.add(ResultEntry::from("bloch_norm", bloch_norm_estimate(d, f, cfg, cert), "||f||_B = |f(0)| + beta_f"));
    if (beta.argmax) rep.verdicts["argmax"] = point_json(*beta.argmax);
  } else if (cmd == "omega") {
    const auto d = ctx.domain();
    const Point z = ctx.point(d);
    rep.add(ResultEntry::from("omega_bounds", omega_bounds(d, z), "omega_0(z) <= omega(z) <= rho(z, 0)"));
    OmegaFamilyConfig fam;
    fam.seed = cfg.seed;
    rep.add(ResultEntry::scalar("omega_empirical_lower", omega_empirical_lower(d, z, fam),
                                "omega(z) = sup |f(z)| over ||f||_B <= 1, f(0) = 0", EstimateMode::SampledLower));
    fam.star_little = true;
    rep.add(ResultEntry::scalar("omega0_empirical_lower", omega_empirical_lower(d, z, fam),
                                "omega_0(z): the same over the *-little Bloch space", EstimateMode::SampledLower));
  } else if (cmd == "rho") {
    const auto d = ctx.domain();
    const Point z = ctx.point(d);
    rep.add(ResultEntry::from("rho_from_origin", rho_from_origin(d, z, true), "Bergman distance from the origin"));
  } else if (cmd == "sigma") {
    const auto d = ctx.domain();
    const auto psi = ctx.symbol(d);
    rep.add(ResultEntry::from("sigma", sigma_estimate(d, psi, cfg, SigmaKind::Sigma), "sigma_psi = sup omega Q_psi"));
    rep.add(ResultEntry::from("sigma0", sigma_estimate(d, psi, cfg, SigmaKind::Sigma0),
                              "sigma_0,psi = sup omega_0 Q_psi"));
  } else if (cmd == "bounds") {
    const auto d = ctx.domain();
    const auto psi = ctx.symbol(d);
    const auto r = operator_report(d, psi, cfg);
    const auto& nb = r.bounds;
    rep.add(ResultEntry::from("sup_norm", nb.sup_norm, "||psi||_inf"));
    rep.add(ResultEntry::from("bloch_norm", nb.bloch_norm, "||psi||_B = |psi(0)| + beta_psi"));
    rep.add(ResultEntry::from("sigma", nb.sigma, "sigma_psi = sup omega Q_psi"));
    rep.add(ResultEntry::from("sigma0", nb.sigma0, "sigma_0,psi = sup omega_0 Q_psi"));
    rep.add(ResultEntry::scalar("norm_lower", nb.lower, "max{||psi||_B, ||psi||_inf} <= ||M_psi||",
                                EstimateMode::SampledLower));
    rep.add(ResultEntry::scalar("norm_upper", nb.upper_estimate,
                                "||M_psi|| <= max{||psi||_B, ||psi||_inf + sigma_psi}",
                                EstimateMode::SampledLower));
    rep.add(ResultEntry::scalar("norm_upper_certified", nb.upper_certified,
                                "||M_psi|| <= max{||psi||_B, ||psi||_inf + sigma_psi}",
                                EstimateMode::AnalyticBounds));
    rep.add(ResultEntry::scalar("norm_upper_little", nb.upper_estimate_star,
                                "on the *-little space: max{||psi||_B, ||psi||_inf + sigma_0,psi}",
                                EstimateMode::SampledLower));
    const auto& b = r.boundedness;
    rep.verdicts["boundedness"] = to_string(b.verdict);
    rep.verdicts["boundedness_little"] = to_string(b.little_star_verdict);
    rep.verdicts["shells"] = b.shells;
    rep.verdicts["criterion_maxima"] = b.criterion_maxima;
    rep.verdicts["sup_maxima"] = b.sup_maxima;
    rep.verdicts["decay"] = to_string(b.decay.verdict);
  } else if (cmd == "opnorm") {
    const auto d = ctx.domain();
    const auto psi = ctx.symbol(d);
    const auto op = empirical_opnorm_lower(d, psi, default_battery(d, cfg.seed), cfg);
    const auto nb = norm_bounds(d, psi, cfg);
    rep.add(ResultEntry::scalar("opnorm_empirical_lower", op.value, "||M_psi f||_B / ||f||_B over a test battery",
                                EstimateMode::SampledLower));
    rep.add(ResultEntry::scalar("norm_lower", nb.lower, "max{||psi||_B, ||psi||_inf} <= ||M_psi||",
                                EstimateMode::SampledLower));
    rep.add(ResultEntry::scalar("norm_upper", nb.upper_estimate,
                                "||M_psi|| <= max{||psi||_B, ||psi||_inf + sigma_psi}",
                                EstimateMode::SampledLower));
    rep.add(ResultEntry::scalar("gap", nb.upper_estimate - op.value, "upper bound minus empirical lower bound"));
    rep.verdicts["witness"] = op.witness;
  } else if (cmd == "spectrum") {
    const auto d = ctx.domain();
    const auto psi = ctx.symbol(d);
    const auto cloud = spectrum_cloud(d, psi, cfg.samples, cfg.seed);
    const std::string ref = "spectrum of M_psi = closure of psi(D)";
    rep.add(ResultEntry::scalar("points", static_cast<double>(cloud.points.size()), ref));
    rep.add(ResultEntry::scalar("max_modulus", cloud.max_modulus, ref));
    rep.add(ResultEntry::scalar("re_min", cloud.re_min, ref));
    rep.add(ResultEntry::scalar("re_max", cloud.re_max, ref));
    rep.add(ResultEntry::scalar("im_min", cloud.im_min, ref));
    rep.add(ResultEntry::scalar("im_max", cloud.im_max, ref));
    rep.add(ResultEntry::scalar("hull_area", cloud.hull_area, ref));
    if (!opt.point.empty()) {
      const Point l = parse_point(opt.point);
      if (l.size() != 1) throw DomainError("spectrum --point takes a single lambda");
      rep.add(ResultEntry::scalar("distance", cloud.distance(l[0]), ref));
      if (metric_supported(d)) {
        const auto sigma = sigma_estimate(d, psi, cfg, SigmaKind::Sigma);
        const double s = sigma.mode == EstimateMode::SampledLower ? sigma.lower : sigma.upper;
        if (auto scale = cloud.resolvent_scale(l[0], s))
          rep.add(ResultEntry::scalar("resolvent_scale", *scale, "sigma of 1/(psi - lambda) <= sigma_psi / alpha^2"));
      }
    }
  } else if (cmd == "compactness") {
    const auto d = ctx.domain();
    const auto psi = ctx.symbol(d);
    const auto v = compactness_verdict(d, psi, cfg);
    rep.verdicts["compactness"] = v.compact ? "compact" : "not-compact";
    rep.verdicts["symbolic"] = v.symbolic;
    rep.verdicts["reason"] = v.reason;
    for (const auto& [key, w] : {std::pair{"witness_a", v.witness_a}, std::pair{"witness_b", v.witness_b}})
      if (w) rep.verdicts[key] = {{"point", point_json(w->first)}, {"value", {w->second.real(), w->second.imag()}}};
  } else if (cmd == "isometry") {
    const auto d = ctx.domain();
    const auto psi = ctx.symbol(d);
    const auto r = isometry_verdict(d, psi, opt.k, cfg);
    rep.add(ResultEntry::scalar("bloch_constant", r.bloch_constant, "Bloch constant c_D"));
    rep.verdicts["isometry"] = to_string(r.verdict);
    rep.verdicts["class_D"] = r.class_d;
    rep.verdicts["reason"] = r.reason;
    rep.verdicts["psi0"] = {r.psi0.real(), r.psi0.imag()};
    rep.verdicts["power_sequence"] = r.power_sequence;
    rep.verdicts["threshold"] = 1.0 - r.bloch_constant;
    rep.verdicts["crossing"] = r.crossing ? nlohmann::ordered_json(*r.crossing) : nlohmann::ordered_json();
    rep.verdicts["power_norm_lower"] = r.power_norm_lower;
  } else if (cmd == "constants") {
    std::vector<BlochConstantEntry> entries;
    if (!opt.domain.empty())
      entries.push_back(bloch_constant_entry(ctx.domain()));
    else
      entries = bloch_constant_table();
    auto cls = nlohmann::ordered_json::object();
    for (const auto& e : entries) {
      rep.add(ResultEntry::scalar(e.descriptor.to_string(), e.value, e.formula));
      cls[e.descriptor.to_string()] = in_class_D(e.descriptor);
    }
    rep.verdicts["class_D"] = std::move(cls);
  } else if (cmd == "verify") {
    VerifyConfig vc;
    vc.seed = cfg.seed;
    vc.samples = cfg.samples;
    rep.checks = run_suite(opt.suite, vc);
    rep.verdicts["suite"] = opt.suite;
    return rep.all_checks_pass() ? kExitOk : kExitSuiteFailure;
  } else if (cmd == "probe") {
    if (opt.question.empty()) throw DomainError("--question is required");
    const auto d = ctx.domain();
    std::optional<SymbolExpr> psi;
    if (!opt.symbol.empty()) psi = ctx.symbol(d);
    auto probe = run_probe(opt.question, d, psi, cfg, opt.points, parse_ladder(opt.eps_ladder));
    probe.command = rep.command;
    probe.domain = rep.domain;
    probe.symbol = rep.symbol;
    probe.seed = rep.seed;
    probe.samples = rep.samples;
    rep = std::move(probe);
  }
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"blochkit: Bloch-space multiplication-operator toolkit", "blochkit"};
  app.footer(kFooter);
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; flags override it");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());

  Options opt;
  app.add_option("--domain", opt.domain, "domain string, e.g. ball:2");
  app.add_option("--symbol", opt.symbol, "symbol expression");
  app.add_option("--point", opt.point, "comma-separated complex coordinates");
  app.add_option("--samples", opt.samples, "interior samples for sup estimates")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "random seed")->envname("BLOCHKIT_SEED");
  app.add_option("--eps-ladder", opt.eps_ladder, "decreasing boundary distances, comma-separated");
  app.add_option("--suite", opt.suite, "verify suite")
      ->check(CLI::IsMember([] {
        auto v = suite_names();
        v.push_back("all");
        return v;
      }()));
  app.add_option("--out", opt.out, "write the report to this file");
  app.add_option("--format", opt.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--k", opt.k, "power depth for isometry evidence")->check(CLI::PositiveNumber);
  app.add_option("--question", opt.question, "probe question")->check(CLI::IsMember(probe_questions()));
  app.add_option("--points", opt.points, "rows per probe table")->check(CLI::PositiveNumber);
  app.add_flag("--timing", opt.timing, "record wall time in elapsed_ms (otherwise 0)");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"domain", "describe a domain; membership and gauge of --point"},
      {"qf", "Q_f at a point"},
      {"beta", "Bloch seminorm and norm of a symbol"},
      {"omega", "bounds on omega(z) and omega_0(z)"},
      {"rho", "Bergman distance from the origin"},
      {"sigma", "sigma_psi and sigma_0,psi"},
      {"bounds", "operator-norm bounds and boundedness evidence"},
      {"opnorm", "empirical lower bound on the operator norm"},
      {"spectrum", "range cloud of the symbol"},
      {"compactness", "compactness verdict"},
      {"isometry", "isometry verdict"},
      {"constants", "Bloch constants"},
      {"verify", "run a verification suite"},
      {"probe", "exploratory tables for open questions"}};
  for (const auto& [name, desc] : commands) app.add_subcommand(name, desc);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport rep;
  rep.command = cmd;
  rep.domain = opt.domain;
  rep.symbol = opt.symbol;
  rep.seed = opt.seed;
  rep.samples = opt.samples;
  Context ctx{opt, {}};
  ctx.cfg.samples = opt.samples;
  ctx.cfg.seed = opt.seed;

  int code = kExitOk;
  try {
    code = run_command(cmd, ctx, rep);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalDomainError& e) {
    err << "numerical-domain error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const UnsupportedOperation& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  if (opt.timing)
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();

  const std::string text = rep.render(opt.format);
  if (opt.out.empty()) {
    out << text;
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << opt.out << '\n';
      return kExitUsage;
    }
    f << text;
  }
  return code;
}

}  // namespace blochkit
