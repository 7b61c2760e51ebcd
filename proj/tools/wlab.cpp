#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "waringlab/arcs.hpp"
#include "waringlab/constants.hpp"
#include "waringlab/expsum.hpp"
#include "waringlab/moments.hpp"
#include "waringlab/randbasis.hpp"
#include "waringlab/repcount.hpp"
#include "waringlab/runconfig.hpp"
#include "waringlab/singular.hpp"
#include "waringlab/smooth.hpp"

namespace {

using nlohmann::json;
using namespace wlab;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_atomic(out_path, content);
}

int cmd_constants(int k, int s, double t, long long k_min, long long k_max,
                  const std::string& out) {
  const auto tr = threshold_report(k);
  const auto oc = omega_c1_c2();
  json j;
  j["k"] = k;
  j["tau"] = tr.tau;
  j["tau_w"] = tr.tau_argmax_w;
  j["g0"] = tr.g0;
  j["s_threshold"] = tr.s_theorem;
  j["c1"] = oc.c1;
  j["c2"] = oc.c2;
  if (s > 0) {
    const auto model = ExponentModel::transcendental(k);
    j["delta_star"] = delta_star(model, s, t > 0 ? t : static_cast<double>(s));
    j["s"] = s;
  }
  const auto ledger = verify_inequalities(k_min > 0 ? k_min : k, k_max > 0 ? k_max : k);
  j["inequality_report"] = json::array();
  for (const auto& item : ledger.items) j["inequality_report"].push_back(item);
  j["inequalities_passed"] = ledger.all_passed;
  j["checks_run"] = ledger.checks_run;
  emit(out, j.dump(2) + "\n");
  std::cerr << "constants: k=" << k << " tau=" << tr.tau << " g0=" << tr.g0
            << (ledger.all_passed ? " ledger=pass" : " ledger=FAIL") << "\n";
  return ledger.all_passed ? 0 : 4;
}

int cmd_smooth(double p, double r, double eta, bool dump, const std::string& out) {
  std::ostringstream csv;
  if (eta > 0.0) {
    const auto rep = smooth_density_check(p, eta);
    csv << "P,R,count,rho_model,relative_gap\n";
    csv << fmt(p) << "," << fmt(std::pow(p, eta)) << "," << rep.smooth_count << ","
        << fmt(rep.rho_model) << "," << fmt(rep.relative_gap) << "\n";
    std::cerr << "smooth: |A| = " << rep.smooth_count << " gap " << rep.relative_gap << "\n";
  } else {
    SmoothSet set(p, r);
    csv << "P,R,count\n" << fmt(p) << "," << fmt(r) << "," << set.size() << "\n";
    if (dump) {
      csv << "members\n";
      for (auto n : set.members()) csv << n << "\n";
    }
    std::cerr << "smooth: |A(" << p << "," << r << ")| = " << set.size() << "\n";
  }
  emit(out, csv.str());
  return 0;
}

WeylVariant parse_variant(const std::string& v) {
  if (v == "f") return WeylVariant::kFull;
  if (v == "fs") return WeylVariant::kWeighted;
  if (v == "gs") return WeylVariant::kDyadic;
  if (v == "fts") return WeylVariant::kTruncated;
  throw ConfigError("weylsum: variant must be one of f, fs, gs, fts");
}

int cmd_weylsum(int k, int s, double p, double r, const std::string& variant,
                std::size_t grid, int workers, const std::string& out) {
  WeylSumSpec spec{k, s, p, r, parse_variant(variant)};
  const auto table = frequency_table(spec);
  const auto vals = table->eval_grid(grid, workers);
  std::ostringstream csv;
  csv << "alpha,re,im,abs\n";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double alpha = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    csv << fmt(alpha) << "," << fmt(vals[i].real()) << "," << fmt(vals[i].imag()) << ","
        << fmt(std::abs(vals[i])) << "\n";
  }
  emit(out, csv.str());
  std::cerr << "weylsum: " << grid << " points, " << table->freqs.size() << " terms\n";
  return 0;
}

int cmd_arcs(double p, int k, double q, const std::string& alpha_file, std::size_t grid,
             const std::string& out) {
  std::vector<double> alphas;
  if (!alpha_file.empty()) {
    std::ifstream in(alpha_file);
    if (!in) throw ConfigError("arcs: cannot open " + alpha_file);
    double a;
    while (in >> a) alphas.push_back(a);
  } else {
    for (std::size_t i = 0; i < grid; ++i)
      alphas.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(grid));
  }
  std::ostringstream csv;
  csv << "alpha,label,a,q,err\n";
  std::size_t majors = 0;
  for (double alpha : alphas) {
    const auto lab = classify(alpha, q, p, k);
    if (lab.major) ++majors;
    csv << fmt(alpha) << "," << (lab.major ? "major" : "minor") << "," << lab.approx.a << ","
        << lab.approx.q << "," << fmt(lab.approx.err) << "\n";
  }
  emit(out, csv.str());
  std::cerr << "arcs: " << majors << "/" << alphas.size() << " major\n";
  return 0;
}

int cmd_moments(int k, int s, double p, double r, double t, int w, const std::string& arcs,
                double q, std::size_t grid, int workers, const std::string& out) {
  WeylSumSpec spec{k, s, p, r, WeylVariant::kDyadic};
  json j;
  j["k"] = k;
  j["s"] = s;
  j["P"] = p;
  j["R"] = r;
  if (w > 0) {
    j["w"] = w;
    j["exact_even_moment"] = exact_even_moment(*frequency_table(spec), static_cast<unsigned>(w));
  }
  if (t > 0.0) {
    ArcSelection sel;
    sel.q = q;
    if (arcs == "full") sel.kind = ArcKind::kFull;
    else if (arcs == "major") sel.kind = ArcKind::kMajor;
    else if (arcs == "truncated") sel.kind = ArcKind::kTruncated;
    else if (arcs == "minor") sel.kind = ArcKind::kMinor;
    else throw ConfigError("moments: arcs must be full|major|truncated|minor");
    const auto res = quad_moment(spec, t, sel, grid, workers);
    j["t"] = t;
    j["arcs"] = arcs;
    j["Q"] = q;
    j["grid"] = grid;
    j["quad_moment"] = res.value;
    j["grid_warning"] = res.grid_warning;
  }
  emit(out, j.dump(2) + "\n");
  std::cerr << "moments: done\n";
  return 0;
}

int cmd_singular(std::uint64_t n, int k, int s, const std::string& route, std::uint64_t q_limit,
                 int depth, const std::string& out) {
  SingularOptions opt;
  opt.q_limit = q_limit;
  opt.depth_cap = depth;
  const auto r = route == "euler" ? SingularRoute::kEulerProduct : SingularRoute::kQSum;
  const auto res = sing_series(n, k, s, r, opt);
  json j;
  j["n"] = n;
  j["k"] = k;
  j["s"] = s;
  j["route"] = route;
  j["value"] = res.value;
  j["terms"] = res.terms;
  j["converged"] = res.converged;
  j["singular_integral_limit"] =
      std::pow(gamma_fn(1.0 / static_cast<double>(s)) / static_cast<double>(k),
               static_cast<double>(s));
  emit(out, j.dump(2) + "\n");
  std::cerr << "singular: S(" << n << ") = " << res.value << "\n";
  return 0;
}

int cmd_repcount(int k, int s, std::uint64_t n_lo, std::uint64_t n_hi, double r, double eta,
                 const std::string& variant, int j_tilde, const std::string& out) {
  std::ostringstream csv;
  csv << "n,weighted,count\n";
  if (n_hi < n_lo) n_hi = n_lo;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    RepQuery q;
    q.k = k;
    q.s = s;
    q.n = n;
    q.big_n = (n + 1) / 2;
    const double p = std::pow(2.0 * static_cast<double>(q.big_n), 1.0 / k);
    q.r = r > 0.0 ? r : std::pow(p, eta);
    if (variant == "plain") {
    } else if (variant == "rj") {
      q.j_tilde = j_tilde;
    } else if (variant == "phi") {
      q.lower_bound = std::pow(static_cast<double>(n) / std::log(static_cast<double>(n)),
                               1.0 / k);
    } else if (variant == "selfsmooth") {
      q.self_smooth = true;
      q.eta = eta;
    } else {
      throw ConfigError("repcount: variant must be plain|rj|phi|selfsmooth");
    }
    const auto res = rep_count(q);
    csv << n << "," << fmt(res.weighted) << "," << fmt(res.tuple_count) << "\n";
  }
  emit(out, csv.str());
  std::cerr << "repcount: done\n";
  return 0;
}

int cmd_sample_basis(std::uint64_t seed, int k, int s, double eta, double psi_c,
                     double psi_gamma, std::uint64_t x_max, const std::string& out) {
  BasisParams params;
  params.k = k;
  params.s = s;
  params.eta = eta;
  params.psi = GrowthFn{psi_c, psi_gamma, {}};
  params.x_max = x_max;
  const auto sample = sample_basis(seed, params);
  std::ostringstream csv;
  csv << "x,power\n";
  for (std::size_t i = 0; i < sample.member_x.size(); ++i)
    csv << sample.member_x[i] << "," << sample.member_powers[i] << "\n";
  emit(out, csv.str());
  std::cerr << "sample-basis: " << sample.member_x.size() << " members, clamp <= "
            << sample.clamp_threshold_x << "\n";
  return 0;
}

std::string records_csv(const ExperimentReport& rep) {
  std::ostringstream csv;
  csv << "n,r_s,r_plus,r_zero,r_eq,sing_psi,deviation,exceptional\n";
  for (const auto& rec : rep.records) {
    csv << rec.n << "," << fmt(rec.r_s) << "," << fmt(rec.r_plus) << "," << fmt(rec.r_zero)
        << "," << fmt(rec.r_eq) << "," << fmt(rec.sing_psi) << "," << fmt(rec.deviation) << ","
        << (rec.exceptional ? 1 : 0) << "\n";
  }
  return csv.str();
}

json summary_json(const RunConfig& cfg, const ExperimentReport& rep) {
  json j;
  j["config"] = json::parse(cfg.to_json_text());
  j["records"] = rep.records.size();
  j["members_used"] = rep.members_used;
  j["exceptional_fraction"] = rep.exceptional_fraction;
  j["predicted_density"] = rep.predicted_density;
  j["L_C"] = rep.l_c;
  j["M_c"] = rep.m_c;
  return j;
}

int cmd_verify(const std::string& preset, const std::string& config_path, std::uint64_t seed,
               int workers, const std::string& out_dir) {
  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("verify: cannot open " + config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = RunConfig::from_json_text(ss.str());
  } else {
    cfg = preset_config(preset.empty() ? "k2s9-short" : preset);
  }
  cfg.seed = seed;
  if (workers > 0) cfg.workers = workers;
  const auto rep = almost_all_experiment(cfg.to_experiment());
  const std::string base = out_dir.empty() ? "." : out_dir;
  write_atomic(base + "/records.csv", records_csv(rep));
  write_atomic(base + "/summary.json", summary_json(cfg, rep).dump(2) + "\n");
  std::printf("verify: %zu records, exceptional fraction %s (predicted %s), members %" PRIu64
              "\n",
              rep.records.size(), fmt(rep.exceptional_fraction).c_str(),
              fmt(rep.predicted_density).c_str(),
              static_cast<std::uint64_t>(rep.members_used));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational laboratory for weighted Waring representation counting"};
  app.require_subcommand(1);

  // constants
  auto* c_const = app.add_subcommand("constants", "scalar calculus and the inequality ledger");
  int ck = 14, cs = 0;
  double ct = 0.0;
  long long kmin = 0, kmax = 0;
  std::string cout_path;
  c_const->add_option("--k", ck, "degree");
  c_const->add_option("--s", cs, "variable count for delta_star");
  c_const->add_option("--t", ct, "moment order for delta_star");
  c_const->add_option("--kmin", kmin, "ledger range low");
  c_const->add_option("--kmax", kmax, "ledger range high");
  c_const->add_option("--out", cout_path, "output path");

  // smooth
  auto* c_smooth = app.add_subcommand("smooth", "smooth sets and density checks");
  double sp = 1000, sr = 10, seta = 0.0;
  bool sdump = false;
  std::string sout;
  c_smooth->add_option("--P", sp, "upper bound")->required();
  c_smooth->add_option("--R", sr, "smoothness bound");
  c_smooth->add_option("--eta", seta, "density check exponent");
  c_smooth->add_flag("--dump", sdump, "dump members");
  c_smooth->add_option("--out", sout, "output path");

  // weylsum
  auto* c_weyl = app.add_subcommand("weylsum", "weighted Weyl sums on a grid");
  int wk = 2, ws = 9, wworkers = 1;
  double wp = 100, wr = 10;
  std::string wvariant = "gs", wout;
  std::size_t wgrid = 1024;
  c_weyl->add_option("--k", wk)->required();
  c_weyl->add_option("--s", ws)->required();
  c_weyl->add_option("--P", wp)->required();
  c_weyl->add_option("--R", wr)->required();
  c_weyl->add_option("--variant", wvariant, "f|fs|gs|fts");
  c_weyl->add_option("--alpha-grid", wgrid, "grid points");
  c_weyl->add_option("--workers", wworkers);
  c_weyl->add_option("--out", wout);

  // arcs
  auto* c_arcs = app.add_subcommand("arcs", "classify alphas into major/minor arcs");
  double ap = 100, aq = 10;
  int ak = 2;
  std::string afile, aout;
  std::size_t agrid = 1024;
  c_arcs->add_option("--P", ap)->required();
  c_arcs->add_option("--k", ak)->required();
  c_arcs->add_option("--Q", aq)->required();
  c_arcs->add_option("--alphas", afile, "file of alpha values");
  c_arcs->add_option("--grid", agrid, "midpoint grid when no file given");
  c_arcs->add_option("--out", aout);

  // moments
  auto* c_mom = app.add_subcommand("moments", "even moments and arc-restricted quadrature");
  int mk = 2, ms = 9, mw = 0, mworkers = 1;
  double mp = 100, mr = 100, mt = 0.0, mq = 1.0;
  std::string marcs = "full", mout;
  std::size_t mgrid = 1 << 16;
  c_mom->add_option("--k", mk)->required();
  c_mom->add_option("--s", ms)->required();
  c_mom->add_option("--P", mp)->required();
  c_mom->add_option("--R", mr)->required();
  c_mom->add_option("--t", mt, "quadrature moment order");
  c_mom->add_option("--w", mw, "exact even moment order");
  c_mom->add_option("--arcs", marcs, "full|major|truncated|minor");
  c_mom->add_option("--Q", mq);
  c_mom->add_option("--grid", mgrid);
  c_mom->add_option("--workers", mworkers);
  c_mom->add_option("--out", mout);

  // singular
  auto* c_sing = app.add_subcommand("singular", "singular series by either route");
  std::uint64_t gn = 1, gq = 500;
  int gk = 2, gs = 9, gdepth = 6;
  std::string groute = "qsum", gout;
  c_sing->add_option("--n", gn)->required();
  c_sing->add_option("--k", gk)->required();
  c_sing->add_option("--s", gs)->required();
  c_sing->add_option("--route", groute, "qsum|euler");
  c_sing->add_option("--Q", gq, "q-sum truncation");
  c_sing->add_option("--depth", gdepth, "euler depth cap");
  c_sing->add_option("--out", gout);

  // repcount
  auto* c_rep = app.add_subcommand("repcount", "exact weighted representation counting");
  int rk = 2, rs = 9, rj = 1;
  std::uint64_t rn = 0, rn_hi = 0;
  double rr = 0.0, reta = 0.5;
  std::string rvariant = "plain", rout;
  c_rep->add_option("--k", rk)->required();
  c_rep->add_option("--s", rs)->required();
  c_rep->add_option("--n", rn)->required();
  c_rep->add_option("--n-hi", rn_hi, "inclusive range end");
  c_rep->add_option("--R", rr, "fixed smoothness bound");
  c_rep->add_option("--eta", reta, "R = P^eta when --R absent");
  c_rep->add_option("--variant", rvariant, "plain|rj|phi|selfsmooth");
  c_rep->add_option("--j", rj, "tilde slots for the rj variant");
  c_rep->add_option("--out", rout);

  // sample-basis
  auto* c_samp = app.add_subcommand("sample-basis", "draw a seeded random thin basis");
  std::uint64_t bseed = 0, bxmax = 1000000;
  int bk = 2, bs = 9;
  double beta = 0.5, bpsic = 1.0, bpsig = 1.0;
  std::string bout;
  c_samp->add_option("--seed", bseed)->required();
  c_samp->add_option("--k", bk);
  c_samp->add_option("--s", bs);
  c_samp->add_option("--eta", beta);
  c_samp->add_option("--psi-c", bpsic);
  c_samp->add_option("--psi-gamma", bpsig);
  c_samp->add_option("--x-max", bxmax);
  c_samp->add_option("--out", bout);

  // verify
  auto* c_ver = app.add_subcommand("verify", "seeded experiment with CSV+JSON reports");
  std::string vpreset, vconfig, voutdir;
  std::uint64_t vseed = 0;
  int vworkers = 0;
  c_ver->add_option("--preset", vpreset, "k2s9-short|k2s9-dyadic|k3s13-short");
  c_ver->add_option("--config", vconfig, "JSON config path (schema 1)");
  c_ver->add_option("--seed", vseed)->required();
  c_ver->add_option("--workers", vworkers);
  c_ver->add_option("--out-dir", voutdir);

  try {
    app.parse(argc, argv);
    if (*c_const) return cmd_constants(ck, cs, ct, kmin, kmax, cout_path);
    if (*c_smooth) return cmd_smooth(sp, sr, seta, sdump, sout);
    if (*c_weyl) return cmd_weylsum(wk, ws, wp, wr, wvariant, wgrid, wworkers, wout);
    if (*c_arcs) return cmd_arcs(ap, ak, aq, afile, agrid, aout);
    if (*c_mom) return cmd_moments(mk, ms, mp, mr, mt, mw, marcs, mq, mgrid, mworkers, mout);
    if (*c_sing) return cmd_singular(gn, gk, gs, groute, gq, gdepth, gout);
    if (*c_rep) return cmd_repcount(rk, rs, rn, rn_hi, rr, reta, rvariant, rj, rout);
    if (*c_samp) return cmd_sample_basis(bseed, bk, bs, beta, bpsic, bpsig, bxmax, bout);
    if (*c_ver) return cmd_verify(vpreset, vconfig, vseed, vworkers, voutdir);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
