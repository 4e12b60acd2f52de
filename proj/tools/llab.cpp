// llab: numerical laboratory for Littlewood-type counting, cusp excursions
// of the diagonal flow on unimodular 3-lattices, and finite entropy checks.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "llab/counting.hpp"
#include "llab/empirical.hpp"
#include "llab/excursions.hpp"
#include "llab/io.hpp"
#include "llab/lattice.hpp"
#include "llab/symbolic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFalsified = 2;
constexpr int kExitInconclusive = 3;

mpq_class parse_rational(const std::string& s) {
  if (s.find('/') != std::string::npos) {
    mpq_class q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  }
  // decimal literal -> exact rational
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  auto dot = t.find('.');
  std::string digits = t;
  std::size_t frac = 0;
  if (dot != std::string::npos) {
    frac = t.size() - dot - 1;
    digits = t.substr(0, dot) + t.substr(dot + 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad rational literal: " + s);
  mpz_class num(digits);
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac; ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

void maybe_write(const std::string& path, const std::string& content) {
  if (!path.empty()) llab::atomic_write(path, content);
}

const char* status_name(llab::CuspStatus st) {
  switch (st) {
    case llab::CuspStatus::HypothesisNotMet: return "hypothesis-not-met";
    case llab::CuspStatus::Inconclusive: return "inconclusive";
    case llab::CuspStatus::Holds: return "holds";
    case llab::CuspStatus::Falsified: return "falsified";
  }
  return "?";
}

int run(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Littlewood counting and lattice flows"};
  app.require_subcommand(1);

  std::string alpha_s, beta_s, eps_s, csv_path, svg_path, obs_s, bins_s;
  double T = 0, step = 0, gamma = 0, tparam = 0;
  std::uint64_t big_n = 0, seed = 0, samples = 10000;
  int threads = 1, depth = 12, k = 2, n_max = 10, N = 8, M = 2;
  std::string mode = "strict";

  auto* count = app.add_subcommand("count", "count n with n<na><nb> below eps");
  count->add_option("--alpha", alpha_s)->required();
  count->add_option("--beta", beta_s)->required();
  count->add_option("--eps", eps_s)->required();
  count->add_option("--big-n", big_n);
  count->add_option("--T", T);
  count->add_option("--mode", mode)->check(CLI::IsMember({"strict", "closed"}));
  count->add_option("--threads", threads);
  count->add_option("--csv", csv_path);

  auto* orbit = app.add_subcommand("orbit", "systole over the flow grid");
  orbit->add_option("--alpha", alpha_s)->required();
  orbit->add_option("--beta", beta_s)->required();
  orbit->add_option("--T", T)->required();
  orbit->add_option("--step", step)->required();
  orbit->add_option("--csv", csv_path);

  auto* exc = app.add_subcommand("excursions", "cusp-excursion triangles");
  exc->add_option("--alpha", alpha_s)->required();
  exc->add_option("--beta", beta_s)->required();
  exc->add_option("--eps", eps_s)->required();
  exc->add_option("--T", T)->required();
  exc->add_option("--svg", svg_path);
  exc->add_option("--csv", csv_path);

  auto* meas = app.add_subcommand("measure", "escape fraction / observables");
  meas->add_option("--alpha", alpha_s)->required();
  meas->add_option("--beta", beta_s)->required();
  meas->add_option("--eps", eps_s)->required();
  meas->add_option("--T", T)->required();
  meas->add_option("--depth", depth);
  meas->add_option("--grid", step);
  meas->add_option("--obs", obs_s);
  meas->add_option("--csv", csv_path);

  auto* ent = app.add_subcommand("entropy", "Bowen table or orbit coding");
  ent->add_option("--k", k);
  ent->add_option("--n-max", n_max);
  ent->add_option("--t", tparam);
  ent->add_option("--alpha", alpha_s);
  ent->add_option("--beta", beta_s);
  ent->add_option("--N", N);
  ent->add_option("--M", M);
  ent->add_option("--bins", bins_s);
  ent->add_option("--csv", csv_path);

  auto* verify = app.add_subcommand("verify", "check structural claims");
  verify->require_subcommand(1);
  auto* vcusp = verify->add_subcommand("cusp", "escape => counting chain");
  vcusp->add_option("--alpha", alpha_s)->required();
  vcusp->add_option("--beta", beta_s)->required();
  vcusp->add_option("--eps", eps_s)->required();
  vcusp->add_option("--T", T)->required();
  vcusp->add_option("--gamma", gamma)->required();
  auto* vcover = verify->add_subcommand("cover", "triangle cover vs systole");
  vcover->add_option("--alpha", alpha_s)->required();
  vcover->add_option("--beta", beta_s)->required();
  vcover->add_option("--eps", eps_s)->required();
  vcover->add_option("--T", T)->required();
  vcover->add_option("--samples", samples);
  vcover->add_option("--seed", seed);
  auto* vbowen = verify->add_subcommand("bowen", "type-count envelope");
  vbowen->add_option("--k", k)->required();
  vbowen->add_option("--n-max", n_max)->required();
  vbowen->add_option("--t", tparam)->required();
  auto* vlem = verify->add_subcommand("lemmas", "uniqueness / interval lemmas");
  vlem->add_option("--alpha", alpha_s)->required();
  vlem->add_option("--beta", beta_s)->required();
  vlem->add_option("--eps", eps_s)->required();
  vlem->add_option("--T", T)->required();
  vlem->add_option("--n-max", big_n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;  // every usage problem maps to one exit code
  }

  if (count->parsed()) {
    llab::RealSpec a = llab::RealSpec::parse(alpha_s);
    llab::RealSpec b = llab::RealSpec::parse(beta_s);
    mpq_class eps = parse_rational(eps_s);
    if (big_n == 0) {
      if (!(T > 0)) throw std::invalid_argument("need --big-n or --T");
      big_n = llab::big_n_for_T(T);
    }
    llab::CountReport rep = llab::count_below(a, b, eps, big_n, threads,
                                              /*store_hits=*/!csv_path.empty());
    std::uint64_t c = mode == "strict" ? rep.count_strict : rep.count_closed;
    std::printf("count(%s): %llu of N=%llu (strict %llu, closed %llu, "
                "boundary %zu)\n",
                mode.c_str(), static_cast<unsigned long long>(c),
                static_cast<unsigned long long>(big_n),
                static_cast<unsigned long long>(rep.count_strict),
                static_cast<unsigned long long>(rep.count_closed),
                rep.boundary_cases.size());
    std::printf("min at n=%llu in [%s, %s]; %.2e n/s\n",
                static_cast<unsigned long long>(rep.min_n),
                llab::format_double(rep.min_lo).c_str(),
                llab::format_double(rep.min_hi).c_str(), rep.throughput);
    if (!csv_path.empty()) {
      llab::CsvWriter w;
      w.row({"n", "value_lo", "value_hi"});
      for (const auto& h : rep.hits)
        w.row({std::to_string(h.n), llab::format_double(h.value_lo),
               llab::format_double(h.value_hi)});
      w.row({"total", std::to_string(rep.count_strict),
             std::to_string(rep.count_closed)});
      maybe_write(csv_path, w.str());
    }
    return kExitOk;
  }

  if (orbit->parsed()) {
    llab::OrbitTrace tr = llab::orbit_trace(llab::RealSpec::parse(alpha_s),
                                            llab::RealSpec::parse(beta_s), T,
                                            step);
    std::printf("orbit: %zu points, min systole in [%s, %s]\n",
                tr.points.size(), llab::format_double(tr.min_lo).c_str(),
                llab::format_double(tr.min_hi).c_str());
    if (!csv_path.empty()) {
      llab::CsvWriter w;
      w.row({"s", "t", "systole_lo", "systole_hi", "n", "m1", "m2"});
      for (const auto& p : tr.points)
        w.row({llab::format_double(p.s), llab::format_double(p.t),
               llab::format_double(p.sys.norm.lo()),
               llab::format_double(p.sys.norm.hi()),
               std::to_string(p.sys.coeffs[0]), std::to_string(p.sys.coeffs[1]),
               std::to_string(p.sys.coeffs[2])});
      maybe_write(csv_path, w.str());
    }
    return kExitOk;
  }

  if (exc->parsed()) {
    llab::RealSpec a = llab::RealSpec::parse(alpha_s);
    llab::RealSpec b = llab::RealSpec::parse(beta_s);
    mpq_class eps = parse_rational(eps_s);
    auto tris = llab::all_excursions(a, b, eps, T);
    std::printf("excursions: %zu triangles meet [0,%g]^2\n", tris.size(), T);
    std::vector<std::pair<double, double>> pis;
    std::vector<std::uint64_t> ns;
    for (const auto& e : tris) {
      auto [lo, hi] = llab::project(e, T);
      pis.push_back({lo.mid(), hi.mid()});
      ns.push_back(e.n);
    }
    llab::XiSelection xi = llab::maximal_intervals(pis);
    std::vector<std::uint64_t> xi_n;
    std::vector<std::pair<double, double>> xi_pi;
    for (std::size_t i : xi.kept) {
      xi_n.push_back(ns[i]);
      xi_pi.push_back(pis[i]);
    }
    auto classes = llab::equivalence_classes(xi_n, xi_pi);
    std::vector<int> in_xi(tris.size(), 0), class_id(tris.size(), -1);
    for (std::size_t j = 0; j < xi.kept.size(); ++j) in_xi[xi.kept[j]] = 1;
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (std::size_t m : classes[c].members)
        class_id[xi.kept[m]] = static_cast<int>(c);
    if (!csv_path.empty()) {
      llab::CsvWriter w;
      w.row({"n", "m1", "m2", "r1", "r2", "leg", "proj_lo", "proj_hi",
             "in_Xi", "class_id"});
      for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& e = tris[i];
        w.row({std::to_string(e.n), e.m1.get_str(), e.m2.get_str(),
               llab::format_double(e.r1.mid()),
               llab::format_double(e.r2.mid()),
               llab::format_double(e.leg.mid()),
               llab::format_double(pis[i].first),
               llab::format_double(pis[i].second), std::to_string(in_xi[i]),
               std::to_string(class_id[i])});
      }
      maybe_write(csv_path, w.str());
    }
    if (!svg_path.empty()) maybe_write(svg_path, llab::emit_svg(tris, T));
    return kExitOk;
  }

  if (meas->parsed()) {
    llab::RealSpec a = llab::RealSpec::parse(alpha_s);
    llab::RealSpec b = llab::RealSpec::parse(beta_s);
    mpq_class eps = parse_rational(eps_s);
    llab::AreaBound ab = llab::escape_fraction(a, b, eps, T, depth);
    std::printf("escape fraction in [%s, %s], depth %d, unresolved %s\n",
                llab::format_double(ab.lower).c_str(),
                llab::format_double(ab.upper).c_str(), ab.depth,
                llab::format_double(ab.unresolved).c_str());
    if (!csv_path.empty()) {
      llab::CsvWriter w;
      w.row({"lower", "upper", "depth", "unresolved"});
      w.row({llab::format_double(ab.lower), llab::format_double(ab.upper),
             std::to_string(ab.depth), llab::format_double(ab.unresolved)});
      maybe_write(csv_path, w.str());
    }
    if (step > 0 && !obs_s.empty()) {
      llab::LatticeState base = llab::tau_lattice(a, b);
      std::function<double(const llab::LatticeState&)> obs;
      if (obs_s.rfind("systole:", 0) == 0) {
        auto th = parse_list(obs_s.substr(8));
        obs = [th](const llab::LatticeState& x) {
          return static_cast<double>(llab::systole_bin(x, th));
        };
      } else if (obs_s == "indicator") {
        obs = llab::indicator_x_eps(eps);
      } else {
        throw std::invalid_argument("unknown observable: " + obs_s);
      }
      llab::ObsAverage avg = llab::observable_average(base, T, step, obs);
      std::printf("observable average %s over %zu points\n",
                  llab::format_double(avg.average).c_str(), avg.points);
    }
    return kExitOk;
  }

  if (ent->parsed()) {
    if (!alpha_s.empty()) {
      auto th = bins_s.empty() ? std::vector<double>{0.2} : parse_list(bins_s);
      llab::OrbitCoding oc =
          llab::orbit_coding(llab::RealSpec::parse(alpha_s),
                             llab::RealSpec::parse(beta_s), N, M, th);
      std::printf("orbit coding: k=%d, cusp fraction %s\n", oc.k,
                  llab::format_double(oc.cusp_fraction).c_str());
      llab::CsvWriter w;
      w.row({"row", "block_entropy_rate"});
      for (std::size_t i = 0; i < oc.row_rates.size(); ++i) {
        std::printf("row %zu: rate %s\n", i,
                    llab::format_double(oc.row_rates[i]).c_str());
        w.row({std::to_string(i), llab::format_double(oc.row_rates[i])});
      }
      maybe_write(csv_path, w.str());
    } else {
      auto table = llab::bowen_bound_check(k, n_max, tparam);
      llab::CsvWriter w;
      w.row({"N", "count", "rate", "envelope"});
      for (const auto& r : table) {
        std::printf("N=%2d |R|=%s rate=%.6f envelope=%.6f\n", r.N,
                    r.count.get_str().c_str(), r.rate, r.envelope);
        w.row({std::to_string(r.N), r.count.get_str(),
               llab::format_double(r.rate), llab::format_double(r.envelope)});
      }
      maybe_write(csv_path, w.str());
    }
    return kExitOk;
  }

  if (vcusp->parsed()) {
    llab::CuspReport rep = llab::verify_cusp_proposition(
        llab::RealSpec::parse(alpha_s), llab::RealSpec::parse(beta_s),
        parse_rational(eps_s), T, gamma);
    std::printf("escape in [%s, %s]; count(<=eps^3, N=%llu) = %llu "
                "(+%llu boundary); count/T = %s vs bound %s\n",
                llab::format_double(rep.escape_lo).c_str(),
                llab::format_double(rep.escape_hi).c_str(),
                static_cast<unsigned long long>(rep.big_n),
                static_cast<unsigned long long>(rep.count_closed),
                static_cast<unsigned long long>(rep.boundary_count),
                llab::format_double(rep.count_over_T).c_str(),
                llab::format_double(rep.bound).c_str());
    std::printf("Xi union length %s (gamma*T = %s); %zu classes\n",
                llab::format_double(rep.xi_union_length).c_str(),
                llab::format_double(rep.gamma * rep.T).c_str(),
                rep.class_checks.size());
    std::printf("status: %s\n", status_name(rep.status));
    switch (rep.status) {
      case llab::CuspStatus::Falsified: return kExitFalsified;
      case llab::CuspStatus::Inconclusive: return kExitInconclusive;
      default: return kExitOk;
    }
  }

  if (vcover->parsed()) {
    llab::CoverCheck cc = llab::cover_check(llab::RealSpec::parse(alpha_s),
                                            llab::RealSpec::parse(beta_s),
                                            parse_rational(eps_s), T, samples,
                                            seed);
    std::printf("cover check: %zu adjudicated, %zu agree, %zu skipped, "
                "%zu disagreements\n",
                cc.samples, cc.agreements, cc.skipped,
                cc.disagreements.size());
    for (const auto& [s, t] : cc.disagreements)
      std::printf("  disagreement at (%.12f, %.12f)\n", s, t);
    return cc.disagreements.empty() ? kExitOk : kExitFalsified;
  }

  if (vbowen->parsed()) {
    auto table = llab::bowen_bound_check(k, n_max, tparam);
    for (const auto& r : table)
      std::printf("N=%2d |R|=%s rate=%.6f envelope=%.6f %s\n", r.N,
                  r.count.get_str().c_str(), r.rate, r.envelope,
                  r.ok ? "ok" : "VIOLATION");
    return kExitOk;  // violations throw Falsification
  }

  if (vlem->parsed()) {
    llab::RealSpec a = llab::RealSpec::parse(alpha_s);
    llab::RealSpec b = llab::RealSpec::parse(beta_s);
    mpq_class eps = parse_rational(eps_s);
    std::uint64_t nm = big_n == 0 ? 1000 : big_n;
    int worst = 0;
    std::uint64_t worst_n = 0;
    for (std::uint64_t n = 1; n <= nm; ++n) {
      int c = llab::uniqueness_check(n, a, b, eps, T);
      if (c > worst) {
        worst = c;
        worst_n = n;
      }
    }
    std::printf("uniqueness: max multiplicity %d over n <= %llu%s\n", worst,
                static_cast<unsigned long long>(nm),
                worst > 1 ? " (witness below)" : "");
    if (worst > 1) {
      std::printf("  witness n=%llu\n",
                  static_cast<unsigned long long>(worst_n));
      return kExitFalsified;
    }
    auto tris = llab::all_excursions(a, b, eps, T);
    std::vector<std::pair<double, double>> pis;
    std::vector<std::uint64_t> ns;
    for (const auto& e : tris) {
      auto [lo, hi] = llab::project(e, T);
      pis.push_back({lo.mid(), hi.mid()});
      ns.push_back(e.n);
    }
    llab::XiSelection xi = llab::maximal_intervals(pis);  // asserts equality
    std::vector<std::uint64_t> xi_n;
    std::vector<std::pair<double, double>> xi_pi;
    for (std::size_t i : xi.kept) {
      xi_n.push_back(ns[i]);
      xi_pi.push_back(pis[i]);
    }
    auto classes = llab::equivalence_classes(xi_n, xi_pi);
    bool ok = true;
    for (const auto& c : classes) {
      double rhs = c.pi_length / (3 * std::log(2.0));
      if (static_cast<double>(c.merged_lambda.size()) < rhs * (1 - 1e-9) - 1e-9) {
        ok = false;
        std::printf("  doubling-count violation: base n=%llu |Lambda|=%zu "
                    "rhs=%s\n",
                    static_cast<unsigned long long>(c.base_n),
                    c.merged_lambda.size(), llab::format_double(rhs).c_str());
      }
    }
    std::printf("Xi: %zu of %zu maximal; union length %s; %zu classes %s\n",
                xi.kept.size(), tris.size(),
                llab::format_double(xi.kept_union.length).c_str(),
                classes.size(), ok ? "all pass" : "FAIL");
    return ok ? kExitOk : kExitFalsified;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const llab::Falsification& e) {
    std::fprintf(stderr, "falsification: %s\n", e.what());
    return kExitFalsified;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::range_error& e) {
    std::fprintf(stderr, "range error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
