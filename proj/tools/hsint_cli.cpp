#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "fixtures.hpp"
#include "hsint/io.hpp"
#include "hsint/parse.hpp"

using namespace hsint;

namespace {

constexpr int kExitError = 1;
constexpr int kExitPowerReduce = 2;
constexpr int kExitWitness = 3;
constexpr int kExitBudget = 4;

uint64_t default_budget() {
  if (const char* env = std::getenv("HS_BRANCH_BUDGET")) {
    char* end = nullptr;
    uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 100000;
}

json power_reduce_json(uint32_t p, uint64_t n, uint64_t q) {
  PowerReduction red = power_reduce(p, n, q);
  return json{{"p", p},
              {"n", n},
              {"q", q},
              {"tau", red.tau},
              {"n_reduced", red.n_reduced},
              {"q_reduced", red.q_reduced},
              {"leaps", red.leaps},
              {"note", red.note}};
}

int run_classify(uint32_t p, uint64_t n, uint64_t q) {
  try {
    std::cout << piecewise_to_json(classify(p, n, q)).dump(2) << "\n";
    return 0;
  } catch (const UsePowerReduce& e) {
    json j = power_reduce_json(p, n, q);
    j["hint"] = std::string(e.what()) + "; rerun `leaps` with --tau or use the "
                "reduction below";
    std::cout << j.dump(2) << "\n";
    return kExitPowerReduce;
  }
}

int run_leaps(uint32_t p, uint64_t n, uint64_t q, uint32_t tau) {
  if (n % p == 0 && q % p == 0) {
    std::cout << power_reduce_json(p, n, q).dump(2) << "\n";
    return kExitPowerReduce;
  }
  std::set<uint64_t> l = power_leaps(p, n, q, tau);
  std::cout << json{{"p", p}, {"n", n}, {"q", q}, {"tau", tau}, {"leaps", l}}
                   .dump(2)
            << "\n";
  return 0;
}

// seeds the search with verified towers when the input is a binomial curve
CertificatePool pool_for(const Poly& h, size_t L) {
  CertificatePool pool;
  if (h.nvars() != 2 || h.num_terms() != 2) return pool;
  const PrimeField& f = h.field();
  std::optional<uint64_t> n, q;
  uint32_t cx = 0, cy = 0;
  for (const auto& [m, c] : h.terms()) {
    if (m.exp(1) == 0 && m.exp(0) >= 1) {
      n = m.exp(0);
      cx = c;
    } else if (m.exp(0) == 0 && m.exp(1) >= 1) {
      q = m.exp(1);
      cy = c;
    }
  }
  if (!n || !q || f.add(cx, cy) != 0) return pool;
  return standard_pool(f.p(), *n, *q, L);
}

int run_integrate(uint32_t p, const std::string& h_text,
                  const std::string& delta_text, size_t length,
                  uint32_t bound, const std::string& mode, uint64_t budget) {
  PrimeField f(p);
  size_t nv = std::max(detect_nvars(h_text), detect_nvars(delta_text));
  Poly h = parse_poly(h_text, f, nv);
  HSDerivation delta =
      HSDerivation::from_derivation(parse_derivation(delta_text, f, nv));
  SearchOptions opts;
  opts.mode = mode == "greedy" ? SearchMode::Greedy : SearchMode::Exhaustive;
  opts.budget = budget;
  if (bound > 0) opts.bound_multiplier = bound;
  CertificatePool pool = pool_for(h, length);
  opts.pool = &pool;
  try {
    IntegrateResult r = integrate(delta, h, length, opts);
    if (const auto* cert = std::get_if<IntegralCertificate>(&r)) {
      std::cout << certificate_to_json(*cert).dump(2) << "\n";
      return 0;
    }
    std::cout << witness_to_json(std::get<LeapWitness>(r)).dump(2) << "\n";
    return kExitWitness;
  } catch (const BudgetExceeded& e) {
    std::cout << json{{"error", "budget_exceeded"},
                      {"branches_explored", e.explored}}
                     .dump(2)
              << "\n";
    return kExitBudget;
  }
}

int run_verify(const std::string& path, const std::string& h_text) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return kExitError;
  }
  json j = json::parse(in);
  LoadedCertificate cert = certificate_from_json(j);
  Poly h = h_text.empty()
               ? cert.h
               : parse_poly(h_text, cert.h.field(), cert.derivation.nvars());
  LogCheckReport rep = is_logarithmic(cert.derivation, h);
  json out{{"h", to_string(h)},
           {"length", cert.derivation.length()},
           {"verified", rep.ok}};
  if (!rep.ok) {
    out["first_failure"] = json{{"index", rep.first_failure->first},
                                {"residue", to_string(rep.first_failure->second)}};
  }
  std::cout << out.dump(2) << "\n";
  return rep.ok ? 0 : kExitError;
}

std::string join_u64(const std::set<uint64_t>& xs, const char* sep) {
  std::string out;
  for (uint64_t x : xs) {
    if (!out.empty()) out += sep;
    out += std::to_string(x);
  }
  return out;
}

int run_sweep(const std::vector<uint32_t>& ps, uint64_t nmax, uint64_t qmax,
              uint32_t taumax, const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return kExitError;
  }
  out << "p,n,q,tau,alpha,beta,gamma,s,m_rem,leaps,pieces,certs\n";
  for (uint32_t p : ps) {
    for (uint64_t n = 1; n <= nmax; ++n) {
      for (uint64_t q = 1; q <= qmax; ++q) {
        for (uint32_t tau = 0; tau <= taumax; ++tau) {
          CurveInvariants inv = invariants(p, n, q);
          std::string beta = inv.beta ? std::to_string(*inv.beta) : "";
          std::string gamma = inv.gamma ? std::to_string(*inv.gamma) : "";
          std::string leaps_cell, pieces_cell, certs_cell;
          if (n % p == 0 && q % p == 0) {
            PowerReduction red = power_reduce(p, n, q);
            std::set<uint64_t> l =
                power_leaps(p, red.n_reduced, red.q_reduced, red.tau + tau);
            leaps_cell = join_u64(l, ";");
            pieces_cell = "reduce:x^" + std::to_string(red.n_reduced) + "-y^" +
                          std::to_string(red.q_reduced);
          } else if (tau > 0) {
            leaps_cell = join_u64(power_leaps(p, n, q, tau), ";");
            pieces_cell = "power:" + std::to_string(tau);
          } else {
            PiecewiseModule m = classify(p, n, q);
            leaps_cell = join_u64(m.leaps, ";");
            std::string pieces;
            for (const Piece& pc : m.pieces) {
              if (!pieces.empty()) pieces += "|";
              pieces += "[" + std::to_string(pc.lo) + "," +
                        (pc.hi ? std::to_string(*pc.hi) : "inf") + "):";
              std::string gens;
              for (const Generator& g : pc.generators) {
                if (!gens.empty()) gens += "&";
                gens += g.text;
              }
              pieces += gens;
            }
            pieces_cell = pieces;
            std::string certs;
            for (const GeneratorCertificate& gc : m.certificates) {
              if (!certs.empty()) certs += "|";
              certs += gc.gen.text + ":" + cert_kind_name(gc.kind);
            }
            certs_cell = certs;
          }
          out << p << ',' << n << ',' << q << ',' << tau << ',' << inv.alpha
              << ',' << beta << ',' << gamma << ',' << inv.s << ','
              << inv.m_rem << ',' << leaps_cell << ',' << pieces_cell << ','
              << certs_cell << '\n';
        }
      }
    }
  }
  return 0;
}

int run_examples(const std::string& name) {
  std::vector<fixtures::FixtureResult> results;
  if (name.empty()) {
    results = fixtures::run_all();
  } else {
    results.push_back(fixtures::run_fixture(name));
  }
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "\n";
    for (const auto& line : r.checks) std::cout << "  " << line << "\n";
    all_ok = all_ok && r.passed;
  }
  return all_ok ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact integrability computations for plane curve quotients "
               "in positive characteristic"};
  app.require_subcommand(1);

  uint32_t p = 0, tau = 0, bound = 0, taumax = 0;
  uint64_t n = 0, q = 0, nmax = 0, qmax = 0;
  size_t length = 0;
  std::string h_text, delta_text, mode = "greedy", cert_path, out_path, name;
  std::vector<uint32_t> ps;
  uint64_t budget = default_budget();

  auto* classify_cmd = app.add_subcommand("classify", "piecewise module of x^n - y^q");
  classify_cmd->add_option("--p", p, "prime characteristic")->required();
  classify_cmd->add_option("--n", n, "x exponent")->required();
  classify_cmd->add_option("--q", q, "y exponent")->required();

  auto* leaps_cmd = app.add_subcommand("leaps", "leap set of (x^n - y^q)^(p^tau)");
  leaps_cmd->add_option("--p", p, "prime characteristic")->required();
  leaps_cmd->add_option("--n", n, "x exponent")->required();
  leaps_cmd->add_option("--q", q, "y exponent")->required();
  leaps_cmd->add_option("--tau", tau, "Frobenius power");

  auto* integrate_cmd = app.add_subcommand("integrate", "search for a logarithmic tower");
  integrate_cmd->set_help_flag("--help", "print help");
  integrate_cmd->add_option("--p", p, "prime characteristic")->required();
  integrate_cmd->add_option("--h", h_text, "curve polynomial")->required();
  integrate_cmd->add_option("--delta", delta_text, "derivation, e.g. y*dx")->required();
  integrate_cmd->add_option("--length", length, "target length")->required();
  integrate_cmd->add_option("--bound", bound,
                            "degree bound multiplier (default max(deg h, deg delta + 1))");
  integrate_cmd->add_option("--mode", mode, "greedy|exhaustive")
      ->check(CLI::IsMember({"greedy", "exhaustive"}));
  integrate_cmd->add_option("--budget", budget, "branch budget");

  auto* verify_cmd = app.add_subcommand("verify", "re-check a stored certificate");
  verify_cmd->set_help_flag("--help", "print help");
  verify_cmd->add_option("--certificate", cert_path, "certificate file")->required();
  verify_cmd->add_option("--h", h_text, "override curve polynomial");

  auto* sweep_cmd = app.add_subcommand("sweep", "classification grid to CSV");
  sweep_cmd->add_option("--p", ps, "primes")->required()->delimiter(',');
  sweep_cmd->add_option("--n-max", nmax, "max x exponent")->required();
  sweep_cmd->add_option("--q-max", qmax, "max y exponent")->required();
  sweep_cmd->add_option("--tau-max", taumax, "max Frobenius power");
  sweep_cmd->add_option("--out", out_path, "output CSV path")->required();

  auto* examples_cmd = app.add_subcommand("examples", "run the worked-example fixtures");
  examples_cmd->add_option("--name", name, "run a single fixture");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify_cmd)) return run_classify(p, n, q);
    if (app.got_subcommand(leaps_cmd)) return run_leaps(p, n, q, tau);
    if (app.got_subcommand(integrate_cmd)) {
      return run_integrate(p, h_text, delta_text, length, bound, mode, budget);
    }
    if (app.got_subcommand(verify_cmd)) return run_verify(cert_path, h_text);
    if (app.got_subcommand(sweep_cmd)) {
      return run_sweep(ps, nmax, qmax, taumax, out_path);
    }
    if (app.got_subcommand(examples_cmd)) return run_examples(name);
  } catch (const UsePowerReduce& e) {
    std::cerr << e.what() << "\n";
    return kExitPowerReduce;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
