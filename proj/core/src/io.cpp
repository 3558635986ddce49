#include "hsint/io.hpp"

#include "hsint/parse.hpp"

namespace hsint {

json derivation_to_json(const HSDerivation& d) {
  json images = json::array();
  for (size_t v = 0; v < d.nvars(); ++v) {
    json per_var = json::array();
    for (size_t i = 1; i <= d.length(); ++i) {
      const Poly& c = d.image(v).slot(i);
      if (!c.is_zero()) per_var.push_back(json::array({i, to_string(c)}));
    }
    images.push_back(per_var);
  }
  return json{{"p", d.field().p()},
              {"variables", variable_names(d.nvars())},
              {"length", d.length()},
              {"images", images}};
}

HSDerivation derivation_from_json(const json& j) {
  PrimeField f(j.at("p").get<uint32_t>());
  size_t nvars = j.at("variables").size();
  size_t length = j.at("length").get<size_t>();
  const json& images = j.at("images");
  if (images.size() != nvars) throw Error("image list arity mismatch");
  std::vector<TruncSeries> imgs;
  for (size_t v = 0; v < nvars; ++v) {
    TruncSeries s(f, nvars, length);
    s.set_slot(0, Poly::variable(f, nvars, v));
    for (const json& pair : images[v]) {
      size_t slot = pair.at(0).get<size_t>();
      if (slot < 1 || slot > length) throw Error("image slot out of range");
      s.set_slot(slot, parse_poly(pair.at(1).get<std::string>(), f, nvars));
    }
    imgs.push_back(std::move(s));
  }
  return HSDerivation::from_images(std::move(imgs));
}

json certificate_to_json(const IntegralCertificate& c) {
  json j = derivation_to_json(c.derivation);
  j["h"] = to_string(c.h);
  j["verified_to"] = c.verified_to;
  j["delta"] = derivation_to_string(c.derivation.first_component());
  return j;
}

LoadedCertificate certificate_from_json(const json& j) {
  HSDerivation d = derivation_from_json(j);
  PrimeField f(j.at("p").get<uint32_t>());
  Poly h = parse_poly(j.at("h").get<std::string>(), f, d.nvars());
  return LoadedCertificate{std::move(d), std::move(h),
                           j.at("verified_to").get<size_t>()};
}

json witness_to_json(const LeapWitness& w) {
  return json{{"failed_at", w.failed_at},
              {"degree_bound", w.degree_bound},
              {"branches_explored", w.explored},
              {"mode", w.mode == SearchMode::Greedy ? "greedy" : "exhaustive"},
              {"exhaustive_within_bound", w.exhaustive_within_bound},
              {"uniform_obstruction", w.uniform_obstruction}};
}

json invariants_to_json(const CurveInvariants& inv) {
  json j{{"alpha", inv.alpha}, {"s", inv.s}, {"m_rem", inv.m_rem}};
  if (inv.beta) j["beta"] = *inv.beta;
  if (inv.t) j["t"] = *inv.t;
  if (inv.gamma) j["gamma"] = *inv.gamma;
  return j;
}

std::string cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::Euler:
      return "euler";
    case CertKind::ClosedForm:
      return "closed_form";
    case CertKind::Gradient:
      return "gradient";
    case CertKind::Search:
      return "search";
  }
  return "unknown";
}

json piecewise_to_json(const PiecewiseModule& m) {
  json pieces = json::array();
  for (const Piece& pc : m.pieces) {
    json gens = json::array();
    for (const Generator& g : pc.generators) gens.push_back(g.text);
    json piece{{"lo", pc.lo}, {"generators", gens}};
    if (pc.hi) {
      piece["hi"] = *pc.hi;
    } else {
      piece["hi"] = "inf";
    }
    pieces.push_back(piece);
  }
  json certs = json::array();
  for (const GeneratorCertificate& gc : m.certificates) {
    json c{{"generator", gc.gen.text}, {"type", cert_kind_name(gc.kind)}};
    if (gc.length) {
      c["length"] = *gc.length;
    } else {
      c["length"] = "inf";
    }
    certs.push_back(c);
  }
  std::string branch;
  switch (m.branch) {
    case CurveBranch::UnitExponents:
      branch = "unit_exponents";
      break;
    case CurveBranch::LineQuotient:
      branch = "line_quotient";
      break;
    case CurveBranch::FrobeniusKernel:
      branch = "frobenius_kernel";
      break;
  }
  return json{{"p", m.inv.p},
              {"n", m.inv.n},
              {"q", m.inv.q},
              {"invariants", invariants_to_json(m.inv)},
              {"branch", branch},
              {"swapped", m.swapped},
              {"degenerate_smooth", m.degenerate_smooth},
              {"pieces", pieces},
              {"leaps", m.leaps},
              {"certificates", certs}};
}

json probe_to_json(const ProbeReport& r) {
  json verdicts = json::array();
  for (const ProbeVerdict& v : r.verdicts) {
    json e{{"candidate", derivation_to_string(v.candidate)}};
    if (const auto* c = std::get_if<IntegralCertificate>(&v.outcome)) {
      e["integrable"] = true;
      e["certificate"] = certificate_to_json(*c);
    } else {
      e["integrable"] = false;
      e["witness"] = witness_to_json(std::get<LeapWitness>(v.outcome));
    }
    verdicts.push_back(e);
  }
  json gens = json::array();
  for (const auto& g : r.integrable) gens.push_back(derivation_to_string(g));
  return json{{"verdicts", verdicts}, {"module_generators", gens}};
}

}  // namespace hsint
