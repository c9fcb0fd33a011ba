#include "conemod/report.hpp"

#include "conemod/errors.hpp"

namespace conemod {

using nlohmann::json;

json rate_to_json(const Rate& r) {
  if (r.is_exact) return format_rational(r.exact);
  json j;
  j["float"] = r.approx;
  if (!r.label.empty()) j["label"] = r.label;
  return j;
}

Rate rate_from_json(const json& j) {
  if (j.is_string()) return Rate::from_rational(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Rate::from_rational(Rational(j.get<long long>()));
  if (j.is_number_float()) return Rate::from_double(j.get<double>());
  if (j.is_object() && j.contains("float"))
    return Rate::from_double(j.at("float").get<double>(), j.value("label", std::string{}));
  fail(ErrorKind::Validation, "cannot read a rate from " + j.dump());
}

json window_to_json(const Window& w) { return json::array({rate_to_json(w.lo), rate_to_json(w.hi)}); }

static Window window_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorKind::Validation, "a window is a two-element array [lo, hi]");
  return make_window(rate_from_json(j[0]), rate_from_json(j[1]));
}

static Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(ErrorKind::Validation, "rationals must be strings like \"p/q\" or integers, got " + j.dump());
}

ConeOperatorSpec operator_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Validation, "operator document must be a JSON object");
  try {
    ConeOperatorSpec op;
    op.order = j.value("order", 2);
    op.self_adjoint = j.value("self_adjoint", false);
    op.name = j.value("name", std::string{});
    if (j.contains("modes")) {
      for (const auto& m : j.at("modes")) {
        ModeBlock mode;
        for (const auto& c : m.at("coefficients")) mode.coefficients.push_back(rational_from_json(c));
        mode.multiplicity = m.value("multiplicity", 1);
        op.modes.push_back(std::move(mode));
      }
    }
    if (j.contains("rates")) {
      for (const auto& e : j.at("rates"))
        op.catalog.push_back({rate_from_json(e.at("rate")), e.at("dim").get<int>()});
    }
    if (j.contains("certified_window"))
      op.certified_window = window_from_json(j.at("certified_window"));
    op.spectrum_complete = j.value("spectrum_complete", false);
    op.validate();
    return op;
  } catch (const json::exception& e) {
    fail(ErrorKind::Validation, std::string("malformed operator document: ") + e.what());
  }
}

json operator_to_json(const ConeOperatorSpec& op) {
  json j;
  j["order"] = op.order;
  j["self_adjoint"] = op.self_adjoint;
  if (!op.name.empty()) j["name"] = op.name;
  if (!op.modes.empty()) {
    json modes = json::array();
    for (const auto& m : op.modes) {
      json mode;
      json coeffs = json::array();
      for (const auto& c : m.coefficients) coeffs.push_back(format_rational(c));
      mode["coefficients"] = coeffs;
      mode["multiplicity"] = m.multiplicity;
      modes.push_back(mode);
    }
    j["modes"] = modes;
  }
  if (!op.catalog.empty()) {
    json rates = json::array();
    for (const auto& e : op.catalog) rates.push_back({{"rate", rate_to_json(e.rate)}, {"dim", e.dim}});
    j["rates"] = rates;
  }
  if (op.certified_window) j["certified_window"] = window_to_json(*op.certified_window);
  if (op.spectrum_complete) j["spectrum_complete"] = true;
  return j;
}

static ModuliConfig moduli_config_from_json_checked(const json& j);

ModuliConfig moduli_config_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Validation, "moduli config must be a JSON object");
  try {
    return moduli_config_from_json_checked(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::Validation, std::string("malformed moduli config: ") + e.what());
  }
}

static ModuliConfig moduli_config_from_json_checked(const json& j) {
  ModuliConfig config;
  if (j.contains("group")) {
    const auto& g = j.at("group");
    std::string type = g.value("type", std::string("PU"));
    if (type == "PU")
      config.group = Group::pun(g.value("n", 2));
    else if (type == "compact")
      config.group = Group::generic_compact(g.value("finite_center", true));
    else
      fail(ErrorKind::Validation, "group type must be \"PU\" or \"compact\"");
  } else {
    config.group = Group::pun(2);
  }
  if (!j.contains("points")) fail(ErrorKind::Validation, "moduli config needs a points array");
  for (const auto& p : j.at("points")) {
    TangentConeSpec point;
    if (p.contains("preset")) point.preset = p.at("preset").get<std::string>();
    if (p.contains("bundle")) point.bundle = parse_bundle_expr(p.at("bundle").get<std::string>());
    if (p.contains("rates")) {
      json raw = p;
      raw.erase("stab_dim");
      raw.erase("m_dim");
      raw.erase("mu");
      point.raw = operator_from_json(raw);
    }
    point.stab_dim = p.value("stab_dim", 8);
    if (p.contains("m_dim")) point.m_dim_override = p.at("m_dim").get<int>();
    if (p.contains("mu")) point.mu = rate_from_json(p.at("mu"));
    config.points.push_back(std::move(point));
  }
  config.validate();
  return config;
}

json moduli_config_to_json(const ModuliConfig& config) {
  json j;
  if (config.group.projective_unitary)
    j["group"] = {{"type", "PU"}, {"n", config.group.n}};
  else
    j["group"] = {{"type", "compact"}, {"finite_center", config.group.finite_center}};
  json points = json::array();
  for (const auto& p : config.points) {
    json point;
    if (p.preset) point["preset"] = *p.preset;
    if (p.bundle) point["bundle"] = format_bundle_expr(*p.bundle);
    if (p.raw) {
      json raw = operator_to_json(*p.raw);
      for (auto& [key, value] : raw.items()) point[key] = value;
    }
    point["stab_dim"] = p.stab_dim;
    if (p.m_dim_override) point["m_dim"] = *p.m_dim_override;
    point["mu"] = rate_to_json(p.mu);
    points.push_back(point);
  }
  j["points"] = points;
  return j;
}

json rates_report(const ConeOperatorSpec& op, const CriticalRateSet& set) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = "rates";
  j["input"] = {{"operator", operator_to_json(op)}, {"window", window_to_json(set.window)}};
  json entries = json::array();
  for (const auto& e : set.entries)
    entries.push_back({{"rate", rate_to_json(e.rate)}, {"kernel_dim", e.dim}});
  j["results"] = {{"rates", entries}, {"complete", set.complete}};
  j["caveats"] = json::array();
  if (!set.complete)
    j["caveats"].push_back(
        "finite spectral data: the window is not covered by a completeness certificate");
  j["provenance"] = {
      {"rates", "simple real roots of the indicial polynomials p_j(z) = sum_i nu_{l-i,j} z^i"},
      {"kernel_dim", "dim K(L)_lambda = sum of multiplicities of modes with p_j(lambda) = 0"}};
  return j;
}

json cohomology_report(const std::string& expr_text) {
  BundleExpr expr = parse_bundle_expr(expr_text);
  ChernCharacter ch = chern_character(expr);
  long long chi = euler_characteristic(ch);
  CohomologyVector v = cohomology(expr);
  if (v.h0 - v.h1 + v.h2 != chi)
    fail(ErrorKind::Inconsistency, "Euler consistency failure: h0 - h1 + h2 != chi");

  json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = "cohomology";
  j["input"] = {{"expr", format_bundle_expr(expr)}};
  j["results"] = {
      {"h0", v.h0},
      {"h1", v.h1},
      {"h2", v.h2},
      {"euler_characteristic", chi},
      {"chern_character",
       {{"rank", ch.rank}, {"c1", format_rational(ch.c1)}, {"ch2", format_rational(ch.ch2)}}},
      {"certainty", v.certainty == CohomologyVector::Certainty::Exact ? "exact"
                                                                      : "conditional-on-stability"}};
  j["caveats"] = json::array();
  j["provenance"] = {
      {"euler_characteristic", "chi = ch2 + (3/2) c1 + rank (Riemann-Roch on P^2)"},
      {"h0", "Bott formula, or stability vanishing: h0((End E)(l)) = 0 for l < 0, = #summands at l = 0"},
      {"h2", "Bott formula, or Serre duality h2((End E)(l)) = h0((End E)(-3-l))"},
      {"h1", "h1 = h0 + h2 - chi"}};
  return j;
}

json dimension_report_json(const ModuliConfig& config, const VirtualDimensionReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = "dim";
  j["input"] = moduli_config_to_json(config);

  json per_point = json::array();
  for (const auto& row : report.per_point) {
    json p;
    p["source"] = row.source;
    p["stab_dim"] = row.stab_dim;
    p["m_dim"] = row.m_dim;
    p["mu"] = row.mu;
    p["mu_bar"] = row.mu_bar ? rate_to_json(*row.mu_bar) : json(nullptr);
    p["crossing_sum"] = row.crossing_sum;
    p["contribution"] = row.contribution;
    per_point.push_back(p);
  }
  json results;
  results["virt_dim"] = report.virt_dim;
  results["per_point"] = per_point;
  json obstruction;
  if (report.coker_dim) {
    obstruction["available"] = true;
    obstruction["ker_dim"] = *report.ker_dim;
    obstruction["coker_dim"] = *report.coker_dim;
  } else {
    obstruction["available"] = false;
  }
  results["obstruction"] = obstruction;
  if (report.pun_virt_dim) results["pun_virt_dim"] = *report.pun_virt_dim;
  if (report.universal_heuristic) results["universal_heuristic"] = *report.universal_heuristic;
  j["results"] = results;

  j["caveats"] = report.caveats;
  j["provenance"] = {
      {"virt_dim",
       "virt_dim = sum_i [6 + dim m_i] - sum_i sum_{nu in D(L_i) cap (-5/2, mu_i)} dim K(L_i)_nu"},
      {"pun_virt_dim",
       "virt_dim = sum_i [6 + (8 - stab_dim_i) - 2h^1(End E_i) - 2h^1((End E_i)(-1))]"},
      {"coker_dim", "coker = -6N + sum_i [dim K_{-3} + dim K_{-4} - dim m_i], ker = 0, "
                    "under the hypothesis ker(L)_{-5/2} = 0"},
      {"universal_heuristic", "sum_i [6 - 2h^1((End E_i)(-1))]"}};
  return j;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace conemod
