#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conemod/errors.hpp"
#include "conemod/report.hpp"
#include "conemod/verify.hpp"

namespace py = pybind11;
using namespace conemod;

namespace {

Rate rate_from_py(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return parse_rate(obj.cast<std::string>());
  if (py::isinstance<py::int_>(obj)) return Rate::from_rational(Rational(obj.cast<long long>()));
  if (py::isinstance<py::float_>(obj)) return Rate::from_double(obj.cast<double>());
  // fractions.Fraction and anything else with numerator/denominator
  if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
    long long num = obj.attr("numerator").cast<long long>();
    long long den = obj.attr("denominator").cast<long long>();
    return Rate::from_rational(Rational(num, den));
  }
  throw py::type_error("expected a rate: int, float, Fraction, or a string like \"-5/2\"");
}

py::object rate_to_py(const Rate& r) {
  if (r.is_exact) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(format_rational(r.exact));
  }
  return py::float_(r.approx);
}

py::dict rate_entry_to_py(const RateEntry& e) {
  py::dict d;
  d["rate"] = rate_to_py(e.rate);
  d["dim"] = e.dim;
  if (!e.rate.is_exact && !e.rate.label.empty()) d["label"] = e.rate.label;
  return d;
}

ConeOperatorSpec op_from_py(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return preset_operator(obj.cast<std::string>());
  std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return operator_from_json(nlohmann::json::parse(text));
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

WeightVector weights_from_py(const py::handle& obj) {
  WeightVector w;
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    for (const auto& item : obj) w.weights.push_back(rate_from_py(item));
  } else {
    w.weights.push_back(rate_from_py(obj));
  }
  return w;
}

}  // namespace

PYBIND11_MODULE(conemod, m) {
  m.doc() = "Critical rates of conical elliptic operators, weight-indexed Fredholm indices, "
            "P^2 sheaf cohomology, and virtual dimensions of conically singular "
            "SU(3)-instanton moduli";

  py::register_exception<Error>(m, "ConemodError");

  m.def("preset_names", [] { return std::vector<std::string>{"scalar-laplacian-s5", "fubini-study"}; });

  m.def(
      "critical_rates",
      [](const py::object& op, const py::object& lo, const py::object& hi, double tol) {
        ConeOperatorSpec resolved = op_from_py(op);
        auto set = critical_rates(resolved, make_window(rate_from_py(lo), rate_from_py(hi)), tol);
        py::dict out;
        py::list rates;
        for (const auto& e : set.entries) rates.append(rate_entry_to_py(e));
        out["rates"] = rates;
        out["complete"] = set.complete;
        return out;
      },
      py::arg("op"), py::arg("lo"), py::arg("hi"), py::arg("tol") = kRateTolerance,
      "Critical rates of a preset name or operator dict inside the open window (lo, hi)");

  m.def(
      "homogeneous_kernel_dim",
      [](const py::object& op, const py::object& rate, double tol) {
        return homogeneous_kernel_dim(op_from_py(op), rate_from_py(rate), tol);
      },
      py::arg("op"), py::arg("rate"), py::arg("tol") = kRateTolerance);

  m.def(
      "laplacian_cone_rates",
      [](const py::object& mu) {
        Rate r = rate_from_py(mu);
        if (!r.is_exact) throw py::type_error("cross-section eigenvalue must be rational");
        auto [hi, lo] = laplacian_cone_rates(r.exact);
        return py::make_tuple(rate_to_py(hi), rate_to_py(lo));
      },
      py::arg("cross_eigenvalue"));

  m.def("dualize_rate",
        [](const py::object& rate) { return rate_to_py(dualize_rate(rate_from_py(rate))); });

  m.def(
      "radial_residual",
      [](const py::object& op, std::size_t mode_index, const py::object& rate,
         const std::vector<double>& radii) {
        return radial_residual(op_from_py(op), mode_index, rate_from_py(rate), radii);
      },
      py::arg("op"), py::arg("mode_index"), py::arg("rate"), py::arg("radii"));

  m.def("log_spaced_grid", &log_spaced_grid, py::arg("r_min"), py::arg("r_max"), py::arg("count"));

  m.def(
      "eigen_duality_check",
      [](const Matrix& J, const Matrix& M, double tol) {
        auto pairing = eigen_duality_check(J, M, tol);
        py::dict out;
        py::list pairs;
        for (const auto& p : pairing.pairs) {
          py::dict d;
          d["upper"] = p.upper;
          d["lower"] = p.lower;
          d["multiplicity"] = p.multiplicity;
          d["self_paired"] = p.self_paired;
          pairs.append(d);
        }
        out["pairs"] = pairs;
        out["anticommutator_residual"] = pairing.anticommutator_residual;
        out["mapping_residual"] = pairing.mapping_residual;
        return out;
      },
      py::arg("J"), py::arg("M"), py::arg("tol") = kRateTolerance);

  m.def(
      "mu_bar",
      [](const py::object& op, double tol) {
        MuBar mb = mu_bar(op_from_py(op), tol);
        py::dict out;
        out["value"] = rate_to_py(mb.value);
        out["caveat"] = mb.caveat;
        return out;
      },
      py::arg("op"), py::arg("tol") = kRateTolerance);

  m.def(
      "selfadjoint_index",
      [](const py::object& op, const py::object& weights, double tol) {
        return selfadjoint_index(op_from_py(op), weights_from_py(weights), tol);
      },
      py::arg("op"), py::arg("weights"), py::arg("tol") = kRateTolerance,
      "Fredholm index anchored at 0 on the symmetric weight -5/2");

  m.def(
      "index_change",
      [](const py::object& op, const py::object& from, const py::object& to, double tol) {
        ConeOperatorSpec resolved = op_from_py(op);
        WeightVector f = weights_from_py(from);
        std::vector<std::vector<RateEntry>> per_point(f.weights.size(), all_rates(resolved, tol));
        return index_change(per_point, f, weights_from_py(to), tol);
      },
      py::arg("op"), py::arg("from_weights"), py::arg("to_weights"), py::arg("tol") = kRateTolerance);

  m.def("chern_character", [](const std::string& expr) {
    ChernCharacter ch = chern_character(parse_bundle_expr(expr));
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return py::make_tuple(ch.rank, fraction(format_rational(ch.c1)), fraction(format_rational(ch.ch2)));
  });

  m.def("euler_characteristic",
        [](const std::string& expr) { return euler_characteristic(parse_bundle_expr(expr)); });

  m.def("bott_cohomology", [](int p, long long k) {
    auto v = bott_cohomology(p, k);
    return py::make_tuple(v.h0, v.h1, v.h2);
  });

  m.def("cohomology", [](const std::string& expr) {
    auto v = cohomology(parse_bundle_expr(expr));
    py::dict out;
    out["h0"] = v.h0;
    out["h1"] = v.h1;
    out["h2"] = v.h2;
    out["certainty"] = v.certainty == CohomologyVector::Certainty::Exact
                           ? "exact"
                           : "conditional-on-stability";
    return out;
  });

  m.def("kernel_dims_from_cohomology", [](const std::string& expr) {
    return kernel_dims_from_cohomology(parse_bundle_expr(expr));
  });

  m.def(
      "dimension_report",
      [](const py::object& config, bool ker_hypothesis, double tol) {
        std::string text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
        ModuliConfig parsed = moduli_config_from_json(nlohmann::json::parse(text));
        auto report = dimension_report(parsed, ker_hypothesis, tol);
        return json_to_py(dimension_report_json(parsed, report));
      },
      py::arg("config"), py::arg("ker_hypothesis") = false, py::arg("tol") = kRateTolerance,
      "Full virtual-dimension report for a moduli configuration dict");

  m.def(
      "virt_dim",
      [](const py::object& config, double tol) {
        std::string text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
        return virt_dim_general(moduli_config_from_json(nlohmann::json::parse(text)), tol);
      },
      py::arg("config"), py::arg("tol") = kRateTolerance);

  m.def("verify", [](unsigned seed) {
    py::list out;
    for (const auto& r : run_verification(seed)) {
      py::dict d;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      d["measured"] = r.measured;
      out.append(d);
    }
    return out;
  },
  py::arg("seed") = 20250810U);
}
