#include "polygen/report.hpp"

#include <json.hpp>

namespace polygen {

namespace {

using nlohmann::json;

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json period_json(const PeriodReport& report) {
  json j;
  j["verdict"] = verdict_name(report.verdict);
  if (report.period) j["period"] = *report.period;
  if (report.onset) j["onset"] = *report.onset;
  j["residual_curve"] = report.residual_curve;
  return j;
}

json taxonomy_json(const TaxonomyReport& report) {
  json j;
  j["label"] = taxonomy_name(report.label);
  if (report.period) j["period"] = *report.period;
  json multipliers = json::array();
  for (const MultiplierClass& cls : report.multipliers) {
    json entry;
    switch (cls.kind) {
      case MultiplierKind::contracting:
        entry["kind"] = "contracting";
        break;
      case MultiplierKind::expanding:
        entry["kind"] = "expanding";
        break;
      case MultiplierKind::rational_rotation:
        entry["kind"] = "rational-rotation";
        entry["rotation"] =
            json::array({cls.rotation_numerator, cls.rotation_order});
        break;
      case MultiplierKind::irrational_unit:
        entry["kind"] = "irrational-unit";
        break;
    }
    multipliers.push_back(std::move(entry));
  }
  j["multipliers"] = std::move(multipliers);
  if (!report.limits.empty()) {
    json limits = json::array();
    for (Complex limit : report.limits) limits.push_back(complex_pair(limit));
    j["limits"] = std::move(limits);
  }
  return j;
}

json condition_json(const PeriodicityConditionReport& report) {
  json j;
  json beta = json::array();
  for (Complex b : report.beta) beta.push_back(complex_pair(b));
  j["beta"] = std::move(beta);
  j["rho"] = report.rho;
  json fractions = json::array();
  for (const auto& fraction : report.phase_fractions) {
    if (fraction)
      fractions.push_back(json::array({fraction->first, fraction->second}));
    else
      fractions.push_back(nullptr);
  }
  j["phase_fractions"] = std::move(fractions);
  j["satisfied"] = report.satisfied;
  if (report.predicted_period) j["predicted_period"] = *report.predicted_period;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::exact_periodic:
      return "exact-periodic";
    case Verdict::asymptotically_periodic:
      return "asymptotically-periodic";
    case Verdict::convergent:
      return "convergent";
    case Verdict::divergent:
      return "divergent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string taxonomy_name(TaxonomyLabel label) {
  switch (label) {
    case TaxonomyLabel::isochronous:
      return "isochronous";
    case TaxonomyLabel::asymptotically_isochronous:
      return "asymptotically-isochronous";
    case TaxonomyLabel::convergent:
      return "convergent";
    case TaxonomyLabel::divergent:
      return "divergent";
    case TaxonomyLabel::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string simulate_report_json(const SimulateReport& report) {
  json j;
  j["schema"] = 1;
  j["command"] = "simulate";
  j["subject"] = report.subject;
  j["depth"] = report.depth;
  j["arity"] = report.arity;
  j["steps"] = report.steps;
  j["mode"] = report.mode;
  j["tolerances"] = {{"exact", report.tolerances.exact},
                     {"asymptotic", report.tolerances.asymptotic},
                     {"collision", report.tolerances.collision}};
  j["period"] = period_json(report.set_period);
  if (report.ordered_period)
    j["ordered_period"] = period_json(*report.ordered_period);
  if (report.taxonomy) j["taxonomy"] = taxonomy_json(*report.taxonomy);
  if (report.condition) j["condition"] = condition_json(*report.condition);
  j["flags"] = {{"non_generic_steps", report.non_generic_steps},
                {"ambiguous_steps", report.ambiguous_steps},
                {"divergence_truncated", report.divergence_truncated}};
  return dump(j);
}

std::string verify_report_json(const VerifyReport& report) {
  json j;
  j["schema"] = 1;
  j["command"] = "verify";
  j["subject"] = report.subject;
  json checks = json::array();
  for (const CheckResult& check : report.checks) {
    checks.push_back({{"name", check.name},
                      {"max_residual", check.max_residual},
                      {"tolerance", check.tolerance},
                      {"pass", check.pass}});
  }
  j["checks"] = std::move(checks);
  j["pass"] = report.pass;
  return dump(j);
}

std::string period_report_json(const PeriodReport& report, double tol_exact,
                               double tol_asymptotic) {
  json j;
  j["schema"] = 1;
  j["command"] = "detect-period";
  j["tolerances"] = {{"exact", tol_exact}, {"asymptotic", tol_asymptotic}};
  j["period"] = period_json(report);
  return dump(j);
}

}  // namespace polygen
