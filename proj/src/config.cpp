#include "polygen/config.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw config_error(message); }

double number_at(const json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  return j.get<double>();
}

long integer_at(const json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<long>();
}

Complex parse_complex(const json& entry, const std::string& what) {
  if (entry.is_number()) return Complex(entry.get<double>(), 0.0);
  if (entry.is_array()) {
    if (entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
      fail(what + ": complex entries are [re, im] pairs of numbers");
    return Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  if (entry.is_object()) {
    if (!entry.contains("rotation")) fail(what + ": object entries need a 'rotation' field");
    const json& rot = entry["rotation"];
    if (!rot.is_array() || rot.size() != 2 || !rot[0].is_number_integer() ||
        !rot[1].is_number_integer())
      fail(what + ": 'rotation' must be an [numerator, denominator] integer pair");
    const long num = rot[0].get<long>();
    const long den = rot[1].get<long>();
    if (den == 0) fail(what + ": rotation denominator must be nonzero");
    double modulus = 1.0;
    if (entry.contains("modulus")) modulus = number_at(entry["modulus"], what + ".modulus");
    if (modulus <= 0.0) fail(what + ": modulus must be positive");
    for (const auto& item : entry.items())
      if (item.key() != "rotation" && item.key() != "modulus")
        fail(what + ": unknown field '" + item.key() + "'");
    return modulus * unit_rotation(num, den);
  }
  fail(what + ": expected number, [re, im], or rotation object");
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) fail(what + " must be a nonempty array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_complex(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<Complex>> parse_table(const json& j, const std::string& what,
                                              std::size_t arity) {
  if (!j.is_array() || j.empty()) fail(what + " must be a nonempty array of rows");
  std::vector<std::vector<Complex>> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(parse_complex_list(j[i], what + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != arity)
      fail(what + " rows must all have the seed arity " + std::to_string(arity));
  }
  return rows;
}

SeedSpec parse_seed(const json& j) {
  if (!j.is_object()) fail("'seed' must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    fail("'seed.kind' must be a string");
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "affine" || kind == "q_affine") {
    if (!j.contains("a") || !j.contains("b")) fail("'seed' needs 'a' and 'b'");
    std::vector<Complex> a = parse_complex_list(j["a"], "seed.a");
    std::vector<Complex> b = parse_complex_list(j["b"], "seed.b");
    if (a.size() != b.size()) fail("'seed.a' and 'seed.b' must have equal length");
    if (a.size() < 2) fail("seed arity must be at least 2");
    if (kind == "affine") {
      for (const auto& item : j.items())
        if (item.key() != "kind" && item.key() != "a" && item.key() != "b")
          fail("seed: unknown field '" + item.key() + "'");
      return make_affine_seed(std::move(a), std::move(b));
    }
    if (!j.contains("q")) fail("'q_affine' seed needs 'q'");
    const Complex q = parse_complex(j["q"], "seed.q");
    return q_affine_wrap(AffineParams{std::move(a), std::move(b)}, q);
  }

  if (kind == "second_order") {
    if (!j.contains("a") || !j.contains("b")) fail("'seed' needs 'a' and 'b'");
    std::vector<Complex> a = parse_complex_list(j["a"], "seed.a");
    std::vector<Complex> b = parse_complex_list(j["b"], "seed.b");
    if (a.size() != b.size()) fail("'seed.a' and 'seed.b' must have equal length");
    if (a.size() < 2) fail("seed arity must be at least 2");
    return make_second_order_autonomous_seed(std::move(a), std::move(b));
  }

  if (kind == "nonautonomous") {
    if (!j.contains("g") || !j.contains("h")) fail("'nonautonomous' seed needs 'g' and 'h'");
    if (!j.contains("arity")) fail("'nonautonomous' seed needs 'arity'");
    const long arity = integer_at(j["arity"], "seed.arity");
    if (arity < 2) fail("seed arity must be at least 2");
    auto g_rows = parse_table(j["g"], "seed.g", static_cast<std::size_t>(arity));
    auto h_rows = parse_table(j["h"], "seed.h", static_cast<std::size_t>(arity));
    // Tables repeat cyclically so a finite document can describe the
    // time-dependent coefficients for every step.
    auto g = [rows = std::move(g_rows)](long ell) {
      return rows[static_cast<std::size_t>(ell) % rows.size()];
    };
    auto h = [rows = std::move(h_rows)](long ell) {
      return rows[static_cast<std::size_t>(ell) % rows.size()];
    };
    return make_nonautonomous_seed(static_cast<int>(arity), std::move(g), std::move(h));
  }

  fail("unknown seed kind '" + kind + "'");
}

OrderingRule parse_ordering(const json& j, const std::string& what) {
  if (j.is_string()) {
    const std::string kind = j.get<std::string>();
    if (kind == "lexicographic") return {OrderingKind::lexicographic, 1, 0};
    if (kind == "contiguity") return {OrderingKind::contiguity, 1, 0};
    fail(what + ": ordering '" + kind + "' needs an object with its parameters");
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(what + " must be an ordering name or an object with a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  OrderingRule rule{OrderingKind::lexicographic, 1, 0};
  if (kind == "lexicographic") {
    rule.kind = OrderingKind::lexicographic;
  } else if (kind == "contiguity") {
    rule.kind = OrderingKind::contiguity;
  } else if (kind == "fixed_mu") {
    rule.kind = OrderingKind::fixed_mu;
    if (!j.contains("mu")) fail(what + ": 'fixed_mu' needs 'mu'");
    const long mu = integer_at(j["mu"], what + ".mu");
    if (mu < 1) fail(what + ": 'mu' must be a positive permutation index");
    rule.mu = static_cast<std::uint64_t>(mu);
  } else if (kind == "random") {
    rule.kind = OrderingKind::random;
    if (j.contains("rng_seed"))
      rule.rng_seed = static_cast<std::uint64_t>(
          integer_at(j["rng_seed"], what + ".rng_seed"));
  } else {
    fail(what + ": unknown ordering kind '" + kind + "'");
  }
  return rule;
}

std::vector<RootSet> parse_initial(const json& j, int order, int arity) {
  if (!j.is_array()) fail("'initial' must be an array of states");
  std::vector<RootSet> states;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::vector<Complex> values =
        parse_complex_list(j[i], "initial[" + std::to_string(i) + "]");
    if (static_cast<int>(values.size()) != arity)
      fail("initial states must have the seed arity " + std::to_string(arity));
    states.push_back(RootSet{std::move(values)});
  }
  if (static_cast<int>(states.size()) != order)
    fail("'initial' must hold exactly " + std::to_string(order) +
         " state(s) for this seed kind");
  return states;
}

json parse_document(const std::string& text) {
  json document = json::parse(text, nullptr, false);
  if (document.is_discarded()) fail("config is not valid JSON");
  if (!document.is_object()) fail("config must be a JSON object");
  if (!document.contains("schema") || !document["schema"].is_number_integer() ||
      document["schema"].get<long>() != 1)
    fail("config must declare schema: 1");
  return document;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunConfig parse_run(const json& document) {
  RunConfig config;
  if (!document.contains("seed")) fail("config needs a 'seed' block");
  config.seed = parse_seed(document["seed"]);

  if (document.contains("depth")) {
    const long depth = integer_at(document["depth"], "depth");
    if (depth < 0) fail("'depth' must be non-negative");
    config.depth = static_cast<int>(depth);
  }

  if (document.contains("ordering")) {
    const json& rules = document["ordering"];
    if (!rules.is_array()) fail("'ordering' must be an array, one rule per lift");
    for (std::size_t i = 0; i < rules.size(); ++i)
      config.lifts.push_back(
          parse_ordering(rules[i], "ordering[" + std::to_string(i) + "]"));
  }
  if (static_cast<int>(config.lifts.size()) != config.depth)
    fail("'ordering' must list exactly one rule per lift (depth = " +
         std::to_string(config.depth) + ")");

  if (document.contains("display_ordering"))
    config.display_ordering =
        parse_ordering(document["display_ordering"], "display_ordering");

  if (!document.contains("initial")) fail("config needs 'initial' states");
  config.initial =
      parse_initial(document["initial"], config.seed.order(), config.seed.arity);

  if (document.contains("steps")) {
    config.steps = integer_at(document["steps"], "steps");
    if (config.steps < config.seed.order())
      fail("'steps' must be at least the seed order");
  }
  if (document.contains("max_period")) {
    const long mp = integer_at(document["max_period"], "max_period");
    if (mp < 1) fail("'max_period' must be positive");
    config.max_period = static_cast<int>(mp);
  }
  if (document.contains("mode")) {
    if (!document["mode"].is_string()) fail("'mode' must be a string");
    const std::string mode = document["mode"].get<std::string>();
    if (mode == "closed_form")
      config.mode = SolveMode::closed_form;
    else if (mode == "iterated")
      config.mode = SolveMode::iterated;
    else
      fail("'mode' must be 'closed_form' or 'iterated'");
  }
  if (document.contains("tolerances")) {
    const json& tols = document["tolerances"];
    if (!tols.is_object()) fail("'tolerances' must be an object");
    if (tols.contains("exact"))
      config.tol_exact = number_at(tols["exact"], "tolerances.exact");
    if (tols.contains("asymptotic"))
      config.tol_asymptotic = number_at(tols["asymptotic"], "tolerances.asymptotic");
    if (tols.contains("collision"))
      config.collision_tol = number_at(tols["collision"], "tolerances.collision");
    if (config.tol_exact <= 0.0 || config.tol_asymptotic <= 0.0 ||
        config.collision_tol <= 0.0)
      fail("tolerances must be positive");
  }
  if (document.contains("perturb"))
    config.perturb = number_at(document["perturb"], "perturb");
  return config;
}

SweepConfig parse_sweep(const json& document) {
  if (!document.contains("sweep")) fail("config needs a 'sweep' block");
  const json& block = document["sweep"];
  if (!block.is_object()) fail("'sweep' must be an object");
  SweepConfig sweep;

  if (!block.contains("axes") || !block["axes"].is_array() || block["axes"].empty())
    fail("'sweep.axes' must be a nonempty array of multiplier lists");
  for (std::size_t m = 0; m < block["axes"].size(); ++m)
    sweep.axes.push_back(parse_complex_list(
        block["axes"][m], "sweep.axes[" + std::to_string(m) + "]"));

  if (!block.contains("b")) fail("'sweep' needs the offset vector 'b'");
  sweep.b = parse_complex_list(block["b"], "sweep.b");
  if (sweep.b.size() != sweep.axes.size())
    fail("'sweep.b' must have one entry per axis");
  if (sweep.b.size() < 2) fail("sweep arity must be at least 2");

  if (!block.contains("initial")) fail("'sweep' needs an 'initial' state");
  std::vector<Complex> initial = parse_complex_list(block["initial"], "sweep.initial");
  if (initial.size() != sweep.axes.size())
    fail("'sweep.initial' must have one entry per axis");
  sweep.initial = RootSet{std::move(initial)};

  if (block.contains("steps")) {
    sweep.steps = integer_at(block["steps"], "sweep.steps");
    if (sweep.steps < 1) fail("'sweep.steps' must be positive");
  }
  if (block.contains("max_period")) {
    const long mp = integer_at(block["max_period"], "sweep.max_period");
    if (mp < 1) fail("'sweep.max_period' must be positive");
    sweep.max_period = static_cast<int>(mp);
  }
  if (block.contains("tol"))
    sweep.tol_exact = number_at(block["tol"], "sweep.tol");
  if (sweep.steps < 3 * sweep.max_period)
    fail("'sweep.steps' must be at least 3 * max_period for period detection");
  return sweep;
}

}  // namespace

Complex parse_complex_text(const std::string& text) {
  json entry = json::parse(text, nullptr, false);
  if (entry.is_discarded()) fail("scalar entry is not valid JSON");
  return parse_complex(entry, "scalar");
}

RunConfig parse_config(const std::string& text) {
  return parse_run(parse_document(text));
}

RunConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

SweepConfig parse_sweep_config(const std::string& text) {
  return parse_sweep(parse_document(text));
}

SweepConfig load_sweep_config(const std::string& path) {
  return parse_sweep_config(read_file(path));
}

}  // namespace polygen
